#pragma once

// Timing harness: for each group size, build a fresh group, enroll every
// member and time each algorithm, counting pairings and exponentiations.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace lgs::bench {

enum class Algorithm {
  kSetup,
  kJoin,       // one member's full enrollment (start, issue, finish)
  kJoinGroup,  // enrolling the whole group; grows with the group size
  kSign,
  kVerify,
  kLink,  // one pair: two verifications and a tag comparison
  kTrace,  // includes the verification trace performs first
};

inline constexpr Algorithm kAllAlgorithms[] = {
    Algorithm::kSetup, Algorithm::kJoin,  Algorithm::kJoinGroup, Algorithm::kSign,
    Algorithm::kVerify, Algorithm::kLink, Algorithm::kTrace};

std::string_view to_string(Algorithm a);
Algorithm algorithm_from_string(std::string_view name);

struct BenchConfig {
  std::vector<std::size_t> group_sizes{3, 4, 5, 6, 7, 8, 9, 10};
  std::size_t iterations = 20;
  std::size_t warmup = 2;
  bool parallel = false;
  std::uint64_t seed = 0;  // 0 = system entropy
};

struct Sample {
  Algorithm algorithm;
  std::size_t group_size;
  std::size_t iteration;
  double micros;

  friend bool operator==(const Sample&, const Sample&) = default;
};

struct Row {
  Algorithm algorithm;
  std::size_t group_size;
  double mean_micros;
  double stddev_micros;
  std::uint64_t pairing_count;  // per call
  std::uint64_t exp_count;      // G1 + G2 + Gt exponentiations per call
};

struct BenchReport {
  std::vector<Sample> samples;
  std::vector<Row> rows;
  /// "per-call" normally; "wall-clock" when iterations ran on several threads.
  std::string timing = "per-call";

  const Row& row(Algorithm a, std::size_t group_size) const;

  /// Columns algorithm,group_size,iter,micros: one line per sample, then one
  /// "mean" line per (algorithm, group_size).
  std::string to_csv() const;
};

struct ParsedCsv {
  std::vector<Sample> samples;
  struct Mean {
    Algorithm algorithm;
    std::size_t group_size;
    double micros;
  };
  std::vector<Mean> means;
};

/// Throws std::invalid_argument on malformed input.
ParsedCsv parse_csv(std::string_view csv);

BenchReport run_bench(const BenchConfig& config);

}  // namespace lgs::bench
