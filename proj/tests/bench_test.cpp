#include <gtest/gtest.h>

#include "lgs/bench.hpp"

namespace lgs::bench {
namespace {

BenchConfig small_config(std::uint64_t seed) {
  BenchConfig c;
  c.group_sizes = {3, 6};
  c.iterations = 2;
  c.warmup = 1;
  c.seed = seed;
  return c;
}

struct Expected {
  Algorithm algorithm;
  std::uint64_t pairings;
  std::uint64_t exps;  // at group size n: exps + per_member * n
  std::uint64_t per_member_exps = 0;
  std::uint64_t per_member_pairings = 0;
};

// Tallied by hand from the algorithms:
//  Setup:  4 cached pairings; v1, v2, omega.
//  Join:   Y, dlog commit | dlog check (2), A | g2*x, h*y; 2 pairings in the certificate check.
//  Sign:   tag, 3 for the encryption, 3 witness checks, 11 for commitments
//          (a1, a2, four Gt, 2 + 2 + 1); 1 pairing e(l3, g2).
//  Verify: 2 + 2 + (4 + 1 Gt) + 2 + 2 + 2; pairings e(l3, g2), e(l3, omega).
//  Link:   two verifies.  Trace: verify plus a two-exponent decryption.
const Expected kExpected[] = {
    {Algorithm::kSetup, 4, 3},
    {Algorithm::kJoin, 2, 7},
    {Algorithm::kJoinGroup, 0, 0, 7, 2},
    {Algorithm::kSign, 1, 18},
    {Algorithm::kVerify, 2, 15},
    {Algorithm::kLink, 4, 30},
    {Algorithm::kTrace, 2, 17},
};

TEST(Bench, OperationCountsMatchHandTally) {
  const BenchReport report = run_bench(small_config(5));
  for (std::size_t n : {3u, 6u}) {
    for (const Expected& e : kExpected) {
      const Row& r = report.row(e.algorithm, n);
      EXPECT_EQ(r.pairing_count, e.pairings + e.per_member_pairings * n) << to_string(e.algorithm);
      EXPECT_EQ(r.exp_count, e.exps + e.per_member_exps * n) << to_string(e.algorithm);
    }
    EXPECT_GE(report.row(Algorithm::kVerify, n).pairing_count,
              report.row(Algorithm::kSign, n).pairing_count);
  }
}

TEST(Bench, CountsAreDeterministic) {
  const BenchReport a = run_bench(small_config(6));
  const BenchReport b = run_bench(small_config(7));
  ASSERT_EQ(a.rows.size(), b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    EXPECT_EQ(a.rows[i].pairing_count, b.rows[i].pairing_count);
    EXPECT_EQ(a.rows[i].exp_count, b.rows[i].exp_count);
  }
}

TEST(Bench, ReportShape) {
  const BenchConfig c = small_config(8);
  const BenchReport report = run_bench(c);
  EXPECT_EQ(report.timing, "per-call");
  EXPECT_EQ(report.rows.size(), c.group_sizes.size() * std::size(kAllAlgorithms));
  EXPECT_EQ(report.samples.size(), report.rows.size() * c.iterations);
  for (const Row& r : report.rows) {
    EXPECT_GT(r.mean_micros, 0);
    EXPECT_GE(r.stddev_micros, 0);
  }
  for (const Sample& s : report.samples) EXPECT_LT(s.iteration, c.iterations);
}

TEST(Bench, ParallelLabelsWallClock) {
  BenchConfig c = small_config(9);
  c.group_sizes = {3};
  c.parallel = true;
  const BenchReport report = run_bench(c);
  EXPECT_EQ(report.timing, "wall-clock");
  EXPECT_EQ(report.row(Algorithm::kSign, 3).pairing_count, 1u);
}

TEST(Bench, CsvRoundTrips) {
  const BenchReport report = run_bench(small_config(10));
  const ParsedCsv parsed = parse_csv(report.to_csv());
  EXPECT_EQ(parsed.samples, report.samples);
  ASSERT_EQ(parsed.means.size(), report.rows.size());
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    EXPECT_EQ(parsed.means[i].algorithm, report.rows[i].algorithm);
    EXPECT_EQ(parsed.means[i].group_size, report.rows[i].group_size);
    EXPECT_EQ(parsed.means[i].micros, report.rows[i].mean_micros);
  }
}

TEST(Bench, CsvParserRejectsJunk) {
  EXPECT_THROW(parse_csv(""), std::invalid_argument);
  EXPECT_THROW(parse_csv("a,b,c,d\n"), std::invalid_argument);
  const std::string header = "algorithm,group_size,iter,micros\n";
  EXPECT_THROW(parse_csv(header + "Sign,3,0\n"), std::invalid_argument);
  EXPECT_THROW(parse_csv(header + "Sign,3,0,1,2\n"), std::invalid_argument);
  EXPECT_THROW(parse_csv(header + "Frob,3,0,1\n"), std::invalid_argument);
  EXPECT_THROW(parse_csv(header + "Sign,x,0,1\n"), std::invalid_argument);
  EXPECT_THROW(parse_csv(header + "Sign,3,avg,1\n"), std::invalid_argument);
  const ParsedCsv ok = parse_csv(header + "Sign,3,0,1.5\r\nSign,3,mean,1.5\n");
  ASSERT_EQ(ok.samples.size(), 1u);
  EXPECT_EQ(ok.samples[0].micros, 1.5);
  EXPECT_EQ(ok.means.size(), 1u);
}

TEST(Bench, AlgorithmNames) {
  for (Algorithm a : kAllAlgorithms) EXPECT_EQ(algorithm_from_string(to_string(a)), a);
  EXPECT_THROW(algorithm_from_string("sign"), std::invalid_argument);
}

}  // namespace
}  // namespace lgs::bench
