#include "lgs/bench.hpp"

#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

#include "lgs/scheme.hpp"

namespace lgs::bench {
namespace {

constexpr std::size_t kAlgorithmCount = std::size(kAllAlgorithms);

struct Measurement {
  double micros[kAlgorithmCount] = {};
  OpCounts counts[kAlgorithmCount] = {};
};

template <class Fn>
auto timed(double& micros, OpCounts& counts, Fn&& fn) {
  const OpCounts before = op_counts();
  const auto start = std::chrono::steady_clock::now();
  auto result = fn();
  const auto stop = std::chrono::steady_clock::now();
  micros = std::chrono::duration<double, std::micro>(stop - start).count();
  counts = op_counts() - before;
  return result;
}

std::unique_ptr<EntropySource> make_rng(std::uint64_t seed, std::uint64_t stream) {
  if (seed == 0) return std::make_unique<SystemEntropy>();
  return std::make_unique<DeterministicEntropy>(seed * 1000003u + stream);
}

Measurement run_iteration(std::size_t group_size, std::size_t iteration, EntropySource& rng) {
  Measurement m;
  auto slot = [&](Algorithm a) { return static_cast<std::size_t>(a); };
  auto at = [&](Algorithm a) -> std::pair<double&, OpCounts&> {
    return {m.micros[slot(a)], m.counts[slot(a)]};
  };

  auto [setup_us, setup_ops] = at(Algorithm::kSetup);
  SetupResult sys = timed(setup_us, setup_ops, [&] { return setup(128, rng); });

  Registry registry = Registry::in_memory();
  std::vector<MemberKey> members;
  members.reserve(group_size);
  double join_total = 0;
  OpCounts join_ops{};
  const OpCounts group_before = op_counts();
  for (std::size_t i = 0; i < group_size; ++i) {
    double us = 0;
    members.push_back(timed(us, join_ops, [&] {
      JoinState st = join_user_start(sys.gpk, rng);
      Cert cert = join_ra_issue(sys.gpk, sys.ra, st.request, registry, rng);
      return join_user_finish(sys.gpk, st.y, cert);
    }));
    join_total += us;
  }
  m.micros[slot(Algorithm::kJoin)] = join_total / static_cast<double>(group_size);
  m.counts[slot(Algorithm::kJoin)] = join_ops;
  m.micros[slot(Algorithm::kJoinGroup)] = join_total;
  m.counts[slot(Algorithm::kJoinGroup)] = op_counts() - group_before;

  const MemberKey& signer = members[iteration % group_size];
  const std::string msg1 = "bench message " + std::to_string(iteration);
  const std::string msg2 = msg1 + " (second)";
  const std::string amount = "amount-" + std::to_string(iteration % 3);

  auto [sign_us, sign_ops] = at(Algorithm::kSign);
  const Signature sig1 = timed(sign_us, sign_ops, [&] {
    return sign(sys.gpk, signer, as_bytes(msg1), as_bytes(amount), rng);
  });

  auto [verify_us, verify_ops] = at(Algorithm::kVerify);
  const bool ok = timed(verify_us, verify_ops,
                        [&] { return verify(sys.gpk, as_bytes(msg1), as_bytes(amount), sig1); });
  if (!ok) throw std::logic_error("benchmark produced a signature that does not verify");

  const Signature sig2 = sign(sys.gpk, signer, as_bytes(msg2), as_bytes(amount), rng);
  auto [link_us, link_ops] = at(Algorithm::kLink);
  const LinkResult linked = timed(link_us, link_ops, [&] {
    return link(sys.gpk, {as_bytes(msg1), as_bytes(amount), sig1},
                {as_bytes(msg2), as_bytes(amount), sig2});
  });
  if (linked != LinkResult::kLinked) throw std::logic_error("benchmark signatures failed to link");

  auto [trace_us, trace_ops] = at(Algorithm::kTrace);
  const RegistryEntry row = timed(trace_us, trace_ops, [&] {
    return trace(sys.gpk, sys.sa, as_bytes(msg1), as_bytes(amount), sig1, registry);
  });
  if (row.index != iteration % group_size + 1)
    throw std::logic_error("benchmark trace returned the wrong member");
  return m;
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace

std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::kSetup: return "Setup";
    case Algorithm::kJoin: return "Join";
    case Algorithm::kJoinGroup: return "JoinGroup";
    case Algorithm::kSign: return "Sign";
    case Algorithm::kVerify: return "Verify";
    case Algorithm::kLink: return "Link";
    case Algorithm::kTrace: return "Trace";
  }
  return "?";
}

Algorithm algorithm_from_string(std::string_view name) {
  for (Algorithm a : kAllAlgorithms)
    if (to_string(a) == name) return a;
  throw std::invalid_argument("unknown algorithm: " + std::string(name));
}

const Row& BenchReport::row(Algorithm a, std::size_t group_size) const {
  for (const Row& r : rows)
    if (r.algorithm == a && r.group_size == group_size) return r;
  throw std::out_of_range("no bench row for " + std::string(to_string(a)) + " at size " +
                          std::to_string(group_size));
}

std::string BenchReport::to_csv() const {
  std::string out = "algorithm,group_size,iter,micros\n";
  for (const Sample& s : samples) {
    out += std::string(to_string(s.algorithm)) + ',' + std::to_string(s.group_size) + ',' +
           std::to_string(s.iteration) + ',' + format_double(s.micros) + '\n';
  }
  for (const Row& r : rows) {
    out += std::string(to_string(r.algorithm)) + ',' + std::to_string(r.group_size) + ",mean," +
           format_double(r.mean_micros) + '\n';
  }
  return out;
}

ParsedCsv parse_csv(std::string_view csv) {
  ParsedCsv out;
  bool header = true;
  while (!csv.empty()) {
    const std::size_t eol = csv.find('\n');
    std::string_view line = csv.substr(0, eol);
    csv.remove_prefix(eol == std::string_view::npos ? csv.size() : eol + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (header) {
      if (line != "algorithm,group_size,iter,micros")
        throw std::invalid_argument("unexpected CSV header");
      header = false;
      continue;
    }
    std::string_view fields[4];
    for (int i = 0; i < 4; ++i) {
      const std::size_t comma = line.find(',');
      if ((i < 3) == (comma == std::string_view::npos))
        throw std::invalid_argument("expected 4 CSV fields");
      fields[i] = line.substr(0, comma);
      line.remove_prefix(comma == std::string_view::npos ? line.size() : comma + 1);
    }
    auto parse_num = [](std::string_view f, auto& value) {
      auto res = std::from_chars(f.data(), f.data() + f.size(), value);
      if (res.ec != std::errc() || res.ptr != f.data() + f.size())
        throw std::invalid_argument("bad CSV number: " + std::string(f));
    };
    const Algorithm algo = algorithm_from_string(fields[0]);
    std::size_t size = 0;
    double micros = 0;
    parse_num(fields[1], size);
    parse_num(fields[3], micros);
    if (fields[2] == "mean") {
      out.means.push_back({algo, size, micros});
    } else {
      std::size_t iter = 0;
      parse_num(fields[2], iter);
      out.samples.push_back({algo, size, iter, micros});
    }
  }
  if (header) throw std::invalid_argument("empty CSV");
  return out;
}

BenchReport run_bench(const BenchConfig& config) {
  if (config.iterations == 0) throw std::invalid_argument("iterations must be positive");
  for (std::size_t size : config.group_sizes)
    if (size == 0) throw std::invalid_argument("group size must be positive");
  BenchReport report;
  if (config.parallel) report.timing = "wall-clock";

  // Rounds visit every size once, so slow spells on the machine land on all
  // sizes alike instead of skewing whichever size happened to be running.
  const std::size_t sizes = config.group_sizes.size();
  const std::size_t total = config.warmup + config.iterations;
  std::vector<Measurement> results(sizes * total);  // [round * sizes + size slot]
  auto run_job = [&](std::size_t job, EntropySource& rng) {
    results[job] = run_iteration(config.group_sizes[job % sizes], job / sizes, rng);
  };

  if (config.parallel) {
    std::atomic<std::size_t> next{0};
    const unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::mutex failure_mu;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        auto rng = make_rng(config.seed, 500 + w);
        try {
          for (std::size_t job; (job = next++) < results.size();) run_job(job, *rng);
        } catch (...) {
          std::lock_guard lock(failure_mu);
          failure = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
  } else {
    auto rng = make_rng(config.seed, 0);
    for (std::size_t job = 0; job < results.size(); ++job) run_job(job, *rng);
  }

  for (std::size_t slot = 0; slot < sizes; ++slot) {
    const std::size_t size = config.group_sizes[slot];
    auto at = [&](std::size_t round) -> const Measurement& { return results[round * sizes + slot]; };
    for (Algorithm a : kAllAlgorithms) {
      const auto k = static_cast<std::size_t>(a);
      double sum = 0, sq = 0;
      for (std::size_t it = config.warmup; it < total; ++it) {
        const double us = at(it).micros[k];
        report.samples.push_back({a, size, it - config.warmup, us});
        sum += us;
      }
      const double n = static_cast<double>(config.iterations);
      const double mean = sum / n;
      for (std::size_t it = config.warmup; it < total; ++it)
        sq += (at(it).micros[k] - mean) * (at(it).micros[k] - mean);
      const OpCounts& ops = at(config.warmup).counts[k];
      report.rows.push_back({a, size, mean, std::sqrt(sq / n), ops.pairings, ops.exps()});
    }
  }
  return report;
}

}  // namespace lgs::bench
