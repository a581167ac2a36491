// Microbenchmarks for the primitives and for each algorithm over group sizes.
// The end-to-end experiment with CSV output is `lgs bench`.

#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "lgs/scheme.hpp"

namespace lgs {
namespace {

const ByteView kMsg = as_bytes("benchmark message");
const ByteView kAmount = as_bytes("42");

struct Group {
  SetupResult sys;
  Registry registry = Registry::in_memory();
  std::vector<MemberKey> members;
};

Group make_group(std::size_t n, EntropySource& rng) {
  Group g{setup(128, rng), Registry::in_memory(), {}};
  for (std::size_t i = 0; i < n; ++i) {
    JoinState st = join_user_start(g.sys.gpk, rng);
    Cert cert = join_ra_issue(g.sys.gpk, g.sys.ra, st.request, g.registry, rng);
    g.members.push_back(join_user_finish(g.sys.gpk, st.y, cert));
  }
  return g;
}

void BM_Pairing(benchmark::State& state) {
  DeterministicEntropy rng(1);
  const G1 p = G1::generator() * Scalar::random(rng);
  const G2 q = G2::generator() * Scalar::random(rng);
  for (auto _ : state) benchmark::DoNotOptimize(pairing(p, q));
}
BENCHMARK(BM_Pairing);

void BM_G1Mul(benchmark::State& state) {
  DeterministicEntropy rng(2);
  const G1 p = G1::generator() * Scalar::random(rng);
  const Scalar s = Scalar::random(rng);
  for (auto _ : state) benchmark::DoNotOptimize(p * s);
}
BENCHMARK(BM_G1Mul);

void BM_G2Mul(benchmark::State& state) {
  DeterministicEntropy rng(3);
  const Scalar s = Scalar::random(rng);
  for (auto _ : state) benchmark::DoNotOptimize(G2::generator() * s);
}
BENCHMARK(BM_G2Mul);

void BM_GtPow(benchmark::State& state) {
  DeterministicEntropy rng(4);
  const Gt base = pairing(G1::generator(), G2::generator());
  const Scalar s = Scalar::random(rng);
  for (auto _ : state) benchmark::DoNotOptimize(base.pow(s));
}
BENCHMARK(BM_GtPow);

void BM_HashToG1(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(link_base(kAmount));
}
BENCHMARK(BM_HashToG1);

void BM_Setup(benchmark::State& state) {
  SystemEntropy rng;
  for (auto _ : state) benchmark::DoNotOptimize(setup(128, rng));
}
BENCHMARK(BM_Setup)->Unit(benchmark::kMillisecond);

void BM_Join(benchmark::State& state) {
  SystemEntropy rng;
  Group g = make_group(0, rng);
  for (auto _ : state) {
    JoinState st = join_user_start(g.sys.gpk, rng);
    Cert cert = join_ra_issue(g.sys.gpk, g.sys.ra, st.request, g.registry, rng);
    benchmark::DoNotOptimize(join_user_finish(g.sys.gpk, st.y, cert));
  }
}
BENCHMARK(BM_Join)->Unit(benchmark::kMillisecond);

void BM_Sign(benchmark::State& state) {
  SystemEntropy rng;
  Group g = make_group(static_cast<std::size_t>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(sign(g.sys.gpk, g.members[0], kMsg, kAmount, rng));
}
BENCHMARK(BM_Sign)->DenseRange(3, 10)->Unit(benchmark::kMillisecond);

void BM_Verify(benchmark::State& state) {
  SystemEntropy rng;
  Group g = make_group(static_cast<std::size_t>(state.range(0)), rng);
  const Signature sig = sign(g.sys.gpk, g.members[0], kMsg, kAmount, rng);
  for (auto _ : state) benchmark::DoNotOptimize(verify(g.sys.gpk, kMsg, kAmount, sig));
}
BENCHMARK(BM_Verify)->DenseRange(3, 10)->Unit(benchmark::kMillisecond);

void BM_Link(benchmark::State& state) {
  SystemEntropy rng;
  Group g = make_group(static_cast<std::size_t>(state.range(0)), rng);
  const ByteView other = as_bytes("another message");
  const Signature a = sign(g.sys.gpk, g.members[0], kMsg, kAmount, rng);
  const Signature b = sign(g.sys.gpk, g.members[0], other, kAmount, rng);
  for (auto _ : state)
    benchmark::DoNotOptimize(link(g.sys.gpk, {kMsg, kAmount, a}, {other, kAmount, b}));
}
BENCHMARK(BM_Link)->DenseRange(3, 10)->Unit(benchmark::kMillisecond);

void BM_Trace(benchmark::State& state) {
  SystemEntropy rng;
  Group g = make_group(static_cast<std::size_t>(state.range(0)), rng);
  const Signature sig = sign(g.sys.gpk, g.members.back(), kMsg, kAmount, rng);
  for (auto _ : state)
    benchmark::DoNotOptimize(trace(g.sys.gpk, g.sys.sa, kMsg, kAmount, sig, g.registry));
}
BENCHMARK(BM_Trace)->DenseRange(3, 10)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace lgs

BENCHMARK_MAIN();
