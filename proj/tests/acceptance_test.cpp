// Acceptance gate. Prints one PASS/FAIL line per criterion and exits nonzero
// if any fails. Randomized criteria draw a fresh seed and print it.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "lgs/bench.hpp"
#include "lgs/scheme.hpp"
#include "test_util.hpp"

namespace lgs {
namespace {

using Clock = std::chrono::steady_clock;
using test::make_group;
using test::TestGroup;

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

struct Outcome {
  bool pass;
  std::string detail;
};

std::uint64_t fresh_seed() {
  std::random_device rd;
  return (std::uint64_t{rd()} << 32) | rd();
}

// Small helper for picking positions and bits from the deterministic stream.
std::uint64_t draw(EntropySource& rng, std::uint64_t bound) {
  std::uint8_t b[8];
  rng.fill(b);
  std::uint64_t v = 0;
  for (auto x : b) v = (v << 8) | x;
  return v % bound;
}

G1 random_g1(EntropySource& rng) { return G1::generator() * Scalar::random_nonzero(rng); }
G2 random_g2(EntropySource& rng) { return G2::generator() * Scalar::random_nonzero(rng); }

// 1. End-to-end runs over group sizes 3..10.
Outcome end_to_end(std::uint64_t seed) {
  DeterministicEntropy rng(seed);
  const auto start = Clock::now();
  int accepted = 0;
  for (int run = 0; run < 100; ++run) {
    const std::size_t n = 3 + run % 8;
    TestGroup g = make_group(n, rng);
    const MemberKey& mk = g.members[draw(rng, n)];
    const std::string msg = "payment " + std::to_string(run);
    const std::string amount = std::to_string(draw(rng, 1000));
    const Signature sig = sign(g.sys.gpk, mk, as_bytes(msg), as_bytes(amount), rng);
    if (verify(g.sys.gpk, as_bytes(msg), as_bytes(amount), sig)) ++accepted;
  }
  const double secs = seconds_since(start);
  return {accepted == 100 && secs < 60.0,
          std::to_string(accepted) + "/100 accepted in " + std::to_string(secs) + " s"};
}

// 2. Trace names every signer of a 10-member group.
Outcome trace_oracle(std::uint64_t seed) {
  DeterministicEntropy rng(seed);
  TestGroup g = make_group(10, rng);
  int exact = 0;
  for (std::size_t i = 0; i < 10; ++i) {
    const ByteView msg = as_bytes("m"), amount = as_bytes("10");
    const Signature sig = sign(g.sys.gpk, g.members[i], msg, amount, rng);
    const RegistryEntry row = trace(g.sys.gpk, g.sys.sa, msg, amount, sig, g.registry);
    if (row.index == i + 1 && row.a == g.members[i].cert.a) ++exact;
  }
  return {exact == 10, std::to_string(exact) + "/10 traced to the signer"};
}

// 3. Link over all pairs of 5 members x 3 amounts x 2 messages.
Outcome link_matrix(std::uint64_t seed) {
  DeterministicEntropy rng(seed);
  TestGroup g = make_group(5, rng);
  struct Item {
    std::size_t member;
    std::string amount, message;
    Signature sig;
  };
  std::vector<Item> items;
  for (std::size_t m = 0; m < 5; ++m)
    for (std::string amount : {"1", "25", "300"})
      for (std::string message : {"first", "second"})
        items.push_back({m, amount, message,
                         sign(g.sys.gpk, g.members[m], as_bytes(message), as_bytes(amount), rng)});
  int errors = 0, linked = 0, pairs = 0;
  for (std::size_t i = 0; i < items.size(); ++i) {
    for (std::size_t j = i + 1; j < items.size(); ++j) {
      const Item &a = items[i], &b = items[j];
      const LinkResult got =
          link(g.sys.gpk, {as_bytes(a.message), as_bytes(a.amount), a.sig},
               {as_bytes(b.message), as_bytes(b.amount), b.sig});
      const bool same = a.member == b.member && a.amount == b.amount;
      const LinkResult want = same ? LinkResult::kLinked : LinkResult::kUnlinked;
      if (got != want) ++errors;
      if (got == LinkResult::kLinked) ++linked;
      ++pairs;
    }
  }
  // 15 (member, amount) cells with one linked pair each.
  return {errors == 0 && linked == 15 && items.size() == 30,
          std::to_string(pairs) + " pairs, " + std::to_string(linked) + " linked, " +
              std::to_string(errors) + " errors"};
}

// 4. One random bit flipped in each component, plus message and amount changes.
Outcome tamper(std::uint64_t seed) {
  DeterministicEntropy rng(seed);
  TestGroup g = make_group(4, rng);
  // Component spans inside the signature encoding: l1..l4, then c and six z.
  std::vector<std::pair<std::size_t, std::size_t>> parts;
  for (std::size_t i = 0; i < 4; ++i) parts.emplace_back(5 + 48 * i, 48);
  for (std::size_t i = 0; i < 7; ++i) parts.emplace_back(5 + 192 + 32 * i, 32);
  int trials = 0, rejected = 0;
  for (int s = 0; s < 50; ++s) {
    const std::string msg = "order " + std::to_string(s), amount = std::to_string(s % 7);
    const Signature sig = sign(g.sys.gpk, g.members[s % 4], as_bytes(msg), as_bytes(amount), rng);
    const Bytes enc = sig.encode();
    if (!verify_encoded(g.sys.gpk, as_bytes(msg), as_bytes(amount), enc))
      return {false, "honest signature " + std::to_string(s) + " rejected"};
    for (auto [off, len] : parts) {
      Bytes t = enc;
      const std::uint64_t bit = draw(rng, 8 * len);
      t[off + bit / 8] ^= static_cast<std::uint8_t>(1u << (bit % 8));
      ++trials;
      if (!verify_encoded(g.sys.gpk, as_bytes(msg), as_bytes(amount), t)) ++rejected;
    }
    std::string msg2 = msg;
    msg2[draw(rng, msg2.size())] ^= static_cast<char>(1u << draw(rng, 8));
    ++trials;
    if (!verify(g.sys.gpk, as_bytes(msg2), as_bytes(amount), sig)) ++rejected;
    const std::string amount2 = amount + "0";
    ++trials;
    if (!verify(g.sys.gpk, as_bytes(msg), as_bytes(amount2), sig)) ++rejected;
  }
  return {rejected == trials && trials == 50 * 13,
          std::to_string(rejected) + "/" + std::to_string(trials) + " tampered inputs rejected"};
}

// 5. Verifier reconstruction equals the prover's commitments.
Outcome transcript_identity(std::uint64_t seed) {
  DeterministicEntropy rng(seed);
  TestGroup g = make_group(3, rng);
  const SokBases& bases = g.sys.gpk.bases();
  int equal = 0;
  for (int run = 0; run < 100; ++run) {
    const MemberKey& mk = g.members[run % 3];
    const G1 u0 = link_base(as_bytes(std::to_string(run)));
    const auto [ct, r] = lin_enc(g.sys.gpk.tracing_key(), mk.cert.a, rng);
    const SokStatement stmt{bases, u0, ct.c1, ct.c2, ct.c3, u0 * mk.cert.x};
    const SokWitness wit{r.alpha, r.beta, mk.cert.x, mk.y, mk.cert.x * r.alpha,
                         mk.cert.x * r.beta};
    const ByteView msg = as_bytes("transcript");
    const auto traced = testing::membership_prove_traced(stmt, wit, msg, rng);
    const MembershipCommitments& a = traced.commitments;
    const MembershipCommitments b = testing::membership_recompute(stmt, traced.proof);
    if (a.a1 == b.a1 && a.a2 == b.a2 && a.a3 == b.a3 && a.a4 == b.a4 && a.a5 == b.a5 &&
        a.a6 == b.a6 && membership_verify(stmt, msg, traced.proof))
      ++equal;
  }
  return {equal == 100, std::to_string(equal) + "/100 proofs with all six commitments equal"};
}

// 6. Linear encryption round trips and the k1=2, k2=3, alpha=beta=1 vector
// encrypting the group generator g1.
Outcome linear_encryption(std::uint64_t seed) {
  DeterministicEntropy rng(seed);
  const LinearKeypair kp = lin_keygen(rng);
  int ok = 0;
  for (int i = 0; i < 1000; ++i) {
    const G1 m = random_g1(rng);
    if (lin_dec(kp.sec, lin_enc(kp.pub, m, rng).first) == m) ++ok;
  }

  // Oracle by repeated addition only: with u = 6P the keys give v1 = 3P and
  // v2 = 2P, and alpha = beta = 1 gives c3 = m + 12P.
  const G1 p = random_g1(rng);
  auto times = [](const G1& x, int k) {
    G1 acc;
    for (int i = 0; i < k; ++i) acc = acc + x;
    return acc;
  };
  const G1 u = times(p, 6);
  const LinearKeypair small = lin_keypair_from_secret(u, Scalar::from_u64(2), Scalar::from_u64(3));
  const G1 m = setup(128, rng).gpk.g1();
  const LinearCiphertext ct =
      lin_enc(small.pub, m, EncryptionRandomness{Scalar::from_u64(1), Scalar::from_u64(1)});
  const bool vector_ok = small.pub.v1 == times(p, 3) && small.pub.v2 == times(p, 2) &&
                         ct.c1 == times(p, 3) && ct.c2 == times(p, 2) &&
                         ct.c3 == m + times(p, 12) && lin_dec(small.sec, ct) == m;
  return {ok == 1000 && vector_ok, std::to_string(ok) + "/1000 round trips, small vector " +
                                       (vector_ok ? "matches" : "MISMATCH")};
}

// 7. Every wire type: valid encodings round-trip; mutated ones are rejected
// or decode to a value whose encoding is exactly the mutated bytes.
struct WireType {
  std::string name;
  std::function<Bytes(EntropySource&)> make;
  std::function<Bytes(ByteView)> reencode;  // decode then encode; throws Error on reject
};

template <class T>
std::function<Bytes(ByteView)> reencoder() {
  return [](ByteView b) {
    const auto enc = T::decode(b).encode();
    return Bytes(enc.begin(), enc.end());
  };
}

template <class T>
Bytes enc_of(const T& v) {
  const auto e = v.encode();
  return Bytes(e.begin(), e.end());
}

Bytes mutate(const Bytes& in, EntropySource& rng) {
  Bytes out = in;
  switch (draw(rng, 5)) {
    case 0: {  // one bit
      const std::uint64_t bit = draw(rng, 8 * out.size());
      out[bit / 8] ^= static_cast<std::uint8_t>(1u << (bit % 8));
      break;
    }
    case 1:  // one byte replaced
      out[draw(rng, out.size())] ^= static_cast<std::uint8_t>(1 + draw(rng, 255));
      break;
    case 2:  // truncated
      out.resize(draw(rng, out.size()));
      break;
    case 3:  // extended
      out.push_back(static_cast<std::uint8_t>(draw(rng, 256)));
      break;
    default: {  // a run of bytes overwritten with noise
      const std::size_t at = draw(rng, out.size());
      const std::size_t len = std::min<std::size_t>(1 + draw(rng, 8), out.size() - at);
      for (std::size_t i = 0; i < len; ++i) out[at + i] = static_cast<std::uint8_t>(draw(rng, 256));
      break;
    }
  }
  return out;
}

Outcome serialization(std::uint64_t seed) {
  DeterministicEntropy rng(seed);
  auto proof = [](EntropySource& r) {
    return MembershipProof{Scalar::random(r), Scalar::random(r), Scalar::random(r),
                           Scalar::random(r), Scalar::random(r), Scalar::random(r),
                           Scalar::random(r)};
  };
  const std::vector<WireType> types = {
      {"Scalar", [](EntropySource& r) { return enc_of(Scalar::random(r)); }, reencoder<Scalar>()},
      {"G1", [](EntropySource& r) { return enc_of(random_g1(r)); }, reencoder<G1>()},
      {"G2", [](EntropySource& r) { return enc_of(random_g2(r)); }, reencoder<G2>()},
      {"GroupParams",
       [](EntropySource& r) {
         return GroupParams(random_g1(r), random_g1(r), random_g1(r), random_g1(r), random_g1(r),
                            random_g2(r), random_g2(r))
             .encode();
       },
       reencoder<GroupParams>()},
      {"RaSecret", [](EntropySource& r) { return RaSecret{Scalar::random_nonzero(r)}.encode(); },
       reencoder<RaSecret>()},
      {"SaSecret",
       [](EntropySource& r) {
         return SaSecret{{Scalar::random_nonzero(r), Scalar::random_nonzero(r)}}.encode();
       },
       reencoder<SaSecret>()},
      {"Cert", [](EntropySource& r) { return Cert{random_g1(r), Scalar::random(r)}.encode(); },
       reencoder<Cert>()},
      {"MemberKey",
       [](EntropySource& r) {
         return MemberKey{{random_g1(r), Scalar::random(r)}, Scalar::random(r)}.encode();
       },
       reencoder<MemberKey>()},
      {"JoinRequest",
       [](EntropySource& r) {
         return JoinRequest{random_g1(r), {Scalar::random(r), Scalar::random(r)}}.encode();
       },
       reencoder<JoinRequest>()},
      {"JoinState",
       [](EntropySource& r) {
         return JoinState{Scalar::random(r),
                          {random_g1(r), {Scalar::random(r), Scalar::random(r)}}}
             .encode();
       },
       reencoder<JoinState>()},
      {"Signature",
       [&](EntropySource& r) {
         return Signature{random_g1(r), random_g1(r), random_g1(r), random_g1(r), proof(r)}
             .encode();
       },
       reencoder<Signature>()},
      {"MembershipProof", [&](EntropySource& r) { return proof(r).encode(); },
       reencoder<MembershipProof>()},
      {"DlogProof",
       [](EntropySource& r) { return DlogProof{Scalar::random(r), Scalar::random(r)}.encode(); },
       reencoder<DlogProof>()},
      {"LinearPublicKey",
       [](EntropySource& r) {
         return LinearPublicKey{random_g1(r), random_g1(r), random_g1(r)}.encode();
       },
       reencoder<LinearPublicKey>()},
      {"LinearCiphertext",
       [](EntropySource& r) {
         return LinearCiphertext{random_g1(r), random_g1(r), random_g1(r)}.encode();
       },
       reencoder<LinearCiphertext>()},
      {"RegistryEntry",
       [](EntropySource& r) {
         RegistryEntry e;
         e.index = 1 + draw(r, 1u << 20);
         e.a = random_g1(r);
         e.x = Scalar::random(r);
         e.y_pub = random_g1(r);
         e.issued_at = static_cast<std::int64_t>(draw(r, std::uint64_t{1} << 52));
         return e.encode();
       },
       reencoder<RegistryEntry>()},
  };

  std::string failures;
  std::size_t rejected = 0, reencoded = 0;
  for (const WireType& t : types) {
    int bad = 0;
    for (int i = 0; i < 1000; ++i) {
      const Bytes valid = t.make(rng);
      try {
        if (t.reencode(valid) != valid) ++bad;
      } catch (const Error&) {
        ++bad;
      }
      const Bytes mutated = mutate(valid, rng);
      try {
        if (t.reencode(mutated) != mutated) ++bad;  // silently altered
        ++reencoded;
      } catch (const Error&) {
        ++rejected;
      }
    }
    if (bad) failures += " " + t.name + ":" + std::to_string(bad);
  }
  return {failures.empty(), std::to_string(types.size()) + " types x 1000; mutated: " +
                                std::to_string(rejected) + " rejected, " +
                                std::to_string(reencoded) + " exact round trips" +
                                (failures.empty() ? "" : "; failures" + failures)};
}

// 8. Bench shape across group sizes 3..10.
Outcome bench_shape(std::uint64_t seed) {
  bench::BenchConfig config;  // sizes 3..10, 20 iterations
  config.seed = seed;
  const bench::BenchReport report = bench::run_bench(config);
  using bench::Algorithm;
  std::string detail;
  bool pass = true;
  for (Algorithm a : {Algorithm::kSetup, Algorithm::kJoin, Algorithm::kSign, Algorithm::kVerify,
                      Algorithm::kLink, Algorithm::kTrace}) {
    double lo = 1e300, hi = 0;
    for (std::size_t n : config.group_sizes) {
      lo = std::min(lo, report.row(a, n).mean_micros);
      hi = std::max(hi, report.row(a, n).mean_micros);
    }
    const double variation = (hi - lo) / lo;
    pass = pass && variation <= 0.25;
    char buf[64];
    std::snprintf(buf, sizeof buf, " %s=%.1f%%", std::string(bench::to_string(a)).c_str(),
                  100 * variation);
    detail += buf;
  }
  for (std::size_t n : config.group_sizes) {
    pass = pass && report.row(Algorithm::kVerify, n).pairing_count >=
                       report.row(Algorithm::kSign, n).pairing_count;
  }
  const auto& v = report.row(Algorithm::kVerify, 3);
  const auto& s = report.row(Algorithm::kSign, 3);
  return {pass, "variation" + detail + "; pairings Verify " + std::to_string(v.pairing_count) +
                    " >= Sign " + std::to_string(s.pairing_count)};
}

// 9. Single sign and single verify under 100 ms.
Outcome performance(std::uint64_t seed) {
  DeterministicEntropy rng(seed);
  TestGroup g = make_group(3, rng);
  const ByteView msg = as_bytes("timed"), amount = as_bytes("9");
  double worst_sign = 0, worst_verify = 0;
  for (int i = 0; i < 10; ++i) {
    auto t = Clock::now();
    const Signature sig = sign(g.sys.gpk, g.members[0], msg, amount, rng);
    worst_sign = std::max(worst_sign, seconds_since(t) * 1000);
    t = Clock::now();
    const bool ok = verify(g.sys.gpk, msg, amount, sig);
    worst_verify = std::max(worst_verify, seconds_since(t) * 1000);
    if (!ok) return {false, "signature rejected"};
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "worst of 10: sign %.2f ms, verify %.2f ms", worst_sign,
                worst_verify);
  return {worst_sign < 100 && worst_verify < 100, buf};
}

}  // namespace
}  // namespace lgs

int main() {
  struct Criterion {
    int id;
    const char* name;
    lgs::Outcome (*fn)(std::uint64_t);
  };
  const Criterion criteria[] = {
      {1, "end-to-end correctness", lgs::end_to_end},
      {2, "trace oracle", lgs::trace_oracle},
      {3, "link matrix", lgs::link_matrix},
      {4, "tamper rejection", lgs::tamper},
      {5, "proof transcript identity", lgs::transcript_identity},
      {6, "linear encryption", lgs::linear_encryption},
      {7, "serialization", lgs::serialization},
      {8, "bench shape", lgs::bench_shape},
      {9, "sign/verify latency", lgs::performance},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const std::uint64_t seed = lgs::fresh_seed();
    lgs::Outcome out;
    try {
      out = c.fn(seed);
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s %d %s: %s (seed %llu)\n", out.pass ? "PASS" : "FAIL", c.id, c.name,
                out.detail.c_str(), static_cast<unsigned long long>(seed));
    std::fflush(stdout);
    if (!out.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
