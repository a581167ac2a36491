#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <iterator>
#include <regex>
#include <sstream>

#include <sys/wait.h>

#include "cli.hpp"
#include "lgs/bench.hpp"
#include "lgs/scheme.hpp"

namespace lgs::cli {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out, err;
};

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("lgs_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  Result lgs(std::vector<std::string> args, const std::string& stdin_text = "") {
    std::istringstream in(stdin_text);
    std::ostringstream out, err;
    const int code = run(args, in, out, err);
    return {code, out.str(), err.str()};
  }

  void write(const std::string& name, const std::string& content) {
    std::ofstream(path(name), std::ios::binary) << content;
  }
  std::string slurp(const std::string& name) const {
    std::ifstream f(path(name), std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(f), {});
  }

  void must(const std::vector<std::string>& args) {
    const Result r = lgs(args);
    ASSERT_EQ(r.code, 0) << r.err;
    ASSERT_TRUE(r.err.empty()) << r.err;
  }

  // setup plus n enrolled members m1.sk .. mn.sk.
  void make_group(int n, const std::vector<std::string>& extra = {}) {
    auto with = [&](std::vector<std::string> a) {
      a.insert(a.end(), extra.begin(), extra.end());
      return a;
    };
    must(with({"setup", "--out-dir", path("keys")}));
    for (int i = 1; i <= n; ++i) {
      const std::string s = std::to_string(i);
      must(with({"join-request", "--gpk", path("keys/gpk"), "--out", path("req" + s),
                 "--member-out", path("m" + s + ".partial")}));
      const Result r = lgs(with({"join-issue", "--gpk", path("keys/gpk"), "--ra-sk",
                                 path("keys/ra.sk"), "--request", path("req" + s), "--registry",
                                 path("reg"), "--out", path("cert" + s)}));
      ASSERT_EQ(r.code, 0) << r.err;
      ASSERT_EQ(r.out, "index=" + s + "\n");
      must(with({"join-finish", "--gpk", path("keys/gpk"), "--member", path("m" + s + ".partial"),
                 "--cert", path("cert" + s), "--out", path("m" + s + ".sk")}));
    }
  }

  Result sign(int member, const std::string& msg_file, const std::string& amount,
              const std::string& out) {
    return lgs({"sign", "--gpk", path("keys/gpk"), "--member", path("m" + std::to_string(member) + ".sk"),
                "--message", path(msg_file), "--amount", amount, "--out", path(out)});
  }
  Result verify(const std::string& msg_file, const std::string& amount, const std::string& sig) {
    return lgs({"verify", "--gpk", path("keys/gpk"), "--message", path(msg_file), "--amount",
                amount, "--sig", path(sig)});
  }

  fs::path dir_;
};

const std::regex kErrorLine(R"(^lgs: error\[[A-Za-z]+\]: .+\n$)");

TEST_F(CliTest, PipelineSignVerify) {
  make_group(2);
  write("msg", "pay bob");
  ASSERT_EQ(sign(1, "msg", "5", "sig").code, 0);
  const Result ok = verify("msg", "5", "sig");
  EXPECT_EQ(ok.code, kExitOk);
  EXPECT_EQ(ok.out, "accept\n");

  const Result wrong_amount = verify("msg", "50", "sig");
  EXPECT_EQ(wrong_amount.code, kExitReject);
  EXPECT_EQ(wrong_amount.out, "reject\n");
  EXPECT_TRUE(wrong_amount.err.empty());

  write("msg2", "pay carol");
  EXPECT_EQ(verify("msg2", "5", "sig").code, kExitReject);

  std::string garbled = slurp("sig");
  garbled[200] ^= 1;
  write("bad", garbled);
  EXPECT_EQ(verify("msg", "5", "bad").code, kExitReject);
}

TEST_F(CliTest, MessageFromStdin) {
  make_group(1);
  const std::string body("\x00\xff binary\n", 10);
  write("msg", body);
  const Result r = lgs({"sign", "--gpk", path("keys/gpk"), "--member", path("m1.sk"), "--message",
                        "-", "--amount", "7", "--out", path("sig")},
                       body);
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(verify("msg", "7", "sig").code, kExitOk);
  const Result piped = lgs({"verify", "--gpk", path("keys/gpk"), "--message", "-", "--amount", "7",
                            "--sig", path("sig")},
                           body);
  EXPECT_EQ(piped.code, kExitOk);
}

TEST_F(CliTest, TraceMemberTwoOfFive) {
  make_group(5);
  write("msg", "withdraw");
  ASSERT_EQ(sign(2, "msg", "100", "sig").code, 0);
  const Result r = lgs({"trace", "--gpk", path("keys/gpk"), "--sa-sk", path("keys/sa.sk"),
                        "--registry", path("reg"), "--message", path("msg"), "--amount", "100",
                        "--sig", path("sig")});
  ASSERT_EQ(r.code, 0) << r.err;

  // Y printed must be the one member 2 put in its request.
  const std::string req = slurp("req2");
  const JoinRequest request = JoinRequest::decode(as_bytes(req));
  const auto y = request.y_pub.encode();
  const MemberKey mk = MemberKey::decode(as_bytes(slurp("m2.sk")));
  const auto a = mk.cert.a.encode();
  EXPECT_EQ(r.out, "index=2\nY=" + to_hex({y.begin(), y.end()}) + "\nA=" +
                       to_hex({a.begin(), a.end()}) + "\n");
}

TEST_F(CliTest, LinkExitCodes) {
  make_group(2);
  write("m1", "first");
  write("m2", "second");
  ASSERT_EQ(sign(1, "m1", "5", "s1").code, 0);
  ASSERT_EQ(sign(1, "m2", "5", "s2").code, 0);
  ASSERT_EQ(sign(2, "m2", "5", "s3").code, 0);
  auto link = [&](const std::string& ma, const std::string& amt_a, const std::string& sa,
                  const std::string& mb, const std::string& amt_b, const std::string& sb) {
    return lgs({"link", "--gpk", path("keys/gpk"), "--a", path(ma), amt_a, path(sa), "--b",
                path(mb), amt_b, path(sb)});
  };
  Result r = link("m1", "5", "s1", "m2", "5", "s2");
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out, "linked\n");
  r = link("m1", "5", "s1", "m2", "5", "s3");
  EXPECT_EQ(r.code, kExitReject);
  EXPECT_EQ(r.out, "unlinked\n");
  r = link("m1", "5", "s1", "m2", "6", "s2");
  EXPECT_EQ(r.code, kExitInvalid);
  EXPECT_EQ(r.out, "invalid\n");
}

TEST_F(CliTest, HexAndBinaryAreBijective) {
  make_group(1, {"--seed", "11"});
  const std::string gpk_bin = slurp("keys/gpk");
  const std::string sk_bin = slurp("m1.sk");
  write("msg", "m");
  ASSERT_EQ(lgs({"sign", "--gpk", path("keys/gpk"), "--member", path("m1.sk"), "--message",
                 path("msg"), "--amount", "1", "--out", path("sig"), "--seed", "3"})
                .code,
            0);
  const std::string sig_bin = slurp("sig");

  // Same seed, hex output: every file is the hex image of the binary one.
  fs::remove_all(path("keys"));
  fs::remove(path("reg"));
  make_group(1, {"--seed", "11", "--format", "hex"});
  ASSERT_EQ(lgs({"sign", "--gpk", path("keys/gpk"), "--member", path("m1.sk"), "--message",
                 path("msg"), "--amount", "1", "--out", path("sig"), "--seed", "3", "--format",
                 "hex"})
                .code,
            0);
  auto hex_of = [](const std::string& s) { return to_hex({s.begin(), s.end()}) + "\n"; };
  EXPECT_EQ(slurp("keys/gpk"), hex_of(gpk_bin));
  EXPECT_EQ(slurp("m1.sk"), hex_of(sk_bin));
  EXPECT_EQ(slurp("sig"), hex_of(sig_bin));

  // And the hex files are accepted as input.
  EXPECT_EQ(verify("msg", "1", "sig").code, kExitOk);
  write("sig.bin", sig_bin);
  EXPECT_EQ(verify("msg", "1", "sig.bin").code, kExitOk);

  std::vector<unsigned char> back;
  ASSERT_TRUE(from_hex(hex_of(sig_bin), back));
  EXPECT_EQ(std::string(back.begin(), back.end()), sig_bin);
  EXPECT_FALSE(from_hex("0x123", back));
  EXPECT_FALSE(from_hex("12", back));
  EXPECT_FALSE(from_hex("0xzz", back));
}

TEST_F(CliTest, ErrorsAreMachineParsable) {
  Result r = lgs({});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_TRUE(std::regex_match(r.err, kErrorLine)) << r.err;
  EXPECT_TRUE(r.out.empty());

  r = lgs({"verify", "--gpk", path("missing"), "--message", path("x"), "--amount", "1", "--sig",
           path("y")});
  EXPECT_EQ(r.code, kExitNoInput);
  EXPECT_TRUE(r.err.starts_with("lgs: error[NoInput]: ")) << r.err;
  EXPECT_TRUE(r.out.empty());

  make_group(1);
  r = lgs({"setup", "--out-dir", path("k2"), "--security", "80"});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_TRUE(r.err.starts_with("lgs: error[UnsupportedSecurityLevel]: ")) << r.err;

  // A key file where the gpk belongs.
  write("msg", "x");
  r = lgs({"verify", "--gpk", path("keys/ra.sk"), "--message", path("msg"), "--amount", "1",
           "--sig", path("msg")});
  EXPECT_EQ(r.code, kExitData);
  EXPECT_TRUE(r.err.starts_with("lgs: error[MalformedEncoding]: ")) << r.err;

  // Enrolling the same request twice.
  r = lgs({"join-issue", "--gpk", path("keys/gpk"), "--ra-sk", path("keys/ra.sk"), "--request",
           path("req1"), "--registry", path("reg"), "--out", path("cert-again")});
  EXPECT_EQ(r.code, kExitProtocol);
  EXPECT_TRUE(r.err.starts_with("lgs: error[DuplicateMember]: ")) << r.err;
  EXPECT_TRUE(std::regex_match(r.err, kErrorLine));

  // Trace of a signature that does not verify.
  ASSERT_EQ(sign(1, "msg", "1", "sig").code, 0);
  r = lgs({"trace", "--gpk", path("keys/gpk"), "--sa-sk", path("keys/sa.sk"), "--registry",
           path("reg"), "--message", path("msg"), "--amount", "2", "--sig", path("sig")});
  EXPECT_EQ(r.code, kExitProtocol);
  EXPECT_TRUE(r.err.starts_with("lgs: error[SignatureInvalid]: ")) << r.err;

  r = lgs({"bench", "--group-sizes", "5..3"});
  EXPECT_EQ(r.code, kExitUsage);
}

TEST_F(CliTest, BenchWritesParsableCsv) {
  const Result r = lgs({"bench", "--group-sizes", "3,4", "--iters", "1", "--warmup", "0", "--csv",
                        path("out.csv"), "--seed", "9"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.starts_with("timing=per-call\n"));
  const auto parsed = bench::parse_csv(slurp("out.csv"));
  EXPECT_EQ(parsed.samples.size(), 2u * std::size(bench::kAllAlgorithms));
  EXPECT_EQ(parsed.means.size(), 2u * std::size(bench::kAllAlgorithms));
}

// The installed binary, driven through a shell, for stdin and exit status.
TEST_F(CliTest, BinaryEndToEnd) {
  const std::string exe = LGS_CLI_PATH;
  auto sh = [&](const std::string& cmd) {
    const int status = std::system(("cd " + dir_.string() + " && " + cmd).c_str());
    return WEXITSTATUS(status);
  };
  ASSERT_EQ(sh(exe + " setup --out-dir k"), 0);
  ASSERT_EQ(sh(exe + " join-request --gpk k/gpk --out q --member-out p"), 0);
  ASSERT_EQ(sh(exe + " join-issue --gpk k/gpk --ra-sk k/ra.sk --request q --registry r --out c >/dev/null"), 0);
  ASSERT_EQ(sh(exe + " join-finish --gpk k/gpk --member p --cert c --out m"), 0);
  ASSERT_EQ(sh("printf 'hi' | " + exe + " sign --gpk k/gpk --member m --message - --amount 5 --out s"), 0);
  EXPECT_EQ(sh("printf 'hi' | " + exe + " verify --gpk k/gpk --message - --amount 5 --sig s >/dev/null"), 0);
  EXPECT_EQ(sh("printf 'hi' | " + exe + " verify --gpk k/gpk --message - --amount 6 --sig s >/dev/null"), 1);
  EXPECT_EQ(sh(exe + " nonsense 2>/dev/null"), 64);
}

}  // namespace
}  // namespace lgs::cli
