#include "cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <memory>
#include <optional>
#include <sstream>

#include "lgs/bench.hpp"
#include "lgs/entropy.hpp"
#include "lgs/registry.hpp"
#include "lgs/scheme.hpp"

namespace lgs::cli {
namespace {

namespace fs = std::filesystem;

/// Failures that are not library errors: I/O and argument problems.
struct CliError : std::runtime_error {
  CliError(int exit, std::string name, const std::string& what)
      : std::runtime_error(what), exit_code(exit), code_name(std::move(name)) {}
  int exit_code;
  std::string code_name;
};

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kUnsupportedSecurityLevel:
      return kExitUsage;
    case ErrorCode::kMalformedEncoding:
    case ErrorCode::kNotOnCurve:
    case ErrorCode::kWrongSubgroup:
    case ErrorCode::kCorruptRegistry:
      return kExitData;
    case ErrorCode::kEntropyFailure:
      return kExitOsErr;
    case ErrorCode::kStorageFailure:
      return kExitIo;
    case ErrorCode::kWitnessMismatch:
    case ErrorCode::kInvalidJoinProof:
    case ErrorCode::kDuplicateMember:
    case ErrorCode::kCertificateCheckFailed:
    case ErrorCode::kSignatureInvalid:
    case ErrorCode::kMemberNotFound:
    case ErrorCode::kDuplicateA:
    case ErrorCode::kDuplicateY:
      return kExitProtocol;
  }
  return kExitSoftware;
}

Bytes read_raw(const std::string& path) {
  std::error_code ec;
  if (!fs::is_regular_file(path, ec))
    throw CliError(kExitNoInput, "NoInput", "cannot read " + path);
  std::ifstream f(path, std::ios::binary);
  if (!f) throw CliError(kExitNoInput, "NoInput", "cannot open " + path);
  return Bytes((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
}

bool looks_hex(const Bytes& data) {
  return data.size() >= 2 && data[0] == '0' && data[1] == 'x';
}

struct Session {
  bool hex = false;
  std::optional<std::uint64_t> seed{};
  std::istream* in = nullptr;
  std::ostream* out = nullptr;
  bool stdin_used = false;

  std::unique_ptr<EntropySource> rng() const {
    if (seed) return std::make_unique<DeterministicEntropy>(*seed);
    return std::make_unique<SystemEntropy>();
  }

  /// A file written by this tool, in either output format.
  Bytes read_artifact(const std::string& path) const {
    Bytes data = read_raw(path);
    if (!looks_hex(data)) return data;
    Bytes decoded;
    const std::string_view text(reinterpret_cast<const char*>(data.data()), data.size());
    if (!from_hex(text, decoded))
      throw Error(ErrorCode::kMalformedEncoding, path + ": bad hex encoding");
    return decoded;
  }

  template <class T>
  T read(const std::string& path) const {
    try {
      return T::decode(read_artifact(path));
    } catch (const Error& e) {
      throw Error(e.code(), path + ": " + e.what());
    }
  }

  /// Message bytes, verbatim: "-" is stdin, anything else a file path.
  Bytes read_message(const std::string& spec) {
    if (spec != "-") return read_raw(spec);
    if (stdin_used) throw CliError(kExitUsage, "Usage", "stdin can supply only one message");
    stdin_used = true;
    return Bytes((std::istreambuf_iterator<char>(*in)), std::istreambuf_iterator<char>());
  }

  void write_artifact(const std::string& path, const Bytes& bytes) const {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw CliError(kExitIo, "Io", "cannot create " + path);
    if (hex) {
      f << to_hex(bytes) << '\n';
    } else {
      f.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    }
    f.flush();
    if (!f) throw CliError(kExitIo, "Io", "write failed: " + path);
  }
};

std::vector<std::size_t> parse_group_sizes(const std::string& text) {
  auto number = [&](std::string_view s) {
    std::size_t v = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size() || v == 0)
      throw CliError(kExitUsage, "Usage", "bad group size '" + std::string(s) + "'");
    return v;
  };
  std::vector<std::size_t> sizes;
  std::string_view s = text;
  if (auto dots = s.find(".."); dots != std::string_view::npos) {
    const std::size_t lo = number(s.substr(0, dots)), hi = number(s.substr(dots + 2));
    if (lo > hi) throw CliError(kExitUsage, "Usage", "empty group size range " + text);
    for (std::size_t n = lo; n <= hi; ++n) sizes.push_back(n);
    return sizes;
  }
  while (true) {
    const auto comma = s.find(',');
    sizes.push_back(number(s.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return sizes;
}

}  // namespace

std::string to_hex(const std::vector<unsigned char>& bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string s = "0x";
  s.reserve(2 + 2 * bytes.size());
  for (unsigned char b : bytes) {
    s += kDigits[b >> 4];
    s += kDigits[b & 15];
  }
  return s;
}

bool from_hex(std::string_view text, std::vector<unsigned char>& bytes) {
  auto is_space = [](char c) { return c == ' ' || c == '\n' || c == '\r' || c == '\t'; };
  while (!text.empty() && is_space(text.front())) text.remove_prefix(1);
  while (!text.empty() && is_space(text.back())) text.remove_suffix(1);
  if (text.size() < 2 || text[0] != '0' || text[1] != 'x' || text.size() % 2 != 0) return false;
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
  };
  std::vector<unsigned char> out;
  out.reserve(text.size() / 2 - 1);
  for (std::size_t i = 2; i < text.size(); i += 2) {
    const int hi = nibble(text[i]), lo = nibble(text[i + 1]);
    if (hi < 0 || lo < 0) return false;
    out.push_back(static_cast<unsigned char>(hi << 4 | lo));
  }
  bytes = std::move(out);
  return true;
}

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  Session session{.in = &in, .out = &out};
  std::function<int()> action;

  CLI::App app{"Linkable group signatures over files.", "lgs"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "binary";
  app.add_option("--format", format, "Output encoding for written files")
      ->check(CLI::IsMember({"binary", "hex"}))
      ->capture_default_str();
  std::uint64_t seed = 0;
  auto* seed_opt =
      app.add_option("--seed", seed, "Deterministic entropy, for reproducible test runs only");

  // setup
  std::string out_dir;
  unsigned bits = 128;
  auto* setup_cmd = app.add_subcommand("setup", "Create gpk, ra.sk and sa.sk");
  setup_cmd->add_option("--out-dir", out_dir)->required();
  setup_cmd->add_option("--security", bits, "Security level in bits")->capture_default_str();
  setup_cmd->callback([&] {
    action = [&] {
      auto rng = session.rng();
      const SetupResult sys = setup(bits, *rng);
      std::error_code ec;
      fs::create_directories(out_dir, ec);
      if (ec) throw CliError(kExitIo, "Io", "cannot create " + out_dir + ": " + ec.message());
      session.write_artifact((fs::path(out_dir) / "gpk").string(), sys.gpk.encode());
      session.write_artifact((fs::path(out_dir) / "ra.sk").string(), sys.ra.encode());
      session.write_artifact((fs::path(out_dir) / "sa.sk").string(), sys.sa.encode());
      return kExitOk;
    };
  });

  std::string gpk_path, out_path, member_path, request_path, registry_path, cert_path;
  std::string ra_path, sa_path, message_spec, amount, sig_path, member_out;

  // join-request
  auto* jr = app.add_subcommand("join-request", "Start enrollment: write a request for the RA");
  jr->add_option("--gpk", gpk_path)->required();
  jr->add_option("--out", out_path, "Request to send to the RA")->required();
  jr->add_option("--member-out", member_out, "Private join state, kept by the member")
      ->required();
  jr->callback([&] {
    action = [&] {
      const auto gpk = session.read<GroupParams>(gpk_path);
      auto rng = session.rng();
      const JoinState st = join_user_start(gpk, *rng);
      session.write_artifact(member_out, st.encode());
      session.write_artifact(out_path, st.request.encode());
      return kExitOk;
    };
  });

  // join-issue
  auto* ji = app.add_subcommand("join-issue", "RA: check a request, record it, issue a certificate");
  ji->add_option("--gpk", gpk_path)->required();
  ji->add_option("--ra-sk", ra_path)->required();
  ji->add_option("--request", request_path)->required();
  ji->add_option("--registry", registry_path, "Created if missing")->required();
  ji->add_option("--out", out_path)->required();
  ji->callback([&] {
    action = [&] {
      const auto gpk = session.read<GroupParams>(gpk_path);
      const auto ra = session.read<RaSecret>(ra_path);
      const auto req = session.read<JoinRequest>(request_path);
      Registry registry = Registry::open(registry_path, Registry::OpenMode::kCreateIfMissing);
      auto rng = session.rng();
      const Cert cert = join_ra_issue(gpk, ra, req, registry, *rng);
      session.write_artifact(out_path, cert.encode());
      out << "index=" << registry.lookup_by_a(cert.a)->index << '\n';
      return kExitOk;
    };
  });

  // join-finish
  auto* jf = app.add_subcommand("join-finish", "Check the certificate and write the member key");
  jf->add_option("--gpk", gpk_path)->required();
  jf->add_option("--member", member_path, "Join state from join-request")->required();
  jf->add_option("--cert", cert_path)->required();
  jf->add_option("--out", out_path)->required();
  jf->callback([&] {
    action = [&] {
      const auto gpk = session.read<GroupParams>(gpk_path);
      const auto st = session.read<JoinState>(member_path);
      const auto cert = session.read<Cert>(cert_path);
      session.write_artifact(out_path, join_user_finish(gpk, st.y, cert).encode());
      return kExitOk;
    };
  });

  // sign
  auto* sg = app.add_subcommand("sign", "Sign a message for an amount");
  sg->add_option("--gpk", gpk_path)->required();
  sg->add_option("--member", member_path, "Member key")->required();
  sg->add_option("--message", message_spec, "File path, or - for stdin")->required();
  sg->add_option("--amount", amount, "Link context, taken as UTF-8 bytes")->required();
  sg->add_option("--out", out_path)->required();
  sg->callback([&] {
    action = [&] {
      const auto gpk = session.read<GroupParams>(gpk_path);
      const auto mk = session.read<MemberKey>(member_path);
      const Bytes msg = session.read_message(message_spec);
      auto rng = session.rng();
      session.write_artifact(out_path, sign(gpk, mk, msg, as_bytes(amount), *rng).encode());
      return kExitOk;
    };
  });

  // verify
  auto* vf = app.add_subcommand("verify", "Exit 0 if the signature verifies, 1 if not");
  vf->add_option("--gpk", gpk_path)->required();
  vf->add_option("--message", message_spec)->required();
  vf->add_option("--amount", amount)->required();
  vf->add_option("--sig", sig_path)->required();
  vf->callback([&] {
    action = [&] {
      const auto gpk = session.read<GroupParams>(gpk_path);
      const Bytes msg = session.read_message(message_spec);
      bool ok = false;
      try {
        ok = verify_encoded(gpk, msg, as_bytes(amount), session.read_artifact(sig_path));
      } catch (const Error&) {
        ok = false;  // unreadable hex is a reject like any other bad encoding
      }
      out << (ok ? "accept" : "reject") << '\n';
      return ok ? kExitOk : kExitReject;
    };
  });

  // link
  std::vector<std::string> link_a, link_b;
  auto* lk = app.add_subcommand("link", "Prints linked, unlinked or invalid; exit 0, 1 or 2");
  lk->add_option("--gpk", gpk_path)->required();
  lk->add_option("--a", link_a, "MESSAGE AMOUNT SIG")->expected(3)->required();
  lk->add_option("--b", link_b, "MESSAGE AMOUNT SIG")->expected(3)->required();
  lk->callback([&] {
    action = [&] {
      const auto gpk = session.read<GroupParams>(gpk_path);
      const Bytes msg_a = session.read_message(link_a[0]);
      const Bytes msg_b = session.read_message(link_b[0]);
      LinkResult result = LinkResult::kInvalid;
      try {
        const auto sig_a = Signature::decode(session.read_artifact(link_a[2]));
        const auto sig_b = Signature::decode(session.read_artifact(link_b[2]));
        result = link(gpk, {msg_a, as_bytes(link_a[1]), sig_a}, {msg_b, as_bytes(link_b[1]), sig_b});
      } catch (const Error&) {
        result = LinkResult::kInvalid;
      }
      out << to_string(result) << '\n';
      switch (result) {
        case LinkResult::kLinked: return kExitOk;
        case LinkResult::kUnlinked: return kExitReject;
        case LinkResult::kInvalid: break;
      }
      return kExitInvalid;
    };
  });

  // trace
  auto* tr = app.add_subcommand("trace", "SA: open a valid signature and print the signer's row");
  tr->add_option("--gpk", gpk_path)->required();
  tr->add_option("--sa-sk", sa_path)->required();
  tr->add_option("--registry", registry_path)->required();
  tr->add_option("--message", message_spec)->required();
  tr->add_option("--amount", amount)->required();
  tr->add_option("--sig", sig_path)->required();
  tr->callback([&] {
    action = [&] {
      const auto gpk = session.read<GroupParams>(gpk_path);
      const auto sa = session.read<SaSecret>(sa_path);
      const Bytes msg = session.read_message(message_spec);
      const auto sig = session.read<Signature>(sig_path);
      if (!fs::is_regular_file(registry_path))
        throw CliError(kExitNoInput, "NoInput", "no registry at " + registry_path);
      const Registry registry = Registry::open(registry_path, Registry::OpenMode::kMustExist);
      const RegistryEntry row = trace(gpk, sa, msg, as_bytes(amount), sig, registry);
      const auto y = row.y_pub.encode();
      const auto a = row.a.encode();
      out << "index=" << row.index << '\n'
          << "Y=" << to_hex({y.begin(), y.end()}) << '\n'
          << "A=" << to_hex({a.begin(), a.end()}) << '\n';
      return kExitOk;
    };
  });

  // bench
  std::string sizes_text = "3..10", csv_path;
  bench::BenchConfig config;
  auto* bn = app.add_subcommand("bench", "Time every algorithm across group sizes");
  bn->add_option("--group-sizes", sizes_text, "Range a..b or list a,b,c")->capture_default_str();
  bn->add_option("--iters", config.iterations)->capture_default_str()->check(CLI::PositiveNumber);
  bn->add_option("--warmup", config.warmup)->capture_default_str();
  bn->add_option("--csv", csv_path, "Write samples here; without it CSV goes to stdout");
  bn->add_flag("--parallel", config.parallel, "Run iterations on all cores (wall-clock timing)");
  bn->callback([&] {
    action = [&] {
      config.group_sizes = parse_group_sizes(sizes_text);
      if (session.seed) config.seed = *session.seed;
      const bench::BenchReport report = bench::run_bench(config);
      const std::string csv = report.to_csv();
      if (csv_path.empty()) {
        out << csv;
        return kExitOk;
      }
      {
        std::ofstream f(csv_path, std::ios::binary | std::ios::trunc);
        f << csv;
        if (!f.flush()) throw CliError(kExitIo, "Io", "cannot write " + csv_path);
      }
      out << "timing=" << report.timing << '\n'
          << "algorithm,group_size,mean_micros,stddev_micros,pairings,exps\n";
      for (const bench::Row& r : report.rows) {
        out << bench::to_string(r.algorithm) << ',' << r.group_size << ',' << r.mean_micros << ','
            << r.stddev_micros << ',' << r.pairing_count << ',' << r.exp_count << '\n';
      }
      return kExitOk;
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      app.exit(e, out, err);
      return kExitOk;
    }
    err << "lgs: error[Usage]: " << e.what() << '\n';
    return kExitUsage;
  }

  session.hex = format == "hex";
  if (seed_opt->count() > 0) session.seed = seed;

  try {
    return action();
  } catch (const Error& e) {
    err << "lgs: error[" << to_string(e.code()) << "]: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const CliError& e) {
    err << "lgs: error[" << e.code_name << "]: " << e.what() << '\n';
    return e.exit_code;
  } catch (const std::exception& e) {
    err << "lgs: error[Internal]: " << e.what() << '\n';
    return kExitSoftware;
  }
}

}  // namespace lgs::cli
