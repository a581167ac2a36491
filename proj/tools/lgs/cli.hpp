#pragma once

// Role-oriented command line over files. Every artifact (gpk, keys, join
// messages, certificates, signatures) is written in binary or as a single
// "0x"-prefixed hex line; readers accept either form.

#include <iosfwd>
#include <string>
#include <vector>

namespace lgs::cli {

// Exit codes. Stable; documented in the README.
inline constexpr int kExitOk = 0;
inline constexpr int kExitReject = 1;    // verify: rejected; link: unlinked
inline constexpr int kExitInvalid = 2;   // link: a signature did not verify
inline constexpr int kExitUsage = 64;    // bad flags or arguments
inline constexpr int kExitData = 65;     // malformed input file or corrupt registry
inline constexpr int kExitNoInput = 66;  // input file missing or unreadable
inline constexpr int kExitSoftware = 70;
inline constexpr int kExitOsErr = 71;    // entropy source failed
inline constexpr int kExitIo = 74;       // could not write output or registry
inline constexpr int kExitProtocol = 76; // join/trace refused (see error code)

/// Runs one command. `args` excludes the program name. Results go to `out`,
/// diagnostics to `err` as "lgs: error[Code]: message". Reads "-" messages
/// from `in`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

std::string to_hex(const std::vector<unsigned char>& bytes);
/// Accepts "0x" + an even number of hex digits, surrounding whitespace ignored.
/// Returns false on anything else.
bool from_hex(std::string_view text, std::vector<unsigned char>& bytes);

}  // namespace lgs::cli
