#pragma once

#include <string>
#include <vector>

#include "lgs/scheme.hpp"

namespace lgs::test {

struct TestGroup {
  SetupResult sys;
  Registry registry = Registry::in_memory();
  std::vector<MemberKey> members;
};

inline TestGroup make_group(std::size_t n, EntropySource& rng) {
  TestGroup g{setup(128, rng), Registry::in_memory(), {}};
  for (std::size_t i = 0; i < n; ++i) {
    JoinState st = join_user_start(g.sys.gpk, rng);
    Cert cert = join_ra_issue(g.sys.gpk, g.sys.ra, st.request, g.registry, rng);
    g.members.push_back(join_user_finish(g.sys.gpk, st.y, cert));
  }
  return g;
}

inline ByteView bytes_of(const std::string& s) { return as_bytes(s); }

}  // namespace lgs::test
