#pragma once

#include <map>
#include <memory>
#include <string>

#include "adlv/element_io.hpp"
#include "adlv/rootdata.hpp"

namespace adlv::testutil {

// Shared data built once per process; addresses stay stable so elements can
// hold pointers into them.
inline const RootDatum& datum(const std::string& json) {
  static std::map<std::string, std::unique_ptr<RootDatum>> cache;
  auto it = cache.find(json);
  if (it == cache.end()) {
    auto rd = std::make_unique<RootDatum>(
        build_root_datum(GroupSpec::from_json_text(json)));
    it = cache.emplace(json, std::move(rd)).first;
  }
  return *it->second;
}

inline const char* kA1 = R"({"cartan":[{"type":"A","rank":1}],"lattice":"adjoint"})";
inline const char* kA1Sc =
    R"({"cartan":[{"type":"A","rank":1}],"lattice":"simply_connected"})";
inline const char* kA2 = R"({"cartan":[{"type":"A","rank":2}],"lattice":"adjoint"})";
inline const char* kA2Swap =
    R"({"cartan":[{"type":"A","rank":2}],"lattice":"adjoint","delta":{"node_perm":[2,1]}})";
inline const char* kA3 = R"({"cartan":[{"type":"A","rank":3}],"lattice":"adjoint"})";
inline const char* kA3Flip =
    R"({"cartan":[{"type":"A","rank":3}],"lattice":"adjoint","delta":{"node_perm":[3,2,1]}})";
inline const char* kC2 = R"({"cartan":[{"type":"C","rank":2}],"lattice":"adjoint"})";
inline const char* kG2 = R"({"cartan":[{"type":"G","rank":2}],"lattice":"adjoint"})";
inline const char* kA1A1 =
    R"({"cartan":[{"type":"A","rank":1},{"type":"A","rank":1}],"lattice":"adjoint"})";
inline const char* kA1A1Swap =
    R"({"cartan":[{"type":"A","rank":1},{"type":"A","rank":1}],"lattice":"adjoint","delta":{"node_perm":[2,1]}})";

inline AffineElement el(const RootDatum& rd, const std::string& expr) {
  return parse_element(rd, expr);
}

// Pairing of a coweight-coordinate vector with root r.
inline Int pair_root(const RootDatum& rd, int r, const IVec& cw) {
  return ivec_dot(rd.roots()[r].rc, cw);
}

inline RatVec rats(std::initializer_list<const char*> parts) {
  RatVec v;
  for (const char* p : parts)
    v.push_back(parse_rat(p));
  return v;
}

}  // namespace adlv::testutil
