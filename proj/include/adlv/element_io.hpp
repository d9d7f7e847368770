#pragma once

#include <string>

#include "adlv/afweyl.hpp"

namespace adlv {

// Grammar: expression = term (("*" | whitespace) term)*
//   term = "e" | "s"N (finite reflection, 1-based node)
//        | "s0" / "s0@c" (affine reflection of component c, 1-based)
//        | "t[c1,...,cr]" (translation, integer lattice coordinates)
// Factors compose left to right.
AffineElement parse_element(const RootDatum& rd, const std::string& text);

// Canonical form "t[...]*word": translation part omitted when zero, word
// omitted when trivial, "e" when both are.  parse(print(x)) == x.
std::string print_element(const AffineElement& x);

// Shortlex word of a finite Weyl element, "e" for the identity.
std::string print_weyl(const RootDatum& rd, int w);

}  // namespace adlv
