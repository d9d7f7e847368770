#pragma once

#include <string>

#include "adlv/afweyl.hpp"

namespace adlv {

// Rank-2 apartment picture: every alcove of length <= max_length as a
// polygon, green when the witness criterion reports X_x(b) nonempty and red
// otherwise; the strip boundaries that cut out the shrunken chambers are
// overlaid and the base alcove is outlined.  Coordinates are exact rationals
// rendered to 6 decimals, so equal inputs give byte-equal output.
std::string render_apartment(const RootDatum& rd, const AffineElement& b,
                             int max_length);

}  // namespace adlv
