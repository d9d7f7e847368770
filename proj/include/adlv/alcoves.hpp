#pragma once

#include "adlv/afweyl.hpp"

namespace adlv {

// Certificate that x satisfies the alcove conditions for the pair (J, w):
//   (1) the finite part of w^-1 x delta(w) lies in W_J;
//   (2) k(a, x alcove) >= k(a, base alcove) for every a in w(pos - pos_J),
//       with strict inequality throughout in the strict variant.
struct AlcoveWitness {
  uint32_t j = 0;
  int w = 0;               // minimal-length representative of w W_J
  bool strict = false;
  IVec levi_translation;   // translation part of w^-1 x delta(w), lattice coords
  RatVec obstruction;      // delta-averaged J-central part, simple-coroot coords
};

// Conditions (1) and (2) above; depends only on the coset w W_J.
bool is_alcove(const AffineElement& x, uint32_t j, int w, bool strict = false);

// All witnesses (J delta-stable, w minimal in its coset), J by increasing
// size then mask, w by (length, enumeration) order; strict flags whether the
// strict variant also holds.
std::vector<AlcoveWitness> alcove_witnesses(const AffineElement& x);

// k(a, x alcove) != k(a, base alcove) for every root a.
bool is_shrunken(const AffineElement& x);

struct NloResult {
  bool ok = false;
  std::vector<AlcoveWitness> violations;
};

// No-Levi-obstruction test against a basic class: fails iff the Kottwitz
// classes of x and b differ (reported as the always-present witness (S, e))
// or some witness with proper J has a nonzero obstruction vector.  By default
// the scan stops at the first violation; exhaustive collects them all.
NloResult nlo_check(const AffineElement& x, const AffineElement& b,
                    bool exhaustive = false);

// Nonemptiness of X_x(b) for basic b, decided by the witness scan.
bool nonempty_basic_criterion(const AffineElement& x, const AffineElement& b);

// Nonemptiness for basic b when x lies in a shrunken chamber and the datum is
// delta-connected: Kottwitz match and eta_delta(x) outside every proper W_J.
bool shrunken_criterion(const AffineElement& x, const AffineElement& b);

// Queries against the inner form twisted by z reduce to quasi-split queries:
// the pair (x, b) under the twisted action corresponds to (x z, b z) under
// the plain action, and the Twist carries the twisted action itself.
struct Transport {
  AffineElement x, b;
  Twist twist;
};
Transport inner_form_transport(const AffineElement& x, const AffineElement& b,
                               const AffineElement& z);

}  // namespace adlv
