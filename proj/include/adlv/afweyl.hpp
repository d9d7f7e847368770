#pragma once

#include "adlv/rootdata.hpp"

namespace adlv {

// Element of the extended affine Weyl group: translation by lambda (lattice
// coordinates) followed by a finite Weyl element.  Composition rule:
// (l1, w1) * (l2, w2) = (l1 + w1(l2), w1 w2).
struct AffineElement {
  const RootDatum* datum = nullptr;
  IVec lambda;
  int w = 0;

  bool operator==(const AffineElement& o) const {
    return datum == o.datum && w == o.w && lambda == o.lambda;
  }
  // deterministic ordering used for tie-breaks and report sorting
  bool operator<(const AffineElement& o) const {
    return lambda != o.lambda ? lambda < o.lambda : w < o.w;
  }
};

AffineElement identity_element(const RootDatum& rd);
AffineElement translation_element(const RootDatum& rd, IVec lambda);
AffineElement weyl_element(const RootDatum& rd, int w);

AffineElement compose(const AffineElement& a, const AffineElement& b);
AffineElement invert(const AffineElement& x);
AffineElement apply_delta(const AffineElement& x);

// Alcove geometry.  p0 is the fixed interior point of the base alcove; every
// pairing <x p0, a> has denominator datum.denom() and is never an integer.
IVec alcove_point_scaled(const AffineElement& x);  // denom() * (x p0), coweight
int length(const AffineElement& x);
int length_closed_form(const AffineElement& x);    // independent cross-check
Int k_index(const AffineElement& x, int root);     // unique k: k-1 < <x p0,a> < k
Int k_index_scaled(const RootDatum& rd, const IVec& xp0_scaled, int root);

// Affine generator set: ids 0..rank-1 are the finite simple reflections,
// rank..rank+#components-1 the affine reflections of the components.
int num_affine_gens(const RootDatum& rd);
AffineElement affine_generator(const RootDatum& rd, int id);
int affine_gen_delta(const RootDatum& rd, int id);  // image id under delta
std::string affine_gen_name(const RootDatum& rd, int id);

// Length-zero elements, one per class of Lambda / coroot lattice.
std::vector<AffineElement> omega_elements(const RootDatum& rd);

// Kottwitz-style class of x in the delta-coinvariants of Lambda/Q^_J.
// For proper J the finite part must lie in W_J.
IVec kappa(const AffineElement& x, uint32_t j);

struct Newton {
  RatVec nu;       // simple-coroot coordinates
  RatVec nu_bar;   // dominant representative
  int exponent = 1;
};

struct Eta {
  int eta1, eta2, eta_delta;  // finite Weyl indices
};
Eta eta(const AffineElement& x);

struct ClassInvariants {
  RatVec nu_bar;   // simple-coroot coordinates
  IVec kappa;
  bool operator==(const ClassInvariants& o) const {
    return nu_bar == o.nu_bar && kappa == o.kappa;
  }
  bool basic() const { return all_zero(nu_bar); }
  std::string str() const;
};

// Frobenius action y -> z * delta(y) * z^{-1} with z of length zero; the
// quasi-split case is z = identity.  Criteria in the alcoves module assume
// quasi-split; the reduction oracle accepts any twist.
class Twist {
public:
  Twist(const RootDatum& rd, AffineElement z);  // NotLengthZero
  const RootDatum& datum() const { return *rd_; }
  const AffineElement& z() const { return z_; }
  bool quasi_split() const;
  AffineElement apply(const AffineElement& x) const;
  int apply_gen(int id) const { return gen_map_[id]; }
  const FinAbGroup& kappa_group() const { return kappa_; }

private:
  const RootDatum* rd_;
  AffineElement z_, z_inv_;
  std::vector<int> gen_map_;
  FinAbGroup kappa_;
};

Newton newton(const AffineElement& x);
Newton newton(const AffineElement& x, const Twist& tw);
ClassInvariants sigma_invariants(const AffineElement& x);
ClassInvariants sigma_invariants(const AffineElement& x, const Twist& tw);

// delta-average of a vector (simple-coroot coordinates in and out)
RatVec delta_average(const RootDatum& rd, const RatVec& v);
// Newton point of the translation by v: dominant rep of the delta-average.
RatVec nu_of_vector(const RootDatum& rd, const RatVec& v);

// All x with length(x) <= maxlen, sorted by (length, lambda, w).  With
// include_omega the whole extended group is covered, otherwise only the
// affine Weyl group proper.
std::vector<AffineElement> elements_up_to_length(const RootDatum& rd, int maxlen,
                                                 bool include_omega = true);

struct AffineElementHash {
  size_t operator()(const AffineElement& x) const {
    size_t h = (size_t)x.w * 1099511628211ull;
    for (Int v : x.lambda)
      h = (h ^ (size_t)(v + 0x9e3779b97f4a7c15ull)) * 1099511628211ull;
    return h;
  }
};

}  // namespace adlv
