#include "adlv/alcoves.hpp"

#include <cassert>

#include "adlv/error.hpp"

namespace adlv {

namespace {

// w^-1 x delta(w)
AffineElement conjugate_in(const AffineElement& x, int w) {
  const RootDatum& rd = *x.datum;
  AffineElement left = weyl_element(rd, rd.weyl().inverse(w));
  AffineElement right = weyl_element(rd, rd.delta_on_w(w));
  return compose(compose(left, x), right);
}

// base-alcove strip index: 0 for positive roots, 1 for negative ones
Int base_k(const Root& a) { return a.positive ? 0 : 1; }

// delta-averaged J-central part of lambda (given in coweight coordinates);
// the J-span part u is cut off by solving the Gram system over the J-coroots
RatVec central_average_cw(const RootDatum& rd, uint32_t j, const RatVec& lam_cw) {
  std::vector<int> nodes = rd.nodes_of(j);
  RatVec central = lam_cw;
  if (!nodes.empty()) {
    int m = (int)nodes.size();
    RMat gram(m, RatVec(m, Rat(0)));
    RatVec rhs(m, Rat(0));
    for (int a = 0; a < m; ++a) {
      rhs[a] = lam_cw[nodes[a]];
      for (int b = 0; b < m; ++b)
        gram[a][b] = Rat((long)rd.cartan()[nodes[b]][nodes[a]]);
    }
    auto coef = solve_rational(gram, rhs);
    assert(coef);  // the J-Cartan block is invertible
    for (int b = 0; b < m; ++b) {
      const IVec& cw = rd.roots()[rd.simple_root(nodes[b])].cw;
      for (int i = 0; i < rd.rank(); ++i)
        central[i] -= (*coef)[b] * Rat((long)cw[i]);
    }
  }
  RatVec acc(rd.rank(), Rat(0));
  RatVec cur = central;
  for (int i = 0; i < rd.delta_order(); ++i) {
    acc = ratvec_add(acc, cur);
    cur = rd.delta_cw(cur);
  }
  return ratvec_scale(acc, Rat(1, rd.delta_order()));
}

struct WitnessScan {
  const AffineElement& x;
  const RootDatum& rd;
  IVec xp0;

  explicit WitnessScan(const AffineElement& x_)
      : x(x_), rd(*x_.datum), xp0(alcove_point_scaled(x_)) {}

  // -1 no witness, 0 witness, 1 strict witness
  int classify(uint32_t j, int w, const AffineElement& y) const {
    if (!rd.in_levi(j, y.w))
      return -1;
    bool strict = true;
    for (int r = 0; r < rd.num_pos(); ++r) {
      if ((rd.roots()[r].support & ~j) == 0)
        continue;  // inside the J-subsystem
      int a = rd.weyl().act_root(w, r);
      Int diff = k_index_scaled(rd, xp0, a) - base_k(rd.roots()[a]);
      if (diff < 0)
        return -1;
      if (diff == 0)
        strict = false;
    }
    return strict ? 1 : 0;
  }

  AlcoveWitness make(uint32_t j, int w, const AffineElement& y, bool strict) const {
    AlcoveWitness wit;
    wit.j = j;
    wit.w = w;
    wit.strict = strict;
    wit.levi_translation = y.lambda;
    wit.obstruction = rd.cw_to_coroot(
        central_average_cw(rd, j, to_ratvec(rd.to_cw(y.lambda))));
    return wit;
  }
};

}  // namespace

bool is_alcove(const AffineElement& x, uint32_t j, int w, bool strict) {
  const RootDatum& rd = *x.datum;
  if (!rd.is_stable_subset(j))
    fail("JNotDeltaStable", "subset " + rd.subset_str(j) + " is not delta-stable");
  WitnessScan scan(x);
  int c = scan.classify(j, w, conjugate_in(x, w));
  return strict ? c == 1 : c >= 0;
}

std::vector<AlcoveWitness> alcove_witnesses(const AffineElement& x) {
  const RootDatum& rd = *x.datum;
  WitnessScan scan(x);
  std::vector<AlcoveWitness> out;
  for (uint32_t j : rd.stable_subsets())
    for (int w : rd.coset_reps(j)) {
      AffineElement y = conjugate_in(x, w);
      int c = scan.classify(j, w, y);
      if (c >= 0)
        out.push_back(scan.make(j, w, y, c == 1));
    }
  return out;
}

bool is_shrunken(const AffineElement& x) {
  // k(-a) = 1 - k(a), so checking the positive roots covers all of them
  const RootDatum& rd = *x.datum;
  IVec xp0 = alcove_point_scaled(x);
  for (int r = 0; r < rd.num_pos(); ++r)
    if (k_index_scaled(rd, xp0, r) == 0)
      return false;
  return true;
}

NloResult nlo_check(const AffineElement& x, const AffineElement& b,
                    bool exhaustive) {
  const RootDatum& rd = *x.datum;
  if (x.datum != b.datum)
    fail("DatumMismatch", "x and b belong to different root data");
  if (!all_zero(newton(b).nu_bar))
    fail("NotBasic", "b is not basic");
  NloResult res;
  const FinAbGroup& kg = rd.kappa_group(rd.full_mask());
  if (kg.project(x.lambda) != kg.project(b.lambda)) {
    AlcoveWitness marker;
    marker.j = rd.full_mask();
    marker.w = 0;
    marker.levi_translation = x.lambda;
    marker.obstruction = RatVec(rd.rank(), Rat(0));
    res.violations.push_back(std::move(marker));
    if (!exhaustive)
      return res;
  }
  WitnessScan scan(x);
  for (uint32_t j : rd.stable_subsets()) {
    if (j == rd.full_mask())
      continue;
    for (int w : rd.coset_reps(j)) {
      AffineElement y = conjugate_in(x, w);
      int c = scan.classify(j, w, y);
      if (c < 0)
        continue;
      AlcoveWitness wit = scan.make(j, w, y, c == 1);
      if (!all_zero(wit.obstruction)) {
        res.violations.push_back(std::move(wit));
        if (!exhaustive)
          return res;
      }
    }
  }
  res.ok = res.violations.empty();
  return res;
}

bool nonempty_basic_criterion(const AffineElement& x, const AffineElement& b) {
  return nlo_check(x, b).ok;
}

bool shrunken_criterion(const AffineElement& x, const AffineElement& b) {
  const RootDatum& rd = *x.datum;
  if (x.datum != b.datum)
    fail("DatumMismatch", "x and b belong to different root data");
  if (!rd.delta_connected())
    fail("NotDeltaConnected", "datum is not delta-connected");
  if (!all_zero(newton(b).nu_bar))
    fail("NotBasic", "b is not basic");
  if (!is_shrunken(x))
    fail("NotShrunken", "x does not lie in a shrunken chamber");
  const FinAbGroup& kg = rd.kappa_group(rd.full_mask());
  if (kg.project(x.lambda) != kg.project(b.lambda))
    return false;
  int ed = eta(x).eta_delta;
  for (uint32_t j : rd.stable_subsets()) {
    if (j == rd.full_mask())
      continue;
    if (rd.in_levi(j, ed))
      return false;
  }
  return true;
}

Transport inner_form_transport(const AffineElement& x, const AffineElement& b,
                               const AffineElement& z) {
  const RootDatum& rd = *x.datum;
  if (x.datum != b.datum || x.datum != z.datum)
    fail("DatumMismatch", "x, b, z must share a root datum");
  Twist tw(rd, z);  // NotLengthZero
  return {compose(x, z), compose(b, z), std::move(tw)};
}

}  // namespace adlv
