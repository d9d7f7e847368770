#include "adlv/afweyl.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <unordered_set>

#include "adlv/error.hpp"

namespace adlv {

namespace {

void check_same(const AffineElement& a, const AffineElement& b) {
  if (a.datum != b.datum)
    fail("DatumMismatch", "elements belong to different root data");
}

void check_datum(const AffineElement& x) {
  if (!x.datum)
    fail("DatumMismatch", "element has no root datum");
}

}  // namespace

AffineElement identity_element(const RootDatum& rd) {
  return {&rd, IVec(rd.rank(), 0), 0};
}

AffineElement translation_element(const RootDatum& rd, IVec lambda) {
  if ((int)lambda.size() != rd.rank())
    fail("DatumMismatch", "translation vector has wrong size");
  return {&rd, std::move(lambda), 0};
}

AffineElement weyl_element(const RootDatum& rd, int w) {
  return {&rd, IVec(rd.rank(), 0), w};
}

AffineElement compose(const AffineElement& a, const AffineElement& b) {
  check_datum(a);
  check_same(a, b);
  const WeylGroup& wg = a.datum->weyl();
  return {a.datum, ivec_add(a.lambda, wg.act_lam(a.w, b.lambda)),
          wg.mul(a.w, b.w)};
}

AffineElement invert(const AffineElement& x) {
  check_datum(x);
  const WeylGroup& wg = x.datum->weyl();
  int wi = wg.inverse(x.w);
  return {x.datum, ivec_neg(wg.act_lam(wi, x.lambda)), wi};
}

AffineElement apply_delta(const AffineElement& x) {
  check_datum(x);
  return {x.datum, imat_apply(x.datum->delta_lam(), x.lambda),
          x.datum->delta_on_w(x.w)};
}

IVec alcove_point_scaled(const AffineElement& x) {
  check_datum(x);
  const RootDatum& rd = *x.datum;
  IVec p = rd.weyl().act_cw(x.w, rd.p0_scaled());
  IVec l = rd.to_cw(x.lambda);
  for (int i = 0; i < rd.rank(); ++i)
    p[i] += rd.denom() * l[i];
  return p;
}

Int k_index_scaled(const RootDatum& rd, const IVec& xp0_scaled, int root) {
  Int b = ivec_dot(rd.roots()[root].rc, xp0_scaled);
  assert(b % rd.denom() != 0);
  return floor_div(b, rd.denom()) + 1;
}

Int k_index(const AffineElement& x, int root) {
  return k_index_scaled(*x.datum, alcove_point_scaled(x), root);
}

int length(const AffineElement& x) {
  // hyperplanes separating the base alcove from its image: for positive a
  // the base alcove sits at k = 0, so each a contributes |k(a, x)|
  check_datum(x);
  const RootDatum& rd = *x.datum;
  IVec p = alcove_point_scaled(x);
  Int total = 0;
  for (int r = 0; r < rd.num_pos(); ++r)
    total += std::abs(k_index_scaled(rd, p, r));
  return (int)total;
}

int length_closed_form(const AffineElement& x) {
  check_datum(x);
  const RootDatum& rd = *x.datum;
  const WeylGroup& wg = rd.weyl();
  IVec lcw = rd.to_cw(x.lambda);
  int winv = wg.inverse(x.w);
  Int total = 0;
  for (int r = 0; r < rd.num_pos(); ++r) {
    Int m = ivec_dot(rd.roots()[r].rc, lcw);
    if (rd.roots()[wg.act_root(winv, r)].positive)
      total += std::abs(m);
    else
      total += std::abs(m + 1);
  }
  return (int)total;
}

int num_affine_gens(const RootDatum& rd) {
  return rd.rank() + (int)rd.components().size();
}

AffineElement affine_generator(const RootDatum& rd, int id) {
  if (id < 0 || id >= num_affine_gens(rd))
    fail("NotSimpleReflection", "generator id out of range");
  if (id < rd.rank())
    return weyl_element(rd, rd.weyl().generator(id));
  const Root& theta = rd.roots()[rd.components()[id - rd.rank()].highest];
  // reflection in theta as a root permutation
  std::vector<uint16_t> p(rd.roots().size());
  for (size_t r = 0; r < rd.roots().size(); ++r) {
    IVec rc = rd.roots()[r].rc;
    Int pair = ivec_dot(theta.cw, rc);
    for (int i = 0; i < rd.rank(); ++i)
      rc[i] -= pair * theta.rc[i];
    int img = -1;
    for (size_t q = 0; q < rd.roots().size(); ++q)
      if (rd.roots()[q].rc == rc) {
        img = (int)q;
        break;
      }
    p[r] = (uint16_t)img;
  }
  return {&rd, ivec_neg(theta.lam), rd.weyl().from_perm(p)};
}

int affine_gen_delta(const RootDatum& rd, int id) {
  if (id < rd.rank())
    return rd.delta_nodes()[id];
  int c = id - rd.rank();
  int img_root = rd.delta_on_root(rd.components()[c].highest);
  return rd.rank() + rd.roots()[img_root].comp;
}

std::string affine_gen_name(const RootDatum& rd, int id) {
  if (id < rd.rank())
    return "s" + std::to_string(id + 1);
  if (rd.components().size() == 1)
    return "s0";
  return "s0@" + std::to_string(id - rd.rank() + 1);
}

std::vector<AffineElement> omega_elements(const RootDatum& rd) {
  std::vector<AffineElement> out;
  const WeylGroup& wg = rd.weyl();
  for (int w = 0; w < wg.size(); ++w) {
    IVec v = wg.act_cw(w, rd.p0_scaled());
    // the only candidate translation: shift every wall pairing into (-1, 0)
    IVec lcw(rd.rank());
    for (int i = 0; i < rd.rank(); ++i)
      lcw[i] = -floor_div(v[i], rd.denom()) - 1;
    auto lam = rd.from_cw(lcw);
    if (!lam)
      continue;
    AffineElement x{&rd, *lam, w};
    if (length(x) == 0)
      out.push_back(std::move(x));
  }
  std::sort(out.begin(), out.end());
  assert((Int)out.size() == rd.lambda_mod_coroots().order());
  return out;
}

IVec kappa(const AffineElement& x, uint32_t j) {
  check_datum(x);
  const RootDatum& rd = *x.datum;
  const FinAbGroup& g = rd.kappa_group(j);  // JNotDeltaStable if unknown
  if (j != rd.full_mask() && !rd.in_levi(j, x.w))
    fail("NotInLevi", "finite part lies outside the Levi subgroup of " +
                          rd.subset_str(j));
  return g.project(x.lambda);
}

Eta eta(const AffineElement& x) {
  check_datum(x);
  const RootDatum& rd = *x.datum;
  const WeylGroup& wg = rd.weyl();
  IVec p = alcove_point_scaled(x);
  auto [dom, wit] = dominant_representative_cw(rd, to_ratvec(p));
  for (int i = 0; i < rd.rank(); ++i)
    assert(dom[i] > 0);  // alcove points never meet a wall
  Eta e;
  e.eta1 = x.w;
  e.eta2 = wg.inverse(wit);
  e.eta_delta = wg.mul(
      rd.delta_inv_on_w(wg.mul(wg.inverse(e.eta2), e.eta1)), e.eta2);
  return e;
}

std::string ClassInvariants::str() const {
  return "nu_bar=" + ratvec_str(nu_bar) + " kappa=" + ivec_str(kappa);
}

// ---------------------------------------------------------------------------
// Twist

Twist::Twist(const RootDatum& rd, AffineElement z) : rd_(&rd), z_(std::move(z)) {
  if (z_.datum != &rd)
    fail("DatumMismatch", "twist element belongs to a different datum");
  if (length(z_) != 0)
    fail("NotLengthZero", "twist element must have length zero");
  z_inv_ = invert(z_);
  int ng = num_affine_gens(rd);
  gen_map_.resize(ng);
  std::vector<AffineElement> gens;
  for (int id = 0; id < ng; ++id)
    gens.push_back(affine_generator(rd, id));
  for (int id = 0; id < ng; ++id) {
    AffineElement img = compose(compose(z_, apply_delta(gens[id])), z_inv_);
    int found = -1;
    for (int k = 0; k < ng; ++k)
      if (gens[k] == img) {
        found = k;
        break;
      }
    assert(found >= 0);  // length-zero conjugation permutes the simple walls
    gen_map_[id] = found;
  }
  std::vector<IVec> rels;
  for (int i = 0; i < rd.rank(); ++i)
    rels.push_back(rd.roots()[rd.simple_root(i)].lam);
  IMat action = imat_mul(rd.weyl().lam_matrix(z_.w), rd.delta_lam());
  kappa_ = delta_coinvariants(smith_quotient(rd.rank(), rels), action);
}

bool Twist::quasi_split() const {
  return z_.w == 0 && ivec_is_zero(z_.lambda);
}

AffineElement Twist::apply(const AffineElement& x) const {
  return compose(compose(z_, apply_delta(x)), z_inv_);
}

// ---------------------------------------------------------------------------
// Newton point

namespace {

Newton newton_impl(const AffineElement& x, const IMat& lattice_action,
                   const std::function<AffineElement(const AffineElement&)>& act) {
  const RootDatum& rd = *x.datum;
  // smallest n with P_n = x act(x) ... act^{n-1}(x) a translation whose
  // vector is fixed by act^n; then nu = mu / n, stable under multiples
  long bound = 8L * rd.weyl().size() * rd.delta_order() + 8;
  AffineElement p = x;    // P_k
  AffineElement cur = x;  // act^{k-1}(x)
  IMat ak = lattice_action;
  Newton res;
  for (long k = 1; k <= bound; ++k) {
    if (p.w == 0 && imat_apply(ak, p.lambda) == p.lambda) {
      RatVec nu_cw = to_ratvec(rd.to_cw(p.lambda));
      for (Rat& q : nu_cw)
        q /= (long)k;
      res.exponent = (int)k;
      res.nu = rd.cw_to_coroot(nu_cw);
      res.nu_bar = rd.cw_to_coroot(dominant_representative_cw(rd, nu_cw).first);
      return res;
    }
    cur = act(cur);
    p = compose(p, cur);
    ak = imat_mul(ak, lattice_action);
  }
  fail("DatumMismatch", "Newton exponent search did not terminate");
}

}  // namespace

Newton newton(const AffineElement& x) {
  check_datum(x);
  return newton_impl(x, x.datum->delta_lam(),
                     [](const AffineElement& y) { return apply_delta(y); });
}

Newton newton(const AffineElement& x, const Twist& tw) {
  check_datum(x);
  IMat action =
      imat_mul(x.datum->weyl().lam_matrix(tw.z().w), x.datum->delta_lam());
  return newton_impl(x, action,
                     [&tw](const AffineElement& y) { return tw.apply(y); });
}

ClassInvariants sigma_invariants(const AffineElement& x) {
  check_datum(x);
  const RootDatum& rd = *x.datum;
  return {newton(x).nu_bar, rd.kappa_group(rd.full_mask()).project(x.lambda)};
}

ClassInvariants sigma_invariants(const AffineElement& x, const Twist& tw) {
  check_datum(x);
  return {newton(x, tw).nu_bar, tw.kappa_group().project(x.lambda)};
}

RatVec delta_average(const RootDatum& rd, const RatVec& v) {
  // delta permutes the simple coroots, so coroot coordinates permute too
  RatVec acc(rd.rank(), Rat(0));
  RatVec cur = v;
  for (int i = 0; i < rd.delta_order(); ++i) {
    acc = ratvec_add(acc, cur);
    RatVec nxt(rd.rank());
    for (int k = 0; k < rd.rank(); ++k)
      nxt[rd.delta_nodes()[k]] = cur[k];
    cur = std::move(nxt);
  }
  return ratvec_scale(acc, Rat(1, rd.delta_order()));
}

RatVec nu_of_vector(const RootDatum& rd, const RatVec& v) {
  RatVec avg = delta_average(rd, v);
  return rd.cw_to_coroot(
      dominant_representative_cw(rd, rd.coroot_to_cw(avg)).first);
}

std::vector<AffineElement> elements_up_to_length(const RootDatum& rd, int maxlen,
                                                 bool include_omega) {
  std::vector<AffineElement> ball;
  std::unordered_set<AffineElement, AffineElementHash> seen;
  std::vector<AffineElement> frontier = {identity_element(rd)};
  seen.insert(frontier[0]);
  ball.push_back(frontier[0]);
  int ng = num_affine_gens(rd);
  std::vector<AffineElement> gens;
  for (int id = 0; id < ng; ++id)
    gens.push_back(affine_generator(rd, id));
  for (int l = 1; l <= maxlen; ++l) {
    std::vector<AffineElement> next;
    for (const AffineElement& x : frontier)
      for (const AffineElement& s : gens) {
        AffineElement y = compose(x, s);
        if (seen.count(y))
          continue;
        if (length(y) == l) {
          seen.insert(y);
          next.push_back(y);
        }
      }
    for (const AffineElement& y : next)
      ball.push_back(y);
    frontier = std::move(next);
  }
  std::vector<AffineElement> out;
  if (include_omega) {
    for (const AffineElement& tau : omega_elements(rd))
      for (const AffineElement& x : ball)
        out.push_back(compose(x, tau));
  } else {
    out = std::move(ball);
  }
  std::vector<std::pair<int, AffineElement>> keyed;
  keyed.reserve(out.size());
  for (AffineElement& x : out) {
    int l = length(x);
    keyed.emplace_back(l, std::move(x));
  }
  std::sort(keyed.begin(), keyed.end(),
            [](const std::pair<int, AffineElement>& a,
               const std::pair<int, AffineElement>& b) {
              return a.first != b.first ? a.first < b.first
                                        : a.second < b.second;
            });
  out.clear();
  for (auto& [l, x] : keyed)
    out.push_back(std::move(x));
  return out;
}

}  // namespace adlv
