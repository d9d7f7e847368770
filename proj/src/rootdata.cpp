#include "adlv/rootdata.hpp"

#include <algorithm>
#include <cassert>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "adlv/error.hpp"

namespace adlv {

namespace {

// cartan[i][j] = pairing of simple coroot i with simple root j
IMat component_cartan(char family, int rank) {
  IMat c(rank, IVec(rank, 0));
  for (int i = 0; i < rank; ++i)
    c[i][i] = 2;
  auto bond = [&](int i, int j, Int cij, Int cji) {
    c[i][j] = cij;
    c[j][i] = cji;
  };
  auto chain = [&](int from, int to) {
    for (int i = from; i < to; ++i)
      bond(i, i + 1, -1, -1);
  };
  switch (family) {
    case 'A':
      chain(0, rank - 1);
      break;
    case 'B':  // last simple root short
      chain(0, rank - 2);
      bond(rank - 2, rank - 1, -1, -2);
      break;
    case 'C':  // last simple root long
      chain(0, rank - 2);
      bond(rank - 2, rank - 1, -2, -1);
      break;
    case 'D':
      chain(0, rank - 3);
      bond(rank - 3, rank - 2, -1, -1);
      bond(rank - 3, rank - 1, -1, -1);
      break;
    case 'E':
      // Bourbaki: chain 1-3-4-5-6(-7)(-8), node 2 attached to node 4
      bond(0, 2, -1, -1);
      chain(2, rank - 1);
      bond(1, 3, -1, -1);
      break;
    case 'F':  // nodes 1,2 long; 3,4 short
      bond(0, 1, -1, -1);
      bond(1, 2, -1, -2);
      bond(2, 3, -1, -1);
      break;
    case 'G':  // node 1 short, node 2 long
      bond(0, 1, -3, -1);
      break;
    default:
      fail("InvalidSpec", std::string("unknown family '") + family + "'");
  }
  return c;
}

void check_component(const ComponentSpec& cs) {
  int r = cs.rank;
  bool ok = false;
  switch (cs.family) {
    case 'A': ok = r >= 1; break;
    case 'B': ok = r >= 2; break;
    case 'C': ok = r >= 2; break;
    case 'D': ok = r >= 3; break;
    case 'E': ok = r >= 6 && r <= 8; break;
    case 'F': ok = r == 4; break;
    case 'G': ok = r == 2; break;
    default: ok = false;
  }
  if (!ok)
    fail("InvalidSpec", std::string("unsupported component ") + cs.family +
                            std::to_string(r));
}

long weyl_order(const ComponentSpec& cs) {
  auto fact = [](int n) {
    long f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
  };
  switch (cs.family) {
    case 'A': return fact(cs.rank + 1);
    case 'B':
    case 'C': return fact(cs.rank) << cs.rank;
    case 'D': return fact(cs.rank) << (cs.rank - 1);
    case 'E': return cs.rank == 6 ? 51840L : cs.rank == 7 ? 2903040L : 696729600L;
    case 'F': return 1152;
    case 'G': return 12;
  }
  return 0;
}

std::string perm_key(const std::vector<uint16_t>& p) {
  return std::string(reinterpret_cast<const char*>(p.data()),
                     p.size() * sizeof(uint16_t));
}

IVec irow(const IMat& m, int i) { return m[i]; }

}  // namespace

// ---------------------------------------------------------------------------
// FinAbGroup

IVec FinAbGroup::project(const IVec& v) const {
  if ((int)v.size() != ambient)
    fail("DatumMismatch", "project: vector has wrong size");
  IVec y = imat_apply(proj, v);
  for (size_t i = 0; i < factors.size(); ++i)
    if (factors[i] > 1) {
      y[i] %= factors[i];
      if (y[i] < 0) y[i] += factors[i];
    }
  return y;
}

Int FinAbGroup::order() const {
  Int n = 1;
  for (Int d : factors) {
    if (d == 0) return 0;
    n *= d;
  }
  return n;
}

FinAbGroup smith_quotient(int ambient_rank, const std::vector<IVec>& relations) {
  for (const IVec& r : relations)
    if ((int)r.size() != ambient_rank)
      fail("DatumMismatch", "smith_quotient: relation has wrong size");
  FinAbGroup g;
  g.ambient = ambient_rank;
  g.relations = relations;
  if (relations.empty()) {
    g.factors.assign(ambient_rank, 0);
    g.proj = imat_identity(ambient_rank);
    return g;
  }
  // columns of a = relations
  IMat a(ambient_rank, IVec(relations.size(), 0));
  for (size_t k = 0; k < relations.size(); ++k)
    for (int i = 0; i < ambient_rank; ++i)
      a[i][k] = relations[k][i];
  Smith s = smith_normal_form(a);
  for (int i = 0; i < s.rank; ++i) {
    Int d = s.d[i];
    if (d > 1) {
      g.factors.push_back(d);
      g.proj.push_back(irow(s.u, i));
    }
  }
  for (int i = s.rank; i < ambient_rank; ++i) {
    g.factors.push_back(0);
    g.proj.push_back(irow(s.u, i));
  }
  return g;
}

FinAbGroup delta_coinvariants(const FinAbGroup& g, const IMat& action) {
  if ((int)action.size() != g.ambient)
    fail("ActionNotCompatible", "action has wrong shape");
  // the action must map the relation lattice into itself
  if (!g.relations.empty()) {
    IMat rel_cols(g.ambient, IVec(g.relations.size(), 0));
    for (size_t k = 0; k < g.relations.size(); ++k)
      for (int i = 0; i < g.ambient; ++i)
        rel_cols[i][k] = g.relations[k][i];
    for (const IVec& r : g.relations)
      if (!solve_integer(rel_cols, imat_apply(action, r)))
        fail("ActionNotCompatible", "action does not preserve the relations");
  }
  std::vector<IVec> rels = g.relations;
  for (int i = 0; i < g.ambient; ++i) {
    IVec e(g.ambient, 0);
    e[i] = 1;
    IVec r = ivec_sub(e, imat_apply(action, e));
    if (!ivec_is_zero(r))
      rels.push_back(r);
  }
  return smith_quotient(g.ambient, rels);
}

// ---------------------------------------------------------------------------
// WeylGroup

int WeylGroup::mul(int a, int b) const {
  int w = a;
  int cur = b;
  // walk the shortlex word of b through the right-multiplication table
  std::vector<int> gens;
  while (cur != 0) {
    gens.push_back(pgen_[cur]);
    cur = parent_[cur];
  }
  for (auto it = gens.rbegin(); it != gens.rend(); ++it)
    w = right_[w][*it];
  return w;
}

std::vector<int> WeylGroup::word(int w) const {
  std::vector<int> gens;
  while (w != 0) {
    gens.push_back(pgen_[w]);
    w = parent_[w];
  }
  std::reverse(gens.begin(), gens.end());
  return gens;
}

int WeylGroup::from_perm(const std::vector<uint16_t>& p) const {
  auto it = index_.find(perm_key(p));
  if (it == index_.end())
    fail("DatumMismatch", "permutation is not a Weyl element");
  return it->second;
}

// ---------------------------------------------------------------------------
// datum construction

namespace {

struct RootBuilder {
  // generate the full root list by closing the simple roots under the
  // simple reflections, acting on simple-root coordinates
  static std::vector<Root> run(const IMat& cartan, const std::vector<int>& comp_of) {
    int n = (int)cartan.size();
    std::map<IVec, int> seen;
    std::map<IVec, IVec> coroot_of;  // rc -> coroot in simple-coroot coords
    std::vector<IVec> list;
    for (int i = 0; i < n; ++i) {
      IVec e(n, 0);
      e[i] = 1;
      seen.emplace(e, (int)list.size());
      coroot_of.emplace(e, e);
      list.push_back(e);
    }
    for (size_t head = 0; head < list.size(); ++head)
      for (int i = 0; i < n; ++i) {
        IVec rc = list[head];
        Int pair = ivec_dot(cartan[i], rc);
        rc[i] -= pair;
        if (seen.emplace(rc, (int)list.size()).second) {
          // coroots reflect alongside: s_i(b^) = b^ - <b^, a_i> a_i^
          IVec crc = coroot_of.at(list[head]);
          Int pairc = 0;
          for (int k = 0; k < n; ++k)
            pairc += crc[k] * cartan[k][i];
          crc[i] -= pairc;
          coroot_of.emplace(rc, std::move(crc));
          list.push_back(rc);
        }
      }
    std::vector<IVec> pos;
    for (const IVec& rc : list)
      if (std::all_of(rc.begin(), rc.end(), [](Int c) { return c >= 0; }))
        pos.push_back(rc);
    std::sort(pos.begin(), pos.end(), [](const IVec& a, const IVec& b) {
      Int ha = std::accumulate(a.begin(), a.end(), (Int)0);
      Int hb = std::accumulate(b.begin(), b.end(), (Int)0);
      return ha != hb ? ha < hb : a < b;
    });
    if (pos.size() * 2 != list.size())
      fail("InvalidSpec", "root generation failed");  // cannot happen
    std::vector<Root> roots(list.size());
    int np = (int)pos.size();
    for (int k = 0; k < np; ++k) {
      Root r;
      r.rc = pos[k];
      r.positive = true;
      r.negative = k + np;
      Root m;
      m.rc = ivec_neg(pos[k]);
      m.positive = false;
      m.negative = k;
      roots[k] = std::move(r);
      roots[k + np] = std::move(m);
    }
    IMat ct = imat_transpose(cartan);
    for (Root& r : roots) {
      r.height = (int)std::accumulate(r.rc.begin(), r.rc.end(), (Int)0);
      r.cw = imat_apply(ct, coroot_of.at(r.rc));
      for (int j = 0; j < n; ++j)
        if (r.rc[j] != 0) {
          r.support |= 1u << j;
          r.comp = comp_of[j];
        }
    }
    return roots;
  }
};

}  // namespace

std::optional<IVec> RootDatum::from_cw(const IVec& cw) const {
  IVec y = imat_apply(basis_adj_, cw);
  for (Int& v : y) {
    if (v % basis_det_ != 0)
      return std::nullopt;
    v /= basis_det_;
  }
  return y;
}

RatVec RootDatum::cw_to_coroot(const RatVec& cw) const {
  RatVec r(rank_, Rat(0));
  for (int i = 0; i < rank_; ++i)
    for (int j = 0; j < rank_; ++j)
      if (coroot_from_cw_[i][j] != 0)
        r[i] += coroot_from_cw_[i][j] * cw[j];
  return r;
}

RatVec RootDatum::coroot_to_cw(const RatVec& coroot) const {
  // cw = C^T * coroot
  RatVec r(rank_, Rat(0));
  for (int j = 0; j < rank_; ++j)
    for (int i = 0; i < rank_; ++i)
      if (cartan_[i][j] != 0)
        r[j] += Rat((long)cartan_[i][j]) * coroot[i];
  return r;
}

IVec RootDatum::delta_cw(const IVec& v) const {
  IVec r(rank_);
  for (int j = 0; j < rank_; ++j)
    r[delta_nodes_[j]] = v[j];
  return r;
}

RatVec RootDatum::delta_cw(const RatVec& v) const {
  RatVec r(rank_);
  for (int j = 0; j < rank_; ++j)
    r[delta_nodes_[j]] = v[j];
  return r;
}

bool RootDatum::is_stable_subset(uint32_t j) const {
  return std::binary_search(stable_subsets_.begin(), stable_subsets_.end(), j,
                            [](uint32_t a, uint32_t b) {
                              auto ka = std::make_pair(__builtin_popcount(a), a);
                              auto kb = std::make_pair(__builtin_popcount(b), b);
                              return ka < kb;
                            });
}

bool RootDatum::in_levi(uint32_t j, int w) const {
  auto it = parabolic_.find(j);
  if (it == parabolic_.end())
    fail("JNotDeltaStable", "subset " + subset_str(j) + " is not delta-stable");
  return it->second.member[w] != 0;
}

const std::vector<int>& RootDatum::coset_reps(uint32_t j) const {
  auto it = parabolic_.find(j);
  if (it == parabolic_.end())
    fail("JNotDeltaStable", "subset " + subset_str(j) + " is not delta-stable");
  return it->second.reps;
}

const FinAbGroup& RootDatum::kappa_group(uint32_t j) const {
  auto it = parabolic_.find(j);
  if (it == parabolic_.end())
    fail("JNotDeltaStable", "subset " + subset_str(j) + " is not delta-stable");
  return it->second.kappa;
}

std::vector<int> RootDatum::nodes_of(uint32_t j) const {
  std::vector<int> nodes;
  for (int i = 0; i < rank_; ++i)
    if (j & (1u << i))
      nodes.push_back(i);
  return nodes;
}

std::string RootDatum::subset_str(uint32_t j) const {
  std::string s = "{";
  bool first = true;
  for (int node : nodes_of(j)) {
    if (!first) s += '.';
    s += std::to_string(node + 1);
    first = false;
  }
  return s + "}";
}

RootDatum build_root_datum(const GroupSpec& spec) {
  RootDatum rd;
  rd.spec_ = spec;
  if (spec.components.empty())
    fail("InvalidSpec", "no components given");
  long worder = 1;
  for (const ComponentSpec& cs : spec.components) {
    check_component(cs);
    worder *= weyl_order(cs);
    if (worder > (1L << 21))
      fail("InvalidSpec", "Weyl group too large for exhaustive enumeration");
  }
  int n = 0;
  for (const ComponentSpec& cs : spec.components)
    n += cs.rank;
  if (n > 30)
    fail("InvalidSpec", "total rank too large");
  rd.rank_ = n;

  // block Cartan matrix and component table
  rd.cartan_ = IMat(n, IVec(n, 0));
  std::vector<int> comp_of(n, 0);
  int off = 0;
  for (size_t c = 0; c < spec.components.size(); ++c) {
    const ComponentSpec& cs = spec.components[c];
    IMat block = component_cartan(cs.family, cs.rank);
    for (int i = 0; i < cs.rank; ++i)
      for (int j = 0; j < cs.rank; ++j)
        rd.cartan_[off + i][off + j] = block[i][j];
    Component comp;
    comp.family = cs.family;
    comp.rank = cs.rank;
    comp.offset = off;
    rd.comps_.push_back(comp);
    for (int i = 0; i < cs.rank; ++i)
      comp_of[off + i] = (int)c;
    off += cs.rank;
  }

  rd.roots_ = RootBuilder::run(rd.cartan_, comp_of);
  rd.num_pos_ = (int)rd.roots_.size() / 2;
  rd.simple_.assign(n, -1);
  for (int r = 0; r < rd.num_pos_; ++r)
    if (rd.roots_[r].height == 1)
      for (int i = 0; i < n; ++i)
        if (rd.roots_[r].rc[i] == 1)
          rd.simple_[i] = r;
  for (Component& comp : rd.comps_) {
    int best = -1;
    for (int r = 0; r < rd.num_pos_; ++r)
      if (rd.roots_[r].comp == (int)(&comp - rd.comps_.data()))
        if (best < 0 || rd.roots_[r].height > rd.roots_[best].height)
          best = r;
    comp.highest = best;
    comp.coxeter = rd.roots_[best].height + 1;
  }

  // lattice basis in coweight coordinates
  switch (spec.lattice.kind) {
    case LatticeSpec::Kind::Adjoint:
      rd.basis_cw_ = imat_identity(n);
      break;
    case LatticeSpec::Kind::SimplyConnected:
      rd.basis_cw_ = imat_transpose(rd.cartan_);
      break;
    case LatticeSpec::Kind::Explicit: {
      if ((int)spec.lattice.generators.size() != n)
        fail("InvalidLattice", "explicit lattice needs exactly rank generators");
      rd.basis_cw_ = IMat(n, IVec(n, 0));
      for (int k = 0; k < n; ++k) {
        const RatVec& g = spec.lattice.generators[k];
        if ((int)g.size() != n)
          fail("InvalidLattice", "lattice generator has wrong size");
        for (int j = 0; j < n; ++j) {
          if (!is_integer(g[j]))
            fail("InvalidLattice",
                 "lattice is not contained in the coweight lattice");
          rd.basis_cw_[j][k] = (Int)g[j].get_num().get_si();
        }
      }
      break;
    }
  }
  {
    // adjugate = det * inverse; both exactly integral for an integer basis
    Rat det = det_rational(rmat_from(rd.basis_cw_));
    if (det == 0)
      fail("InvalidLattice", "lattice generators are linearly dependent");
    auto inv = invert_rational(rmat_from(rd.basis_cw_));
    rd.basis_det_ = (Int)det.get_num().get_si();
    rd.basis_adj_ = IMat(n, IVec(n, 0));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Rat e = (*inv)[i][j] * det;
        if (!is_integer(e))
          fail("InvalidLattice", "lattice basis inversion failed");
        rd.basis_adj_[i][j] = (Int)e.get_num().get_si();
      }
  }
  // simple coroots must lie in the lattice
  for (int i = 0; i < n; ++i)
    if (!rd.from_cw(rd.cartan_[i]))
      fail("InvalidLattice", "lattice does not contain the coroot lattice");
  // hence so does every coroot
  for (Root& r : rd.roots_)
    r.lam = *rd.from_cw(r.cw);

  rd.coroot_from_cw_ = *invert_rational(rmat_from(imat_transpose(rd.cartan_)));

  // base alcove interior point, scaled to integers
  {
    Int d = 1;
    for (const Component& comp : rd.comps_)
      d = std::lcm(d, (Int)(2 * (comp.coxeter - 1)));
    rd.denom_ = d;
    rd.p0_scaled_.assign(n, 0);
    for (int j = 0; j < n; ++j) {
      const Component& comp = rd.comps_[comp_of[j]];
      rd.p0_scaled_[j] = -d / (2 * (comp.coxeter - 1));
    }
  }

  // Weyl group enumeration (right-multiplication BFS, shortlex words)
  {
    WeylGroup& w = rd.weyl_;
    int nroots = (int)rd.roots_.size();
    w.ngens_ = n;
    w.gen_.assign(n, -1);
    std::map<IVec, int> root_index;
    for (int r = 0; r < nroots; ++r)
      root_index.emplace(rd.roots_[r].rc, r);
    // generator data
    std::vector<std::vector<uint16_t>> gen_perm(n);
    std::vector<IMat> gen_cw(n), gen_lam(n);
    for (int i = 0; i < n; ++i) {
      gen_perm[i].resize(nroots);
      for (int r = 0; r < nroots; ++r) {
        IVec rc = rd.roots_[r].rc;
        Int pair = ivec_dot(rd.cartan_[i], rc);
        rc[i] -= pair;
        gen_perm[i][r] = (uint16_t)root_index.at(rc);
      }
      IMat m = imat_identity(n);
      for (int j = 0; j < n; ++j)
        m[j][i] -= rd.cartan_[i][j];
      gen_cw[i] = std::move(m);
      IVec coroot_lam = *rd.from_cw(rd.cartan_[i]);
      IMat ml = imat_identity(n);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          ml[a][b] -= coroot_lam[a] * rd.basis_cw_[i][b];
      gen_lam[i] = std::move(ml);
    }
    std::vector<uint16_t> id_perm(nroots);
    for (int r = 0; r < nroots; ++r)
      id_perm[r] = (uint16_t)r;
    w.perm_.push_back(id_perm);
    w.cwm_.push_back(imat_identity(n));
    w.lamm_.push_back(imat_identity(n));
    w.len_.push_back(0);
    w.parent_.push_back(0);
    w.pgen_.push_back(-1);
    w.index_.emplace(perm_key(id_perm), 0);
    w.right_.push_back(std::vector<int>(n, -1));
    for (size_t head = 0; head < w.perm_.size(); ++head)
      for (int g = 0; g < n; ++g) {
        std::vector<uint16_t> p(nroots);
        for (int r = 0; r < nroots; ++r)
          p[r] = w.perm_[head][gen_perm[g][r]];  // (w·s)(r) = w(s(r))
        auto [it, fresh] = w.index_.emplace(perm_key(p), (int)w.perm_.size());
        if (fresh) {
          int lcount = 0;
          for (int r = 0; r < rd.num_pos_; ++r)
            if (!rd.roots_[p[r]].positive)
              ++lcount;
          w.perm_.push_back(p);
          w.cwm_.push_back(imat_mul(w.cwm_[head], gen_cw[g]));
          w.lamm_.push_back(imat_mul(w.lamm_[head], gen_lam[g]));
          w.len_.push_back(lcount);
          w.parent_.push_back((int)head);
          w.pgen_.push_back(g);
          w.right_.push_back(std::vector<int>(n, -1));
        }
        w.right_[head][g] = it->second;
      }
    if ((long)w.perm_.size() != worder)
      fail("InvalidSpec", "Weyl enumeration mismatch");  // cannot happen
    for (int i = 0; i < n; ++i)
      w.gen_[i] = w.right_[0][i];
    w.inv_.resize(w.perm_.size());
    for (size_t e = 0; e < w.perm_.size(); ++e) {
      std::vector<uint16_t> p(nroots);
      for (int r = 0; r < nroots; ++r)
        p[w.perm_[e][r]] = (uint16_t)r;
      w.inv_[e] = w.index_.at(perm_key(p));
    }
  }

  // diagram automorphism
  {
    std::vector<int> d = spec.delta;
    if (d.empty()) {
      d.resize(n);
      std::iota(d.begin(), d.end(), 0);
    }
    if ((int)d.size() != n)
      fail("InvalidDelta", "node permutation has wrong size");
    std::vector<char> hit(n, 0);
    for (int i : d) {
      if (i < 0 || i >= n || hit[i])
        fail("InvalidDelta", "node permutation is not a permutation");
      hit[i] = 1;
    }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (rd.cartan_[d[i]][d[j]] != rd.cartan_[i][j])
          fail("InvalidDelta", "permutation does not preserve the Cartan matrix");
    rd.delta_nodes_ = d;
    rd.delta_order_ = 1;
    {
      std::vector<int> p = d;
      std::vector<int> idp(n);
      std::iota(idp.begin(), idp.end(), 0);
      while (p != idp) {
        std::vector<int> q(n);
        for (int i = 0; i < n; ++i)
          q[i] = d[p[i]];
        p = q;
        ++rd.delta_order_;
      }
    }
    // action on roots
    std::map<IVec, int> root_index;
    for (size_t r = 0; r < rd.roots_.size(); ++r)
      root_index.emplace(rd.roots_[r].rc, (int)r);
    rd.delta_root_.resize(rd.roots_.size());
    for (size_t r = 0; r < rd.roots_.size(); ++r) {
      IVec rc(n, 0);
      for (int k = 0; k < n; ++k)
        rc[d[k]] = rd.roots_[r].rc[k];
      rd.delta_root_[r] = root_index.at(rc);
    }
    // action on the lattice: delta_cw permutes coweight coordinates
    rd.delta_lam_ = IMat(n, IVec(n, 0));
    for (int k = 0; k < n; ++k) {
      IVec col(n);
      for (int j = 0; j < n; ++j)
        col[j] = rd.basis_cw_[j][k];
      auto img = rd.from_cw(rd.delta_cw(col));
      if (!img)
        fail("InvalidDelta", "lattice is not delta-stable");
      for (int j = 0; j < n; ++j)
        rd.delta_lam_[j][k] = (*img)[j];
    }
    // action on W by conjugation
    rd.delta_w_.resize(rd.weyl_.size());
    rd.delta_w_inv_.resize(rd.weyl_.size());
    std::vector<int> droot_inv(rd.roots_.size());
    for (size_t r = 0; r < rd.roots_.size(); ++r)
      droot_inv[rd.delta_root_[r]] = (int)r;
    for (int e = 0; e < rd.weyl_.size(); ++e) {
      std::vector<uint16_t> p(rd.roots_.size());
      for (size_t r = 0; r < rd.roots_.size(); ++r)
        p[r] = (uint16_t)rd.delta_root_[rd.weyl_.act_root(e, droot_inv[r])];
      rd.delta_w_[e] = rd.weyl_.from_perm(p);
    }
    for (int e = 0; e < rd.weyl_.size(); ++e)
      rd.delta_w_inv_[rd.delta_w_[e]] = e;
  }

  // delta-stable subsets: unions of node orbits
  {
    std::vector<int> orbit_of(n, -1);
    std::vector<uint32_t> orbit_masks;
    for (int i = 0; i < n; ++i)
      if (orbit_of[i] < 0) {
        uint32_t mask = 0;
        int j = i;
        do {
          orbit_of[j] = (int)orbit_masks.size();
          mask |= 1u << j;
          j = rd.delta_nodes_[j];
        } while (j != i);
        orbit_masks.push_back(mask);
      }
    int m = (int)orbit_masks.size();
    for (uint32_t pick = 0; pick < (1u << m); ++pick) {
      uint32_t mask = 0;
      for (int k = 0; k < m; ++k)
        if (pick & (1u << k))
          mask |= orbit_masks[k];
      rd.stable_subsets_.push_back(mask);
    }
    std::sort(rd.stable_subsets_.begin(), rd.stable_subsets_.end(),
              [](uint32_t a, uint32_t b) {
                int pa = __builtin_popcount(a), pb = __builtin_popcount(b);
                return pa != pb ? pa < pb : a < b;
              });
    rd.full_mask_ = (n == 32) ? ~0u : ((1u << n) - 1);
    // delta-connected: no proper nonempty stable subset is disconnected
    // from its complement in the diagram
    rd.delta_connected_ = true;
    for (uint32_t j : rd.stable_subsets_) {
      if (j == 0 || j == rd.full_mask_) continue;
      bool split = true;
      for (int a = 0; a < n && split; ++a)
        for (int b = 0; b < n && split; ++b)
          if ((j & (1u << a)) && !(j & (1u << b)) && rd.cartan_[a][b] != 0)
            split = false;
      if (split) {
        rd.delta_connected_ = false;
        break;
      }
    }
  }

  // parabolic data per stable subset
  for (uint32_t j : rd.stable_subsets_) {
    RootDatum::Parabolic p;
    p.member.assign(rd.weyl_.size(), 0);
    std::vector<int> queue = {0};
    p.member[0] = 1;
    while (!queue.empty()) {
      int wv = queue.back();
      queue.pop_back();
      for (int node : rd.nodes_of(j)) {
        int nx = rd.weyl_.right_mul_gen(wv, node);
        if (!p.member[nx]) {
          p.member[nx] = 1;
          queue.push_back(nx);
        }
      }
    }
    for (int e = 0; e < rd.weyl_.size(); ++e) {
      bool rep = true;
      for (int node : rd.nodes_of(j))
        if (!rd.roots_[rd.weyl_.act_root(e, rd.simple_[node])].positive) {
          rep = false;
          break;
        }
      if (rep)
        p.reps.push_back(e);
    }
    std::stable_sort(p.reps.begin(), p.reps.end(), [&](int a, int b) {
      return rd.weyl_.length(a) < rd.weyl_.length(b);
    });
    std::vector<IVec> rels;
    for (int node : rd.nodes_of(j))
      rels.push_back(*rd.from_cw(rd.cartan_[node]));
    p.kappa = delta_coinvariants(smith_quotient(n, rels), rd.delta_lam_);
    rd.parabolic_.emplace(j, std::move(p));
  }
  {
    std::vector<IVec> rels;
    for (int i = 0; i < n; ++i)
      rels.push_back(*rd.from_cw(rd.cartan_[i]));
    rd.lambda_mod_q_ = smith_quotient(n, rels);
  }
  return rd;
}

std::pair<RatVec, int> dominant_representative_cw(const RootDatum& rd, RatVec v) {
  const WeylGroup& w = rd.weyl();
  int acc = 0;
  for (;;) {
    int neg = -1;
    for (int i = 0; i < rd.rank(); ++i)
      if (v[i] < 0) {
        neg = i;
        break;
      }
    if (neg < 0)
      return {v, acc};
    // reflect: coweight coordinates transform by subtracting v[i] * cartan row
    Rat c = v[neg];
    for (int j = 0; j < rd.rank(); ++j)
      if (rd.cartan()[neg][j] != 0)
        v[j] -= c * Rat((long)rd.cartan()[neg][j]);
    acc = w.mul(w.generator(neg), acc);
  }
}

std::pair<RatVec, int> dominant_representative(const RootDatum& rd, const RatVec& v) {
  auto [dom_cw, w] = dominant_representative_cw(rd, rd.coroot_to_cw(v));
  return {rd.cw_to_coroot(dom_cw), w};
}

std::vector<uint32_t> delta_stable_subsets(const RootDatum& rd) {
  return rd.stable_subsets();
}

// ---------------------------------------------------------------------------
// GroupSpec JSON

GroupSpec GroupSpec::from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    fail("ParseError", std::string("bad group JSON: ") + e.what());
  }
  GroupSpec spec;
  if (!j.contains("cartan") || !j["cartan"].is_array() || j["cartan"].empty())
    fail("InvalidSpec", "group JSON needs a nonempty \"cartan\" array");
  for (const auto& c : j["cartan"]) {
    ComponentSpec cs;
    std::string type = c.value("type", "");
    if (type.size() != 1)
      fail("InvalidSpec", "component \"type\" must be a single letter");
    cs.family = type[0];
    cs.rank = c.value("rank", 0);
    spec.components.push_back(cs);
  }
  int n = 0;
  for (const ComponentSpec& cs : spec.components)
    n += cs.rank;
  if (j.contains("lattice")) {
    const auto& l = j["lattice"];
    if (l.is_string()) {
      std::string tag = l.get<std::string>();
      if (tag == "adjoint")
        spec.lattice.kind = LatticeSpec::Kind::Adjoint;
      else if (tag == "simply_connected")
        spec.lattice.kind = LatticeSpec::Kind::SimplyConnected;
      else
        fail("InvalidLattice", "unknown lattice tag '" + tag + "'");
    } else if (l.is_object() && l.contains("generators")) {
      spec.lattice.kind = LatticeSpec::Kind::Explicit;
      for (const auto& row : l["generators"]) {
        RatVec v;
        for (const auto& entry : row) {
          if (entry.is_string())
            v.push_back(parse_rat(entry.get<std::string>()));
          else if (entry.is_number_integer())
            v.push_back(Rat((long)entry.get<long>()));
          else
            fail("InvalidLattice", "lattice entries must be integers or p/q strings");
        }
        spec.lattice.generators.push_back(std::move(v));
      }
    } else {
      fail("InvalidLattice", "lattice must be a tag or {\"generators\": [...]}");
    }
  }
  if (j.contains("delta")) {
    const auto& d = j["delta"];
    const auto& arr = d.is_object() ? d.at("node_perm") : d;
    if (!arr.is_array())
      fail("InvalidDelta", "delta must be a node permutation array");
    for (const auto& e : arr) {
      int v = e.get<int>();
      if (v < 1 || v > n)
        fail("InvalidDelta", "delta entries are 1-based node ids");
      spec.delta.push_back(v - 1);
    }
  }
  return spec;
}

GroupSpec GroupSpec::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    fail("ParseError", "cannot open group file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_json_text(ss.str());
}

}  // namespace adlv
