#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "adlv/error.hpp"
#include "adlv/rootdata.hpp"
#include "test_util.hpp"

using namespace adlv;
using namespace adlv::testutil;

namespace {

std::string simple_spec(char family, int rank) {
  return std::string(R"({"cartan":[{"type":")") + family +
         R"(","rank":)" + std::to_string(rank) + R"(}],"lattice":"adjoint"})";
}

// Invariant factors of Z^rank / (coroot lattice + (1-delta) Lambda), computed
// in one Smith pass; independent of the datum's composed construction.
std::vector<Int> kappa_factors_direct(const RootDatum& rd) {
  std::vector<IVec> rels;
  for (const Root& r : rd.roots())
    if (r.positive)
      rels.push_back(r.lam);
  for (int i = 0; i < rd.rank(); ++i) {
    IVec e(rd.rank(), 0);
    e[i] = 1;
    rels.push_back(ivec_sub(e, imat_apply(rd.delta_lam(), e)));
  }
  return smith_quotient(rd.rank(), rels).factors;
}

}  // namespace

TEST_CASE("construction yields the classical sizes for each family") {
  struct Row {
    char family;
    int rank, weyl, roots, coxeter;
    Int pq;  // order of the adjoint-lattice quotient by the coroot lattice
  };
  const Row rows[] = {
      {'A', 1, 2, 2, 2, 2},     {'A', 2, 6, 6, 3, 3},
      {'A', 3, 24, 12, 4, 4},   {'B', 3, 48, 18, 6, 2},
      {'C', 2, 8, 8, 4, 2},     {'D', 4, 192, 24, 6, 4},
      {'F', 4, 1152, 48, 12, 1}, {'G', 2, 12, 12, 6, 1},
  };
  for (const Row& r : rows) {
    CAPTURE(r.family);
    CAPTURE(r.rank);
    const RootDatum& rd = datum(simple_spec(r.family, r.rank));
    CHECK(rd.weyl().size() == r.weyl);
    CHECK((int)rd.roots().size() == r.roots);
    CHECK(rd.num_pos() * 2 == (int)rd.roots().size());
    CHECK(rd.components()[0].coxeter == r.coxeter);
    CHECK(rd.lambda_mod_coroots().order() == r.pq);
    // the highest root has height coxeter - 1
    CHECK(rd.roots()[rd.components()[0].highest].height == r.coxeter - 1);
  }
}

TEST_CASE("pairings match the Cartan matrix and the base point is interior") {
  for (const char* spec : {kA2, kC2, kG2, kA3, kA1A1}) {
    const RootDatum& rd = datum(spec);
    for (int i = 0; i < rd.rank(); ++i)
      for (int j = 0; j < rd.rank(); ++j) {
        // <alpha_i^, alpha_j> via the coroot's coweight coordinates
        CHECK(rd.roots()[rd.simple_root(i)].cw[j] == rd.cartan()[i][j]);
      }
    for (const Root& r : rd.roots()) {
      if (!r.positive)
        continue;
      Int p = ivec_dot(r.rc, rd.p0_scaled());
      CHECK(p < 0);
      CHECK(p > -rd.denom());
    }
  }
}

TEST_CASE("permutation and matrix realizations of the Weyl group agree") {
  for (const char* spec : {kC2, kA2Swap, kA1A1}) {
    const RootDatum& rd = datum(spec);
    const WeylGroup& wg = rd.weyl();
    for (int w = 0; w < wg.size(); ++w)
      for (int r = 0; r < (int)rd.roots().size(); ++r) {
        const Root& image = rd.roots()[wg.act_root(w, r)];
        CHECK(image.cw == wg.act_cw(w, rd.roots()[r].cw));
        CHECK(image.lam == wg.act_lam(w, rd.roots()[r].lam));
      }
    // generators permute the root set with exactly one positive root flipped
    for (int i = 0; i < rd.rank(); ++i) {
      int s = wg.generator(i);
      int flipped = 0;
      for (int r = 0; r < (int)rd.roots().size(); ++r)
        if (rd.roots()[r].positive && !rd.roots()[wg.act_root(s, r)].positive)
          ++flipped;
      CHECK(flipped == 1);
    }
  }
}

TEST_CASE("reduced words multiply back and have the stated length") {
  const RootDatum& rd = datum(kC2);
  const WeylGroup& wg = rd.weyl();
  CHECK(wg.word(0).empty());
  for (int w = 0; w < wg.size(); ++w) {
    std::vector<int> word = wg.word(w);
    CHECK((int)word.size() == wg.length(w));
    int prod = 0;
    for (int node : word)
      prod = wg.mul(prod, wg.generator(node));
    CHECK(prod == w);
  }
  // length is the number of positive roots sent negative
  for (int w = 0; w < wg.size(); ++w) {
    int inversions = 0;
    for (int r = 0; r < (int)rd.roots().size(); ++r)
      if (rd.roots()[r].positive && !rd.roots()[wg.act_root(w, r)].positive)
        ++inversions;
    CHECK(inversions == wg.length(w));
  }
}

TEST_CASE("group spec validation rejects malformed input") {
  try {
    datum(R"({"cartan":[{"type":"Z","rank":2}],"lattice":"adjoint"})");
    FAIL("unknown family accepted");
  } catch (const Error& e) {
    CHECK(e.code() == "InvalidSpec");
  }
  CHECK_THROWS_AS(datum(R"({"cartan":[],"lattice":"adjoint"})"), Error);
  CHECK_THROWS_AS(datum(R"({"cartan":[{"type":"A","rank":2}],"lattice":"x"})"),
                  Error);
  CHECK_THROWS_AS(datum("not json"), Error);

  // node permutations: wrong arity, not bijective, Cartan mismatch
  CHECK_THROWS_AS(
      datum(
          R"({"cartan":[{"type":"A","rank":2}],"lattice":"adjoint","delta":{"node_perm":[1]}})"),
      Error);
  CHECK_THROWS_AS(
      datum(
          R"({"cartan":[{"type":"A","rank":2}],"lattice":"adjoint","delta":{"node_perm":[1,1]}})"),
      Error);
  try {
    datum(
        R"({"cartan":[{"type":"C","rank":2}],"lattice":"adjoint","delta":{"node_perm":[2,1]}})");
    FAIL("asymmetric Cartan matrix accepted a node swap");
  } catch (const Error& e) {
    CHECK(e.code() == "InvalidDelta");
  }
  // the A2 diagram does admit the swap
  CHECK(datum(kA2Swap).delta_order() == 2);
}

TEST_CASE("explicit lattices are checked against both inclusions") {
  // between coroot and coweight lattice: A1 has only the two extremes
  try {
    datum(
        R"({"cartan":[{"type":"A","rank":1}],"lattice":{"generators":[["1/2"]]}})");
    FAIL("vector outside the coweight lattice accepted");
  } catch (const Error& e) {
    CHECK(e.code() == "InvalidLattice");
  }
  try {
    datum(R"({"cartan":[{"type":"A","rank":1}],"lattice":{"generators":[[4]]}})");
    FAIL("lattice missing the coroots accepted");
  } catch (const Error& e) {
    CHECK(e.code() == "InvalidLattice");
  }
  const RootDatum& sc = datum(
      R"({"cartan":[{"type":"A","rank":1}],"lattice":{"generators":[[2]]}})");
  CHECK(sc.lambda_mod_coroots().trivial());

  // D4: the intermediate lattice generated by the first fundamental coweight
  // is stable under the 3<->4 flip but not under the rotation 1->3->4->1
  std::string d4_lat =
      R"("lattice":{"generators":[[2,-1,0,0],[-1,2,-1,-1],[0,-1,2,0],[1,0,0,0]]})";
  std::string d4_flip = R"({"cartan":[{"type":"D","rank":4}],)" + d4_lat +
                        R"(,"delta":{"node_perm":[1,2,4,3]}})";
  std::string d4_rot = R"({"cartan":[{"type":"D","rank":4}],)" + d4_lat +
                       R"(,"delta":{"node_perm":[3,2,4,1]}})";
  CHECK(datum(d4_flip).lambda_mod_coroots().order() == 2);
  try {
    datum(d4_rot);
    FAIL("lattice not stable under the rotation accepted");
  } catch (const Error& e) {
    CHECK(e.code() == "InvalidDelta");
  }
}

TEST_CASE("finite abelian quotients have canonical invariant factors") {
  const RootDatum& a1 = datum(kA1);
  const RootDatum& a2 = datum(kA2);
  const RootDatum& a3 = datum(kA3);

  auto coroot_rows = [](const RootDatum& rd, std::vector<int> nodes) {
    std::vector<IVec> rows;
    for (int n : nodes)
      rows.push_back(rd.roots()[rd.simple_root(n)].lam);
    return rows;
  };

  CHECK(smith_quotient(1, coroot_rows(a1, {0})).factors == std::vector<Int>{2});
  CHECK(smith_quotient(2, coroot_rows(a2, {0, 1})).factors ==
        std::vector<Int>{3});
  // rank-3 ambient over the sublattice spanned by the outer coroots:
  // one free factor and one torsion factor of order two
  FinAbGroup j13 = smith_quotient(3, coroot_rows(a3, {0, 2}));
  CHECK(j13.factors == std::vector<Int>{2, 0});
  CHECK(j13.order() == 0);
  for (const IVec& rel : coroot_rows(a3, {0, 2}))
    CHECK(ivec_is_zero(j13.project(rel)));
  CHECK(ivec_is_zero(j13.project(IVec{0, 0, 0})));

  // two vectors project equally exactly when their difference lies in the
  // relation lattice
  std::vector<IVec> rel_rows = coroot_rows(a3, {0, 2});
  IMat rel_cols(3, IVec(2));
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 2; ++k)
      rel_cols[i][k] = rel_rows[k][i];
  std::vector<IVec> grid;
  for (Int x = -2; x <= 2; ++x)
    for (Int y = -2; y <= 2; ++y)
      for (Int zc = -2; zc <= 2; ++zc)
        grid.push_back({x, y, zc});
  for (const IVec& u : grid)
    for (const IVec& v : grid) {
      bool same_class = solve_integer(rel_cols, ivec_sub(u, v)).has_value();
      CHECK((j13.project(u) == j13.project(v)) == same_class);
    }
}

TEST_CASE("coinvariants under a lattice action reduce the quotient") {
  // identity action keeps the group
  FinAbGroup z2 = smith_quotient(1, {{2}});
  CHECK(delta_coinvariants(z2, imat_identity(1)).factors ==
        std::vector<Int>{2});
  // negation on a three-element group: doubling is invertible, so nothing
  // survives
  FinAbGroup z3 = smith_quotient(1, {{3}});
  CHECK(delta_coinvariants(z3, {{-1}}).factors.empty());
  // coordinate swap on the free rank-2 lattice: the diagonal survives
  FinAbGroup z_z = smith_quotient(2, {});
  CHECK(delta_coinvariants(z_z, {{0, 1}, {1, 0}}).factors ==
        std::vector<Int>{0});
  // an action that does not preserve the relation lattice is rejected
  FinAbGroup mixed = smith_quotient(2, {{2, 0}});
  CHECK_THROWS_AS(delta_coinvariants(mixed, {{0, 1}, {1, 0}}), Error);
}

TEST_CASE("the composed class group matches a one-pass construction") {
  struct Row {
    const char* spec;
    std::vector<Int> factors;
  };
  const Row rows[] = {
      {kA1, {2}},      {kA2, {3}},        {kA2Swap, {}}, {kA3, {4}},
      {kA3Flip, {2}},  {kC2, {2}},        {kG2, {}},     {kA1A1, {2, 2}},
      {kA1A1Swap, {2}},
  };
  for (const Row& r : rows) {
    CAPTURE(r.spec);
    const RootDatum& rd = datum(r.spec);
    CHECK(rd.kappa_group(rd.full_mask()).factors == r.factors);
    CHECK(kappa_factors_direct(rd) == r.factors);
  }
}

TEST_CASE("dominant representatives are unique, idempotent and orbit-stable") {
  const RootDatum& a1 = datum(kA1);
  auto [v1, w1] = dominant_representative(a1, rats({"-1"}));
  CHECK(v1 == rats({"1"}));
  CHECK(w1 == a1.weyl().generator(0));
  CHECK(dominant_representative(a1, rats({"0"})).first == rats({"0"}));

  const RootDatum& a2 = datum(kA2);
  RatVec v = rats({"1", "-1"});  // alpha_1^ - alpha_2^ in coroot coordinates
  auto [dom, wit] = dominant_representative(a2, v);
  // oracle: walk the whole orbit; exactly one member is dominant
  const WeylGroup& wg = a2.weyl();
  RatVec vcw = a2.coroot_to_cw(v);
  std::set<std::string> dominant_images;
  for (int w = 0; w < wg.size(); ++w) {
    RatVec img = wg.act_cw(w, vcw);
    bool ok = true;
    for (const Rat& c : img)
      if (c < 0)
        ok = false;
    if (ok) {
      dominant_images.insert(ratvec_str(img));
      CHECK(a2.cw_to_coroot(img) == dom);
    }
  }
  // the orbit touches the dominant cone in exactly one vector (possibly with
  // a nontrivial stabilizer)
  CHECK(dominant_images.size() == 1);
  CHECK(a2.cw_to_coroot(wg.act_cw(wit, vcw)) == dom);
  CHECK(dominant_representative(a2, dom).first == dom);
  for (int u = 0; u < wg.size(); ++u) {
    RatVec moved = a2.cw_to_coroot(wg.act_cw(u, vcw));
    CHECK(dominant_representative(a2, moved).first == dom);
  }

  // boundary vectors (nontrivial stabilizer) still give one canonical output
  const RootDatum& c2 = datum(kC2);
  RatVec edge = c2.cw_to_coroot(rats({"1", "0"}));
  RatVec dom_edge = dominant_representative(c2, edge).first;
  for (int u = 0; u < c2.weyl().size(); ++u) {
    RatVec moved =
        c2.cw_to_coroot(c2.weyl().act_cw(u, c2.coroot_to_cw(edge)));
    CHECK(dominant_representative(c2, moved).first == dom_edge);
  }
}

TEST_CASE("stable subsets form a lattice and flag connectedness") {
  const RootDatum& a3f = datum(kA3Flip);
  std::vector<uint32_t> subs = a3f.stable_subsets();
  CHECK(subs == std::vector<uint32_t>{0u, 2u, 5u, 7u});
  CHECK(subs == delta_stable_subsets(a3f));
  CHECK(a3f.delta_connected());

  CHECK(datum(kA2Swap).stable_subsets() == std::vector<uint32_t>{0u, 3u});
  CHECK(datum(kA2Swap).delta_connected());
  CHECK(datum(kA2).stable_subsets() ==
        std::vector<uint32_t>{0u, 1u, 2u, 3u});
  CHECK(datum(kA1A1Swap).stable_subsets() == std::vector<uint32_t>{0u, 3u});
  CHECK(datum(kA1A1Swap).delta_connected());
  CHECK(!datum(kA1A1).delta_connected());
  CHECK(datum(kA1).delta_connected());

  for (const char* spec : {kA3Flip, kA2, kA1A1Swap}) {
    const RootDatum& rd = datum(spec);
    for (uint32_t a : rd.stable_subsets())
      for (uint32_t b : rd.stable_subsets()) {
        CHECK(rd.is_stable_subset(a | b));
        CHECK(rd.is_stable_subset(a & b));
      }
  }
  CHECK(!a3f.is_stable_subset(1u));
  CHECK_THROWS_AS(a3f.kappa_group(1u), Error);
  CHECK_THROWS_AS(a3f.coset_reps(1u), Error);
}

TEST_CASE("parabolic membership and coset representatives partition W") {
  const RootDatum& a2 = datum(kA2);
  const WeylGroup& wg = a2.weyl();
  uint32_t j = 1u;  // J = {1}
  const std::vector<int>& reps = a2.coset_reps(j);
  CHECK((int)reps.size() == 3);
  int members = 0;
  for (int w = 0; w < wg.size(); ++w)
    if (a2.in_levi(j, w))
      ++members;
  CHECK(members == 2);
  CHECK(a2.in_levi(j, 0));
  CHECK(a2.in_levi(j, wg.generator(0)));
  CHECK(!a2.in_levi(j, wg.generator(1)));

  // every w factors uniquely as rep * member, with the rep shortest
  std::set<int> seen;
  for (int r : reps)
    for (int w = 0; w < wg.size(); ++w) {
      if (!a2.in_levi(j, w))
        continue;
      int prod = wg.mul(r, w);
      CHECK(wg.length(prod) == wg.length(r) + wg.length(w));
      CHECK(seen.insert(prod).second);
    }
  CHECK((int)seen.size() == wg.size());

  // full and empty subsets degenerate correctly
  CHECK((int)a2.coset_reps(a2.full_mask()).size() == 1);
  CHECK((int)a2.coset_reps(0u).size() == wg.size());
}

TEST_CASE("lattice coordinate conversions invert each other") {
  for (const char* spec : {kA1, kA2, kA3Flip, kC2, kA1A1Swap}) {
    const RootDatum& rd = datum(spec);
    for (int i = 0; i < rd.rank(); ++i) {
      IVec e(rd.rank(), 0);
      e[i] = 1;
      auto back = rd.from_cw(rd.to_cw(e));
      REQUIRE(back.has_value());
      CHECK(*back == e);
      RatVec ecw = to_ratvec(rd.to_cw(e));
      CHECK(rd.coroot_to_cw(rd.cw_to_coroot(ecw)) == ecw);
    }
    // coroot coordinates of a simple coroot form a unit vector
    for (int i = 0; i < rd.rank(); ++i) {
      RatVec cr = rd.cw_to_coroot(to_ratvec(rd.roots()[rd.simple_root(i)].cw));
      for (int k = 0; k < rd.rank(); ++k)
        CHECK(cr[k] == (k == i ? 1 : 0));
    }
  }
}
