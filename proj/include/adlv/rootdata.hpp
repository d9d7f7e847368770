#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "adlv/intlin.hpp"

namespace adlv {

// A reduced root system given as a product of irreducible components plus a
// coweight lattice Q^ ⊆ Λ ⊆ P^ and a diagram automorphism.  Nodes are numbered
// per component in the standard (Bourbaki) order, then concatenated.
struct ComponentSpec {
  char family = 'A';  // A B C D E F G
  int rank = 0;
};

struct LatticeSpec {
  enum class Kind { Adjoint, SimplyConnected, Explicit };
  Kind kind = Kind::Adjoint;
  // Explicit basis vectors, one per row, in coweight coordinates
  // (coordinate j of v is the pairing of v with simple root j).
  std::vector<RatVec> generators;
};

struct GroupSpec {
  std::vector<ComponentSpec> components;
  LatticeSpec lattice;
  std::vector<int> delta;  // node permutation, 0-based; empty = identity

  static GroupSpec from_json_text(const std::string& text);
  static GroupSpec from_json_file(const std::string& path);
};

// Finitely generated abelian group Z^ambient / <relations>, in invariant
// factor form: torsion factors (each > 1, ascending divisibility) followed by
// one 0 per free rank.  `project` maps an ambient vector to canonical class
// coordinates: torsion coordinates reduced into [0, d).
struct FinAbGroup {
  int ambient = 0;
  std::vector<IVec> relations;   // generators of the subgroup divided out
  std::vector<Int> factors;
  IMat proj;                     // factors.size() x ambient

  IVec project(const IVec& v) const;
  Int order() const;             // 0 means infinite
  bool trivial() const { return factors.empty(); }
};

FinAbGroup smith_quotient(int ambient_rank, const std::vector<IVec>& relations);

// Quotient of g by the image of (1 - action); action is an endomorphism of
// the ambient lattice that must descend to g.
FinAbGroup delta_coinvariants(const FinAbGroup& g, const IMat& action);

struct Root {
  IVec rc;        // coordinates in the simple-root basis; doubles as the
                  // pairing form against coweight coordinates
  IVec cw;        // coroot, coweight coordinates
  IVec lam;       // coroot, lattice coordinates
  int comp = 0;
  int height = 0; // signed sum of rc
  int negative = 0;  // index of the opposite root
  uint32_t support = 0;  // node mask of nonzero rc entries
  bool positive = false;
};

class RootDatum;
RootDatum build_root_datum(const GroupSpec& spec);

// The finite Weyl group, fully enumerated; elements are dense indices with
// index 0 = identity.  Immutable after construction.
class WeylGroup {
public:
  int size() const { return (int)perm_.size(); }
  int num_gens() const { return ngens_; }
  int generator(int node) const { return gen_[node]; }
  int length(int w) const { return len_[w]; }
  int mul(int a, int b) const;
  int inverse(int w) const { return inv_[w]; }
  int act_root(int w, int r) const { return perm_[w][r]; }
  IVec act_cw(int w, const IVec& v) const { return imat_apply(cwm_[w], v); }
  RatVec act_cw(int w, const RatVec& v) const { return imat_apply(cwm_[w], v); }
  IVec act_lam(int w, const IVec& v) const { return imat_apply(lamm_[w], v); }
  const IMat& cw_matrix(int w) const { return cwm_[w]; }
  const IMat& lam_matrix(int w) const { return lamm_[w]; }
  std::vector<int> word(int w) const;  // shortlex reduced word of node ids
  int from_perm(const std::vector<uint16_t>& p) const;
  int right_mul_gen(int w, int node) const { return right_[w][node]; }

private:
  friend RootDatum build_root_datum(const GroupSpec&);
  int ngens_ = 0;
  std::vector<std::vector<uint16_t>> perm_;
  std::vector<IMat> cwm_, lamm_;
  std::vector<int> len_, inv_, parent_, pgen_, gen_;
  std::vector<std::vector<int>> right_;
  std::unordered_map<std::string, int> index_;
};

struct Component {
  char family = 'A';
  int rank = 0;
  int offset = 0;      // first node id
  int highest = -1;    // index of the highest root
  int coxeter = 0;
};

// Immutable bundle of everything derived from a GroupSpec.  Build once with
// build_root_datum; concurrent reads are safe.
class RootDatum {
public:
  const GroupSpec& spec() const { return spec_; }
  int rank() const { return rank_; }
  const IMat& cartan() const { return cartan_; }
  const std::vector<Root>& roots() const { return roots_; }
  int num_pos() const { return num_pos_; }
  int simple_root(int node) const { return simple_[node]; }
  const std::vector<Component>& components() const { return comps_; }
  const WeylGroup& weyl() const { return weyl_; }

  // lattice: columns of basis_cw are the Λ-basis in coweight coordinates
  const IMat& basis_cw() const { return basis_cw_; }
  IVec to_cw(const IVec& lam) const { return imat_apply(basis_cw_, lam); }
  RatVec to_cw(const RatVec& lam) const { return imat_apply(basis_cw_, lam); }
  std::optional<IVec> from_cw(const IVec& cw) const;
  // conversion between coweight coordinates and simple-coroot coordinates
  RatVec cw_to_coroot(const RatVec& cw) const;
  RatVec coroot_to_cw(const RatVec& coroot) const;

  // denom() * p0 where p0 is the fixed interior point of the base alcove;
  // <p0, a> lies in (-1, 0) for every positive root a.
  const IVec& p0_scaled() const { return p0_scaled_; }
  Int denom() const { return denom_; }

  // diagram automorphism
  const std::vector<int>& delta_nodes() const { return delta_nodes_; }
  int delta_order() const { return delta_order_; }
  int delta_on_w(int w) const { return delta_w_[w]; }
  int delta_inv_on_w(int w) const { return delta_w_inv_[w]; }
  int delta_on_root(int r) const { return delta_root_[r]; }
  const IMat& delta_lam() const { return delta_lam_; }
  IVec delta_cw(const IVec& v) const;
  RatVec delta_cw(const RatVec& v) const;
  bool delta_connected() const { return delta_connected_; }

  // delta-stable node subsets as bitmasks, sorted by (size, mask)
  const std::vector<uint32_t>& stable_subsets() const { return stable_subsets_; }
  bool is_stable_subset(uint32_t j) const;
  uint32_t full_mask() const { return full_mask_; }
  bool in_levi(uint32_t j, int w) const;           // w ∈ W_J
  const std::vector<int>& coset_reps(uint32_t j) const;  // min-length reps of W/W_J
  const FinAbGroup& kappa_group(uint32_t j) const; // delta-coinvariants of Λ/Q^_J
  const FinAbGroup& lambda_mod_coroots() const { return lambda_mod_q_; }

  std::vector<int> nodes_of(uint32_t j) const;
  std::string subset_str(uint32_t j) const;        // "{}" or "{1.3}" (1-based)

private:
  friend RootDatum build_root_datum(const GroupSpec&);
  GroupSpec spec_;
  int rank_ = 0;
  IMat cartan_;
  std::vector<Root> roots_;
  int num_pos_ = 0;
  std::vector<int> simple_;
  std::vector<Component> comps_;
  WeylGroup weyl_;
  IMat basis_cw_;
  IMat basis_adj_;     // adjugate of basis_cw_
  Int basis_det_ = 1;
  RMat coroot_from_cw_;  // inverse transpose of the Cartan matrix
  IVec p0_scaled_;
  Int denom_ = 1;
  std::vector<int> delta_nodes_, delta_w_, delta_w_inv_;
  std::vector<int> delta_root_;
  IMat delta_lam_;
  int delta_order_ = 1;
  bool delta_connected_ = false;
  std::vector<uint32_t> stable_subsets_;
  uint32_t full_mask_ = 0;
  struct Parabolic {
    std::vector<char> member;   // |W| flags for W_J
    std::vector<int> reps;      // minimal coset representatives, (len, id) order
    FinAbGroup kappa;
  };
  std::map<uint32_t, Parabolic> parabolic_;
  FinAbGroup lambda_mod_q_;
};

// Unique dominant vector in the W-orbit of v plus a witness w with
// w(v) = result.  Input and output in simple-coroot coordinates.
std::pair<RatVec, int> dominant_representative(const RootDatum& rd, const RatVec& v);
// Internal variant in coweight coordinates.
std::pair<RatVec, int> dominant_representative_cw(const RootDatum& rd, RatVec v);

std::vector<uint32_t> delta_stable_subsets(const RootDatum& rd);

}  // namespace adlv
