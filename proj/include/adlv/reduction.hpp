#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "adlv/alcoves.hpp"

namespace adlv {

enum class StepKind { Up, Level, Down2 };

struct ConjStep {
  int gen = -1;            // affine generator id
  StepKind kind = StepKind::Level;
  AffineElement result;    // s x delta(s)
};

// x -> s x delta(s) under the quasi-split or the twisted action; the length
// change is always -2, 0 or +2.
ConjStep conj_step(const AffineElement& x, int gen);
ConjStep conj_step(const AffineElement& x, int gen, const Twist& tw);

struct PathEntry {
  int gen = -1;
  StepKind kind = StepKind::Level;
  AffineElement element;   // after the step
};

struct DescentPath {
  AffineElement start;
  std::vector<PathEntry> steps;    // level walks and down2 hops, in order
  AffineElement minimal;           // final element, no down2 in its level orbit
  long bfs_nodes = 0;              // total level-orbit nodes visited
};

// Walk to a minimal-length element of the twisted conjugacy class: search the
// level orbit breadth-first, take the deterministically smallest (element,
// gen) down2 step found, repeat.  Terminates since the length drops.
DescentPath descend_to_minimal(const AffineElement& x);
DescentPath descend_to_minimal(const AffineElement& x, const Twist& tw);

// True iff no member of the level orbit of x admits a down2 step.
bool is_minimal(const AffineElement& x);
bool is_minimal(const AffineElement& x, const Twist& tw);

// Which down2 step an orbit scan commits to.  The verdict must not depend on
// the choice; Largest exists so tests can check that.
enum class TieBreak { Smallest, Largest };

// Nonemptiness oracle by iterated reduction: at a minimal element the verdict
// is the equality of class invariants with b; otherwise recurse into the two
// branches s x' delta(s) and s x' at a down2 step.  Verdicts are memoized and
// constant along level orbits.  Works for arbitrary b.
class ReductionOracle {
public:
  ReductionOracle(const RootDatum& rd, AffineElement b);
  ReductionOracle(const RootDatum& rd, AffineElement b, AffineElement z);

  void set_tie_break(TieBreak tb) { tie_ = tb; }

  bool nonempty(const AffineElement& x);

  const ClassInvariants& b_invariants() const { return b_inv_; }
  long bfs_nodes_total() const { return bfs_nodes_; }
  long max_orbit_nodes() const { return max_orbit_; }

private:
  bool solve(const AffineElement& x, int depth);

  const RootDatum* rd_;
  AffineElement b_;
  Twist twist_;
  TieBreak tie_ = TieBreak::Smallest;
  ClassInvariants b_inv_;
  std::unordered_map<AffineElement, bool, AffineElementHash> memo_;
  long bfs_nodes_ = 0;
  long max_orbit_ = 0;
};

bool reduction_nonempty(const AffineElement& x, const AffineElement& b);
bool reduction_nonempty(const AffineElement& x, const AffineElement& b,
                        const AffineElement& z);

struct CrosscheckRow {
  AffineElement x;
  int length = 0;
  IVec kappa_x;
  AffineElement b;
  bool criterion = false;
  bool oracle = false;
  bool agree = false;
  std::vector<AlcoveWitness> violations;
};

struct CrosscheckReport {
  std::vector<CrosscheckRow> rows;   // x-major, b in the given order
  long total = 0;
  long agree_count = 0;
  long disagree = 0;
  long runtime_ms = 0;

  std::string csv() const;           // deterministic, runtime excluded
  std::string summary_json() const;
};

// Criterion vs oracle over every x with length(x) <= max_length and every b.
// With a twist z the criterion side runs on the transported quasi-split pair
// (x z, b z) and the oracle runs under the twisted action directly; rows are
// keyed by the untransported (x, b).  Work is split over `threads` workers
// without affecting the output.
CrosscheckReport crosscheck(const RootDatum& rd, int max_length,
                            const std::vector<AffineElement>& bs, int threads,
                            const std::optional<AffineElement>& z = std::nullopt);

struct InventoryEntry {
  ClassInvariants invariants;
  AffineElement witness;     // shortest, first in scan order
  int length = 0;
};

// Distinct (nu_bar, kappa) pairs over the length ball, shortest witness each.
std::vector<InventoryEntry> class_inventory(const RootDatum& rd, int max_length);

}  // namespace adlv
