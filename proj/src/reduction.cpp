#include "adlv/reduction.hpp"

#include <atomic>
#include <cassert>
#include <chrono>
#include <map>
#include <memory>
#include <thread>

#include "adlv/element_io.hpp"
#include "adlv/error.hpp"

namespace adlv {

namespace {

constexpr long kOrbitGuard = 100000;

struct ConjContext {
  std::vector<AffineElement> gens;
  std::vector<int> gen_img;  // image id under the (possibly twisted) action

  ConjContext(const RootDatum& rd, const Twist* tw) {
    int ng = num_affine_gens(rd);
    for (int id = 0; id < ng; ++id) {
      gens.push_back(affine_generator(rd, id));
      gen_img.push_back(tw ? tw->apply_gen(id) : affine_gen_delta(rd, id));
    }
  }

  AffineElement conj(const AffineElement& x, int gen) const {
    return compose(gens[gen], compose(x, gens[gen_img[gen]]));
  }
};

struct OrbitScan {
  std::vector<AffineElement> orbit;  // BFS order, orbit[0] = start
  std::vector<int> parent, pgen;     // BFS tree
  bool found_down = false;
  int best_index = -1;               // orbit index of the chosen down2 source
  int best_gen = -1;

  OrbitScan(const AffineElement& x, const ConjContext& cc,
            TieBreak tb = TieBreak::Smallest) {
    int len0 = length(x);
    std::unordered_map<AffineElement, int, AffineElementHash> seen;
    orbit.push_back(x);
    parent.push_back(-1);
    pgen.push_back(-1);
    seen.emplace(x, 0);
    for (size_t head = 0; head < orbit.size(); ++head) {
      for (size_t g = 0; g < cc.gens.size(); ++g) {
        AffineElement y = cc.conj(orbit[head], (int)g);
        int ly = length(y);
        if (ly == len0) {
          if (seen.emplace(y, (int)orbit.size()).second) {
            if ((long)orbit.size() >= kOrbitGuard)
              fail("OrbitTooLarge", "level orbit exceeded the node guard");
            orbit.push_back(std::move(y));
            parent.push_back((int)head);
            pgen.push_back((int)g);
          }
        } else if (ly < len0) {
          // deterministic pick on (source element, generator)
          bool take = !found_down;
          if (!take) {
            const AffineElement& cur = orbit[head];
            const AffineElement& best = orbit[best_index];
            bool lt = cur < best, gt = best < cur;
            if (tb == TieBreak::Smallest)
              take = lt || (!gt && (int)g < best_gen);
            else
              take = gt || (!lt && (int)g > best_gen);
          }
          if (take) {
            found_down = true;
            best_index = (int)head;
            best_gen = (int)g;
          }
        }
      }
    }
  }

  // level path from the start to orbit[idx]
  std::vector<PathEntry> path_to(int idx) const {
    std::vector<PathEntry> rev;
    for (int k = idx; parent[k] >= 0; k = parent[k])
      rev.push_back({pgen[k], StepKind::Level, orbit[k]});
    return {rev.rbegin(), rev.rend()};
  }
};

StepKind classify_delta(int before, int after) {
  if (after == before)
    return StepKind::Level;
  return after < before ? StepKind::Down2 : StepKind::Up;
}

ConjStep conj_step_impl(const AffineElement& x, int gen, const ConjContext& cc) {
  if (gen < 0 || gen >= (int)cc.gens.size())
    fail("NotSimpleReflection", "generator id out of range");
  ConjStep st;
  st.gen = gen;
  st.result = cc.conj(x, gen);
  st.kind = classify_delta(length(x), length(st.result));
  return st;
}

DescentPath descend_impl(const AffineElement& x, const ConjContext& cc) {
  DescentPath path;
  path.start = x;
  AffineElement cur = x;
  for (;;) {
    OrbitScan scan(cur, cc);
    path.bfs_nodes += (long)scan.orbit.size();
    if (!scan.found_down) {
      path.minimal = cur;
      return path;
    }
    for (PathEntry& e : scan.path_to(scan.best_index))
      path.steps.push_back(std::move(e));
    AffineElement down = cc.conj(scan.orbit[scan.best_index], scan.best_gen);
    path.steps.push_back({scan.best_gen, StepKind::Down2, down});
    cur = std::move(down);
  }
}

}  // namespace

ConjStep conj_step(const AffineElement& x, int gen) {
  return conj_step_impl(x, gen, ConjContext(*x.datum, nullptr));
}

ConjStep conj_step(const AffineElement& x, int gen, const Twist& tw) {
  return conj_step_impl(x, gen, ConjContext(*x.datum, &tw));
}

DescentPath descend_to_minimal(const AffineElement& x) {
  return descend_impl(x, ConjContext(*x.datum, nullptr));
}

DescentPath descend_to_minimal(const AffineElement& x, const Twist& tw) {
  return descend_impl(x, ConjContext(*x.datum, &tw));
}

bool is_minimal(const AffineElement& x) {
  return !OrbitScan(x, ConjContext(*x.datum, nullptr)).found_down;
}

bool is_minimal(const AffineElement& x, const Twist& tw) {
  return !OrbitScan(x, ConjContext(*x.datum, &tw)).found_down;
}

// ---------------------------------------------------------------------------
// ReductionOracle

ReductionOracle::ReductionOracle(const RootDatum& rd, AffineElement b)
    : ReductionOracle(rd, std::move(b), identity_element(rd)) {}

ReductionOracle::ReductionOracle(const RootDatum& rd, AffineElement b,
                                 AffineElement z)
    : rd_(&rd), b_(std::move(b)), twist_(rd, std::move(z)) {
  if (b_.datum != &rd)
    fail("DatumMismatch", "b belongs to a different root datum");
  b_inv_ = sigma_invariants(b_, twist_);
}

bool ReductionOracle::nonempty(const AffineElement& x) {
  if (x.datum != rd_)
    fail("DatumMismatch", "x belongs to a different root datum");
  return solve(x, 0);
}

bool ReductionOracle::solve(const AffineElement& x, int depth) {
  assert(depth <= 4 * length(x) + 64);
  auto hit = memo_.find(x);
  if (hit != memo_.end())
    return hit->second;
  ConjContext cc(*rd_, &twist_);
  OrbitScan scan(x, cc, tie_);
  bfs_nodes_ += (long)scan.orbit.size();
  max_orbit_ = std::max(max_orbit_, (long)scan.orbit.size());
  bool verdict;
  if (!scan.found_down) {
    verdict = sigma_invariants(x, twist_) == b_inv_;
  } else {
    const AffineElement& y = scan.orbit[scan.best_index];
    AffineElement conj_branch = cc.conj(y, scan.best_gen);
    AffineElement mult_branch = compose(cc.gens[scan.best_gen], y);
    verdict = solve(conj_branch, depth + 1) || solve(mult_branch, depth + 1);
  }
  for (const AffineElement& y : scan.orbit)
    memo_.emplace(y, verdict);
  return verdict;
}

bool reduction_nonempty(const AffineElement& x, const AffineElement& b) {
  ReductionOracle oracle(*x.datum, b);
  return oracle.nonempty(x);
}

bool reduction_nonempty(const AffineElement& x, const AffineElement& b,
                        const AffineElement& z) {
  ReductionOracle oracle(*x.datum, b, z);
  return oracle.nonempty(x);
}

// ---------------------------------------------------------------------------
// crosscheck

namespace {

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"')
      out += '"';
    out += c;
  }
  return out + "\"";
}

std::string joined_digits(const IVec& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i)
      s += ';';
    s += std::to_string(v[i]);
  }
  return s;
}

}  // namespace

std::string CrosscheckReport::csv() const {
  std::string out =
      "x,length,kappa_x,b,criterion,oracle,agree,witness_count,"
      "first_violation_J,first_violation_w\n";
  for (const CrosscheckRow& row : rows) {
    const RootDatum& rd = *row.x.datum;
    out += csv_quote(print_element(row.x));
    out += ',' + std::to_string(row.length);
    out += ',' + joined_digits(row.kappa_x);
    out += ',' + csv_quote(print_element(row.b));
    out += row.criterion ? ",true" : ",false";
    out += row.oracle ? ",true" : ",false";
    out += row.agree ? ",true" : ",false";
    out += ',' + std::to_string(row.violations.size());
    if (row.violations.empty()) {
      out += ",,";
    } else {
      out += ',' + rd.subset_str(row.violations.front().j);
      out += ',' + print_weyl(rd, row.violations.front().w);
    }
    out += '\n';
  }
  return out;
}

std::string CrosscheckReport::summary_json() const {
  return "{\"total\":" + std::to_string(total) +
         ",\"agree\":" + std::to_string(agree_count) +
         ",\"disagree\":" + std::to_string(disagree) +
         ",\"runtime_ms\":" + std::to_string(runtime_ms) + "}";
}

CrosscheckReport crosscheck(const RootDatum& rd, int max_length,
                            const std::vector<AffineElement>& bs, int threads,
                            const std::optional<AffineElement>& z) {
  auto t0 = std::chrono::steady_clock::now();
  std::vector<AffineElement> xs = elements_up_to_length(rd, max_length, true);
  CrosscheckReport rep;
  rep.rows.resize(xs.size() * bs.size());
  rep.total = (long)rep.rows.size();

  std::optional<Twist> tw;
  if (z)
    tw.emplace(rd, *z);
  const FinAbGroup& kg = tw ? tw->kappa_group() : rd.kappa_group(rd.full_mask());
  if (threads < 1)
    threads = 1;
  std::atomic<size_t> next_chunk{0};
  size_t chunk = (xs.size() + 8 * threads - 1) / (8 * threads);
  if (chunk == 0)
    chunk = 1;

  auto worker = [&]() {
    // per-worker oracles keep the memo tables thread-local
    std::vector<std::unique_ptr<ReductionOracle>> oracles;
    for (const AffineElement& b : bs)
      oracles.push_back(z ? std::make_unique<ReductionOracle>(rd, b, *z)
                          : std::make_unique<ReductionOracle>(rd, b));
    for (;;) {
      size_t lo = next_chunk.fetch_add(chunk);
      if (lo >= xs.size())
        return;
      size_t hi = std::min(lo + chunk, xs.size());
      for (size_t xi = lo; xi < hi; ++xi) {
        const AffineElement& x = xs[xi];
        AffineElement xq = z ? compose(x, *z) : x;
        for (size_t bi = 0; bi < bs.size(); ++bi) {
          const AffineElement& b = bs[bi];
          AffineElement bq = z ? compose(b, *z) : b;
          CrosscheckRow row;
          row.x = x;
          row.length = length(x);
          row.kappa_x = kg.project(x.lambda);
          row.b = b;
          row.criterion = nonempty_basic_criterion(xq, bq);
          row.oracle = oracles[bi]->nonempty(x);
          row.agree = row.criterion == row.oracle;
          row.violations = nlo_check(xq, bq, true).violations;
          rep.rows[xi * bs.size() + bi] = std::move(row);
        }
      }
    }
  };

  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
      pool.emplace_back(worker);
    for (std::thread& th : pool)
      th.join();
  }

  for (const CrosscheckRow& row : rep.rows)
    if (row.agree)
      ++rep.agree_count;
  rep.disagree = rep.total - rep.agree_count;
  rep.runtime_ms = (long)std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - t0)
                       .count();
  return rep;
}

std::vector<InventoryEntry> class_inventory(const RootDatum& rd, int max_length) {
  std::vector<InventoryEntry> out;
  std::map<std::string, int> seen;
  for (const AffineElement& x : elements_up_to_length(rd, max_length, true)) {
    ClassInvariants inv = sigma_invariants(x);
    std::string key = inv.str();
    if (seen.emplace(key, (int)out.size()).second)
      out.push_back({std::move(inv), x, length(x)});
  }
  return out;
}

}  // namespace adlv
