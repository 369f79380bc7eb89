#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

#include "shortilp/errors.hpp"
#include "shortilp/ilp.hpp"
#include "shortilp/numbers.hpp"

namespace shortilp {

// Per-column upper bounds derived from the rows alone: for column j, the
// minimum of floor(b_i / A_ij) over all-nonnegative rows i with A_ij >= 1,
// clamped to >= 0. Throws NoBoundError when a column has no such row.
inline std::vector<std::int64_t> implied_upper_bounds(const IlpProblem& prob) {
  std::vector<std::int64_t> bounds(prob.num_cols, 0);
  std::vector<bool> row_nonneg(prob.num_rows, true);
  for (int i = 0; i < prob.num_rows; ++i) {
    for (int j = 0; j < prob.num_cols; ++j) {
      if (prob.at(i, j) < 0) {
        row_nonneg[i] = false;
        break;
      }
    }
  }
  for (int j = 0; j < prob.num_cols; ++j) {
    bool found = false;
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    for (int i = 0; i < prob.num_rows; ++i) {
      const std::int64_t a = prob.at(i, j);
      if (!row_nonneg[i] || a < 1) continue;
      const std::int64_t b = prob.rhs[i];
      const std::int64_t q = b >= 0 ? b / a : -((-b + a - 1) / a);
      best = std::min(best, q);
      found = true;
    }
    if (!found) throw NoBoundError(j);
    bounds[j] = std::max<std::int64_t>(0, best);
  }
  return bounds;
}

namespace detail {

using StateVec = std::vector<std::int64_t>;

inline bool better(Sense sense, const BigInt& a, const BigInt& b) {
  return sense == Sense::Maximize ? a > b : a < b;
}

inline void require_clean(const IlpProblem& prob, bool want_bounds) {
  if (want_bounds && !prob.upper_bounds) {
    throw std::invalid_argument("solver requires upper bounds");
  }
  if (!want_bounds && prob.upper_bounds) {
    throw std::invalid_argument("solver requires the bounds to be absent");
  }
  const ValidationReport report = validate(prob);
  for (const ValidationIssue& issue : report.issues) {
    if (issue.kind != ValidationIssue::Kind::OverflowRisk) {
      throw std::invalid_argument("ill-formed program: " + issue.detail);
    }
  }
}

struct StateBudget {
  std::size_t cap = 0;
  std::size_t created = 0;
  void charge() {
    if (++created > cap) throw StateCapExceeded(cap);
  }
};

// One unit of sweep work: either a single column applied 0..max_copies times
// layer by layer, or a whole window group (columns sharing an exclusive
// cardinality row) jumped frontier-to-frontier with a sliding-window best.
struct Step {
  bool is_window = false;
  // Column step.
  int column = -1;
  std::int64_t max_copies = -1;  // -1: limited only by row pruning
  // Window step.
  int counter_row = -1;
  std::int64_t need = 0;  // rhs of the counter row
  int col_a = -1;
  int col_b = -1;  // -1 when the group has a single column
  int sec_a = -1;
  int sec_b = -1;
  std::int64_t value = 0;  // shared positive secondary entry
  BigInt gain = 0;         // objective contribution of the whole group
};

struct SweepPlan {
  std::vector<int> active;             // surviving columns, original indices
  std::vector<int> fold_slack_of_row;  // row -> folded slack column or -1
  std::vector<char> row_folded;
  std::vector<std::int64_t> fold_lower;  // lower bound on folded-row totals
  std::vector<int> merged_into;          // column -> keeper column or -1
};

inline SweepPlan build_plan(const IlpProblem& prob, bool bounded,
                            bool structured) {
  const int num_rows = prob.num_rows;
  const int num_cols = prob.num_cols;
  SweepPlan plan;
  plan.fold_slack_of_row.assign(num_rows, -1);
  plan.row_folded.assign(num_rows, 0);
  plan.fold_lower.assign(num_rows,
                         std::numeric_limits<std::int64_t>::min() / 4);
  plan.merged_into.assign(num_cols, -1);
  std::vector<char> consumed(num_cols, 0);

  if (structured) {
    // Slack folding: a zero-objective column with a single +1 entry is the
    // slack of its row; drop the column and treat the row as an inequality.
    for (int j = 0; j < num_cols; ++j) {
      if (prob.objective[j] != 0) continue;
      int nz_row = -1;
      bool shaped = true;
      for (int i = 0; i < num_rows; ++i) {
        const std::int64_t e = prob.at(i, j);
        if (e == 0) continue;
        if (e != 1 || nz_row != -1) {
          shaped = false;
          break;
        }
        nz_row = i;
      }
      if (!shaped || nz_row == -1 || plan.row_folded[nz_row]) continue;
      plan.row_folded[nz_row] = 1;
      plan.fold_slack_of_row[nz_row] = j;
      consumed[j] = 1;
      if (bounded) {
        plan.fold_lower[nz_row] =
            prob.rhs[nz_row] - (*prob.upper_bounds)[j];
      }
    }
    // Column dedup (unbounded only): identical columns merge into the
    // objective-best representative; ties keep the smallest index. Any
    // multiplicity may sit on the representative; exchange repair spreads it
    // over distinct jobs afterwards.
    if (!bounded) {
      std::map<StateVec, std::vector<int>> groups;
      for (int j = 0; j < num_cols; ++j) {
        if (consumed[j]) continue;
        StateVec col(num_rows);
        for (int i = 0; i < num_rows; ++i) col[i] = prob.at(i, j);
        groups[std::move(col)].push_back(j);
      }
      for (const auto& [col, members] : groups) {
        int keeper = members.front();
        for (const int j : members) {
          if (better(prob.sense, prob.objective[j],
                     prob.objective[keeper])) {
            keeper = j;
          }
        }
        for (const int j : members) {
          if (j != keeper) {
            plan.merged_into[j] = keeper;
            consumed[j] = 1;
          }
        }
      }
    }
  }
  for (int j = 0; j < num_cols; ++j) {
    if (!consumed[j]) plan.active.push_back(j);
  }
  return plan;
}

// Tries to interpret the run of active columns starting at `pos` as a window
// group: all run columns carry a 1 in a shared cardinality row touched by no
// other active column, plus exactly one other nonzero, the same positive
// value and the same objective coefficient in each, spread over at most two
// distinct secondary rows.
inline std::optional<std::pair<Step, std::size_t>> try_window(
    const IlpProblem& prob, const SweepPlan& plan,
    const std::vector<int>& touch, std::size_t pos) {
  const int j0 = plan.active[pos];
  for (int r = 0; r < prob.num_rows; ++r) {
    if (prob.at(r, j0) != 1 || plan.row_folded[r]) continue;
    if (prob.rhs[r] < 0) continue;
    std::size_t len = 0;
    while (pos + len < plan.active.size() &&
           prob.at(r, plan.active[pos + len]) == 1) {
      ++len;
    }
    if (len < 1 || len > 2) continue;
    if (touch[r] != static_cast<int>(len)) continue;
    Step step;
    step.is_window = true;
    step.counter_row = r;
    step.need = prob.rhs[r];
    bool shaped = true;
    for (std::size_t k = 0; k < len && shaped; ++k) {
      const int j = plan.active[pos + k];
      int sec = -1;
      std::int64_t val = 0;
      for (int i = 0; i < prob.num_rows; ++i) {
        if (i == r) continue;
        const std::int64_t e = prob.at(i, j);
        if (e == 0) continue;
        if (sec != -1) {
          sec = -2;
          break;
        }
        sec = i;
        val = e;
      }
      if (sec < 0 || val < 1) {
        shaped = false;
        break;
      }
      if (k == 0) {
        step.col_a = j;
        step.sec_a = sec;
        step.value = val;
        step.gain = prob.objective[j] * step.need;
      } else {
        if (val != step.value || sec == step.sec_a ||
            prob.objective[j] != prob.objective[step.col_a]) {
          shaped = false;
          break;
        }
        step.col_b = j;
        step.sec_b = sec;
      }
    }
    if (!shaped) continue;
    if (step.col_b != -1 && step.sec_a > step.sec_b) {
      std::swap(step.col_a, step.col_b);
      std::swap(step.sec_a, step.sec_b);
    }
    return std::make_pair(step, len);
  }
  return std::nullopt;
}

inline std::vector<Step> build_steps(const IlpProblem& prob,
                                     const SweepPlan& plan, bool bounded,
                                     bool structured) {
  std::vector<int> touch(prob.num_rows, 0);
  for (const int j : plan.active) {
    for (int i = 0; i < prob.num_rows; ++i) {
      if (prob.at(i, j) != 0) ++touch[i];
    }
  }
  std::vector<Step> steps;
  std::size_t pos = 0;
  while (pos < plan.active.size()) {
    if (structured && !bounded) {
      if (auto window = try_window(prob, plan, touch, pos)) {
        steps.push_back(window->first);
        pos += window->second;
        continue;
      }
    }
    Step step;
    step.column = plan.active[pos];
    step.max_copies = bounded ? (*prob.upper_bounds)[plan.active[pos]] : -1;
    steps.push_back(step);
    ++pos;
  }
  return steps;
}

struct Label {
  BigInt obj;
  StateVec prev;
  std::int64_t count = 0;  // copies of the column / of col_a for windows
};

using Frontier = std::map<StateVec, Label>;

struct Sweep {
  const IlpProblem& prob;
  bool bounded = false;
  SweepPlan plan;
  std::vector<Step> steps;
  // suffix_min[s][i]: smallest entry in row i over columns of steps >= s;
  // suffix_nonzero[s][i]: whether any of those entries is nonzero.
  std::vector<std::vector<std::int64_t>> suffix_min;
  std::vector<std::vector<char>> suffix_nonzero;
  StateBudget budget;
  std::vector<Frontier> boundaries;

  Sweep(const IlpProblem& p, const SolverConfig& cfg, bool is_bounded)
      : prob(p), bounded(is_bounded) {
    budget.cap = cfg.max_states;
    const bool structured = !cfg.force_plain_sweep;
    plan = build_plan(prob, bounded, structured);
    steps = build_steps(prob, plan, bounded, structured);
    const std::size_t s_count = steps.size();
    suffix_min.assign(s_count + 1,
                      std::vector<std::int64_t>(prob.num_rows, 0));
    suffix_nonzero.assign(s_count + 1,
                          std::vector<char>(prob.num_rows, 0));
    for (std::size_t s = s_count; s-- > 0;) {
      suffix_min[s] = suffix_min[s + 1];
      suffix_nonzero[s] = suffix_nonzero[s + 1];
      auto absorb = [&](int col) {
        if (col < 0) return;
        for (int i = 0; i < prob.num_rows; ++i) {
          const std::int64_t e = prob.at(i, col);
          if (e < suffix_min[s][i]) suffix_min[s][i] = e;
          if (e != 0) suffix_nonzero[s][i] = 1;
        }
      };
      if (steps[s].is_window) {
        absorb(steps[s].col_a);
        absorb(steps[s].col_b);
      } else {
        absorb(steps[s].column);
      }
    }
  }

  // Exact pruning: a state survives iff some feasible completion could still
  // exist. Once no remaining column can lower a row, totals above the rhs are
  // dead; once no remaining column touches a row, the row must already sit at
  // its final admissible value.
  bool admissible(const StateVec& v, std::size_t s) const {
    for (int i = 0; i < prob.num_rows; ++i) {
      if (!suffix_nonzero[s][i]) {
        if (plan.row_folded[i]) {
          if (v[i] > prob.rhs[i] || v[i] < plan.fold_lower[i]) return false;
        } else if (v[i] != prob.rhs[i]) {
          return false;
        }
      } else if (suffix_min[s][i] >= 0 && v[i] > prob.rhs[i]) {
        return false;
      }
    }
    return true;
  }

  void improve(Frontier& frontier, StateVec v, Label lab) {
    auto it = frontier.find(v);
    if (it == frontier.end()) {
      budget.charge();
      frontier.emplace(std::move(v), std::move(lab));
    } else if (better(prob.sense, lab.obj, it->second.obj)) {
      it->second = std::move(lab);
    }
  }

  Frontier run_column_step(const Frontier& frontier, const Step& step,
                           std::size_t s) {
    Frontier next;
    for (const auto& [v, lab] : frontier) {
      if (admissible(v, s + 1)) improve(next, v, Label{lab.obj, v, 0});
    }
    StateVec col(prob.num_rows);
    for (int i = 0; i < prob.num_rows; ++i) col[i] = prob.at(i, step.column);
    const BigInt& coeff = prob.objective[step.column];

    struct Layer {
      BigInt obj;
      StateVec start;
    };
    std::map<StateVec, Layer> cur;
    auto extend = [&](const StateVec& v, const BigInt& obj,
                      const StateVec& start, std::map<StateVec, Layer>& out) {
      StateVec w = v;
      for (int i = 0; i < prob.num_rows; ++i) w[i] += col[i];
      if (!admissible(w, s)) return;
      BigInt cand = obj + coeff;
      auto it = out.find(w);
      if (it == out.end()) {
        budget.charge();
        out.emplace(std::move(w), Layer{std::move(cand), start});
      } else if (better(prob.sense, cand, it->second.obj)) {
        it->second = Layer{std::move(cand), start};
      }
    };
    for (std::int64_t k = 1; step.max_copies < 0 || k <= step.max_copies;
         ++k) {
      std::map<StateVec, Layer> nl;
      if (k == 1) {
        for (const auto& [v, lab] : frontier) extend(v, lab.obj, v, nl);
      } else {
        for (const auto& [v, lay] : cur) extend(v, lay.obj, lay.start, nl);
      }
      if (nl.empty()) break;
      for (const auto& [w, lay] : nl) {
        if (admissible(w, s + 1)) improve(next, w, Label{lay.obj, lay.start, k});
      }
      cur.swap(nl);
    }
    return next;
  }

  Frontier run_window_step(const Frontier& frontier, const Step& step,
                           std::size_t s) {
    Frontier next;
    if (step.col_b == -1) {
      for (const auto& [v, lab] : frontier) {
        StateVec w = v;
        w[step.counter_row] += step.need;
        w[step.sec_a] += step.need * step.value;
        if (admissible(w, s + 1)) {
          improve(next, std::move(w), Label{lab.obj + step.gain, v, step.need});
        }
      }
      return next;
    }

    // Ends of a two-column group lie on the diagonal shifted by need*value;
    // within a bucket (fixed off-group coordinates, diagonal, residue) the
    // best start for each end is a sliding-window optimum over a window of
    // need+1 chain positions.
    struct StartRef {
      const StateVec* v;
      const Label* lab;
      std::int64_t sa;
    };
    using BucketKey = std::tuple<StateVec, std::int64_t, std::int64_t>;
    std::map<BucketKey, std::vector<StartRef>> buckets;
    for (const auto& [v, lab] : frontier) {
      StateVec rest = v;
      rest[step.sec_a] = 0;
      rest[step.sec_b] = 0;
      const std::int64_t diag = v[step.sec_a] + v[step.sec_b];
      std::int64_t res = v[step.sec_a] % step.value;
      if (res < 0) res += step.value;
      buckets[{std::move(rest), diag, res}].push_back(
          StartRef{&v, &lab, v[step.sec_a]});
    }
    const std::int64_t shift = step.need * step.value;
    for (auto& [key, starts] : buckets) {
      // Map order sorts starts by the sec_a coordinate already (sec_a is the
      // lower row index and the other coordinates inside a bucket are fixed).
      std::deque<const StartRef*> window;
      std::size_t upcoming = 0;
      for (std::int64_t a = starts.front().sa; a <= starts.back().sa + shift;
           a += step.value) {
        while (upcoming < starts.size() && starts[upcoming].sa <= a) {
          const StartRef* entrant = &starts[upcoming++];
          while (!window.empty() &&
                 better(prob.sense, entrant->lab->obj,
                        window.back()->lab->obj)) {
            window.pop_back();
          }
          window.push_back(entrant);
        }
        while (!window.empty() && window.front()->sa < a - shift) {
          window.pop_front();
        }
        if (window.empty()) continue;
        const StartRef* best = window.front();
        const std::int64_t copies_a = (a - best->sa) / step.value;
        StateVec w = *best->v;
        w[step.counter_row] += step.need;
        w[step.sec_a] = a;
        w[step.sec_b] = (*best->v)[step.sec_b] +
                        (step.need - copies_a) * step.value;
        if (admissible(w, s + 1)) {
          improve(next, std::move(w),
                  Label{best->lab->obj + step.gain, *best->v, copies_a});
        }
      }
    }
    return next;
  }

  IlpSolution run() {
    IlpSolution result;
    boundaries.assign(steps.size() + 1, Frontier{});
    StateVec origin(prob.num_rows, 0);
    if (admissible(origin, 0)) {
      budget.charge();
      boundaries[0].emplace(origin, Label{BigInt(0), StateVec{}, 0});
    }
    for (std::size_t s = 0; s < steps.size(); ++s) {
      if (boundaries[s].empty()) break;
      boundaries[s + 1] = steps[s].is_window
                              ? run_window_step(boundaries[s], steps[s], s)
                              : run_column_step(boundaries[s], steps[s], s);
    }

    const Frontier& finals = boundaries[steps.size()];
    const StateVec* best_state = nullptr;
    const Label* best_label = nullptr;
    for (const auto& [v, lab] : finals) {
      if (!best_label || better(prob.sense, lab.obj, best_label->obj)) {
        best_state = &v;
        best_label = &lab;
      }
    }
    if (!best_label) {
      result.status = SolveStatus::Infeasible;
      return result;
    }

    std::vector<std::int64_t> x(prob.num_cols, 0);
    StateVec v = *best_state;
    for (std::size_t s = steps.size(); s > 0; --s) {
      const Label& lab = boundaries[s].at(v);
      const Step& step = steps[s - 1];
      if (step.is_window) {
        x[step.col_a] = lab.count;
        if (step.col_b != -1) x[step.col_b] = step.need - lab.count;
      } else {
        x[step.column] = lab.count;
      }
      v = lab.prev;
    }
    for (int i = 0; i < prob.num_rows; ++i) {
      if (plan.fold_slack_of_row[i] != -1) {
        x[plan.fold_slack_of_row[i]] = prob.rhs[i] - (*best_state)[i];
      }
    }

    BigInt z = 0;
    for (int j = 0; j < prob.num_cols; ++j) {
      if (x[j] != 0) z += prob.objective[j] * x[j];
    }
    for (int i = 0; i < prob.num_rows; ++i) {
      std::int64_t acc = 0;
      for (int j = 0; j < prob.num_cols; ++j) acc += prob.at(i, j) * x[j];
      if (acc != prob.rhs[i]) {
        throw std::logic_error("sweep produced an invalid solution");
      }
    }
    result.status = SolveStatus::Optimal;
    result.x = std::move(x);
    result.objective = std::move(z);
    return result;
  }
};

// Exact comparison of fractions a/b <= c/d with positive denominators.
struct Frac {
  std::int64_t num = 0;
  std::int64_t den = 1;
};

inline bool frac_le(const Frac& a, const Frac& b) {
  return static_cast<__int128>(a.num) * b.den <=
         static_cast<__int128>(b.num) * a.den;
}

inline bool point_in_tube(const StateVec& v,
                          const std::vector<std::int64_t>& b,
                          std::int64_t radius) {
  // Exists s in [0,1] with |v_i - s*b_i| <= radius for all i.
  Frac lo{0, 1};
  Frac hi{1, 1};
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (b[i] == 0) {
      if (v[i] > radius || v[i] < -radius) return false;
      continue;
    }
    Frac lo_i{v[i] - radius, b[i]};
    Frac hi_i{v[i] + radius, b[i]};
    if (b[i] < 0) {
      lo_i = Frac{-(v[i] + radius), -b[i]};
      hi_i = Frac{-(v[i] - radius), -b[i]};
    }
    if (frac_le(lo, lo_i)) lo = lo_i;
    if (frac_le(hi_i, hi)) hi = hi_i;
  }
  return frac_le(lo, hi);
}

// General unbounded engine: optimal-path relaxation over the lattice points
// within L-inf distance `radius` of the segment from the origin to b.
// Handles negative entries; detects unbounded objectives via improvement
// that persists past the vertex-count round bound.
inline IlpSolution solve_tube(const IlpProblem& prob,
                              const SolverConfig& cfg) {
  IlpSolution result;
  const int num_rows = prob.num_rows;
  const int num_cols = prob.num_cols;
  const std::int64_t radius = cfg.effective_radius(prob);
  StateBudget budget{cfg.max_states};

  std::vector<std::int64_t> box_lo(num_rows);
  std::vector<std::int64_t> box_hi(num_rows);
  for (int i = 0; i < num_rows; ++i) {
    box_lo[i] = std::min<std::int64_t>(0, prob.rhs[i]) - radius;
    box_hi[i] = std::max<std::int64_t>(0, prob.rhs[i]) + radius;
  }

  std::map<StateVec, int> ids;
  std::vector<StateVec> verts;
  StateVec point = box_lo;
  while (true) {
    if (point_in_tube(point, prob.rhs, radius)) {
      budget.charge();
      ids.emplace(point, static_cast<int>(verts.size()));
      verts.push_back(point);
    }
    int dim = 0;
    while (dim < num_rows && point[dim] == box_hi[dim]) {
      point[dim] = box_lo[dim];
      ++dim;
    }
    if (dim == num_rows) break;
    ++point[dim];
  }

  const auto find_id = [&ids](const StateVec& v) -> int {
    auto it = ids.find(v);
    return it == ids.end() ? -1 : it->second;
  };
  const int origin_id = find_id(StateVec(num_rows, 0));
  const int target_id = find_id(prob.rhs);

  const std::size_t count = verts.size();
  std::vector<char> reach(count, 0);
  std::vector<char> coreach(count, 0);
  {
    std::deque<int> queue{origin_id};
    reach[origin_id] = 1;
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      for (int j = 0; j < num_cols; ++j) {
        StateVec w = verts[u];
        for (int i = 0; i < num_rows; ++i) w[i] += prob.at(i, j);
        const int wid = find_id(w);
        if (wid >= 0 && !reach[wid]) {
          reach[wid] = 1;
          queue.push_back(wid);
        }
      }
    }
    queue.push_back(target_id);
    coreach[target_id] = 1;
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      for (int j = 0; j < num_cols; ++j) {
        StateVec w = verts[u];
        for (int i = 0; i < num_rows; ++i) w[i] -= prob.at(i, j);
        const int wid = find_id(w);
        if (wid >= 0 && !coreach[wid]) {
          coreach[wid] = 1;
          queue.push_back(wid);
        }
      }
    }
  }
  if (!reach[target_id]) {
    result.status = SolveStatus::Infeasible;
    return result;
  }

  std::vector<int> restricted;
  std::vector<char> in_restricted(count, 0);
  for (std::size_t u = 0; u < count; ++u) {
    if (reach[u] && coreach[u]) {
      restricted.push_back(static_cast<int>(u));
      in_restricted[u] = 1;
    }
  }

  std::vector<std::optional<BigInt>> label(count);
  std::vector<std::pair<int, int>> pred(count, {-1, -1});
  label[origin_id] = BigInt(0);
  bool changed = true;
  std::size_t rounds = 0;
  while (changed && rounds < restricted.size()) {
    changed = false;
    ++rounds;
    for (const int u : restricted) {
      if (!label[u]) continue;
      for (int j = 0; j < num_cols; ++j) {
        StateVec w = verts[u];
        for (int i = 0; i < num_rows; ++i) w[i] += prob.at(i, j);
        const int wid = find_id(w);
        if (wid < 0 || !in_restricted[wid]) continue;
        BigInt cand = *label[u] + prob.objective[j];
        if (!label[wid] || better(prob.sense, cand, *label[wid])) {
          label[wid] = std::move(cand);
          pred[wid] = {u, j};
          changed = true;
        }
      }
    }
  }
  if (changed) {
    // Improvements persisted for as many rounds as there are vertices: an
    // improving cycle sits on a path from the origin to b.
    result.status = SolveStatus::Unbounded;
    return result;
  }

  std::vector<std::int64_t> x(num_cols, 0);
  int cur = target_id;
  std::size_t guard = 0;
  while (cur != origin_id) {
    if (++guard > restricted.size()) {
      throw std::logic_error("tube predecessor chain did not terminate");
    }
    const auto [prev, col] = pred[cur];
    if (prev < 0) throw std::logic_error("tube predecessor chain broken");
    ++x[col];
    cur = prev;
  }
  BigInt z = 0;
  for (int j = 0; j < num_cols; ++j) {
    if (x[j] != 0) z += prob.objective[j] * x[j];
  }
  if (z != *label[target_id]) {
    throw std::logic_error("tube objective mismatch");
  }
  result.status = SolveStatus::Optimal;
  result.x = std::move(x);
  result.objective = std::move(z);
  return result;
}

}  // namespace detail

// Optimizes over {x in N^N : Ax = b}. Componentwise-nonnegative programs run
// the staged frontier sweep (with folding, dedup, and window groups); any
// negative entry routes through the Steinitz-tube engine, the only regime
// where an unbounded objective is possible.
inline IlpSolution solve_unbounded(const IlpProblem& prob,
                                   const SolverConfig& cfg = {}) {
  detail::require_clean(prob, false);
  bool nonneg = true;
  for (const std::int64_t e : prob.entries) {
    if (e < 0) {
      nonneg = false;
      break;
    }
  }
  if (!nonneg || cfg.force_general_path) {
    return detail::solve_tube(prob, cfg);
  }
  detail::Sweep sweep(prob, cfg, false);
  return sweep.run();
}

// Optimizes over {x in N^N : Ax = b, x <= u}; the finite box rules out
// unbounded objectives.
inline IlpSolution solve_bounded(const IlpProblem& prob,
                                 const SolverConfig& cfg = {}) {
  detail::require_clean(prob, true);
  detail::Sweep sweep(prob, cfg, true);
  return sweep.run();
}

// Exhaustive-enumeration oracle. Requires explicit or implied bounds with at
// most 10^7 candidate vectors.
inline IlpSolution brute_force(const IlpProblem& prob) {
  const std::vector<std::int64_t> bounds =
      prob.upper_bounds ? *prob.upper_bounds : implied_upper_bounds(prob);
  constexpr unsigned __int128 kMaxCombos = 10'000'000;
  unsigned __int128 combos = 1;
  for (const std::int64_t u : bounds) {
    combos *= static_cast<unsigned __int128>(u) + 1;
    if (combos > kMaxCombos) {
      throw OracleTooLarge("more than 10^7 candidate vectors");
    }
  }

  IlpSolution result;
  const int num_rows = prob.num_rows;
  const int num_cols = prob.num_cols;
  std::vector<std::int64_t> x(num_cols, 0);
  std::vector<std::int64_t> sum(num_rows, 0);
  bool found = false;
  std::vector<std::int64_t> best_x;
  BigInt best_z = 0;
  while (true) {
    if (sum == prob.rhs) {
      BigInt z = 0;
      for (int j = 0; j < num_cols; ++j) {
        if (x[j] != 0) z += prob.objective[j] * x[j];
      }
      if (!found || detail::better(prob.sense, z, best_z)) {
        found = true;
        best_z = std::move(z);
        best_x = x;
      }
    }
    int j = 0;
    while (j < num_cols && x[j] == bounds[j]) {
      for (int i = 0; i < num_rows; ++i) sum[i] -= prob.at(i, j) * x[j];
      x[j] = 0;
      ++j;
    }
    if (j == num_cols) break;
    ++x[j];
    for (int i = 0; i < num_rows; ++i) sum[i] += prob.at(i, j);
  }
  if (!found) {
    result.status = SolveStatus::Infeasible;
    return result;
  }
  result.status = SolveStatus::Optimal;
  result.x = std::move(best_x);
  result.objective = std::move(best_z);
  return result;
}

}  // namespace shortilp
