// Copyright 2026 The fplab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Acceptance checks. One line per criterion:
//   [PASS] <n> <name>: <detail> (<elapsed> / budget <limit>)
// A criterion passes only if every check holds and it finishes within its
// runtime budget. Exit status is nonzero if any selected criterion fails.

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "fplab/bounds.h"
#include "fplab/construction.h"
#include "fplab/engine.h"
#include "fplab/equilibrium.h"
#include "fplab/errors.h"
#include "fplab/experiment.h"
#include "fplab/fast_forward.h"
#include "fplab/io.h"
#include "fplab/tie_break.h"

using namespace fplab;

namespace {

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  std::vector<std::string> problems;

  void Require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (problems.size() < 5) problems.push_back(what);
    }
  }
};

struct Criterion {
  int id;
  std::string name;
  double budget_seconds;
  std::function<void(Outcome&)> body;
};

PayoffMatrix K(std::size_t n) { return BuildK(ConstructionParams{n, 0}); }

Ratio Q(std::int64_t p, std::int64_t q) { return Ratio(Integer(p), Integer(q)); }

// Built-in rules as (name, seed) pairs; random appears with several seeds.
struct RuleSpec {
  std::string name;
  std::uint64_t seed;
  std::string Label() const {
    return name == "random" ? name + "(" + std::to_string(seed) + ")" : name;
  }
};

std::vector<RuleSpec> BuiltinRules(int random_seeds) {
  std::vector<RuleSpec> out = {{"lexmin", 0}, {"lexmax", 0}, {"stay", 0}};
  for (int s = 1; s <= random_seeds; ++s) {
    out.push_back({"random", static_cast<std::uint64_t>(s)});
  }
  return out;
}

Trace RunToEquilibrium(std::size_t n, const RuleSpec& spec) {
  TieBreakRule rule = TieBreakRule::FromName(spec.name, spec.seed);
  return RunFastForward(K(n), K(n), {n, 1}, rule,
                        StopCondition::FirstHit({n / 2, n / 2 + 1}));
}

std::string Where(std::size_t n, const RuleSpec& r) {
  return "n=" + std::to_string(n) + " " + r.Label();
}

// 1 -------------------------------------------------------------------------
void ConstructionFidelity(Outcome& o) {
  const PayoffMatrix expected = PayoffMatrix::FromRows({{2, 0, 0, 0, 0, 3},
                                                        {0, 6, 0, 0, 7, 0},
                                                        {0, 0, 10, 11, 0, 0},
                                                        {0, 0, 9, 0, 8, 0},
                                                        {0, 5, 0, 0, 0, 4},
                                                        {1, 0, 0, 0, 0, 0}});
  const auto start = Clock::now();
  const PayoffMatrix a = K(6);
  const double build = Seconds(start);
  std::size_t nonzeros = 0;
  for (const auto& v : a.entries()) nonzeros += v.is_zero() ? 0 : 1;
  o.Require(a == expected, "K^6(0) differs from the reference matrix");
  o.Require(nonzeros == 11, "expected 11 nonzeros, found " + std::to_string(nonzeros));
  o.Require(build < 1e-3, "construction took " + std::to_string(build) + " s");
  o.detail << "entry-for-entry match, " << nonzeros << " nonzeros, built in "
           << build * 1e6 << " us";
}

// 2 -------------------------------------------------------------------------
void StructuralValidation(Outcome& o) {
  int cases = 0;
  for (std::size_t n = 2; n <= 40; n += 2) {
    for (std::int64_t z : {0, 1, 7}) {
      const ConstructionParams p{n, Integer(z)};
      const PayoffMatrix a = BuildK(p);
      const StructureReport rep = ValidateStructure(a);
      const std::string at = "n=" + std::to_string(n) + " z=" + std::to_string(z);
      o.Require(rep.ok(), at + ": " + (rep.ok() ? "" : rep.violations.front()));
      bool values = rep.nonzero_values.size() == 2 * n - 1;
      for (std::size_t k = 0; values && k < rep.nonzero_values.size(); ++k) {
        values = rep.nonzero_values[k] == Integer(z + static_cast<std::int64_t>(k) + 1);
      }
      o.Require(values, at + ": nonzero values are not {z+1..z+2n-1}");
      std::size_t at_max = 0;
      for (const auto& v : a.entries()) at_max += v == rep.max_value ? 1 : 0;
      o.Require(at_max == 1 && rep.max_cell == Profile{n / 2, n / 2 + 1},
                at + ": maximum not unique at (n/2, n/2+1)");
      o.Require(a == BuildKClosedForm(p), at + ": constructors disagree");
      ++cases;
    }
  }
  o.detail << cases << " (n, z) cases, zero violations";
}

// 3 -------------------------------------------------------------------------
void UniquePureNe(Outcome& o) {
  for (std::size_t n = 2; n <= 20; n += 2) {
    const auto ne = PureNEEnumerate(K(n), K(n));
    o.Require(ne == std::vector<Profile>{{n / 2, n / 2 + 1}},
              "n=" + std::to_string(n) + ": " + std::to_string(ne.size()) +
                  " pure equilibria");
  }
  o.detail << "n = 2..20: exactly [(n/2, n/2+1)]";
}

// 4 -------------------------------------------------------------------------
void SpiralTrajectory(Outcome& o) {
  int runs = 0;
  for (std::size_t n : {4, 6, 8}) {
    const auto spiral = SpiralOrder(K(n));
    for (const RuleSpec& r : BuiltinRules(3)) {
      const Trace t = RunToEquilibrium(n, r);
      bool same = t.switches.size() == spiral.size();
      for (std::size_t k = 0; same && k < spiral.size(); ++k) {
        same = t.switches[k].profile == spiral[k].cell;
      }
      o.Require(same, Where(n, r) + ": profile sequence departs from the spiral");
      bool alternates = true;
      for (std::size_t k = 1; k < t.switches.size(); ++k) {
        const Profile& p = t.switches[k - 1].profile;
        const Profile& q = t.switches[k].profile;
        const bool row_move = p.row != q.row && p.col == q.col;
        const bool col_move = p.col != q.col && p.row == q.row;
        alternates = alternates && (row_move != col_move) &&
                     (row_move == (k % 2 == 1));
      }
      o.Require(alternates, Where(n, r) + ": row/column alternation broken");
      ++runs;
    }
  }
  o.detail << runs << " runs (n in {4,6,8} x 6 rules) follow the spiral and alternate";
}

// 5 and 8 -------------------------------------------------------------------
struct AuditSummary {
  int runs = 0;
  int hit_checks = 0;
  int stones = 0;
  int recursions = 0;
};

void AuditAll(Outcome& o, AuditSummary& s, bool bands_and_stones,
              bool recursion) {
  for (std::size_t n : {4, 6, 8, 10}) {
    for (const RuleSpec& r : BuiltinRules(3)) {
      const BoundReport rep = AuditRun(K(n), RunToEquilibrium(n, r));
      ++s.runs;
      if (bands_and_stones) {
        for (const HitCheck& h : rep.hits) {
          o.Require(h.zero_rows_ok && h.zero_cols_ok,
                    Where(n, r) + ": zero band fails at T_" + std::to_string(h.ell));
          ++s.hit_checks;
        }
        for (const SteppingStone& st : rep.stepping_stones) {
          o.Require(st.ok, Where(n, r) + ": layer " + std::to_string(st.layer) +
                               " " + st.relation + " fails");
          ++s.stones;
        }
      }
      if (recursion) {
        o.Require(rep.base_ok, Where(n, r) + ": R_{n-1}^(T_1) = " +
                                   rep.base_value.ToString() + " < 4");
        for (const RecursionCheck& rc : rep.recursion) {
          o.Require(rc.proof_ok, Where(n, r) + ": recursion fails at l = " +
                                     std::to_string(rc.ell));
          ++s.recursions;
        }
      }
    }
  }
}

void ZeroBandsAndSteppingStones(Outcome& o) {
  AuditSummary s;
  AuditAll(o, s, true, false);
  o.detail << s.runs << " runs, " << s.hit_checks << " zero-band checks, "
           << s.stones << " stepping-stone inequalities";
}

void RecursionAudit(Outcome& o) {
  AuditSummary s;
  AuditAll(o, s, false, true);
  o.detail << s.runs << " runs, base case and " << s.recursions
           << " recursion steps hold";
}

// 6 -------------------------------------------------------------------------
void LowerBound(Outcome& o) {
  const Integer n10_bound = Integer(16 * 16 * 16 * 16) * Integer(6 * 6 * 6 * 6) * Integer(4);
  o.Require(LbFirstHit(10) == n10_bound, "LbFirstHit(10) != 16^4 6^4 4");
  double slowest10 = 0;
  for (std::size_t n : {4, 6, 8, 10}) {
    Integer lowest;
    bool first = true;
    for (const RuleSpec& r : BuiltinRules(5)) {
      const auto start = Clock::now();
      const Trace t = RunToEquilibrium(n, r);
      const double secs = Seconds(start);
      if (n == 10) {
        slowest10 = std::max(slowest10, secs);
        o.Require(secs < 5.0, Where(n, r) + ": took " + std::to_string(secs) + " s");
      }
      const Integer& hit = t.final_state.t;
      o.Require(hit >= LbFirstHit(n), Where(n, r) + ": first hit " +
                                          hit.ToString() + " < " +
                                          LbFirstHit(n).ToString());
      if (first || hit < lowest) lowest = hit;
      first = false;
    }
    o.detail << "n=" << n << " min " << lowest << " >= " << LbFirstHit(n) << "; ";
  }
  o.detail << "slowest n=10 run " << slowest10 << " s";
}

// 7 -------------------------------------------------------------------------
PayoffMatrix DistinctMatrix(std::mt19937_64& rng, bool by_column) {
  PayoffMatrix m(5, 5);
  for (std::size_t line = 0; line < 5; ++line) {
    std::vector<std::int64_t> pool;
    for (std::int64_t v = -20; v <= 20; ++v) pool.push_back(v);
    std::shuffle(pool.begin(), pool.end(), rng);
    for (std::size_t k = 0; k < 5; ++k) (by_column ? m(k, line) : m(line, k)) = pool[k];
  }
  return m;
}

bool SameRun(Outcome& o, const PayoffMatrix& a, const PayoffMatrix& b,
             const Profile& init, const RuleSpec& r, const StopCondition& stop,
             const std::string& where) {
  TieBreakRule r1 = TieBreakRule::FromName(r.name, r.seed);
  TieBreakRule r2 = TieBreakRule::FromName(r.name, r.seed);
  RunOptions opts;
  const Trace naive = Run(a, b, init, r1, stop, opts);
  const Trace fast = RunFastForward(a, b, init, r2, stop, opts);
  const auto diff = DiffTraces(naive, fast);
  o.Require(!diff, where + " " + r.Label() + ": " + diff.value_or(""));
  return !diff;
}

void EngineEquivalence(Outcome& o) {
  int compared = 0, equal = 0;
  for (std::size_t n : {2, 4, 6}) {
    for (const RuleSpec& r : BuiltinRules(1)) {
      equal += SameRun(o, K(n), K(n), {n, 1}, r,
                       StopCondition::FirstHit({n / 2, n / 2 + 1}),
                       "K^" + std::to_string(n));
      ++compared;
    }
  }
  // Distinct entries along each column of A and each row of B, so no tie can
  // persist; the fast engine stops on a persistent tie.
  std::mt19937_64 rng(20260101);
  for (int g = 0; g < 100; ++g) {
    const PayoffMatrix a = DistinctMatrix(rng, true);
    const PayoffMatrix b = DistinctMatrix(rng, false);
    const Profile init{1 + rng() % 5, 1 + rng() % 5};
    for (const RuleSpec& r : {RuleSpec{"lexmin", 0}, RuleSpec{"lexmax", 0},
                              RuleSpec{"stay", 0},
                              RuleSpec{"random", static_cast<std::uint64_t>(g)}}) {
      equal += SameRun(o, a, b, init, r, StopCondition::MaxRounds(100000),
                       "game " + std::to_string(g));
      ++compared;
    }
  }
  o.detail << equal << "/" << compared << " trace pairs identical ("
           << compared - equal << " divergences)";
}

// 9 -------------------------------------------------------------------------
void ConcentrationAuditCriterion(Outcome& o) {
  for (std::size_t n : {4, 6}) {
    const Integer n3 = Integer::Pow(Integer(static_cast<std::int64_t>(n)), 3);
    const Ratio eps(Integer(1), Integer(56) * n3);
    try {
      const AuditReport rep = ConcentrationAudit(K(n), eps, 10000, 2026);
      o.detail << "n=" << n << " eps=" << eps << ": " << rep.tested
               << " tested, " << rep.skipped << " skipped, 0 violations; ";
    } catch (const LemmaViolation& e) {
      o.Require(false, "n=" + std::to_string(n) + ": " +
                           std::to_string(e.report().violations.size()) +
                           " counterexamples");
    }
    int refuted = 0;
    for (std::size_t r = 1; r <= n; ++r) {
      for (std::size_t c = 1; c <= n; ++c) {
        if (r == n / 2 && c == n / 2 + 1) continue;
        const bool ne =
            IsEpsNE(K(n), K(n), MixedProfile::Pure({r, c}, n, n), Q(1, 2)).is_eps_ne;
        o.Require(!ne, "n=" + std::to_string(n) + ": " + ToString(Profile{r, c}) +
                           " not refuted at 1/2");
        refuted += ne ? 0 : 1;
      }
    }
    o.detail << refuted << " non-equilibrium pure profiles refuted; ";
  }
}

// 10 ------------------------------------------------------------------------
void GapDecay(Outcome& o) {
  const PayoffMatrix a = K(4);
  for (const RuleSpec& r : BuiltinRules(1)) {
    TieBreakRule rule = TieBreakRule::FromName(r.name, r.seed);
    Trace t = RunFastForward(a, a, {4, 1}, rule, StopCondition::FirstHit({2, 3}));
    const Integer t_star = t.final_state.t;
    t = ResumeFastForward(a, a, std::move(t), rule,
                          StopCondition::MaxRounds(t_star * Integer(8)));
    std::vector<Ratio> scaled;
    for (int m : {2, 4, 8}) {
      const Integer round = t_star * Integer(m);
      const FPState s = StateAtRound(a, a, t, round);
      scaled.push_back(EmpiricalGap(s.row_utility, s.col_utility, s.row_counts) *
                       Ratio(round));
    }
    const auto [lo, hi] = std::minmax_element(scaled.begin(), scaled.end());
    const Ratio spread = (*hi - *lo) / *hi;
    o.Require(spread < Q(1, 10), r.Label() + ": gap*t spread " +
                                     spread.ToDecimal(4) + " >= 0.1");
    // gap*t = L - K/t once absorbed, so the two successive differences over
    // 2T*, 4T*, 8T* are in ratio exactly 2.
    const bool halving = (scaled[1] - scaled[0]) == Ratio(2) * (scaled[2] - scaled[1]);

    TieBreakRule g = TieBreakRule::FromName(r.name, r.seed);
    const Trace gap_run = RunFastForward(a, a, {4, 1}, g,
                                         StopCondition::GapAtMost(Q(1, 256)));
    o.Require(gap_run.final_state.t >= t_star,
              r.Label() + ": gap <= 1/256 at " + gap_run.final_state.t.ToString() +
                  " before T* = " + t_star.ToString());
    o.detail << r.Label() << ": T*=" << t_star << " gap*t = "
             << scaled[0].ToDecimal(6) << ", " << scaled[1].ToDecimal(6) << ", "
             << scaled[2].ToDecimal(6) << " spread " << spread.ToDecimal(4)
             << (halving ? " (differences halve exactly)" : "")
             << ", gap<=1/256 at " << gap_run.final_state.t << "; ";
  }
}

// 11 ------------------------------------------------------------------------
std::vector<std::vector<std::string>> ReadCsv(const std::filesystem::path& p) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream is(ReadFile(p));
  for (std::string line; std::getline(is, line);) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) cells.push_back(cell);
    rows.push_back(std::move(cells));
  }
  return rows;
}

void PaperExperiment(Outcome& o) {
  const auto base = std::filesystem::temp_directory_path() /
                    ("fplab_acceptance_" + std::to_string(::getpid()));
  std::filesystem::remove_all(base);
  const ExperimentResult r = WriteExperiment(4, {}, base / "run1");
  WriteExperiment(4, {}, base / "run2");
  const char* files[] = {"transitions.csv", "nash_gap.csv", "row_strategy.csv",
                         "manifest.json"};
  for (const char* f : files) {
    o.Require(ReadFile(base / "run1" / f) == ReadFile(base / "run2" / f),
              std::string(f) + " differs between runs");
  }

  const auto transitions = ReadCsv(base / "run1" / "transitions.csv");
  const auto spiral = SpiralOrder(K(4));
  o.Require(transitions.size() == spiral.size() + 1,
            "transitions.csv has " + std::to_string(transitions.size() - 1) + " rows");
  for (std::size_t k = 1; k < transitions.size() && k <= spiral.size(); ++k) {
    const Profile p{std::stoul(transitions[k][2]), std::stoul(transitions[k][3])};
    o.Require(p == spiral[k - 1].cell, "transition " + std::to_string(k) +
                                           " is not the spiral cell");
    if (k > 1) {
      o.Require(Integer::FromString(transitions[k][1]) >
                    Integer::FromString(transitions[k - 1][1]),
                "transition rounds not increasing");
    }
  }

  const Integer t_star = r.first_hit;
  const Integer tail = t_star * Integer(2);
  const auto gaps = ReadCsv(base / "run1" / "nash_gap.csv");
  std::optional<Ratio> prev;
  int tail_points = 0;
  for (std::size_t k = 1; k < gaps.size(); ++k) {
    const Integer round = Integer::FromString(gaps[k][0]);
    const Ratio g = Ratio::FromString(gaps[k][1]);
    o.Require(g.sign() >= 0, "negative gap at round " + gaps[k][0]);
    if (round < tail) continue;
    if (prev) o.Require(g <= *prev, "gap rises on the tail at round " + gaps[k][0]);
    prev = g;
    ++tail_points;
  }

  const auto xs = ReadCsv(base / "run1" / "row_strategy.csv");
  std::optional<Ratio> last_x;
  int x_points = 0;
  for (std::size_t k = 1; k < xs.size(); ++k) {
    if (Integer::FromString(xs[k][0]) < t_star) continue;
    const Ratio x = Ratio::FromString(xs[k][2]);  // x_{n/2} for n = 4
    if (last_x) o.Require(x > *last_x, "x_2 does not rise at round " + xs[k][0]);
    last_x = x;
    ++x_points;
  }
  std::filesystem::remove_all(base);
  o.detail << transitions.size() - 1 << " spiral-ordered profiles, T*=" << t_star
           << ", gap non-increasing over " << tail_points
           << " tail rounds (t >= 2T*), x_2 rising over " << x_points
           << " rounds after T*, outputs byte-identical";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance checks"};
  int only = 0;
  app.add_option("--only", only, "Run a single criterion (1-11)");
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> criteria = {
      {1, "construction fidelity", 1.0, ConstructionFidelity},
      {2, "structural validation", 1.0, StructuralValidation},
      {3, "unique pure NE", 1.0, UniquePureNe},
      {4, "spiral trajectory", 10.0, SpiralTrajectory},
      {5, "zero bands and stepping stones", 30.0, ZeroBandsAndSteppingStones},
      {6, "lower-bound reproduction", 60.0, LowerBound},
      {7, "engine equivalence", 60.0, EngineEquivalence},
      {8, "recursion audit", 30.0, RecursionAudit},
      {9, "equilibrium concentration", 60.0, ConcentrationAuditCriterion},
      {10, "gap decay", 5.0, GapDecay},
      {11, "experiment reproduction", 5.0, PaperExperiment},
  };

  bool all = true;
  bool ran = false;
  for (const Criterion& c : criteria) {
    if (only != 0 && c.id != only) continue;
    ran = true;
    Outcome o;
    const auto start = Clock::now();
    try {
      c.body(o);
    } catch (const std::exception& e) {
      o.Require(false, std::string("exception: ") + e.what());
    }
    const double secs = Seconds(start);
    o.Require(secs < c.budget_seconds, "over budget");
    std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << c.id << " " << c.name
              << ": " << o.detail.str();
    for (const auto& p : o.problems) std::cout << " | " << p;
    std::cout << " (" << secs << " s / budget " << c.budget_seconds << " s)\n";
    all = all && o.pass;
  }
  if (!ran) {
    std::cerr << "no criterion " << only << "\n";
    return 2;
  }
  return all ? 0 : 1;
}
