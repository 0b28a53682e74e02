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

#include "fplab/fast_forward.h"

#include <utility>
#include <vector>

#include "fplab/equilibrium.h"
#include "fplab/errors.h"

namespace fplab {

std::string ToString(Boundary b) {
  switch (b) {
    case Boundary::kRowCatch: return "row_catch";
    case Boundary::kColCatch: return "col_catch";
    case Boundary::kBothCatch: return "both_catch";
    case Boundary::kHorizon: return "horizon";
  }
  return "?";
}

namespace {

// 0-based index of the unique maximum, or nullopt on a tie.
std::optional<std::size_t> UniqueMax(const IntVector& v) {
  std::size_t best = 0;
  bool tied = false;
  for (std::size_t k = 1; k < v.size(); ++k) {
    const auto c = v[k] <=> v[best];
    if (c > 0) {
      best = k;
      tied = false;
    } else if (c == 0) {
      tied = true;
    }
  }
  if (tied) return std::nullopt;
  return best;
}

// Minimum catch-up time over the challengers of `leader`, where `gain(k)` is
// the per-round increment of coordinate k. nullopt when nobody gains.
std::optional<Integer> MinCatchUp(const IntVector& v, std::size_t leader,
                                  const auto& gain) {
  std::optional<Integer> best;
  const Integer& lead_gain = gain(leader);
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k == leader) continue;
    const Integer d = gain(k) - lead_gain;
    if (d.sign() <= 0) continue;
    const Integer deficit = v[leader] - v[k];
    const Integer rounds = Integer::CeilDiv(deficit, d);
    if (!best || rounds < *best) best = rounds;
  }
  return best;
}

std::string TieDescription(const FPState& s) {
  const auto list = [](const std::vector<std::size_t>& set) {
    std::string out = "{";
    for (std::size_t k = 0; k < set.size(); ++k) {
      out += (k ? "," : "") + std::to_string(set[k]);
    }
    return out + "}";
  };
  return "row argmax " + list(ArgmaxSet(s.row_utility)) + ", column argmax " +
         list(ArgmaxSet(s.col_utility));
}

}  // namespace

std::optional<Profile> SingletonArgmax(const FPState& state) {
  const auto r = UniqueMax(state.row_utility);
  const auto c = UniqueMax(state.col_utility);
  if (!r || !c) return std::nullopt;
  return Profile{*r + 1, *c + 1};
}

JumpOutcome RoundsUntilSwitch(const FPState& state, const PayoffMatrix& a,
                              const PayoffMatrix& b,
                              const std::optional<Integer>& horizon) {
  const auto p = SingletonArgmax(state);
  if (!p) throw TieStateError("argmax not unique: " + TieDescription(state));
  if (horizon && horizon->sign() <= 0) {
    throw DomainError("jump horizon must be >= 1");
  }
  const std::size_t i = p->row - 1;
  const std::size_t j = p->col - 1;
  const auto row_k = MinCatchUp(state.row_utility, i,
                                [&](std::size_t k) -> const Integer& { return a(k, j); });
  const auto col_k = MinCatchUp(state.col_utility, j,
                                [&](std::size_t k) -> const Integer& { return b(i, k); });
  JumpOutcome out;
  if (row_k && col_k) {
    const auto c = *row_k <=> *col_k;
    out.k = c <= 0 ? *row_k : *col_k;
    out.boundary = c < 0   ? Boundary::kRowCatch
                   : c > 0 ? Boundary::kColCatch
                           : Boundary::kBothCatch;
  } else if (row_k) {
    out.k = *row_k;
    out.boundary = Boundary::kRowCatch;
  } else if (col_k) {
    out.k = *col_k;
    out.boundary = Boundary::kColCatch;
  } else {
    if (!horizon) {
      throw DivergenceNotice("profile " + ToString(*p) +
                             " is absorbing: no challenger ever catches up");
    }
    out.k = *horizon;
    out.boundary = Boundary::kHorizon;
    return out;
  }
  if (horizon && *horizon < out.k) {
    out.k = *horizon;
    out.boundary = Boundary::kHorizon;
  }
  return out;
}

FPState Advance(FPState state, const PayoffMatrix& a, const PayoffMatrix& b,
                const Integer& k) {
  ApplyRounds(state, a, b, state.current, k);
  return state;
}

namespace {

class FastRunner {
 public:
  FastRunner(const PayoffMatrix& a, const PayoffMatrix& b, Trace& trace,
             TieBreakRule& rule, const StopCondition& stop,
             const RunOptions& options, FastForwardStats& stats)
      : a_(a), b_(b), trace_(trace), state_(trace.final_state), rule_(rule),
        stop_(stop), options_(options), stats_(stats) {}

  void Run() {
    StopReason reason = StopReason::kNone;
    Integer tie_run = 0;
    while (!ShouldStop(state_, stop_, &reason)) {
      const auto p = SingletonArgmax(state_);
      if (!p) {
        ++tie_run;
        if (tie_run > options_.tie_budget) {
          throw PersistentTieError(
              "tie persisted for more than " + options_.tie_budget.ToString() +
              " rounds at t = " + state_.t.ToString() + ": " +
              TieDescription(state_));
        }
        NaiveStep();
        continue;
      }
      tie_run = 0;
      Jump(*p);
    }
    trace_.stop_reason = reason;
  }

 private:
  void Record(const Profile& next) {
    if (next == state_.current) return;
    SwitchEvent ev{state_.t + 1, next, std::nullopt, std::nullopt};
    if (options_.record_snapshots) {
      ev.row_snapshot = state_.row_utility;
      ev.col_snapshot = state_.col_utility;
    }
    trace_.switches.push_back(std::move(ev));
  }

  void AfterRounds() {
    if (CheckpointsOn() &&
        state_.t == Integer::FloorDiv(state_.t, options_.checkpoint_every) *
                        options_.checkpoint_every) {
      trace_.stop_reason = StopReason::kNone;
      options_.on_checkpoint(trace_, rule_);
    }
  }

  bool CheckpointsOn() const {
    return options_.checkpoint_every.sign() > 0 && options_.on_checkpoint;
  }

  void NaiveStep() {
    const Profile next = DecideNext(state_, rule_);
    Record(next);
    ApplyRounds(state_, a_, b_, next, 1);
    ++stats_.naive_steps;
    AfterRounds();
  }

  // Rounds until the stop condition or a checkpoint forces a look at the
  // state, or nullopt if nothing but a switch bounds the stretch.
  std::optional<Integer> Horizon(const Profile& p) const {
    std::optional<Integer> h;
    const auto cap = [&](const Integer& v) {
      if (!h || v < *h) h = v;
    };
    switch (stop_.kind) {
      case StopCondition::Kind::kMaxRounds: cap(stop_.rounds - state_.t); break;
      case StopCondition::Kind::kFirstHit:
        if (p == stop_.target) cap(Integer(1));
        break;
      case StopCondition::Kind::kGapAtMost: break;
    }
    if (stop_.round_cap) cap(*stop_.round_cap - state_.t);
    if (CheckpointsOn()) {
      const Integer& every = options_.checkpoint_every;
      cap(every - (state_.t - Integer::FloorDiv(state_.t, every) * every));
    }
    return h;
  }

  void Jump(const Profile& p) {
    const std::optional<Integer> horizon = Horizon(p);
    std::optional<JumpOutcome> jump;
    try {
      jump = RoundsUntilSwitch(state_, a_, b_, horizon);
    } catch (const DivergenceNotice&) {
      // Absorbing profile, open-ended stop condition.
      if (stop_.kind == StopCondition::Kind::kFirstHit) {
        throw NotReached("first hit of " + ToString(stop_.target) +
                         " never happens: the run is absorbed at " +
                         ToString(p) + " from round " +
                         (state_.t + 1).ToString());
      }
      Record(p);
      ApplyRounds(state_, a_, b_, p, AbsorbedGapRounds(p));
      ++stats_.jumps;
      AfterRounds();
      return;
    }
    Integer k = jump->k;
    if (stop_.kind == StopCondition::Kind::kGapAtMost && k > Integer(1)) {
      k = GapRoundsInStretch(p, k);
    }
    Record(p);
    ApplyRounds(state_, a_, b_, p, k);
    ++stats_.jumps;
    AfterRounds();
  }

  bool GapReachedAfter(const Profile& p, const Integer& s) {
    FPState probe = state_;
    ApplyRounds(probe, a_, b_, p, s);
    ++stats_.gap_probes;
    return EmpiricalGapAtMost(probe.row_utility, probe.col_utility,
                              probe.row_counts, stop_.eps);
  }

  // Smallest s in (lo, hi] with GapReachedAfter(s), given it holds at hi and
  // fails at lo.
  Integer Bisect(const Profile& p, Integer lo, Integer hi) {
    while (hi - lo > Integer(1)) {
      const Integer mid = lo + Integer::FloorDiv(hi - lo, Integer(2));
      if (GapReachedAfter(p, mid)) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    return hi;
  }

  // Inside a stretch of k rounds with a fixed singleton argmax profile, the
  // gap numerator is linear in the offset s for s < k, so
  // p (t+s)^2 - q N(s) is convex in s and negative at s = 0 (the loop checked
  // it). The predicate is therefore false and then true on [0, k-1], and the
  // first true offset is found exactly by bisection. The last round of the
  // stretch, where a challenger draws level, is left to the main loop.
  Integer GapRoundsInStretch(const Profile& p, const Integer& k) {
    const Integer last = k - Integer(1);
    if (!GapReachedAfter(p, last)) return k;
    return Bisect(p, Integer(0), last);
  }

  // After absorption the same convexity holds for every s >= 0. Probes
  // s = 1, 2, 4, ... then bisects.
  Integer AbsorbedGapRounds(const Profile& p) {
    if (stop_.eps.sign() == 0) {
      // The numerator is linear; with a non-decreasing numerator it never
      // reaches zero.
      FPState one = state_;
      ApplyRounds(one, a_, b_, p, 1);
      const Integer n0 = EmpiricalGapNumerator(state_.row_utility,
                                               state_.col_utility,
                                               state_.row_counts);
      const Integer n1 = EmpiricalGapNumerator(one.row_utility,
                                               one.col_utility, one.row_counts);
      if (n1 >= n0 && n1.sign() > 0) {
        throw NotReached("gap never reaches 0: the run is absorbed at " +
                         ToString(p) + " with gap numerator non-decreasing");
      }
    }
    Integer lo = 0;
    Integer hi = 1;
    while (!GapReachedAfter(p, hi)) {
      lo = hi;
      hi *= Integer(2);
    }
    return Bisect(p, lo, hi);
  }

  const PayoffMatrix& a_;
  const PayoffMatrix& b_;
  Trace& trace_;
  FPState& state_;
  TieBreakRule& rule_;
  const StopCondition& stop_;
  const RunOptions& options_;
  FastForwardStats& stats_;
};

}  // namespace

Trace ResumeFastForward(const PayoffMatrix& a, const PayoffMatrix& b,
                        Trace trace, TieBreakRule& rule,
                        const StopCondition& stop, const RunOptions& options,
                        FastForwardStats* stats) {
  CheckStopSupported(a, b, stop);
  FastForwardStats local;
  FastRunner runner(a, b, trace, rule, stop, options, stats ? *stats : local);
  runner.Run();
  return trace;
}

Trace RunFastForward(const PayoffMatrix& a, const PayoffMatrix& b,
                     const Profile& init, TieBreakRule& rule,
                     const StopCondition& stop, const RunOptions& options,
                     FastForwardStats* stats) {
  CheckStopSupported(a, b, stop);
  return ResumeFastForward(a, b,
                           StartTrace(a, b, init, options.record_snapshots),
                           rule, stop, options, stats);
}

Integer FirstHit(const PayoffMatrix& a, const PayoffMatrix& b,
                 const Profile& init, TieBreakRule& rule, const Profile& target,
                 const Integer& cap) {
  RunOptions options;
  options.record_snapshots = false;
  const Trace trace = RunFastForward(
      a, b, init, rule, StopCondition::FirstHit(target, cap), options);
  if (trace.stop_reason != StopReason::kFirstHit) {
    throw NotReached("profile " + ToString(target) + " not played within " +
                     cap.ToString() + " rounds");
  }
  return trace.final_state.t;
}

}  // namespace fplab
