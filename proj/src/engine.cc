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

#include "fplab/engine.h"

#include <algorithm>
#include <sstream>
#include <utility>

#include "fplab/equilibrium.h"
#include "fplab/errors.h"

namespace fplab {

std::string ToString(StopReason r) {
  switch (r) {
    case StopReason::kNone: return "none";
    case StopReason::kMaxRounds: return "max_rounds";
    case StopReason::kFirstHit: return "first_hit";
    case StopReason::kGapReached: return "gap_reached";
    case StopReason::kRoundCap: return "round_cap";
  }
  return "?";
}

StopCondition StopCondition::MaxRounds(Integer rounds) {
  if (rounds.sign() <= 0) {
    throw DomainError("rounds stop needs T >= 1, got " + rounds.ToString());
  }
  StopCondition s;
  s.kind = Kind::kMaxRounds;
  s.rounds = std::move(rounds);
  return s;
}

StopCondition StopCondition::FirstHit(Profile target,
                                      std::optional<Integer> cap) {
  StopCondition s;
  s.kind = Kind::kFirstHit;
  s.target = target;
  s.round_cap = std::move(cap);
  return s;
}

StopCondition StopCondition::GapAtMost(Ratio eps, std::optional<Integer> cap) {
  if (eps.sign() < 0) {
    throw DomainError("gap threshold must be >= 0, got " + eps.ToString());
  }
  StopCondition s;
  s.kind = Kind::kGapAtMost;
  s.eps = std::move(eps);
  s.round_cap = std::move(cap);
  return s;
}

StopCondition StopCondition::Parse(std::string_view text) {
  const std::size_t colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw ParseError("malformed stop condition '" + std::string(text) +
                     "' (expected rounds:T, first-hit:i,j or gap:p/q)");
  }
  const std::string_view kind = text.substr(0, colon);
  const std::string_view arg = text.substr(colon + 1);
  if (kind == "rounds") {
    const Integer t = Integer::FromString(arg);
    if (t.sign() <= 0) {
      throw ParseError("rounds stop needs T >= 1, got '" + std::string(arg) +
                       "'");
    }
    return MaxRounds(t);
  }
  if (kind == "first-hit") return FirstHit(ParseProfile(arg));
  if (kind == "gap") {
    const Ratio eps = Ratio::FromString(arg);
    if (eps.sign() < 0) {
      throw ParseError("gap threshold must be >= 0, got '" + std::string(arg) +
                       "'");
    }
    return GapAtMost(eps);
  }
  throw ParseError("unknown stop condition '" + std::string(kind) + "'");
}

std::string StopCondition::ToString() const {
  switch (kind) {
    case Kind::kMaxRounds: return "rounds:" + rounds.ToString();
    case Kind::kFirstHit:
      return "first-hit:" + std::to_string(target.row) + "," +
             std::to_string(target.col);
    case Kind::kGapAtMost: return "gap:" + eps.ToString();
  }
  return "?";
}

FPState InitState(const PayoffMatrix& a, const PayoffMatrix& b,
                  const Profile& init) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("payoff matrices differ in shape");
  }
  CheckProfile(init, a.rows(), a.cols());
  FPState s;
  s.t = 1;
  s.row_counts = CountVector(a.rows());
  s.col_counts = CountVector(a.cols());
  s.row_counts.Add(init.row - 1);
  s.col_counts.Add(init.col - 1);
  s.row_utility = a.column(init.col - 1);
  const auto brow = b.row(init.row - 1);
  s.col_utility.assign(brow.begin(), brow.end());
  s.current = init;
  return s;
}

namespace {

// Argmax resolution without allocating in the common singleton case.
std::size_t ResolveArgmax(const IntVector& v, std::size_t prev,
                          TieBreakRule& rule) {
  std::size_t best = 0;
  std::size_t ties = 1;
  for (std::size_t k = 1; k < v.size(); ++k) {
    const auto cmp = v[k] <=> v[best];
    if (cmp > 0) {
      best = k;
      ties = 1;
    } else if (cmp == 0) {
      ++ties;
    }
  }
  if (ties == 1) return best + 1;
  const std::vector<std::size_t> set = ArgmaxSet(v);
  return rule.Resolve(set, prev);
}

}  // namespace

Profile DecideNext(const FPState& state, TieBreakRule& rule) {
  Profile next;
  next.row = ResolveArgmax(state.row_utility, state.current.row, rule);
  next.col = ResolveArgmax(state.col_utility, state.current.col, rule);
  return next;
}

void ApplyRounds(FPState& state, const PayoffMatrix& a, const PayoffMatrix& b,
                 const Profile& profile, const Integer& k) {
  if (k.sign() < 0) throw DomainError("cannot advance a negative round count");
  if (k.is_zero()) return;
  const std::size_t i = profile.row - 1;
  const std::size_t j = profile.col - 1;
  const bool one = k == Integer(1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    const Integer& d = a(r, j);
    if (d.is_zero()) continue;
    if (one) {
      state.row_utility[r] += d;
    } else {
      state.row_utility[r].AddProduct(d, k);
    }
  }
  for (std::size_t c = 0; c < b.cols(); ++c) {
    const Integer& d = b(i, c);
    if (d.is_zero()) continue;
    if (one) {
      state.col_utility[c] += d;
    } else {
      state.col_utility[c].AddProduct(d, k);
    }
  }
  state.row_counts.Add(i, k);
  state.col_counts.Add(j, k);
  state.t += k;
  state.current = profile;
}

void StepInPlace(FPState& state, const PayoffMatrix& a, const PayoffMatrix& b,
                 TieBreakRule& rule) {
  const Profile next = DecideNext(state, rule);
  ApplyRounds(state, a, b, next, 1);
}

FPState Step(FPState state, const PayoffMatrix& a, const PayoffMatrix& b,
             TieBreakRule& rule) {
  StepInPlace(state, a, b, rule);
  return state;
}

Trace StartTrace(const PayoffMatrix& a, const PayoffMatrix& b,
                 const Profile& init, bool record_snapshots) {
  Trace trace;
  trace.init = init;
  trace.final_state = InitState(a, b, init);
  SwitchEvent first{Integer(1), init, std::nullopt, std::nullopt};
  if (record_snapshots) {
    first.row_snapshot = IntVector(a.rows());
    first.col_snapshot = IntVector(a.cols());
  }
  trace.switches.push_back(std::move(first));
  return trace;
}

void CheckStopSupported(const PayoffMatrix& a, const PayoffMatrix& b,
                        const StopCondition& stop) {
  if (stop.kind == StopCondition::Kind::kGapAtMost && !(a == b)) {
    throw UnsupportedError(
        "gap stop needs an identical-payoff game (A == B)");
  }
  if (stop.kind == StopCondition::Kind::kFirstHit) {
    CheckProfile(stop.target, a.rows(), a.cols());
  }
}

bool ShouldStop(const FPState& state, const StopCondition& stop,
                StopReason* reason) {
  bool hit = false;
  StopReason why = StopReason::kNone;
  switch (stop.kind) {
    case StopCondition::Kind::kMaxRounds:
      hit = state.t >= stop.rounds;
      why = StopReason::kMaxRounds;
      break;
    case StopCondition::Kind::kFirstHit:
      hit = state.current == stop.target;
      why = StopReason::kFirstHit;
      break;
    case StopCondition::Kind::kGapAtMost:
      hit = EmpiricalGapAtMost(state.row_utility, state.col_utility,
                               state.row_counts, stop.eps);
      why = StopReason::kGapReached;
      break;
  }
  if (!hit && stop.round_cap && state.t >= *stop.round_cap) {
    hit = true;
    why = StopReason::kRoundCap;
  }
  if (hit && reason) *reason = why;
  return hit;
}

namespace {

bool IsMultiple(const Integer& t, const Integer& every) {
  return t == Integer::FloorDiv(t, every) * every;
}

}  // namespace

Trace Resume(const PayoffMatrix& a, const PayoffMatrix& b, Trace trace,
             TieBreakRule& rule, const StopCondition& stop,
             const RunOptions& options) {
  CheckStopSupported(a, b, stop);
  FPState& state = trace.final_state;
  const bool checkpoints =
      options.checkpoint_every.sign() > 0 && options.on_checkpoint;
  StopReason reason = StopReason::kNone;
  while (!ShouldStop(state, stop, &reason)) {
    const Profile next = DecideNext(state, rule);
    if (next != state.current) {
      SwitchEvent ev{state.t + 1, next, std::nullopt, std::nullopt};
      if (options.record_snapshots) {
        ev.row_snapshot = state.row_utility;
        ev.col_snapshot = state.col_utility;
      }
      trace.switches.push_back(std::move(ev));
    }
    ApplyRounds(state, a, b, next, 1);
    if (checkpoints && IsMultiple(state.t, options.checkpoint_every)) {
      trace.stop_reason = StopReason::kNone;
      options.on_checkpoint(trace, rule);
    }
  }
  trace.stop_reason = reason;
  return trace;
}

Trace Run(const PayoffMatrix& a, const PayoffMatrix& b, const Profile& init,
          TieBreakRule& rule, const StopCondition& stop,
          const RunOptions& options) {
  CheckStopSupported(a, b, stop);
  return Resume(a, b, StartTrace(a, b, init, options.record_snapshots), rule,
                stop, options);
}

void CheckState(const FPState& state, const PayoffMatrix& a,
                const PayoffMatrix& b) {
  if (state.row_counts.total() != state.t ||
      state.col_counts.total() != state.t) {
    throw DesyncError("play counts do not total t = " + state.t.ToString());
  }
  if (UtilityVectorRow(a, state.col_counts) != state.row_utility) {
    throw DesyncError("row utility vector disagrees with the play counts");
  }
  if (UtilityVectorCol(b, state.row_counts) != state.col_utility) {
    throw DesyncError("column utility vector disagrees with the play counts");
  }
}

namespace {

// Walks the switch list. visit(event_index, state_before_event) sees the
// state after round event.round - 1 (nullptr for the first event).
template <typename Visit>
FPState Replay(const PayoffMatrix& a, const PayoffMatrix& b,
               const Trace& trace, const Integer& last_round, Visit visit) {
  if (trace.switches.empty() || trace.switches.front().round != Integer(1) ||
      trace.switches.front().profile != trace.init) {
    throw MissingDataError("trace does not begin with the round-1 play");
  }
  visit(std::size_t{0}, static_cast<const FPState*>(nullptr));
  FPState s = InitState(a, b, trace.init);
  for (std::size_t k = 1; k < trace.switches.size(); ++k) {
    const SwitchEvent& ev = trace.switches[k];
    if (ev.round <= trace.switches[k - 1].round) {
      throw MissingDataError("switch rounds are not strictly increasing");
    }
    if (ev.round > last_round) {
      ApplyRounds(s, a, b, s.current, last_round - s.t);
      return s;
    }
    ApplyRounds(s, a, b, s.current, ev.round - 1 - s.t);
    visit(k, &s);
    ApplyRounds(s, a, b, ev.profile, 1);
  }
  if (last_round > s.t) ApplyRounds(s, a, b, s.current, last_round - s.t);
  return s;
}

}  // namespace

FPState StateAtRound(const PayoffMatrix& a, const PayoffMatrix& b,
                     const Trace& trace, const Integer& round) {
  if (round.sign() <= 0 || round > trace.final_state.t) {
    throw DomainError("round " + round.ToString() + " outside the trace [1, " +
                      trace.final_state.t.ToString() + "]");
  }
  return Replay(a, b, trace, round, [](std::size_t, const FPState*) {});
}

void ReconstructSnapshots(const PayoffMatrix& a, const PayoffMatrix& b,
                          Trace& trace) {
  Replay(a, b, trace, trace.final_state.t,
         [&](std::size_t k, const FPState* before) {
           SwitchEvent& ev = trace.switches[k];
           if (before) {
             ev.row_snapshot = before->row_utility;
             ev.col_snapshot = before->col_utility;
           } else {
             ev.row_snapshot = IntVector(a.rows());
             ev.col_snapshot = IntVector(a.cols());
           }
         });
}

namespace {

std::string VecToString(const IntVector& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t k = 0; k < v.size(); ++k) os << (k ? "," : "") << v[k];
  os << ')';
  return os.str();
}

}  // namespace

std::optional<std::string> DiffTraces(const Trace& x, const Trace& y) {
  if (x.init != y.init) {
    return "init differs: " + ToString(x.init) + " vs " + ToString(y.init);
  }
  const std::size_t common = std::min(x.switches.size(), y.switches.size());
  for (std::size_t k = 0; k < common; ++k) {
    const SwitchEvent& p = x.switches[k];
    const SwitchEvent& q = y.switches[k];
    const std::string at = "switch " + std::to_string(k) + ": ";
    if (p.round != q.round || p.profile != q.profile) {
      return at + ToString(p.profile) + "@" + p.round.ToString() + " vs " +
             ToString(q.profile) + "@" + q.round.ToString();
    }
    if (p.row_snapshot && q.row_snapshot && *p.row_snapshot != *q.row_snapshot) {
      return at + "row snapshot " + VecToString(*p.row_snapshot) + " vs " +
             VecToString(*q.row_snapshot);
    }
    if (p.col_snapshot && q.col_snapshot && *p.col_snapshot != *q.col_snapshot) {
      return at + "column snapshot " + VecToString(*p.col_snapshot) + " vs " +
             VecToString(*q.col_snapshot);
    }
  }
  if (x.switches.size() != y.switches.size()) {
    return "switch count differs: " + std::to_string(x.switches.size()) +
           " vs " + std::to_string(y.switches.size());
  }
  const FPState& s = x.final_state;
  const FPState& u = y.final_state;
  if (s.t != u.t) return "final round differs: " + s.t.ToString() + " vs " + u.t.ToString();
  if (s.current != u.current) {
    return "final profile differs: " + ToString(s.current) + " vs " +
           ToString(u.current);
  }
  if (s.row_utility != u.row_utility) {
    return "final R differs: " + VecToString(s.row_utility) + " vs " +
           VecToString(u.row_utility);
  }
  if (s.col_utility != u.col_utility) {
    return "final C differs: " + VecToString(s.col_utility) + " vs " +
           VecToString(u.col_utility);
  }
  if (s.row_counts != u.row_counts || s.col_counts != u.col_counts) {
    return std::string("final play counts differ");
  }
  if (x.stop_reason != y.stop_reason) {
    return "stop reason differs: " + ToString(x.stop_reason) + " vs " +
           ToString(y.stop_reason);
  }
  return std::nullopt;
}

}  // namespace fplab
