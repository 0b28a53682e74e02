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

// Reference fictitious-play simulator: one round per step.
//
// Round convention. Rounds are numbered from 1; round 1 plays the initial
// profile. At round t >= 2 each player best-responds to the cumulative
// utility of the opponent's plays in rounds 1..t-1. FPState stores the sums
// *through* its own round t, so the vectors held by the state at round t are
// the ones both players maximize at round t+1. A SwitchEvent snapshot at
// round t holds the pre-play vectors (sums through t-1), i.e. exactly what
// the players responded to when they switched.

#ifndef FPLAB_ENGINE_H_
#define FPLAB_ENGINE_H_

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fplab/exact.h"
#include "fplab/game.h"
#include "fplab/tie_break.h"

namespace fplab {

struct FPState {
  Integer t = 0;  // rounds played so far
  IntVector row_utility;  // A * col_counts
  IntVector col_utility;  // row_counts^T * B
  CountVector row_counts;
  CountVector col_counts;
  Profile current;  // profile played at round t

  friend bool operator==(const FPState&, const FPState&) = default;
};

struct SwitchEvent {
  Integer round;
  Profile profile;
  std::optional<IntVector> row_snapshot;
  std::optional<IntVector> col_snapshot;

  friend bool operator==(const SwitchEvent&, const SwitchEvent&) = default;
};

enum class StopReason { kNone, kMaxRounds, kFirstHit, kGapReached, kRoundCap };
std::string ToString(StopReason r);

struct StopCondition {
  enum class Kind { kMaxRounds, kFirstHit, kGapAtMost };

  Kind kind = Kind::kMaxRounds;
  Integer rounds = 1;  // kMaxRounds: stop once round `rounds` has been played
  Profile target;      // kFirstHit
  Ratio eps;           // kGapAtMost; identical-payoff games only
  // Extra bound on the round counter for the open-ended kinds.
  std::optional<Integer> round_cap;

  static StopCondition MaxRounds(Integer rounds);
  static StopCondition FirstHit(Profile target,
                                std::optional<Integer> cap = std::nullopt);
  static StopCondition GapAtMost(Ratio eps,
                                 std::optional<Integer> cap = std::nullopt);
  // "rounds:<T>", "first-hit:<i,j>" or "gap:<rational>". Throws ParseError.
  static StopCondition Parse(std::string_view text);
  std::string ToString() const;
};

struct Trace {
  Profile init;
  // One event per change of the played profile. The first event is the
  // initial play at round 1; rounds are strictly increasing and consecutive
  // profiles differ.
  std::vector<SwitchEvent> switches;
  FPState final_state;
  StopReason stop_reason = StopReason::kNone;

  friend bool operator==(const Trace&, const Trace&) = default;
};

struct RunOptions {
  // Store pre-play utility vectors on every switch event.
  bool record_snapshots = true;
  // Fast engine: maximum number of consecutive tied rounds.
  Integer tie_budget = 10000;
  // When positive, on_checkpoint fires after every round that is a multiple
  // of checkpoint_every.
  Integer checkpoint_every = 0;
  std::function<void(const Trace&, const TieBreakRule&)> on_checkpoint;
};

// Throws DimensionError on shape mismatch between A, B and init.
FPState InitState(const PayoffMatrix& a, const PayoffMatrix& b,
                  const Profile& init);

// The profile the rule selects for round state.t + 1.
Profile DecideNext(const FPState& state, TieBreakRule& rule);

// Plays `profile` for k more rounds.
void ApplyRounds(FPState& state, const PayoffMatrix& a, const PayoffMatrix& b,
                 const Profile& profile, const Integer& k = Integer(1));

void StepInPlace(FPState& state, const PayoffMatrix& a, const PayoffMatrix& b,
                 TieBreakRule& rule);
FPState Step(FPState state, const PayoffMatrix& a, const PayoffMatrix& b,
             TieBreakRule& rule);

// Throws UnsupportedError for a gap stop on a game with A != B.
Trace Run(const PayoffMatrix& a, const PayoffMatrix& b, const Profile& init,
          TieBreakRule& rule, const StopCondition& stop,
          const RunOptions& options = {});
// Continues a partial trace (e.g. one restored from a checkpoint).
Trace Resume(const PayoffMatrix& a, const PayoffMatrix& b, Trace partial,
             TieBreakRule& rule, const StopCondition& stop,
             const RunOptions& options = {});

// Helpers shared by both engines.
Trace StartTrace(const PayoffMatrix& a, const PayoffMatrix& b,
                 const Profile& init, bool record_snapshots);
void CheckStopSupported(const PayoffMatrix& a, const PayoffMatrix& b,
                        const StopCondition& stop);
// Whether the run must stop at `state`; sets *reason when it must.
bool ShouldStop(const FPState& state, const StopCondition& stop,
                StopReason* reason);

// Recomputes the utility vectors from the counts; throws DesyncError on any
// mismatch with the incrementally maintained ones.
void CheckState(const FPState& state, const PayoffMatrix& a,
                const PayoffMatrix& b);

// Exact state after `round` rounds, rebuilt from the switch list.
FPState StateAtRound(const PayoffMatrix& a, const PayoffMatrix& b,
                     const Trace& trace, const Integer& round);
// Fills missing snapshots from the switch list alone.
void ReconstructSnapshots(const PayoffMatrix& a, const PayoffMatrix& b,
                          Trace& trace);

// First difference between two traces, or nullopt when identical.
std::optional<std::string> DiffTraces(const Trace& a, const Trace& b);

}  // namespace fplab

#endif  // FPLAB_ENGINE_H_
