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

// Event-driven fictitious play. While both argmax sets are singletons the
// played profile (i,j) is fixed, R moves by A's column j and C by B's row i
// each round, and the first round a challenger can draw level is a ceiling
// division away. The engine jumps to that round in one step and lets the
// naive step (and the tie-break rule) handle the boundary, so its traces are
// identical to Run()'s.

#ifndef FPLAB_FAST_FORWARD_H_
#define FPLAB_FAST_FORWARD_H_

#include <cstddef>
#include <optional>
#include <string>

#include "fplab/engine.h"
#include "fplab/exact.h"
#include "fplab/game.h"
#include "fplab/tie_break.h"

namespace fplab {

enum class Boundary { kRowCatch, kColCatch, kBothCatch, kHorizon };
std::string ToString(Boundary b);

struct JumpOutcome {
  // Rounds that can be played with the argmax profile before any challenger
  // can draw level; after them at least one deficit is <= 0 (or the horizon
  // was hit).
  Integer k;
  Boundary boundary = Boundary::kHorizon;
};

// The profile the state's argmaxes select, provided both are singletons.
std::optional<Profile> SingletonArgmax(const FPState& state);

// Throws TieStateError if either argmax set has more than one member, and
// DivergenceNotice when no challenger ever catches up and no horizon is set
// (the argmax profile is absorbing). A horizon, if given, must be >= 1.
JumpOutcome RoundsUntilSwitch(const FPState& state, const PayoffMatrix& a,
                              const PayoffMatrix& b,
                              const std::optional<Integer>& horizon);

// k rounds of the current profile; identical to k naive steps whenever
// k <= RoundsUntilSwitch(state).k and the argmax profile is the current one.
FPState Advance(FPState state, const PayoffMatrix& a, const PayoffMatrix& b,
                const Integer& k);

struct FastForwardStats {
  Integer naive_steps;  // rounds resolved one at a time
  Integer jumps;        // closed-form stretches
  Integer gap_probes;   // exact gap evaluations made by the gap search
};

// Same contract and result as Run(). Additionally throws PersistentTieError
// when more than options.tie_budget consecutive rounds are tied, and
// NotReached when a first-hit or gap target provably never happens and no
// round cap is set.
Trace RunFastForward(const PayoffMatrix& a, const PayoffMatrix& b,
                     const Profile& init, TieBreakRule& rule,
                     const StopCondition& stop, const RunOptions& options = {},
                     FastForwardStats* stats = nullptr);
Trace ResumeFastForward(const PayoffMatrix& a, const PayoffMatrix& b,
                        Trace partial, TieBreakRule& rule,
                        const StopCondition& stop,
                        const RunOptions& options = {},
                        FastForwardStats* stats = nullptr);

// Round at which `target` is first played. Throws NotReached if that does not
// happen within `cap` rounds.
Integer FirstHit(const PayoffMatrix& a, const PayoffMatrix& b,
                 const Profile& init, TieBreakRule& rule, const Profile& target,
                 const Integer& cap);

}  // namespace fplab

#endif  // FPLAB_FAST_FORWARD_H_
