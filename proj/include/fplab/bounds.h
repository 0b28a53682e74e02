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

// Lower-bound formulas for K^n(0) and an auditor that checks a simulated run
// against every constant-explicit inequality of the spiral argument.
//
// Notation. T_l is the first round profile (n-l, l+1) is played, for
// l = 0..n/2-1. Within layer i the run visits (n-i, i+1), (i+1, i+1),
// (i+1, n-i), (n-i-1, n-i) and then (n-i-1, i+2); their first rounds are
// T_i^0..T_i^4, with T_i^0 = T_i and T_i^4 = T_{i+1}. R^(T) and C^(T) are the
// cumulative utilities over rounds 1..T-1, i.e. the vectors the players
// respond to at round T; they are read from the trace's switch snapshots.

#ifndef FPLAB_BOUNDS_H_
#define FPLAB_BOUNDS_H_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "fplab/engine.h"
#include "fplab/exact.h"
#include "fplab/game.h"

namespace fplab {

// 16^(n/2-1) * ((n/2-2)!)^4 * 4. Throws DomainError unless n >= 4 is even.
Integer LbFirstHit(std::size_t n);

// 4^n ((n/2-2)!)^4 + 1/(n sqrt(eps)). The square root is exact when eps is
// the square of a rational; otherwise 1/sqrt(eps) is replaced by a rational
// lower bound accurate to 12 decimal places. A comparison value only: the
// asymptotic statement it comes from hides constants. Throws DomainError on
// eps <= 0 or a bad n.
Ratio MainBound(std::size_t n, const Ratio& eps);
// Whether MainBound's square root was exact.
bool MainBoundIsExact(const Ratio& eps);

struct HitCheck {
  std::size_t ell = 0;
  Profile cell;
  Integer round;
  bool zero_rows_ok = false;  // R_r = 0 for r in [ell+1, n-ell-1]
  bool zero_cols_ok = false;  // C_c = 0 for c in [ell+2, n-ell]
};

struct RecursionCheck {
  std::size_t ell = 0;  // >= 2
  Integer factor;       // 4l(4l-1)(4l-2)(4l-3)
  Integer lhs;          // R_{n-l}^(T_l)
  Integer rhs_proof;    // R_{n-l+1}^(T_{l-1})
  Integer rhs_literal;  // R_{n-l}^(T_{l-1})
  bool proof_ok = false;    // lhs >= factor * rhs_proof (asserted)
  bool literal_ok = false;  // lhs >= factor * rhs_literal (reported only)
};

struct SteppingStone {
  std::size_t layer = 0;
  int stage = 1;  // 1..4
  std::string relation;  // human-readable form of the inequality
  Integer lhs;
  Integer rhs;
  bool ok = false;
};

struct BoundReport {
  std::size_t n = 0;
  Integer lb_first_hit;
  std::optional<Ratio> lb_main;  // when an eps was supplied
  bool lb_main_exact = false;
  Integer measured_first_hit;    // first round of (n/2, n/2+1)
  bool first_hit_ok = false;     // measured_first_hit >= lb_first_hit
  bool spiral_ok = false;        // distinct profiles follow the spiral order
  bool alternation_ok = false;   // switches alternate row / column changes
  std::vector<HitCheck> hits;
  Integer base_value;            // R_{n-1}^(T_1)
  bool base_ok = false;          // base_value >= 4
  std::vector<RecursionCheck> recursion;
  std::vector<SteppingStone> stepping_stones;
  // The last layer's first hit T* = T_{n/2-1} and the two row utilities the
  // first-hit bound can be read from.
  Integer t_star;
  Integer r_below_at_t_star;  // R_{n/2-1}^(T*)
  Integer r_above_at_t_star;  // R_{n/2+1}^(T*)
  bool chain_ok = false;      // r_above_at_t_star >= lb_first_hit (reported)
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
};

// Throws PreconditionError unless A = K^n(0) with n >= 4 and the trace starts
// at (n, 1); MissingDataError if a switch snapshot is missing or the trace
// ends before (n/2, n/2+1) is played. Failed checks are reported, not thrown.
BoundReport AuditRun(const PayoffMatrix& a, const Trace& trace,
                     const std::optional<Ratio>& eps = std::nullopt);

}  // namespace fplab

#endif  // FPLAB_BOUNDS_H_
