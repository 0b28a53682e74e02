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

// Exact equilibrium analysis: Nash gap, epsilon-NE checks, pure-NE scan, and
// the sampled audit of approximate-equilibrium concentration on K^n(0).

#ifndef FPLAB_EQUILIBRIUM_H_
#define FPLAB_EQUILIBRIUM_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fplab/errors.h"
#include "fplab/exact.h"
#include "fplab/game.h"

namespace fplab {

struct GapBreakdown {
  Ratio row_gap;  // max_i [A y]_i - x^T A y
  Ratio col_gap;  // max_j [x^T A]_j - x^T A y
  Ratio total;

  friend bool operator==(const GapBreakdown&, const GapBreakdown&) = default;
};

// Nash gap of an identical-payoff game (one matrix for both players).
GapBreakdown NashGap(const PayoffMatrix& a, const MixedProfile& m);

enum class Player { kRow, kCol };
std::string ToString(Player p);

struct NEWitness {
  Player player = Player::kRow;
  std::size_t deviation = 1;  // 1-based pure action
  Ratio improvement;

  friend bool operator==(const NEWitness&, const NEWitness&) = default;
};

struct EpsNeResult {
  bool is_eps_ne = true;
  // On failure: the pure deviation with the largest improvement (row player
  // first on equal improvements, lowest index first within a player).
  std::optional<NEWitness> witness;
};

// Pure deviations suffice: payoffs are linear in the deviator's strategy.
// Throws DomainError for eps < 0.
EpsNeResult IsEpsNE(const PayoffMatrix& a, const PayoffMatrix& b,
                    const MixedProfile& m, const Ratio& eps);

// Cells where both players are best-responding, in row-major order.
std::vector<Profile> PureNEEnumerate(const PayoffMatrix& a,
                                     const PayoffMatrix& b);

// Identical-payoff Nash gap of the empirical profile summarized by cumulative
// utility vectors (R = A * col_counts, C = row_counts^T * A) over t rounds:
//   gap = (t * (max R + max C) - 2 * row_counts . R) / t^2.
// The numerator is returned so callers can compare without building rationals.
Integer EmpiricalGapNumerator(const IntVector& row_utility,
                              const IntVector& col_utility,
                              const CountVector& row_counts);
Ratio EmpiricalGap(const IntVector& row_utility, const IntVector& col_utility,
                   const CountVector& row_counts);
bool EmpiricalGapAtMost(const IntVector& row_utility,
                        const IntVector& col_utility,
                        const CountVector& row_counts, const Ratio& eps);

// Sum over the band of rows/columns [layer+2, n-layer-1] (1-based):
//   sum [A y]_k >= sum y_k   and   sum [x^T A]_k >= sum x_k.
// Requires 0 <= layer <= n/2 - 2; throws DomainError otherwise.
bool BandSumCheck(const PayoffMatrix& a, const MixedProfile& m,
                  std::size_t layer);

enum class SampleFamily { kUniform, kVertexBiased, kBoundary, kLayer };
std::string ToString(SampleFamily f);

struct AuditSample {
  std::size_t index = 0;
  SampleFamily family = SampleFamily::kUniform;
  MixedProfile profile;
};

struct AuditReport {
  std::size_t n = 0;
  Ratio eps;
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  std::size_t tested = 0;   // samples that passed the mass filter
  std::size_t skipped = 0;  // samples concentrated enough to be out of scope
  std::size_t refuted = 0;  // tested samples with a deviation gaining > eps^2
  std::vector<std::size_t> tested_per_family;  // indexed by SampleFamily
  std::vector<AuditSample> violations;

  bool ok() const { return violations.empty(); }
};

class LemmaViolation : public Error {
 public:
  LemmaViolation(const std::string& what, AuditReport report)
      : Error(what), report_(std::move(report)) {}
  const AuditReport& report() const { return report_; }

 private:
  AuditReport report_;
};

// Draws one audit sample. Deterministic in (n, eps, seed, index); samples are
// independent of each other, which is what lets the audit split work across
// threads without changing its result.
AuditSample DrawAuditSample(std::size_t n, const Ratio& eps,
                            std::uint64_t seed, std::size_t index);

// True when the sample is in scope: x_{n/2} < 1 - n*eps or
// y_{n/2+1} < 1 - n*eps.
bool OutsideConcentration(const MixedProfile& m, std::size_t n,
                          const Ratio& eps);

// Sampled falsification of: every eps^2-approximate NE of K^n(0) puts mass at
// least 1 - n*eps on row n/2 and on column n/2+1. Each in-scope sample must
// admit a pure deviation gaining more than eps^2.
//
// Requires A = K^n(0) and 0 < eps <= 1/(56 n^3) (DomainError otherwise).
// Throws LemmaViolation, carrying the full report, if any sample survives.
// threads == 0 picks the hardware concurrency.
AuditReport ConcentrationAudit(const PayoffMatrix& a, const Ratio& eps,
                               std::size_t samples, std::uint64_t seed,
                               unsigned threads = 0);

}  // namespace fplab

#endif  // FPLAB_EQUILIBRIUM_H_
