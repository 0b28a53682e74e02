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

// Batch experiments on K^n(0): the switch table / Nash gap / empirical
// strategy series for one run, and the first-hit sweep over every starting
// profile.

#ifndef FPLAB_EXPERIMENT_H_
#define FPLAB_EXPERIMENT_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "fplab/engine.h"
#include "fplab/exact.h"
#include "fplab/game.h"

namespace fplab {

inline constexpr const char* kToolVersion = "fplab 1.0.0";

struct SeriesPoint {
  Integer round;
  Ratio gap;                // Nash gap of the empirical profile of rounds 1..round
  std::vector<Ratio> x;     // empirical row strategy
};

struct ExperimentResult {
  std::size_t n = 0;
  Trace trace;              // through the horizon
  Integer first_hit;        // first round of (n/2, n/2+1)
  Integer horizon;          // horizon_factor * first_hit
  std::vector<SeriesPoint> series;
};

struct ExperimentOptions {
  std::string rule = "lexmin";
  std::uint64_t seed = 0;
  std::uint64_t horizon_factor = 64;
};

// Runs K^n(0) from (n, 1) to its first hit of (n/2, n/2+1) and on to the
// horizon. Sampled rounds: 1, every switch round and the round before it,
// powers of two, multiples 2^k of the first hit, and the horizon.
ExperimentResult RunExperiment(std::size_t n, const ExperimentOptions& options);

// Writes transitions.csv, nash_gap.csv, row_strategy.csv and manifest.json
// into out_dir (created if missing). Output is a pure function of
// (n, options). Throws IoError when out_dir cannot be written.
ExperimentResult WriteExperiment(std::size_t n, const ExperimentOptions& options,
                                 const std::filesystem::path& out_dir);

// File contents, exposed for tests.
std::string TransitionsCsv(const ExperimentResult& r);
std::string NashGapCsv(const ExperimentResult& r);
std::string RowStrategyCsv(const ExperimentResult& r);

struct SweepRow {
  Profile init;
  std::optional<Integer> first_hit;  // nullopt when not reached within cap
};

struct SweepSummary {
  std::vector<SweepRow> rows;  // row-major over initial profiles
  std::size_t reached = 0;
  std::optional<Ratio> mean_first_hit;  // over the reached rows
};

// First hit of (n/2, n/2+1) from every initial profile of K^n(0), with the
// fast engine. Parallel across initial profiles; the result does not depend
// on `threads` (0 = hardware concurrency).
SweepSummary SweepInit(std::size_t n, const std::string& rule,
                       std::uint64_t seed, const Integer& cap,
                       unsigned threads = 0);
std::string SweepCsv(const SweepSummary& s);

}  // namespace fplab

#endif  // FPLAB_EXPERIMENT_H_
