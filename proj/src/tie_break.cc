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

#include "fplab/tie_break.h"

#include <algorithm>
#include <limits>
#include <sstream>
#include <utility>

#include "fplab/errors.h"

namespace fplab {
namespace {

// Unbiased draw in [0, bound) by rejection; std::uniform_int_distribution is
// implementation-defined and would make traces differ across standard
// libraries.
std::uint64_t BoundedDraw(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t v;
  do {
    v = rng();
  } while (v >= limit);
  return v % bound;
}

}  // namespace

TieBreakRule TieBreakRule::Random(std::uint64_t seed) {
  TieBreakRule rule(Kind::kRandom);
  rule.seed_ = seed;
  rule.rng_.seed(seed);
  return rule;
}

TieBreakRule TieBreakRule::Custom(std::string name, CustomFn fn) {
  TieBreakRule rule(Kind::kCustom);
  rule.custom_name_ = std::move(name);
  rule.custom_ = std::move(fn);
  return rule;
}

TieBreakRule TieBreakRule::FromName(std::string_view name, std::uint64_t seed) {
  if (name == "lexmin") return LexMin();
  if (name == "lexmax") return LexMax();
  if (name == "stay") return Stay();
  if (name == "random") return Random(seed);
  throw ParseError("unknown tie-break rule: '" + std::string(name) + "'");
}

std::string TieBreakRule::name() const {
  switch (kind_) {
    case Kind::kLexMin: return "lexmin";
    case Kind::kLexMax: return "lexmax";
    case Kind::kStay: return "stay";
    case Kind::kRandom: return "random";
    case Kind::kCustom: return custom_name_;
  }
  return "?";
}

std::size_t TieBreakRule::Resolve(std::span<const std::size_t> ties,
                                  std::size_t prev) {
  if (ties.empty()) throw DimensionError("empty tie set");
  if (ties.size() == 1) return ties.front();
  switch (kind_) {
    case Kind::kLexMin:
      return ties.front();
    case Kind::kLexMax:
      return ties.back();
    case Kind::kStay:
      return std::binary_search(ties.begin(), ties.end(), prev) ? prev
                                                                : ties.front();
    case Kind::kRandom:
      return ties[BoundedDraw(rng_, ties.size())];
    case Kind::kCustom: {
      const std::size_t pick = custom_(ties, prev);
      if (!std::binary_search(ties.begin(), ties.end(), pick)) {
        throw DomainError("tie-break rule '" + custom_name_ +
                          "' returned a non-member " + std::to_string(pick));
      }
      return pick;
    }
  }
  return ties.front();
}

std::string TieBreakRule::SerializeState() const {
  if (kind_ != Kind::kRandom) return {};
  std::ostringstream os;
  os << rng_;
  return os.str();
}

void TieBreakRule::RestoreState(const std::string& state) {
  if (kind_ != Kind::kRandom) return;
  std::istringstream is(state);
  std::mt19937_64 rng;
  is >> rng;
  if (is.fail()) throw ParseError("malformed random generator state");
  rng_ = rng;
}

}  // namespace fplab
