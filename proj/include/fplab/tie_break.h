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

#ifndef FPLAB_TIE_BREAK_H_
#define FPLAB_TIE_BREAK_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <string_view>

namespace fplab {

// Resolves an argmax tie set to one action.
//
// A rule sees only the tie set and the resolving player's previous action;
// richer policies can be plugged in through Custom(). Every rule returns the
// single member of a singleton set without consulting its generator, so the
// random rule draws exactly once per genuinely tied decision. In a round where
// both players are tied the row player's draw happens first.
class TieBreakRule {
 public:
  enum class Kind { kLexMin, kLexMax, kStay, kRandom, kCustom };
  using CustomFn =
      std::function<std::size_t(std::span<const std::size_t>, std::size_t)>;

  static TieBreakRule LexMin() { return TieBreakRule(Kind::kLexMin); }
  static TieBreakRule LexMax() { return TieBreakRule(Kind::kLexMax); }
  static TieBreakRule Stay() { return TieBreakRule(Kind::kStay); }
  static TieBreakRule Random(std::uint64_t seed);
  // The function receives the 1-based tie set (increasing) and the previous
  // 1-based action; it must return a member of the set.
  static TieBreakRule Custom(std::string name, CustomFn fn);
  // "lexmin", "lexmax", "stay" or "random". Throws ParseError.
  static TieBreakRule FromName(std::string_view name, std::uint64_t seed = 0);

  Kind kind() const { return kind_; }
  std::uint64_t seed() const { return seed_; }
  std::string name() const;

  // Throws DimensionError on an empty tie set, DomainError if a custom rule
  // returns a non-member.
  std::size_t Resolve(std::span<const std::size_t> ties, std::size_t prev);

  // Generator state as text, for checkpoints. Empty for deterministic rules.
  std::string SerializeState() const;
  // Throws ParseError on malformed state.
  void RestoreState(const std::string& state);

 private:
  explicit TieBreakRule(Kind kind) : kind_(kind) {}

  Kind kind_;
  std::uint64_t seed_ = 0;
  std::mt19937_64 rng_;
  std::string custom_name_;
  CustomFn custom_;
};

}  // namespace fplab

#endif  // FPLAB_TIE_BREAK_H_
