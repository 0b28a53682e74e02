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

// Core types for two-player normal-form games with integer payoffs.
//
// Indexing convention: matrix and vector accessors are 0-based like any C++
// container. Everything that names an *action* (Profile, argmax sets, tie
// sets, deviation witnesses, CLI flags, files) is 1-based.

#ifndef FPLAB_GAME_H_
#define FPLAB_GAME_H_

#include <cstddef>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fplab/exact.h"

namespace fplab {

using IntVector = std::vector<Integer>;

class PayoffMatrix {
 public:
  PayoffMatrix() = default;
  // Zero matrix. Throws DimensionError unless rows, cols >= 1.
  PayoffMatrix(std::size_t rows, std::size_t cols);
  // Row-major entries; entries.size() must equal rows * cols.
  PayoffMatrix(std::size_t rows, std::size_t cols, IntVector entries);
  static PayoffMatrix FromRows(
      const std::vector<std::vector<std::int64_t>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  const Integer& operator()(std::size_t r, std::size_t c) const {
    return entries_[r * cols_ + c];
  }
  Integer& operator()(std::size_t r, std::size_t c) {
    return entries_[r * cols_ + c];
  }
  std::span<const Integer> row(std::size_t r) const {
    return {entries_.data() + r * cols_, cols_};
  }
  IntVector column(std::size_t c) const;
  const IntVector& entries() const { return entries_; }

  friend bool operator==(const PayoffMatrix&, const PayoffMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  IntVector entries_;
};

// A pure strategy profile, 1-based.
struct Profile {
  std::size_t row = 1;
  std::size_t col = 1;

  friend bool operator==(const Profile&, const Profile&) = default;
  friend auto operator<=>(const Profile&, const Profile&) = default;
};

std::ostream& operator<<(std::ostream& os, const Profile& p);
std::string ToString(const Profile& p);
// Parses "i,j" with 1-based indices. Throws ParseError naming the token.
Profile ParseProfile(std::string_view text);
// Throws DimensionError if p is outside an n_rows x n_cols game.
void CheckProfile(const Profile& p, std::size_t n_rows, std::size_t n_cols);

// Per-action play counts; total() is the number of rounds summarized.
class CountVector {
 public:
  CountVector() = default;
  explicit CountVector(std::size_t actions) : counts_(actions) {}
  // Throws DomainError on a negative count.
  explicit CountVector(IntVector counts);

  std::size_t size() const { return counts_.size(); }
  const Integer& operator[](std::size_t i) const { return counts_[i]; }
  const IntVector& counts() const { return counts_; }
  const Integer& total() const { return total_; }

  // Adds k plays of the 0-based action. k must be non-negative.
  void Add(std::size_t action, const Integer& k = Integer(1));

  friend bool operator==(const CountVector&, const CountVector&) = default;

 private:
  IntVector counts_;
  Integer total_;
};

// A pair of points on the probability simplices, exact.
struct MixedProfile {
  std::vector<Ratio> x;
  std::vector<Ratio> y;

  // Throws DomainError unless both vectors are non-empty, non-negative and sum
  // to exactly one.
  void Validate() const;
  static MixedProfile Pure(const Profile& p, std::size_t n_rows,
                           std::size_t n_cols);

  friend bool operator==(const MixedProfile&, const MixedProfile&) = default;
};

// A * counts, exactly.
IntVector UtilityVectorRow(const PayoffMatrix& a, const CountVector& col_counts);
// counts^T * B, exactly.
IntVector UtilityVectorCol(const PayoffMatrix& b, const CountVector& row_counts);

// 1-based indices of every maximal coordinate, increasing. Throws
// DimensionError on an empty vector.
std::vector<std::size_t> ArgmaxSet(std::span<const Integer> v);

// Empirical mixed strategies behind a pair of play-count vectors.
MixedProfile Empirical(const CountVector& row_counts,
                       const CountVector& col_counts);

// x^T A y.
Ratio ExpectedPayoff(const PayoffMatrix& a, const MixedProfile& m);

// A y and x^T A as exact rationals.
std::vector<Ratio> RowPayoffs(const PayoffMatrix& a, std::span<const Ratio> y);
std::vector<Ratio> ColPayoffs(const PayoffMatrix& a, std::span<const Ratio> x);

}  // namespace fplab

#endif  // FPLAB_GAME_H_
