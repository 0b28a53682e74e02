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

#include "fplab/game.h"

#include <charconv>
#include <sstream>
#include <utility>

#include "fplab/errors.h"

namespace fplab {

PayoffMatrix::PayoffMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols) {
  if (rows == 0 || cols == 0) {
    throw DimensionError("payoff matrix needs at least one row and column");
  }
  entries_.resize(rows * cols);
}

PayoffMatrix::PayoffMatrix(std::size_t rows, std::size_t cols,
                           IntVector entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (rows == 0 || cols == 0) {
    throw DimensionError("payoff matrix needs at least one row and column");
  }
  if (entries_.size() != rows * cols) {
    throw DimensionError("payoff matrix has " +
                         std::to_string(entries_.size()) + " entries, expected " +
                         std::to_string(rows * cols));
  }
}

PayoffMatrix PayoffMatrix::FromRows(
    const std::vector<std::vector<std::int64_t>>& rows) {
  if (rows.empty()) throw DimensionError("payoff matrix has no rows");
  IntVector entries;
  for (const auto& r : rows) {
    if (r.size() != rows.front().size()) {
      throw DimensionError("ragged payoff matrix");
    }
    entries.insert(entries.end(), r.begin(), r.end());
  }
  return PayoffMatrix(rows.size(), rows.front().size(), std::move(entries));
}

IntVector PayoffMatrix::column(std::size_t c) const {
  IntVector out;
  out.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out.push_back((*this)(r, c));
  return out;
}

std::ostream& operator<<(std::ostream& os, const Profile& p) {
  return os << '(' << p.row << ',' << p.col << ')';
}

std::string ToString(const Profile& p) {
  std::ostringstream os;
  os << p;
  return os.str();
}

Profile ParseProfile(std::string_view text) {
  const auto bad = [&] {
    return ParseError("malformed profile '" + std::string(text) +
                      "' (expected i,j with 1-based indices)");
  };
  const std::size_t comma = text.find(',');
  if (comma == std::string_view::npos) throw bad();
  const auto parse = [&](std::string_view part) {
    std::size_t v = 0;
    const char* end = part.data() + part.size();
    auto [ptr, ec] = std::from_chars(part.data(), end, v);
    if (part.empty() || ec != std::errc() || ptr != end || v < 1) throw bad();
    return v;
  };
  return Profile{parse(text.substr(0, comma)), parse(text.substr(comma + 1))};
}

void CheckProfile(const Profile& p, std::size_t n_rows, std::size_t n_cols) {
  if (p.row < 1 || p.row > n_rows || p.col < 1 || p.col > n_cols) {
    throw DimensionError("profile " + ToString(p) + " outside a " +
                         std::to_string(n_rows) + "x" + std::to_string(n_cols) +
                         " game");
  }
}

CountVector::CountVector(IntVector counts) : counts_(std::move(counts)) {
  for (const auto& c : counts_) {
    if (c.sign() < 0) throw DomainError("negative play count");
    total_ += c;
  }
}

void CountVector::Add(std::size_t action, const Integer& k) {
  if (k.sign() < 0) throw DomainError("negative play count increment");
  counts_.at(action) += k;
  total_ += k;
}

void MixedProfile::Validate() const {
  for (const auto* v : {&x, &y}) {
    if (v->empty()) throw DomainError("empty mixed strategy");
    Ratio sum;
    for (const auto& p : *v) {
      if (p.sign() < 0) throw DomainError("negative probability " + p.ToString());
      sum += p;
    }
    if (sum != Ratio(1)) {
      throw DomainError("mixed strategy sums to " + sum.ToString());
    }
  }
}

MixedProfile MixedProfile::Pure(const Profile& p, std::size_t n_rows,
                                std::size_t n_cols) {
  CheckProfile(p, n_rows, n_cols);
  MixedProfile m{std::vector<Ratio>(n_rows), std::vector<Ratio>(n_cols)};
  m.x[p.row - 1] = 1;
  m.y[p.col - 1] = 1;
  return m;
}

IntVector UtilityVectorRow(const PayoffMatrix& a,
                           const CountVector& col_counts) {
  if (col_counts.size() != a.cols()) {
    throw DimensionError("column counts have " +
                         std::to_string(col_counts.size()) +
                         " entries for a matrix with " +
                         std::to_string(a.cols()) + " columns");
  }
  IntVector out(a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) {
      out[r].AddProduct(a(r, c), col_counts[c]);
    }
  }
  return out;
}

IntVector UtilityVectorCol(const PayoffMatrix& b,
                           const CountVector& row_counts) {
  if (row_counts.size() != b.rows()) {
    throw DimensionError("row counts have " + std::to_string(row_counts.size()) +
                         " entries for a matrix with " +
                         std::to_string(b.rows()) + " rows");
  }
  IntVector out(b.cols());
  for (std::size_t r = 0; r < b.rows(); ++r) {
    if (row_counts[r].is_zero()) continue;
    for (std::size_t c = 0; c < b.cols(); ++c) {
      out[c].AddProduct(b(r, c), row_counts[r]);
    }
  }
  return out;
}

std::vector<std::size_t> ArgmaxSet(std::span<const Integer> v) {
  if (v.empty()) throw DimensionError("argmax of an empty vector");
  std::vector<std::size_t> out{1};
  for (std::size_t i = 1; i < v.size(); ++i) {
    const auto c = v[i] <=> v[out.front() - 1];
    if (c > 0) {
      out.assign(1, i + 1);
    } else if (c == 0) {
      out.push_back(i + 1);
    }
  }
  return out;
}

MixedProfile Empirical(const CountVector& row_counts,
                       const CountVector& col_counts) {
  if (row_counts.total() != col_counts.total()) {
    throw DesyncError("row history covers " + row_counts.total().ToString() +
                      " rounds but column history covers " +
                      col_counts.total().ToString());
  }
  if (row_counts.total().sign() <= 0) {
    throw EmptyHistoryError("empirical strategy of an empty history");
  }
  const Integer& t = row_counts.total();
  MixedProfile m;
  m.x.reserve(row_counts.size());
  m.y.reserve(col_counts.size());
  for (const auto& c : row_counts.counts()) m.x.emplace_back(c, t);
  for (const auto& c : col_counts.counts()) m.y.emplace_back(c, t);
  return m;
}

std::vector<Ratio> RowPayoffs(const PayoffMatrix& a, std::span<const Ratio> y) {
  if (y.size() != a.cols()) {
    throw DimensionError("column strategy has " + std::to_string(y.size()) +
                         " entries for a matrix with " +
                         std::to_string(a.cols()) + " columns");
  }
  std::vector<Ratio> out(a.rows());
  for (std::size_t c = 0; c < a.cols(); ++c) {
    if (y[c].sign() == 0) continue;
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (!a(r, c).is_zero()) out[r] += Ratio(a(r, c)) * y[c];
    }
  }
  return out;
}

std::vector<Ratio> ColPayoffs(const PayoffMatrix& a, std::span<const Ratio> x) {
  if (x.size() != a.rows()) {
    throw DimensionError("row strategy has " + std::to_string(x.size()) +
                         " entries for a matrix with " +
                         std::to_string(a.rows()) + " rows");
  }
  std::vector<Ratio> out(a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    if (x[r].sign() == 0) continue;
    for (std::size_t c = 0; c < a.cols(); ++c) {
      if (!a(r, c).is_zero()) out[c] += Ratio(a(r, c)) * x[r];
    }
  }
  return out;
}

Ratio ExpectedPayoff(const PayoffMatrix& a, const MixedProfile& m) {
  if (m.x.size() != a.rows()) {
    throw DimensionError("row strategy does not match the matrix");
  }
  const auto ay = RowPayoffs(a, m.y);
  Ratio v;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    if (m.x[r].sign() != 0) v += m.x[r] * ay[r];
  }
  return v;
}

}  // namespace fplab
