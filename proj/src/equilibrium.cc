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

#include "fplab/equilibrium.h"

#include <algorithm>
#include <random>
#include <thread>

#include "fplab/construction.h"

namespace fplab {

namespace {

Ratio MaxOf(const std::vector<Ratio>& v) {
  return *std::max_element(v.begin(), v.end());
}

}  // namespace

GapBreakdown NashGap(const PayoffMatrix& a, const MixedProfile& m) {
  m.Validate();
  const auto ay = RowPayoffs(a, m.y);
  const auto xa = ColPayoffs(a, m.x);
  Ratio value;
  for (std::size_t r = 0; r < ay.size(); ++r) value += m.x[r] * ay[r];
  GapBreakdown g;
  g.row_gap = MaxOf(ay) - value;
  g.col_gap = MaxOf(xa) - value;
  g.total = g.row_gap + g.col_gap;
  return g;
}

std::string ToString(Player p) { return p == Player::kRow ? "row" : "col"; }

EpsNeResult IsEpsNE(const PayoffMatrix& a, const PayoffMatrix& b,
                    const MixedProfile& m, const Ratio& eps) {
  if (eps.sign() < 0) throw DomainError("eps must be >= 0");
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("payoff matrices differ in shape");
  }
  m.Validate();
  const auto ay = RowPayoffs(a, m.y);
  const auto xb = ColPayoffs(b, m.x);
  Ratio row_value;
  for (std::size_t r = 0; r < ay.size(); ++r) row_value += m.x[r] * ay[r];
  Ratio col_value;
  for (std::size_t c = 0; c < xb.size(); ++c) col_value += m.y[c] * xb[c];

  std::optional<NEWitness> best;
  const auto consider = [&](Player who, const std::vector<Ratio>& payoffs,
                            const Ratio& value) {
    for (std::size_t k = 0; k < payoffs.size(); ++k) {
      Ratio gain = payoffs[k] - value;
      if (!best || gain > best->improvement) {
        best = NEWitness{who, k + 1, std::move(gain)};
      }
    }
  };
  consider(Player::kRow, ay, row_value);
  consider(Player::kCol, xb, col_value);

  EpsNeResult out;
  out.is_eps_ne = best->improvement <= eps;
  if (!out.is_eps_ne) out.witness = std::move(best);
  return out;
}

std::vector<Profile> PureNEEnumerate(const PayoffMatrix& a,
                                     const PayoffMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("payoff matrices differ in shape");
  }
  std::vector<Integer> col_max(a.cols());
  for (std::size_t c = 0; c < a.cols(); ++c) {
    col_max[c] = a(0, c);
    for (std::size_t r = 1; r < a.rows(); ++r) {
      col_max[c] = std::max(col_max[c], a(r, c));
    }
  }
  std::vector<Profile> out;
  for (std::size_t r = 0; r < b.rows(); ++r) {
    const auto row = b.row(r);
    const Integer row_max = *std::max_element(row.begin(), row.end());
    for (std::size_t c = 0; c < b.cols(); ++c) {
      if (a(r, c) == col_max[c] && b(r, c) == row_max) {
        out.push_back(Profile{r + 1, c + 1});
      }
    }
  }
  return out;
}

Integer EmpiricalGapNumerator(const IntVector& row_utility,
                              const IntVector& col_utility,
                              const CountVector& row_counts) {
  if (row_utility.size() != row_counts.size() || col_utility.empty()) {
    throw DimensionError("utility vectors do not match the play counts");
  }
  const Integer& t = row_counts.total();
  Integer value;
  for (std::size_t r = 0; r < row_utility.size(); ++r) {
    if (!row_counts[r].is_zero()) value.AddProduct(row_counts[r], row_utility[r]);
  }
  Integer best = *std::max_element(row_utility.begin(), row_utility.end());
  best += *std::max_element(col_utility.begin(), col_utility.end());
  Integer num = t * best;
  num -= value;
  num -= value;
  return num;
}

Ratio EmpiricalGap(const IntVector& row_utility, const IntVector& col_utility,
                   const CountVector& row_counts) {
  const Integer& t = row_counts.total();
  if (t.sign() <= 0) throw EmptyHistoryError("gap of an empty history");
  return Ratio(EmpiricalGapNumerator(row_utility, col_utility, row_counts),
               t * t);
}

bool EmpiricalGapAtMost(const IntVector& row_utility,
                        const IntVector& col_utility,
                        const CountVector& row_counts, const Ratio& eps) {
  const Integer& t = row_counts.total();
  if (t.sign() <= 0) throw EmptyHistoryError("gap of an empty history");
  const Integer num = EmpiricalGapNumerator(row_utility, col_utility, row_counts);
  // num / t^2 <= p / q  <=>  num * q <= p * t^2 (q > 0).
  return num * eps.den() <= eps.num() * t * t;
}

bool BandSumCheck(const PayoffMatrix& a, const MixedProfile& m,
                  std::size_t layer) {
  if (!a.square() || a.rows() < 4 || a.rows() % 2 != 0) {
    throw DomainError("band sums need a square matrix of even side >= 4");
  }
  const std::size_t n = a.rows();
  if (layer + 2 > n / 2) {
    throw DomainError("layer " + std::to_string(layer) + " outside [0, " +
                      std::to_string(n / 2 - 2) + "]");
  }
  m.Validate();
  const auto ay = RowPayoffs(a, m.y);
  const auto xa = ColPayoffs(a, m.x);
  Ratio row_lhs, row_rhs, col_lhs, col_rhs;
  for (std::size_t k = layer + 2; k <= n - layer - 1; ++k) {
    row_lhs += ay[k - 1];
    row_rhs += m.y[k - 1];
    col_lhs += xa[k - 1];
    col_rhs += m.x[k - 1];
  }
  return row_lhs >= row_rhs && col_lhs >= col_rhs;
}

std::string ToString(SampleFamily f) {
  switch (f) {
    case SampleFamily::kUniform: return "uniform";
    case SampleFamily::kVertexBiased: return "vertex";
    case SampleFamily::kBoundary: return "boundary";
    case SampleFamily::kLayer: return "layer";
  }
  return "?";
}

namespace {

constexpr std::int64_t kDenominator = std::int64_t{1} << 20;
constexpr std::size_t kFamilies = 4;

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Draw in [lo, hi] by rejection, independent of the standard library's
// distribution implementations.
std::int64_t Uniform(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  std::uint64_t v;
  do {
    v = rng();
  } while (v >= limit);
  return lo + static_cast<std::int64_t>(v % span);
}

// Uniform lattice point of the simplex over `support` (0-based indices of a
// vector of size n), numerators over kDenominator, via sorted spacings.
std::vector<Ratio> SimplexDraw(std::mt19937_64& rng, std::size_t n,
                               const std::vector<std::size_t>& support) {
  std::vector<std::int64_t> cuts;
  for (std::size_t k = 0; k + 1 < support.size(); ++k) {
    cuts.push_back(Uniform(rng, 0, kDenominator));
  }
  cuts.push_back(0);
  cuts.push_back(kDenominator);
  std::sort(cuts.begin(), cuts.end());
  std::vector<Ratio> out(n);
  for (std::size_t k = 0; k < support.size(); ++k) {
    out[support[k]] = Ratio(Integer(cuts[k + 1] - cuts[k]), Integer(kDenominator));
  }
  return out;
}

std::vector<std::size_t> AllBut(std::size_t n, std::size_t skip) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < n; ++k) {
    if (k != skip) out.push_back(k);
  }
  return out;
}

// (1 - w) * e_vertex + w * u.
std::vector<Ratio> Blend(std::size_t vertex, const Ratio& w,
                         const std::vector<Ratio>& u) {
  std::vector<Ratio> out(u.size());
  for (std::size_t k = 0; k < u.size(); ++k) out[k] = w * u[k];
  out[vertex] += Ratio(1) - w;
  return out;
}

Ratio Fraction(std::mt19937_64& rng, std::int64_t lo) {
  return Ratio(Integer(Uniform(rng, lo, kDenominator)), Integer(kDenominator));
}

// Mass near the pure equilibrium: within 4 n eps of the vertex.
std::vector<Ratio> NearVertex(std::mt19937_64& rng, std::size_t n,
                              std::size_t vertex, const Ratio& radius) {
  return Blend(vertex, radius * Fraction(rng, 0),
               SimplexDraw(rng, n, AllBut(n, vertex)));
}

}  // namespace

AuditSample DrawAuditSample(std::size_t n, const Ratio& eps,
                            std::uint64_t seed, std::size_t index) {
  std::mt19937_64 rng(SplitMix64(seed ^ SplitMix64(index)));
  AuditSample s;
  s.index = index;
  s.family = static_cast<SampleFamily>(index % kFamilies);
  const std::size_t row_ne = n / 2 - 1;  // 0-based
  const std::size_t col_ne = n / 2;
  std::vector<std::size_t> all(n);
  for (std::size_t k = 0; k < n; ++k) all[k] = k;
  const Ratio n_eps = Ratio(static_cast<std::int64_t>(n)) * eps;
  auto& m = s.profile;
  switch (s.family) {
    case SampleFamily::kUniform:
      m.x = SimplexDraw(rng, n, all);
      m.y = SimplexDraw(rng, n, all);
      break;
    case SampleFamily::kVertexBiased: {
      const auto vx = static_cast<std::size_t>(Uniform(rng, 0, n - 1));
      const auto vy = static_cast<std::size_t>(Uniform(rng, 0, n - 1));
      const Ratio half(1, 2);
      const Ratio wx = half * Fraction(rng, 1);
      const Ratio wy = half * Fraction(rng, 1);
      m.x = Blend(vx, wx, SimplexDraw(rng, n, all));
      m.y = Blend(vy, wy, SimplexDraw(rng, n, all));
      break;
    }
    case SampleFamily::kBoundary: {
      // One player sits just outside the concentration region (its
      // equilibrium mass is 1 - delta with n eps < delta <= 4 n eps); the
      // other anywhere within 4 n eps of its equilibrium action.
      const Ratio delta = n_eps * (Ratio(1) + Ratio(3) * Fraction(rng, 1));
      const bool row_crosses = Uniform(rng, 0, 1) == 0;
      if (row_crosses) {
        m.x = Blend(row_ne, delta, SimplexDraw(rng, n, AllBut(n, row_ne)));
        m.y = NearVertex(rng, n, col_ne, Ratio(4) * n_eps);
      } else {
        m.x = NearVertex(rng, n, row_ne, Ratio(4) * n_eps);
        m.y = Blend(col_ne, delta, SimplexDraw(rng, n, AllBut(n, col_ne)));
      }
      break;
    }
    case SampleFamily::kLayer: {
      // A near-equilibrium profile with extra weight on one outer-layer line
      // (row or column i+1 or n-i of layer i), the shapes the layered
      // argument has to rule out.
      const auto layer =
          static_cast<std::size_t>(Uniform(rng, 0, std::max<std::size_t>(n / 2, 2) - 2));
      const auto which = Uniform(rng, 0, 3);
      const std::size_t line = (which % 2 == 0) ? layer : n - 1 - layer;
      const Ratio w = eps + (Ratio(1, 2) - eps) * Fraction(rng, 1);
      m.x = NearVertex(rng, n, row_ne, Ratio(4) * n_eps);
      m.y = NearVertex(rng, n, col_ne, Ratio(4) * n_eps);
      if (which < 2) {
        m.x = Blend(line, Ratio(1) - w, m.x);
      } else {
        m.y = Blend(line, Ratio(1) - w, m.y);
      }
      break;
    }
  }
  return s;
}

bool OutsideConcentration(const MixedProfile& m, std::size_t n,
                          const Ratio& eps) {
  const Ratio bar = Ratio(1) - Ratio(static_cast<std::int64_t>(n)) * eps;
  return m.x[n / 2 - 1] < bar || m.y[n / 2] < bar;
}

namespace {

struct SampleOutcome {
  bool tested = false;
  bool violated = false;
};

}  // namespace

AuditReport ConcentrationAudit(const PayoffMatrix& a, const Ratio& eps,
                               std::size_t samples, std::uint64_t seed,
                               unsigned threads) {
  const std::size_t n = a.rows();
  if (!a.square() || n < 2 || n % 2 != 0 ||
      !(a == BuildK(ConstructionParams{n, 0}))) {
    throw DomainError("concentration audit needs A = K^n(0)");
  }
  const Ratio n3(static_cast<std::int64_t>(n * n * n));
  if (eps.sign() <= 0 || eps * Ratio(56) * n3 > Ratio(1)) {
    throw DomainError("concentration audit needs 0 < eps <= 1/(56 n^3), got " +
                      eps.ToString());
  }
  const Ratio eps2 = eps * eps;

  std::vector<SampleOutcome> outcomes(samples);
  const auto work = [&](std::size_t first, std::size_t stride) {
    for (std::size_t k = first; k < samples; k += stride) {
      const AuditSample s = DrawAuditSample(n, eps, seed, k);
      if (!OutsideConcentration(s.profile, n, eps)) continue;
      outcomes[k].tested = true;
      outcomes[k].violated = IsEpsNE(a, a, s.profile, eps2).is_eps_ne;
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(
      std::min<std::size_t>(threads, std::max<std::size_t>(samples, 1)));
  if (threads <= 1) {
    work(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w, threads);
  }

  AuditReport rep;
  rep.n = n;
  rep.eps = eps;
  rep.seed = seed;
  rep.samples = samples;
  rep.tested_per_family.assign(kFamilies, 0);
  for (std::size_t k = 0; k < samples; ++k) {
    if (!outcomes[k].tested) {
      ++rep.skipped;
      continue;
    }
    ++rep.tested;
    ++rep.tested_per_family[k % kFamilies];
    if (outcomes[k].violated) {
      rep.violations.push_back(DrawAuditSample(n, eps, seed, k));
    } else {
      ++rep.refuted;
    }
  }
  if (!rep.ok()) {
    throw LemmaViolation(std::to_string(rep.violations.size()) +
                             " in-scope sample(s) are eps^2-approximate "
                             "equilibria",
                         rep);
  }
  return rep;
}

}  // namespace fplab
