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

#include "fplab/bounds.h"

#include <map>

#include "fplab/construction.h"
#include "fplab/errors.h"

namespace fplab {

namespace {

void CheckN(std::size_t n) {
  if (n < 4 || n % 2 != 0) {
    throw DomainError("bound needs an even n >= 4, got n = " +
                      std::to_string(n));
  }
}

Integer Factorial(std::size_t m) {
  Integer out = 1;
  for (std::size_t k = 2; k <= m; ++k) out *= Integer(static_cast<std::int64_t>(k));
  return out;
}

Integer FactorialPow4(std::size_t m) { return Integer::Pow(Factorial(m), 4); }

const Integer kSqrtScale = Integer::Pow(Integer(10), 12);

}  // namespace

Integer LbFirstHit(std::size_t n) {
  CheckN(n);
  return Integer::Pow(Integer(16), n / 2 - 1) * FactorialPow4(n / 2 - 2) *
         Integer(4);
}

bool MainBoundIsExact(const Ratio& eps) {
  if (eps.sign() <= 0) throw DomainError("eps must be > 0");
  const Integer pq = eps.num() * eps.den();
  const Integer r = Integer::Sqrt(pq);
  return r * r == pq;
}

Ratio MainBound(std::size_t n, const Ratio& eps) {
  CheckN(n);
  if (eps.sign() <= 0) {
    throw DomainError("eps must be > 0, got " + eps.ToString());
  }
  const Integer head =
      Integer::Pow(Integer(4), n) * FactorialPow4(n / 2 - 2);
  // 1/sqrt(p/q) = sqrt(pq)/p.
  const Integer p = eps.num();
  const Integer pq = p * eps.den();
  Ratio inv_sqrt;
  if (MainBoundIsExact(eps)) {
    inv_sqrt = Ratio(Integer::Sqrt(pq), p);
  } else {
    const Integer s = Integer::Sqrt(pq * kSqrtScale * kSqrtScale);
    inv_sqrt = Ratio(s, p * kSqrtScale);
  }
  return Ratio(head) +
         inv_sqrt / Ratio(Integer(static_cast<std::int64_t>(n)));
}

namespace {

struct FirstSeen {
  Integer round;
  const IntVector* r = nullptr;
  const IntVector* c = nullptr;
};

class Auditor {
 public:
  Auditor(std::size_t n, const Trace& trace) : n_(n) {
    for (const SwitchEvent& ev : trace.switches) {
      if (!ev.row_snapshot || !ev.col_snapshot) {
        throw MissingDataError("switch at round " + ev.round.ToString() +
                               " has no utility snapshot");
      }
      first_.try_emplace(ev.profile,
                         FirstSeen{ev.round, &*ev.row_snapshot,
                                   &*ev.col_snapshot});
    }
  }

  const FirstSeen& At(const Profile& p) const {
    auto it = first_.find(p);
    if (it == first_.end()) {
      throw MissingDataError("trace never plays " + ToString(p));
    }
    return it->second;
  }
  bool Has(const Profile& p) const { return first_.count(p) > 0; }

  // 1-based reads.
  const Integer& R(const Profile& at, std::size_t row) const {
    return (*At(at).r)[row - 1];
  }
  const Integer& C(const Profile& at, std::size_t col) const {
    return (*At(at).c)[col - 1];
  }

 private:
  std::size_t n_;
  std::map<Profile, FirstSeen> first_;
};

Integer I(std::size_t v) { return Integer(static_cast<std::int64_t>(v)); }

}  // namespace

BoundReport AuditRun(const PayoffMatrix& a, const Trace& trace,
                     const std::optional<Ratio>& eps) {
  const std::size_t n = a.rows();
  if (!a.square() || n < 4 || n % 2 != 0 ||
      !(a == BuildK(ConstructionParams{n, 0}))) {
    throw PreconditionError("run audit needs A = K^n(0) with even n >= 4");
  }
  if (trace.init != Profile{n, 1}) {
    throw PreconditionError("run audit needs a trace starting at " +
                            ToString(Profile{n, 1}) + ", got " +
                            ToString(trace.init));
  }
  const Auditor au(n, trace);
  const Profile ne{n / 2, n / 2 + 1};
  au.At(ne);  // MissingDataError if the run stopped early

  BoundReport rep;
  rep.n = n;
  auto& fail = rep.failures;
  rep.lb_first_hit = LbFirstHit(n);
  if (eps) {
    rep.lb_main = MainBound(n, *eps);
    rep.lb_main_exact = MainBoundIsExact(*eps);
  }

  // Spiral order and alternation over the distinct-profile sequence.
  const auto spiral = SpiralOrder(a);
  rep.spiral_ok = trace.switches.size() >= spiral.size();
  for (std::size_t k = 0; rep.spiral_ok && k < spiral.size(); ++k) {
    rep.spiral_ok = trace.switches[k].profile == spiral[k].cell;
  }
  if (!rep.spiral_ok) fail.push_back("switch sequence departs from the spiral");
  rep.alternation_ok = true;
  for (std::size_t k = 2; k < trace.switches.size(); ++k) {
    const Profile& p0 = trace.switches[k - 2].profile;
    const Profile& p1 = trace.switches[k - 1].profile;
    const Profile& p2 = trace.switches[k].profile;
    const bool row1 = p0.row != p1.row, col1 = p0.col != p1.col;
    const bool row2 = p1.row != p2.row, col2 = p1.col != p2.col;
    if (row1 == col1 || row2 == col2 || row1 == row2) {
      rep.alternation_ok = false;
      fail.push_back("switch " + std::to_string(k) + " at round " +
                     trace.switches[k].round.ToString() +
                     " breaks row/column alternation");
      break;
    }
  }

  // First hits and zero bands.
  for (std::size_t l = 0; l < n / 2; ++l) {
    HitCheck h;
    h.ell = l;
    h.cell = Profile{n - l, l + 1};
    h.round = au.At(h.cell).round;
    h.zero_rows_ok = true;
    for (std::size_t r = l + 1; r <= n - l - 1; ++r) {
      h.zero_rows_ok = h.zero_rows_ok && au.R(h.cell, r).is_zero();
    }
    h.zero_cols_ok = true;
    for (std::size_t c = l + 2; c <= n - l; ++c) {
      h.zero_cols_ok = h.zero_cols_ok && au.C(h.cell, c).is_zero();
    }
    if (!h.zero_rows_ok || !h.zero_cols_ok) {
      fail.push_back("zero band violated at T_" + std::to_string(l) + " = " +
                     h.round.ToString());
    }
    rep.hits.push_back(h);
  }

  // Recursion on R_{n-l}^(T_l).
  const auto cell = [&](std::size_t l) { return Profile{n - l, l + 1}; };
  rep.base_value = au.R(cell(1), n - 1);
  rep.base_ok = rep.base_value >= Integer(4);
  if (!rep.base_ok) {
    fail.push_back("R_{n-1}^(T_1) = " + rep.base_value.ToString() + " < 4");
  }
  for (std::size_t l = 2; l < n / 2; ++l) {
    RecursionCheck rc;
    rc.ell = l;
    const Integer f = I(4 * l);
    rc.factor = f * (f - 1) * (f - 2) * (f - 3);
    rc.lhs = au.R(cell(l), n - l);
    rc.rhs_proof = au.R(cell(l - 1), n - l + 1);
    rc.rhs_literal = au.R(cell(l - 1), n - l);
    rc.proof_ok = rc.lhs >= rc.factor * rc.rhs_proof;
    rc.literal_ok = rc.lhs >= rc.factor * rc.rhs_literal;
    if (!rc.proof_ok) {
      fail.push_back("recursion fails at l = " + std::to_string(l) + ": " +
                     rc.lhs.ToString() + " < " + rc.factor.ToString() + " * " +
                     rc.rhs_proof.ToString());
    }
    rep.recursion.push_back(rc);
  }

  // Per-layer stepping stones, for every layer that has a successor.
  for (std::size_t i = 0; i + 1 < n / 2; ++i) {
    const Profile t0{n - i, i + 1};
    const Profile t1{i + 1, i + 1};
    const Profile t2{i + 1, n - i};
    const Profile t3{n - i - 1, n - i};
    const Profile t4{n - i - 1, i + 2};
    const auto add = [&](int stage, std::string relation, Integer lhs,
                         Integer rhs) {
      SteppingStone s;
      s.layer = i;
      s.stage = stage;
      s.relation = std::move(relation);
      s.ok = lhs >= rhs;
      s.lhs = std::move(lhs);
      s.rhs = std::move(rhs);
      if (!s.ok) {
        fail.push_back("layer " + std::to_string(i) + " stage " +
                       std::to_string(stage) + " fails: " + s.relation + " (" +
                       s.lhs.ToString() + " < " + s.rhs.ToString() + ")");
      }
      rep.stepping_stones.push_back(std::move(s));
    };
    add(1, "C_{i+1}^(T_i^1) >= (4i+1)(R_{i+1}^(T_i^0)+1)", au.C(t1, i + 1),
        I(4 * i + 1) * (au.R(t0, i + 1) + 1));
    add(2, "R_{i+1}^(T_i^2) >= (4i+2) C_{i+1}^(T_i^1)", au.R(t2, i + 1),
        I(4 * i + 2) * au.C(t1, i + 1));
    add(3, "C_{n-i}^(T_i^3) >= (4i+3) R_{i+1}^(T_i^2)", au.C(t3, n - i),
        I(4 * i + 3) * au.R(t2, i + 1));
    add(4, "R_{n-i-1}^(T_i^4) >= (4i+4) C_{n-i}^(T_i^3)", au.R(t4, n - i - 1),
        I(4 * i + 4) * au.C(t3, n - i));
  }

  // First hit of the equilibrium cell.
  rep.measured_first_hit = au.At(ne).round;
  rep.first_hit_ok = rep.measured_first_hit >= rep.lb_first_hit;
  if (!rep.first_hit_ok) {
    fail.push_back("first hit of " + ToString(ne) + " at " +
                   rep.measured_first_hit.ToString() + " is below " +
                   rep.lb_first_hit.ToString());
  }
  const Profile star = cell(n / 2 - 1);
  rep.t_star = au.At(star).round;
  rep.r_below_at_t_star = au.R(star, n / 2 - 1);
  rep.r_above_at_t_star = au.R(star, n / 2 + 1);
  rep.chain_ok = rep.r_above_at_t_star >= rep.lb_first_hit;
  return rep;
}

}  // namespace fplab
