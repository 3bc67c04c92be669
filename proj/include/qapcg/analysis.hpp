// Copyright 2026 The qapcg Authors
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

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "qapcg/algebra.hpp"
#include "qapcg/errors.hpp"
#include "qapcg/noise.hpp"
#include "qapcg/prg.hpp"

namespace qapcg {

// All costs below are log2 of an operation count. Asymptotic constants are
// taken to be 1.

inline double Log2Binomial(double n, double k) {
  if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
  return (std::lgamma(n + 1) - std::lgamma(k + 1) - std::lgamma(n - k + 1)) / std::log(2.0);
}

// log2(2^a + 2^b)
inline double Log2Add(double a, double b) {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  if (b == -std::numeric_limits<double>::infinity()) return a;
  double m = std::max(a, b);
  return m + std::log2(std::exp2(a - m) + std::exp2(b - m));
}

// Bias of a weight-t noise against a dual vector of weight d in length n.
inline double BiasBound(double d, double t, double n) {
  if (!(d > 0) || d > n || t < 0 || !(n > 0)) {
    throw Error(ErrorCode::kRangeError, "bias bound needs 0 < d <= n and t >= 0");
  }
  return std::exp(-2.0 * t * d / n);
}

// Prange: k * log2(1 / (1 - t/n)) + log2(k^2 log2 k).
inline double PrangeCost(double n, double k, double t) {
  if (!(t >= 0) || t >= n || k < 2 || k > n) {
    throw Error(ErrorCode::kRangeError, "Prange needs 0 <= t < n and 2 <= k <= n");
  }
  return -k * std::log1p(-t / n) / std::log(2.0) + std::log2(k * k * std::log2(k));
}

// Low-weight parity-check attack, read as (n / (k-1))^t * k.
inline double StatDecodingCost(double n, double k, double t) {
  if (k < 2 || k > n || t < 0) {
    throw Error(ErrorCode::kRangeError, "statistical decoding needs 2 <= k <= n, t >= 0");
  }
  return t * std::log2(n / (k - 1)) + std::log2(k);
}

struct IsdPoint {
  double cost = std::numeric_limits<double>::infinity();
  int p1 = -1;
  int p2 = -1;
};

// Lower bound on modern ISD cost for an [n, k] code at weight t, minimized
// over the grid p2 in [0, min(r/2, 256)], p1 in {0, 8, ...} up to
// min(k + p2, 512), where r = n - k:
//
//   min(2^r, C(n,t)) / C(r-p2, t-p1)
//     * [ (K1 + K2) / C(k+p2, p1) + t (r-p2) / 2^p2 ]
//   K1 = (r-p2)^2 log2(r-p2),  K2 = C((k+p2)/2, p1/8)
//
// Grid points needing fewer than one iteration are skipped.
inline IsdPoint IsdLowerBoundDetail(double n, double k, double t) {
  if (k < 1 || k >= n || t < 0 || t > n) {
    throw Error(ErrorCode::kRangeError, "ISD bound needs 1 <= k < n and 0 <= t <= n");
  }
  const double r = n - k;
  const double num = std::min(r, Log2Binomial(n, t));
  const int p2_max = static_cast<int>(std::min(std::floor(r / 2), 256.0));
  IsdPoint best;
  for (int p2 = 0; p2 <= p2_max; ++p2) {
    const double rr = r - p2;
    const int p1_max = static_cast<int>(std::min(k + p2, 512.0));
    for (int p1 = 0; p1 <= p1_max; p1 += 8) {
      if (p1 > t || t - p1 > rr) continue;
      const double den = Log2Binomial(rr, t - p1);
      const double list = Log2Binomial(k + p2, p1);
      if (den + list > num + 1e-9) continue;
      const double k1 = rr > 2 ? std::log2(rr * rr * std::log2(rr)) : 1.0;
      const double k2 = Log2Binomial((k + p2) / 2.0, p1 / 8.0);
      const double a = Log2Add(k1, k2) - list;
      const double b = t > 0 && rr > 0 ? std::log2(t * rr) - p2
                                       : -std::numeric_limits<double>::infinity();
      const double cost = num - den + Log2Add(a, b);
      if (cost < best.cost) best = {cost, p1, p2};
    }
  }
  return best;
}

inline double IsdLowerBound(double n, double k, double t) {
  return IsdLowerBoundDetail(n, k, t).cost;
}

// Decoding one out of many: a group of order |G| acting on the instance
// divides the work by sqrt(|G|).
inline double DoomAdjust(double cost_bits, double group_order) {
  return cost_bits - 0.5 * std::log2(group_order);
}

// Seed size of one party in bits:
//   (ct)^2 ((log|G| - log t + 1)(lambda+2) + lambda + log q) + ct (log|G| + log q)
inline double SeedSizeBits(double c, double t, double group_order, double q,
                           double lambda = kLambda) {
  const double lg = std::log2(group_order), lq = std::log2(q);
  return (c * t) * (c * t) * ((lg - std::log2(t) + 1) * (lambda + 2) + lambda + lq) +
         c * t * (lg + lq);
}

// (2 + floor(log2 q / lambda)) |G| c^2 t
inline double PrgCallCount(double c, double t, double group_order, double q,
                           double lambda = kLambda) {
  return (2.0 + std::floor(std::log2(q) / lambda)) * group_order * c * c * t;
}

// 4 T c t, a coarser count that ignores the field-size term.
inline double PrgCallCountCoarse(double c, double t, double group_order) {
  return 4.0 * group_order * c * t;
}

// ---------------------------------------------------------------------------
// Empirical bias of linear tests against the syndrome sum_i a_i e^i.

enum class BiasNoise { kSparse, kUniform, kZero };

struct BiasEstimate {
  double bias = 0;       // |P[<v, x> = 0] - 1/q|
  double std_error = 0;  // standard error of the frequency
  std::size_t d = 0;  // weight of (v bar(a_0), ..., v bar(a_{c-1}))
};

// a = (a_0, ..., a_{c-1}) defines H; the statistic <v, sum_i a_i e^i> equals
// sum_i <v bar(a_i), e^i>.
inline BiasEstimate EmpiricalBias(const AlgebraElement& v, const std::vector<AlgebraElement>& a,
                                  const NoiseSpec& spec, std::size_t trials, CtrDrbg& rng,
                                  BiasNoise mode = BiasNoise::kSparse) {
  if (trials < 1000) throw Error(ErrorCode::kRangeError, "need at least 1000 trials");
  const GroupSpec& g = v.spec;
  const PrimeField& f = g.field();
  std::vector<AlgebraElement> u;
  BiasEstimate est;
  for (const auto& ai : a) {
    CheckSameSpec(v, ai);
    u.push_back(MulNaive(v, InvolutionBar(ai)));
    est.d += Weight(u.back());
  }
  std::size_t zeros = 0;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    Fq s = 0;
    for (const auto& ui : u) {
      switch (mode) {
        case BiasNoise::kSparse:
          for (auto& [p, val] : SampleNoise(spec, rng).points) {
            s = f.Add(s, f.Mul(ui.coeffs[p], val));
          }
          break;
        case BiasNoise::kUniform:
          for (std::size_t p = 0; p < g.size(); ++p) {
            s = f.Add(s, f.Mul(ui.coeffs[p], rng.UniformField(f)));
          }
          break;
        case BiasNoise::kZero: break;
      }
    }
    zeros += s == 0;
  }
  double p = static_cast<double>(zeros) / static_cast<double>(trials);
  est.bias = std::fabs(p - 1.0 / f.q());
  est.std_error = std::sqrt(std::max(p * (1 - p), 1e-12) / static_cast<double>(trials));
  return est;
}

// ---------------------------------------------------------------------------
// Security estimate over all foldings.

struct FoldingCandidate {
  std::uint64_t quotient_order = 0;  // |G/H|
  double n = 0, k = 0, t = 0;        // folded code length, dimension, weight
  double prange = 0;                 // all DOOM-adjusted
  double isd = std::numeric_limits<double>::infinity();
  bool isd_applicable = false;
  double stat = 0;
  double best = 0;
  std::string best_attack;
};

struct AttackCostReport {
  std::uint32_t q = 0;
  unsigned n = 0;
  unsigned c = 0;
  double t = 0;
  unsigned lambda = 0;
  std::uint64_t group_order = 0;
  std::vector<FoldingCandidate> candidates;
  std::vector<std::uint64_t> excluded;  // orders with t' >= k'
  double min_cost = std::numeric_limits<double>::infinity();
  std::size_t best_index = 0;  // into candidates
  double seed_bits = 0;
  double prg_calls = 0;
  double prg_calls_coarse = 0;
  bool secure = false;
};

// All divisors of (q-1)^n in increasing order.
inline std::vector<std::uint64_t> QuotientOrders(std::uint32_t q, unsigned n) {
  std::vector<std::uint64_t> out{1};
  std::uint64_t base = q - 1;
  for (auto p : PrimeFactors(base)) {
    unsigned e = 0;
    for (std::uint64_t b = base; b % p == 0; b /= p) ++e;
    std::vector<std::uint64_t> next;
    for (auto d : out) {
      std::uint64_t v = d;
      for (unsigned i = 0; i <= e * n; ++i) {
        next.push_back(v);
        v *= p;
      }
    }
    out = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// For each quotient order m, the folded instance has length c*m, dimension
// (c-1)*m and weight c * E[fold weight of t monomials on m positions].
// Every attack is DOOM-adjusted by |G/H|; ties go to the smaller quotient.
inline AttackCostReport SecurityEstimate(std::uint32_t q, unsigned n, unsigned c, double t,
                                         unsigned lambda = kLambda) {
  if (q < 3 || !IsPrime(q) || n < 1 || c < 2 || t < 1 || lambda < 1) {
    throw Error(ErrorCode::kParamError, "invalid estimator parameters");
  }
  if (n * std::log2(static_cast<double>(q - 1)) > 62) {
    throw Error(ErrorCode::kParamError, "|G| too large for the estimator");
  }
  AttackCostReport rep;
  rep.q = q;
  rep.n = n;
  rep.c = c;
  rep.t = t;
  rep.lambda = lambda;
  rep.group_order = 1;
  for (unsigned i = 0; i < n; ++i) rep.group_order *= q - 1;
  if (t > static_cast<double>(rep.group_order)) {
    throw Error(ErrorCode::kParamError, "t exceeds |G|");
  }
  rep.seed_bits = SeedSizeBits(c, t, static_cast<double>(rep.group_order), q, lambda);
  rep.prg_calls = PrgCallCount(c, t, static_cast<double>(rep.group_order), q, lambda);
  rep.prg_calls_coarse = PrgCallCountCoarse(c, t, static_cast<double>(rep.group_order));

  for (std::uint64_t m : QuotientOrders(q, n)) {
    const double md = static_cast<double>(m);
    FoldingCandidate fc;
    fc.quotient_order = m;
    fc.n = c * md;
    fc.k = (c - 1) * md;
    fc.t = c * ExpectedFoldWeight(md, t, q);
    if (fc.t >= fc.k || fc.k < 2) {
      rep.excluded.push_back(m);
      continue;
    }
    fc.prange = DoomAdjust(PrangeCost(fc.n, fc.k, fc.t), md);
    fc.stat = DoomAdjust(StatDecodingCost(fc.n, fc.k, fc.t), md);
    fc.best = std::min(fc.prange, fc.stat);
    fc.best_attack = fc.prange <= fc.stat ? "prange" : "stat";
    // Past the unique-decoding regime the ISD bound is not meaningful.
    fc.isd_applicable = Log2Binomial(fc.n, fc.t) <= fc.n - fc.k;
    if (fc.isd_applicable) {
      fc.isd = DoomAdjust(IsdLowerBound(fc.n, fc.k, fc.t), md);
      if (fc.isd < fc.best) {
        fc.best = fc.isd;
        fc.best_attack = "isd";
      }
    }
    if (fc.best < rep.min_cost) {
      rep.min_cost = fc.best;
      rep.best_index = rep.candidates.size();
    }
    rep.candidates.push_back(fc);
  }
  rep.secure = rep.min_cost >= lambda;
  return rep;
}

}  // namespace qapcg
