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
#include <string>
#include <vector>

#include "qapcg/algebra.hpp"
#include "qapcg/errors.hpp"
#include "qapcg/group.hpp"
#include "qapcg/prg.hpp"

namespace qapcg {

enum class NoiseFlavor : std::uint8_t {
  kRegular = 0,   // one uniform position in each of t contiguous blocks
  kExact = 1,     // t distinct uniform positions
  kMonomial = 2,  // t independent uniform monomials, collisions add up
};

inline const char* NoiseFlavorName(NoiseFlavor f) {
  switch (f) {
    case NoiseFlavor::kRegular: return "regular";
    case NoiseFlavor::kExact: return "exact";
    case NoiseFlavor::kMonomial: return "monomial";
  }
  return "?";
}

inline NoiseFlavor ParseNoiseFlavor(const std::string& s) {
  if (s == "regular") return NoiseFlavor::kRegular;
  if (s == "exact") return NoiseFlavor::kExact;
  if (s == "monomial") return NoiseFlavor::kMonomial;
  throw Error(ErrorCode::kInvalidSpec, "unknown noise flavor '" + s + "'");
}

struct NoiseSpec {
  std::size_t t = 0;
  NoiseFlavor flavor = NoiseFlavor::kRegular;
  GroupSpec group;
};

// Raw draw before collisions are merged: positions[i] carries values[i].
struct NoiseTerms {
  std::vector<std::size_t> positions;
  std::vector<Fq> values;
};

// Block i of the regular layout is [floor(i*N/t), floor((i+1)*N/t)); block
// sizes differ by at most one and equal N/t when t divides N.
inline std::size_t RegularBlockStart(std::size_t i, std::size_t t, std::size_t n) {
  return static_cast<std::size_t>((static_cast<unsigned __int128>(i) * n) / t);
}

inline void ValidateNoiseSpec(const NoiseSpec& spec) {
  if (spec.t > spec.group.size()) {
    throw Error(ErrorCode::kInvalidSpec, "noise weight " + std::to_string(spec.t) +
                                             " exceeds |G| = " +
                                             std::to_string(spec.group.size()));
  }
}

inline NoiseTerms SampleNoiseTerms(const NoiseSpec& spec, CtrDrbg& rng) {
  ValidateNoiseSpec(spec);
  const std::size_t n = spec.group.size();
  const auto& f = spec.group.field();
  NoiseTerms out;
  out.positions.reserve(spec.t);
  out.values.reserve(spec.t);
  switch (spec.flavor) {
    case NoiseFlavor::kRegular:
      for (std::size_t i = 0; i < spec.t; ++i) {
        std::size_t lo = RegularBlockStart(i, spec.t, n);
        std::size_t hi = RegularBlockStart(i + 1, spec.t, n);
        out.positions.push_back(lo + rng.Below(hi - lo));
      }
      break;
    case NoiseFlavor::kExact: {
      // Floyd's sampling of a t-subset, then sorted.
      std::vector<std::size_t> chosen;
      for (std::size_t j = n - spec.t; j < n; ++j) {
        std::size_t r = rng.Below(j + 1);
        if (std::find(chosen.begin(), chosen.end(), r) == chosen.end()) {
          chosen.push_back(r);
        } else {
          chosen.push_back(j);
        }
      }
      std::sort(chosen.begin(), chosen.end());
      out.positions = std::move(chosen);
      break;
    }
    case NoiseFlavor::kMonomial:
      for (std::size_t i = 0; i < spec.t; ++i) out.positions.push_back(rng.Below(n));
      break;
  }
  for (std::size_t i = 0; i < spec.t; ++i) out.values.push_back(rng.UniformNonzero(f));
  return out;
}

inline SparseElement TermsToSparse(const GroupSpec& g, const NoiseTerms& terms) {
  return SparseElement::FromTerms(g, terms.positions, terms.values);
}

inline SparseElement SampleNoise(const NoiseSpec& spec, CtrDrbg& rng) {
  return TermsToSparse(spec.group, SampleNoiseTerms(spec, rng));
}

// Expected weight after summing ell uniform monomials with uniform nonzero
// values into a vector of length m:
//   (m(q-1)/q) * (1 - (1 - q/(m(q-1)))^ell)
// For integral ell this is evaluated as the geometric sum
// sum_{i<ell} (1 - q/(m(q-1)))^i, which is exact at ell = 1.
inline double ExpectedFoldWeight(double m, double ell, double q) {
  if (ell <= 0) return 0.0;
  const double base = 1.0 - q / (m * (q - 1.0));
  if (ell == std::floor(ell) && ell <= 1e6) {
    double sum = 0.0, term = 1.0;
    for (double i = 0; i < ell; ++i) {
      sum += term;
      term *= base;
    }
    return sum;
  }
  return (m * (q - 1.0) / q) * (1.0 - std::pow(base, ell));
}

// One step of the recurrence the closed form solves:
//   E' = (1 - E/m)(E + 1) + (E/m)(E - 1/(q-1))
inline double FoldWeightRecurrenceStep(double e, double m, double q) {
  return (1.0 - e / m) * (e + 1.0) + (e / m) * (e - 1.0 / (q - 1.0));
}

inline double FoldWeightByRecurrence(double m, std::size_t ell, double q) {
  double e = 0.0;
  for (std::size_t i = 0; i < ell; ++i) e = FoldWeightRecurrenceStep(e, m, q);
  return e;
}

// Resamples until the projection onto G/H has weight at least the value
// predicted for t monomials on |G/H| positions. Gives up after max_tries.
inline NoiseTerms SampleNoiseTermsRejectFold(const NoiseSpec& spec, const Quotient& quo,
                                             CtrDrbg& rng, std::size_t max_tries = 1000) {
  const double target =
      ExpectedFoldWeight(static_cast<double>(quo.spec.size()), static_cast<double>(spec.t),
                         static_cast<double>(spec.group.q()));
  for (std::size_t attempt = 0; attempt < max_tries; ++attempt) {
    NoiseTerms terms = SampleNoiseTerms(spec, rng);
    SparseElement folded = Fold(TermsToSparse(spec.group, terms), quo);
    if (static_cast<double>(folded.weight()) >= target) return terms;
  }
  throw Error(ErrorCode::kInvalidSpec, "fold-weight rejection did not succeed in " +
                                           std::to_string(max_tries) + " attempts");
}

}  // namespace qapcg
