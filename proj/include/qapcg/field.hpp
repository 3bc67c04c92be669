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

#include <cstdint>
#include <string>
#include <vector>

#include "qapcg/errors.hpp"

namespace qapcg {

// A field element is its canonical residue in [0, q). The modulus lives in
// the PrimeField that every operation goes through.
using Fq = std::uint32_t;

inline bool IsPrime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

// Distinct prime factors of n in increasing order.
inline std::vector<std::uint64_t> PrimeFactors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Prime field F_q, 3 <= q < 2^16. The bound keeps every product of two
// residues inside 32 bits.
class PrimeField {
 public:
  explicit PrimeField(std::uint32_t q) : q_(q) {
    if (q < 3 || q >= (1u << 16) || !IsPrime(q)) {
      throw Error(ErrorCode::kInvalidModulus,
                  "q must be a prime in [3, 65536), got " + std::to_string(q));
    }
    generator_ = SmallestGenerator(q);
  }

  std::uint32_t q() const { return q_; }

  Fq FromInt(std::int64_t v) const {
    std::int64_t r = v % static_cast<std::int64_t>(q_);
    return static_cast<Fq>(r < 0 ? r + q_ : r);
  }

  Fq Add(Fq a, Fq b) const {
    Fq s = a + b;
    return s >= q_ ? s - q_ : s;
  }
  Fq Sub(Fq a, Fq b) const { return a >= b ? a - b : a + q_ - b; }
  Fq Neg(Fq a) const { return a == 0 ? 0 : q_ - a; }
  Fq Mul(Fq a, Fq b) const { return (a * b) % q_; }

  Fq Pow(Fq a, std::uint64_t e) const {
    Fq result = 1 % q_;
    Fq base = a;
    while (e) {
      if (e & 1) result = Mul(result, base);
      base = Mul(base, base);
      e >>= 1;
    }
    return result;
  }

  Fq Inv(Fq a) const {
    if (a % q_ == 0) throw Error(ErrorCode::kZeroInverse, "inverse of zero");
    return Pow(a, q_ - 2);
  }

  // Smallest residue of multiplicative order exactly q - 1.
  Fq PrimitiveRoot() const { return generator_; }

  // Primitive d-th root of unity g^((q-1)/d); requires d | q - 1.
  Fq RootOfUnity(std::uint32_t d) const {
    if (d == 0 || (q_ - 1) % d != 0) {
      throw Error(ErrorCode::kNoRootOfUnity,
                  std::to_string(d) + " does not divide q-1 = " + std::to_string(q_ - 1));
    }
    return Pow(generator_, (q_ - 1) / d);
  }

  bool operator==(const PrimeField& o) const { return q_ == o.q_; }
  bool operator!=(const PrimeField& o) const { return q_ != o.q_; }

 private:
  static Fq SmallestGenerator(std::uint32_t q) {
    auto factors = PrimeFactors(q - 1);
    for (std::uint32_t g = 2; g < q; ++g) {
      bool ok = true;
      for (auto p : factors) {
        std::uint64_t r = 1, b = g, e = (q - 1) / p;
        while (e) {
          if (e & 1) r = r * b % q;
          b = b * b % q;
          e >>= 1;
        }
        if (r == 1) {
          ok = false;
          break;
        }
      }
      if (ok) return g;
    }
    return 1;  // unreachable for prime q >= 3
  }

  std::uint32_t q_;
  Fq generator_;
};

inline Fq FieldInv(const PrimeField& f, Fq a) { return f.Inv(a); }
inline Fq FieldPow(const PrimeField& f, Fq a, std::uint64_t e) { return f.Pow(a, e); }
inline Fq PrimitiveRoot(std::uint32_t q) { return PrimeField(q).PrimitiveRoot(); }

}  // namespace qapcg
