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

#include "qapcg/field.hpp"

#include <gtest/gtest.h>

namespace qapcg {
namespace {

TEST(FieldTest, InverseExamples) {
  EXPECT_EQ(PrimeField(5).Inv(2), 3u);
  EXPECT_EQ(PrimeField(3).Inv(2), 2u);
  EXPECT_EQ(PrimeField(7).Inv(3), 5u);
}

TEST(FieldTest, InverseOfZeroThrows) {
  try {
    PrimeField(7).Inv(0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kZeroInverse);
  }
}

TEST(FieldTest, InverseMatchesExhaustiveSearch) {
  for (std::uint32_t q : {3u, 5u, 7u, 11u, 13u, 65521u}) {
    PrimeField f(q);
    for (Fq a = 1; a < q && a < 300; ++a) {
      Fq found = 0;
      for (Fq b = 1; b < q; ++b) {
        if (static_cast<std::uint64_t>(a) * b % q == 1) {
          found = b;
          break;
        }
      }
      EXPECT_EQ(f.Inv(a), found) << "q=" << q << " a=" << a;
      EXPECT_EQ(f.Inv(f.Inv(a)), a);
    }
  }
}

TEST(FieldTest, Pow) {
  EXPECT_EQ(PrimeField(5).Pow(2, 4), 1u);
  EXPECT_EQ(PrimeField(3).Pow(2, 1), 2u);
  EXPECT_EQ(PrimeField(7).Pow(3, 6), 1u);
  EXPECT_EQ(PrimeField(7).Pow(0, 0), 1u);
  EXPECT_EQ(PrimeField(7).Pow(0, 5), 0u);
}

TEST(FieldTest, PrimitiveRootIsSmallestGenerator) {
  EXPECT_EQ(PrimitiveRoot(3), 2u);
  EXPECT_EQ(PrimitiveRoot(5), 2u);
  EXPECT_EQ(PrimitiveRoot(7), 3u);
  for (std::uint32_t q : {3u, 5u, 7u, 11u, 13u, 17u, 97u, 257u}) {
    PrimeField f(q);
    auto order = [&](Fq g) {
      Fq x = g;
      std::uint32_t k = 1;
      while (x != 1) {
        x = f.Mul(x, g);
        ++k;
      }
      return k;
    };
    Fq g = f.PrimitiveRoot();
    EXPECT_EQ(order(g), q - 1);
    for (Fq h = 2; h < g; ++h) EXPECT_LT(order(h), q - 1);
    EXPECT_EQ(f.Pow(g, q - 1), 1u);
  }
}

TEST(FieldTest, FieldAxiomsExhaustive) {
  for (std::uint32_t q : {3u, 5u, 7u}) {
    PrimeField f(q);
    for (Fq a = 0; a < q; ++a) {
      EXPECT_EQ(f.Add(a, f.Neg(a)), 0u);
      for (Fq b = 0; b < q; ++b) {
        EXPECT_EQ(f.Add(a, b), (a + b) % q);
        EXPECT_EQ(f.Sub(f.Add(a, b), b), a);
        for (Fq c = 0; c < q; ++c) {
          EXPECT_EQ(f.Mul(a, f.Add(b, c)), f.Add(f.Mul(a, b), f.Mul(a, c)));
          EXPECT_EQ(f.Mul(f.Mul(a, b), c), f.Mul(a, f.Mul(b, c)));
        }
      }
    }
  }
}

TEST(FieldTest, RejectsBadModulus) {
  for (std::uint32_t q : {0u, 1u, 2u, 4u, 9u, 65536u, 65537u}) {
    try {
      PrimeField f(q);
      FAIL() << q;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kInvalidModulus);
    }
  }
}

TEST(FieldTest, RootOfUnity) {
  PrimeField f(7);
  for (std::uint32_t d : {1u, 2u, 3u, 6u}) {
    Fq w = f.RootOfUnity(d);
    EXPECT_EQ(f.Pow(w, d), 1u);
    for (std::uint32_t k = 1; k < d; ++k) EXPECT_NE(f.Pow(w, k), 1u);
  }
  EXPECT_THROW(f.RootOfUnity(4), Error);
}

}  // namespace
}  // namespace qapcg
