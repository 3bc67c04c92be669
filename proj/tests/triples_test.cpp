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

#include "qapcg/triples.hpp"

#include <gtest/gtest.h>

namespace qapcg {
namespace {

PcgParams SmallParams() {
  PcgParams p;
  p.q = 3;
  p.n = 4;
  p.c = 2;
  p.t = 4;
  return p;
}

TEST(TriplesTest, TwoPartyFromPcg) {
  CtrDrbg rng(1);
  PcgParams p = SmallParams();
  auto t = TwoPartyTriples(p, rng);
  EXPECT_EQ(t[0].size(), 16u);
  EXPECT_TRUE(CheckTriples({t[0], t[1]}, PrimeField(3)));
}

TEST(TriplesTest, ScalarRecombination) {
  PrimeField f(7);
  CtrDrbg rng(2);
  std::vector<ScalarOle> b1, b2;
  std::vector<Fq> a0, a1, bb0, bb1;
  for (int i = 0; i < 256; ++i) {
    auto ole = [&](Fq x0, Fq x1) {
      Fq z0 = rng.UniformField(f);
      return ScalarOle{x0, x1, z0, f.Sub(f.Mul(x0, x1), z0)};
    };
    a0.push_back(rng.UniformField(f));
    a1.push_back(rng.UniformField(f));
    bb0.push_back(rng.UniformField(f));
    bb1.push_back(rng.UniformField(f));
    b1.push_back(ole(a0.back(), bb1.back()));
    b2.push_back(ole(bb0.back(), a1.back()));
  }
  auto t = OleToTriples(b1, b2, f);
  ASSERT_EQ(t[0].size(), 256u);
  for (int i = 0; i < 256; ++i) {
    Fq a = f.Add(a0[i], a1[i]), b = f.Add(bb0[i], bb1[i]);
    EXPECT_EQ(f.Add(t[0].c[i], t[1].c[i]), f.Mul(a, b));
    EXPECT_EQ(t[0].a[i], a0[i]);
    EXPECT_EQ(t[1].b[i], bb1[i]);
  }
}

TEST(TriplesTest, DegenerateShares) {
  // a1 = b1 = 0 leaves c0 + c1 = a0 b0.
  PrimeField f(5);
  std::vector<ScalarOle> b1 = {{3, 0, 1, 4}}, b2 = {{2, 0, 2, 3}};
  auto t = OleToTriples(b1, b2, f);
  EXPECT_EQ(f.Add(t[0].c[0], t[1].c[0]), f.Mul(3, 2));
}

TEST(TriplesTest, BatchMismatch) {
  std::vector<ScalarOle> a(3), b(2);
  try {
    OleToTriples(a, b, PrimeField(3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kBatchMismatch);
  }
}

TEST(TriplesTest, NPartyFromProgrammedPairs) {
  CtrDrbg rng(3);
  PcgParams p = SmallParams();
  for (std::size_t parties : {2u, 3u, 4u}) {
    auto shares = NPartyTriples(p, parties, rng);
    ASSERT_EQ(shares.size(), parties);
    EXPECT_EQ(shares[0].size(), 16u);
    EXPECT_TRUE(CheckTriples(shares, PrimeField(3)));
  }
}

TEST(TriplesTest, NPartyZeroInputs) {
  PrimeField f(3);
  std::vector<ScalarOle> zero(16, ScalarOle{0, 0, 0, 0});
  std::vector<PairwiseOle> pairs;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      if (i != j) pairs.push_back({i, j, zero});
    }
  }
  auto shares = CombinePairwise(3, pairs, f);
  for (std::size_t k = 0; k < 16; ++k) {
    Fq sum = 0;
    for (const auto& s : shares) sum = f.Add(sum, s.c[k]);
    EXPECT_EQ(sum, 0u);
  }
}

TEST(TriplesTest, InconsistentProgrammingDetected) {
  CtrDrbg rng(4);
  PcgParams p = SmallParams();
  std::vector<PairwiseOle> pairs;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      if (i == j) continue;
      // Fresh, unprogrammed inputs per pair.
      auto [s0, s1] = PcgGen(p, std::nullopt, std::nullopt, rng);
      pairs.push_back({i, j, CrtSplit(PcgExpand(s0, p), PcgExpand(s1, p))});
    }
  }
  try {
    CombinePairwise(3, pairs, PrimeField(3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInconsistentProgramming);
  }
}

}  // namespace
}  // namespace qapcg
