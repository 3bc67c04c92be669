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

#include "qapcg/group.hpp"

#include <gtest/gtest.h>

#include <set>

#include "qapcg/prg.hpp"

namespace qapcg {
namespace {

TEST(GroupTest, MulIndices) {
  GroupSpec g22({2, 2}, 3);
  EXPECT_EQ(GroupMulIndices(1, 2, g22), 3u);
  GroupSpec z4({4}, 3);
  EXPECT_EQ(GroupMulIndices(3, 3, z4), 2u);
  GroupSpec mixed({3, 4, 5}, 7);
  for (std::size_t i = 0; i < mixed.size(); ++i) EXPECT_EQ(mixed.MulIndices(i, 0), i);
}

TEST(GroupTest, MulIndicesIsComponentwise) {
  GroupSpec g({3, 4, 2}, 5);
  for (std::size_t a = 0; a < g.size(); ++a) {
    for (std::size_t b = 0; b < g.size(); ++b) {
      auto da = g.Digits(a), db = g.Digits(b);
      std::vector<std::uint32_t> s(3);
      for (int i = 0; i < 3; ++i) s[i] = (da[i] + db[i]) % g.orders()[i];
      EXPECT_EQ(g.MulIndices(a, b), g.Index(s));
    }
    EXPECT_EQ(g.MulIndices(a, g.InverseIndex(a)), 0u);
  }
}

TEST(GroupTest, CanonicalOrderFactorOneFastest) {
  GroupSpec g({2, 3}, 7);
  EXPECT_EQ(g.Index({1, 0}), 1u);
  EXPECT_EQ(g.Index({0, 1}), 2u);
  EXPECT_EQ(g.Index({1, 2}), 5u);
}

TEST(GroupTest, Errors) {
  GroupSpec g({2, 2}, 3);
  try {
    g.MulIndices(4, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIndexOutOfRange);
  }
  // |G| divisible by q is not semisimple.
  EXPECT_THROW(GroupSpec({3}, 3), Error);
  EXPECT_THROW(GroupSpec({1}, 3), Error);
}

TEST(GroupTest, SubgroupClosure) {
  GroupSpec g({4, 4}, 5);
  auto h = SubgroupGeneratedBy(g, {g.Index({2, 0}), g.Index({0, 1})});
  EXPECT_EQ(h.size(), 8u);
  std::set<std::size_t> s(h.begin(), h.end());
  for (auto a : h) {
    for (auto b : h) EXPECT_TRUE(s.count(g.MulIndices(a, b)));
  }
}

TEST(GroupTest, QuotientOfCyclic) {
  GroupSpec z4({4}, 3);
  Quotient quo = QuotientBy(z4, {0, 2});
  ASSERT_EQ(quo.spec.orders(), std::vector<std::uint32_t>{2});
  EXPECT_EQ(quo.coset[0], quo.coset[2]);
  EXPECT_EQ(quo.coset[1], quo.coset[3]);
  EXPECT_NE(quo.coset[0], quo.coset[1]);
  EXPECT_EQ(quo.coset[0], 0u);
}

TEST(GroupTest, QuotientIsHomomorphismWithKernelH) {
  CtrDrbg rng(7);
  std::vector<GroupSpec> groups = {GroupSpec({4, 4}, 5), GroupSpec({6, 6}, 7),
                                   GroupSpec({2, 2, 2, 2}, 3), GroupSpec({4, 2, 6}, 7)};
  for (const auto& g : groups) {
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<std::size_t> gens;
      std::size_t ngens = 1 + rng.Below(2);
      for (std::size_t i = 0; i < ngens; ++i) gens.push_back(rng.Below(g.size()));
      auto h = SubgroupGeneratedBy(g, gens);
      Quotient quo = QuotientBy(g, h);
      EXPECT_EQ(quo.spec.size() * h.size(), g.size());
      std::set<std::size_t> hs(h.begin(), h.end());
      std::set<std::uint32_t> images;
      for (std::size_t a = 0; a < g.size(); ++a) {
        images.insert(quo.coset[a]);
        EXPECT_EQ(quo.coset[a] == 0, hs.count(a) == 1);
        for (std::size_t b = 0; b < g.size(); b += 3) {
          EXPECT_EQ(quo.coset[g.MulIndices(a, b)],
                    quo.spec.MulIndices(quo.coset[a], quo.coset[b]));
        }
      }
      EXPECT_EQ(images.size(), quo.spec.size());
    }
  }
}

TEST(GroupTest, QuotientRejectsNonSubgroup) {
  GroupSpec z4({4}, 3);
  try {
    QuotientBy(z4, {0, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotASubgroup);
  }
  EXPECT_THROW(QuotientBy(z4, {2}), Error);
}

TEST(GroupTest, TrivialQuotients) {
  GroupSpec g({2, 2}, 3);
  Quotient all = QuotientBy(g, {0, 1, 2, 3});
  EXPECT_EQ(all.spec.size(), 1u);
  Quotient none = QuotientBy(g, {0});
  EXPECT_EQ(none.spec.size(), 4u);
}

}  // namespace
}  // namespace qapcg
