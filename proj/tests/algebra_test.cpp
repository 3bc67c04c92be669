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

#include "qapcg/algebra.hpp"

#include <gtest/gtest.h>

#include <map>

#include "qapcg/prg.hpp"

namespace qapcg {
namespace {

AlgebraElement Random(const GroupSpec& g, CtrDrbg& rng) {
  AlgebraElement a(g);
  for (auto& x : a.coeffs) x = rng.UniformField(g.field());
  return a;
}

// Multiplies as polynomials in X_1..X_n with exponents in Z^n, then reduces
// each exponent modulo d_i.
AlgebraElement PolynomialOracle(const AlgebraElement& a, const AlgebraElement& b) {
  const GroupSpec& g = a.spec;
  const PrimeField& f = g.field();
  std::map<std::vector<std::uint32_t>, Fq> prod;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a.coeffs[i]) continue;
    auto ea = g.Digits(i);
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (!b.coeffs[j]) continue;
      auto eb = g.Digits(j);
      std::vector<std::uint32_t> e(ea.size());
      for (std::size_t k = 0; k < e.size(); ++k) e[k] = ea[k] + eb[k];
      prod[e] = f.Add(prod[e], f.Mul(a.coeffs[i], b.coeffs[j]));
    }
  }
  AlgebraElement out(g);
  for (auto& [e, v] : prod) {
    std::vector<std::uint32_t> r(e.size());
    for (std::size_t k = 0; k < e.size(); ++k) r[k] = e[k] % g.orders()[k];
    std::size_t idx = g.Index(r);
    out.coeffs[idx] = f.Add(out.coeffs[idx], v);
  }
  return out;
}

std::vector<Fq> DirectEvaluation(const AlgebraElement& a) {
  const GroupSpec& g = a.spec;
  const PrimeField& f = g.field();
  std::vector<Fq> roots;
  for (auto d : g.orders()) roots.push_back(f.Pow(f.PrimitiveRoot(), (g.q() - 1) / d));
  std::vector<Fq> out(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) {
    auto kd = g.Digits(k);
    Fq acc = 0;
    for (std::size_t h = 0; h < g.size(); ++h) {
      auto hd = g.Digits(h);
      Fq term = a.coeffs[h];
      for (std::size_t i = 0; i < kd.size(); ++i) {
        term = f.Mul(term, f.Pow(roots[i], static_cast<std::uint64_t>(hd[i]) * kd[i]));
      }
      acc = f.Add(acc, term);
    }
    out[k] = acc;
  }
  return out;
}

TEST(AlgebraTest, MulNaiveExamples) {
  GroupSpec z2({2}, 3);
  AlgebraElement a(z2, {1, 1});
  EXPECT_EQ(MulNaive(a, a).coeffs, (std::vector<Fq>{2, 2}));
  EXPECT_EQ(MulFft(a, a).coeffs, (std::vector<Fq>{2, 2}));
  CtrDrbg rng(1);
  GroupSpec g({2, 2}, 3);
  for (int i = 0; i < 20; ++i) {
    AlgebraElement x = Random(g, rng), y = Random(g, rng);
    EXPECT_EQ(MulNaive(x, AlgebraElement::One(g)), x);
    EXPECT_EQ(MulNaive(x, y), PolynomialOracle(x, y));
  }
}

TEST(AlgebraTest, MulMatchesPolynomialOracle) {
  CtrDrbg rng(2);
  for (const auto& g : {GroupSpec({4, 2}, 5), GroupSpec({6, 3}, 7), GroupSpec({2, 2, 2}, 3),
                        GroupSpec({5}, 11)}) {
    for (int i = 0; i < 10; ++i) {
      AlgebraElement x = Random(g, rng), y = Random(g, rng);
      EXPECT_EQ(MulNaive(x, y), PolynomialOracle(x, y)) << g.ToString();
    }
  }
}

TEST(AlgebraTest, RingAxiomsExhaustiveSmall) {
  // F_3[Z/2 x Z/2]: all 81 elements, pairs exhaustive, triples sampled.
  GroupSpec g({2, 2}, 3);
  std::vector<AlgebraElement> all;
  for (int v = 0; v < 81; ++v) {
    AlgebraElement e(g);
    int r = v;
    for (auto& c : e.coeffs) {
      c = r % 3;
      r /= 3;
    }
    all.push_back(e);
  }
  for (const auto& a : all) {
    for (const auto& b : all) EXPECT_EQ(MulNaive(a, b), MulNaive(b, a));
  }
  CtrDrbg rng(3);
  for (int i = 0; i < 2000; ++i) {
    const auto& a = all[rng.Below(81)];
    const auto& b = all[rng.Below(81)];
    const auto& c = all[rng.Below(81)];
    EXPECT_EQ(MulNaive(MulNaive(a, b), c), MulNaive(a, MulNaive(b, c)));
    EXPECT_EQ(MulNaive(a, Add(b, c)), Add(MulNaive(a, b), MulNaive(a, c)));
  }
}

TEST(AlgebraTest, SparsityOfProducts) {
  CtrDrbg rng(4);
  GroupSpec g({6, 6}, 7);
  for (int i = 0; i < 20; ++i) {
    std::vector<std::size_t> pa, pb;
    std::vector<Fq> va, vb;
    std::size_t t1 = 1 + rng.Below(5), t2 = 1 + rng.Below(5);
    for (std::size_t k = 0; k < t1; ++k) {
      pa.push_back(rng.Below(g.size()));
      va.push_back(rng.UniformNonzero(g.field()));
    }
    for (std::size_t k = 0; k < t2; ++k) {
      pb.push_back(rng.Below(g.size()));
      vb.push_back(rng.UniformNonzero(g.field()));
    }
    auto e = SparseElement::FromTerms(g, pa, va);
    auto f = SparseElement::FromTerms(g, pb, vb);
    auto prod = MulNaive(SparseToDense(e), SparseToDense(f));
    EXPECT_LE(Weight(prod), e.weight() * f.weight());
    EXPECT_EQ(MulSparseDense(e, SparseToDense(f)), prod);
  }
}

TEST(AlgebraTest, DftExamples) {
  GroupSpec z2({2}, 3);
  EXPECT_EQ(DftForward(AlgebraElement::One(z2)), (std::vector<Fq>{1, 1}));
  AlgebraElement x(z2, {0, 1});
  EXPECT_EQ(DftForward(x), (std::vector<Fq>{1, 2}));
  EXPECT_EQ(DftInverse(z2, {1, 2}), x);
  EXPECT_EQ(DftInverse(z2, {1, 1}), AlgebraElement::One(z2));
}

TEST(AlgebraTest, DftMatchesDirectEvaluation) {
  CtrDrbg rng(5);
  for (const auto& g : {GroupSpec({2, 2, 2}, 3), GroupSpec({4, 2}, 5), GroupSpec({6, 6}, 7),
                        GroupSpec({3, 2}, 7), GroupSpec({12}, 13), GroupSpec({10, 5}, 11),
                        GroupSpec({16}, 17)}) {
    for (int i = 0; i < 5; ++i) {
      AlgebraElement a = Random(g, rng);
      EXPECT_EQ(DftForward(a), DirectEvaluation(a)) << g.ToString();
      EXPECT_EQ(DftInverse(g, DftForward(a)), a);
    }
  }
}

TEST(AlgebraTest, RoundTripAndConvolutionTheorem) {
  CtrDrbg rng(6);
  for (std::uint32_t q : {3u, 5u, 7u}) {
    GroupSpec g = GroupSpec::Torus(q, q == 3 ? 6 : 3);
    for (int i = 0; i < 100; ++i) {
      AlgebraElement a = Random(g, rng);
      EXPECT_EQ(DftInverse(g, DftForward(a)), a);
    }
    for (int i = 0; i < 10; ++i) {
      AlgebraElement a = Random(g, rng), b = Random(g, rng);
      auto fa = DftForward(a), fb = DftForward(b), fab = DftForward(MulNaive(a, b));
      for (std::size_t k = 0; k < fa.size(); ++k) EXPECT_EQ(fab[k], g.field().Mul(fa[k], fb[k]));
      EXPECT_EQ(MulFft(a, b), MulNaive(a, b));
      EXPECT_EQ(Mul(a, b), MulNaive(a, b));
    }
  }
}

TEST(AlgebraTest, DftNeedsRootsOfUnity) {
  GroupSpec g({4}, 7);  // 4 does not divide 6
  AlgebraElement a = AlgebraElement::One(g);
  try {
    DftForward(a);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNoRootOfUnity);
  }
  EXPECT_THROW(MulFft(a, a), Error);
  // Dispatch falls back to the schoolbook product.
  EXPECT_EQ(Mul(a, a), a);
}

TEST(AlgebraTest, FftOpCountOnBinaryCube) {
  CtrDrbg rng(7);
  std::vector<double> ratio;
  for (unsigned n = 8; n <= 16; ++n) {
    GroupSpec g = GroupSpec::Torus(3, n);
    OpCounter ops;
    DftForward(Random(g, rng), &ops);
    double nlogn = static_cast<double>(g.size()) * n;
    EXPECT_LE(ops.ops, 2.4 * nlogn);
    ratio.push_back(ops.ops / nlogn);
  }
  for (double r : ratio) EXPECT_NEAR(r, ratio.front(), 0.2 * ratio.front());
}

TEST(AlgebraTest, SpecMismatch) {
  AlgebraElement a(GroupSpec({2}, 3)), b(GroupSpec({2}, 5));
  try {
    MulNaive(a, b);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSpecMismatch);
  }
  EXPECT_THROW(InnerProduct(a, b), Error);
}

TEST(AlgebraTest, FoldExample) {
  GroupSpec z4({4}, 3);
  AlgebraElement a(z4, {1, 1, 1, 1});
  AlgebraElement folded = Fold(a, {0, 2});
  EXPECT_EQ(folded.spec.orders(), std::vector<std::uint32_t>{2});
  EXPECT_EQ(folded.coeffs, (std::vector<Fq>{2, 2}));
  AlgebraElement mono = AlgebraElement::Monomial(z4, 3, 2);
  EXPECT_EQ(Weight(Fold(mono, {0, 2})), 1u);
}

TEST(AlgebraTest, FoldMatchesOrbitSums) {
  CtrDrbg rng(8);
  GroupSpec g({6, 6}, 7);
  auto h = SubgroupGeneratedBy(g, {g.Index({2, 3})});
  Quotient quo = QuotientBy(g, h);
  for (int i = 0; i < 10; ++i) {
    AlgebraElement a = Random(g, rng);
    AlgebraElement folded = Fold(a, quo);
    for (std::size_t x = 0; x < g.size(); ++x) {
      Fq orbit = 0;
      for (auto y : h) orbit = g.field().Add(orbit, a.coeffs[g.MulIndices(x, y)]);
      EXPECT_EQ(folded.coeffs[quo.coset[x]], orbit);
    }
  }
}

TEST(AlgebraTest, FoldIsRingMorphism) {
  CtrDrbg rng(9);
  GroupSpec g({4, 4}, 5);
  for (int trial = 0; trial < 10; ++trial) {
    auto h = SubgroupGeneratedBy(g, {rng.Below(g.size())});
    Quotient quo = QuotientBy(g, h);
    AlgebraElement a = Random(g, rng), b = Random(g, rng);
    EXPECT_EQ(Fold(Add(a, b), quo), Add(Fold(a, quo), Fold(b, quo)));
    EXPECT_EQ(Fold(MulNaive(a, b), quo), MulNaive(Fold(a, quo), Fold(b, quo)));
    // Folding can only merge or cancel entries.
    SparseElement e = SparseElement::FromTerms(g, {rng.Below(16), rng.Below(16), rng.Below(16)},
                                               {1, 2, 3});
    EXPECT_LE(Fold(e, quo).weight(), e.weight());
  }
}

TEST(AlgebraTest, Involution) {
  GroupSpec z4({4}, 3);
  EXPECT_EQ(InvolutionBar(AlgebraElement::Monomial(z4, 1)), AlgebraElement::Monomial(z4, 3));
  EXPECT_EQ(InvolutionBar(AlgebraElement::One(z4)), AlgebraElement::One(z4));
  CtrDrbg rng(10);
  GroupSpec g({6, 3}, 7);
  for (int i = 0; i < 10; ++i) {
    AlgebraElement a = Random(g, rng);
    EXPECT_EQ(InvolutionBar(InvolutionBar(a)), a);
  }
}

TEST(AlgebraTest, InnerProductAndDuality) {
  GroupSpec g({2, 4}, 5);
  EXPECT_EQ(InnerProduct(AlgebraElement::One(g), AlgebraElement::One(g)), 1u);
  CtrDrbg rng(11);
  for (int i = 0; i < 30; ++i) {
    AlgebraElement x = Random(g, rng), a = Random(g, rng), c = Random(g, rng);
    EXPECT_EQ(InnerProduct(MulNaive(x, a), c), InnerProduct(x, MulNaive(c, InvolutionBar(a))));
    // <a, b> is the identity coefficient of a * bar(b).
    EXPECT_EQ(InnerProduct(a, c), MulNaive(a, InvolutionBar(c)).coeffs[0]);
    Fq sq = 0;
    for (Fq v : a.coeffs) sq = g.field().Add(sq, g.field().Mul(v, v));
    EXPECT_EQ(InnerProduct(a, a), sq);
  }
}

TEST(AlgebraTest, SparseRoundTripAndWeight) {
  GroupSpec g({6, 6}, 7);
  SparseElement empty(g);
  EXPECT_EQ(Weight(SparseToDense(empty)), 0u);
  auto s = SparseElement::FromTerms(g, {3, 9, 1}, {1, 2, 3});
  EXPECT_EQ(s.weight(), 3u);
  EXPECT_EQ(s.points.front().first, 1u);
  auto cancel = SparseElement::FromTerms(g, {5, 5}, {3, 4});
  EXPECT_EQ(cancel.weight(), 0u);
  CtrDrbg rng(12);
  for (int i = 0; i < 10; ++i) {
    AlgebraElement a = Random(g, rng);
    EXPECT_EQ(SparseToDense(DenseToSparse(a)), a);
    EXPECT_EQ(DenseToSparse(a).weight(), Weight(a));
  }
}

TEST(AlgebraTest, SerializationRoundTrip) {
  CtrDrbg rng(13);
  for (const auto& g : {GroupSpec({2, 2, 2}, 3), GroupSpec({6, 3}, 7), GroupSpec({10}, 11)}) {
    AlgebraElement a = Random(g, rng);
    auto bytes = SerializeElement(a);
    std::size_t header = 2 + 1 + 2 * g.rank();
    EXPECT_EQ(bytes.size(), header + (g.size() * CeilLog2(g.q()) + 7) / 8);
    EXPECT_EQ(DeserializeElement(bytes), a);
  }
  // Layout check: F_3[Z/2 x Z/2], coefficients (1, 2, 0, 1) -> 0b01001001.
  AlgebraElement a(GroupSpec({2, 2}, 3), {1, 2, 0, 1});
  auto bytes = SerializeElement(a);
  std::vector<std::uint8_t> expect = {3, 0, 2, 2, 0, 2, 0, 0x49};
  EXPECT_EQ(bytes, expect);
}

}  // namespace
}  // namespace qapcg
