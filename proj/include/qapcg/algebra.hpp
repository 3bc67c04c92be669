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
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qapcg/bits.hpp"
#include "qapcg/errors.hpp"
#include "qapcg/field.hpp"
#include "qapcg/group.hpp"

namespace qapcg {

// Dense element of F_q[G]: coeffs[g] is the coefficient of the group
// element with canonical index g.
struct AlgebraElement {
  GroupSpec spec;
  std::vector<Fq> coeffs;

  explicit AlgebraElement(const GroupSpec& g) : spec(g), coeffs(g.size(), 0) {}
  AlgebraElement(const GroupSpec& g, std::vector<Fq> c) : spec(g), coeffs(std::move(c)) {
    if (coeffs.size() != spec.size()) {
      throw Error(ErrorCode::kLengthMismatch, "coefficient vector has wrong length");
    }
    for (auto& x : coeffs) {
      if (x >= spec.q()) throw Error(ErrorCode::kRangeError, "coefficient not reduced mod q");
    }
  }

  static AlgebraElement One(const GroupSpec& g) {
    AlgebraElement e(g);
    e.coeffs[0] = 1;
    return e;
  }
  static AlgebraElement Monomial(const GroupSpec& g, std::size_t index, Fq value = 1) {
    g.CheckIndex(index);
    AlgebraElement e(g);
    e.coeffs[index] = value % g.q();
    return e;
  }

  std::size_t size() const { return coeffs.size(); }
  const PrimeField& field() const { return spec.field(); }

  bool operator==(const AlgebraElement& o) const {
    return spec == o.spec && coeffs == o.coeffs;
  }
  bool operator!=(const AlgebraElement& o) const { return !(*this == o); }
};

// Position/value form. Points are sorted by index with no zero values.
struct SparseElement {
  GroupSpec spec;
  std::vector<std::pair<std::size_t, Fq>> points;

  explicit SparseElement(const GroupSpec& g) : spec(g) {}

  // Builds from an arbitrary list; repeated positions are summed and
  // cancelled entries dropped.
  static SparseElement FromTerms(const GroupSpec& g,
                                 const std::vector<std::size_t>& positions,
                                 const std::vector<Fq>& values) {
    if (positions.size() != values.size()) {
      throw Error(ErrorCode::kLengthMismatch, "positions and values differ in length");
    }
    std::map<std::size_t, Fq> acc;
    for (std::size_t i = 0; i < positions.size(); ++i) {
      g.CheckIndex(positions[i]);
      Fq& slot = acc[positions[i]];
      slot = g.field().Add(slot, values[i] % g.q());
    }
    SparseElement s(g);
    for (auto& [p, v] : acc) {
      if (v != 0) s.points.emplace_back(p, v);
    }
    return s;
  }

  std::size_t weight() const { return points.size(); }
};

inline void CheckSameSpec(const AlgebraElement& a, const AlgebraElement& b) {
  if (a.spec != b.spec) {
    throw Error(ErrorCode::kSpecMismatch, a.spec.ToString() + " vs " + b.spec.ToString());
  }
}

inline std::size_t Weight(const AlgebraElement& a) {
  return static_cast<std::size_t>(
      std::count_if(a.coeffs.begin(), a.coeffs.end(), [](Fq x) { return x != 0; }));
}

inline AlgebraElement SparseToDense(const SparseElement& s) {
  AlgebraElement out(s.spec);
  for (auto& [p, v] : s.points) out.coeffs[p] = s.spec.field().Add(out.coeffs[p], v);
  return out;
}

inline SparseElement DenseToSparse(const AlgebraElement& a) {
  SparseElement s(a.spec);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.coeffs[i]) s.points.emplace_back(i, a.coeffs[i]);
  }
  return s;
}

inline AlgebraElement Add(const AlgebraElement& a, const AlgebraElement& b) {
  CheckSameSpec(a, b);
  AlgebraElement out = a;
  const auto& f = a.field();
  for (std::size_t i = 0; i < out.size(); ++i) out.coeffs[i] = f.Add(a.coeffs[i], b.coeffs[i]);
  return out;
}

inline AlgebraElement Sub(const AlgebraElement& a, const AlgebraElement& b) {
  CheckSameSpec(a, b);
  AlgebraElement out = a;
  const auto& f = a.field();
  for (std::size_t i = 0; i < out.size(); ++i) out.coeffs[i] = f.Sub(a.coeffs[i], b.coeffs[i]);
  return out;
}

inline AlgebraElement Neg(const AlgebraElement& a) {
  AlgebraElement out = a;
  for (auto& x : out.coeffs) x = a.field().Neg(x);
  return out;
}

inline AlgebraElement Scale(const AlgebraElement& a, Fq k) {
  AlgebraElement out = a;
  for (auto& x : out.coeffs) x = a.field().Mul(x, k);
  return out;
}

// acc += v * g * b, i.e. adds the monomial-shifted copy of b.
inline void AccumulateShifted(std::vector<Fq>* acc, const AlgebraElement& b, std::size_t g,
                              Fq v) {
  const auto& f = b.field();
  ShiftedOdometer it(b.spec, g);
  for (std::size_t h = 0; h < b.size(); ++h, it.Next()) {
    if (b.coeffs[h]) {
      Fq& slot = (*acc)[it.target()];
      slot = f.Add(slot, f.Mul(v, b.coeffs[h]));
    }
  }
}

// Schoolbook convolution, O(|G|^2).
inline AlgebraElement MulNaive(const AlgebraElement& a, const AlgebraElement& b) {
  CheckSameSpec(a, b);
  AlgebraElement out(a.spec);
  for (std::size_t g = 0; g < a.size(); ++g) {
    if (a.coeffs[g]) AccumulateShifted(&out.coeffs, b, g, a.coeffs[g]);
  }
  return out;
}

inline AlgebraElement MulSparseDense(const SparseElement& s, const AlgebraElement& b) {
  if (s.spec != b.spec) throw Error(ErrorCode::kSpecMismatch, "sparse/dense spec mismatch");
  AlgebraElement out(b.spec);
  for (auto& [p, v] : s.points) AccumulateShifted(&out.coeffs, b, p, v);
  return out;
}

// ---------------------------------------------------------------------------
// Discrete Fourier transform over the split case d_i | q - 1.

// Field-operation counter for the transforms. Additions, subtractions and
// multiplications by twiddles other than 1 are counted.
struct OpCounter {
  std::uint64_t ops = 0;
};

namespace detail {

// Length-d DFT of in[0], in[stride], ... with root w, written to out[0..d).
// Mixed-radix decimation in time over the prime factors of d.
inline void Dft1d(const PrimeField& f, const Fq* in, std::size_t stride, std::size_t d, Fq w,
                  Fq* out, std::uint64_t* ops) {
  if (d == 1) {
    out[0] = in[0];
    return;
  }
  std::size_t p = 2;
  while (d % p) ++p;
  if (p == d) {
    // Prime length: direct evaluation.
    for (std::size_t k = 0; k < d; ++k) {
      Fq wk = f.Pow(w, k), cur = 1, acc = in[0];
      for (std::size_t j = 1; j < d; ++j) {
        cur = f.Mul(cur, wk);
        Fq term = in[j * stride];
        if (cur != 1) {
          term = f.Mul(term, cur);
          ++*ops;
        }
        acc = f.Add(acc, term);
        ++*ops;
      }
      out[k] = acc;
    }
    return;
  }
  std::size_t m = d / p;
  std::vector<Fq> sub(d);
  Fq wp = f.Pow(w, p);
  for (std::size_t r = 0; r < p; ++r) {
    Dft1d(f, in + r * stride, stride * p, m, wp, sub.data() + r * m, ops);
  }
  // out[k + m*l] = sum_r w^{r(k + m l)} sub_r[k]
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t l = 0; l < p; ++l) {
      std::size_t idx = k + m * l;
      Fq acc = sub[k];
      for (std::size_t r = 1; r < p; ++r) {
        Fq tw = f.Pow(w, (r * idx) % d);
        Fq term = sub[r * m + k];
        if (tw != 1) {
          term = f.Mul(term, tw);
          ++*ops;
        }
        acc = f.Add(acc, term);
        ++*ops;
      }
      out[idx] = acc;
    }
  }
}

inline void DftInPlace(const GroupSpec& g, std::vector<Fq>* data, bool inverse,
                       OpCounter* counter) {
  const auto& f = g.field();
  std::uint64_t ops = 0;
  const std::size_t total = g.size();
  std::vector<Fq> line, res;
  for (std::size_t axis = 0; axis < g.rank(); ++axis) {
    std::uint32_t d = g.orders()[axis];
    std::size_t stride = g.strides()[axis];
    Fq w = f.RootOfUnity(d);
    if (inverse) w = f.Inv(w);
    Fq* x = data->data();
    if (d == 2) {
      // w = -1: plain butterflies.
      for (std::size_t base = 0; base < total; base += 2 * stride) {
        for (std::size_t o = 0; o < stride; ++o) {
          Fq a = x[base + o], b = x[base + o + stride];
          x[base + o] = f.Add(a, b);
          x[base + o + stride] = f.Sub(a, b);
        }
      }
      ops += total;
      continue;
    }
    line.resize(d);
    res.resize(d);
    for (std::size_t base = 0; base < total; base += d * stride) {
      for (std::size_t o = 0; o < stride; ++o) {
        Fq* p = x + base + o;
        for (std::size_t j = 0; j < d; ++j) line[j] = p[j * stride];
        Dft1d(f, line.data(), 1, d, w, res.data(), &ops);
        for (std::size_t j = 0; j < d; ++j) p[j * stride] = res[j];
      }
    }
  }
  if (inverse) {
    Fq scale = f.Inv(static_cast<Fq>(total % f.q()));
    if (scale != 1) {
      for (auto& v : *data) v = f.Mul(v, scale);
      ops += total;
    }
  }
  if (counter) counter->ops += ops;
}

inline void CheckSplit(const GroupSpec& g) {
  for (auto d : g.orders()) {
    if ((g.q() - 1) % d != 0) {
      throw Error(ErrorCode::kNoRootOfUnity, "factor Z/" + std::to_string(d) +
                                                 " has no root of unity in F_" +
                                                 std::to_string(g.q()));
    }
  }
}

}  // namespace detail

inline bool DftSupported(const GroupSpec& g) {
  for (auto d : g.orders()) {
    if ((g.q() - 1) % d != 0) return false;
  }
  return true;
}

// result[k] = a evaluated at (z_1^{k_1}, ..., z_n^{k_n}) with z_i the
// primitive d_i-th root g^((q-1)/d_i), g the smallest generator of F_q^*.
inline std::vector<Fq> DftForward(const AlgebraElement& a, OpCounter* counter = nullptr) {
  detail::CheckSplit(a.spec);
  std::vector<Fq> v = a.coeffs;
  detail::DftInPlace(a.spec, &v, false, counter);
  return v;
}

inline AlgebraElement DftInverse(const GroupSpec& g, std::vector<Fq> v,
                                 OpCounter* counter = nullptr) {
  detail::CheckSplit(g);
  if (v.size() != g.size()) throw Error(ErrorCode::kLengthMismatch, "evaluation vector length");
  detail::DftInPlace(g, &v, true, counter);
  return AlgebraElement(g, std::move(v));
}

inline AlgebraElement MulFft(const AlgebraElement& a, const AlgebraElement& b) {
  CheckSameSpec(a, b);
  auto fa = DftForward(a);
  auto fb = DftForward(b);
  const auto& f = a.field();
  for (std::size_t i = 0; i < fa.size(); ++i) fa[i] = f.Mul(fa[i], fb[i]);
  return DftInverse(a.spec, std::move(fa));
}

// Sizes at or above this use the transform when it is available.
inline std::size_t& FftThreshold() {
  static std::size_t threshold = 64;
  return threshold;
}

inline AlgebraElement Mul(const AlgebraElement& a, const AlgebraElement& b) {
  CheckSameSpec(a, b);
  if (a.size() >= FftThreshold() && DftSupported(a.spec)) return MulFft(a, b);
  return MulNaive(a, b);
}

// ---------------------------------------------------------------------------

// Projection F_q[G] -> F_q[G/H]: each coset collects the sum of its
// coefficients.
inline AlgebraElement Fold(const AlgebraElement& a, const Quotient& quo) {
  if (quo.coset.size() != a.size()) throw Error(ErrorCode::kSpecMismatch, "quotient map size");
  AlgebraElement out(quo.spec);
  const auto& f = a.field();
  for (std::size_t g = 0; g < a.size(); ++g) {
    if (a.coeffs[g]) out.coeffs[quo.coset[g]] = f.Add(out.coeffs[quo.coset[g]], a.coeffs[g]);
  }
  return out;
}

inline AlgebraElement Fold(const AlgebraElement& a, const std::vector<std::size_t>& subgroup) {
  return Fold(a, QuotientBy(a.spec, subgroup));
}

inline SparseElement Fold(const SparseElement& s, const Quotient& quo) {
  std::vector<std::size_t> pos;
  std::vector<Fq> val;
  for (auto& [p, v] : s.points) {
    pos.push_back(quo.coset[p]);
    val.push_back(v);
  }
  return SparseElement::FromTerms(quo.spec, pos, val);
}

// a -> sum_g a_g g^{-1}
inline AlgebraElement InvolutionBar(const AlgebraElement& a) {
  AlgebraElement out(a.spec);
  for (std::size_t g = 0; g < a.size(); ++g) out.coeffs[a.spec.InverseIndex(g)] = a.coeffs[g];
  return out;
}

inline Fq InnerProduct(const AlgebraElement& a, const AlgebraElement& b) {
  CheckSameSpec(a, b);
  const auto& f = a.field();
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    acc += static_cast<std::uint64_t>(a.coeffs[i]) * b.coeffs[i];
    if (acc >= (std::uint64_t{1} << 62)) acc %= f.q();
  }
  return static_cast<Fq>(acc % f.q());
}

// ---------------------------------------------------------------------------
// Serialization: q (u16), n (u8), d_1..d_n (u16 each), then ceil(log2 q)-bit
// coefficients packed little-endian.

inline void SerializeElement(const AlgebraElement& a, std::vector<std::uint8_t>* out) {
  PutU16(out, static_cast<std::uint16_t>(a.spec.q()));
  PutU8(out, static_cast<std::uint8_t>(a.spec.rank()));
  for (auto d : a.spec.orders()) PutU16(out, static_cast<std::uint16_t>(d));
  unsigned w = CeilLog2(a.spec.q());
  BitWriter bw(out);
  for (Fq c : a.coeffs) bw.Write(c, w);
}

inline std::vector<std::uint8_t> SerializeElement(const AlgebraElement& a) {
  std::vector<std::uint8_t> out;
  SerializeElement(a, &out);
  return out;
}

inline AlgebraElement DeserializeElement(ByteReader* in) {
  std::uint32_t q = in->U16();
  std::size_t n = in->U8();
  std::vector<std::uint32_t> orders(n);
  for (auto& d : orders) d = in->U16();
  GroupSpec g(orders, q);
  unsigned w = CeilLog2(q);
  BitReader br = in->Bits();
  std::vector<Fq> c(g.size());
  for (auto& x : c) {
    x = static_cast<Fq>(br.Read(w));
    if (x >= q) throw Error(ErrorCode::kFormatError, "coefficient out of range");
  }
  in->Skip(br.byte_position());
  return AlgebraElement(g, std::move(c));
}

inline AlgebraElement DeserializeElement(const std::vector<std::uint8_t>& bytes) {
  ByteReader r(bytes);
  return DeserializeElement(&r);
}

}  // namespace qapcg
