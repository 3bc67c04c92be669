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
#include <cstdlib>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "qapcg/errors.hpp"
#include "qapcg/field.hpp"

namespace qapcg {

// G = Z/d_1 x ... x Z/d_n over the field F_q. Element (a_1, ..., a_n) has
// index sum_i a_i * prod_{j<i} d_j, so factor 1 varies fastest. An empty
// order list is the trivial group.
class GroupSpec {
 public:
  GroupSpec(std::vector<std::uint32_t> orders, std::uint32_t q)
      : field_(q), orders_(std::move(orders)) {
    size_ = 1;
    strides_.reserve(orders_.size());
    for (auto d : orders_) {
      if (d < 2) throw Error(ErrorCode::kInvalidSpec, "cyclic factor order must be >= 2");
      strides_.push_back(size_);
      size_ *= d;
      if (size_ > (std::size_t{1} << 32)) {
        throw Error(ErrorCode::kInvalidSpec, "group too large");
      }
    }
    if (size_ % q == 0) {
      throw Error(ErrorCode::kInvalidSpec, "|G| must be coprime to q");
    }
  }

  // (Z/(q-1))^n, the group used by the OLE generator.
  static GroupSpec Torus(std::uint32_t q, unsigned n) {
    return GroupSpec(std::vector<std::uint32_t>(n, q - 1), q);
  }

  const PrimeField& field() const { return field_; }
  std::uint32_t q() const { return field_.q(); }
  const std::vector<std::uint32_t>& orders() const { return orders_; }
  const std::vector<std::size_t>& strides() const { return strides_; }
  std::size_t rank() const { return orders_.size(); }
  std::size_t size() const { return size_; }

  std::vector<std::uint32_t> Digits(std::size_t index) const {
    CheckIndex(index);
    std::vector<std::uint32_t> out(orders_.size());
    for (std::size_t i = 0; i < orders_.size(); ++i) {
      out[i] = static_cast<std::uint32_t>(index % orders_[i]);
      index /= orders_[i];
    }
    return out;
  }

  std::size_t Index(const std::vector<std::uint32_t>& digits) const {
    if (digits.size() != orders_.size()) {
      throw Error(ErrorCode::kIndexOutOfRange, "digit vector has wrong length");
    }
    std::size_t idx = 0;
    for (std::size_t i = 0; i < orders_.size(); ++i) {
      if (digits[i] >= orders_[i]) throw Error(ErrorCode::kIndexOutOfRange, "digit out of range");
      idx += digits[i] * strides_[i];
    }
    return idx;
  }

  // Group operation on canonical indices (componentwise addition).
  std::size_t MulIndices(std::size_t a, std::size_t b) const {
    CheckIndex(a);
    CheckIndex(b);
    std::size_t out = 0;
    for (std::size_t i = 0; i < orders_.size(); ++i) {
      std::uint32_t d = orders_[i];
      std::size_t s = (a % d) + (b % d);
      if (s >= d) s -= d;
      out += s * strides_[i];
      a /= d;
      b /= d;
    }
    return out;
  }

  std::size_t InverseIndex(std::size_t a) const {
    CheckIndex(a);
    std::size_t out = 0;
    for (std::size_t i = 0; i < orders_.size(); ++i) {
      std::uint32_t d = orders_[i];
      std::size_t x = a % d;
      out += (x == 0 ? 0 : d - x) * strides_[i];
      a /= d;
    }
    return out;
  }

  void CheckIndex(std::size_t i) const {
    if (i >= size_) {
      throw Error(ErrorCode::kIndexOutOfRange,
                  "group index " + std::to_string(i) + " >= " + std::to_string(size_));
    }
  }

  bool operator==(const GroupSpec& o) const {
    return field_ == o.field_ && orders_ == o.orders_;
  }
  bool operator!=(const GroupSpec& o) const { return !(*this == o); }

  std::string ToString() const {
    std::string s = "F_" + std::to_string(q()) + "[";
    for (std::size_t i = 0; i < orders_.size(); ++i) {
      if (i) s += " x ";
      s += "Z/" + std::to_string(orders_[i]);
    }
    if (orders_.empty()) s += "1";
    return s + "]";
  }

 private:
  PrimeField field_;
  std::vector<std::uint32_t> orders_;
  std::vector<std::size_t> strides_;
  std::size_t size_;
};

inline std::size_t GroupMulIndices(std::size_t i, std::size_t j, const GroupSpec& g) {
  return g.MulIndices(i, j);
}

// Walks the indices of G in canonical order while tracking the index of
// shift + current element. Used by convolution loops.
class ShiftedOdometer {
 public:
  ShiftedOdometer(const GroupSpec& g, std::size_t shift)
      : orders_(g.orders()), strides_(g.strides()), digits_(orders_.size(), 0),
        shift_(g.Digits(shift)) {
    target_ = shift;
  }

  std::size_t target() const { return target_; }

  void Next() {
    for (std::size_t i = 0; i < orders_.size(); ++i) {
      std::uint32_t d = orders_[i];
      std::uint32_t old_t = digits_[i] + shift_[i];
      if (old_t >= d) old_t -= d;
      if (++digits_[i] < d) {
        std::uint32_t new_t = old_t + 1 == d ? 0 : old_t + 1;
        target_ = target_ - old_t * strides_[i] + new_t * strides_[i];
        return;
      }
      digits_[i] = 0;
      target_ = target_ - old_t * strides_[i] + shift_[i] * strides_[i];
    }
  }

 private:
  const std::vector<std::uint32_t>& orders_;
  const std::vector<std::size_t>& strides_;
  std::vector<std::uint32_t> digits_;
  std::vector<std::uint32_t> shift_;
  std::size_t target_;
};

// Closure of a set of generators under the group operation.
inline std::vector<std::size_t> SubgroupGeneratedBy(const GroupSpec& g,
                                                    const std::vector<std::size_t>& gens) {
  std::vector<char> member(g.size(), 0);
  std::vector<std::size_t> elems{0};
  member[0] = 1;
  for (std::size_t gen : gens) {
    g.CheckIndex(gen);
    if (member[gen]) continue;
    // New subgroup = union of cosets elems + k*gen.
    std::vector<std::size_t> base = elems;
    std::size_t step = gen;
    while (!member[step]) {
      for (std::size_t e : base) {
        std::size_t x = g.MulIndices(e, step);
        if (!member[x]) {
          member[x] = 1;
          elems.push_back(x);
        }
      }
      step = g.MulIndices(step, gen);
    }
  }
  std::sort(elems.begin(), elems.end());
  return elems;
}

// Subgroup made of the first j cyclic factors (other digits zero).
inline std::vector<std::size_t> LeadingFactorSubgroup(const GroupSpec& g, std::size_t j) {
  std::size_t n = 1;
  for (std::size_t i = 0; i < j && i < g.rank(); ++i) n *= g.orders()[i];
  std::vector<std::size_t> out(n);
  std::iota(out.begin(), out.end(), std::size_t{0});
  return out;
}

// Presentation of G/H as a product of cyclic groups together with the
// projection G -> G/H on canonical indices.
struct Quotient {
  GroupSpec spec;
  std::vector<std::uint32_t> coset;  // coset[g] = index of gH in `spec`
};

namespace detail {

using Mat = std::vector<std::vector<std::int64_t>>;

// Reduces M (rows x cols) to diagonal form D = U M V with d_1 | d_2 | ...
// and returns V. Only column operations are tracked.
inline Mat SmithColumns(Mat& m, std::size_t cols) {
  std::size_t rows = m.size();
  Mat v(cols, std::vector<std::int64_t>(cols, 0));
  for (std::size_t i = 0; i < cols; ++i) v[i][i] = 1;

  auto swap_cols = [&](std::size_t a, std::size_t b) {
    if (a == b) return;
    for (auto& r : m) std::swap(r[a], r[b]);
    for (auto& r : v) std::swap(r[a], r[b]);
  };
  auto add_col = [&](std::size_t dst, std::size_t src, std::int64_t k) {
    for (auto& r : m) r[dst] += k * r[src];
    for (auto& r : v) r[dst] += k * r[src];
  };
  auto add_row = [&](std::size_t dst, std::size_t src, std::int64_t k) {
    for (std::size_t c = 0; c < cols; ++c) m[dst][c] += k * m[src][c];
  };

  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    for (;;) {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      std::size_t pr = rows, pc = cols;
      std::int64_t best = 0;
      for (std::size_t r = t; r < rows; ++r) {
        for (std::size_t c = t; c < cols; ++c) {
          std::int64_t a = std::llabs(m[r][c]);
          if (a != 0 && (best == 0 || a < best)) {
            best = a;
            pr = r;
            pc = c;
          }
        }
      }
      if (best == 0) return v;
      std::swap(m[t], m[pr]);
      swap_cols(t, pc);

      bool clean = true;
      for (std::size_t r = t + 1; r < rows; ++r) {
        if (m[r][t] == 0) continue;
        add_row(r, t, -(m[r][t] / m[t][t]));
        if (m[r][t] != 0) clean = false;
      }
      for (std::size_t c = t + 1; c < cols; ++c) {
        if (m[t][c] == 0) continue;
        add_col(c, t, -(m[t][c] / m[t][t]));
        if (m[t][c] != 0) clean = false;
      }
      if (!clean) continue;

      // Enforce divisibility of the rest of the block by the pivot.
      bool divides = true;
      for (std::size_t r = t + 1; r < rows && divides; ++r) {
        for (std::size_t c = t + 1; c < cols; ++c) {
          if (m[r][c] % m[t][t] != 0) {
            add_row(t, r, 1);
            divides = false;
            break;
          }
        }
      }
      if (divides) break;
    }
    if (m[t][t] < 0) {
      for (auto& r : m) r[t] = -r[t];
      for (auto& r : v) r[t] = -r[t];
    }
  }
  return v;
}

}  // namespace detail

// Computes G/H where `subgroup` lists the elements of H. The list must
// contain 0 and be closed under the group operation.
inline Quotient QuotientBy(const GroupSpec& g, const std::vector<std::size_t>& subgroup) {
  std::vector<char> member(g.size(), 0);
  for (std::size_t h : subgroup) {
    g.CheckIndex(h);
    member[h] = 1;
  }
  if (!member[0]) throw Error(ErrorCode::kNotASubgroup, "subgroup must contain the identity");
  std::vector<std::size_t> elems;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (member[i]) elems.push_back(i);
  }
  for (std::size_t a : elems) {
    for (std::size_t b : elems) {
      if (!member[g.MulIndices(a, b)]) {
        throw Error(ErrorCode::kNotASubgroup, "element list is not closed under addition");
      }
    }
  }

  // Minimal generating set, picked greedily in index order.
  std::vector<std::size_t> gens;
  {
    std::vector<std::size_t> cur{0};
    for (std::size_t h : elems) {
      if (std::binary_search(cur.begin(), cur.end(), h)) continue;
      gens.push_back(h);
      cur = SubgroupGeneratedBy(g, gens);
      if (cur.size() == elems.size()) break;
    }
  }

  const std::size_t n = g.rank();
  detail::Mat rel;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::int64_t> row(n, 0);
    row[i] = g.orders()[i];
    rel.push_back(row);
  }
  for (std::size_t h : gens) {
    auto d = g.Digits(h);
    rel.emplace_back(d.begin(), d.end());
  }
  detail::Mat v = detail::SmithColumns(rel, n);

  std::vector<std::uint32_t> qorders;
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < n; ++i) {
    std::int64_t s = rel[i][i];
    if (s > 1) {
      qorders.push_back(static_cast<std::uint32_t>(s));
      kept.push_back(i);
    }
  }
  Quotient out{GroupSpec(qorders, g.q()), std::vector<std::uint32_t>(g.size())};

  // Image of each generator e_i of G in the quotient coordinates.
  std::vector<std::vector<std::uint32_t>> unit_img(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < kept.size(); ++k) {
      std::int64_t s = qorders[k];
      std::int64_t x = v[i][kept[k]] % s;
      if (x < 0) x += s;
      unit_img[i].push_back(static_cast<std::uint32_t>(x));
    }
  }
  for (std::size_t idx = 0; idx < g.size(); ++idx) {
    std::size_t rest = idx;
    std::vector<std::uint64_t> acc(kept.size(), 0);
    for (std::size_t i = 0; i < n; ++i) {
      std::uint64_t digit = rest % g.orders()[i];
      rest /= g.orders()[i];
      for (std::size_t k = 0; k < kept.size(); ++k) acc[k] += digit * unit_img[i][k];
    }
    std::size_t c = 0;
    for (std::size_t k = 0; k < kept.size(); ++k) {
      c += (acc[k] % qorders[k]) * out.spec.strides()[k];
    }
    out.coset[idx] = static_cast<std::uint32_t>(c);
  }
  return out;
}

}  // namespace qapcg
