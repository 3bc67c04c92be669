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

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qapcg/errors.hpp"
#include "qapcg/pcg.hpp"

namespace qapcg {

// One party's share of a batch of multiplication triples.
struct TripleShares {
  std::vector<Fq> a, b, c;

  std::size_t size() const { return a.size(); }
};

// Combines two scalar OLE batches into triples. In batch1 party 0's input is
// its a-share and party 1's input its b-share; batch2 has the roles swapped.
// Then c_s = a_s b_s + z_s(batch1) + z_s(batch2).
inline std::array<TripleShares, 2> OleToTriples(const std::vector<ScalarOle>& batch1,
                                                const std::vector<ScalarOle>& batch2,
                                                const PrimeField& f) {
  if (batch1.size() != batch2.size()) {
    throw Error(ErrorCode::kBatchMismatch, "OLE batches have different lengths");
  }
  std::array<TripleShares, 2> out;
  for (std::size_t k = 0; k < batch1.size(); ++k) {
    const ScalarOle& u = batch1[k];
    const ScalarOle& v = batch2[k];
    Fq a0 = u.x0, b1 = u.x1, b0 = v.x0, a1 = v.x1;
    out[0].a.push_back(a0);
    out[0].b.push_back(b0);
    out[0].c.push_back(f.Add(f.Mul(a0, b0), f.Add(u.z0, v.z0)));
    out[1].a.push_back(a1);
    out[1].b.push_back(b1);
    out[1].c.push_back(f.Add(f.Mul(a1, b1), f.Add(u.z1, v.z1)));
  }
  return out;
}

inline bool CheckTriples(const std::vector<TripleShares>& shares, const PrimeField& f) {
  if (shares.empty()) return true;
  const std::size_t n = shares[0].size();
  for (const auto& s : shares) {
    if (s.size() != n || s.b.size() != n || s.c.size() != n) return false;
  }
  for (std::size_t k = 0; k < n; ++k) {
    Fq a = 0, b = 0, c = 0;
    for (const auto& s : shares) {
      a = f.Add(a, s.a[k]);
      b = f.Add(b, s.b[k]);
      c = f.Add(c, s.c[k]);
    }
    if (f.Mul(a, b) != c) return false;
  }
  return true;
}

// Two-party triples from two independent PCG instances, T = |G| per pair.
inline std::array<TripleShares, 2> TwoPartyTriples(const PcgParams& p, CtrDrbg& rng) {
  auto run = [&] {
    auto [s0, s1] = PcgGen(p, std::nullopt, std::nullopt, rng);
    return CrtSplit(PcgExpand(s0, p), PcgExpand(s1, p));
  };
  auto b1 = run();
  auto b2 = run();
  return OleToTriples(b1, b2, PrimeField(p.q));
}

// Result of the programmed OLE between party i (PCG party 0, input x_i) and
// party j (PCG party 1, input y_j), after the CRT split.
struct PairwiseOle {
  std::size_t i, j;
  std::vector<ScalarOle> ole;
};

// Party i ends with K_i = x_i y_i + sum_{j != i} (<x_i y_j>_i + <x_j y_i>_i).
// Fails if one party's programmed input differs between pairs.
inline std::vector<TripleShares> CombinePairwise(std::size_t parties,
                                                 const std::vector<PairwiseOle>& pairs,
                                                 const PrimeField& f) {
  if (parties < 2) throw Error(ErrorCode::kParamError, "need at least two parties");
  std::size_t len = pairs.empty() ? 0 : pairs[0].ole.size();
  std::vector<std::optional<std::vector<Fq>>> xs(parties), ys(parties);
  auto pin = [&](std::optional<std::vector<Fq>>& slot, std::vector<Fq> v, std::size_t who) {
    if (!slot) {
      slot = std::move(v);
    } else if (*slot != v) {
      throw Error(ErrorCode::kInconsistentProgramming,
                  "party " + std::to_string(who) + " has differing inputs across pairs");
    }
  };
  std::vector<std::vector<Fq>> k(parties, std::vector<Fq>(len, 0));
  std::vector<std::vector<char>> seen(parties, std::vector<char>(parties, 0));
  for (const auto& pr : pairs) {
    if (pr.i >= parties || pr.j >= parties || pr.i == pr.j || pr.ole.size() != len) {
      throw Error(ErrorCode::kBatchMismatch, "malformed pairwise batch");
    }
    seen[pr.i][pr.j] = 1;
    std::vector<Fq> x(len), y(len);
    for (std::size_t m = 0; m < len; ++m) {
      x[m] = pr.ole[m].x0;
      y[m] = pr.ole[m].x1;
      k[pr.i][m] = f.Add(k[pr.i][m], pr.ole[m].z0);
      k[pr.j][m] = f.Add(k[pr.j][m], pr.ole[m].z1);
    }
    pin(xs[pr.i], std::move(x), pr.i);
    pin(ys[pr.j], std::move(y), pr.j);
  }
  for (std::size_t i = 0; i < parties; ++i) {
    for (std::size_t j = 0; j < parties; ++j) {
      if (i != j && !seen[i][j]) {
        throw Error(ErrorCode::kBatchMismatch, "missing pair (" + std::to_string(i) + ", " +
                                                   std::to_string(j) + ")");
      }
    }
  }
  std::vector<TripleShares> out(parties);
  for (std::size_t i = 0; i < parties; ++i) {
    out[i].a = *xs[i];
    out[i].b = *ys[i];
    out[i].c.resize(len);
    for (std::size_t m = 0; m < len; ++m) {
      out[i].c[m] = f.Add(k[i][m], f.Mul(out[i].a[m], out[i].b[m]));
    }
  }
  return out;
}

// N-party triples: every ordered pair runs a PCG whose inputs are fixed by
// the shared program inputs rho_x[i] and rho_y[j].
inline std::vector<TripleShares> NPartyTriples(const PcgParams& p,
                                               const std::vector<ProgramInput>& rho_x,
                                               const std::vector<ProgramInput>& rho_y,
                                               CtrDrbg& rng) {
  const std::size_t parties = rho_x.size();
  if (rho_y.size() != parties) throw Error(ErrorCode::kParamError, "rho lists differ");
  std::vector<PairwiseOle> pairs;
  for (std::size_t i = 0; i < parties; ++i) {
    for (std::size_t j = 0; j < parties; ++j) {
      if (i == j) continue;
      auto [s0, s1] = PcgGen(p, rho_x[i], rho_y[j], rng);
      pairs.push_back({i, j, CrtSplit(PcgExpand(s0, p), PcgExpand(s1, p))});
    }
  }
  return CombinePairwise(parties, pairs, PrimeField(p.q));
}

inline std::vector<TripleShares> NPartyTriples(const PcgParams& p, std::size_t parties,
                                               CtrDrbg& rng) {
  std::vector<ProgramInput> rx, ry;
  for (std::size_t i = 0; i < 2 * parties; ++i) {
    std::array<std::uint8_t, 32> s;
    rng.Fill(s.data(), s.size());
    (i < parties ? rx : ry).push_back(ProgramInput::FromSeed(s));
  }
  return NPartyTriples(p, rx, ry, rng);
}

}  // namespace qapcg
