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
#include <string>
#include <unordered_map>
#include <vector>

#include "qapcg/circuit.hpp"
#include "qapcg/errors.hpp"
#include "qapcg/field.hpp"
#include "qapcg/pcg.hpp"
#include "qapcg/prg.hpp"
#include "qapcg/triples.hpp"

namespace qapcg {

// In-process broadcast channel. Every message is one field element sent by
// one party to all others; traffic is tallied per phase and per sender.
class BroadcastTape {
 public:
  enum Phase { kInputPhase = 0, kMulPhase = 1, kOutputPhase = 2 };

  explicit BroadcastTape(std::size_t parties) : sent_(3, std::vector<std::uint64_t>(parties, 0)) {}

  // Each party posts one element; returns what every party receives.
  std::vector<Fq> Round(Phase phase, const std::vector<Fq>& msgs) {
    for (std::size_t i = 0; i < msgs.size(); ++i) ++sent_[phase][i];
    ++rounds_[phase];
    return msgs;
  }

  Fq Single(Phase phase, std::size_t from, Fq msg) {
    ++sent_[phase][from];
    ++rounds_[phase];
    return msg;
  }

  std::uint64_t sent(Phase phase, std::size_t party) const { return sent_[phase][party]; }
  std::uint64_t total(Phase phase) const {
    std::uint64_t s = 0;
    for (auto v : sent_[phase]) s += v;
    return s;
  }
  std::uint64_t rounds(Phase phase) const { return rounds_[phase]; }

 private:
  std::vector<std::vector<std::uint64_t>> sent_;
  std::array<std::uint64_t, 3> rounds_{};
};

struct GmwStats {
  std::uint64_t mul_elements = 0;     // all parties, multiplication step only
  std::vector<std::uint64_t> mul_elements_per_party;
  std::uint64_t input_elements = 0;
  std::uint64_t output_elements = 0;
  std::uint64_t triples_consumed = 0;
};

struct GmwResult {
  std::vector<Fq> outputs;
  GmwStats stats;
};

namespace detail {

inline GmwStats CollectStats(const BroadcastTape& tape, std::size_t parties) {
  GmwStats s;
  s.mul_elements = tape.total(BroadcastTape::kMulPhase);
  s.input_elements = tape.total(BroadcastTape::kInputPhase);
  s.output_elements = tape.total(BroadcastTape::kOutputPhase);
  for (std::size_t i = 0; i < parties; ++i) {
    s.mul_elements_per_party.push_back(tape.sent(BroadcastTape::kMulPhase, i));
  }
  return s;
}

inline void CheckInputParties(const Circuit& c, std::size_t parties) {
  if (parties < 2) throw Error(ErrorCode::kParamError, "need at least two parties");
  if (c.max_input_party() >= parties) {
    throw Error(ErrorCode::kMalformedCircuit, "input owned by a party that does not exist");
  }
}

}  // namespace detail

// Semi-honest GMW with additive shares and Beaver triples. Each Mul gate
// consumes one triple and every party broadcasts two elements (its shares
// of x - a and y - b).
inline GmwResult GmwEvalTriples(const Circuit& circuit, const WireValues& inputs,
                                const std::vector<TripleShares>& triples, CtrDrbg& rng) {
  ValidateCircuit(circuit);
  const std::size_t parties = triples.size();
  detail::CheckInputParties(circuit, parties);
  const std::size_t muls = circuit.mul_count();
  for (const auto& t : triples) {
    if (t.size() < muls || t.size() != triples[0].size()) {
      throw Error(ErrorCode::kInsufficientTriples,
                  std::to_string(muls) + " multiplications but " + std::to_string(t.size()) +
                      " triples");
    }
  }
  PrimeField f(circuit.q);
  BroadcastTape tape(parties);
  // share[i][w] is party i's additive share of wire w.
  std::vector<std::unordered_map<std::uint32_t, Fq>> share(parties);
  std::size_t next_triple = 0;
  std::vector<Fq> outputs;

  for (const auto& g : circuit.gates) {
    switch (g.op) {
      case GateOp::kInput: {
        // The owner deals random shares to the other parties.
        Fq x = InputValue(inputs, g.w, f.q());
        Fq rest = 0;
        for (std::size_t i = 0; i < parties; ++i) {
          if (i == g.party) continue;
          Fq s = tape.Single(BroadcastTape::kInputPhase, g.party, rng.UniformField(f));
          share[i][g.w] = s;
          rest = f.Add(rest, s);
        }
        share[g.party][g.w] = f.Sub(x, rest);
        break;
      }
      case GateOp::kConst:
        for (std::size_t i = 0; i < parties; ++i) share[i][g.w] = i == 0 ? g.value : 0;
        break;
      case GateOp::kAdd:
        for (std::size_t i = 0; i < parties; ++i) {
          share[i][g.w] = f.Add(share[i].at(g.u), share[i].at(g.v));
        }
        break;
      case GateOp::kMul: {
        const std::size_t k = next_triple++;
        std::vector<Fq> dm(parties), em(parties);
        for (std::size_t i = 0; i < parties; ++i) {
          dm[i] = f.Sub(share[i].at(g.u), triples[i].a[k]);
          em[i] = f.Sub(share[i].at(g.v), triples[i].b[k]);
        }
        Fq d = 0, e = 0;
        for (Fq m : tape.Round(BroadcastTape::kMulPhase, dm)) d = f.Add(d, m);
        for (Fq m : tape.Round(BroadcastTape::kMulPhase, em)) e = f.Add(e, m);
        for (std::size_t i = 0; i < parties; ++i) {
          Fq z = f.Add(triples[i].c[k],
                       f.Add(f.Mul(d, triples[i].b[k]), f.Mul(e, triples[i].a[k])));
          if (i == 0) z = f.Add(z, f.Mul(d, e));
          share[i][g.w] = z;
        }
        break;
      }
      case GateOp::kOutput: {
        std::vector<Fq> msgs(parties);
        for (std::size_t i = 0; i < parties; ++i) msgs[i] = share[i].at(g.w);
        Fq v = 0;
        for (Fq m : tape.Round(BroadcastTape::kOutputPhase, msgs)) v = f.Add(v, m);
        outputs.push_back(v);
        break;
      }
    }
  }
  GmwResult r{std::move(outputs), detail::CollectStats(tape, parties)};
  r.stats.triples_consumed = next_triple;
  return r;
}

// ---------------------------------------------------------------------------
// Circuit-dependent preprocessing: every wire w carries a mask r_w, and the
// online phase keeps m_w = x_w + r_w public.

struct MaskAssignment {
  std::size_t parties = 0;
  std::string circuit_text;  // identifies the circuit the masks belong to
  // r_share[i][w]: party i's share of r_w for every wire w.
  std::vector<std::unordered_map<std::uint32_t, Fq>> r_share;
  // s_share[i][w]: party i's share of r_u * r_v for the Mul gate writing w.
  std::vector<std::unordered_map<std::uint32_t, Fq>> s_share;
  // r_w in the clear for input wires, handed to the input owner.
  std::unordered_map<std::uint32_t, Fq> input_mask;
  std::uint64_t triples_consumed = 0;
};

// Dealer side. Masks on input and Mul-output wires are fresh; Add wires get
// r_u + r_v and constants get 0. Each r_u * r_v is shared by a Beaver
// multiplication that consumes one triple.
inline MaskAssignment DealMasks(const Circuit& circuit, const std::vector<TripleShares>& triples,
                                CtrDrbg& rng) {
  ValidateCircuit(circuit);
  const std::size_t parties = triples.size();
  detail::CheckInputParties(circuit, parties);
  const std::size_t muls = circuit.mul_count();
  for (const auto& t : triples) {
    if (t.size() < muls) throw Error(ErrorCode::kInsufficientTriples, "not enough triples");
  }
  PrimeField f(circuit.q);
  MaskAssignment m;
  m.parties = parties;
  m.circuit_text = FormatCircuit(circuit);
  m.r_share.resize(parties);
  m.s_share.resize(parties);
  auto fresh = [&](std::uint32_t w) {
    Fq sum = 0;
    for (std::size_t i = 0; i < parties; ++i) {
      Fq s = rng.UniformField(f);
      m.r_share[i][w] = s;
      sum = f.Add(sum, s);
    }
    return sum;
  };
  std::size_t k = 0;
  for (const auto& g : circuit.gates) {
    switch (g.op) {
      case GateOp::kInput: m.input_mask[g.w] = fresh(g.w); break;
      case GateOp::kConst:
        for (std::size_t i = 0; i < parties; ++i) m.r_share[i][g.w] = 0;
        break;
      case GateOp::kAdd:
        for (std::size_t i = 0; i < parties; ++i) {
          m.r_share[i][g.w] = f.Add(m.r_share[i].at(g.u), m.r_share[i].at(g.v));
        }
        break;
      case GateOp::kMul: {
        Fq d = 0, e = 0;
        for (std::size_t i = 0; i < parties; ++i) {
          d = f.Add(d, f.Sub(m.r_share[i].at(g.u), triples[i].a[k]));
          e = f.Add(e, f.Sub(m.r_share[i].at(g.v), triples[i].b[k]));
        }
        for (std::size_t i = 0; i < parties; ++i) {
          Fq s = f.Add(triples[i].c[k],
                       f.Add(f.Mul(d, triples[i].b[k]), f.Mul(e, triples[i].a[k])));
          if (i == 0) s = f.Add(s, f.Mul(d, e));
          m.s_share[i][g.w] = s;
        }
        ++k;
        fresh(g.w);
        break;
      }
      case GateOp::kOutput: break;
    }
  }
  m.triples_consumed = k;
  return m;
}

inline Fq RecombineMask(const MaskAssignment& m, std::uint32_t w, const PrimeField& f) {
  Fq r = 0;
  for (const auto& s : m.r_share) r = f.Add(r, s.at(w));
  return r;
}

// Online phase. `masked` (optional) receives m_w for every wire so tests
// can check m_w = x_w + r_w.
inline GmwResult GmwEvalCircuitDep(const Circuit& circuit, const WireValues& inputs,
                                   const MaskAssignment& masks,
                                   std::unordered_map<std::uint32_t, Fq>* masked = nullptr) {
  ValidateCircuit(circuit);
  if (masks.circuit_text != FormatCircuit(circuit) || masks.r_share.size() != masks.parties ||
      masks.s_share.size() != masks.parties) {
    throw Error(ErrorCode::kMaskMismatch, "masks were generated for a different circuit");
  }
  const std::size_t parties = masks.parties;
  detail::CheckInputParties(circuit, parties);
  PrimeField f(circuit.q);
  BroadcastTape tape(parties);
  std::unordered_map<std::uint32_t, Fq> mv;
  std::vector<Fq> outputs;
  for (const auto& g : circuit.gates) {
    switch (g.op) {
      case GateOp::kInput: {
        Fq x = InputValue(inputs, g.w, f.q());
        mv[g.w] = tape.Single(BroadcastTape::kInputPhase, g.party,
                              f.Add(x, masks.input_mask.at(g.w)));
        break;
      }
      case GateOp::kConst: mv[g.w] = g.value; break;
      case GateOp::kAdd: mv[g.w] = f.Add(mv.at(g.u), mv.at(g.v)); break;
      case GateOp::kMul: {
        // x_u x_v + r_w = m_u m_v - m_u r_v - m_v r_u + r_u r_v + r_w
        const Fq mu = mv.at(g.u), mvv = mv.at(g.v);
        std::vector<Fq> msgs(parties);
        for (std::size_t i = 0; i < parties; ++i) {
          const auto& r = masks.r_share[i];
          Fq s = f.Add(masks.s_share[i].at(g.w), r.at(g.w));
          s = f.Sub(s, f.Add(f.Mul(mu, r.at(g.v)), f.Mul(mvv, r.at(g.u))));
          if (i == 0) s = f.Add(s, f.Mul(mu, mvv));
          msgs[i] = s;
        }
        Fq m = 0;
        for (Fq x : tape.Round(BroadcastTape::kMulPhase, msgs)) m = f.Add(m, x);
        mv[g.w] = m;
        break;
      }
      case GateOp::kOutput: {
        std::vector<Fq> msgs(parties);
        for (std::size_t i = 0; i < parties; ++i) msgs[i] = masks.r_share[i].at(g.w);
        Fq r = 0;
        for (Fq x : tape.Round(BroadcastTape::kOutputPhase, msgs)) r = f.Add(r, x);
        outputs.push_back(f.Sub(mv.at(g.w), r));
        break;
      }
    }
  }
  if (masked) *masked = mv;
  GmwResult res{std::move(outputs), detail::CollectStats(tape, parties)};
  res.stats.triples_consumed = 0;
  return res;
}

// ---------------------------------------------------------------------------
// Trusted dealer.

// At least `count` N-party triples, produced T = |G| at a time from
// programmed pairwise PCGs.
inline std::vector<TripleShares> DealTriples(const PcgParams& p, std::size_t parties,
                                             std::size_t count, CtrDrbg& rng) {
  std::vector<TripleShares> out(parties);
  do {
    auto batch = NPartyTriples(p, parties, rng);
    for (std::size_t i = 0; i < parties; ++i) {
      out[i].a.insert(out[i].a.end(), batch[i].a.begin(), batch[i].a.end());
      out[i].b.insert(out[i].b.end(), batch[i].b.begin(), batch[i].b.end());
      out[i].c.insert(out[i].c.end(), batch[i].c.begin(), batch[i].c.end());
    }
  } while (out[0].size() < count);
  return out;
}

inline MaskAssignment DealCircuitDep(const PcgParams& p, std::size_t parties,
                                     const Circuit& circuit, CtrDrbg& rng) {
  if (p.q != circuit.q) throw Error(ErrorCode::kParamError, "circuit field differs from q");
  auto triples = DealTriples(p, parties, circuit.mul_count(), rng);
  return DealMasks(circuit, triples, rng);
}

}  // namespace qapcg
