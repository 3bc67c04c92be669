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

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "qapcg/bits.hpp"
#include "qapcg/errors.hpp"
#include "qapcg/field.hpp"
#include "qapcg/prg.hpp"

namespace qapcg {

// Distributed point function in the GGM-tree style of Boyle, Gilboa and
// Ishai (CCS'16), with outputs in the additive group of F_q. Paths are read
// from the most significant bit of the point.

struct CorrectionWord {
  Block seed;
  bool t_left;
  bool t_right;
};

struct DpfKey {
  std::uint8_t party = 0;
  std::uint32_t domain = 1;
  std::uint32_t q = 3;
  Block root{};
  std::vector<CorrectionWord> cws;  // one per tree level
  Fq final_cw = 0;

  unsigned depth() const { return static_cast<unsigned>(cws.size()); }
};

inline unsigned DpfDepth(std::uint64_t domain) { return CeilLog2(domain); }

// Bit length of the key material (root seed, correction words, output
// correction). This is what the key-size bound counts.
inline std::size_t DpfPayloadBits(std::uint64_t domain, std::uint32_t q) {
  return std::size_t{DpfDepth(domain)} * (kLambda + 2) + kLambda + CeilLog2(q);
}

inline std::pair<DpfKey, DpfKey> DpfGen(std::uint64_t alpha, Fq beta, std::uint64_t domain,
                                        const PrimeField& f, CtrDrbg& rng) {
  if (domain == 0 || domain > (std::uint64_t{1} << 32) || alpha >= domain) {
    throw Error(ErrorCode::kInvalidPoint, "point " + std::to_string(alpha) +
                                              " outside domain " + std::to_string(domain));
  }
  if (beta == 0 || beta >= f.q()) throw Error(ErrorCode::kInvalidPoint, "beta must be nonzero");
  const unsigned depth = DpfDepth(domain);
  DpfKey k0, k1;
  k0.party = 0;
  k1.party = 1;
  k0.domain = k1.domain = static_cast<std::uint32_t>(domain);
  k0.q = k1.q = f.q();
  k0.root = rng.NextBlock();
  k1.root = rng.NextBlock();

  Block s[2] = {k0.root, k1.root};
  bool t[2] = {false, true};
  for (unsigned level = 0; level < depth; ++level) {
    bool bit = (alpha >> (depth - 1 - level)) & 1;
    PrgOutput e[2] = {PrgExpand(s[0]), PrgExpand(s[1])};
    const Block& lose0 = bit ? e[0].left : e[0].right;
    const Block& lose1 = bit ? e[1].left : e[1].right;
    CorrectionWord cw;
    cw.seed = XorBlock(lose0, lose1);
    cw.t_left = e[0].t_left ^ e[1].t_left ^ bit ^ 1;
    cw.t_right = e[0].t_right ^ e[1].t_right ^ bit;
    bool t_keep_cw = bit ? cw.t_right : cw.t_left;
    for (int b = 0; b < 2; ++b) {
      Block keep = bit ? e[b].right : e[b].left;
      bool t_keep = bit ? e[b].t_right : e[b].t_left;
      s[b] = t[b] ? XorBlock(keep, cw.seed) : keep;
      t[b] = t_keep ^ (t[b] & t_keep_cw);
    }
    k0.cws.push_back(cw);
    k1.cws.push_back(cw);
  }
  Fq c0 = PrgConvert(s[0], f), c1 = PrgConvert(s[1], f);
  Fq cw = f.Add(f.Sub(beta, c0), c1);
  if (t[1]) cw = f.Neg(cw);
  k0.final_cw = k1.final_cw = cw;
  return {std::move(k0), std::move(k1)};
}

inline void CheckKeyField(const DpfKey& key, const PrimeField& f) {
  if (key.q != f.q()) throw Error(ErrorCode::kSpecMismatch, "key field does not match");
}

inline Fq DpfLeafValue(const DpfKey& key, const Block& s, bool t, const PrimeField& f,
                       PrgStats* stats) {
  Fq y = PrgConvert(s, f, stats);
  if (t) y = f.Add(y, key.final_cw);
  return key.party ? f.Neg(y) : y;
}

inline Fq DpfEval(const DpfKey& key, std::uint64_t x, const PrimeField& f,
                  PrgStats* stats = nullptr) {
  CheckKeyField(key, f);
  if (x >= key.domain) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "x = " + std::to_string(x) + " outside domain " + std::to_string(key.domain));
  }
  const unsigned depth = key.depth();
  Block s = key.root;
  bool t = key.party != 0;
  for (unsigned level = 0; level < depth; ++level) {
    bool bit = (x >> (depth - 1 - level)) & 1;
    PrgOutput e = PrgExpand(s, stats);
    const CorrectionWord& cw = key.cws[level];
    Block next = bit ? e.right : e.left;
    bool tn = bit ? e.t_right : e.t_left;
    if (t) {
      next = XorBlock(next, cw.seed);
      tn ^= bit ? cw.t_right : cw.t_left;
    }
    s = next;
    t = tn;
  }
  return DpfLeafValue(key, s, t, f, stats);
}

// Evaluates on the whole domain and adds the shares into acc[0..domain).
inline void DpfFullEvalAccumulate(const DpfKey& key, const PrimeField& f, Fq* acc,
                                  PrgStats* stats = nullptr) {
  CheckKeyField(key, f);
  const unsigned depth = key.depth();
  const std::uint64_t n = key.domain;
  std::vector<Block> seeds{key.root}, next;
  std::vector<std::uint8_t> ts{static_cast<std::uint8_t>(key.party != 0)}, next_t;
  std::vector<PrgOutput> exp;
  for (unsigned level = 0; level < depth; ++level) {
    // Children at level+1 that still cover part of [0, n).
    std::uint64_t span = std::uint64_t{1} << (depth - level - 1);
    std::uint64_t children = (n + span - 1) / span;
    exp.resize(seeds.size());
    PrgExpandBatch(seeds.data(), seeds.size(), exp.data(), stats);
    const CorrectionWord& cw = key.cws[level];
    next.resize(children);
    next_t.resize(children);
    for (std::uint64_t c = 0; c < children; ++c) {
      const PrgOutput& e = exp[c >> 1];
      bool right = c & 1;
      Block s = right ? e.right : e.left;
      bool t = right ? e.t_right : e.t_left;
      if (ts[c >> 1]) {
        s = XorBlock(s, cw.seed);
        t ^= right ? cw.t_right : cw.t_left;
      }
      next[c] = s;
      next_t[c] = t;
    }
    seeds.swap(next);
    ts.swap(next_t);
  }
  std::vector<Fq> conv(n);
  PrgConvertBatch(seeds.data(), n, f, conv.data(), stats);
  for (std::uint64_t x = 0; x < n; ++x) {
    Fq y = conv[x];
    if (ts[x]) y = f.Add(y, key.final_cw);
    if (key.party) y = f.Neg(y);
    acc[x] = f.Add(acc[x], y);
  }
}

inline std::vector<Fq> DpfFullEval(const DpfKey& key, const PrimeField& f,
                                   PrgStats* stats = nullptr) {
  std::vector<Fq> out(key.domain, 0);
  DpfFullEvalAccumulate(key, f, out.data(), stats);
  return out;
}

// Key payload, bit-packed: root seed, then per level (seed, t_L, t_R), then
// the output correction in ceil(log2 q) bits.
inline void WriteDpfPayload(const DpfKey& k, BitWriter* bw) {
  bw->WriteBytes(k.root.data(), k.root.size());
  for (const auto& cw : k.cws) {
    bw->WriteBytes(cw.seed.data(), cw.seed.size());
    bw->Write(cw.t_left, 1);
    bw->Write(cw.t_right, 1);
  }
  bw->Write(k.final_cw, CeilLog2(k.q));
}

inline DpfKey ReadDpfPayload(BitReader* br, std::uint8_t party, std::uint32_t domain,
                             std::uint32_t q) {
  DpfKey k;
  k.party = party;
  k.domain = domain;
  k.q = q;
  br->ReadBytes(k.root.data(), k.root.size());
  k.cws.resize(DpfDepth(domain));
  for (auto& cw : k.cws) {
    br->ReadBytes(cw.seed.data(), cw.seed.size());
    cw.t_left = br->Read(1);
    cw.t_right = br->Read(1);
  }
  k.final_cw = static_cast<Fq>(br->Read(CeilLog2(q)));
  if (k.final_cw >= q) throw Error(ErrorCode::kFormatError, "output correction out of range");
  return k;
}

// Exact bit length of the packed payload of a key.
inline std::size_t DpfKeyBits(const DpfKey& k) {
  std::vector<std::uint8_t> scratch;
  BitWriter bw(&scratch);
  WriteDpfPayload(k, &bw);
  return bw.bits_written();
}

// Standalone key: "DPF1", party u8, N u32, q u16, then the payload.
inline std::vector<std::uint8_t> SerializeDpfKey(const DpfKey& k) {
  std::vector<std::uint8_t> out;
  PutMagic(&out, "DPF1");
  PutU8(&out, k.party);
  PutU32(&out, k.domain);
  PutU16(&out, static_cast<std::uint16_t>(k.q));
  BitWriter bw(&out);
  WriteDpfPayload(k, &bw);
  return out;
}

inline DpfKey DeserializeDpfKey(ByteReader* in) {
  in->ExpectMagic("DPF1");
  std::uint8_t party = in->U8();
  std::uint32_t n = in->U32();
  std::uint32_t q = in->U16();
  if (party > 1 || n == 0) throw Error(ErrorCode::kFormatError, "bad DPF header");
  BitReader br = in->Bits();
  DpfKey k = ReadDpfPayload(&br, party, n, q);
  in->Skip(br.byte_position());
  return k;
}

inline DpfKey DeserializeDpfKey(const std::vector<std::uint8_t>& bytes) {
  ByteReader r(bytes);
  return DeserializeDpfKey(&r);
}

// ---------------------------------------------------------------------------
// Sums of point functions, realized as independent DPFs on one domain.

struct SpfssKey {
  std::uint8_t party = 0;
  std::uint32_t domain = 1;
  std::uint32_t q = 3;
  std::vector<DpfKey> keys;
};

inline std::pair<SpfssKey, SpfssKey> SpfssGen(const std::vector<std::uint64_t>& points,
                                              const std::vector<Fq>& values,
                                              std::uint64_t domain, const PrimeField& f,
                                              CtrDrbg& rng) {
  if (points.size() != values.size()) {
    throw Error(ErrorCode::kLengthMismatch, "points and values differ in length");
  }
  if (domain == 0 || domain > (std::uint64_t{1} << 32)) {
    throw Error(ErrorCode::kInvalidPoint, "bad domain size");
  }
  SpfssKey k0, k1;
  k0.party = 0;
  k1.party = 1;
  k0.domain = k1.domain = static_cast<std::uint32_t>(domain);
  k0.q = k1.q = f.q();
  k0.keys.reserve(points.size());
  k1.keys.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    auto [a, b] = DpfGen(points[i], values[i], domain, f, rng);
    k0.keys.push_back(std::move(a));
    k1.keys.push_back(std::move(b));
  }
  return {std::move(k0), std::move(k1)};
}

inline void SpfssFullEvalAccumulate(const SpfssKey& key, const PrimeField& f, Fq* acc,
                                    PrgStats* stats = nullptr) {
  for (const auto& k : key.keys) DpfFullEvalAccumulate(k, f, acc, stats);
}

inline std::vector<Fq> SpfssFullEval(const SpfssKey& key, const PrimeField& f,
                                     PrgStats* stats = nullptr) {
  std::vector<Fq> out(key.domain, 0);
  SpfssFullEvalAccumulate(key, f, out.data(), stats);
  return out;
}

// "SPF1", party u8, N u32, q u16, count u32, then the DPF payloads packed
// back to back and padded to a byte boundary.
inline void SerializeSpfssKey(const SpfssKey& k, std::vector<std::uint8_t>* out) {
  PutMagic(out, "SPF1");
  PutU8(out, k.party);
  PutU32(out, k.domain);
  PutU16(out, static_cast<std::uint16_t>(k.q));
  PutU32(out, static_cast<std::uint32_t>(k.keys.size()));
  BitWriter bw(out);
  for (const auto& d : k.keys) WriteDpfPayload(d, &bw);
}

inline std::vector<std::uint8_t> SerializeSpfssKey(const SpfssKey& k) {
  std::vector<std::uint8_t> out;
  SerializeSpfssKey(k, &out);
  return out;
}

inline SpfssKey DeserializeSpfssKey(ByteReader* in) {
  in->ExpectMagic("SPF1");
  SpfssKey k;
  k.party = in->U8();
  k.domain = in->U32();
  k.q = in->U16();
  std::uint32_t count = in->U32();
  if (k.party > 1 || k.domain == 0) throw Error(ErrorCode::kFormatError, "bad SPF header");
  BitReader br = in->Bits();
  k.keys.reserve(count);
  for (std::uint32_t i = 0; i < count; ++i) {
    k.keys.push_back(ReadDpfPayload(&br, k.party, k.domain, k.q));
  }
  in->Skip(br.byte_position());
  return k;
}

}  // namespace qapcg
