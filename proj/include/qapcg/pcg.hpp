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
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qapcg/algebra.hpp"
#include "qapcg/bits.hpp"
#include "qapcg/dpf.hpp"
#include "qapcg/errors.hpp"
#include "qapcg/group.hpp"
#include "qapcg/noise.hpp"
#include "qapcg/prg.hpp"

namespace qapcg {

// How the t^2 product points of one (i, j) pair are shared.
enum class DomainMode : std::uint8_t {
  // One SPFSS key over all of G.
  kFull = 0,
  // Regular noise only: t = (q-1)^k and the blocks are the cosets of the
  // subgroup formed by the first n-k factors. The product of two block
  // elements lands in a known block, so each of the t^2 DPFs only needs a
  // domain of |G|/t.
  kBlock = 1,
};

inline const char* DomainModeName(DomainMode m) {
  return m == DomainMode::kBlock ? "block" : "full";
}

using ContextSeed = std::array<std::uint8_t, 32>;

struct PcgParams {
  std::uint32_t q = 3;
  unsigned n = 8;  // G = (Z/(q-1))^n
  unsigned c = 2;  // compression factor
  std::size_t t = 8;
  unsigned lambda = kLambda;
  ContextSeed context{};
  NoiseFlavor flavor = NoiseFlavor::kRegular;
  DomainMode mode = DomainMode::kBlock;

  GroupSpec group() const { return GroupSpec::Torus(q, n); }
  std::size_t group_size() const {
    std::size_t s = 1;
    for (unsigned i = 0; i < n; ++i) s *= q - 1;
    return s;
  }

  // log_{q-1}(t) in block mode.
  unsigned block_exponent() const {
    unsigned k = 0;
    std::size_t v = 1;
    while (v < t) {
      v *= q - 1;
      ++k;
    }
    return k;
  }
  std::size_t block_size() const { return group_size() / t; }

  bool operator==(const PcgParams& o) const {
    return q == o.q && n == o.n && c == o.c && t == o.t && lambda == o.lambda &&
           context == o.context && flavor == o.flavor && mode == o.mode;
  }
  bool operator!=(const PcgParams& o) const { return !(*this == o); }
};

inline void ValidateParams(const PcgParams& p) {
  auto fail = [](const std::string& m) { throw Error(ErrorCode::kParamError, m); };
  if (p.q < 3 || p.q >= 65536 || !IsPrime(p.q)) fail("q must be an odd prime below 2^16");
  if (p.n < 1) fail("n must be >= 1");
  if (p.c < 2 || p.c > 16) fail("c must be in [2, 16]");
  if (p.lambda != kLambda) fail("only lambda = 128 is supported");
  double log_size = p.n * std::log2(static_cast<double>(p.q - 1));
  if (log_size > 28) fail("|G| above 2^28 is not supported");
  std::size_t g = p.group_size();
  if (p.t < 1 || p.t > g) fail("t must be in [1, |G|]");
  if (p.mode == DomainMode::kBlock) {
    if (p.flavor != NoiseFlavor::kRegular) fail("block domain mode requires regular noise");
    std::size_t v = 1;
    unsigned k = 0;
    while (v < p.t && k < p.n) {
      v *= p.q - 1;
      ++k;
    }
    if (v != p.t) fail("block domain mode requires t to be a power of q-1 at most |G|");
  }
}

// Public elements a_0 = 1, a_1, ..., a_{c-1}, expanded from the context seed.
inline std::vector<AlgebraElement> DerivePublicA(const PcgParams& p) {
  ValidateParams(p);
  GroupSpec g = p.group();
  std::vector<std::uint8_t> msg = {'q', 'a', 'p', 'c', 'g', '/', 'a'};
  msg.insert(msg.end(), p.context.begin(), p.context.end());
  PutU16(&msg, static_cast<std::uint16_t>(p.q));
  PutU8(&msg, static_cast<std::uint8_t>(p.n));
  PutU8(&msg, static_cast<std::uint8_t>(p.c));
  CtrDrbg drbg(Sha256(msg));
  std::vector<AlgebraElement> a;
  a.push_back(AlgebraElement::One(g));
  for (unsigned i = 1; i < p.c; ++i) {
    AlgebraElement e(g);
    for (auto& x : e.coeffs) x = drbg.UniformField(g.field());
    a.push_back(std::move(e));
  }
  return a;
}

// Per-party sparse noise description: c position lists and c value lists of
// length t each.
struct NoiseLists {
  std::vector<std::vector<std::size_t>> positions;
  std::vector<std::vector<Fq>> values;
};

// Auxiliary input rho fixing a party's x output: either explicit lists or a
// 32-byte seed expanded through the noise sampler.
struct ProgramInput {
  std::optional<std::array<std::uint8_t, 32>> seed;
  NoiseLists lists;

  static ProgramInput FromSeed(const std::array<std::uint8_t, 32>& s) {
    ProgramInput r;
    r.seed = s;
    return r;
  }
  static ProgramInput FromLists(NoiseLists l) {
    ProgramInput r;
    r.lists = std::move(l);
    return r;
  }
};

inline NoiseSpec PcgNoiseSpec(const PcgParams& p) {
  return NoiseSpec{p.t, p.flavor, p.group()};
}

inline NoiseLists SampleNoiseLists(const PcgParams& p, CtrDrbg& rng,
                                   const Quotient* reject_fold = nullptr) {
  NoiseSpec spec = PcgNoiseSpec(p);
  NoiseLists out;
  for (unsigned i = 0; i < p.c; ++i) {
    NoiseTerms terms = reject_fold ? SampleNoiseTermsRejectFold(spec, *reject_fold, rng)
                                   : SampleNoiseTerms(spec, rng);
    out.positions.push_back(std::move(terms.positions));
    out.values.push_back(std::move(terms.values));
  }
  return out;
}

inline void ValidateNoiseLists(const PcgParams& p, const NoiseLists& l) {
  auto fail = [](const std::string& m) { throw Error(ErrorCode::kParamError, m); };
  if (l.positions.size() != p.c || l.values.size() != p.c) fail("expected c noise lists");
  const std::size_t g = p.group_size();
  const std::size_t block = p.mode == DomainMode::kBlock ? p.block_size() : 0;
  for (unsigned i = 0; i < p.c; ++i) {
    if (l.positions[i].size() != p.t || l.values[i].size() != p.t) {
      fail("noise list " + std::to_string(i) + " must have length t");
    }
    for (std::size_t k = 0; k < p.t; ++k) {
      if (l.positions[i][k] >= g) fail("noise position outside G");
      if (l.values[i][k] == 0 || l.values[i][k] >= p.q) fail("noise values must be in F_q^*");
      if (block && l.positions[i][k] / block != k) {
        fail("position " + std::to_string(k) + " of list " + std::to_string(i) +
             " is not in its regular block");
      }
    }
  }
}

inline NoiseLists ExpandProgramInput(const PcgParams& p, const ProgramInput& rho) {
  if (rho.seed) {
    CtrDrbg drbg(*rho.seed);
    return SampleNoiseLists(p, drbg);
  }
  ValidateNoiseLists(p, rho.lists);
  return rho.lists;
}

inline std::vector<SparseElement> NoiseElements(const PcgParams& p, const NoiseLists& l) {
  GroupSpec g = p.group();
  std::vector<SparseElement> e;
  for (unsigned i = 0; i < p.c; ++i) {
    e.push_back(SparseElement::FromTerms(g, l.positions[i], l.values[i]));
  }
  return e;
}

// <a, e> = sum_i a_i e^i
inline AlgebraElement CombineWithA(const std::vector<AlgebraElement>& a,
                                   const std::vector<SparseElement>& e) {
  AlgebraElement x = SparseToDense(e[0]);
  for (std::size_t i = 1; i < a.size(); ++i) x = Add(x, MulSparseDense(e[i], a[i]));
  return x;
}

// phi_sigma(rho): the x output that rho pins down.
inline AlgebraElement ProgrammedX(const PcgParams& p, const ProgramInput& rho) {
  return CombineWithA(DerivePublicA(p), NoiseElements(p, ExpandProgramInput(p, rho)));
}

struct PcgSeed {
  std::uint8_t party = 0;
  PcgParams params;
  std::vector<SpfssKey> keys;  // keys[i * c + j]
  NoiseLists noise;
};

struct OleOutput {
  AlgebraElement x;
  AlgebraElement z;
};

struct ExpandStats {
  PrgStats prg;
  std::uint64_t ring_mults = 0;
};

// Window of DPF (k, l) in block mode: the coset of the product of blocks k
// and l, as a block index.
inline std::size_t BlockProductIndex(const PcgParams& p, std::size_t k, std::size_t l) {
  GroupSpec top(std::vector<std::uint32_t>(p.block_exponent(), p.q - 1), p.q);
  return top.MulIndices(k, l);
}

inline std::pair<PcgSeed, PcgSeed> PcgGen(const PcgParams& params,
                                          const std::optional<ProgramInput>& rho0,
                                          const std::optional<ProgramInput>& rho1,
                                          CtrDrbg& rng,
                                          const Quotient* reject_fold = nullptr) {
  ValidateParams(params);
  GroupSpec g = params.group();
  const PrimeField& f = g.field();
  NoiseLists l0 = rho0 ? ExpandProgramInput(params, *rho0)
                       : SampleNoiseLists(params, rng, reject_fold);
  NoiseLists l1 = rho1 ? ExpandProgramInput(params, *rho1)
                       : SampleNoiseLists(params, rng, reject_fold);
  const unsigned c = params.c;
  const std::size_t t = params.t;

  PcgSeed s0, s1;
  s0.party = 0;
  s1.party = 1;
  s0.params = s1.params = params;
  for (unsigned i = 0; i < c; ++i) {
    for (unsigned j = 0; j < c; ++j) {
      std::vector<std::uint64_t> points;
      std::vector<Fq> values;
      points.reserve(t * t);
      values.reserve(t * t);
      for (std::size_t k = 0; k < t; ++k) {
        for (std::size_t l = 0; l < t; ++l) {
          points.push_back(g.MulIndices(l0.positions[i][k], l1.positions[j][l]));
          values.push_back(f.Mul(l0.values[i][k], l1.values[j][l]));
        }
      }
      std::uint64_t domain = g.size();
      if (params.mode == DomainMode::kBlock) {
        domain = params.block_size();
        for (auto& pt : points) pt %= domain;
      }
      auto [k0, k1] = SpfssGen(points, values, domain, f, rng);
      s0.keys.push_back(std::move(k0));
      s1.keys.push_back(std::move(k1));
    }
  }
  s0.noise = std::move(l0);
  s1.noise = std::move(l1);
  return {std::move(s0), std::move(s1)};
}

inline void CheckSeed(const PcgSeed& seed, const PcgParams& params) {
  if (seed.params != params) throw Error(ErrorCode::kSeedMismatch, "seed parameters differ");
  if (seed.party > 1) throw Error(ErrorCode::kSeedMismatch, "bad party index");
  const std::size_t c = params.c;
  if (seed.keys.size() != c * c) throw Error(ErrorCode::kSeedMismatch, "expected c^2 keys");
  const std::size_t domain =
      params.mode == DomainMode::kBlock ? params.block_size() : params.group_size();
  for (const auto& k : seed.keys) {
    if (k.domain != domain || k.q != params.q || k.party != seed.party ||
        k.keys.size() != params.t * params.t) {
      throw Error(ErrorCode::kSeedMismatch, "SPFSS key does not match parameters");
    }
  }
  try {
    ValidateNoiseLists(params, seed.noise);
  } catch (const Error& e) {
    throw Error(ErrorCode::kSeedMismatch, e.what());
  }
}

// Full evaluation of the (i, j) sharing of e_0^i * e_1^j as a dense vector.
inline std::vector<Fq> ExpandCrossTerm(const SpfssKey& key, const PcgParams& params,
                                       PrgStats* stats) {
  const PrimeField f(params.q);
  std::vector<Fq> u(params.group_size(), 0);
  if (params.mode == DomainMode::kFull) {
    SpfssFullEvalAccumulate(key, f, u.data(), stats);
    return u;
  }
  const std::size_t t = params.t, block = params.block_size();
  GroupSpec top(std::vector<std::uint32_t>(params.block_exponent(), params.q - 1), params.q);
  for (std::size_t k = 0; k < t; ++k) {
    for (std::size_t l = 0; l < t; ++l) {
      std::size_t window = top.MulIndices(k, l) * block;
      DpfFullEvalAccumulate(key.keys[k * t + l], f, u.data() + window, stats);
    }
  }
  return u;
}

inline OleOutput PcgExpand(const PcgSeed& seed, const PcgParams& params,
                           ExpandStats* stats = nullptr) {
  CheckSeed(seed, params);
  GroupSpec g = params.group();
  const PrimeField& f = g.field();
  const unsigned c = params.c;
  auto a = DerivePublicA(params);
  auto e = NoiseElements(params, seed.noise);
  PrgStats prg;
  std::uint64_t mults = 0;

  AlgebraElement x = CombineWithA(a, e);
  mults += c;

  // z = sum_{i,j} a_i a_j u^{ij}, accumulated in the evaluation domain.
  std::vector<std::vector<Fq>> a_hat;
  for (const auto& ai : a) a_hat.push_back(DftForward(ai));
  std::vector<Fq> z_hat(g.size(), 0);
  for (unsigned i = 0; i < c; ++i) {
    for (unsigned j = 0; j < c; ++j) {
      AlgebraElement u(g, ExpandCrossTerm(seed.keys[i * c + j], params, &prg));
      auto u_hat = DftForward(u);
      for (std::size_t k = 0; k < g.size(); ++k) {
        Fq aa = f.Mul(a_hat[i][k], a_hat[j][k]);
        z_hat[k] = f.Add(z_hat[k], f.Mul(aa, u_hat[k]));
      }
      ++mults;
    }
  }
  AlgebraElement z = DftInverse(g, std::move(z_hat));
  if (stats) {
    stats->prg.calls += prg.calls;
    stats->ring_mults += mults;
  }
  return OleOutput{std::move(x), std::move(z)};
}

inline bool VerifyOle(const OleOutput& o0, const OleOutput& o1) {
  if (o0.x.spec != o1.x.spec || o0.z.spec != o1.z.spec || o0.x.spec != o0.z.spec) return false;
  return Add(o0.z, o1.z) == Mul(o0.x, o1.x);
}

struct ScalarOle {
  Fq x0, x1, z0, z1;
};

// Maps one OLE over F_q[G] to |G| OLEs over F_q through the transform.
inline std::vector<ScalarOle> CrtSplit(const OleOutput& o0, const OleOutput& o1) {
  auto x0 = DftForward(o0.x), x1 = DftForward(o1.x);
  auto z0 = DftForward(o0.z), z1 = DftForward(o1.z);
  std::vector<ScalarOle> out(x0.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = {x0[k], x1[k], z0[k], z1[k]};
  return out;
}

// Given one party's output, samples a matching output for the other party.
inline OleOutput RSample(std::uint8_t sigma, const OleOutput& mine, CtrDrbg& rng) {
  const GroupSpec& g = mine.x.spec;
  AlgebraElement other(g);
  for (auto& v : other.coeffs) v = rng.UniformField(g.field());
  AlgebraElement prod = Mul(mine.x, other);
  (void)sigma;  // the product is symmetric, so both parties use the same rule
  return OleOutput{std::move(other), Sub(prod, mine.z)};
}

// ---------------------------------------------------------------------------
// Seed and output files.

inline void WriteParams(const PcgParams& p, std::vector<std::uint8_t>* out) {
  PutU16(out, static_cast<std::uint16_t>(p.q));
  PutU8(out, static_cast<std::uint8_t>(p.n));
  PutU8(out, static_cast<std::uint8_t>(p.c));
  PutU32(out, static_cast<std::uint32_t>(p.t));
  PutU16(out, static_cast<std::uint16_t>(p.lambda));
  out->insert(out->end(), p.context.begin(), p.context.end());
  PutU8(out, static_cast<std::uint8_t>(p.flavor));
  PutU8(out, static_cast<std::uint8_t>(p.mode));
}

inline PcgParams ReadParams(ByteReader* in) {
  PcgParams p;
  p.q = in->U16();
  p.n = in->U8();
  p.c = in->U8();
  p.t = in->U32();
  p.lambda = in->U16();
  in->Bytes(p.context.data(), p.context.size());
  std::uint8_t fl = in->U8(), mode = in->U8();
  if (fl > 2 || mode > 1) throw Error(ErrorCode::kFormatError, "bad flavor or mode");
  p.flavor = static_cast<NoiseFlavor>(fl);
  p.mode = static_cast<DomainMode>(mode);
  return p;
}

inline std::array<std::uint8_t, 32> ParamsHash(const PcgParams& p) {
  std::vector<std::uint8_t> buf;
  WriteParams(p, &buf);
  return Sha256(buf);
}

constexpr std::uint16_t kSeedFormatVersion = 1;

// "QAPC", version u16, params, party u8, the c^2 SPFSS records, then the
// position lists (ceil(log2 |G|) bits each) and value lists
// (ceil(log2 q) bits each), bit-packed.
inline std::vector<std::uint8_t> SerializeSeed(const PcgSeed& s) {
  std::vector<std::uint8_t> out;
  PutMagic(&out, "QAPC");
  PutU16(&out, kSeedFormatVersion);
  WriteParams(s.params, &out);
  PutU8(&out, s.party);
  for (const auto& k : s.keys) SerializeSpfssKey(k, &out);
  BitWriter bw(&out);
  const unsigned pw = CeilLog2(s.params.group_size()), vw = CeilLog2(s.params.q);
  for (const auto& list : s.noise.positions) {
    for (auto x : list) bw.Write(x, pw);
  }
  for (const auto& list : s.noise.values) {
    for (auto v : list) bw.Write(v, vw);
  }
  return out;
}

inline PcgSeed DeserializeSeed(const std::vector<std::uint8_t>& bytes) {
  ByteReader in(bytes);
  in.ExpectMagic("QAPC");
  if (in.U16() != kSeedFormatVersion) throw Error(ErrorCode::kFormatError, "unknown version");
  PcgSeed s;
  s.params = ReadParams(&in);
  ValidateParams(s.params);
  s.party = in.U8();
  const unsigned c = s.params.c;
  for (unsigned i = 0; i < c * c; ++i) s.keys.push_back(DeserializeSpfssKey(&in));
  BitReader br = in.Bits();
  const unsigned pw = CeilLog2(s.params.group_size()), vw = CeilLog2(s.params.q);
  s.noise.positions.assign(c, std::vector<std::size_t>(s.params.t));
  s.noise.values.assign(c, std::vector<Fq>(s.params.t));
  for (auto& list : s.noise.positions) {
    for (auto& x : list) x = static_cast<std::size_t>(br.Read(pw));
  }
  for (auto& list : s.noise.values) {
    for (auto& v : list) v = static_cast<Fq>(br.Read(vw));
  }
  in.Skip(br.byte_position());
  if (in.remaining() != 0) throw Error(ErrorCode::kFormatError, "trailing bytes in seed");
  return s;
}

// "QAPO", party u8, SHA-256 of the params block, x, z.
inline std::vector<std::uint8_t> SerializeOutput(std::uint8_t party, const PcgParams& p,
                                                 const OleOutput& o) {
  std::vector<std::uint8_t> out;
  PutMagic(&out, "QAPO");
  PutU8(&out, party);
  auto h = ParamsHash(p);
  out.insert(out.end(), h.begin(), h.end());
  SerializeElement(o.x, &out);
  SerializeElement(o.z, &out);
  return out;
}

struct OutputFile {
  std::uint8_t party;
  std::array<std::uint8_t, 32> params_hash;
  OleOutput ole;
};

inline OutputFile DeserializeOutput(const std::vector<std::uint8_t>& bytes) {
  ByteReader in(bytes);
  in.ExpectMagic("QAPO");
  std::uint8_t party = in.U8();
  std::array<std::uint8_t, 32> h{};
  in.Bytes(h.data(), h.size());
  AlgebraElement x = DeserializeElement(&in);
  AlgebraElement z = DeserializeElement(&in);
  return OutputFile{party, h, OleOutput{std::move(x), std::move(z)}};
}

}  // namespace qapcg
