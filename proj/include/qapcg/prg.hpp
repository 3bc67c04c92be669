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

#include <openssl/evp.h>

#include <array>
#include <cstddef>
#include <cstdint>
#include <cstring>
#include <limits>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "qapcg/field.hpp"

namespace qapcg {

constexpr unsigned kLambda = 128;
constexpr std::size_t kSeedBytes = kLambda / 8;

using Block = std::array<std::uint8_t, kSeedBytes>;

inline Block XorBlock(const Block& a, const Block& b) {
  Block r;
  for (std::size_t i = 0; i < kSeedBytes; ++i) r[i] = a[i] ^ b[i];
  return r;
}

// Running count of PRG invocations. One length-doubling expansion is one
// call; each 128-bit block drawn during output conversion is one call.
struct PrgStats {
  std::uint64_t calls = 0;
};

namespace detail {

struct CipherCtxDeleter {
  void operator()(EVP_CIPHER_CTX* c) const { EVP_CIPHER_CTX_free(c); }
};
using CipherCtx = std::unique_ptr<EVP_CIPHER_CTX, CipherCtxDeleter>;

inline void CheckSsl(int ok, const char* what) {
  if (ok != 1) throw std::runtime_error(std::string("OpenSSL failure: ") + what);
}

}  // namespace detail

// Fixed-key AES-128 used as a tweakable correlation-robust hash:
//   H_j(s) = AES_K(s ^ j) ^ (s ^ j)
// where j is xored into the low 8 bytes of the seed, little-endian.
class FixedKeyAes {
 public:
  FixedKeyAes() : ctx_(EVP_CIPHER_CTX_new()) {
    // Digits of pi; any public constant works.
    static const std::uint8_t kKey[16] = {0x24, 0x3f, 0x6a, 0x88, 0x85, 0xa3, 0x08, 0xd3,
                                          0x13, 0x19, 0x8a, 0x2e, 0x03, 0x70, 0x73, 0x44};
    detail::CheckSsl(EVP_EncryptInit_ex(ctx_.get(), EVP_aes_128_ecb(), nullptr, kKey, nullptr),
                     "aes init");
    EVP_CIPHER_CTX_set_padding(ctx_.get(), 0);
  }

  // out[i] = H_{tweaks[i]}(in[i]) for i < n.
  void Hash(const Block* in, const std::uint64_t* tweaks, Block* out, std::size_t n) {
    buf_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      buf_[i] = in[i];
      for (int b = 0; b < 8; ++b) buf_[i][b] ^= static_cast<std::uint8_t>(tweaks[i] >> (8 * b));
    }
    int outl = 0;
    constexpr std::size_t kChunk = 1 << 16;
    for (std::size_t off = 0; off < n; off += kChunk) {
      std::size_t m = std::min(kChunk, n - off);
      detail::CheckSsl(EVP_EncryptUpdate(ctx_.get(), out[off].data(), &outl, buf_[off].data(),
                                         static_cast<int>(m * kSeedBytes)),
                       "aes encrypt");
    }
    for (std::size_t i = 0; i < n; ++i) out[i] = XorBlock(out[i], buf_[i]);
  }

  static FixedKeyAes& Instance() {
    thread_local FixedKeyAes aes;
    return aes;
  }

 private:
  detail::CipherCtx ctx_;
  std::vector<Block> buf_;
};

// G : {0,1}^128 -> {0,1}^258, split as (left seed, right seed, t_L, t_R).
struct PrgOutput {
  Block left;
  Block right;
  bool t_left;
  bool t_right;
};

// Output bit length of one expansion.
constexpr unsigned kPrgOutputBits = 2 * kLambda + 2;

// Expands n seeds at once (tweaks 0, 1, 2 per seed).
inline void PrgExpandBatch(const Block* seeds, std::size_t n, PrgOutput* out,
                           PrgStats* stats = nullptr) {
  std::vector<Block> in(3 * n), res(3 * n);
  std::vector<std::uint64_t> tw(3 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (int j = 0; j < 3; ++j) {
      in[3 * i + j] = seeds[i];
      tw[3 * i + j] = static_cast<std::uint64_t>(j);
    }
  }
  FixedKeyAes::Instance().Hash(in.data(), tw.data(), res.data(), 3 * n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i].left = res[3 * i];
    out[i].right = res[3 * i + 1];
    out[i].t_left = res[3 * i + 2][0] & 1;
    out[i].t_right = (res[3 * i + 2][0] >> 1) & 1;
  }
  if (stats) stats->calls += n;
}

inline PrgOutput PrgExpand(const Block& seed, PrgStats* stats = nullptr) {
  PrgOutput o;
  PrgExpandBatch(&seed, 1, &o, stats);
  return o;
}

// Maps seeds to elements of F_q. Each block (tweaks 3, 4, ...) yields eight
// 16-bit chunks; a chunk v is accepted if v < 2^16 - (2^16 mod q) and
// mapped to v mod q, so the result is exactly uniform when the block is.
inline void PrgConvertBatch(const Block* seeds, std::size_t n, const PrimeField& f, Fq* out,
                            PrgStats* stats = nullptr) {
  const std::uint32_t limit = 65536u - 65536u % f.q();
  std::vector<Block> res(n);
  std::vector<std::uint64_t> tw(n, 3);
  FixedKeyAes::Instance().Hash(seeds, tw.data(), res.data(), n);
  std::uint64_t calls = n;
  for (std::size_t i = 0; i < n; ++i) {
    Block blk = res[i];
    std::uint64_t tweak = 3;
    for (;;) {
      bool done = false;
      for (int c = 0; c < 8; ++c) {
        std::uint32_t v = blk[2 * c] | (static_cast<std::uint32_t>(blk[2 * c + 1]) << 8);
        if (v < limit) {
          out[i] = v % f.q();
          done = true;
          break;
        }
      }
      if (done) break;
      ++tweak;
      FixedKeyAes::Instance().Hash(&seeds[i], &tweak, &blk, 1);
      ++calls;
    }
  }
  if (stats) stats->calls += calls;
}

inline Fq PrgConvert(const Block& seed, const PrimeField& f, PrgStats* stats = nullptr) {
  Fq v;
  PrgConvertBatch(&seed, 1, f, &v, stats);
  return v;
}

// Deterministic random bit generator: AES-128-CTR keyed with the first 16
// bytes of a 32-byte seed, the last 16 bytes being the initial counter.
// Satisfies UniformRandomBitGenerator.
class CtrDrbg {
 public:
  using result_type = std::uint64_t;
  using SeedBytes = std::array<std::uint8_t, 32>;

  explicit CtrDrbg(const SeedBytes& seed) : ctx_(EVP_CIPHER_CTX_new()) {
    detail::CheckSsl(EVP_EncryptInit_ex(ctx_.get(), EVP_aes_128_ctr(), nullptr, seed.data(),
                                        seed.data() + 16),
                     "ctr init");
  }

  // Seeds from a 64-bit value (placed little-endian in the first 8 bytes).
  explicit CtrDrbg(std::uint64_t seed) : CtrDrbg(SeedFromU64(seed)) {}

  static SeedBytes SeedFromU64(std::uint64_t v) {
    SeedBytes s{};
    for (int i = 0; i < 8; ++i) s[i] = static_cast<std::uint8_t>(v >> (8 * i));
    return s;
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    std::uint8_t b[8];
    Fill(b, 8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    return v;
  }

  void Fill(std::uint8_t* out, std::size_t n) {
    while (n) {
      if (pos_ == pool_.size()) Refill();
      std::size_t k = std::min(n, pool_.size() - pos_);
      std::memcpy(out, pool_.data() + pos_, k);
      pos_ += k;
      out += k;
      n -= k;
    }
  }

  Block NextBlock() {
    Block b;
    Fill(b.data(), b.size());
    return b;
  }

  // Uniform integer in [0, n) by rejection; n >= 1.
  std::uint64_t Below(std::uint64_t n) {
    if (n <= 1) return 0;
    const std::uint64_t limit = max() - (max() % n + 1) % n;
    for (;;) {
      std::uint64_t v = (*this)();
      if (v <= limit) return v % n;
    }
  }

  Fq UniformField(const PrimeField& f) { return static_cast<Fq>(Below(f.q())); }
  Fq UniformNonzero(const PrimeField& f) { return static_cast<Fq>(1 + Below(f.q() - 1)); }

  // Bernoulli(1/2)
  bool Bit() { return Below(2) == 1; }

 private:
  void Refill() {
    static const std::uint8_t zeros[4096] = {};
    pool_.resize(sizeof(zeros));
    int outl = 0;
    detail::CheckSsl(EVP_EncryptUpdate(ctx_.get(), pool_.data(), &outl, zeros,
                                       static_cast<int>(sizeof(zeros))),
                     "ctr encrypt");
    pos_ = 0;
  }

  detail::CipherCtx ctx_;
  std::vector<std::uint8_t> pool_;
  std::size_t pos_ = 0;
};

inline std::array<std::uint8_t, 32> Sha256(const std::uint8_t* data, std::size_t n) {
  std::array<std::uint8_t, 32> out{};
  unsigned int len = 0;
  detail::CheckSsl(EVP_Digest(data, n, out.data(), &len, EVP_sha256(), nullptr), "sha256");
  return out;
}

inline std::array<std::uint8_t, 32> Sha256(const std::vector<std::uint8_t>& v) {
  return Sha256(v.data(), v.size());
}

}  // namespace qapcg
