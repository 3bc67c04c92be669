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
#include <cstring>
#include <string>
#include <vector>

#include "qapcg/errors.hpp"

namespace qapcg {

// Number of bits needed to write any value in [0, n), i.e. ceil(log2(n)).
// Returns 0 for n <= 1.
inline unsigned CeilLog2(std::uint64_t n) {
  unsigned r = 0;
  while ((std::uint64_t{1} << r) < n) ++r;
  return r;
}

// Little-endian bit packing. Bit i of the stream lives in byte i / 8 at
// position i % 8; multi-bit fields are written least significant bit first.
class BitWriter {
 public:
  explicit BitWriter(std::vector<std::uint8_t>* out) : out_(out) {}

  void Write(std::uint64_t value, unsigned nbits) {
    for (unsigned i = 0; i < nbits; ++i) {
      if (bit_ == 0) out_->push_back(0);
      out_->back() |= static_cast<std::uint8_t>(((value >> i) & 1) << bit_);
      bit_ = (bit_ + 1) & 7;
    }
    bits_ += nbits;
  }

  void WriteBytes(const std::uint8_t* data, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) Write(data[i], 8);
  }

  // Pads with zero bits up to the next byte boundary.
  void Align() { bit_ = 0; }

  std::size_t bits_written() const { return bits_; }

 private:
  std::vector<std::uint8_t>* out_;
  unsigned bit_ = 0;
  std::size_t bits_ = 0;
};

class BitReader {
 public:
  BitReader(const std::uint8_t* data, std::size_t size)
      : data_(data), size_(size) {}

  std::uint64_t Read(unsigned nbits) {
    std::uint64_t v = 0;
    for (unsigned i = 0; i < nbits; ++i) {
      std::size_t byte = pos_ >> 3;
      if (byte >= size_) throw Error(ErrorCode::kFormatError, "truncated input");
      v |= static_cast<std::uint64_t>((data_[byte] >> (pos_ & 7)) & 1) << i;
      ++pos_;
    }
    return v;
  }

  void ReadBytes(std::uint8_t* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<std::uint8_t>(Read(8));
  }

  void Align() { pos_ = (pos_ + 7) & ~std::size_t{7}; }

  std::size_t byte_position() const { return (pos_ + 7) >> 3; }
  std::size_t bit_position() const { return pos_; }

 private:
  const std::uint8_t* data_;
  std::size_t size_;
  std::size_t pos_ = 0;
};

// Byte-aligned little-endian helpers for headers.
inline void PutU8(std::vector<std::uint8_t>* out, std::uint8_t v) { out->push_back(v); }

inline void PutU16(std::vector<std::uint8_t>* out, std::uint16_t v) {
  out->push_back(static_cast<std::uint8_t>(v));
  out->push_back(static_cast<std::uint8_t>(v >> 8));
}

inline void PutU32(std::vector<std::uint8_t>* out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out->push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

inline void PutMagic(std::vector<std::uint8_t>* out, const char magic[4]) {
  out->insert(out->end(), magic, magic + 4);
}

class ByteReader {
 public:
  ByteReader(const std::uint8_t* data, std::size_t size) : data_(data), size_(size) {}
  explicit ByteReader(const std::vector<std::uint8_t>& v) : ByteReader(v.data(), v.size()) {}

  std::uint8_t U8() {
    Need(1);
    return data_[pos_++];
  }
  std::uint16_t U16() {
    Need(2);
    std::uint16_t v = static_cast<std::uint16_t>(data_[pos_] | (data_[pos_ + 1] << 8));
    pos_ += 2;
    return v;
  }
  std::uint32_t U32() {
    Need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(data_[pos_ + i]) << (8 * i);
    pos_ += 4;
    return v;
  }
  void Bytes(std::uint8_t* out, std::size_t n) {
    Need(n);
    std::memcpy(out, data_ + pos_, n);
    pos_ += n;
  }
  void ExpectMagic(const char magic[4]) {
    Need(4);
    if (std::memcmp(data_ + pos_, magic, 4) != 0) {
      throw Error(ErrorCode::kFormatError, std::string("bad magic, expected ") +
                                               std::string(magic, 4));
    }
    pos_ += 4;
  }

  // Hands the remaining bytes to a bit reader; call Skip() afterwards with
  // the number of bytes it consumed.
  BitReader Bits() const { return BitReader(data_ + pos_, size_ - pos_); }
  void Skip(std::size_t n) {
    Need(n);
    pos_ += n;
  }

  std::size_t position() const { return pos_; }
  std::size_t remaining() const { return size_ - pos_; }

 private:
  void Need(std::size_t n) const {
    if (size_ - pos_ < n) throw Error(ErrorCode::kFormatError, "truncated input");
  }

  const std::uint8_t* data_;
  std::size_t size_;
  std::size_t pos_ = 0;
};

}  // namespace qapcg
