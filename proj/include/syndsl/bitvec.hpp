#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "syndsl/error.hpp"

namespace syndsl {

// Unsigned 128-bit limb. Widths above kMaxWidth are rejected so that every
// operation stays exact.
using u128 = unsigned __int128;

inline constexpr unsigned kMaxWidth = 128;

enum class LogicKind { And, Or, Xor, Not };

std::string_view logic_name(LogicKind k);

// Width-carrying unsigned value; the one scalar of the language.
// Invariants: 1 <= width <= kMaxWidth, value < 2^width.
class BitVector {
 public:
  BitVector(unsigned width, u128 value);

  unsigned width() const { return width_; }
  u128 value() const { return value_; }
  std::uint64_t value_u64() const { return static_cast<std::uint64_t>(value_); }

  bool operator==(const BitVector& o) const {
    return width_ == o.width_ && value_ == o.value_;
  }
  bool operator!=(const BitVector& o) const { return !(*this == o); }

  // Lowercase hex, 0x-prefixed, zero-padded to ceil(width/4) digits.
  std::string to_hex() const;
  // Same, but without padding (minimal digits).
  std::string to_hex_minimal() const;

 private:
  unsigned width_;
  u128 value_;
};

// 2^width as a u128 mask helper; width must be <= kMaxWidth.
u128 bv_modulus_mask(unsigned width);

BitVector bv_add(const BitVector& a, const BitVector& b);
BitVector bv_concat(const BitVector& a, const BitVector& b);
BitVector bv_slice(unsigned lower, unsigned upper, const BitVector& a);
BitVector bv_eq(const BitVector& a, const BitVector& b);
BitVector bv_mux21(const BitVector& sel, const BitVector& a, const BitVector& b);
BitVector bv_logic(LogicKind kind, const BitVector& a,
                   const std::optional<BitVector>& b = std::nullopt);

// Parses "0x..." (lowercase or uppercase digits accepted). Returns nullopt on
// malformed text or on a value that does not fit in `width` bits.
std::optional<BitVector> bv_parse_hex(const std::string& text, unsigned width);

}  // namespace syndsl
