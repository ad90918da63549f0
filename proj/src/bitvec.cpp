#include "syndsl/bitvec.hpp"

#include <array>

namespace syndsl {

std::string_view err_name(Err e) {
  switch (e) {
    case Err::WidthZero: return "WidthZero";
    case Err::ValueOverflow: return "ValueOverflow";
    case Err::WidthMismatch: return "WidthMismatch";
    case Err::SliceBounds: return "SliceBounds";
    case Err::SelWidth: return "SelWidth";
    case Err::ArityError: return "ArityError";
    case Err::ShapeError: return "ShapeError";
    case Err::NotHomogeneous: return "NotHomogeneous";
    case Err::LinearityViolation: return "LinearityViolation";
    case Err::UnderusedResource: return "UnderusedResource";
    case Err::DanglingRegister: return "DanglingRegister";
    case Err::AssertUnitInput: return "AssertUnitInput";
    case Err::TraceShapeError: return "TraceShapeError";
    case Err::UnknownDesign: return "UnknownDesign";
    case Err::UnsupportedWidth: return "UnsupportedWidth";
  }
  return "DslError";
}

std::string_view logic_name(LogicKind k) {
  switch (k) {
    case LogicKind::And: return "AND";
    case LogicKind::Or: return "OR";
    case LogicKind::Xor: return "XOR";
    case LogicKind::Not: return "NOT";
  }
  return "?";
}

u128 bv_modulus_mask(unsigned width) {
  if (width == 0) return 0;
  if (width >= kMaxWidth) return ~u128{0};
  return (u128{1} << width) - 1;
}

static void check_width(unsigned width) {
  if (width == 0) raise(Err::WidthZero, "bit-vector width must be >= 1");
  if (width > kMaxWidth)
    raise(Err::UnsupportedWidth,
          "width " + std::to_string(width) + " exceeds the " +
              std::to_string(kMaxWidth) + "-bit limb limit");
}

BitVector::BitVector(unsigned width, u128 value) : width_(width), value_(value) {
  check_width(width);
  if (width < kMaxWidth && value >= (u128{1} << width))
    raise(Err::ValueOverflow,
          "value does not fit in " + std::to_string(width) + " bits");
}

static std::string hex_digits(u128 v, unsigned min_digits) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  while (v != 0) {
    out.push_back(digits[static_cast<unsigned>(v & 0xf)]);
    v >>= 4;
  }
  while (out.size() < min_digits) out.push_back('0');
  if (out.empty()) out.push_back('0');
  return std::string(out.rbegin(), out.rend());
}

std::string BitVector::to_hex() const {
  return "0x" + hex_digits(value_, (width_ + 3) / 4);
}

std::string BitVector::to_hex_minimal() const {
  return "0x" + hex_digits(value_, 1);
}

BitVector bv_add(const BitVector& a, const BitVector& b) {
  if (a.width() != b.width())
    raise(Err::WidthMismatch, "add operands are " + std::to_string(a.width()) +
                                  " and " + std::to_string(b.width()) + " bits");
  check_width(a.width() + 1);
  return BitVector(a.width() + 1, a.value() + b.value());
}

BitVector bv_concat(const BitVector& a, const BitVector& b) {
  check_width(a.width() + b.width());
  return BitVector(a.width() + b.width(),
                   (a.value() << b.width()) | b.value());
}

BitVector bv_slice(unsigned lower, unsigned upper, const BitVector& a) {
  if (lower > upper || upper > a.width())
    raise(Err::SliceBounds, "slice [" + std::to_string(lower) + ", " +
                                std::to_string(upper) + ") of a " +
                                std::to_string(a.width()) + "-bit vector");
  if (upper == lower)
    raise(Err::WidthZero, "slice [" + std::to_string(lower) + ", " +
                              std::to_string(upper) + ") would be empty");
  unsigned w = upper - lower;
  return BitVector(w, (a.value() >> lower) & bv_modulus_mask(w));
}

BitVector bv_eq(const BitVector& a, const BitVector& b) {
  if (a.width() != b.width())
    raise(Err::WidthMismatch, "eq operands are " + std::to_string(a.width()) +
                                  " and " + std::to_string(b.width()) + " bits");
  return BitVector(1, a.value() == b.value() ? 1 : 0);
}

BitVector bv_mux21(const BitVector& sel, const BitVector& a,
                   const BitVector& b) {
  if (sel.width() != 1)
    raise(Err::SelWidth,
          "mux21 select is " + std::to_string(sel.width()) + " bits, want 1");
  if (a.width() != b.width())
    raise(Err::WidthMismatch, "mux21 operands are " +
                                  std::to_string(a.width()) + " and " +
                                  std::to_string(b.width()) + " bits");
  return sel.value() != 0 ? a : b;
}

BitVector bv_logic(LogicKind kind, const BitVector& a,
                   const std::optional<BitVector>& b) {
  if (kind == LogicKind::Not) {
    if (b.has_value())
      raise(Err::ArityError, "NOT takes one operand, got two");
    return BitVector(a.width(), ~a.value() & bv_modulus_mask(a.width()));
  }
  if (!b.has_value())
    raise(Err::ArityError,
          std::string(logic_name(kind)) + " takes two operands, got one");
  if (a.width() != b->width())
    raise(Err::WidthMismatch, std::string(logic_name(kind)) + " operands are " +
                                  std::to_string(a.width()) + " and " +
                                  std::to_string(b->width()) + " bits");
  u128 v = 0;
  switch (kind) {
    case LogicKind::And: v = a.value() & b->value(); break;
    case LogicKind::Or: v = a.value() | b->value(); break;
    case LogicKind::Xor: v = a.value() ^ b->value(); break;
    case LogicKind::Not: break;  // handled above
  }
  return BitVector(a.width(), v);
}

std::optional<BitVector> bv_parse_hex(const std::string& text, unsigned width) {
  if (width == 0 || width > kMaxWidth) return std::nullopt;
  if (text.size() < 3 || text[0] != '0' || (text[1] != 'x' && text[1] != 'X'))
    return std::nullopt;
  u128 v = 0;
  for (size_t i = 2; i < text.size(); ++i) {
    char c = text[i];
    unsigned d = 0;
    if (c >= '0' && c <= '9') d = static_cast<unsigned>(c - '0');
    else if (c >= 'a' && c <= 'f') d = static_cast<unsigned>(c - 'a') + 10;
    else if (c >= 'A' && c <= 'F') d = static_cast<unsigned>(c - 'A') + 10;
    else return std::nullopt;
    if ((v >> (kMaxWidth - 4)) != 0) return std::nullopt;
    v = (v << 4) | d;
  }
  if (width < kMaxWidth && v >= (u128{1} << width)) return std::nullopt;
  return BitVector(width, v);
}

}  // namespace syndsl
