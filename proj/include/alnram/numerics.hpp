#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

#include "alnram/bignat.hpp"

namespace alnram {

enum class PrimOp : std::uint8_t {
  Add,
  NatSub,
  Mul,
  ExactDiv,
  IntDiv,
  Shl,
  Shr,
  And,
  Or,
  Xor,
  Not,
  Clear,
  Inc,
};

inline constexpr std::array<PrimOp, 13> kAllOps = {
    PrimOp::Add, PrimOp::NatSub, PrimOp::Mul, PrimOp::ExactDiv, PrimOp::IntDiv,
    PrimOp::Shl, PrimOp::Shr,    PrimOp::And, PrimOp::Or,       PrimOp::Xor,
    PrimOp::Not, PrimOp::Clear,  PrimOp::Inc};

constexpr int arity(PrimOp op) { return (op == PrimOp::Not || op == PrimOp::Inc) ? 1 : 2; }
constexpr bool is_boolean(PrimOp op) {
  return op == PrimOp::And || op == PrimOp::Or || op == PrimOp::Xor || op == PrimOp::Not ||
         op == PrimOp::Clear;
}

// Canonical text mnemonics: add sub mul div idiv shl shr and or xor not clear inc.
std::string_view mnemonic(PrimOp op);
std::optional<PrimOp> parse_mnemonic(std::string_view text);

// Shifts whose result would exceed this many bits raise BudgetExceeded.
inline constexpr std::uint64_t kDefaultShiftCapBits = std::uint64_t{1} << 30;

BigNat natsub(const BigNat& a, const BigNat& b);
// Complement of a's bits below and including its top 1-bit; tnot(0) = 0.
BigNat tnot(const BigNat& a);
// a AND NOT b (untweaked).
BigNat clear(const BigNat& a, const BigNat& b);
BigNat shl(const BigNat& a, const BigNat& amount, std::uint64_t cap_bits = kDefaultShiftCapBits);
BigNat shr(const BigNat& a, const BigNat& amount);
BigNat exact_div(const BigNat& a, const BigNat& b);
BigNat int_div(const BigNat& a, const BigNat& b);

BigNat eval_primitive(PrimOp op, const BigNat& a, const std::optional<BigNat>& b = std::nullopt,
                      std::uint64_t cap_bits = kDefaultShiftCapBits);

// set(a) = a OR not(a) = 2^len(a) - 1.
BigNat set_mask(const BigNat& a);

// Natural subtraction computed only from +, Boolean operations and set_mask.
BigNat natsub_via_bool(const BigNat& a, const BigNat& b);

}  // namespace alnram
