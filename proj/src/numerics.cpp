#include "alnram/numerics.hpp"

#include <string>

#include "alnram/error.hpp"

namespace alnram {

namespace {
constexpr std::array<std::string_view, 13> kMnemonics = {
    "add", "sub", "mul", "div", "idiv", "shl", "shr", "and", "or", "xor", "not", "clear", "inc"};
}

std::string_view mnemonic(PrimOp op) { return kMnemonics[static_cast<std::size_t>(op)]; }

std::optional<PrimOp> parse_mnemonic(std::string_view text) {
  for (std::size_t i = 0; i < kMnemonics.size(); ++i)
    if (kMnemonics[i] == text) return static_cast<PrimOp>(i);
  return std::nullopt;
}

BigNat natsub(const BigNat& a, const BigNat& b) {
  if (a <= b) return BigNat{};
  return BigNat::from_mpz(a.mpz() - b.mpz());
}

BigNat tnot(const BigNat& a) { return a ^ BigNat::ones(a.bit_length()); }

BigNat clear(const BigNat& a, const BigNat& b) { return a ^ (a & b); }

BigNat shl(const BigNat& a, const BigNat& amount, std::uint64_t cap_bits) {
  if (a.is_zero()) return a;
  if (!amount.fits_u64() || amount.to_u64() > cap_bits ||
      a.bit_length() + amount.to_u64() > cap_bits)
    fail(ErrorKind::BudgetExceeded, "left shift result exceeds " + std::to_string(cap_bits) + " bits");
  return a << amount.to_u64();
}

BigNat shr(const BigNat& a, const BigNat& amount) {
  if (!amount.fits_u64() || amount.to_u64() >= a.bit_length()) return BigNat{};
  return a >> amount.to_u64();
}

BigNat exact_div(const BigNat& a, const BigNat& b) {
  if (b.is_zero()) fail(ErrorKind::DivByZero, "exact division by zero");
  if (!mpz_divisible_p(a.mpz().get_mpz_t(), b.mpz().get_mpz_t()))
    fail(ErrorKind::NotExact, a.to_dec() + " is not a multiple of " + b.to_dec());
  mpz_class q;
  mpz_divexact(q.get_mpz_t(), a.mpz().get_mpz_t(), b.mpz().get_mpz_t());
  return BigNat::from_mpz(std::move(q));
}

BigNat int_div(const BigNat& a, const BigNat& b) {
  if (b.is_zero()) fail(ErrorKind::DivByZero, "integer division by zero");
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), a.mpz().get_mpz_t(), b.mpz().get_mpz_t());
  return BigNat::from_mpz(std::move(q));
}

BigNat eval_primitive(PrimOp op, const BigNat& a, const std::optional<BigNat>& b,
                      std::uint64_t cap_bits) {
  if (b.has_value() != (arity(op) == 2))
    fail(ErrorKind::ArityMismatch, std::string(mnemonic(op)) + " expects " +
                                       std::to_string(arity(op)) + " operand(s)");
  switch (op) {
    case PrimOp::Add: return a + *b;
    case PrimOp::NatSub: return natsub(a, *b);
    case PrimOp::Mul: return a * *b;
    case PrimOp::ExactDiv: return exact_div(a, *b);
    case PrimOp::IntDiv: return int_div(a, *b);
    case PrimOp::Shl: return shl(a, *b, cap_bits);
    case PrimOp::Shr: return shr(a, *b);
    case PrimOp::And: return a & *b;
    case PrimOp::Or: return a | *b;
    case PrimOp::Xor: return a ^ *b;
    case PrimOp::Not: return tnot(a);
    case PrimOp::Clear: return clear(a, *b);
    case PrimOp::Inc: return a + BigNat{1};
  }
  fail(ErrorKind::ArityMismatch, "unknown operation");
}

BigNat set_mask(const BigNat& a) { return a | tnot(a); }

BigNat natsub_via_bool(const BigNat& a, const BigNat& b) {
  const BigNat sa = set_mask(a);
  const BigNat sb = set_mask(b);
  if ((sa | sb) != sa) return BigNat{};
  if (sa == sb && ((a + tnot(b)) & (sa + BigNat{1})).is_zero()) return BigNat{};
  return (a + tnot(b + sa)) & sa;
}

}  // namespace alnram
