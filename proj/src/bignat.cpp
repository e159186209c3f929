#include "alnram/bignat.hpp"

#include <cctype>
#include <ostream>

#include "alnram/error.hpp"

namespace alnram {

BigNat BigNat::from_mpz(mpz_class v) {
  if (sgn(v) < 0) fail(ErrorKind::ArityMismatch, "negative value cannot become a BigNat");
  BigNat r;
  r.v_ = std::move(v);
  return r;
}

BigNat BigNat::parse(std::string_view text) {
  std::string s(text);
  int base = 10;
  if (s.size() > 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) {
    s = s.substr(2);
    base = 16;
  }
  if (s.empty()) fail(ErrorKind::ParseError, "empty number");
  for (char ch : s) {
    bool ok = base == 10 ? (ch >= '0' && ch <= '9') : std::isxdigit(static_cast<unsigned char>(ch)) != 0;
    if (!ok) fail(ErrorKind::ParseError, "bad digit in number '" + std::string(text) + "'");
  }
  BigNat r;
  r.v_.set_str(s, base);
  return r;
}

BigNat BigNat::pow2(std::uint64_t k) {
  BigNat r;
  mpz_setbit(r.v_.get_mpz_t(), k);
  return r;
}

BigNat BigNat::ones(std::uint64_t k) {
  BigNat r = pow2(k);
  r.v_ -= 1;
  return r;
}

std::uint64_t BigNat::bit_length() const {
  if (is_zero()) return 0;
  return mpz_sizeinbase(v_.get_mpz_t(), 2);
}

void BigNat::set_bit(std::uint64_t i, bool on) {
  if (on)
    mpz_setbit(v_.get_mpz_t(), i);
  else
    mpz_clrbit(v_.get_mpz_t(), i);
}

bool BigNat::fits_u64() const { return bit_length() <= 64; }

std::uint64_t BigNat::to_u64() const {
  if (!fits_u64()) fail(ErrorKind::BudgetExceeded, "value does not fit in 64 bits");
  std::uint64_t out = 0;
  mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, v_.get_mpz_t());
  return out;
}

BigNat operator<<(const BigNat& a, std::uint64_t k) {
  BigNat r;
  mpz_mul_2exp(r.v_.get_mpz_t(), a.v_.get_mpz_t(), k);
  return r;
}

BigNat operator>>(const BigNat& a, std::uint64_t k) {
  BigNat r;
  mpz_fdiv_q_2exp(r.v_.get_mpz_t(), a.v_.get_mpz_t(), k);
  return r;
}

std::ostream& operator<<(std::ostream& os, const BigNat& a) { return os << a.to_dec(); }

}  // namespace alnram
