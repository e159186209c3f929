#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace alnram {

// Unbounded nonnegative integer. Every constructor and operation keeps the
// value >= 0; subtraction is only available in its natural (clamped) form.
class BigNat {
 public:
  BigNat() = default;
  BigNat(std::uint64_t v) : v_(static_cast<unsigned long>(v)) {}  // NOLINT(implicit)

  static BigNat from_mpz(mpz_class v);
  // Accepts decimal or 0x-prefixed hex.
  static BigNat parse(std::string_view text);
  static BigNat pow2(std::uint64_t k);
  // 2^k - 1
  static BigNat ones(std::uint64_t k);

  // Position just above the most significant 1-bit; 0 for zero.
  std::uint64_t bit_length() const;
  bool bit(std::uint64_t i) const { return mpz_tstbit(v_.get_mpz_t(), i) != 0; }
  void set_bit(std::uint64_t i, bool on = true);
  bool is_zero() const { return sgn(v_) == 0; }
  bool fits_u64() const;
  std::uint64_t to_u64() const;  // throws BudgetExceeded if it does not fit
  std::uint64_t popcount() const { return mpz_popcount(v_.get_mpz_t()); }

  std::string to_dec() const { return v_.get_str(10); }
  std::string to_hex() const { return "0x" + v_.get_str(16); }
  std::string to_bin() const { return v_.get_str(2); }

  const mpz_class& mpz() const { return v_; }

  BigNat& operator+=(const BigNat& o) { v_ += o.v_; return *this; }
  BigNat& operator*=(const BigNat& o) { v_ *= o.v_; return *this; }
  BigNat& operator&=(const BigNat& o) { v_ &= o.v_; return *this; }
  BigNat& operator|=(const BigNat& o) { v_ |= o.v_; return *this; }
  BigNat& operator^=(const BigNat& o) { v_ ^= o.v_; return *this; }

  friend BigNat operator+(BigNat a, const BigNat& b) { return a += b; }
  friend BigNat operator*(BigNat a, const BigNat& b) { return a *= b; }
  friend BigNat operator&(BigNat a, const BigNat& b) { return a &= b; }
  friend BigNat operator|(BigNat a, const BigNat& b) { return a |= b; }
  friend BigNat operator^(BigNat a, const BigNat& b) { return a ^= b; }
  friend BigNat operator<<(const BigNat& a, std::uint64_t k);
  friend BigNat operator>>(const BigNat& a, std::uint64_t k);

  friend bool operator==(const BigNat& a, const BigNat& b) { return cmp(a.v_, b.v_) == 0; }
  friend std::strong_ordering operator<=>(const BigNat& a, const BigNat& b) {
    int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const BigNat& a);

 private:
  mpz_class v_;
};

}  // namespace alnram
