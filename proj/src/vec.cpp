#include "alnram/error.hpp"
#include "alnram/numerics.hpp"
#include "alnram/tableau.hpp"

namespace alnram {

namespace {

void check_width(std::uint64_t m, const BigNat& V, std::uint64_t n, const char* what) {
  if (m == 0) fail(ErrorKind::WidthViolation, std::string(what) + ": width must be positive");
  if (V.bit_length() > m * n) fail(ErrorKind::WidthViolation, std::string(what) + ": contents exceed " + std::to_string(n) + " elements");
}

}  // namespace

BigNat make_O(const BigNat& a, std::uint64_t m, std::uint64_t n) {
  if (m == 0 || a.bit_length() > m) fail(ErrorKind::WidthViolation, "element does not fit the width");
  const BigNat one{1};
  return exact_div(natsub(a << (n * m), a), natsub(one << m, one));
}

BigNat make_U(std::uint64_t T, std::uint64_t cap_bits) {
  if (T == 0 || T >= 40 || (T << T) > cap_bits) fail(ErrorKind::BudgetExceeded, "U^T needs T 2^T bits");
  const BigNat one{1}, t{T};
  const BigNat unit = tnot(one << T);  // 2^T - 1
  const BigNat all = exact_div(tnot(one << (t << T).to_u64()), unit);
  return exact_div(clear(all, one << T), unit);
}

std::vector<BigNat> decode_vector(std::uint64_t m, const BigNat& V, std::uint64_t n) {
  check_width(m, V, n, "decode");
  std::vector<BigNat> out;
  for (std::uint64_t i = 0; i < n; ++i) out.push_back((V >> (m * i)) & BigNat::ones(m));
  return out;
}

BigNat encode_vector(std::uint64_t m, const std::vector<BigNat>& elems) {
  BigNat V;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    if (elems[i].bit_length() > m) fail(ErrorKind::WidthViolation, "element does not fit the width");
    V |= elems[i] << (m * i);
  }
  return V;
}

BigNat gt_vec(std::uint64_t m, const BigNat& V1, const BigNat& V2, std::uint64_t n) {
  check_width(m, V1, n, "gt");
  check_width(m, V2, n, "gt");
  const BigNat one{1};
  const BigNat top = one << (m - 1);
  const BigNat msb = make_O(top, m, n);
  const BigNat mask = make_O(tnot(top), m, n);
  const BigNat msb1 = V1 & msb, msb2 = V2 & msb;
  const BigNat mask1 = V1 & mask, mask2 = V2 & mask;
  const BigNat carry_to_msb = natsub(mask1 + mask, mask2) & msb;
  const BigNat carry = (carry_to_msb & msb1) | clear(carry_to_msb | msb1, msb2);
  return carry >> (m - 1);
}

BigNat eq_vec(std::uint64_t m, const BigNat& V1, const BigNat& V2, std::uint64_t n) {
  return natsub(natsub(make_O(BigNat{1}, m, n), gt_vec(m, V1, V2, n)), gt_vec(m, V2, V1, n));
}

}  // namespace alnram
