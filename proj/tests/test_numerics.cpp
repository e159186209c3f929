#include <random>

#include "alnram/error.hpp"
#include "alnram/numerics.hpp"
#include "main.hpp"

using namespace alnram;

namespace {
BigNat ev(PrimOp op, std::uint64_t a, std::optional<std::uint64_t> b = std::nullopt) {
  return eval_primitive(op, BigNat{a}, b ? std::optional<BigNat>(BigNat{*b}) : std::nullopt);
}
ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Usage;
}
}  // namespace

TEST_CASE("primitive examples") {
  CHECK(ev(PrimOp::NatSub, 3, 5) == BigNat{0});
  CHECK(ev(PrimOp::Not, 6) == BigNat{1});
  CHECK(ev(PrimOp::Not, 0) == BigNat{0});
  CHECK(ev(PrimOp::ExactDiv, 84, 4) == BigNat{21});
  CHECK(kind_of([] { ev(PrimOp::ExactDiv, 85, 3); }) == ErrorKind::NotExact);
  CHECK(kind_of([] { ev(PrimOp::IntDiv, 85, 0); }) == ErrorKind::DivByZero);
  CHECK(kind_of([] { ev(PrimOp::Add, 1); }) == ErrorKind::ArityMismatch);
  CHECK(kind_of([] { ev(PrimOp::Inc, 1, 1); }) == ErrorKind::ArityMismatch);
  CHECK(ev(PrimOp::Shl, 3, 4) == BigNat{48});
  CHECK(ev(PrimOp::Shr, 48, 4) == BigNat{3});
  CHECK(ev(PrimOp::Clear, 7, 5) == BigNat{2});
  CHECK(ev(PrimOp::Inc, 41) == BigNat{42});
  CHECK(ev(PrimOp::IntDiv, 85, 3) == BigNat{28});
}

TEST_CASE("mnemonics round trip") {
  for (PrimOp op : kAllOps) CHECK(parse_mnemonic(mnemonic(op)) == op);
  CHECK(!parse_mnemonic("pow"));
  CHECK(mnemonic(PrimOp::NatSub) == "sub");
  CHECK(mnemonic(PrimOp::ExactDiv) == "div");
}

TEST_CASE("set mask") {
  CHECK(set_mask(BigNat{5}) == BigNat{7});
  CHECK(set_mask(BigNat{0}) == BigNat{0});
  CHECK(set_mask(BigNat{8}) == BigNat{15});
}

TEST_CASE("natsub via boolean formula: examples") {
  CHECK(natsub_via_bool(BigNat{3}, BigNat{5}) == BigNat{0});
  CHECK(natsub_via_bool(BigNat{7}, BigNat{5}) == BigNat{2});
  CHECK(natsub_via_bool(BigNat{5}, BigNat{5}) == BigNat{0});
}

TEST_CASE("natsub via boolean formula: exhaustive below 2^8") {
  for (std::uint64_t a = 0; a < 256; ++a)
    for (std::uint64_t b = 0; b < 256; ++b)
      REQUIRE(natsub_via_bool(BigNat{a}, BigNat{b}) == BigNat{a > b ? a - b : 0});
}

TEST_CASE("tweaked negation properties") {
  for (std::uint64_t a = 0; a < 4096; ++a) {
    BigNat x{a};
    BigNat n = tnot(x);
    CHECK(n < BigNat::pow2(x.bit_length()));
    CHECK((n | x) == set_mask(x));
    CHECK((n & x) == BigNat{0});
  }
}

TEST_CASE("clear, exact division and shift inverses on random values") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 500; ++i) {
    BigNat a = BigNat{rng()} * BigNat{rng()} + BigNat{rng() % 7};
    BigNat b = BigNat{rng()} + BigNat{1};
    CHECK((clear(a, b) | (a & b)) == a);
    CHECK(clear(a, b) <= a);
    CHECK(exact_div(a * b, b) == a);
    std::uint64_t k = rng() % 300;
    CHECK(shr(shl(a, BigNat{k}), BigNat{k}) == a);
  }
}

TEST_CASE("shift cap") {
  CHECK(kind_of([] { shl(BigNat{1}, BigNat{1000}, 64); }) == ErrorKind::BudgetExceeded);
  CHECK(shl(BigNat{0}, BigNat::pow2(200)) == BigNat{0});
  CHECK(shr(BigNat{12345}, BigNat::pow2(200)) == BigNat{0});
}
