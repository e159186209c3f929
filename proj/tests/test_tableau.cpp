#include <algorithm>
#include <random>

#include "alnram/error.hpp"
#include "alnram/tableau.hpp"
#include "main.hpp"

using namespace alnram;

namespace {

ErrorKind error_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::Usage;
}

std::vector<BigNat> elems(std::initializer_list<unsigned> xs) {
  std::vector<BigNat> v;
  for (auto x : xs) v.push_back(BigNat{x});
  return v;
}

}  // namespace

TEST_CASE("O and U examples") {
  CHECK(make_O(BigNat{5}, 4, 1) == BigNat{5});
  CHECK(make_O(BigNat{5}, 4, 3) == BigNat{1365});
  CHECK(make_O(BigNat{7}, 9, 3) == BigNat{1838599});
  CHECK(error_of([] { make_O(BigNat{16}, 4, 2); }) == ErrorKind::WidthViolation);
  for (std::uint64_t m = 1; m <= 6; ++m)
    for (std::uint64_t n = 1; n <= 4; ++n)
      for (std::uint64_t a = 0; a < (std::uint64_t{1} << m); ++a)
        REQUIRE(decode_vector(m, make_O(BigNat{a}, m, n), n) == std::vector<BigNat>(n, BigNat{a}));

  CHECK(make_U(1) == BigNat{1});
  CHECK(make_U(2) == BigNat{27});
  CHECK(decode_vector(2, make_U(2), 4) == elems({3, 2, 1, 0}));
  for (std::uint64_t T = 1; T <= 8; ++T) {
    auto d = decode_vector(T, make_U(T), std::uint64_t{1} << T);
    std::sort(d.begin(), d.end());
    for (std::uint64_t i = 0; i < d.size(); ++i) REQUIRE(d[i] == BigNat{i});
  }
  CHECK(error_of([] { make_U(30); }) == ErrorKind::BudgetExceeded);
}

TEST_CASE("GT and EQ") {
  const BigNat a = encode_vector(4, elems({3, 7, 2})), b = encode_vector(4, elems({3, 5, 9}));
  CHECK(gt_vec(4, a, b, 3) == BigNat{16});
  CHECK(decode_vector(4, eq_vec(4, a, b, 3), 3) == elems({1, 0, 0}));
  CHECK(gt_vec(4, a, a, 3).is_zero());
  CHECK(eq_vec(4, a, a, 3) == make_O(BigNat{1}, 4, 3));
  CHECK(error_of([&] { gt_vec(4, BigNat::pow2(12), a, 3); }) == ErrorKind::WidthViolation);

  // exhaustive for small shapes
  for (std::uint64_t m = 1; m <= 4; ++m)
    for (std::uint64_t n = 1; n <= 3 && m * n <= 8; ++n) {
      const std::uint64_t lim = std::uint64_t{1} << (m * n);
      bool good = true;
      for (std::uint64_t x = 0; x < lim; ++x)
        for (std::uint64_t y = 0; y < lim; ++y) {
          const auto gx = decode_vector(m, BigNat{x}, n), gy = decode_vector(m, BigNat{y}, n);
          const auto g = decode_vector(m, gt_vec(m, BigNat{x}, BigNat{y}, n), n);
          const auto e = decode_vector(m, eq_vec(m, BigNat{x}, BigNat{y}, n), n);
          for (std::uint64_t i = 0; i < n; ++i)
            good &= g[i] == BigNat{gx[i] > gy[i] ? 1u : 0u} && e[i] == BigNat{gx[i] == gy[i] ? 1u : 0u};
        }
      CAPTURE(m);
      CAPTURE(n);
      CHECK(good);
    }
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::uint64_t m = 1 + rng() % 70, n = 1 + rng() % 12;
    std::vector<BigNat> x, y;
    for (std::uint64_t i = 0; i < n; ++i) {
      BigNat r = BigNat::from_mpz(mpz_class(rng())) * BigNat::from_mpz(mpz_class(rng()));
      r = r & BigNat::ones(m);
      x.push_back(r);
      y.push_back(rng() % 3 == 0 ? r : (BigNat::from_mpz(mpz_class(rng())) & BigNat::ones(m)));
    }
    const auto g = decode_vector(m, gt_vec(m, encode_vector(m, x), encode_vector(m, y), n), n);
    const auto e = decode_vector(m, eq_vec(m, encode_vector(m, x), encode_vector(m, y), n), n);
    for (std::uint64_t i = 0; i < n; ++i) {
      REQUIRE(g[i] == BigNat{x[i] > y[i] ? 1u : 0u});
      REQUIRE(e[i] == BigNat{x[i] == y[i] ? 1u : 0u});
    }
  }
}

TEST_CASE("witness example") {
  auto spec = machines::accept_all();
  auto w = make_witnesses(spec, BigNat{1}, 2);
  CHECK(w.w1 == BigNat{3});
  CHECK(w.w2 == BigNat{19173953});
  CHECK(w.w3 == BigNat{18});
  CHECK(w.w4 == make_O(BigNat{7}, 9, 3));
  CHECK(w.w5 == BigNat{262657});
  CHECK(decode_vector(9, w.w2, 3) == elems({65, 73, 73}));
  CHECK(error_of([] { make_witnesses(machines::reject_all(), BigNat{1}, 2); }) == ErrorKind::NotAccepting);
  CHECK(parse_witness(format_witness(w)) == w);
}

TEST_CASE("verification") {
  auto spec = machines::accept_all();
  auto w = make_witnesses(spec, BigNat{1}, 2);
  auto ok = verify_tableau(spec, BigNat{1}, w);
  CHECK(ok.accept);
  CHECK(ok.halt_state == kAccept);
  for (std::uint64_t bit = 0; bit < 27; ++bit) {
    auto bad = w;
    bad.w2 ^= BigNat::pow2(bit);
    CAPTURE(bit);
    CHECK(!verify_tableau(spec, BigNat{1}, bad).accept);
  }
  auto other = verify_tableau(spec, BigNat{0}, w);
  CHECK(!other.accept);
  CHECK(other.failed == VerifyCheck::Tape);

  // rejecting runs verify as consistent tableaux that end in state 2
  auto rt = build_tableau(machines::parity(), BigNat{1}, 3);
  REQUIRE(rt);
  auto rv = verify_tableau(machines::parity(), BigNat{1}, witnesses_of(*rt, machines::parity()));
  CHECK(!rv.accept);
  CHECK(rv.failed == VerifyCheck::FinalState);
  CHECK(rv.halt_state == kReject);
}

TEST_CASE("every accepting fixture verifies, every single-bit corruption fails") {
  for (const auto& [name, spec] : machines::all())
    for (std::uint64_t inp = 0; inp < 8; ++inp)
      for (std::uint64_t s = 3; s <= 4; ++s) {
        auto t = build_tableau(spec, BigNat{inp}, s);
        if (!t || t->final_state != kAccept) continue;
        CAPTURE(name);
        CAPTURE(inp);
        CAPTURE(s);
        auto w = witnesses_of(*t, spec);
        REQUIRE(verify_tableau(spec, BigNat{inp}, w).accept);
        for (int k = 0; k < 5; ++k) {
          BigNat& field = k == 0 ? w.w1 : k == 1 ? w.w2 : k == 2 ? w.w3 : k == 3 ? w.w4 : w.w5;
          const std::uint64_t bits = std::max<std::uint64_t>(field.bit_length() + 1, 2);
          for (std::uint64_t b = 0; b < bits; ++b) {
            field ^= BigNat::pow2(b);
            CHECK(!verify_tableau(spec, BigNat{inp}, w).accept);
            field ^= BigNat::pow2(b);
          }
        }
      }
}

TEST_CASE("packed simulation") {
  auto spec = machines::accept_all();
  auto t = *build_tableau(spec, BigNat{1}, 2);
  auto pack = pack_candidates(spec, 2, t.n, {t.V, t.V ^ BigNat{2}});
  auto rep = simulate(spec, BigNat{1}, pack);
  CHECK(rep.flags() == std::vector<bool>{true, false});
  CHECK(rep.halt_state == kAccept);
  auto none = simulate(spec, BigNat{1}, pack_candidates(spec, 2, t.n, {t.V ^ BigNat{1}, t.V ^ BigNat{64}}));
  CHECK(none.res.is_zero());

  // flags against independent verification
  std::mt19937_64 rng(4);
  for (const auto& [name, sp] : machines::all())
    for (std::uint64_t inp = 0; inp < 4; ++inp) {
      auto tb = build_tableau(sp, BigNat{inp}, 3);
      if (!tb) continue;
      std::vector<BigNat> cands = {tb->V};
      for (int i = 0; i < 40; ++i) cands.push_back(tb->V ^ BigNat::pow2(rng() % (tb->n * tb->m)));
      cands.push_back(tb->V);
      auto r = simulate(sp, BigNat{inp}, pack_candidates(sp, 3, tb->n, cands));
      auto flags = r.flags();
      const auto w0 = witnesses_of(*tb, sp);
      for (std::size_t i = 0; i < cands.size(); ++i) {
        auto w = w0;
        w.w2 = cands[i];
        CAPTURE(name);
        CAPTURE(i);
        CHECK(flags[i] == verify_tableau(sp, BigNat{inp}, w).accept);
      }
      CHECK(r.halt_state == tb->final_state);
    }
  CHECK(error_of([&] { exhaustive_candidates(spec, 2, t.n); }) == ErrorKind::BudgetExceeded);
}

TEST_CASE("algorithms") {
  auto spec = machines::accept_all();
  CHECK(algorithm1(spec, BigNat{1}, default_el(BigNat{1}), Strategy::FromRun, 4) == Verdict::Accept);
  CHECK(algorithm1(machines::reject_all(), BigNat{1}, [](std::uint64_t n) { return BigNat{n + 1}; }, Strategy::FromRun, 4,
                   true) == Verdict::Reject);
  CHECK(error_of([&] { algorithm1(spec, BigNat{1}, default_el(BigNat{1}), Strategy::FromRun, 0); }) ==
        ErrorKind::IterationBudgetExhausted);
  // doubling until the tape is long enough
  AlgorithmTrace tr;
  CHECK(algorithm1(machines::scan_up(), BigNat{31}, [](std::uint64_t n) { return BigNat{n}; },
                   Strategy::FromRunWithCorruptions, 6, false, &tr) == Verdict::Accept);
  CHECK(tr.tried_s == std::vector<std::uint64_t>{1, 2, 4, 8});

  CHECK(algorithm2(spec, BigNat{1}, BigNat{4}) == Verdict::Accept);
  CHECK(algorithm2(spec, BigNat{1}, BigNat{0}) == Verdict::Reject);
  auto scan = machines::scan_up();
  CHECK(algorithm2(scan, BigNat{3}, BigNat{2}) == Verdict::Reject);
  CHECK(algorithm2(scan, BigNat{7}, BigNat{1}) == Verdict::Reject);  // input wider than the tape
  for (std::uint64_t aln = 3; aln <= 12; ++aln) CHECK(algorithm2(scan, BigNat{3}, BigNat{aln}) == Verdict::Accept);
}
