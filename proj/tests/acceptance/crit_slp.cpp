#include <fstream>
#include <random>
#include <sstream>

#include "acceptance.hpp"
#include "alnram/error.hpp"
#include "alnram/lazy.hpp"
#include "alnram/slp.hpp"

using namespace alnram;

namespace acc {

namespace {

const std::vector<PrimOp> kNine = {PrimOp::Add, PrimOp::NatSub, PrimOp::Mul, PrimOp::Shl, PrimOp::Shr,
                                   PrimOp::And, PrimOp::Or,     PrimOp::Xor, PrimOp::Not};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string fmt(const char* f, auto... xs) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, xs...);
  return buf;
}

}  // namespace

Outcome lazy_differential() {
  Stopwatch sw;
  std::uint64_t programs = 0, queries = 0, mismatches = 0, skipped = 0;
  for (std::uint64_t seed = 0; programs < 2000; ++seed) {
    // two random inputs keep the values from collapsing to 0 and 1
    std::mt19937_64 rng(seed);
    const std::vector<BigNat> in = {BigNat{rng() >> (rng() % 64)}, BigNat{rng() >> (rng() % 64)}};
    SlpGenOptions o;
    o.steps = 1 + seed % 11;  // length 1 + 2 + steps <= 14
    o.ops = kNine;
    o.seed = seed;
    o.max_transitions = 48;
    o.input_slots = 2;
    o.inputs = in;
    Slp p;
    try {
      p = gen_random_slp(o);
    } catch (const Error&) {
      ++skipped;
      continue;
    }
    const BigNat v = eval_slp_direct(p, in, std::uint64_t{1} << 16).back();
    const std::size_t t = p.length();
    if (nonzero_lazy(p, LazyMode::Plain, in) != nonzero_direct(p, in)) ++mismatches;
    LazyEvaluator ev(p, in);
    for (const auto& i : ev.indices(t)) {
      const mpz_class q = position_oracle(p, ev.vars(), i, in);
      const bool want = sgn(q) >= 0 && v.bit(q.get_ui());
      mismatches += eval_bit(p, t, i, in) != want;
      ++queries;
    }
    for (std::uint64_t pos = 0; pos <= v.bit_length() + 1; ++pos) {
      mismatches += ev.bit(t, ev.offset_index(pos)) != v.bit(pos);
      ++queries;
    }
    ++programs;
  }
  const double secs = sw.seconds();
  return {mismatches == 0 && secs < 120,
          fmt("%llu programs, %llu bit queries, %llu mismatches, %llu generator retries", (unsigned long long)programs,
              (unsigned long long)queries, (unsigned long long)mismatches, (unsigned long long)skipped)};
}

Outcome small_sum() {
  const BigNat sum{3576};
  std::uint64_t checked = 0, bad = 0;
  auto check = [&](const Slp& p, std::vector<BigNat> in) {
    LazyEvaluator ev(p, in);
    for (std::uint64_t pos = 0; pos < 16; ++pos, ++checked) bad += ev.bit(p.length(), ev.offset_index(pos)) != sum.bit(pos);
    for (const auto& i : ev.indices(p.length())) {
      const mpz_class q = position_oracle(p, ev.vars(), i, in);
      bad += ev.bit(p.length(), i) != (sgn(q) >= 0 && sum.bit(q.get_ui()));
      ++checked;
    }
  };
  check(parse_slp("inputs 2\nadd 2 3"), {BigNat{2555}, BigNat{1021}});
  check(parse_slp(slurp(std::string(ALNRAM_FIXTURES) + "/slp/sum3576.slp")), {});
  return {bad == 0 && checked > 32, fmt("%llu bit queries on 2555 + 1021, %llu wrong", (unsigned long long)checked,
                                        (unsigned long long)bad)};
}

// 2, then a shl-tower of height L - 5, then y = 2t, z = y - t, and
// z xor t (zero) or z or t (nonzero) by the parity of L.
Slp tower(std::size_t L, bool& expect) {
  Slp p;
  std::size_t top = p.push(PrimOp::Add, 1, 1);
  for (std::size_t i = 0; i < L - 5; ++i) top = p.push(PrimOp::Shl, 1, top);
  const std::size_t y = p.push(PrimOp::Add, top, top);
  const std::size_t z = p.push(PrimOp::NatSub, y, top);
  expect = L % 2 == 0;
  p.push(expect ? PrimOp::Or : PrimOp::Xor, z, top);
  return p;
}

Outcome tower_space() {
  constexpr double C = 2.0;
  Stopwatch sw;
  double worst = 0;
  std::uint64_t wrong = 0;
  for (std::size_t L = 10; L <= 40; ++L) {
    bool expect = false;
    const Slp p = tower(L, expect);
    LazyEvaluator ev(p);
    wrong += ev.nonzero() != expect;
    worst = std::max(worst, double(ev.space().max_scalar_bits) / double(L * L));
  }
  const double secs = sw.seconds();
  return {wrong == 0 && worst <= C && secs < 60,
          fmt("lengths 10..40, %llu wrong answers, max scalar bits / n^2 = %.3f (C = %.1f)", (unsigned long long)wrong,
              worst, C)};
}

Outcome aln_agreement() {
  std::uint64_t compared = 0, mismatches = 0, skipped = 0;
  for (std::uint64_t seed = 0; compared < 500; ++seed) {
    const std::uint64_t n = 1 + seed % 3;
    SlpGenOptions o;
    o.steps = n;
    o.ops = kNine;
    o.seed = seed;
    o.aln = true;
    o.input_slots = 1;
    o.inputs = {BigNat{0}};
    o.aln_probe_exponent = std::uint64_t{1} << (n * n + 8);
    o.value_budget_bits = std::uint64_t{1} << 24;
    o.max_transitions = 48;
    Slp p;
    try {
      p = gen_random_slp(o);
    } catch (const Error&) {
      ++skipped;
      continue;
    }
    const bool lazy = nonzero_lazy(p, LazyMode::Aln);
    for (std::uint64_t j = 0; j <= 8; ++j) {
      const std::vector<BigNat> in = {BigNat::pow2(std::uint64_t{1} << (n * n + j))};
      mismatches += nonzero_direct(p, in, std::uint64_t{1} << 24) != lazy;
    }
    ++compared;
  }
  return {mismatches == 0, fmt("%llu programs x 9 values of omega, %llu mismatches, %llu generator retries",
                               (unsigned long long)compared, (unsigned long long)mismatches,
                               (unsigned long long)skipped)};
}

}  // namespace acc
