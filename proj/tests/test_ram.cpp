#include <algorithm>
#include <random>

#include "alnram/error.hpp"
#include "alnram/ram.hpp"
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

const char* kDoubling =
    "1: r1 = add c1 c1\n"
    "2: r1 = add r1 c1\n"
    "3: if r1 == c0 goto 7 else 4\n"
    "4: r0 = add r0 r0\n"
    "5: r1 = sub r1 c1\n"
    "6: goto 3\n"
    "7: halt\n";

// Largest value reachable in t steps from inputs below 2^n, all operand
// choices, plain recursion.
BigNat exhaustive_max(const std::vector<PrimOp>& ops, std::uint64_t t, std::uint64_t n) {
  BigNat best{0};
  std::function<void(std::vector<BigNat>&, std::uint64_t)> go = [&](std::vector<BigNat>& vals, std::uint64_t left) {
    for (const auto& v : vals) best = std::max(best, v);
    if (left == 0) return;
    const std::size_t k = vals.size();
    for (PrimOp op : ops)
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
          BigNat v;
          try {
            v = eval_primitive(op, vals[i], vals[j], 4096);
          } catch (const Error&) {
            continue;
          }
          vals.push_back(v);
          go(vals, left - 1);
          vals.pop_back();
        }
  };
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
    std::vector<BigNat> vals = {BigNat{0}, BigNat{1}, BigNat{x}};
    go(vals, t);
  }
  return best;
}

// Random program whose jumps only go forward, so every run halts.
RamProgram random_forward_program(std::mt19937_64& rng, std::size_t len) {
  const std::vector<PrimOp> ops = {PrimOp::Add, PrimOp::NatSub, PrimOp::Mul, PrimOp::And, PrimOp::Or,
                                   PrimOp::Xor, PrimOp::Shr,    PrimOp::Not, PrimOp::Clear, PrimOp::Inc};
  auto arg = [&] {
    auto r = rng() % 6;
    return r < 4 ? RamArg::reg(static_cast<std::uint32_t>(r)) : RamArg::c(static_cast<std::uint32_t>(r - 4));
  };
  RamProgram p;
  for (std::size_t label = 1; label < len; ++label) {
    if (rng() % 5 == 0) {
      std::size_t a = label + 1 + rng() % (len - label), b = label + 1 + rng() % (len - label);
      p.add(RamCompare{arg(), rng() % 2 ? RamRel::Le : RamRel::Eq, arg(), a, b});
    } else {
      PrimOp op = ops[rng() % ops.size()];
      p.add(RamAssign{static_cast<std::uint32_t>(rng() % 4), op, arg(), arity(op) == 2 ? std::optional(arg()) : std::nullopt});
    }
  }
  p.add(RamHalt{});
  return p;
}

}  // namespace

TEST_CASE("parse examples") {
  CHECK(parse_ram("1: r1 = add r1 c1\n2: halt").size() == 2);
  CHECK(error_of([] { parse_ram("1: goto 9\n2: halt"); }) == ErrorKind::DanglingLabel);
  CHECK(parse_ram("1: if r0 <= r1 goto 2 else 2\n2: halt").size() == 2);
  CHECK(error_of([] { parse_ram("1: r1 = add r1\n2: halt"); }) == ErrorKind::ArityMismatch);
  CHECK(error_of([] { parse_ram("2: halt"); }) == ErrorKind::ParseError);
  CHECK(error_of([] { parse_ram("1: r1 = add r1 c2"); }) == ErrorKind::ParseError);
  auto p = parse_ram(kDoubling);
  CHECK(print_ram(parse_ram(print_ram(p))) == print_ram(p));
}

TEST_CASE("run examples") {
  auto r = run_ram(parse_ram(kDoubling), BigNat{5}, OpSetGate::all(), 1000);
  CHECK(r.halted);
  CHECK(r.output == BigNat{40});
  CHECK(r.state.max_value_seen == BigNat{40});
  CHECK(run_ram(parse_ram("1: halt"), BigNat{7}, OpSetGate::all(), 10).output == BigNat{7});

  OpSetGate add_bool{bool_ops(), false};
  add_bool.allowed.insert(PrimOp::Add);
  CHECK(error_of([&] { run_ram(parse_ram("1: r0 = mul r0 r0\n2: halt"), BigNat{3}, add_bool, 10); }) ==
        ErrorKind::GateViolation);
  auto bounded = OpSetGate::of({PrimOp::Shl}, true);
  CHECK(run_ram(parse_ram("1: r0 = shl r0 c1\n2: halt"), BigNat{3}, bounded, 10).output == BigNat{6});
  CHECK(error_of([&] { run_ram(parse_ram("1: r0 = shl r0 r0\n2: halt"), BigNat{3}, bounded, 10); }) ==
        ErrorKind::GateViolation);

  auto loop = run_ram(parse_ram("1: r0 = add r0 c1\n2: goto 1"), BigNat{0}, OpSetGate::all(), 50);
  CHECK(!loop.halted);
  CHECK(loop.state.steps == 50);
}

TEST_CASE("max_value_seen is monotone in the step budget") {
  auto p = parse_ram(kDoubling);
  BigNat prev{0};
  for (std::uint64_t k = 0; k < 20; ++k) {
    auto r = run_ram(p, BigNat{5}, OpSetGate::all(), k);
    CHECK(prev <= r.state.max_value_seen);
    prev = r.state.max_value_seen;
  }
}

TEST_CASE("expansion bound examples and exhaustive check") {
  CHECK(el_bound(OpSetGate::of({PrimOp::Add}), 2, 1) == BigNat{7});
  CHECK(el_bound(OpSetGate::of({PrimOp::Shl}), 1, 1) == BigNat{7});
  CHECK(el_bound(OpSetGate::of({PrimOp::Mul}), 2, 2) == BigNat{255});
  CHECK(el_bound(OpSetGate::of({PrimOp::Shl}, true), 3, 2) == BigNat{31});
  CHECK(exhaustive_max({PrimOp::Add}, 2, 1) == BigNat{4});
  CHECK(exhaustive_max({PrimOp::Shl}, 1, 1) == BigNat{2});
  CHECK(exhaustive_max({PrimOp::Mul}, 2, 2) == BigNat{81});
  const std::vector<std::vector<PrimOp>> sets = {
      {PrimOp::Add}, {PrimOp::Mul}, {PrimOp::Shl}, {PrimOp::Add, PrimOp::Mul, PrimOp::Xor}, {PrimOp::Shl, PrimOp::Or}};
  for (const auto& ops : sets) {
    OpSetGate g{{ops.begin(), ops.end()}, false};
    for (std::uint64_t t = 0; t <= 2; ++t)
      for (std::uint64_t n = 1; n <= 2; ++n) CHECK(exhaustive_max(ops, t, n) <= el_bound(g, t, n));
  }
  CHECK(error_of([] { el_bound(OpSetGate::of({PrimOp::Shl}), 8, 1); }) == ErrorKind::BudgetExceeded);
}

TEST_CASE("trace extraction") {
  auto straight = parse_ram("1: r1 = add r0 c1\n2: r2 = mul r1 r1\n3: r1 = xor r2 r0\n4: r0 = sub r1 c1\n5: halt");
  Slp s = trace_to_slp(straight, BigNat{9}, OpSetGate::all(), 100);
  CHECK(s.length() == 6);
  CHECK(eval_slp_direct(s, std::vector<BigNat>{BigNat{9}}).back() == run_ram(straight, BigNat{9}, OpSetGate::all(), 100).output);
  CHECK(trace_to_slp(parse_ram("1: halt"), BigNat{7}, OpSetGate::all(), 10).length() == 2);
  CHECK(error_of([] { trace_to_slp(parse_ram("1: goto 1"), BigNat{7}, OpSetGate::all(), 10); }) ==
        ErrorKind::StepBudgetExhausted);

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 400; ++trial) {
    auto p = random_forward_program(rng, 4 + rng() % 12);
    BigNat in{rng() % 1000};
    auto r = run_ram(p, in, OpSetGate::all(), 100);
    REQUIRE(r.halted);
    Slp s = trace_to_slp(p, in, OpSetGate::all(), 100);
    CAPTURE(print_ram(p));
    CHECK(eval_slp_direct(s, std::vector<BigNat>{in}).back() == r.output);
    // the run never exceeds the analytic bound
    OpSetGate used = OpSetGate::all();
    used.allowed.erase(PrimOp::Shl);
    CHECK(r.state.max_value_seen <= el_bound(used, r.state.steps, in.bit_length()));
  }
}

TEST_CASE("gate monotonicity") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    auto p = random_forward_program(rng, 8);
    OpSetGate narrow = OpSetGate::of({PrimOp::Add, PrimOp::NatSub, PrimOp::And, PrimOp::Or, PrimOp::Xor, PrimOp::Not,
                                      PrimOp::Clear, PrimOp::Inc, PrimOp::Shr, PrimOp::Mul});
    try {
      auto a = run_ram(p, BigNat{trial}, narrow, 100);
      auto b = run_ram(p, BigNat{trial}, OpSetGate::all(), 100);
      CHECK(a.output == b.output);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::GateViolation);
    }
  }
}

TEST_CASE("ALN harness") {
  const std::vector<BigNat> sched = {BigNat::pow2(8), BigNat::pow2(16), BigNat::pow2(32)};
  auto greater = parse_ram("1: if r1 <= r0 goto 4 else 2\n2: r0 = add c1 c0\n3: halt\n4: r0 = sub c0 c0\n5: halt");
  auto rep = run_aram(greater, BigNat{5}, OpSetGate::all(), sched, 100);
  CHECK(std::all_of(rep.accepted.begin(), rep.accepted.end(), [](bool b) { return b; }));
  CHECK(rep.stabilized);
  CHECK(rep.verdict);

  auto equal = parse_ram("1: if r1 == r0 goto 2 else 4\n2: r0 = add c1 c0\n3: halt\n4: r0 = sub c0 c0\n5: halt");
  rep = run_aram(equal, BigNat{5}, OpSetGate::all(), sched, 100);
  CHECK(rep.stabilized);
  CHECK(!rep.verdict);

  auto odd = parse_ram("1: r0 = and r1 c1\n2: halt");
  rep = run_aram(odd, BigNat{5}, OpSetGate::all(),
                 {BigNat::pow2(8), BigNat::pow2(8) + BigNat{1}, BigNat::pow2(16), BigNat::pow2(16) + BigNat{1}}, 100);
  CHECK(!rep.stabilized);
}
