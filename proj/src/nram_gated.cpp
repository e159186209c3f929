#include "alnram/codegen.hpp"
#include "alnram/error.hpp"
#include "alnram/nram.hpp"
#include "alnram/numerics.hpp"
#include "nram_layout.hpp"

namespace alnram {

using namespace nram_detail;

namespace {

using A = RamArg;

// Straight-line checker: every expectation jumps to a shared failure exit.
struct Checker {
  RamProgram p;
  std::uint32_t next = 1;
  std::vector<std::size_t> fails;

  A fresh() { return A::reg(next++); }
  A op(PrimOp o, A a, std::optional<A> b = std::nullopt) {
    A t = fresh();
    p.add(RamAssign{t.value, o, a, b});
    return t;
  }
  void expect_eq(A a, A b) {
    fails.push_back(p.size());
    p.add(RamCompare{a, RamRel::Eq, b, p.size() + 2, 0});
  }
  void expect_ne(A a, A b) {
    fails.push_back(p.size());
    p.add(RamCompare{a, RamRel::Eq, b, 0, p.size() + 2});
  }
  // fails when b <= a
  void expect_lt(A a, A b) {
    fails.push_back(p.size());
    p.add(RamCompare{b, RamRel::Le, a, 0, p.size() + 2});
  }
  RamProgram finish() {
    p.add(RamAssign{0, PrimOp::Or, A::c(1), A::c(0)});
    p.add(RamHalt{});
    const std::size_t bad = p.size() + 1;
    p.add(RamAssign{0, PrimOp::And, A::c(0), A::c(0)});
    p.add(RamHalt{});
    for (auto at : fails) {
      auto& c = std::get<RamCompare>(p.commands[at]);
      if (c.then_label == 0) c.then_label = bad;
      if (c.else_label == 0) c.else_label = bad;
    }
    validate_ram(p);
    return std::move(p);
  }
};

struct Built {
  RamProgram program;
  std::vector<A> slot;  // register per slot (Reg) or unset
};

Built build_shr() {
  Checker k;
  Built b;
  b.slot.assign(kSlotCount, A::c(0));
  const A a = k.op(PrimOp::Or, A::reg(0), A::c(0));
  const A u = k.op(PrimOp::Clear, k.op(PrimOp::Inc, a), a);
  A mask = a;
  for (std::size_t i = 0; i <= kShrOrder.size(); ++i) mask = k.op(PrimOp::Shr, mask, u);
  A t = k.op(PrimOp::Inc, mask);
  k.expect_eq(k.op(PrimOp::And, t, mask), A::c(0));
  k.expect_eq(k.op(PrimOp::Shr, t, u), A::c(1));
  k.expect_eq(k.op(PrimOp::Inc, k.op(PrimOp::And, a, mask)), u);
  A x = a;
  for (auto s : kShrOrder) {
    x = k.op(PrimOp::Shr, x, u);
    b.slot[s] = k.op(PrimOp::And, x, mask);
  }
  for (auto [z, w] : {std::pair{Z1, W1}, std::pair{Z3, W3}}) {
    const A zi = k.op(PrimOp::Inc, b.slot[z]);
    k.expect_eq(k.op(PrimOp::And, zi, b.slot[z]), A::c(0));
    k.expect_eq(k.op(PrimOp::Shr, zi, b.slot[w]), A::c(1));
  }
  for (const auto& c : kCerts) {
    const A y = c.y == kOne ? A::c(1) : b.slot[c.y];
    k.expect_eq(k.op(PrimOp::Shr, b.slot[c.x], b.slot[c.by_w3 ? W3 : W1]), y);
    k.expect_eq(k.op(PrimOp::And, b.slot[c.x], b.slot[c.by_w3 ? Z3 : Z1]), A::c(0));
  }
  b.program = k.finish();
  return b;
}

Built build_div() {
  Checker k;
  Built b;
  b.slot.assign(kSlotCount, A::c(0));
  const A a = k.op(PrimOp::Or, A::reg(0), A::c(0));
  const A a1 = k.op(PrimOp::Inc, a);
  const A Mu = k.op(PrimOp::Clear, a1, a);
  const A mask = k.op(PrimOp::Clear, a, a1);
  A x = k.op(PrimOp::IntDiv, a, Mu);
  k.expect_eq(k.op(PrimOp::And, x, mask), A::c(0));
  for (auto s : kDivOrder) {
    x = k.op(PrimOp::IntDiv, x, Mu);
    b.slot[s] = k.op(PrimOp::And, x, mask);
  }
  k.expect_eq(k.op(PrimOp::IntDiv, x, Mu), A::c(0));
  for (auto z : {Z1, Z3}) k.expect_eq(k.op(PrimOp::And, k.op(PrimOp::Inc, b.slot[z]), b.slot[z]), A::c(0));
  for (const auto& c : kCerts) {
    const A z = b.slot[c.by_w3 ? Z3 : Z1];
    const A y = c.y == kOne ? A::c(1) : b.slot[c.y];
    k.expect_eq(k.op(PrimOp::And, b.slot[c.x], z), A::c(0));
    k.expect_eq(k.op(PrimOp::IntDiv, b.slot[c.x], k.op(PrimOp::Inc, z)), y);
  }
  b.program = k.finish();
  return b;
}

// slots hold shifted values; b.slot[s] * 2^-(u at(s)) is the element
Built build_mul(std::vector<std::size_t>& at) {
  Checker k;
  Built b;
  b.slot.assign(kSlotCount, A::c(0));
  at.assign(kSlotCount, 0);
  const A a = k.op(PrimOp::Or, A::reg(0), A::c(0));
  const A a1 = k.op(PrimOp::Inc, a);
  const A Mu = k.op(PrimOp::Clear, a1, a);
  const A mask = k.op(PrimOp::Clear, a, a1);
  A P = k.op(PrimOp::Mul, mask, Mu);
  k.expect_eq(k.op(PrimOp::And, P, a), A::c(0));
  std::vector<A> pw{A::c(1), Mu};
  pw.push_back(k.op(PrimOp::Mul, Mu, Mu));
  for (std::size_t i = 0; i < kDivOrder.size(); ++i) {
    P = k.op(PrimOp::Mul, P, Mu);
    b.slot[kDivOrder[i]] = k.op(PrimOp::And, P, a);
    at[kDivOrder[i]] = i + 2;
    pw.push_back(k.op(PrimOp::Mul, pw.back(), Mu));
  }
  k.expect_lt(a, pw.back());
  const A two = k.op(PrimOp::Inc, A::c(1));
  std::vector<A> g(kSlotCount, A::c(0));
  for (auto z : {Z1, Z3}) {
    const A t = b.slot[z], low = pw[at[z]];
    k.expect_eq(k.op(PrimOp::And, t, low), low);
    g[z] = k.op(PrimOp::Clear, k.op(PrimOp::Mul, t, two), t);
    k.expect_ne(g[z], A::c(0));
    k.expect_eq(k.op(PrimOp::Inc, k.op(PrimOp::Not, g[z])), g[z]);
  }
  for (const auto& c : kCerts) {
    const auto z = c.by_w3 ? Z3 : Z1;
    const A y = c.y == kOne ? A::c(1) : b.slot[c.y];
    const A iy = c.y == kOne ? A::c(1) : pw[at[c.y]];
    const A lhs = k.op(PrimOp::Mul, k.op(PrimOp::Mul, b.slot[c.x], iy), pw[at[z]]);
    const A rhs = k.op(PrimOp::Mul, k.op(PrimOp::Mul, y, g[z]), pw[at[c.x]]);
    k.expect_eq(lhs, rhs);
  }
  b.program = k.finish();
  return b;
}

// shl prologue: w1, w3 and the element mask, plus the header and length checks
struct ShlPrologue {
  RamProgram program;
  A w1, w3, mask;
};

ShlPrologue build_shl_prologue() {
  Checker k;
  const A a = k.op(PrimOp::Or, A::reg(0), A::c(0));
  const A w1 = k.op(PrimOp::Clear, k.op(PrimOp::Inc, a), a);
  const A m = k.op(PrimOp::Or, w1, k.op(PrimOp::Shl, w1, A::c(1)));
  const A w3 = k.op(PrimOp::Shl, m, m);
  auto up = [&](A x) {
    x = k.op(PrimOp::Shl, x, w3);
    for (int i = 0; i < 3; ++i) x = k.op(PrimOp::Shl, x, w1);
    return x;
  };
  const A M = up(A::c(1));
  const A mask = k.op(PrimOp::Not, M);
  k.expect_eq(k.op(PrimOp::Inc, k.op(PrimOp::And, a, mask)), w1);
  const A lim = k.op(PrimOp::Not, up(up(up(M))));
  k.expect_eq(k.op(PrimOp::Clear, a, lim), A::c(0));
  return {k.finish(), w1, w3, mask};
}

// is element j of alpha equal to R5? R0 = alpha, R1 = w1, R2 = w3, R3 = mask.
// Leaving a 0/1 answer keeps remove_shr's final normalisation short.
RamProgram build_shl_body(int j) {
  RamProgram p;
  p.add(RamAssign{4, PrimOp::Or, A::reg(0), A::c(0)});
  for (int i = 0; i < j; ++i) {
    p.add(RamAssign{4, PrimOp::Shr, A::reg(4), A::reg(2)});
    for (int r = 0; r < 3; ++r) p.add(RamAssign{4, PrimOp::Shr, A::reg(4), A::reg(1)});
  }
  p.add(RamAssign{4, PrimOp::And, A::reg(4), A::reg(3)});
  const std::size_t here = p.size() + 1;
  p.add(RamCompare{A::reg(4), RamRel::Eq, A::reg(5), here + 1, here + 3});
  p.add(RamAssign{0, PrimOp::Or, A::c(1), A::c(0)});
  p.add(RamHalt{});
  p.add(RamAssign{0, PrimOp::And, A::c(0), A::c(0)});
  p.add(RamHalt{});
  validate_ram(p);
  return p;
}

RamRunOptions options() {
  RamRunOptions o;
  o.max_steps = 100000;
  return o;
}

void gated_shl(const BigNat& alpha, GatedReport& r) {
  const OpSetGate gate = scheme_gate(NramScheme::Shl);
  // the cap keeps m << m from running away on junk
  if (clear(alpha + BigNat{1}, alpha).bit_length() > 6) return;
  const auto pro = build_shl_prologue();
  auto res = run_ram(pro.program, {alpha}, gate, options());
  r.steps += res.state.steps;
  if (!res.halted || res.output != BigNat{1}) return;
  auto host = decode_alpha(NramScheme::Shl, alpha);
  if (!host) return;
  const BigNat expect[3] = {host->witness.w2, host->witness.w4, host->witness.w5};
  for (int j = 1; j <= 3; ++j) {
    const std::vector<BigNat> init = {alpha, res.state.reg(pro.w1.value), res.state.reg(pro.w3.value),
                                      res.state.reg(pro.mask.value), BigNat{}, expect[j - 1]};
    const auto body = remove_shr(build_shl_body(j));
    auto br = run_ram(body.program, init, gate, options());
    r.steps += br.state.steps;
    if (!br.halted || br.output != BigNat{1}) return;
    r.components.push_back(expect[j - 1]);
  }
  r.ok = true;
}

void gated_plain(NramScheme scheme, const BigNat& alpha, GatedReport& r) {
  std::vector<std::size_t> at;
  Built b = scheme == NramScheme::Shr ? build_shr() : scheme == NramScheme::Div ? build_div() : build_mul(at);
  auto res = run_ram(b.program, {alpha}, scheme_gate(scheme), options());
  r.steps += res.state.steps;
  if (!res.halted || res.output != BigNat{1}) return;
  for (auto s : {W2, W4, W5}) {
    BigNat v = res.state.reg(b.slot[s].value);
    if (scheme == NramScheme::Mul) v = exact_div(v, BigNat::pow2(at[s] * (clear(alpha + BigNat{1}, alpha).bit_length() - 1)));
    r.components.push_back(v);
  }
  r.ok = true;
}

}  // namespace

GatedReport verify_gated(NramScheme scheme, const BigNat& alpha) {
  GatedReport r;
  try {
    if (scheme == NramScheme::Shl)
      gated_shl(alpha, r);
    else
      gated_plain(scheme, alpha, r);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::GateViolation) ++r.violations;
    else if (e.kind() != ErrorKind::BudgetExceeded && e.kind() != ErrorKind::NotExact) throw;
    r.ok = false;
    r.components.clear();
  }
  if (!r.ok) r.components.clear();
  return r;
}

}  // namespace alnram
