#include "alnram/codegen.hpp"

#include <algorithm>
#include <functional>

#include "alnram/error.hpp"

namespace alnram {

namespace {

using A = RamArg;

struct Builder {
  RamProgram p;
  std::uint32_t next = reg::scratch;

  std::uint32_t fresh() { return next++; }
  void emit(std::uint32_t target, PrimOp op, A a, std::optional<A> b = std::nullopt) {
    p.add(RamAssign{target, op, a, b});
  }
  A op(PrimOp o, A a, A b) {
    auto t = fresh();
    emit(t, o, a, b);
    return A::reg(t);
  }
  // constant shift as repeated shift-by-1
  A shift(PrimOp o, A a, std::uint64_t by) {
    if (by == 0) return a;
    A cur = a;
    for (std::uint64_t i = 0; i < by; ++i) cur = op(o, cur, A::c(1));
    return cur;
  }
  A any_of(const std::vector<A>& xs) {
    if (xs.empty()) return A::c(0);
    A acc = xs[0];
    for (std::size_t i = 1; i < xs.size(); ++i) acc = op(PrimOp::Or, acc, xs[i]);
    return acc;
  }
};

// Behaviour of one (bit, state) combination before the boundary checks.
struct Raw {
  int bit;
  std::uint32_t state;
  Move move;
};

Raw raw_rule(const TmSpec& spec, std::uint32_t q, int b) {
  if (q >= spec.k) return {b, q, Move::S};  // undecodable states stay frozen
  auto t = spec.rule(q, b);
  return {t.bit, t.state, t.move};
}

RamProgram emit(const TmSpec& spec, bool bounded) {
  Builder b;
  const std::uint32_t c = spec.c;
  const A head = A::reg(reg::head), tape = A::reg(reg::tape), state = A::reg(reg::state),
          boundary = A::reg(reg::boundary);

  // state bits aligned with the head
  std::vector<A> qbit = {state};
  for (std::uint32_t j = 1; j < c; ++j) qbit.push_back(b.op(PrimOp::Shr, qbit.back(), A::c(1)));

  // one minterm per (tape bit, state number)
  struct Term {
    A reg;
    Raw raw;
    std::uint32_t q;
  };
  std::vector<Term> terms;
  for (std::uint32_t q = 0; q < (1u << c); ++q)
    for (int bit = 0; bit < 2; ++bit) {
      A t = b.op(bit ? PrimOp::And : PrimOp::Clear, head, tape);
      for (std::uint32_t j = 0; j < c; ++j) t = b.op(((q >> j) & 1) ? PrimOp::And : PrimOp::Clear, t, qbit[j]);
      terms.push_back({t, raw_rule(spec, q, bit), q});
    }
  auto select = [&](const std::function<bool(const Term&)>& pred) {
    std::vector<A> xs;
    for (const auto& t : terms)
      if (pred(t)) xs.push_back(t.reg);
    return b.any_of(xs);
  };

  const A down = select([](const Term& t) { return t.raw.move == Move::L; });
  const A up = select([](const Term& t) { return t.raw.move == Move::R; });
  const A fall = b.op(PrimOp::And, down, boundary);
  A over = A::c(0);
  if (bounded) over = b.op(PrimOp::And, up, b.shift(PrimOp::Shr, boundary, c));
  const A stopped = b.op(PrimOp::Or, fall, over);
  const A normal = b.op(PrimOp::Clear, head, stopped);

  const A out = select([](const Term& t) { return t.raw.bit == 1; });
  std::vector<A> qnext;
  for (std::uint32_t i = 0; i < c; ++i) {
    A n = b.op(PrimOp::And, select([&](const Term& t) { return (t.raw.state >> i) & 1; }), normal);
    A f = b.op(PrimOp::And,
               select([&](const Term& t) { return ((is_halting(t.q) ? t.q : kReject) >> i) & 1; }), fall);
    A bits = b.op(PrimOp::Or, n, f);
    if ((kTapeExceeded >> i) & 1) bits = b.op(PrimOp::Or, bits, over);
    qnext.push_back(bits);
  }

  const A to_up = b.op(PrimOp::And, up, normal);
  const A to_down = b.op(PrimOp::And, down, normal);
  const A stay = b.op(PrimOp::Clear, head, b.op(PrimOp::Or, to_up, to_down));

  // new state written at the new head position
  std::vector<A> parts;
  for (auto [mask, dir] : {std::pair{to_up, 1}, std::pair{stay, 0}, std::pair{to_down, -1}}) {
    std::vector<A> bits;
    for (std::uint32_t i = 0; i < c; ++i) bits.push_back(b.shift(PrimOp::Shl, b.op(PrimOp::And, qnext[i], mask), i));
    A word = b.any_of(bits);
    if (dir > 0) word = b.shift(PrimOp::Shl, word, 1);
    if (dir < 0) word = b.shift(PrimOp::Shr, word, 1);
    parts.push_back(word);
  }
  const A new_state = b.any_of(parts);
  const A new_head = b.any_of({b.shift(PrimOp::Shl, to_up, 1), stay, b.shift(PrimOp::Shr, to_down, 1)});
  const A new_tape = b.op(PrimOp::Or, b.op(PrimOp::And, out, head), b.op(PrimOp::Clear, tape, head));

  b.emit(reg::tape, PrimOp::Or, new_tape, A::c(0));
  b.emit(reg::state, PrimOp::Or, new_state, A::c(0));
  b.emit(reg::head, PrimOp::Or, new_head, A::c(0));
  return b.p;
}

}  // namespace

OpSetGate step_gate() {
  OpSetGate g{bool_ops(), true};
  g.allowed.insert(PrimOp::Shl);
  g.allowed.insert(PrimOp::Shr);
  return g;
}

RamProgram emit_step(const TmSpec& spec) { return emit(spec, false); }
RamProgram emit_bounded_step(const TmSpec& spec) { return emit(spec, true); }

PackedLayout pack_inputs(const TmSpec& spec, const std::vector<PackedMachine>& machines, const BigNat& last_input) {
  PackedLayout l;
  std::uint64_t off = 0;
  for (const auto& m : machines) {
    if (m.inp.bit_length() > m.s)
      fail(ErrorKind::InputTooWide, "input " + m.inp.to_dec() + " does not fit " + std::to_string(m.s) + " cells");
    l.offsets.push_back(off);
    l.widths.push_back(id_field(m.s, spec.c));
    l.B |= BigNat::pow2(off);
    l.inp |= m.inp << off;
    off += l.widths.back();
  }
  l.offsets.push_back(off);
  l.B |= BigNat::pow2(off);
  l.inp |= last_input << off;
  return l;
}

TmConfig unpack_machine(const TmSpec& spec, const PackedLayout& layout, std::size_t j, const BigNat& tape,
                        const BigNat& head, const BigNat& state) {
  const std::uint64_t off = layout.offsets.at(j);
  const bool last = j + 1 == layout.offsets.size();
  auto segment = [&](const BigNat& v) { return last ? v >> off : (v >> off) & BigNat::ones(layout.widths[j]); };
  TmConfig cfg;
  cfg.tape = segment(tape);
  const BigNat h = segment(head);
  if (h.popcount() != 1) fail(ErrorKind::MalformedDescription, "segment has no single head bit");
  cfg.head = h.bit_length() - 1;
  const BigNat q = (segment(state) >> cfg.head) & BigNat::ones(spec.c);
  cfg.state = static_cast<std::uint32_t>(q.to_u64());
  return cfg;
}

RamProgram emit_runner(const TmSpec& spec, RunnerVariant variant) {
  Builder b;
  const A in = A::reg(reg::input), B = A::reg(reg::marker);
  b.emit(reg::tape, PrimOp::Or, in, A::c(0));
  b.emit(reg::state, PrimOp::And, A::c(0), A::c(0));
  switch (variant) {
    case RunnerVariant::Step:
      b.emit(reg::marker, PrimOp::Or, A::c(1), A::c(0));
      b.emit(reg::boundary, PrimOp::Or, A::c(1), A::c(0));
      break;
    case RunnerVariant::Bounded:
      b.emit(reg::boundary, PrimOp::Or, A::c(1), b.shift(PrimOp::Shl, B, spec.c - 1));
      b.emit(reg::marker, PrimOp::Or, A::c(1), A::c(0));
      break;
    case RunnerVariant::Parallel:
      b.emit(reg::boundary, PrimOp::Or, B, A::c(0));
      break;
  }
  b.emit(reg::head, PrimOp::Or, B, A::c(0));

  const std::size_t loop = b.p.size() + 1;
  RamProgram step = variant == RunnerVariant::Step ? emit_step(spec) : emit_bounded_step(spec);
  // step scratch registers live above ours
  const std::uint32_t t1 = std::max(step.register_count(), b.next), t2 = t1 + 1;
  for (auto& cmd : step.commands) b.p.add(cmd);

  // all machines halted: head = B, no state bit outside {B, B << 1}, every segment halted
  const std::size_t check = b.p.size() + 1;
  const std::size_t c1 = check + 1, c2 = c1 + 4, done = c2 + 4;
  b.p.add(RamCompare{A::reg(reg::head), RamRel::Eq, B, c1, loop});
  b.emit(t1, PrimOp::Shl, B, A::c(1));
  b.emit(t1, PrimOp::Or, B, A::reg(t1));
  b.emit(t1, PrimOp::Clear, A::reg(reg::state), A::reg(t1));
  b.p.add(RamCompare{A::reg(t1), RamRel::Eq, A::c(0), c2, loop});
  b.emit(t2, PrimOp::Shr, A::reg(reg::state), A::c(1));
  b.emit(t2, PrimOp::Or, A::reg(reg::state), A::reg(t2));
  b.emit(t2, PrimOp::And, A::reg(t2), B);
  b.p.add(RamCompare{A::reg(t2), RamRel::Eq, B, done, loop});
  if (variant == RunnerVariant::Parallel) {
    b.emit(reg::input, PrimOp::Or, A::reg(reg::state), A::c(0));
    b.p.add(RamHalt{});
  } else {
    const std::size_t here = b.p.size() + 1;
    b.p.add(RamCompare{A::reg(reg::state), RamRel::Eq, A::c(1), here + 1, here + 3});
    b.emit(reg::input, PrimOp::Or, A::c(1), A::c(0));
    b.p.add(RamHalt{});
    b.emit(reg::input, PrimOp::And, A::c(0), A::c(0));
    b.p.add(RamHalt{});
  }
  validate_ram(b.p);
  return b.p;
}

ShrFree remove_shr(const RamProgram& p) {
  validate_ram(p);
  const std::uint32_t n = p.register_count();
  const std::uint32_t S = n;
  auto shadow = [&](std::uint32_t i) { return n + 1 + i; };
  const std::uint32_t T = 2 * n + 1;

  // registers whose value may depend on a right shift
  std::vector<bool> tainted(n, false);
  bool needs_shadow = false;
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& c : p.commands) {
      const auto* s = std::get_if<RamAssign>(&c);
      if (!s) continue;
      bool t = s->op == PrimOp::Shr || (s->a.is_reg() && tainted[s->a.value]);
      if (s->b && arity(s->op) == 2 && s->b->is_reg() && tainted[s->b->value]) t = true;
      if (t && !tainted[s->target]) tainted[s->target] = changed = true;
    }
  }
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto* s = std::get_if<RamAssign>(&p.commands[i]);
    if (!s) continue;
    const std::string where = " at label " + std::to_string(i + 1);
    if (s->op == PrimOp::Mul || s->op == PrimOp::ExactDiv || s->op == PrimOp::IntDiv)
      fail(ErrorKind::UnsupportedProgram, std::string(mnemonic(s->op)) + " does not commute with scaling" + where);
    if ((s->op == PrimOp::Shl || s->op == PrimOp::Shr) && s->b->is_reg()) {
      if (tainted[s->b->value]) fail(ErrorKind::UnsupportedProgram, "shift amount depends on a right shift" + where);
      needs_shadow = true;
    }
  }

  ShrFree out;
  out.scale = S;
  out.original_registers = n;
  RamProgram& q = out.program;
  auto emit = [&](std::uint32_t t, PrimOp op, A a, std::optional<A> b = std::nullopt) { q.add(RamAssign{t, op, a, b}); };
  auto scaled = [&](A a) { return (!a.is_reg() && a.value == 1) ? A::reg(S) : a; };
  auto native = [&](A a) { return a.is_reg() ? A::reg(shadow(a.value)) : a; };
  auto amount = [&](A a) { return a.is_reg() ? A::reg(shadow(a.value)) : a; };

  emit(S, PrimOp::Or, A::c(1), A::c(0));
  if (needs_shadow)
    for (std::uint32_t i = 0; i < n; ++i) emit(shadow(i), PrimOp::Or, A::reg(i), A::c(0));

  // jump targets are original labels until the fix-up below
  std::vector<std::size_t> fix;
  for (std::size_t i = 0; i < p.size(); ++i) {
    out.entry.push_back(q.size() + 1);
    const auto& c = p.commands[i];
    if (const auto* s = std::get_if<RamAssign>(&c)) {
      const A a = scaled(s->a);
      switch (s->op) {
        case PrimOp::Inc:
          emit(s->target, PrimOp::Add, a, A::reg(S));
          break;
        case PrimOp::Not:
          emit(T, PrimOp::Not, A::reg(S));
          emit(T + 1, PrimOp::Not, a);
          emit(s->target, PrimOp::Clear, A::reg(T + 1), A::reg(T));
          break;
        case PrimOp::Shl:
          emit(s->target, PrimOp::Shl, a, amount(*s->b));
          break;
        case PrimOp::Shr: {
          const A x = amount(*s->b);
          emit(s->target, PrimOp::Or, a, A::c(0));
          if (x.is_reg() || x.value != 0) {
            for (std::uint32_t r = 0; r <= S; ++r)
              if (r != s->target) emit(r, PrimOp::Shl, A::reg(r), x);
            emit(T, PrimOp::Not, A::reg(S));
            emit(s->target, PrimOp::Clear, A::reg(s->target), A::reg(T));
          }
          break;
        }
        default:
          emit(s->target, s->op, a, s->b ? std::optional(scaled(*s->b)) : std::nullopt);
      }
      // shadow after the scaled op, which may read the old shadow as a shift amount
      if (needs_shadow && !tainted[s->target]) {
        std::optional<A> nb;
        if (s->b) nb = native(*s->b);
        emit(shadow(s->target), s->op, native(s->a), nb);
      }
    } else if (const auto* cmp = std::get_if<RamCompare>(&c)) {
      fix.push_back(q.size());
      q.add(RamCompare{scaled(cmp->a), cmp->rel, scaled(cmp->b), cmp->then_label, cmp->else_label});
    } else if (const auto* g = std::get_if<RamGoto>(&c)) {
      fix.push_back(q.size());
      q.add(*g);
    } else {
      // R0 = R0' / S by scanning its bits upward from S
      const A res = A::reg(T), P = A::reg(T + 1), Q = A::reg(T + 2), probe = A::reg(T + 3);
      emit(T, PrimOp::And, A::c(0), A::c(0));
      emit(T + 1, PrimOp::Or, A::reg(S), A::c(0));
      emit(T + 2, PrimOp::Or, A::c(1), A::c(0));
      const std::size_t loop = q.size() + 1;
      q.add(RamCompare{P, RamRel::Le, A::reg(0), loop + 1, loop + 7});
      emit(T + 3, PrimOp::And, A::reg(0), P);
      q.add(RamCompare{probe, RamRel::Eq, P, loop + 3, loop + 4});
      emit(T, PrimOp::Or, res, Q);
      emit(T + 1, PrimOp::Shl, P, A::c(1));
      emit(T + 2, PrimOp::Shl, Q, A::c(1));
      q.add(RamGoto{loop});
      emit(0, PrimOp::Or, res, A::c(0));
      q.add(RamHalt{});
    }
  }
  for (std::size_t at : fix) {
    if (auto* cmp = std::get_if<RamCompare>(&q.commands[at])) {
      cmp->then_label = out.entry.at(cmp->then_label - 1);
      cmp->else_label = out.entry.at(cmp->else_label - 1);
    } else {
      auto& g = std::get<RamGoto>(q.commands[at]);
      g.label = out.entry.at(g.label - 1);
    }
  }
  validate_ram(q);
  return out;
}

}  // namespace alnram
