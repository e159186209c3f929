#include "alnram/ram.hpp"

#include <algorithm>
#include <sstream>

#include "alnram/error.hpp"

namespace alnram {

namespace {

std::vector<std::string> split_ws(std::string_view line) {
  std::istringstream in{std::string(line)};
  std::vector<std::string> out;
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

[[noreturn]] void parse_error(std::size_t line, const std::string& what) {
  fail(ErrorKind::ParseError, "line " + std::to_string(line) + ": " + what);
}

std::uint64_t parse_number(std::string_view s, std::size_t line) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char ch) { return ch >= '0' && ch <= '9'; }))
    parse_error(line, "bad number '" + std::string(s) + "'");
  return std::stoull(std::string(s));
}

RamArg parse_arg(std::string_view s, std::size_t line) {
  if (s == "c0") return RamArg::c(0);
  if (s == "c1") return RamArg::c(1);
  if (s.size() > 1 && s[0] == 'r') return RamArg::reg(static_cast<std::uint32_t>(parse_number(s.substr(1), line)));
  parse_error(line, "bad operand '" + std::string(s) + "'");
}

std::size_t parse_label(std::string_view s, std::size_t line) { return parse_number(s, line); }

std::string arg_text(const RamArg& a) {
  return a.is_reg() ? "r" + std::to_string(a.value) : "c" + std::to_string(a.value);
}

void check_label(std::size_t label, std::size_t size, std::size_t at) {
  if (label < 1 || label > size)
    fail(ErrorKind::DanglingLabel, "label " + std::to_string(at) + " jumps to missing label " + std::to_string(label));
}

}  // namespace

std::uint32_t RamProgram::register_count() const {
  std::uint32_t n = 1;
  auto see = [&](const RamArg& a) {
    if (a.is_reg()) n = std::max(n, a.value + 1);
  };
  for (const auto& c : commands) {
    if (const auto* s = std::get_if<RamAssign>(&c)) {
      n = std::max(n, s->target + 1);
      see(s->a);
      if (s->b) see(*s->b);
    } else if (const auto* q = std::get_if<RamCompare>(&c)) {
      see(q->a);
      see(q->b);
    }
  }
  return n;
}

void validate_ram(const RamProgram& p) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    const std::size_t label = i + 1;
    const auto& c = p.commands[i];
    if (const auto* s = std::get_if<RamAssign>(&c)) {
      if (arity(s->op) == 2 && !s->b)
        fail(ErrorKind::ArityMismatch, "label " + std::to_string(label) + ": " + std::string(mnemonic(s->op)) + " needs two operands");
      for (const RamArg* a : {&s->a, s->b ? &*s->b : nullptr})
        if (a && !a->is_reg() && a->value > 1) fail(ErrorKind::ParseError, "constants are limited to c0 and c1");
    } else if (const auto* q = std::get_if<RamCompare>(&c)) {
      check_label(q->then_label, p.size(), label);
      check_label(q->else_label, p.size(), label);
    } else if (const auto* g = std::get_if<RamGoto>(&c)) {
      check_label(g->label, p.size(), label);
    }
  }
}

RamProgram parse_ram(std::string_view text) {
  RamProgram p;
  std::istringstream in{std::string(text)};
  std::size_t lineno = 0;
  for (std::string line; std::getline(in, line);) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    auto tok = split_ws(line);
    if (tok.empty()) continue;
    if (tok[0].size() < 2 || tok[0].back() != ':') parse_error(lineno, "expected '<label>:'");
    const std::size_t label = parse_label(std::string_view(tok[0]).substr(0, tok[0].size() - 1), lineno);
    if (label != p.size() + 1) parse_error(lineno, "labels must be consecutive from 1");
    if (tok.size() == 2 && tok[1] == "halt") {
      p.add(RamHalt{});
    } else if (tok.size() == 3 && tok[1] == "goto") {
      p.add(RamGoto{parse_label(tok[2], lineno)});
    } else if (tok.size() == 9 && tok[1] == "if" && tok[5] == "goto" && tok[7] == "else") {
      RamRel rel;
      if (tok[3] == "<=")
        rel = RamRel::Le;
      else if (tok[3] == "==")
        rel = RamRel::Eq;
      else
        parse_error(lineno, "relation must be <= or ==");
      p.add(RamCompare{parse_arg(tok[2], lineno), rel, parse_arg(tok[4], lineno), parse_label(tok[6], lineno),
                       parse_label(tok[8], lineno)});
    } else if ((tok.size() == 5 || tok.size() == 6) && tok[2] == "=") {
      const RamArg target = parse_arg(tok[1], lineno);
      if (!target.is_reg()) parse_error(lineno, "assignment target must be a register");
      auto op = parse_mnemonic(tok[3]);
      if (!op) parse_error(lineno, "unknown mnemonic '" + tok[3] + "'");
      RamAssign a{target.value, *op, parse_arg(tok[4], lineno), std::nullopt};
      // unary ops may carry a dummy second operand
      if (tok.size() == 6 && arity(*op) == 2) a.b = parse_arg(tok[5], lineno);
      if (arity(*op) == 2 && !a.b) fail(ErrorKind::ArityMismatch, "line " + std::to_string(lineno) + ": missing operand");
      p.add(a);
    } else {
      parse_error(lineno, "unrecognised command");
    }
  }
  validate_ram(p);
  return p;
}

std::string print_ram(const RamProgram& p) {
  std::ostringstream out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    out << i + 1 << ": ";
    const auto& c = p.commands[i];
    if (const auto* s = std::get_if<RamAssign>(&c)) {
      out << "r" << s->target << " = " << mnemonic(s->op) << " " << arg_text(s->a);
      if (s->b) out << " " << arg_text(*s->b);
    } else if (const auto* q = std::get_if<RamCompare>(&c)) {
      out << "if " << arg_text(q->a) << (q->rel == RamRel::Le ? " <= " : " == ") << arg_text(q->b) << " goto "
          << q->then_label << " else " << q->else_label;
    } else if (const auto* g = std::get_if<RamGoto>(&c)) {
      out << "goto " << g->label;
    } else {
      out << "halt";
    }
    out << "\n";
  }
  return out.str();
}

std::set<PrimOp> bool_ops() { return {PrimOp::And, PrimOp::Or, PrimOp::Xor, PrimOp::Not, PrimOp::Clear}; }

OpSetGate OpSetGate::all() { return {{kAllOps.begin(), kAllOps.end()}, false}; }

OpSetGate OpSetGate::of(std::initializer_list<PrimOp> ops, bool bounded) { return {std::set<PrimOp>(ops), bounded}; }

namespace {

using AssignHook = std::function<void(const RamAssign&)>;

RamResult run_impl(const RamProgram& p, std::vector<BigNat> init, const OpSetGate& gate, const RamRunOptions& opt,
                   const AssignHook& hook) {
  validate_ram(p);
  RamResult r;
  RamState& st = r.state;
  st.regs = std::move(init);
  st.regs.resize(std::max<std::size_t>(st.regs.size(), p.register_count()));
  for (const auto& v : st.regs) st.max_value_seen = std::max(st.max_value_seen, v);
  auto value = [&](const RamArg& a) -> const BigNat& {
    static const BigNat zero{0}, one{1};
    if (a.is_reg()) return st.regs[a.value];
    return a.value ? one : zero;
  };
  while (true) {
    if (st.pc < 1 || st.pc > p.size()) fail(ErrorKind::DanglingLabel, "fell off the program at " + std::to_string(st.pc));
    const auto& c = p.at(st.pc);
    if (std::holds_alternative<RamHalt>(c)) {
      r.halted = true;
      break;
    }
    if (st.steps >= opt.max_steps) break;
    if (const auto* s = std::get_if<RamAssign>(&c)) {
      if (!gate.permits(s->op))
        fail(ErrorKind::GateViolation, std::string(mnemonic(s->op)) + " at label " + std::to_string(st.pc));
      if (gate.bounded_shift_only && (s->op == PrimOp::Shl || s->op == PrimOp::Shr) && s->b->is_reg())
        fail(ErrorKind::GateViolation, "unbounded shift at label " + std::to_string(st.pc));
      std::optional<BigNat> b;
      if (s->b && arity(s->op) == 2) b = value(*s->b);
      BigNat v = eval_primitive(s->op, value(s->a), b, opt.value_cap_bits);
      if (v.bit_length() > opt.value_cap_bits)
        fail(ErrorKind::BudgetExceeded, "register value exceeds " + std::to_string(opt.value_cap_bits) + " bits");
      st.max_value_seen = std::max(st.max_value_seen, v);
      st.regs[s->target] = std::move(v);
      if (hook) hook(*s);
      ++st.pc;
    } else if (const auto* q = std::get_if<RamCompare>(&c)) {
      const bool yes = q->rel == RamRel::Le ? value(q->a) <= value(q->b) : value(q->a) == value(q->b);
      st.pc = yes ? q->then_label : q->else_label;
    } else {
      st.pc = std::get<RamGoto>(c).label;
    }
    ++st.steps;
    if (opt.on_step) opt.on_step(st);
  }
  r.output = st.regs[0];
  return r;
}

}  // namespace

RamResult run_ram(const RamProgram& p, std::vector<BigNat> init, const OpSetGate& gate, const RamRunOptions& opt) {
  return run_impl(p, std::move(init), gate, opt, {});
}

RamResult run_ram(const RamProgram& p, const BigNat& input, const OpSetGate& gate, std::uint64_t max_steps) {
  RamRunOptions opt;
  opt.max_steps = max_steps;
  return run_impl(p, {input}, gate, opt, {});
}

Slp trace_to_slp(const RamProgram& p, const BigNat& input, const OpSetGate& gate, std::uint64_t max_steps) {
  Slp out(1);
  std::vector<std::size_t> where(p.register_count(), 0);
  where[0] = 2;
  auto index = [&](const RamArg& a) { return a.is_reg() ? where[a.value] : std::size_t{a.value}; };
  RamRunOptions opt;
  opt.max_steps = max_steps;
  auto r = run_impl(p, {input}, gate, opt, [&](const RamAssign& s) {
    std::optional<std::size_t> rhs;
    if (arity(s.op) == 2) rhs = index(*s.b);
    out.push(s.op, index(s.a), rhs);
    where[s.target] = out.length();
  });
  if (!r.halted) fail(ErrorKind::StepBudgetExhausted, "run did not halt within " + std::to_string(max_steps) + " steps");
  // the output register may not have been written last
  if (where[0] != out.length()) out.push(PrimOp::Or, where[0], std::size_t{0});
  return out;
}

BigNat el_bound(const OpSetGate& gate, std::uint64_t t, std::uint64_t n, std::uint64_t cap_bits) {
  std::uint64_t L = std::max<std::uint64_t>(n, 1);
  for (std::uint64_t i = 0; i < t; ++i) {
    std::uint64_t next = L;
    if (gate.permits(PrimOp::Add) || gate.permits(PrimOp::Inc)) next = std::max(next, L + 1);
    if (gate.permits(PrimOp::Mul)) next = std::max(next, 2 * L);
    if (gate.permits(PrimOp::Shl) && gate.bounded_shift_only) {
      next = std::max(next, L + 1);  // amounts are the constants 0 and 1
    } else if (gate.permits(PrimOp::Shl)) {
      if (L >= 63 || L + (std::uint64_t{1} << L) > cap_bits)
        fail(ErrorKind::BudgetExceeded, "expansion bound exceeds " + std::to_string(cap_bits) + " bits");
      next = std::max(next, L + (std::uint64_t{1} << L));
    }
    if (next > cap_bits) fail(ErrorKind::BudgetExceeded, "expansion bound exceeds " + std::to_string(cap_bits) + " bits");
    L = next;
  }
  return BigNat::ones(L);
}

AramReport run_aram(const RamProgram& p, const BigNat& input, const OpSetGate& gate,
                    const std::vector<BigNat>& schedule, std::uint64_t max_steps) {
  AramReport rep;
  rep.schedule = schedule;
  RamRunOptions opt;
  opt.max_steps = max_steps;
  for (const auto& x : schedule) {
    auto r = run_ram(p, {input, x}, gate, opt);
    rep.halted.push_back(r.halted);
    rep.accepted.push_back(r.halted && !r.output.is_zero());
  }
  if (!rep.accepted.empty()) {
    const std::size_t from = rep.accepted.size() / 2;
    rep.stabilized = std::all_of(rep.accepted.begin() + from, rep.accepted.end(),
                                 [&](bool v) { return v == rep.accepted.back(); });
    rep.verdict = rep.stabilized && rep.accepted.back();
  }
  return rep;
}

}  // namespace alnram
