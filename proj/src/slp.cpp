#include "alnram/slp.hpp"

#include <random>
#include <sstream>

#include "alnram/error.hpp"

namespace alnram {

std::size_t Slp::push(PrimOp op, std::size_t lhs, std::optional<std::size_t> rhs) {
  const std::size_t index = length() + 1;
  if (rhs.has_value() != (arity(op) == 2))
    fail(ErrorKind::ArityMismatch, std::string(mnemonic(op)) + " at step " + std::to_string(index));
  if (lhs >= index || (rhs && *rhs >= index))
    fail(ErrorKind::ForwardReference,
         "step " + std::to_string(index) + " refers to an index >= " + std::to_string(index));
  steps_.push_back({op, lhs, rhs});
  return index;
}

namespace {

std::vector<std::string> split_ws(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

std::size_t parse_index(const std::string& tok, std::size_t line_no) {
  if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
    fail(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": bad index '" + tok + "'");
  return std::stoull(tok);
}

}  // namespace

Slp parse_slp(std::string_view text) {
  Slp p;
  bool seen_step = false;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    auto tok = split_ws(line);
    if (tok.empty()) continue;
    if (tok[0] == "inputs") {
      if (seen_step || tok.size() != 2)
        fail(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": misplaced inputs header");
      p = Slp(parse_index(tok[1], line_no));
      continue;
    }
    auto op = parse_mnemonic(tok[0]);
    if (!op) fail(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": unknown op '" + tok[0] + "'");
    if (tok.size() != static_cast<std::size_t>(1 + arity(*op)))
      fail(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": wrong operand count");
    std::size_t lhs = parse_index(tok[1], line_no);
    std::optional<std::size_t> rhs;
    if (arity(*op) == 2) rhs = parse_index(tok[2], line_no);
    try {
      p.push(*op, lhs, rhs);
    } catch (const Error& e) {
      fail(e.kind(), "line " + std::to_string(line_no) + ": " + e.what());
    }
    seen_step = true;
  }
  return p;
}

std::string print_slp(const Slp& p) {
  std::ostringstream out;
  if (p.input_slots() > 0) out << "inputs " << p.input_slots() << "\n";
  for (const auto& s : p.steps()) {
    out << mnemonic(s.op) << ' ' << s.lhs;
    if (s.rhs) out << ' ' << *s.rhs;
    out << '\n';
  }
  return out.str();
}

std::vector<BigNat> eval_slp_direct(const Slp& p, std::span<const BigNat> inputs,
                                    std::uint64_t budget_bits) {
  if (inputs.size() != p.input_slots())
    fail(ErrorKind::ArityMismatch, "expected " + std::to_string(p.input_slots()) + " inputs, got " +
                                       std::to_string(inputs.size()));
  std::vector<BigNat> v;
  v.reserve(p.length() + 1);
  v.emplace_back(0);
  v.emplace_back(1);
  for (const auto& x : inputs) v.push_back(x);
  for (const auto& s : p.steps()) {
    std::optional<BigNat> rhs;
    if (s.rhs) rhs = v[*s.rhs];
    BigNat r = eval_primitive(s.op, v[s.lhs], rhs, budget_bits);
    if (r.bit_length() > budget_bits)
      fail(ErrorKind::BudgetExceeded, "value at index " + std::to_string(v.size()) + " exceeds " +
                                          std::to_string(budget_bits) + " bits");
    v.push_back(std::move(r));
  }
  return v;
}

bool nonzero_direct(const Slp& p, std::span<const BigNat> inputs, std::uint64_t budget_bits) {
  return !eval_slp_direct(p, inputs, budget_bits).back().is_zero();
}

namespace {

std::size_t transitions(const BigNat& v) { return (v ^ (v << 1)).popcount(); }

}  // namespace

Slp gen_random_slp(const SlpGenOptions& o) {
  if (o.steps == 0) fail(ErrorKind::GenerationFailed, "program needs at least one step");
  if (o.ops.empty()) fail(ErrorKind::GenerationFailed, "empty operation set");
  if (o.inputs.size() != o.input_slots) fail(ErrorKind::ArityMismatch, "inputs do not match input_slots");
  if (o.aln && o.input_slots == 0) fail(ErrorKind::GenerationFailed, "aln generation needs an input slot");

  std::mt19937_64 rng(o.seed);
  Slp p(o.input_slots);
  std::vector<BigNat> vals = {BigNat{0}, BigNat{1}};
  std::vector<bool> tainted = {false, false};  // depends on the ALN slot
  for (std::size_t i = 0; i < o.input_slots; ++i) {
    vals.push_back(o.aln && i == 0 ? BigNat::pow2(o.aln_probe_exponent) : o.inputs[i]);
    tainted.push_back(o.aln && i == 0);
  }

  auto pick = [&](std::size_t bound) {
    // Bias towards recent values so programs build on themselves.
    std::uniform_int_distribution<std::size_t> any(0, bound - 1);
    if (bound > 2 && rng() % 3 != 0) {
      std::size_t lo = bound > 4 ? bound - 4 : 0;
      return std::uniform_int_distribution<std::size_t>(lo, bound - 1)(rng);
    }
    return any(rng);
  };

  for (std::size_t k = 0; k < o.steps; ++k) {
    const std::size_t bound = vals.size();
    bool placed = false;
    for (std::size_t attempt = 0; attempt < o.max_retries && !placed; ++attempt) {
      PrimOp op = o.ops[rng() % o.ops.size()];
      std::size_t lhs = pick(bound);
      std::optional<std::size_t> rhs;
      if (arity(op) == 2) rhs = pick(bound);
      if (op == PrimOp::Shl || op == PrimOp::Shr) {
        // Clamp: use a small shift amount unless the drawn one is small already.
        if (op == PrimOp::Shl && tainted[*rhs]) continue;
        if (!tainted[*rhs] && vals[*rhs].bit_length() > 16) continue;
      }
      try {
        BigNat r = eval_primitive(op, vals[lhs], rhs ? std::optional<BigNat>(vals[*rhs]) : std::nullopt,
                                  o.value_budget_bits);
        if (r.bit_length() > o.value_budget_bits) continue;
        if (o.max_transitions != 0 && transitions(r) > o.max_transitions) continue;
        p.push(op, lhs, rhs);
        tainted.push_back(tainted[lhs] || (rhs && tainted[*rhs]));
        vals.push_back(std::move(r));
        placed = true;
      } catch (const Error&) {
        continue;
      }
    }
    if (!placed) fail(ErrorKind::GenerationFailed, "no admissible step after retries");
  }
  return p;
}

}  // namespace alnram
