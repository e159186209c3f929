#include "alnram/tm.hpp"

#include <sstream>

#include "alnram/error.hpp"

namespace alnram {

std::uint32_t state_bits(std::uint32_t k) {
  std::uint32_t c = 0;
  while ((std::uint64_t{1} << c) < k) ++c;
  return c;
}

Transition TmSpec::rule(std::uint32_t q, int b) const {
  if (is_halting(q)) return {q, b, Move::L};
  if (q >= delta.size() || !delta[q][b])
    fail(ErrorKind::MissingTransition, "no transition for (" + std::to_string(q) + ", " + std::to_string(b) + ")");
  return *delta[q][b];
}

void validate_tm(TmSpec& spec) {
  if (spec.k < 4) fail(ErrorKind::ParseError, "a machine needs at least 4 states");
  spec.c = state_bits(spec.k);
  spec.delta.resize(spec.k);
  for (std::uint32_t q = 0; q < spec.k; ++q)
    for (int b = 0; b < 2; ++b) {
      const auto& t = spec.delta[q][b];
      if (is_halting(q)) {
        if (t) fail(ErrorKind::ParseError, "halting state " + std::to_string(q) + " has a transition");
        continue;
      }
      if (!t) fail(ErrorKind::MissingTransition, "missing transition for (" + std::to_string(q) + ", " + std::to_string(b) + ")");
      if (t->state >= spec.k) fail(ErrorKind::ParseError, "transition to unknown state " + std::to_string(t->state));
    }
}

TmSpec parse_tm(std::string_view text) {
  TmSpec spec;
  std::optional<std::uint32_t> k;
  std::istringstream in{std::string(text)};
  std::size_t lineno = 0;
  auto bad = [&](const std::string& what) { fail(ErrorKind::ParseError, "line " + std::to_string(lineno) + ": " + what); };
  auto number = [&](const std::string& s) -> std::uint64_t {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) bad("bad number '" + s + "'");
    return std::stoull(s);
  };
  for (std::string line; std::getline(in, line);) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (tok[0] == "states" && tok.size() == 2) {
      k = static_cast<std::uint32_t>(number(tok[1]));
      spec.k = *k;
      spec.delta.resize(*k);
    } else if (tok[0] == "start" && tok.size() == 2) {
      if (number(tok[1]) != 0) bad("the start state must be 0");
    } else if (tok.size() == 6 && tok[2] == "->") {
      if (!k) bad("transition before 'states'");
      auto q = number(tok[0]), b = number(tok[1]), q2 = number(tok[3]), b2 = number(tok[4]);
      if (q >= *k || b > 1 || b2 > 1) bad("transition out of range");
      Move m;
      if (tok[5] == "L")
        m = Move::L;
      else if (tok[5] == "R")
        m = Move::R;
      else if (tok[5] == "S")
        m = Move::S;
      else
        bad("move must be L, R or S");
      if (spec.delta[q][b]) bad("duplicate transition");
      spec.delta[q][b] = Transition{static_cast<std::uint32_t>(q2), static_cast<int>(b2), m};
    } else {
      bad("unrecognised line");
    }
  }
  if (!k) fail(ErrorKind::ParseError, "missing 'states' header");
  validate_tm(spec);
  return spec;
}

std::string print_tm(const TmSpec& spec) {
  std::ostringstream out;
  out << "states " << spec.k << "\nstart 0\n";
  for (std::uint32_t q = 0; q < spec.delta.size(); ++q)
    for (int b = 0; b < 2; ++b)
      if (const auto& t = spec.delta[q][b])
        out << q << " " << b << " -> " << t->state << " " << t->bit << " " << "LRS"[static_cast<int>(t->move)] << "\n";
  return out.str();
}

TmConfig step_tm(const TmSpec& spec, const TmConfig& cfg, std::optional<std::uint64_t> bound) {
  TmConfig next = cfg;
  const int b = cfg.tape.bit(cfg.head) ? 1 : 0;
  if (is_halting(cfg.state)) {
    if (cfg.head > 0) --next.head;
    return next;
  }
  const Transition t = spec.rule(cfg.state, b);
  if (t.bit != b) next.tape ^= BigNat::pow2(cfg.head);
  next.state = t.state;
  if (t.move == Move::L) {
    if (cfg.head == 0)
      next.state = kReject;
    else
      --next.head;
  } else if (t.move == Move::R) {
    if (bound && cfg.head + 1 >= *bound)
      next.state = kTapeExceeded;
    else
      ++next.head;
  }
  return next;
}

TmRun run_tm(const TmSpec& spec, const BigNat& input, std::optional<std::uint64_t> bound, std::uint64_t max_steps) {
  TmRun run;
  run.final.tape = input;
  if (bound && input.bit_length() > *bound) fail(ErrorKind::InputTooWide, "input does not fit the tape bound");
  if (bound) run.trace.push_back(encode_id(run.final, *bound, spec.c));
  while (!is_halting(run.final.state) && run.steps < max_steps) {
    run.final = step_tm(spec, run.final, bound);
    ++run.steps;
    if (bound) run.trace.push_back(encode_id(run.final, *bound, spec.c));
  }
  run.halted = is_halting(run.final.state);
  return run;
}

BigNat encode_id(const TmConfig& cfg, std::uint64_t s, std::uint64_t c) {
  const std::uint64_t w = id_field(s, c);
  if (cfg.head >= s || cfg.tape.bit_length() > s || cfg.state >= (std::uint64_t{1} << c))
    fail(ErrorKind::MalformedDescription, "configuration does not fit the tape bound");
  const BigNat head = BigNat::pow2(cfg.head);
  return cfg.tape + ((BigNat{cfg.state} * head) << w) + (head << (2 * w));
}

TmConfig decode_id(const BigNat& packed, std::uint64_t s, std::uint64_t c) {
  const std::uint64_t w = id_field(s, c);
  const BigNat field = BigNat::ones(w);
  const BigNat tape = packed & field, state = (packed >> w) & field, head = packed >> (2 * w);
  if (head.popcount() != 1 || head.bit_length() > s || tape.bit_length() > s)
    fail(ErrorKind::MalformedDescription, "not an instantaneous description");
  TmConfig cfg;
  cfg.tape = tape;
  cfg.head = head.bit_length() - 1;
  const BigNat q = state >> cfg.head;
  if ((q << cfg.head) != state || q.bit_length() > c) fail(ErrorKind::MalformedDescription, "state field is misaligned");
  cfg.state = static_cast<std::uint32_t>(q.to_u64());
  return cfg;
}

namespace machines {

TmSpec accept_all() { return parse_tm("states 4\nstart 0\n0 0 -> 1 0 S\n0 1 -> 1 1 S\n"); }
TmSpec reject_all() { return parse_tm("states 4\nstart 0\n0 0 -> 2 0 S\n0 1 -> 2 1 S\n"); }
TmSpec fall_off() { return parse_tm("states 4\nstart 0\n0 0 -> 0 0 L\n0 1 -> 0 1 L\n"); }
TmSpec scan_up() { return parse_tm("states 4\nstart 0\n0 1 -> 0 1 R\n0 0 -> 1 0 S\n"); }
TmSpec parity() { return parse_tm("states 5\nstart 0\n0 0 -> 1 0 S\n0 1 -> 4 1 R\n4 1 -> 0 1 R\n4 0 -> 2 0 S\n"); }
TmSpec increment() { return parse_tm("states 4\nstart 0\n0 1 -> 0 0 R\n0 0 -> 1 1 S\n"); }
TmSpec zigzag() {
  return parse_tm("states 6\nstart 0\n0 0 -> 4 0 R\n0 1 -> 4 1 R\n4 0 -> 5 1 L\n4 1 -> 5 0 L\n5 0 -> 1 0 S\n5 1 -> 1 1 S\n");
}

std::vector<std::pair<std::string, TmSpec>> all() {
  return {{"accept_all", accept_all()}, {"reject_all", reject_all()}, {"fall_off", fall_off()}, {"scan_up", scan_up()},
          {"parity", parity()},         {"increment", increment()},   {"zigzag", zigzag()}};
}

}  // namespace machines

}  // namespace alnram
