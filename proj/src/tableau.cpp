#include "alnram/tableau.hpp"

#include <random>
#include <sstream>

#include "alnram/codegen.hpp"
#include "alnram/error.hpp"
#include "alnram/numerics.hpp"
#include "alnram/ram.hpp"

namespace alnram {

// ---- tableau construction ----

std::optional<Tableau> build_tableau(const TmSpec& spec, const BigNat& input, std::uint64_t s, std::uint64_t max_steps) {
  if (s == 0) fail(ErrorKind::InputTooWide, "no tape");
  const std::uint64_t m = 3 * id_field(s, spec.c);
  if (m > kTableauCapBits) fail(ErrorKind::BudgetExceeded, "tableau width " + std::to_string(m) + " bits");
  auto run = run_tm(spec, input, s, max_steps);
  if (!run.halted) return std::nullopt;
  Tableau t;
  t.s = s;
  t.m = m;
  t.ids = run.trace;
  // settle: halted steps until the configuration repeats
  TmConfig cfg = run.final;
  while (true) {
    TmConfig next = step_tm(spec, cfg, s);
    t.ids.push_back(encode_id(next, s, spec.c));
    if (next == cfg) break;
    cfg = next;
  }
  t.n = t.ids.size();
  if (t.n * m > kTableauCapBits) fail(ErrorKind::BudgetExceeded, "tableau exceeds the bit budget");
  t.V = encode_vector(m, t.ids);
  t.final_state = cfg.state;
  return t;
}

TableauWitness witnesses_of(const Tableau& t, const TmSpec& spec) {
  const std::uint64_t w1 = id_field(t.s, spec.c);
  return {BigNat{w1}, t.V, BigNat{(t.n - 1) * t.m}, make_O(BigNat::ones(w1), t.m, t.n), make_O(BigNat{1}, t.m, t.n)};
}

TableauWitness make_witnesses(const TmSpec& spec, const BigNat& input, std::uint64_t s, std::uint64_t max_steps) {
  auto t = build_tableau(spec, input, s, max_steps);
  if (!t) fail(ErrorKind::BudgetExceeded, "machine did not halt within " + std::to_string(max_steps) + " steps");
  if (t->final_state != kAccept)
    fail(ErrorKind::NotAccepting, "machine halted in state " + std::to_string(t->final_state));
  return witnesses_of(*t, spec);
}

std::string_view to_string(VerifyCheck c) {
  switch (c) {
    case VerifyCheck::None: return "none";
    case VerifyCheck::Shape: return "shape";
    case VerifyCheck::W4: return "w4";
    case VerifyCheck::W5: return "w5";
    case VerifyCheck::Extent: return "extent";
    case VerifyCheck::InputWidth: return "input-width";
    case VerifyCheck::Tape: return "tape";
    case VerifyCheck::State: return "state";
    case VerifyCheck::Head: return "head";
    case VerifyCheck::FinalHead: return "final-head";
    case VerifyCheck::FinalState: return "final-state";
  }
  return "?";
}

std::string format_witness(const TableauWitness& w) {
  std::ostringstream out;
  out << "w1=" << w.w1.to_dec() << "\nw2=" << w.w2.to_hex() << "\nw3=" << w.w3.to_dec() << "\nw4=" << w.w4.to_hex()
      << "\nw5=" << w.w5.to_hex() << "\n";
  return out.str();
}

TableauWitness parse_witness(std::string_view text) {
  TableauWitness w;
  std::array<bool, 5> seen{};
  std::istringstream in{std::string(text)};
  for (std::string line; std::getline(in, line);) {
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream ls(line);
    for (std::string tok; ls >> tok;) {
      auto eq = tok.find('=');
      if (eq != 2 || tok[0] != 'w' || tok[1] < '1' || tok[1] > '5') fail(ErrorKind::ParseError, "bad witness entry '" + tok + "'");
      const int k = tok[1] - '1';
      BigNat v = BigNat::parse(tok.substr(3));
      seen[k] = true;
      (k == 0 ? w.w1 : k == 1 ? w.w2 : k == 2 ? w.w3 : k == 3 ? w.w4 : w.w5) = v;
    }
  }
  for (int k = 0; k < 5; ++k)
    if (!seen[k]) fail(ErrorKind::ParseError, "missing w" + std::to_string(k + 1));
  return w;
}

// ---- checks shared by the single verifier and the packed simulator ----

namespace {

struct StepEngine {
  ShrFree free;
  RamProgram prog;
  std::uint64_t x = 0;  // the transformed fragment leaves results scaled by 2^x

  explicit StepEngine(const TmSpec& spec) {
    RamProgram frag = emit_bounded_step(spec);
    for (const auto& c : frag.commands)
      if (const auto* a = std::get_if<RamAssign>(&c); a && a->op == PrimOp::Shr) ++x;
    free = remove_shr(frag);
    prog = free.program;
    prog.add(RamHalt{});
  }

  // (tape', head', state'), scaled
  std::array<BigNat, 3> step(const BigNat& tape, const BigNat& head, const BigNat& state, const BigNat& boundary) const {
    OpSetGate gate{bool_ops(), true};
    gate.allowed.insert(PrimOp::Shl);
    RamRunOptions opt;
    opt.value_cap_bits = 4 * kTableauCapBits;
    auto r = run_ram(prog, {BigNat{}, BigNat{}, tape, head, state, boundary}, gate, opt);
    return {r.state.reg(reg::tape), r.state.reg(reg::head), r.state.reg(reg::state)};
  }
};

struct Lanes {
  bool packed = false;
  std::uint64_t T = 0, K = 0;

  BigNat rep(const BigNat& c) const { return packed ? make_O(c, T, K) : c; }
  BigNat eq(const BigNat& x, const BigNat& y) const {
    if (!packed) return BigNat{x == y ? 1u : 0u};
    return eq_vec(T, x, y, K);
  }
};

struct CheckMasks {
  std::vector<std::pair<VerifyCheck, BigNat>> chain;
  BigNat final_head;
  std::array<BigNat, 4> final_state;  // index 1..3
};

CheckMasks run_checks(const TmSpec& spec, const StepEngine& engine, const Lanes& lanes, const BigNat& V,
                      std::uint64_t w1, std::uint64_t w3, const BigNat& W4, const BigNat& W5, const BigNat& INP) {
  const std::uint64_t m = 3 * w1, x = engine.x, last_pos = w3 + 2 * w1;
  const BigNat one{1};
  const BigNat A = lanes.rep(tnot(one << w1)), ONE = lanes.rep(one);
  const BigNat LAST = A << last_pos;

  const BigNat tape = (V & W4) << (2 * w1);
  const BigNat state = (V & (W4 << w1)) << w1;
  const BigNat head = V & (W4 << (2 * w1));
  const BigNat boundary = (W5 << (2 * w1)) | (W5 << m);

  CheckMasks out;
  out.chain.emplace_back(VerifyCheck::Extent, lanes.eq(clear(V, W4 | (W4 << w1) | (W4 << (2 * w1))), BigNat{}));
  out.chain.emplace_back(VerifyCheck::InputWidth, lanes.eq(INP & A, INP));

  const auto [t2, h2, s2] = engine.step(tape, head, state, boundary);
  const BigNat last_x = LAST << x;
  out.chain.emplace_back(VerifyCheck::Tape,
                         lanes.eq(((INP & A) << (2 * w1 + x)) | (clear(t2, last_x) << m), tape << x));
  out.chain.emplace_back(VerifyCheck::State, lanes.eq(clear(s2, last_x) << m, state << x));
  out.chain.emplace_back(VerifyCheck::Head,
                         lanes.eq((ONE << (2 * w1 + x)) | (clear(h2, last_x) << m), head << x));
  out.final_head = lanes.eq(head & LAST, ONE << last_pos);
  for (std::uint32_t h = 1; h <= 3; ++h) out.final_state[h] = lanes.eq(state & LAST, lanes.rep(BigNat{h}) << last_pos);
  (void)spec;
  return out;
}

// w - a computed as w clear a, after checking a is contained in w
bool contains(const BigNat& w, const BigNat& a) { return (w & a) == a; }

bool self_consistent(const BigNat& w, const BigNat& a, std::uint64_t w1, std::uint64_t w3) {
  const BigNat top = a << w3;
  if (!contains(w, a) || !contains(w, top)) return false;
  return clear(w, a) == (clear(w, top) << (3 * w1));
}

}  // namespace

VerifyResult verify_tableau(const TmSpec& spec, const BigNat& input, const TableauWitness& w) {
  VerifyResult r;
  auto reject = [&](VerifyCheck c) {
    r.failed = c;
    return r;
  };
  const std::uint64_t limit = w.w4.bit_length();
  if (limit > 2 * kTableauCapBits || !w.w1.fits_u64() || !w.w3.fits_u64()) return reject(VerifyCheck::Shape);
  const std::uint64_t w1 = w.w1.to_u64(), w3 = w.w3.to_u64();
  if (w1 < spec.c || w1 > limit || w3 > limit) return reject(VerifyCheck::Shape);
  const BigNat one{1};
  if (!self_consistent(w.w4, tnot(one << w1), w1, w3)) return reject(VerifyCheck::W4);
  if (!self_consistent(w.w5, one, w1, w3)) return reject(VerifyCheck::W5);

  StepEngine engine(spec);
  auto masks = run_checks(spec, engine, Lanes{}, w.w2, w1, w3, w.w4, w.w5, input);
  for (const auto& [check, ok] : masks.chain)
    if (ok.is_zero()) return reject(check);
  if (masks.final_head.is_zero()) return reject(VerifyCheck::FinalHead);
  for (std::uint32_t h = 1; h <= 3; ++h)
    if (!masks.final_state[h].is_zero()) r.halt_state = h;
  if (r.halt_state != kAccept) return reject(VerifyCheck::FinalState);
  r.accept = true;
  return r;
}

// ---- packed candidates ----

std::uint64_t slot_width(const TmSpec& spec, std::uint64_t s, std::uint64_t n) {
  const std::uint64_t m = 3 * id_field(s, spec.c);
  return n * m + StepEngine(spec).x + 2;
}

CandidatePack pack_candidates(const TmSpec& spec, std::uint64_t s, std::uint64_t n, const std::vector<BigNat>& tableaux) {
  CandidatePack p;
  p.s = s;
  p.n = n;
  p.T = slot_width(spec, s, n);
  p.K = tableaux.size();
  if (p.T * p.K > 4 * kTableauCapBits) fail(ErrorKind::BudgetExceeded, "candidate pack too large");
  p.packed = encode_vector(p.T, tableaux);
  return p;
}

CandidatePack exhaustive_candidates(const TmSpec& spec, std::uint64_t s, std::uint64_t n, std::uint64_t cap_bits) {
  CandidatePack p;
  p.s = s;
  p.n = n;
  p.T = slot_width(spec, s, n);
  p.packed = make_U(p.T, cap_bits);
  p.K = std::uint64_t{1} << p.T;
  return p;
}

std::vector<bool> SimulateReport::flags() const {
  std::vector<bool> out;
  for (std::uint64_t i = 0; i < K; ++i) out.push_back(res.bit(i * T));
  return out;
}

SimulateReport simulate(const TmSpec& spec, const BigNat& input, const CandidatePack& pack) {
  SimulateReport rep;
  rep.K = pack.K;
  rep.T = pack.T;
  if (pack.K == 0 || pack.n == 0) return rep;
  const std::uint64_t w1 = id_field(pack.s, spec.c), m = 3 * w1;
  if (input.bit_length() > pack.T) return rep;  // cannot even be replicated, no candidate fits
  Lanes lanes{true, pack.T, pack.K};
  const BigNat W4 = lanes.rep(make_O(BigNat::ones(w1), m, pack.n));
  const BigNat W5 = lanes.rep(make_O(BigNat{1}, m, pack.n));
  StepEngine engine(spec);
  auto masks = run_checks(spec, engine, lanes, pack.packed, w1, (pack.n - 1) * m, W4, W5, lanes.rep(input));
  BigNat ok = lanes.rep(BigNat{1});
  for (const auto& [check, mask] : masks.chain) ok &= mask;
  ok &= masks.final_head;
  for (std::uint32_t h = 1; h <= 3; ++h) {
    rep.halted[h] = ok & masks.final_state[h];
    if (!rep.halted[h].is_zero() && !rep.halt_state) rep.halt_state = h;
  }
  rep.res = rep.halted[kAccept];
  return rep;
}

std::vector<BigNat> candidate_tableaux(const TmSpec& spec, const BigNat& input, std::uint64_t s, Strategy strategy,
                                       std::uint64_t& n_out, std::uint64_t seed) {
  n_out = 0;
  if (input.bit_length() > s) return {};
  auto t = build_tableau(spec, input, s);
  if (!t) return {};
  n_out = t->n;
  std::vector<BigNat> out = {t->V};
  if (strategy == Strategy::FromRunWithCorruptions) {
    std::mt19937_64 rng(seed);
    for (int i = 0; i < 7; ++i) out.push_back(t->V ^ BigNat::pow2(rng() % (t->n * t->m)));
  }
  return out;
}

namespace {

std::optional<std::uint32_t> simulate_at(const TmSpec& spec, const BigNat& input, std::uint64_t s, Strategy strategy) {
  if (input.bit_length() > s) return std::nullopt;  // no tableau at this width
  std::uint64_t n = 0;
  auto cands = candidate_tableaux(spec, input, s, strategy, n);
  if (cands.empty()) return std::nullopt;
  return simulate(spec, input, pack_candidates(spec, s, n, cands)).halt_state;
}

}  // namespace

std::function<BigNat(std::uint64_t)> default_el(const BigNat& input) {
  const std::uint64_t bits = std::max<std::uint64_t>(input.bit_length(), 1);
  return [bits](std::uint64_t n) {
    OpSetGate g{bool_ops(), false};
    g.allowed.insert(PrimOp::Shl);
    return el_bound(g, n, bits, 32);
  };
}

Verdict algorithm1(const TmSpec& spec, const BigNat& input, const std::function<BigNat(std::uint64_t)>& el,
                   Strategy strategy, std::uint64_t max_iterations, bool reject_detection, AlgorithmTrace* trace) {
  std::uint64_t n = 1;
  for (std::uint64_t it = 0; it < max_iterations; ++it, n += n) {
    const BigNat sv = el(n);
    if (!sv.fits_u64() || sv.to_u64() > kTableauCapBits) fail(ErrorKind::BudgetExceeded, "tape bound " + sv.to_dec());
    const std::uint64_t s = sv.to_u64();
    const auto h = s == 0 ? std::nullopt : simulate_at(spec, input, s, strategy);
    if (trace) {
      trace->tried_s.push_back(s);
      trace->outcomes.push_back(h);
    }
    if (h == kAccept) return Verdict::Accept;
    if (reject_detection && h == kReject) return Verdict::Reject;
  }
  fail(ErrorKind::IterationBudgetExhausted, "no verdict after " + std::to_string(max_iterations) + " iterations");
}

Verdict algorithm2(const TmSpec& spec, const BigNat& input, const BigNat& aln, Strategy strategy) {
  if (aln.is_zero()) return Verdict::Reject;
  if (!aln.fits_u64() || aln.to_u64() > kTableauCapBits) fail(ErrorKind::BudgetExceeded, "tape bound " + aln.to_dec());
  return simulate_at(spec, input, aln.to_u64(), strategy) == kAccept ? Verdict::Accept : Verdict::Reject;
}

}  // namespace alnram
