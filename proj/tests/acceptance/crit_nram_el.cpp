#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "acceptance.hpp"
#include "alnram/codegen.hpp"
#include "alnram/error.hpp"
#include "alnram/nram.hpp"

using namespace alnram;

namespace acc {

namespace {

std::string num(std::uint64_t v) { return std::to_string(v); }

std::uint64_t cells_for(NramScheme sc, const TmSpec& spec, std::uint64_t s) {
  if (sc != NramScheme::Shl) return s;
  return spec.c == 2 ? 3 : 2;  // s + c - 1 = 4
}

struct Case {
  TmSpec spec;
  BigNat inp;
  std::uint64_t s;
  bool accepts;
};

// first accepting and first non-accepting halting input per machine at the given bound
std::vector<Case> cases(NramScheme sc) {
  std::vector<Case> out;
  for (const auto& f : fixtures()) {
    const std::uint64_t s = cells_for(sc, f.spec, f.accepting ? f.accepting->second : 3);
    bool got[2] = {false, false};
    for (std::uint64_t inp = 0; inp < (std::uint64_t{1} << s); ++inp) {
      auto r = run_tm(f.spec, BigNat{inp}, s, 10000);
      if (!r.halted) continue;
      const bool acc = r.final.state == kAccept;
      if (got[acc]) continue;
      got[acc] = true;
      out.push_back({f.spec, BigNat{inp}, s, acc});
    }
  }
  return out;
}

}  // namespace

Outcome nram_codecs() {
  Stopwatch sw;
  std::mt19937_64 rng(9);
  std::string detail;
  bool pass = true;
  for (auto sc : kAllSchemes) {
    std::uint64_t acc = 0, acc_bad = 0, rej = 0, rej_bad = 0, flips = 0, flip_bad = 0, violations = 0, gated = 0;
    std::vector<std::pair<const Case*, BigNat>> genuine;
    const auto cs = cases(sc);
    for (const auto& c : cs) {
      const auto p = pack_alpha(sc, c.spec, c.inp, c.s, c.accepts);
      const bool ok = verify_nram(sc, p.alpha, c.spec, c.inp).accept;
      const auto g = verify_gated(sc, p.alpha);
      violations += g.violations;
      ++gated;
      if (c.accepts) {
        ++acc;
        acc_bad += !ok || !g.ok ||
                   g.components != std::vector<BigNat>{p.witness.w2, p.witness.w4, p.witness.w5};
        genuine.push_back({&c, p.alpha});
      } else {
        ++rej;
        rej_bad += ok;
      }
    }
    for (int i = 0; i < 200 && !genuine.empty(); ++i) {
      const auto& [c, alpha] = genuine[rng() % genuine.size()];
      const BigNat bad = alpha ^ BigNat::pow2(rng() % (alpha.bit_length() + 16));
      flip_bad += verify_nram(sc, bad, c->spec, c->inp).accept;
      if (i % 10 == 0) {
        violations += verify_gated(sc, bad).violations;
        ++gated;
      }
      ++flips;
    }
    pass &= acc >= 5 && acc_bad == 0 && rej > 0 && rej_bad == 0 && flips >= 200 && flip_bad == 0 && violations == 0;
    detail += std::string(to_string(sc)) + ": " + num(acc - acc_bad) + "/" + num(acc) + " accepted, " +
              num(rej - rej_bad) + "/" + num(rej) + " rejected, " + num(flips - flip_bad) + "/" + num(flips) +
              " corruptions rejected, " + num(violations) + " violations in " + num(gated) + " gated runs; ";
  }
  const double secs = sw.seconds();
  pass &= secs < 120;
  detail.resize(detail.size() - 2);
  return {pass, detail};
}

namespace {

OpSetGate used_ops(const RamProgram& p) {
  OpSetGate g;
  g.bounded_shift_only = true;
  for (const auto& c : p.commands)
    if (const auto* a = std::get_if<RamAssign>(&c)) {
      g.allowed.insert(a->op);
      if ((a->op == PrimOp::Shl || a->op == PrimOp::Shr) && a->b->is_reg()) g.bounded_shift_only = false;
    }
  return g;
}

struct Tally {
  std::uint64_t runs = 0, violations = 0, beyond_cap = 0, value_capped = 0;
};

void account(const RamProgram& p, std::vector<BigNat> init, Tally& t) {
  const OpSetGate g = used_ops(p);
  std::uint64_t n = 1;
  for (const auto& v : init) n = std::max(n, v.bit_length());
  RamRunOptions o;
  o.max_steps = 20000;
  RamResult r;
  try {
    r = run_ram(p, init, g, o);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::BudgetExceeded) throw;
    ++t.value_capped;
    return;
  }
  ++t.runs;
  try {
    t.violations += !(r.state.max_value_seen <= el_bound(g, r.state.steps, n, std::uint64_t{1} << 27));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::BudgetExceeded) throw;
    ++t.beyond_cap;  // bound wider than any value the run could hold
  }
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

Outcome el_accounting() {
  Tally t;
  std::uint64_t files = 0;
  for (const auto& e : std::filesystem::directory_iterator(std::string(ALNRAM_FIXTURES) + "/ram")) {
    if (e.path().extension() != ".ram") continue;
    ++files;
    const auto p = parse_ram(slurp(e.path()));
    for (std::uint64_t inp = 0; inp < 16; ++inp) account(p, {BigNat{inp}}, t);
  }
  for (const auto& f : fixtures()) {
    const auto step = emit_runner(f.spec, RunnerVariant::Step);
    const auto bounded = emit_runner(f.spec, RunnerVariant::Bounded);
    const auto free = remove_shr(step).program;
    for (std::uint64_t inp = 0; inp < 8; ++inp) {
      account(step, {BigNat{inp}}, t);
      account(free, {BigNat{inp}}, t);
      for (std::uint64_t s = 3; s <= 4; ++s) account(bounded, {BigNat{inp}, BigNat::pow2(s)}, t);
    }
  }
  return {t.violations == 0 && t.runs > 0,
          num(files) + " RAM files and " + num(fixtures().size()) + " machines' runners: " + num(t.runs) + " runs, " +
              num(t.violations) + " over the bound, " + num(t.beyond_cap) + " with the bound beyond 2^27 bits, " +
              num(t.value_capped) + " stopped by the value cap"};
}

}  // namespace acc
