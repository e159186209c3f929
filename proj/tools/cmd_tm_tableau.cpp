#include <random>

#include "alnram/codegen.hpp"
#include "alnram/error.hpp"
#include "alnram/tableau.hpp"
#include "alnram/tm.hpp"
#include "cli.hpp"

using namespace alnram;
using nlohmann::json;

namespace cli {

namespace {

struct TmOpts {
  std::string file, input = "0", variant = "step", out, witness;
  std::optional<std::uint64_t> cells;
  std::uint64_t max_steps = 100000;
  bool no_shr = false;
  std::uint64_t candidates = 8, seed = 1, max_iter = 12;
  std::string strategy = "run", aln = "0";
  bool reject_detection = false;
};

TmSpec load(const std::string& path) { return parse_tm(read_file(path)); }

std::string state_name(std::uint32_t q) {
  return q == kAccept ? "accept" : q == kReject ? "reject" : q == kTapeExceeded ? "tape-exceeded" : "running";
}

Strategy strategy_of(const std::string& s) {
  return s == "corrupt" ? Strategy::FromRunWithCorruptions : Strategy::FromRun;
}

void emit_verdict(Ctx& ctx, Verdict v) {
  const bool acc = v == Verdict::Accept;
  emit(ctx, {{"verdict", acc ? "accept" : "reject"}}, acc ? "accept" : "reject");
  ctx.status = acc ? 0 : 1;
}

}  // namespace

void add_tm(CLI::App& app, Ctx& ctx) {
  auto* tm = app.add_subcommand("tm", "Turing machines");
  tm->require_subcommand(1);
  auto o = std::make_shared<TmOpts>();

  auto* run = tm->add_subcommand("run", "run on an input, optionally on a bounded tape");
  run->add_option("file", o->file)->required();
  run->add_option("--input", o->input);
  run->add_option("--cells", o->cells, "tape bound s");
  run->add_option("--max-steps", o->max_steps);
  run->callback([o, &ctx] {
    const TmSpec spec = load(o->file);
    auto r = run_tm(spec, number(o->input), o->cells, o->max_steps);
    const std::string st = r.halted ? state_name(r.final.state) : "running";
    emit(ctx,
         {{"state", st}, {"steps", r.steps}, {"head", r.final.head}, {"tape", r.final.tape.to_dec()}},
         st + "\nsteps " + std::to_string(r.steps) + "\ntape " + r.final.tape.to_dec());
    ctx.status = !r.halted ? 3 : r.final.state == kAccept ? 0 : 1;
  });

  auto* compile = tm->add_subcommand("compile", "emit a RAM program simulating the machine");
  compile->add_option("file", o->file)->required();
  compile->add_option("--variant", o->variant)->check(CLI::IsMember({"step", "bounded", "parallel"}));
  compile->add_flag("--no-shr", o->no_shr, "rewrite right shifts away");
  compile->add_option("-o", o->out, "output file (stdout when absent)");
  compile->callback([o, &ctx] {
    const TmSpec spec = load(o->file);
    const RunnerVariant v = o->variant == "bounded"    ? RunnerVariant::Bounded
                            : o->variant == "parallel" ? RunnerVariant::Parallel
                                                       : RunnerVariant::Step;
    RamProgram p = emit_runner(spec, v);
    if (o->no_shr) p = remove_shr(p).program;
    const std::string text = print_ram(p);
    if (o->out.empty())
      emit(ctx, {{"ram", text}}, text);
    else {
      write_file(o->out, text);
      emit(ctx, {{"commands", p.size()}, {"file", o->out}}, std::to_string(p.size()) + " commands");
    }
  });
}

void add_tableau(CLI::App& app, Ctx& ctx) {
  auto* tab = app.add_subcommand("tableau", "computation tableaux");
  tab->require_subcommand(1);
  auto o = std::make_shared<TmOpts>();
  auto common = [o](CLI::App* c) {
    c->add_option("file", o->file)->required();
    c->add_option("--input", o->input);
  };

  auto* make = tab->add_subcommand("make", "witnesses for an accepting bounded run");
  common(make);
  make->add_option("--cells", o->cells)->required();
  make->add_option("-o", o->out);
  make->callback([o, &ctx] {
    const auto w = make_witnesses(load(o->file), number(o->input), *o->cells);
    const std::string text = format_witness(w);
    if (!o->out.empty()) write_file(o->out, text);
    emit(ctx,
         {{"w1", w.w1.to_dec()}, {"w2", w.w2.to_hex()}, {"w3", w.w3.to_dec()}, {"w4", w.w4.to_hex()},
          {"w5", w.w5.to_hex()}},
         text.substr(0, text.size() - 1));
  });

  auto* verify = tab->add_subcommand("verify", "check witnesses against the machine and input");
  common(verify);
  verify->add_option("--witness", o->witness)->required();
  verify->callback([o, &ctx] {
    const auto r = verify_tableau(load(o->file), number(o->input), parse_witness(read_file(o->witness)));
    const std::string f(to_string(r.failed));
    emit(ctx, {{"accept", r.accept}, {"failed", f}}, r.accept ? "accept" : "reject (" + f + ")");
    ctx.status = r.accept ? 0 : 1;
  });

  auto* sim = tab->add_subcommand("simulate", "packed check of the genuine tableau and corrupted copies");
  common(sim);
  sim->add_option("--cells", o->cells)->required();
  sim->add_option("--candidates", o->candidates, "total candidates K");
  sim->add_option("--seed", o->seed);
  sim->callback([o, &ctx] {
    const TmSpec spec = load(o->file);
    const BigNat inp = number(o->input);
    auto t = build_tableau(spec, inp, *o->cells);
    if (!t) fail(ErrorKind::BudgetExceeded, "machine did not halt");
    std::mt19937_64 rng(o->seed);
    std::vector<BigNat> cands{t->V};
    while (cands.size() < std::max<std::uint64_t>(o->candidates, 1))
      cands.push_back(t->V ^ BigNat::pow2(rng() % (t->n * t->m)));
    const auto rep = simulate(spec, inp, pack_candidates(spec, *o->cells, t->n, cands));
    std::string bits;
    json flags = json::array();
    for (bool f : rep.flags()) {
      bits += f ? '1' : '0';
      flags.push_back(f);
    }
    const std::string hs = rep.halt_state ? state_name(*rep.halt_state) : "none";
    emit(ctx, {{"flags", flags}, {"halt_state", hs}}, bits + "\n" + hs);
    ctx.status = rep.halt_state == kAccept ? 0 : 1;
  });

  auto* run1 = tab->add_subcommand("run1", "doubling search over tape bounds");
  common(run1);
  run1->add_option("--strategy", o->strategy)->check(CLI::IsMember({"run", "corrupt"}));
  run1->add_option("--max-iter", o->max_iter);
  run1->add_flag("--reject-detection", o->reject_detection);
  run1->callback([o, &ctx] {
    const TmSpec spec = load(o->file);
    const BigNat inp = number(o->input);
    emit_verdict(ctx, algorithm1(spec, inp, default_el(inp), strategy_of(o->strategy), o->max_iter,
                                 o->reject_detection));
  });

  auto* run2 = tab->add_subcommand("run2", "single pass with the tape bound taken from X");
  common(run2);
  run2->add_option("--aln", o->aln, "X")->required();
  run2->add_option("--strategy", o->strategy)->check(CLI::IsMember({"run", "corrupt"}));
  run2->callback([o, &ctx] {
    emit_verdict(ctx, algorithm2(load(o->file), number(o->input), number(o->aln), strategy_of(o->strategy)));
  });
}

}  // namespace cli
