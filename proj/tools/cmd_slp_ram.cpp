#include <sstream>

#include "alnram/error.hpp"
#include "alnram/lazy.hpp"
#include "alnram/ram.hpp"
#include "alnram/slp.hpp"
#include "cli.hpp"

using namespace alnram;
using nlohmann::json;

namespace cli {

namespace {

std::vector<BigNat> numbers(const std::vector<std::string>& xs) {
  std::vector<BigNat> out;
  for (const auto& x : xs) out.push_back(number(x));
  return out;
}

std::vector<PrimOp> op_list(const std::string& text) {
  std::vector<PrimOp> ops;
  std::stringstream in(text);
  for (std::string tok; std::getline(in, tok, ',');) {
    if (tok == "bool") {
      for (auto op : bool_ops()) ops.push_back(op);
    } else if (tok == "all") {
      ops.insert(ops.end(), kAllOps.begin(), kAllOps.end());
    } else if (auto op = parse_mnemonic(tok)) {
      ops.push_back(*op);
    } else {
      fail(ErrorKind::Usage, "unknown operation '" + tok + "'");
    }
  }
  return ops;
}

OpSetGate gate_of(const std::string& text, bool bounded) {
  auto ops = op_list(text);
  return {std::set<PrimOp>(ops.begin(), ops.end()), bounded};
}

struct SlpEval {
  std::string file, mode = "direct";
  std::vector<std::string> inputs;
  std::optional<std::uint64_t> bit;
  std::uint64_t budget = kDefaultDirectBudgetBits;
  bool space = false;
};

void slp_eval(const SlpEval& o, Ctx& ctx) {
  const Slp p = parse_slp(read_file(o.file));
  const auto in = numbers(o.inputs);
  if (o.mode == "direct") {
    const BigNat v = eval_slp_direct(p, in, o.budget).back();
    if (o.bit) {
      const bool b = v.bit(*o.bit);
      emit(ctx, {{"bit", *o.bit}, {"value", b ? 1 : 0}}, b ? "1" : "0");
      ctx.status = b ? 0 : 1;
    } else {
      emit(ctx, {{"value", v.to_dec()}}, v.to_dec());
    }
    return;
  }
  const LazyMode mode = o.mode == "aln" ? LazyMode::Aln : LazyMode::Plain;
  if (mode == LazyMode::Aln && o.bit) fail(ErrorKind::Usage, "--bit needs concrete inputs (use --mode lazy)");
  LazyEvaluator ev(p, in, mode);
  bool answer;
  json rec;
  std::string text;
  if (o.bit) {
    answer = ev.bit(p.length(), ev.offset_index(*o.bit));
    rec = {{"bit", *o.bit}, {"value", answer ? 1 : 0}};
  } else {
    answer = ev.nonzero();
    rec = {{"nonzero", answer}};
  }
  text = answer ? "1" : "0";
  if (o.space) {
    const auto s = ev.space();
    rec["max_scalar_bits"] = s.max_scalar_bits;
    rec["max_live_indices"] = s.max_live_indices;
    text += "\n" + std::to_string(s.max_scalar_bits) + " " + std::to_string(s.max_live_indices);
  }
  emit(ctx, rec, text);
  ctx.status = answer ? 0 : 1;
}

}  // namespace

void add_slp(CLI::App& app, Ctx& ctx) {
  auto* slp = app.add_subcommand("slp", "straight-line programs");
  slp->require_subcommand(1);

  auto eo = std::make_shared<SlpEval>();
  auto* eval = slp->add_subcommand("eval", "evaluate the output, a bit of it, or whether it is nonzero");
  eval->add_option("file", eo->file)->required();
  eval->add_option("--mode", eo->mode)->check(CLI::IsMember({"direct", "lazy", "aln"}));
  eval->add_option("--input", eo->inputs, "input values, in slot order");
  eval->add_option("--bit", eo->bit, "query one bit of the output");
  eval->add_option("--budget", eo->budget, "direct evaluation budget in bits");
  eval->add_flag("--space", eo->space, "print max scalar bits and max live indices");
  eval->callback([eo, &ctx] { slp_eval(*eo, ctx); });

  auto go = std::make_shared<SlpGenOptions>();
  auto ops = std::make_shared<std::string>("add,sub,mul,shl,shr,and,or,xor,not");
  auto* gen = slp->add_subcommand("gen", "random program");
  gen->add_option("--steps", go->steps);
  gen->add_option("--seed", go->seed)->required();
  gen->add_option("--ops", *ops, "comma list; 'bool' and 'all' expand");
  gen->add_option("--inputs", go->input_slots);
  gen->add_option("--max-transitions", go->max_transitions);
  gen->add_flag("--aln", go->aln, "slot 0 is the huge input X");
  gen->callback([go, ops, &ctx] {
    go->ops = op_list(*ops);
    if (go->aln && go->input_slots == 0) go->input_slots = 1;
    const Slp p = gen_random_slp(*go);
    emit(ctx, {{"slp", print_slp(p)}}, print_slp(p));
  });
}

namespace {

struct RamOpts {
  std::string file, input = "0", gate = "all";
  bool bounded = false;
  std::uint64_t max_steps = 1'000'000;
  std::vector<std::string> schedule;
};

}  // namespace

void add_ram(CLI::App& app, Ctx& ctx) {
  auto* ram = app.add_subcommand("ram", "register machines");
  ram->require_subcommand(1);
  auto o = std::make_shared<RamOpts>();
  auto common = [o](CLI::App* c) {
    c->add_option("file", o->file)->required();
    c->add_option("--input", o->input);
    c->add_option("--gate", o->gate, "allowed operations, comma list");
    c->add_flag("--bounded", o->bounded, "shift amounts must be constants");
    c->add_option("--max-steps", o->max_steps);
  };

  auto* run = ram->add_subcommand("run", "run a program on one input");
  common(run);
  run->callback([o, &ctx] {
    const auto p = parse_ram(read_file(o->file));
    auto r = run_ram(p, number(o->input), gate_of(o->gate, o->bounded), o->max_steps);
    emit(ctx,
         {{"output", r.output.to_dec()}, {"steps", r.state.steps}, {"halted", r.halted},
          {"max_value_bits", r.state.max_value_seen.bit_length()}},
         r.output.to_dec() + "\nsteps " + std::to_string(r.state.steps) + (r.halted ? "" : " (not halted)"));
    if (!r.halted) ctx.status = 3;
  });

  auto* trace = ram->add_subcommand("trace", "straight-line program of the executed path");
  common(trace);
  trace->callback([o, &ctx] {
    const auto p = parse_ram(read_file(o->file));
    const Slp s = trace_to_slp(p, number(o->input), gate_of(o->gate, o->bounded), o->max_steps);
    emit(ctx, {{"slp", print_slp(s)}}, print_slp(s));
  });

  auto eo = std::make_shared<std::tuple<std::string, std::uint64_t, std::uint64_t>>("all", 0, 1);
  auto* el = ram->add_subcommand("el", "largest value reachable in t steps from an n-bit input");
  el->add_option("--gate", std::get<0>(*eo));
  el->add_option("--steps", std::get<1>(*eo))->required();
  el->add_option("--bits", std::get<2>(*eo))->required();
  el->callback([eo, &ctx] {
    const BigNat b = el_bound(gate_of(std::get<0>(*eo), false), std::get<1>(*eo), std::get<2>(*eo));
    emit(ctx, {{"bound_bits", b.bit_length()}}, std::to_string(b.bit_length()));
  });

  auto* aram = app.add_subcommand("aram", "advice-length runs over a schedule of X values");
  aram->require_subcommand(1);
  auto* arun = aram->add_subcommand("run");
  common(arun);
  arun->add_option("--schedule", o->schedule, "X values")->required();
  arun->callback([o, &ctx] {
    const auto p = parse_ram(read_file(o->file));
    auto r = run_aram(p, number(o->input), gate_of(o->gate, o->bounded), numbers(o->schedule), o->max_steps);
    json acc = json::array();
    for (bool a : r.accepted) acc.push_back(a);
    const std::string v = !r.stabilized ? "unstable" : r.verdict ? "accept" : "reject";
    emit(ctx, {{"verdict", v}, {"accepted", acc}, {"stabilized", r.stabilized}}, v);
    ctx.status = !r.stabilized ? 3 : r.verdict ? 0 : 1;
  });
}

}  // namespace cli
