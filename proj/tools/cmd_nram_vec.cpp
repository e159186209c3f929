#include "alnram/error.hpp"
#include "alnram/nram.hpp"
#include "alnram/tableau.hpp"
#include "cli.hpp"

using namespace alnram;

namespace cli {

namespace {

struct NramOpts {
  std::string file, input = "0", opset = "shl", alpha, alpha_file, out;
  std::uint64_t cells = 3;
  bool gated = false;
};

}  // namespace

void add_nram(CLI::App& app, Ctx& ctx) {
  auto* nram = app.add_subcommand("nram", "single-integer certificates");
  nram->require_subcommand(1);
  auto o = std::make_shared<NramOpts>();
  auto common = [o](CLI::App* c) {
    c->add_option("file", o->file)->required();
    c->add_option("--input", o->input);
    c->add_option("--opset", o->opset)->check(CLI::IsMember({"shl", "shr", "div", "mul"}));
  };

  auto* pack = nram->add_subcommand("pack", "alpha for an accepting bounded run");
  common(pack);
  pack->add_option("--cells", o->cells);
  pack->add_option("-o", o->out);
  pack->callback([o, &ctx] {
    const auto p = pack_alpha(*parse_scheme(o->opset), parse_tm(read_file(o->file)), number(o->input), o->cells);
    if (!o->out.empty()) write_file(o->out, p.alpha.to_hex() + "\n");
    emit(ctx, {{"alpha", p.alpha.to_hex()}, {"bits", p.alpha.bit_length()}}, p.alpha.to_hex());
  });

  auto* verify = nram->add_subcommand("verify", "check alpha");
  common(verify);
  auto* a = verify->add_option("--alpha", o->alpha, "0x hex");
  verify->add_option("--alpha-file", o->alpha_file)->excludes(a);
  verify->add_flag("--gated", o->gated, "also run the extraction as a gated RAM program");
  verify->callback([o, &ctx] {
    std::string text = o->alpha;
    if (!o->alpha_file.empty()) text = read_file(o->alpha_file);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.pop_back();
    if (text.empty()) fail(ErrorKind::Usage, "--alpha or --alpha-file required");
    const NramScheme sc = *parse_scheme(o->opset);
    const BigNat alpha = number(text);
    const auto v = verify_nram(sc, alpha, parse_tm(read_file(o->file)), number(o->input));
    nlohmann::json rec = {{"accept", v.accept}, {"decoded", v.decoded}};
    std::string line = v.accept ? "accept" : "reject";
    if (o->gated) {
      const auto g = verify_gated(sc, alpha);
      rec["gated_ok"] = g.ok;
      rec["gate_violations"] = g.violations;
      line += "\ngated " + std::string(g.ok ? "ok" : "failed") + ", violations " + std::to_string(g.violations);
    }
    emit(ctx, rec, line);
    ctx.status = v.accept ? 0 : 1;
  });
}

namespace {

struct VecOpts {
  std::string a = "0", v1 = "0", v2 = "0";
  std::uint64_t m = 1, n = 1, T = 1;
};

}  // namespace

void add_vec(CLI::App& app, Ctx& ctx) {
  auto* vec = app.add_subcommand("vec", "packed vectors");
  vec->require_subcommand(1);
  auto o = std::make_shared<VecOpts>();
  auto out = [&ctx](const BigNat& v) { emit(ctx, {{"value", v.to_dec()}}, v.to_dec()); };

  auto* O = vec->add_subcommand("O", "n copies of a at width m");
  O->add_option("a", o->a)->required();
  O->add_option("m", o->m)->required();
  O->add_option("n", o->n)->required();
  O->callback([o, out] { out(make_O(number(o->a), o->m, o->n)); });

  auto* U = vec->add_subcommand("U", "0, 1, ..., 2^T - 1 at width T");
  U->add_option("T", o->T)->required();
  U->callback([o, out] { out(make_U(o->T)); });

  for (const char* name : {"gt", "eq"}) {
    const bool gt = name[0] == 'g';
    auto* c = vec->add_subcommand(name, gt ? "elementwise V1 > V2" : "elementwise V1 = V2");
    c->add_option("m", o->m)->required();
    c->add_option("V1", o->v1)->required();
    c->add_option("V2", o->v2)->required();
    c->add_option("n", o->n)->required();
    c->callback([o, out, gt] {
      const BigNat a = number(o->v1), b = number(o->v2);
      out(gt ? gt_vec(o->m, a, b, o->n) : eq_vec(o->m, a, b, o->n));
    });
  }
}

}  // namespace cli
