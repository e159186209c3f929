#include <fstream>
#include <iostream>
#include <sstream>

#include "alnram/error.hpp"
#include "cli.hpp"

namespace cli {

void emit(const Ctx& ctx, const nlohmann::json& record, const std::string& text) {
  if (ctx.json)
    std::cout << record.dump() << '\n';
  else
    std::cout << text << '\n';
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) alnram::fail(alnram::ErrorKind::Usage, "cannot read " + path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) alnram::fail(alnram::ErrorKind::Usage, "cannot write " + path);
  out << text;
}

alnram::BigNat number(const std::string& text) { return alnram::BigNat::parse(text); }

}  // namespace cli

namespace {

int exit_code(alnram::ErrorKind k) {
  using alnram::ErrorKind;
  switch (k) {
    case ErrorKind::BudgetExceeded:
    case ErrorKind::StepBudgetExhausted:
    case ErrorKind::IterationBudgetExhausted:
      return 3;
    case ErrorKind::NotAccepting:
      return 1;
    default:
      return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"straight-line programs, RAMs, Turing machine tableaux"};
  app.require_subcommand(1);
  cli::Ctx ctx;
  app.add_flag("--json", ctx.json, "json-lines output");
  cli::add_slp(app, ctx);
  cli::add_ram(app, ctx);
  cli::add_tm(app, ctx);
  cli::add_tableau(app, ctx);
  cli::add_nram(app, ctx);
  cli::add_vec(app, ctx);
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const alnram::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.kind());
  }
  return ctx.status;
}
