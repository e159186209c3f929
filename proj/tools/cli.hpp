#pragma once

#include <string>

#include "CLI11.hpp"
#include "alnram/bignat.hpp"
#include "json.hpp"

namespace cli {

struct Ctx {
  bool json = false;
  int status = 0;
};

// One result record: a json object under --json, the text line otherwise.
void emit(const Ctx& ctx, const nlohmann::json& record, const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);
alnram::BigNat number(const std::string& text);

void add_slp(CLI::App& app, Ctx& ctx);
void add_ram(CLI::App& app, Ctx& ctx);
void add_tm(CLI::App& app, Ctx& ctx);
void add_tableau(CLI::App& app, Ctx& ctx);
void add_nram(CLI::App& app, Ctx& ctx);
void add_vec(CLI::App& app, Ctx& ctx);

}  // namespace cli
