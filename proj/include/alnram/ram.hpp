#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "alnram/bignat.hpp"
#include "alnram/numerics.hpp"
#include "alnram/slp.hpp"

namespace alnram {

// Register or one of the two explicit constants.
struct RamArg {
  enum class Kind { Reg, Const } kind = Kind::Const;
  std::uint32_t value = 0;  // register index, or the constant 0/1

  static RamArg reg(std::uint32_t i) { return {Kind::Reg, i}; }
  static RamArg c(std::uint32_t v) { return {Kind::Const, v}; }
  bool is_reg() const { return kind == Kind::Reg; }
  friend bool operator==(const RamArg&, const RamArg&) = default;
};

struct RamAssign {
  std::uint32_t target;
  PrimOp op;
  RamArg a;
  std::optional<RamArg> b;
};

enum class RamRel { Le, Eq };

struct RamCompare {
  RamArg a;
  RamRel rel;
  RamArg b;
  std::size_t then_label;
  std::size_t else_label;
};

struct RamGoto {
  std::size_t label;
};

struct RamHalt {};

using RamCommand = std::variant<RamAssign, RamCompare, RamGoto, RamHalt>;

// Command i has label i + 1.
struct RamProgram {
  std::vector<RamCommand> commands;

  std::size_t size() const { return commands.size(); }
  const RamCommand& at(std::size_t label) const { return commands.at(label - 1); }
  std::uint32_t register_count() const;  // 1 + highest register mentioned
  std::size_t add(RamCommand c) {
    commands.push_back(std::move(c));
    return commands.size();
  }
};

RamProgram parse_ram(std::string_view text);
std::string print_ram(const RamProgram& p);
// DanglingLabel / ArityMismatch / ParseError on structural problems.
void validate_ram(const RamProgram& p);

struct OpSetGate {
  std::set<PrimOp> allowed;
  bool bounded_shift_only = false;

  static OpSetGate all();
  static OpSetGate of(std::initializer_list<PrimOp> ops, bool bounded = false);
  bool permits(PrimOp op) const { return allowed.contains(op); }
};

// Boolean op set {and, or, xor, not, clear}.
std::set<PrimOp> bool_ops();

struct RamState {
  std::vector<BigNat> regs;
  std::size_t pc = 1;
  std::uint64_t steps = 0;
  BigNat max_value_seen;

  BigNat reg(std::uint32_t i) const { return i < regs.size() ? regs[i] : BigNat{}; }
};

struct RamRunOptions {
  std::uint64_t max_steps = 1'000'000;
  std::uint64_t value_cap_bits = std::uint64_t{1} << 26;
  // Called after every executed command.
  std::function<void(const RamState&)> on_step;
};

struct RamResult {
  BigNat output;
  RamState state;
  bool halted = false;
};

RamResult run_ram(const RamProgram& p, const BigNat& input, const OpSetGate& gate, std::uint64_t max_steps);
// General entry: registers preloaded from init (index = register).
RamResult run_ram(const RamProgram& p, std::vector<BigNat> init, const OpSetGate& gate, const RamRunOptions& opt);

Slp trace_to_slp(const RamProgram& p, const BigNat& input, const OpSetGate& gate, std::uint64_t max_steps);

// 2^L(t) - 1, L(0) = max(n, 1); cap bounds L.
BigNat el_bound(const OpSetGate& gate, std::uint64_t t, std::uint64_t n,
                std::uint64_t cap_bits = std::uint64_t{1} << 24);

struct AramReport {
  std::vector<BigNat> schedule;
  std::vector<bool> accepted;
  std::vector<bool> halted;
  bool stabilized = false;  // last half of the schedule agrees
  bool verdict = false;     // meaningful only when stabilized
};

AramReport run_aram(const RamProgram& p, const BigNat& input, const OpSetGate& gate,
                    const std::vector<BigNat>& schedule, std::uint64_t max_steps);

}  // namespace alnram
