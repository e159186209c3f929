#pragma once

#include <cstdint>
#include <vector>

#include "alnram/ram.hpp"
#include "alnram/tm.hpp"

namespace alnram {

// Fixed register allocation for emitted programs.
namespace reg {
inline constexpr std::uint32_t input = 0;
inline constexpr std::uint32_t marker = 1;  // B
inline constexpr std::uint32_t tape = 2;
inline constexpr std::uint32_t head = 3;
inline constexpr std::uint32_t state = 4;
inline constexpr std::uint32_t boundary = 5;
inline constexpr std::uint32_t scratch = 6;
}  // namespace reg

// Gate the step fragments are built for: shl, shr and Boolean ops, constant shifts.
OpSetGate step_gate();

// One TM step as straight-line assignments. Reads tape/head/state/boundary,
// rewrites tape/head/state. Fall-off from cell 0 is detected through boundary.
RamProgram emit_step(const TmSpec& spec);
// Same, plus the tape-exceeded transition at head & (boundary >> c).
RamProgram emit_bounded_step(const TmSpec& spec);

struct PackedLayout {
  std::vector<std::uint64_t> offsets;  // segment start per machine, the last one unbounded
  std::vector<std::uint64_t> widths;   // s_j + c - 1, bounded machines only
  BigNat B;
  BigNat inp;
};

struct PackedMachine {
  std::uint64_t s;
  BigNat inp;
};

// Bounded machines in order, then the unbounded machine with input last_input.
PackedLayout pack_inputs(const TmSpec& spec, const std::vector<PackedMachine>& machines, const BigNat& last_input = BigNat{});

// Configuration of machine j read back from tape/head/state registers.
TmConfig unpack_machine(const TmSpec& spec, const PackedLayout& layout, std::size_t j, const BigNat& tape,
                        const BigNat& head, const BigNat& state);

enum class RunnerVariant { Step, Bounded, Parallel };

// Full programs. Step: R0 = inp. Bounded: R0 = inp, R1 = 1 << s. Parallel:
// R0 = packed inp, R1 = B. Step and Bounded leave 1 in R0 on accept, 0
// otherwise; Parallel leaves the packed halting states.
RamProgram emit_runner(const TmSpec& spec, RunnerVariant variant);
inline RamProgram emit_parallel_runner(const TmSpec& spec) { return emit_runner(spec, RunnerVariant::Parallel); }

struct ShrFree {
  RamProgram program;
  std::uint32_t scale;               // register holding the common power-of-two factor
  std::vector<std::size_t> entry;    // entry[label - 1]: label where that command's simulation starts
  std::uint32_t original_registers;  // registers 0..original_registers-1 keep their meaning, scaled
};

// Right shifts replaced by scaling every other register up. Outputs are
// normalised back into R0 before each halt.
ShrFree remove_shr(const RamProgram& p);

}  // namespace alnram
