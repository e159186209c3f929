#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "alnram/bignat.hpp"

namespace alnram {

// L decrements the cell index, R increments it; cell 0 is bit 0 of the tape.
enum class Move { L, R, S };

struct Transition {
  std::uint32_t state;
  int bit;
  Move move;
  friend bool operator==(const Transition&, const Transition&) = default;
};

inline constexpr std::uint32_t kAccept = 1;
inline constexpr std::uint32_t kReject = 2;
inline constexpr std::uint32_t kTapeExceeded = 3;

constexpr bool is_halting(std::uint32_t q) { return q >= 1 && q <= 3; }

struct TmSpec {
  std::uint32_t k = 4;
  std::uint32_t c = 2;
  // delta[q][b]; halting states never have entries
  std::vector<std::array<std::optional<Transition>, 2>> delta;

  // Transition actually applied, with halting states auto-completed. The
  // halting self-loop is reported with Move::L (drift toward cell 0).
  Transition rule(std::uint32_t q, int b) const;
};

std::uint32_t state_bits(std::uint32_t k);  // ceil(log2 k)

TmSpec parse_tm(std::string_view text);
std::string print_tm(const TmSpec& spec);
void validate_tm(TmSpec& spec);  // computes c, checks totality

struct TmConfig {
  BigNat tape;
  std::uint64_t head = 0;
  std::uint32_t state = 0;
  friend bool operator==(const TmConfig&, const TmConfig&) = default;
};

// bound = tape size s (cells 0..s-1), or nullopt for an unbounded tape.
TmConfig step_tm(const TmSpec& spec, const TmConfig& cfg, std::optional<std::uint64_t> bound = std::nullopt);

struct TmRun {
  TmConfig final;
  std::vector<BigNat> trace;  // IDs, only with a bound
  std::uint64_t steps = 0;
  bool halted = false;
};

// Stops once a halting state is entered or after max_steps steps.
TmRun run_tm(const TmSpec& spec, const BigNat& input, std::optional<std::uint64_t> bound, std::uint64_t max_steps);

// Field width s + c - 1.
inline std::uint64_t id_field(std::uint64_t s, std::uint64_t c) { return s + c - 1; }
BigNat encode_id(const TmConfig& cfg, std::uint64_t s, std::uint64_t c);
TmConfig decode_id(const BigNat& packed, std::uint64_t s, std::uint64_t c);

// A few fixed machines used by tests, the acceptance run and the CLI.
namespace machines {
TmSpec accept_all();  // accepts at once
TmSpec reject_all();  // rejects at once
TmSpec fall_off();    // moves L from cell 0
TmSpec scan_up();     // walks R over 1s, accepts on the first 0
TmSpec parity();      // accepts when the leading run of 1s has even length
TmSpec increment();   // adds one to the input, then accepts
TmSpec zigzag();      // R, L, accept
std::vector<std::pair<std::string, TmSpec>> all();
}  // namespace machines

}  // namespace alnram
