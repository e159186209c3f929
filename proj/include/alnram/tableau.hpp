#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "alnram/bignat.hpp"
#include "alnram/tm.hpp"

namespace alnram {

// ---- vectors: n elements of width m packed as sum 2^(m i) k_i ----

BigNat make_O(const BigNat& a, std::uint64_t m, std::uint64_t n);
BigNat make_U(std::uint64_t T, std::uint64_t cap_bits = std::uint64_t{1} << 24);
std::vector<BigNat> decode_vector(std::uint64_t m, const BigNat& V, std::uint64_t n);
BigNat encode_vector(std::uint64_t m, const std::vector<BigNat>& elems);
BigNat gt_vec(std::uint64_t m, const BigNat& V1, const BigNat& V2, std::uint64_t n);
BigNat eq_vec(std::uint64_t m, const BigNat& V1, const BigNat& V2, std::uint64_t n);

// ---- tableaux ----

struct TableauWitness {
  BigNat w1, w2, w3, w4, w5;
  friend bool operator==(const TableauWitness&, const TableauWitness&) = default;
};

struct Tableau {
  std::uint64_t s = 0;
  std::uint64_t m = 0;  // 3 (s + c - 1)
  std::uint64_t n = 0;  // number of IDs
  BigNat V;
  std::uint32_t final_state = 0;
  std::vector<BigNat> ids;
};

inline constexpr std::uint64_t kTableauCapBits = std::uint64_t{1} << 24;

// Run on s cells and pad with halted steps until the configuration repeats.
// Returns nullopt when the machine does not halt within max_steps.
std::optional<Tableau> build_tableau(const TmSpec& spec, const BigNat& input, std::uint64_t s,
                                     std::uint64_t max_steps = 100000);
TableauWitness witnesses_of(const Tableau& t, const TmSpec& spec);
// NotAccepting unless the bounded run accepts.
TableauWitness make_witnesses(const TmSpec& spec, const BigNat& input, std::uint64_t s,
                              std::uint64_t max_steps = 100000);

enum class VerifyCheck {
  None,
  Shape,        // shift amounts out of range
  W4,           // w4 self-consistency
  W5,           // w5 self-consistency
  Extent,       // w2 has bits outside the tableau fields
  InputWidth,   // inp & a != inp
  Tape,         // (inp & a) | shifted next tapes = tape
  State,
  Head,
  FinalHead,
  FinalState,
};

std::string_view to_string(VerifyCheck c);

struct VerifyResult {
  bool accept = false;
  VerifyCheck failed = VerifyCheck::None;   // first failing check
  std::optional<std::uint32_t> halt_state;  // 1..3 when the chain is consistent and settled
};

VerifyResult verify_tableau(const TmSpec& spec, const BigNat& input, const TableauWitness& w);

std::string format_witness(const TableauWitness& w);
TableauWitness parse_witness(std::string_view text);

// ---- packed candidates ----

struct CandidatePack {
  std::uint64_t s = 0;
  std::uint64_t n = 0;  // IDs per tableau
  std::uint64_t T = 0;  // slot width, at least n m plus headroom
  std::uint64_t K = 0;
  BigNat packed;
};

std::uint64_t slot_width(const TmSpec& spec, std::uint64_t s, std::uint64_t n);
CandidatePack pack_candidates(const TmSpec& spec, std::uint64_t s, std::uint64_t n, const std::vector<BigNat>& tableaux);
// Every value below 2^T as a candidate; BudgetExceeded beyond cap.
CandidatePack exhaustive_candidates(const TmSpec& spec, std::uint64_t s, std::uint64_t n,
                                    std::uint64_t cap_bits = std::uint64_t{1} << 24);

struct SimulateReport {
  BigNat res;                                    // bit T i set iff candidate i is a correct tableau
  std::array<BigNat, 4> halted;                  // [h]: correct and settled in halting state h (1..3)
  std::optional<std::uint32_t> halt_state;       // smallest h with a hit
  std::vector<bool> flags() const;
  std::uint64_t K = 0, T = 0;
};

SimulateReport simulate(const TmSpec& spec, const BigNat& input, const CandidatePack& pack);

// Candidate sources for the algorithms.
enum class Strategy { FromRun, FromRunWithCorruptions };

// Genuine tableau (if the run halts) followed by single-bit corruptions.
std::vector<BigNat> candidate_tableaux(const TmSpec& spec, const BigNat& input, std::uint64_t s, Strategy strategy,
                                       std::uint64_t& n_out, std::uint64_t seed = 1);

enum class Verdict { Accept, Reject };

struct AlgorithmTrace {
  std::vector<std::uint64_t> tried_s;
  std::vector<std::optional<std::uint32_t>> outcomes;
};

// n = 1, 2, 4, ...; s = el(n). Returns Accept on halting state 1; with
// reject_detection also Reject on state 2.
Verdict algorithm1(const TmSpec& spec, const BigNat& input, const std::function<BigNat(std::uint64_t)>& el,
                   Strategy strategy, std::uint64_t max_iterations, bool reject_detection = false,
                   AlgorithmTrace* trace = nullptr);
// Default el: the expansion bound for {shl, Bool} with n steps on the input's bit length.
std::function<BigNat(std::uint64_t)> default_el(const BigNat& input);

Verdict algorithm2(const TmSpec& spec, const BigNat& input, const BigNat& aln, Strategy strategy = Strategy::FromRun);

}  // namespace alnram
