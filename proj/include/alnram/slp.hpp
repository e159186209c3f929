#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "alnram/bignat.hpp"
#include "alnram/numerics.hpp"

namespace alnram {

struct SlpStep {
  PrimOp op;
  std::size_t lhs = 0;
  std::optional<std::size_t> rhs;

  friend bool operator==(const SlpStep&, const SlpStep&) = default;
};

// Straight-line program. Value indices: 0 -> 0, 1 -> 1, 2..input_slots+1 ->
// inputs, then one index per step in order. Operands always refer to
// strictly smaller indices.
class Slp {
 public:
  Slp() = default;
  explicit Slp(std::size_t input_slots) : input_slots_(input_slots) {}

  std::size_t input_slots() const { return input_slots_; }
  std::size_t first_step_index() const { return 2 + input_slots_; }
  // Index of the output value v_n.
  std::size_t length() const { return 1 + input_slots_ + steps_.size(); }
  const std::vector<SlpStep>& steps() const { return steps_; }
  const SlpStep& step_at(std::size_t index) const { return steps_.at(index - first_step_index()); }
  bool is_step(std::size_t index) const { return index >= first_step_index() && index <= length(); }

  // Appends a step and returns its value index. Throws ForwardReference or
  // ArityMismatch.
  std::size_t push(PrimOp op, std::size_t lhs, std::optional<std::size_t> rhs = std::nullopt);

  friend bool operator==(const Slp&, const Slp&) = default;

 private:
  std::size_t input_slots_ = 0;
  std::vector<SlpStep> steps_;
};

Slp parse_slp(std::string_view text);
std::string print_slp(const Slp& p);

inline constexpr std::uint64_t kDefaultDirectBudgetBits = 1u << 16;

// Full value vector v_0..v_n. Throws BudgetExceeded if any value needs more
// than budget_bits bits.
std::vector<BigNat> eval_slp_direct(const Slp& p, std::span<const BigNat> inputs,
                                    std::uint64_t budget_bits = kDefaultDirectBudgetBits);
bool nonzero_direct(const Slp& p, std::span<const BigNat> inputs,
                    std::uint64_t budget_bits = kDefaultDirectBudgetBits);

struct SlpGenOptions {
  std::size_t steps = 8;
  std::vector<PrimOp> ops;
  std::uint64_t seed = 0;
  std::uint64_t value_budget_bits = kDefaultDirectBudgetBits;
  // Caps the number of bit transitions (interesting bits) of any value; 0 = no cap.
  std::size_t max_transitions = 0;
  // When set, input slot 0 is treated as a huge symbolic value: shl amounts
  // never depend on it and it is substituted by 2^aln_probe_exponent while
  // checking the budgets.
  bool aln = false;
  std::uint64_t aln_probe_exponent = 64;
  std::size_t input_slots = 0;
  std::vector<BigNat> inputs;
  std::size_t max_retries = 200;
};

Slp gen_random_slp(const SlpGenOptions& options);

}  // namespace alnram
