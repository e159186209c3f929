#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "alnram/bignat.hpp"
#include "alnram/slp.hpp"

namespace alnram {

enum class LazyMode { Plain, Aln };

// A formal variable introduced by a shift step, or the arbitrary large
// number X = 2^omega in ALN mode (operand_step unset, step = its slot index).
struct FormalVar {
  std::size_t step = 0;
  int direction = +1;
  std::optional<std::size_t> operand_step;

  bool is_aln() const { return !operand_step.has_value(); }
  friend bool operator==(const FormalVar&, const FormalVar&) = default;
};

// Names the position sum_j exponents[j] * unit_j + offset, where unit_j is
// direction_j * value(operand_step_j) for shift variables and omega for X.
// exponents is aligned with LazyEvaluator::vars().
struct PobitIndex {
  std::vector<std::uint64_t> exponents;
  BigNat offset;

  friend bool operator==(const PobitIndex&, const PobitIndex&) = default;
  friend auto operator<=>(const PobitIndex& a, const PobitIndex& b) {
    if (auto c = a.exponents <=> b.exponents; c != 0) return c;
    return a.offset <=> b.offset;
  }
};

struct SpaceReport {
  std::uint64_t max_scalar_bits = 0;
  std::uint64_t max_live_indices = 0;
};

// Evaluates an SLP[+,-,*,<<,>>,Bool] without materialising its values. Each
// value is held as the ascending list of its interesting bit positions
// (positions where a bit differs from the bit below it), every position being
// an affine form over the formal variables. Positions are ordered by the
// recursive sign evaluation of their difference, which expands the
// last-defined variables into the values they stand for.
class LazyEvaluator {
 public:
  // In Aln mode input slot 0 is X and `inputs` supplies the remaining slots.
  LazyEvaluator(const Slp& p, std::vector<BigNat> inputs = {}, LazyMode mode = LazyMode::Plain);
  ~LazyEvaluator();
  LazyEvaluator(LazyEvaluator&&) noexcept;
  LazyEvaluator& operator=(LazyEvaluator&&) noexcept;

  const Slp& program() const;
  LazyMode mode() const;
  const std::vector<FormalVar>& vars() const;

  // Interesting positions of v_t in ascending order, one canonical name each.
  std::vector<PobitIndex> indices(std::size_t t);
  std::strong_ordering compare(const PobitIndex& a, const PobitIndex& b);
  bool bit(std::size_t t, const PobitIndex& i);
  std::optional<PobitIndex> next(std::size_t t, const std::optional<PobitIndex>& after);
  bool nonzero(std::size_t t);
  bool nonzero() { return nonzero(program().length()); }

  PobitIndex offset_index(std::uint64_t offset) const;

  SpaceReport space() const;
  // Stops evaluation with BudgetExceeded when a value has more transitions.
  void set_transition_cap(std::size_t cap);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Free-function surface.
std::vector<PobitIndex> enumerate_indices(const Slp& p, std::span<const BigNat> inputs = {});
// Concrete position named by i (negative = below bit 0). In Aln mode `omega`
// gives X = 2^omega.
mpz_class position_oracle(const Slp& p, const std::vector<FormalVar>& vars, const PobitIndex& i,
                          std::span<const BigNat> inputs = {}, std::optional<std::uint64_t> omega = {},
                          std::uint64_t budget_bits = kDefaultDirectBudgetBits);
std::strong_ordering compare_indices(const Slp& p, const PobitIndex& a, const PobitIndex& b,
                                     std::span<const BigNat> inputs = {});
std::optional<PobitIndex> next_index(const Slp& p, const std::optional<PobitIndex>& i,
                                     std::span<const BigNat> inputs = {});
bool eval_bit(const Slp& p, std::size_t t, const PobitIndex& i, std::span<const BigNat> inputs = {});
bool nonzero_lazy(const Slp& p, LazyMode mode = LazyMode::Plain, std::span<const BigNat> inputs = {});

// Balanced digits b_i = a_{i-1} - a_i (a_{-1} = 0) over bits 0..len(a).
std::vector<int> balanced_digits(const BigNat& a);

}  // namespace alnram
