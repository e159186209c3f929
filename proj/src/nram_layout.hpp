#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "alnram/bignat.hpp"
#include "alnram/tableau.hpp"

namespace alnram::nram_detail {

// Logical values carried by alpha. Z* = 2^w* - 1; C* are shifted copies.
enum Slot : std::size_t { W1, W2, W3, W4, W5, Z1, Z3, C1, C2, C3A, C3, C4, C5, kSlotCount };
inline constexpr std::size_t kOne = kSlotCount;  // the constant 1 as a shift source

struct CertShape {
  std::size_t x;
  std::size_t y;
  bool by_w3;
};

// w4 << w1, w4 << 2 w1, w5 << 2 w1, w5 << 3 w1, 1 << w3
inline constexpr std::array<CertShape, 6> kCerts = {{
    {C1, W4, false},
    {C2, C1, false},
    {C3A, W5, false},
    {C3, C3A, false},
    {C4, C3, false},
    {C5, kOne, true},
}};

// element order after the header element(s)
inline constexpr std::array<std::size_t, 13> kShrOrder = {W1, W2, W3, W4, W5, Z1, Z3, C1, C2, C3A, C3, C4, C5};
inline constexpr std::array<std::size_t, 11> kDivOrder = {W2, W4, W5, Z1, Z3, C1, C2, C3A, C3, C4, C5};

std::vector<BigNat> slot_values(const TableauWitness& w);

}  // namespace alnram::nram_detail
