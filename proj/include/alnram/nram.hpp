#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "alnram/bignat.hpp"
#include "alnram/ram.hpp"
#include "alnram/tableau.hpp"
#include "alnram/tm.hpp"

namespace alnram {

enum class NramScheme { Shl, Shr, Div, Mul };

std::string_view to_string(NramScheme s);
std::optional<NramScheme> parse_scheme(std::string_view text);
inline constexpr NramScheme kAllSchemes[] = {NramScheme::Shl, NramScheme::Shr, NramScheme::Div, NramScheme::Mul};

// Operation set the scheme's verifier is restricted to (inc and Bool included).
OpSetGate scheme_gate(NramScheme s);

// Left shifts the tableau checks need, certified inside alpha:
// X = Y << w1 (or << w3 for the last one).
struct ShiftCert {
  BigNat x;
  BigNat y;
  bool by_w3 = false;
};

struct AlphaPack {
  NramScheme scheme{};
  BigNat alpha;
  std::uint64_t u = 0;           // element width (shl: trailing-ones count, the width is W)
  std::uint64_t width = 0;       // bits per element
  std::vector<BigNat> elements;  // element 0 first
  TableauWitness witness;        // what extraction must reproduce
};

// Build alpha from the run on s cells. NotAccepting when the run rejects
// (unless require_accept is false); SchemeConstraint for shl when s + c - 1
// is not a power of two or the tableau would be too long.
AlphaPack pack_alpha(NramScheme scheme, const TmSpec& spec, const BigNat& input, std::uint64_t s,
                     bool require_accept = true);

struct NramDecoded {
  TableauWitness witness;
  std::vector<ShiftCert> certs;
};

// Scheme-level extraction and consistency checks; nullopt on junk.
std::optional<NramDecoded> decode_alpha(NramScheme scheme, const BigNat& alpha);

struct NramVerdict {
  bool accept = false;
  bool decoded = false;
  VerifyCheck failed = VerifyCheck::None;
};

NramVerdict verify_nram(NramScheme scheme, const BigNat& alpha, const TmSpec& spec, const BigNat& input);

// The extraction and certificate checks as RAM programs run under
// scheme_gate. For shl the right-shifting part goes through remove_shr.
struct GatedReport {
  bool ok = false;                 // checks passed
  std::uint64_t violations = 0;    // gate violations raised
  std::uint64_t steps = 0;
  std::vector<BigNat> components;  // w2, w4, w5 (mul: shifted back; shl: confirmed equal in-program)
};

GatedReport verify_gated(NramScheme scheme, const BigNat& alpha);

}  // namespace alnram
