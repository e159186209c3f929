#include "alnram/nram.hpp"

#include "alnram/error.hpp"
#include "alnram/numerics.hpp"
#include "nram_layout.hpp"

namespace alnram {

std::string_view to_string(NramScheme s) {
  switch (s) {
    case NramScheme::Shl: return "shl";
    case NramScheme::Shr: return "shr";
    case NramScheme::Div: return "div";
    case NramScheme::Mul: return "mul";
  }
  return "?";
}

std::optional<NramScheme> parse_scheme(std::string_view text) {
  for (auto s : kAllSchemes)
    if (to_string(s) == text) return s;
  return std::nullopt;
}

OpSetGate scheme_gate(NramScheme s) {
  OpSetGate g;
  g.allowed = bool_ops();
  g.allowed.insert(PrimOp::Inc);
  switch (s) {
    case NramScheme::Shl: g.allowed.insert(PrimOp::Shl); break;
    case NramScheme::Shr: g.allowed.insert(PrimOp::Shr); break;
    case NramScheme::Div: g.allowed.insert(PrimOp::IntDiv); break;
    case NramScheme::Mul: g.allowed.insert(PrimOp::Mul); break;
  }
  return g;
}

namespace nram_detail {

std::vector<BigNat> slot_values(const TableauWitness& w) {
  const std::uint64_t w1 = w.w1.to_u64(), w3 = w.w3.to_u64();
  std::vector<BigNat> v(kSlotCount);
  v[W1] = w.w1;
  v[W2] = w.w2;
  v[W3] = w.w3;
  v[W4] = w.w4;
  v[W5] = w.w5;
  v[Z1] = BigNat::ones(w1);
  v[Z3] = BigNat::ones(w3);
  v[C1] = w.w4 << w1;
  v[C2] = v[C1] << w1;
  v[C3A] = w.w5 << w1;
  v[C3] = v[C3A] << w1;
  v[C4] = v[C3] << w1;
  v[C5] = BigNat::pow2(w3);
  return v;
}

}  // namespace nram_detail

using namespace nram_detail;

namespace {

BigNat inc(const BigNat& a) { return a + BigNat{1}; }

std::uint64_t pow2_at_least(std::uint64_t v) {
  std::uint64_t p = 2;
  while (p < v) p <<= 1;
  return p;
}

// Witnesses with the tableau stretched to exactly rows IDs.
TableauWitness stretched(const TmSpec& spec, const BigNat& input, std::uint64_t s, bool require_accept,
                         std::optional<std::uint64_t> rows) {
  auto t = build_tableau(spec, input, s);
  if (!t) fail(ErrorKind::BudgetExceeded, "machine did not halt");
  if (require_accept && t->final_state != kAccept)
    fail(ErrorKind::NotAccepting, "machine halted in state " + std::to_string(t->final_state));
  if (rows) {
    if (*rows < t->n) fail(ErrorKind::SchemeConstraint, "run longer than the fixed tableau length");
    if (*rows * t->m > kTableauCapBits) fail(ErrorKind::SchemeConstraint, "fixed tableau length too large");
    t->ids.resize(*rows, t->ids.back());
    t->n = *rows;
    t->V = encode_vector(t->m, t->ids);
  }
  return witnesses_of(*t, spec);
}

}  // namespace

AlphaPack pack_alpha(NramScheme scheme, const TmSpec& spec, const BigNat& input, std::uint64_t s,
                     bool require_accept) {
  AlphaPack p;
  p.scheme = scheme;
  if (scheme == NramScheme::Shl) {
    const std::uint64_t w1 = id_field(s, spec.c);
    if (w1 & (w1 - 1)) fail(ErrorKind::SchemeConstraint, "s + c - 1 = " + std::to_string(w1) + " is not a power of two");
    const std::uint64_t m = 3 * w1;
    if (m > 20) fail(ErrorKind::SchemeConstraint, "tableau of 2^" + std::to_string(m) + " + 1 rows");
    p.witness = stretched(spec, input, s, require_accept, (std::uint64_t{1} << m) + 1);
    p.u = 0;
    while ((std::uint64_t{1} << p.u) < w1) ++p.u;
    p.width = p.witness.w3.to_u64() + m;
    p.elements = {BigNat::ones(p.u), p.witness.w2, p.witness.w4, p.witness.w5};
    p.alpha = encode_vector(p.width, p.elements);
    return p;
  }
  p.witness = stretched(spec, input, s, require_accept, std::nullopt);
  const auto v = slot_values(p.witness);
  const std::vector<std::size_t> order = scheme == NramScheme::Shr
                                             ? std::vector<std::size_t>(kShrOrder.begin(), kShrOrder.end())
                                             : std::vector<std::size_t>(kDivOrder.begin(), kDivOrder.end());
  std::uint64_t bits = 1;
  for (auto slot : order) bits = std::max(bits, v[slot].bit_length());
  if (scheme == NramScheme::Shr) {
    p.width = p.u = pow2_at_least(bits);
    p.elements.push_back(BigNat{p.u - 1});
  } else {
    p.width = p.u = bits;
    p.elements.push_back(BigNat::ones(p.u));
    p.elements.push_back(BigNat{});
  }
  for (auto slot : order) p.elements.push_back(v[slot]);
  if (scheme == NramScheme::Shr) p.elements.push_back(BigNat::ones(p.u));
  p.alpha = encode_vector(p.width, p.elements);
  return p;
}

namespace {

constexpr std::uint64_t kMaxWidth = std::uint64_t{1} << 26;

std::optional<NramDecoded> decode_shl(const BigNat& alpha) {
  const BigNat w1 = clear(inc(alpha), alpha);
  if (w1.bit_length() > 6) return std::nullopt;  // m << m would not fit any budget
  const BigNat m = w1 | (w1 << 1);
  const BigNat w3 = shl(m, m);
  auto up = [&](const BigNat& x) { return shl(shl(shl(shl(x, w3), w1), w1), w1); };
  const BigNat M = up(BigNat{1});
  const BigNat mask = tnot(M);
  if (inc(alpha & mask) != w1) return std::nullopt;
  if (!clear(alpha, tnot(up(up(up(M))))).is_zero()) return std::nullopt;
  auto down = [&](const BigNat& x) { return shr(shr(shr(shr(x, w3), w1), w1), w1); };
  NramDecoded d;
  d.witness.w1 = w1;
  d.witness.w3 = w3;
  BigNat x = down(alpha);
  d.witness.w2 = x & mask;
  x = down(x);
  d.witness.w4 = x & mask;
  d.witness.w5 = down(x) & mask;
  return d;
}

std::optional<NramDecoded> finish(std::vector<BigNat> v) {
  for (auto slot : {W1, W3})
    if (!v[slot].fits_u64() || v[slot].to_u64() > kMaxWidth) return std::nullopt;
  NramDecoded d;
  d.witness = {v[W1], v[W2], v[W3], v[W4], v[W5]};
  for (const auto& c : kCerts) d.certs.push_back({v[c.x], c.y == kOne ? BigNat{1} : v[c.y], c.by_w3});
  return d;
}

std::optional<NramDecoded> decode_shr(const BigNat& alpha) {
  const BigNat u = clear(inc(alpha), alpha);
  if (u.bit_length() > 27) return std::nullopt;
  const std::size_t K = kShrOrder.size() + 1;
  BigNat mask = alpha;
  for (std::size_t i = 0; i < K; ++i) mask = shr(mask, u);
  if (!(inc(mask) & mask).is_zero() || shr(inc(mask), u) != BigNat{1}) return std::nullopt;
  if (inc(alpha & mask) != u) return std::nullopt;
  std::vector<BigNat> v(kSlotCount);
  BigNat x = alpha;
  for (auto slot : kShrOrder) {
    x = shr(x, u);
    v[slot] = x & mask;
  }
  for (auto [z, w] : {std::pair{Z1, W1}, std::pair{Z3, W3}}) {
    if (!(inc(v[z]) & v[z]).is_zero() || shr(inc(v[z]), v[w]) != BigNat{1}) return std::nullopt;
  }
  for (const auto& c : kCerts) {
    const BigNat& amount = v[c.by_w3 ? W3 : W1];
    const BigNat& low = v[c.by_w3 ? Z3 : Z1];
    const BigNat y = c.y == kOne ? BigNat{1} : v[c.y];
    if (shr(v[c.x], amount) != y || !(v[c.x] & low).is_zero()) return std::nullopt;
  }
  return finish(std::move(v));
}

std::optional<NramDecoded> decode_div(const BigNat& alpha) {
  const BigNat Mu = clear(inc(alpha), alpha);
  const BigNat mask = clear(alpha, inc(alpha));
  if (Mu.bit_length() > kMaxWidth) return std::nullopt;
  std::vector<BigNat> v(kSlotCount);
  BigNat x = int_div(alpha, Mu);
  if (!(x & mask).is_zero()) return std::nullopt;
  for (auto slot : kDivOrder) {
    x = int_div(x, Mu);
    v[slot] = x & mask;
  }
  if (!int_div(x, Mu).is_zero()) return std::nullopt;
  for (auto z : {Z1, Z3})
    if (!(inc(v[z]) & v[z]).is_zero()) return std::nullopt;
  for (const auto& c : kCerts) {
    const BigNat& z = v[c.by_w3 ? Z3 : Z1];
    const BigNat y = c.y == kOne ? BigNat{1} : v[c.y];
    if (!(v[c.x] & z).is_zero() || int_div(v[c.x], inc(z)) != y) return std::nullopt;
  }
  v[W1] = BigNat{v[Z1].bit_length()};
  v[W3] = BigNat{v[Z3].bit_length()};
  return finish(std::move(v));
}

bool is_pow2(const BigNat& g) { return !g.is_zero() && inc(tnot(g)) == g; }

std::optional<NramDecoded> decode_mul(const BigNat& alpha) {
  const BigNat Mu = clear(inc(alpha), alpha);
  const BigNat mask = clear(alpha, inc(alpha));
  if (Mu.bit_length() > kMaxWidth) return std::nullopt;
  // pw[i] = 2^(u i), sh[slot] = value * 2^(u (position))
  std::vector<BigNat> pw{BigNat{1}};
  std::vector<BigNat> sh(kSlotCount);
  std::vector<std::size_t> at(kSlotCount, 0);
  BigNat P = mask * Mu;
  if (!(P & alpha).is_zero()) return std::nullopt;
  pw.push_back(Mu);
  pw.push_back(Mu * Mu);
  for (std::size_t i = 0; i < kDivOrder.size(); ++i) {
    P = P * Mu;
    sh[kDivOrder[i]] = P & alpha;
    at[kDivOrder[i]] = i + 2;
    pw.push_back(pw.back() * Mu);
  }
  if (pw.back() <= alpha) return std::nullopt;
  // shifted 2^w from shifted 2^w - 1
  std::vector<BigNat> g(kSlotCount);
  for (auto z : {Z1, Z3}) {
    const BigNat& t = sh[z];
    if ((t & pw[at[z]]) != pw[at[z]]) return std::nullopt;
    g[z] = clear(t * BigNat{2}, t);
    if (!is_pow2(g[z])) return std::nullopt;
  }
  for (const auto& c : kCerts) {
    const auto z = c.by_w3 ? Z3 : Z1;
    const std::size_t iy = c.y == kOne ? 0 : at[c.y];
    const BigNat y = c.y == kOne ? BigNat{1} : sh[c.y];
    if (sh[c.x] * pw[iy] * pw[at[z]] != y * g[z] * pw[at[c.x]]) return std::nullopt;
  }
  // host-side unshift for the tableau check
  std::vector<BigNat> v(kSlotCount);
  for (auto slot : kDivOrder) v[slot] = exact_div(sh[slot], pw[at[slot]]);
  v[W1] = BigNat{v[Z1].bit_length()};
  v[W3] = BigNat{v[Z3].bit_length()};
  return finish(std::move(v));
}

}  // namespace

std::optional<NramDecoded> decode_alpha(NramScheme scheme, const BigNat& alpha) {
  try {
    switch (scheme) {
      case NramScheme::Shl: return decode_shl(alpha);
      case NramScheme::Shr: return decode_shr(alpha);
      case NramScheme::Div: return decode_div(alpha);
      case NramScheme::Mul: return decode_mul(alpha);
    }
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::BudgetExceeded) throw;
  }
  return std::nullopt;
}

NramVerdict verify_nram(NramScheme scheme, const BigNat& alpha, const TmSpec& spec, const BigNat& input) {
  NramVerdict r;
  auto d = decode_alpha(scheme, alpha);
  if (!d) return r;
  r.decoded = true;
  auto v = verify_tableau(spec, input, d->witness);
  r.accept = v.accept;
  r.failed = v.failed;
  return r;
}

}  // namespace alnram
