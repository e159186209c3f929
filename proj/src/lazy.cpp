#include "alnram/lazy.hpp"

#include <algorithm>
#include <functional>
#include <string>

#include "alnram/error.hpp"

namespace alnram {

namespace {

// Affine position: sum coef[v] * unit_v + offset. Coefficients may be
// negative for differences of positions.
struct Pos {
  std::vector<std::int64_t> coef;
  mpz_class offset;

  friend bool operator<(const Pos& a, const Pos& b) {
    if (a.coef != b.coef) return a.coef < b.coef;
    return cmp(a.offset, b.offset) < 0;
  }
};

// Signed monomial k * 2^p.
struct Mono {
  mpz_class k;
  Pos p;
};

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) fail(ErrorKind::BudgetExceeded, "exponent overflow");
  return r;
}

Pos pos_add(const Pos& a, const Pos& b) {
  Pos r{a.coef, a.offset + b.offset};
  for (std::size_t i = 0; i < r.coef.size(); ++i) r.coef[i] = checked_add(r.coef[i], b.coef[i]);
  return r;
}

Pos pos_sub(const Pos& a, const Pos& b) {
  Pos r{a.coef, a.offset - b.offset};
  for (std::size_t i = 0; i < r.coef.size(); ++i) r.coef[i] = checked_add(r.coef[i], -b.coef[i]);
  return r;
}

Pos pos_plus(const Pos& a, const mpz_class& k) { return Pos{a.coef, a.offset + k}; }

int sgn_mpz(const mpz_class& v) { return sgn(v); }

std::uint64_t mpz_bits(const mpz_class& v) {
  return sgn(v) == 0 ? 0 : mpz_sizeinbase(v.get_mpz_t(), 2);
}

}  // namespace

struct LazyEvaluator::Impl {
  Slp p;
  LazyMode mode;
  std::vector<BigNat> slot_values;  // index = slot number; slot 0 unused in Aln mode
  std::vector<FormalVar> vars;
  std::vector<std::optional<std::size_t>> var_of_index;
  std::optional<std::size_t> aln_var;
  std::vector<std::optional<std::vector<Pos>>> tables;
  std::map<Pos, int> sign_memo;
  SpaceReport report;
  std::uint64_t live_tables = 0;
  std::size_t transition_cap = std::size_t{1} << 20;

  Impl(const Slp& prog, std::vector<BigNat> inputs, LazyMode m) : p(prog), mode(m) {
    const std::size_t slots = p.input_slots();
    const std::size_t expected = m == LazyMode::Aln ? (slots == 0 ? 0 : slots - 1) : slots;
    if (m == LazyMode::Aln && slots == 0)
      fail(ErrorKind::ArityMismatch, "ALN mode needs input slot 0 for X");
    if (inputs.size() != expected)
      fail(ErrorKind::ArityMismatch, "expected " + std::to_string(expected) + " concrete inputs");
    if (m == LazyMode::Aln) slot_values.emplace_back(0);
    for (auto& v : inputs) slot_values.push_back(std::move(v));

    var_of_index.assign(p.length() + 1, std::nullopt);
    if (m == LazyMode::Aln) {
      aln_var = vars.size();
      var_of_index[2] = vars.size();
      vars.push_back(FormalVar{2, +1, std::nullopt});
    }
    for (std::size_t t = p.first_step_index(); t <= p.length(); ++t) {
      const auto& s = p.step_at(t);
      switch (s.op) {
        case PrimOp::Add: case PrimOp::NatSub: case PrimOp::Mul: case PrimOp::Shl: case PrimOp::Shr:
        case PrimOp::And: case PrimOp::Or: case PrimOp::Xor: case PrimOp::Not: case PrimOp::Clear:
          break;
        default:
          fail(ErrorKind::UnsupportedOp, std::string(mnemonic(s.op)) + " at index " + std::to_string(t));
      }
      if (s.op == PrimOp::Shl || s.op == PrimOp::Shr) {
        var_of_index[t] = vars.size();
        vars.push_back(FormalVar{t, s.op == PrimOp::Shl ? +1 : -1, *s.rhs});
      }
    }
    tables.assign(p.length() + 1, std::nullopt);
  }

  // ---- bookkeeping ----
  void track(const mpz_class& v) { report.max_scalar_bits = std::max(report.max_scalar_bits, mpz_bits(v)); }
  void track(const Pos& q) {
    track(q.offset);
    for (auto c : q.coef)
      report.max_scalar_bits = std::max<std::uint64_t>(
          report.max_scalar_bits, c == 0 ? 0 : 64 - __builtin_clzll(static_cast<std::uint64_t>(c < 0 ? -c : c)));
  }
  void track_live(std::uint64_t transient) {
    report.max_live_indices = std::max(report.max_live_indices, live_tables + transient);
  }

  Pos zero() const { return Pos{std::vector<std::int64_t>(vars.size(), 0), 0}; }

  bool has_shift_terms(const Pos& f) const {
    for (std::size_t v = 0; v < f.coef.size(); ++v)
      if (f.coef[v] != 0 && (!aln_var || v != *aln_var)) return true;
    return false;
  }
  std::int64_t omega_coef(const Pos& f) const { return aln_var ? f.coef[*aln_var] : 0; }

  // Lexicographically smallest name: exponents in step order, then offset.
  static const Pos& lexmin(const Pos& a, const Pos& b) { return b < a ? b : a; }

  // ---- sign of an affine position ----
  int sign(const Pos& f) {
    if (!has_shift_terms(f)) {
      if (auto c = omega_coef(f); c != 0) return c > 0 ? 1 : -1;
      return sgn_mpz(f.offset);
    }
    if (auto it = sign_memo.find(f); it != sign_memo.end()) return it->second;

    // Expand every shift unit into the signed digits of the value it stands
    // for; their positions involve only variables defined earlier.
    std::vector<Mono> monos;
    for (std::size_t v = 0; v < vars.size(); ++v) {
      if (f.coef[v] == 0 || (aln_var && v == *aln_var)) continue;
      const auto& digits = table(*vars[v].operand_step);
      const mpz_class scale = mpz_class(static_cast<long>(f.coef[v])) * vars[v].direction;
      for (std::size_t k = 0; k < digits.size(); ++k)
        monos.push_back(Mono{(k % 2 == 0) ? mpz_class(-scale) : scale, digits[k]});
    }
    track_live(monos.size());
    int s = sum_sign(std::move(monos), omega_coef(f), f.offset);
    sign_memo.emplace(f, s);
    return s;
  }

  int compare_pos(const Pos& a, const Pos& b) {
    if (a.coef == b.coef) return cmp(a.offset, b.offset) < 0 ? -1 : (cmp(a.offset, b.offset) > 0 ? 1 : 0);
    return sign(pos_sub(a, b));
  }

  // Sort by position, merge equal positions, drop zero coefficients.
  std::vector<Mono> group(std::vector<Mono> m, bool descending) {
    std::stable_sort(m.begin(), m.end(), [&](const Mono& a, const Mono& b) {
      int c = compare_pos(a.p, b.p);
      return descending ? c > 0 : c < 0;
    });
    std::vector<Mono> out;
    for (auto& x : m) {
      if (!out.empty() && compare_pos(out.back().p, x.p) == 0) {
        out.back().k += x.k;
        out.back().p = lexmin(out.back().p, x.p);
      } else {
        out.push_back(std::move(x));
      }
    }
    std::erase_if(out, [](const Mono& x) { return sgn(x.k) == 0; });
    return out;
  }

  // Value of a position known to lie in [0, bound).
  std::uint64_t small_value(const Pos& g, std::uint64_t bound) {
    std::uint64_t lo = 0, hi = bound;
    while (lo < hi) {
      std::uint64_t mid = lo + (hi - lo) / 2;
      int c = sign(pos_plus(g, -mpz_class(static_cast<unsigned long>(mid))));
      if (c == 0) return mid;
      if (c > 0)
        lo = mid + 1;
      else
        hi = mid;
    }
    fail(ErrorKind::BudgetExceeded, "inconsistent position bound");
  }

  // Sign of sum k_i 2^{p_i} over groups sorted by descending position.
  int scan_desc(const std::vector<Mono>& g) {
    if (g.empty()) return 0;
    mpz_class rest = 0;
    for (const auto& x : g) rest += abs(x.k);
    mpz_class s = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (i > 0 && sgn(s) != 0) {
        const Pos gap = pos_sub(g[i - 1].p, g[i].p);
        const std::uint64_t bound = mpz_bits(rest);
        // |s| 2^gap > rest * 2^{p_i} >= |remaining| once gap >= len(rest).
        if (sign(pos_plus(gap, -mpz_class(static_cast<unsigned long>(bound)))) >= 0) return sgn(s);
        s <<= small_value(gap, bound);
      }
      s += g[i].k;
      rest -= abs(g[i].k);
      track(s);
    }
    return sgn(s);
  }

  int sum_sign(std::vector<Mono> monos, std::int64_t c_omega, const mpz_class& d) {
    if (!aln_var) {
      monos.push_back(Mono{d, zero()});
      return scan_desc(group(std::move(monos), true));
    }
    auto g = group(std::move(monos), true);
    // Positions with 2p > omega grow without bound and dominate any term
    // linear in omega; the rest are eventually constant.
    auto split = std::partition_point(g.begin(), g.end(), [&](const Mono& x) {
      Pos twice{x.p.coef, x.p.offset * 2};
      for (auto& c : twice.coef) c = checked_add(c, c);
      twice.coef[*aln_var] = checked_add(twice.coef[*aln_var], -1);
      return sign(twice) > 0;
    });
    std::vector<Mono> big(g.begin(), split);
    if (int s = scan_desc(big); s != 0) return s;
    if (c_omega != 0) return c_omega > 0 ? 1 : -1;
    std::vector<Mono> bounded(split, g.end());
    bounded.push_back(Mono{d, zero()});
    return scan_desc(group(std::move(bounded), true));
  }

  // ---- value tables ----
  std::vector<Pos> transitions_of(const BigNat& v) const {
    std::vector<Pos> out;
    bool last = false;
    for (std::uint64_t i = 0; i <= v.bit_length(); ++i) {
      bool b = v.bit(i);
      if (b != last) {
        Pos q = zero();
        q.offset = static_cast<unsigned long>(i);
        out.push_back(std::move(q));
        last = b;
      }
    }
    return out;
  }

  std::vector<Pos> bool_merge(const std::vector<Pos>& a, const std::vector<Pos>& b,
                              const std::function<bool(bool, bool)>& fn) {
    std::vector<Pos> out;
    std::size_t i = 0, j = 0;
    bool ba = false, bb = false, last = false;
    while (i < a.size() || j < b.size()) {
      int c = i == a.size() ? 1 : (j == b.size() ? -1 : compare_pos(a[i], b[j]));
      const Pos* name;
      if (c < 0) {
        name = &a[i++];
        ba = !ba;
      } else if (c > 0) {
        name = &b[j++];
        bb = !bb;
      } else {
        name = &lexmin(a[i], b[j]);
        ++i, ++j;
        ba = !ba, bb = !bb;
      }
      bool r = fn(ba, bb);
      if (r != last) {
        out.push_back(*name);
        last = r;
      }
    }
    return out;
  }

  std::vector<Pos> shifted(const std::vector<Pos>& a, std::size_t var) {
    std::vector<Pos> out = a;
    for (auto& q : out) {
      q.coef[var] = checked_add(q.coef[var], 1);
      track(q);
    }
    return out;
  }

  std::vector<Mono> digits(const std::vector<Pos>& a, int scale) const {
    std::vector<Mono> out;
    out.reserve(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) out.push_back(Mono{(k % 2 == 0) ? -scale : scale, a[k]});
    return out;
  }

  // Interesting positions of sum k_i 2^{p_i} (all p_i >= 0), or nullopt if the
  // sum is negative. Carries jump across gaps between monomial positions.
  std::optional<std::vector<Pos>> accumulate(std::vector<Mono> monos) {
    track_live(monos.size());
    auto g = group(std::move(monos), false);
    std::vector<Pos> out;
    if (g.empty()) return out;
    bool last = false;
    auto emit = [&](const Pos& base, std::uint64_t off, bool b) {
      if (b == last) return;
      Pos q = pos_plus(base, mpz_class(static_cast<unsigned long>(off)));
      track(q);
      out.push_back(std::move(q));
      last = b;
    };
    mpz_class w = g[0].k;
    Pos base = g[0].p;
    for (std::size_t i = 1; i < g.size(); ++i) {
      const Pos gap = pos_sub(g[i].p, base);
      const std::uint64_t live = mpz_bits(w) + 1;
      std::uint64_t step;
      if (sign(pos_plus(gap, -mpz_class(static_cast<unsigned long>(live)))) >= 0) {
        for (std::uint64_t off = 0; off < live; ++off) emit(base, off, mpz_tstbit(w.get_mpz_t(), off));
        w = sgn(w) < 0 ? -1 : 0;
      } else {
        step = small_value(gap, live);
        for (std::uint64_t off = 0; off < step; ++off) emit(base, off, mpz_tstbit(w.get_mpz_t(), off));
        mpz_fdiv_q_2exp(w.get_mpz_t(), w.get_mpz_t(), step);
      }
      w += g[i].k;
      track(w);
      base = g[i].p;
      if (out.size() > transition_cap) fail(ErrorKind::BudgetExceeded, "transition cap exceeded");
    }
    if (sgn(w) < 0) return std::nullopt;
    for (std::uint64_t off = 0; off <= mpz_bits(w); ++off) emit(base, off, mpz_tstbit(w.get_mpz_t(), off));
    return out;
  }

  const std::vector<Pos>& table(std::size_t t) {
    if (tables.at(t)) return *tables[t];
    std::vector<Pos> out;
    if (t == 1) {
      out = transitions_of(BigNat{1});
    } else if (t >= 2 && t < p.first_step_index()) {
      const std::size_t slot = t - 2;
      if (aln_var && slot == 0) {
        Pos a = zero();
        a.coef[*aln_var] = 1;
        out = {a, pos_plus(a, 1)};
      } else {
        out = transitions_of(slot_values[slot]);
      }
    } else if (t >= p.first_step_index()) {
      out = compute_step(t);
    }
    if (out.size() > transition_cap) fail(ErrorKind::BudgetExceeded, "transition cap exceeded");
    live_tables += out.size();
    track_live(0);
    tables[t] = std::move(out);
    return *tables[t];
  }

  std::vector<Pos> compute_step(std::size_t t) {
    const SlpStep& s = p.step_at(t);
    // Copies: table() may reallocate nothing, but keep operands stable anyway.
    const std::vector<Pos> a = table(s.lhs);
    const std::vector<Pos> b = s.rhs ? table(*s.rhs) : std::vector<Pos>{};
    switch (s.op) {
      case PrimOp::And: return bool_merge(a, b, [](bool x, bool y) { return x && y; });
      case PrimOp::Or: return bool_merge(a, b, [](bool x, bool y) { return x || y; });
      case PrimOp::Xor: return bool_merge(a, b, [](bool x, bool y) { return x != y; });
      case PrimOp::Clear: return bool_merge(a, b, [](bool x, bool y) { return x && !y; });
      case PrimOp::Not: {
        if (a.empty()) return {};
        std::vector<Pos> mask = {zero(), a.back()};
        return bool_merge(a, mask, [](bool x, bool y) { return x != y; });
      }
      case PrimOp::Shl: return shifted(a, *var_of_index[t]);
      case PrimOp::Shr: {
        auto moved = shifted(a, *var_of_index[t]);
        auto first_pos = std::partition_point(moved.begin(), moved.end(),
                                              [&](const Pos& q) { return sign(q) <= 0; });
        std::vector<Pos> out;
        if ((first_pos - moved.begin()) % 2 == 1) out.push_back(zero());
        out.insert(out.end(), first_pos, moved.end());
        return out;
      }
      case PrimOp::Add: {
        auto m = digits(a, 1);
        auto mb = digits(b, 1);
        m.insert(m.end(), mb.begin(), mb.end());
        return *accumulate(std::move(m));
      }
      case PrimOp::NatSub: {
        auto m = digits(a, 1);
        auto mb = digits(b, -1);
        m.insert(m.end(), mb.begin(), mb.end());
        return accumulate(std::move(m)).value_or(std::vector<Pos>{});
      }
      case PrimOp::Mul: {
        auto da = digits(a, 1);
        auto db = digits(b, 1);
        std::vector<Mono> m;
        m.reserve(da.size() * db.size());
        for (const auto& x : da)
          for (const auto& y : db) m.push_back(Mono{x.k * y.k, pos_add(x.p, y.p)});
        return *accumulate(std::move(m));
      }
      default:
        fail(ErrorKind::UnsupportedOp, std::string(mnemonic(s.op)));
    }
  }

  // ---- index conversions ----
  Pos to_pos(const PobitIndex& i) const {
    if (i.exponents.size() > vars.size()) fail(ErrorKind::ArityMismatch, "index has too many exponents");
    Pos q = zero();
    for (std::size_t v = 0; v < i.exponents.size(); ++v) {
      if (i.exponents[v] > static_cast<std::uint64_t>(INT64_MAX)) fail(ErrorKind::BudgetExceeded, "exponent too large");
      q.coef[v] = static_cast<std::int64_t>(i.exponents[v]);
    }
    q.offset = i.offset.mpz();
    return q;
  }

  PobitIndex to_index(const Pos& q) const {
    PobitIndex i;
    for (auto c : q.coef) {
      if (c < 0) fail(ErrorKind::MalformedDescription, "negative exponent in a position name");
      i.exponents.push_back(static_cast<std::uint64_t>(c));
    }
    i.offset = BigNat::from_mpz(q.offset);
    return i;
  }

  // Number of transitions of v_t at or below q.
  std::size_t rank(std::size_t t, const Pos& q) {
    const auto& tb = table(t);
    auto it = std::partition_point(tb.begin(), tb.end(), [&](const Pos& x) { return compare_pos(x, q) <= 0; });
    return static_cast<std::size_t>(it - tb.begin());
  }
};

LazyEvaluator::LazyEvaluator(const Slp& p, std::vector<BigNat> inputs, LazyMode mode)
    : impl_(std::make_unique<Impl>(p, std::move(inputs), mode)) {}
LazyEvaluator::~LazyEvaluator() = default;
LazyEvaluator::LazyEvaluator(LazyEvaluator&&) noexcept = default;
LazyEvaluator& LazyEvaluator::operator=(LazyEvaluator&&) noexcept = default;

const Slp& LazyEvaluator::program() const { return impl_->p; }
LazyMode LazyEvaluator::mode() const { return impl_->mode; }
const std::vector<FormalVar>& LazyEvaluator::vars() const { return impl_->vars; }

std::vector<PobitIndex> LazyEvaluator::indices(std::size_t t) {
  std::vector<PobitIndex> out;
  for (const auto& q : impl_->table(t)) out.push_back(impl_->to_index(q));
  return out;
}

std::strong_ordering LazyEvaluator::compare(const PobitIndex& a, const PobitIndex& b) {
  int c = impl_->compare_pos(impl_->to_pos(a), impl_->to_pos(b));
  return c < 0 ? std::strong_ordering::less : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

bool LazyEvaluator::bit(std::size_t t, const PobitIndex& i) {
  const Pos q = impl_->to_pos(i);
  if (impl_->sign(q) < 0) return false;
  return impl_->rank(t, q) % 2 == 1;
}

std::optional<PobitIndex> LazyEvaluator::next(std::size_t t, const std::optional<PobitIndex>& after) {
  const auto& tb = impl_->table(t);
  std::size_t k = after ? impl_->rank(t, impl_->to_pos(*after)) : 0;
  if (k >= tb.size()) return std::nullopt;
  return impl_->to_index(tb[k]);
}

bool LazyEvaluator::nonzero(std::size_t t) { return !impl_->table(t).empty(); }

PobitIndex LazyEvaluator::offset_index(std::uint64_t offset) const {
  return PobitIndex{std::vector<std::uint64_t>(impl_->vars.size(), 0), BigNat{offset}};
}

SpaceReport LazyEvaluator::space() const { return impl_->report; }
void LazyEvaluator::set_transition_cap(std::size_t cap) { impl_->transition_cap = cap; }

std::vector<PobitIndex> enumerate_indices(const Slp& p, std::span<const BigNat> inputs) {
  LazyEvaluator ev(p, {inputs.begin(), inputs.end()});
  return ev.indices(p.length());
}

mpz_class position_oracle(const Slp& p, const std::vector<FormalVar>& vars, const PobitIndex& i,
                          std::span<const BigNat> inputs, std::optional<std::uint64_t> omega,
                          std::uint64_t budget_bits) {
  std::vector<BigNat> all;
  const bool aln = std::any_of(vars.begin(), vars.end(), [](const FormalVar& v) { return v.is_aln(); });
  if (aln) {
    if (!omega) fail(ErrorKind::ArityMismatch, "ALN position needs omega");
    all.push_back(BigNat::pow2(*omega));
  }
  all.insert(all.end(), inputs.begin(), inputs.end());
  const auto vals = eval_slp_direct(p, all, budget_bits);
  mpz_class pos = i.offset.mpz();
  for (std::size_t v = 0; v < i.exponents.size() && v < vars.size(); ++v) {
    mpz_class e = static_cast<unsigned long>(i.exponents[v]);
    if (vars[v].is_aln())
      pos += e * static_cast<unsigned long>(*omega);
    else
      pos += e * vars[v].direction * vals[*vars[v].operand_step].mpz();
  }
  return pos;
}

std::strong_ordering compare_indices(const Slp& p, const PobitIndex& a, const PobitIndex& b,
                                     std::span<const BigNat> inputs) {
  LazyEvaluator ev(p, {inputs.begin(), inputs.end()});
  return ev.compare(a, b);
}

std::optional<PobitIndex> next_index(const Slp& p, const std::optional<PobitIndex>& i,
                                     std::span<const BigNat> inputs) {
  LazyEvaluator ev(p, {inputs.begin(), inputs.end()});
  return ev.next(p.length(), i);
}

bool eval_bit(const Slp& p, std::size_t t, const PobitIndex& i, std::span<const BigNat> inputs) {
  LazyEvaluator ev(p, {inputs.begin(), inputs.end()});
  return ev.bit(t, i);
}

bool nonzero_lazy(const Slp& p, LazyMode mode, std::span<const BigNat> inputs) {
  LazyEvaluator ev(p, {inputs.begin(), inputs.end()}, mode);
  return ev.nonzero();
}

std::vector<int> balanced_digits(const BigNat& a) {
  std::vector<int> out;
  bool prev = false;
  for (std::uint64_t i = 0; i <= a.bit_length(); ++i) {
    bool cur = a.bit(i);
    out.push_back(static_cast<int>(prev) - static_cast<int>(cur));
    prev = cur;
  }
  return out;
}

}  // namespace alnram
