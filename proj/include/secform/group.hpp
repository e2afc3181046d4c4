#pragma once

/**
 * @file group.hpp
 * @brief 2-local finite-type abelian groups and their Z2 / Z4 duals.
 *
 * H = Z^t + Z_{2^{e_1}} + ... + Z_{2^{e_r}} with e_1 >= ... >= e_r >= 1; odd
 * torsion is dropped on input. Dual coordinates are indexed by the t + r
 * summands in that order (free first, then torsion by descending exponent).
 *
 * A Z4-dual coordinate of a Z2 summand is stored as c in {0, 1}, standing for
 * the homomorphism 1 -> 2c (Hom(Z2, Z4) = Z2). Internally such a coordinate
 * has "value" 2c in Z4, which makes mod-2 reduction a plain coordinatewise
 * v mod 2.
 */

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "secform/error.hpp"

namespace secform {

using Matrix = std::vector<std::vector<int>>;

inline constexpr std::uint64_t kDefaultCap = std::uint64_t{1} << 14;

class AbelianGroup {
 public:
  AbelianGroup() = default;

  AbelianGroup(int free_rank, std::vector<int> two_exponents, bool odd_part_dropped = false)
      : free_rank_(free_rank), exps_(std::move(two_exponents)), odd_dropped_(odd_part_dropped) {
    if (free_rank_ < 0) throw InvalidInput("free rank must be nonnegative");
    for (int e : exps_)
      if (e < 1) throw InvalidInput("2-power exponents must be at least 1");
    std::sort(exps_.begin(), exps_.end(), std::greater<>());
  }

  static AbelianGroup trivial() { return {}; }

  int free_rank() const noexcept { return free_rank_; }
  const std::vector<int>& two_exponents() const noexcept { return exps_; }
  bool odd_part_dropped() const noexcept { return odd_dropped_; }

  /// Number of torsion summands with exponent >= 2.
  int k() const noexcept {
    return static_cast<int>(std::count_if(exps_.begin(), exps_.end(), [](int e) { return e >= 2; }));
  }
  /// Number of Z2 summands.
  int s() const noexcept {
    return static_cast<int>(std::count(exps_.begin(), exps_.end(), 1));
  }
  int torsion_count() const noexcept { return static_cast<int>(exps_.size()); }
  int i_max() const noexcept { return exps_.empty() ? 0 : exps_.front(); }
  int dual_rank() const noexcept { return free_rank_ + torsion_count(); }
  bool is_trivial() const noexcept { return free_rank_ == 0 && exps_.empty(); }

  /// Summand exponent of dual coordinate i; 0 marks a free summand.
  int exponent(int i) const { return i < free_rank_ ? 0 : exps_.at(static_cast<std::size_t>(i - free_rank_)); }
  bool is_free(int i) const noexcept { return i < free_rank_; }
  /// Order of the i-th coordinate of Hom(H, Z4): 4 for Z and Z_{2^e}, e >= 2; 2 for Z2.
  int dual_order(int i) const { return exponent(i) == 1 ? 2 : 4; }

  /// Isomorphism of the 2-localizations.
  bool isomorphic(const AbelianGroup& o) const noexcept {
    return free_rank_ == o.free_rank_ && exps_ == o.exps_;
  }

  bool operator==(const AbelianGroup&) const = default;

 private:
  int free_rank_ = 0;
  std::vector<int> exps_;
  bool odd_dropped_ = false;
};

inline AbelianGroup direct_sum(const AbelianGroup& a, const AbelianGroup& b) {
  std::vector<int> e = a.two_exponents();
  e.insert(e.end(), b.two_exponents().begin(), b.two_exponents().end());
  return {a.free_rank() + b.free_rank(), std::move(e), a.odd_part_dropped() || b.odd_part_dropped()};
}

/// Z^t first, then 2-power summands by descending order; "0" for the trivial group.
inline std::string render(const AbelianGroup& g) {
  std::string out;
  auto add = [&](const std::string& base, int count) {
    if (!out.empty()) out += " + ";
    out += base;
    if (count != 1) out += "^" + std::to_string(count);
  };
  if (g.free_rank() > 0) add("Z", g.free_rank());
  const auto& e = g.two_exponents();
  for (std::size_t i = 0; i < e.size();) {
    std::size_t j = i;
    while (j < e.size() && e[j] == e[i]) ++j;
    add("Z" + std::to_string(std::uint64_t{1} << e[i]), static_cast<int>(j - i));
    i = j;
  }
  return out.empty() ? "0" : out;
}

/// Grammar: term ('+' term)*, term = "Z" ["^" count] | "Z" order ["^" count] | "0".
inline AbelianGroup parse_group(std::string_view text) {
  int free_rank = 0;
  std::vector<int> exps;
  bool odd = false;
  std::size_t pos = 0;

  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto read_number = [&](const char* what) -> std::uint64_t {
    const std::size_t start = pos;
    std::uint64_t v = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      v = v * 10 + static_cast<std::uint64_t>(text[pos] - '0');
      if (v > (std::uint64_t{1} << 62)) throw ParseError(std::string(what) + " too large", start);
      ++pos;
    }
    if (pos == start) throw ParseError(std::string("expected ") + what, start);
    return v;
  };

  bool expect_term = true;
  skip_ws();
  if (pos == text.size()) throw ParseError("empty group expression", 0);
  while (pos < text.size()) {
    skip_ws();
    if (!expect_term) {
      if (text[pos] != '+') throw ParseError("expected '+'", pos);
      ++pos;
      expect_term = true;
      continue;
    }
    if (text[pos] == '0') {
      ++pos;
    } else if (text[pos] == 'Z') {
      ++pos;
      std::uint64_t order = 0;  // 0 = infinite cyclic
      if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        const std::size_t at = pos;
        order = read_number("order");
        if (order == 0) throw ParseError("cyclic order must be positive", at);
      }
      std::uint64_t count = 1;
      if (pos < text.size() && text[pos] == '^') {
        ++pos;
        count = read_number("multiplicity");
      }
      if (count > 64) throw ParseError("multiplicity too large", pos);
      if (order == 0) {
        free_rank += static_cast<int>(count);
      } else {
        int e = 0;
        while (order % 2 == 0) {
          order /= 2;
          ++e;
        }
        if (order > 1 && count > 0) odd = true;
        if (e > 0) exps.insert(exps.end(), static_cast<std::size_t>(count), e);
      }
    } else {
      throw ParseError(std::string("unexpected character '") + text[pos] + "'", pos);
    }
    expect_term = false;
    skip_ws();
  }
  if (expect_term) throw ParseError("dangling '+'", pos);
  return {free_rank, std::move(exps), odd};
}

/// Rank of Hom(H, Z2) = t + k + s.
inline int hom_rank_z2(const AbelianGroup& g) { return g.dual_rank(); }

/// Hom(H, Z4) = Z4^(t+k) + Z2^s, returned as (t + k, s).
inline std::pair<int, int> hom_z4_structure(const AbelianGroup& g) {
  return {g.free_rank() + g.k(), g.s()};
}

/// |Hom(H, Z4)|, saturated at 2^63.
inline std::uint64_t hom_z4_size(const AbelianGroup& g) {
  const auto [a, b] = hom_z4_structure(g);
  const int bits = 2 * a + b;
  return bits >= 63 ? (std::uint64_t{1} << 63) : (std::uint64_t{1} << bits);
}

inline void require_cap(const AbelianGroup& g, std::uint64_t cap) {
  const std::uint64_t size = hom_z4_size(g);
  if (size > cap) throw SizeLimitError("|Hom(" + render(g) + ", Z4)| = " + std::to_string(size) + " exceeds the size cap", size);
}

enum class Coefficients { z2, z4 };

/// An element of Hom(H, Z2) or Hom(H, Z4) in dual coordinates.
struct DualElement {
  Coefficients ring = Coefficients::z4;
  std::vector<int> coords;

  bool operator==(const DualElement&) const = default;
};

inline void validate(const AbelianGroup& g, const DualElement& x) {
  if (static_cast<int>(x.coords.size()) != g.dual_rank())
    throw InvalidInput("dual element has " + std::to_string(x.coords.size()) + " coordinates, group needs " +
                       std::to_string(g.dual_rank()));
  for (int i = 0; i < g.dual_rank(); ++i) {
    const int order = x.ring == Coefficients::z2 ? 2 : g.dual_order(i);
    const int c = x.coords[static_cast<std::size_t>(i)];
    if (c < 0 || c >= order)
      throw InvalidInput("coordinate " + std::to_string(i) + " out of range [0, " + std::to_string(order) + ")");
  }
}

/// The coefficient map Z4 -> Z2 applied to homomorphisms. Z2-summand coordinates
/// go to zero because Z2 -> Z4 -> Z2 (1 -> 2 -> 0) is zero.
inline DualElement reduce_dual(const AbelianGroup& g, const DualElement& x) {
  if (x.ring != Coefficients::z4) throw InvalidInput("reduce_dual expects a Z4-valued dual element");
  validate(g, x);
  DualElement out{Coefficients::z2, std::vector<int>(x.coords.size(), 0)};
  for (int i = 0; i < g.dual_rank(); ++i)
    if (g.dual_order(i) == 4) out.coords[static_cast<std::size_t>(i)] = x.coords[static_cast<std::size_t>(i)] % 2;
  return out;
}

/// Enumerates Hom(H, Z4) by packed index: bits [0,a) low bits and [a,2a) high bits of
/// the order-4 coordinates, then one bit per Z2 coordinate. Addition is bitwise.
class DualSpace {
 public:
  explicit DualSpace(const AbelianGroup& g) : a_(hom_z4_structure(g).first), b_(hom_z4_structure(g).second) {
    if (2 * a_ + b_ > 40) throw SizeLimitError("dual space too large to index", hom_z4_size(g));
  }

  int order4_count() const noexcept { return a_; }
  int order2_count() const noexcept { return b_; }
  std::uint64_t size() const noexcept { return std::uint64_t{1} << (2 * a_ + b_); }
  int rank() const noexcept { return a_ + b_; }

  std::uint64_t index(const std::vector<int>& coords) const {
    std::uint64_t idx = 0;
    for (int i = 0; i < a_; ++i) {
      const auto v = static_cast<std::uint64_t>(coords[static_cast<std::size_t>(i)]);
      idx |= (v & 1) << i;
      idx |= ((v >> 1) & 1) << (a_ + i);
    }
    for (int i = 0; i < b_; ++i)
      idx |= (static_cast<std::uint64_t>(coords[static_cast<std::size_t>(a_ + i)]) & 1) << (2 * a_ + i);
    return idx;
  }

  std::vector<int> coords(std::uint64_t idx) const {
    std::vector<int> c(static_cast<std::size_t>(a_ + b_));
    for (int i = 0; i < a_; ++i)
      c[static_cast<std::size_t>(i)] = static_cast<int>(((idx >> i) & 1) | (((idx >> (a_ + i)) & 1) << 1));
    for (int i = 0; i < b_; ++i) c[static_cast<std::size_t>(a_ + i)] = static_cast<int>((idx >> (2 * a_ + i)) & 1);
    return c;
  }

  std::uint64_t add(std::uint64_t x, std::uint64_t y) const noexcept {
    const std::uint64_t lx = x & low_mask(), ly = y & low_mask();
    const std::uint64_t hx = (x >> a_) & low_mask(), hy = (y >> a_) & low_mask();
    const std::uint64_t tx = x >> (2 * a_), ty = y >> (2 * a_);
    const std::uint64_t low = lx ^ ly;
    const std::uint64_t high = hx ^ hy ^ (lx & ly);
    return low | (high << a_) | ((tx ^ ty) << (2 * a_));
  }

  std::uint64_t negate(std::uint64_t x) const noexcept {
    // -v mod 4 keeps the low bit and flips the high bit where the low bit is set.
    const std::uint64_t l = x & low_mask();
    return x ^ (l << a_);
  }

  /// Mod-2 reduction as a mask over all a + b dual coordinates (Z2 coordinates vanish).
  std::uint64_t reduction(std::uint64_t x) const noexcept { return x & low_mask(); }

 private:
  std::uint64_t low_mask() const noexcept { return (std::uint64_t{1} << a_) - 1; }

  int a_;
  int b_;
};

/// Image of an automorphism of H in the data the duals can see.
///
/// matrix[i][j] is the component along summand i of the image of generator j,
/// reduced mod dual_order(i). socle[i][j] (torsion indices) is the action on the
/// socle H[2]: the component of tau(2^{e_j-1} g_j) along 2^{e_i-1} g_i.
struct Automorphism {
  Matrix matrix;
  Matrix socle;

  bool operator==(const Automorphism&) const = default;
  auto operator<=>(const Automorphism&) const = default;
};

/// Induced substitutions on dual coordinates: x -> x o tau.
struct DualAction {
  Matrix on_z2;
  Matrix on_z4;

  bool operator==(const DualAction&) const = default;
  auto operator<=>(const DualAction&) const = default;
};

namespace detail {

struct EntryOption {
  int value;
  int socle;
};

/// Allowed values of matrix[i][j] (with the socle entry they force or leave free).
inline std::vector<EntryOption> entry_options(const AbelianGroup& g, int i, int j, bool with_socle) {
  const int t = g.free_rank();
  const int oi = g.dual_order(i);
  std::vector<EntryOption> out;
  auto all = [&](int socle_of_value) {
    for (int v = 0; v < oi; ++v) out.push_back({v, socle_of_value ? v % 2 : 0});
  };
  if (i < t) {
    if (j < t)
      all(false);
    else
      out.push_back({0, 0});  // torsion maps to zero in a free summand
    return out;
  }
  if (j < t) {
    all(false);
    return out;
  }
  const int d = g.exponent(i) - g.exponent(j);
  if (d < 0) {
    all(false);
  } else if (d == 0) {
    all(true);
  } else if (d == 1) {
    out.push_back({0, 0});
    out.push_back({2, 1});
  } else {
    out.push_back({0, 0});
    if (with_socle) out.push_back({0, 1});
  }
  return out;
}

struct RowChoice {
  std::vector<int> values;
  std::vector<int> socle;  // empty for free rows
};

inline std::vector<RowChoice> row_choices(const AbelianGroup& g, int i, bool with_socle) {
  const int n = g.dual_rank();
  const int t = g.free_rank();
  std::vector<std::vector<EntryOption>> opts;
  for (int j = 0; j < n; ++j) opts.push_back(entry_options(g, i, j, with_socle));
  std::vector<RowChoice> out;
  RowChoice cur;
  cur.values.assign(static_cast<std::size_t>(n), 0);
  if (i >= t) cur.socle.assign(static_cast<std::size_t>(g.torsion_count()), 0);
  std::function<void(int)> rec = [&](int j) {
    if (j == n) {
      out.push_back(cur);
      return;
    }
    for (const auto& o : opts[static_cast<std::size_t>(j)]) {
      cur.values[static_cast<std::size_t>(j)] = o.value;
      if (i >= t && j >= t) cur.socle[static_cast<std::size_t>(j - t)] = o.socle;
      rec(j + 1);
    }
  };
  rec(0);
  return out;
}

inline std::uint64_t row_mask(const std::vector<int>& values) {
  std::uint64_t m = 0;
  for (std::size_t j = 0; j < values.size(); ++j)
    if (values[j] & 1) m |= std::uint64_t{1} << j;
  return m;
}

/// Incremental F2 row echelon used to keep chosen rows linearly independent.
class Echelon {
 public:
  /// Reduces m against the basis; returns the residue (0 if dependent).
  std::uint64_t reduce(std::uint64_t m) const noexcept {
    for (std::uint64_t b : basis_)
      if (m & lowest(b)) m ^= b;
    return m;
  }
  void push(std::uint64_t reduced) { basis_.push_back(reduced); }
  void pop() { basis_.pop_back(); }

 private:
  static std::uint64_t lowest(std::uint64_t b) noexcept { return b & (~b + 1); }
  std::vector<std::uint64_t> basis_;
};

}  // namespace detail

/// Row-by-row depth-first search over the automorphism data of H. The callback
/// receives each partial row prefix through accept_row (return false to prune)
/// and each complete automorphism through on_complete (return false to stop).
template <class AcceptRow, class OnComplete>
void search_automorphisms(const AbelianGroup& g, bool with_socle, AcceptRow&& accept_row, OnComplete&& on_complete) {
  const int n = g.dual_rank();
  if (n > 62) throw SizeLimitError("too many summands", static_cast<std::uint64_t>(n));
  std::vector<std::vector<detail::RowChoice>> choices;
  for (int i = 0; i < n; ++i) choices.push_back(detail::row_choices(g, i, with_socle));

  Automorphism current;
  current.matrix.assign(static_cast<std::size_t>(n), {});
  current.socle.assign(static_cast<std::size_t>(g.torsion_count()), {});
  detail::Echelon echelon;
  bool stop = false;

  std::function<void(int)> rec = [&](int i) {
    if (stop) return;
    if (i == n) {
      if (!on_complete(static_cast<const Automorphism&>(current))) stop = true;
      return;
    }
    for (const auto& rc : choices[static_cast<std::size_t>(i)]) {
      const std::uint64_t residue = echelon.reduce(detail::row_mask(rc.values));
      if (residue == 0) continue;
      current.matrix[static_cast<std::size_t>(i)] = rc.values;
      if (i >= g.free_rank()) current.socle[static_cast<std::size_t>(i - g.free_rank())] = rc.socle;
      if (!accept_row(static_cast<const Automorphism&>(current), i)) continue;
      echelon.push(residue);
      rec(i + 1);
      echelon.pop();
      if (stop) return;
    }
  };
  rec(0);
}

inline constexpr std::uint64_t kDefaultAutomorphismLimit = std::uint64_t{1} << 20;

/// Every automorphism datum (dual matrix plus socle action) of H.
inline std::vector<Automorphism> automorphisms(const AbelianGroup& g, std::uint64_t cap = kDefaultCap,
                                               std::uint64_t max_count = kDefaultAutomorphismLimit,
                                               bool with_socle = true) {
  require_cap(g, cap);
  std::vector<Automorphism> out;
  search_automorphisms(
      g, with_socle, [](const Automorphism&, int) { return true; },
      [&](const Automorphism& a) {
        out.push_back(a);
        if (out.size() > max_count)
          throw SizeLimitError("automorphism group of " + render(g) + " is too large to list", max_count + 1);
        return true;
      });
  return out;
}

/// The substitution matrices by which tau acts on Z2- and Z4-dual coordinates.
inline DualAction dual_action(const AbelianGroup& g, const Automorphism& a) {
  const int n = g.dual_rank();
  DualAction act;
  act.on_z2.assign(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 0));
  act.on_z4 = act.on_z2;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const int m = a.matrix[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      act.on_z2[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = m % 2;
      int entry = 0;
      if (g.dual_order(j) == 4)
        entry = (g.dual_order(i) == 2 ? 2 * m : m) % 4;
      else
        entry = (g.dual_order(i) == 4 ? m / 2 : m) % 2;
      act.on_z4[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = entry;
    }
  return act;
}

/// Applies a dual substitution to a Z2- or Z4-valued dual element.
inline DualElement apply(const AbelianGroup& g, const DualAction& act, const DualElement& x) {
  validate(g, x);
  const Matrix& m = x.ring == Coefficients::z2 ? act.on_z2 : act.on_z4;
  DualElement out{x.ring, std::vector<int>(x.coords.size(), 0)};
  for (int j = 0; j < g.dual_rank(); ++j) {
    const int order = x.ring == Coefficients::z2 ? 2 : g.dual_order(j);
    int acc = 0;
    for (int i = 0; i < g.dual_rank(); ++i)
      acc += m[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] * x.coords[static_cast<std::size_t>(i)];
    out.coords[static_cast<std::size_t>(j)] = acc % order;
  }
  return out;
}

/// The distinct dual actions of Aut(H), in search order.
inline std::vector<DualAction> automorphism_actions(const AbelianGroup& g, std::uint64_t cap = kDefaultCap,
                                                    std::uint64_t max_count = kDefaultAutomorphismLimit) {
  std::vector<DualAction> out;
  for (const auto& a : automorphisms(g, cap, max_count, false)) out.push_back(dual_action(g, a));
  return out;
}

/// Composite automorphism data: (x o a) o b = x o (a b).
inline Automorphism compose(const AbelianGroup& g, const Automorphism& a, const Automorphism& b) {
  const int n = g.dual_rank();
  const int r = g.torsion_count();
  Automorphism c;
  c.matrix.assign(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int acc = 0;
      for (int l = 0; l < n; ++l)
        acc += a.matrix[static_cast<std::size_t>(i)][static_cast<std::size_t>(l)] *
               b.matrix[static_cast<std::size_t>(l)][static_cast<std::size_t>(j)];
      c.matrix[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = acc % g.dual_order(i);
    }
  c.socle.assign(static_cast<std::size_t>(r), std::vector<int>(static_cast<std::size_t>(r), 0));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      int acc = 0;
      for (int l = 0; l < r; ++l)
        acc += a.socle[static_cast<std::size_t>(i)][static_cast<std::size_t>(l)] *
               b.socle[static_cast<std::size_t>(l)][static_cast<std::size_t>(j)];
      c.socle[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = acc % 2;
    }
  return c;
}

inline Automorphism identity_automorphism(const AbelianGroup& g) {
  const int n = g.dual_rank();
  const int r = g.torsion_count();
  Automorphism id;
  id.matrix.assign(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 0));
  id.socle.assign(static_cast<std::size_t>(r), std::vector<int>(static_cast<std::size_t>(r), 0));
  for (int i = 0; i < n; ++i) id.matrix[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
  for (int i = 0; i < r; ++i) id.socle[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
  return id;
}

}  // namespace secform
