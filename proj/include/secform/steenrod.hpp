#pragma once

/**
 * @file steenrod.hpp
 * @brief Exact arithmetic in the mod-2 Steenrod algebra.
 *
 * Elements are sums of admissible monomials Sq^{i1}...Sq^{ir} (i_j >= 2 i_{j+1})
 * with implicit F2 coefficients. Arbitrary words are brought to this basis by
 * Adem rewriting; products, the antipode chi and the relation families used to
 * define Phi- and Psi-type secondary operations are built on top of that.
 */

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "secform/error.hpp"

namespace secform::steenrod {

/// C(n, k) mod 2 via Lucas: odd iff the bits of k are a subset of the bits of n.
constexpr bool binomial_odd(int n, int k) noexcept {
  return k >= 0 && n >= 0 && k <= n && (k & ~n) == 0;
}

/// A word Sq^{i1} Sq^{i2} ... Sq^{ir}; the empty word is the unit.
class Monomial {
 public:
  Monomial() = default;

  explicit Monomial(std::vector<int> exponents) : exps_(std::move(exponents)) {
    for (int e : exps_)
      if (e <= 0) throw InvalidInput("Steenrod square exponent must be positive, got " + std::to_string(e));
  }

  const std::vector<int>& exponents() const noexcept { return exps_; }
  std::size_t length() const noexcept { return exps_.size(); }
  bool is_unit() const noexcept { return exps_.empty(); }

  int degree() const noexcept { return std::accumulate(exps_.begin(), exps_.end(), 0); }

  bool admissible() const noexcept {
    for (std::size_t j = 0; j + 1 < exps_.size(); ++j)
      if (exps_[j] < 2 * exps_[j + 1]) return false;
    return true;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial out;
    out.exps_.reserve(a.exps_.size() + b.exps_.size());
    out.exps_.insert(out.exps_.end(), a.exps_.begin(), a.exps_.end());
    out.exps_.insert(out.exps_.end(), b.exps_.begin(), b.exps_.end());
    return out;
  }

  auto operator<=>(const Monomial&) const = default;

 private:
  std::vector<int> exps_;
};

/// A homogeneous F2-combination of admissible monomials. Zero is the empty sum.
class Element {
 public:
  Element() = default;

  static Element unit() { return Element(Monomial{}); }

  /// Sq^i; Sq^0 is the unit.
  static Element sq(int i) {
    if (i < 0) throw InvalidInput("negative Steenrod square");
    return i == 0 ? unit() : Element(Monomial({i}));
  }

  /// Wraps an admissible monomial.
  explicit Element(const Monomial& m) {
    if (!m.admissible()) throw InvalidInput("monomial is not admissible; use adem_normalize");
    terms_.insert(m);
  }

  bool is_zero() const noexcept { return terms_.empty(); }

  std::optional<int> degree() const noexcept {
    if (terms_.empty()) return std::nullopt;
    return terms_.begin()->degree();
  }

  const std::set<Monomial>& terms() const noexcept { return terms_; }

  Element& operator+=(const Element& other) {
    check_compatible(other);
    for (const auto& m : other.terms_) toggle(m);
    return *this;
  }

  friend Element operator+(Element a, const Element& b) { return a += b; }

  bool operator==(const Element&) const = default;

  /// Adds one admissible monomial (F2: adding twice cancels).
  void toggle(const Monomial& m) {
    if (!m.admissible()) throw InvalidInput("monomial is not admissible");
    if (!terms_.empty() && terms_.begin()->degree() != m.degree())
      throw InvalidInput("mixed-degree sums are not allowed");
    if (auto it = terms_.find(m); it != terms_.end())
      terms_.erase(it);
    else
      terms_.insert(m);
  }

 private:
  void check_compatible(const Element& other) const {
    if (!terms_.empty() && !other.terms_.empty() && *degree() != *other.degree())
      throw InvalidInput("mixed-degree sums are not allowed");
  }

  std::set<Monomial> terms_;
};

/// A formal sum of raw (possibly inadmissible) words, as read from text.
using RawSum = std::vector<Monomial>;

namespace detail {

/// Adem expansion of Sq^a Sq^b for a < 2b:
///   sum_{c=0}^{a/2} C(b-c-1, a-2c) Sq^{a+b-c} Sq^c.
/// Memoized per thread.
inline const std::vector<std::vector<int>>& adem_pair(int a, int b) {
  thread_local std::map<std::pair<int, int>, std::vector<std::vector<int>>> cache;
  auto [it, inserted] = cache.try_emplace({a, b});
  if (inserted) {
    for (int c = 0; 2 * c <= a; ++c) {
      if (!binomial_odd(b - c - 1, a - 2 * c)) continue;
      if (c == 0)
        it->second.push_back({a + b});
      else
        it->second.push_back({a + b - c, c});
    }
  }
  return it->second;
}

inline std::uint64_t rewrite_budget(int degree, std::size_t words) {
  // words * 4^degree, saturated.
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  if (degree >= 31) return kMax;
  const std::uint64_t per_word = std::uint64_t{1} << (2 * std::max(degree, 1));
  return words > kMax / per_word ? kMax : per_word * words;
}

inline void toggle_word(std::map<std::vector<int>, char>& pending, std::vector<int>&& w) {
  auto [it, inserted] = pending.try_emplace(std::move(w), 1);
  if (!inserted) pending.erase(it);
}

}  // namespace detail

/// Normal form of a formal sum of words: repeatedly rewrite the leftmost
/// inadmissible pair with the Adem relation until every word is admissible.
inline Element adem_normalize(const RawSum& sum) {
  std::optional<int> degree;
  std::map<std::vector<int>, char> pending;
  for (const auto& m : sum) {
    if (degree && *degree != m.degree()) throw InvalidInput("mixed-degree sums are not allowed");
    degree = m.degree();
    detail::toggle_word(pending, std::vector<int>(m.exponents()));
  }
  Element result;
  if (!degree) return result;

  const std::uint64_t budget = detail::rewrite_budget(*degree, sum.size());
  std::uint64_t steps = 0;
  while (!pending.empty()) {
    auto node = pending.extract(pending.begin());
    const std::vector<int>& w = node.key();
    std::size_t j = 0;
    while (j + 1 < w.size() && w[j] >= 2 * w[j + 1]) ++j;
    if (j + 1 >= w.size()) {
      result.toggle(Monomial(w));
      continue;
    }
    if (++steps > budget) throw InternalError("Adem rewriting exceeded its iteration budget");
    for (const auto& repl : detail::adem_pair(w[j], w[j + 1])) {
      std::vector<int> next;
      next.reserve(w.size());
      next.insert(next.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(j));
      next.insert(next.end(), repl.begin(), repl.end());
      next.insert(next.end(), w.begin() + static_cast<std::ptrdiff_t>(j) + 2, w.end());
      detail::toggle_word(pending, std::move(next));
    }
  }
  return result;
}

inline Element adem_normalize(const Monomial& m) { return adem_normalize(RawSum{m}); }

inline Element multiply(const Element& a, const Element& b) {
  RawSum words;
  words.reserve(a.terms().size() * b.terms().size());
  for (const auto& x : a.terms())
    for (const auto& y : b.terms()) words.push_back(x * y);
  return adem_normalize(words);
}

inline Element operator*(const Element& a, const Element& b) { return multiply(a, b); }

/// chi(Sq^n) from the antipode recursion sum_{i+j=n} Sq^i chi(Sq^j) = 0.
inline const Element& chi_sq(int n) {
  if (n < 0) throw InvalidInput("negative Steenrod square");
  thread_local std::vector<Element> cache{Element::unit()};
  while (static_cast<int>(cache.size()) <= n) {
    const int m = static_cast<int>(cache.size());
    RawSum words;
    for (int i = 1; i <= m; ++i)
      for (const auto& t : cache[static_cast<std::size_t>(m - i)].terms())
        words.push_back(Monomial({i}) * t);
    cache.push_back(adem_normalize(words));
  }
  return cache[static_cast<std::size_t>(n)];
}

/// The antipode, extended as an anti-homomorphism.
inline Element chi(const Element& e) {
  Element out;
  for (const auto& m : e.terms()) {
    Element prod = Element::unit();
    const auto& ex = m.exponents();
    for (auto it = ex.rbegin(); it != ex.rend(); ++it) prod = prod * chi_sq(*it);
    out += prod;
  }
  return out;
}

/// Quotient by the right ideal A*Sq^1: drops admissible monomials ending in Sq^1.
inline Element reduce_mod_right_sq1(const Element& e) {
  Element out;
  for (const auto& m : e.terms())
    if (m.is_unit() || m.exponents().back() != 1) out.toggle(m);
  return out;
}

inline void check_relation_residue(int n) {
  if (n < 1) throw InvalidInput("relation index n must be at least 1");
  if (n % 4 == 3) throw NoRelation("no relation family is defined for n = 3 (mod 4)");
}

/// Left-hand side of the chi-relation family attached to n:
///   n = 2 (4): chi(Sq^n)Sq^3 + chi(Sq^{n+2})Sq^1 + Sq^1 chi(Sq^{n+2})
///   n = 0 (4): chi(Sq^n)Sq^3 + Sq^1 chi(Sq^{n+2})
///   n = 1 (4): chi(Sq^{n+1})Sq^2 + Sq^1 chi(Sq^{n+2})
/// Returned verbatim in normal form; zero when the relation holds in A_2.
inline Element phi_relation(int n) {
  check_relation_residue(n);
  const Element sq1 = Element::sq(1);
  const Element tail = sq1 * chi_sq(n + 2);
  switch (n % 4) {
    case 2:
      return chi_sq(n) * Element::sq(3) + chi_sq(n + 2) * sq1 + tail;
    case 0:
      return chi_sq(n) * Element::sq(3) + tail;
    default:
      return chi_sq(n + 1) * Element::sq(2) + tail;
  }
}

struct PsiRelation {
  Element raw;
  Element reduced;
};

/// Sq^2Sq^1Sq^n + Sq^1Sq^{n+2} (n = 2), Sq^2Sq^1Sq^n (n = 0), Sq^2Sq^{n+1} (n = 1, mod 4),
/// together with its image modulo A*Sq^1.
inline PsiRelation psi_relation(int n) {
  check_relation_residue(n);
  RawSum words;
  switch (n % 4) {
    case 2:
      words = {Monomial({2, 1, n}), Monomial({1, n + 2})};
      break;
    case 0:
      words = {Monomial({2, 1, n})};
      break;
    default:
      words = {Monomial({2, n + 1})};
      break;
  }
  PsiRelation r;
  r.raw = adem_normalize(words);
  r.reduced = reduce_mod_right_sq1(r.raw);
  return r;
}

// Text form: "Sq4 Sq2 Sq1", sums joined by '+', "0" and "1".

inline std::string to_string(const Monomial& m) {
  if (m.is_unit()) return "1";
  std::string s;
  for (int e : m.exponents()) {
    if (!s.empty()) s += ' ';
    s += "Sq" + std::to_string(e);
  }
  return s;
}

/// Terms are listed in descending lexicographic order of exponent sequences.
inline std::string to_string(const Element& e) {
  if (e.is_zero()) return "0";
  std::string s;
  for (auto it = e.terms().rbegin(); it != e.terms().rend(); ++it) {
    if (!s.empty()) s += " + ";
    s += to_string(*it);
  }
  return s;
}

inline RawSum parse_raw(std::string_view text) {
  RawSum out;
  std::vector<int> current;
  bool term_has_tokens = false;
  bool term_is_constant = false;
  bool zero_term = false;
  std::size_t pos = 0;

  auto finish_term = [&](std::size_t at) {
    if (!term_has_tokens) throw ParseError("empty term", at);
    if (!zero_term) out.emplace_back(current);
    current.clear();
    term_has_tokens = term_is_constant = zero_term = false;
  };

  while (pos < text.size()) {
    const char c = text[pos];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      ++pos;
      continue;
    }
    if (c == '+') {
      finish_term(pos);
      ++pos;
      continue;
    }
    std::size_t end = pos;
    while (end < text.size() && text[end] != '+' && text[end] != ' ' && text[end] != '\t' &&
           text[end] != '\n' && text[end] != '\r')
      ++end;
    const std::string_view tok = text.substr(pos, end - pos);
    if (tok == "0" || tok == "1") {
      if (term_has_tokens) throw ParseError("constant '" + std::string(tok) + "' inside a product", pos);
      term_is_constant = true;
      zero_term = tok == "0";
    } else {
      if (term_is_constant) throw ParseError("constant followed by a square", pos);
      if (tok.size() < 3 || tok.substr(0, 2) != "Sq")
        throw ParseError("expected token 'Sq<n>', got '" + std::string(tok) + "'", pos);
      int value = 0;
      for (std::size_t i = 2; i < tok.size(); ++i) {
        if (tok[i] < '0' || tok[i] > '9')
          throw ParseError("malformed exponent in '" + std::string(tok) + "'", pos + i);
        value = value * 10 + (tok[i] - '0');
        if (value > 1'000'000) throw ParseError("exponent too large", pos);
      }
      if (value <= 0) throw InvalidInput("Steenrod square exponent must be positive in '" + std::string(tok) + "'");
      current.push_back(value);
    }
    term_has_tokens = true;
    pos = end;
  }
  finish_term(pos);
  return out;
}

inline Element parse(std::string_view text) { return adem_normalize(parse_raw(text)); }

}  // namespace secform::steenrod
