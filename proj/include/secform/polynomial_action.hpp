#pragma once

/**
 * @file polynomial_action.hpp
 * @brief Action of Steenrod elements on the product x1 x2 ... xm in F2[x1..xm].
 *
 * Each x_j has degree one, so Sq^k(x^a) = C(a, k) x^{a+k} and the Cartan
 * formula extends this to monomials. Nothing here uses the Adem relations,
 * which makes the action an independent check on the rewriting engine.
 *
 * Starting from x1...xm every polynomial that can arise is symmetric, so it is
 * stored as a set of exponent multisets ("shapes"), each standing for its
 * monomial symmetric function m_shape. Applying Sq^k to m_lambda only needs
 * counts: for a target arrangement mu the coefficient is the number of ways to
 * choose, inside each block of equal mu-exponent, which positions came from
 * which lambda-exponent, i.e. a product of multinomials, taken mod 2.
 */

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "secform/error.hpp"
#include "secform/steenrod.hpp"

namespace secform::steenrod {

class SymmetricPolynomial {
 public:
  /// (exponent, multiplicity) pairs sorted by exponent; multiplicities sum to the variable count.
  using Shape = std::vector<std::pair<int, int>>;

  explicit SymmetricPolynomial(int variables) : variables_(variables) {
    if (variables <= 0) throw InvalidInput("variable count must be positive");
  }

  /// The product x1 x2 ... xm.
  static SymmetricPolynomial product_of_generators(int m) {
    SymmetricPolynomial p(m);
    p.terms_.insert(Shape{{1, m}});
    return p;
  }

  int variables() const noexcept { return variables_; }
  const std::set<Shape>& shapes() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  void toggle(const Shape& s) {
    if (auto it = terms_.find(s); it != terms_.end())
      terms_.erase(it);
    else
      terms_.insert(s);
  }

  SymmetricPolynomial& operator+=(const SymmetricPolynomial& o) {
    if (o.variables_ != variables_) throw InvalidInput("variable counts differ");
    for (const auto& s : o.terms_) toggle(s);
    return *this;
  }

  bool operator==(const SymmetricPolynomial&) const = default;

  /// Number of ordinary monomials once every orbit is expanded.
  std::uint64_t expanded_size() const {
    std::uint64_t total = 0;
    for (const auto& s : terms_) {
      // m! / prod(c!) computed incrementally as a product of binomials.
      std::uint64_t count = 1;
      int placed = 0;
      for (const auto& [exp, mult] : s) {
        for (int i = 1; i <= mult; ++i) {
          count = count * static_cast<std::uint64_t>(placed + i) / static_cast<std::uint64_t>(i);
          if (count > (std::uint64_t{1} << 40)) return std::uint64_t{1} << 40;
        }
        placed += mult;
      }
      total += count;
    }
    return total;
  }

  /// Explicit monomials as exponent vectors (x1..xm), in lexicographically descending order.
  std::vector<std::vector<int>> expand() const {
    std::set<std::vector<int>> out;
    for (const auto& s : terms_) {
      std::vector<int> v;
      for (const auto& [exp, mult] : s) v.insert(v.end(), static_cast<std::size_t>(mult), exp);
      std::sort(v.begin(), v.end());
      do out.insert(v);
      while (std::next_permutation(v.begin(), v.end()));
    }
    return {out.rbegin(), out.rend()};
  }

 private:
  int variables_;
  std::set<Shape> terms_;
};

namespace detail {

struct SquareApplier {
  const SymmetricPolynomial::Shape& source;
  SymmetricPolynomial& result;
  // Per target exponent: running sum of contributions and their bitwise OR.
  // The multinomial of the contributions is odd iff they never share a bit.
  std::map<int, std::pair<int, int>> blocks;

  void run(std::size_t idx, int remaining) {
    if (idx == source.size()) {
      if (remaining != 0) return;
      SymmetricPolynomial::Shape shape;
      for (const auto& [v, acc] : blocks)
        if (acc.first > 0) shape.emplace_back(v, acc.first);
      result.toggle(shape);
      return;
    }
    const auto [u, count] = source[idx];
    // Sq^g(x^u) is nonzero mod 2 exactly when g is a bit-submask of u.
    std::vector<int> increments;
    for (int g = u;; g = (g - 1) & u) {
      increments.push_back(g);
      if (g == 0) break;
    }
    distribute(idx, remaining, increments, 0, count);
  }

  void distribute(std::size_t idx, int remaining, const std::vector<int>& incs, std::size_t which, int left) {
    if (which + 1 == incs.size()) {
      place(idx, remaining, incs[which], left, [&](int rem) { run(idx + 1, rem); });
      return;
    }
    for (int take = 0; take <= left; ++take) {
      if (static_cast<long long>(take) * incs[which] > remaining) break;
      place(idx, remaining, incs[which], take,
            [&](int rem) { distribute(idx, rem, incs, which + 1, left - take); });
    }
  }

  template <class Next>
  void place(std::size_t idx, int remaining, int inc, int take, Next&& next) {
    if (take == 0) {
      next(remaining);
      return;
    }
    const long long cost = static_cast<long long>(take) * inc;
    if (cost > remaining) return;
    auto& acc = blocks[source[idx].first + inc];
    if (acc.second & take) return;  // even multinomial
    const auto saved = acc;
    acc.first += take;
    acc.second |= take;
    next(remaining - static_cast<int>(cost));
    blocks[source[idx].first + inc] = saved;
  }
};

}  // namespace detail

/// Sq^k applied to a symmetric polynomial via the Cartan formula.
inline SymmetricPolynomial apply_square(int k, const SymmetricPolynomial& p) {
  if (k < 0) throw InvalidInput("negative Steenrod square");
  if (k == 0) return p;
  SymmetricPolynomial out(p.variables());
  for (const auto& shape : p.shapes()) {
    detail::SquareApplier applier{shape, out, {}};
    applier.run(0, k);
  }
  return out;
}

inline SymmetricPolynomial apply(const Monomial& m, SymmetricPolynomial p) {
  const auto& ex = m.exponents();
  for (auto it = ex.rbegin(); it != ex.rend(); ++it) p = apply_square(*it, p);
  return p;
}

/// The action of a formal sum of (not necessarily admissible) words on x1...xm.
inline SymmetricPolynomial polynomial_action(const RawSum& words, int m) {
  if (m <= 0) throw InvalidInput("variable count must be positive");
  const auto base = SymmetricPolynomial::product_of_generators(m);
  SymmetricPolynomial out(m);
  for (const auto& w : words) out += apply(w, base);
  return out;
}

inline SymmetricPolynomial polynomial_action(const Element& e, int m) {
  return polynomial_action(RawSum(e.terms().begin(), e.terms().end()), m);
}

/// "x1^2 x2 + x1 x2^2" when the expansion has at most max_terms monomials,
/// otherwise the orbit form "m[2,1] + ...".
inline std::string to_string(const SymmetricPolynomial& p, std::uint64_t max_terms = 4096) {
  if (p.is_zero()) return "0";
  std::string s;
  if (p.expanded_size() <= max_terms) {
    for (const auto& v : p.expand()) {
      if (!s.empty()) s += " + ";
      std::string mono;
      for (std::size_t j = 0; j < v.size(); ++j) {
        if (v[j] == 0) continue;
        if (!mono.empty()) mono += ' ';
        mono += "x" + std::to_string(j + 1);
        if (v[j] != 1) mono += "^" + std::to_string(v[j]);
      }
      s += mono.empty() ? "1" : mono;
    }
    return s;
  }
  for (auto it = p.shapes().rbegin(); it != p.shapes().rend(); ++it) {
    if (!s.empty()) s += " + ";
    std::string parts;
    for (auto e = it->rbegin(); e != it->rend(); ++e)
      for (int i = 0; i < e->second; ++i) {
        if (!parts.empty()) parts += ',';
        parts += std::to_string(e->first);
      }
    s += "m[" + parts + "]";
  }
  return s;
}

}  // namespace secform::steenrod
