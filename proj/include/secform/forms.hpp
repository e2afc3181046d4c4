#pragma once

/**
 * @file forms.hpp
 * @brief Q/Z-valued quadratic refinements of a Z2 pairing on Hom(H, Z2).
 *
 * A triple (H, mu, phi) consists of a symmetric F2 matrix mu on the dual
 * generators of Hom(H, Z2) and generator values of phi on Hom(H, Z4). phi is
 * extended by the quadratic law
 *
 *   phi(x + y) = phi(x) + phi(y) + B(x, y),  B(x, y) = mu(red x, red y) / 2,
 *
 * where red = reduce_dual. Generator values live in the quarters for order-4
 * coordinates and in the halves for Z2 coordinates, so every value of phi is a
 * quarter; internally values are integers mod 4.
 *
 * The optional omega is an F2 vector with one entry per torsion summand. Its
 * pairing with x in Hom(H, Z2) only sees the Z2-summand coordinates.
 */

#include <algorithm>
#include <bit>
#include <complex>
#include <functional>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "secform/error.hpp"
#include "secform/group.hpp"
#include "secform/qz.hpp"

namespace secform {

/// Symmetric F2 matrix on the dual generators of Hom(H, Z2).
class BilinearForm {
 public:
  BilinearForm() = default;

  BilinearForm(AbelianGroup group, Matrix entries) : group_(std::move(group)), m_(std::move(entries)) {
    const auto n = static_cast<std::size_t>(group_.dual_rank());
    if (n > 62) throw SizeLimitError("too many dual generators", n);
    rows_.assign(n, 0);
    if (m_.size() != n) throw InvalidInput("mu must be " + std::to_string(n) + "x" + std::to_string(n));
    for (std::size_t i = 0; i < n; ++i) {
      if (m_[i].size() != n) throw InvalidInput("mu must be " + std::to_string(n) + "x" + std::to_string(n));
      for (std::size_t j = 0; j < n; ++j) {
        if (m_[i][j] != 0 && m_[i][j] != 1) throw InvalidInput("mu entries must be 0 or 1");
        if (j < i && m_[i][j] != m_[j][i]) throw InvalidInput("mu must be symmetric");
        if (m_[i][j]) rows_[i] |= std::uint64_t{1} << j;
      }
    }
  }

  static BilinearForm zero(const AbelianGroup& g) {
    const auto n = static_cast<std::size_t>(g.dual_rank());
    return {g, Matrix(n, std::vector<int>(n, 0))};
  }

  const AbelianGroup& group() const noexcept { return group_; }
  const Matrix& matrix() const noexcept { return m_; }
  int operator()(int i, int j) const { return m_.at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(j)); }

  /// Row i as a bit mask over dual coordinates.
  std::uint64_t row_mask(int i) const { return rows_[static_cast<std::size_t>(i)]; }

  /// mu(x, y) for x, y given as bit masks of Hom(H, Z2).
  int evaluate(std::uint64_t x, std::uint64_t y) const {
    int acc = 0;
    for (std::size_t i = 0; i < m_.size(); ++i)
      if ((x >> i) & 1) acc ^= std::popcount(rows_[i] & y) & 1;
    return acc;
  }

  int evaluate(const DualElement& x, const DualElement& y) const {
    if (x.ring != Coefficients::z2 || y.ring != Coefficients::z2) throw InvalidInput("mu pairs Z2-valued dual elements");
    validate(group_, x);
    validate(group_, y);
    return evaluate(mask(x), mask(y));
  }

  /// F2 rank of the matrix.
  int rank() const {
    std::vector<std::uint64_t> rows = rows_;
    int r = 0;
    for (std::size_t col = 0; col < m_.size(); ++col) {
      const std::uint64_t bit = std::uint64_t{1} << col;
      auto pivot = std::find_if(rows.begin() + r, rows.end(), [&](std::uint64_t v) { return v & bit; });
      if (pivot == rows.end()) continue;
      std::iter_swap(rows.begin() + r, pivot);
      for (std::size_t i = 0; i < rows.size(); ++i)
        if (static_cast<int>(i) != r && (rows[i] & bit)) rows[i] ^= rows[static_cast<std::size_t>(r)];
      ++r;
    }
    return r;
  }

  static std::uint64_t mask(const DualElement& x) {
    std::uint64_t m = 0;
    for (std::size_t i = 0; i < x.coords.size(); ++i)
      if (x.coords[i] & 1) m |= std::uint64_t{1} << i;
    return m;
  }

  bool operator==(const BilinearForm& o) const { return group_ == o.group_ && m_ == o.m_; }

 private:
  AbelianGroup group_;
  Matrix m_;
  std::vector<std::uint64_t> rows_;
};

/// phi given by its values on the dual generators of Hom(H, Z4).
class QuadraticFunction {
 public:
  QuadraticFunction(BilinearForm mu, std::vector<QZValue> values) : mu_(std::move(mu)), values_(std::move(values)) {
    const AbelianGroup& g = mu_.group();
    if (static_cast<int>(values_.size()) != g.dual_rank())
      throw InvalidInput("phi needs " + std::to_string(g.dual_rank()) + " generator values");
    for (int i = 0; i < g.dual_rank(); ++i) {
      const QZValue& v = values_[static_cast<std::size_t>(i)];
      const int order = g.dual_order(i);
      if (order % v.denominator() != 0)
        throw InvalidInput("phi value " + v.to_string() + " on generator " + std::to_string(i) +
                           " is incompatible with a dual generator of order " + std::to_string(order));
      quarters_.push_back(static_cast<int>(v.numerator() * (4 / v.denominator())));
    }
  }

  const AbelianGroup& group() const noexcept { return mu_.group(); }
  const BilinearForm& mu() const noexcept { return mu_; }
  const std::vector<QZValue>& values() const noexcept { return values_; }
  /// Generator values in units of 1/4.
  const std::vector<int>& quarters() const noexcept { return quarters_; }

  bool operator==(const QuadraticFunction& o) const { return mu_ == o.mu_ && values_ == o.values_; }

 private:
  BilinearForm mu_;
  std::vector<QZValue> values_;
  std::vector<int> quarters_;
};

struct Triple {
  AbelianGroup group;
  Matrix mu;
  /// Absent only for classification data in the n = 3 mod 4 case.
  std::optional<std::vector<QZValue>> phi;
  std::optional<std::vector<int>> omega;

  bool operator==(const Triple&) const = default;
};

inline void validate_omega(const AbelianGroup& g, const std::vector<int>& omega) {
  if (static_cast<int>(omega.size()) != g.torsion_count())
    throw InvalidInput("omega needs " + std::to_string(g.torsion_count()) + " entries, one per torsion summand");
  for (int w : omega)
    if (w != 0 && w != 1) throw InvalidInput("omega entries must be 0 or 1");
}

inline void validate(const Triple& t) {
  BilinearForm mu(t.group, t.mu);
  if (t.phi) QuadraticFunction(mu, *t.phi);
  if (t.omega) validate_omega(t.group, *t.omega);
}

inline QuadraticFunction quadratic(const Triple& t) {
  if (!t.phi) throw InvalidInput("triple has no phi");
  return {BilinearForm(t.group, t.mu), *t.phi};
}

/// omega(x) for x in Hom(H, Z2): only Z2-summand coordinates pair nontrivially.
inline int omega_pairing(const AbelianGroup& g, const std::vector<int>& omega, std::uint64_t x) {
  int acc = 0;
  for (int j = 0; j < g.torsion_count(); ++j) {
    const int coord = g.free_rank() + j;
    if (g.exponent(coord) == 1 && ((x >> coord) & 1)) acc ^= omega[static_cast<std::size_t>(j)];
  }
  return acc;
}

namespace detail {

/// phi at a packed index of Hom(H, Z4), in units of 1/4.
inline int phi_quarters(const QuadraticFunction& phi, const DualSpace& space, std::uint64_t idx) {
  const int a = space.order4_count();
  const int b = space.order2_count();
  const auto& q = phi.quarters();
  const std::uint64_t low = idx & ((std::uint64_t{1} << a) - 1);
  const std::uint64_t high = (idx >> a) & ((std::uint64_t{1} << a) - 1);
  int acc = 0;
  int cross = 0;
  for (int i = 0; i < a; ++i) {
    const int n = static_cast<int>(((low >> i) & 1) | (((high >> i) & 1) << 1));
    acc += n * q[static_cast<std::size_t>(i)];
    if ((low >> i) & 1) {
      // pairs i < j among the odd coordinates
      const std::uint64_t above = low & ~((std::uint64_t{2} << i) - 1);
      cross ^= std::popcount(phi.mu().row_mask(i) & above) & 1;
    }
    // C(n, 2) is odd exactly for n = 2, 3, i.e. when the high bit is set.
    if ((high >> i) & 1) cross ^= phi.mu()(i, i);
  }
  for (int j = 0; j < b; ++j)
    if ((idx >> (2 * a + j)) & 1) acc += q[static_cast<std::size_t>(a + j)];
  return (acc + 2 * cross) % 4;
}

inline std::vector<std::uint8_t> phi_table(const QuadraticFunction& phi, std::uint64_t cap) {
  require_cap(phi.group(), cap);
  const DualSpace space(phi.group());
  std::vector<std::uint8_t> table(space.size());
  for (std::uint64_t x = 0; x < space.size(); ++x) table[x] = static_cast<std::uint8_t>(phi_quarters(phi, space, x));
  return table;
}

inline std::vector<std::uint64_t> value_counts(const std::vector<std::uint8_t>& table) {
  std::vector<std::uint64_t> c(4, 0);
  for (auto v : table) ++c[v];
  return c;
}

}  // namespace detail

/// phi(x) by the closed expansion of the quadratic law.
inline QZValue evaluate_phi(const QuadraticFunction& phi, const DualElement& x) {
  if (x.ring != Coefficients::z4) throw InvalidInput("phi is evaluated on Z4-valued dual elements");
  validate(phi.group(), x);
  const DualSpace space(phi.group());
  return QZValue::quarters(detail::phi_quarters(phi, space, space.index(x.coords)));
}

/// Exhaustive check of phi(x + y) = phi(x) + phi(y) + B(x, y).
inline bool verify_quadratic_law(const QuadraticFunction& phi, std::uint64_t cap = kDefaultCap) {
  const auto table = detail::phi_table(phi, cap);
  const DualSpace space(phi.group());
  const int n = phi.group().dual_rank();
  std::vector<std::uint64_t> rows;
  for (int i = 0; i < n; ++i) rows.push_back(phi.mu().row_mask(i));
  if (table[0] != 0) return false;
  for (std::uint64_t y = 0; y < space.size(); ++y) {
    const std::uint64_t ry = space.reduction(y);
    std::uint64_t mu_y = 0;  // mu(-, red y) as a mask
    for (int i = 0; i < n; ++i)
      if ((ry >> i) & 1) mu_y ^= rows[static_cast<std::size_t>(i)];
    for (std::uint64_t x = 0; x < space.size(); ++x) {
      const int b = 2 * (std::popcount(space.reduction(x) & mu_y) & 1);
      if (table[space.add(x, y)] != (table[x] + table[y] + b) % 4) return false;
    }
  }
  return true;
}

/// Exhaustive check of phi(-x) = -phi(x) + B(x, x).
inline bool verify_negation_law(const QuadraticFunction& phi, std::uint64_t cap = kDefaultCap) {
  const auto table = detail::phi_table(phi, cap);
  const DualSpace space(phi.group());
  for (std::uint64_t x = 0; x < space.size(); ++x) {
    const std::uint64_t r = space.reduction(x);
    const int b = 2 * phi.mu().evaluate(r, r);
    if (table[space.negate(x)] != (4 - table[x] + b) % 4) return false;
  }
  return true;
}

enum class ValueGroup { trivial, z2, z4, larger };

inline std::string to_string(ValueGroup v) {
  switch (v) {
    case ValueGroup::trivial:
      return "0";
    case ValueGroup::z2:
      return "Z2";
    case ValueGroup::z4:
      return "Z4";
    default:
      return "larger";
  }
}

/// Smallest cyclic subgroup of Q/Z containing the image of phi.
inline ValueGroup values_subgroup(const QuadraticFunction& phi, std::uint64_t cap = kDefaultCap) {
  const auto c = detail::value_counts(detail::phi_table(phi, cap));
  if (c[1] || c[3]) return ValueGroup::z4;
  if (c[2]) return ValueGroup::z2;
  return ValueGroup::trivial;
}

struct GaussSum {
  /// Number of x with phi(x) equal to each value that occurs.
  std::map<QZValue, std::uint64_t> counts;
  /// The sum is exactly real_part + i * imag_part (values are quarters).
  std::int64_t real_part = 0;
  std::int64_t imag_part = 0;

  std::complex<double> value() const {
    return {static_cast<double>(real_part), static_cast<double>(imag_part)};
  }
  bool operator==(const GaussSum&) const = default;
};

inline GaussSum gauss_sum(const QuadraticFunction& phi, std::uint64_t cap = kDefaultCap) {
  const auto c = detail::value_counts(detail::phi_table(phi, cap));
  GaussSum g;
  for (int v = 0; v < 4; ++v)
    if (c[static_cast<std::size_t>(v)]) g.counts[QZValue::quarters(v)] = c[static_cast<std::size_t>(v)];
  g.real_part = static_cast<std::int64_t>(c[0]) - static_cast<std::int64_t>(c[2]);
  g.imag_part = static_cast<std::int64_t>(c[1]) - static_cast<std::int64_t>(c[3]);
  return g;
}

/// A Z2-valued quadratic form on F2^n: q on the basis plus the bilinear form b.
struct Z2QuadraticForm {
  std::vector<int> q;
  Matrix b;

  bool operator==(const Z2QuadraticForm&) const = default;
};

namespace detail {

inline void validate_z2_form(const Z2QuadraticForm& f) {
  const std::size_t n = f.q.size();
  if (n > 62) throw SizeLimitError("quadratic form rank too large", n);
  if (f.b.size() != n) throw InvalidInput("bilinear form size does not match q");
  for (std::size_t i = 0; i < n; ++i) {
    if (f.q[i] != 0 && f.q[i] != 1) throw InvalidInput("q values must be 0 or 1");
    if (f.b[i].size() != n) throw InvalidInput("bilinear form must be square");
    for (std::size_t j = 0; j < n; ++j) {
      if (f.b[i][j] != 0 && f.b[i][j] != 1) throw InvalidInput("bilinear entries must be 0 or 1");
      if (f.b[i][j] != f.b[j][i]) throw InvalidInput("bilinear form must be symmetric");
    }
    if (f.b[i][i] != 0) throw InvalidInput("the bilinear form of a quadratic form has zero diagonal");
  }
}

struct Z2Form {
  std::vector<std::uint64_t> rows;
  std::vector<int> q;

  int pair(std::uint64_t x, std::uint64_t y) const {
    int acc = 0;
    for (std::size_t i = 0; i < rows.size(); ++i)
      if ((x >> i) & 1) acc ^= std::popcount(rows[i] & y) & 1;
    return acc;
  }
  int value(std::uint64_t x) const {
    int acc = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (!((x >> i) & 1)) continue;
      acc ^= q[i];
      acc ^= std::popcount(rows[i] & x & ~((std::uint64_t{2} << i) - 1)) & 1;
    }
    return acc;
  }
};

}  // namespace detail

/// Arf invariant by symplectic reduction: sum of q(e) q(f) over a symplectic basis.
inline int arf(const Z2QuadraticForm& f) {
  detail::validate_z2_form(f);
  detail::Z2Form form{{}, f.q};
  const std::size_t n = f.q.size();
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t r = 0;
    for (std::size_t j = 0; j < n; ++j)
      if (f.b[i][j]) r |= std::uint64_t{1} << j;
    form.rows.push_back(r);
  }
  std::vector<std::uint64_t> pool;
  for (std::size_t i = 0; i < n; ++i) pool.push_back(std::uint64_t{1} << i);
  int result = 0;
  while (!pool.empty()) {
    const std::uint64_t e = pool.back();
    pool.pop_back();
    auto partner = std::find_if(pool.begin(), pool.end(), [&](std::uint64_t v) { return form.pair(e, v); });
    if (partner == pool.end()) throw InvalidInput("the bilinear form is degenerate");
    const std::uint64_t g = *partner;
    pool.erase(partner);
    result ^= form.value(e) & form.value(g);
    for (auto& v : pool) {
      // project onto the orthogonal complement of span(e, g)
      const int ve = form.pair(v, e);
      const int vg = form.pair(v, g);
      if (vg) v ^= e;
      if (ve) v ^= g;
    }
  }
  return result;
}

/// True when the automorphism datum w carries a onto b: phi_a(x) = phi_b(x o tau),
/// mu_a(x, y) = mu_b(x o tau, y o tau), omega_a = (socle of tau) omega_b.
inline bool carries(const Triple& a, const Triple& b, const Automorphism& w) {
  const AbelianGroup& g = a.group;
  if (!g.isomorphic(b.group)) return false;
  const int n = g.dual_rank();
  if (w.matrix.size() != static_cast<std::size_t>(n)) return false;
  detail::Echelon ech;
  for (const auto& row : w.matrix) {
    const std::uint64_t r = ech.reduce(detail::row_mask(row));
    if (r == 0) return false;
    ech.push(r);
  }
  if (a.phi.has_value() != b.phi.has_value() || a.omega.has_value() != b.omega.has_value()) return false;
  const DualAction act = dual_action(g, w);
  const BilinearForm mu_b(g, b.mu);
  for (int i = 0; i < n; ++i)
    for (int l = 0; l < n; ++l) {
      const std::uint64_t ri = detail::row_mask(w.matrix[static_cast<std::size_t>(i)]);
      const std::uint64_t rl = detail::row_mask(w.matrix[static_cast<std::size_t>(l)]);
      if (a.mu[static_cast<std::size_t>(i)][static_cast<std::size_t>(l)] != mu_b.evaluate(ri, rl)) return false;
    }
  if (a.phi) {
    const auto qa = quadratic(a);
    const auto qb = quadratic(b);
    const DualSpace space(g);
    for (std::uint64_t x = 0; x < space.size(); ++x) {
      const DualElement y = apply(g, act, DualElement{Coefficients::z4, space.coords(x)});
      if (detail::phi_quarters(qa, space, x) != detail::phi_quarters(qb, space, space.index(y.coords))) return false;
    }
  }
  if (a.omega) {
    const int r = g.torsion_count();
    for (int i = 0; i < r; ++i) {
      int acc = 0;
      for (int j = 0; j < r; ++j)
        acc ^= w.socle[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] & (*b.omega)[static_cast<std::size_t>(j)];
      if ((*a.omega)[static_cast<std::size_t>(i)] != acc) return false;
    }
  }
  return true;
}

namespace detail {

/// delta_i o tau for the dual generator delta_i of Hom(H, Z4), read off from row i.
inline std::vector<int> pulled_generator(const AbelianGroup& g, const std::vector<int>& row, int i) {
  std::vector<int> y(row.size());
  for (std::size_t j = 0; j < row.size(); ++j) {
    if (g.dual_order(static_cast<int>(j)) == 4)
      y[j] = (g.dual_order(i) == 2 ? 2 * row[j] : row[j]) % 4;
    else
      y[j] = (g.dual_order(i) == 4 ? row[j] / 2 : row[j]) % 2;
  }
  return y;
}

}  // namespace detail

/// The triple a with carries(a, b, w): the pullback of b along the automorphism w.
inline Triple pullback(const Triple& b, const Automorphism& w) {
  validate(b);
  const AbelianGroup& g = b.group;
  const int n = g.dual_rank();
  const BilinearForm mu_b(g, b.mu);
  Triple a{g, Matrix(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 0)), std::nullopt,
           std::nullopt};
  std::vector<std::uint64_t> rows;
  for (const auto& row : w.matrix) rows.push_back(detail::row_mask(row));
  for (int i = 0; i < n; ++i)
    for (int l = 0; l < n; ++l)
      a.mu[static_cast<std::size_t>(i)][static_cast<std::size_t>(l)] =
          mu_b.evaluate(rows[static_cast<std::size_t>(i)], rows[static_cast<std::size_t>(l)]);
  if (b.phi) {
    const auto qb = quadratic(b);
    const DualSpace space(g);
    std::vector<QZValue> values;
    for (int i = 0; i < n; ++i) {
      const auto y = detail::pulled_generator(g, w.matrix[static_cast<std::size_t>(i)], i);
      values.push_back(QZValue::quarters(detail::phi_quarters(qb, space, space.index(y))));
    }
    a.phi = std::move(values);
  }
  if (b.omega) {
    const int r = g.torsion_count();
    std::vector<int> omega(static_cast<std::size_t>(r), 0);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j)
        omega[static_cast<std::size_t>(i)] ^=
            w.socle[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] & (*b.omega)[static_cast<std::size_t>(j)];
    a.omega = std::move(omega);
  }
  return a;
}

/// Cheap isometry invariants: value counts of phi, rank of mu, and whether omega vanishes.
inline bool invariants_match(const Triple& a, const Triple& b, std::uint64_t cap = kDefaultCap) {
  if (!a.group.isomorphic(b.group)) return false;
  if (a.phi.has_value() != b.phi.has_value() || a.omega.has_value() != b.omega.has_value()) return false;
  if (BilinearForm(a.group, a.mu).rank() != BilinearForm(b.group, b.mu).rank()) return false;
  if (a.phi && gauss_sum(quadratic(a), cap) != gauss_sum(quadratic(b), cap)) return false;
  if (a.omega) {
    auto zero = [](const std::vector<int>& w) { return std::all_of(w.begin(), w.end(), [](int v) { return v == 0; }); };
    if (zero(*a.omega) != zero(*b.omega)) return false;
  }
  return true;
}

/// An automorphism carrying a onto b, if one exists; first found in row-major search order.
inline std::optional<Automorphism> isometry_witness(const Triple& a, const Triple& b, std::uint64_t cap = kDefaultCap) {
  validate(a);
  validate(b);
  if (!a.group.isomorphic(b.group)) return std::nullopt;
  require_cap(a.group, cap);
  if (!invariants_match(a, b, cap)) return std::nullopt;

  const AbelianGroup& g = a.group;
  const int t = g.free_rank();
  const BilinearForm mu_b(g, b.mu);
  std::optional<QuadraticFunction> qa, qb;
  std::optional<DualSpace> space;
  if (a.phi) {
    qa.emplace(quadratic(a));
    qb.emplace(quadratic(b));
    space.emplace(g);
  }

  std::optional<Automorphism> found;
  auto accept_row = [&](const Automorphism& cur, int i) {
    const auto& row = cur.matrix[static_cast<std::size_t>(i)];
    const std::uint64_t ri = detail::row_mask(row);
    for (int l = 0; l <= i; ++l) {
      const std::uint64_t rl = detail::row_mask(cur.matrix[static_cast<std::size_t>(l)]);
      if (a.mu[static_cast<std::size_t>(i)][static_cast<std::size_t>(l)] != mu_b.evaluate(ri, rl)) return false;
    }
    if (qa) {
      const auto y = detail::pulled_generator(g, row, i);
      if (qa->quarters()[static_cast<std::size_t>(i)] != detail::phi_quarters(*qb, *space, space->index(y)))
        return false;
    }
    if (a.omega && i >= t) {
      const auto& srow = cur.socle[static_cast<std::size_t>(i - t)];
      int acc = 0;
      for (std::size_t j = 0; j < srow.size(); ++j) acc ^= srow[j] & (*b.omega)[j];
      if ((*a.omega)[static_cast<std::size_t>(i - t)] != acc) return false;
    }
    return true;
  };
  search_automorphisms(g, a.omega.has_value(), accept_row, [&](const Automorphism& w) {
    found = w;
    return false;
  });
  return found;
}

inline bool isometric(const Triple& a, const Triple& b, std::uint64_t cap = kDefaultCap) {
  return isometry_witness(a, b, cap).has_value();
}

/// Images of the standard generators of Z4^a + Z2^b under an isomorphism sigma
/// with phi_2(sigma x) = phi_1(x), as packed dual indices.
using WittWitness = std::vector<std::uint64_t>;

inline std::optional<WittWitness> witt_witness(const QuadraticFunction& phi1, const QuadraticFunction& phi2,
                                               std::uint64_t cap = kDefaultCap) {
  if (hom_z4_structure(phi1.group()) != hom_z4_structure(phi2.group())) return std::nullopt;
  const auto t1 = detail::phi_table(phi1, cap);
  const auto t2 = detail::phi_table(phi2, cap);
  if (detail::value_counts(t1) != detail::value_counts(t2)) return std::nullopt;
  const DualSpace space(phi1.group());
  const int a = space.order4_count();
  const int gens = space.rank();
  const std::uint64_t low_mask = (std::uint64_t{1} << a) - 1;

  auto generator = [&](int i) { return i < a ? std::uint64_t{1} << i : std::uint64_t{1} << (2 * a + (i - a)); };

  // pairs (x, sigma x) spanning the subgroup built so far
  std::vector<std::pair<std::uint64_t, std::uint64_t>> span{{0, 0}};
  std::vector<char> used(space.size(), 0);
  used[0] = 1;
  WittWitness images;
  std::optional<WittWitness> found;

  std::function<void(int)> rec = [&](int i) {
    if (found) return;
    if (i == gens) {
      found = images;
      return;
    }
    const std::uint64_t gen = generator(i);
    const int order = i < a ? 4 : 2;
    const std::size_t before = span.size();
    for (std::uint64_t y = 1; y < space.size() && !found; ++y) {
      const bool order4 = (y & low_mask) != 0;
      if ((order == 4) != order4) continue;
      if (used[y]) continue;
      // extend the span by multiples of (gen, y), checking injectivity and phi
      bool ok = true;
      std::uint64_t cx = 0, cy = 0;
      for (int c = 1; c < order && ok; ++c) {
        cx = space.add(cx, gen);
        cy = space.add(cy, y);
        for (std::size_t s = 0; s < before && ok; ++s) {
          const std::uint64_t x = space.add(span[s].first, cx);
          const std::uint64_t z = space.add(span[s].second, cy);
          if (used[z] || t1[x] != t2[z]) {
            ok = false;
            break;
          }
          used[z] = 1;
          span.emplace_back(x, z);
        }
      }
      if (ok) {
        images.push_back(y);
        rec(i + 1);
        images.pop_back();
      }
      for (std::size_t s = before; s < span.size(); ++s) used[span[s].second] = 0;
      span.resize(before);
    }
  };
  rec(0);
  return found;
}

inline bool witt_equivalent(const QuadraticFunction& phi1, const QuadraticFunction& phi2,
                            std::uint64_t cap = kDefaultCap) {
  return witt_witness(phi1, phi2, cap).has_value();
}

/// Checks a Witt witness pointwise over all of Hom(H, Z4).
inline bool witt_carries(const QuadraticFunction& phi1, const QuadraticFunction& phi2, const WittWitness& w,
                         std::uint64_t cap = kDefaultCap) {
  if (hom_z4_structure(phi1.group()) != hom_z4_structure(phi2.group())) return false;
  const auto t1 = detail::phi_table(phi1, cap);
  const auto t2 = detail::phi_table(phi2, cap);
  const DualSpace space(phi1.group());
  if (static_cast<int>(w.size()) != space.rank()) return false;
  std::vector<char> hit(space.size(), 0);
  for (std::uint64_t x = 0; x < space.size(); ++x) {
    const auto c = space.coords(x);
    std::uint64_t z = 0;
    for (int i = 0; i < space.rank(); ++i)
      for (int k = 0; k < c[static_cast<std::size_t>(i)]; ++k) z = space.add(z, w[static_cast<std::size_t>(i)]);
    if (hit[z] || t1[x] != t2[z]) return false;
    hit[z] = 1;
  }
  return true;
}

/// sigma_2 o sigma_1 for witnesses phi1 -> phi2 and phi2 -> phi3.
inline WittWitness compose_witt(const DualSpace& space, const WittWitness& first, const WittWitness& second) {
  WittWitness out;
  for (std::uint64_t y : first) {
    const auto c = space.coords(y);
    std::uint64_t z = 0;
    for (int i = 0; i < space.rank(); ++i)
      for (int k = 0; k < c[static_cast<std::size_t>(i)]; ++k) z = space.add(z, second[static_cast<std::size_t>(i)]);
    out.push_back(z);
  }
  return out;
}

}  // namespace secform
