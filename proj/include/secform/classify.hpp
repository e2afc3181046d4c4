#pragma once

/**
 * @file classify.hpp
 * @brief Membership in the classification data of (n-2)-connected 2n-dimensional
 * pi-manifolds with vanishing middle rational homology, and enumeration of the
 * data up to isometry.
 *
 * Constraints by n mod 4:
 *   2: phi takes values in Z4, mu(x, x) = 0 for all x;
 *   0: phi takes values in Z2;
 *   1: phi takes values in Z2, omega present, plus the odd-n clause;
 *   3: no phi, omega present, plus the odd-n clause.
 * Odd-n clause: mu(x, x) = 0 when x is the reduction of an order-4 element of
 * Hom(H, Z4), and mu(x, x) = delta * omega(x) for every other nonzero x.
 */

#include <bit>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "secform/error.hpp"
#include "secform/forms.hpp"
#include "secform/group.hpp"
#include "secform/serialize.hpp"

namespace secform::classify {

struct ManifoldClass {
  int n_mod_4 = 0;
  int delta = 0;
  Triple data;

  bool operator==(const ManifoldClass&) const = default;
};

struct Membership {
  bool member = true;
  std::vector<std::string> reasons;
  std::vector<std::string> warnings;
};

inline int residue4(int n) { return ((n % 4) + 4) % 4; }

inline void require_dimension(int n) {
  if (n < 4) throw OutOfRange("the classification needs n >= 4, got " + std::to_string(n));
}

/// Empty unless the number of ones in the binary expansion of n + 2 is below 2.
inline std::vector<std::string> dimension_warnings(int n) {
  if (std::popcount(static_cast<unsigned>(n + 2)) < 2)
    return {"n + 2 = " + std::to_string(n + 2) +
            " is a power of two; the correspondence is only asserted when its binary expansion has at least two ones"};
  return {};
}

inline std::vector<std::string> constraint_summary(int n_mod_4) {
  switch (n_mod_4) {
    case 2:
      return {"phi factors through Z4", "mu(x, x) = 0 for all x"};
    case 0:
      return {"phi factors through Z2"};
    case 1:
      return {"phi factors through Z2", "mu(x, x) = 0 on reductions of order-4 classes",
              "mu(x, x) = delta omega(x) on the remaining x"};
    default:
      return {"no phi", "mu(x, x) = 0 on reductions of order-4 classes",
              "mu(x, x) = delta omega(x) on the remaining x"};
  }
}

inline constexpr const char* kLiftInterpretation =
    "x lifts to an order-4 class means x = reduce_dual(y) for some y of order 4 in Hom(H, Z4); "
    "x of order 2 means x is nonzero and not such a reduction";

inline constexpr const char* kKervaireNote = "the Kervaire invariant of these manifolds vanishes";

/// Checks the residue constraints. Throws when the data do not have the shape the
/// residue calls for (phi or omega missing or superfluous).
inline Membership check_membership(const ManifoldClass& c, int n) {
  require_dimension(n);
  const int r = residue4(n);
  if (c.n_mod_4 != r)
    throw InvalidInput("class records n mod 4 = " + std::to_string(c.n_mod_4) + " but n = " + std::to_string(n));
  if (c.delta != 0 && c.delta != 1) throw InvalidInput("delta must be 0 or 1");
  const Triple& t = c.data;
  const bool wants_phi = r != 3;
  const bool wants_omega = r % 2 == 1;
  if (t.phi.has_value() != wants_phi)
    throw InvalidInput(wants_phi ? "phi is required for n = " + std::to_string(r) + " mod 4"
                                 : "phi is not part of the data for n = 3 mod 4");
  if (t.omega.has_value() != wants_omega)
    throw InvalidInput(wants_omega ? "omega is required for odd n" : "omega is not part of the data for even n");
  validate(t);

  Membership m;
  m.warnings = dimension_warnings(n);
  const AbelianGroup& g = t.group;
  auto fail = [&](std::string why) {
    m.member = false;
    m.reasons.push_back(std::move(why));
  };
  const int dim = g.dual_rank();
  if (r == 2) {
    for (int i = 0; i < dim; ++i)
      if (t.mu[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)])
        fail("diag: mu(x, x) != 0 for dual generator " + std::to_string(i));
  }
  if (r == 0 || r == 1) {
    const auto q = quadratic(t);
    for (int i = 0; i < dim; ++i)
      if (q.quarters()[static_cast<std::size_t>(i)] % 2)
        fail("value group: phi(generator " + std::to_string(i) + ") = " +
             (*t.phi)[static_cast<std::size_t>(i)].to_string() + " does not lie in Z2");
  }
  if (r % 2 == 1) {
    // mu(x, x) is linear in x, so checking dual generators suffices.
    for (int i = 0; i < dim; ++i) {
      const int d = t.mu[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
      if (g.dual_order(i) == 4) {
        if (d) fail("lift: mu(x, x) != 0 for the order-4 lift at dual generator " + std::to_string(i));
      } else {
        const int w = c.delta & omega_pairing(g, *t.omega, std::uint64_t{1} << i);
        if (d != w)
          fail("order 2: mu(x, x) = " + std::to_string(d) + " but delta omega(x) = " + std::to_string(w) +
               " at dual generator " + std::to_string(i));
      }
    }
  }
  return m;
}

inline constexpr std::uint64_t kDefaultCandidateLimit = std::uint64_t{1} << 20;

struct Enumeration {
  AbelianGroup group;
  int n = 0;
  int n_mod_4 = 0;
  int delta = 0;
  std::vector<ManifoldClass> representatives;
  std::uint64_t candidates = 0;
  std::uint64_t members = 0;
  std::vector<std::string> warnings;

  std::size_t count() const noexcept { return representatives.size(); }
};

namespace detail {

/// Candidate data in lexicographic order of (mu upper triangle, phi quarters, omega).
class CandidateSpace {
 public:
  CandidateSpace(const AbelianGroup& g, int n_mod_4) : g_(g), r_(n_mod_4) {
    const int dim = g.dual_rank();
    for (int i = 0; i < dim; ++i)
      for (int j = i; j < dim; ++j) digits_.push_back(2);
    if (r_ != 3)
      for (int i = 0; i < dim; ++i) digits_.push_back(r_ == 2 && g.dual_order(i) == 4 ? 4 : 2);
    if (r_ % 2 == 1)
      for (int i = 0; i < g.torsion_count(); ++i) digits_.push_back(2);
  }

  std::uint64_t size() const {
    std::uint64_t total = 1;
    for (int d : digits_) {
      if (total > (std::uint64_t{1} << 62) / static_cast<std::uint64_t>(d)) return std::uint64_t{1} << 62;
      total *= static_cast<std::uint64_t>(d);
    }
    return total;
  }

  std::vector<int> first() const { return std::vector<int>(digits_.size(), 0); }

  bool next(std::vector<int>& key) const {
    for (std::size_t i = key.size(); i-- > 0;) {
      if (++key[i] < digits_[i]) return true;
      key[i] = 0;
    }
    return false;
  }

  Triple decode(const std::vector<int>& key) const {
    const int dim = g_.dual_rank();
    const auto n = static_cast<std::size_t>(dim);
    Triple t{g_, Matrix(n, std::vector<int>(n, 0)), std::nullopt, std::nullopt};
    std::size_t p = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) t.mu[i][j] = t.mu[j][i] = key[p++];
    if (r_ != 3) {
      std::vector<QZValue> phi;
      for (int i = 0; i < dim; ++i) {
        const int v = key[p++];
        // digit 2 means the value lives in {0, 1/2}
        phi.push_back(digits_[p - 1] == 4 ? QZValue::quarters(v) : QZValue::halves(v));
      }
      t.phi = std::move(phi);
    }
    if (r_ % 2 == 1) t.omega = std::vector<int>(key.begin() + static_cast<std::ptrdiff_t>(p), key.end());
    return t;
  }

  std::vector<int> encode(const Triple& t) const {
    std::vector<int> key;
    const auto n = static_cast<std::size_t>(g_.dual_rank());
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) key.push_back(t.mu[i][j]);
    if (r_ != 3)
      for (std::size_t i = 0; i < n; ++i) {
        const QZValue& v = (*t.phi)[i];
        const int quarters = static_cast<int>(v.numerator() * (4 / v.denominator()));
        key.push_back(digits_[key.size()] == 4 ? quarters : quarters / 2);
      }
    if (t.omega) key.insert(key.end(), t.omega->begin(), t.omega->end());
    return key;
  }

 private:
  AbelianGroup g_;
  int r_;
  std::vector<int> digits_;
};

}  // namespace detail

/// Every datum of the given shape, in candidate order (members and non-members).
inline std::vector<ManifoldClass> all_candidates(const AbelianGroup& h, int n, int delta,
                                                 std::uint64_t limit = kDefaultCandidateLimit) {
  require_dimension(n);
  const int r = residue4(n);
  const detail::CandidateSpace space(h, r);
  if (space.size() > limit) throw SizeLimitError("too many candidate data for " + render(h), space.size());
  std::vector<ManifoldClass> out;
  auto key = space.first();
  do out.push_back({r, delta, space.decode(key)});
  while (space.next(key));
  return out;
}

/// Representatives of the isometry classes of admissible data, each the first
/// member of its class in candidate order.
inline Enumeration enumerate_classes(const AbelianGroup& h, int n, int delta, std::uint64_t cap = kDefaultCap,
                                     std::uint64_t candidate_limit = kDefaultCandidateLimit) {
  require_dimension(n);
  if (delta != 0 && delta != 1) throw InvalidInput("delta must be 0 or 1");
  require_cap(h, cap);
  const int r = residue4(n);
  Enumeration out;
  out.group = h;
  out.n = n;
  out.n_mod_4 = r;
  out.delta = delta;
  out.warnings = dimension_warnings(n);

  const detail::CandidateSpace space(h, r);
  if (space.size() > candidate_limit)
    throw SizeLimitError("too many candidate data for " + render(h), space.size());
  const auto autos = automorphisms(h, cap, kDefaultAutomorphismLimit, r % 2 == 1);

  std::set<std::vector<int>> seen;
  auto key = space.first();
  do {
    ++out.candidates;
    const ManifoldClass c{r, delta, space.decode(key)};
    if (!check_membership(c, n).member) continue;
    ++out.members;
    if (seen.count(key)) continue;
    out.representatives.push_back(c);
    for (const auto& w : autos) seen.insert(space.encode(pullback(c.data, w)));
  } while (space.next(key));
  return out;
}

inline Json class_to_json(const ManifoldClass& c) {
  Json j = triple_to_json(c.data);
  j["n_mod_4"] = c.n_mod_4;
  j["delta"] = c.delta;
  return j;
}

inline Json report_json(const Enumeration& e) {
  Json j;
  j["group"] = render(e.group);
  j["n"] = e.n;
  j["n_mod_4"] = e.n_mod_4;
  j["delta"] = e.delta;
  j["constraints"] = constraint_summary(e.n_mod_4);
  j["interpretation"] = kLiftInterpretation;
  j["count"] = e.count();
  Json classes = Json::array();
  for (const auto& c : e.representatives) classes.push_back(class_to_json(c));
  j["classes"] = std::move(classes);
  j["warnings"] = e.warnings;
  j["note"] = kKervaireNote;
  return j;
}

inline std::string describe(const Triple& t) {
  std::string s = "mu=" + Json(matrix_to_json(t.mu)).dump();
  if (t.phi) {
    s += " phi=[";
    for (std::size_t i = 0; i < t.phi->size(); ++i) s += (i ? "," : "") + (*t.phi)[i].to_string();
    s += "]";
  }
  if (t.omega) s += " omega=" + Json(*t.omega).dump();
  return s;
}

inline std::string report_text(const Enumeration& e) {
  std::string s;
  s += "group: " + render(e.group) + (e.group.odd_part_dropped() ? " (odd torsion dropped)" : "") + "\n";
  s += "n: " + std::to_string(e.n) + " (n mod 4 = " + std::to_string(e.n_mod_4) + ")\n";
  s += "delta: " + std::to_string(e.delta) + "\n";
  s += "constraints:";
  for (const auto& c : constraint_summary(e.n_mod_4)) s += "\n  - " + c;
  s += "\n";
  if (e.n_mod_4 % 2 == 1) s += "interpretation: " + std::string(kLiftInterpretation) + "\n";
  s += "candidates: " + std::to_string(e.candidates) + ", admissible: " + std::to_string(e.members) + "\n";
  s += "count: " + std::to_string(e.count()) + "\n";
  for (std::size_t i = 0; i < e.representatives.size(); ++i)
    s += "  [" + std::to_string(i + 1) + "] " + describe(e.representatives[i].data) + "\n";
  for (const auto& w : e.warnings) s += "warning: " + w + "\n";
  s += "note: " + std::string(kKervaireNote) + "\n";
  return s;
}

}  // namespace secform::classify
