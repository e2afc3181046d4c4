#pragma once

/**
 * @file homotopy.hpp
 * @brief Closed-form 2-local stable homotopy of Eilenberg-MacLane spaces and
 * the pi_n(SO(n)) table.
 */

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "secform/error.hpp"
#include "secform/group.hpp"

namespace secform::homotopy {

/// C(t + k + s, 2).
inline std::int64_t p_value(const AbelianGroup& h) {
  const std::int64_t m = hom_rank_z2(h);
  return m * (m - 1) / 2;
}

inline int residue4(int n) { return ((n % 4) + 4) % 4; }

inline AbelianGroup elementary(int z4_count, std::int64_t z2_count) {
  if (z2_count > (1 << 20)) throw SizeLimitError("result group too large to represent", static_cast<std::uint64_t>(z2_count));
  std::vector<int> e(static_cast<std::size_t>(z4_count), 2);
  e.insert(e.end(), static_cast<std::size_t>(z2_count), 1);
  return {0, std::move(e)};
}

/// The 2n-th stable homotopy group of K(H, n - 1), n >= 4.
inline AbelianGroup stable_homotopy_em(int n, const AbelianGroup& h) {
  if (n < 4) throw OutOfRange("stable_homotopy_em needs n >= 4, got " + std::to_string(n));
  const std::int64_t t = h.free_rank(), k = h.k(), s = h.s(), p = p_value(h);
  switch (residue4(n)) {
    case 0:
      return elementary(0, 2 * (t + k) + s + p);
    case 1:
      return elementary(0, t + 2 * k + s + p);
    case 2:
      return elementary(static_cast<int>(t + k), s + p);
    default:
      return elementary(0, k + s + p);
  }
}

/// log2 of the order of a finite 2-group.
inline std::int64_t log2_order(const AbelianGroup& g) {
  if (g.free_rank() > 0) throw InvalidInput("group is infinite");
  std::int64_t total = 0;
  for (int e : g.two_exponents()) total += e;
  return total;
}

/// H_{n+1}(K(G1, n-1); G2) for cyclic G1, G2: Z2 when both have a nontrivial 2-part.
inline AbelianGroup kunneth_cross(const AbelianGroup& g1, const AbelianGroup& g2) {
  for (const auto* g : {&g1, &g2})
    if (g->dual_rank() > 1) throw InvalidInput("kunneth_cross expects cyclic groups, got " + render(*g));
  if (g1.dual_rank() == 1 && g2.dual_rank() == 1) return elementary(0, 1);
  return AbelianGroup::trivial();
}

/// Checks that the closed form splits over direct sums with an extra Z2^(m1 m2).
inline bool splitting_check(const AbelianGroup& h1, const AbelianGroup& h2, int n) {
  if (n < 4) throw OutOfRange("splitting_check needs n >= 4, got " + std::to_string(n));
  const std::int64_t cross = static_cast<std::int64_t>(hom_rank_z2(h1)) * hom_rank_z2(h2);
  const AbelianGroup lhs = stable_homotopy_em(n, direct_sum(h1, h2));
  const AbelianGroup rhs =
      direct_sum(direct_sum(stable_homotopy_em(n, h1), stable_homotopy_em(n, h2)), elementary(0, cross));
  return lhs.isomorphic(rhs);
}

/// pi_n(SO(n)) for n >= 3.
inline AbelianGroup pi_n_so_n(int n) {
  if (n < 3) throw OutOfRange("pi_n_so_n needs n >= 3, got " + std::to_string(n));
  if (n == 6) return AbelianGroup::trivial();
  switch (n % 8) {
    case 0:
      return elementary(0, 3);
    case 1:
      return elementary(0, 2);
    case 2:
    case 6:
      return elementary(1, 0);
    case 3:
    case 7:
      return AbelianGroup(1, {});
    case 4:
      return elementary(0, 2);
    default:
      return elementary(0, 1);
  }
}

}  // namespace secform::homotopy
