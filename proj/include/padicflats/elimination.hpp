#pragma once

// Determinant valuation by minimum-valuation pivoting over Z/p^m.
//
// Step c picks, in column c, the row whose entry has the smallest valuation v.
// Every other entry b of that column is divisible by p^v as an integer, so the
// row operation  row -= (b / p^v) * u^-1 * pivot_row  (pivot = p^v * u) clears
// it using only unit inverses. The determinant is the signed product of the
// pivots; once their valuations reach m the residue is zero.

#include <cstddef>
#include <span>
#include <utility>

#include "padicflats/residue_ring.hpp"

namespace padicflats {

template <ResidueRing R>
struct DetOutcome {
  /// Valuation of det, or ring.precision() when det == 0 (mod p^m).
  int valuation;
  /// det mod p^m; only filled when requested.
  typename R::value_type residue;
};

/// Destroys `a` (row-major n x n).
template <ResidueRing R>
DetOutcome<R> eliminate_determinant(const R& ring, std::span<typename R::value_type> a,
                                    std::size_t n, bool want_residue) {
  using T = typename R::value_type;
  const int m = ring.precision();
  int total = 0;
  bool negate = false;
  T residue = ring.zero();
  if (want_residue) residue = ring.add(ring.zero(), T(1));

  for (std::size_t c = 0; c < n; ++c) {
    std::size_t best = n;
    int best_v = m;
    for (std::size_t r = c; r < n; ++r) {
      const int v = ring.valuation(a[r * n + c]);
      if (v < best_v) {
        best_v = v;
        best = r;
        if (v == 0) break;
      }
    }
    if (best == n || total + best_v >= m) return {m, ring.zero()};
    if (best != c) {
      for (std::size_t j = c; j < n; ++j) std::swap(a[best * n + j], a[c * n + j]);
      negate = !negate;
    }
    total += best_v;
    const T& pivot = a[c * n + c];
    if (want_residue) residue = ring.mul(residue, pivot);
    if (c + 1 == n) break;
    const T unit_inv = ring.unit_inverse(ring.shift_down(pivot, best_v));
    for (std::size_t r = c + 1; r < n; ++r) {
      if (ring.is_zero(a[r * n + c])) continue;
      const T factor = ring.mul(ring.shift_down(a[r * n + c], best_v), unit_inv);
      a[r * n + c] = ring.zero();
      for (std::size_t j = c + 1; j < n; ++j) {
        a[r * n + j] = ring.sub(a[r * n + j], ring.mul(factor, a[c * n + j]));
      }
    }
  }
  if (want_residue && negate) residue = ring.sub(ring.zero(), residue);
  return {total, residue};
}

}  // namespace padicflats
