#pragma once

// Brute-force enumerations over (Z/p^n)^k, each paired with the closed form it
// checks. Every enumeration refuses to run past `guard` tuples (TooLarge).

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "padicflats/expectation.hpp"
#include "padicflats/padic.hpp"

namespace padicflats {

/// A point of P^{r-1}(Z/p^n) in normal form: the first coordinate of minimal
/// valuation m1 is scaled to exactly p^m1 (for unit points, to 1).
struct ProjectivePoint {
  std::uint64_t prime = 0;
  int exponent = 0;  ///< n, working modulo p^n
  std::vector<std::uint64_t> coords;
  int min_valuation = 0;

  /// Throws InvalidArgument for the zero tuple.
  static ProjectivePoint normalize(std::vector<std::uint64_t> tuple, std::uint64_t p, int n);
  bool is_unit() const { return min_valuation == 0; }

  friend bool operator==(const ProjectivePoint& a, const ProjectivePoint& b) {
    return a.coords == b.coords;
  }
  friend auto operator<=>(const ProjectivePoint& a, const ProjectivePoint& b) {
    return a.coords <=> b.coords;
  }
};

struct MinorMapReport {
  std::uint64_t prime = 0;
  int exponent = 0;
  /// Number of coordinates of the target projective space.
  int target_coords = 0;
  std::map<ProjectivePoint, std::uint64_t> fiber_sizes;
  /// Matrices whose maximal minors do not all vanish mod p^n.
  std::uint64_t domain_size = 0;

  std::uint64_t fiber_total() const;
  /// Every fiber equals formula(m1) of its target.
  bool fibers_match(const std::function<BigInt(int)>& formula) const;
  /// Fibers over points with equal m1 all have the same size.
  bool depends_only_on_min_valuation() const;
  /// Every point of the target space has a nonempty fiber.
  bool surjective() const;
};

/// Histogram of v_p(det) over all n x n matrices mod p^m.
ValuationHistogram det_histogram_all_matrices(int n, std::uint64_t p, int m,
                                              std::uint64_t guard = kDefaultGuard);

std::uint64_t count_gl(int n, std::uint64_t p, int m, std::uint64_t guard = kDefaultGuard);
/// Requires ell < m.
std::uint64_t count_det_level(int n, std::uint64_t p, int m, int ell,
                              std::uint64_t guard = kDefaultGuard);
/// Unit triples mod p^k with k2^2 - k1 k3 == 0.
std::uint64_t count_A(int k, std::uint64_t p, std::uint64_t guard = kDefaultGuard);
/// Unit quadruples mod p^k with k1 k4 - k2 k3 == 0.
std::uint64_t count_B(int k, std::uint64_t p, std::uint64_t guard = kDefaultGuard);
/// 2 x 2 matrices mod p^n with zero determinant.
std::uint64_t count_singular_2x2(std::uint64_t p, int n, std::uint64_t guard = kDefaultGuard);

/// h(xi_1..xi_6) = [xi1 xi5 - xi2 xi4 : xi1 xi6 - xi3 xi4 : xi2 xi6 - xi3 xi5]
/// on the stack [[xi1, xi4], [xi2, xi5], [xi3, xi6]].
MinorMapReport minor_fibers_3x2(std::uint64_t p, int n, std::uint64_t guard = kDefaultGuard);
/// The four 3 x 3 minors of a 4 x 3 stack (minor r deletes row r).
MinorMapReport minor_fibers_4x3(std::uint64_t p, int n, std::uint64_t guard = kDefaultGuard);

/// rows x cols matrices over F_p of full rank min(rows, cols).
std::uint64_t count_full_rank(int rows, int cols, std::uint64_t p, std::uint64_t guard = kDefaultGuard);

/// |pi_m(U)| for a set of residue tuples mod p^source_precision.
std::uint64_t count_balls_cover(const std::vector<std::vector<std::uint64_t>>& residues,
                                std::uint64_t p, int source_precision, int m);

// Closed forms checked by the enumerations above.

BigInt gl_count_formula(int n, std::uint64_t p, int m);
BigInt det_level_count_formula(int n, std::uint64_t p, int m, int ell);
BigInt A_formula(int k, std::uint64_t p);
BigInt B_formula(int k, std::uint64_t p);
BigInt singular_2x2_formula(std::uint64_t p, int n);
/// p^{4n-3-m1} (p-1)(p+1)(p^{m1+1}-1)
BigInt fiber_3x2_formula(std::uint64_t p, int n, int m1);
/// p^{9n-6-m1} (p^3-1)(p^{m1+1}-1)(p^{m1+2}-1)
BigInt fiber_4x3_formula(std::uint64_t p, int n, int m1);
/// |P^{r-1}(Z/p^n)|
BigInt projective_point_count(int r, std::uint64_t p, int n);

}  // namespace padicflats
