#pragma once

// Normalized Riemann sums p^{-kn} sum f(a), a over (Z/p^n)^k, of polynomial
// integrands, and their p-adic convergence to a rational target.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "padicflats/expectation.hpp"
#include "padicflats/padic.hpp"
#include "padicflats/polynomial.hpp"

namespace padicflats {

class PolynomialIntegrand {
 public:
  using Term = std::pair<ExactRational, Exponents>;

  /// Throws InvalidArgument on exponent vectors of the wrong length or with
  /// negative entries.
  PolynomialIntegrand(int variables, std::vector<Term> terms, std::string name = "");
  static PolynomialIntegrand from_polynomial(const IntPolynomial& f, std::string name = "");
  static PolynomialIntegrand constant(int variables, const ExactRational& c);

  int variables() const { return variables_; }
  const std::vector<Term>& terms() const { return terms_; }
  const std::string& name() const { return name_; }

  ExactRational evaluate(const std::vector<BigInt>& point) const;
  /// Common denominator D with D * f integral.
  const BigInt& denominator() const { return denominator_; }
  /// D * f as an integer polynomial.
  const IntPolynomial& scaled_numerator() const { return numerator_; }

 private:
  int variables_;
  std::vector<Term> terms_;
  std::string name_;
  BigInt denominator_;
  IntPolynomial numerator_;
};

/// (x1 x6 - x3 x4)^2 - (x1 x5 - x2 x4)(x2 x6 - x3 x5): the determinant of the
/// cubic-surface Jacobian after the minor substitution.
PolynomialIntegrand cubic_det_integrand();

struct VolkenbornPartial {
  int level = 0;
  std::uint64_t prime = 0;
  /// sum f(a) over 0 <= a_i < p^n
  ExactRational raw_sum;
  /// raw_sum / p^{kn}
  ExactRational normalized_sum;
};

/// Throws TooLarge when p^{kn} exceeds the guard.
VolkenbornPartial volkenborn_partial(const PolynomialIntegrand& f, std::uint64_t p, int level,
                                     const EngineOptions& options = {});

/// p^{6n} (p^n - 1)^2 (5 p^{2n} + p^n - 4) / 36
ExactRational cubic_det_raw_sum_formula(std::uint64_t p, int level);

struct LimitCheck {
  std::uint64_t prime = 0;
  ExactRational target;
  /// v_p(partial_n - target) per level; nullopt when they are equal.
  std::vector<std::pair<int, std::optional<int>>> valuations;
  /// Every level n has v_p(partial_n - target) >= n.
  bool pass = false;
};

/// Valuations are computed exactly on rationals, so the target may have a
/// denominator divisible by p.
LimitCheck padic_limit_check(const std::vector<VolkenbornPartial>& partials,
                             const ExactRational& target, std::uint64_t p);

}  // namespace padicflats
