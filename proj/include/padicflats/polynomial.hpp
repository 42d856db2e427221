#pragma once

// Sparse multivariate polynomials with integer coefficients, plus the
// monomial enumeration order used across the library.

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "padicflats/padic.hpp"

namespace padicflats {

using Exponents = std::vector<int>;

/// All exponent vectors of total degree `degree` in `nvars` variables, in
/// descending lexicographic order: x0^d first, x_{nvars-1}^d last.
std::vector<Exponents> monomials(int degree, int nvars);

/// C(n, k) for small arguments.
std::size_t binomial(int n, int k);

/// Digits concatenated ("2010"); separated by '.' if any exponent exceeds 9.
std::string exponent_label(const Exponents& e);

class IntPolynomial {
 public:
  explicit IntPolynomial(int nvars) : nvars_(nvars) {}

  static IntPolynomial constant(int nvars, const BigInt& c);
  static IntPolynomial variable(int nvars, int index);
  static IntPolynomial monomial(const Exponents& e, const BigInt& c);

  int nvars() const { return nvars_; }
  const std::map<Exponents, BigInt>& terms() const { return terms_; }
  BigInt coefficient(const Exponents& e) const;
  void add_term(const Exponents& e, const BigInt& c);

  IntPolynomial operator+(const IntPolynomial& other) const;
  IntPolynomial operator-(const IntPolynomial& other) const;
  IntPolynomial operator*(const IntPolynomial& other) const;
  IntPolynomial scaled(const BigInt& c) const;
  IntPolynomial pow(unsigned e) const;
  /// Coefficients reduced into [0, modulus); zero terms dropped.
  IntPolynomial reduced(const BigInt& modulus) const;

  BigInt evaluate(const std::vector<BigInt>& point) const;

  friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;

 private:
  int nvars_;
  std::map<Exponents, BigInt> terms_;
};

}  // namespace padicflats
