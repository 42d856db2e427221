#pragma once

// Finite-precision p-adic integers: residues modulo p^m with an explicit
// prime and precision, valuations, absolute values and exact rationals.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "padicflats/errors.hpp"

namespace padicflats {

using ExactRational = mpq_class;
using BigInt = mpz_class;

/// Deterministic primality test, exact for every 64-bit input.
bool is_prime(std::uint64_t n);

/// Immutable (p, m) pair. Copies share the cached modulus p^m.
class PadicContext {
 public:
  /// Throws InvalidArgument unless `prime` is prime and `precision >= 1`.
  PadicContext(std::uint64_t prime, int precision);

  std::uint64_t prime() const { return data_->prime; }
  int precision() const { return data_->precision; }
  /// p^m
  const BigInt& modulus() const { return data_->modulus; }
  /// p^k for 0 <= k <= m.
  const BigInt& power(int k) const;

  /// The same prime at another precision.
  PadicContext with_precision(int precision) const { return {prime(), precision}; }

  friend bool operator==(const PadicContext& a, const PadicContext& b) {
    return a.prime() == b.prime() && a.precision() == b.precision();
  }

 private:
  struct Data {
    std::uint64_t prime;
    int precision;
    BigInt modulus;
    std::vector<BigInt> powers;
  };
  std::shared_ptr<const Data> data_;
};

/// v_p of a truncated element: either an exact valuation below the precision
/// or "at least m" when the residue is zero.
class Valuation {
 public:
  static Valuation finite(int v) { return Valuation(v, false); }
  static Valuation at_least(int m) { return Valuation(m, true); }

  bool is_finite() const { return !censored_; }
  /// For a finite valuation the exact value, otherwise the precision m.
  int value() const { return value_; }

  friend bool operator==(const Valuation&, const Valuation&) = default;
  /// AtLeast(m) is ordered above every finite valuation.
  friend std::strong_ordering operator<=>(const Valuation& a, const Valuation& b) {
    if (a.censored_ != b.censored_) {
      return a.censored_ ? std::strong_ordering::greater : std::strong_ordering::less;
    }
    return a.value_ <=> b.value_;
  }

  std::string to_string() const;

 private:
  Valuation(int v, bool censored) : value_(v), censored_(censored) {}
  int value_;
  bool censored_;
};

/// Closed interval [lo, hi] of exact rationals with 0 <= lo <= hi.
struct BracketedValue {
  ExactRational lo;
  ExactRational hi;

  static BracketedValue point(const ExactRational& x) { return {x, x}; }

  ExactRational width() const { return hi - lo; }
  ExactRational midpoint() const { return (lo + hi) / 2; }
  bool contains(const ExactRational& x) const { return lo <= x && x <= hi; }
  /// Both ends scaled by a nonnegative factor.
  BracketedValue scaled(const ExactRational& factor) const { return {lo * factor, hi * factor}; }

  friend bool operator==(const BracketedValue&, const BracketedValue&) = default;
};

/// A residue modulo p^m together with its context.
class PadicApprox {
 public:
  /// Reduces `value` into [0, p^m).
  PadicApprox(PadicContext ctx, const BigInt& value);
  PadicApprox(PadicContext ctx, long value) : PadicApprox(std::move(ctx), BigInt(value)) {}

  const PadicContext& context() const { return ctx_; }
  const BigInt& residue() const { return residue_; }
  bool is_zero() const { return residue_ == 0; }

  PadicApprox operator+(const PadicApprox& other) const;
  PadicApprox operator-(const PadicApprox& other) const;
  PadicApprox operator*(const PadicApprox& other) const;
  PadicApprox operator-() const;

  /// Reduction to a lower precision m' <= m.
  PadicApprox truncated(int precision) const;

  friend bool operator==(const PadicApprox& a, const PadicApprox& b) {
    return a.ctx_ == b.ctx_ && a.residue_ == b.residue_;
  }

 private:
  void require_same_context(const PadicApprox& other) const;

  PadicContext ctx_;
  BigInt residue_;
};

Valuation valuation(const PadicApprox& x);

/// |x|_p as an interval; a zero residue is censored to [0, p^-m].
BracketedValue abs_p(const PadicApprox& x);

/// The residue r with r * den == num (mod p^m). Throws NonUnitDenominator
/// when p divides the denominator.
PadicApprox padic_of_rational(const ExactRational& q, const PadicContext& ctx);

// Exact helpers shared by the other modules.

/// Largest v with p^v | x; x must be nonzero.
int p_valuation(const BigInt& x, std::uint64_t p);
/// v_p(num) - v_p(den); nullopt for zero.
std::optional<int> p_valuation(const ExactRational& q, std::uint64_t p);
/// p^e for any integer e, as an exact rational.
ExactRational rational_power(std::uint64_t p, int e);
/// p^e for e >= 0.
BigInt int_power(std::uint64_t p, unsigned e);

/// Always "num/den", also for integers ("1/1").
std::string to_fraction_string(const ExactRational& q);
/// Parses "num/den" or "num". Throws InvalidArgument.
ExactRational parse_rational(const std::string& text);
/// Lossy decimal rendering with the given significant digits.
std::string to_decimal_string(const ExactRational& q, int significant = 12);
double to_double(const ExactRational& q);

}  // namespace padicflats
