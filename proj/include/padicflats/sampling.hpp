#pragma once

// Reproducible uniform sampling of truncated p-adic integers.
//
// SeededStream is counter based: draw i of stream (seed, index) is a fixed
// function of (seed, index, i), so any partition of work over threads sees
// the same numbers.

#include <cstdint>
#include <vector>

#include "padicflats/linalg.hpp"
#include "padicflats/padic.hpp"
#include "padicflats/polynomial.hpp"
#include "padicflats/residue_ring.hpp"

namespace padicflats {

class SeededStream {
 public:
  explicit SeededStream(std::uint64_t seed, std::uint64_t index = 0);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t index() const { return index_; }
  std::uint64_t position() const { return counter_; }

  /// The next 64 random bits.
  std::uint64_t next();
  /// Multiply-high map onto [0, bound); relative bias at most bound / 2^64.
  std::uint64_t below(std::uint64_t bound);
  /// An independent stream derived from this one's (seed, index) and `k`.
  SeededStream substream(std::uint64_t k) const;

 private:
  std::uint64_t seed_;
  std::uint64_t index_;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Uniform residue in [0, p^m), built from base-p digit chunks.
PadicApprox sample_uniform(const PadicContext& ctx, SeededStream& stream);

/// Word-sized fast path of sample_uniform; same law.
std::uint64_t sample_residue(const WordRing& ring, SeededStream& stream);
BigInt sample_residue(const BigRing& ring, SeededStream& stream);

/// Coefficients of a homogeneous polynomial of degree d in variables x_0..x_n,
/// stored in the descending-lex monomial order.
class CoefficientAssignment {
 public:
  CoefficientAssignment(PadicContext ctx, int degree, int n, std::vector<PadicApprox> values);

  const PadicContext& context() const { return ctx_; }
  int degree() const { return degree_; }
  int n() const { return n_; }
  const std::vector<Exponents>& monomials() const { return monomials_; }
  const std::vector<PadicApprox>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }

  /// Throws InvalidArgument for an exponent not of total degree d.
  const PadicApprox& at(const Exponents& alpha) const;

  IntPolynomial to_polynomial() const;

  friend bool operator==(const CoefficientAssignment& a, const CoefficientAssignment& b) {
    return a.degree_ == b.degree_ && a.n_ == b.n_ && a.values_ == b.values_;
  }

 private:
  PadicContext ctx_;
  int degree_;
  int n_;
  std::vector<Exponents> monomials_;
  std::vector<PadicApprox> values_;
};

/// D_{d,n} = C(d+n, d) independent uniform coefficients.
CoefficientAssignment sample_polynomial(int d, int n, const PadicContext& ctx, SeededStream& stream);

/// Coefficients of y -> f(g y). Throws NotInvertible when g is singular mod p.
CoefficientAssignment change_variables(const CoefficientAssignment& f, const PadicMatrix& g);

}  // namespace padicflats
