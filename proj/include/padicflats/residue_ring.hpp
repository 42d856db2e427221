#pragma once

// Residue rings Z/p^m used by the hot loops. WordRing keeps residues in a
// machine word (p^m < 2^62); BigRing falls back to GMP. Both satisfy the
// ResidueRing concept consumed by the elimination kernels.

#include <gmpxx.h>

#include <bit>
#include <concepts>
#include <cstdint>
#include <vector>

#include "padicflats/padic.hpp"

namespace padicflats {

template <class R>
concept ResidueRing = requires(const R& r, const typename R::value_type& a) {
  { r.prime() } -> std::convertible_to<std::uint64_t>;
  { r.precision() } -> std::convertible_to<int>;
  { r.zero() } -> std::same_as<typename R::value_type>;
  { r.add(a, a) } -> std::same_as<typename R::value_type>;
  { r.sub(a, a) } -> std::same_as<typename R::value_type>;
  { r.mul(a, a) } -> std::same_as<typename R::value_type>;
  { r.is_zero(a) } -> std::same_as<bool>;
  /// precision() for zero
  { r.valuation(a) } -> std::same_as<int>;
  /// exact integer quotient of the representative by p^v
  { r.shift_down(a, 0) } -> std::same_as<typename R::value_type>;
  { r.unit_inverse(a) } -> std::same_as<typename R::value_type>;
  { r.to_big(a) } -> std::same_as<BigInt>;
};

class WordRing {
 public:
  using value_type = std::uint64_t;

  /// Largest modulus handled in a word (sums of two residues must not overflow).
  static constexpr std::uint64_t kMaxModulus = std::uint64_t{1} << 62;

  static bool fits(std::uint64_t p, int m);

  /// Requires fits(p, m).
  WordRing(std::uint64_t p, int m);
  explicit WordRing(const PadicContext& ctx) : WordRing(ctx.prime(), ctx.precision()) {}

  std::uint64_t prime() const { return p_; }
  int precision() const { return m_; }
  std::uint64_t modulus() const { return powers_.back(); }
  std::uint64_t power(int k) const { return powers_[k]; }

  value_type zero() const { return 0; }
  value_type reduce(std::uint64_t a) const { return a % modulus(); }
  value_type add(value_type a, value_type b) const {
    const auto s = a + b;
    return s >= modulus() ? s - modulus() : s;
  }
  value_type sub(value_type a, value_type b) const { return a >= b ? a - b : a + modulus() - b; }
  value_type neg(value_type a) const { return a == 0 ? 0 : modulus() - a; }
  value_type mul(value_type a, value_type b) const {
    return static_cast<value_type>(static_cast<unsigned __int128>(a) * b % modulus());
  }
  bool is_zero(value_type a) const { return a == 0; }

  int valuation(value_type a) const {
    if (a == 0) return m_;
    if (p_ == 2) return std::countr_zero(a);
    int v = 0;
    while (a % p_ == 0) {
      a /= p_;
      ++v;
    }
    return v;
  }
  value_type shift_down(value_type a, int v) const { return a / powers_[v]; }
  value_type unit_inverse(value_type u) const;
  BigInt to_big(value_type a) const { return BigInt(static_cast<unsigned long>(a)); }
  value_type from_big(const BigInt& a) const;

 private:
  std::uint64_t p_;
  int m_;
  std::vector<std::uint64_t> powers_;
};

class BigRing {
 public:
  using value_type = BigInt;

  explicit BigRing(PadicContext ctx) : ctx_(std::move(ctx)) {}

  std::uint64_t prime() const { return ctx_.prime(); }
  int precision() const { return ctx_.precision(); }
  const BigInt& modulus() const { return ctx_.modulus(); }

  value_type zero() const { return 0; }
  value_type reduce(const BigInt& a) const {
    BigInt r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), modulus().get_mpz_t());
    return r;
  }
  value_type add(const value_type& a, const value_type& b) const { return reduce(a + b); }
  value_type sub(const value_type& a, const value_type& b) const { return reduce(a - b); }
  value_type neg(const value_type& a) const { return reduce(-a); }
  value_type mul(const value_type& a, const value_type& b) const { return reduce(a * b); }
  bool is_zero(const value_type& a) const { return a == 0; }
  int valuation(const value_type& a) const {
    return a == 0 ? precision() : p_valuation(a, prime());
  }
  value_type shift_down(const value_type& a, int v) const {
    BigInt q;
    mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), ctx_.power(v).get_mpz_t());
    return q;
  }
  value_type unit_inverse(const value_type& u) const {
    BigInt r;
    mpz_invert(r.get_mpz_t(), u.get_mpz_t(), modulus().get_mpz_t());
    return r;
  }
  BigInt to_big(const value_type& a) const { return a; }
  value_type from_big(const BigInt& a) const { return reduce(a); }

 private:
  PadicContext ctx_;
};

static_assert(ResidueRing<WordRing>);
static_assert(ResidueRing<BigRing>);

}  // namespace padicflats
