#include "padicflats/padic.hpp"

#include <cmath>
#include <cstdio>
#include <vector>

namespace padicflats {

namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These witnesses are sufficient for all n < 2^64.
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

PadicContext::PadicContext(std::uint64_t prime, int precision) {
  if (!is_prime(prime)) {
    throw InvalidArgument("p = " + std::to_string(prime) + " is not prime");
  }
  if (precision < 1) {
    throw InvalidArgument("precision must be >= 1, got " + std::to_string(precision));
  }
  auto data = std::make_shared<Data>();
  data->prime = prime;
  data->precision = precision;
  data->powers.reserve(precision + 1);
  BigInt pk = 1;
  for (int k = 0; k <= precision; ++k) {
    data->powers.push_back(pk);
    pk *= static_cast<unsigned long>(prime);
  }
  data->modulus = data->powers.back();
  data_ = std::move(data);
}

const BigInt& PadicContext::power(int k) const {
  if (k < 0 || k > precision()) {
    throw InvalidArgument("power index out of range");
  }
  return data_->powers[k];
}

std::string Valuation::to_string() const {
  return censored_ ? "AtLeast(" + std::to_string(value_) + ")"
                   : "Finite(" + std::to_string(value_) + ")";
}

PadicApprox::PadicApprox(PadicContext ctx, const BigInt& value) : ctx_(std::move(ctx)) {
  mpz_fdiv_r(residue_.get_mpz_t(), value.get_mpz_t(), ctx_.modulus().get_mpz_t());
}

void PadicApprox::require_same_context(const PadicApprox& other) const {
  if (!(ctx_ == other.ctx_)) {
    throw InvalidArgument("p-adic operands use different contexts");
  }
}

PadicApprox PadicApprox::operator+(const PadicApprox& other) const {
  require_same_context(other);
  return {ctx_, residue_ + other.residue_};
}

PadicApprox PadicApprox::operator-(const PadicApprox& other) const {
  require_same_context(other);
  return {ctx_, residue_ - other.residue_};
}

PadicApprox PadicApprox::operator*(const PadicApprox& other) const {
  require_same_context(other);
  return {ctx_, residue_ * other.residue_};
}

PadicApprox PadicApprox::operator-() const { return {ctx_, -residue_}; }

PadicApprox PadicApprox::truncated(int precision) const {
  if (precision > ctx_.precision()) {
    throw InvalidArgument("cannot raise the precision of a truncated element");
  }
  return {ctx_.with_precision(precision), residue_};
}

int p_valuation(const BigInt& x, std::uint64_t p) {
  if (x == 0) throw InvalidArgument("valuation of zero");
  BigInt prime = static_cast<unsigned long>(p);
  BigInt rest;
  return static_cast<int>(mpz_remove(rest.get_mpz_t(), x.get_mpz_t(), prime.get_mpz_t()));
}

std::optional<int> p_valuation(const ExactRational& q, std::uint64_t p) {
  if (q == 0) return std::nullopt;
  return p_valuation(BigInt(q.get_num()), p) - p_valuation(BigInt(q.get_den()), p);
}

Valuation valuation(const PadicApprox& x) {
  const int m = x.context().precision();
  if (x.is_zero()) return Valuation::at_least(m);
  return Valuation::finite(p_valuation(x.residue(), x.context().prime()));
}

BracketedValue abs_p(const PadicApprox& x) {
  const auto v = valuation(x);
  const auto p = x.context().prime();
  if (v.is_finite()) return BracketedValue::point(rational_power(p, -v.value()));
  return {ExactRational(0), rational_power(p, -v.value())};
}

PadicApprox padic_of_rational(const ExactRational& q, const PadicContext& ctx) {
  const BigInt& den = q.get_den();
  BigInt inverse;
  if (mpz_invert(inverse.get_mpz_t(), den.get_mpz_t(), ctx.modulus().get_mpz_t()) == 0) {
    throw NonUnitDenominator("denominator " + den.get_str() + " is divisible by p = " +
                             std::to_string(ctx.prime()));
  }
  return {ctx, BigInt(q.get_num()) * inverse};
}

BigInt int_power(std::uint64_t p, unsigned e) {
  BigInt r;
  BigInt base = static_cast<unsigned long>(p);
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

ExactRational rational_power(std::uint64_t p, int e) {
  if (e >= 0) return ExactRational(int_power(p, static_cast<unsigned>(e)));
  ExactRational r(BigInt(1), int_power(p, static_cast<unsigned>(-e)));
  r.canonicalize();
  return r;
}

std::string to_fraction_string(const ExactRational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

ExactRational parse_rational(const std::string& text) {
  ExactRational q;
  if (text.empty() || q.set_str(text, 10) != 0 || q.get_den() == 0) {
    throw InvalidArgument("not a rational number: '" + text + "'");
  }
  q.canonicalize();
  return q;
}

double to_double(const ExactRational& q) { return q.get_d(); }

std::string to_decimal_string(const ExactRational& q, int significant) {
  mpf_class f(q, 256);
  // gmp_snprintf handles values far outside the double range.
  char buffer[128];
  gmp_snprintf(buffer, sizeof buffer, "%.*Fg", significant, f.get_mpf_t());
  return buffer;
}

}  // namespace padicflats
