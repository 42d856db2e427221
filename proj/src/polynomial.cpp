#include "padicflats/polynomial.hpp"

namespace padicflats {

namespace {

void fill_monomials(int remaining, int var, Exponents& current, std::vector<Exponents>& out) {
  const int nvars = static_cast<int>(current.size());
  if (var == nvars - 1) {
    current[var] = remaining;
    out.push_back(current);
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    current[var] = e;
    fill_monomials(remaining - e, var + 1, current, out);
  }
  current[var] = 0;
}

}  // namespace

std::vector<Exponents> monomials(int degree, int nvars) {
  if (degree < 0 || nvars < 1) throw InvalidArgument("monomials need degree >= 0, nvars >= 1");
  std::vector<Exponents> out;
  Exponents current(nvars, 0);
  fill_monomials(degree, 0, current, out);
  return out;
}

std::size_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::size_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::string exponent_label(const Exponents& e) {
  bool wide = false;
  for (int x : e) wide = wide || x > 9;
  std::string out;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (wide && i > 0) out += '.';
    out += std::to_string(e[i]);
  }
  return out;
}

IntPolynomial IntPolynomial::constant(int nvars, const BigInt& c) {
  IntPolynomial p(nvars);
  p.add_term(Exponents(nvars, 0), c);
  return p;
}

IntPolynomial IntPolynomial::variable(int nvars, int index) {
  Exponents e(nvars, 0);
  e.at(index) = 1;
  return monomial(e, 1);
}

IntPolynomial IntPolynomial::monomial(const Exponents& e, const BigInt& c) {
  IntPolynomial p(static_cast<int>(e.size()));
  p.add_term(e, c);
  return p;
}

BigInt IntPolynomial::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? BigInt(0) : it->second;
}

void IntPolynomial::add_term(const Exponents& e, const BigInt& c) {
  if (static_cast<int>(e.size()) != nvars_) throw LengthMismatch("exponent vector length");
  for (int x : e) {
    if (x < 0) throw InvalidArgument("negative exponent");
  }
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

IntPolynomial IntPolynomial::operator+(const IntPolynomial& other) const {
  if (nvars_ != other.nvars_) throw InvalidArgument("polynomial variable counts differ");
  IntPolynomial out = *this;
  for (const auto& [e, c] : other.terms_) out.add_term(e, c);
  return out;
}

IntPolynomial IntPolynomial::operator-(const IntPolynomial& other) const {
  return *this + other.scaled(-1);
}

IntPolynomial IntPolynomial::operator*(const IntPolynomial& other) const {
  if (nvars_ != other.nvars_) throw InvalidArgument("polynomial variable counts differ");
  IntPolynomial out(nvars_);
  Exponents e(nvars_);
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : other.terms_) {
      for (int i = 0; i < nvars_; ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

IntPolynomial IntPolynomial::scaled(const BigInt& c) const {
  IntPolynomial out(nvars_);
  for (const auto& [e, x] : terms_) out.add_term(e, x * c);
  return out;
}

IntPolynomial IntPolynomial::pow(unsigned e) const {
  IntPolynomial result = constant(nvars_, 1);
  IntPolynomial base = *this;
  while (e) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

IntPolynomial IntPolynomial::reduced(const BigInt& modulus) const {
  IntPolynomial out(nvars_);
  for (const auto& [e, c] : terms_) {
    BigInt r;
    mpz_fdiv_r(r.get_mpz_t(), c.get_mpz_t(), modulus.get_mpz_t());
    out.add_term(e, r);
  }
  return out;
}

BigInt IntPolynomial::evaluate(const std::vector<BigInt>& point) const {
  if (static_cast<int>(point.size()) != nvars_) throw LengthMismatch("evaluation point length");
  BigInt total = 0;
  BigInt term;
  for (const auto& [e, c] : terms_) {
    term = c;
    for (int i = 0; i < nvars_; ++i) {
      for (int k = 0; k < e[i]; ++k) term *= point[i];
    }
    total += term;
  }
  return total;
}

}  // namespace padicflats
