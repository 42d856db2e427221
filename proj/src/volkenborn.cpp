#include "padicflats/volkenborn.hpp"

#include "padicflats/errors.hpp"
#include "padicflats/jacobian.hpp"
#include "padicflats/parallel.hpp"

namespace padicflats {

PolynomialIntegrand::PolynomialIntegrand(int variables, std::vector<Term> terms, std::string name)
    : variables_(variables), terms_(std::move(terms)), name_(std::move(name)), denominator_(1),
      numerator_(variables) {
  if (variables < 0) throw InvalidArgument("integrand needs k >= 0 variables");
  for (const auto& [c, e] : terms_) {
    if (static_cast<int>(e.size()) != variables) {
      throw InvalidArgument("exponent vector has length " + std::to_string(e.size()) +
                            ", expected " + std::to_string(variables));
    }
    for (int x : e) {
      if (x < 0) throw InvalidArgument("negative exponent in integrand");
    }
    mpz_lcm(denominator_.get_mpz_t(), denominator_.get_mpz_t(), c.get_den_mpz_t());
  }
  for (const auto& [c, e] : terms_) {
    const ExactRational scaled = c * ExactRational(denominator_);
    numerator_.add_term(e, scaled.get_num());
  }
}

PolynomialIntegrand PolynomialIntegrand::from_polynomial(const IntPolynomial& f, std::string name) {
  std::vector<Term> terms;
  for (const auto& [e, c] : f.terms()) terms.emplace_back(ExactRational(c), e);
  return PolynomialIntegrand(f.nvars(), std::move(terms), std::move(name));
}

PolynomialIntegrand PolynomialIntegrand::constant(int variables, const ExactRational& c) {
  return PolynomialIntegrand(variables, {{c, Exponents(variables, 0)}},
                             "constant " + to_fraction_string(c));
}

ExactRational PolynomialIntegrand::evaluate(const std::vector<BigInt>& point) const {
  ExactRational r(numerator_.evaluate(point), denominator_);
  r.canonicalize();
  return r;
}

PolynomialIntegrand cubic_det_integrand() {
  return PolynomialIntegrand::from_polynomial(cubic_det_polynomial(), "cubic-det");
}

VolkenbornPartial volkenborn_partial(const PolynomialIntegrand& f, std::uint64_t p, int level,
                                     const EngineOptions& options) {
  if (level < 0) throw InvalidArgument("level must be >= 0");
  const int k = f.variables();
  const BigInt q_big = int_power(p, static_cast<unsigned>(level));
  BigInt total_big = 1;
  for (int i = 0; i < k; ++i) {
    total_big *= q_big;
    if (total_big > BigInt(static_cast<unsigned long>(options.guard))) {
      throw TooLarge("Volkenborn sum over " + std::to_string(p) + "^" +
                     std::to_string(static_cast<long>(k) * level) + " points exceeds the guard of " +
                     std::to_string(options.guard));
    }
  }
  const std::uint64_t q = q_big.get_ui();
  const std::uint64_t total = total_big.get_ui();

  // Integer terms as (coefficient, exponents); each worker walks its own
  // index range with an odometer.
  std::vector<std::pair<BigInt, Exponents>> terms;
  for (const auto& [e, c] : f.scaled_numerator().terms()) terms.emplace_back(c, e);

  const unsigned workers = resolve_workers(options.workers);
  std::vector<BigInt> partial(workers, 0);
  parallel_chunks(total, workers, [&](unsigned w, std::uint64_t begin, std::uint64_t end) {
    if (begin >= end) return;
    std::vector<std::uint64_t> a(k);
    std::uint64_t rest = begin;
    for (auto& x : a) {
      x = rest % q;
      rest /= q;
    }
    BigInt acc = 0, term, power;
    for (std::uint64_t i = begin; i < end; ++i) {
      for (const auto& [c, e] : terms) {
        term = c;
        for (int j = 0; j < k; ++j) {
          if (e[j] == 0) continue;
          mpz_ui_pow_ui(power.get_mpz_t(), a[j], e[j]);
          term *= power;
        }
        acc += term;
      }
      for (auto& x : a) {
        if (++x < q) break;
        x = 0;
      }
    }
    partial[w] = acc;
  });
  BigInt raw = 0;
  for (const auto& s : partial) raw += s;

  VolkenbornPartial out;
  out.level = level;
  out.prime = p;
  out.raw_sum = ExactRational(raw, f.denominator());
  out.raw_sum.canonicalize();
  out.normalized_sum = out.raw_sum / ExactRational(total_big);
  return out;
}

ExactRational cubic_det_raw_sum_formula(std::uint64_t p, int level) {
  const BigInt q = int_power(p, static_cast<unsigned>(level));
  ExactRational r(int_power(p, static_cast<unsigned>(6 * level)) * (q - 1) * (q - 1) *
                      (5 * q * q + q - 4),
                  BigInt(36));
  r.canonicalize();
  return r;
}

LimitCheck padic_limit_check(const std::vector<VolkenbornPartial>& partials,
                             const ExactRational& target, std::uint64_t p) {
  LimitCheck check;
  check.prime = p;
  check.target = target;
  check.pass = true;
  for (const auto& s : partials) {
    const auto v = p_valuation(ExactRational(s.normalized_sum - target), p);
    check.valuations.emplace_back(s.level, v);
    if (v && *v < s.level) check.pass = false;
  }
  return check;
}

}  // namespace padicflats
