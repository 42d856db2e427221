#include "padicflats/sampling.hpp"

#include <algorithm>
#include <string>

namespace padicflats {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Largest j with p^j <= 2^32, and p^j. Primes above 2^32 use single digits.
std::pair<int, std::uint64_t> digit_chunk(std::uint64_t p) {
  if (p > (std::uint64_t{1} << 32)) return {1, p};
  int j = 0;
  std::uint64_t q = 1;
  while (q * p <= (std::uint64_t{1} << 32)) {
    q *= p;
    ++j;
  }
  return {j, q};
}

}  // namespace

SeededStream::SeededStream(std::uint64_t seed, std::uint64_t index)
    : seed_(seed), index_(index), key_(mix64(mix64(seed) + kGolden * (index + 1))) {}

std::uint64_t SeededStream::next() {
  ++counter_;
  return mix64(key_ + kGolden * counter_);
}

std::uint64_t SeededStream::below(std::uint64_t bound) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(next()) * bound) >> 64);
}

SeededStream SeededStream::substream(std::uint64_t k) const {
  return SeededStream(seed_, mix64(index_ * kGolden + mix64(k + 1)));
}

std::uint64_t sample_residue(const WordRing& ring, SeededStream& stream) {
  const auto [chunk, chunk_mod] = digit_chunk(ring.prime());
  std::uint64_t value = 0;
  int digits = 0;
  const int m = ring.precision();
  while (digits < m) {
    const int take = std::min(chunk, m - digits);
    const std::uint64_t bound = take == chunk ? chunk_mod : ring.power(take);
    value += stream.below(bound) * ring.power(digits);
    digits += take;
  }
  return value;
}

BigInt sample_residue(const BigRing& ring, SeededStream& stream) {
  const std::uint64_t p = ring.prime();
  const auto [chunk, chunk_mod] = digit_chunk(p);
  BigInt value = 0;
  BigInt scale = 1;
  int digits = 0;
  const int m = ring.precision();
  while (digits < m) {
    const int take = std::min(chunk, m - digits);
    std::uint64_t bound = 1;
    for (int i = 0; i < take; ++i) bound *= p;
    value += scale * BigInt(static_cast<unsigned long>(stream.below(bound)));
    scale *= static_cast<unsigned long>(bound);
    digits += take;
  }
  return value;
}

PadicApprox sample_uniform(const PadicContext& ctx, SeededStream& stream) {
  if (WordRing::fits(ctx.prime(), ctx.precision())) {
    WordRing ring(ctx);
    return {ctx, ring.to_big(sample_residue(ring, stream))};
  }
  return {ctx, sample_residue(BigRing(ctx), stream)};
}

CoefficientAssignment::CoefficientAssignment(PadicContext ctx, int degree, int n,
                                             std::vector<PadicApprox> values)
    : ctx_(std::move(ctx)), degree_(degree), n_(n), values_(std::move(values)) {
  if (degree < 1 || n < 1) throw InvalidArgument("polynomials need d >= 1 and n >= 1");
  monomials_ = padicflats::monomials(degree, n + 1);
  if (values_.size() != monomials_.size()) {
    throw LengthMismatch("expected " + std::to_string(monomials_.size()) + " coefficients, got " +
                         std::to_string(values_.size()));
  }
  for (const auto& v : values_) {
    if (!(v.context() == ctx_)) throw InvalidArgument("coefficient context mismatch");
  }
}

const PadicApprox& CoefficientAssignment::at(const Exponents& alpha) const {
  // monomials_ is sorted descending.
  auto it = std::lower_bound(monomials_.begin(), monomials_.end(), alpha, std::greater<>());
  if (it == monomials_.end() || *it != alpha) {
    throw InvalidArgument("exponent " + exponent_label(alpha) + " is not a monomial of degree " +
                          std::to_string(degree_));
  }
  return values_[static_cast<std::size_t>(it - monomials_.begin())];
}

IntPolynomial CoefficientAssignment::to_polynomial() const {
  IntPolynomial f(n_ + 1);
  for (std::size_t i = 0; i < values_.size(); ++i) f.add_term(monomials_[i], values_[i].residue());
  return f;
}

CoefficientAssignment sample_polynomial(int d, int n, const PadicContext& ctx,
                                        SeededStream& stream) {
  if (d < 1 || n < 1) throw InvalidArgument("sample_polynomial needs d >= 1 and n >= 1");
  const std::size_t count = binomial(d + n, d);
  std::vector<PadicApprox> values;
  values.reserve(count);
  for (std::size_t i = 0; i < count; ++i) values.push_back(sample_uniform(ctx, stream));
  return {ctx, d, n, std::move(values)};
}

CoefficientAssignment change_variables(const CoefficientAssignment& f, const PadicMatrix& g) {
  const int vars = f.n() + 1;
  if (g.rows() != static_cast<std::size_t>(vars) || !g.is_square()) {
    throw InvalidArgument("change of variables needs a square matrix of size n+1");
  }
  if (!(g.context() == f.context())) throw InvalidArgument("matrix context mismatch");
  if (det_residue(g).residue() % static_cast<unsigned long>(f.context().prime()) == 0) {
    throw NotInvertible("change of variables is singular mod p");
  }
  const BigInt& modulus = f.context().modulus();
  // x_i = sum_j g_ij y_j
  std::vector<IntPolynomial> forms;
  for (int i = 0; i < vars; ++i) {
    IntPolynomial form(vars);
    for (int j = 0; j < vars; ++j) {
      Exponents e(vars, 0);
      e[j] = 1;
      form.add_term(e, g(i, j));
    }
    forms.push_back(std::move(form));
  }
  IntPolynomial result(vars);
  for (std::size_t t = 0; t < f.size(); ++t) {
    const auto& alpha = f.monomials()[t];
    IntPolynomial term = IntPolynomial::constant(vars, f.values()[t].residue());
    for (int i = 0; i < vars; ++i) {
      if (alpha[i] > 0) term = (term * forms[i].pow(alpha[i])).reduced(modulus);
    }
    result = (result + term).reduced(modulus);
  }
  std::vector<PadicApprox> values;
  values.reserve(f.size());
  for (const auto& alpha : f.monomials()) {
    values.emplace_back(f.context(), result.coefficient(alpha));
  }
  return {f.context(), f.degree(), f.n(), std::move(values)};
}

}  // namespace padicflats
