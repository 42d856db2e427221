#include "padicflats/expectation.hpp"

#include <cmath>
#include <limits>
#include <span>

#include "padicflats/elimination.hpp"
#include "padicflats/linalg.hpp"
#include "padicflats/parallel.hpp"
#include "padicflats/residue_ring.hpp"

namespace padicflats {

namespace {

/// base^exp, or nullopt when it exceeds `limit`.
std::optional<std::uint64_t> bounded_power(std::uint64_t base, std::uint64_t exp,
                                           std::uint64_t limit) {
  unsigned __int128 acc = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    acc *= base;
    if (acc > limit) return std::nullopt;
  }
  return static_cast<std::uint64_t>(acc);
}

ValuationHistogram empty_histogram(std::uint64_t p, int m) {
  return {p, m, std::vector<std::uint64_t>(static_cast<std::size_t>(m) + 1, 0)};
}

ValuationHistogram merge_all(const std::vector<ValuationHistogram>& parts) {
  ValuationHistogram out = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) out.merge(parts[i]);
  return out;
}

template <ResidueRing R>
ValuationHistogram mc_histogram(const R& ring, const JacobianTemplate& t,
                                const SeededStream& stream, std::uint64_t samples,
                                unsigned workers) {
  using T = typename R::value_type;
  const std::size_t d = t.size();
  const unsigned pool = resolve_workers(workers);
  std::vector<ValuationHistogram> parts(pool, empty_histogram(ring.prime(), ring.precision()));
  parallel_chunks(samples, pool, [&](unsigned w, std::uint64_t begin, std::uint64_t end) {
    std::vector<T> draws(t.var_count());
    std::vector<T> buffer(d * d);
    auto& counts = parts[w].counts;
    for (std::uint64_t i = begin; i < end; ++i) {
      SeededStream local = stream.substream(i);
      for (auto& x : draws) x = sample_residue(ring, local);
      instantiate_into<T>(t, draws, buffer, ring.zero());
      const auto out = eliminate_determinant(ring, std::span<T>(buffer), d, false);
      ++counts[static_cast<std::size_t>(out.valuation)];
    }
  });
  return merge_all(parts);
}

std::string format_count(std::uint64_t v) { return std::to_string(v); }

}  // namespace

std::uint64_t ValuationHistogram::total() const {
  std::uint64_t n = 0;
  for (auto c : counts) n += c;
  return n;
}

BracketedValue ValuationHistogram::bracket() const {
  const std::uint64_t n = total();
  if (n == 0) throw InvalidArgument("empty histogram");
  ExactRational lo = 0;
  for (int v = 0; v < precision; ++v) {
    lo += ExactRational(BigInt(static_cast<unsigned long>(counts[v]))) * rational_power(prime, -v);
  }
  ExactRational hi =
      lo + ExactRational(BigInt(static_cast<unsigned long>(censored()))) * rational_power(prime, -precision);
  const ExactRational denom(BigInt(static_cast<unsigned long>(n)));
  lo /= denom;
  hi /= denom;
  return {lo, hi};
}

namespace {

double midpoint_value(std::uint64_t p, int v, int m) {
  const double x = std::pow(static_cast<double>(p), -static_cast<double>(v));
  return v == m ? x / 2 : x;
}

}  // namespace

double ValuationHistogram::midpoint_mean() const {
  const double n = static_cast<double>(total());
  double s = 0;
  for (int v = 0; v <= precision; ++v) s += static_cast<double>(counts[v]) * midpoint_value(prime, v, precision);
  return s / n;
}

double ValuationHistogram::standard_error() const {
  const std::uint64_t n = total();
  if (n < 2) return 0;
  const double mean = midpoint_mean();
  double ss = 0;
  for (int v = 0; v <= precision; ++v) {
    const double dx = midpoint_value(prime, v, precision) - mean;
    ss += static_cast<double>(counts[v]) * dx * dx;
  }
  const double var = ss / static_cast<double>(n - 1);
  return std::sqrt(var / static_cast<double>(n));
}

void ValuationHistogram::merge(const ValuationHistogram& other) {
  if (other.prime != prime || other.precision != precision) {
    throw InvalidArgument("cannot merge histograms of different contexts");
  }
  for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += other.counts[i];
}

bool McEstimate::consistent_with(const ExactRational& target, double z) const {
  if (mean_bracket.contains(target)) return true;
  const double t = to_double(target);
  const double gap = t < to_double(mean_bracket.lo) ? to_double(mean_bracket.lo) - t
                                                    : t - to_double(mean_bracket.hi);
  return gap <= z * std_error;
}

std::string to_string(Method method) { return method == Method::Exact ? "exact" : "mc"; }

ValuationHistogram exact_det_histogram(const JacobianTemplate& t, const PadicContext& ctx,
                                       const EngineOptions& options) {
  const std::uint64_t p = ctx.prime();
  const int m = ctx.precision();
  const auto q = bounded_power(p, static_cast<std::uint64_t>(m), options.guard);
  const auto total = q ? bounded_power(*q, t.var_count(), options.guard) : std::nullopt;
  if (!total) {
    throw TooLarge("enumerating p^(m*" + std::to_string(t.var_count()) + ") tuples exceeds the guard of " +
                   format_count(options.guard));
  }
  WordRing ring(ctx);
  const std::size_t d = t.size();
  const std::size_t vars = t.var_count();
  const unsigned pool = resolve_workers(options.workers);
  std::vector<ValuationHistogram> parts(pool, empty_histogram(p, m));
  parallel_chunks(*total, pool, [&](unsigned w, std::uint64_t begin, std::uint64_t end) {
    if (begin >= end) return;
    // Odometer with variable 0 as the fastest digit.
    std::vector<std::uint64_t> draws(vars);
    std::uint64_t rest = begin;
    for (auto& x : draws) {
      x = rest % *q;
      rest /= *q;
    }
    std::vector<std::uint64_t> buffer(d * d);
    auto& counts = parts[w].counts;
    for (std::uint64_t i = begin; i < end; ++i) {
      instantiate_into<std::uint64_t>(t, draws, buffer, 0);
      const auto out = eliminate_determinant(ring, std::span<std::uint64_t>(buffer), d, false);
      ++counts[static_cast<std::size_t>(out.valuation)];
      for (auto& x : draws) {
        if (++x < *q) break;
        x = 0;
      }
    }
  });
  return merge_all(parts);
}

BracketedValue exact_det_expectation(const JacobianTemplate& t, const PadicContext& ctx,
                                     const EngineOptions& options) {
  return exact_det_histogram(t, ctx, options).bracket();
}

McEstimate mc_det_expectation(const JacobianTemplate& t, const PadicContext& ctx,
                              const SeededStream& stream, std::uint64_t samples,
                              const EngineOptions& options) {
  if (samples < 100) throw InvalidArgument("Monte Carlo needs at least 100 samples");
  ValuationHistogram hist =
      WordRing::fits(ctx.prime(), ctx.precision())
          ? mc_histogram(WordRing(ctx), t, stream, samples, options.workers)
          : mc_histogram(BigRing(ctx), t, stream, samples, options.workers);
  McEstimate est;
  est.mean_bracket = hist.bracket();
  est.std_error = hist.standard_error();
  est.samples = samples;
  est.seed = stream.seed();
  est.histogram = std::move(hist);
  return est;
}

const BracketedValue& FlatCountResult::det_bracket() const {
  if (const auto* b = std::get_if<BracketedValue>(&det_expectation)) return *b;
  return std::get<McEstimate>(det_expectation).mean_bracket;
}

bool FlatCountResult::consistent_with(const ExactRational& count, double z) const {
  if (expected_count.contains(count)) return true;
  if (method == Method::Exact) return false;
  const double t = to_double(count);
  const double gap = t < to_double(expected_count.lo) ? to_double(expected_count.lo) - t
                                                      : t - to_double(expected_count.hi);
  return gap <= z * std_error;
}

FlatCountResult expected_flats(const DegreeProfile& profile, std::uint64_t prime,
                               const FlatCountParams& params) {
  const JacobianTemplate t = build_template(profile);
  const VolumeTable table(prime);

  FlatCountResult result;
  result.profile = profile;
  result.prime = prime;
  result.method = params.method;
  result.grassmannian_factor = grassmannian_volume(profile.k, profile.n, table);

  int m = params.precision;
  if (params.method == Method::Exact) {
    if (m == 0) {
      // Finest precision whose enumeration fits the guard.
      while (bounded_power(prime, static_cast<std::uint64_t>(m + 1) * t.var_count(), params.engine.guard)) ++m;
      if (m == 0) {
        throw TooLarge("even precision 1 exceeds the enumeration guard for " + profile.to_string());
      }
    }
    const PadicContext ctx(prime, m);
    BracketedValue det = exact_det_expectation(t, ctx, params.engine);
    result.expected_count = det.scaled(result.grassmannian_factor);
    result.det_expectation = std::move(det);
  } else {
    if (m == 0) m = kDefaultMcPrecision;
    const PadicContext ctx(prime, m);
    McEstimate est = mc_det_expectation(t, ctx, SeededStream(params.seed), params.samples, params.engine);
    result.expected_count = est.mean_bracket.scaled(result.grassmannian_factor);
    result.std_error = est.std_error * to_double(result.grassmannian_factor);
    result.det_expectation = std::move(est);
  }
  result.precision = m;
  return result;
}

ExactRational closed_form(const ClosedFormCase& c, std::uint64_t prime) {
  if (!is_prime(prime)) throw InvalidArgument("p = " + std::to_string(prime) + " is not prime");
  const ExactRational p(BigInt(static_cast<unsigned long>(prime)));
  auto pw = [&](int e) { return rational_power(prime, e); };
  switch (c.kind) {
    case ClosedFormKind::Points:
      if (c.n < 1) throw InvalidArgument("points(n) needs n >= 1");
      return 1;
    case ClosedFormKind::DetMatrix:
      if (c.n < 1) throw InvalidArgument("detmatrix(n) needs n >= 1");
      return (p - 1) * pw(c.n) / (pw(c.n + 1) - 1);
    case ClosedFormKind::Cubic:
      return (pw(3) - 1) * (pw(2) + 1) / (pw(5) - 1);
    case ClosedFormKind::Quadrics:
      return 1;
    case ClosedFormKind::LimsupBound:
      return 1 / ((1 - 1 / p) * (1 - 1 / (p * p)));
    case ClosedFormKind::LowerBound: {
      if (c.k < 0 || c.k >= c.n) throw InvalidArgument("lower_bound(k,n) needs 0 <= k < n");
      const ExactRational base = 1 - ExactRational(c.k + 1) / p;
      ExactRational r = 1;
      for (int i = 0; i < c.n - c.k; ++i) r *= base;
      return r;
    }
  }
  throw InvalidArgument("unknown closed form");
}

std::optional<ExactRational> reference_count(const DegreeProfile& profile, std::uint64_t prime) {
  if (!check_codim(profile)) return std::nullopt;
  if (profile.k == 0 && static_cast<int>(profile.degrees.size()) == profile.n) {
    return closed_form(ClosedFormCase::points(profile.n), prime);
  }
  if (profile.n == 3 && profile.k == 1 && profile.degrees == std::vector<int>{3}) {
    return closed_form(ClosedFormCase::cubic(), prime);
  }
  if (profile.n == 4 && profile.k == 1 && profile.degrees == std::vector<int>{2, 2}) {
    return closed_form(ClosedFormCase::quadrics(), prime);
  }
  return std::nullopt;
}

namespace {

struct ModTerm {
  Exponents exponents;
  std::uint64_t coefficient;
};

/// Rank of a rows x cols matrix over F_p (destroys `a`).
int rank_mod_p(std::vector<std::uint64_t>& a, std::size_t rows, std::size_t cols, const WordRing& field) {
  int rank = 0;
  for (std::size_t c = 0; c < cols && static_cast<std::size_t>(rank) < rows; ++c) {
    std::size_t pivot = rows;
    for (std::size_t r = rank; r < rows; ++r) {
      if (a[r * cols + c] != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot == rows) continue;
    for (std::size_t j = 0; j < cols; ++j) std::swap(a[pivot * cols + j], a[rank * cols + j]);
    const auto inv = field.unit_inverse(a[rank * cols + c]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      const auto f = field.mul(a[r * cols + c], inv);
      if (f == 0) continue;
      for (std::size_t j = c; j < cols; ++j) {
        a[r * cols + j] = field.sub(a[r * cols + j], field.mul(f, a[rank * cols + j]));
      }
    }
    ++rank;
  }
  return rank;
}

std::uint64_t evaluate_terms(const std::vector<ModTerm>& terms,
                             const std::vector<std::vector<std::uint64_t>>& powers,
                             const WordRing& field) {
  std::uint64_t total = 0;
  for (const auto& term : terms) {
    std::uint64_t v = term.coefficient;
    for (std::size_t i = 0; i < term.exponents.size() && v != 0; ++i) {
      v = field.mul(v, powers[i][term.exponents[i]]);
    }
    total = field.add(total, v);
  }
  return total;
}

}  // namespace

std::uint64_t smooth_projective_zero_count(const std::vector<CoefficientAssignment>& system, int n) {
  if (n < 1 || static_cast<int>(system.size()) != n) {
    throw InvalidArgument("smooth_projective_zero_count needs exactly n polynomials");
  }
  const std::uint64_t p = system.front().context().prime();
  const WordRing field(p, 1);
  const int vars = n + 1;
  int max_degree = 0;

  // f_j and its partial derivatives, coefficients mod p.
  std::vector<std::vector<ModTerm>> values(n);
  std::vector<std::vector<std::vector<ModTerm>>> partials(n, std::vector<std::vector<ModTerm>>(vars));
  for (int j = 0; j < n; ++j) {
    const auto& f = system[j];
    if (f.n() != n || f.context().prime() != p) throw InvalidArgument("system polynomials disagree on n or p");
    max_degree = std::max(max_degree, f.degree());
    for (std::size_t t = 0; t < f.size(); ++t) {
      const std::uint64_t c = mpz_fdiv_ui(f.values()[t].residue().get_mpz_t(), static_cast<unsigned long>(p));
      if (c == 0) continue;
      const auto& e = f.monomials()[t];
      values[j].push_back({e, c});
      for (int i = 0; i < vars; ++i) {
        if (e[i] == 0) continue;
        const std::uint64_t dc = field.mul(c, static_cast<std::uint64_t>(e[i]) % p);
        if (dc == 0) continue;
        Exponents de = e;
        --de[i];
        partials[j][i].push_back({std::move(de), dc});
      }
    }
  }

  std::uint64_t count = 0;
  std::vector<std::uint64_t> point(vars);
  std::vector<std::vector<std::uint64_t>> powers(vars, std::vector<std::uint64_t>(max_degree + 1));
  std::vector<std::uint64_t> jac(static_cast<std::size_t>(n) * vars);
  // Normalized representatives: first nonzero coordinate equal to 1.
  for (int lead = 0; lead < vars; ++lead) {
    const int free = vars - lead - 1;
    std::uint64_t combos = 1;
    for (int i = 0; i < free; ++i) combos *= p;
    for (std::uint64_t idx = 0; idx < combos; ++idx) {
      std::uint64_t rest = idx;
      for (int i = 0; i < vars; ++i) {
        if (i < lead) point[i] = 0;
        else if (i == lead) point[i] = 1;
        else {
          point[i] = rest % p;
          rest /= p;
        }
        powers[i][0] = 1;
        for (int e = 1; e <= max_degree; ++e) powers[i][e] = field.mul(powers[i][e - 1], point[i]);
      }
      bool zero = true;
      for (int j = 0; j < n && zero; ++j) zero = evaluate_terms(values[j], powers, field) == 0;
      if (!zero) continue;
      for (int j = 0; j < n; ++j) {
        for (int i = 0; i < vars; ++i) jac[j * vars + i] = evaluate_terms(partials[j][i], powers, field);
      }
      if (rank_mod_p(jac, n, vars, field) == n) ++count;
    }
  }
  return count;
}

SmoothCountSummary mean_smooth_zero_count(const std::vector<int>& degrees, int n,
                                          std::uint64_t prime, std::uint64_t systems,
                                          std::uint64_t seed, const EngineOptions& options) {
  if (static_cast<int>(degrees.size()) != n) throw InvalidArgument("need exactly n degrees");
  if (systems < 2) throw InvalidArgument("need at least two systems");
  const PadicContext ctx(prime, 1);
  const SeededStream base(seed);
  const unsigned pool = resolve_workers(options.workers);
  std::vector<std::uint64_t> sums(pool, 0), squares(pool, 0);
  parallel_chunks(systems, pool, [&](unsigned w, std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t i = begin; i < end; ++i) {
      SeededStream local = base.substream(i);
      std::vector<CoefficientAssignment> system;
      system.reserve(degrees.size());
      for (int d : degrees) system.push_back(sample_polynomial(d, n, ctx, local));
      const std::uint64_t c = smooth_projective_zero_count(system, n);
      sums[w] += c;
      squares[w] += c * c;
    }
  });
  std::uint64_t s = 0, sq = 0;
  for (unsigned w = 0; w < pool; ++w) {
    s += sums[w];
    sq += squares[w];
  }
  const double nn = static_cast<double>(systems);
  const double mean = static_cast<double>(s) / nn;
  const double var = (static_cast<double>(sq) - nn * mean * mean) / (nn - 1);
  return {mean, std::sqrt(std::max(var, 0.0) / nn), systems};
}

}  // namespace padicflats
