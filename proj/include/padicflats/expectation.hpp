#pragma once

// E|det J|_p by exhaustive enumeration or Monte Carlo, the Kac-Rice assembly
// of expected flat counts, closed forms, and the Hensel point-count check.

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "padicflats/jacobian.hpp"
#include "padicflats/padic.hpp"
#include "padicflats/sampling.hpp"

namespace padicflats {

inline constexpr std::uint64_t kDefaultGuard = 100'000'000;
inline constexpr int kDefaultMcPrecision = 20;

struct EngineOptions {
  /// Maximum number of enumerated tuples.
  std::uint64_t guard = kDefaultGuard;
  /// 0 = one per logical core. Results do not depend on this value.
  unsigned workers = 0;
};

/// counts[v] for v < m is the number of determinants of valuation v;
/// counts[m] the number that vanish mod p^m.
struct ValuationHistogram {
  std::uint64_t prime = 0;
  int precision = 0;
  std::vector<std::uint64_t> counts;

  std::uint64_t total() const;
  std::uint64_t censored() const { return counts.back(); }
  /// [sum c_v p^-v, same + c_m p^-m] / total
  BracketedValue bracket() const;
  /// Mean and standard error of the per-sample bracket midpoints.
  double midpoint_mean() const;
  double standard_error() const;

  void merge(const ValuationHistogram& other);
};

struct McEstimate {
  BracketedValue mean_bracket;
  double std_error = 0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  ValuationHistogram histogram;

  /// True when target lies within z standard errors of the bracket.
  bool consistent_with(const ExactRational& target, double z = 4.0) const;
};

enum class Method { Exact, MonteCarlo };
std::string to_string(Method method);

/// Throws TooLarge when p^(m * var_count) exceeds the guard.
ValuationHistogram exact_det_histogram(const JacobianTemplate& t, const PadicContext& ctx,
                                       const EngineOptions& options = {});
BracketedValue exact_det_expectation(const JacobianTemplate& t, const PadicContext& ctx,
                                     const EngineOptions& options = {});

/// Sample i draws from stream.substream(i). Requires samples >= 100.
McEstimate mc_det_expectation(const JacobianTemplate& t, const PadicContext& ctx,
                              const SeededStream& stream, std::uint64_t samples,
                              const EngineOptions& options = {});

struct FlatCountParams {
  Method method = Method::Exact;
  /// 0: the finest precision the guard allows for exact runs,
  /// kDefaultMcPrecision for Monte Carlo.
  int precision = 0;
  std::uint64_t samples = 200'000;
  std::uint64_t seed = 0;
  EngineOptions engine;
};

struct FlatCountResult {
  DegreeProfile profile;
  std::uint64_t prime = 0;
  int precision = 0;
  Method method = Method::Exact;
  ExactRational grassmannian_factor;
  std::variant<BracketedValue, McEstimate> det_expectation;
  /// grassmannian_factor * det bracket
  BracketedValue expected_count;
  /// grassmannian_factor * Monte Carlo standard error; 0 for exact runs.
  double std_error = 0;

  const BracketedValue& det_bracket() const;
  /// Exact: bracket containment. Monte Carlo: within z standard errors.
  bool consistent_with(const ExactRational& count, double z = 4.0) const;
};

/// Throws NotAdmissible, TooLarge.
FlatCountResult expected_flats(const DegreeProfile& profile, std::uint64_t prime,
                               const FlatCountParams& params);

enum class ClosedFormKind { Points, DetMatrix, Cubic, Quadrics, LimsupBound, LowerBound };

struct ClosedFormCase {
  ClosedFormKind kind;
  int n = 0;
  int k = 0;

  static ClosedFormCase points(int n) { return {ClosedFormKind::Points, n, 0}; }
  static ClosedFormCase detmatrix(int n) { return {ClosedFormKind::DetMatrix, n, 0}; }
  static ClosedFormCase cubic() { return {ClosedFormKind::Cubic, 3, 1}; }
  static ClosedFormCase quadrics() { return {ClosedFormKind::Quadrics, 4, 1}; }
  static ClosedFormCase limsup_bound() { return {ClosedFormKind::LimsupBound}; }
  static ClosedFormCase lower_bound(int k, int n) { return {ClosedFormKind::LowerBound, n, k}; }
};

/// points(n): 1.  detmatrix(n): (p-1)p^n / (p^{n+1}-1).
/// cubic: (p^3-1)(p^2+1)/(p^5-1) lines on a cubic surface.  quadrics: 1.
/// limsup_bound: 1/((1-1/p)(1-1/p^2)).  lower_bound(k,n): (1-(k+1)/p)^{n-k}.
ExactRational closed_form(const ClosedFormCase& c, std::uint64_t prime);

/// Known expected count for points (k=0, nu=n), the cubic surface and the
/// two-quadrics profile; nullopt otherwise.
std::optional<ExactRational> reference_count(const DegreeProfile& profile, std::uint64_t prime);

/// Number of points of P^n(F_p) where all n polynomials vanish and the
/// n x (n+1) Jacobian has rank n. Coefficients must be taken mod p (m = 1).
std::uint64_t smooth_projective_zero_count(const std::vector<CoefficientAssignment>& system, int n);

struct SmoothCountSummary {
  double mean = 0;
  double std_error = 0;
  std::uint64_t systems = 0;
};

/// Averages smooth_projective_zero_count over random systems of the given
/// degrees (system i draws from SeededStream(seed).substream(i)).
SmoothCountSummary mean_smooth_zero_count(const std::vector<int>& degrees, int n,
                                          std::uint64_t prime, std::uint64_t systems,
                                          std::uint64_t seed, const EngineOptions& options = {});

}  // namespace padicflats
