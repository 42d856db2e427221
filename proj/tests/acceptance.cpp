// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "padicflats/counting.hpp"
#include "padicflats/expectation.hpp"
#include "padicflats/jacobian.hpp"
#include "padicflats/linalg.hpp"
#include "padicflats/sampling.hpp"
#include "padicflats/volkenborn.hpp"

using namespace padicflats;

namespace {

// Pinned tolerances.
constexpr double kZ = 4.0;                       // Monte Carlo standard errors
constexpr double kCubicCountWidth = 0.02;        // exact cubic count bracket width
constexpr double kLargePrimeGap = 1e-3;          // |cubic(101) - 1|
constexpr double kHenselGap = 0.15;              // |mean smooth count - 1|
constexpr std::uint64_t kMcSamples = 200'000;
constexpr std::uint64_t kHenselSystems = 20'000;

struct Criterion {
  int id;
  std::string title;
  double budget_seconds;
  std::function<bool(std::ostringstream&)> run;
};

std::string q(const ExactRational& x) { return to_fraction_string(x); }
std::string d(const ExactRational& x) { return to_decimal_string(x, 6); }

bool check(std::ostringstream& log, bool ok, const std::string& what) {
  if (!ok) log << " [failed: " << what << "]";
  return ok;
}

bool volumes(std::ostringstream& log) {
  bool ok = true;
  int cases = 0;
  for (std::uint64_t p : {2, 3, 5}) {
    for (int n = 1; n <= 2; ++n) {
      for (int m = 1; m <= 2; ++m) {
        const auto hist = det_histogram_all_matrices(n, p, m);
        const BigInt scale = int_power(p, static_cast<unsigned>(m * n * n));
        const VolumeTable table(p);
        const ExactRational gl = ExactRational(scale) * gl_volume(n, table);
        ok &= check(log, ExactRational(BigInt(static_cast<unsigned long>(hist.counts[0]))) == gl,
                    "GL count p=" + std::to_string(p) + " n=" + std::to_string(n) + " m=" + std::to_string(m));
        ++cases;
        for (int ell = 0; ell < m; ++ell) {
          const ExactRational level = ExactRational(scale) * det_level_volume(n, ell, table);
          ok &= check(log, ExactRational(BigInt(static_cast<unsigned long>(hist.counts[ell]))) == level,
                      "det level p=" + std::to_string(p) + " n=" + std::to_string(n) +
                          " m=" + std::to_string(m) + " ell=" + std::to_string(ell));
          ++cases;
        }
      }
    }
  }
  log << " " << cases << " identities";
  return ok;
}

bool counting_lemmas(std::ostringstream& log) {
  bool ok = true;
  int cases = 0;
  auto eq = [&](std::uint64_t got, const BigInt& want, const std::string& what) {
    ++cases;
    ok &= check(log, BigInt(static_cast<unsigned long>(got)) == want,
                what + " got " + std::to_string(got) + " want " + want.get_str());
  };
  for (int k : {1, 2}) {
    for (std::uint64_t p : {2, 3, 5}) eq(count_A(k, p), A_formula(k, p), "A");
  }
  eq(count_A(3, 2), A_formula(3, 2), "A(3,2)");
  for (std::uint64_t p : {2, 3, 5}) eq(count_B(1, p), B_formula(1, p), "B");
  eq(count_B(2, 2), B_formula(2, 2), "B(2,2)");
  for (int n : {1, 2}) {
    for (std::uint64_t p : {2, 3}) eq(count_singular_2x2(p, n), singular_2x2_formula(p, n), "S_n");
  }
  log << " " << cases << " identities";
  return ok;
}

bool fiber_lemmas(std::ostringstream& log) {
  bool ok = true;
  for (auto [p, n] : std::vector<std::pair<std::uint64_t, int>>{{2, 1}, {3, 1}, {2, 2}}) {
    const auto r = minor_fibers_3x2(p, n);
    const std::string tag = "3x2 (" + std::to_string(p) + "," + std::to_string(n) + ")";
    ok &= check(log, r.fibers_match([&](int m1) { return fiber_3x2_formula(p, n, m1); }), tag + " formula");
    ok &= check(log, r.depends_only_on_min_valuation(), tag + " m1 dependence");
    ok &= check(log, r.surjective(), tag + " surjective");
    log << " " << tag << ": " << r.fiber_sizes.size() << " targets";
  }
  const auto r = minor_fibers_4x3(2, 1);
  ok &= check(log, r.fibers_match([](int m1) { return fiber_4x3_formula(2, 1, m1); }), "4x3 formula");
  ok &= check(log, r.depends_only_on_min_valuation(), "4x3 m1 dependence");
  ok &= check(log, r.surjective(), "4x3 surjective");
  log << "; 4x3 (2,1): " << r.fiber_sizes.size() << " targets";
  return ok;
}

bool cubic_theorem(std::ostringstream& log) {
  const DegreeProfile cubic{3, 1, {3}};
  FlatCountParams exact;
  exact.method = Method::Exact;
  exact.precision = 3;
  const auto r = expected_flats(cubic, 2, exact);
  const ExactRational det_target(16, 31), count_target(35, 31);
  bool ok = true;
  ok &= check(log, r.det_bracket().contains(det_target), "E|det| bracket misses 16/31");
  ok &= check(log, r.expected_count.contains(count_target), "count bracket misses 35/31");
  ok &= check(log, to_double(r.expected_count.width()) < kCubicCountWidth,
              "count bracket width " + d(r.expected_count.width()) + " >= " + std::to_string(kCubicCountWidth));
  log << " exact p=2 m=3: E|det| in [" << d(r.det_bracket().lo) << ", " << d(r.det_bracket().hi)
      << "], count in [" << d(r.expected_count.lo) << ", " << d(r.expected_count.hi) << "]";

  FlatCountParams mc;
  mc.method = Method::MonteCarlo;
  mc.precision = 8;
  mc.samples = kMcSamples;
  mc.seed = 1;
  const auto s = expected_flats(cubic, 5, mc);
  const auto& est = std::get<McEstimate>(s.det_expectation);
  ok &= check(log, est.consistent_with(ExactRational(625, 781), kZ), "MC p=5 misses 625/781");
  log << "; MC p=5 m=8: E|det| ~ " << d(est.mean_bracket.midpoint()) << " +- " << est.std_error
      << " (target " << to_double(ExactRational(625, 781)) << ")";
  return ok;
}

bool quadrics_theorem(std::ostringstream& log) {
  bool ok = true;
  for (std::uint64_t p : {2, 3}) {
    FlatCountParams mc;
    mc.method = Method::MonteCarlo;
    mc.precision = 8;
    mc.samples = kMcSamples;
    mc.seed = 2;
    const auto r = expected_flats({4, 1, {2, 2}}, p, mc);
    ok &= check(log, r.consistent_with(ExactRational(1), kZ), "p=" + std::to_string(p));
    log << " p=" << p << ": " << d(r.expected_count.midpoint()) << " +- " << r.std_error << ";";
  }
  return ok;
}

bool points_theorem(std::ostringstream& log) {
  bool ok = true;
  for (auto [n, p] : std::vector<std::pair<int, std::uint64_t>>{{2, 2}, {3, 3}}) {
    const DegreeProfile points{n, 0, std::vector<int>(n, 2)};
    FlatCountParams mc;
    mc.method = Method::MonteCarlo;
    mc.precision = 8;
    mc.samples = kMcSamples;
    mc.seed = 3;
    const auto r = expected_flats(points, p, mc);
    const auto& est = std::get<McEstimate>(r.det_expectation);
    const ExactRational target = closed_form(ClosedFormCase::detmatrix(n), p);
    const std::string tag = "(n=" + std::to_string(n) + ",p=" + std::to_string(p) + ")";
    ok &= check(log, est.consistent_with(target, kZ), tag + " E|det M_n|");
    ok &= check(log, r.consistent_with(ExactRational(1), kZ), tag + " count");
    log << " " << tag << ": E|det| ~ " << d(est.mean_bracket.midpoint()) << " vs " << q(target)
        << ", count ~ " << d(r.expected_count.midpoint()) << ";";
  }
  FlatCountParams exact;
  exact.method = Method::Exact;
  exact.precision = 2;
  const auto r = expected_flats({2, 0, {2, 2}}, 2, exact);
  ok &= check(log, r.det_bracket().contains(ExactRational(4, 7)), "exact bracket misses 4/7");
  log << " exact n=2 p=2 m=2: [" << d(r.det_bracket().lo) << ", " << d(r.det_bracket().hi) << "]";
  return ok;
}

bool bounds_and_limits(std::ostringstream& log) {
  bool ok = true;
  bool increasing = true;
  ExactRational previous = -1;
  std::uint64_t last = 0;
  int rows = 0;
  for (std::uint64_t p = 2; p <= 101; ++p) {
    if (!is_prime(p)) continue;
    const ExactRational value = closed_form(ClosedFormCase::cubic(), p);
    const ExactRational lower =
        grassmannian_volume(1, 3, VolumeTable(p)) * closed_form(ClosedFormCase::lower_bound(1, 3), p);
    const ExactRational upper = closed_form(ClosedFormCase::limsup_bound(), p);
    ok &= check(log, lower <= value && value <= upper, "bounds at p=" + std::to_string(p));
    if (rows > 0 && !(value > previous)) {
      if (increasing) log << " [first decrease at p=" << p << ": " << d(value) << " <= " << d(previous) << "]";
      increasing = false;
    }
    previous = value;
    last = p;
    ++rows;
  }
  ok &= check(log, increasing, "cubic values not monotone increasing");
  const double gap = std::fabs(to_double(previous) - 1.0);
  ok &= check(log, gap < kLargePrimeGap, "|cubic(101) - 1| too large");
  log << " " << rows << " primes, |cubic(" << last << ") - 1| = " << gap;
  return ok;
}

bool volkenborn(std::ostringstream& log) {
  bool ok = true;
  const auto f = cubic_det_integrand();
  for (std::uint64_t p : {2, 3}) {
    std::vector<VolkenbornPartial> partials;
    for (int n : {1, 2}) {
      partials.push_back(volkenborn_partial(f, p, n));
      ok &= check(log, partials.back().raw_sum == cubic_det_raw_sum_formula(p, n),
                  "raw sum p=" + std::to_string(p) + " n=" + std::to_string(n));
    }
    const auto lc = padic_limit_check(partials, ExactRational(-1, 9), p);
    log << " p=" << p << " v_p(partial_n + 1/9):";
    for (const auto& [n, v] : lc.valuations) log << " n=" << n << "->" << (v ? std::to_string(*v) : "inf");
    ok &= check(log, lc.pass, "p^-n rate at p=" + std::to_string(p));
    log << ";";
  }
  return ok;
}

bool hensel(std::ostringstream& log) {
  const auto s = mean_smooth_zero_count({2, 2}, 2, 7, kHenselSystems, 4);
  log << " mean " << s.mean << " +- " << s.std_error << " over " << s.systems << " systems";
  return check(log, std::fabs(s.mean - 1.0) <= kHenselGap, "mean too far from 1");
}

// Degrees are capped at 4 for k = 0, where every degree is admissible.
std::vector<DegreeProfile> admissible_profiles() {
  std::vector<DegreeProfile> out;
  for (int n = 1; n <= 6; ++n) {
    for (int k = 0; k <= 2 && k < n; ++k) {
      const int target = (k + 1) * (n - k);
      std::function<void(std::vector<int>&, int, int)> extend = [&](std::vector<int>& deg, int min_d, int left) {
        if (left == 0) {
          out.push_back({n, k, deg});
          return;
        }
        for (int dd = min_d;; ++dd) {
          if (k == 0 && dd > 4) break;
          const int c = static_cast<int>(binomial(k + dd, dd));
          if (c > left) break;
          deg.push_back(dd);
          extend(deg, dd, left - c);
          deg.pop_back();
        }
      };
      std::vector<int> deg;
      extend(deg, 1, target);
    }
  }
  return out;
}

// Each variable fills k+1 cells, in distinct rows and distinct columns, and
// no two rows share a pattern.
bool repetition_ok(const JacobianTemplate& t) {
  const int k = t.profile().k;
  std::vector<std::set<std::size_t>> rows(t.var_count()), cols(t.var_count());
  std::vector<int> hits(t.var_count(), 0);
  for (std::size_t r = 0; r < t.size(); ++r) {
    for (std::size_t c = 0; c < t.size(); ++c) {
      const int v = t.cell(r, c);
      if (v == JacobianTemplate::kZero) continue;
      ++hits[v];
      rows[v].insert(r);
      cols[v].insert(c);
    }
  }
  for (std::size_t v = 0; v < t.var_count(); ++v) {
    if (hits[v] != k + 1 || static_cast<int>(rows[v].size()) != k + 1 ||
        static_cast<int>(cols[v].size()) != k + 1) {
      return false;
    }
  }
  std::set<std::vector<int>> patterns;
  for (std::size_t r = 0; r < t.size(); ++r) {
    patterns.insert(std::vector<int>(t.cells().begin() + r * t.size(), t.cells().begin() + (r + 1) * t.size()));
  }
  return patterns.size() == t.size();
}

BigInt det3(const BigInt (&a)[3], const BigInt (&b)[3], const BigInt (&c)[3]) {
  return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) +
         a[2] * (b[0] * c[1] - b[1] * c[0]);
}

bool structural(std::ostringstream& log) {
  bool ok = true;
  const auto profiles = admissible_profiles();
  for (const auto& prof : profiles) {
    ok &= check(log, repetition_ok(build_template(prof)), "template " + prof.to_string());
  }
  log << " " << profiles.size() << " admissible profiles;";

  const PadicContext ctx(1'000'003, 2);
  SeededStream stream(5);
  auto draw = [&](std::size_t count) {
    std::vector<PadicApprox> v;
    for (std::size_t i = 0; i < count; ++i) v.push_back(sample_uniform(ctx, stream));
    return v;
  };
  auto reduce = [&](const BigInt& x) { return PadicApprox(ctx, x); };

  const auto cubic = build_template({3, 1, {3}});
  const auto quad = build_template({4, 1, {2, 2}});
  int cubic_ok = 0, quad_ok = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto x = draw(cubic.var_count());
    std::vector<BigInt> xi;
    for (const auto& v : x) xi.push_back(v.residue());
    // (x1 x6 - x3 x4)^2 - (x1 x5 - x2 x4)(x2 x6 - x3 x5)
    const BigInt a = xi[0] * xi[5] - xi[2] * xi[3];
    const BigInt b = xi[0] * xi[4] - xi[1] * xi[3];
    const BigInt c = xi[1] * xi[5] - xi[2] * xi[4];
    if (det_residue(instantiate(cubic, x)) == reduce(a * a - b * c)) ++cubic_ok;

    const auto y = draw(quad.var_count());
    std::vector<BigInt> e;
    for (const auto& v : y) e.push_back(v.residue());
    // Stack rows [a1 b1 c1], [a2 b2 c2], [a1' b1' c1'], [a2' b2' c2'].
    const BigInt s[4][3] = {{e[0], e[2], e[4]}, {e[1], e[3], e[5]}, {e[6], e[8], e[10]}, {e[7], e[9], e[11]}};
    const BigInt k1 = det3(s[1], s[2], s[3]);
    const BigInt k2 = det3(s[0], s[2], s[3]);
    const BigInt k3 = det3(s[0], s[1], s[3]);
    const BigInt k4 = det3(s[0], s[1], s[2]);
    if (det_residue(instantiate(quad, y)) == reduce(k1 * k4 - k2 * k3)) ++quad_ok;
  }
  ok &= check(log, cubic_ok == 200, "cubic identity");
  ok &= check(log, quad_ok == 200, "quadrics identity");
  log << " cubic identity " << cubic_ok << "/200, quadrics identity " << quad_ok << "/200";
  return ok;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "volume identities", 10, volumes},
      {2, "counting lemmas", 30, counting_lemmas},
      {3, "fiber lemmas", 60, fiber_lemmas},
      {4, "cubic surface lines", 120, cubic_theorem},
      {5, "two quadrics", 120, quadrics_theorem},
      {6, "points and det M_n", 120, points_theorem},
      {7, "bounds and large-p trend", 60, bounds_and_limits},
      {8, "Volkenborn sums", 120, volkenborn},
      {9, "Hensel smoke test", 120, hensel},
      {10, "structural invariants", 60, structural},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    std::ostringstream log;
    const auto start = std::chrono::steady_clock::now();
    bool ok = false;
    try {
      ok = c.run(log);
    } catch (const std::exception& e) {
      log << " [exception: " << e.what() << "]";
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.budget_seconds) {
      log << " [over budget: " << secs << " s > " << c.budget_seconds << " s]";
      ok = false;
    }
    std::printf("%s criterion %d (%s, %.2f s):%s\n", ok ? "PASS" : "FAIL", c.id, c.title.c_str(), secs,
                log.str().c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
