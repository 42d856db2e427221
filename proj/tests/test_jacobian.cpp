#include <doctest.h>

#include <algorithm>
#include <functional>
#include <set>

#include "oracles.hpp"
#include "padicflats/jacobian.hpp"
#include "padicflats/sampling.hpp"

using namespace padicflats;

namespace {

std::vector<PadicApprox> draws(const PadicContext& ctx, std::size_t count, SeededStream& s) {
  std::vector<PadicApprox> v;
  for (std::size_t i = 0; i < count; ++i) v.push_back(sample_uniform(ctx, s));
  return v;
}

std::vector<DegreeProfile> profiles_up_to(int max_n, int max_k) {
  std::vector<DegreeProfile> out;
  for (int n = 1; n <= max_n; ++n) {
    for (int k = 0; k <= max_k && k < n; ++k) {
      std::vector<int> deg;
      std::function<void(int, int)> go = [&](int lo, int left) {
        if (left == 0) out.push_back({n, k, deg});
        for (int d = lo; left > 0 && (k > 0 || d <= 3); ++d) {
          const int c = static_cast<int>(binomial(k + d, d));
          if (c > left) break;
          deg.push_back(d);
          go(d, left - c);
          deg.pop_back();
        }
      };
      go(1, (k + 1) * (n - k));
    }
  }
  return out;
}

}  // namespace

TEST_SUITE("jacobian") {
  TEST_CASE("codimension condition") {
    CHECK(check_codim({3, 1, {3}}));
    CHECK(check_codim({4, 1, {2, 2}}));
    CHECK_FALSE(check_codim({3, 1, {2}}));
    CHECK_THROWS_AS(build_template({3, 1, {2}}), NotAdmissible);
    CHECK_THROWS_AS(DegreeProfile({3, 3, {1}}).validate(), InvalidArgument);
    CHECK_THROWS_AS(DegreeProfile({3, 1, {0}}).validate(), InvalidArgument);
  }

  TEST_CASE("point profiles give a full matrix of distinct variables") {
    for (int n = 1; n <= 5; ++n) {
      const auto t = build_template({n, 0, std::vector<int>(n, 1 + n % 3)});
      CHECK(t.size() == static_cast<std::size_t>(n));
      CHECK(t.var_count() == static_cast<std::size_t>(n * n));
      std::set<int> seen(t.cells().begin(), t.cells().end());
      CHECK(seen.size() == static_cast<std::size_t>(n * n));
      CHECK(seen.count(JacobianTemplate::kZero) == 0);
    }
  }

  TEST_CASE("cubic surface template") {
    const auto t = build_template({3, 1, {3}});
    CHECK(t.to_json() ==
          R"({"profile":{"n":3,"k":1,"degrees":[3]},"size":4,"var_count":6,)"
          R"("variables":["x1_2010","x1_1110","x1_0210","x1_2001","x1_1101","x1_0201"],)"
          R"("cells":[["x1_2010","0","x1_2001","0"],["x1_1110","x1_2010","x1_1101","x1_2001"],)"
          R"(["x1_0210","x1_1110","x1_0201","x1_1101"],["0","x1_0210","0","x1_0201"]]})");
    CHECK(check_repetition(t));
  }

  TEST_CASE("two quadrics template") {
    const auto t = build_template({4, 1, {2, 2}});
    CHECK(t.size() == 6);
    CHECK(t.var_count() == 12);
    const std::vector<std::string> labels = {"x1_10100", "x1_01100", "x1_10010", "x1_01010", "x1_10001", "x1_01001",
                                             "x2_10100", "x2_01100", "x2_10010", "x2_01010", "x2_10001", "x2_01001"};
    for (std::size_t v = 0; v < 12; ++v) CHECK(t.variables()[v].label() == labels[v]);
    CHECK(check_repetition(t));
  }

  TEST_CASE("lines on a hypersurface of degree 2n-3 give banded column pairs") {
    for (int n = 3; n <= 6; ++n) {
      const int d = 2 * n - 3;
      const auto t = build_template({n, 1, {d}});
      CHECK(t.size() == static_cast<std::size_t>(2 * (n - 1)));
      for (int s = 0; s < n - 1; ++s) {
        const std::size_t c0 = 2 * s, c1 = 2 * s + 1;
        CHECK(t.cell(static_cast<std::size_t>(d), c0) == JacobianTemplate::kZero);
        CHECK(t.cell(0, c1) == JacobianTemplate::kZero);
        for (std::size_t r = 1; r <= static_cast<std::size_t>(d); ++r) {
          CHECK(t.cell(r, c1) == t.cell(r - 1, c0));
          CHECK(t.cell(r - 1, c0) != JacobianTemplate::kZero);
        }
      }
    }
  }

  TEST_CASE("every variable repeats k+1 times for all small admissible profiles") {
    const auto profiles = profiles_up_to(6, 2);
    CHECK(profiles.size() > 50);
    for (const auto& p : profiles) {
      const auto t = build_template(p);
      CHECK(t.size() == p.dimension());
      std::vector<int> hits(t.var_count(), 0);
      for (int c : t.cells()) {
        if (c != JacobianTemplate::kZero) ++hits[c];
      }
      CHECK(std::all_of(hits.begin(), hits.end(), [&](int h) { return h == p.k + 1; }));
      CHECK(check_repetition(t));
    }
  }

  TEST_CASE("instantiation") {
    const PadicContext ctx(5, 4);
    const auto cubic = build_template({3, 1, {3}});
    std::vector<PadicApprox> zeros(6, PadicApprox(ctx, 0));
    CHECK(instantiate(cubic, zeros) == PadicMatrix(ctx, 4, 4));
    CHECK_THROWS_AS(instantiate(cubic, std::vector<PadicApprox>(5, PadicApprox(ctx, 1))), LengthMismatch);

    std::vector<PadicApprox> unit;
    for (long v : {1, 0, 0, 0, 0, 1}) unit.emplace_back(ctx, v);
    CHECK(det_residue(instantiate(cubic, unit)).residue() == 1);

    const auto points = build_template({3, 0, {2, 2, 2}});
    std::vector<PadicApprox> id;
    for (int i = 0; i < 9; ++i) id.emplace_back(ctx, i % 4 == 0 ? 1L : 0L);
    CHECK(det_residue(instantiate(points, id)).residue() == 1);

    SeededStream s(1);
    const auto x = draws(ctx, cubic.var_count(), s);
    std::vector<BigInt> raw, out(16);
    for (const auto& a : x) raw.push_back(a.residue());
    instantiate_into<BigInt>(cubic, raw, out, BigInt(0));
    CHECK(PadicMatrix(ctx, 4, 4, out) == instantiate(cubic, x));
  }

  TEST_CASE("cubic and quadric determinant identities") {
    const PadicContext ctx(1'000'003, 2);
    SeededStream s(2);
    const auto cubic = build_template({3, 1, {3}});
    const auto quad = build_template({4, 1, {2, 2}});
    const auto cubic_poly = cubic_det_polynomial();
    const auto quad_poly = quadrics_det_polynomial();
    for (int trial = 0; trial < 200; ++trial) {
      const auto x = draws(ctx, 6, s);
      std::vector<BigInt> xi;
      for (const auto& a : x) xi.push_back(a.residue());
      const BigInt a = xi[0] * xi[5] - xi[2] * xi[3], b = xi[0] * xi[4] - xi[1] * xi[3],
                   c = xi[1] * xi[5] - xi[2] * xi[4];
      const BigInt want = oracle::mod(a * a - b * c, ctx.modulus());
      CHECK(det_residue(instantiate(cubic, x)).residue() == want);
      CHECK(oracle::mod(cubic_poly.evaluate(xi), ctx.modulus()) == want);

      const auto y = draws(ctx, 12, s);
      std::vector<BigInt> e;
      for (const auto& v : y) e.push_back(v.residue());
      const std::vector<std::vector<BigInt>> stack = {
          {e[0], e[2], e[4]}, {e[1], e[3], e[5]}, {e[6], e[8], e[10]}, {e[7], e[9], e[11]}};
      auto minor = [&](std::size_t skip) {
        std::vector<std::vector<BigInt>> m;
        for (std::size_t r = 0; r < 4; ++r) {
          if (r != skip) m.push_back(stack[r]);
        }
        return oracle::laplace_det(m);
      };
      const BigInt qwant = oracle::mod(minor(0) * minor(3) - minor(1) * minor(2), ctx.modulus());
      CHECK(det_residue(instantiate(quad, y)).residue() == qwant);
      CHECK(oracle::mod(quad_poly.evaluate(e), ctx.modulus()) == qwant);
    }
  }

  TEST_CASE("determinant valuation ignores row and column order") {
    const PadicContext ctx(2, 8);
    SeededStream s(3);
    const auto t = build_template({4, 1, {2, 2}});
    for (int trial = 0; trial < 50; ++trial) {
      const auto m = instantiate(t, draws(ctx, t.var_count(), s));
      std::vector<std::size_t> rp = {3, 0, 4, 1, 5, 2}, cp = {1, 0, 3, 2, 5, 4};
      PadicMatrix q(ctx, 6, 6);
      for (std::size_t r = 0; r < 6; ++r) {
        for (std::size_t c = 0; c < 6; ++c) q.set(r, c, m(rp[r], cp[c]));
      }
      CHECK(valuation(det_residue(q)) == valuation(det_residue(m)));
    }
  }
}
