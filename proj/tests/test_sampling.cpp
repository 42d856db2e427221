#include <doctest.h>

#include <set>

#include "padicflats/linalg.hpp"
#include "padicflats/sampling.hpp"

using namespace padicflats;

namespace {

double chi_square(const std::vector<std::uint64_t>& counts) {
  double total = 0;
  for (auto c : counts) total += static_cast<double>(c);
  const double expected = total / static_cast<double>(counts.size());
  double chi = 0;
  for (auto c : counts) chi += (static_cast<double>(c) - expected) * (static_cast<double>(c) - expected) / expected;
  return chi;
}

// Upper 0.1% quantiles of chi-square.
constexpr double kChi2_4 = 18.467;
constexpr double kChi2_6 = 22.458;
constexpr double kChi2_7 = 24.322;

std::vector<PadicMatrix> gl3_f2() {
  const PadicContext ctx(2, 1);
  std::vector<PadicMatrix> out;
  for (unsigned bits = 0; bits < 512; ++bits) {
    std::vector<BigInt> v;
    for (int i = 0; i < 9; ++i) v.push_back((bits >> i) & 1U);
    PadicMatrix g(ctx, 3, 3, v);
    if (!det_residue(g).is_zero()) out.push_back(g);
  }
  return out;
}

}  // namespace

TEST_SUITE("sampling") {
  TEST_CASE("uniform residues pass a chi-square test") {
    const PadicContext ctx(2, 3);
    SeededStream s(1);
    std::vector<std::uint64_t> counts(8, 0);
    for (int i = 0; i < 8000; ++i) ++counts[sample_uniform(ctx, s).residue().get_ui()];
    CHECK(chi_square(counts) < kChi2_7);

    const PadicContext f5(5, 1);
    SeededStream t(2);
    std::vector<std::uint64_t> c5(5, 0);
    for (int i = 0; i < 10000; ++i) ++c5[sample_uniform(f5, t).residue().get_ui()];
    CHECK(chi_square(c5) < kChi2_4);
  }

  TEST_CASE("every base-p digit is uniform") {
    const PadicContext ctx(7, 9);
    SeededStream s(9);
    std::vector<std::vector<std::uint64_t>> digits(9, std::vector<std::uint64_t>(7, 0));
    for (int i = 0; i < 14000; ++i) {
      BigInt r = sample_uniform(ctx, s).residue();
      for (int d = 0; d < 9; ++d) {
        ++digits[d][BigInt(r % 7).get_ui()];
        r /= 7;
      }
    }
    for (const auto& c : digits) CHECK(chi_square(c) < kChi2_6);
  }

  TEST_CASE("streams are reproducible and substreams differ") {
    const PadicContext ctx(3, 30);
    SeededStream a(42), b(42), c(43);
    for (int i = 0; i < 50; ++i) CHECK(sample_uniform(ctx, a) == sample_uniform(ctx, b));
    CHECK(SeededStream(42).next() != c.next());
    std::set<std::uint64_t> firsts;
    const SeededStream root(5);
    for (std::uint64_t k = 0; k < 1000; ++k) firsts.insert(root.substream(k).next());
    CHECK(firsts.size() == 1000);
    SeededStream x = root.substream(17), y = root.substream(17);
    CHECK(x.next() == y.next());
    SeededStream big(8);
    for (int i = 0; i < 1000; ++i) CHECK(big.below(10) < 10);
  }

  TEST_CASE("large primes sample below the modulus") {
    const PadicContext ctx(4294967311ULL, 3);  // smallest prime above 2^32
    SeededStream s(6);
    for (int i = 0; i < 200; ++i) {
      const auto x = sample_uniform(ctx, s);
      CHECK(x.residue() >= 0);
      CHECK(x.residue() < ctx.modulus());
    }
  }

  TEST_CASE("random polynomials have C(d+n, d) coefficients") {
    const PadicContext ctx(3, 2);
    SeededStream s(0);
    CHECK(sample_polynomial(3, 3, ctx, s).size() == 20);
    CHECK(sample_polynomial(2, 4, ctx, s).size() == 15);
    CHECK(sample_polynomial(1, 1, ctx, s).size() == 2);
    const auto f = sample_polynomial(2, 2, ctx, s);
    CHECK(f.monomials().front() == Exponents{2, 0, 0});
    CHECK(f.monomials().back() == Exponents{0, 0, 2});
    CHECK_THROWS_AS(f.at({1, 0, 0}), InvalidArgument);
  }

  TEST_CASE("change of variables") {
    const PadicContext ctx(5, 3);
    SeededStream s(4);
    const auto f = sample_polynomial(3, 2, ctx, s);
    CHECK(change_variables(f, PadicMatrix::identity(ctx, 3)) == f);

    // f = x0 and g swapping x0, x1 give x1.
    const CoefficientAssignment x0(ctx, 1, 1, {PadicApprox(ctx, 1), PadicApprox(ctx, 0)});
    const auto swapped = change_variables(x0, PadicMatrix::from_rows(ctx, {{0, 1}, {1, 0}}));
    CHECK(swapped.at({1, 0}).residue() == 0);
    CHECK(swapped.at({0, 1}).residue() == 1);

    // Linear forms transform by the transpose of g.
    for (int trial = 0; trial < 20; ++trial) {
      const auto lin = sample_polynomial(1, 3, ctx, s);
      std::vector<BigInt> gv;
      for (int i = 0; i < 16; ++i) gv.push_back(sample_uniform(ctx, s).residue());
      gv[0] = gv[5] = gv[10] = gv[15] = 1;
      for (int i : {4, 8, 9, 12, 13, 14}) gv[i] = gv[i] * 5;  // unit lower triangle mod 5
      const PadicMatrix g(ctx, 4, 4, gv);
      const auto out = change_variables(lin, g);
      for (int j = 0; j < 4; ++j) {
        Exponents ej(4, 0);
        ej[j] = 1;
        PadicApprox want(ctx, 0);
        for (int i = 0; i < 4; ++i) {
          Exponents ei(4, 0);
          ei[i] = 1;
          want = want + lin.at(ei) * g.at(i, j);
        }
        CHECK(out.at(ej) == want);
      }
    }
    CHECK_THROWS_AS(change_variables(f, PadicMatrix::from_rows(ctx, {{1, 0, 0}, {0, 5, 0}, {0, 0, 1}})),
                    NotInvertible);
  }

  TEST_CASE("substitution by GL_3(F_2) permutes all quadratic forms mod 2") {
    const PadicContext ctx(2, 1);
    const auto group = gl3_f2();
    CHECK(group.size() == 168);
    std::vector<CoefficientAssignment> all;
    for (unsigned bits = 0; bits < 64; ++bits) {
      std::vector<PadicApprox> v;
      for (int i = 0; i < 6; ++i) v.emplace_back(ctx, static_cast<long>((bits >> i) & 1U));
      all.emplace_back(ctx, 2, 2, v);
    }
    for (const auto& g : group) {
      std::set<std::vector<BigInt>> images;
      for (const auto& f : all) {
        std::vector<BigInt> key;
        for (const auto& c : change_variables(f, g).values()) key.push_back(c.residue());
        images.insert(key);
      }
      CHECK(images.size() == 64);
    }
  }

  TEST_CASE("substitution round-trips through the inverse") {
    const PadicContext ctx(3, 4);
    SeededStream s(10);
    // g upper unitriangular, g^-1 computed by hand.
    const auto g = PadicMatrix::from_rows(ctx, {{1, 2, 0}, {0, 1, 1}, {0, 0, 1}});
    const auto g_inv = PadicMatrix::from_rows(ctx, {{1, -2, 2}, {0, 1, -1}, {0, 0, 1}});
    CHECK(g * g_inv == PadicMatrix::identity(ctx, 3));
    for (int trial = 0; trial < 20; ++trial) {
      const auto f = sample_polynomial(3, 2, ctx, s);
      CHECK(change_variables(change_variables(f, g), g_inv) == f);
    }
  }
}
