#include <doctest.h>

#include "oracles.hpp"
#include "padicflats/padic.hpp"
#include "padicflats/residue_ring.hpp"
#include "padicflats/sampling.hpp"

using namespace padicflats;

TEST_SUITE("padic_core") {
  TEST_CASE("valuation of truncated elements") {
    CHECK(valuation(PadicApprox(PadicContext(2, 6), 12)) == Valuation::finite(2));
    CHECK(valuation(PadicApprox(PadicContext(5, 3), 0)) == Valuation::at_least(3));
    CHECK(valuation(PadicApprox(PadicContext(3, 4), 54)) == Valuation::finite(3));
    CHECK(Valuation::at_least(3) > Valuation::finite(2));
    CHECK(Valuation::at_least(1) > Valuation::finite(7));
    CHECK(Valuation::finite(1) < Valuation::finite(2));
  }

  TEST_CASE("abs_p brackets zero residues") {
    CHECK(abs_p(PadicApprox(PadicContext(2, 6), 12)) == BracketedValue::point(ExactRational(1, 4)));
    CHECK(abs_p(PadicApprox(PadicContext(2, 3), 0)) == BracketedValue{0, ExactRational(1, 8)});
    CHECK(abs_p(PadicApprox(PadicContext(7, 2), 1)) == BracketedValue::point(1));
  }

  TEST_CASE("rationals embed when the denominator is a unit") {
    CHECK(padic_of_rational(ExactRational(-1, 9), PadicContext(5, 3)).residue() == 111);
    CHECK(padic_of_rational(ExactRational(1, 3), PadicContext(2, 4)).residue() == 11);
    for (std::uint64_t p : {2, 3, 7, 101}) {
      CHECK(padic_of_rational(ExactRational(1), PadicContext(p, 5)).residue() == 1);
    }
    CHECK_THROWS_AS(padic_of_rational(ExactRational(1, 2), PadicContext(2, 4)), NonUnitDenominator);
    CHECK_THROWS_AS(padic_of_rational(ExactRational(5, 9), PadicContext(3, 2)), NonUnitDenominator);
  }

  TEST_CASE("contexts validate their arguments") {
    CHECK_THROWS_AS(PadicContext(4, 2), InvalidArgument);
    CHECK_THROWS_AS(PadicContext(1, 2), InvalidArgument);
    CHECK_THROWS_AS(PadicContext(3, 0), InvalidArgument);
    const PadicContext ctx(7, 20);
    CHECK(ctx.modulus() == int_power(7, 20));
    CHECK_THROWS_AS(PadicApprox(PadicContext(2, 3), 1) + PadicApprox(PadicContext(2, 4), 1), InvalidArgument);
  }

  TEST_CASE("primality agrees with trial division") {
    auto trial = [](std::uint64_t n) {
      if (n < 2) return false;
      for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
      }
      return true;
    };
    for (std::uint64_t n = 0; n < 5000; ++n) CHECK(is_prime(n) == trial(n));
    CHECK(is_prime(2305843009213693951ULL));  // 2^61 - 1
    CHECK_FALSE(is_prime(3215031751ULL));      // strong pseudoprime to bases 2, 3, 5, 7
    CHECK_FALSE(is_prime(561));
  }

  TEST_CASE("ring laws, ultrametric inequality and multiplicativity on samples") {
    for (auto [p, m] : std::vector<std::pair<std::uint64_t, int>>{{2, 8}, {3, 5}, {7, 20}}) {
      const PadicContext ctx(p, m);
      SeededStream s(11);
      for (int i = 0; i < 300; ++i) {
        const auto a = sample_uniform(ctx, s), b = sample_uniform(ctx, s), c = sample_uniform(ctx, s);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a - a == PadicApprox(ctx, 0));
        CHECK(valuation(a + b) >= std::min(valuation(a), valuation(b)));
        const auto va = valuation(a), vb = valuation(b);
        if (va.is_finite() && vb.is_finite() && va.value() + vb.value() < m) {
          CHECK(valuation(a * b) == Valuation::finite(va.value() + vb.value()));
        }
        CHECK(valuation(a).value() == oracle::valuation(a.residue(), p, m));
      }
    }
  }

  TEST_CASE("rational residues agree across precisions") {
    for (const auto& q : {ExactRational(-1, 9), ExactRational(22, 7), ExactRational(-5, 11)}) {
      const auto hi = padic_of_rational(q, PadicContext(13, 12));
      for (int m = 1; m < 12; ++m) {
        CHECK(hi.truncated(m) == padic_of_rational(q, PadicContext(13, m)));
      }
    }
  }

  TEST_CASE("word and big residue rings agree") {
    const WordRing w(3, 30);
    const BigRing b(PadicContext(3, 30));
    SeededStream s(3);
    for (int i = 0; i < 500; ++i) {
      const auto x = sample_residue(w, s), y = sample_residue(w, s);
      const BigInt X = w.to_big(x), Y = w.to_big(y);
      CHECK(w.to_big(w.mul(x, y)) == b.mul(X, Y));
      CHECK(w.to_big(w.add(x, y)) == b.add(X, Y));
      CHECK(w.to_big(w.sub(x, y)) == b.sub(X, Y));
      CHECK(w.valuation(x) == b.valuation(X));
      if (x % 3 != 0) CHECK(w.mul(x, w.unit_inverse(x)) == 1);
    }
    CHECK_THROWS_AS(w.unit_inverse(6), NotInvertible);
    CHECK(WordRing::fits(2, 61));
    CHECK_FALSE(WordRing::fits(2, 62));
  }

  TEST_CASE("rational formatting") {
    CHECK(to_fraction_string(ExactRational(1)) == "1/1");
    CHECK(to_fraction_string(ExactRational(-2) / 4) == "-1/2");
    CHECK(parse_rational("35/31") == ExactRational(35, 31));
    CHECK(parse_rational("-7") == ExactRational(-7));
    CHECK_THROWS_AS(parse_rational("1/0"), InvalidArgument);
    CHECK_THROWS_AS(parse_rational("x"), InvalidArgument);
    CHECK(to_decimal_string(ExactRational(35, 31)) == "1.12903225806");
    CHECK(p_valuation(ExactRational(-12, 9), 3) == -1);
    CHECK_FALSE(p_valuation(ExactRational(0), 3).has_value());
  }
}
