#include <gtest/gtest.h>

#include <random>

#include "germinv/germinv.hpp"

using namespace germinv;

namespace {

constexpr auto kLocal = MonomialOrder::negdegrevlex;

Ideal I(const Ring& r, std::vector<std::string> gens) {
  std::vector<Polynomial> ps;
  for (const auto& g : gens) ps.push_back(parse_polynomial(g, r));
  return Ideal(r, kLocal, std::move(ps));
}

std::uint64_t finite(const Colength& c) {
  EXPECT_TRUE(c.is_finite());
  return c.value.value_or(0);
}

// Counts monomials in the box [0,bound)^n divisible by no generator.
std::uint64_t brute_force_staircase(std::size_t n, const std::vector<ExponentVector>& gens, std::uint32_t bound) {
  std::uint64_t count = 0;
  ExponentVector e(n);
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == n) {
      if (!in_monomial_ideal(gens, e)) ++count;
      return;
    }
    for (std::uint32_t v = 0; v < bound; ++v) {
      e[i] = v;
      self(self, i + 1);
    }
  };
  rec(rec, 0);
  return count;
}

}  // namespace

TEST(MoraNormalForm, TextbookCases) {
  auto r = VariableSet::plain({"x", "y"});
  auto x = parse_polynomial("x", r);
  EXPECT_TRUE(mora_normal_form(parse_polynomial("x^2", r), {x}, kLocal).is_zero());
  EXPECT_EQ(mora_normal_form(parse_polynomial("y", r), {x}, kLocal), parse_polynomial("y", r));
  EXPECT_TRUE(mora_normal_form(parse_polynomial("x + x^3", r), {parse_polynomial("x + x^2", r)}, kLocal).is_zero());
}

TEST(MoraNormalForm, UnitMultipleReducesToZero) {
  auto r = VariableSet::plain({"x", "y"});
  auto g = parse_polynomial("x - y^2", r);
  auto p = g * parse_polynomial("1 + x + 3*y", r);
  EXPECT_TRUE(mora_normal_form(p, {g}, kLocal).is_zero());
}

TEST(StandardBasis, MaximalIdeal) {
  auto r = VariableSet::plain({"x", "y"});
  auto sb = standard_basis(I(r, {"x", "y"}));
  EXPECT_EQ(sb.minimal_leading_exponents().size(), 2u);
  EXPECT_EQ(finite(sb.colength()), 1u);
}

TEST(StandardBasis, MonomialIdealIsItsOwnBasis) {
  auto r = VariableSet::plain({"x", "y"});
  auto sb = standard_basis(I(r, {"x^2", "x*y", "y^2"}));
  EXPECT_EQ(sb.minimal_leading_exponents().size(), 3u);
  auto stair = standard_monomials(2, sb.leading_exponents(), 64);
  EXPECT_EQ(stair.size(), 3u);
  EXPECT_EQ(finite(sb.colength()), 3u);
}

TEST(StandardBasis, GeneratorsReduceToZero) {
  auto r = VariableSet::plain({"x", "y", "z"});
  auto ideal = I(r, {"x^2 + y^3 - z", "x*y - z^2 + x^3", "y^2 + x*z"});
  auto sb = standard_basis(ideal);
  for (const auto& g : ideal.generators()) EXPECT_TRUE(sb.contains(g));
  for (const auto& b : sb.basis()) EXPECT_TRUE(mora_normal_form(b, sb.basis(), kLocal).is_zero());
}

TEST(StandardBasis, LocalUnitMakesWholeRing) {
  auto r = VariableSet::plain({"x"});
  EXPECT_EQ(finite(colength(I(r, {"1 + x"}))), 0u);
  EXPECT_EQ(finite(colength(I(r, {"x + x^2"}))), 1u);  // x(1+x) is x times a unit
}

TEST(Colength, SmallIdeals) {
  auto r = VariableSet::plain({"x", "y"});
  EXPECT_EQ(finite(colength(I(r, {"x", "y"}))), 1u);
  EXPECT_EQ(finite(colength(I(r, {"x^2", "x*y", "y^2"}))), 3u);
  EXPECT_EQ(finite(colength(I(r, {"2*x", "3*y^2"}))), 2u);
  EXPECT_EQ(finite(colength(I(r, {"x^2 + y^3", "x*y"}))), 5u);
}

TEST(Colength, InfiniteWhenAVariableIsFree) {
  auto r = VariableSet::plain({"x", "y"});
  EXPECT_FALSE(colength(I(r, {"x"})).is_finite());
  EXPECT_FALSE(colength(I(r, {"x^2", "x*y"})).is_finite());
  EXPECT_FALSE(colength(Ideal(r, kLocal, {})).is_finite());
}

TEST(Colength, GlobalOrderRejected) {
  auto r = VariableSet::plain({"x"});
  EXPECT_THROW(colength(Ideal(r, MonomialOrder::degrevlex, {parse_polynomial("x", r)})), InputError);
}

TEST(Colength, Corank2DoublePointIdeal) {
  auto f = MapGerm::parse({"x", "y"}, {"x^2", "x^3-x*y", "y^2", "y^3+x*y"});
  EXPECT_EQ(finite(colength(double_point_ideal(f))), 12u);
}

TEST(Colength, DiagonalPlusDecompositionQ) {
  auto f = MapGerm::parse({"x", "y"}, {"x^2", "x^3-x*y", "y^2", "y^3+x*y"});
  auto pr = f.primed_ring();
  auto Q = I(pr, {"x'^4", "y*x'*y'^3", "y*x'^2*y'^2-x'^2*y'^3", "2*y*x'^3-2*x'^3*y'+y*y'^3", "y^2-y'^2",
                  "-2*y*x'*y'+2*x*y'^2-y*y'^3", "-2*y*x'^2+2*x*x'*y'+y*x'*y'^2-x'*y'^3",
                  "2*x*x'^2-2*x'^3+y*y'^2-y'^3", "2*x*y-2*x'*y'+y*y'^2-y'^3", "x^2-x'^2"});
  EXPECT_EQ(finite(colength(Q)), 28u);
  EXPECT_EQ(finite(colength(ideal_sum(diagonal_ideal(f), Q))), 16u);
}

TEST(Colength, DegreeBoundIsReported) {
  auto r = VariableSet::plain({"x", "y"});
  SbOptions tight;
  tight.degree_bound = 3;
  EXPECT_THROW(colength(I(r, {"x^5", "y^5"}), tight), BoundExceeded);
}

TEST(Colength, IntermediateNormalFormsRespectDegreeBound) {
  // no highest corner is visible up front, so Mora remainders grow in degree
  auto r = VariableSet::plain({"x", "y", "z"});
  SbOptions tight;
  tight.degree_bound = 20;
  EXPECT_THROW(colength(I(r, {"x^5-2*x^3*y^2+1/3*y", "y^6+8/3*y*z^3+4/3*z", "z^6-5/3*x^2*y*z^2+3/2*y*z"}), tight),
               BoundExceeded);
}

TEST(Colength, MonomialIdealsMatchBruteForce) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + rng() % 2;
    std::vector<std::string> names = {"a", "b", "c"};
    names.resize(n);
    auto r = VariableSet::plain(names);
    std::vector<ExponentVector> gens;
    std::vector<Polynomial> polys;
    for (std::size_t v = 0; v < n; ++v) {
      ExponentVector e(n);
      e[v] = 1 + static_cast<std::uint32_t>(rng() % 5);
      gens.push_back(e);
    }
    for (int extra = 0; extra < 3; ++extra) {
      ExponentVector e(n);
      for (std::size_t v = 0; v < n; ++v) e[v] = static_cast<std::uint32_t>(rng() % 4);
      if (!e.is_zero()) gens.push_back(e);
    }
    for (const auto& e : gens) polys.push_back(Polynomial::monomial(r, e, 1));
    const auto expected = brute_force_staircase(n, gens, 6);
    EXPECT_EQ(finite(colength(Ideal(r, kLocal, polys))), expected) << "trial " << trial;
  }
}

TEST(IdealOps, SumAndMaximalPower) {
  auto r = VariableSet::plain({"x", "y"});
  auto m2 = power_of_maximal(r, 2);
  ASSERT_EQ(m2.generators().size(), 3u);
  EXPECT_EQ(m2.generators()[0], parse_polynomial("x^2", r));
  EXPECT_EQ(m2.generators()[1], parse_polynomial("x*y", r));
  EXPECT_EQ(m2.generators()[2], parse_polynomial("y^2", r));
  auto a = I(r, {"x"});
  EXPECT_EQ(ideal_sum(a, Ideal(r, kLocal, {})).generators(), a.generators());
  EXPECT_THROW(ideal_sum(a, I(VariableSet::plain({"x"}), {"x"})), InputError);
}

TEST(HsTruncation, Examples) {
  auto rx = VariableSet::plain({"x"});
  EXPECT_EQ(hs_truncation(I(rx, {"x"}), 5), 1u);
  EXPECT_EQ(hs_truncation(I(rx, {"x^2"}), 1), 1u);
  EXPECT_EQ(hs_truncation(I(rx, {"x^2"}), 2), 2u);
  EXPECT_EQ(hs_truncation(I(rx, {"x^2"}), 7), 2u);
  auto rxy = VariableSet::plain({"x", "y"});
  EXPECT_EQ(hs_truncation(Ideal(rxy, kLocal, {}), 3), 6u);
  EXPECT_THROW(hs_truncation(I(rx, {"x"}), 0), InputError);
}

TEST(ModuleLength, Examples) {
  auto rx = VariableSet::plain({"x"});
  EXPECT_EQ(finite_module_length(I(rx, {"x"}), I(rx, {"x^2"})), 1u);
  auto rxy = VariableSet::plain({"x", "y"});
  EXPECT_EQ(finite_module_length(I(rxy, {"x", "y"}), I(rxy, {"x", "y"})), 0u);
}

TEST(ModuleLength, NotContained) {
  auto rx = VariableSet::plain({"x", "y"});
  EXPECT_THROW(finite_module_length(I(rx, {"x"}), I(rx, {"y"})), InputError);
}

TEST(ModuleLength, InfiniteLengthHitsCap) {
  auto r = VariableSet::plain({"x", "y"});
  ModuleLengthOptions opt;
  opt.k_cap = 8;
  // <x>/<x^2> over O_2 is infinite dimensional
  EXPECT_THROW(finite_module_length(I(r, {"x"}), I(r, {"x^2"}), opt), BoundExceeded);
}

TEST(ModuleLength, Corank2Epsilon) {
  auto f = MapGerm::parse({"x", "y"}, {"x^2", "x^3-x*y", "y^2", "y^3+x*y"});
  EXPECT_EQ(finite_module_length(diagonal_ideal(f), pullback_ideal(f)), 12u);
}
