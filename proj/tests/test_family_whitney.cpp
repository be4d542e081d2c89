#include <gtest/gtest.h>

#include "germinv/germinv.hpp"

using namespace germinv;

namespace {

Family cusp_family() { return Family::parse({"u"}, "t", {"u^2", "u^3+t*u"}); }

std::vector<Rational> q(std::initializer_list<const char*> xs) {
  std::vector<Rational> out;
  for (auto x : xs) out.push_back(parse_rational(x));
  return out;
}

}  // namespace

TEST(Family, Validation) {
  EXPECT_THROW(Family::parse({"u"}, "t", {"u^2", "u^3+t"}), InputError);
  EXPECT_THROW(Family::parse({"u"}, "t", {"u^2", "t^2"}), InputError);
  EXPECT_THROW(Family::parse({"u"}, "u", {"u^2"}), InputError);
  EXPECT_THROW(Family(VariableSet::plain({"u"}), {}), InputError);
  EXPECT_NO_THROW(Family::parse({"u"}, "t", {"u^2", "t^5*u"}));
}

TEST(Specialize, Examples) {
  auto fam = cusp_family();
  auto g0 = specialize(fam, 0);
  auto ring = g0.ring();
  EXPECT_EQ(g0[1], parse_polynomial("u^3", ring));
  EXPECT_EQ(specialize(fam, 1)[1], parse_polynomial("u^3+u", ring));
  EXPECT_EQ(specialize(fam, ratio(-1, 3))[1], parse_polynomial("u^3-1/3*u", ring));
  auto trivial = Family::parse({"x", "y"}, "t", {"x^2", "x^3-x*y", "y^2", "y^3+x*y"});
  auto base = MapGerm::parse({"x", "y"}, {"x^2", "x^3-x*y", "y^2", "y^3+x*y"});
  for (const auto& t : q({"0", "5", "-2/7"}))
    for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(specialize(trivial, t)[i], base[i]);
}

TEST(OddEven, ProseSemantics) {
  EXPECT_EQ(greatest_odd_leq(4), 3);
  EXPECT_EQ(greatest_even_leq(4), 4);
  EXPECT_EQ(greatest_odd_leq(5), 5);
  EXPECT_EQ(greatest_even_leq(5), 4);
  EXPECT_EQ(greatest_odd_leq(1), 1);
  EXPECT_EQ(greatest_even_leq(1), 0);
}

TEST(InvariantSet, Examples) {
  EXPECT_EQ(invariant_set(3, 2).describe(), "{d, m1}");
  EXPECT_EQ(invariant_set(4, 3).describe(), "{d, m1, m3}");
  EXPECT_EQ(invariant_set(2, 0).describe(), "{d}");
  EXPECT_EQ(invariant_set(6, 5).describe(), "{d, m1, m3, m5}");
  EXPECT_THROW(invariant_set(2, 3), InputError);
}

TEST(InvariantSet, LowCorankIsAlwaysDAndM1) {
  for (std::size_t n = 1; n <= 6; ++n)
    for (std::size_t k = 1; k <= std::min<std::size_t>(2, n); ++k)
      EXPECT_EQ(invariant_set(n, k), (InvariantSet{true, {1}}));
}

TEST(WhitneyTrace, TrivialFamilyIsConsistent) {
  auto fam = Family::parse({"x", "y"}, "t", {"x^2", "x^3-x*y", "y^2", "y^3+x*y"});
  auto tr = whitney_trace(fam, q({"0", "1", "-1/2"}));
  EXPECT_EQ(tr.verdict.status, VerdictStatus::consistent);
  EXPECT_EQ(tr.verdict.invariant_set_used, "{d, m1}");
  EXPECT_FALSE(tr.verdict.caveat.empty());
  for (const auto& r : tr.rows) EXPECT_EQ(*r.d, 6u);
}

TEST(WhitneyTrace, CuspFamilyBreaksAtD) {
  auto tr = whitney_trace(cusp_family(), default_samples());
  EXPECT_EQ(tr.verdict.status, VerdictStatus::not_equisingular);
  ASSERT_TRUE(tr.verdict.witness_t);
  EXPECT_EQ(*tr.verdict.witness_t, 1);
  EXPECT_EQ(tr.verdict.witness_invariant, "d");
  EXPECT_EQ(*tr.rows[0].d, 1u);
  EXPECT_EQ(*tr.rows[1].d, 0u);
  EXPECT_FALSE(tr.verdict.caveat.empty());
}

TEST(WhitneyTrace, TrivialImmersionFamily) {
  auto fam = Family::parse({"x", "y"}, "t", {"x", "y", "0", "0"});
  auto tr = whitney_trace(fam, default_samples());
  EXPECT_EQ(tr.verdict.status, VerdictStatus::consistent);
  EXPECT_EQ(tr.verdict.invariant_set_used, "{d}");
  for (const auto& r : tr.rows) {
    EXPECT_EQ(*r.d, 0u);
    for (std::size_t i = 1; i < r.m.size(); ++i) EXPECT_EQ(r.m[i], 0u);
  }
}

TEST(WhitneyTrace, BaseRowMatchesDirectComputation) {
  auto fam = Family::parse({"x", "y"}, "t", {"x", "y^2", "y^3+t*y", "x*y"});
  auto tr = whitney_trace(fam, q({"1/2", "0"}));
  auto base = MapGerm::parse({"x", "y"}, {"x", "y^2", "y^3", "x*y"});
  EXPECT_EQ(*tr.rows[1].d, d_invariant(base));
  EXPECT_EQ(tr.rows[1].m, generic_polar_multiplicities(base).data.m);
  EXPECT_EQ(*tr.rows[1].corank, corank(base));
}

TEST(WhitneyTrace, SampleErrorsGiveIndeterminate) {
  // at t = 1 the third coordinate vanishes and the germ is not A-finite
  auto fam = Family::parse({"x", "y"}, "t", {"x", "y^2", "y^3-t*y^3", "x*y-t*x*y"});
  auto tr = whitney_trace(fam, q({"0", "1"}));
  EXPECT_EQ(tr.verdict.status, VerdictStatus::indeterminate);
  ASSERT_EQ(tr.verdict.errors.size(), 1u);
  EXPECT_FALSE(tr.rows[1].ok());
}

TEST(WhitneyTrace, MonotoneUnderExtraSamples) {
  auto fam = cusp_family();
  auto a = whitney_trace(fam, q({"0", "1"}));
  auto b = whitney_trace(fam, q({"0", "1", "2", "-5"}));
  EXPECT_EQ(a.verdict.status, VerdictStatus::not_equisingular);
  EXPECT_EQ(b.verdict.status, VerdictStatus::not_equisingular);
}

TEST(WhitneyTrace, Preconditions) {
  EXPECT_THROW(whitney_trace(cusp_family(), q({"1", "2"})), InputError);
  EXPECT_THROW(whitney_trace(Family::parse({"x", "y"}, "t", {"x^2", "y^2", "x*y+t*x^3"}), q({"0"})), InputError);
}
