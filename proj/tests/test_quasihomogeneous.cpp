#include <gtest/gtest.h>

#include "germinv/germinv.hpp"

using namespace germinv;

namespace {

MapGerm germ(std::vector<std::string> vars, std::vector<std::string> coords) {
  return MapGerm::parse(vars, coords);
}

WeightData wd(std::vector<std::uint64_t> w, std::vector<std::uint64_t> d) { return {std::move(w), std::move(d)}; }

struct QhCase {
  std::vector<std::string> vars;
  std::vector<std::string> coords;
};

const std::vector<QhCase>& qh_corpus() {
  static const std::vector<QhCase> cases = {
      {{"u"}, {"u^2", "u^3"}},
      {{"u"}, {"u^2", "u^5"}},
      {{"u"}, {"u^3", "u^4"}},
      {{"u"}, {"u^3", "u^5"}},
      {{"x", "y"}, {"x", "y^2", "y^3", "x*y"}},
      {{"x", "y"}, {"x", "y^2", "y^5", "x*y"}},
      {{"x", "y"}, {"x", "y^3", "y^4", "x*y"}},
      {{"x", "y"}, {"x", "y^2", "y^3", "x^2*y"}},
      {{"x", "y"}, {"x", "y^2", "y^3+x^2*y", "x*y"}},
      {{"x", "y"}, {"y^2", "x*y", "x", "y^3"}},
      {{"x", "y"}, {"x^2+y^3", "x*y", "x^3", "y^2"}},
      {{"x1", "x2", "y"}, {"x1", "x2", "y^2", "y^3", "x1*y", "x2*y"}},
      {{"x1", "x2", "y"}, {"x1", "x2", "y^2", "y^5", "x1*y", "x2*y"}},
  };
  return cases;
}

}  // namespace

TEST(DetectWeights, MonomialCurve) {
  auto w = detect_weights(germ({"u"}, {"u^2", "u^3"}));
  ASSERT_TRUE(w);
  EXPECT_EQ(*w, wd({1}, {2, 3}));
}

TEST(DetectWeights, InfeasibleSystem) {
  EXPECT_FALSE(detect_weights(germ({"x", "y"}, {"x^2", "x^3-x*y", "y^2", "y^3+x*y"})));
}

TEST(DetectWeights, SolvedByHand) {
  auto w = detect_weights(germ({"x", "y"}, {"x", "y^2", "y^3", "x*y"}));
  ASSERT_TRUE(w);
  EXPECT_EQ(*w, wd({1, 1}, {1, 2, 3, 2}));
}

TEST(DetectWeights, PrimitiveRay) {
  auto w = detect_weights(germ({"x", "y"}, {"x^2+y^3", "x*y", "x^3", "y^2"}));
  ASSERT_TRUE(w);
  EXPECT_EQ(*w, wd({3, 2}, {6, 5, 9, 4}));
}

TEST(DetectWeights, ZeroCoordinateOrMixedSigns) {
  EXPECT_FALSE(detect_weights(germ({"x", "y"}, {"x", "y", "0", "0"})));
  // x = x^2 y^2 forces w1 + 2 w2 = 0
  EXPECT_FALSE(detect_weights(germ({"x", "y"}, {"x+x^2*y^2", "y"})));
}

TEST(DetectWeights, UnderdeterminedPicksSmallestPoint) {
  auto w = detect_weights(germ({"x", "y"}, {"x", "y^3", "y^4", "x*y"}));
  ASSERT_TRUE(w);
  EXPECT_EQ(w->weights, (std::vector<std::uint64_t>{1, 1}));
  // one constraint x^2 ~ y^3 leaves a ray
  auto r = detect_weights(germ({"x", "y", "z"}, {"x^2+y^3", "z"}));
  ASSERT_TRUE(r);
  EXPECT_EQ(r->weights, (std::vector<std::uint64_t>{3, 2, 1}));
}

TEST(DetectWeights, ScalingInvariance) {
  for (const auto& c : qh_corpus()) {
    auto f = germ(c.vars, c.coords);
    std::vector<Polynomial> scaled;
    Rational s = 2;
    for (const auto& p : f.coords()) {
      scaled.push_back(p.scaled(s));
      s = -s / 3;
    }
    EXPECT_EQ(detect_weights(f), detect_weights(MapGerm(f.ring(), scaled)));
  }
}

TEST(DetectWeights, CertificateHoldsTermByTerm) {
  for (const auto& c : qh_corpus()) {
    auto f = germ(c.vars, c.coords);
    auto w = detect_weights(f);
    ASSERT_TRUE(w);
    EXPECT_TRUE(certifies(f, *w));
    std::uint64_t g = 0;
    for (auto v : w->weights) g = std::gcd(g, v);
    EXPECT_EQ(g, 1u);
  }
}

TEST(DQhCorank1, Examples) {
  EXPECT_EQ(d_qh_corank1(wd({1}, {2, 3}), 1), 1);
  EXPECT_EQ(d_qh_corank1(wd({1, 1}, {1, 2, 3, 2}), 2), 1);
  EXPECT_EQ(d_qh_corank1(wd({1, 1}, {1, 1, 2, 2}), 2), 0);
}

TEST(DQhCorank1, NonIntegralIsReported) {
  const Rational v = d_qh_corank1(wd({2}, {3, 4}), 1);
  EXPECT_EQ(v, ratio(1, 4));
  EXPECT_NE(v.get_den(), 1);
}

TEST(DQhCorank1, ShapeErrors) {
  EXPECT_THROW(d_qh_corank1(wd({1, 1}, {1, 2, 3}), 2), InputError);
  EXPECT_THROW(d_qh_corank1(wd({1}, {2, 3}), 0), InputError);
}

TEST(DQhGeneral, ReducesToCorank1ForCurves) {
  auto v = d_qh_general(wd({1}, {2, 3}), 1);
  EXPECT_EQ(v.value, 1);
  EXPECT_EQ(v.status, FormulaStatus::proved);
  EXPECT_TRUE(v.integral());
  EXPECT_EQ(d_qh_general(wd({2}, {3, 4}), 1).value, d_qh_corank1(wd({2}, {3, 4}), 1));
}

TEST(DQhGeneral, SurfaceExample) {
  EXPECT_EQ(d_qh_general(wd({1, 1}, {1, 2, 3, 2}), 2).value, 1);
}

TEST(DQhGeneral, StatusByDimension) {
  EXPECT_EQ(d_qh_general(wd({1, 1, 1}, {1, 1, 2, 3, 2, 2}), 3).status, FormulaStatus::proved);
  EXPECT_EQ(d_qh_general(wd({1, 1, 1, 1}, {1, 1, 1, 2, 3, 2, 2, 2}), 4).status, FormulaStatus::conjectural);
}

TEST(DQhGeneral, MatchesCorank1FormulaAcrossWeights) {
  // corank-1 normal forms (x, g2, g3, g4) of arbitrary type
  for (std::uint64_t w1 = 1; w1 <= 4; ++w1)
    for (std::uint64_t w2 = 1; w2 <= 3; ++w2)
      for (std::uint64_t a = 2; a <= 5; ++a)
        for (std::uint64_t b = 2; b <= 5; ++b) {
          auto t = wd({w1, w2}, {w1, a * w2, b * w2, w1 + w2});
          EXPECT_EQ(d_qh_general(t, 2).value, d_qh_corank1(t, 2)) << w1 << " " << w2 << " " << a << " " << b;
        }
}

TEST(DQhGeneral, PrintedExpansionDisagreesWithOracle) {
  const auto t = wd({1, 1}, {1, 2, 3, 2});
  EXPECT_EQ(d_qh_n2_printed_expansion(t), -12);
  EXPECT_EQ(d_invariant(germ({"x", "y"}, {"x", "y^2", "y^3", "x*y"})), 1u);
  EXPECT_THROW(d_qh_n2_printed_expansion(wd({1}, {2, 3})), InputError);
}

TEST(NormalizeCorank1, MovesDistinguishedVariableLast) {
  auto f = germ({"x", "y"}, {"x^2", "x*y", "-3*y", "x^3"});
  auto nf = normalize_corank1(f);
  EXPECT_EQ((*nf.ring())[0].name, "y");
  EXPECT_EQ((*nf.ring())[1].name, "x");
  EXPECT_EQ(nf[0], parse_polynomial("-3*y", nf.ring()));
  EXPECT_THROW(normalize_corank1(germ({"x", "y"}, {"x^2", "y^2", "x*y", "x^3"})), InputError);
}

// Every quasihomogeneous A-finite corpus germ: the enabled closed form
// equals the colength oracle, and on corank <= 1 also the corank-1 form.
TEST(OracleGate, ClosedFormsMatchColength) {
  for (const auto& c : qh_corpus()) {
    auto f = germ(c.vars, c.coords);
    auto w = detect_weights(f);
    ASSERT_TRUE(w);
    const Rational oracle(static_cast<unsigned long>(d_invariant(f)));
    const auto general = d_qh_general(*w, f.n());
    EXPECT_EQ(general.status, FormulaStatus::proved);
    EXPECT_EQ(general.value, oracle) << c.coords[1];
    if (corank(f) <= 1) {
      auto nf = normalize_corank1(f);
      EXPECT_EQ(d_qh_corank1(*detect_weights(nf), f.n()), oracle) << c.coords[1];
    }
  }
}
