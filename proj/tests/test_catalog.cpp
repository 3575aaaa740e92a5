#include <gtest/gtest.h>

#include "support.hpp"

namespace gs::testing {
namespace {

class CatalogFlags : public ::testing::TestWithParam<std::string> {};

TEST_P(CatalogFlags, MatchExpectations) {
  CatalogEntry e = catalog_entry(GetParam());
  ASSERT_FALSE(e.expected.empty());
  CheckReport r = check_structure(e.structure);
  for (const auto& [flag, value] : e.expected) {
    ASSERT_TRUE(r.has_flag(flag)) << flag;
    EXPECT_EQ(r.flag(flag), value) << flag << "\n" << r.to_text();
  }
  EXPECT_TRUE(expectation_mismatches(e, r).empty());
}

INSTANTIATE_TEST_SUITE_P(AllEntries, CatalogFlags, ::testing::ValuesIn(catalog_names()),
                         [](const ::testing::TestParamInfo<std::string>& i) { return i.param; });

TEST(Catalog, NamesAreUniqueAndKnown) {
  auto names = catalog_names();
  EXPECT_GE(names.size(), 23u);
  std::set<std::string> unique(names.begin(), names.end());
  EXPECT_EQ(unique.size(), names.size());
  EXPECT_THROW(catalog_entry("no_such_entry"), CatalogError);
}

TEST(Catalog, FamiliesDeclareTheirDerivation) {
  for (const char* n : {"su2xA2_cs", "su2xA2_nh"}) {
    CatalogEntry e = catalog_entry(n);
    EXPECT_EQ(e.derivation, "d_t") << n;
    ASSERT_TRUE(e.evolution.has_value()) << n;
    TimeFamily fam{e.derivation, std::get<SU2Structure>(e.structure)};
    EXPECT_TRUE(evolution_residual(fam, *e.evolution).all_passed()) << n;
  }
}

TEST(Catalog, ThreeSphereEmbeddingIsAMorphismOnTheLocus) {
  S3S3Data s = build_s3s3();
  for (const auto& [name, defect] : s.embed->defects())
    EXPECT_TRUE(is_zero_on_locus(defect, s.locus).zero) << name;
  // Dual vectors: alpha_j(U_k) = delta_jk on the product of spheres.
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k) {
      Form a = s.embed->apply(s.lie.frame->e("a" + std::to_string(j + 1)));
      Form b = s.embed->apply(s.lie.frame->e("b" + std::to_string(j + 1)));
      RingElement one = a.frame()->ring()->constant(j == k ? 1 : 0);
      EXPECT_TRUE(s.locus->is_zero(pair(a, s.U[k]) - one)) << j << k;
      EXPECT_TRUE(s.locus->is_zero(pair(b, s.V[k]) - one)) << j << k;
      EXPECT_TRUE(s.locus->is_zero(pair(a, s.V[k]))) << j << k;
    }
}

struct Deformed {
  S2S3Data d = build_s2s3(build_s3s3());
  const SU2Structure& s() const { return d.deformed; }
  RingElement g(const std::string& e) const { return d.deformed.frame->ring()->parse(e); }
  bool zero(const Form& a) const { return is_zero_on_locus(a, d.deformed.locus).zero; }
};

const Deformed& deformed() {
  static const Deformed data;
  return data;
}

TEST(Catalog, DeformedFamilyWedgeIdentities) {
  const Deformed& x = deformed();
  const FramePtr& E = x.s().frame;
  Form deta = d(x.s().eta);
  Form vol = transport(x.d.vol, E);
  const Form& unit = x.d.double_hypo_unit;
  EXPECT_FALSE(x.zero(unit));
  EXPECT_TRUE(x.zero(wedge(deta, deta) + unit * Rational(2, 3)));
  EXPECT_TRUE(x.zero(wedge(vol, vol)));
  // The undeformed omega1 squares to -2/9 of the unit; omega1 here carries k.
  EXPECT_TRUE(x.zero(wedge(x.s().omega1, x.s().omega1) - unit * (x.g("-2/9") * x.g("k^2"))));
}

TEST(Catalog, DeformedFamilyDoubleHypoPolynomial) {
  const Deformed& x = deformed();
  const SU2Structure& s = x.s();
  Form lhs = d(wedge(s.eta, s.omega3)) + wedge(s.omega1, s.omega1) * Rational(2);
  RingElement poly = x.g("-2/3*(2*lam^2 + lam - 6*lam*mu - 3/2*mu)");
  EXPECT_TRUE(x.zero(lhs - x.d.double_hypo_unit * poly));
  EXPECT_TRUE(classify_su2(s).flag("hypo"));
}

TEST(Catalog, DeformedFamilyMembers) {
  const Deformed& x = deformed();
  CheckReport se = classify_su2(s2s3_at(x.d, "-1/2", "0", "r3/2"));
  EXPECT_TRUE(se.flag("sasaki_einstein"));
  CheckReport dh = classify_su2(s2s3_at(x.d, "-1", "-2/9", "1"));
  EXPECT_TRUE(dh.flag("double_hypo"));
  EXPECT_FALSE(dh.flag("sasaki_einstein"));
  // lam = 1, mu = 0 is off the zero set of the polynomial.
  CheckReport off = classify_su2(s2s3_at(x.d, "1", "0", "r3"));
  EXPECT_TRUE(off.flag("hypo"));
  EXPECT_FALSE(off.flag("double_hypo"));
  EXPECT_TRUE(check_su2_compatibility(s2s3_at(x.d, "1", "0", "r3")).flag("compatible"));
}

TEST(Catalog, DeformedParametersMustSatisfyScaleRelation) {
  const Deformed& x = deformed();
  // k^2 = 3 lam (lam - 3 mu) is a ring relation; a wrong k is rejected.
  EXPECT_THROW(s2s3_at(x.d, "1", "0", "1"), RingError);
}

TEST(Catalog, LocalEinsteinFormsAtZeroParameter) {
  SU2Structure y = build_ypq(true);
  CheckReport r = classify_su2(y);
  EXPECT_TRUE(r.flag("sasaki_einstein"));
  if (y.frame->ring()->has("c")) {
    const std::size_t c = y.frame->ring()->index("c");
    for (const Form* f : {&y.eta, &y.omega1, &y.omega2, &y.omega3})
      for (const auto& [m, coeff] : f->terms()) EXPECT_FALSE(coeff.mentions(c));
  }
}

}  // namespace
}  // namespace gs::testing
