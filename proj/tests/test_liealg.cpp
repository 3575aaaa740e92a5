#include <gtest/gtest.h>

#include "support.hpp"

namespace gs::testing {
namespace {

const std::vector<std::string> kE5 = {"e1", "e2", "e3", "e4", "e5"};

TEST(LieAlgebra, JacobiHoldsForMaurerCartanFrames) {
  EXPECT_TRUE(jacobi_check(LieCoframe{build_s3s3().lie.frame}).flag("jacobi"));
  EXPECT_TRUE(jacobi_check(model_double_hypo(Ring::create({})->zero()).first).flag("jacobi"));
  EXPECT_TRUE(jacobi_check(su2_times_abelian_family().source).flag("jacobi"));
}

TEST(LieAlgebra, JacobiFailureDetected) {
  RingPtr r = Ring::create({});
  LieCoframe l = make_lie_coframe(r, {"e1", "e2", "e3", "e4"},
                                  {{"e1", {raw_term("1", {"e2", "e3"})}}, {"e3", {raw_term("1", {"e1", "e4"})}}});
  CheckReport rep = jacobi_check(l);
  EXPECT_FALSE(rep.flag("jacobi"));
  EXPECT_EQ(rep.item("d(d e1)").residual, l.frame->basis({"e1", "e2", "e4"}));
  EXPECT_EQ(rep.item("d(d e3)").residual, l.frame->basis({"e2", "e3", "e4"}));
  EXPECT_TRUE(rep.verdict("d(d e2)"));
}

// Jacobi identity from brackets [e_j, e_k] = -sum_i C[i][j][k] e_i.
bool bracket_jacobi(const std::vector<std::vector<std::vector<Rational>>>& C) {
  const int n = static_cast<int>(C.size());
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k)
      for (int l = k + 1; l < n; ++l)
        for (int i = 0; i < n; ++i) {
          Rational s = 0;
          for (int m = 0; m < n; ++m)
            s += C[m][j][k] * C[i][m][l] + C[m][k][l] * C[i][m][j] + C[m][l][j] * C[i][m][k];
          if (s != 0) return false;
        }
  return true;
}

TEST(LieAlgebra, JacobiCheckAgreesWithBracketOracle) {
  std::mt19937_64 g(31);
  RingPtr r = Ring::create({});
  const int n = 4;
  int holds = 0;
  for (int inst = 0; inst < 100; ++inst) {
    std::vector<std::vector<std::vector<Rational>>> C(n, std::vector<std::vector<Rational>>(n, std::vector<Rational>(n)));
    int nonzero = 1 + static_cast<int>(g() % 3);
    for (int t = 0; t < nonzero; ++t) {
      int i = static_cast<int>(g() % n), j = static_cast<int>(g() % n), k = static_cast<int>(g() % n);
      if (j == k) continue;
      Rational v = random_nonzero(g, 2);
      C[i][j][k] = v;
      C[i][k][j] = -v;
    }
    std::vector<std::vector<std::vector<RingElement>>> c(n, std::vector<std::vector<RingElement>>(n, std::vector<RingElement>(n, r->zero())));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) c[i][j][k] = r->constant(C[i][j][k]);
    LieCoframe l = lie_coframe_from_constants(r, {"e1", "e2", "e3", "e4"}, c);
    bool oracle = bracket_jacobi(C);
    ASSERT_EQ(jacobi_check(l).flag("jacobi"), oracle) << "instance " << inst;
    if (oracle) ++holds;
  }
  EXPECT_GT(holds, 10);
  EXPECT_LT(holds, 90);
}

TEST(LieAlgebra, DoubleHypoModelAtSampleParameters) {
  RingPtr q = Ring::create({});
  for (int mu : {0, 1, -2}) {
    auto [l, s] = model_double_hypo(q->constant(mu));
    EXPECT_TRUE(jacobi_check(l).flag("jacobi")) << mu;
    CheckReport r = classify_su2(s);
    EXPECT_TRUE(r.flag("double_hypo")) << mu;
    EXPECT_FALSE(r.flag("sasaki_einstein")) << mu;
    EXPECT_TRUE(check_su2_compatibility(s).flag("compatible")) << mu;
  }
}

TEST(LieAlgebra, AbelianFamilyBasisChange) {
  auto f = su2_times_abelian_family();
  for (const auto& [name, defect] : f.change->defects()) EXPECT_TRUE(defect.is_zero()) << name;
  EXPECT_TRUE(jacobi_check(f.target).flag("jacobi"));
  EXPECT_TRUE(check_su2_compatibility(f.standard).flag("compatible"));
  CheckReport a = classify_su2(f.structure), b = classify_su2(f.standard);
  for (const char* flag : {"hypo", "nearly_hypo", "double_hypo", "sasaki_einstein"})
    EXPECT_EQ(a.flag(flag), b.flag(flag)) << flag;
}

TEST(LieAlgebra, AffineFamilyBasisChange) {
  auto f = su2_times_affine_family();
  for (const auto& [name, defect] : f.change->defects())
    EXPECT_TRUE(is_zero_on_locus(defect, f.target_locus).zero) << name;
  CheckReport a = classify_su2(f.structure), b = classify_su2(f.standard);
  EXPECT_TRUE(a.flag("double_hypo"));
  EXPECT_TRUE(b.flag("double_hypo"));
  EXPECT_TRUE(check_su2_compatibility(f.structure).flag("compatible"));
}

TEST(LieAlgebra, DeformationDoubleHypoCriterion) {
  RingPtr q = Ring::create({});
  for (int mu : {0, 3, -3}) {
    Rational m(mu);
    auto on = deformation_family(q->constant(-3), q->constant(Rational(-4 - m * m / 3)), q->constant(m)).second;
    CheckReport r = classify_su2(on);
    EXPECT_TRUE(r.flag("hypo")) << mu;
    EXPECT_TRUE(r.flag("double_hypo")) << mu;
  }
  auto off = deformation_family(q->constant(-3), q->constant(0), q->constant(0)).second;
  CheckReport r = classify_su2(off);
  EXPECT_TRUE(r.flag("hypo"));
  EXPECT_FALSE(r.flag("double_hypo"));
  EXPECT_FALSE(classify_su2(deformation_family(q->constant(1), q->constant(-4), q->constant(0)).second).flag("double_hypo"));
}

TEST(LieAlgebra, DeformationRejectsZeroScale) {
  RingPtr q = Ring::create({});
  EXPECT_ANY_THROW(deformation_family(q->zero(), q->constant(1), q->constant(0)));
}

TEST(LieAlgebra, ReductionStepsKillTheirResiduals) {
  auto steps = reduction_steps();
  ASSERT_EQ(steps.size(), 6u);
  CheckReport r = verify_reduction_steps();
  EXPECT_TRUE(r.all_passed()) << r.to_text();
  EXPECT_GE(r.items().size(), steps.size());
}

TEST(LieAlgebra, GenericFrameCoefficients) {
  LieCoframe g = generic_frame(kE5);
  SU2Structure s = standard_su2(g.frame, kE5);
  const auto& r = g.frame->ring();
  Form dw1 = d(s.omega1);
  EXPECT_EQ(dw1.coefficient({"e1", "e2", "e5"}), -(r->gen("c1_15") + r->gen("c2_25")));
  EXPECT_EQ(dw1.coefficient({"e1", "e2", "e3"}), -(r->gen("c1_13") + r->gen("c2_23") + r->gen("c4_12")));
  EXPECT_EQ(g.frame->ring()->size(), 50u);
  EXPECT_FALSE(jacobi_check(g).flag("jacobi"));
}

TEST(LieAlgebra, SolveLinear) {
  RingPtr r = Ring::create({{"x", 0, {}, {}, {}}, {"y", 0, {}, {}, {}}, {"z", 0, {}, {}, {}}});
  auto sol = solve_linear({r->parse("x + y - 1"), r->parse("x - y - z")});
  ASSERT_EQ(sol.size(), 2u);
  // Substituting the solution satisfies both equations.
  Substitution s = Substitution::by_name(r, r, sol, false);
  EXPECT_TRUE(s.apply(r->parse("x + y - 1")).is_zero());
  EXPECT_TRUE(s.apply(r->parse("x - y - z")).is_zero());
}

TEST(LieAlgebra, CoefficientsOfAForm) {
  FramePtr R3 = flat_frame(3);
  const auto& r = R3->ring();
  Form a = R3->basis({"dx1", "dx2"}) * r->gen("x1") + R3->basis({"dx2", "dx3"}) * Rational(2);
  auto cs = coefficients(a);
  ASSERT_EQ(cs.size(), 2u);
  EXPECT_TRUE(std::find(cs.begin(), cs.end(), r->gen("x1")) != cs.end());
}

}  // namespace
}  // namespace gs::testing
