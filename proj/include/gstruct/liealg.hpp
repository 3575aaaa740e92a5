#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gstruct/structures.hpp"

namespace gs {

class LieError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Left-invariant coframe: every ring generator is a constant.
struct LieCoframe {
  FramePtr frame;
};

// Frame with d e^i = the given 2-forms and d = 0 on all generators.
// d^2 is not enforced; use jacobi_check.
LieCoframe make_lie_coframe(const RingPtr& ring, const std::vector<std::string>& names,
                            const std::map<std::string, RawForm>& d_coframe);
// From structure constants c[i][j][k] (j < k): d e^i = sum c^i_jk e^jk.
LieCoframe lie_coframe_from_constants(const RingPtr& ring, const std::vector<std::string>& names,
                                      const std::vector<std::vector<std::vector<RingElement>>>& c);

CheckReport jacobi_check(const LieCoframe& l);

// eta = e5, omega1 = e12 + e34, omega2 = e13 + e42, omega3 = e14 + e23.
SU2Structure standard_su2(const FramePtr& frame, const std::vector<std::string>& names = {
                                                     "e1", "e2", "e3", "e4", "e5"});
// F = e12 + e34 + e56, psi+ + i psi- = (e1 + i e2)(e3 + i e4)(e5 + i e6).
SU3Structure standard_su3(const FramePtr& frame, const std::vector<std::string>& names = {
                                                     "e1", "e2", "e3", "e4", "e5", "e6"});

// Double hypo model with parameter mu (any element; its ring is used).
std::pair<LieCoframe, SU2Structure> model_double_hypo(const RingElement& mu);

// Deformation with parameters r, tau, mu of a common ring; r must be a
// nonzero constant or a generator with a declared inverse.
std::pair<LieCoframe, SU2Structure> deformation_family(const RingElement& r,
                                                       const RingElement& tau,
                                                       const RingElement& mu);

// su(2) + R^2 with the one-parameter family of structures (parameter rho),
// in the dual basis alpha1..3, beta1..2.
struct BasisChangeFamily {
  LieCoframe source;
  SU2Structure structure;
  LieCoframe target;          // the e-basis
  SU2Structure standard;      // the standard structure on target
  std::shared_ptr<FrameMap> change;  // source -> target
  LocusPtr locus;             // clearing locus on source, if any
  LocusPtr target_locus;
};
BasisChangeFamily su2_times_abelian_family();
// su(2) + aff(R) family, parameter mu != 0, coefficients in the ring
// localized at mu and mu^2 + 12.
BasisChangeFamily su2_times_affine_family();

// Solves linear equations in the ring generators (constant coefficients)
// by elimination; returns generator -> image.
std::map<std::string, RingElement> solve_linear(const std::vector<RingElement>& equations);

// All coefficients of a form, as equations for solve_linear.
std::vector<RingElement> coefficients(const Form& a);

// Generic frame with every structure constant a free generator named
// c<i>_<j><k>; used to test identities that follow from Leibniz alone.
LieCoframe generic_frame(const std::vector<std::string>& names, const std::string& prefix = "c");

// Substitutes generator images into the frame's structure constants.
LieCoframe substitute_constants(const LieCoframe& l, const std::map<std::string, RingElement>& images);

struct ReductionStep {
  std::string name;
  std::vector<std::pair<std::string, std::string>> relations;  // generator, expression
};
std::vector<ReductionStep> reduction_steps();
// Imposes the relation sets cumulatively on the generic double hypo frame
// and checks that each kills its residual.
CheckReport verify_reduction_steps();

}  // namespace gs
