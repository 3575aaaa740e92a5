#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gstruct/lifts.hpp"
#include "gstruct/liealg.hpp"

namespace gs {

class CatalogError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using AnyStructure = std::variant<SU2Structure, SU3Structure, G2Structure>;

struct CatalogEntry {
  std::string name;
  std::string summary;
  AnyStructure structure;
  // Non-empty for one-parameter families: the derivation along the parameter.
  std::string derivation;
  std::optional<Evolution> evolution;
  std::optional<BilinearForm> metric;
  // Expected values of classification and compatibility flags.
  std::map<std::string, bool> expected;
  // Assumptions the exact checks rely on (independence of the constraint
  // forms, nonvanishing of nonzero verdicts away from degenerate points).
  std::string assumptions;
};

// Flat R^n with coordinates x1..xn and coframe dx1..dxn; extra generators
// (constants) come first in the ring.
FramePtr flat_frame(int n, const std::vector<GeneratorSpec>& extra = {},
                    const std::optional<std::vector<std::string>>& orientation = std::nullopt);
// Round sphere sum_{i<=n} x_i^2 = 1 inside the first n coordinates of frame.
LocusPtr sphere_locus(const FramePtr& frame, int n);
BilinearForm euclidean_metric(const FramePtr& frame);

// Substitutes values for generators of a structure's ring (same frame).
SU2Structure specialize(const SU2Structure& s, const std::map<std::string, RingElement>& values);

struct S6Data {
  G2Structure flat;        // phi0 and its flat Hodge dual on R^7
  FrameVector radial;      // sum x_i d/dx_i
  SU3Structure induced;    // literal hypersurface forms on the unit sphere
  SU3Structure s6;         // phase-rotated: nearly Kahler on the unit sphere
  Form F_reference;        // beta ^ dx7 + beta1
  Form psi_plus_reference; // seven-term constant 3-form
  Form dF_reference;       // three times the seven-term form
};
S6Data build_s6();

struct S5Data {
  SU2Structure literal;  // explicit forms on S^5 in R^6
  SU2Structure induced;  // from s6 along d/dx7 at x7 = 0
  Form dw1_reference;    // 3(dx123 + dx246 + dx145 - dx356)
  // psi- on S^6 contracted with d/dx7 at x7 = 0, and the twelve-term list
  // of its dx7 part.
  Form psi_minus_dx7_part, psi_minus_dx7_reference;
};
S5Data build_s5(const S6Data& s6);

struct S3S3Data {
  SU3Structure lie;           // on the coframe a1..a3, b1..b3
  BilinearForm lie_metric;
  SU3Structure ambient;       // the same forms written in R^8 coordinates
  BilinearForm ambient_metric;
  std::shared_ptr<FrameMap> embed;  // a_j, b_j -> 1-forms on R^8 (unchecked)
  LocusPtr locus;
  std::vector<FrameVector> U, V;    // dual to a_j, b_j on the locus
};
S3S3Data build_s3s3();

struct S2S3Data {
  SU2Structure induced;
  FrameVector normal;
  Form vol;             // area form of the S^2 factor, sign as in the deformation
  Form contact_reference;
  Form omega3_reference;  // -1/3 d(eta) + 2/9 vol
  Form eta_reference;     // 2/3 ((x18 - x27 + x36) dx5 + ...)
  Form omega1_reference, omega2_reference;
  // Deformation (eta, k omega1, k omega2, lam d(eta) + mu vol), k^2 = 3 lam (lam - 3 mu),
  // over the ring extended by lam, mu, k.
  SU2Structure deformed;
  Form double_hypo_unit;  // d(eta) ^ vol in the extended frame
};
S2S3Data build_s2s3(const S3S3Data& s3s3);
// Deformed structure at numeric parameters; k0^2 must equal 3 lam0 (lam0 - 3 mu0)
// and may involve r3 (square root of 3).
SU2Structure s2s3_at(const S2S3Data& d, const std::string& lam, const std::string& mu,
                     const std::string& k);

SU2Structure build_ypq(bool c_zero = false);

struct EvolutionFamilies {
  TimeFamily cs;  // hyperbolic family
  TimeFamily nh;  // trigonometric family
  SU2Structure base;
};
EvolutionFamilies build_su2xA2_evolutions();

struct AbstractModels {
  SU2Structure se;           // on the su(3) coframe
  SU3Structure nk;           // sin-cone over se
  SU2Structure double_hypo;  // symbolic mu
};
AbstractModels build_abstract_models();

// Compatibility and classification checks for any structure kind.
CheckReport check_structure(const AnyStructure& s);
// Names of expected flags that disagree with a report.
std::vector<std::string> expectation_mismatches(const CatalogEntry& e, const CheckReport& r);

std::vector<std::string> catalog_names();
CatalogEntry catalog_entry(const std::string& name);

}  // namespace gs
