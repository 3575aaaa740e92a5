#pragma once

#include <optional>
#include <string>
#include <variant>

#include "gstruct/structures.hpp"

namespace gs {

class LiftError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Names used for an added real parameter: the parameter itself, its sine and
// cosine, the coframe element of the new direction and the derivation along it.
struct TimeSpec {
  std::string time, sin, cos, coframe, derivation;
};
TimeSpec time_t_spec();
TimeSpec time_q_spec();

struct FrameExtension {
  std::vector<GeneratorSpec> generators;
  std::vector<std::string> derivations;
  std::map<std::string, RawForm> d_generators;
  std::vector<std::string> coframe;
  std::map<std::string, RawForm> d_coframe;
};

FramePtr extend_frame(const FramePtr& base, const FrameExtension& ext);
// base x R with coordinate ts.time and coframe element ts.coframe.
FramePtr lift_frame(const FramePtr& base, const TimeSpec& ts);
// base with ts.time, ts.sin, ts.cos as d-constants carrying the derivation.
FramePtr slice_frame(const FramePtr& base, const TimeSpec& ts);
// Pullback from lift_frame(base) to base at the parameter value whose sine
// and cosine are s0, c0 (s0^2 + c0^2 = 1).
FrameMap time_slice_map(const FramePtr& lifted, const FramePtr& base, const TimeSpec& ts,
                        const Rational& t0, const Rational& s0, const Rational& c0);

// A structure on a slice frame whose coefficients depend on a parameter.
struct TimeFamily {
  std::string derivation;
  std::variant<SU2Structure, SU3Structure> structure;
};

SU3Structure product_lift(const SU2Structure& s, const TimeSpec& ts = time_t_spec());
SU3Structure cone_cy(const SU2Structure& s, const TimeSpec& ts = time_t_spec());
SU3Structure sin_cone_nk(const SU2Structure& s, const TimeSpec& ts = time_t_spec());
TimeFamily sin_cone_nk_family(const SU2Structure& s, const TimeSpec& ts = time_t_spec());
G2Structure g2_lift(const SU3Structure& s, const TimeSpec& ts = time_q_spec());
G2Structure sin_cone_g2(const SU3Structure& s, const TimeSpec& ts = time_q_spec());
TimeFamily sin_cone_g2_family(const SU3Structure& s, const TimeSpec& ts = time_q_spec());

// f maps the ambient frame of s to the hypersurface frame; target_locus is
// the hypersurface there. With a metric, n is checked to be a unit normal.
SU2Structure hypersurface_su3_to_su2(const SU3Structure& s, const FrameVector& n, const FrameMap& f,
                                     const LocusPtr& target_locus,
                                     const BilinearForm* metric = nullptr);
SU3Structure hypersurface_g2_to_su3(const G2Structure& s, const FrameVector& n, const FrameMap& f,
                                    const LocusPtr& target_locus,
                                    const BilinearForm* metric = nullptr);

enum class Evolution { conti_salamon, nearly_hypo, nearly_half_flat, hitchin };
std::string evolution_name(Evolution e);
Evolution parse_evolution(const std::string& name);

CheckReport evolution_residual(const TimeFamily& fam, Evolution kind);

}  // namespace gs
