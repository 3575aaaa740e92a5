#include "gstruct/lifts.hpp"

#include "gstruct/expr.hpp"

namespace gs {

TimeSpec time_t_spec() { return {"t", "sin_t", "cos_t", "dt", "d_t"}; }
TimeSpec time_q_spec() { return {"q", "sin_q", "cos_q", "dq", "d_q"}; }

FramePtr extend_frame(const FramePtr& base, const FrameExtension& ext) {
  FrameSpec spec = base->spec();
  spec.ring = base->ring()->extend(ext.generators, ext.derivations);
  for (const auto& c : ext.coframe) {
    if (base->has(c)) throw LiftError("coframe element '" + c + "' already present");
    spec.coframe.push_back(c);
  }
  for (const auto& [k, v] : ext.d_generators) spec.d_generators[k] = v;
  for (const auto& [k, v] : ext.d_coframe) spec.d_coframe[k] = v;
  if (spec.orientation) {
    for (const auto& c : ext.coframe) spec.orientation->push_back(c);
  }
  return DifferentialFrame::create(std::move(spec));
}

namespace {

std::vector<GeneratorSpec> time_generators(const TimeSpec& ts) {
  GeneratorSpec t{ts.time, 0, {}, {}, {{ts.derivation, raw_constant(1)}}};
  GeneratorSpec s{ts.sin, 0, {}, {}, {{ts.derivation, raw_generator(ts.cos)}}};
  GeneratorSpec c{ts.cos, 2, parse_raw("1 - " + ts.sin + "^2"), {},
                  {{ts.derivation, raw_scale(raw_generator(ts.sin), -1)}}};
  return {t, s, c};
}

void check_names(const FramePtr& base, const TimeSpec& ts) {
  for (const auto& n : {ts.time, ts.sin, ts.cos}) {
    if (base->ring()->has(n)) throw LiftError("name collision: generator '" + n + "' exists");
  }
  if (base->has(ts.coframe))
    throw LiftError("name collision: coframe element '" + ts.coframe + "' exists");
}

}  // namespace

FramePtr lift_frame(const FramePtr& base, const TimeSpec& ts) {
  check_names(base, ts);
  FrameExtension ext;
  ext.generators = time_generators(ts);
  ext.derivations = {ts.derivation};
  ext.coframe = {ts.coframe};
  ext.d_generators[ts.time] = {raw_term("1", {ts.coframe})};
  ext.d_generators[ts.sin] = {raw_term(ts.cos, {ts.coframe})};
  ext.d_generators[ts.cos] = {raw_term("-" + ts.sin, {ts.coframe})};
  return extend_frame(base, ext);
}

FramePtr slice_frame(const FramePtr& base, const TimeSpec& ts) {
  check_names(base, ts);
  FrameExtension ext;
  ext.generators = time_generators(ts);
  ext.derivations = {ts.derivation};
  for (const auto& n : {ts.time, ts.sin, ts.cos}) ext.d_generators[n] = {};
  return extend_frame(base, ext);
}

FrameMap time_slice_map(const FramePtr& lifted, const FramePtr& base, const TimeSpec& ts,
                        const Rational& t0, const Rational& s0, const Rational& c0) {
  const auto& r = base->ring();
  return FrameMap::by_name(lifted, base,
                           {{ts.time, r->constant(t0)}, {ts.sin, r->constant(s0)},
                            {ts.cos, r->constant(c0)}},
                           {{ts.coframe, base->zero(1)}});
}

namespace {

LocusPtr move_locus(const LocusPtr& l, const FramePtr& f) { return l ? l->transport(f) : nullptr; }

struct Lifted {
  FramePtr frame;
  Form dt;
  RingElement t, s, c;
};

Lifted make_lift(const FramePtr& base, const TimeSpec& ts, bool slice) {
  Lifted l;
  l.frame = slice ? slice_frame(base, ts) : lift_frame(base, ts);
  if (!slice) l.dt = l.frame->e(ts.coframe);
  l.t = l.frame->ring()->gen(ts.time);
  l.s = l.frame->ring()->gen(ts.sin);
  l.c = l.frame->ring()->gen(ts.cos);
  return l;
}

}  // namespace

SU3Structure product_lift(const SU2Structure& s, const TimeSpec& ts) {
  auto L = make_lift(s.frame, ts, false);
  Form eta = transport(s.eta, L.frame);
  Form w1 = transport(s.omega1, L.frame);
  Form w2 = transport(s.omega2, L.frame);
  Form w3 = transport(s.omega3, L.frame);
  SU3Structure out;
  out.frame = L.frame;
  out.F = w1 + wedge(eta, L.dt);
  out.psi_plus = wedge(w2, eta) - wedge(w3, L.dt);
  out.psi_minus = wedge(w3, eta) + wedge(w2, L.dt);
  out.locus = move_locus(s.locus, L.frame);
  return out;
}

SU3Structure cone_cy(const SU2Structure& s, const TimeSpec& ts) {
  auto L = make_lift(s.frame, ts, false);
  Form eta = transport(s.eta, L.frame);
  Form w1 = transport(s.omega1, L.frame);
  Form w2 = transport(s.omega2, L.frame);
  Form w3 = transport(s.omega3, L.frame);
  RingElement t2 = L.t * L.t, t3 = t2 * L.t;
  SU3Structure out;
  out.frame = L.frame;
  out.F = w3 * t2 + wedge(eta, L.dt) * L.t;
  // Psi = t^2 (omega2 - i omega1) ^ (t eta + i dt), the small-t limit of the sin-cone.
  out.psi_plus = wedge(w2, eta) * t3 + wedge(w1, L.dt) * t2;
  out.psi_minus = wedge(w2, L.dt) * t2 - wedge(w1, eta) * t3;
  out.locus = move_locus(s.locus, L.frame);
  return out;
}

SU3Structure sin_cone_nk(const SU2Structure& s, const TimeSpec& ts) {
  auto L = make_lift(s.frame, ts, false);
  Form eta = transport(s.eta, L.frame);
  Form w1 = transport(s.omega1, L.frame);
  Form w2 = transport(s.omega2, L.frame);
  Form w3 = transport(s.omega3, L.frame);
  RingElement s2 = L.s * L.s, s3 = s2 * L.s;
  Form rot = w3 * L.s - w1 * L.c;  // -cos t w1 + sin t w3
  SU3Structure out;
  out.frame = L.frame;
  out.F = (w1 * L.s + w3 * L.c) * s2 + wedge(eta, L.dt) * L.s;
  out.psi_plus = wedge(eta, w2) * s3 - wedge(rot, L.dt) * s2;
  out.psi_minus = wedge(rot, eta) * s3 + wedge(w2, L.dt) * s2;
  out.locus = move_locus(s.locus, L.frame);
  return out;
}

TimeFamily sin_cone_nk_family(const SU2Structure& s, const TimeSpec& ts) {
  auto L = make_lift(s.frame, ts, true);
  Form eta = transport(s.eta, L.frame);
  Form w1 = transport(s.omega1, L.frame);
  Form w2 = transport(s.omega2, L.frame);
  Form w3 = transport(s.omega3, L.frame);
  RingElement s2 = L.s * L.s;
  SU2Structure f;
  f.frame = L.frame;
  f.eta = eta * L.s;
  f.omega1 = (w1 * L.s + w3 * L.c) * s2;
  f.omega2 = w2 * s2;
  f.omega3 = (w3 * L.s - w1 * L.c) * s2;
  f.locus = move_locus(s.locus, L.frame);
  return TimeFamily{ts.derivation, f};
}

G2Structure g2_lift(const SU3Structure& s, const TimeSpec& ts) {
  auto L = make_lift(s.frame, ts, false);
  Form F = transport(s.F, L.frame);
  Form pp = transport(s.psi_plus, L.frame);
  Form pm = transport(s.psi_minus, L.frame);
  G2Structure out;
  out.frame = L.frame;
  out.phi = wedge(F, L.dt) - pm;
  out.star_phi = wedge(F, F) * Rational(1, 2) + wedge(pp, L.dt);
  out.locus = move_locus(s.locus, L.frame);
  return out;
}

namespace {

// (F(q), psi+(q), psi-(q)) on the given frame.
void g2_family_forms(const Form& F, const Form& pp, const Form& pm, const RingElement& s,
                     const RingElement& c, Form& Fq, Form& ppq, Form& pmq) {
  RingElement s2 = s * s, s3 = s2 * s;
  Fq = F * s2;
  ppq = (pp * s + pm * c) * s3;
  pmq = (pm * s - pp * c) * s3;
}

}  // namespace

G2Structure sin_cone_g2(const SU3Structure& s, const TimeSpec& ts) {
  auto L = make_lift(s.frame, ts, false);
  Form Fq, ppq, pmq;
  g2_family_forms(transport(s.F, L.frame), transport(s.psi_plus, L.frame),
                  transport(s.psi_minus, L.frame), L.s, L.c, Fq, ppq, pmq);
  G2Structure out;
  out.frame = L.frame;
  out.phi = wedge(Fq, L.dt) - pmq;
  out.star_phi = wedge(Fq, Fq) * Rational(1, 2) + wedge(ppq, L.dt);
  out.locus = move_locus(s.locus, L.frame);
  return out;
}

TimeFamily sin_cone_g2_family(const SU3Structure& s, const TimeSpec& ts) {
  auto L = make_lift(s.frame, ts, true);
  SU3Structure f;
  f.frame = L.frame;
  g2_family_forms(transport(s.F, L.frame), transport(s.psi_plus, L.frame),
                  transport(s.psi_minus, L.frame), L.s, L.c, f.F, f.psi_plus, f.psi_minus);
  f.locus = move_locus(s.locus, L.frame);
  return TimeFamily{ts.derivation, f};
}

namespace {

void check_normal(const FramePtr& frame, const FrameVector& n, const FrameMap& f,
                  const LocusPtr& target_locus,
                  const BilinearForm* metric) {
  if (n.frame() != frame) throw LiftError("normal vector from another frame");
  if (f.source() != frame) throw LiftError("pullback map does not start at the ambient frame");
  if (!metric) return;
  RingElement unit = f.apply(eval_bilinear(*metric, n, n) - frame->ring()->one());
  bool ok = target_locus ? target_locus->is_zero(unit) : unit.is_zero();
  if (!ok) throw LiftError("normal vector is not of unit length: g(n,n) - 1 = " + unit.to_string());
  Form nu = frame->zero(1);
  for (int j = 0; j < frame->dim(); ++j) {
    nu += frame->e(frame->name(j)) * eval_bilinear(*metric, n, FrameVector::basis(frame, frame->name(j)));
  }
  if (!is_zero_on_locus(f.apply(nu), target_locus).zero)
    throw LiftError("vector is not normal to the hypersurface");
}

}  // namespace

SU2Structure hypersurface_su3_to_su2(const SU3Structure& s, const FrameVector& n, const FrameMap& f,
                                     const LocusPtr& target_locus, const BilinearForm* metric) {
  check_normal(s.frame, n, f, target_locus, metric);
  SU2Structure out;
  out.frame = f.target();
  out.eta = f.apply(-interior(n, s.F));
  out.omega1 = f.apply(s.F);
  out.omega2 = f.apply(interior(n, s.psi_minus));
  out.omega3 = f.apply(-interior(n, s.psi_plus));
  out.locus = target_locus;
  return out;
}

SU3Structure hypersurface_g2_to_su3(const G2Structure& s, const FrameVector& n, const FrameMap& f,
                                    const LocusPtr& target_locus, const BilinearForm* metric) {
  check_normal(s.frame, n, f, target_locus, metric);
  SU3Structure out;
  out.frame = f.target();
  out.F = f.apply(interior(n, s.phi));
  out.psi_plus = f.apply(-interior(n, s.star_phi));
  out.psi_minus = f.apply(-s.phi);
  out.locus = target_locus;
  return out;
}

std::string evolution_name(Evolution e) {
  switch (e) {
    case Evolution::conti_salamon: return "conti_salamon";
    case Evolution::nearly_hypo: return "nearly_hypo";
    case Evolution::nearly_half_flat: return "nearly_half_flat";
    case Evolution::hitchin: return "hitchin";
  }
  return "";
}

Evolution parse_evolution(const std::string& name) {
  if (name == "cs" || name == "conti_salamon") return Evolution::conti_salamon;
  if (name == "nearly-hypo" || name == "nearly_hypo") return Evolution::nearly_hypo;
  if (name == "nhf" || name == "nearly_half_flat") return Evolution::nearly_half_flat;
  if (name == "hitchin") return Evolution::hitchin;
  throw LiftError("unknown evolution equations '" + name + "'");
}

CheckReport evolution_residual(const TimeFamily& fam, Evolution kind) {
  const std::string& D = fam.derivation;
  CheckReport r;
  const std::string flag = evolution_name(kind);
  if (kind == Evolution::conti_salamon || kind == Evolution::nearly_hypo) {
    const auto* s = std::get_if<SU2Structure>(&fam.structure);
    if (!s) throw LiftError(flag + " evolution needs an SU(2) family");
    if (!s->frame->ring()->has_derivation(D)) throw LiftError("family has no derivation '" + D + "'");
    const auto& L = s->locus;
    Form e3 = wedge(s->eta, s->omega3);
    Form e2 = wedge(s->eta, s->omega2);
    if (kind == Evolution::conti_salamon) {
      r.add("D(omega1) + d(eta)", s->omega1.derive_coefficients(D) + d(s->eta), L);
      r.add("D(eta^omega3) - d(omega2)", e3.derive_coefficients(D) - d(s->omega2), L);
      r.add("D(eta^omega2) + d(omega3)", e2.derive_coefficients(D) + d(s->omega3), L);
    } else {
      r.add("D(omega1) + d(eta) + 3 omega3",
            s->omega1.derive_coefficients(D) + d(s->eta) + s->omega3 * Rational(3), L);
      r.add("D(eta^omega3) - d(omega2) - 4 eta^omega1",
            e3.derive_coefficients(D) - d(s->omega2) - wedge(s->eta, s->omega1) * Rational(4), L);
      r.add("D(eta^omega2) + d(omega3)", e2.derive_coefficients(D) + d(s->omega3), L);
    }
  } else {
    const auto* s = std::get_if<SU3Structure>(&fam.structure);
    if (!s) throw LiftError(flag + " evolution needs an SU(3) family");
    if (!s->frame->ring()->has_derivation(D)) throw LiftError("family has no derivation '" + D + "'");
    const auto& L = s->locus;
    Form dpm = s->psi_minus.derive_coefficients(D);
    Form half_dff = wedge(s->F, s->F).derive_coefficients(D) * Rational(1, 2);
    if (kind == Evolution::nearly_half_flat) {
      r.add("D(psi-) - 4 psi+ + d(F)", dpm - s->psi_plus * Rational(4) + d(s->F), L);
    } else {
      r.add("D(psi-) + d(F)", dpm + d(s->F), L);
    }
    r.add("d(psi+) + 1/2 D(F^F)", d(s->psi_plus) + half_dff, L);
  }
  r.set_flag(flag, r.all_passed());
  return r;
}

}  // namespace gs
