#include "gstruct/catalog.hpp"

#include <cctype>
#include <functional>

#include "gstruct/expr.hpp"

namespace gs {

namespace {

std::string dx(int i) { return "dx" + std::to_string(i); }
std::string xv(int i) { return "x" + std::to_string(i); }

using TermList = std::vector<std::pair<std::string, std::vector<std::string>>>;

// Terms written as {coefficient, "i j k"} with dx indices.
Form dx_form(const FramePtr& f, const std::vector<std::pair<std::string, std::string>>& terms,
             int degree) {
  TermList t;
  for (const auto& [c, idx] : terms) {
    std::vector<std::string> names;
    for (char ch : idx) {
      if (ch != ' ') names.push_back(dx(ch - '0'));
    }
    t.emplace_back(c, names);
  }
  return f->parse(t, degree);
}

Form sum_x_dx(const FramePtr& f, int from, int to) {
  Form out = f->zero(1);
  for (int i = from; i <= to; ++i) out += f->e(dx(i)) * f->ring()->gen(xv(i));
  return out;
}

std::string sum_squares(int from, int to) {
  std::string s = "1";
  for (int i = from; i <= to; ++i) s += " - " + xv(i) + "^2";
  return s;
}

GeneratorSpec rule(const std::string& name, unsigned power, const std::string& rhs) {
  return GeneratorSpec{name, power, parse_raw(rhs), {}, {}};
}

GeneratorSpec sqrt3_spec() { return GeneratorSpec{"r3", 2, raw_constant(3), {}, {}}; }

}  // namespace

FramePtr flat_frame(int n, const std::vector<GeneratorSpec>& extra,
                    const std::optional<std::vector<std::string>>& orientation) {
  std::vector<GeneratorSpec> gens = extra;
  FrameSpec spec;
  for (const auto& g : extra) spec.d_generators[g.name] = {};
  for (int i = 1; i <= n; ++i) {
    gens.push_back(GeneratorSpec{xv(i), 0, {}, {}, {}});
    spec.coframe.push_back(dx(i));
    spec.d_generators[xv(i)] = {raw_term("1", {dx(i)})};
  }
  spec.ring = Ring::create(std::move(gens));
  spec.orientation = orientation;
  return DifferentialFrame::create(std::move(spec));
}

LocusPtr sphere_locus(const FramePtr& frame, int n) {
  return std::make_shared<Locus>(frame, std::vector<Form>{sum_x_dx(frame, 1, n)},
                                 std::vector<GeneratorSpec>{rule(xv(n), 2, sum_squares(1, n - 1))});
}

BilinearForm euclidean_metric(const FramePtr& frame) {
  const auto& r = frame->ring();
  std::vector<std::vector<RingElement>> m(frame->dim(), std::vector<RingElement>(frame->dim(), r->zero()));
  for (int i = 0; i < frame->dim(); ++i) m[i][i] = r->one();
  return BilinearForm(frame, std::move(m));
}

SU2Structure specialize(const SU2Structure& s, const std::map<std::string, RingElement>& values) {
  FrameMap f = FrameMap::by_name(s.frame, s.frame, values);
  return SU2Structure{s.frame, f.apply(s.eta), f.apply(s.omega1), f.apply(s.omega2),
                      f.apply(s.omega3), s.locus};
}

// ---------------------------------------------------------------------------
// S^6 and S^5

S6Data build_s6() {
  // Reversed orientation: with it the hypersurface forms are a phase
  // rotation of the nearly Kahler forms with positive constant.
  FramePtr R7 = flat_frame(7, {}, std::vector<std::string>{"dx2", "dx1", "dx3", "dx4", "dx5", "dx6", "dx7"});
  const auto& ring = R7->ring();
  S6Data out;
  Form phi0 = dx_form(R7,
                      {{"1", "123"}, {"1", "145"}, {"-1", "167"}, {"1", "246"},
                       {"1", "257"}, {"1", "347"}, {"-1", "356"}},
                      3);
  out.flat = G2Structure{R7, phi0, hodge_flat(phi0), nullptr};
  std::vector<RingElement> comps;
  for (int i = 1; i <= 7; ++i) comps.push_back(ring->gen(xv(i)));
  out.radial = FrameVector(R7, comps);
  LocusPtr sphere = sphere_locus(R7, 7);
  BilinearForm g = euclidean_metric(R7);
  FrameMap id = FrameMap::by_name(R7, R7);
  out.induced = hypersurface_g2_to_su3(out.flat, out.radial, id, sphere, &g);
  out.s6 = SU3Structure{R7, out.induced.F, -out.induced.psi_minus, out.induced.psi_plus, sphere};

  Form beta = dx_form(R7, {{"x6", "1"}, {"-x1", "6"}, {"x2", "5"}, {"-x5", "2"}, {"-x4", "3"}, {"x3", "4"}}, 1);
  Form beta1 = dx_form(R7,
                       {{"-x7", "16"}, {"x7", "25"}, {"x7", "34"}, {"x1", "23"}, {"x3", "12"},
                        {"-x2", "13"}, {"x1", "45"}, {"x5", "14"}, {"-x4", "15"}, {"x2", "46"},
                        {"x6", "24"}, {"-x4", "26"}, {"-x3", "56"}, {"-x6", "35"}, {"x5", "36"}},
                       2);
  out.F_reference = wedge(beta, R7->e("dx7")) + beta1;
  out.psi_plus_reference = dx_form(R7,
                                   {{"1", "257"}, {"1", "347"}, {"-1", "167"}, {"1", "123"},
                                    {"1", "145"}, {"1", "246"}, {"-1", "356"}},
                                   3);
  out.dF_reference = out.psi_plus_reference * Rational(3);
  return out;
}

S5Data build_s5(const S6Data& s6) {
  FramePtr R6 = flat_frame(6);
  LocusPtr sphere = sphere_locus(R6, 6);
  S5Data out;
  SU2Structure& s = out.literal;
  s.frame = R6;
  s.locus = sphere;
  s.eta = dx_form(R6, {{"x6", "1"}, {"-x1", "6"}, {"x2", "5"}, {"-x5", "2"}, {"x3", "4"}, {"-x4", "3"}}, 1);
  s.omega1 = dx_form(R6,
                     {{"x3", "12"}, {"-x2", "13"}, {"x1", "23"}, {"x5", "14"}, {"-x4", "15"},
                      {"x1", "45"}, {"x6", "24"}, {"-x4", "26"}, {"x2", "46"}, {"x5", "36"},
                      {"-x6", "35"}, {"-x3", "56"}},
                     2);
  s.omega2 = dx_form(R6,
                     {{"-x4", "12"}, {"x5", "13"}, {"x2", "14"}, {"-x3", "15"}, {"x6", "23"},
                      {"-x1", "24"}, {"-x3", "26"}, {"x1", "35"}, {"x2", "36"}, {"x6", "45"},
                      {"-x5", "46"}, {"x4", "56"}},
                     2);
  s.omega3 = dx_form(R6, {{"1", "16"}, {"-1", "34"}, {"-1", "25"}}, 2);
  out.dw1_reference = dx_form(R6, {{"3", "123"}, {"3", "246"}, {"3", "145"}, {"-3", "356"}}, 3);

  const FramePtr& R7 = s6.s6.frame;
  FrameMap slice = FrameMap::by_name(R7, R6, {{"x7", R6->ring()->zero()}}, {{"dx7", R6->zero(1)}});
  FrameVector n = FrameVector::basis(R7, "dx7");
  BilinearForm g = euclidean_metric(R7);
  out.induced = hypersurface_su3_to_su2(s6.s6, n, slice, sphere, &g);
  out.psi_minus_dx7_part = slice.apply(interior(n, s6.s6.psi_minus));
  out.psi_minus_dx7_reference = s.omega2;
  return out;
}

// ---------------------------------------------------------------------------
// S^3 x S^3 and S^2 x S^3

S3S3Data build_s3s3() {
  RingPtr ring = Ring::create({sqrt3_spec()});
  std::map<std::string, RawForm> dmc;
  for (const std::string p : {"a", "b"}) {
    dmc[p + "1"] = {raw_term("-1", {p + "2", p + "3"})};
    dmc[p + "2"] = {raw_term("1", {p + "1", p + "3"})};
    dmc[p + "3"] = {raw_term("-1", {p + "1", p + "2"})};
  }
  LieCoframe lie = make_lie_coframe(ring, {"a1", "a2", "a3", "b1", "b2", "b3"}, dmc);
  const FramePtr& L = lie.frame;
  auto B = [&](std::vector<std::string> n) { return L->basis(n); };
  auto P = [&](const std::string& s) { return ring->parse(s); };

  FramePtr R8 = flat_frame(8, {sqrt3_spec()});
  S3S3Data out{SU3Structure{}, euclidean_metric(L), SU3Structure{}, euclidean_metric(R8), nullptr,
               nullptr, {}, {}};
  SU3Structure& s = out.lie;
  s.frame = L;
  s.F = (B({"a1", "b1"}) + B({"a2", "b2"}) + B({"a3", "b3"})) * P("r3/18");
  s.psi_plus = (-B({"a1", "a2", "b3"}) + B({"a1", "a3", "b2"}) - B({"a2", "a3", "b1"}) +
                B({"a1", "b2", "b3"}) - B({"a2", "b1", "b3"}) + B({"a3", "b1", "b2"})) *
               P("r3/54");
  s.psi_minus = (B({"a1", "a2", "a3"}) * Rational(2) - B({"a1", "a2", "b3"}) + B({"a1", "a3", "b2"}) -
                 B({"a2", "a3", "b1"}) - B({"a1", "b2", "b3"}) + B({"a2", "b1", "b3"}) -
                 B({"a3", "b1", "b2"}) + B({"b1", "b2", "b3"}) * Rational(2)) *
                Rational(1, 54);
  auto metric_terms = [](const std::function<Form(const std::string&)>& e) {
    std::vector<std::tuple<Rational, Form, Form>> t;
    for (const std::string j : {"1", "2", "3"}) {
      t.emplace_back(Rational(1, 9), e("a" + j), e("a" + j));
      t.emplace_back(Rational(1, 9), e("b" + j), e("b" + j));
      t.emplace_back(Rational(-1, 9), e("a" + j), e("b" + j));
    }
    return t;
  };
  out.lie_metric = BilinearForm::from_products(L, metric_terms([&](const std::string& n) { return L->e(n); }));

  // a_j = 2 (x4 dx1 + ...) pattern on each factor; offset 0 for a, 4 for b.
  auto quaternion_forms = [&](int o) {
    auto c = [&](int sign, int i) { return std::string(sign < 0 ? "-2*" : "2*") + xv(i + o); };
    std::vector<Form> f;
    f.push_back(R8->parse({{c(1, 4), {dx(1 + o)}}, {c(1, 3), {dx(2 + o)}},
                           {c(-1, 2), {dx(3 + o)}}, {c(-1, 1), {dx(4 + o)}}}, 1));
    f.push_back(R8->parse({{c(-1, 3), {dx(1 + o)}}, {c(1, 4), {dx(2 + o)}},
                           {c(1, 1), {dx(3 + o)}}, {c(-1, 2), {dx(4 + o)}}}, 1));
    f.push_back(R8->parse({{c(1, 2), {dx(1 + o)}}, {c(-1, 1), {dx(2 + o)}},
                           {c(1, 4), {dx(3 + o)}}, {c(-1, 3), {dx(4 + o)}}}, 1));
    return f;
  };
  std::vector<Form> al = quaternion_forms(0), be = quaternion_forms(4);
  std::map<std::string, Form> images;
  for (int j = 0; j < 3; ++j) {
    images["a" + std::to_string(j + 1)] = al[j];
    images["b" + std::to_string(j + 1)] = be[j];
  }
  // The Maurer-Cartan equations hold only on the product of spheres.
  out.embed = std::make_shared<FrameMap>(L, R8, std::map<std::string, RingElement>{{"r3", R8->ring()->gen("r3")}},
                                         images, false);
  out.locus = std::make_shared<Locus>(
      R8, std::vector<Form>{sum_x_dx(R8, 1, 4), sum_x_dx(R8, 5, 8)},
      std::vector<GeneratorSpec>{rule("x4", 2, sum_squares(1, 3)), rule("x8", 2, sum_squares(5, 7))});
  out.ambient = SU3Structure{R8, out.embed->apply(s.F), out.embed->apply(s.psi_plus),
                             out.embed->apply(s.psi_minus), out.locus};
  out.ambient_metric = BilinearForm::from_products(R8, metric_terms([&](const std::string& n) { return images.at(n); }));
  for (int j = 0; j < 3; ++j) {
    for (auto* group : {&out.U, &out.V}) {
      const Form& a = group == &out.U ? al[j] : be[j];
      std::vector<RingElement> comps;
      for (int i = 0; i < 8; ++i) comps.push_back(a.coefficient(Mask(1) << i) * Rational(1, 4));
      group->push_back(FrameVector(R8, comps));
    }
  }
  return out;
}

S2S3Data build_s2s3(const S3S3Data& s3) {
  const FramePtr& R8 = s3.ambient.frame;
  const auto& ring = R8->ring();
  auto X = [&](int i) { return ring->gen(xv(i)); };
  S2S3Data out;
  out.normal = FrameVector(R8);
  for (int i = 1; i <= 3; ++i)
    out.normal = out.normal + s3.U[i - 1] * (X(i) * Rational(2)) + s3.V[i - 1] * X(i);
  out.normal = out.normal * ring->parse("-r3");

  LocusPtr hyper = std::make_shared<Locus>(
      R8, std::vector<Form>{R8->e("dx4"), sum_x_dx(R8, 1, 4), sum_x_dx(R8, 5, 8)},
      std::vector<GeneratorSpec>{GeneratorSpec{"x4", 1, {}, {}, {}}, rule("x3", 2, "1 - x1^2 - x2^2"),
                                 rule("x8", 2, sum_squares(5, 7))});
  FrameMap at_x4_zero = FrameMap::by_name(R8, R8, {{"x4", ring->zero()}}, {{"dx4", R8->zero(1)}});
  out.induced = hypersurface_su3_to_su2(s3.ambient, out.normal, at_x4_zero, hyper, &s3.ambient_metric);
  const SU2Structure& s = out.induced;

  out.vol = dx_form(R8, {{"-x3", "12"}, {"x2", "13"}, {"-x1", "23"}}, 2);
  Form b123 = wedge(s3.embed->apply(s3.lie.frame->e("b1")), s3.embed->apply(s3.lie.frame->e("b2")),
                    s3.embed->apply(s3.lie.frame->e("b3")));
  out.contact_reference = wedge(out.vol, b123) * Rational(2, 27);
  out.omega3_reference = d(s.eta) * Rational(-1, 3) + out.vol * Rational(2, 9);
  out.eta_reference = R8->parse({{"2/3*(x1*x8 - x2*x7 + x3*x6)", {"dx5"}},
                                 {"2/3*(x1*x7 + x2*x8 - x3*x5)", {"dx6"}},
                                 {"2/3*(-x1*x6 + x2*x5 + x3*x8)", {"dx7"}},
                                 {"2/3*(-x1*x5 - x2*x6 - x3*x7)", {"dx8"}}},
                                1);
  Form w1 = dx_form(R8,
                    {{"x2*x6 + x3*x7", "15"}, {"-x2*x5 - x3*x8", "16"}, {"x2*x8 - x3*x5", "17"},
                     {"-x2*x7 + x3*x6", "18"}, {"-x1*x6 + x3*x8", "25"}, {"x1*x5 + x3*x7", "26"},
                     {"-x1*x8 - x3*x6", "27"}, {"x1*x7 - x3*x5", "28"}, {"-x1*x7 - x2*x8", "35"},
                     {"x1*x8 - x2*x7", "36"}, {"x1*x5 + x2*x6", "37"}, {"-x1*x6 + x2*x5", "38"}},
                    2);
  Form w2 = dx_form(R8,
                    {{"-x3", "12"}, {"x2", "13"}, {"-x1", "23"}, {"x8", "15"}, {"x7", "16"},
                     {"-x6", "17"}, {"-x5", "18"}, {"-x7", "25"}, {"x8", "26"}, {"x5", "27"},
                     {"-x6", "28"}, {"x6", "35"}, {"-x5", "36"}, {"x8", "37"}, {"-x7", "38"}},
                    2);
  out.omega1_reference = w1 * ring->parse("2*r3/9");
  out.omega2_reference = w2 * ring->parse("2*r3/9");

  FrameExtension ext;
  ext.generators = {GeneratorSpec{"lam", 0, {}, {}, {}}, GeneratorSpec{"mu", 0, {}, {}, {}},
                    rule("k", 2, "3*lam^2 - 9*lam*mu")};
  for (const auto& g : ext.generators) ext.d_generators[g.name] = {};
  FramePtr E = extend_frame(R8, ext);
  const auto& er = E->ring();
  Form eta = transport(s.eta, E);
  Form vol = transport(out.vol, E);
  out.deformed = SU2Structure{E,
                              eta,
                              transport(s.omega1, E) * er->gen("k"),
                              transport(s.omega2, E) * er->gen("k"),
                              d(eta) * er->gen("lam") + vol * er->gen("mu"),
                              hyper->transport(E)};
  out.double_hypo_unit = wedge(d(eta), vol);
  return out;
}

SU2Structure s2s3_at(const S2S3Data& d, const std::string& lam, const std::string& mu,
                     const std::string& k) {
  const auto& r = d.deformed.frame->ring();
  return specialize(d.deformed, {{"lam", r->parse(lam)}, {"mu", r->parse(mu)}, {"k", r->parse(k)}});
}

// ---------------------------------------------------------------------------
// Y^{p,q}

namespace {

// Replaces the standalone identifier c by 0.
std::string drop_c(const std::string& s, bool c_zero) {
  if (!c_zero) return s;
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    auto ident = [&](std::size_t j) { return j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_'); };
    bool left = i == 0 || !ident(i - 1);
    if (s[i] == 'c' && left && !ident(i + 1)) {
      out += "(0)";
    } else {
      out += s[i];
    }
  }
  return out;
}

}  // namespace

SU2Structure build_ypq(bool c_zero) {
  auto S = [&](const std::string& s) { return drop_c(s, c_zero); };
  const std::string q = S("a - 3*y^2 + 2*c*y^3");
  const std::string dq = S("-6*y + 6*c*y^2");
  std::vector<GeneratorSpec> gens = {
      {"a", 0, {}, {}, {}},
      {"c", 0, {}, {}, {}},
      {"y", 0, {}, {}, {}},
      {"sin_th", 0, {}, {}, {}},
      rule("cos_th", 2, "1 - sin_th^2"),
      {"sin_psi", 0, {}, {}, {}},
      rule("cos_psi", 2, "1 - sin_psi^2"),
      {"Q", 0, {}, {}, {}},
      {"h", 0, {}, "Q", {}},
      rule("v", 2, "h/12"),
  };
  FrameSpec spec;
  spec.ring = Ring::create(gens);
  spec.coframe = {"dy", "dbeta", "dtheta", "dphi", "dpsi"};
  spec.d_generators = {
      {"a", {}},
      {"c", {}},
      {"y", {raw_term("1", {"dy"})}},
      {"sin_th", {raw_term("cos_th", {"dtheta"})}},
      {"cos_th", {raw_term("-sin_th", {"dtheta"})}},
      {"sin_psi", {raw_term("cos_psi", {"dpsi"})}},
      {"cos_psi", {raw_term("-sin_psi", {"dpsi"})}},
      {"Q", {raw_term(dq, {"dy"})}},
      {"h", {raw_term("-h^2*(" + dq + ")", {"dy"})}},
      {"v", {raw_term("-1/2*v*h*(" + dq + ")", {"dy"})}},
  };
  FramePtr f = DifferentialFrame::create(std::move(spec));
  SU2Structure s;
  s.frame = f;
  s.eta = f->parse({{"1/3", {"dpsi"}}, {S("1/3*(c*y - 1)*cos_th"), {"dphi"}}, {"1/3*y", {"dbeta"}}}, 1);
  s.omega3 = f->parse({{S("1/6*(c*y - 1)*sin_th"), {"dtheta", "dphi"}},
                       {"-1/6", {"dy", "dbeta"}},
                       {S("-1/6*c*cos_th"), {"dy", "dphi"}}},
                      2);
  s.omega2 = f->parse({{S("(1 - c*y)*v"), {"dtheta", "dy"}}, {"-1/3*v*Q*sin_th", {"dphi", "dbeta"}}}, 2);
  s.omega1 = f->parse({{S("(1 - c*y)*v*sin_th"), {"dphi", "dy"}},
                       {"1/3*v*Q", {"dtheta", "dbeta"}},
                       {S("1/3*v*Q*c*cos_th"), {"dtheta", "dphi"}}},
                      2);
  // omega1 + i omega2 carries the phase exp(-i psi).
  const RingElement sp = f->ring()->gen("sin_psi"), cp = f->ring()->gen("cos_psi");
  Form w1 = s.omega1 * cp + s.omega2 * sp;
  Form w2 = s.omega2 * cp - s.omega1 * sp;
  s.omega1 = w1;
  s.omega2 = w2;
  s.locus = std::make_shared<Locus>(f, std::vector<Form>{}, std::vector<GeneratorSpec>{},
                                    std::vector<ClearingSpec>{{"h", "Q", parse_raw(q)}});
  return s;
}

// ---------------------------------------------------------------------------
// Evolution families on SU(2) x A^2

EvolutionFamilies build_su2xA2_evolutions() {
  EvolutionFamilies out;
  {
    RingPtr ring = Ring::create({{"t", 0, {}, {}, {{"d_t", raw_constant(1)}}},
                                 {"sinh_3t", 0, {}, {}, {{"d_t", parse_raw("3*cosh_3t")}}},
                                 {"cosh_3t", 2, parse_raw("1 + sinh_3t^2"), {}, {{"d_t", parse_raw("3*sinh_3t")}}}},
                                {"d_t"});
    auto [l, s] = model_double_hypo(ring->zero());
    auto P = [&](const std::string& e) { return ring->parse(e); };
    SU2Structure f{l.frame, s.eta, s.omega1 - d(s.eta) * P("t"), s.omega2 * P("cosh_3t"),
                   s.omega3 - s.omega1 * P("sinh_3t"), nullptr};
    out.cs = TimeFamily{"d_t", f};
    out.base = s;
  }
  {
    RingPtr ring = Ring::create({{"r3", 2, raw_constant(3), {}, {{"d_t", {}}}},
                                 {"t", 0, {}, {}, {{"d_t", raw_constant(1)}}},
                                 {"sin_r3t", 0, {}, {}, {{"d_t", parse_raw("r3*cos_r3t")}}},
                                 {"cos_r3t", 2, parse_raw("1 - sin_r3t^2"), {}, {{"d_t", parse_raw("-r3*sin_r3t")}}}},
                                {"d_t"});
    auto [l, s] = model_double_hypo(ring->zero());
    const auto& F = l.frame;
    auto P = [&](const std::string& e) { return ring->parse(e); };
    // sin(2 r3 t) = 2 s c, cos(2 r3 t) = 1 - 2 s^2.
    Form e14 = F->basis({"e1", "e4"}), e23 = F->basis({"e2", "e3"});
    SU2Structure f{F,
                   s.eta,
                   s.omega1 * P("cos_r3t") - e14 * P("r3*sin_r3t*cos_r3t") + e23 * P("r3/3*sin_r3t*cos_r3t"),
                   s.omega2 * P("cos_r3t"),
                   s.omega1 * P("r3/3*sin_r3t") + e14 * P("1 - 2*sin_r3t^2") + e23 * P("1 + 2/3*sin_r3t^2"),
                   nullptr};
    out.nh = TimeFamily{"d_t", f};
  }
  return out;
}

// ---------------------------------------------------------------------------
// Abstract models

AbstractModels build_abstract_models() {
  AbstractModels out;
  {
    // Left-invariant coframe of SU(3) adapted to SU(3)/SU(2): e1..e5 span the
    // horizontal part, a1..a3 the su(2) directions.
    RingPtr ring = Ring::create({});
    std::map<std::string, RawForm> dd;
    dd["e1"] = {raw_term("-3/2", {"e4", "e5"}), raw_term("-1", {"e4", "a1"}), raw_term("1", {"e2", "a2"}),
                raw_term("-1", {"e3", "a3"})};
    dd["e2"] = {raw_term("-1", {"e1", "a2"}), raw_term("-1", {"e4", "a3"}), raw_term("-3/2", {"e3", "e5"}),
                raw_term("1", {"e3", "a1"})};
    dd["e3"] = {raw_term("1", {"e1", "a3"}), raw_term("-1", {"e4", "a2"}), raw_term("3/2", {"e2", "e5"}),
                raw_term("-1", {"e2", "a1"})};
    dd["e4"] = {raw_term("3/2", {"e1", "e5"}), raw_term("1", {"e1", "a1"}), raw_term("1", {"e2", "a3"}),
                raw_term("1", {"e3", "a2"})};
    dd["e5"] = {raw_term("-2", {"e1", "e4"}), raw_term("-2", {"e2", "e3"})};
    dd["a1"] = {raw_term("-1", {"e1", "e4"}), raw_term("1", {"e2", "e3"}), raw_term("-2", {"a2", "a3"})};
    dd["a2"] = {raw_term("1", {"e1", "e2"}), raw_term("-1", {"e3", "e4"}), raw_term("2", {"a1", "a3"})};
    dd["a3"] = {raw_term("-1", {"e1", "e3"}), raw_term("-1", {"e2", "e4"}), raw_term("-2", {"a1", "a2"})};
    LieCoframe l = make_lie_coframe(ring, {"e1", "e2", "e3", "e4", "e5", "a1", "a2", "a3"}, dd);
    out.se = standard_su2(l.frame);
  }
  out.nk = sin_cone_nk(out.se);
  {
    RingPtr ring = Ring::create({{"mu", 0, {}, {}, {}}});
    out.double_hypo = model_double_hypo(ring->gen("mu")).second;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Registry

namespace {

using Flags = std::map<std::string, bool>;

const Flags kSasakiEinstein = {{"compatible", true}, {"sasaki_einstein", true}, {"hypo", true},
                               {"nearly_hypo", true}, {"double_hypo", true}, {"contact", true}};
const Flags kNearlyKahler = {{"compatible", true}, {"nearly_kahler", true}, {"nearly_half_flat", true},
                             {"integrable", false}};

struct Builder {
  std::string summary;
  std::function<CatalogEntry()> build;
};

CatalogEntry make(const std::string& name, const std::string& summary, AnyStructure s, Flags expected,
                  const std::string& assumptions = "") {
  CatalogEntry e{name, summary, std::move(s), "", std::nullopt, std::nullopt, std::move(expected), assumptions};
  return e;
}

const std::string kSphereNote = "constraint forms independent away from the origin";

const std::vector<std::pair<std::string, Builder>>& registry() {
  static const std::vector<std::pair<std::string, Builder>> r = {
      {"s5", {"Sasaki-Einstein structure on S^5 in R^6", [] {
                auto s6 = build_s6();
                return make("s5", "", build_s5(s6).literal, kSasakiEinstein, kSphereNote);
              }}},
      {"s5_induced", {"S^5 as the equator x7 = 0 of s6", [] {
                        auto s6 = build_s6();
                        return make("s5_induced", "", build_s5(s6).induced, kSasakiEinstein, kSphereNote);
                      }}},
      {"s6", {"nearly Kahler S^6 induced from the flat G2 form on R^7", [] {
                auto e = make("s6", "", build_s6().s6, kNearlyKahler, kSphereNote);
                e.metric = euclidean_metric(std::get<SU3Structure>(e.structure).frame);
                return e;
              }}},
      {"s6_sin_cone", {"sin-cone over s5", [] {
                         auto s6 = build_s6();
                         return make("s6_sin_cone", "", sin_cone_nk(build_s5(s6).literal), kNearlyKahler,
                                     kSphereNote + "; 0 < t < pi");
                       }}},
      {"s7_sin_cone", {"sin-cone G2 over s6_sin_cone", [] {
                         auto s6 = build_s6();
                         return make("s7_sin_cone", "", sin_cone_g2(sin_cone_nk(build_s5(s6).literal)),
                                     {{"nearly_parallel", true}}, kSphereNote + "; 0 < t, q < pi");
                       }}},
      {"s3s3", {"nearly Kahler S^3 x S^3 on left-invariant coframes", [] {
                  auto d = build_s3s3();
                  auto e = make("s3s3", "", d.lie, kNearlyKahler);
                  e.metric = d.lie_metric;
                  return e;
                }}},
      {"s3s3_r8", {"nearly Kahler S^3 x S^3 in R^8 coordinates", [] {
                     auto d = build_s3s3();
                     auto e = make("s3s3_r8", "", d.ambient, kNearlyKahler, kSphereNote);
                     e.metric = d.ambient_metric;
                     return e;
                   }}},
      {"s3s3_sin_cone_g2", {"sin-cone G2 over s3s3", [] {
                              return make("s3s3_sin_cone_g2", "", sin_cone_g2(build_s3s3().lie),
                                          {{"nearly_parallel", true}}, "0 < q < pi");
                            }}},
      {"s2s3_induced", {"hypersurface x4 = 0 of s3s3_r8", [] {
                          auto d = build_s2s3(build_s3s3());
                          return make("s2s3_induced", "", d.induced,
                                      {{"compatible", true}, {"hypo", true}, {"sasaki_einstein", false},
                                       {"nearly_hypo", true}, {"double_hypo", true}, {"contact", true}},
                                      kSphereNote);
                        }}},
      {"s2s3_deformed", {"two-parameter deformation (lam, mu) of s2s3_induced", [] {
                           auto d = build_s2s3(build_s3s3());
                           return make("s2s3_deformed", "", d.deformed,
                                       {{"compatible", true}, {"hypo", true}, {"sasaki_einstein", false},
                                        {"double_hypo", false}, {"contact", true}},
                                       kSphereNote + "; lam < 0, mu > lam/3");
                         }}},
      {"s2s3_se", {"deformation at lam = -1/2, mu = 0", [] {
                     auto d = build_s2s3(build_s3s3());
                     return make("s2s3_se", "", s2s3_at(d, "-1/2", "0", "r3/2"), kSasakiEinstein, kSphereNote);
                   }}},
      {"s2s3_double_hypo", {"deformation at lam = -1, mu = -2/9", [] {
                              auto d = build_s2s3(build_s3s3());
                              return make("s2s3_double_hypo", "", s2s3_at(d, "-1", "-2/9", "1"),
                                          {{"compatible", true}, {"hypo", true}, {"nearly_hypo", true},
                                           {"double_hypo", true}, {"sasaki_einstein", false}},
                                          kSphereNote);
                            }}},
      {"ypq", {"local Sasaki-Einstein structure of Y^{p,q}", [] {
                 return make("ypq", "", build_ypq(false), kSasakiEinstein,
                             "a - 3 y^2 + 2 c y^3 > 0, 1 - c y > 0, sin(theta) != 0");
               }}},
      {"ypq_c0", {"Y^{p,q} forms at c = 0", [] {
                    return make("ypq_c0", "", build_ypq(true), kSasakiEinstein, "a - 3 y^2 > 0");
                  }}},
      {"su2xA2_cs", {"hyperbolic solution of the hypo evolution equations", [] {
                       auto e = make("su2xA2_cs", "", std::get<SU2Structure>(build_su2xA2_evolutions().cs.structure),
                                     {{"compatible", false}});
                       e.derivation = "d_t";
                       e.evolution = Evolution::conti_salamon;
                       return e;
                     }}},
      {"su2xA2_nh", {"trigonometric solution of the nearly hypo evolution equations", [] {
                       auto e = make("su2xA2_nh", "", std::get<SU2Structure>(build_su2xA2_evolutions().nh.structure),
                                     {{"compatible", false}});
                       e.derivation = "d_t";
                       e.evolution = Evolution::nearly_hypo;
                       return e;
                     }}},
      {"se_model", {"Sasaki-Einstein structure on the su(3) coframe", [] {
                      return make("se_model", "", build_abstract_models().se, kSasakiEinstein);
                    }}},
      {"nk_model", {"sin-cone over se_model", [] {
                      return make("nk_model", "", build_abstract_models().nk, kNearlyKahler, "0 < t < pi");
                    }}},
      {"nk_sin_cone_g2", {"sin-cone G2 over nk_model", [] {
                            return make("nk_sin_cone_g2", "", sin_cone_g2(build_abstract_models().nk),
                                        {{"nearly_parallel", true}}, "0 < t, q < pi");
                          }}},
      {"double_hypo_model", {"double hypo Lie algebra with parameter mu", [] {
                               return make("double_hypo_model", "", build_abstract_models().double_hypo,
                                           {{"compatible", true}, {"hypo", true}, {"nearly_hypo", true},
                                            {"double_hypo", true}, {"sasaki_einstein", false}});
                             }}},
      {"su2xR2", {"su(2) + R^2 family with parameter rho", [] {
                    return make("su2xR2", "", su2_times_abelian_family().structure,
                                {{"compatible", true}, {"nearly_hypo", true}, {"double_hypo", false}});
                  }}},
      {"su2xaff", {"su(2) + aff(R) family with parameter mu != 0", [] {
                     return make("su2xaff", "", su2_times_affine_family().structure,
                                 {{"compatible", true}, {"nearly_hypo", true}, {"double_hypo", true}},
                                 "mu != 0");
                   }}},
      {"deformation", {"hypo Lie algebras with parameters r, tau, mu", [] {
                         RingPtr ring = Ring::create({{"r", 0, {}, {}, {}},
                                                      {"r_inv", 0, {}, "r", {}},
                                                      {"tau", 0, {}, {}, {}},
                                                      {"mu", 0, {}, {}, {}}});
                         auto s = deformation_family(ring->gen("r"), ring->gen("tau"), ring->gen("mu")).second;
                         return make("deformation", "", s, {{"compatible", true}, {"hypo", true}, {"double_hypo", false}},
                                     "r != 0");
                       }}},
  };
  return r;
}

}  // namespace

CheckReport check_structure(const AnyStructure& s) {
  return std::visit(
      [](const auto& x) -> CheckReport {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, SU2Structure>) {
          CheckReport r = check_su2_compatibility(x);
          r.merge(classify_su2(x));
          return r;
        } else if constexpr (std::is_same_v<T, SU3Structure>) {
          CheckReport r = check_su3_compatibility(x);
          r.merge(classify_su3(x));
          return r;
        } else {
          return check_nearly_parallel_g2(x);
        }
      },
      s);
}

std::vector<std::string> expectation_mismatches(const CatalogEntry& e, const CheckReport& r) {
  std::vector<std::string> out;
  for (const auto& [k, v] : e.expected) {
    if (!r.has_flag(k) || r.flag(k) != v) out.push_back(k);
  }
  return out;
}

std::vector<std::string> catalog_names() {
  std::vector<std::string> out;
  for (const auto& [n, b] : registry()) out.push_back(n);
  return out;
}

CatalogEntry catalog_entry(const std::string& name) {
  for (const auto& [n, b] : registry()) {
    if (n == name) {
      CatalogEntry e = b.build();
      e.summary = b.summary;
      return e;
    }
  }
  throw CatalogError("unknown catalog entry '" + name + "'");
}

}  // namespace gs
