#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "gstruct/catalog.hpp"

namespace gs {

// Readable values in test failure messages.
inline void PrintTo(const Form& a, std::ostream* os) { *os << a.to_string(); }
inline void PrintTo(const RingElement& a, std::ostream* os) { *os << a.to_string(); }

}  // namespace gs

namespace gs::testing {

inline Rational random_rational(std::mt19937_64& g, int range = 3) {
  std::uniform_int_distribution<int> num(-range, range), den(1, 3);
  Rational r(num(g), den(g));
  r.canonicalize();
  return r;
}

inline Rational random_nonzero(std::mt19937_64& g, int range = 3) {
  Rational r;
  do r = random_rational(g, range);
  while (r == 0);
  return r;
}

// Random polynomial in the given generators (the ring normalizes it).
inline RingElement random_element(const RingPtr& r, const std::vector<std::string>& gens,
                                  std::mt19937_64& g, int terms = 3, int max_deg = 2) {
  RingElement out = r->zero();
  std::uniform_int_distribution<int> deg(0, max_deg);
  for (int t = 0; t < terms; ++t) {
    RingElement m = r->constant(random_rational(g));
    if (!gens.empty()) {
      std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
      int k = deg(g);
      for (int i = 0; i < k; ++i) m = m * r->gen(gens[pick(g)]);
    }
    out += m;
  }
  return out;
}

inline Form random_form(const FramePtr& f, int degree, const std::vector<std::string>& gens,
                        std::mt19937_64& g, int terms = 3) {
  Form out = f->zero(degree);
  if (degree < 0 || degree > f->dim()) return out;
  std::uniform_int_distribution<int> idx(0, f->dim() - 1);
  for (int t = 0; t < terms; ++t) {
    Mask m = 0;
    while (mask_degree(m) < degree) m |= Mask(1) << idx(g);
    out += f->basis(m) * random_element(f->ring(), gens, g, 2, 1);
  }
  return out;
}

inline FrameVector random_vector(const FramePtr& f, const std::vector<std::string>& gens,
                                 std::mt19937_64& g) {
  std::vector<RingElement> c;
  for (int i = 0; i < f->dim(); ++i) c.push_back(random_element(f->ring(), gens, g, 2, 1));
  return FrameVector(f, c);
}

struct FrameCase {
  std::string name;
  FramePtr frame;
  std::vector<std::string> gens;  // generators with nonzero differential or parameters
};

inline const std::vector<FrameCase>& property_frames() {
  static const std::vector<FrameCase> cases = [] {
    std::vector<FrameCase> out;
    auto models = build_abstract_models();
    out.push_back({"double hypo model", models.double_hypo.frame, {"mu"}});
    out.push_back({"su(3) coframe", models.se.frame, {}});
    out.push_back({"sin-cone over su(3)/su(2)", models.nk.frame, {"t", "sin_t", "cos_t"}});
    auto s3 = build_s3s3();
    out.push_back({"s3 x s3 left-invariant", s3.lie.frame, {"r3"}});
    out.push_back({"flat R7", build_s6().s6.frame, {"x1", "x2", "x5", "x7"}});
    SU2Structure y = build_ypq();
    out.push_back({"local Y(p,q) coordinates", y.frame, {"y", "sin_th", "cos_th", "sin_psi", "v", "Q", "h", "c"}});
    return out;
  }();
  return cases;
}

struct PropertyResult {
  int instances = 0;
  int failures = 0;
  std::string first_failure;
  void record(bool ok, const std::string& what) {
    ++instances;
    if (!ok) {
      if (!failures) first_failure = what;
      ++failures;
    }
  }
  bool passed(int expected) const { return failures == 0 && instances == expected; }
};

inline int sgn_pow(int k) { return (k % 2) ? -1 : 1; }

inline PropertyResult prop_d_squared(int n, std::uint64_t seed) {
  std::mt19937_64 g(seed);
  PropertyResult r;
  const auto& frames = property_frames();
  for (int i = 0; i < n; ++i) {
    const auto& c = frames[i % frames.size()];
    int deg = static_cast<int>(g() % 3);
    Form a = random_form(c.frame, deg, c.gens, g);
    r.record(d(d(a)).is_zero(), c.name);
  }
  return r;
}

inline PropertyResult prop_leibniz(int n, std::uint64_t seed) {
  std::mt19937_64 g(seed);
  PropertyResult r;
  const auto& frames = property_frames();
  for (int i = 0; i < n; ++i) {
    const auto& c = frames[i % frames.size()];
    int p = static_cast<int>(g() % 3), q = static_cast<int>(g() % 3);
    Form a = random_form(c.frame, p, c.gens, g), b = random_form(c.frame, q, c.gens, g);
    Form lhs = d(wedge(a, b));
    Form rhs = wedge(d(a), b) + wedge(a, d(b)) * Rational(sgn_pow(p));
    r.record(lhs == rhs, c.name);
  }
  return r;
}

inline PropertyResult prop_graded_commutativity(int n, std::uint64_t seed) {
  std::mt19937_64 g(seed);
  PropertyResult r;
  const auto& frames = property_frames();
  for (int i = 0; i < n; ++i) {
    const auto& c = frames[i % frames.size()];
    int p = static_cast<int>(g() % 4), q = static_cast<int>(g() % 4);
    Form a = random_form(c.frame, p, c.gens, g), b = random_form(c.frame, q, c.gens, g);
    r.record(wedge(a, b) == wedge(b, a) * Rational(sgn_pow(p * q)), c.name);
  }
  return r;
}

inline PropertyResult prop_interior(int n, std::uint64_t seed) {
  std::mt19937_64 g(seed);
  PropertyResult r;
  const auto& frames = property_frames();
  for (int i = 0; i < n; ++i) {
    const auto& c = frames[i % frames.size()];
    int p = 1 + static_cast<int>(g() % 3), q = static_cast<int>(g() % 3);
    Form a = random_form(c.frame, p, c.gens, g), b = random_form(c.frame, q, c.gens, g);
    FrameVector x = random_vector(c.frame, c.gens, g), y = random_vector(c.frame, c.gens, g);
    bool anti = interior(x, wedge(a, b)) ==
                wedge(interior(x, a), b) + wedge(a, interior(x, b)) * Rational(sgn_pow(p));
    bool anticomm = (interior(x, interior(y, a)) + interior(y, interior(x, a))).is_zero();
    bool square = interior(x, interior(x, a)).is_zero();
    r.record(anti && anticomm && square, c.name);
  }
  return r;
}

inline PropertyResult prop_pullback_d(int n, std::uint64_t seed) {
  std::mt19937_64 g(seed);
  PropertyResult r;
  auto models = build_abstract_models();
  const FramePtr& lifted = models.nk.frame;
  const FramePtr& base = models.se.frame;
  FrameMap slice = time_slice_map(lifted, base, time_t_spec(), Rational(1, 2), Rational(3, 5), Rational(4, 5));
  FramePtr R7 = build_s6().s6.frame;
  FramePtr R6 = flat_frame(6);
  FrameMap equator = FrameMap::by_name(R7, R6, {{"x7", R6->ring()->zero()}}, {{"dx7", R6->zero(1)}});
  auto abel = su2_times_abelian_family();
  auto aff = su2_times_affine_family();
  struct Case {
    const FrameMap* map;
    std::vector<std::string> gens;
    std::string name;
    LocusPtr locus;  // where the map is a morphism of frames, if not everywhere
  };
  std::vector<Case> cases = {{&slice, {"t", "sin_t", "cos_t"}, "time slice", nullptr},
                             {&equator, {"x1", "x3", "x7"}, "equator", nullptr},
                             {abel.change.get(), {"rho"}, "abelian basis change", nullptr},
                             {aff.change.get(), {"mu"}, "affine basis change", aff.target_locus}};
  for (int i = 0; i < n; ++i) {
    const auto& c = cases[i % cases.size()];
    int deg = static_cast<int>(g() % 3);
    Form a = random_form(c.map->source(), deg, c.gens, g);
    Form diff = c.map->apply(d(a)) - d(c.map->apply(a));
    r.record(c.locus ? is_zero_on_locus(diff, c.locus).zero : diff.is_zero(), c.name);
  }
  return r;
}

inline PropertyResult prop_hodge_twice(int n, std::uint64_t seed) {
  std::mt19937_64 g(seed);
  PropertyResult r;
  std::vector<FramePtr> frames = {
      build_s6().s6.frame,
      flat_frame(6, {}, std::vector<std::string>{"dx1", "dx2", "dx3", "dx4", "dx5", "dx6"})};
  for (int i = 0; i < n; ++i) {
    const FramePtr& f = frames[i % frames.size()];
    const int dim = f->dim();
    Mask m = static_cast<Mask>(g() % (Mask(1) << dim));
    int k = mask_degree(m);
    Form a = f->basis(m);
    r.record(hodge_flat(hodge_flat(a)) == a * Rational(sgn_pow(k * (dim - k))), "hodge");
  }
  return r;
}

inline PropertyResult prop_lift_roundtrip(int n, std::uint64_t seed) {
  std::mt19937_64 g(seed);
  PropertyResult r;
  const auto& frames = property_frames();
  const std::vector<std::tuple<Rational, Rational, Rational>> slices = {
      {Rational(0), Rational(0), Rational(1)}, {Rational(1, 2), Rational(3, 5), Rational(4, 5)},
      {Rational(-2), Rational(-5, 13), Rational(12, 13)}};
  for (int i = 0; i < n; ++i) {
    const auto& c = frames[i % frames.size()];
    if (c.frame->ring()->has("t")) continue;
    SU2Structure s{c.frame,
                   random_form(c.frame, 1, c.gens, g),
                   random_form(c.frame, 2, c.gens, g),
                   random_form(c.frame, 2, c.gens, g),
                   random_form(c.frame, 2, c.gens, g),
                   nullptr};
    SU3Structure lifted = product_lift(s);
    const auto& [t0, s0, c0] = slices[i % slices.size()];
    FrameMap slice = time_slice_map(lifted.frame, c.frame, time_t_spec(), t0, s0, c0);
    SU2Structure back =
        hypersurface_su3_to_su2(lifted, FrameVector::basis(lifted.frame, "dt"), slice, nullptr);
    r.record(back.eta == s.eta && back.omega1 == s.omega1 && back.omega2 == s.omega2 &&
                 back.omega3 == s.omega3,
             c.name);
  }
  // Catalog structures fill the instances skipped above.
  const std::vector<SU2Structure> catalog = {build_abstract_models().se, build_abstract_models().double_hypo,
                                             su2_times_abelian_family().structure, build_ypq(true)};
  int k = 0;
  while (r.instances < n) {
    const SU2Structure& s = catalog[k++ % catalog.size()];
    SU3Structure lifted = product_lift(s);
    FrameMap slice = time_slice_map(lifted.frame, s.frame, time_t_spec(), Rational(k), Rational(0), Rational(1));
    SU2Structure back =
        hypersurface_su3_to_su2(lifted, FrameVector::basis(lifted.frame, "dt"), slice, nullptr);
    r.record(back.eta == s.eta && back.omega1 == s.omega1 && back.omega2 == s.omega2 &&
                 back.omega3 == s.omega3,
             "catalog");
  }
  return r;
}

// Structures from the hypo deformation family and the double hypo model at
// random rational parameters, a quarter of them on the double hypo locus.
inline PropertyResult prop_double_hypo_split(int n, std::uint64_t seed, int* double_hypo_count = nullptr) {
  std::mt19937_64 g(seed);
  PropertyResult r;
  RingPtr q = Ring::create({});
  int dh = 0;
  for (int i = 0; i < n; ++i) {
    SU2Structure s;
    Rational mu = random_rational(g);
    switch (i % 4) {
      case 0:
        s = deformation_family(q->constant(-3), q->constant(Rational(-4 - mu * mu / 3)), q->constant(mu)).second;
        break;
      case 1:
        s = deformation_family(q->constant(random_nonzero(g)), q->constant(random_rational(g)), q->constant(mu)).second;
        break;
      case 2:
        s = model_double_hypo(q->constant(mu)).second;
        break;
      default: {
        auto fam = su2_times_abelian_family();
        s = specialize(fam.structure, {{"rho", fam.structure.frame->ring()->constant(random_rational(g))}});
      }
    }
    CheckReport c = classify_su2(s);
    bool ok = c.flag("double_hypo") == (c.flag("hypo") && c.flag("nearly_hypo"));
    if (c.flag("double_hypo")) ++dh;
    r.record(ok, "instance " + std::to_string(i));
  }
  if (double_hypo_count) *double_hypo_count = dh;
  return r;
}

inline PropertyResult prop_normalize(int n, std::uint64_t seed) {
  std::mt19937_64 g(seed);
  PropertyResult r;
  const auto& frames = property_frames();
  for (int i = 0; i < n; ++i) {
    const auto& c = frames[i % frames.size()];
    const RingPtr& R = c.frame->ring();
    RingElement a = random_element(R, c.gens, g, 3, 3), b = random_element(R, c.gens, g), e = random_element(R, c.gens, g);
    bool idem = R->from_raw(a.to_raw()) == a;
    bool assoc = (a * b) * e == a * (b * e);
    bool dist = a * (b + e) == a * b + a * e;
    bool comm = a * b == b * a;
    r.record(idem && assoc && dist && comm, c.name);
  }
  return r;
}

}  // namespace gs::testing
