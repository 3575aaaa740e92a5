#include "gstruct/exterior.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "gstruct/expr.hpp"

namespace gs {

std::vector<int> mask_indices(Mask m) {
  std::vector<int> out;
  while (m) {
    int i = std::countr_zero(m);
    out.push_back(i);
    m &= m - 1;
  }
  return out;
}

Mask indices_mask(const std::vector<int>& idx) {
  Mask m = 0;
  for (int i : idx) m |= Mask(1) << i;
  return m;
}

int mask_degree(Mask m) { return std::popcount(m); }

int wedge_sign(Mask a, Mask b) {
  if (a & b) return 0;
  int inversions = 0;
  Mask rest = b;
  while (rest) {
    int j = std::countr_zero(rest);
    rest &= rest - 1;
    Mask above = (j >= 31) ? 0 : (a & ~((Mask(2) << j) - 1));
    inversions += std::popcount(above);
  }
  return (inversions & 1) ? -1 : 1;
}

RawFormTerm raw_term(const std::string& coeff, std::vector<std::string> coframe) {
  return RawFormTerm{parse_raw(coeff), std::move(coframe)};
}

namespace {

void add_term(FormTerms& t, Mask m, const RingElement& c) {
  if (c.is_zero()) return;
  auto it = t.find(m);
  if (it == t.end()) {
    t.emplace(m, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) t.erase(it);
  }
}

// Mask and sign of an ordered list of distinct indices; sign 0 on repeats.
std::pair<Mask, int> sequence_mask(const std::vector<int>& idx) {
  Mask m = 0;
  int sign = 1;
  for (int i : idx) {
    Mask bit = Mask(1) << i;
    if (m & bit) return {0, 0};
    if (std::popcount(m & ~((bit << 1) - 1)) & 1) sign = -sign;
    m |= bit;
  }
  return {m, sign};
}

}  // namespace

// ---------------------------------------------------------------------------
// DifferentialFrame

FramePtr DifferentialFrame::create(FrameSpec spec) {
  std::shared_ptr<DifferentialFrame> f(new DifferentialFrame());
  f->spec_ = std::move(spec);
  f->build();
  return f;
}

int DifferentialFrame::index(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw FrameError("unknown coframe element '" + name + "'");
  return it->second;
}

int DifferentialFrame::orientation_sign() const {
  if (!orthonormal()) throw FrameError("frame is not declared orthonormal");
  return orient_sign_;
}

void DifferentialFrame::build() {
  if (!spec_.ring) throw FrameError("frame without ring");
  const int n = dim();
  if (n > 31) throw FrameError("at most 31 coframe elements are supported");
  for (int i = 0; i < n; ++i) {
    if (!index_.emplace(spec_.coframe[i], i).second)
      throw FrameError("duplicate coframe element '" + spec_.coframe[i] + "'");
    if (spec_.ring->has(spec_.coframe[i]))
      throw FrameError("coframe element '" + spec_.coframe[i] + "' clashes with a generator");
  }
  if (spec_.orientation) {
    std::vector<int> idx;
    for (const auto& nm : *spec_.orientation) idx.push_back(index(nm));
    auto [m, s] = sequence_mask(idx);
    if (static_cast<int>(idx.size()) != n || s == 0)
      throw FrameError("orientation must list every coframe element once");
    orient_sign_ = s;
  }
  const auto& ring = spec_.ring;
  auto self = shared_from_this();

  dcof_.assign(n, {});
  for (const auto& [nm, raw] : spec_.d_coframe) {
    dcof_[index(nm)] = from_raw(raw, 2).terms();
  }
  dgen_.assign(ring->size(), std::nullopt);
  for (const auto& [nm, raw] : spec_.d_generators) {
    if (!ring->has(nm)) throw FrameError("d rule for unknown generator '" + nm + "'");
    dgen_[ring->index(nm)] = from_raw(raw, 1).terms();
  }

  for (const auto& rel : ring->relations()) {
    Form lhs, rhs;
    try {
      if (rel.power) {
        Monomial m(ring->size(), 0);
        m[rel.gen] = rel.power;
        lhs = d(scalar(RingElement(ring, Terms{{m, 1}})));
        rhs = d(scalar(RingElement(ring, rel.replacement)));
      } else {
        lhs = d(scalar(ring->gen(ring->name(rel.gen)) * ring->gen(ring->name(rel.partner))));
        rhs = zero(1);
      }
    } catch (const FrameError&) {
      continue;
    }
    if (lhs != rhs)
      throw FrameError("d does not respect the relation for '" + ring->name(rel.gen) + "'");
  }

  closed_ = true;
  for (const auto& [what, form] : d_squared()) {
    if (!form.is_zero()) closed_ = false;
  }
  if (spec_.require_closed && !closed_) {
    std::string which;
    for (const auto& [what, form] : d_squared()) {
      if (!form.is_zero()) which += " " + what;
    }
    throw FrameError("d^2 != 0 on" + which);
  }
}

Form DifferentialFrame::zero(int degree) const { return Form(shared_from_this(), degree, {}); }

Form DifferentialFrame::scalar(const RingElement& f) const {
  if (f.ring() != ring()) throw FrameError("coefficient from another ring");
  FormTerms t;
  add_term(t, 0, f);
  return Form(shared_from_this(), 0, std::move(t));
}

Form DifferentialFrame::scalar(const Rational& c) const { return scalar(ring()->constant(c)); }

Form DifferentialFrame::e(const std::string& name) const { return basis(Mask(1) << index(name)); }

Form DifferentialFrame::basis(Mask m) const {
  FormTerms t;
  t.emplace(m, ring()->one());
  return Form(shared_from_this(), mask_degree(m), std::move(t));
}

Form DifferentialFrame::basis(const std::vector<std::string>& names) const {
  std::vector<int> idx;
  for (const auto& nm : names) idx.push_back(index(nm));
  auto [m, s] = sequence_mask(idx);
  if (s == 0) return zero(static_cast<int>(names.size()));
  return basis(m) * Rational(s);
}

Form DifferentialFrame::from_raw(const RawForm& raw, int degree) const {
  FormTerms t;
  for (const auto& term : raw) {
    if (static_cast<int>(term.coframe.size()) != degree)
      throw FrameError("term of degree " + std::to_string(term.coframe.size()) +
                       " in a form of degree " + std::to_string(degree));
    std::vector<int> idx;
    for (const auto& nm : term.coframe) idx.push_back(index(nm));
    auto [m, s] = sequence_mask(idx);
    if (s == 0) continue;
    add_term(t, m, ring()->from_raw(term.coeff) * Rational(s));
  }
  return Form(shared_from_this(), degree, std::move(t));
}

Form DifferentialFrame::parse(
    const std::vector<std::pair<std::string, std::vector<std::string>>>& terms, int degree) const {
  RawForm raw;
  for (const auto& [c, names] : terms) raw.push_back(raw_term(c, names));
  return from_raw(raw, degree);
}

Form DifferentialFrame::d_coframe(int i) const { return Form(shared_from_this(), 2, dcof_.at(i)); }

std::optional<Form> DifferentialFrame::d_generator(std::size_t g) const {
  if (!dgen_.at(g)) return std::nullopt;
  return Form(shared_from_this(), 1, *dgen_[g]);
}

std::vector<std::pair<std::string, Form>> DifferentialFrame::d_squared() const {
  std::vector<std::pair<std::string, Form>> out;
  for (int i = 0; i < dim(); ++i) out.emplace_back(name(i), d(d_coframe(i)));
  for (std::size_t g = 0; g < ring()->size(); ++g) {
    if (!dgen_[g]) continue;
    try {
      out.emplace_back(ring()->name(g), d(*d_generator(g)));
    } catch (const FrameError&) {
      // coefficients of dg use generators without rules; d^2 undefined there
    }
  }
  return out;
}

const FormTerms& DifferentialFrame::d_basis(Mask m) const {
  {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    auto it = dbasis_cache_.find(m);
    if (it != dbasis_cache_.end()) return it->second;
  }
  FormTerms out;
  int pos = 0;
  for (int j : mask_indices(m)) {
    Mask bit = Mask(1) << j;
    Mask prefix = m & (bit - 1);
    Mask suffix = m & ~((bit << 1) - 1);
    int base = (pos & 1) ? -1 : 1;
    for (const auto& [k, c] : dcof_[j]) {
      int s1 = wedge_sign(prefix, k);
      if (!s1) continue;
      int s2 = wedge_sign(prefix | k, suffix);
      if (!s2) continue;
      add_term(out, prefix | k | suffix, c * Rational(base * s1 * s2));
    }
    ++pos;
  }
  std::lock_guard<std::mutex> lock(cache_mutex_);
  return dbasis_cache_.emplace(m, std::move(out)).first->second;
}

// ---------------------------------------------------------------------------
// Form

Form::Form(FramePtr frame, int degree, FormTerms terms)
    : frame_(std::move(frame)), degree_(degree), terms_(std::move(terms)) {}

void Form::check(const Form& o) const {
  if (frame_ != o.frame_) throw FrameError("frame mismatch");
}

RingElement Form::coefficient(Mask m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? frame_->ring()->zero() : it->second;
}

RingElement Form::coefficient(const std::vector<std::string>& names) const {
  std::vector<int> idx;
  for (const auto& nm : names) idx.push_back(frame_->index(nm));
  auto [m, s] = sequence_mask(idx);
  if (s == 0) return frame_->ring()->zero();
  return coefficient(m) * Rational(s);
}

Form Form::operator+(const Form& o) const {
  Form r = *this;
  r += o;
  return r;
}

Form Form::operator-(const Form& o) const {
  Form r = *this;
  r -= o;
  return r;
}

Form& Form::operator+=(const Form& o) {
  check(o);
  if (degree_ != o.degree_ && !o.is_zero() && !is_zero())
    throw FrameError("adding forms of different degree");
  if (is_zero()) degree_ = o.degree_;
  for (const auto& [m, c] : o.terms_) add_term(terms_, m, c);
  return *this;
}

Form& Form::operator-=(const Form& o) {
  check(o);
  if (degree_ != o.degree_ && !o.is_zero() && !is_zero())
    throw FrameError("subtracting forms of different degree");
  if (is_zero()) degree_ = o.degree_;
  for (const auto& [m, c] : o.terms_) add_term(terms_, m, -c);
  return *this;
}

Form Form::operator-() const {
  Form r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

Form Form::operator*(const RingElement& f) const {
  if (f.ring() != frame_->ring()) throw FrameError("coefficient from another ring");
  FormTerms t;
  if (!f.is_zero()) {
    for (const auto& [m, c] : terms_) add_term(t, m, c * f);
  }
  return Form(frame_, degree_, std::move(t));
}

Form Form::operator*(const Rational& c) const {
  FormTerms t;
  if (c != 0) {
    for (const auto& [m, v] : terms_) t.emplace(m, v * c);
  }
  return Form(frame_, degree_, std::move(t));
}

Form operator*(const RingElement& f, const Form& a) { return a * f; }
Form operator*(const Rational& c, const Form& a) { return a * c; }

bool Form::operator==(const Form& o) const {
  if (frame_ != o.frame_) return false;
  if (terms_.empty() && o.terms_.empty()) return true;
  return degree_ == o.degree_ && terms_ == o.terms_;
}

Form Form::derive_coefficients(const std::string& derivation) const {
  FormTerms t;
  for (const auto& [m, c] : terms_) add_term(t, m, c.derive(derivation));
  return Form(frame_, degree_, std::move(t));
}

RawForm Form::to_raw() const {
  RawForm raw;
  std::vector<std::pair<std::vector<int>, RingElement>> sorted;
  for (const auto& [m, c] : terms_) sorted.emplace_back(mask_indices(m), c);
  std::sort(sorted.begin(), sorted.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& [idx, c] : sorted) {
    RawFormTerm t;
    t.coeff = c.to_raw();
    for (int i : idx) t.coframe.push_back(frame_->name(i));
    raw.push_back(std::move(t));
  }
  return raw;
}

std::string Form::to_string() const {
  if (terms_.empty()) return "0";
  std::vector<std::pair<std::vector<int>, const RingElement*>> sorted;
  for (const auto& [m, c] : terms_) sorted.emplace_back(mask_indices(m), &c);
  std::sort(sorted.begin(), sorted.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::ostringstream os;
  bool first = true;
  for (const auto& [idx, c] : sorted) {
    std::string basis;
    for (int i : idx) {
      if (!basis.empty()) basis += "^";
      basis += frame_->name(i);
    }
    std::string coeff = c->to_string();
    bool neg = false;
    if (c->size() == 1 && c->terms().begin()->second < 0) {
      neg = true;
      coeff = (-*c).to_string();
    }
    if (!first) os << (neg ? " - " : " + ");
    else if (neg) os << "-";
    first = false;
    if (basis.empty()) {
      os << (c->size() > 1 ? "(" + coeff + ")" : coeff);
    } else if (coeff == "1") {
      os << basis;
    } else if (c->size() == 1) {
      os << coeff << "*" << basis;
    } else {
      os << "(" << coeff << ")*" << basis;
    }
  }
  return os.str();
}

Form wedge(const Form& a, const Form& b) {
  if (a.frame() != b.frame()) throw FrameError("frame mismatch");
  FormTerms t;
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      int s = wedge_sign(ma, mb);
      if (!s) continue;
      add_term(t, ma | mb, s > 0 ? ca * cb : -(ca * cb));
    }
  }
  return Form(a.frame(), a.degree() + b.degree(), std::move(t));
}

Form d(const Form& a) {
  const auto& frame = a.frame();
  const auto& ring = frame->ring();
  FormTerms t;
  for (const auto& [m, c] : a.terms()) {
    for (std::size_t g = 0; g < ring->size(); ++g) {
      if (!c.mentions(g)) continue;
      auto dg = frame->d_generator(g);
      if (!dg)
        throw FrameError("no d rule for generator '" + ring->name(g) + "'");
      if (dg->is_zero()) continue;
      RingElement p = c.partial(g);
      for (const auto& [k, v] : dg->terms()) {
        int s = wedge_sign(k, m);
        if (!s) continue;
        add_term(t, k | m, (p * v) * Rational(s));
      }
    }
    for (const auto& [k, v] : frame->d_basis(m)) add_term(t, k, c * v);
  }
  return Form(frame, a.degree() + 1, std::move(t));
}

// ---------------------------------------------------------------------------
// Vectors, interior product, metric

FrameVector::FrameVector(FramePtr frame) : frame_(std::move(frame)) {
  comps_.assign(frame_->dim(), frame_->ring()->zero());
}

FrameVector::FrameVector(FramePtr frame, std::vector<RingElement> components)
    : frame_(std::move(frame)), comps_(std::move(components)) {
  if (static_cast<int>(comps_.size()) != frame_->dim())
    throw FrameError("vector has the wrong number of components");
  for (auto& c : comps_) {
    if (!c.ring()) c = frame_->ring()->zero();
    if (c.ring() != frame_->ring()) throw FrameError("vector component from another ring");
  }
}

FrameVector FrameVector::basis(FramePtr frame, const std::string& name) {
  FrameVector v(frame);
  v.comps_[frame->index(name)] = frame->ring()->one();
  return v;
}

FrameVector FrameVector::operator+(const FrameVector& o) const {
  if (frame_ != o.frame_) throw FrameError("frame mismatch");
  FrameVector r = *this;
  for (std::size_t i = 0; i < comps_.size(); ++i) r.comps_[i] += o.comps_[i];
  return r;
}

FrameVector FrameVector::operator-(const FrameVector& o) const {
  if (frame_ != o.frame_) throw FrameError("frame mismatch");
  FrameVector r = *this;
  for (std::size_t i = 0; i < comps_.size(); ++i) r.comps_[i] -= o.comps_[i];
  return r;
}

FrameVector FrameVector::operator*(const RingElement& f) const {
  FrameVector r = *this;
  for (auto& c : r.comps_) c = c * f;
  return r;
}

FrameVector FrameVector::operator*(const Rational& c) const {
  FrameVector r = *this;
  for (auto& v : r.comps_) v = v * c;
  return r;
}

Form interior(const FrameVector& x, const Form& a) {
  if (x.frame() != a.frame()) throw FrameError("frame mismatch");
  FormTerms t;
  for (const auto& [m, c] : a.terms()) {
    for (int i : mask_indices(m)) {
      const auto& xi = x[i];
      if (xi.is_zero()) continue;
      Mask bit = Mask(1) << i;
      int below = std::popcount(m & (bit - 1));
      RingElement v = c * xi;
      add_term(t, m & ~bit, (below & 1) ? -v : v);
    }
  }
  return Form(a.frame(), std::max(a.degree() - 1, 0), std::move(t));
}

RingElement pair(const Form& one_form, const FrameVector& x) {
  if (one_form.frame() != x.frame()) throw FrameError("frame mismatch");
  if (one_form.degree() != 1 && !one_form.is_zero()) throw FrameError("pairing needs a 1-form");
  return interior(x, one_form).coefficient(0);
}

BilinearForm::BilinearForm(FramePtr frame, std::vector<std::vector<RingElement>> matrix)
    : frame_(std::move(frame)), m_(std::move(matrix)) {
  const int n = frame_->dim();
  if (static_cast<int>(m_.size()) != n) throw FrameError("metric has the wrong size");
  for (const auto& row : m_) {
    if (static_cast<int>(row.size()) != n) throw FrameError("metric has the wrong size");
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < i; ++j) {
      if (m_[i][j] != m_[j][i]) throw FrameError("metric is not symmetric");
    }
  }
}

BilinearForm BilinearForm::from_products(
    FramePtr frame, const std::vector<std::tuple<Rational, Form, Form>>& terms) {
  const int n = frame->dim();
  std::vector<std::vector<RingElement>> m(n, std::vector<RingElement>(n, frame->ring()->zero()));
  for (const auto& [c, a, b] : terms) {
    for (int i = 0; i < n; ++i) {
      RingElement ai = a.coefficient(Mask(1) << i);
      RingElement bi = b.coefficient(Mask(1) << i);
      for (int j = 0; j < n; ++j) {
        RingElement aj = a.coefficient(Mask(1) << j);
        RingElement bj = b.coefficient(Mask(1) << j);
        m[i][j] += (ai * bj + bi * aj) * (c / 2);
      }
    }
  }
  return BilinearForm(frame, std::move(m));
}

RingElement eval_bilinear(const BilinearForm& g, const FrameVector& x, const FrameVector& y) {
  if (g.frame() != x.frame() || g.frame() != y.frame()) throw FrameError("frame mismatch");
  RingElement sum = g.frame()->ring()->zero();
  const int n = g.frame()->dim();
  for (int i = 0; i < n; ++i) {
    if (x[i].is_zero()) continue;
    for (int j = 0; j < n; ++j) {
      if (y[j].is_zero() || g.at(i, j).is_zero()) continue;
      sum += x[i] * g.at(i, j) * y[j];
    }
  }
  return sum;
}

Form hodge_flat(const Form& a) {
  const auto& frame = a.frame();
  int sign = frame->orientation_sign();
  const int n = frame->dim();
  Mask all = (n == 32) ? ~Mask(0) : ((Mask(1) << n) - 1);
  FormTerms t;
  for (const auto& [m, c] : a.terms()) {
    Mask comp = all & ~m;
    int s = wedge_sign(m, comp) * sign;
    add_term(t, comp, s > 0 ? c : -c);
  }
  return Form(frame, n - a.degree(), std::move(t));
}

// ---------------------------------------------------------------------------
// Pullback

namespace {

Substitution frame_substitution(const FramePtr& source, const FramePtr& target,
                                const std::map<std::string, RingElement>& gens, bool by_name,
                                bool check) {
  if (by_name) return Substitution::by_name(source->ring(), target->ring(), gens, check);
  return Substitution(source->ring(), target->ring(), gens, false, check);
}

}  // namespace

FrameMap::FrameMap(FramePtr source, FramePtr target,
                   const std::map<std::string, RingElement>& gens,
                   const std::map<std::string, Form>& coframe, bool check)
    : source_(std::move(source)),
      target_(std::move(target)),
      subst_(frame_substitution(source_, target_, gens, false, check)) {
  images_.resize(source_->dim());
  for (int i = 0; i < source_->dim(); ++i) {
    auto it = coframe.find(source_->name(i));
    if (it == coframe.end())
      throw FrameError("no image for coframe element '" + source_->name(i) + "'");
    if (it->second.frame() != target_) throw FrameError("coframe image in another frame");
    if (!it->second.is_zero() && it->second.degree() != 1)
      throw FrameError("coframe image must be a 1-form");
    images_[i] = it->second;
  }
  if (!check) return;
  for (int i = 0; i < source_->dim(); ++i) {
    if (apply(source_->d_coframe(i)) != d(images_[i]))
      throw FrameError("inconsistent map: d(" + source_->name(i) + ") is not preserved");
  }
  const auto& ring = source_->ring();
  for (std::size_t g = 0; g < ring->size(); ++g) {
    auto dg = source_->d_generator(g);
    if (!dg) continue;
    if (apply(*dg) != d(target_->scalar(subst_.apply(ring->gen(ring->name(g))))))
      throw FrameError("inconsistent map: d(" + ring->name(g) + ") is not preserved");
  }
}

FrameMap FrameMap::by_name(FramePtr source, FramePtr target,
                           const std::map<std::string, RingElement>& gens,
                           const std::map<std::string, Form>& coframe, bool check) {
  std::map<std::string, RingElement> g = gens;
  for (const auto& s : source->ring()->specs()) {
    if (!g.count(s.name)) g.emplace(s.name, target->ring()->gen(s.name));
  }
  std::map<std::string, Form> c = coframe;
  for (const auto& nm : source->names()) {
    if (!c.count(nm)) c.emplace(nm, target->e(nm));
  }
  return FrameMap(source, target, g, c, check);
}

Form FrameMap::apply(const Form& a) const {
  if (a.frame() != source_) throw FrameError("pullback of a form from another frame");
  Form result = target_->zero(a.degree());
  for (const auto& [m, c] : a.terms()) {
    Form img;
    {
      std::lock_guard<std::mutex> lock(cache_->mutex);
      auto it = cache_->forms.find(m);
      if (it != cache_->forms.end()) img = it->second;
    }
    if (!img.frame()) {
      img = target_->scalar(Rational(1));
      for (int i : mask_indices(m)) img = wedge(img, images_[i]);
      std::lock_guard<std::mutex> lock(cache_->mutex);
      cache_->forms.emplace(m, img);
    }
    result += img * subst_.apply(c);
  }
  return result;
}

std::vector<std::pair<std::string, Form>> FrameMap::defects() const {
  std::vector<std::pair<std::string, Form>> out;
  for (int i = 0; i < source_->dim(); ++i)
    out.emplace_back(source_->name(i), apply(source_->d_coframe(i)) - d(images_[i]));
  return out;
}

Form pullback(const Form& a, const FrameMap& m) { return m.apply(a); }

Form transport(const Form& a, const FramePtr& target) {
  if (a.frame() == target) return a;
  Substitution s = Substitution::by_name(a.frame()->ring(), target->ring(), {}, false);
  FormTerms t;
  for (const auto& [m, c] : a.terms()) {
    std::vector<int> idx;
    for (int i : mask_indices(m)) idx.push_back(target->index(a.frame()->name(i)));
    auto [tm, sign] = sequence_mask(idx);
    add_term(t, tm, s.apply(c) * Rational(sign));
  }
  return Form(target, a.degree(), std::move(t));
}

RingElement transport(const RingElement& f, const RingPtr& target) {
  if (f.ring() == target) return f;
  return Substitution::by_name(f.ring(), target, {}, false).apply(f);
}

// ---------------------------------------------------------------------------
// Locus

Locus::Locus(FramePtr frame, std::vector<Form> constraints, std::vector<GeneratorSpec> rules,
             std::vector<ClearingSpec> clearing)
    : frame_(std::move(frame)),
      constraints_(std::move(constraints)),
      rules_(std::move(rules)),
      clearing_(std::move(clearing)) {
  for (const auto& c : constraints_) {
    if (c.frame() != frame_) throw FrameError("constraint from another frame");
    if (c.degree() != 1) throw FrameError("constraints must be 1-forms");
  }
  const auto& ring = frame_->ring();
  std::set<std::string> removed;
  for (const auto& c : clearing_) {
    ring->index(c.inverse);
    ring->index(c.unit);
    removed.insert(c.inverse);
  }
  std::vector<GeneratorSpec> specs;
  for (auto s : ring->specs()) {
    if (removed.count(s.name)) continue;
    s.derivations.clear();
    if (removed.count(s.inverse_of)) s.inverse_of.clear();
    bool uses_removed = false;
    for (const auto& [m, c] : s.replacement) {
      for (const auto& [g, e] : m) uses_removed |= removed.count(g) > 0;
    }
    if (uses_removed) {
      s.power = 0;
      s.replacement.clear();
    }
    specs.push_back(std::move(s));
  }
  for (const auto& r : rules_) {
    auto it = std::find_if(specs.begin(), specs.end(),
                           [&](const GeneratorSpec& s) { return s.name == r.name; });
    if (it == specs.end()) throw FrameError("locus rule for unknown generator '" + r.name + "'");
    it->power = r.power;
    it->replacement = r.replacement;
  }
  reduction_ = Ring::create(std::move(specs));
  std::map<std::string, RingElement> images;
  for (const auto& s : reduction_->specs()) images.emplace(s.name, reduction_->gen(s.name));
  for (const auto& c : clearing_) {
    images[c.unit] = reduction_->from_raw(c.value);
    clear_units_.emplace_back(ring->index(c.inverse), ring->gen(c.unit));
  }
  to_reduction_.emplace(ring, reduction_, images, true, true);
  if (!constraints_.empty()) {
    Form w = constraints_.front();
    for (std::size_t i = 1; i < constraints_.size(); ++i) w = wedge(w, constraints_[i]);
    constraint_wedge_ = w;
  }
}

RingElement Locus::reduce(const RingElement& f) const {
  RingElement g = f;
  for (const auto& [h, unit] : clear_units_) {
    unsigned k = g.degree_in(h);
    if (k) g = g * unit.pow(k);
  }
  return to_reduction_->apply(g);
}

bool Locus::is_zero(const RingElement& f) const { return reduce(f).is_zero(); }

ZeroTest Locus::test(const Form& a) const {
  if (a.frame() != frame_) throw FrameError("locus test on a form from another frame");
  const int m = static_cast<int>(constraints_.size());
  if (m + a.degree() > frame_->dim()) return ZeroTest{true, true};
  Form w = constraint_wedge_ ? wedge(*constraint_wedge_, a) : a;
  for (const auto& [mask, c] : w.terms()) {
    if (!is_zero(c)) return ZeroTest{false, false};
  }
  return ZeroTest{true, false};
}

std::shared_ptr<const Locus> Locus::transport(const FramePtr& frame) const {
  std::vector<Form> cs;
  for (const auto& c : constraints_) cs.push_back(gs::transport(c, frame));
  return std::make_shared<Locus>(frame, std::move(cs), rules_, clearing_);
}

ZeroTest is_zero_on_locus(const Form& a, const std::vector<Form>& constraints) {
  return Locus(a.frame(), constraints).test(a);
}

ZeroTest is_zero_on_locus(const Form& a, const LocusPtr& locus) {
  if (!locus) return ZeroTest{a.is_zero(), false};
  return locus->test(a);
}

}  // namespace gs
