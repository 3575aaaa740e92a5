#include "gstruct/ring.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "gstruct/expr.hpp"

namespace gs {

// ---------------------------------------------------------------------------
// RawPoly helpers

RawPoly raw_constant(const Rational& c) {
  RawPoly p;
  if (c != 0) p[{}] = c;
  return p;
}

RawPoly raw_generator(const std::string& name) {
  RawPoly p;
  p[{{name, 1u}}] = 1;
  return p;
}

RawPoly raw_add(const RawPoly& a, const RawPoly& b) {
  RawPoly r = a;
  for (const auto& [m, c] : b) {
    auto& slot = r[m];
    slot += c;
    if (slot == 0) r.erase(m);
  }
  return r;
}

RawPoly raw_scale(const RawPoly& a, const Rational& c) {
  RawPoly r;
  if (c == 0) return r;
  for (const auto& [m, v] : a) r[m] = v * c;
  return r;
}

RawPoly raw_mul(const RawPoly& a, const RawPoly& b) {
  RawPoly r;
  for (const auto& [ma, ca] : a) {
    for (const auto& [mb, cb] : b) {
      NameMonomial m = ma;
      for (const auto& [g, e] : mb) m[g] += e;
      r[m] += ca * cb;
    }
  }
  for (auto it = r.begin(); it != r.end();) {
    if (it->second == 0)
      it = r.erase(it);
    else
      ++it;
  }
  return r;
}

RawPoly raw_pow(const RawPoly& a, unsigned k) {
  RawPoly r = raw_constant(1);
  for (unsigned i = 0; i < k; ++i) r = raw_mul(r, a);
  return r;
}

std::size_t MonomialHash::operator()(const Monomial& m) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (auto e : m) {
    h ^= e + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

namespace {

void strip_zeros(Terms& t) {
  for (auto it = t.begin(); it != t.end();) {
    if (it->second == 0)
      it = t.erase(it);
    else
      ++it;
  }
}

Monomial multiply(const Monomial& a, const Monomial& b) {
  Monomial m(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) m[i] = a[i] + b[i];
  return m;
}

std::string render_rational(const Rational& c) { return c.get_str(); }

}  // namespace

// ---------------------------------------------------------------------------
// Ring

RingPtr Ring::create(std::vector<GeneratorSpec> gens, std::vector<std::string> derivations) {
  std::shared_ptr<Ring> r(new Ring());
  r->specs_ = std::move(gens);
  r->derivations_ = std::move(derivations);
  r->build();
  return r;
}

std::size_t Ring::index(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw RingError("unknown generator '" + name + "'");
  return it->second;
}

bool Ring::has_derivation(const std::string& d) const {
  return std::find(derivations_.begin(), derivations_.end(), d) != derivations_.end();
}

const std::optional<Terms>& Ring::derivation_rule(const std::string& d, std::size_t i) const {
  auto it = drules_.find(d);
  if (it == drules_.end()) throw RingError("unknown derivation '" + d + "'");
  return it->second[i];
}

void Ring::build() {
  const std::size_t n = specs_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& name = specs_[i].name;
    if (name.empty()) throw RingError("empty generator name");
    if (!index_.emplace(name, i).second) throw RingError("duplicate generator '" + name + "'");
  }
  std::set<std::string> dnames(derivations_.begin(), derivations_.end());
  if (dnames.size() != derivations_.size()) throw RingError("duplicate derivation name");

  auto to_terms = [&](const RawPoly& p, std::size_t limit, const std::string& ctx) {
    Terms t;
    for (const auto& [nm, c] : p) {
      Monomial m(n, 0);
      for (const auto& [g, e] : nm) {
        std::size_t j = index(g);
        if (j >= limit)
          throw RingError(ctx + ": generator '" + g + "' is not earlier in the order");
        m[j] += e;
      }
      t[m] += c;
    }
    strip_zeros(t);
    return t;
  };

  power_.assign(n, 0);
  replacement_.assign(n, {});
  for (std::size_t i = 0; i < n; ++i) {
    const auto& s = specs_[i];
    if (s.power > 0) {
      power_[i] = s.power;
      replacement_[i] = to_terms(s.replacement, i, "rule for '" + s.name + "'");
    }
  }

  std::vector<int> paired(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& s = specs_[i];
    if (s.inverse_of.empty()) continue;
    std::size_t j = index(s.inverse_of);
    if (j == i) throw RingError("generator '" + s.name + "' cannot be its own inverse");
    if (!specs_[j].inverse_of.empty() && specs_[j].inverse_of != s.name)
      throw RingError("conflicting inverse declarations for '" + s.name + "'");
    if (!specs_[j].inverse_of.empty() && j < i) continue;  // declared on both sides
    if (power_[i] || power_[j])
      throw RingError("inverse pair '" + s.name + "','" + s.inverse_of +
                      "' involves a generator with a power rule");
    if (paired[i] || paired[j]) throw RingError("generator in two inverse pairs");
    paired[i] = paired[j] = 1;
    inverse_pairs_.emplace_back(i, j);
  }

  // Normalize rule right-hand sides in generator order.
  for (std::size_t i = 0; i < n; ++i) {
    if (power_[i]) replacement_[i] = normalize(replacement_[i]);
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (power_[i]) relations_.push_back({i, power_[i], 0, replacement_[i]});
  }
  for (auto [i, j] : inverse_pairs_) relations_.push_back({i, 0, j, {}});

  for (const auto& d : derivations_) {
    auto& rules = drules_[d];
    rules.assign(n, std::nullopt);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& [d, v] : specs_[i].derivations) {
      auto it = drules_.find(d);
      if (it == drules_.end())
        throw RingError("generator '" + specs_[i].name + "' has a rule for undeclared derivation '" +
                        d + "'");
      it->second[i] = normalize(to_terms(v, n, "derivation"));
    }
  }

  // Each derivation must respect every relation.
  RingPtr self = shared_from_this();
  for (const auto& d : derivations_) {
    for (const auto& rel : relations_) {
      RingElement lhs, rhs;
      try {
        if (rel.power) {
          Monomial m(n, 0);
          m[rel.gen] = rel.power;
          lhs = RingElement(self, Terms{{m, 1}}).derive(d);
          rhs = RingElement(self, rel.replacement).derive(d);
        } else {
          lhs = (gen(name(rel.gen)) * gen(name(rel.partner))).derive(d);
          rhs = zero();
        }
      } catch (const RingError&) {
        continue;  // derivation not defined on all generators involved
      }
      if (!(lhs - rhs).is_zero())
        throw RingError("derivation '" + d + "' does not respect the relation for '" +
                        name(rel.gen) + "'");
    }
  }
}

RingPtr Ring::extend(const std::vector<GeneratorSpec>& more,
                     const std::vector<std::string>& new_derivations) const {
  auto gens = specs_;
  for (auto& g : gens) {
    for (const auto& d : new_derivations) g.derivations.emplace(d, RawPoly{});
  }
  for (const auto& g : more) gens.push_back(g);
  auto ders = derivations_;
  for (const auto& d : new_derivations) {
    if (has_derivation(d)) throw RingError("derivation '" + d + "' already declared");
    ders.push_back(d);
  }
  return create(std::move(gens), std::move(ders));
}

RingPtr Ring::with_rules(const std::vector<GeneratorSpec>& rules) const {
  auto gens = specs_;
  for (auto& g : gens) g.derivations.clear();
  for (const auto& r : rules) {
    auto& g = gens.at(index(r.name));
    if (r.power) {
      g.power = r.power;
      g.replacement = r.replacement;
    }
    if (!r.inverse_of.empty()) g.inverse_of = r.inverse_of;
  }
  return create(std::move(gens), {});
}

RingElement Ring::zero() const { return RingElement(shared_from_this(), {}); }

RingElement Ring::one() const { return constant(1); }

RingElement Ring::constant(const Rational& c) const {
  Terms t;
  if (c != 0) t[Monomial(size(), 0)] = c;
  return RingElement(shared_from_this(), std::move(t));
}

RingElement Ring::gen(const std::string& name) const {
  Monomial m(size(), 0);
  m[index(name)] = 1;
  return RingElement(shared_from_this(), normalize(Terms{{m, 1}}));
}

RingElement Ring::from_raw(const RawPoly& p) const {
  Terms t;
  for (const auto& [nm, c] : p) {
    Monomial m(size(), 0);
    for (const auto& [g, e] : nm) m[index(g)] += e;
    t[m] += c;
  }
  strip_zeros(t);
  return RingElement(shared_from_this(), normalize(t));
}

RingElement Ring::parse(const std::string& text) const { return from_raw(parse_raw(text)); }

bool Ring::is_reduced(const Monomial& m) const {
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (power_[i] && m[i] >= power_[i]) return false;
  }
  for (auto [a, b] : inverse_pairs_) {
    if (m[a] && m[b]) return false;
  }
  return true;
}

const Terms& Ring::reduce_monomial(const Monomial& m) const {
  {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    auto it = cache_.find(m);
    if (it != cache_.end()) return it->second;
  }
  Monomial mm = m;
  for (auto [a, b] : inverse_pairs_) {
    auto k = std::min(mm[a], mm[b]);
    mm[a] -= k;
    mm[b] -= k;
  }
  Terms out;
  std::size_t pick = mm.size();
  for (std::size_t i = mm.size(); i-- > 0;) {
    if (power_[i] && mm[i] >= power_[i]) {
      pick = i;
      break;
    }
  }
  if (pick == mm.size()) {
    out[mm] = 1;
  } else {
    mm[pick] -= power_[pick];
    for (const auto& [r, rc] : replacement_[pick]) accumulate(multiply(mm, r), rc, out);
    strip_zeros(out);
  }
  std::lock_guard<std::mutex> lock(cache_mutex_);
  // unordered_map never invalidates references to elements on insert
  return cache_.emplace(m, std::move(out)).first->second;
}

void Ring::accumulate(const Monomial& m, const Rational& c, Terms& out) const {
  if (is_reduced(m)) {
    out[m] += c;
    return;
  }
  for (const auto& [r, rc] : reduce_monomial(m)) out[r] += c * rc;
}

Terms Ring::normalize(const Terms& raw) const {
  Terms out;
  for (const auto& [m, c] : raw) {
    if (m.size() != size()) throw RingError("monomial size does not match ring");
    accumulate(m, c, out);
  }
  strip_zeros(out);
  return out;
}

// ---------------------------------------------------------------------------
// RingElement

RingElement::RingElement(RingPtr ring, Terms terms) : ring_(std::move(ring)), terms_(std::move(terms)) {}

void RingElement::check_ring(const RingElement& o) const {
  if (ring_ != o.ring_) throw RingError("ring mismatch");
}

bool RingElement::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  const auto& m = terms_.begin()->first;
  return std::all_of(m.begin(), m.end(), [](auto e) { return e == 0; });
}

Rational RingElement::constant_value() const {
  if (!ring_) return 0;
  auto it = terms_.find(Monomial(ring_->size(), 0));
  return it == terms_.end() ? Rational(0) : it->second;
}

RingElement RingElement::operator+(const RingElement& o) const {
  RingElement r = *this;
  r += o;
  return r;
}

RingElement RingElement::operator-(const RingElement& o) const {
  RingElement r = *this;
  r -= o;
  return r;
}

RingElement& RingElement::operator+=(const RingElement& o) {
  check_ring(o);
  for (const auto& [m, c] : o.terms_) {
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  return *this;
}

RingElement& RingElement::operator-=(const RingElement& o) {
  check_ring(o);
  for (const auto& [m, c] : o.terms_) {
    auto [it, inserted] = terms_.emplace(m, -c);
    if (!inserted) {
      it->second -= c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  return *this;
}

RingElement RingElement::operator-() const {
  RingElement r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

RingElement RingElement::operator*(const RingElement& o) const {
  check_ring(o);
  Terms out;
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : o.terms_) {
      ring_->accumulate(multiply(ma, mb), ca * cb, out);
    }
  }
  strip_zeros(out);
  return RingElement(ring_, std::move(out));
}

RingElement RingElement::operator*(const Rational& c) const {
  if (c == 0) return RingElement(ring_, {});
  RingElement r = *this;
  for (auto& [m, v] : r.terms_) v *= c;
  return r;
}

RingElement operator*(const Rational& c, const RingElement& e) { return e * c; }

bool RingElement::operator==(const RingElement& o) const {
  return ring_ == o.ring_ && terms_ == o.terms_;
}

RingElement RingElement::pow(unsigned k) const {
  RingElement result = ring_->one();
  RingElement base = *this;
  while (k) {
    if (k & 1u) result = result * base;
    k >>= 1u;
    if (k) base = base * base;
  }
  return result;
}

RingElement RingElement::partial(std::size_t i) const {
  Terms out;
  for (const auto& [m, c] : terms_) {
    if (m[i] == 0) continue;
    Monomial mm = m;
    mm[i] -= 1;
    out[mm] += c * m[i];
  }
  strip_zeros(out);
  return RingElement(ring_, ring_->normalize(out));
}

RingElement RingElement::derive(const std::string& derivation) const {
  if (!ring_->has_derivation(derivation)) throw RingError("unknown derivation '" + derivation + "'");
  RingElement result = ring_->zero();
  const std::size_t n = ring_->size();
  for (std::size_t i = 0; i < n; ++i) {
    if (!mentions(i)) continue;
    const auto& rule = ring_->derivation_rule(derivation, i);
    if (!rule)
      throw RingError("no '" + derivation + "' rule for generator '" + ring_->name(i) + "'");
    if (rule->empty()) continue;
    result += partial(i) * RingElement(ring_, *rule);
  }
  return result;
}

unsigned RingElement::degree_in(std::size_t i) const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) d = std::max<unsigned>(d, m[i]);
  return d;
}

RawPoly RingElement::to_raw() const {
  RawPoly p;
  for (const auto& [m, c] : terms_) {
    NameMonomial nm;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i]) nm[ring_->name(i)] = m[i];
    }
    p[nm] = c;
  }
  return p;
}

std::string RingElement::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    std::string mono;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (!m[i]) continue;
      if (!mono.empty()) mono += "*";
      mono += ring_->name(i);
      if (m[i] > 1) mono += "^" + std::to_string(m[i]);
    }
    Rational a = abs(c);
    bool neg = c < 0;
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    if (mono.empty()) {
      os << render_rational(a);
    } else if (a == 1) {
      os << mono;
    } else {
      os << render_rational(a) << "*" << mono;
    }
  }
  return os.str();
}

double RingElement::evaluate(const std::map<std::string, double>& values) const {
  const std::size_t n = ring_ ? ring_->size() : 0;
  std::vector<double> v(n, 0.0);
  std::vector<bool> have(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    auto it = values.find(ring_->name(i));
    if (it != values.end()) {
      v[i] = it->second;
      have[i] = true;
    }
  }
  double sum = 0.0;
  for (const auto& [m, c] : terms_) {
    double t = c.get_d();
    for (std::size_t i = 0; i < n; ++i) {
      if (!m[i]) continue;
      if (!have[i]) throw RingError("no value for generator '" + ring_->name(i) + "'");
      t *= std::pow(v[i], static_cast<double>(m[i]));
    }
    sum += t;
  }
  return sum;
}

// ---------------------------------------------------------------------------
// Substitution

Substitution::Substitution(RingPtr source, RingPtr target,
                           const std::map<std::string, RingElement>& images, bool allow_partial,
                           bool check_relations)
    : source_(std::move(source)), target_(std::move(target)) {
  const std::size_t n = source_->size();
  images_.assign(n, std::nullopt);
  rename_.assign(n, std::nullopt);
  for (const auto& [name, img] : images) {
    std::size_t i = source_->index(name);
    if (img.ring() != target_) throw RingError("image of '" + name + "' lies in another ring");
    images_[i] = img;
    if (img.size() == 1 && img.terms().begin()->second == 1) {
      const auto& m = img.terms().begin()->first;
      std::size_t count = 0, which = 0;
      for (std::size_t j = 0; j < m.size(); ++j) {
        if (m[j] == 1) {
          ++count;
          which = j;
        } else if (m[j] != 0) {
          count = 2;
        }
      }
      if (count == 1) rename_[i] = which;
    }
  }
  if (!allow_partial) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!images_[i]) throw RingError("no image for generator '" + source_->name(i) + "'");
    }
  }
  if (!check_relations) return;
  for (const auto& rel : source_->relations()) {
    RingElement lhs, rhs;
    if (rel.power) {
      if (!images_[rel.gen]) continue;
      bool ok = true;
      for (const auto& [m, c] : rel.replacement) {
        for (std::size_t j = 0; j < n; ++j) {
          if (m[j] && !images_[j]) ok = false;
        }
      }
      if (!ok) continue;
      lhs = images_[rel.gen]->pow(rel.power);
      rhs = apply(RingElement(source_, rel.replacement));
    } else {
      if (!images_[rel.gen] || !images_[rel.partner]) continue;
      lhs = *images_[rel.gen] * *images_[rel.partner];
      rhs = target_->one();
    }
    if (lhs != rhs)
      throw RingError("image violates the relation for '" + source_->name(rel.gen) + "'");
  }
}

Substitution Substitution::by_name(RingPtr source, RingPtr target,
                                   const std::map<std::string, RingElement>& overrides,
                                   bool check_relations) {
  std::map<std::string, RingElement> images = overrides;
  for (const auto& s : source->specs()) {
    if (images.count(s.name)) continue;
    images.emplace(s.name, target->gen(s.name));
  }
  return Substitution(source, target, images, false, check_relations);
}

RingElement Substitution::apply(const RingElement& e) const {
  if (e.ring() != source_) throw RingError("substitution applied to an element of another ring");
  const std::size_t n = source_->size();
  bool renaming = true;
  for (std::size_t i = 0; i < n && renaming; ++i) {
    if (e.mentions(i)) {
      if (!images_[i])
        throw RingError("generator '" + source_->name(i) + "' has no image");
      if (!rename_[i]) renaming = false;
    }
  }
  if (renaming) {
    Terms raw;
    for (const auto& [m, c] : e.terms()) {
      Monomial t(target_->size(), 0);
      for (std::size_t i = 0; i < n; ++i) {
        if (m[i]) t[*rename_[i]] += m[i];
      }
      raw[t] += c;
    }
    strip_zeros(raw);
    return RingElement(target_, target_->normalize(raw));
  }
  std::map<std::pair<std::size_t, unsigned>, RingElement> powers;
  auto power_of = [&](std::size_t i, unsigned k) -> const RingElement& {
    auto key = std::make_pair(i, k);
    auto it = powers.find(key);
    if (it != powers.end()) return it->second;
    return powers.emplace(key, images_[i]->pow(k)).first->second;
  };
  RingElement result = target_->zero();
  for (const auto& [m, c] : e.terms()) {
    RingElement t = target_->constant(c);
    for (std::size_t i = 0; i < n; ++i) {
      if (m[i]) t = t * power_of(i, m[i]);
    }
    result += t;
  }
  return result;
}

RingElement substitute(const RingElement& e, const Substitution& s) { return s.apply(e); }

}  // namespace gs
