#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace gs {

using Rational = mpq_class;

class RingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A polynomial keyed by generator names, independent of any ring.
// Used for rule specifications, parsing and moving data between rings.
using NameMonomial = std::map<std::string, unsigned>;
using RawPoly = std::map<NameMonomial, Rational>;

RawPoly raw_constant(const Rational& c);
RawPoly raw_generator(const std::string& name);
RawPoly raw_add(const RawPoly& a, const RawPoly& b);
RawPoly raw_scale(const RawPoly& a, const Rational& c);
RawPoly raw_mul(const RawPoly& a, const RawPoly& b);
RawPoly raw_pow(const RawPoly& a, unsigned k);

struct GeneratorSpec {
  std::string name;
  // Reduction rule name^power -> replacement; power == 0 means no rule.
  unsigned power = 0;
  RawPoly replacement;
  // Non-empty: name * inverse_of -> 1.
  std::string inverse_of;
  // Values of scalar derivations (e.g. "dt") on this generator.
  std::map<std::string, RawPoly> derivations;
};

using Monomial = std::vector<std::uint32_t>;

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept;
};

using Terms = std::map<Monomial, Rational>;

class Ring;
class RingElement;
using RingPtr = std::shared_ptr<const Ring>;

class Ring : public std::enable_shared_from_this<Ring> {
 public:
  static RingPtr create(std::vector<GeneratorSpec> gens,
                        std::vector<std::string> derivations = {});

  std::size_t size() const { return specs_.size(); }
  const std::vector<GeneratorSpec>& specs() const { return specs_; }
  const std::vector<std::string>& derivation_names() const { return derivations_; }
  const std::string& name(std::size_t i) const { return specs_[i].name; }
  bool has(const std::string& name) const { return index_.count(name) != 0; }
  std::size_t index(const std::string& name) const;
  bool has_derivation(const std::string& d) const;

  // Ring with extra generators appended; new derivations default to zero
  // on the existing generators.
  RingPtr extend(const std::vector<GeneratorSpec>& more,
                 const std::vector<std::string>& new_derivations = {}) const;
  // Same generators with additional or replaced power rules, no derivations.
  RingPtr with_rules(const std::vector<GeneratorSpec>& rules) const;

  RingElement zero() const;
  RingElement one() const;
  RingElement constant(const Rational& c) const;
  RingElement gen(const std::string& name) const;
  RingElement from_raw(const RawPoly& p) const;
  RingElement parse(const std::string& text) const;

  Terms normalize(const Terms& raw) const;
  bool is_reduced(const Monomial& m) const;
  // out += c * normal_form(m); zero entries may remain in out.
  void accumulate(const Monomial& m, const Rational& c, Terms& out) const;

  // Relation list as pairs lhs, rhs (already normal on the rhs side).
  struct Relation {
    std::size_t gen;
    unsigned power;          // 0 for inverse pairs
    std::size_t partner;     // for inverse pairs
    Terms replacement;
  };
  const std::vector<Relation>& relations() const { return relations_; }
  // Value of derivation d on generator i, if declared.
  const std::optional<Terms>& derivation_rule(const std::string& d, std::size_t i) const;

 private:
  Ring() = default;
  void build();
  const Terms& reduce_monomial(const Monomial& m) const;

  std::vector<GeneratorSpec> specs_;
  std::vector<std::string> derivations_;
  std::map<std::string, std::size_t> index_;
  std::vector<unsigned> power_;                 // per generator, 0 = none
  std::vector<Terms> replacement_;              // per generator
  std::vector<std::pair<std::size_t, std::size_t>> inverse_pairs_;
  std::vector<Relation> relations_;
  std::map<std::string, std::vector<std::optional<Terms>>> drules_;
  mutable std::mutex cache_mutex_;
  mutable std::unordered_map<Monomial, Terms, MonomialHash> cache_;
};

class RingElement {
 public:
  RingElement() = default;
  RingElement(RingPtr ring, Terms terms);  // terms must already be normal

  const RingPtr& ring() const { return ring_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_value() const;  // coefficient of the empty monomial
  std::size_t size() const { return terms_.size(); }

  RingElement operator+(const RingElement& o) const;
  RingElement operator-(const RingElement& o) const;
  RingElement operator-() const;
  RingElement operator*(const RingElement& o) const;
  RingElement operator*(const Rational& c) const;
  RingElement& operator+=(const RingElement& o);
  RingElement& operator-=(const RingElement& o);
  bool operator==(const RingElement& o) const;
  bool operator!=(const RingElement& o) const { return !(*this == o); }

  RingElement pow(unsigned k) const;
  // Formal partial derivative with respect to generator i.
  RingElement partial(std::size_t i) const;
  // Scalar derivation by Leibniz from the declared generator rules.
  RingElement derive(const std::string& derivation) const;
  // Highest exponent of generator i.
  unsigned degree_in(std::size_t i) const;
  // Whether generator i occurs.
  bool mentions(std::size_t i) const { return degree_in(i) > 0; }

  RawPoly to_raw() const;
  std::string to_string() const;
  double evaluate(const std::map<std::string, double>& values) const;

 private:
  void check_ring(const RingElement& o) const;
  RingPtr ring_;
  Terms terms_;
};

RingElement operator*(const Rational& c, const RingElement& e);

// Generator images for a ring homomorphism source -> target. Generators
// without an image may not occur in substituted elements.
class Substitution {
 public:
  Substitution(RingPtr source, RingPtr target,
               const std::map<std::string, RingElement>& images,
               bool allow_partial = false, bool check_relations = true);
  // Every generator mapped to the same-named generator in target, except
  // those listed in overrides.
  static Substitution by_name(RingPtr source, RingPtr target,
                              const std::map<std::string, RingElement>& overrides = {},
                              bool check_relations = true);

  RingElement apply(const RingElement& e) const;
  const RingPtr& source() const { return source_; }
  const RingPtr& target() const { return target_; }

 private:
  RingPtr source_, target_;
  std::vector<std::optional<RingElement>> images_;
  std::vector<std::optional<std::size_t>> rename_;  // fast path: image is a target generator
};

RingElement substitute(const RingElement& e, const Substitution& s);

}  // namespace gs
