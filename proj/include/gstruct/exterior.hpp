#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gstruct/ring.hpp"

namespace gs {

class FrameError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Strictly increasing index tuples are stored as bit masks.
using Mask = std::uint32_t;
using FormTerms = std::map<Mask, RingElement>;

std::vector<int> mask_indices(Mask m);
Mask indices_mask(const std::vector<int>& idx);
int mask_degree(Mask m);
// Sign of e^A ^ e^B relative to e^(A|B); 0 when A and B overlap.
int wedge_sign(Mask a, Mask b);

// Name-based description of a form, independent of any frame.
struct RawFormTerm {
  RawPoly coeff;
  std::vector<std::string> coframe;
};
using RawForm = std::vector<RawFormTerm>;

RawFormTerm raw_term(const std::string& coeff, std::vector<std::string> coframe);

struct FrameSpec {
  RingPtr ring;
  std::vector<std::string> coframe;
  // Missing entries: the coframe element is closed.
  std::map<std::string, RawForm> d_coframe;
  // Every generator occurring in a differentiated coefficient needs an
  // entry; an empty RawForm declares a constant.
  std::map<std::string, RawForm> d_generators;
  // Present for orthonormal frames: the positively oriented ordering.
  std::optional<std::vector<std::string>> orientation;
  // Reject frames with d^2 != 0.
  bool require_closed = true;
};

class DifferentialFrame;
class Form;
using FramePtr = std::shared_ptr<const DifferentialFrame>;

class DifferentialFrame : public std::enable_shared_from_this<DifferentialFrame> {
 public:
  static FramePtr create(FrameSpec spec);

  const RingPtr& ring() const { return spec_.ring; }
  const FrameSpec& spec() const { return spec_; }
  int dim() const { return static_cast<int>(spec_.coframe.size()); }
  const std::vector<std::string>& names() const { return spec_.coframe; }
  const std::string& name(int i) const { return spec_.coframe.at(i); }
  bool has(const std::string& name) const { return index_.count(name) != 0; }
  int index(const std::string& name) const;

  Form zero(int degree) const;
  Form scalar(const RingElement& f) const;
  Form scalar(const Rational& c) const;
  Form e(const std::string& name) const;
  Form basis(Mask m) const;
  // Wedge of the named coframe elements in the given order.
  Form basis(const std::vector<std::string>& names) const;
  Form from_raw(const RawForm& raw, int degree) const;
  Form parse(const std::vector<std::pair<std::string, std::vector<std::string>>>& terms,
             int degree) const;

  Form d_coframe(int i) const;
  // d of a generator, or nullopt when no rule is declared.
  std::optional<Form> d_generator(std::size_t g) const;
  bool has_d_rule(std::size_t g) const { return dgen_[g].has_value(); }

  // d(d e^i) for each coframe element and d(d g) for each generator rule.
  std::vector<std::pair<std::string, Form>> d_squared() const;
  bool closed() const { return closed_; }

  bool orthonormal() const { return spec_.orientation.has_value(); }
  // +1 if the declared orientation agrees with e^1 ^ ... ^ e^n.
  int orientation_sign() const;

  const FormTerms& d_basis(Mask m) const;

 private:
  DifferentialFrame() = default;
  void build();

  FrameSpec spec_;
  std::map<std::string, int> index_;
  std::vector<FormTerms> dcof_;
  std::vector<std::optional<FormTerms>> dgen_;
  bool closed_ = true;
  int orient_sign_ = 1;
  mutable std::mutex cache_mutex_;
  mutable std::map<Mask, FormTerms> dbasis_cache_;
};

class Form {
 public:
  Form() = default;
  Form(FramePtr frame, int degree, FormTerms terms);

  const FramePtr& frame() const { return frame_; }
  int degree() const { return degree_; }
  const FormTerms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  RingElement coefficient(Mask m) const;
  RingElement coefficient(const std::vector<std::string>& names) const;

  Form operator+(const Form& o) const;
  Form operator-(const Form& o) const;
  Form operator-() const;
  Form operator*(const RingElement& f) const;
  Form operator*(const Rational& c) const;
  Form& operator+=(const Form& o);
  Form& operator-=(const Form& o);
  bool operator==(const Form& o) const;
  bool operator!=(const Form& o) const { return !(*this == o); }

  // Applies a scalar derivation to every coefficient.
  Form derive_coefficients(const std::string& derivation) const;
  RawForm to_raw() const;
  std::string to_string() const;

 private:
  void check(const Form& o) const;
  FramePtr frame_;
  int degree_ = 0;
  FormTerms terms_;
};

Form operator*(const RingElement& f, const Form& a);
Form operator*(const Rational& c, const Form& a);

Form wedge(const Form& a, const Form& b);
template <typename... Rest>
Form wedge(const Form& a, const Form& b, const Rest&... rest) {
  return wedge(wedge(a, b), rest...);
}
Form d(const Form& a);

class FrameVector {
 public:
  FrameVector() = default;
  explicit FrameVector(FramePtr frame);
  FrameVector(FramePtr frame, std::vector<RingElement> components);
  static FrameVector basis(FramePtr frame, const std::string& name);

  const FramePtr& frame() const { return frame_; }
  const std::vector<RingElement>& components() const { return comps_; }
  const RingElement& operator[](int i) const { return comps_.at(i); }
  FrameVector operator+(const FrameVector& o) const;
  FrameVector operator-(const FrameVector& o) const;
  FrameVector operator*(const RingElement& f) const;
  FrameVector operator*(const Rational& c) const;

 private:
  FramePtr frame_;
  std::vector<RingElement> comps_;
};

Form interior(const FrameVector& x, const Form& a);
// Value of a 1-form on a vector.
RingElement pair(const Form& one_form, const FrameVector& x);

class BilinearForm {
 public:
  BilinearForm(FramePtr frame, std::vector<std::vector<RingElement>> matrix);
  // Sum of c * sym(a, b) for the given 1-forms, sym(a,b) = (a(x)b(y)+b(x)a(y))/2.
  static BilinearForm from_products(FramePtr frame,
                                    const std::vector<std::tuple<Rational, Form, Form>>& terms);
  const FramePtr& frame() const { return frame_; }
  const RingElement& at(int i, int j) const { return m_.at(i).at(j); }

 private:
  FramePtr frame_;
  std::vector<std::vector<RingElement>> m_;
};

RingElement eval_bilinear(const BilinearForm& g, const FrameVector& x, const FrameVector& y);

Form hodge_flat(const Form& a);

// Pullback along a map given on generators and coframe elements.
class FrameMap {
 public:
  FrameMap(FramePtr source, FramePtr target, const std::map<std::string, RingElement>& gens,
           const std::map<std::string, Form>& coframe, bool check = true);
  // Unlisted generators and coframe elements go to their namesakes.
  static FrameMap by_name(FramePtr source, FramePtr target,
                          const std::map<std::string, RingElement>& gens = {},
                          const std::map<std::string, Form>& coframe = {}, bool check = true);

  const FramePtr& source() const { return source_; }
  const FramePtr& target() const { return target_; }
  RingElement apply(const RingElement& f) const { return subst_.apply(f); }
  Form apply(const Form& a) const;
  // pullback(d e^i) - d(pullback e^i) for every source coframe element.
  std::vector<std::pair<std::string, Form>> defects() const;

 private:
  FramePtr source_, target_;
  Substitution subst_;
  std::vector<Form> images_;
  struct Cache {
    std::mutex mutex;
    std::map<Mask, Form> forms;
  };
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

Form pullback(const Form& a, const FrameMap& m);
// Moves a form to a frame that contains the same coframe and generator
// names (e.g. an extension).
Form transport(const Form& a, const FramePtr& target);
RingElement transport(const RingElement& f, const RingPtr& target);

struct ClearingSpec {
  std::string inverse;  // generator h with unit * h = 1
  std::string unit;     // generator standing for a positive polynomial
  RawPoly value;        // that polynomial
};

struct ZeroTest {
  bool zero = false;
  bool vacuous = false;  // constraint degree overflow
  explicit operator bool() const { return zero; }
};

// Submanifold given by independent 1-forms together with the reduction
// rules of its defining ideal.
class Locus {
 public:
  Locus(FramePtr frame, std::vector<Form> constraints, std::vector<GeneratorSpec> rules = {},
        std::vector<ClearingSpec> clearing = {});

  const FramePtr& frame() const { return frame_; }
  const std::vector<Form>& constraints() const { return constraints_; }
  const std::vector<GeneratorSpec>& rules() const { return rules_; }
  const std::vector<ClearingSpec>& clearing() const { return clearing_; }
  const RingPtr& reduction_ring() const { return reduction_; }

  ZeroTest test(const Form& a) const;
  bool is_zero(const RingElement& f) const;
  // Coefficient in the reduction ring after clearing.
  RingElement reduce(const RingElement& f) const;
  std::shared_ptr<const Locus> transport(const FramePtr& frame) const;

 private:
  FramePtr frame_;
  std::vector<Form> constraints_;
  std::vector<GeneratorSpec> rules_;
  std::vector<ClearingSpec> clearing_;
  RingPtr reduction_;
  std::optional<Substitution> to_reduction_;
  std::vector<std::pair<std::size_t, RingElement>> clear_units_;  // (inverse index, unit)
  std::optional<Form> constraint_wedge_;
};

using LocusPtr = std::shared_ptr<const Locus>;

ZeroTest is_zero_on_locus(const Form& a, const std::vector<Form>& constraints);
ZeroTest is_zero_on_locus(const Form& a, const LocusPtr& locus);

}  // namespace gs
