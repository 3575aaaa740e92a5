#pragma once

#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"

#include "gstruct/exterior.hpp"

namespace gs {

struct SU2Structure {
  FramePtr frame;
  Form eta, omega1, omega2, omega3;
  LocusPtr locus;
};

struct SU3Structure {
  FramePtr frame;
  Form F, psi_plus, psi_minus;
  LocusPtr locus;
};

struct G2Structure {
  FramePtr frame;
  Form phi, star_phi;
  LocusPtr locus;
};

struct CheckItem {
  std::string condition;
  Form residual;
  // true: the condition asks the residual to vanish; false: to be nonzero.
  bool expect_zero = true;
  bool verdict = false;
  bool vacuous = false;
};

class CheckReport {
 public:
  // Records the residual and decides it on the locus.
  const CheckItem& add(const std::string& condition, const Form& residual, const LocusPtr& locus,
                       bool expect_zero = true);
  void set_flag(const std::string& name, bool value) { flags_[name] = value; }
  // Flag from the conjunction of the named conditions.
  void set_flag_all(const std::string& name, const std::vector<std::string>& conditions);
  void merge(const CheckReport& other);

  const std::vector<CheckItem>& items() const { return items_; }
  const std::map<std::string, bool>& flags() const { return flags_; }
  const CheckItem& item(const std::string& condition) const;
  bool verdict(const std::string& condition) const { return item(condition).verdict; }
  bool flag(const std::string& name) const;
  bool has_flag(const std::string& name) const { return flags_.count(name) != 0; }
  bool all_passed() const;

  nlohmann::json to_json() const;
  std::string to_text() const;

 private:
  std::vector<CheckItem> items_;
  std::map<std::string, bool> flags_;
};

CheckReport check_su2_compatibility(const SU2Structure& s);
CheckReport classify_su2(const SU2Structure& s);
CheckReport check_su3_compatibility(const SU3Structure& s);
CheckReport classify_su3(const SU3Structure& s);
CheckReport check_nearly_parallel_g2(const G2Structure& s);

using PointSampler = std::function<std::map<std::string, double>(std::mt19937_64&)>;

struct PositivityReport {
  int samples = 0;
  double min_eigenvalue = 0;
  bool passed = false;
  std::map<std::string, double> worst_point;
};

// Checks that X -> omega3(X, MX), with (MX) _| omega2 = X _| omega1 on ker eta,
// is positive semidefinite at sampled points of the locus.
PositivityReport check_positivity_numeric(const SU2Structure& s, const PointSampler& sampler,
                                          int samples, double tol, std::uint64_t seed = 1);

}  // namespace gs
