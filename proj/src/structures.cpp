#include "gstruct/structures.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <sstream>

namespace gs {

const CheckItem& CheckReport::add(const std::string& condition, const Form& residual,
                                  const LocusPtr& locus, bool expect_zero) {
  for (const auto& it : items_) {
    if (it.condition == condition) return it;
  }
  ZeroTest z = is_zero_on_locus(residual, locus);
  CheckItem item;
  item.condition = condition;
  item.expect_zero = expect_zero;
  item.vacuous = z.vacuous;
  item.verdict = expect_zero ? z.zero : !z.zero;
  item.residual = z.zero ? residual.frame()->zero(residual.degree()) : residual;
  items_.push_back(std::move(item));
  return items_.back();
}

void CheckReport::set_flag_all(const std::string& name, const std::vector<std::string>& conditions) {
  bool all = true;
  for (const auto& c : conditions) all = all && verdict(c);
  flags_[name] = all;
}

void CheckReport::merge(const CheckReport& other) {
  for (const auto& it : other.items_) {
    bool present = false;
    for (const auto& mine : items_) present = present || mine.condition == it.condition;
    if (!present) items_.push_back(it);
  }
  for (const auto& [k, v] : other.flags_) flags_[k] = v;
}

const CheckItem& CheckReport::item(const std::string& condition) const {
  for (const auto& it : items_) {
    if (it.condition == condition) return it;
  }
  throw std::out_of_range("no condition '" + condition + "' in report");
}

bool CheckReport::flag(const std::string& name) const {
  auto it = flags_.find(name);
  if (it == flags_.end()) throw std::out_of_range("no flag '" + name + "' in report");
  return it->second;
}

bool CheckReport::all_passed() const {
  for (const auto& it : items_) {
    if (!it.verdict) return false;
  }
  return true;
}

nlohmann::json CheckReport::to_json() const {
  nlohmann::json conds = nlohmann::json::array();
  for (const auto& it : items_) {
    nlohmann::json j;
    j["condition"] = it.condition;
    j["residual"] = it.residual.to_string();
    j["verdict"] = it.verdict;
    if (!it.expect_zero) j["expect"] = "nonzero";
    if (it.vacuous) j["vacuous"] = true;
    conds.push_back(std::move(j));
  }
  nlohmann::json out;
  out["conditions"] = std::move(conds);
  out["flags"] = flags_;
  return out;
}

std::string CheckReport::to_text() const {
  std::ostringstream os;
  for (const auto& it : items_) {
    os << (it.verdict ? "  ok    " : "  FAIL  ") << it.condition;
    if (!it.expect_zero) os << " != 0";
    else os << " = 0";
    if (it.vacuous) os << "  (vacuous: degree exceeds locus dimension)";
    os << "\n";
    if (!it.verdict && it.expect_zero) os << "        residual: " << it.residual.to_string() << "\n";
  }
  for (const auto& [k, v] : flags_) os << "  " << k << ": " << (v ? "true" : "false") << "\n";
  return os.str();
}

CheckReport check_su2_compatibility(const SU2Structure& s) {
  CheckReport r;
  const auto& L = s.locus;
  Form v = wedge(s.omega1, s.omega1);
  r.add("omega1^omega1 - omega2^omega2", v - wedge(s.omega2, s.omega2), L);
  r.add("omega1^omega1 - omega3^omega3", v - wedge(s.omega3, s.omega3), L);
  r.add("omega1^omega2", wedge(s.omega1, s.omega2), L);
  r.add("omega1^omega3", wedge(s.omega1, s.omega3), L);
  r.add("omega2^omega3", wedge(s.omega2, s.omega3), L);
  r.add("omega1^omega1^eta", wedge(v, s.eta), L, false);
  r.set_flag("compatible", r.all_passed());
  return r;
}

CheckReport classify_su2(const SU2Structure& s) {
  CheckReport r;
  const auto& L = s.locus;
  const Form& eta = s.eta;
  const Form& w1 = s.omega1;
  const Form& w2 = s.omega2;
  const Form& w3 = s.omega3;
  Form deta = d(eta);
  Form dw1 = d(w1);

  // Hypo with omega3 as the fundamental 2-form, the convention of the cone
  // and of the double hypo equations.
  r.add("d(omega3)", d(w3), L);
  r.add("d(eta^omega1)", d(wedge(eta, w1)), L);
  r.add("d(eta^omega2)", d(wedge(eta, w2)), L);
  r.set_flag_all("hypo", {"d(omega3)", "d(eta^omega1)", "d(eta^omega2)"});

  // The same equations with omega1 as the fundamental 2-form.
  r.add("d(omega1)", dw1, L);
  r.add("d(eta^omega3)", d(wedge(eta, w3)), L);
  r.set_flag_all("hypo_omega1", {"d(omega1)", "d(eta^omega2)", "d(eta^omega3)"});

  r.add("d(omega1) - 3 eta^omega2", dw1 - wedge(eta, w2) * Rational(3), L);
  r.add("d(eta^omega3) + 2 omega1^omega1", d(wedge(eta, w3)) + wedge(w1, w1) * Rational(2), L);
  r.set_flag_all("nearly_hypo", {"d(omega1) - 3 eta^omega2", "d(eta^omega3) + 2 omega1^omega1"});

  // The four double hypo equations, recomputed independently.
  CheckReport dh;
  dh.add("d(eta^omega1)", d(wedge(eta, w1)), L);
  dh.add("d(omega1) - 3 eta^omega2", d(w1) - wedge(eta, w2) * Rational(3), L);
  dh.add("d(eta^omega3) + 2 omega1^omega1", d(wedge(eta, w3)) + wedge(w1, w1) * Rational(2), L);
  dh.add("d(omega3)", d(w3), L);
  dh.set_flag("double_hypo", dh.all_passed());
  r.merge(dh);

  r.add("d(eta) + 2 omega3", deta + w3 * Rational(2), L);
  r.add("d(omega2) + 3 eta^omega1", d(w2) + wedge(eta, w1) * Rational(3), L);
  r.set_flag_all("sasaki_einstein",
                 {"d(eta) + 2 omega3", "d(omega1) - 3 eta^omega2", "d(omega2) + 3 eta^omega1"});

  r.add("eta^d(eta)^d(eta)", wedge(eta, deta, deta), L, false);
  r.set_flag_all("contact", {"eta^d(eta)^d(eta)"});
  return r;
}

CheckReport check_su3_compatibility(const SU3Structure& s) {
  CheckReport r;
  const auto& L = s.locus;
  Form F3 = wedge(s.F, s.F, s.F);
  r.add("F^psi+", wedge(s.F, s.psi_plus), L);
  r.add("F^psi-", wedge(s.F, s.psi_minus), L);
  r.add("F^F^F - 3/2 psi+^psi-", F3 - wedge(s.psi_plus, s.psi_minus) * Rational(3, 2), L);
  r.add("F^F^F", F3, L, false);
  r.set_flag("compatible", r.all_passed());
  return r;
}

CheckReport classify_su3(const SU3Structure& s) {
  CheckReport r;
  const auto& L = s.locus;
  Form dF = d(s.F);
  Form dpp = d(s.psi_plus);
  Form dpm = d(s.psi_minus);
  Form FF = wedge(s.F, s.F);

  r.add("d(F)", dF, L);
  r.add("d(psi+)", dpp, L);
  r.add("d(psi-)", dpm, L);
  r.set_flag_all("integrable", {"d(F)", "d(psi+)", "d(psi-)"});

  r.add("d(F)^F", wedge(dF, s.F), L);
  r.set_flag_all("half_flat", {"d(F)^F", "d(psi+)"});

  r.add("d(psi-) + 2 F^F", dpm + FF * Rational(2), L);
  r.set_flag_all("nearly_half_flat", {"d(psi-) + 2 F^F"});

  r.add("d(F) - 3 psi+", dF - s.psi_plus * Rational(3), L);
  r.set_flag_all("nearly_kahler", {"d(F) - 3 psi+", "d(psi-) + 2 F^F"});
  return r;
}

CheckReport check_nearly_parallel_g2(const G2Structure& s) {
  CheckReport r;
  r.add("d(phi) - 4 *phi", d(s.phi) - s.star_phi * Rational(4), s.locus);
  r.set_flag("nearly_parallel", r.all_passed());
  return r;
}

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Orthonormal basis of the kernel of a (rows x n) matrix, as columns.
MatrixXd kernel_basis(const MatrixXd& a, int n) {
  if (a.rows() == 0) return MatrixXd::Identity(n, n);
  Eigen::JacobiSVD<MatrixXd> svd(a, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  double scale = sv.size() ? sv(0) : 0.0;
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i) {
    if (sv(i) > 1e-10 * std::max(1.0, scale)) ++rank;
  }
  return svd.matrixV().rightCols(n - rank);
}

VectorXd eval_one_form(const Form& a, const std::map<std::string, double>& p) {
  VectorXd v = VectorXd::Zero(a.frame()->dim());
  for (const auto& [m, c] : a.terms()) v(mask_indices(m)[0]) = c.evaluate(p);
  return v;
}

MatrixXd eval_two_form(const Form& a, const std::map<std::string, double>& p) {
  const int n = a.frame()->dim();
  MatrixXd w = MatrixXd::Zero(n, n);
  for (const auto& [m, c] : a.terms()) {
    auto idx = mask_indices(m);
    double v = c.evaluate(p);
    w(idx[0], idx[1]) += v;
    w(idx[1], idx[0]) -= v;
  }
  return w;
}

}  // namespace

PositivityReport check_positivity_numeric(const SU2Structure& s, const PointSampler& sampler,
                                          int samples, double tol, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const int n = s.frame->dim();
  PositivityReport out;
  out.min_eigenvalue = std::numeric_limits<double>::infinity();
  for (int k = 0; k < samples; ++k) {
    auto p = sampler(rng);
    MatrixXd c(0, n);
    if (s.locus) {
      const auto& cons = s.locus->constraints();
      c.resize(static_cast<Eigen::Index>(cons.size()), n);
      for (std::size_t i = 0; i < cons.size(); ++i) c.row(i) = eval_one_form(cons[i], p).transpose();
    }
    MatrixXd tangent = kernel_basis(c, n);
    VectorXd eta = eval_one_form(s.eta, p);
    MatrixXd eta_t = (tangent.transpose() * eta).transpose();
    MatrixXd h = tangent * kernel_basis(eta_t, static_cast<int>(tangent.cols()));
    if (h.cols() != 4)
      throw std::runtime_error("ker eta has dimension " + std::to_string(h.cols()) +
                               " at a sample point");
    MatrixXd o1 = h.transpose() * eval_two_form(s.omega1, p) * h;
    MatrixXd o2 = h.transpose() * eval_two_form(s.omega2, p) * h;
    MatrixXd o3 = h.transpose() * eval_two_form(s.omega3, p) * h;
    Eigen::FullPivLU<MatrixXd> lu(o2);
    if (!lu.isInvertible()) throw std::runtime_error("omega2 is degenerate on ker eta at a sample point");
    MatrixXd m = lu.solve(o1);
    MatrixXd q = o3 * m;
    MatrixXd sym = (q + q.transpose()) / 2;
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(sym);
    double ev = es.eigenvalues().minCoeff();
    if (ev < out.min_eigenvalue) {
      out.min_eigenvalue = ev;
      out.worst_point = p;
    }
    ++out.samples;
  }
  out.passed = out.samples > 0 && out.min_eigenvalue >= -tol;
  return out;
}

}  // namespace gs
