#include "raregt/oracle.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "raregt/error.hpp"
#include "raregt/series.hpp"

namespace raregt {
namespace {

constexpr std::uint64_t kSearchCap = 200;

// x^k e^{-x} / k!, via logs so that large k stays finite.
double poisson_weight(double x, std::uint64_t k) {
  const double kd = static_cast<double>(k);
  return std::exp(kd * std::log(x) - x - std::lgamma(kd + 1.0));
}

}  // namespace

double lambda_k(const MixingMeasure& measure, std::uint64_t k) {
  double total = 0.0;
  for (const auto& atom : measure.atoms()) total += atom.mass * poisson_weight(atom.x, k);
  return total;
}

double aep_limit(const MixingMeasure& measure) {
  double total = 0.0;
  for (const auto& atom : measure.atoms()) total += atom.mass * std::log(atom.x);
  return total;
}

double mean_log_ratio(const MixingMeasure& measure) {
  double total = 0.0;
  for (const auto& atom : measure.atoms()) total += atom.mass * std::log(atom.x / atom.y);
  return total;
}

double entropy_at(const MixingMeasure& measure, std::uint64_t n) {
  double total = 0.0;
  for (const auto& atom : measure.atoms()) total -= atom.mass * std::log(atom.x / static_cast<double>(n));
  return total;
}

double gt_sequence_limit(const MixingMeasure& measure, std::uint64_t K) {
  double total = 0.0;
  double prev = lambda_k(measure, 0);
  for (std::uint64_t k = 1; k <= K; ++k) {
    const double cur = lambda_k(measure, k);
    if (prev > 0.0) total += prev * std::log(static_cast<double>(k) * cur / prev);
    prev = cur;
  }
  return total;
}

GammaBarForms gamma_bar_forms(const MixingMeasure& measure, std::uint64_t k, std::uint64_t order, double c_bar) {
  const SeriesCoefficients coeffs(k, order, c_bar);
  auto lambda = [&](std::uint64_t r) { return lambda_k(measure, r); };

  GammaBarForms forms{};
  forms.coefficient_form = coeffs.apply(lambda);
  forms.scale = coeffs.magnitude(lambda);

  double collapsed = 0.0;
  for (const auto& atom : measure.atoms()) {
    const double base = 1.0 - atom.x / c_bar;
    double power = 1.0;
    double series = 0.0;
    for (std::uint64_t m = 1; m <= order; ++m) {
      power *= base;
      series += power / static_cast<double>(m);
    }
    collapsed -= atom.mass * series * poisson_weight(atom.x, k);
  }
  forms.collapsed_form = collapsed + std::log(c_bar) * lambda_k(measure, k);
  return forms;
}

double gamma_bar(const MixingMeasure& measure, std::uint64_t k, std::uint64_t order, double c_bar) {
  const auto forms = gamma_bar_forms(measure, k, order, c_bar);
  const double gap = std::abs(forms.coefficient_form - forms.collapsed_form);
  const bool finite = std::isfinite(forms.coefficient_form) && std::isfinite(forms.collapsed_form) &&
                      std::isfinite(forms.scale);
  if (!finite || !(gap <= 1e-10 * std::max(1.0, forms.scale))) {
    throw InternalMismatch("gamma_bar forms disagree by " + std::to_string(gap) + " at k = " + std::to_string(k) +
                           ", M = " + std::to_string(order));
  }
  return forms.collapsed_form;
}

double log_weighted_lambda(const MixingMeasure& measure, std::uint64_t k) {
  double total = 0.0;
  for (const auto& atom : measure.atoms()) total += atom.mass * std::log(atom.x) * poisson_weight(atom.x, k);
  return total;
}

double theorem_bound(const RegimeBounds& bounds, std::uint64_t K, std::uint64_t M) {
  const double ratio = (bounds.c_hi - bounds.c_lo) / (bounds.c_hi + bounds.c_lo);
  const double series_term =
      std::exp(bounds.c_hi) * bounds.c_bar / bounds.c_lo * std::pow(ratio, static_cast<double>(M + 1));
  const double kd = static_cast<double>(K + 1);
  const double tail_term = std::exp(kd * std::log(bounds.c_hi) - std::lgamma(kd + 1.0)) * bounds.c_log;
  return std::max(series_term, tail_term);
}

EstimatorParams select_params(const RegimeBounds& bounds, double epsilon) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  for (std::uint64_t M = 1; M <= kSearchCap; ++M) {
    for (std::uint64_t K = 0; K <= kSearchCap; ++K) {
      if (theorem_bound(bounds, K, M) <= epsilon / 2.0) return {K, M, bounds};
    }
  }
  throw std::domain_error("no (K, M) up to " + std::to_string(kSearchCap) + " reaches epsilon = " +
                          std::to_string(epsilon));
}

bool density_ratio_check(const MixingMeasure& P, const MixingMeasure& Q) {
  const auto& pa = P.atoms();
  const auto& qa = Q.atoms();
  if (pa.size() != qa.size()) throw SupportMismatch("measures have different numbers of atoms");
  bool ok = true;
  for (const auto& p : pa) {
    const MeasureAtom* match = nullptr;
    for (const auto& q : qa) {
      if (q.x == p.x && q.y == p.y) match = &q;
    }
    if (match == nullptr) throw SupportMismatch("atom (" + std::to_string(p.x) + ", " + std::to_string(p.y) +
                                                ") missing from the second measure");
    if (std::abs(match->mass - p.mass * p.y / p.x) > 1e-12) ok = false;
  }
  return ok;
}

}  // namespace raregt
