#pragma once

#include <cstdint>

#include "raregt/estimators.hpp"
#include "raregt/measures.hpp"

namespace raregt {

/// Closed-form limits over finitely-atomic mixing measures. Every integral
/// against P is a finite sum over its atoms.

/// lambda_k = int x^k e^{-x} / k! dP, the limiting total probability of the
/// symbols seen k times.
double lambda_k(const MixingMeasure& measure, std::uint64_t k);

/// int log(x) dP: the almost-sure limit of (1/n) sum_i log(n p_n(x_i)).
/// Evaluated against Q it is the limit for y ~ q_n scored under p_n.
double aep_limit(const MixingMeasure& measure);

/// int log(x / y) dmu. Against P this is D(p_n || q_n); against Q it is the
/// limiting classifier margin when the test string comes from q_n.
double mean_log_ratio(const MixingMeasure& measure);

/// Entropy of p_n at length n, -int log(x / n) dP. Diagnostic only.
double entropy_at(const MixingMeasure& measure, std::uint64_t n);

/// sum_{k=1}^{K} lambda_{k-1} log(k lambda_k / lambda_{k-1}), the limit of the
/// truncated Good-Turing sequence estimate.
double gt_sequence_limit(const MixingMeasure& measure, std::uint64_t K);

/// Limit of gamma_k^M evaluated two independent ways.
struct GammaBarForms {
  double coefficient_form;  // series coefficients applied to lambda_{k+l}
  double collapsed_form;    // binomial sum folded into (1 - x / c_bar)^m per atom
  double scale;             // sum of |terms| of the coefficient form
};

GammaBarForms gamma_bar_forms(const MixingMeasure& measure, std::uint64_t k, std::uint64_t order, double c_bar);

/// Limit of gamma_k^M. Both forms are computed; if either is not finite or
/// they differ by more than 1e-10 * max(1, scale) InternalMismatch is thrown. Returns the collapsed
/// form, which has no cancellation.
double gamma_bar(const MixingMeasure& measure, std::uint64_t k, std::uint64_t order, double c_bar);

/// int log(x) x^k e^{-x} / k! dP, the target of gamma_k^M.
double log_weighted_lambda(const MixingMeasure& measure, std::uint64_t k);

/// max(exp(c_hi) c_bar / c_lo * r^{M+1}, c_hi^{K+1} c_log / (K+1)!) with
/// r = (c_hi - c_lo) / (c_hi + c_lo). Estimators with this value <= eps / 2
/// reach accuracy eps.
double theorem_bound(const RegimeBounds& bounds, std::uint64_t K, std::uint64_t M);

/// Smallest M, then smallest K, with theorem_bound <= epsilon / 2. Both are
/// searched up to 200; throws std::domain_error if nothing qualifies.
EstimatorParams select_params(const RegimeBounds& bounds, double epsilon);

/// True iff q.mass == p.mass * y / x (within 1e-12) at every atom. Throws
/// SupportMismatch when the two measures do not share their atom locations.
bool density_ratio_check(const MixingMeasure& P, const MixingMeasure& Q);

}  // namespace raregt
