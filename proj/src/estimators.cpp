#include "raregt/estimators.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "raregt/error.hpp"
#include "raregt/series.hpp"

namespace raregt {
namespace {

double dn(std::uint64_t v) { return static_cast<double>(v); }

void require_nonempty(const OccupancyCounts& occ) {
  if (occ.n() == 0) throw std::invalid_argument("occupancy of an empty string");
}

}  // namespace

double gt_symbol_prob(const OccupancyCounts& occ, std::uint64_t k) {
  require_nonempty(occ);
  if (k == 0) throw Unsupported("per-symbol probability of unseen symbols is not estimated");
  if (k >= occ.n()) throw Unsupported("Good-Turing is undefined for k = n");
  if (occ.phi(k) == 0) throw EmptyClass("no symbol appears " + std::to_string(k) + " times");
  return dn(k + 1) * dn(occ.phi(k + 1)) / (dn(occ.n()) * dn(occ.phi(k)));
}

double gt_total_prob(const OccupancyCounts& occ, std::uint64_t k) {
  require_nonempty(occ);
  return dn(k + 1) * dn(occ.phi(k + 1)) / dn(occ.n());
}

GtSequenceResult gt_sequence_estimate(const OccupancyCounts& occ, std::uint64_t K) {
  require_nonempty(occ);
  if (K < 1) throw std::invalid_argument("truncation K must be at least 1");
  GtSequenceResult result;
  for (std::uint64_t k = 1; k <= K; ++k) {
    const auto phi_k = occ.phi(k);
    if (phi_k == 0) continue;
    const auto phi_next = occ.phi(k + 1);
    if (phi_next == 0) {
      ++result.skipped_terms;
      continue;
    }
    result.value += dn(k * phi_k) / dn(occ.n()) * std::log(dn((k + 1) * phi_next) / dn(phi_k));
  }
  return result;
}

double gamma_k_M(const OccupancyCounts& occ, std::uint64_t k, const EstimatorParams& params) {
  require_nonempty(occ);
  if (k + params.M > occ.n()) {
    throw OrderOverflow("k + M = " + std::to_string(k + params.M) + " exceeds n = " + std::to_string(occ.n()));
  }
  const SeriesCoefficients coeffs(k, params.M, params.bounds.c_bar);
  return coeffs.apply([&](std::uint64_t r) { return gt_total_prob(occ, r); });
}

double better_gt_estimate(const OccupancyCounts& occ, const EstimatorParams& params) {
  double total = 0.0;
  for (std::uint64_t k = 0; k <= params.K; ++k) total += gamma_k_M(occ, k, params);
  return total;
}

double gamma_tilde_k_M(const JointOccupancy& joint, std::uint64_t k, const EstimatorParams& params) {
  if (joint.n() == 0) throw std::invalid_argument("joint occupancy of empty strings");
  const SeriesCoefficients coeffs(k, params.M, params.bounds.c_bar);
  return coeffs.apply([&](std::uint64_t r) { return joint.row_mass(r); });
}

double cross_sequence_estimate(const JointOccupancy& joint, const EstimatorParams& params) {
  double total = 0.0;
  for (std::uint64_t k = 0; k <= params.K; ++k) total += gamma_tilde_k_M(joint, k, params);
  return total;
}

Classification classify(const SymbolString& x, const SymbolString& y, const SymbolString& z,
                        const EstimatorParams& params) {
  if (x.size() != y.size() || x.size() != z.size()) {
    throw LengthMismatch("classifier strings must share one length");
  }
  if (x.alphabet_size != y.alphabet_size || x.alphabet_size != z.alphabet_size) {
    throw AlphabetMismatch("classifier strings must share one alphabet");
  }
  Classification c;
  c.estimate_p = cross_sequence_estimate(joint_occupancy(x, z), params);
  c.estimate_q = cross_sequence_estimate(joint_occupancy(y, z), params);
  c.margin = c.estimate_p - c.estimate_q;
  c.decision = c.margin >= 0.0 ? Hypothesis::p_source : Hypothesis::q_source;
  return c;
}

}  // namespace raregt
