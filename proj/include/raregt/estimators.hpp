#pragma once

#include <cstdint>

#include "raregt/measures.hpp"
#include "raregt/sampling.hpp"

namespace raregt {

/// Truncation order K, series order M and the regime bounds whose midpoint
/// c_bar centres the log expansion.
struct EstimatorParams {
  std::uint64_t K = 0;
  std::uint64_t M = 1;
  RegimeBounds bounds;
};

// ---------------------------------------------------------------------------
// Classical Good-Turing

/// (k+1) phi_{k+1} / (n phi_k), the probability assigned to each symbol seen
/// k times. Throws Unsupported for k = 0 and k >= n, EmptyClass if phi_k = 0.
double gt_symbol_prob(const OccupancyCounts& occ, std::uint64_t k);

/// (k+1) phi_{k+1} / n, the estimate of the total probability of the symbols
/// seen k times. k = 0 gives the missing-mass estimate phi_1 / n.
double gt_total_prob(const OccupancyCounts& occ, std::uint64_t k);

struct GtSequenceResult {
  double value = 0.0;
  /// Classes with phi_k > 0 but phi_{k+1} = 0, whose log term would be -inf.
  /// They are left out of `value`.
  std::uint64_t skipped_terms = 0;
  bool degenerate() const { return skipped_terms > 0; }
};

/// sum_{k=1}^{K} (k phi_k / n) log((k+1) phi_{k+1} / phi_k), the normalized
/// log-probability the Good-Turing per-symbol estimates assign to the string.
/// Terms with phi_k = 0 contribute nothing.
GtSequenceResult gt_sequence_estimate(const OccupancyCounts& occ, std::uint64_t K);

// ---------------------------------------------------------------------------
// Series-corrected estimator

/// Per-class contribution gamma_k^M. Reads phi_{k+1} ... phi_{k+M+1}.
/// Throws OrderOverflow if k + M > n.
double gamma_k_M(const OccupancyCounts& occ, std::uint64_t k, const EstimatorParams& params);

/// sum_{k=0}^{K} gamma_k^M: estimates (1/n) sum_i log(n p_n(x_i)) from x alone.
double better_gt_estimate(const OccupancyCounts& occ, const EstimatorParams& params);

/// Two-string analogue of gamma_k_M built from joint occupancy of (x, y).
double gamma_tilde_k_M(const JointOccupancy& joint, std::uint64_t k, const EstimatorParams& params);

/// sum_{k=0}^{K} gamma_tilde_k^M: estimates (1/n) sum_i log(n p_n(y_i)) where
/// x ~ p_n and y ~ q_n.
double cross_sequence_estimate(const JointOccupancy& joint, const EstimatorParams& params);

// ---------------------------------------------------------------------------
// Classifier

enum class Hypothesis { p_source, q_source };

struct Classification {
  Hypothesis decision = Hypothesis::p_source;
  double margin = 0.0;  // estimate_p - estimate_q
  double estimate_p = 0.0;
  double estimate_q = 0.0;
};

/// Decides whether z came from the source of training string x (p) or of y (q)
/// by comparing the estimated normalized log-likelihoods of z under each.
/// A margin of exactly zero resolves to p_source.
Classification classify(const SymbolString& x, const SymbolString& y, const SymbolString& z,
                        const EstimatorParams& params);

}  // namespace raregt
