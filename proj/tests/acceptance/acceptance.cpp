// Acceptance suite: one PASS/FAIL line per criterion, each with its own
// tolerance and wall-clock budget. Trial t of every Monte Carlo criterion uses
// seed kBaseSeed + t; strings within a trial are split with stream_seed.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "raregt/estimators.hpp"
#include "raregt/experiment.hpp"
#include "raregt/oracle.hpp"
#include "raregt/sampling.hpp"
#include "raregt/series.hpp"

using namespace raregt;

namespace {

constexpr std::uint64_t kBaseSeed = 1;

struct Outcome {
  bool pass;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double budget_s;
  std::function<Outcome()> run;
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), f, a);
  return buf;
}

std::string fmt(const char* f, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), f, a, b);
  return buf;
}

const double kHalfLog8 = -0.5 * std::log(8.0);

Outcome oracle_exactness() {
  const double aep = aep_limit(mixing_measure(counterexample_profile(), Source::p));
  bool ok = std::abs(aep - kHalfLog8) <= 1e-12;
  double worst = 0.0;
  for (const auto& profile : {counterexample_profile(), uniform_profile(), skew_profile()}) {
    for (auto which : {Source::p, Source::q}) {
      const auto m = mixing_measure(profile, which);
      double total = 0.0;
      for (std::uint64_t k = 0; k <= 60; ++k) total += lambda_k(m, k);
      worst = std::max(worst, std::abs(total - 1.0));
    }
  }
  ok = ok && worst <= 1e-12;
  return {ok, fmt("aep=%.15f, max |sum lambda - 1| = %.2e", aep, worst)};
}

Outcome deterministic_core() {
  const auto bounds = RegimeBounds::from_range(0.25, 0.5);
  const auto P = mixing_measure(counterexample_profile(), Source::p);
  const double target = aep_limit(P);
  bool ok = true;
  std::string detail;
  for (double eps : {0.2, 0.1, 0.05}) {
    const auto p = select_params(bounds, eps);
    double sum = 0.0;
    for (std::uint64_t k = 0; k <= p.K; ++k) sum += gamma_bar(P, k, p.M, bounds.c_bar);
    const double err = std::abs(sum - target);
    ok = ok && err <= eps;
    detail += "eps=" + fmt("%g", eps) + " (K,M)=(" + std::to_string(p.K) + "," + std::to_string(p.M) +
              ") err=" + fmt("%.3e", err) + "; ";
  }
  return {ok, detail};
}

Outcome gt_inconsistency() {
  const auto P = mixing_measure(counterexample_profile(), Source::p);
  const double gap = gt_sequence_limit(P, 40) - aep_limit(P);
  return {gap > 0.01, fmt("gt_sequence_limit(K=40) - aep_limit = %.15f (> 0.01)", gap)};
}

double mean_abs_better(std::uint64_t n, std::uint64_t seeds, std::vector<OccupancyCounts>* keep = nullptr) {
  const auto d = instantiate(counterexample_profile(), n);
  const EstimatorParams p{2, 3, validate_profile(counterexample_profile())};
  double total = 0.0;
  for (std::uint64_t t = 0; t < seeds; ++t) {
    const auto occ = occupancy(draw_string(d, Source::p, n, kBaseSeed + t));
    total += std::abs(better_gt_estimate(occ, p) - kHalfLog8);
    if (keep) keep->push_back(occ);
  }
  return total / static_cast<double>(seeds);
}

Outcome empirical_consistency() {
  const double err = mean_abs_better(300'000, 10);
  return {err <= 0.15, fmt("mean |better_gt - target| = %.5f (<= 0.15)", err)};
}

Outcome empirical_contrast() {
  std::vector<OccupancyCounts> occs;
  const double better = mean_abs_better(1'000'000, 5, &occs);
  double gt = 0.0;
  for (const auto& occ : occs) gt += std::abs(gt_sequence_estimate(occ, 30).value - kHalfLog8);
  gt /= static_cast<double>(occs.size());
  const double ratio = gt / better;
  return {ratio >= 5.0, fmt("gt mean abs err %.5f, better mean abs err %.5f", gt, better) +
                            fmt(", ratio %.3f (>= 5)", ratio)};
}

Outcome lambda_consistency() {
  const std::uint64_t n = 1'000'000;
  const auto d = instantiate(counterexample_profile(), n);
  const auto P = mixing_measure(counterexample_profile(), Source::p);
  double worst_oracle = 0.0, worst_truth = 0.0;
  for (std::uint64_t t = 0; t < 5; ++t) {
    const auto s = draw_string(d, Source::p, n, kBaseSeed + t);
    const auto occ = occupancy(s);
    for (std::uint64_t k = 0; k <= 5; ++k) {
      const double gt = gt_total_prob(occ, k);
      worst_oracle = std::max(worst_oracle, std::abs(gt - lambda_k(P, k)));
      worst_truth = std::max(worst_truth, std::abs(gt - true_group_probability(d, s, k)));
    }
  }
  return {worst_oracle <= 0.005 && worst_truth <= 0.005,
          fmt("max |GT - lambda_k| = %.5f, max |GT - p(A_k)| = %.5f (<= 0.005)", worst_oracle, worst_truth)};
}

Outcome aep_concentration() {
  const auto P = mixing_measure(counterexample_profile(), Source::p);
  const double target = aep_limit(P);
  auto rms_at = [&](std::uint64_t n) {
    const auto d = instantiate(counterexample_profile(), n);
    double sq = 0.0;
    for (std::uint64_t t = 0; t < 30; ++t) {
      const double e = true_normalized_loglik(d, Source::p, draw_string(d, Source::p, n, kBaseSeed + t)) - target;
      sq += e * e;
    }
    return std::sqrt(sq / 30.0);
  };
  const double small = rms_at(10'000), large = rms_at(1'000'000);
  return {small / large >= 2.0, fmt("RMS n=1e4 %.3e, n=1e6 %.3e", small, large) + fmt(", factor %.2f (>= 2)", small / large)};
}

Outcome two_sequence() {
  const std::uint64_t n = 1'000'000;
  const auto d = instantiate(skew_profile(), n);
  const auto p = select_params(RegimeBounds::from_range(0.25, 0.75), 0.1);
  const double target = 0.75 * std::log(0.25) + 0.25 * std::log(0.75);
  double worst = 0.0;
  for (std::uint64_t t = 0; t < 5; ++t) {
    const auto seed = kBaseSeed + t;
    const auto x = draw_string(d, Source::p, n, stream_seed(seed, 0));
    const auto y = draw_string(d, Source::q, n, stream_seed(seed, 1));
    worst = std::max(worst, std::abs(cross_sequence_estimate(joint_occupancy(x, y), p) - target));
  }
  return {worst <= 0.15, "(K,M)=(" + std::to_string(p.K) + "," + std::to_string(p.M) + ") " +
                             fmt("max |cross - aep(Q)| = %.5f (<= 0.15)", worst)};
}

Outcome classifier() {
  const std::uint64_t n = 100'000;
  const auto d = instantiate(skew_profile(), n);
  const auto p = select_params(validate_profile(skew_profile()), 0.2);
  int correct = 0;
  for (std::uint64_t t = 0; t < 100; ++t) {
    const auto seed = kBaseSeed + t;
    const auto x = draw_string(d, Source::p, n, stream_seed(seed, 0));
    const auto y = draw_string(d, Source::q, n, stream_seed(seed, 1));
    const auto z = draw_string(d, Source::q, n, stream_seed(seed, 2));
    correct += classify(x, y, z, p).decision == Hypothesis::q_source ? 1 : 0;
  }
  return {correct >= 95, "(K,M)=(" + std::to_string(p.K) + "," + std::to_string(p.M) + ") correct " +
                             std::to_string(correct) + "/100 (>= 95)"};
}

Outcome algebraic_properties() {
  double worst_binom = 0.0, worst_series_slack = INFINITY, worst_dual = 0.0;
  for (const auto& profile : {counterexample_profile(), uniform_profile(), skew_profile()}) {
    const auto b = validate_profile(profile);
    const double r = (b.c_hi - b.c_lo) / (b.c_hi + b.c_lo);
    for (std::uint64_t M = 1; M <= 10; ++M) {
      double sup = 0.0;
      for (int i = 0; i < 10'000; ++i) {
        const double x = b.c_lo + (b.c_hi - b.c_lo) * i / 9'999.0;
        double sum = 0.0;
        for (std::uint64_t l = 0; l <= M; ++l) {
          sum += binomial(M, l) * std::pow(-b.c_bar, static_cast<double>(M - l)) * std::pow(x, static_cast<double>(l));
        }
        worst_binom = std::max(worst_binom, std::abs(sum - std::pow(x - b.c_bar, static_cast<double>(M))));
        double series = 0.0, power = 1.0;
        for (std::uint64_t m = 1; m <= M; ++m) {
          power *= 1.0 - x / b.c_bar;
          series += power / static_cast<double>(m);
        }
        sup = std::max(sup, std::abs(std::log(x / b.c_bar) + series));
      }
      worst_series_slack = std::min(worst_series_slack, b.c_bar / b.c_lo * std::pow(r, static_cast<double>(M + 1)) - sup);
    }
    for (auto which : {Source::p, Source::q}) {
      const auto m = mixing_measure(profile, which);
      for (std::uint64_t k = 0; k <= 10; ++k) {
        for (std::uint64_t M = 1; M <= 10; ++M) {
          const auto f = gamma_bar_forms(m, k, M, b.c_bar);
          worst_dual = std::max(worst_dual, std::abs(f.coefficient_form - f.collapsed_form));
        }
      }
    }
  }
  const bool ok = worst_binom <= 1e-12 && worst_series_slack >= 0.0 && worst_dual <= 1e-10;
  return {ok, fmt("binomial max err %.2e, min series-bound slack %.2e", worst_binom, worst_series_slack) +
                  fmt(", gamma_bar dual max gap %.2e", worst_dual)};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "oracle exactness", 1, oracle_exactness},
      {2, "deterministic core of the consistency theorem", 1, deterministic_core},
      {3, "Good-Turing limit is biased", 1, gt_inconsistency},
      {4, "empirical consistency of the corrected estimator", 30, empirical_consistency},
      {5, "Good-Turing vs corrected estimator error ratio", 60, empirical_contrast},
      {6, "Good-Turing class masses converge", 60, lambda_consistency},
      {7, "AEP concentration", 120, aep_concentration},
      {8, "two-sequence estimator", 60, two_sequence},
      {9, "classifier accuracy", 120, classifier},
      {10, "algebraic property suites", 10, algebraic_properties},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out{false, ""};
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs <= c.budget_s;
    const bool pass = out.pass && in_time;
    failures += pass ? 0 : 1;
    std::printf("[%s] %2d %s: %s [%.2fs / %.0fs budget%s]\n", pass ? "PASS" : "FAIL", c.id, c.name.c_str(),
                out.detail.c_str(), secs, c.budget_s, in_time ? "" : ", OVER BUDGET");
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
