#include "raregt/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <ostream>
#include <thread>

#include "raregt/error.hpp"
#include "raregt/estimators.hpp"
#include "raregt/oracle.hpp"
#include "raregt/sampling.hpp"
#include "raregt/series.hpp"

namespace raregt {
namespace {

struct Context {
  const ExperimentSpec& spec;
  EstimatorParams params;
  MixingMeasure P;
  MixingMeasure Q;
};

ReportRow make_row(const Context& ctx, std::uint64_t n, std::uint64_t seed, std::string estimator, double value,
                   double oracle, std::optional<std::uint64_t> K, std::optional<std::uint64_t> M) {
  ReportRow row;
  row.experiment = to_string(ctx.spec.experiment);
  row.n = n;
  row.seed = seed;
  row.estimator = std::move(estimator);
  row.value = value;
  row.oracle_value = oracle;
  row.abs_error = std::abs(value - oracle);
  row.K = K;
  row.M = M;
  row.epsilon = ctx.spec.epsilon;
  return row;
}

std::vector<ReportRow> run_trial(const Context& ctx, const ConcreteDistributionPair& dist, std::uint64_t seed) {
  const auto n = dist.n();
  const auto& params = ctx.params;
  std::vector<ReportRow> rows;
  switch (ctx.spec.experiment) {
    case ExperimentKind::aep: {
      const auto x = draw_string(dist, Source::p, n, seed);
      rows.push_back(make_row(ctx, n, seed, "true_loglik", true_normalized_loglik(dist, Source::p, x),
                              aep_limit(ctx.P), std::nullopt, std::nullopt));
      break;
    }
    case ExperimentKind::gt_vs_better: {
      const auto occ = occupancy(draw_string(dist, Source::p, n, seed));
      const double target = aep_limit(ctx.P);
      rows.push_back(make_row(ctx, n, seed, "gt_sequence", gt_sequence_estimate(occ, ctx.spec.gt_truncation).value,
                              target, ctx.spec.gt_truncation, std::nullopt));
      rows.push_back(make_row(ctx, n, seed, "better_gt", better_gt_estimate(occ, params), target, params.K, params.M));
      break;
    }
    case ExperimentKind::cross: {
      const auto x = draw_string(dist, Source::p, n, stream_seed(seed, 0));
      const auto y = draw_string(dist, Source::q, n, stream_seed(seed, 1));
      const double target = aep_limit(ctx.Q);
      rows.push_back(make_row(ctx, n, seed, "cross_sequence", cross_sequence_estimate(joint_occupancy(x, y), params),
                              target, params.K, params.M));
      rows.push_back(make_row(ctx, n, seed, "true_cross_loglik", true_normalized_loglik(dist, Source::p, y), target,
                              std::nullopt, std::nullopt));
      break;
    }
    case ExperimentKind::classify: {
      const auto x = draw_string(dist, Source::p, n, stream_seed(seed, 0));
      const auto y = draw_string(dist, Source::q, n, stream_seed(seed, 1));
      const auto z = draw_string(dist, ctx.spec.classify_source, n, stream_seed(seed, 2));
      const auto result = classify(x, y, z, params);
      const bool from_p = ctx.spec.classify_source == Source::p;
      const bool correct = (result.decision == Hypothesis::p_source) == from_p;
      rows.push_back(make_row(ctx, n, seed, "classify_margin", result.margin,
                              mean_log_ratio(from_p ? ctx.P : ctx.Q), params.K, params.M));
      rows.push_back(make_row(ctx, n, seed, "classify_correct", correct ? 1.0 : 0.0, 1.0, params.K, params.M));
      break;
    }
    case ExperimentKind::bounds:
      break;
  }
  return rows;
}

std::vector<ReportRow> bounds_rows(const Context& ctx) {
  const auto& params = ctx.params;
  const double target = aep_limit(ctx.P);
  double gamma_sum = 0.0;
  for (std::uint64_t k = 0; k <= params.K; ++k) gamma_sum += gamma_bar(ctx.P, k, params.M, params.bounds.c_bar);
  double lambda_sum = 0.0;
  for (std::uint64_t k = 0; k <= 60; ++k) lambda_sum += lambda_k(ctx.P, k);
  const auto trunc = ctx.spec.gt_truncation;
  return {
      make_row(ctx, 0, 0, "theorem_bound", theorem_bound(params.bounds, params.K, params.M), ctx.spec.epsilon / 2.0,
               params.K, params.M),
      make_row(ctx, 0, 0, "gamma_bar_sum", gamma_sum, target, params.K, params.M),
      make_row(ctx, 0, 0, "gt_sequence_limit", gt_sequence_limit(ctx.P, trunc), target, trunc, std::nullopt),
      make_row(ctx, 0, 0, "lambda_sum_60", lambda_sum, 1.0, std::nullopt, std::nullopt),
  };
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<std::string> summarize(const ExperimentSpec& spec, const std::vector<ReportRow>& rows) {
  struct Acc {
    std::uint64_t trials = 0;
    double sum = 0.0;
    double max = 0.0;
  };
  // Keyed by n then first-appearance order of the estimator.
  std::map<std::uint64_t, std::vector<std::pair<std::string, Acc>>> groups;
  for (const auto& row : rows) {
    auto& list = groups[row.n];
    auto it = std::find_if(list.begin(), list.end(), [&](const auto& e) { return e.first == row.estimator; });
    if (it == list.end()) {
      list.emplace_back(row.estimator, Acc{});
      it = std::prev(list.end());
    }
    ++it->second.trials;
    it->second.sum += row.abs_error;
    it->second.max = std::max(it->second.max, row.abs_error);
  }
  std::vector<std::string> out;
  for (const auto& [n, list] : groups) {
    for (const auto& [estimator, acc] : list) {
      std::string line = "# summary experiment=" + to_string(spec.experiment) + " n=" + std::to_string(n) +
                         " estimator=" + estimator + " trials=" + std::to_string(acc.trials) +
                         " mean_abs_error=" + format_double(acc.sum / static_cast<double>(acc.trials)) +
                         " max_abs_error=" + format_double(acc.max);
      if (estimator == "classify_correct") {
        line += " accuracy=" + format_double(1.0 - acc.sum / static_cast<double>(acc.trials));
      }
      out.push_back(std::move(line));
    }
  }
  return out;
}

}  // namespace

std::string to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::aep: return "aep";
    case ExperimentKind::gt_vs_better: return "gt-vs-better";
    case ExperimentKind::cross: return "cross";
    case ExperimentKind::classify: return "classify";
    case ExperimentKind::bounds: return "bounds";
  }
  return "unknown";
}

ExperimentKind parse_experiment_kind(const std::string& name) {
  for (auto kind : {ExperimentKind::aep, ExperimentKind::gt_vs_better, ExperimentKind::cross,
                    ExperimentKind::classify, ExperimentKind::bounds}) {
    if (to_string(kind) == name) return kind;
  }
  throw ConfigError("unknown experiment '" + name + "'");
}

ExperimentSpec spec_from_json(const nlohmann::json& doc, const std::filesystem::path& base_dir) {
  if (!doc.is_object()) throw ConfigError("experiment spec must be a JSON object");
  ExperimentSpec spec;
  try {
    spec.profile_path = base_dir / doc.at("profile_path").get<std::string>();
    spec.experiment = parse_experiment_kind(doc.at("experiment").get<std::string>());
    if (doc.contains("n_values")) spec.n_values = doc["n_values"].get<std::vector<std::uint64_t>>();
    spec.seeds = doc.value("seeds", std::uint64_t{1});
    spec.epsilon = doc.value("epsilon", 0.1);
    if (doc.contains("output")) spec.output = base_dir / doc["output"].get<std::string>();
    spec.base_seed = doc.value("base_seed", std::uint64_t{1});
    if (doc.contains("K")) spec.K = doc["K"].get<std::uint64_t>();
    if (doc.contains("M")) spec.M = doc["M"].get<std::uint64_t>();
    spec.gt_truncation = doc.value("gt_truncation", std::uint64_t{30});
    if (doc.contains("classify_source")) {
      const auto src = doc["classify_source"].get<std::string>();
      if (src != "p" && src != "q") throw ConfigError("classify_source must be \"p\" or \"q\"");
      spec.classify_source = src == "p" ? Source::p : Source::q;
    }
    spec.record_timing = doc.value("record_timing", false);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad experiment spec: ") + e.what());
  }
  if (spec.seeds < 1) throw ConfigError("seeds must be at least 1");
  if (!(spec.epsilon > 0.0)) throw ConfigError("epsilon must be positive");
  if (spec.experiment != ExperimentKind::bounds && spec.n_values.empty()) {
    throw ConfigError("n_values must list at least one length");
  }
  if (spec.M && *spec.M < 1) throw ConfigError("M must be at least 1");
  if (spec.gt_truncation < 1) throw ConfigError("gt_truncation must be at least 1");
  return spec;
}

std::uint64_t stream_seed(std::uint64_t trial_seed, std::uint64_t stream) {
  return trial_seed + stream * 0x9E3779B97F4A7C15ULL;
}

unsigned threads_from_env() {
  const char* value = std::getenv("RARE_GT_THREADS");
  if (value == nullptr || *value == '\0') return 0;
  char* end = nullptr;
  const unsigned long parsed = std::strtoul(value, &end, 10);
  if (end == value || *end != '\0' || parsed == 0) throw ConfigError("RARE_GT_THREADS must be a positive integer");
  return static_cast<unsigned>(parsed);
}

Report run_experiment(const ExperimentSpec& spec, const ScaledProfile& profile, unsigned threads) {
  const RegimeBounds bounds = validate_profile(profile);
  EstimatorParams params = select_params(bounds, spec.epsilon);
  if (spec.K) params.K = *spec.K;
  if (spec.M) params.M = *spec.M;
  const Context ctx{spec, params, mixing_measure(profile, Source::p), mixing_measure(profile, Source::q)};

  Report report;
  if (spec.experiment == ExperimentKind::bounds) {
    report.rows = bounds_rows(ctx);
    report.summary = summarize(spec, report.rows);
    return report;
  }

  std::vector<ConcreteDistributionPair> dists;
  dists.reserve(spec.n_values.size());
  for (auto n : spec.n_values) dists.push_back(instantiate(profile, n));

  const std::size_t total = dists.size() * spec.seeds;
  std::vector<std::vector<ReportRow>> slots(total);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};

  auto worker = [&] {
    for (std::size_t i = next++; i < total && !failed; i = next++) {
      const auto& dist = dists[i / spec.seeds];
      const std::uint64_t seed = spec.base_seed + i % spec.seeds;
      try {
        const auto start = std::chrono::steady_clock::now();
        slots[i] = run_trial(ctx, dist, seed);
        const std::chrono::duration<double, std::milli> elapsed = std::chrono::steady_clock::now() - start;
        for (auto& row : slots[i]) row.runtime_ms = elapsed.count();
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
      }
    }
  };

  unsigned workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, total));
  std::vector<std::jthread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  pool.clear();
  if (failure) std::rethrow_exception(failure);

  for (auto& slot : slots) {
    for (auto& row : slot) report.rows.push_back(std::move(row));
  }
  report.summary = summarize(spec, report.rows);
  return report;
}

void write_csv(std::ostream& os, const Report& report, bool record_timing) {
  os << "experiment,n,seed,estimator,value,oracle_value,abs_error,K,M,epsilon,runtime_ms\n";
  for (const auto& r : report.rows) {
    os << r.experiment << ',' << r.n << ',' << r.seed << ',' << r.estimator << ',' << format_double(r.value) << ','
       << format_double(r.oracle_value) << ',' << format_double(r.abs_error) << ','
       << (r.K ? std::to_string(*r.K) : "") << ',' << (r.M ? std::to_string(*r.M) : "") << ','
       << format_double(r.epsilon) << ',' << (record_timing ? format_double(r.runtime_ms) : "") << '\n';
  }
  for (const auto& line : report.summary) os << line << '\n';
}

}  // namespace raregt
