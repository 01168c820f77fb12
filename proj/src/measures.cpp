#include "raregt/measures.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "raregt/error.hpp"

namespace raregt {
namespace {

constexpr long double kNormTolerance = 1e-12L;

}  // namespace

std::string to_string(Source s) { return s == Source::p ? "p" : "q"; }

RegimeBounds RegimeBounds::from_range(double lo, double hi) {
  if (!(lo > 0.0) || !(lo <= hi) || !std::isfinite(hi)) {
    throw std::invalid_argument("regime bounds need 0 < c_lo <= c_hi < inf");
  }
  RegimeBounds b;
  b.c_lo = lo;
  b.c_hi = hi;
  b.c_bar = (lo + hi) / 2.0;
  b.c_log = std::max(std::abs(std::log(lo)), std::abs(std::log(hi)));
  return b;
}

ScaledProfile canonicalize(const ScaledProfile& profile) {
  ScaledProfile out;
  out.beta = profile.beta;
  out.granularity = profile.granularity;
  for (const auto& atom : profile.atoms) {
    auto same = std::find_if(out.atoms.begin(), out.atoms.end(),
                             [&](const ProfileAtom& o) { return o.a == atom.a && o.b == atom.b; });
    if (same != out.atoms.end()) {
      same->f += atom.f;
    } else {
      out.atoms.push_back(atom);
    }
  }
  return out;
}

RegimeBounds validate_profile(const ScaledProfile& raw) {
  if (raw.atoms.empty()) throw EmptyProfile("profile has no atoms");
  if (raw.beta <= Rational(0)) throw std::invalid_argument("beta must be positive");
  if (raw.granularity < 1) throw std::invalid_argument("granularity must be a positive integer");

  for (const auto& atom : raw.atoms) {
    if (atom.a <= Rational(0) || atom.b <= Rational(0)) {
      throw std::invalid_argument("atom probabilities must be positive");
    }
    if (atom.f <= Rational(0) || atom.f > Rational(1)) {
      throw std::invalid_argument("alphabet fraction " + atom.f.str() + " outside (0, 1]");
    }
  }

  const ScaledProfile profile = canonicalize(raw);
  long double sum_f = 0, sum_a = 0, sum_b = 0;
  double lo = INFINITY, hi = 0.0;
  for (const auto& atom : profile.atoms) {
    const long double f = atom.f.to_long_double();
    sum_f += f;
    sum_a += f * atom.a.to_long_double();
    sum_b += f * atom.b.to_long_double();
    lo = std::min({lo, atom.a.to_double(), atom.b.to_double()});
    hi = std::max({hi, atom.a.to_double(), atom.b.to_double()});

    if (!(profile.beta * Rational(profile.granularity) * atom.f).is_integer()) {
      throw GranularityError("beta * g * f = " + (profile.beta * Rational(profile.granularity) * atom.f).str() +
                             " is not an integer for granularity " + std::to_string(profile.granularity));
    }
  }
  const long double beta = profile.beta.to_long_double();
  if (std::abs(sum_f - 1.0L) > kNormTolerance) {
    throw NormalizationError("alphabet fractions sum to " + std::to_string(static_cast<double>(sum_f)));
  }
  if (std::abs(beta * sum_a - 1.0L) > kNormTolerance) {
    throw NormalizationError("p_n does not sum to one: beta * sum f*a = " +
                             std::to_string(static_cast<double>(beta * sum_a)));
  }
  if (std::abs(beta * sum_b - 1.0L) > kNormTolerance) {
    throw NormalizationError("q_n does not sum to one: beta * sum f*b = " +
                             std::to_string(static_cast<double>(beta * sum_b)));
  }
  return RegimeBounds::from_range(lo, hi);
}

MixingMeasure::MixingMeasure(std::vector<MeasureAtom> atoms) : atoms_(std::move(atoms)) {
  if (atoms_.empty()) throw EmptyProfile("mixing measure has no atoms");
  long double total = 0;
  for (const auto& atom : atoms_) {
    if (!(atom.x > 0.0) || !(atom.y > 0.0)) throw std::invalid_argument("atom coordinates must be positive");
    if (atom.mass < 0.0) throw std::invalid_argument("negative atom mass");
    total += atom.mass;
  }
  if (std::abs(total - 1.0L) > kNormTolerance) {
    throw NormalizationError("mixing measure masses sum to " + std::to_string(static_cast<double>(total)));
  }
}

RegimeBounds MixingMeasure::bounds() const {
  double lo = INFINITY, hi = 0.0;
  for (const auto& atom : atoms_) {
    lo = std::min({lo, atom.x, atom.y});
    hi = std::max({hi, atom.x, atom.y});
  }
  return RegimeBounds::from_range(lo, hi);
}

MixingMeasure mixing_measure(const ScaledProfile& raw, Source which) {
  validate_profile(raw);
  const ScaledProfile profile = canonicalize(raw);
  std::vector<MeasureAtom> atoms;
  atoms.reserve(profile.atoms.size());
  for (const auto& atom : profile.atoms) {
    const Rational& weight = which == Source::p ? atom.a : atom.b;
    atoms.push_back({atom.a.to_double(), atom.b.to_double(), (profile.beta * atom.f * weight).to_double()});
  }
  return MixingMeasure(std::move(atoms));
}

ConcreteDistributionPair::ConcreteDistributionPair(std::uint64_t n, std::vector<SymbolGroup> groups)
    : n_(n), groups_(std::move(groups)) {
  if (n_ == 0) throw std::invalid_argument("string length must be positive");
  for (auto& g : groups_) {
    g.first = alphabet_size_;
    alphabet_size_ += g.count;
  }
}

std::size_t ConcreteDistributionPair::group_of(std::uint64_t symbol) const {
  if (symbol >= alphabet_size_) throw std::out_of_range("symbol outside alphabet");
  auto it = std::upper_bound(groups_.begin(), groups_.end(), symbol,
                             [](std::uint64_t s, const SymbolGroup& g) { return s < g.first; });
  return static_cast<std::size_t>(std::distance(groups_.begin(), it) - 1);
}

double ConcreteDistributionPair::scaled_probability(Source which, std::uint64_t symbol) const {
  const auto& g = groups_[group_of(symbol)];
  return (which == Source::p ? g.a : g.b).to_double();
}

double ConcreteDistributionPair::probability(Source which, std::uint64_t symbol) const {
  return scaled_probability(which, symbol) / static_cast<double>(n_);
}

Rational ConcreteDistributionPair::total_probability(Source which) const {
  Rational total(0);
  for (const auto& g : groups_) {
    total += Rational(static_cast<std::int64_t>(g.count)) * (which == Source::p ? g.a : g.b);
  }
  return total / Rational(static_cast<std::int64_t>(n_));
}

ConcreteDistributionPair instantiate(const ScaledProfile& raw, std::uint64_t n) {
  validate_profile(raw);
  const ScaledProfile profile = canonicalize(raw);
  const auto g = static_cast<std::uint64_t>(profile.granularity);
  if (n == 0 || n % g != 0) {
    throw GranularityError("n = " + std::to_string(n) + " is not a positive multiple of granularity " +
                           std::to_string(g));
  }
  std::vector<SymbolGroup> groups;
  groups.reserve(profile.atoms.size());
  for (const auto& atom : profile.atoms) {
    const Rational size = profile.beta * Rational(static_cast<std::int64_t>(n)) * atom.f;
    groups.push_back({atom.a, atom.b, 0, static_cast<std::uint64_t>(size.num())});
  }
  return ConcreteDistributionPair(n, std::move(groups));
}

ScaledProfile counterexample_profile() {
  return {{{Rational(1, 4), Rational(1, 4), Rational(2, 3)}, {Rational(1, 2), Rational(1, 2), Rational(1, 3)}},
          Rational(3),
          1};
}

ScaledProfile uniform_profile() { return {{{Rational(1), Rational(1), Rational(1)}}, Rational(1), 1}; }

ScaledProfile skew_profile() {
  return {{{Rational(1, 4), Rational(3, 4), Rational(1, 2)}, {Rational(3, 4), Rational(1, 4), Rational(1, 2)}},
          Rational(2),
          2};
}

}  // namespace raregt
