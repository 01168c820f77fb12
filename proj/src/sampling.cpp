#include "raregt/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>

#include "raregt/error.hpp"

namespace raregt {
namespace {

double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(rng()) * bound) >> 64);
}

}  // namespace

SymbolString draw_string(const ConcreteDistributionPair& dist, Source which, std::uint64_t n,
                         std::uint64_t seed) {
  if (n != dist.n()) {
    throw LengthMismatch("requested length " + std::to_string(n) + " but distribution is for n = " +
                         std::to_string(dist.n()));
  }
  const auto& groups = dist.groups();
  std::vector<double> cdf;
  cdf.reserve(groups.size());
  Rational running(0);
  const Rational n_r(static_cast<std::int64_t>(n));
  for (const auto& g : groups) {
    running += Rational(static_cast<std::int64_t>(g.count)) * (which == Source::p ? g.a : g.b) / n_r;
    cdf.push_back(running.to_double());
  }
  cdf.back() = 1.0;

  std::mt19937_64 rng(seed);
  SymbolString out;
  out.alphabet_size = dist.alphabet_size();
  out.seed = seed;
  out.symbols.resize(n);
  for (auto& sym : out.symbols) {
    const double u = unit_uniform(rng);
    auto gi = static_cast<std::size_t>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
    gi = std::min(gi, groups.size() - 1);
    // Zero-mass groups cannot occur (a, b > 0), so the chosen group is nonempty.
    sym = static_cast<std::uint32_t>(groups[gi].first + uniform_below(rng, groups[gi].count));
  }
  return out;
}

std::vector<std::uint32_t> symbol_counts(const SymbolString& s) {
  std::vector<std::uint32_t> counts(s.alphabet_size, 0);
  for (auto sym : s.symbols) {
    if (sym >= s.alphabet_size) throw std::out_of_range("symbol index outside alphabet");
    ++counts[sym];
  }
  return counts;
}

OccupancyCounts::OccupancyCounts(const std::map<std::uint64_t, std::uint64_t>& phi) {
  for (const auto& [k, count] : phi) {
    if (k == 0) throw std::invalid_argument("phi_0 is not part of the occupancy profile");
    if (count == 0) continue;
    if (phi_.size() <= k) phi_.resize(k + 1, 0);
    phi_[k] = count;
  }
  finish();
}

void OccupancyCounts::finish() {
  while (!phi_.empty() && phi_.back() == 0) phi_.pop_back();
  n_ = 0;
  distinct_ = 0;
  for (std::uint64_t k = 1; k < phi_.size(); ++k) {
    n_ += k * phi_[k];
    distinct_ += phi_[k];
  }
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> OccupancyCounts::entries() const {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  for (std::uint64_t k = 1; k < phi_.size(); ++k) {
    if (phi_[k] > 0) out.emplace_back(k, phi_[k]);
  }
  return out;
}

OccupancyCounts occupancy(const SymbolString& s) {
  OccupancyCounts occ;
  for (auto c : symbol_counts(s)) {
    if (c == 0) continue;
    if (occ.phi_.size() <= c) occ.phi_.resize(c + 1, 0);
    ++occ.phi_[c];
  }
  occ.finish();
  return occ;
}

JointOccupancy::JointOccupancy(std::map<Key, std::uint64_t> phi2, std::uint64_t n)
    : phi2_(std::move(phi2)), n_(n) {
  std::erase_if(phi2_, [](const auto& kv) { return kv.second == 0; });
  std::uint64_t sum_x = 0, sum_y = 0;
  for (const auto& [key, count] : phi2_) {
    const auto [k, l] = key;
    sum_x += k * count;
    sum_y += l * count;
    if (l == 0) continue;
    if (row_mass_.size() <= k) row_mass_.resize(k + 1, 0.0);
    row_mass_[k] += static_cast<double>(l * count);
  }
  if (sum_x != n_ || sum_y != n_) {
    throw LengthMismatch("joint occupancy totals (" + std::to_string(sum_x) + ", " + std::to_string(sum_y) +
                         ") do not match n = " + std::to_string(n_));
  }
  for (auto& mass : row_mass_) mass /= static_cast<double>(n_);
}

std::uint64_t JointOccupancy::phi(std::uint64_t k, std::uint64_t l) const {
  auto it = phi2_.find({k, l});
  return it == phi2_.end() ? 0 : it->second;
}

OccupancyCounts JointOccupancy::marginal_x() const {
  std::map<std::uint64_t, std::uint64_t> phi;
  for (const auto& [key, count] : phi2_) {
    if (key.first > 0) phi[key.first] += count;
  }
  return OccupancyCounts(phi);
}

OccupancyCounts JointOccupancy::marginal_y() const {
  std::map<std::uint64_t, std::uint64_t> phi;
  for (const auto& [key, count] : phi2_) {
    if (key.second > 0) phi[key.second] += count;
  }
  return OccupancyCounts(phi);
}

JointOccupancy joint_occupancy(const SymbolString& x, const SymbolString& y) {
  if (x.alphabet_size != y.alphabet_size) {
    throw AlphabetMismatch("strings use alphabets of size " + std::to_string(x.alphabet_size) + " and " +
                           std::to_string(y.alphabet_size));
  }
  if (x.size() != y.size()) {
    throw LengthMismatch("strings have lengths " + std::to_string(x.size()) + " and " + std::to_string(y.size()));
  }
  const auto cx = symbol_counts(x);
  const auto cy = symbol_counts(y);
  std::map<JointOccupancy::Key, std::uint64_t> phi2;
  for (std::size_t w = 0; w < cx.size(); ++w) {
    if (cx[w] == 0 && cy[w] == 0) continue;
    ++phi2[{cx[w], cy[w]}];
  }
  return JointOccupancy(std::move(phi2), x.size());
}

double true_normalized_loglik(const ConcreteDistributionPair& dist, Source which, const SymbolString& s) {
  if (s.alphabet_size != dist.alphabet_size()) throw AlphabetMismatch("string and distribution alphabets differ");
  if (s.symbols.empty()) throw LengthMismatch("empty string");
  // Tally draws per group so that each distinct log is evaluated once.
  std::vector<std::uint64_t> per_group(dist.groups().size(), 0);
  for (auto sym : s.symbols) ++per_group[dist.group_of(sym)];
  long double total = 0;
  for (std::size_t g = 0; g < per_group.size(); ++g) {
    const auto& grp = dist.groups()[g];
    total += static_cast<long double>(per_group[g]) * std::log((which == Source::p ? grp.a : grp.b).to_long_double());
  }
  return static_cast<double>(total / static_cast<long double>(s.size()));
}

double true_group_probability(const ConcreteDistributionPair& dist, const SymbolString& s, std::uint64_t k,
                              Source which) {
  if (s.alphabet_size != dist.alphabet_size()) throw AlphabetMismatch("string and distribution alphabets differ");
  const auto counts = symbol_counts(s);
  long double total = 0;
  for (const auto& g : dist.groups()) {
    std::uint64_t members = 0;
    for (std::uint64_t w = g.first; w < g.first + g.count; ++w) members += counts[w] == k ? 1 : 0;
    total += static_cast<long double>(members) * (which == Source::p ? g.a : g.b).to_long_double();
  }
  return static_cast<double>(total / static_cast<long double>(dist.n()));
}

void write_string(std::ostream& os, const SymbolString& s) {
  os << "n=" << s.size() << " alphabet=" << s.alphabet_size << " seed=" << s.seed << '\n';
  for (auto sym : s.symbols) os << sym << '\n';
}

SymbolString read_string(std::istream& is) {
  std::string header;
  if (!std::getline(is, header)) throw ConfigError("missing string dump header");
  unsigned long long n = 0, alphabet = 0, seed = 0;
  if (std::sscanf(header.c_str(), "n=%llu alphabet=%llu seed=%llu", &n, &alphabet, &seed) != 3) {
    throw ConfigError("malformed string dump header: '" + header + "'");
  }
  SymbolString s;
  s.alphabet_size = alphabet;
  s.seed = seed;
  s.symbols.reserve(n);
  std::uint64_t sym = 0;
  while (s.symbols.size() < n && is >> sym) {
    if (sym >= alphabet) throw ConfigError("symbol " + std::to_string(sym) + " outside alphabet");
    s.symbols.push_back(static_cast<std::uint32_t>(sym));
  }
  if (s.symbols.size() != n) throw LengthMismatch("string dump is shorter than its header declares");
  return s;
}

}  // namespace raregt
