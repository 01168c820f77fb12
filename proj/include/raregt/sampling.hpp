#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <utility>
#include <vector>

#include "raregt/measures.hpp"

namespace raregt {

/// An observed string of alphabet indices.
struct SymbolString {
  std::vector<std::uint32_t> symbols;
  std::uint64_t alphabet_size = 0;
  std::uint64_t seed = 0;

  std::uint64_t size() const { return symbols.size(); }
};

/// Draws n i.i.d. symbols from p_n or q_n.
///
/// The generator is std::mt19937_64 seeded with `seed`; experiments use
/// seed = base_seed + trial. A group is picked by inverse CDF over the symbol
/// groups and the symbol uniformly within it, so the cost per draw does not
/// depend on the alphabet size. Throws LengthMismatch if n != dist.n().
SymbolString draw_string(const ConcreteDistributionPair& dist, Source which, std::uint64_t n,
                         std::uint64_t seed);

/// Per-symbol occurrence counts over the whole alphabet.
std::vector<std::uint32_t> symbol_counts(const SymbolString& s);

/// Occupancy profile phi_k = number of symbols appearing exactly k times.
class OccupancyCounts {
 public:
  OccupancyCounts() = default;
  /// Builds counts from explicit phi_k values (k >= 1); n is sum k * phi_k.
  explicit OccupancyCounts(const std::map<std::uint64_t, std::uint64_t>& phi);

  /// phi_k, or 0 when no symbol appears k times. phi_0 is not tracked.
  std::uint64_t phi(std::uint64_t k) const { return k < phi_.size() ? phi_[k] : 0; }
  std::uint64_t n() const { return n_; }
  std::uint64_t distinct() const { return distinct_; }
  /// Largest k with phi_k > 0.
  std::uint64_t max_count() const { return phi_.empty() ? 0 : phi_.size() - 1; }
  /// Nonzero (k, phi_k) entries in increasing k.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> entries() const;

 private:
  friend OccupancyCounts occupancy(const SymbolString& s);
  void finish();

  std::vector<std::uint64_t> phi_;  // dense, phi_[0] unused
  std::uint64_t n_ = 0;
  std::uint64_t distinct_ = 0;
};

OccupancyCounts occupancy(const SymbolString& s);

/// Joint occupancy phi_{k,l}: symbols seen k times in x and l times in y.
/// Rows with k = 0 (symbols seen only in y) are stored; symbols absent from
/// both strings are not.
class JointOccupancy {
 public:
  using Key = std::pair<std::uint64_t, std::uint64_t>;

  JointOccupancy() = default;
  JointOccupancy(std::map<Key, std::uint64_t> phi2, std::uint64_t n);

  std::uint64_t phi(std::uint64_t k, std::uint64_t l) const;
  std::uint64_t n() const { return n_; }
  const std::map<Key, std::uint64_t>& entries() const { return phi2_; }

  /// sum_{j >= 1} j * phi_{r,j} / n: fraction of y positions whose symbol
  /// appears exactly r times in x.
  double row_mass(std::uint64_t r) const { return r < row_mass_.size() ? row_mass_[r] : 0.0; }

  /// Occupancy of x (k >= 1) and of y (l >= 1) recovered from the joint table.
  OccupancyCounts marginal_x() const;
  OccupancyCounts marginal_y() const;

 private:
  std::map<Key, std::uint64_t> phi2_;
  std::uint64_t n_ = 0;
  std::vector<double> row_mass_;
};

/// Throws AlphabetMismatch when the strings use different alphabets and
/// LengthMismatch when their lengths differ.
JointOccupancy joint_occupancy(const SymbolString& x, const SymbolString& y);

/// (1/n) sum_i log(n * mu(s_i)) with mu = p_n or q_n.
double true_normalized_loglik(const ConcreteDistributionPair& dist, Source which, const SymbolString& s);

/// Total mu-probability of the symbols appearing exactly k times in s
/// (k = 0 covers every unseen symbol).
double true_group_probability(const ConcreteDistributionPair& dist, const SymbolString& s, std::uint64_t k,
                              Source which = Source::p);

/// Text dump: header "n=<n> alphabet=<m> seed=<s>" then one index per line.
void write_string(std::ostream& os, const SymbolString& s);
SymbolString read_string(std::istream& is);

}  // namespace raregt
