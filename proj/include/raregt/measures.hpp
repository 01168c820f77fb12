#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "raregt/rational.hpp"

namespace raregt {

/// Selects one of the two source distributions (p_n, q_n), or the matching
/// limit measure (P, Q).
enum class Source { p, q };

std::string to_string(Source s);

/// One symbol group of a scaled profile: a fraction `f` of the alphabet whose
/// symbols have probability a/n under p_n and b/n under q_n.
struct ProfileAtom {
  Rational a;
  Rational b;
  Rational f;
};

/// Finite-atom description of a family (p_n, q_n) with |Omega_n| = beta * n.
/// `granularity` is the smallest step in n for which every group size
/// beta * n * f_i is an integer.
struct ScaledProfile {
  std::vector<ProfileAtom> atoms;
  Rational beta{1};
  std::int64_t granularity = 1;
};

/// Normalized probability bounds of a profile: every symbol probability lies
/// in [c_lo / n, c_hi / n].
struct RegimeBounds {
  double c_lo = 1.0;
  double c_hi = 1.0;
  double c_bar = 1.0;  // (c_lo + c_hi) / 2
  double c_log = 0.0;  // max(|log c_lo|, |log c_hi|)

  /// Throws std::invalid_argument unless 0 < lo <= hi.
  static RegimeBounds from_range(double lo, double hi);
};

/// Merges atoms that share the same (a, b) pair, keeping first-appearance order.
ScaledProfile canonicalize(const ScaledProfile& profile);

/// Checks the regime constraints and returns the bounds.
///
/// Throws EmptyProfile for a profile without atoms, NormalizationError when
/// sum f != 1 or beta * sum f*a != 1 or beta * sum f*b != 1 (beyond 1e-12),
/// and GranularityError when beta * g * f_i is not an integer for some atom.
/// std::invalid_argument is raised for non-positive a, b, beta and f outside (0, 1].
RegimeBounds validate_profile(const ScaledProfile& profile);

struct MeasureAtom {
  double x;
  double y;
  double mass;
};

/// Finitely-atomic probability measure on [c_lo, c_hi]^2.
class MixingMeasure {
 public:
  /// Throws NormalizationError when the masses do not sum to one within 1e-12
  /// and std::invalid_argument for non-positive coordinates or negative masses.
  explicit MixingMeasure(std::vector<MeasureAtom> atoms);

  const std::vector<MeasureAtom>& atoms() const { return atoms_; }
  /// Smallest box [c_lo, c_hi]^2 containing every atom.
  RegimeBounds bounds() const;

 private:
  std::vector<MeasureAtom> atoms_;
};

/// Limit measure P (size-biased by x) or Q (size-biased by y) of a profile.
/// For these families P_n = P for every admissible n.
MixingMeasure mixing_measure(const ScaledProfile& profile, Source which);

/// A contiguous block of symbols [first, first + count) sharing one
/// probability pair (a/n, b/n).
struct SymbolGroup {
  Rational a;
  Rational b;
  std::uint64_t first = 0;
  std::uint64_t count = 0;
};

/// (p_n, q_n) realized over the alphabet {0, ..., alphabet_size - 1}.
class ConcreteDistributionPair {
 public:
  ConcreteDistributionPair(std::uint64_t n, std::vector<SymbolGroup> groups);

  std::uint64_t n() const { return n_; }
  std::uint64_t alphabet_size() const { return alphabet_size_; }
  const std::vector<SymbolGroup>& groups() const { return groups_; }

  /// Index of the group containing `symbol`.
  std::size_t group_of(std::uint64_t symbol) const;
  /// Normalized probability n * mu(symbol) for mu in {p_n, q_n}.
  double scaled_probability(Source which, std::uint64_t symbol) const;
  double probability(Source which, std::uint64_t symbol) const;
  /// Exact total mass of p_n or q_n.
  Rational total_probability(Source which) const;

 private:
  std::uint64_t n_;
  std::uint64_t alphabet_size_ = 0;
  std::vector<SymbolGroup> groups_;
};

/// Throws GranularityError unless n is a positive multiple of the granularity.
ConcreteDistributionPair instantiate(const ScaledProfile& profile, std::uint64_t n);

// Built-in profiles.
ScaledProfile counterexample_profile();  // 2n symbols at 1/(4n), n symbols at 1/(2n)
ScaledProfile uniform_profile();
ScaledProfile skew_profile();            // p and q swap 1/(4n) and 3/(4n) across two halves

}  // namespace raregt
