#pragma once

#include <cstdint>
#include <vector>

namespace raregt {

/// (k + l)! / k!. Exact integer arithmetic while k + l <= 20 (20! is the
/// largest factorial in 64 bits), log-gamma above that.
double factorial_ratio(std::uint64_t k, std::uint64_t l);

/// Binomial coefficient C(m, l) as a double; exact for m <= 62.
double binomial(std::uint64_t m, std::uint64_t l);

/// Coefficients of the degree-M log series expressed in the Poisson-moment
/// basis, for occupancy class k and expansion centre c_bar:
///
///   value(rows) = -sum_{m=1}^{M} sum_{l=0}^{m} term(m, l) * rows(k + l)
///                 + log(c_bar) * rows(k),
///   term(m, l)  = (-c_bar)^{-l} * C(m, l) * (k + l)! / (m * k!).
///
/// `rows(r)` is whatever plays the role of the class-r total probability:
/// the Good-Turing mass (r+1) phi_{r+1} / n, its two-string analogue, or the
/// limit lambda_r. The m-sum is folded into one weight per l at construction.
class SeriesCoefficients {
 public:
  SeriesCoefficients(std::uint64_t k, std::uint64_t order, double c_bar);

  std::uint64_t k() const { return k_; }
  std::uint64_t order() const { return order_; }
  double term(std::uint64_t m, std::uint64_t l) const;
  /// weight(l) multiplies rows(k + l); includes the sign and the log(c_bar) term.
  double weight(std::uint64_t l) const { return weights_.at(l); }
  /// sum_l |weight(l) * rows(k + l)|, useful as a cancellation scale.
  template <class Rows>
  double magnitude(Rows&& rows) const {
    double total = 0.0;
    for (std::uint64_t l = 0; l < weights_.size(); ++l) {
      const double t = weights_[l] * rows(k_ + l);
      total += t < 0 ? -t : t;
    }
    return total;
  }

  template <class Rows>
  double apply(Rows&& rows) const {
    double total = 0.0;
    for (std::uint64_t l = 0; l < weights_.size(); ++l) total += weights_[l] * rows(k_ + l);
    return total;
  }

 private:
  std::uint64_t k_;
  std::uint64_t order_;
  double c_bar_;
  std::vector<double> weights_;
};

}  // namespace raregt
