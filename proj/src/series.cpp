#include "raregt/series.hpp"

#include <cmath>
#include <stdexcept>

namespace raregt {

double factorial_ratio(std::uint64_t k, std::uint64_t l) {
  if (k + l <= 20) {
    std::uint64_t r = 1;
    for (std::uint64_t j = k + 1; j <= k + l; ++j) r *= j;
    return static_cast<double>(r);
  }
  return std::exp(std::lgamma(static_cast<double>(k + l + 1)) - std::lgamma(static_cast<double>(k + 1)));
}

double binomial(std::uint64_t m, std::uint64_t l) {
  if (l > m) return 0.0;
  if (l > m - l) l = m - l;
  if (m <= 62) {
    unsigned __int128 r = 1;
    for (std::uint64_t j = 1; j <= l; ++j) r = r * (m - l + j) / j;  // stays integral at each step
    return static_cast<double>(r);
  }
  return std::exp(std::lgamma(static_cast<double>(m + 1)) - std::lgamma(static_cast<double>(l + 1)) -
                  std::lgamma(static_cast<double>(m - l + 1)));
}

SeriesCoefficients::SeriesCoefficients(std::uint64_t k, std::uint64_t order, double c_bar)
    : k_(k), order_(order), c_bar_(c_bar), weights_(order + 1, 0.0) {
  if (order < 1) throw std::invalid_argument("series order M must be at least 1");
  if (!(c_bar > 0.0)) throw std::invalid_argument("expansion centre must be positive");
  for (std::uint64_t m = 1; m <= order; ++m) {
    for (std::uint64_t l = 0; l <= m; ++l) weights_[l] -= term(m, l);
  }
  weights_[0] += std::log(c_bar);
}

double SeriesCoefficients::term(std::uint64_t m, std::uint64_t l) const {
  const double sign = (l % 2 == 0) ? 1.0 : -1.0;
  return sign * std::pow(c_bar_, -static_cast<double>(l)) * binomial(m, l) * factorial_ratio(k_, l) /
         static_cast<double>(m);
}

}  // namespace raregt
