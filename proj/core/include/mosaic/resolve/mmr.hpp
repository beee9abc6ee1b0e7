#pragma once

#include <cstddef>
#include <vector>

namespace mosaic {

/// Uniform / Beta(xi, 1) mixture over p-values: pi0 is the null proportion.
struct BetaMixtureFit {
  double pi0 = 0.5;
  double xi = 0.5;
  std::size_t count = 0;
  bool fallback = false;  // too few p-values to fit
};

inline constexpr std::size_t kMinPValuesForFit = 20;
inline constexpr double kPValueFloor = 1e-300;

/// Storey-style estimate smoothed by a least-squares line over lambda = 0.05..0.90,
/// read off at 0.90 and clamped to [0.01, 1]. Throws InputError on empty input.
double estimate_pi0(const std::vector<double>& pvalues);

double mixture_neg_log_likelihood(const std::vector<double>& pvalues, double pi0, double xi);

/// Golden-section minimisation of the negative log-likelihood over xi in (1e-4, 1 - 1e-4).
double fit_xi(const std::vector<double>& pvalues, double pi0);

/// Both estimates, or pi0 = xi = 0.5 when fewer than kMinPValuesForFit values are given.
BetaMixtureFit fit_beta_mixture(const std::vector<double>& pvalues);

struct MmrScore {
  bool independence = false;
  double score = 1.0;  // max(E0, E1) >= 1
  double e0 = 1.0;     // posterior odds of the null
  double e1 = 1.0;
};

MmrScore mmr_score(double p, const BetaMixtureFit& fit);

}  // namespace mosaic
