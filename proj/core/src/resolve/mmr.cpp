#include "mosaic/resolve/mmr.hpp"

#include <algorithm>
#include <cmath>

#include "mosaic/errors.hpp"

namespace mosaic {

double estimate_pi0(const std::vector<double>& pvalues) {
  if (pvalues.empty()) throw InputError("cannot estimate pi0 from no p-values");
  const double n = static_cast<double>(pvalues.size());
  std::vector<double> lambdas, estimates;
  for (int k = 1; k <= 18; ++k) {
    const double lambda = 0.05 * k;
    const auto above = std::count_if(pvalues.begin(), pvalues.end(), [&](double p) { return p > lambda; });
    lambdas.push_back(lambda);
    estimates.push_back(static_cast<double>(above) / (n * (1.0 - lambda)));
  }
  const double m = static_cast<double>(lambdas.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    sx += lambdas[i];
    sy += estimates[i];
    sxx += lambdas[i] * lambdas[i];
    sxy += lambdas[i] * estimates[i];
  }
  const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  const double intercept = (sy - slope * sx) / m;
  return std::clamp(intercept + slope * 0.90, 0.01, 1.0);
}

double mixture_neg_log_likelihood(const std::vector<double>& pvalues, double pi0, double xi) {
  double nll = 0.0;
  for (double p : pvalues) {
    const double q = std::max(p, kPValueFloor);
    nll -= std::log(pi0 + (1.0 - pi0) * xi * std::pow(q, xi - 1.0));
  }
  return nll;
}

double fit_xi(const std::vector<double>& pvalues, double pi0) {
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = 1e-4, hi = 1.0 - 1e-4;
  double c = hi - phi * (hi - lo);
  double d = lo + phi * (hi - lo);
  double fc = mixture_neg_log_likelihood(pvalues, pi0, c);
  double fd = mixture_neg_log_likelihood(pvalues, pi0, d);
  while (hi - lo > 1e-6) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - phi * (hi - lo);
      fc = mixture_neg_log_likelihood(pvalues, pi0, c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + phi * (hi - lo);
      fd = mixture_neg_log_likelihood(pvalues, pi0, d);
    }
  }
  return (lo + hi) / 2.0;
}

BetaMixtureFit fit_beta_mixture(const std::vector<double>& pvalues) {
  BetaMixtureFit fit;
  fit.count = pvalues.size();
  if (pvalues.size() < kMinPValuesForFit) {
    fit.fallback = true;
    return fit;
  }
  fit.pi0 = estimate_pi0(pvalues);
  // at pi0 = 1 the likelihood no longer depends on xi and the odds blow up
  fit.pi0 = std::min(fit.pi0, 1.0 - 1e-6);
  fit.xi = fit_xi(pvalues, fit.pi0);
  return fit;
}

MmrScore mmr_score(double p, const BetaMixtureFit& fit) {
  const double q = std::clamp(p, kPValueFloor, 1.0);
  const double pi0 = std::min(fit.pi0, 1.0 - 1e-6);
  MmrScore out;
  out.e0 = pi0 / (fit.xi * std::pow(q, fit.xi - 1.0) * (1.0 - pi0));
  out.e1 = 1.0 / out.e0;
  out.independence = out.e0 > out.e1;
  out.score = std::max(out.e0, out.e1);
  return out;
}

}  // namespace mosaic
