#include "lohe/fit.hpp"

#include <cmath>
#include <stdexcept>

namespace lohe {

DecayFit fit_decay_rate(const std::vector<double>& times, const std::vector<double>& values,
                        const FitWindow& w) {
  if (times.size() != values.size())
    throw std::invalid_argument("fit_decay_rate: times and values differ in length");
  std::vector<double> x, y;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] < w.t_min || times[i] > w.t_max) continue;
    const double v = values[i];
    if (!(v >= w.value_lo && v <= w.value_hi)) continue;
    if (!(v > 0.0)) throw std::invalid_argument("fit_decay_rate: series touches zero");
    x.push_back(times[i]);
    y.push_back(std::log(v));
  }
  if (x.size() < 3) throw std::invalid_argument("fit_decay_rate: fewer than 3 samples in window");
  const double n = double(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("fit_decay_rate: window spans a single time");
  DecayFit f;
  const double slope = sxy / sxx;
  f.rate = -slope;
  f.intercept = my - slope * mx;
  f.r_squared = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  f.points = x.size();
  return f;
}

}  // namespace lohe
