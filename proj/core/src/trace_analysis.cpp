#include "momograd/trace_analysis.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace momograd {

namespace {

struct LinearFit {
  double slope = 0;
  double r_squared = 0;
};

LinearFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys) {
  const auto n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  LinearFit fit;
  const double vxx = sxx - sx * sx / n;
  if (vxx <= 0) return fit;
  fit.slope = (sxy - sx * sy / n) / vxx;
  const double mean_y = sy / n;
  double ss_res = 0, ss_tot = 0;
  const double intercept = mean_y - fit.slope * sx / n;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double pred = intercept + fit.slope * xs[i];
    ss_res += (ys[i] - pred) * (ys[i] - pred);
    ss_tot += (ys[i] - mean_y) * (ys[i] - mean_y);
  }
  fit.r_squared = ss_tot <= 0 ? 1.0 : 1.0 - ss_res / ss_tot;
  return fit;
}

}  // namespace

int sufficient_descent_violations(const SolverTrace& trace, double gamma_star, double slack) {
  int violations = 0;
  for (const auto& rec : trace.iterations) {
    if (!rec.stepped) continue;
    if (rec.psi_d > 0.5 * gamma_star * rec.psi_v + slack) ++violations;
  }
  return violations;
}

int decrease_bound_violations(const SolverTrace& trace, double omega, double slack) {
  int violations = 0;
  for (std::size_t i = 0; i + 1 < trace.iterations.size(); ++i) {
    const auto& rec = trace.iterations[i];
    if (!rec.stepped) continue;
    const auto& next = trace.iterations[i + 1];
    const double required = omega * rec.psi_d * rec.psi_d / rec.d.squaredNorm();
    for (Eigen::Index c = 0; c < rec.fx.size(); ++c) {
      if (rec.fx[c] - next.fx[c] < required - slack) {
        ++violations;
        break;
      }
    }
  }
  return violations;
}

bool componentwise_monotone(const SolverTrace& trace, double slack) {
  for (std::size_t i = 0; i + 1 < trace.iterations.size(); ++i) {
    const auto& a = trace.iterations[i].fx;
    const auto& b = trace.iterations[i + 1].fx;
    for (Eigen::Index c = 0; c < a.size(); ++c) {
      if (b[c] > a[c] + slack) return false;
    }
  }
  return true;
}

double descent_series_sum(const SolverTrace& trace) {
  double sum = 0;
  for (const auto& rec : trace.iterations) {
    if (!rec.stepped) continue;
    sum += rec.psi_d * rec.psi_d / rec.d.squaredNorm();
  }
  return sum;
}

DecayFit fit_geometric_decay(const SolverTrace& trace, int objective) {
  DecayFit out;
  if (trace.iterations.empty()) return out;
  const double terminal = trace.terminal().fx[objective];
  const double floor = std::max(1e-14, std::abs(terminal) * 1e-14);
  std::vector<double> ks, logs;
  for (const auto& rec : trace.iterations) {
    if (!rec.stepped) continue;
    const double gap = rec.fx[objective] - terminal;
    if (gap <= floor) continue;
    ks.push_back(static_cast<double>(rec.k));
    logs.push_back(std::log(gap));
  }
  out.points = static_cast<int>(ks.size());
  if (out.points < 3) return out;
  const LinearFit fit = fit_line(ks, logs);
  out.rate = std::exp(fit.slope);
  out.r_squared = fit.r_squared;
  return out;
}

double rate_proxy_slope(const SolverTrace& trace) {
  std::vector<double> xs, ys;
  double best = std::numeric_limits<double>::infinity();
  for (const auto& rec : trace.iterations) {
    if (!rec.stepped) continue;
    best = std::min(best, rec.v.norm());
    if (best <= 0) break;
    xs.push_back(std::log(static_cast<double>(rec.k + 1)));
    ys.push_back(std::log(best));
  }
  if (xs.size() < 3) return 0;
  return fit_line(xs, ys).slope;
}

}  // namespace momograd
