#include "dqpt/criticality.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>

#include "dqpt/diagnostics.hpp"
#include "dqpt/parallel.hpp"

namespace dqpt {

namespace {

std::vector<double> fisher_times(double energy, int n_max) {
  if (n_max < 0) throw std::invalid_argument("n_max must be >= 0");
  std::vector<double> times;
  times.reserve(static_cast<std::size_t>(n_max) + 1);
  for (int n = 0; n <= n_max; ++n) {
    times.push_back((2.0 * n + 1.0) * std::numbers::pi / (2.0 * energy));
  }
  return times;
}

// Bisection on [a, b] with f(a), f(b) of opposite sign. Runs until the
// bracket cannot shrink further and returns the end with the smaller |f|.
double bisect(const QuenchSpec& spec, double a, double b, double fa) {
  double fb = critical_condition(b, spec);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (a + b);
    if (mid <= a || mid >= b) break;
    const double fm = critical_condition(mid, spec);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (fa < 0.0)) {
      a = mid;
      fa = fm;
    } else {
      b = mid;
      fb = fm;
    }
  }
  return std::abs(fa) <= std::abs(fb) ? a : b;
}

}  // namespace

double critical_condition(double k, const QuenchSpec& spec) {
  if (spec.model() == Model::tfi) {
    return std::cos(2.0 * mode_angles(k, spec).delta_theta);
  }
  return unit_bloch_overlap(k, spec.ssh());
}

std::vector<double> find_critical_momenta(const QuenchSpec& spec,
                                          const ModeGrid& grid, int threads) {
  if (grid.model != spec.model()) {
    throw std::invalid_argument("find_critical_momenta: grid model does not match quench");
  }
  std::vector<double> ks;
  for (double k : grid.momenta) {
    if (k > 0.0) ks.push_back(k);
  }
  std::vector<std::optional<double>> cond(ks.size());
  parallel_for(ks.size(), threads, [&](std::size_t i) {
    try {
      cond[i] = critical_condition(ks[i], spec);
    } catch (const GaplessPointError&) {
    }
  });

  std::vector<double> roots;
  for (std::size_t i = 0; i + 1 < ks.size(); ++i) {
    if (!cond[i] || !cond[i + 1]) continue;
    const double fa = *cond[i];
    const double fb = *cond[i + 1];
    if (fa == 0.0) {
      roots.push_back(ks[i]);
      continue;
    }
    if ((fa < 0.0) != (fb < 0.0) && fb != 0.0) {
      roots.push_back(bisect(spec, ks[i], ks[i + 1], fa));
    }
  }
  if (!ks.empty() && cond.back() && *cond.back() == 0.0) roots.push_back(ks.back());
  return roots;
}

std::vector<double> critical_times(double k_star, const QuenchSpec& spec, int n_max) {
  const double c = critical_condition(k_star, spec);
  if (std::abs(c) > kRootAcceptTolerance) {
    throw std::invalid_argument("critical_times: k is not a critical momentum (|condition| = " +
                                std::to_string(std::abs(c)) + ")");
  }
  return fisher_times(mode_angles(k_star, spec).energy_post, n_max);
}

CriticalPoint verify_triad(double k_star, const QuenchSpec& spec,
                           std::span<const double> t_samples, double tol, int n_max) {
  if (t_samples.empty()) throw std::invalid_argument("verify_triad: no time samples");
  if (!(tol > 0.0)) throw std::invalid_argument("verify_triad: tol must be positive");

  CriticalPoint cp;
  cp.k_star = k_star;
  cp.energy_at_kstar = mode_angles(k_star, spec).energy_post;
  cp.critical_times = fisher_times(cp.energy_at_kstar, n_max);

  TriadResiduals& r = cp.residuals;
  r.condition = critical_condition(k_star, spec);
  r.min_echo = 1.0;
  for (double t : cp.critical_times) {
    r.min_echo = std::min(r.min_echo, loschmidt_echo(k_star, spec, t));
  }
  r.entropy_gap = std::abs(mode_entropy(k_star, spec) - std::numbers::ln2);
  r.max_otoc = 0.0;
  for (double t : t_samples) r.max_otoc = std::max(r.max_otoc, mode_otoc(k_star, spec, t));

  cp.fisher_zero_ok = r.min_echo < tol * tol;
  cp.entropy_max_ok = r.entropy_gap < tol;
  cp.otoc_zero_ok = r.max_otoc < tol;
  return cp;
}

}  // namespace dqpt
