#pragma once

// Critical momenta k*, the Fisher-zero times at k*, and the three-way check
// (Fisher zero, maximal mode entropy, vanishing OTOC) at a candidate k*.

#include <span>
#include <vector>

#include "dqpt/models.hpp"

namespace dqpt {

/// |condition| above this means the momentum is not a root.
inline constexpr double kRootAcceptTolerance = 1e-8;
inline constexpr double kDefaultTriadTolerance = 1e-10;

struct TriadResiduals {
  double min_echo;      // min over t*_n of L_k(t*_n)
  double entropy_gap;   // |S_k - ln 2|
  double max_otoc;      // max over the sampled times of C_k(t)
  double condition;     // critical_condition at k
};

struct CriticalPoint {
  double k_star;
  double energy_at_kstar;
  std::vector<double> critical_times;
  bool fisher_zero_ok = false;
  bool entropy_max_ok = false;
  bool otoc_zero_ok = false;
  TriadResiduals residuals{};

  bool verified() const { return fisher_zero_ok && entropy_max_ok && otoc_zero_ok; }
};

/// cos(2 dtheta) for TFI, d^i . d^f (unit vectors) for SSH.
double critical_condition(double k, const QuenchSpec& spec);

/// Sign changes of critical_condition between adjacent grid momenta with
/// k > 0, each refined by bisection. SSH roots come in +-k* pairs; only the
/// positive member is reported. Gapless grid points break a bracket.
std::vector<double> find_critical_momenta(const QuenchSpec& spec,
                                          const ModeGrid& grid, int threads = 1);

/// t*_n = (2n+1) pi / (2 E(k*)), n = 0..n_max, for both models. Throws
/// std::invalid_argument if |critical_condition(k_star)| > kRootAcceptTolerance.
std::vector<double> critical_times(double k_star, const QuenchSpec& spec, int n_max);

/// Evaluates the three predicates at k_star. k_star need not be a root: the
/// flags then come out false, which is the point of the check.
CriticalPoint verify_triad(double k_star, const QuenchSpec& spec,
                           std::span<const double> t_samples,
                           double tol = kDefaultTriadTolerance, int n_max = 2);

}  // namespace dqpt
