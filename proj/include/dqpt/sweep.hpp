#pragma once

// Batch evaluation of the diagnostics over (k, t) grids, the Loschmidt rate
// function over time, rate-function cusp detection and quench-plane scans.

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dqpt/criticality.hpp"
#include "dqpt/diagnostics.hpp"
#include "dqpt/models.hpp"

namespace dqpt {

struct OutputSet {
  bool entropy = true;
  bool echo = true;
  bool otoc = true;
  bool rate = true;

  bool any_mode_output() const { return entropy || echo || otoc; }
  bool operator==(const OutputSet&) const = default;
};

struct SweepConfig {
  QuenchSpec spec{TfiQuench{}};
  int n_cells = 400;
  double t_min = 0.0;
  double t_max = 10.0;
  int n_time = 501;
  OutputSet outputs{};
  int n_max_critical_times = 2;
  double tolerance = kDefaultTriadTolerance;  // triad checks
  double verify_tolerance = 1e-10;            // closed form vs oracle

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
  std::vector<double> times() const;

  bool operator==(const SweepConfig&) const = default;
};

/// Every mode of the grid is gapless; nothing left to sweep.
class EmptyGridError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SweepResult {
  std::vector<DiagnosticsSample> samples;  // k-major, then t; NaN = not requested
  std::vector<RateFunctionSample> rate;
  std::size_t skipped_modes = 0;
};

SweepResult run_sweep(const SweepConfig& cfg, int threads = 1);

/// lambda(t) at each time. Deterministic for any thread count.
std::vector<RateFunctionSample> rate_series(const QuenchSpec& spec, const ModeGrid& grid,
                                            std::span<const double> times, int threads = 1);

struct CuspReport {
  std::vector<double> times;
  std::vector<double> sharpness;  // -(second difference of lambda) / dt^2 at each cusp
  std::string method = "derivative_sign_change";
  double grid_dt = 0.0;
};

struct CuspDetectorOptions {
  /// Smooth maxima of lambda have curvature O(1); finite-N cusps have
  /// curvature that grows with N.
  double min_sharpness = 2.0;
  /// Window for the 2N confirmation and for merging nearby candidates.
  double window = 0.05;
};

/// Local maxima of lambda (first difference + -> -) whose curvature exceeds
/// min_sharpness and which are still there, above the same threshold, when
/// lambda is recomputed at 2N on the same time points. Throws
/// std::invalid_argument on a non-uniform time grid.
CuspReport detect_cusps(std::span<const RateFunctionSample> rate, const ModeGrid& grid,
                        const QuenchSpec& spec, int threads = 1,
                        const CuspDetectorOptions& opt = {});

/// One cell of a quench-parameter scan: TFI (h0, h1) at J = 1 or SSH
/// (t2_i, t2_f) at t1 = 1.
struct ExistencePoint {
  double pre;
  double post;
  std::size_t n_roots;
};

std::vector<ExistencePoint> existence_scan(Model model, std::span<const double> pre_values,
                                           std::span<const double> post_values, int n_cells,
                                           int threads = 1);

}  // namespace dqpt
