#include "dqpt/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dqpt/parallel.hpp"

namespace dqpt {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Candidate {
  std::size_t index;
  double sharpness;
};

// Local maxima of lambda on a uniform grid with curvature >= min_sharpness.
std::vector<Candidate> local_maxima(std::span<const double> lambda, double dt,
                                    double min_sharpness) {
  std::vector<Candidate> out;
  for (std::size_t i = 1; i + 1 < lambda.size(); ++i) {
    const double left = lambda[i] - lambda[i - 1];
    const double right = lambda[i + 1] - lambda[i];
    if (left > 0.0 && right <= 0.0) {
      const double sharp = (left - right) / (dt * dt);
      if (sharp >= min_sharpness) out.push_back({i, sharp});
    }
  }
  return out;
}

}  // namespace

void SweepConfig::validate() const {
  if (n_cells < 2) throw std::invalid_argument("n_cells must be >= 2");
  if (n_time < 2) throw std::invalid_argument("n_time must be >= 2");
  if (!std::isfinite(t_min) || !std::isfinite(t_max)) {
    throw std::invalid_argument("t_min and t_max must be finite");
  }
  if (!(t_min < t_max)) throw std::invalid_argument("t_min must be < t_max");
  if (n_max_critical_times < 0) throw std::invalid_argument("n_max_critical_times must be >= 0");
  if (!(tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");
  if (!(verify_tolerance > 0.0)) throw std::invalid_argument("verify_tolerance must be positive");
  if (!outputs.any_mode_output() && !outputs.rate) {
    throw std::invalid_argument("outputs must name at least one of entropy, echo, otoc, rate");
  }
}

std::vector<double> SweepConfig::times() const {
  std::vector<double> ts(static_cast<std::size_t>(n_time));
  for (int j = 0; j < n_time; ++j) {
    ts[static_cast<std::size_t>(j)] = t_min + (t_max - t_min) * j / (n_time - 1);
  }
  return ts;
}

std::vector<RateFunctionSample> rate_series(const QuenchSpec& spec, const ModeGrid& grid,
                                            std::span<const double> times, int threads) {
  std::vector<RateFunctionSample> out(times.size());
  parallel_for(times.size(), threads, [&](std::size_t j) {
    out[j] = {times[j], rate_function(spec, grid, times[j]).lambda};
  });
  return out;
}

SweepResult run_sweep(const SweepConfig& cfg, int threads) {
  cfg.validate();
  const ModeGrid grid = ModeGrid::make(cfg.spec.model(), cfg.n_cells);
  const std::vector<double> times = cfg.times();

  std::vector<unsigned char> gapless(grid.momenta.size(), 0);
  parallel_for(grid.momenta.size(), threads, [&](std::size_t i) {
    try {
      mode_angles(grid.momenta[i], cfg.spec);
    } catch (const GaplessPointError&) {
      gapless[i] = 1;
    }
  });
  std::vector<double> modes;
  for (std::size_t i = 0; i < grid.momenta.size(); ++i) {
    if (!gapless[i]) modes.push_back(grid.momenta[i]);
  }
  SweepResult result;
  result.skipped_modes = grid.momenta.size() - modes.size();
  if (modes.empty()) throw EmptyGridError("every grid mode is gapless; nothing to sweep");

  if (cfg.outputs.any_mode_output()) {
    const std::size_t nt = times.size();
    result.samples.resize(modes.size() * nt);
    parallel_for(modes.size(), threads, [&](std::size_t i) {
      const double k = modes[i];
      const double s = cfg.outputs.entropy ? mode_entropy(k, cfg.spec) : kNaN;
      for (std::size_t j = 0; j < nt; ++j) {
        const double t = times[j];
        result.samples[i * nt + j] = {
            k, t, s, cfg.outputs.echo ? loschmidt_echo(k, cfg.spec, t) : kNaN,
            cfg.outputs.otoc ? mode_otoc(k, cfg.spec, t) : kNaN};
      }
    });
  }
  if (cfg.outputs.rate) result.rate = rate_series(cfg.spec, grid, times, threads);
  return result;
}

CuspReport detect_cusps(std::span<const RateFunctionSample> rate, const ModeGrid& grid,
                        const QuenchSpec& spec, int threads, const CuspDetectorOptions& opt) {
  CuspReport report;
  if (rate.size() < 3) return report;
  const double dt = (rate.back().t - rate.front().t) / static_cast<double>(rate.size() - 1);
  if (!(dt > 0.0)) throw std::invalid_argument("detect_cusps: times must increase");
  for (std::size_t i = 1; i < rate.size(); ++i) {
    const double step = rate[i].t - rate[i - 1].t;
    if (std::abs(step - dt) > 1e-6 * dt) {
      throw std::invalid_argument("detect_cusps: time grid is not uniform");
    }
  }
  report.grid_dt = dt;

  std::vector<double> lambda(rate.size());
  for (std::size_t i = 0; i < rate.size(); ++i) lambda[i] = rate[i].lambda;
  std::vector<Candidate> cand = local_maxima(lambda, dt, opt.min_sharpness);

  // Merge candidates closer than the window, keeping the highest lambda.
  std::vector<Candidate> merged;
  for (const Candidate& c : cand) {
    if (!merged.empty() &&
        rate[c.index].t - rate[merged.back().index].t < opt.window) {
      if (lambda[c.index] > lambda[merged.back().index]) merged.back() = c;
      continue;
    }
    merged.push_back(c);
  }
  if (merged.empty()) return report;

  // Recompute lambda at 2N around every surviving candidate.
  const std::size_t half = static_cast<std::size_t>(std::ceil(opt.window / dt));
  std::vector<std::pair<std::size_t, std::size_t>> spans;
  std::vector<double> window_times;
  for (const Candidate& c : merged) {
    const std::size_t lo = c.index > half ? c.index - half : 0;
    const std::size_t hi = std::min(rate.size() - 1, c.index + half);
    spans.emplace_back(window_times.size(), hi - lo + 1);
    for (std::size_t i = lo; i <= hi; ++i) window_times.push_back(rate[i].t);
  }
  const ModeGrid fine = ModeGrid::make(grid.model, 2 * grid.n_cells);
  const std::vector<RateFunctionSample> refined =
      rate_series(spec, fine, window_times, threads);

  for (std::size_t c = 0; c < merged.size(); ++c) {
    std::vector<double> lam2(spans[c].second);
    for (std::size_t i = 0; i < lam2.size(); ++i) lam2[i] = refined[spans[c].first + i].lambda;
    if (local_maxima(lam2, dt, opt.min_sharpness).empty()) continue;
    report.times.push_back(rate[merged[c].index].t);
    report.sharpness.push_back(merged[c].sharpness);
  }
  return report;
}

std::vector<ExistencePoint> existence_scan(Model model, std::span<const double> pre_values,
                                           std::span<const double> post_values, int n_cells,
                                           int threads) {
  const ModeGrid grid = ModeGrid::make(model, n_cells);
  const std::size_t np = post_values.size();
  std::vector<ExistencePoint> out(pre_values.size() * np);
  parallel_for(out.size(), threads, [&](std::size_t idx) {
    const double a = pre_values[idx / np];
    const double b = post_values[idx % np];
    const QuenchSpec spec = model == Model::tfi
                                ? QuenchSpec(TfiQuench{{1.0, a}, {1.0, b}})
                                : QuenchSpec(SshQuench{{1.0, a}, {1.0, b}});
    out[idx] = {a, b, find_critical_momenta(spec, grid).size()};
  });
  return out;
}

}  // namespace dqpt
