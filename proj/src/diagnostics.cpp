#include "dqpt/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "dqpt/parallel.hpp"

namespace dqpt {

namespace {

void require_model(const QuenchSpec& spec, Model m, const char* op) {
  if (spec.model() != m) {
    throw std::invalid_argument(std::string(op) + " requires a " + to_string(m) +
                                " quench");
  }
}

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

double square(double x) { return x * x; }

}  // namespace

double binary_entropy(double p) {
  if (!(p >= -1e-12 && p <= 1.0 + 1e-12)) {
    throw std::invalid_argument("binary_entropy: probability out of range");
  }
  p = std::clamp(p, 0.0, 1.0);
  return -xlogx(p) - xlogx(1.0 - p);
}

double entropy_tfi(double k, const QuenchSpec& spec) {
  require_model(spec, Model::tfi, "entropy_tfi");
  const ModeAngles a = mode_angles(k, spec);
  return binary_entropy(square(std::cos(a.delta_theta)));
}

double entropy_ssh(double k, const QuenchSpec& spec) {
  require_model(spec, Model::ssh, "entropy_ssh");
  const ModeAngles a = mode_angles(k, spec);
  return binary_entropy(square(std::cos(0.5 * a.delta_theta)));
}

double mode_entropy(double k, const QuenchSpec& spec) {
  return spec.model() == Model::tfi ? entropy_tfi(k, spec) : entropy_ssh(k, spec);
}

lin::cplx loschmidt_amplitude(double k, const QuenchSpec& spec, double t) {
  const ModeAngles a = mode_angles(k, spec);
  const double phase = a.energy_post * t;
  const double overlap = spec.model() == Model::tfi
                             ? std::cos(2.0 * a.delta_theta)
                             : unit_bloch_overlap(k, spec.ssh());
  return {std::cos(phase), overlap * std::sin(phase)};
}

double loschmidt_echo_tfi(double k, const QuenchSpec& spec, double t) {
  require_model(spec, Model::tfi, "loschmidt_echo_tfi");
  const ModeAngles a = mode_angles(k, spec);
  const double two_dtheta = 2.0 * a.delta_theta;
  return square(std::cos(two_dtheta)) +
         square(std::sin(two_dtheta)) * square(std::cos(a.energy_post * t));
}

double loschmidt_echo(double k, const QuenchSpec& spec, double t) {
  if (spec.model() == Model::tfi) return loschmidt_echo_tfi(k, spec, t);
  return std::norm(loschmidt_amplitude(k, spec, t));
}

RateValue rate_function(const QuenchSpec& spec, const ModeGrid& grid, double t,
                        int threads) {
  if (grid.model != spec.model()) {
    throw std::invalid_argument("rate_function: grid model does not match quench");
  }
  const std::size_t n = grid.momenta.size();
  std::vector<double> logs(n, 0.0);
  std::vector<unsigned char> skipped(n, 0);
  parallel_for(n, threads, [&](std::size_t i) {
    try {
      const double echo = loschmidt_echo(grid.momenta[i], spec, t);
      logs[i] = std::log(std::max(echo, kEchoLogFloor));
    } catch (const GaplessPointError&) {
      skipped[i] = 1;
    }
  });
  std::size_t n_skipped = 0;
  for (unsigned char s : skipped) n_skipped += s;
  const double total = pairwise_sum(logs);
  return {-total / static_cast<double>(grid.n_cells), n_skipped};
}

double otoc_tfi(double k, const QuenchSpec& spec, double t) {
  require_model(spec, Model::tfi, "otoc_tfi");
  const ModeAngles a = mode_angles(k, spec);
  return square(std::sin(2.0 * a.theta_post)) *
         square(std::sin(a.energy_post * t)) *
         square(std::cos(2.0 * a.delta_theta));
}

double otoc_ssh(double k, const QuenchSpec& spec, double t) {
  require_model(spec, Model::ssh, "otoc_ssh");
  const ModeAngles a = mode_angles(k, spec);
  return square(std::sin(a.theta_post)) * square(std::sin(a.energy_post * t)) *
         square(std::cos(a.delta_theta));
}

double mode_otoc(double k, const QuenchSpec& spec, double t) {
  return spec.model() == Model::tfi ? otoc_tfi(k, spec, t) : otoc_ssh(k, spec, t);
}

}  // namespace dqpt
