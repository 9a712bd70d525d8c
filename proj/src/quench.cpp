#include "dqpt/quench.hpp"

#include <cmath>
#include <stdexcept>

namespace dqpt {

namespace {

// std::polar requires a non-negative magnitude; the amplitudes here are signed.
lin::cplx phased(double amplitude, double phase) {
  return amplitude * lin::cplx(std::cos(phase), std::sin(phase));
}

}  // namespace

double ModeState::norm() const {
  return std::sqrt(std::norm(amp0) + std::norm(amp1));
}

ModeState tfi_mode_state(double k, const QuenchSpec& spec, double t) {
  if (spec.model() != Model::tfi) {
    throw std::invalid_argument("tfi_mode_state requires a TFI quench");
  }
  const ModeAngles a = mode_angles(k, spec);
  if (a.energy_post < kGaplessTolerance) {
    throw GaplessPointError(k, "post-quench TFI mode is gapless");
  }
  const double phase = a.energy_post * t;
  return {k, ModeBasis::tfi_pair, phased(std::cos(a.delta_theta), phase),
          phased(std::sin(a.delta_theta), -phase), a.energy_post};
}

ModeState ssh_mode_state(double k, const QuenchSpec& spec, double t) {
  if (spec.model() != Model::ssh) {
    throw std::invalid_argument("ssh_mode_state requires an SSH quench");
  }
  const ModeAngles a = mode_angles(k, spec);
  const double half = 0.5 * a.delta_theta;
  const double phase = a.energy_post * t;
  return {k, ModeBasis::ssh_band, phased(-std::sin(half), -phase),
          phased(-std::cos(half), phase), a.energy_post};
}

ModeState mode_state(double k, const QuenchSpec& spec, double t) {
  return spec.model() == Model::tfi ? tfi_mode_state(k, spec, t)
                                    : ssh_mode_state(k, spec, t);
}

SublatticeAmplitudes ssh_sublattice_state(double k, const QuenchSpec& spec,
                                          double t) {
  const ModeState s = ssh_mode_state(k, spec, t);
  const double half = 0.5 * ssh_angle(k, spec.ssh().post);
  const double c = std::cos(half);
  const double sn = std::sin(half);
  return {c * s.amp0 - sn * s.amp1, -sn * s.amp0 - c * s.amp1};
}

}  // namespace dqpt
