#pragma once

// Closed-form mode-resolved diagnostics: momentum-space entanglement entropy,
// Loschmidt amplitude/echo (and the global rate function) and the OTOC.

#include <cstddef>

#include "dqpt/models.hpp"
#include "dqpt/smalllin.hpp"

namespace dqpt {

struct DiagnosticsSample {
  double k;
  double t;
  double entropy;
  double loschmidt_echo;
  double otoc;
};

struct RateFunctionSample {
  double t;
  double lambda;
};

/// Per-mode echoes are floored here before the logarithm.
inline constexpr double kEchoLogFloor = 1e-300;

/// -p ln p - (1-p) ln(1-p), with 0 ln 0 = 0.
double binary_entropy(double p);

/// p = cos^2(dtheta); time independent.
double entropy_tfi(double k, const QuenchSpec& spec);

/// q = cos^2(dtheta/2); time independent.
double entropy_ssh(double k, const QuenchSpec& spec);

double mode_entropy(double k, const QuenchSpec& spec);

/// G_k(t) = <psi_k(0)|psi_k(t)>.
/// TFI: cos^2(dtheta) e^{i eps t} + sin^2(dtheta) e^{-i eps t}
///      = cos(eps t) + i cos(2 dtheta) sin(eps t).
/// SSH: cos(E t) + i (d^i . d^f) sin(E t) with unit Bloch vectors.
lin::cplx loschmidt_amplitude(double k, const QuenchSpec& spec, double t);

/// |a|^4 + |b|^4 + 2|a|^2|b|^2 cos(2 eps t), evaluated in the equivalent
/// cancellation-free form cos^2(2 dtheta) + sin^2(2 dtheta) cos^2(eps t) so
/// that the echo at a Fisher zero is not swamped by rounding.
double loschmidt_echo_tfi(double k, const QuenchSpec& spec, double t);

/// |G_k(t)|^2 for either model.
double loschmidt_echo(double k, const QuenchSpec& spec, double t);

struct RateValue {
  double lambda;
  std::size_t skipped_modes;
};

/// lambda(t) = -(1/N) sum_k ln L_k(t) over the grid. Gapless modes are
/// skipped and counted. Reduction is pairwise in grid order, so the value is
/// identical for every thread count.
RateValue rate_function(const QuenchSpec& spec, const ModeGrid& grid, double t,
                        int threads = 1);

/// sin^2(2 theta~) sin^2(eps t) cos^2(2 dtheta)
double otoc_tfi(double k, const QuenchSpec& spec, double t);

/// sin^2(theta^f) sin^2(|d^f| t) cos^2(dtheta)
double otoc_ssh(double k, const QuenchSpec& spec, double t);

double mode_otoc(double k, const QuenchSpec& spec, double t);

}  // namespace dqpt
