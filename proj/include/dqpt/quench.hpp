#pragma once

// Closed-form per-mode state after a sudden quench.

#include "dqpt/models.hpp"
#include "dqpt/smalllin.hpp"

namespace dqpt {

enum class ModeBasis {
  tfi_pair,  // {|0~_k 0~_-k>, |1~_k 1~_-k>} of the post-quench quasiparticles
  ssh_band,  // {|psi_+^f>, |psi_-^f>} post-quench upper/lower band
};

struct ModeState {
  double k;
  ModeBasis basis;
  lin::cplx amp0;
  lin::cplx amp1;
  double energy_post;

  double norm() const;
};

/// (cos dtheta e^{+i eps t}, sin dtheta e^{-i eps t})
ModeState tfi_mode_state(double k, const QuenchSpec& spec, double t);

/// (-sin(dtheta/2) e^{-i E t}, -cos(dtheta/2) e^{+i E t}), E = |d_k^f|
ModeState ssh_mode_state(double k, const QuenchSpec& spec, double t);

ModeState mode_state(double k, const QuenchSpec& spec, double t);

/// Amplitudes on the sublattice occupation states |10>, |01>.
struct SublatticeAmplitudes {
  lin::cplx a;
  lin::cplx b;
};

/// Band amplitudes mapped back with the post-quench band spinors
/// psi_+ = (cos(theta/2), -sin(theta/2)), psi_- = -(sin(theta/2), cos(theta/2)).
/// These are eigenvectors of |d|(cos theta sigma_z - sin theta sigma_x), the
/// real frame in which the lower band reads sin(theta/2)|10> + cos(theta/2)|01>.
SublatticeAmplitudes ssh_sublattice_state(double k, const QuenchSpec& spec,
                                          double t);

}  // namespace dqpt
