#pragma once

// Single-mode Hamiltonians of the transverse-field Ising (TFI) and
// Su-Schrieffer-Heeger (SSH) chains, their diagonalizing angles and the
// momentum grids they live on.

#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "dqpt/smalllin.hpp"

namespace dqpt {

enum class Model { tfi, ssh };

std::string to_string(Model m);

/// Energies below this are treated as gap closings.
inline constexpr double kGaplessTolerance = 1e-12;

/// Raised when a mode sits on a gap closing; carries the offending momentum.
class GaplessPointError : public std::domain_error {
 public:
  GaplessPointError(double k, const std::string& what);
  double momentum() const { return k_; }

 private:
  double k_;
};

struct TfiParams {
  double j = 1.0;
  double h = 0.0;

  void validate() const;
  bool operator==(const TfiParams&) const = default;
};

struct SshParams {
  double t1 = 1.0;
  double t2 = 1.0;

  void validate() const;
  bool operator==(const SshParams&) const = default;
};

struct TfiQuench {
  TfiParams pre;
  TfiParams post;

  bool operator==(const TfiQuench&) const = default;
};

struct SshQuench {
  SshParams pre;
  SshParams post;

  bool operator==(const SshQuench&) const = default;
};

/// Model tag plus pre- and post-quench parameters of matching type.
class QuenchSpec {
 public:
  QuenchSpec(TfiQuench q);
  QuenchSpec(SshQuench q);

  Model model() const;
  const TfiQuench& tfi() const;
  const SshQuench& ssh() const;

  bool operator==(const QuenchSpec&) const = default;

 private:
  std::variant<TfiQuench, SshQuench> q_;
};

/// TFI: k = (2m+1)pi/N, m = 0..N/2-1 (antiperiodic sector, k > 0).
/// SSH: k = 2 pi m / N - pi, m = 0..N-1.
struct ModeGrid {
  Model model;
  int n_cells;
  std::vector<double> momenta;

  static ModeGrid make(Model model, int n_cells);
};

struct ModeAngles {
  double theta_pre;
  double theta_post;
  double delta_theta;
  double energy_post;
};

lin::ComplexMatrix tfi_bdg_matrix(double k, const TfiParams& p);

/// Half-angle convention: theta = atan2(J sin k, h + cos k) / 2.
double tfi_angle(double k, const TfiParams& p);

double tfi_dispersion(double k, const TfiParams& p);

struct BlochVector {
  double x;
  double y;
  double z;

  double norm() const;
};

BlochVector ssh_bloch_vector(double k, const SshParams& p);

/// Polar angle of the Bloch vector in the xy plane, in (-pi, pi].
double ssh_angle(double k, const SshParams& p);

/// 2x2 Bloch Hamiltonian d_k . sigma in the (A, B) sublattice basis.
lin::ComplexMatrix ssh_bloch_matrix(double k, const SshParams& p);

/// d^i . d^f / (|d^i| |d^f|); equals cos(dtheta) for Bloch vectors in the
/// xy plane.
double unit_bloch_overlap(double k, const SshQuench& q);

ModeAngles mode_angles(double k, const QuenchSpec& spec);

}  // namespace dqpt
