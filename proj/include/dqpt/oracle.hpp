#pragma once

// Brute-force per-mode oracle. Everything here is built from explicit 4x4
// Fock-space matrices (Jordan-Wigner ladder operators, numerical ground
// states, exact propagators) and never calls the closed forms.

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "dqpt/models.hpp"
#include "dqpt/smalllin.hpp"

namespace dqpt::oracle {

enum class FockLabel {
  n_first,
  n_second,
  hamiltonian,
  creation_first,
  creation_second,
  annihilation_first,
  annihilation_second,
};

std::string to_string(FockLabel label);

/// A 4x4 operator on the two-mode Fock space, index = 2 n_first + n_second.
struct FockOperator {
  FockLabel label;
  lin::ComplexMatrix matrix{4};
};

/// a_1 = sigma^- (x) 1, a_2 = Z (x) sigma^-.
FockOperator annihilation(lin::Subsystem mode);
FockOperator creation(lin::Subsystem mode);
FockOperator number(lin::Subsystem mode);

/// a (n_1 + n_2 - 1) + i b c_1^+ c_2^+ - i b c_2 c_1, a = -J cos k - h,
/// b = J sin k; (first, second) = (k, -k).
FockOperator build_tfi_pair_hamiltonian(double k, const TfiParams& p);

/// (d_x - i d_y) c_A^+ c_B + h.c.; (first, second) = (A, B).
FockOperator build_ssh_pair_hamiltonian(double k, const SshParams& p);

FockOperator pair_hamiltonian(double k, const QuenchSpec& spec, bool post);

/// Lowest eigenvector of h. Throws GaplessPointError when the two lowest
/// levels are closer than kGaplessTolerance.
lin::ComplexVector ground_state(const FockOperator& h, double k);

/// exp(-i H_post t) |psi_0>, psi_0 the numerical pre-quench ground state.
lin::ComplexVector evolved_state(double k, const QuenchSpec& spec, double t);

/// Which two modes the SSH entropy is computed between. The sublattice
/// split (A | B) is the default; `band` splits between the post-quench
/// upper and lower band orbitals instead.
enum class SshBipartition { sublattice, band };

/// TFI: reduced state of the k quasiparticle of the post-quench Hamiltonian.
/// SSH: reduced state of the A sublattice (or upper band, see above).
double oracle_entropy(double k, const QuenchSpec& spec, double t,
                      SshBipartition split = SshBipartition::sublattice);

lin::cplx oracle_loschmidt_amplitude(double k, const QuenchSpec& spec, double t);

/// |<psi_0| exp(-i H_post t) |psi_0>|^2
double oracle_loschmidt(double k, const QuenchSpec& spec, double t);

/// Imaginary part of the OTOC allowed before it is reported as a failure.
inline constexpr double kOtocImagTolerance = 1e-10;

/// -<psi_0|[W(t), V]^2|psi_0> with W = n_first, V = n_second and
/// W(t) = U^+ W U. Throws std::logic_error if the result is not real.
double oracle_otoc(double k, const QuenchSpec& spec, double t);

// --- closed form vs oracle comparison -------------------------------------

using ModeFunction = std::function<double(double k, const QuenchSpec&, double t)>;

/// The closed forms under test. Defaults to the diagnostics module; tests
/// substitute corrupted versions to check that the comparison can fail.
struct ClosedForms {
  ModeFunction entropy;
  ModeFunction echo;
  ModeFunction otoc;

  static ClosedForms standard();
};

enum class Diagnostic { entropy, echo, otoc };

std::string to_string(Diagnostic d);

struct Deviation {
  Diagnostic diagnostic;
  double max_abs = 0.0;
  double worst_k = 0.0;
  double worst_t = 0.0;
};

struct ComparisonReport {
  std::vector<Deviation> deviations;  // entropy, echo, otoc
  std::size_t cells = 0;
  std::size_t skipped_modes = 0;

  const Deviation& worst() const;
  bool passes(double tol) const;
};

/// n_k x n_t cell-centred grid: TFI k in (0, pi), SSH k in (-pi, pi),
/// t evenly spaced on [t_min, t_max] inclusive.
struct VerificationGrid {
  std::vector<double> momenta;
  std::vector<double> times;

  static VerificationGrid standard(Model model, int n_k = 40, int n_t = 40,
                                   double t_min = 0.0, double t_max = 10.0);
};

ComparisonReport compare_with_oracle(const QuenchSpec& spec, const VerificationGrid& grid,
                                     const ClosedForms& forms = ClosedForms::standard(),
                                     int threads = 1);

}  // namespace dqpt::oracle
