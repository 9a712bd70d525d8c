#include "dqpt/oracle.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "dqpt/diagnostics.hpp"
#include "dqpt/parallel.hpp"

namespace dqpt::oracle {

using lin::ComplexMatrix;
using lin::ComplexVector;
using lin::cplx;
using lin::Subsystem;

namespace {

const ComplexMatrix& sigma_minus() {
  static const ComplexMatrix m(2, {0.0, 1.0, 0.0, 0.0});
  return m;
}

const ComplexMatrix& parity_string() {
  static const ComplexMatrix m(2, {1.0, 0.0, 0.0, -1.0});
  return m;
}

// Re-expresses psi in the eigenbasis of h, placing the eigenvector of rank
// order[j] (ascending energy) on basis index j.
ComplexVector in_eigenbasis(const ComplexMatrix& h, const ComplexVector& psi,
                            const int (&order)[4]) {
  const lin::EigenSystem es = lin::eig_hermitian(h);
  ComplexVector out(4);
  for (int j = 0; j < 4; ++j) out[j] = es.vectors.column(order[j]).dot(psi);
  return out;
}

}  // namespace

std::string to_string(FockLabel label) {
  switch (label) {
    case FockLabel::n_first: return "n_first";
    case FockLabel::n_second: return "n_second";
    case FockLabel::hamiltonian: return "hamiltonian";
    case FockLabel::creation_first: return "creation_first";
    case FockLabel::creation_second: return "creation_second";
    case FockLabel::annihilation_first: return "annihilation_first";
    case FockLabel::annihilation_second: return "annihilation_second";
  }
  return "?";
}

FockOperator annihilation(Subsystem mode) {
  if (mode == Subsystem::first) {
    return {FockLabel::annihilation_first,
            lin::kron(sigma_minus(), ComplexMatrix::identity(2))};
  }
  return {FockLabel::annihilation_second, lin::kron(parity_string(), sigma_minus())};
}

FockOperator creation(Subsystem mode) {
  const FockOperator a = annihilation(mode);
  return {mode == Subsystem::first ? FockLabel::creation_first
                                   : FockLabel::creation_second,
          a.matrix.adjoint()};
}

FockOperator number(Subsystem mode) {
  return {mode == Subsystem::first ? FockLabel::n_first : FockLabel::n_second,
          creation(mode).matrix * annihilation(mode).matrix};
}

FockOperator build_tfi_pair_hamiltonian(double k, const TfiParams& p) {
  const double a = -p.j * std::cos(k) - p.h;
  const double b = p.j * std::sin(k);
  const ComplexMatrix c1 = annihilation(Subsystem::first).matrix;
  const ComplexMatrix c2 = annihilation(Subsystem::second).matrix;
  const ComplexMatrix c1d = c1.adjoint();
  const ComplexMatrix c2d = c2.adjoint();
  const ComplexMatrix n_sum = c1d * c1 + c2d * c2;
  const ComplexMatrix h = (n_sum - ComplexMatrix::identity(4)) * a +
                          (c1d * c2d) * cplx(0.0, b) - (c2 * c1) * cplx(0.0, b);
  return {FockLabel::hamiltonian, h};
}

FockOperator build_ssh_pair_hamiltonian(double k, const SshParams& p) {
  const double dx = p.t1 + p.t2 * std::cos(k);
  const double dy = p.t2 * std::sin(k);
  const ComplexMatrix ca = annihilation(Subsystem::first).matrix;
  const ComplexMatrix cb = annihilation(Subsystem::second).matrix;
  const ComplexMatrix hop = (ca.adjoint() * cb) * cplx(dx, -dy);
  return {FockLabel::hamiltonian, hop + hop.adjoint()};
}

FockOperator pair_hamiltonian(double k, const QuenchSpec& spec, bool post) {
  if (spec.model() == Model::tfi) {
    const TfiQuench& q = spec.tfi();
    return build_tfi_pair_hamiltonian(k, post ? q.post : q.pre);
  }
  const SshQuench& q = spec.ssh();
  return build_ssh_pair_hamiltonian(k, post ? q.post : q.pre);
}

ComplexVector ground_state(const FockOperator& h, double k) {
  const lin::EigenSystem es = lin::eig_hermitian(h.matrix);
  if (es.values[1] - es.values[0] < kGaplessTolerance) {
    throw GaplessPointError(k, "oracle: degenerate ground state");
  }
  return es.vectors.column(0);
}

ComplexVector evolved_state(double k, const QuenchSpec& spec, double t) {
  const ComplexVector psi0 = ground_state(pair_hamiltonian(k, spec, false), k);
  const FockOperator h_post = pair_hamiltonian(k, spec, true);
  // Gap check on the post-quench side as well.
  ground_state(h_post, k);
  return lin::evolve(h_post.matrix, psi0, t);
}

double oracle_entropy(double k, const QuenchSpec& spec, double t, SshBipartition split) {
  const ComplexVector psi = evolved_state(k, spec, t);
  const ComplexMatrix h_post = pair_hamiltonian(k, spec, true).matrix;
  ComplexVector in_modes = psi;
  if (spec.model() == Model::tfi) {
    // lowest -> |0~0~>, highest -> |1~1~>; the odd block is never populated.
    static constexpr int order[4] = {0, 1, 2, 3};
    in_modes = in_eigenbasis(h_post, psi, order);
  } else if (split == SshBipartition::band) {
    // lower band -> |01>, upper band -> |10>.
    static constexpr int order[4] = {1, 0, 3, 2};
    in_modes = in_eigenbasis(h_post, psi, order);
  }
  const lin::DensityMatrix rho = lin::DensityMatrix::pure(in_modes);
  return lin::von_neumann_entropy(lin::partial_trace(rho, Subsystem::first));
}

cplx oracle_loschmidt_amplitude(double k, const QuenchSpec& spec, double t) {
  const ComplexVector psi0 = ground_state(pair_hamiltonian(k, spec, false), k);
  const FockOperator h_post = pair_hamiltonian(k, spec, true);
  ground_state(h_post, k);
  return psi0.dot(lin::evolve(h_post.matrix, psi0, t));
}

double oracle_loschmidt(double k, const QuenchSpec& spec, double t) {
  return std::norm(oracle_loschmidt_amplitude(k, spec, t));
}

double oracle_otoc(double k, const QuenchSpec& spec, double t) {
  const ComplexVector psi0 = ground_state(pair_hamiltonian(k, spec, false), k);
  const FockOperator h_post = pair_hamiltonian(k, spec, true);
  ground_state(h_post, k);
  const ComplexMatrix u = lin::propagator(h_post.matrix, t);
  const ComplexMatrix w_t = u.adjoint() * number(Subsystem::first).matrix * u;
  const ComplexMatrix v = number(Subsystem::second).matrix;
  const ComplexMatrix comm = w_t * v - v * w_t;
  const cplx c = -psi0.dot((comm * comm) * psi0);
  if (std::abs(c.imag()) > kOtocImagTolerance) {
    throw std::logic_error("oracle_otoc: imaginary part " + std::to_string(c.imag()) +
                           " exceeds tolerance");
  }
  return c.real();
}

ClosedForms ClosedForms::standard() {
  return {[](double k, const QuenchSpec& s, double) { return mode_entropy(k, s); },
          [](double k, const QuenchSpec& s, double t) { return loschmidt_echo(k, s, t); },
          [](double k, const QuenchSpec& s, double t) { return mode_otoc(k, s, t); }};
}

std::string to_string(Diagnostic d) {
  switch (d) {
    case Diagnostic::entropy: return "entropy";
    case Diagnostic::echo: return "echo";
    case Diagnostic::otoc: return "otoc";
  }
  return "?";
}

const Deviation& ComparisonReport::worst() const {
  if (deviations.empty()) throw std::logic_error("empty comparison report");
  const Deviation* w = &deviations.front();
  for (const Deviation& d : deviations) {
    if (d.max_abs > w->max_abs) w = &d;
  }
  return *w;
}

bool ComparisonReport::passes(double tol) const {
  for (const Deviation& d : deviations) {
    if (!(d.max_abs < tol)) return false;
  }
  return cells > 0;
}

VerificationGrid VerificationGrid::standard(Model model, int n_k, int n_t, double t_min,
                                            double t_max) {
  if (n_k < 1 || n_t < 2 || !(t_min < t_max)) {
    throw std::invalid_argument("VerificationGrid: bad grid shape");
  }
  VerificationGrid g;
  const double lo = model == Model::tfi ? 0.0 : -std::numbers::pi;
  const double width = std::numbers::pi - lo;
  for (int i = 0; i < n_k; ++i) g.momenta.push_back(lo + (i + 0.5) * width / n_k);
  for (int j = 0; j < n_t; ++j) {
    g.times.push_back(t_min + (t_max - t_min) * j / (n_t - 1));
  }
  return g;
}

ComparisonReport compare_with_oracle(const QuenchSpec& spec, const VerificationGrid& grid,
                                     const ClosedForms& forms, int threads) {
  const std::size_t nk = grid.momenta.size();
  const std::size_t nt = grid.times.size();
  // diff[d][i * nt + j]; rows of gapless modes are flagged and ignored.
  std::vector<std::vector<double>> diff(3, std::vector<double>(nk * nt, 0.0));
  std::vector<unsigned char> skipped(nk, 0);

  parallel_for(nk, threads, [&](std::size_t i) {
    const double k = grid.momenta[i];
    try {
      for (std::size_t j = 0; j < nt; ++j) {
        const double t = grid.times[j];
        diff[0][i * nt + j] = std::abs(forms.entropy(k, spec, t) - oracle_entropy(k, spec, t));
        diff[1][i * nt + j] = std::abs(forms.echo(k, spec, t) - oracle_loschmidt(k, spec, t));
        diff[2][i * nt + j] = std::abs(forms.otoc(k, spec, t) - oracle_otoc(k, spec, t));
      }
    } catch (const GaplessPointError&) {
      skipped[i] = 1;
    }
  });

  ComparisonReport report;
  const Diagnostic kinds[3] = {Diagnostic::entropy, Diagnostic::echo, Diagnostic::otoc};
  for (int d = 0; d < 3; ++d) report.deviations.push_back({kinds[d]});
  for (std::size_t i = 0; i < nk; ++i) {
    if (skipped[i]) {
      ++report.skipped_modes;
      continue;
    }
    for (std::size_t j = 0; j < nt; ++j) {
      ++report.cells;
      for (int d = 0; d < 3; ++d) {
        double v = diff[static_cast<std::size_t>(d)][i * nt + j];
        // NaN counts as a failure, never as agreement.
        if (std::isnan(v)) v = std::numeric_limits<double>::infinity();
        Deviation& dev = report.deviations[static_cast<std::size_t>(d)];
        if (v > dev.max_abs) {
          dev.max_abs = v;
          dev.worst_k = grid.momenta[i];
          dev.worst_t = grid.times[j];
        }
      }
    }
  }
  return report;
}

}  // namespace dqpt::oracle
