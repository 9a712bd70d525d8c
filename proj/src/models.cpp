#include "dqpt/models.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace dqpt {

namespace {

std::string momentum_message(const char* what, double k) {
  std::ostringstream msg;
  msg.precision(17);
  msg << what << " at k = " << k;
  return msg.str();
}

}  // namespace

std::string to_string(Model m) { return m == Model::tfi ? "tfi" : "ssh"; }

GaplessPointError::GaplessPointError(double k, const std::string& what)
    : std::domain_error(momentum_message(what.c_str(), k)), k_(k) {}

void TfiParams::validate() const {
  if (!(j > 0.0) || !std::isfinite(j)) {
    throw std::invalid_argument("TFI coupling j must be positive");
  }
  if (!std::isfinite(h)) throw std::invalid_argument("TFI field h must be finite");
}

void SshParams::validate() const {
  if (!(t1 >= 0.0) || !(t2 >= 0.0) || !std::isfinite(t1) || !std::isfinite(t2)) {
    throw std::invalid_argument("SSH hoppings t1, t2 must be non-negative");
  }
  if (t1 == 0.0 && t2 == 0.0) {
    throw std::invalid_argument("SSH hoppings t1 and t2 cannot both vanish");
  }
}

QuenchSpec::QuenchSpec(TfiQuench q) : q_(q) {
  q.pre.validate();
  q.post.validate();
}

QuenchSpec::QuenchSpec(SshQuench q) : q_(q) {
  q.pre.validate();
  q.post.validate();
}

Model QuenchSpec::model() const {
  return std::holds_alternative<TfiQuench>(q_) ? Model::tfi : Model::ssh;
}

const TfiQuench& QuenchSpec::tfi() const {
  if (const auto* q = std::get_if<TfiQuench>(&q_)) return *q;
  throw std::logic_error("QuenchSpec holds an SSH quench, not TFI");
}

const SshQuench& QuenchSpec::ssh() const {
  if (const auto* q = std::get_if<SshQuench>(&q_)) return *q;
  throw std::logic_error("QuenchSpec holds a TFI quench, not SSH");
}

ModeGrid ModeGrid::make(Model model, int n_cells) {
  if (n_cells < 2) throw std::invalid_argument("n_cells must be >= 2");
  ModeGrid g{model, n_cells, {}};
  const double n = static_cast<double>(n_cells);
  if (model == Model::tfi) {
    g.momenta.reserve(static_cast<std::size_t>(n_cells / 2));
    for (int m = 0; m < n_cells / 2; ++m) {
      g.momenta.push_back((2.0 * m + 1.0) * std::numbers::pi / n);
    }
  } else {
    g.momenta.reserve(static_cast<std::size_t>(n_cells));
    for (int m = 0; m < n_cells; ++m) {
      g.momenta.push_back(2.0 * std::numbers::pi * m / n - std::numbers::pi);
    }
  }
  return g;
}

lin::ComplexMatrix tfi_bdg_matrix(double k, const TfiParams& p) {
  const double diag = -p.j * std::cos(k) - p.h;
  const double off = p.j * std::sin(k);
  return lin::ComplexMatrix(2, {diag, lin::cplx(0.0, off),
                                lin::cplx(0.0, -off), -diag});
}

// For J != 1 the pairing and kinetic terms are taken straight from the BdG
// matrix, so the angle always diagonalizes tfi_bdg_matrix.
double tfi_angle(double k, const TfiParams& p) {
  const double y = p.j * std::sin(k);
  const double x = p.h + p.j * std::cos(k);
  if (std::hypot(x, y) < kGaplessTolerance) {
    throw GaplessPointError(k, "TFI Bogoliubov angle undefined (gapless point)");
  }
  return 0.5 * std::atan2(y, x);
}

double tfi_dispersion(double k, const TfiParams& p) {
  return std::hypot(p.h + p.j * std::cos(k), p.j * std::sin(k));
}

double BlochVector::norm() const { return std::sqrt(x * x + y * y + z * z); }

BlochVector ssh_bloch_vector(double k, const SshParams& p) {
  return {p.t1 + p.t2 * std::cos(k), p.t2 * std::sin(k), 0.0};
}

double ssh_angle(double k, const SshParams& p) {
  const BlochVector d = ssh_bloch_vector(k, p);
  if (d.norm() < kGaplessTolerance) {
    throw GaplessPointError(k, "SSH Bloch vector vanishes (gapless point)");
  }
  return std::atan2(d.y, d.x);
}

lin::ComplexMatrix ssh_bloch_matrix(double k, const SshParams& p) {
  const BlochVector d = ssh_bloch_vector(k, p);
  return lin::ComplexMatrix(2, {d.z, lin::cplx(d.x, -d.y),
                                lin::cplx(d.x, d.y), -d.z});
}

double unit_bloch_overlap(double k, const SshQuench& q) {
  const BlochVector di = ssh_bloch_vector(k, q.pre);
  const BlochVector df = ssh_bloch_vector(k, q.post);
  const double ni = di.norm();
  const double nf = df.norm();
  if (ni < kGaplessTolerance || nf < kGaplessTolerance) {
    throw GaplessPointError(k, "SSH Bloch vector vanishes (gapless point)");
  }
  return (di.x * df.x + di.y * df.y + di.z * df.z) / (ni * nf);
}

ModeAngles mode_angles(double k, const QuenchSpec& spec) {
  ModeAngles a{};
  if (spec.model() == Model::tfi) {
    const TfiQuench& q = spec.tfi();
    a.theta_pre = tfi_angle(k, q.pre);
    a.theta_post = tfi_angle(k, q.post);
    a.energy_post = tfi_dispersion(k, q.post);
  } else {
    const SshQuench& q = spec.ssh();
    a.theta_pre = ssh_angle(k, q.pre);
    a.theta_post = ssh_angle(k, q.post);
    a.energy_post = ssh_bloch_vector(k, q.post).norm();
  }
  a.delta_theta = a.theta_post - a.theta_pre;
  return a;
}

}  // namespace dqpt
