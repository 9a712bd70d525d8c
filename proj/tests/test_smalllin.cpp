#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "dqpt/models.hpp"
#include "dqpt/smalllin.hpp"
#include "test_support.hpp"

using namespace dqpt;
using namespace dqpt::lin;
using dqpt::testing::max_abs_diff;

namespace {

ComplexMatrix reconstruct(const EigenSystem& es) {
  return es.vectors * ComplexMatrix::diagonal(es.values) * es.vectors.adjoint();
}

}  // namespace

TEST_CASE("eig_hermitian: identity and Pauli-x") {
  const EigenSystem id = eig_hermitian(ComplexMatrix::identity(2));
  CHECK(id.values[0] == doctest::Approx(1.0));
  CHECK(id.values[1] == doctest::Approx(1.0));
  CHECK(max_abs_diff(id.vectors, ComplexMatrix::identity(2)) < 1e-15);

  const EigenSystem px = eig_hermitian(ComplexMatrix(2, {0.0, 1.0, 1.0, 0.0}));
  CHECK(std::abs(px.values[0] + 1.0) < 1e-14);
  CHECK(std::abs(px.values[1] - 1.0) < 1e-14);
}

TEST_CASE("eig_hermitian: BdG matrix at k = pi/2 matches the dispersion") {
  const TfiParams p{1.0, 1.5};
  const EigenSystem es = eig_hermitian(tfi_bdg_matrix(std::numbers::pi / 2, p));
  const double eps = std::sqrt(1.5 * 1.5 + 1.0);
  CHECK(eps == doctest::Approx(1.802776).epsilon(1e-6));
  CHECK(std::abs(es.values[0] + eps) < 1e-12);
  CHECK(std::abs(es.values[1] - eps) < 1e-12);
}

TEST_CASE("eig_hermitian: reconstruction and unitarity over random inputs") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    const int dim = trial % 2 == 0 ? 2 : 4;
    const ComplexMatrix h = testing::random_hermitian(rng, dim, trial % 3 == 0 ? 10.0 : 1.0);
    const EigenSystem es = eig_hermitian(h);
    CHECK(max_abs_diff(reconstruct(es), h) < 1e-10);
    CHECK(max_abs_diff(es.vectors.adjoint() * es.vectors, ComplexMatrix::identity(dim)) < 1e-10);
    for (std::size_t i = 1; i < es.values.size(); ++i) CHECK(es.values[i - 1] <= es.values[i]);
  }
}

TEST_CASE("eig_hermitian: degenerate spectrum") {
  const ComplexMatrix h = ComplexMatrix::diagonal({2.0, -1.0, 2.0, -1.0});
  const EigenSystem es = eig_hermitian(h);
  CHECK(es.values[0] == doctest::Approx(-1.0));
  CHECK(es.values[3] == doctest::Approx(2.0));
  CHECK(max_abs_diff(reconstruct(es), h) < 1e-14);
}

TEST_CASE("eig_hermitian rejects non-Hermitian input and reports the asymmetry") {
  const ComplexMatrix m(2, {0.0, 1.0, 0.5, 0.0});
  CHECK_THROWS_WITH_AS(eig_hermitian(m), doctest::Contains("0.5"), std::invalid_argument);
}

TEST_CASE("evolve: zero time, eigenstate phase, Rabi rotation") {
  std::mt19937_64 rng(3);
  const ComplexMatrix h = testing::random_hermitian(rng, 4);
  const ComplexVector psi = testing::random_state(rng, 4);
  const ComplexVector same = evolve(h, psi, 0.0);
  for (int i = 0; i < 4; ++i) CHECK(same[i] == psi[i]);

  const double e1 = 0.7, t = 2.3;
  const ComplexVector phased = evolve(ComplexMatrix::diagonal({e1, -1.9}), {1.0, 0.0}, t);
  CHECK(std::abs(phased[0] - std::polar(1.0, -e1 * t)) < 1e-14);
  CHECK(std::abs(phased[1]) < 1e-14);

  const ComplexVector rabi =
      evolve(ComplexMatrix(2, {0.0, 1.0, 1.0, 0.0}), {1.0, 0.0}, std::numbers::pi / 2);
  CHECK(std::abs(rabi[0]) < 1e-12);
  CHECK(std::abs(rabi[1] - cplx(0.0, -1.0)) < 1e-12);
}

TEST_CASE("evolve preserves the norm") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 1000; ++trial) {
    const int dim = trial % 2 == 0 ? 2 : 4;
    const ComplexMatrix h = testing::random_hermitian(rng, dim);
    const ComplexVector psi = testing::random_state(rng, dim);
    const double t = testing::uniform(rng, -20.0, 20.0);
    CHECK(std::abs(evolve(h, psi, t).norm() - 1.0) < 1e-12);
  }
}

TEST_CASE("evolve rejects unnormalized states") {
  CHECK_THROWS_AS(evolve(ComplexMatrix::identity(2), {1.0, 1.0}, 1.0), std::invalid_argument);
}

TEST_CASE("partial_trace: product, Bell and two-mode squeezed states") {
  // |0><0| (x) |1><1| is index 1 = |01>.
  const DensityMatrix product = DensityMatrix::pure({0.0, 1.0, 0.0, 0.0});
  const ComplexMatrix keep_first = partial_trace(product, Subsystem::first).matrix();
  CHECK(max_abs_diff(keep_first, ComplexMatrix::diagonal({1.0, 0.0})) < 1e-15);
  const ComplexMatrix keep_second = partial_trace(product, Subsystem::second).matrix();
  CHECK(max_abs_diff(keep_second, ComplexMatrix::diagonal({0.0, 1.0})) < 1e-15);

  const double r = 1.0 / std::sqrt(2.0);
  const DensityMatrix bell = DensityMatrix::pure({r, 0.0, 0.0, r});
  CHECK(max_abs_diff(partial_trace(bell, Subsystem::first).matrix(),
                     ComplexMatrix::diagonal({0.5, 0.5})) < 1e-15);

  // alpha |00> + beta |11> with |alpha|^2 = 0.9 and a complex relative phase.
  const cplx alpha = std::sqrt(0.9);
  const cplx beta = std::polar(std::sqrt(0.1), 0.4);
  const DensityMatrix pair = DensityMatrix::pure({alpha, 0.0, 0.0, beta});
  CHECK(max_abs_diff(partial_trace(pair, Subsystem::first).matrix(),
                     ComplexMatrix::diagonal({0.9, 0.1})) < 1e-15);
}

TEST_CASE("partial_trace requires a 4-dimensional state") {
  CHECK_THROWS_AS(partial_trace(DensityMatrix::pure({1.0, 0.0}), Subsystem::first),
                  std::invalid_argument);
}

TEST_CASE("partial_trace: trace, Hermiticity and Schmidt symmetry") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 500; ++trial) {
    const DensityMatrix rho = DensityMatrix::pure(testing::random_state(rng, 4));
    const DensityMatrix a = partial_trace(rho, Subsystem::first);
    const DensityMatrix b = partial_trace(rho, Subsystem::second);
    CHECK(std::abs(a.matrix().trace() - 1.0) < 1e-12);
    CHECK(a.matrix().max_asymmetry() < 1e-12);
    CHECK(std::abs(von_neumann_entropy(a) - von_neumann_entropy(b)) < 1e-12);
  }
}

TEST_CASE("von_neumann_entropy examples") {
  std::mt19937_64 rng(23);
  CHECK(std::abs(von_neumann_entropy(DensityMatrix::pure(testing::random_state(rng, 4)))) <
        1e-12);
  CHECK(von_neumann_entropy(DensityMatrix(ComplexMatrix::diagonal({0.5, 0.5}))) ==
        doctest::Approx(std::numbers::ln2).epsilon(1e-14));

  const double expected = testing::shannon_long_double({0.912668L, 0.087332L});
  CHECK(std::abs(expected - 0.296321195454988) < 1e-12);
  CHECK(std::abs(von_neumann_entropy(DensityMatrix(ComplexMatrix::diagonal({0.912668, 0.087332}))) -
                 expected) < 1e-14);
}

TEST_CASE("von_neumann_entropy is unitarily invariant and bounded") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 300; ++trial) {
    const int dim = trial % 2 == 0 ? 2 : 4;
    // Mixed state: convex combination of two pure states.
    const ComplexVector a = testing::random_state(rng, dim);
    const ComplexVector b = testing::random_state(rng, dim);
    const double w = testing::uniform(rng, 0.0, 1.0);
    const ComplexMatrix m = ComplexMatrix::outer(a, a) * w + ComplexMatrix::outer(b, b) * (1.0 - w);
    const DensityMatrix rho(m);
    const ComplexMatrix u = propagator(testing::random_hermitian(rng, dim), 1.0);
    const DensityMatrix rotated(u * m * u.adjoint());
    const double s = von_neumann_entropy(rho);
    CHECK(std::abs(s - von_neumann_entropy(rotated)) < 1e-10);
    CHECK(s >= 0.0);
    CHECK(s <= std::log(static_cast<double>(dim)) + 1e-12);
  }
}

TEST_CASE("DensityMatrix rejects bad trace, asymmetry and negative weight") {
  CHECK_THROWS_AS(DensityMatrix(ComplexMatrix::diagonal({0.6, 0.6})), std::invalid_argument);
  CHECK_THROWS_AS(DensityMatrix(ComplexMatrix(2, {0.5, 0.1, 0.0, 0.5})), std::invalid_argument);
  CHECK_THROWS_AS(DensityMatrix(ComplexMatrix::diagonal({1.1, -0.1})), std::invalid_argument);
  // Rounding-level negativity is clamped, not rejected.
  CHECK(von_neumann_entropy(DensityMatrix(ComplexMatrix::diagonal({1.0 + 1e-13, -1e-13}))) ==
        doctest::Approx(0.0));
}

TEST_CASE("kron follows index = 2 * first + second") {
  const ComplexMatrix a(2, {1.0, 2.0, 3.0, 4.0});
  const ComplexMatrix b(2, {0.0, 1.0, 1.0, 0.0});
  const ComplexMatrix k = kron(a, b);
  CHECK(k(0, 1) == cplx(1.0));
  CHECK(k(2, 3) == cplx(4.0));
  CHECK(k(1, 2) == cplx(2.0));
  CHECK(k(3, 3) == cplx(0.0));
}
