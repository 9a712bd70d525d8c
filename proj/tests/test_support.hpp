#pragma once

#include <cmath>
#include <complex>
#include <random>

#include "dqpt/models.hpp"
#include "dqpt/smalllin.hpp"

namespace dqpt::testing {

inline lin::ComplexMatrix random_hermitian(std::mt19937_64& rng, int dim, double scale = 1.0) {
  std::normal_distribution<double> n(0.0, scale);
  lin::ComplexMatrix a(dim);
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) a(r, c) = {n(rng), n(rng)};
  }
  return a + a.adjoint();
}

inline lin::ComplexVector random_state(std::mt19937_64& rng, int dim) {
  std::normal_distribution<double> n(0.0, 1.0);
  lin::ComplexVector v(dim);
  for (int i = 0; i < dim; ++i) v[i] = {n(rng), n(rng)};
  const double norm = v.norm();
  for (int i = 0; i < dim; ++i) v[i] /= norm;
  return v;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

/// Gapped TFI quench with J = 1 and fields away from the critical value.
inline QuenchSpec random_tfi(std::mt19937_64& rng) {
  auto field = [&] {
    double h = uniform(rng, 0.1, 2.0);
    while (std::abs(h - 1.0) < 0.05) h = uniform(rng, 0.1, 2.0);
    return h;
  };
  return QuenchSpec(TfiQuench{{1.0, field()}, {1.0, field()}});
}

inline QuenchSpec random_ssh(std::mt19937_64& rng) {
  auto hop = [&](double t1) {
    double t2 = uniform(rng, 0.2, 2.0);
    while (std::abs(t2 - t1) < 0.05) t2 = uniform(rng, 0.2, 2.0);
    return t2;
  };
  const double t1 = uniform(rng, 0.5, 1.5);
  return QuenchSpec(SshQuench{{t1, hop(t1)}, {t1, hop(t1)}});
}

inline double max_abs_diff(const lin::ComplexMatrix& a, const lin::ComplexMatrix& b) {
  return (a - b).max_abs();
}

/// -sum p ln p in long double, an independent check on the entropy routines.
inline double shannon_long_double(std::initializer_list<long double> ps) {
  long double s = 0.0L;
  for (long double p : ps) {
    if (p > 0.0L) s -= p * std::log(p);
  }
  return static_cast<double>(s);
}

}  // namespace dqpt::testing
