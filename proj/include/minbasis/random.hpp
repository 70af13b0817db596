#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>

#include "polymat.hpp"

namespace minbasis {

enum class Distribution { gaussian, uniform };

inline const char* to_string(Distribution d) { return d == Distribution::gaussian ? "gaussian" : "uniform"; }

inline Distribution parse_distribution(const std::string& s) {
  if (s == "gaussian") return Distribution::gaussian;
  if (s == "uniform") return Distribution::uniform;
  throw ParseError("unknown distribution '" + s + "' (expected gaussian or uniform)");
}

using Rng = std::mt19937_64;

/// Independent stream for trial `trial` of an experiment seeded with `seed`,
/// so results do not depend on the order in which trials run.
inline Rng trial_rng(std::uint64_t seed, std::uint64_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32), 0x6d62u};
  return Rng(seq);
}

namespace detail {

inline double draw_real(Rng& rng, Distribution dist) {
  if (dist == Distribution::gaussian) return std::normal_distribution<double>(0.0, 1.0)(rng);
  return std::uniform_real_distribution<double>(-1.0, 1.0)(rng);
}

template <FieldScalar T>
T draw(Rng& rng, Distribution dist) {
  if constexpr (std::same_as<T, double>) {
    return draw_real(rng, dist);
  } else {
    // Real and imaginary parts are sampled independently.
    const double re = draw_real(rng, dist);
    const double im = draw_real(rng, dist);
    return Complex(re, im);
  }
}

}  // namespace detail

template <FieldScalar T>
Mat<T> random_matrix(Index rows, Index cols, Rng& rng, Distribution dist = Distribution::gaussian) {
  Mat<T> a(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) a(i, j) = detail::draw<T>(rng, dist);
  return a;
}

/// I.i.d. coefficients; with zero_leading the top coefficient C_d is zero.
template <FieldScalar T>
PolyMat<T> random_polymat(Index rows, Index cols, int degree_bound, Rng& rng,
                          Distribution dist = Distribution::gaussian, bool zero_leading = false) {
  std::vector<Mat<T>> c;
  for (int i = 0; i <= degree_bound; ++i) {
    if (zero_leading && i == degree_bound && degree_bound > 0)
      c.push_back(Mat<T>::Zero(rows, cols));
    else
      c.push_back(random_matrix<T>(rows, cols, rng, dist));
  }
  return PolyMat<T>(std::move(c));
}

/// Random direction rescaled so that ||S_1(dP)||_2 equals `norm`.
template <FieldScalar T>
PolyMat<T> random_perturbation(Index rows, Index cols, int degree_bound, double norm, Rng& rng) {
  PolyMat<T> p = random_polymat<T>(rows, cols, degree_bound, rng);
  const double s = s1_norms(p).spectral;
  return T(norm / s) * p;
}

/// Uniform point in the complex disk of the given radius.
inline Complex random_in_disk(Rng& rng, double radius) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double r = radius * std::sqrt(u(rng));
  const double phi = 2.0 * std::numbers::pi * u(rng);
  return std::polar(r, phi);
}

/// Uniform point on the circle of the given radius.
inline Complex random_on_circle(Rng& rng, double radius) {
  std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
  return std::polar(radius, u(rng));
}

}  // namespace minbasis
