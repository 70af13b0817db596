#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "fullsyl.hpp"
#include "minimal.hpp"
#include "polymat.hpp"
#include "random.hpp"
#include "sylvester.hpp"

namespace minbasis {

enum class RadiusKind { minimal_basis, full_sylvester, sharp_flat };

inline const char* to_string(RadiusKind k) {
  switch (k) {
    case RadiusKind::minimal_basis: return "minimal_basis";
    case RadiusKind::full_sylvester: return "full_sylvester";
    case RadiusKind::sharp_flat: return "sharp_flat";
  }
  return "?";
}

/// sigma_min(S_k) / sqrt(k) for one Sylvester index.
struct RadiusCandidate {
  int k = 0;
  double sigma = 0.0;
  double radius = 0.0;
};

struct RadiusReport {
  double radius = 0.0;
  int k_used = 0;
  std::vector<RadiusCandidate> scanned;
  RadiusKind kind = RadiusKind::minimal_basis;
};

namespace detail {

template <FieldScalar T>
RadiusCandidate radius_candidate(const PolyMat<T>& m, int k) {
  const double s = min_singular_value(sylvester(m, k).data);
  return {k, s, s / std::sqrt(static_cast<double>(k))};
}

/// Additive slack for floating "<=" checks on singular values.
inline double slack(double a, double b) { return 1e-12 * (1.0 + std::abs(a) + std::abs(b)); }

}  // namespace detail

/// Radius of a ball (in ||S_1(.)||_2) of minimal bases with full-rank leading
/// coefficient around M: max over k = k0..k0+scan_extra of
/// sigma_{(k+d)m}(S_k)/sqrt(k), k0 the first k with S_k of full row rank.
template <FieldScalar T>
RadiusReport robustness_radius_minimal(const PolyMat<T>& m, int scan_extra = 3,
                                       std::optional<double> tol = std::nullopt) {
  if (scan_extra < 0) throw PreconditionError("scan_extra must be non-negative");
  const Certificate lead = certify_full_leading(m, tol);  // throws on rank(C_d) < m
  if (!lead.is_minimal_basis) throw PreconditionError("robustness_radius_minimal needs a minimal basis");
  const int k0 = *lead.d_prime;
  RadiusReport r;
  r.kind = RadiusKind::minimal_basis;
  for (int k = k0; k <= k0 + scan_extra; ++k) {
    r.scanned.push_back(detail::radius_candidate(m, k));
    if (r.scanned.back().radius > r.radius) {
      r.radius = r.scanned.back().radius;
      r.k_used = k;
    }
  }
  return r;
}

/// Radius of a ball of full-Sylvester-rank matrices around M, from the one
/// or two Sylvester matrices whose full rank decides the property.
template <FieldScalar T>
RadiusReport robustness_radius_fullsyl(const PolyMat<T>& m, std::optional<double> tol = std::nullopt) {
  const FullSylReport fs = has_full_sylvester_rank(m, tol);
  if (!fs.has_full_sylvester_rank) throw PreconditionError("robustness_radius_fullsyl needs full-Sylvester-rank");
  const auto [kp, t] = fs.k_prime_t;
  RadiusReport r;
  r.kind = RadiusKind::full_sylvester;
  if (kp > 1 && t > 0) r.scanned.push_back(detail::radius_candidate(m, kp - 1));
  r.scanned.push_back(detail::radius_candidate(m, kp));
  const auto best = std::min_element(r.scanned.begin(), r.scanned.end(),
                                     [](const auto& a, const auto& b) { return a.radius < b.radius; });
  r.radius = best->radius;
  r.k_used = best->k;
  return r;
}

template <FieldScalar T>
struct SharpWitness {
  PolyMat<T> witness;
  double distance = 0.0;  // ||S_1(M) - S_1(witness)||_2
  double sigma = 0.0;     // sigma_{(d+1)m}(S_1(M))
};

/// For flat matrices (m d <= n) the full-Sylvester radius sigma_{(d+1)m}(S_1)
/// is attained: zeroing the smallest singular value of S_1 gives a matrix
/// without the property at exactly that distance.
template <FieldScalar T>
SharpWitness<T> sharp_witness_flat(const PolyMat<T>& m) {
  detail::require_fullsyl_shape(m, "sharp_witness_flat");
  const Index n = m.cols() - m.rows();
  if (m.rows() * m.degree_bound() > n)
    throw PreconditionError("sharp_witness_flat needs m*d <= n, got m*d = " +
                            std::to_string(m.rows() * m.degree_bound()) + " > n = " + std::to_string(n));
  const Mat<T> s1 = s1_matrix(m);
  if (rank_nullity(s1).rank < s1.rows()) throw PreconditionError("sharp_witness_flat needs S_1 of full row rank");

  Eigen::JacobiSVD<Mat<T>> svd(s1, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Index last = svd.singularValues().size() - 1;
  const double smin = svd.singularValues()(last);
  const Mat<T> a = s1 - T(smin) * svd.matrixU().col(last) * svd.matrixV().col(last).adjoint();

  SharpWitness<T> out{from_s1_matrix<T>(a, m.rows()), 0.0, smin};
  out.distance = sigma<T>(s1 - a, 1);
  if (std::abs(out.distance - smin) > 1e-12 * std::max(1.0, smin))
    throw NumericalError("sharp witness distance does not match the smallest singular value");
  if (has_full_sylvester_rank(out.witness).has_full_sylvester_rank)
    throw NumericalError("sharp witness still has full-Sylvester-rank (rank decision ambiguous)");
  return out;
}

enum class ThetaCase { a, b, c };

inline const char* to_string(ThetaCase c) {
  switch (c) {
    case ThetaCase::a: return "a";
    case ThetaCase::b: return "b";
    case ThetaCase::c: return "c";
  }
  return "?";
}

/// theta_1 bounds the admissible perturbations of M for the dual-basis
/// perturbation result; theta_2 enters the bound on the dual basis change.
struct Thetas {
  double theta1 = 0.0;
  double theta2 = 0.0;
  ThetaCase which = ThetaCase::c;
  KPrimeT k_prime_t;
  /// sigma_min(S_k)/sqrt(k) for k = k'-1 (case a only), k', k'+1.
  std::vector<RadiusCandidate> candidates;
};

template <FieldScalar T>
Thetas thetas(const PolyMat<T>& m, std::optional<double> tol = std::nullopt) {
  const FullSylReport fs = has_full_sylvester_rank(m, tol);
  if (!fs.has_full_sylvester_rank) throw PreconditionError("thetas needs a full-Sylvester-rank matrix");
  Thetas th;
  th.k_prime_t = fs.k_prime_t;
  const auto [kp, t] = fs.k_prime_t;
  const RadiusCandidate at_k = detail::radius_candidate(m, kp);
  const RadiusCandidate at_next = detail::radius_candidate(m, kp + 1);
  if (kp > 1 && t > 0) {
    const RadiusCandidate at_prev = detail::radius_candidate(m, kp - 1);
    th.which = ThetaCase::a;
    th.candidates = {at_prev, at_k, at_next};
    th.theta1 = std::min({at_prev.radius, at_k.radius, at_next.radius});
    th.theta2 = std::min(at_k.radius, at_next.radius);
  } else if (t > 0) {
    th.which = ThetaCase::b;
    th.candidates = {at_k, at_next};
    th.theta1 = th.theta2 = std::min(at_k.radius, at_next.radius);
  } else {
    th.which = ThetaCase::c;
    th.candidates = {at_k, at_next};
    th.theta1 = std::min(at_k.radius, at_next.radius);
    th.theta2 = at_next.radius;
  }
  return th;
}

/// Sampled check of L = sigma_{(d+d')m}(S_{d'}) <= sigma_m(M(lambda_0)) and
/// L <= sigma_m(C_d). The infimum over lambda_0 is only sampled on circles, so
/// this is evidence, not a certificate.
struct LowerBoundReport {
  int d_prime = 0;
  double lower_bound = 0.0;     // L
  double sigma_m_leading = 0.0;  // sigma_m(C_d)
  double min_sigma_sampled = std::numeric_limits<double>::infinity();
  double tightest_ratio = 0.0;  // max over samples of L / sigma_m(M(lambda_0))
  int samples = 0;
  int violations = 0;
  bool leading_ok = false;
  bool sampled = true;
};

template <FieldScalar T>
LowerBoundReport classical_lower_bound_check(const PolyMat<T>& m, int num_samples, std::uint64_t seed,
                                             const std::vector<double>& radii = {0.5, 1.0, 2.0, 10.0},
                                             std::optional<double> tol = std::nullopt) {
  if (radii.empty()) throw PreconditionError("classical_lower_bound_check needs at least one radius");
  const Certificate cert = certify_full_leading(m, tol);  // throws on rank(C_d) < m
  if (!cert.is_minimal_basis) throw PreconditionError("classical_lower_bound_check needs a minimal basis");
  const int d = m.degree_bound();
  LowerBoundReport rep;
  rep.d_prime = *cert.d_prime;
  rep.lower_bound = sigma<T>(sylvester(m, rep.d_prime).data, (d + rep.d_prime) * m.rows());
  rep.sigma_m_leading = sigma<T>(m.coeff(d), m.rows());
  rep.leading_ok = rep.lower_bound <= rep.sigma_m_leading + detail::slack(rep.lower_bound, rep.sigma_m_leading);
  Rng rng = trial_rng(seed, 1);
  for (int s = 0; s < num_samples; ++s) {
    const Complex z = random_on_circle(rng, radii[static_cast<std::size_t>(s) % radii.size()]);
    const double sm = sigma<Complex>(evaluate(m, z), m.rows());
    rep.min_sigma_sampled = std::min(rep.min_sigma_sampled, sm);
    rep.tightest_ratio = std::max(rep.tightest_ratio, rep.lower_bound / sm);
    if (rep.lower_bound > sm + detail::slack(rep.lower_bound, sm)) ++rep.violations;
    ++rep.samples;
  }
  return rep;
}

template <FieldScalar T>
struct Neighbor {
  PolyMat<T> matrix;
  double distance = 0.0;  // ||S_1(M) - S_1(matrix)||_2
};

/// A matrix within distance < eps of a minimal basis M with rank(C_d) < m that
/// is not a minimal basis:
///  - C_d != 0: a zero row of C_d receives (eps/2) w/||w|| for a nonzero row w;
///  - C_d == 0, m > 1: two zero rows of C_d receive the same v, ||v|| < eps/2;
///  - C_d == 0, m == 1: M - lambda^d M(l_e)/l_e^d, which vanishes at l_e.
template <FieldScalar T>
Neighbor<T> fragile_neighbor(const PolyMat<T>& m, double eps) {
  if (!(eps > 0.0)) throw PreconditionError("fragile_neighbor needs eps > 0");
  detail::require_wide(m, "fragile_neighbor");
  const int d = m.degree_bound();
  const Mat<T>& lead = m.coeff(d);
  if (rank_nullity(lead).rank == m.rows())
    throw PreconditionError("fragile_neighbor needs a rank-deficient leading coefficient");

  std::vector<Index> zero_rows, nonzero_rows;
  for (Index r = 0; r < m.rows(); ++r) (lead.row(r).isZero(0) ? zero_rows : nonzero_rows).push_back(r);

  std::vector<Mat<T>> c = m.coeffs();
  Mat<T>& top = c[static_cast<std::size_t>(d)];
  if (m.rows() > 1) {
    if (!nonzero_rows.empty()) {
      if (zero_rows.empty()) throw PreconditionError("leading coefficient has no zero row");
      const auto w = lead.row(nonzero_rows.front());
      top.row(zero_rows.front()) = T(0.5 * eps / w.norm()) * w;
    } else {
      Mat<T> v = Mat<T>::Zero(1, m.cols());
      v(0, 0) = T(0.45 * eps);
      top.row(0) = v;
      top.row(1) = v;
    }
  } else {
    // Single row of degree < d: pick a power of two l_e large enough that
    // |m_i(l_e) / l_e^d| < eps / sqrt(1+n) for every entry.
    const double bound = eps / std::sqrt(static_cast<double>(m.cols()));
    double le = 1.0;
    Mat<T> shift;
    for (int it = 0; it < 2000; ++it, le *= 2.0) {
      shift = evaluate(m, T(le)) / T(std::pow(le, d));
      if (shift.cwiseAbs().maxCoeff() < bound) break;
    }
    top -= shift;
  }
  PolyMat<T> out(std::move(c));
  const double dist = s1_norms(m - out).spectral;
  return {std::move(out), dist};
}

/// Embeds M in grade deg(M) + 1 and returns a non-minimal matrix at distance
/// eps: two rows of the new leading coefficient receive the same v with
/// ||v|| = eps / sqrt(2). A single row falls back to fragile_neighbor.
template <FieldScalar T>
Neighbor<T> degree_raise_neighbor(const PolyMat<T>& m, double eps) {
  if (!(eps > 0.0)) throw PreconditionError("degree_raise_neighbor needs eps > 0");
  const PolyMat<T> raised = m.with_degree_bound(degree(m) + 1);
  if (m.rows() == 1) return fragile_neighbor(raised, eps);
  std::vector<Mat<T>> c = raised.coeffs();
  Mat<T>& top = c.back();
  top(0, 0) = T(eps / std::sqrt(2.0));
  top(1, 0) = T(eps / std::sqrt(2.0));
  PolyMat<T> out(std::move(c));
  const double dist = s1_norms(raised - out).spectral;
  return {std::move(out), dist};
}

}  // namespace minbasis
