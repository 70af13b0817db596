#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dual.hpp"
#include "fullsyl.hpp"
#include "minimal.hpp"
#include "polymat.hpp"
#include "random.hpp"
#include "sylvester.hpp"

namespace minbasis {

/// L = [K; M] of grade l with M full-Sylvester-rank and t = 0, recovering
/// P = K N^T of grade l + k' for a dual basis N of M.
template <FieldScalar T>
struct Lification {
  PolyMat<T> K;
  PolyMat<T> M;
  PolyMat<T> L;
  int ell = 0;
  int k_prime = 0;
  PolyMat<T> N;
  PolyMat<T> P;
  double duality_residual = 0.0;  // ||S_1(M N^T)||_F
  /// max over 5 sampled points of |P(z) - K(z) N(z)^T| / (1 + |K(z)| |N(z)|).
  double recovery_residual = 0.0;
};

/// Builds the l-ification. N defaults to dual_minimal_basis(M); a supplied N
/// must be a verified dual basis with every row degree k'.
template <FieldScalar T>
Lification<T> build_lification(const PolyMat<T>& k, const PolyMat<T>& m,
                                const std::optional<PolyMat<T>>& n = std::nullopt,
                                std::optional<double> tol = std::nullopt) {
  if (k.cols() != m.cols()) throw DimensionError("K and M need equal column counts");
  const int ell = m.degree_bound();
  if (k.degree_bound() > ell) throw DimensionError("K has a larger grade than M");
  detail::require_fullsyl_shape(m, "build_lification");
  const Index nn = m.cols() - m.rows();
  if ((m.rows() * ell) % nn != 0)
    throw PreconditionError("m*l = " + std::to_string(m.rows() * ell) + " is not divisible by n = " +
                            std::to_string(nn));
  const FullSylReport fs = has_full_sylvester_rank(m, tol);
  if (!fs.has_full_sylvester_rank) throw PreconditionError("build_lification needs M with full-Sylvester-rank");
  const int kp = fs.k_prime_t.k_prime;

  Lification<T> lif{k.with_degree_bound(ell), m, vstack(k.with_degree_bound(ell), m), ell, kp, m, m};
  if (n) {
    const DualityCheck<T> chk = verify_duality(m, *n, tol);
    if (!chk.valid) throw PreconditionError("supplied N is not dual to M: " + chk.detail);
    const auto deg = row_degrees(*n);
    if (std::any_of(deg.begin(), deg.end(), [&](int d) { return d != kp; }))
      throw PreconditionError("supplied N must have every row degree equal to k'");
    lif.N = n->with_degree_bound(kp);
  } else {
    lif.N = dual_minimal_basis(m, tol).N;
  }
  lif.P = poly_multiply_transpose(lif.K, lif.N);
  lif.duality_residual = detail::duality_residual(m, lif.N);

  Rng rng = trial_rng(0x11f7, 0);
  for (int s = 0; s < 5; ++s) {
    const Complex z = random_in_disk(rng, 2.0);
    const Mat<Complex> kz = evaluate(lif.K, z);
    const Mat<Complex> nz = evaluate(lif.N, z);
    const double err = (evaluate(lif.P, z) - kz * nz.transpose()).norm();
    lif.recovery_residual = std::max(lif.recovery_residual, err / (1.0 + kz.norm() * nz.norm()));
  }
  return lif;
}

template <FieldScalar T>
struct BackwardErrorReport {
  double C_PL = 0.0;
  // Factors of C_PL.
  double norm_L = 0.0;         // ||S_1(L)||_F
  double norm_P = 0.0;         // ||S_1(P)||_F
  double norm_N = 0.0;         // ||S_1(N)||_F
  double sigma_kp1 = 0.0;      // sigma_{(k'+1+l)m}(S_{k'+1}(M))
  double norm_K = 0.0;         // ||S_1(K)||_F
  double norm_dK = 0.0;        // ||S_1(dK)||_F
  double norm_dL = 0.0;        // ||S_1(dL)||_F
  double prefactor = 0.0;      // min(sqrt(k'+1), sqrt(l+1))
  PolyMat<T> delta_P;
  double relative_dP = 0.0;    // ||S_1(dP)||_F / ||S_1(P)||_F
  double bound_rhs = 0.0;      // prefactor C_PL ||S_1(dL)||_F / ||S_1(L)||_F
  bool admissible = false;
  PerturbReport<T> perturbation;

  bool holds() const { return relative_dP <= bound_rhs; }
  /// bound_rhs / relative_dP; infinite when dP = 0.
  double slack_factor() const {
    return relative_dP > 0.0 ? bound_rhs / relative_dP : std::numeric_limits<double>::infinity();
  }
};

/// dP = dK N^T + K dN^T + dK dN^T for the perturbed dual basis N + dN, and
/// the constant C_PL bounding the relative change of P by that of L.
/// Throws AdmissibilityError when dM is outside the admissible ball and
/// PreconditionError when P = 0.
template <FieldScalar T>
BackwardErrorReport<T> backward_error_map(const Lification<T>& lif, const PolyMat<T>& dk, const PolyMat<T>& dm,
                                          std::optional<double> tol = std::nullopt) {
  if (dk.rows() != lif.K.rows() || dk.cols() != lif.K.cols() || dk.degree_bound() != lif.ell)
    throw DimensionError("dK must have the shape and grade of K");
  const double norm_p = s1_frobenius(lif.P);
  if (norm_p == 0.0) throw PreconditionError("relative backward error is undefined for P = 0");

  const DualPair<T> pair{lif.M, lif.N, {lif.k_prime, 0}, lif.duality_residual};
  PerturbReport<T> pr = propagate_perturbation(pair, dm, tol);
  const PolyMat<T>& dn = pr.delta_N;

  BackwardErrorReport<T> r{0.0, s1_frobenius(lif.L), norm_p, s1_frobenius(lif.N),
                           min_singular_value(sylvester(lif.M, lif.k_prime + 1).data), s1_frobenius(lif.K),
                           s1_frobenius(dk), s1_frobenius(vstack(dk, dm)),
                           std::min(std::sqrt(lif.k_prime + 1.0), std::sqrt(lif.ell + 1.0)),
                           poly_multiply_transpose(dk, lif.N) + poly_multiply_transpose(lif.K, dn) +
                               poly_multiply_transpose(dk, dn),
                           0.0, 0.0, true, std::move(pr)};
  r.C_PL = r.norm_L / r.norm_P * r.norm_N *
           (1.0 + 2.0 * std::sqrt(lif.k_prime + 1.0) / r.sigma_kp1 * (r.norm_K + r.norm_dK));
  r.relative_dP = s1_frobenius(r.delta_P) / r.norm_P;
  r.bound_rhs = r.prefactor * r.C_PL * r.norm_dL / r.norm_L;
  return r;
}

struct ShiftCheck {
  bool checked = false;  // false when P + dP is not of full row normal rank
  bool passed = false;
  std::string notice;
  std::vector<int> l_indices;
  std::vector<int> p_indices;
};

/// Right minimal indices of L + dL equal those of P + dP plus k'.
template <FieldScalar T>
ShiftCheck minimal_index_shift_check(const Lification<T>& lif, const PolyMat<T>& dk, const PolyMat<T>& dm,
                                     std::optional<double> tol = std::nullopt) {
  PolyMat<T> pp = lif.P;
  PolyMat<T> lp = lif.L;
  const bool zero = s1_frobenius(dk) == 0.0 && s1_frobenius(dm) == 0.0;
  if (!zero) {
    const DualPair<T> pair{lif.M, lif.N, {lif.k_prime, 0}, lif.duality_residual};
    const PerturbReport<T> pr = propagate_perturbation(pair, dm, tol);
    pp = poly_multiply_transpose(lif.K + dk, pr.perturbed_N);
    lp = vstack(lif.K + dk, pr.perturbed_M);
  }
  ShiftCheck out;
  if (pp.rows() > pp.cols()) {
    out.notice = "P has more rows than columns; right minimal indices are not defined by the row recursion";
    return out;
  }
  const RankProfile prof = rank_profile(pp.degree_bound() >= 1 ? pp : pp.with_degree_bound(1), std::nullopt, tol);
  if (!prof.normal_rank_full) {
    out.notice = "P + dP is not of full row normal rank; check skipped";
    return out;
  }
  out.checked = true;
  out.p_indices = right_minimal_indices(prof);
  out.l_indices = right_minimal_indices(lp, tol);
  std::vector<int> shifted = out.p_indices;
  for (int& v : shifted) v += lif.k_prime;
  out.passed = shifted == out.l_indices;
  return out;
}

}  // namespace minbasis
