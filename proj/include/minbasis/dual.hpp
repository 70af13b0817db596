#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "fullsyl.hpp"
#include "minimal.hpp"
#include "polymat.hpp"
#include "robust.hpp"
#include "sylvester.hpp"

namespace minbasis {

/// Dual minimal bases: M (m x (m+n)) and N (n x (m+n)) with M N^T = 0.
template <FieldScalar T>
struct DualPair {
  PolyMat<T> M;
  PolyMat<T> N;
  KPrimeT k_prime_t;
  double residual = 0.0;  // ||S_1(M N^T)||_F
};

enum class DualityClause { ok, dimension_sum, residual, m_not_minimal, n_not_minimal };

inline const char* to_string(DualityClause c) {
  switch (c) {
    case DualityClause::ok: return "ok";
    case DualityClause::dimension_sum: return "dimension_sum";
    case DualityClause::residual: return "residual";
    case DualityClause::m_not_minimal: return "m_not_minimal";
    case DualityClause::n_not_minimal: return "n_not_minimal";
  }
  return "?";
}

template <FieldScalar T>
struct DualityCheck {
  bool valid = false;
  DualityClause failing = DualityClause::ok;
  std::string detail;
  double residual = 0.0;
  double residual_threshold = 0.0;
  std::optional<Certificate> m_certificate;
  std::optional<Certificate> n_certificate;
  std::optional<DualPair<T>> pair;
};

namespace detail {

template <FieldScalar T>
double duality_residual(const PolyMat<T>& m, const PolyMat<T>& n) {
  return s1_frobenius(poly_multiply_transpose(m, n));
}

template <FieldScalar T>
KPrimeT pair_kprime_t(const PolyMat<T>& m) {
  if (m.rows() >= m.cols() || m.degree_bound() < 1) return {};
  return kprime_t(m.rows(), m.cols() - m.rows(), m.degree_bound());
}

/// Min-Frobenius-norm solution of A X = B with the rank-decision tolerance.
/// Throws NumericalError when the system is inconsistent beyond 1e-8 * scale.
template <FieldScalar T>
Mat<T> min_norm_solve(const Mat<T>& a, const Mat<T>& b, std::optional<double> tol) {
  Eigen::JacobiSVD<Mat<T>> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success) throw NumericalError("SVD did not converge");
  const auto& sv = svd.singularValues();
  const double tau = tol ? *tol : default_tolerance(a.rows(), a.cols(), sv.size() ? sv(0) : 0.0);
  Index r = 0;
  while (r < sv.size() && sv(r) > tau) ++r;
  Mat<T> coef = svd.matrixU().leftCols(r).adjoint() * b;
  for (Index i = 0; i < r; ++i) coef.row(i) /= T(sv(i));
  Mat<T> x = svd.matrixV().leftCols(r) * coef;
  const double resid = (a * x - b).norm();
  const double scale = 1.0 + b.norm() + (sv.size() ? sv(0) : 0.0) * x.norm();
  if (resid > 1e-8 * scale)
    throw NumericalError("least-squares system inconsistent: residual " + std::to_string(resid) + " > 1e-8 * " +
                         std::to_string(scale));
  return x;
}

/// Unit row; the largest-modulus entry of the top coefficient is made
/// real positive.
template <FieldScalar T>
using Vec = Eigen::Matrix<T, Eigen::Dynamic, 1>;

template <FieldScalar T>
Vec<T> normalize_stack(Vec<T> v, Index cols) {
  v /= T(v.norm());
  const Index blocks = v.size() / cols;
  for (Index b = blocks - 1; b >= 0; --b) {
    const auto seg = v.segment(b * cols, cols);
    if (seg.norm() <= 1e-14) continue;
    Index arg = 0;
    seg.cwiseAbs().maxCoeff(&arg);
    const T lead = seg(arg);
    v *= T(std::abs(lead)) / lead;
    break;
  }
  return v;
}

/// Column vector of length blocks*cols -> 1 x cols polynomial of grade g.
template <FieldScalar T>
std::vector<Mat<T>> unpack_row(const Vec<T>& v, Index cols, int g) {
  std::vector<Mat<T>> c(static_cast<std::size_t>(g) + 1, Mat<T>::Zero(1, cols));
  for (Index b = 0; b < v.size() / cols; ++b) c[static_cast<std::size_t>(b)] = v.segment(b * cols, cols).transpose();
  return c;
}

}  // namespace detail

/// Checks M N^T = 0 (residual below 1e-10 (1 + ||S_1 M||_F ||S_1 N||_F)),
/// m + n = cols, and both minimality certificates, in that order.
template <FieldScalar T>
DualityCheck<T> verify_duality(const PolyMat<T>& m, const PolyMat<T>& n, std::optional<double> tol = std::nullopt) {
  if (m.cols() != n.cols())
    throw DimensionError("dual bases need equal column counts, got " + std::to_string(m.cols()) + " and " +
                         std::to_string(n.cols()));
  DualityCheck<T> out;
  if (m.rows() + n.rows() != m.cols()) {
    out.failing = DualityClause::dimension_sum;
    out.detail = std::to_string(m.rows()) + " + " + std::to_string(n.rows()) + " != " + std::to_string(m.cols());
    return out;
  }
  out.residual = detail::duality_residual(m, n);
  out.residual_threshold = 1e-10 * (1.0 + s1_frobenius(m) * s1_frobenius(n));
  if (out.residual > out.residual_threshold) {
    out.failing = DualityClause::residual;
    out.detail = "||M N^T|| = " + std::to_string(out.residual);
    return out;
  }
  out.m_certificate = certify_minimal_basis(m, tol);
  if (!out.m_certificate->is_minimal_basis) {
    out.failing = DualityClause::m_not_minimal;
    out.detail = std::string("M is not a minimal basis: ") + to_string(out.m_certificate->reason);
    return out;
  }
  out.n_certificate = certify_minimal_basis(n, tol);
  if (!out.n_certificate->is_minimal_basis) {
    out.failing = DualityClause::n_not_minimal;
    out.detail = std::string("N is not a minimal basis: ") + to_string(out.n_certificate->reason);
    return out;
  }
  out.valid = true;
  out.pair = DualPair<T>{m, n, detail::pair_kprime_t(m), out.residual};
  return out;
}

/// Minimal basis dual to a full-Sylvester-rank M, of grade k'. The t rows of
/// degree k'-1 span null(S_{k'}); the n-t rows of degree k' span the part of
/// null(S_{k'+1}) orthogonal to the shifts [x; 0], [0; x] of those.
/// Each row is a unit coefficient stack; rows are ordered by degree.
template <FieldScalar T>
DualPair<T> dual_minimal_basis(const PolyMat<T>& m, std::optional<double> tol = std::nullopt) {
  const FullSylReport fs = has_full_sylvester_rank(m, tol);
  if (!fs.has_full_sylvester_rank) throw PreconditionError("dual_minimal_basis needs a full-Sylvester-rank matrix");
  const auto [kp, t] = fs.k_prime_t;
  const Index q = m.cols();
  const Index n = q - m.rows();

  std::vector<std::vector<Mat<T>>> rows;
  const Mat<T> low = null_space<T>(sylvester(m, kp).data, tol);
  if (low.cols() != t) throw NumericalError("null(S_k') has dimension " + std::to_string(low.cols()) +
                                            ", expected t = " + std::to_string(t));
  for (Index j = 0; j < low.cols(); ++j)
    rows.push_back(detail::unpack_row<T>(detail::normalize_stack<T>(low.col(j), q), q, kp));

  const Mat<T> high = null_space<T>(sylvester(m, kp + 1).data, tol);
  if (high.cols() != n + t) throw NumericalError("null(S_{k'+1}) has dimension " + std::to_string(high.cols()) +
                                                 ", expected n + t = " + std::to_string(n + t));
  Mat<T> shifts = Mat<T>::Zero((kp + 1) * q, 2 * t);
  if (t > 0) {
    shifts.block(0, 0, kp * q, t) = low;
    shifts.block(q, t, kp * q, t) = low;
  }
  Mat<T> proj = high;
  if (t > 0) {
    Eigen::HouseholderQR<Mat<T>> qr(shifts);
    const Mat<T> qs = qr.householderQ() * Mat<T>::Identity(shifts.rows(), 2 * t);
    proj -= qs * (qs.adjoint() * proj);
  }
  Eigen::JacobiSVD<Mat<T>> svd(proj, Eigen::ComputeThinU);
  const Mat<T> top = svd.matrixU().leftCols(n - t);
  for (Index j = 0; j < top.cols(); ++j)
    rows.push_back(detail::unpack_row<T>(detail::normalize_stack<T>(top.col(j), q), q, kp));

  std::vector<Mat<T>> c(static_cast<std::size_t>(kp) + 1, Mat<T>::Zero(n, q));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (int i = 0; i <= kp; ++i) c[static_cast<std::size_t>(i)].row(static_cast<Index>(r)) = rows[r][i];
  PolyMat<T> nb(std::move(c));

  const Certificate cert = certify_minimal_basis(nb, tol);
  if (!cert.is_minimal_basis)
    throw NumericalError(std::string("extracted dual basis failed certification: ") + to_string(cert.reason));
  const double residual = detail::duality_residual(m, nb);
  return {m, std::move(nb), fs.k_prime_t, residual};
}

/// Rows of N split by degree: t at k'-1 (X) then n-t at k' (Y).
struct RowSplit {
  std::vector<Index> x_rows;
  std::vector<Index> y_rows;
  /// permutation[i] = row of N placed at position i of [X; Y].
  std::vector<Index> permutation;
};

template <FieldScalar T>
struct PerturbReport {
  Thetas thetas;
  double sigma_n_hr = 0.0;        // sigma_n(N_hr)
  double norm_s1_n = 0.0;         // ||S_1(N)||_F
  double admissible_radius = 0.0;  // theta_1 sigma_n(N_hr) / (2 ||S_1(N)||_F)
  double applied_norm = 0.0;      // ||S_1(dM)||_2
  PolyMat<T> delta_N;
  PolyMat<T> perturbed_M;
  PolyMat<T> perturbed_N;
  double relative_change = 0.0;   // ||S_1(dN)||_F / ||S_1(N)||_F
  double guaranteed_bound = 0.0;  // 2 ||S_1(dM)||_2 / theta_2
  RowSplit split;
  DualityCheck<T> perturbed;
  std::vector<int> perturbed_row_degrees;
  bool bound_holds() const { return relative_change <= guaranteed_bound; }
};

/// Perturbs M to M + dM and N to the dual basis N + dN given by the
/// minimum-Frobenius-norm solutions of
///   S_k'(M~) S_1(dX^T) = -S_k'(dM) S_1(X^T),
///   S_{k'+1}(M~) S_1(dY^T) = -S_{k'+1}(dM) S_1(Y^T).
/// Throws AdmissibilityError when ||S_1(dM)||_2 >= admissible_radius.
template <FieldScalar T>
PerturbReport<T> propagate_perturbation(const DualPair<T>& pair, const PolyMat<T>& dm,
                                        std::optional<double> tol = std::nullopt) {
  const PolyMat<T>& m = pair.M;
  if (dm.rows() != m.rows() || dm.cols() != m.cols() || dm.degree_bound() != m.degree_bound())
    throw DimensionError("perturbation must have the shape and grade of M");
  const Thetas th = thetas(m, tol);
  const auto [kp, t] = th.k_prime_t;
  const Index q = m.cols();
  const PolyMat<T> n = pair.N.with_degree_bound(kp);

  const double sigma_hr = min_singular_value(highest_row_degree_matrix(n));
  const double norm_n = s1_frobenius(n);
  const double admissible = 0.5 * th.theta1 * sigma_hr / norm_n;
  const double applied = s1_norms(dm).spectral;
  if (!(applied < admissible)) throw AdmissibilityError(applied, admissible);

  RowSplit split;
  const auto deg = row_degrees(n);
  for (Index r = 0; r < n.rows(); ++r) (deg[static_cast<std::size_t>(r)] == kp ? split.y_rows : split.x_rows).push_back(r);
  if (static_cast<int>(split.x_rows.size()) != t || std::any_of(split.x_rows.begin(), split.x_rows.end(), [&](Index r) {
        return deg[static_cast<std::size_t>(r)] != kp - 1;
      }))
    throw PreconditionError("row degrees of N do not match {k'-1: t, k': n-t}");
  split.permutation = split.x_rows;
  split.permutation.insert(split.permutation.end(), split.y_rows.begin(), split.y_rows.end());

  const PolyMat<T> mt = m + dm;
  std::vector<Mat<T>> dn(static_cast<std::size_t>(kp) + 1, Mat<T>::Zero(n.rows(), q));
  auto solve_block = [&](const std::vector<Index>& idx, int k) {
    if (idx.empty()) return;
    const PolyMat<T> blk = select_rows(n, idx).with_degree_bound(k - 1);
    const Mat<T> rhs = -(sylvester(dm, k).data * s1_matrix(blk.transpose()));
    const Mat<T> sol = detail::min_norm_solve<T>(sylvester(mt, k).data, rhs, tol);
    const PolyMat<T> d = from_s1_matrix<T>(sol, q).transpose();
    for (int i = 0; i < k; ++i)
      for (std::size_t r = 0; r < idx.size(); ++r)
        dn[static_cast<std::size_t>(i)].row(idx[r]) = d.coeff(i).row(static_cast<Index>(r));
  };
  solve_block(split.x_rows, kp);
  solve_block(split.y_rows, kp + 1);

  PerturbReport<T> rep{th,
                       sigma_hr,
                       norm_n,
                       admissible,
                       applied,
                       PolyMat<T>(std::move(dn)),
                       mt,
                       n,
                       0.0,
                       0.0,
                       std::move(split),
                       {},
                       {}};
  rep.perturbed_N = n + rep.delta_N;
  rep.relative_change = s1_frobenius(rep.delta_N) / norm_n;
  rep.guaranteed_bound = 2.0 * applied / th.theta2;
  rep.perturbed = verify_duality(mt, rep.perturbed_N, tol);
  rep.perturbed_row_degrees = row_degrees(rep.perturbed_N);
  return rep;
}

/// N has full-Sylvester-rank iff t = 0. Throws NumericalError when the
/// detector disagrees with that.
template <FieldScalar T>
bool check_dual_fullsyl(const DualPair<T>& pair, std::optional<double> tol = std::nullopt) {
  const bool has = has_full_sylvester_rank(pair.N, tol).has_full_sylvester_rank;
  if (has != (pair.k_prime_t.t == 0))
    throw NumericalError("dual basis full-Sylvester-rank verdict contradicts t = " +
                         std::to_string(pair.k_prime_t.t));
  return has;
}

/// (rev_d M, rev_k' N) for t = 0, verified dual and both full-Sylvester-rank.
template <FieldScalar T>
DualPair<T> reversal_dual(const DualPair<T>& pair, std::optional<double> tol = std::nullopt) {
  if (pair.k_prime_t.t != 0) throw PreconditionError("reversal duality requires t=0");
  const PolyMat<T> rm = reversal(pair.M, pair.M.degree_bound());
  const PolyMat<T> rn = reversal(pair.N, pair.k_prime_t.k_prime);
  const DualityCheck<T> chk = verify_duality(rm, rn, tol);
  if (!chk.valid) throw NumericalError("reversed pair is not dual: " + chk.detail);
  if (!has_full_sylvester_rank(rm, tol).has_full_sylvester_rank ||
      !has_full_sylvester_rank(rn, tol).has_full_sylvester_rank)
    throw NumericalError("reversed pair lost full-Sylvester-rank");
  return *chk.pair;
}

}  // namespace minbasis
