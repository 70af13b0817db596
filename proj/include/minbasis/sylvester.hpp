#pragma once

#include <Eigen/SVD>

#include <algorithm>
#include <limits>
#include <optional>
#include <vector>

#include "polymat.hpp"

namespace minbasis {

/// Banded block-Toeplitz matrix S_k of a polynomial matrix of grade d:
/// (k+d)*rows x k*cols, block (i, j) = C_{i-j} for 0 <= i-j <= d.
template <FieldScalar T>
struct SylvesterMatrix {
  int k = 0;
  Mat<T> data;

  Index rows() const noexcept { return data.rows(); }
  Index cols() const noexcept { return data.cols(); }
};

template <FieldScalar T>
SylvesterMatrix<T> sylvester(const PolyMat<T>& p, int k) {
  if (k < 1) throw PreconditionError("Sylvester matrix needs k >= 1");
  const int d = p.degree_bound();
  const Index m = p.rows();
  const Index q = p.cols();
  SylvesterMatrix<T> s;
  s.k = k;
  s.data = Mat<T>::Zero((k + d) * m, k * q);
  for (int j = 0; j < k; ++j)
    for (int i = 0; i <= d; ++i) s.data.block((i + j) * m, j * q, m, q) = p.coeff(i);
  return s;
}

/// Descending singular values.
template <class T>
Eigen::VectorXd singular_values(const Mat<T>& a) {
  if (a.size() == 0) return Eigen::VectorXd();
  Eigen::JacobiSVD<Mat<T>> svd(a);
  if (svd.info() != Eigen::Success) throw NumericalError("SVD did not converge");
  return svd.singularValues();
}

/// sigma_i(A), 1-based as in sigma_1 >= sigma_2 >= ... >= sigma_min(p,q).
template <class T>
double sigma(const Mat<T>& a, Index i) {
  const Index n = std::min(a.rows(), a.cols());
  if (i < 1 || i > n)
    throw PreconditionError("singular value index " + std::to_string(i) + " out of range 1.." + std::to_string(n));
  return singular_values(a)(i - 1);
}

/// sigma_{min(p,q) - which}(A); which = 0 is the smallest singular value.
template <class T>
double min_singular_value(const Mat<T>& a, Index which = 0) {
  const Index n = std::min(a.rows(), a.cols());
  if (which < 0 || which >= n)
    throw PreconditionError("index-from-smallest " + std::to_string(which) + " out of range for " +
                            std::to_string(n) + " singular values");
  return singular_values(a)(n - 1 - which);
}

/// max(rows, cols) * eps * sigma_1.
inline double default_tolerance(Index rows, Index cols, double sigma1) {
  return static_cast<double>(std::max(rows, cols)) * std::numeric_limits<double>::epsilon() * sigma1;
}

/// Rank-gap ratio below which a rank decision is reported as marginal.
inline constexpr double kMarginalGap = 1e3;

struct RankDecision {
  Index rank = 0;
  Index nullity = 0;
  std::vector<double> singular_values;  // descending
  double tolerance_used = 0.0;

  /// sigma_rank / sigma_{rank+1}; infinite when one side is missing or zero.
  double gap_ratio() const {
    const auto r = static_cast<std::size_t>(rank);
    if (rank == 0 || r >= singular_values.size() || singular_values[r] == 0.0)
      return std::numeric_limits<double>::infinity();
    return singular_values[r - 1] / singular_values[r];
  }
  bool marginal() const { return gap_ratio() < kMarginalGap; }
};

/// Numerical rank: number of singular values above tol (default
/// max(rows, cols) * eps * sigma_1).
template <class T>
RankDecision rank_nullity(const Mat<T>& a, std::optional<double> tol = std::nullopt) {
  if (a.size() == 0) throw PreconditionError("rank of an empty matrix");
  if (tol && *tol < 0.0) throw PreconditionError("rank tolerance must be non-negative");
  const Eigen::VectorXd sv = singular_values(a);
  RankDecision dec;
  dec.singular_values.assign(sv.data(), sv.data() + sv.size());
  dec.tolerance_used = tol ? *tol : default_tolerance(a.rows(), a.cols(), sv.size() ? sv(0) : 0.0);
  dec.rank = 0;
  for (Index i = 0; i < sv.size(); ++i)
    if (sv(i) > dec.tolerance_used) ++dec.rank;
  dec.nullity = a.cols() - dec.rank;
  return dec;
}

/// Orthonormal basis (as columns) of the right null space, using the same
/// tolerance policy as rank_nullity.
template <class T>
Mat<T> null_space(const Mat<T>& a, std::optional<double> tol = std::nullopt) {
  Eigen::JacobiSVD<Mat<T>> svd(a, Eigen::ComputeFullV);
  if (svd.info() != Eigen::Success) throw NumericalError("SVD did not converge");
  const auto& sv = svd.singularValues();
  const double tau = tol ? *tol : default_tolerance(a.rows(), a.cols(), sv.size() ? sv(0) : 0.0);
  Index rank = 0;
  for (Index i = 0; i < sv.size(); ++i)
    if (sv(i) > tau) ++rank;
  return svd.matrixV().rightCols(a.cols() - rank);
}

}  // namespace minbasis
