#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <concepts>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace minbasis {

using Index = Eigen::Index;
using Complex = std::complex<double>;

template <class T>
using Mat = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;

enum class Field { real, complex };

inline const char* to_string(Field f) { return f == Field::real ? "real" : "complex"; }

template <class T>
struct scalar_traits;

template <>
struct scalar_traits<double> {
  static constexpr Field field = Field::real;
};

template <>
struct scalar_traits<Complex> {
  static constexpr Field field = Field::complex;
};

/// The two supported coefficient fields: double and std::complex<double>.
template <class T>
concept FieldScalar = std::same_as<T, double> || std::same_as<T, Complex>;

/// Scalar type of an expression mixing T and U (double with complex gives complex).
template <class T, class U>
using promote_t = std::conditional_t<std::same_as<T, Complex> || std::same_as<U, Complex>, Complex, double>;

namespace detail {

inline bool is_finite(double x) { return std::isfinite(x); }
inline bool is_finite(const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

template <class T>
bool all_finite(const Mat<T>& a) {
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i < a.rows(); ++i)
      if (!is_finite(a(i, j))) return false;
  return true;
}

template <class T>
bool is_exact_zero(const Mat<T>& a) {
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i < a.rows(); ++i)
      if (a(i, j) != T(0)) return false;
  return true;
}

}  // namespace detail

/// Dense polynomial matrix P(lambda) = C_0 + C_1 lambda + ... + C_d lambda^d.
///
/// The grade d (degree_bound) is part of the value: C_d may vanish, and
/// perturbation radii are measured in the ambient space of matrices of
/// degree at most d. Instances are immutable.
template <FieldScalar T>
class PolyMat {
 public:
  using Scalar = T;
  using Matrix = Mat<T>;

  /// Zero matrix of the given shape and grade.
  PolyMat(Index rows, Index cols, int degree_bound) : rows_(rows), cols_(cols) {
    if (rows <= 0 || cols <= 0) throw DimensionError("polynomial matrix must have positive dimensions");
    if (degree_bound < 0) throw DimensionError("degree bound must be non-negative");
    coeffs_.assign(static_cast<std::size_t>(degree_bound) + 1, Matrix::Zero(rows, cols));
  }

  /// Takes C_0..C_d; the grade is coeffs.size() - 1.
  explicit PolyMat(std::vector<Matrix> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw DimensionError("polynomial matrix needs at least one coefficient");
    rows_ = coeffs_.front().rows();
    cols_ = coeffs_.front().cols();
    if (rows_ <= 0 || cols_ <= 0) throw DimensionError("polynomial matrix must have positive dimensions");
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (coeffs_[i].rows() != rows_ || coeffs_[i].cols() != cols_)
        throw DimensionError("coefficient " + std::to_string(i) + " has shape " +
                             std::to_string(coeffs_[i].rows()) + "x" + std::to_string(coeffs_[i].cols()) +
                             ", expected " + std::to_string(rows_) + "x" + std::to_string(cols_));
      if (!detail::all_finite(coeffs_[i]))
        throw DimensionError("coefficient " + std::to_string(i) + " has a non-finite entry");
    }
  }

  static PolyMat zero(Index rows, Index cols, int degree_bound) { return PolyMat(rows, cols, degree_bound); }

  Index rows() const noexcept { return rows_; }
  Index cols() const noexcept { return cols_; }
  int degree_bound() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  static constexpr Field field() noexcept { return scalar_traits<T>::field; }

  const Matrix& coeff(int i) const { return coeffs_.at(static_cast<std::size_t>(i)); }
  const std::vector<Matrix>& coeffs() const noexcept { return coeffs_; }

  /// Same polynomial viewed in a different grade. Raising pads with zero
  /// coefficients; lowering is only allowed over vanishing coefficients.
  PolyMat with_degree_bound(int g) const {
    if (g < 0) throw DimensionError("degree bound must be non-negative");
    std::vector<Matrix> c(static_cast<std::size_t>(g) + 1, Matrix::Zero(rows_, cols_));
    for (int i = 0; i <= degree_bound(); ++i) {
      if (i <= g) {
        c[static_cast<std::size_t>(i)] = coeffs_[static_cast<std::size_t>(i)];
      } else if (!detail::is_exact_zero(coeffs_[static_cast<std::size_t>(i)])) {
        throw DimensionError("cannot lower the grade below the degree");
      }
    }
    return PolyMat(std::move(c));
  }

  /// Entrywise transpose (not conjugated), as in M(lambda) N(lambda)^T.
  PolyMat transpose() const {
    std::vector<Matrix> c;
    c.reserve(coeffs_.size());
    for (const auto& ci : coeffs_) c.push_back(ci.transpose());
    return PolyMat(std::move(c));
  }

  friend PolyMat operator+(const PolyMat& a, const PolyMat& b) { return combine(a, b, T(1)); }
  friend PolyMat operator-(const PolyMat& a, const PolyMat& b) { return combine(a, b, T(-1)); }

  friend PolyMat operator*(T s, const PolyMat& a) {
    std::vector<Matrix> c;
    c.reserve(a.coeffs_.size());
    for (const auto& ci : a.coeffs_) c.push_back(s * ci);
    return PolyMat(std::move(c));
  }

  /// Exact coefficient-wise equality, grade included.
  friend bool operator==(const PolyMat& a, const PolyMat& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_ || a.coeffs_.size() != b.coeffs_.size()) return false;
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      if (a.coeffs_[i] != b.coeffs_[i]) return false;
    return true;
  }

 private:
  // Sum in the larger of the two grades.
  static PolyMat combine(const PolyMat& a, const PolyMat& b, T sign) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionError("shape mismatch in polynomial sum");
    const int g = std::max(a.degree_bound(), b.degree_bound());
    std::vector<Matrix> c(static_cast<std::size_t>(g) + 1, Matrix::Zero(a.rows_, a.cols_));
    for (int i = 0; i <= a.degree_bound(); ++i) c[static_cast<std::size_t>(i)] += a.coeff(i);
    for (int i = 0; i <= b.degree_bound(); ++i) c[static_cast<std::size_t>(i)] += sign * b.coeff(i);
    return PolyMat(std::move(c));
  }

  Index rows_ = 0;
  Index cols_ = 0;
  std::vector<Matrix> coeffs_;
};

using RealPolyMat = PolyMat<double>;
using ComplexPolyMat = PolyMat<Complex>;

/// Largest i with C_i != 0; 0 for the zero matrix.
template <FieldScalar T>
int degree(const PolyMat<T>& p) {
  for (int i = p.degree_bound(); i > 0; --i)
    if (!detail::is_exact_zero(p.coeff(i))) return i;
  return 0;
}

/// Degree of every row; a zero row has degree 0.
template <FieldScalar T>
std::vector<int> row_degrees(const PolyMat<T>& p) {
  std::vector<int> deg(static_cast<std::size_t>(p.rows()), 0);
  for (Index r = 0; r < p.rows(); ++r) {
    for (int i = p.degree_bound(); i > 0; --i) {
      if (!p.coeff(i).row(r).isZero(0)) {
        deg[static_cast<std::size_t>(r)] = i;
        break;
      }
    }
  }
  return deg;
}

/// Row j is the coefficient of lambda^{d_j} in row j, d_j the row degree.
template <FieldScalar T>
Mat<T> highest_row_degree_matrix(const PolyMat<T>& p) {
  const auto deg = row_degrees(p);
  Mat<T> hr(p.rows(), p.cols());
  for (Index r = 0; r < p.rows(); ++r) hr.row(r) = p.coeff(deg[static_cast<std::size_t>(r)]).row(r);
  return hr;
}

/// Horner evaluation at a point of either field.
template <FieldScalar T, FieldScalar U>
Mat<promote_t<T, U>> evaluate(const PolyMat<T>& p, U lambda) {
  using R = promote_t<T, U>;
  Mat<R> acc = p.coeff(p.degree_bound()).template cast<R>();
  for (int i = p.degree_bound() - 1; i >= 0; --i) acc = R(lambda) * acc + p.coeff(i).template cast<R>();
  return acc;
}

/// rev_g P(lambda) = lambda^g P(1/lambda); coefficient i becomes C_{g-i}.
template <FieldScalar T>
PolyMat<T> reversal(const PolyMat<T>& p, int g) {
  if (g < degree(p)) throw PreconditionError("grade below degree");
  const PolyMat<T> padded = p.with_degree_bound(g);
  std::vector<Mat<T>> c(static_cast<std::size_t>(g) + 1);
  for (int i = 0; i <= g; ++i) c[static_cast<std::size_t>(i)] = padded.coeff(g - i);
  return PolyMat<T>(std::move(c));
}

/// A(lambda) B(lambda)^T by coefficient convolution, grade = sum of grades.
template <FieldScalar T>
PolyMat<T> poly_multiply_transpose(const PolyMat<T>& a, const PolyMat<T>& b) {
  if (a.cols() != b.cols())
    throw DimensionError("A(l) B(l)^T needs equal column counts, got " + std::to_string(a.cols()) + " and " +
                         std::to_string(b.cols()));
  const int g = a.degree_bound() + b.degree_bound();
  std::vector<Mat<T>> c(static_cast<std::size_t>(g) + 1, Mat<T>::Zero(a.rows(), b.rows()));
  for (int i = 0; i <= a.degree_bound(); ++i)
    for (int j = 0; j <= b.degree_bound(); ++j)
      c[static_cast<std::size_t>(i + j)].noalias() += a.coeff(i) * b.coeff(j).transpose();
  return PolyMat<T>(std::move(c));
}

/// S_1(P) = [C_0; C_1; ...; C_d], the block column of coefficients.
template <FieldScalar T>
Mat<T> s1_matrix(const PolyMat<T>& p) {
  Mat<T> s((p.degree_bound() + 1) * p.rows(), p.cols());
  for (int i = 0; i <= p.degree_bound(); ++i) s.middleRows(i * p.rows(), p.rows()) = p.coeff(i);
  return s;
}

/// Inverse of s1_matrix for a given row count.
template <FieldScalar T>
PolyMat<T> from_s1_matrix(const Mat<T>& s, Index rows) {
  if (rows <= 0 || s.rows() % rows != 0) throw DimensionError("stacked matrix height is not a multiple of rows");
  std::vector<Mat<T>> c(static_cast<std::size_t>(s.rows() / rows));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = s.middleRows(static_cast<Index>(i) * rows, rows);
  return PolyMat<T>(std::move(c));
}

struct Norms {
  double spectral = 0.0;
  double frobenius = 0.0;
};

/// Spectral and Frobenius norms of S_1(P).
template <FieldScalar T>
Norms s1_norms(const PolyMat<T>& p) {
  const Mat<T> s = s1_matrix(p);
  Norms n;
  n.frobenius = s.norm();
  if (n.frobenius > 0.0) {
    Eigen::JacobiSVD<Mat<T>> svd(s);
    n.spectral = svd.singularValues()(0);
  }
  return n;
}

template <FieldScalar T>
double s1_frobenius(const PolyMat<T>& p) {
  double acc = 0.0;
  for (const auto& c : p.coeffs()) acc += c.squaredNorm();
  return std::sqrt(acc);
}

/// Rows of P selected by index, in the given order.
template <FieldScalar T>
PolyMat<T> select_rows(const PolyMat<T>& p, const std::vector<Index>& rows) {
  std::vector<Mat<T>> c;
  for (const auto& ci : p.coeffs()) {
    Mat<T> s(static_cast<Index>(rows.size()), p.cols());
    for (std::size_t r = 0; r < rows.size(); ++r) s.row(static_cast<Index>(r)) = ci.row(rows[r]);
    c.push_back(std::move(s));
  }
  return PolyMat<T>(std::move(c));
}

/// [A; B] in the larger of the two grades.
template <FieldScalar T>
PolyMat<T> vstack(const PolyMat<T>& a, const PolyMat<T>& b) {
  if (a.cols() != b.cols()) throw DimensionError("vertical stack needs equal column counts");
  const int g = std::max(a.degree_bound(), b.degree_bound());
  const auto pa = a.with_degree_bound(g);
  const auto pb = b.with_degree_bound(g);
  std::vector<Mat<T>> c;
  for (int i = 0; i <= g; ++i) {
    Mat<T> s(a.rows() + b.rows(), a.cols());
    s << pa.coeff(i), pb.coeff(i);
    c.push_back(std::move(s));
  }
  return PolyMat<T>(std::move(c));
}

/// Largest entrywise modulus of the coefficients of P - Q (grades may differ).
template <FieldScalar T>
double max_abs_difference(const PolyMat<T>& p, const PolyMat<T>& q) {
  const PolyMat<T> diff = p - q;
  double m = 0.0;
  for (const auto& c : diff.coeffs())
    if (c.size() > 0) m = std::max(m, c.cwiseAbs().maxCoeff());
  return m;
}

}  // namespace minbasis
