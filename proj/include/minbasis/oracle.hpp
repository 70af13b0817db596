#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "minimal.hpp"
#include "polymat.hpp"

namespace minbasis {

/// Dense matrix of exact rationals (always in canonical gcd-reduced form).
class RationalMatrix {
 public:
  RationalMatrix(Index rows, Index cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows * cols)) {
    if (rows <= 0 || cols <= 0) throw DimensionError("rational matrix must have positive dimensions");
  }

  /// Every finite double is a dyadic rational, so this is exact.
  static RationalMatrix from_double(const Mat<double>& m) {
    RationalMatrix r(m.rows(), m.cols());
    for (Index i = 0; i < m.rows(); ++i)
      for (Index j = 0; j < m.cols(); ++j) {
        if (!std::isfinite(m(i, j))) throw PreconditionError("non-finite entry has no rational value");
        r(i, j) = mpq_class(m(i, j));
      }
    return r;
  }

  static RationalMatrix from_integers(const std::vector<std::vector<long>>& rows) {
    if (rows.empty() || rows.front().empty()) throw DimensionError("rational matrix must be non-empty");
    RationalMatrix r(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != rows.front().size()) throw DimensionError("ragged integer matrix");
      for (std::size_t j = 0; j < rows[i].size(); ++j)
        r(static_cast<Index>(i), static_cast<Index>(j)) = mpq_class(rows[i][j]);
    }
    return r;
  }

  Index rows() const noexcept { return rows_; }
  Index cols() const noexcept { return cols_; }
  mpq_class& operator()(Index i, Index j) { return a_[static_cast<std::size_t>(i * cols_ + j)]; }
  const mpq_class& operator()(Index i, Index j) const { return a_[static_cast<std::size_t>(i * cols_ + j)]; }

  RationalMatrix transpose() const {
    RationalMatrix t(cols_, rows_);
    for (Index i = 0; i < rows_; ++i)
      for (Index j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

 private:
  Index rows_;
  Index cols_;
  std::vector<mpq_class> a_;
};

using RationalVector = std::vector<mpq_class>;

/// Rank by fraction-free (Bareiss) elimination on the integer matrix obtained
/// by clearing each row's denominators, with full pivoting on the largest
/// magnitude.
inline Index exact_rank(const RationalMatrix& a) {
  const Index m = a.rows();
  const Index n = a.cols();
  std::vector<std::vector<mpz_class>> z(static_cast<std::size_t>(m), std::vector<mpz_class>(static_cast<std::size_t>(n)));
  for (Index i = 0; i < m; ++i) {
    mpz_class l = 1;
    for (Index j = 0; j < n; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a(i, j).get_den_mpz_t());
    for (Index j = 0; j < n; ++j) {
      const mpq_class& q = a(i, j);
      z[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = q.get_num() * (l / q.get_den());
    }
  }
  auto at = [&](Index i, Index j) -> mpz_class& { return z[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; };

  mpz_class prev = 1;
  Index k = 0;
  for (; k < std::min(m, n); ++k) {
    Index pi = -1, pj = -1;
    for (Index i = k; i < m; ++i)
      for (Index j = k; j < n; ++j)
        if (sgn(at(i, j)) != 0 && (pi < 0 || mpz_cmpabs(at(i, j).get_mpz_t(), at(pi, pj).get_mpz_t()) > 0)) {
          pi = i;
          pj = j;
        }
    if (pi < 0) break;
    std::swap(z[static_cast<std::size_t>(k)], z[static_cast<std::size_t>(pi)]);
    if (pj != k)
      for (Index i = 0; i < m; ++i) swap(at(i, k), at(i, pj));
    for (Index i = k + 1; i < m; ++i) {
      for (Index j = k + 1; j < n; ++j) {
        at(i, j) = at(i, j) * at(k, k) - at(i, k) * at(k, j);
        mpz_divexact(at(i, j).get_mpz_t(), at(i, j).get_mpz_t(), prev.get_mpz_t());
      }
      at(i, k) = 0;
    }
    prev = at(k, k);
  }
  return k;
}

/// Exact basis of the right null space from the reduced row echelon form;
/// one vector per free column.
inline std::vector<RationalVector> exact_nullspace(const RationalMatrix& a) {
  RationalMatrix r = a;
  const Index m = r.rows();
  const Index n = r.cols();
  std::vector<Index> pivots;
  Index row = 0;
  for (Index c = 0; c < n && row < m; ++c) {
    Index p = row;
    while (p < m && sgn(r(p, c)) == 0) ++p;
    if (p == m) continue;
    if (p != row)
      for (Index j = 0; j < n; ++j) swap(r(p, j), r(row, j));
    const mpq_class inv = 1 / r(row, c);
    for (Index j = c; j < n; ++j) r(row, j) *= inv;
    for (Index i = 0; i < m; ++i) {
      if (i == row || sgn(r(i, c)) == 0) continue;
      const mpq_class f = r(i, c);
      for (Index j = c; j < n; ++j) r(i, j) -= f * r(row, j);
    }
    pivots.push_back(c);
    ++row;
  }
  std::vector<RationalVector> basis;
  std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
  for (Index c : pivots) is_pivot[static_cast<std::size_t>(c)] = true;
  for (Index f = 0; f < n; ++f) {
    if (is_pivot[static_cast<std::size_t>(f)]) continue;
    RationalVector v(static_cast<std::size_t>(n), mpq_class(0));
    v[static_cast<std::size_t>(f)] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i)
      v[static_cast<std::size_t>(pivots[i])] = -r(static_cast<Index>(i), f);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// A v, exactly.
inline RationalVector exact_multiply(const RationalMatrix& a, const RationalVector& v) {
  if (static_cast<Index>(v.size()) != a.cols()) throw DimensionError("vector length does not match columns");
  RationalVector out(static_cast<std::size_t>(a.rows()), mpq_class(0));
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) out[static_cast<std::size_t>(i)] += a(i, j) * v[static_cast<std::size_t>(j)];
  return out;
}

/// S_k with exact entries.
inline RationalMatrix exact_sylvester(const PolyMat<double>& p, int k) {
  if (k < 1) throw PreconditionError("Sylvester matrix needs k >= 1");
  const int d = p.degree_bound();
  const Index m = p.rows();
  const Index q = p.cols();
  RationalMatrix s((k + d) * m, k * q);
  for (int j = 0; j < k; ++j)
    for (int i = 0; i <= d; ++i)
      for (Index r = 0; r < m; ++r)
        for (Index c = 0; c < q; ++c) s((i + j) * m + r, j * q + c) = mpq_class(p.coeff(i)(r, c));
  return s;
}

/// Exact normal rank: the largest rank of M(j) over the integers
/// j = 0, ..., m*d, more points than M can have rank drops.
inline Index exact_normal_rank(const PolyMat<double>& m) {
  std::vector<RationalMatrix> coeffs;
  for (int i = 0; i <= m.degree_bound(); ++i) coeffs.push_back(RationalMatrix::from_double(m.coeff(i)));
  const Index points = m.rows() * std::max(m.degree_bound(), 1) + 1;
  Index best = 0;
  for (Index j = 0; j < points && best < m.rows(); ++j) {
    RationalMatrix value(m.rows(), m.cols());
    mpq_class power = 1;
    for (const RationalMatrix& c : coeffs) {
      for (Index r = 0; r < m.rows(); ++r)
        for (Index s = 0; s < m.cols(); ++s) value(r, s) += power * c(r, s);
      power *= static_cast<long>(j);
    }
    best = std::max(best, exact_rank(value));
  }
  return best;
}

/// rank_profile with exact ranks (tolerances left empty).
inline RankProfile exact_rank_profile(const PolyMat<double>& m, std::optional<int> k_max = std::nullopt) {
  detail::require_wide(m, "exact_rank_profile");
  if (m.degree_bound() < 1) throw PreconditionError("exact_rank_profile needs degree bound >= 1");
  return detail::build_rank_profile(m.rows(), m.cols(), m.degree_bound(),
                                    k_max.value_or(default_k_max(m.rows(), m.degree_bound())),
                                    exact_normal_rank(m), [&](int k) { return exact_rank(exact_sylvester(m, k)); });
}

inline RankProfile exact_rank_profile(const PolyMat<Complex>&, std::optional<int> = std::nullopt) {
  throw PreconditionError("the exact oracle accepts real (rational) coefficients only");
}

}  // namespace minbasis
