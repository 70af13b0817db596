#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <vector>

#include "minimal.hpp"
#include "polymat.hpp"
#include "random.hpp"
#include "sylvester.hpp"

namespace minbasis {

/// k' = ceil(m d / n) and t = n k' - m d, 0 <= t < n. k' is the first k for
/// which S_k has at least as many columns as rows.
struct KPrimeT {
  int k_prime = 0;
  int t = 0;

  friend bool operator==(const KPrimeT&, const KPrimeT&) = default;
};

inline KPrimeT kprime_t(Index m, Index n, int d) {
  if (m < 1 || n < 1 || d < 1) throw PreconditionError("kprime_t needs m, n, d >= 1");
  const Index md = m * d;
  const Index kp = (md + n - 1) / n;
  return {static_cast<int>(kp), static_cast<int>(n * kp - md)};
}

/// Multiset {k'-1 repeated t times, k' repeated n-t times}.
inline std::vector<int> predicted_minimal_indices(Index m, Index n, int d) {
  const KPrimeT kt = kprime_t(m, n, d);
  std::vector<int> out(static_cast<std::size_t>(kt.t), kt.k_prime - 1);
  out.insert(out.end(), static_cast<std::size_t>(n - kt.t), kt.k_prime);
  return out;
}

/// One full-rank requirement on a Sylvester matrix.
struct RankCheck {
  int k = 0;
  bool full_column = false;  // otherwise full row rank is required
  Index rank = 0;
  Index required = 0;
  double sigma_required = 0.0;  // sigma_required(S_k), the smallest singular value
  double tolerance = 0.0;
  bool passed = false;
  /// sigma_required / tolerance.
  double margin() const {
    if (tolerance > 0.0) return sigma_required / tolerance;
    return sigma_required > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  }
};

struct FullSylReport {
  bool has_full_sylvester_rank = false;
  KPrimeT k_prime_t;
  std::vector<RankCheck> checked_ranks;
  std::vector<int> predicted_indices;

  double min_margin() const {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& c : checked_ranks) m = std::min(m, c.margin());
    return m;
  }
};

namespace detail {

template <FieldScalar T>
RankCheck check_full_rank(const PolyMat<T>& m, int k, bool full_column, std::optional<double> tol) {
  const Mat<T> s = sylvester(m, k).data;
  const RankDecision dec = rank_nullity(s, tol);
  RankCheck c;
  c.k = k;
  c.full_column = full_column;
  c.rank = dec.rank;
  c.required = full_column ? s.cols() : s.rows();
  c.sigma_required = dec.singular_values.back();
  c.tolerance = dec.tolerance_used;
  c.passed = dec.rank == c.required;
  return c;
}

template <FieldScalar T>
void require_fullsyl_shape(const PolyMat<T>& m, const char* what) {
  if (m.rows() >= m.cols())
    throw PreconditionError(std::string(what) + " needs rows < cols, got " + std::to_string(m.rows()) + "x" +
                            std::to_string(m.cols()));
  if (m.degree_bound() < 1) throw PreconditionError(std::string(what) + " needs degree bound >= 1");
}

}  // namespace detail

/// All S_k have full rank iff (k' > 1, t > 0): S_{k'-1} full column rank and
/// S_{k'} full row rank; (k' = 1 or t = 0): S_{k'} full row rank.
template <FieldScalar T>
FullSylReport has_full_sylvester_rank(const PolyMat<T>& m, std::optional<double> tol = std::nullopt) {
  detail::require_fullsyl_shape(m, "has_full_sylvester_rank");
  const Index n = m.cols() - m.rows();
  FullSylReport r;
  r.k_prime_t = kprime_t(m.rows(), n, m.degree_bound());
  r.predicted_indices = predicted_minimal_indices(m.rows(), n, m.degree_bound());
  const auto [kp, t] = r.k_prime_t;
  if (kp > 1 && t > 0) r.checked_ranks.push_back(detail::check_full_rank(m, kp - 1, true, tol));
  r.checked_ranks.push_back(detail::check_full_rank(m, kp, false, tol));
  r.has_full_sylvester_rank =
      std::all_of(r.checked_ranks.begin(), r.checked_ranks.end(), [](const RankCheck& c) { return c.passed; });
  return r;
}

/// For a full-Sylvester-rank M the right minimal indices add up to m d.
template <FieldScalar T>
bool index_sum_check(const PolyMat<T>& m, std::optional<double> tol = std::nullopt) {
  if (!has_full_sylvester_rank(m, tol).has_full_sylvester_rank)
    throw PreconditionError("index_sum_check needs a full-Sylvester-rank matrix");
  const auto idx = right_minimal_indices(m, tol);
  return std::accumulate(idx.begin(), idx.end(), 0L) == static_cast<long>(m.rows()) * m.degree_bound();
}

struct GenericityFailure {
  int trial = 0;
  double margin = 0.0;
};

/// Outcome of a Monte Carlo run of the full-Sylvester-rank detector.
struct GenericityRecord {
  Index m = 0;
  Index n = 0;
  int d = 0;
  int trials = 0;
  std::uint64_t seed = 0;
  Distribution dist = Distribution::gaussian;
  bool zero_leading = false;
  Field field = Field::real;
  int successes = 0;
  std::vector<GenericityFailure> failures;
  double min_margin = std::numeric_limits<double>::infinity();

  double success_fraction() const { return trials ? static_cast<double>(successes) / trials : 0.0; }
};

/// Samples `trials` i.i.d. matrices in F[lambda]^{m x (m+n)}_d. Trial i draws
/// from trial_rng(seed, i). With zero_leading, C_d = 0 (a stratum where the
/// property always fails).
template <FieldScalar T = double>
GenericityRecord genericity_experiment(Index m, Index n, int d, int trials, std::uint64_t seed,
                                       Distribution dist = Distribution::gaussian, bool zero_leading = false,
                                       std::optional<double> tol = std::nullopt) {
  if (trials < 1) throw PreconditionError("genericity_experiment needs trials >= 1");
  kprime_t(m, n, d);  // validates dimensions
  GenericityRecord rec;
  rec.m = m;
  rec.n = n;
  rec.d = d;
  rec.trials = trials;
  rec.seed = seed;
  rec.dist = dist;
  rec.zero_leading = zero_leading;
  rec.field = scalar_traits<T>::field;
  for (int i = 0; i < trials; ++i) {
    Rng rng = trial_rng(seed, static_cast<std::uint64_t>(i));
    const PolyMat<T> sample = random_polymat<T>(m, m + n, d, rng, dist, zero_leading);
    const FullSylReport rep = has_full_sylvester_rank(sample, tol);
    const double margin = rep.min_margin();
    rec.min_margin = std::min(rec.min_margin, margin);
    if (rep.has_full_sylvester_rank)
      ++rec.successes;
    else
      rec.failures.push_back({i, margin});
  }
  return rec;
}

/// Rejection sampler: gaussian draws until one has full-Sylvester-rank with
/// decision margin at least `min_margin`. Gives up after 50 rejections.
template <FieldScalar T = double>
PolyMat<T> sample_full_sylvester(Index m, Index n, int d, std::uint64_t seed, double min_margin = 1e3,
                                 int max_rejections = 50) {
  kprime_t(m, n, d);
  for (int attempt = 0; attempt <= max_rejections; ++attempt) {
    Rng rng = trial_rng(seed, static_cast<std::uint64_t>(attempt));
    PolyMat<T> sample = random_polymat<T>(m, m + n, d, rng);
    const FullSylReport rep = has_full_sylvester_rank(sample);
    if (rep.has_full_sylvester_rank && rep.min_margin() >= min_margin) return sample;
  }
  throw NumericalError("sample_full_sylvester: " + std::to_string(max_rejections) +
                       " rejections in a row; dimensions or tolerance look suspicious");
}

}  // namespace minbasis
