#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <optional>
#include <vector>

#include "polymat.hpp"
#include "random.hpp"
#include "sylvester.hpp"

namespace minbasis {

/// Ranks r_k and nullities n_k of S_1..S_K, the counts alpha_j of right
/// minimal indices equal to j, and the stopping index d' (the largest right
/// minimal index): the smallest k >= 0 with r_{k+1} - r_k = m, r_0 = 0.
struct RankProfile {
  Index rows = 0;
  Index cols = 0;
  int degree_bound = 0;
  int k_max = 0;
  std::vector<Index> ranks;      // r_1 .. r_K
  std::vector<Index> nullities;  // n_1 .. n_K
  std::vector<Index> alphas;     // alpha_0 .. alpha_{d'}; empty without d'
  std::optional<int> d_prime;
  bool normal_rank_full = false;
  /// r_K - r_{K-1}; equals the normal rank once the increments stabilize.
  Index last_increment = 0;

  // Floating-point diagnostics (left empty by the exact oracle).
  std::vector<double> tolerances;
  bool marginal = false;
  /// Rank of M(lambda_0) at a random point, computed when no d' was found.
  std::optional<Index> evaluation_rank;

  Index n() const { return cols - rows; }
  /// r_k for k >= 0 (r_0 = 0).
  Index rank(int k) const { return k == 0 ? 0 : ranks.at(static_cast<std::size_t>(k - 1)); }
  Index nullity(int k) const { return k == 0 ? 0 : nullities.at(static_cast<std::size_t>(k - 1)); }
};

inline int default_k_max(Index rows, int degree_bound) { return static_cast<int>(rows) * degree_bound + 2; }

namespace detail {

// Shared recursion: `rank_of(k)` supplies r_k from whichever rank oracle.
// The increments r_{k+1} - r_k decrease to the normal rank, so a first
// increment equal to m marks d' only when the normal rank is m.
template <class RankOf>
RankProfile build_rank_profile(Index rows, Index cols, int degree_bound, int k_max, Index normal_rank,
                               RankOf&& rank_of) {
  if (k_max < 1) throw PreconditionError("k_max must be positive");
  RankProfile p;
  p.rows = rows;
  p.cols = cols;
  p.degree_bound = degree_bound;
  p.k_max = k_max;
  p.evaluation_rank = normal_rank;
  const bool full = normal_rank == rows;
  p.ranks.push_back(rank_of(1));
  if (full && p.ranks[0] == rows) p.d_prime = 0;
  for (int k = 1; !p.d_prime && k < k_max; ++k) {
    p.ranks.push_back(rank_of(k + 1));
    if (full && p.ranks[static_cast<std::size_t>(k)] - p.ranks[static_cast<std::size_t>(k - 1)] == rows)
      p.d_prime = k;
  }
  for (std::size_t i = 0; i < p.ranks.size(); ++i)
    p.nullities.push_back(static_cast<Index>(i + 1) * cols - p.ranks[i]);
  p.last_increment = p.ranks.size() >= 2 ? p.ranks.back() - p.ranks[p.ranks.size() - 2] : p.ranks.back();
  p.normal_rank_full = p.d_prime.has_value();
  if (p.d_prime) {
    p.alphas.push_back(p.nullity(1));
    for (int k = 1; k <= *p.d_prime; ++k) p.alphas.push_back(p.nullity(k + 1) - 2 * p.nullity(k) + p.nullity(k - 1));
  }
  return p;
}

template <FieldScalar T>
void require_wide(const PolyMat<T>& m, const char* what) {
  if (m.rows() > m.cols())
    throw PreconditionError(std::string(what) + " needs rows <= cols, got " + std::to_string(m.rows()) + "x" +
                            std::to_string(m.cols()));
}

}  // namespace detail

/// Normal rank as the largest rank of M(z) over m*d + 1 distinct points on the
/// unit circle; a rank drop can occur at no more than m*d points.
template <FieldScalar T>
Index normal_rank(const PolyMat<T>& m, std::optional<double> tol = std::nullopt) {
  const Index points = m.rows() * std::max(m.degree_bound(), 1) + 1;
  Index best = 0;
  for (Index j = 0; j < points && best < m.rows(); ++j) {
    const Complex z = std::polar(1.0, 0.7 + 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(points));
    best = std::max(best, rank_nullity(evaluate(m, z), tol).rank);
  }
  return best;
}

/// Floating-point rank profile. Scans k = 1, 2, ... until the rank
/// increment drops to m or k reaches k_max (default m*d + 2).
template <FieldScalar T>
RankProfile rank_profile(const PolyMat<T>& m, std::optional<int> k_max = std::nullopt,
                         std::optional<double> tol = std::nullopt) {
  detail::require_wide(m, "rank_profile");
  if (m.degree_bound() < 1) throw PreconditionError("rank_profile needs degree bound >= 1");
  std::vector<double> tols;
  bool marginal = false;
  auto rank_of = [&](int k) {
    const RankDecision dec = rank_nullity(sylvester(m, k).data, tol);
    tols.push_back(dec.tolerance_used);
    marginal = marginal || dec.marginal();
    return dec.rank;
  };
  RankProfile p = detail::build_rank_profile(m.rows(), m.cols(), m.degree_bound(),
                                             k_max.value_or(default_k_max(m.rows(), m.degree_bound())),
                                             normal_rank(m, tol), rank_of);
  p.tolerances = std::move(tols);
  p.marginal = marginal;
  return p;
}

/// Multiset {j repeated alpha_j times}, sorted ascending.
inline std::vector<int> indices_from_alphas(const std::vector<Index>& alphas) {
  std::vector<int> out;
  for (std::size_t j = 0; j < alphas.size(); ++j)
    for (Index c = 0; c < alphas[j]; ++c) out.push_back(static_cast<int>(j));
  return out;
}

inline std::vector<int> right_minimal_indices(const RankProfile& p) {
  if (!p.normal_rank_full) throw NotFullNormalRankError(p.last_increment, p.rows);
  return indices_from_alphas(p.alphas);
}

template <FieldScalar T>
std::vector<int> right_minimal_indices(const PolyMat<T>& m, std::optional<double> tol = std::nullopt) {
  return right_minimal_indices(rank_profile(m, std::nullopt, tol));
}

/// Sum of the right minimal indices, r_{d'} - m d', cross-checked against
/// n d' - n_{d'}.
inline long minimal_index_sum(const RankProfile& p, Index rows) {
  if (!p.d_prime) throw PreconditionError("minimal_index_sum needs d' (no rank increment equal to m was found)");
  const int dp = *p.d_prime;
  const long via_ranks = static_cast<long>(p.rank(dp) - rows * dp);
  const long via_nullities = static_cast<long>((p.cols - rows) * dp - p.nullity(dp));
  if (via_ranks != via_nullities) throw NumericalError("inconsistent rank profile: degree-sum formulas disagree");
  return via_ranks;
}

enum class CertificateReason { ok, hr_rank_deficient, degree_sum_mismatch, not_full_normal_rank, scan_exhausted };

inline const char* to_string(CertificateReason r) {
  switch (r) {
    case CertificateReason::ok: return "ok";
    case CertificateReason::hr_rank_deficient: return "hr_rank_deficient";
    case CertificateReason::degree_sum_mismatch: return "degree_sum_mismatch";
    case CertificateReason::not_full_normal_rank: return "not_full_normal_rank";
    case CertificateReason::scan_exhausted: return "scan_exhausted";
  }
  return "?";
}

struct Certificate {
  bool is_minimal_basis = false;
  CertificateReason reason = CertificateReason::scan_exhausted;
  Index hr_rank = 0;
  std::optional<int> d_prime;
  long degree_sum_expected = 0;  // sum of row degrees
  long degree_sum_observed = 0;  // r_{d'} - m d'
  double tolerance_used = 0.0;   // largest tolerance among the rank decisions used
  bool marginal = false;         // some rank decision had gap ratio below 1e3
  std::vector<int> row_degrees;
  RankProfile profile;
};

/// Minimal-basis test by finitely many ranks: rank(M_hr) = m and
/// r_{d'} - m d' equals the sum of the row degrees.
template <FieldScalar T>
Certificate certify_minimal_basis(const PolyMat<T>& m, std::optional<double> tol = std::nullopt) {
  detail::require_wide(m, "certify_minimal_basis");
  Certificate c;
  c.row_degrees = row_degrees(m);
  c.degree_sum_expected = std::accumulate(c.row_degrees.begin(), c.row_degrees.end(), 0L);
  const RankDecision hr = rank_nullity(highest_row_degree_matrix(m), tol);
  c.hr_rank = hr.rank;
  c.profile = rank_profile(m.degree_bound() >= 1 ? m : m.with_degree_bound(1), std::nullopt, tol);
  c.d_prime = c.profile.d_prime;
  c.tolerance_used = hr.tolerance_used;
  for (double t : c.profile.tolerances) c.tolerance_used = std::max(c.tolerance_used, t);
  c.marginal = hr.marginal() || c.profile.marginal;
  if (c.d_prime) c.degree_sum_observed = minimal_index_sum(c.profile, m.rows());

  if (c.profile.evaluation_rank && *c.profile.evaluation_rank < m.rows()) {
    c.reason = CertificateReason::not_full_normal_rank;
  } else if (c.hr_rank < m.rows()) {
    c.reason = CertificateReason::hr_rank_deficient;
  } else if (!c.d_prime) {
    c.reason = CertificateReason::scan_exhausted;
  } else if (c.degree_sum_observed != c.degree_sum_expected) {
    c.reason = CertificateReason::degree_sum_mismatch;
  } else {
    c.reason = CertificateReason::ok;
  }
  c.is_minimal_basis = c.reason == CertificateReason::ok;
  return c;
}

/// Test for matrices whose leading coefficient C_d has full row rank: M is
/// a minimal basis iff some S_k has full row rank, and the smallest such k
/// is d'. Throws PreconditionError when rank(C_d) < m.
template <FieldScalar T>
Certificate certify_full_leading(const PolyMat<T>& m, std::optional<double> tol = std::nullopt,
                                 std::optional<int> k_max = std::nullopt) {
  detail::require_wide(m, "certify_full_leading");
  const int d = m.degree_bound();
  if (d < 1) throw PreconditionError("certify_full_leading needs degree bound >= 1");
  const RankDecision lead = rank_nullity(m.coeff(d), tol);
  if (lead.rank < m.rows())
    throw PreconditionError("leading coefficient rank deficient - use certify_minimal_basis");

  Certificate c;
  c.row_degrees = row_degrees(m);
  c.degree_sum_expected = static_cast<long>(m.rows()) * d;
  c.hr_rank = lead.rank;
  c.tolerance_used = lead.tolerance_used;
  c.marginal = lead.marginal();

  std::optional<int> full_row_k;
  auto rank_of = [&](int k) {
    const RankDecision dec = rank_nullity(sylvester(m, k).data, tol);
    c.tolerance_used = std::max(c.tolerance_used, dec.tolerance_used);
    c.marginal = c.marginal || dec.marginal();
    if (!full_row_k && dec.rank == (k + d) * m.rows()) full_row_k = k;
    return dec.rank;
  };
  // The increment scan stops one step after the first full-row-rank S_k,
  // because the next increment is then exactly m.
  // A full-rank leading coefficient already gives full normal rank.
  c.profile = detail::build_rank_profile(m.rows(), m.cols(), d, k_max.value_or(default_k_max(m.rows(), d)), m.rows(),
                                         rank_of);
  c.d_prime = c.profile.d_prime;
  if (c.d_prime) c.degree_sum_observed = minimal_index_sum(c.profile, m.rows());

  if (full_row_k) {
    c.d_prime = full_row_k;
    c.reason = CertificateReason::ok;
  } else if (c.d_prime) {
    c.reason = CertificateReason::degree_sum_mismatch;  // r_{d'} != m (d + d')
  } else {
    c.reason = CertificateReason::scan_exhausted;
  }
  c.is_minimal_basis = c.reason == CertificateReason::ok;
  return c;
}

/// Forney's evaluation test, sampled: row reducedness plus full rank of
/// M(lambda_0) at finitely many points. A drop proves non-minimality; the
/// absence of a drop proves nothing.
struct ClassicalCheck {
  bool row_reduced = false;
  Index hr_rank = 0;
  bool no_sampled_rank_drop = true;
  double min_sigma_m = std::numeric_limits<double>::infinity();
  Complex argmin{0.0, 0.0};
  int samples = 0;
  bool includes_origin = true;
  /// True when neither test found a defect. Never a certificate.
  bool passed() const { return row_reduced && no_sampled_rank_drop; }
};

struct ClassicalOptions {
  std::vector<double> radii{0.5, 1.0, 2.0, 10.0};
  /// Evaluate at the disk centre lambda_0 = 0 as the first sample.
  bool include_origin = true;
  std::optional<double> tol;
};

template <FieldScalar T>
ClassicalCheck classical_check(const PolyMat<T>& m, int num_samples, std::uint64_t seed,
                               const ClassicalOptions& opts = {}) {
  detail::require_wide(m, "classical_check");
  if (num_samples < 1) throw PreconditionError("classical_check needs at least one sample");
  if (opts.radii.empty()) throw PreconditionError("classical_check needs at least one radius");
  ClassicalCheck out;
  out.includes_origin = opts.include_origin;
  const RankDecision hr = rank_nullity(highest_row_degree_matrix(m), opts.tol);
  out.hr_rank = hr.rank;
  out.row_reduced = hr.rank == m.rows();
  Rng rng = trial_rng(seed, 0);
  for (int s = 0; s < num_samples; ++s) {
    const Complex z = (opts.include_origin && s == 0)
                          ? Complex(0.0, 0.0)
                          : random_in_disk(rng, opts.radii[static_cast<std::size_t>(s) % opts.radii.size()]);
    const RankDecision dec = rank_nullity(evaluate(m, z), opts.tol);
    const double sm = dec.singular_values[static_cast<std::size_t>(m.rows() - 1)];
    if (sm < out.min_sigma_m) {
      out.min_sigma_m = sm;
      out.argmin = z;
    }
    if (dec.rank < m.rows()) out.no_sampled_rank_drop = false;
    ++out.samples;
  }
  return out;
}

}  // namespace minbasis
