#pragma once

#include <cmath>
#include <optional>
#include <string>

#include "dual.hpp"
#include "fullsyl.hpp"
#include "io.hpp"
#include "lify.hpp"
#include "minimal.hpp"
#include "robust.hpp"

namespace minbasis {

/// JSON number, with "inf", "-inf" and "nan" spelled out as strings.
inline Json num(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

template <class T>
Json opt(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

inline Json to_json(const KPrimeT& kt) { return {{"k_prime", kt.k_prime}, {"t", kt.t}}; }

inline Json to_json(const RankProfile& p) {
  Json j;
  j["rows"] = p.rows;
  j["cols"] = p.cols;
  j["degree_bound"] = p.degree_bound;
  j["k_max"] = p.k_max;
  j["ranks"] = p.ranks;
  j["nullities"] = p.nullities;
  j["alphas"] = p.alphas;
  j["d_prime"] = opt(p.d_prime);
  j["normal_rank_full"] = p.normal_rank_full;
  j["last_increment"] = p.last_increment;
  if (p.normal_rank_full) j["minimal_indices"] = indices_from_alphas(p.alphas);
  Json tols = Json::array();
  for (double t : p.tolerances) tols.push_back(num(t));
  j["tolerances"] = std::move(tols);
  j["marginal"] = p.marginal;
  j["evaluation_rank"] = opt(p.evaluation_rank);
  return j;
}

inline Json to_json(const Certificate& c) {
  Json j;
  j["is_minimal_basis"] = c.is_minimal_basis;
  j["reason"] = to_string(c.reason);
  j["hr_rank"] = c.hr_rank;
  j["d_prime"] = opt(c.d_prime);
  j["degree_sum_expected"] = c.degree_sum_expected;
  j["degree_sum_observed"] = c.degree_sum_observed;
  j["row_degrees"] = c.row_degrees;
  j["tolerance_used"] = num(c.tolerance_used);
  j["marginal"] = c.marginal;
  j["profile"] = to_json(c.profile);
  return j;
}

inline Json to_json(const ClassicalCheck& c) {
  return {{"row_reduced", c.row_reduced},
          {"hr_rank", c.hr_rank},
          {"no_sampled_rank_drop", c.no_sampled_rank_drop},
          {"min_sigma_m", num(c.min_sigma_m)},
          {"argmin", Json::array({c.argmin.real(), c.argmin.imag()})},
          {"samples", c.samples},
          {"includes_origin", c.includes_origin},
          {"passed", c.passed()},
          {"conclusive", false}};
}

inline Json to_json(const RankCheck& c) {
  return {{"k", c.k},
          {"requirement", c.full_column ? "full_column_rank" : "full_row_rank"},
          {"rank", c.rank},
          {"required", c.required},
          {"sigma", num(c.sigma_required)},
          {"tolerance", num(c.tolerance)},
          {"margin", num(c.margin())},
          {"passed", c.passed}};
}

inline Json to_json(const FullSylReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checked_ranks) checks.push_back(to_json(c));
  return {{"has_full_sylvester_rank", r.has_full_sylvester_rank},
          {"k_prime", r.k_prime_t.k_prime},
          {"t", r.k_prime_t.t},
          {"checked_ranks", std::move(checks)},
          {"predicted_indices", r.predicted_indices},
          {"min_margin", num(r.min_margin())}};
}

inline Json to_json(const GenericityRecord& g) {
  Json fails = Json::array();
  for (const auto& f : g.failures) fails.push_back({{"trial", f.trial}, {"margin", num(f.margin)}});
  return {{"m", g.m},
          {"n", g.n},
          {"d", g.d},
          {"trials", g.trials},
          {"seed", g.seed},
          {"dist", to_string(g.dist)},
          {"field", to_string(g.field)},
          {"zero_leading", g.zero_leading},
          {"successes", g.successes},
          {"failures", std::move(fails)},
          {"min_margin", num(g.min_margin)}};
}

inline Json to_json(const RadiusCandidate& c) {
  return {{"k", c.k}, {"sigma", num(c.sigma)}, {"radius", num(c.radius)}};
}

inline Json to_json(const RadiusReport& r) {
  Json scanned = Json::array();
  for (const auto& c : r.scanned) scanned.push_back(to_json(c));
  return {{"kind", to_string(r.kind)}, {"radius", num(r.radius)}, {"k_used", r.k_used}, {"scanned", std::move(scanned)}};
}

inline Json to_json(const Thetas& t) {
  Json cands = Json::array();
  for (const auto& c : t.candidates) cands.push_back(to_json(c));
  return {{"case", to_string(t.which)},
          {"k_prime", t.k_prime_t.k_prime},
          {"t", t.k_prime_t.t},
          {"theta1", num(t.theta1)},
          {"theta2", num(t.theta2)},
          {"candidates", std::move(cands)}};
}

inline Json to_json(const LowerBoundReport& r) {
  return {{"d_prime", r.d_prime},
          {"lower_bound", num(r.lower_bound)},
          {"sigma_m_leading", num(r.sigma_m_leading)},
          {"leading_ok", r.leading_ok},
          {"min_sigma_sampled", num(r.min_sigma_sampled)},
          {"tightest_ratio", num(r.tightest_ratio)},
          {"samples", r.samples},
          {"violations", r.violations},
          {"sampled", r.sampled}};
}

template <FieldScalar T>
Json to_json(const SharpWitness<T>& w) {
  return {{"distance", num(w.distance)}, {"sigma", num(w.sigma)}, {"witness", polymat_to_json(w.witness)}};
}

template <FieldScalar T>
Json to_json(const DualPair<T>& p) {
  return {{"k_prime", p.k_prime_t.k_prime},
          {"t", p.k_prime_t.t},
          {"residual", num(p.residual)},
          {"n_row_degrees", row_degrees(p.N)},
          {"N", polymat_to_json(p.N)}};
}

template <FieldScalar T>
Json to_json(const DualityCheck<T>& c) {
  Json j{{"valid", c.valid},
         {"failing", to_string(c.failing)},
         {"detail", c.detail},
         {"residual", num(c.residual)},
         {"residual_threshold", num(c.residual_threshold)}};
  j["m_certificate"] = c.m_certificate ? to_json(*c.m_certificate) : Json(nullptr);
  j["n_certificate"] = c.n_certificate ? to_json(*c.n_certificate) : Json(nullptr);
  return j;
}

template <FieldScalar T>
Json to_json(const PerturbReport<T>& r) {
  Json j;
  j["thetas"] = to_json(r.thetas);
  j["admissibility"] = {{"applied_norm", num(r.applied_norm)},
                        {"admissible_radius", num(r.admissible_radius)},
                        {"sigma_n_hr", num(r.sigma_n_hr)},
                        {"norm_s1_N", num(r.norm_s1_n)},
                        {"holds", r.applied_norm < r.admissible_radius}};
  j["bound"] = {{"relative_change", num(r.relative_change)},
                {"guaranteed_bound", num(r.guaranteed_bound)},
                {"holds", r.bound_holds()}};
  j["row_degree_split"] = {{"x_rows", r.split.x_rows}, {"y_rows", r.split.y_rows}, {"permutation", r.split.permutation}};
  j["perturbed_row_degrees"] = r.perturbed_row_degrees;
  j["perturbed_pair"] = to_json(r.perturbed);
  j["delta_N"] = polymat_to_json(r.delta_N);
  return j;
}

template <FieldScalar T>
Json to_json(const Lification<T>& l) {
  return {{"ell", l.ell},
          {"k_prime", l.k_prime},
          {"p_rows", l.P.rows()},
          {"p_cols", l.P.cols()},
          {"p_degree_bound", l.P.degree_bound()},
          {"duality_residual", num(l.duality_residual)},
          {"recovery_residual", num(l.recovery_residual)},
          {"P", polymat_to_json(l.P)}};
}

template <FieldScalar T>
Json to_json(const BackwardErrorReport<T>& r) {
  return {{"C_PL", num(r.C_PL)},
          {"factors",
           {{"norm_L", num(r.norm_L)},
            {"norm_P", num(r.norm_P)},
            {"norm_N", num(r.norm_N)},
            {"sigma_S_kp1", num(r.sigma_kp1)},
            {"norm_K", num(r.norm_K)},
            {"norm_dK", num(r.norm_dK)}}},
          {"prefactor", num(r.prefactor)},
          {"norm_dL", num(r.norm_dL)},
          {"relative_dP", num(r.relative_dP)},
          {"bound_rhs", num(r.bound_rhs)},
          {"holds", r.holds()},
          {"slack_factor", num(r.slack_factor())},
          {"admissible", r.admissible},
          {"admissibility",
           {{"applied_norm", num(r.perturbation.applied_norm)},
            {"admissible_radius", num(r.perturbation.admissible_radius)}}},
          {"delta_P", polymat_to_json(r.delta_P)}};
}

inline Json to_json(const ShiftCheck& s) {
  return {{"checked", s.checked},
          {"passed", s.passed},
          {"notice", s.notice},
          {"l_indices", s.l_indices},
          {"p_indices", s.p_indices}};
}

}  // namespace minbasis
