#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "mevmix/copula.hpp"
#include "mevmix/model.hpp"
#include "mevmix/taildep.hpp"

namespace mevmix {

// Model descriptions.
//
// General form:
//   {"d": 2, "components": [{"alpha": 0.5, "beta": [0.6, 0.4],
//                            "copula": {"kind": "independence"}}, ...]}
// Copulas:
//   {"kind": "independence"} | {"kind": "comonotone"} | {"kind": "gumbel", "r": 0.5}
//   | {"kind": "m4", "a": [[[a_l1k1i1, ...], ...], ...]}   (indexed [l][k][i])
// Presets, expanded to the general form before anything else happens:
//   {"preset": "single", "d": 3, "alpha": 0.5, "copula": {...}}
//   {"preset": "asymmetric_logistic", "alphas": [...], "betas": [[...], ...]}
//   {"preset": "tawn", "d": 3, "terms": [{"subset": [1, 2], "alpha": 0.5,
//                                         "beta": [0.3, 0.4], "copula": {...}}]}
//   {"preset": "geometric_mean", "d": 2, "weights": [...], "alphas": [...],
//    "copulas": [{...}, ...]}
// Subsets use one-based coordinates. All functions throw format_error on a
// malformed description; shape problems surface as shape_error.
MevMixModel model_from_json(const nlohmann::json& j);
MevMixModel load_model(const std::filesystem::path& path);

MaxStableCopula copula_from_json(const nlohmann::json& j, std::size_t dimension);

// Always the general form.
nlohmann::json to_json(const MevMixModel& m);
nlohmann::json to_json(const MaxStableCopula& c);

// {"J": [1-based...], "lambda": ..., "numerator_mass": ..., "denominator_mass": ...,
//  "method": "...", "degenerate": ..., "digits_lost": ..., "ill_conditioned": ...,
//  plus "threshold", "n", "joint_exceedances", "conditioning_exceedances",
//  "standard_error" for empirical reports}. NaN is written as null.
nlohmann::json to_json(const TailDepReport& r);

// One CSV row per report; J is written as space-separated one-based
// coordinates, missing fields are empty.
std::string tail_report_csv_header();
std::string to_csv_row(const TailDepReport& r);

// Shortest representation that reads back to the same double.
std::string format_double(double v);

}  // namespace mevmix
