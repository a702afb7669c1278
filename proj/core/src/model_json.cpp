#include "mevmix/model_json.hpp"

#include <cmath>
#include <fstream>

#include <fmt/format.h>

#include "mevmix/error.hpp"

namespace mevmix {

using nlohmann::json;

namespace {

const json& require_key(const json& j, const char* key, const std::string& where) {
  if (!j.is_object()) throw format_error(where + ": expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) throw format_error(where + ": missing key \"" + key + "\"");
  return *it;
}

double as_number(const json& j, const std::string& where) {
  if (!j.is_number()) throw format_error(where + ": expected a number");
  return j.get<double>();
}

std::size_t as_count(const json& j, const std::string& where) {
  if (!j.is_number_integer() || j.get<long long>() < 1)
    throw format_error(where + ": expected a positive integer");
  return j.get<std::size_t>();
}

std::vector<double> as_vector(const json& j, const std::string& where) {
  if (!j.is_array()) throw format_error(where + ": expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(as_number(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<std::vector<double>> as_matrix(const json& j, const std::string& where) {
  if (!j.is_array()) throw format_error(where + ": expected an array of arrays");
  std::vector<std::vector<double>> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(as_vector(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

SubsetMask as_subset(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) throw format_error(where + ": expected a nonempty coordinate list");
  std::vector<std::size_t> idx;
  for (const auto& v : j) {
    if (!v.is_number_integer() || v.get<long long>() < 1)
      throw format_error(where + ": coordinates are positive integers (one-based)");
    idx.push_back(v.get<std::size_t>() - 1);
  }
  try {
    return SubsetMask::from_indices(idx);
  } catch (const domain_error& e) {
    throw format_error(where + ": " + e.what());
  }
}

MevMixModel general_from_json(const json& j) {
  const std::size_t d = as_count(require_key(j, "d", "model"), "model.d");
  const json& comps = require_key(j, "components", "model");
  if (!comps.is_array()) throw format_error("model.components: expected an array");
  std::vector<MixtureComponent> out;
  for (std::size_t c = 0; c < comps.size(); ++c) {
    const std::string where = "model.components[" + std::to_string(c) + "]";
    MixtureComponent mc;
    mc.alpha = as_number(require_key(comps[c], "alpha", where), where + ".alpha");
    mc.beta = as_vector(require_key(comps[c], "beta", where), where + ".beta");
    mc.copula = copula_from_json(require_key(comps[c], "copula", where), d);
    out.push_back(std::move(mc));
  }
  return MevMixModel(d, std::move(out));
}

std::vector<MaxStableCopula> copulas_from_json(const json& j, std::size_t d, const std::string& where) {
  if (!j.is_array()) throw format_error(where + ": expected an array of copulas");
  std::vector<MaxStableCopula> out;
  for (const auto& c : j) out.push_back(copula_from_json(c, d));
  return out;
}

MevMixModel preset_from_json(const json& j, const std::string& preset) {
  const std::string where = "preset " + preset;
  if (preset == "single") {
    const std::size_t d = as_count(require_key(j, "d", where), where + ".d");
    return make_single_mixture(as_number(require_key(j, "alpha", where), where + ".alpha"),
                               copula_from_json(require_key(j, "copula", where), d));
  }
  if (preset == "asymmetric_logistic") {
    return make_asymmetric_logistic(as_vector(require_key(j, "alphas", where), where + ".alphas"),
                                    as_matrix(require_key(j, "betas", where), where + ".betas"));
  }
  if (preset == "tawn") {
    const std::size_t d = as_count(require_key(j, "d", where), where + ".d");
    const json& terms = require_key(j, "terms", where);
    if (!terms.is_array()) throw format_error(where + ".terms: expected an array");
    std::vector<TawnTerm> out;
    for (std::size_t t = 0; t < terms.size(); ++t) {
      const std::string tw = where + ".terms[" + std::to_string(t) + "]";
      TawnTerm term{as_subset(require_key(terms[t], "subset", tw), tw + ".subset"),
                    as_number(require_key(terms[t], "alpha", tw), tw + ".alpha"),
                    as_vector(require_key(terms[t], "beta", tw), tw + ".beta"),
                    std::nullopt};
      if (auto it = terms[t].find("copula"); it != terms[t].end())
        term.copula = copula_from_json(*it, term.subset.size());
      out.push_back(std::move(term));
    }
    try {
      return make_tawn_model(d, out);
    } catch (const domain_error& e) {
      throw format_error(where + ": " + e.what());
    }
  }
  if (preset == "geometric_mean") {
    const std::size_t d = as_count(require_key(j, "d", where), where + ".d");
    return make_geometric_mean(as_vector(require_key(j, "weights", where), where + ".weights"),
                               as_vector(require_key(j, "alphas", where), where + ".alphas"),
                               copulas_from_json(require_key(j, "copulas", where), d, where + ".copulas"));
  }
  throw format_error("unknown preset \"" + preset + "\"");
}

}  // namespace

MaxStableCopula copula_from_json(const json& j, std::size_t dimension) {
  const json& kind_j = require_key(j, "kind", "copula");
  if (!kind_j.is_string()) throw format_error("copula.kind: expected a string");
  const auto kind = kind_j.get<std::string>();
  if (kind == "independence") return MaxStableCopula::independence(dimension);
  if (kind == "comonotone") return MaxStableCopula::comonotone(dimension);
  if (kind == "gumbel")
    return MaxStableCopula::gumbel(dimension, as_number(require_key(j, "r", "copula"), "copula.r"));
  if (kind == "m4") {
    const json& a = require_key(j, "a", "copula");
    if (!a.is_array()) throw format_error("copula.a: expected a nested [l][k][i] array");
    std::vector<std::vector<std::vector<double>>> nested;
    for (std::size_t l = 0; l < a.size(); ++l)
      nested.push_back(as_matrix(a[l], "copula.a[" + std::to_string(l) + "]"));
    auto c = MaxStableCopula::m4(M4Coefficients::from_nested(nested));
    if (c.dimension() != dimension)
      throw shape_error("M4 coefficients have " + std::to_string(c.dimension()) +
                        " coordinates, expected " + std::to_string(dimension));
    return c;
  }
  throw format_error("unknown copula kind \"" + kind + "\"");
}

MevMixModel model_from_json(const json& j) {
  if (!j.is_object()) throw format_error("model: expected a JSON object");
  if (auto it = j.find("preset"); it != j.end()) {
    if (!it->is_string()) throw format_error("model.preset: expected a string");
    return preset_from_json(j, it->get<std::string>());
  }
  return general_from_json(j);
}

MevMixModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw format_error("cannot open model file " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw format_error("malformed JSON in " + path.string() + ": " + e.what());
  }
  return model_from_json(j);
}

json to_json(const MaxStableCopula& c) {
  switch (c.kind()) {
    case CopulaKind::independence: return {{"kind", "independence"}};
    case CopulaKind::comonotone: return {{"kind", "comonotone"}};
    case CopulaKind::gumbel: return {{"kind", "gumbel"}, {"r", c.gumbel_r()}};
    case CopulaKind::m4: return {{"kind", "m4"}, {"a", c.m4_coefficients().to_nested()}};
  }
  return {};
}

json to_json(const MevMixModel& m) {
  json comps = json::array();
  for (const auto& c : m.components())
    comps.push_back({{"alpha", c.alpha}, {"beta", c.beta}, {"copula", to_json(c.copula)}});
  return {{"d", m.dimension()}, {"components", comps}};
}

namespace {

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json one_based(SubsetMask s) {
  json out = json::array();
  for (auto i : s.indices()) out.push_back(i + 1);
  return out;
}

}  // namespace

json to_json(const TailDepReport& r) {
  json j{{"J", one_based(r.conditioning)},
         {"d", r.dimension},
         {"lambda", number_or_null(r.lambda)},
         {"numerator_mass", number_or_null(r.numerator_mass)},
         {"denominator_mass", number_or_null(r.denominator_mass)},
         {"method", to_string(r.method)},
         {"degenerate", r.degenerate}};
  if (r.method != TailDepMethod::empirical) {
    j["digits_lost"] = number_or_null(r.digits_lost);
    j["ill_conditioned"] = r.ill_conditioned;
  }
  if (r.threshold) j["threshold"] = *r.threshold;
  if (r.sample_count) j["n"] = *r.sample_count;
  if (r.joint_exceedances) j["joint_exceedances"] = *r.joint_exceedances;
  if (r.conditioning_exceedances) j["conditioning_exceedances"] = *r.conditioning_exceedances;
  if (r.standard_error) j["standard_error"] = number_or_null(*r.standard_error);
  return j;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return fmt::format("{}", v);
}

std::string tail_report_csv_header() {
  return "J,d,method,lambda,numerator_mass,denominator_mass,degenerate,digits_lost,"
         "threshold,n,joint_exceedances,conditioning_exceedances,standard_error";
}

std::string to_csv_row(const TailDepReport& r) {
  std::string js;
  for (auto i : r.conditioning.indices()) {
    if (!js.empty()) js += ' ';
    js += std::to_string(i + 1);
  }
  auto opt = [](const auto& o) -> std::string {
    if (!o) return "";
    if constexpr (std::is_same_v<std::decay_t<decltype(*o)>, double>)
      return format_double(*o);
    else
      return std::to_string(*o);
  };
  const bool empirical = r.method == TailDepMethod::empirical;
  return fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{}", js, r.dimension, to_string(r.method),
                     format_double(r.lambda), format_double(r.numerator_mass),
                     format_double(r.denominator_mass), r.degenerate ? "true" : "false",
                     empirical ? "" : format_double(r.digits_lost), opt(r.threshold),
                     opt(r.sample_count), opt(r.joint_exceedances),
                     opt(r.conditioning_exceedances), opt(r.standard_error));
}

}  // namespace mevmix
