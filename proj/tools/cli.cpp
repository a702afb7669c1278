#include "cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "mevmix/error.hpp"
#include "mevmix/model.hpp"
#include "mevmix/model_json.hpp"
#include "mevmix/taildep.hpp"
#include "mevmix/verify.hpp"

namespace mevmix::cli {

using nlohmann::json;

namespace {

// Thrown inside run() and mapped to an exit code at the top.
struct CliError {
  int code;
  std::string kind;
  std::string message;
  json extra = json::object();
};

void write_error(std::ostream& err, const CliError& e) {
  json body{{"code", e.code}, {"kind", e.kind}, {"message", e.message}};
  for (auto it = e.extra.begin(); it != e.extra.end(); ++it) body[it.key()] = it.value();
  err << json{{"error", body}}.dump() << '\n';
}

std::optional<Command> parse_command(const std::string& s) {
  if (s == "validate") return Command::validate;
  if (s == "eval") return Command::eval;
  if (s == "sample") return Command::sample;
  if (s == "taildep") return Command::taildep;
  if (s == "verify") return Command::verify;
  return std::nullopt;
}

std::vector<std::size_t> parse_coordinate_list(const std::string& s) {
  std::vector<std::size_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t pos = 0;
    long long v = 0;
    try {
      v = std::stoll(item, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != item.size() || v < 1)
      throw CliError{kUsage, "usage", "--J expects comma-separated one-based coordinates, got \"" + s + "\""};
    out.push_back(static_cast<std::size_t>(v));
  }
  if (out.empty()) throw CliError{kUsage, "usage", "--J needs at least one coordinate"};
  return out;
}

// Writes to --out when given, else to the stream passed to run().
class Sink {
 public:
  Sink(const std::optional<std::string>& path, std::ostream& fallback) : stream_(&fallback) {
    if (path) {
      file_.open(*path, std::ios::binary);
      if (!file_) throw CliError{kIo, "io", "cannot open output file " + *path};
      stream_ = &file_;
    }
  }
  std::ostream& operator*() { return *stream_; }
  void finish(const std::optional<std::string>& path) {
    stream_->flush();
    if (!*stream_) throw CliError{kIo, "io", "failed writing output" + (path ? " to " + *path : std::string())};
  }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

MevMixModel load_model_file(const std::string& path) {
  if (!std::filesystem::is_regular_file(path)) throw CliError{kIo, "io", "cannot read model file " + path};
  return load_model(path);
}

MevMixModel load_single_model(const RunConfig& c) {
  if (c.model_paths.size() != 1) throw CliError{kUsage, "usage", "this command needs exactly one --model"};
  auto m = load_model_file(c.model_paths.front());
  auto v = validate_model(m);
  if (!v.empty())
    throw CliError{kConstraintViolation, "constraint_violation",
                   "model " + c.model_paths.front() + " violates its constraints", json{{"violations", v}}};
  return m;
}

// Rows of numbers from a CSV or whitespace separated file; lines that do not
// start with a number (headers, comments) are skipped.
std::vector<std::vector<double>> read_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CliError{kIo, "io", "cannot open " + path};
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    for (auto& ch : line)
      if (ch == ',' || ch == ';' || ch == '\t' || ch == '\r') ch = ' ';
    std::istringstream ls(line);
    std::vector<double> row;
    std::string tok;
    while (ls >> tok) {
      char* end = nullptr;
      const double v = std::strtod(tok.c_str(), &end);
      if (end == tok.c_str() || *end != '\0') {
        if (row.empty()) break;  // header line
        throw CliError{kIo, "io", fmt::format("{}:{}: \"{}\" is not a number", path, lineno, tok)};
      }
      row.push_back(v);
    }
    if (!row.empty()) rows.push_back(std::move(row));
  }
  return rows;
}

std::string csv_header(char prefix, std::size_t d) {
  std::string s;
  for (std::size_t i = 0; i < d; ++i) s += fmt::format("{}{}{}", i ? "," : "", prefix, i + 1);
  return s;
}

constexpr std::size_t kAllSubsetsMaxDimension = 8;

std::vector<SubsetMask> requested_subsets(const RunConfig& c, std::size_t d) {
  std::vector<SubsetMask> out;
  if (c.j_sets.empty()) {
    // Every J costs 2^d exponent evaluations; past a few dimensions only singletons.
    if (d > kAllSubsetsMaxDimension) {
      for (std::size_t i = 0; i < d; ++i) out.push_back(SubsetMask::singleton(i));
    } else {
      for_each_nonempty_subset(SubsetMask::full(d), [&](SubsetMask j) { out.push_back(j); });
    }
    return out;
  }
  for (const auto& js : c.j_sets) {
    std::vector<std::size_t> zero_based;
    for (auto i : js) {
      if (i > d) throw CliError{kUsage, "usage", fmt::format("--J coordinate {} exceeds dimension {}", i, d)};
      zero_based.push_back(i - 1);
    }
    out.push_back(SubsetMask::from_indices(zero_based));
  }
  return out;
}

OutputFormat pick_format(const RunConfig& c) {
  if (c.format) return *c.format;
  if (c.out_path && c.out_path->size() >= 4 && c.out_path->ends_with(".csv")) return OutputFormat::csv;
  return OutputFormat::json;
}

int do_validate(const RunConfig& c, std::ostream& out) {
  const auto m = load_single_model(c);
  Sink sink(c.out_path, out);
  *sink << json{{"valid", true}, {"d", m.dimension()}, {"q", m.component_count()}, {"model", to_json(m)}}.dump()
        << '\n';
  sink.finish(c.out_path);
  return kOk;
}

int do_eval(const RunConfig& c, std::ostream& out) {
  const auto m = load_single_model(c);
  const std::size_t d = m.dimension();
  std::vector<std::vector<double>> grid;
  if (c.grid_file) {
    grid = read_table(*c.grid_file);
  } else {
    for (int k = 1; k <= 9; ++k) grid.emplace_back(d, k / 10.0);
  }
  for (std::size_t r = 0; r < grid.size(); ++r) {
    const auto& u = grid[r];
    if (u.size() != d)
      throw CliError{kDomain, "domain", fmt::format("grid point {} has {} coordinates, model dimension is {}", r + 1,
                                                    u.size(), d)};
    for (double v : u)
      if (!(v >= 0.0 && v <= 1.0))
        throw CliError{kDomain, "domain", fmt::format("grid point {} is outside [0,1]^d", r + 1)};
  }
  Sink sink(c.out_path, out);
  *sink << csv_header('u', d) << ",cdf,exponent\n";
  for (const auto& u : grid) {
    std::vector<double> x(d);
    for (std::size_t i = 0; i < d; ++i) x[i] = -std::log(u[i]);
    std::string line;
    for (std::size_t i = 0; i < d; ++i) line += format_double(u[i]) + ",";
    line += format_double(model_cdf(m, u)) + "," + format_double(model_exponent(m, x));
    *sink << line << '\n';
  }
  sink.finish(c.out_path);
  return kOk;
}

int do_sample(const RunConfig& c, std::ostream& out) {
  if (!c.seed) throw CliError{kUsage, "usage", "sample needs --seed"};
  if (!c.n) throw CliError{kUsage, "usage", "sample needs --n"};
  const auto m = load_single_model(c);
  const auto y = sample_model(m, *c.n, {*c.seed, c.threads});
  const std::size_t d = m.dimension();
  Sink sink(c.out_path, out);
  *sink << csv_header('y', d) << (c.uniform ? "," + csv_header('u', d) : std::string()) << '\n';
  std::string line;
  for (std::size_t r = 0; r < y.rows; ++r) {
    line.clear();
    const auto row = y.row(r);
    for (std::size_t i = 0; i < d; ++i) {
      if (i) line += ',';
      line += format_double(row[i]);
    }
    if (c.uniform)
      for (std::size_t i = 0; i < d; ++i) line += "," + format_double(std::exp(-1.0 / row[i]));
    *sink << line << '\n';
  }
  sink.finish(c.out_path);
  return kOk;
}

MarginTransform margin_transform(const RunConfig& c, MarginTransform fallback) {
  if (!c.margins) return fallback;
  if (*c.margins == "frechet") return MarginTransform::frechet;
  if (*c.margins == "ranks") return MarginTransform::ranks;
  throw CliError{kUsage, "usage", "--margins must be frechet or ranks"};
}

int do_taildep(const RunConfig& c, std::ostream& out) {
  std::vector<TailDepReport> reports;
  std::optional<MevMixModel> model;

  if (c.data_file) {
    // Empirical only, from external data.
    const auto rows = read_table(*c.data_file);
    if (rows.empty()) throw CliError{kIo, "io", *c.data_file + " contains no data rows"};
    SampleMatrix data;
    data.rows = rows.size();
    data.cols = rows.front().size();
    for (const auto& r : rows) {
      if (r.size() != data.cols) throw CliError{kIo, "io", *c.data_file + " has rows of different lengths"};
      data.values.insert(data.values.end(), r.begin(), r.end());
    }
    const auto transform = margin_transform(c, MarginTransform::ranks);
    for (auto j : requested_subsets(c, data.cols)) reports.push_back(empirical_lambda(data, j, c.u, transform));
  } else {
    model = load_single_model(c);
    const auto& m = *model;
    const auto subsets = requested_subsets(c, m.dimension());
    std::vector<double> alphas;
    std::vector<std::vector<double>> betas;
    for (const auto& comp : m.components()) {
      alphas.push_back(comp.alpha);
      betas.push_back(comp.beta);
    }
    for (auto j : subsets) {
      reports.push_back(orthant_lambda(m, j));
      if (m.all_copulas_are(CopulaKind::independence))
        reports.push_back(orthant_lambda_logistic(alphas, betas, j));
      else if (m.all_copulas_are(CopulaKind::m4))
        reports.push_back(m4_orthant_lambda(m, j));
    }
    if (c.n) {
      if (!c.seed) throw CliError{kUsage, "usage", "empirical tail dependence (--n) needs --seed"};
      const auto y = sample_model(m, *c.n, {*c.seed, c.threads});
      const auto transform = margin_transform(c, MarginTransform::frechet);
      for (auto j : subsets) reports.push_back(empirical_lambda(y, j, c.u, transform));
    }
  }

  Sink sink(c.out_path, out);
  if (pick_format(c) == OutputFormat::csv) {
    *sink << tail_report_csv_header() << '\n';
    for (const auto& r : reports) *sink << to_csv_row(r) << '\n';
  } else {
    json arr = json::array();
    for (const auto& r : reports) arr.push_back(to_json(r));
    json doc{{"reports", arr}};
    if (model) doc["model"] = to_json(*model);
    if (c.seed) doc["seed"] = *c.seed;
    *sink << doc.dump(2) << '\n';
  }
  sink.finish(c.out_path);
  return kOk;
}

int do_verify(const RunConfig& c, std::ostream& out) {
  if (!c.seed) throw CliError{kUsage, "usage", "verify needs --seed"};
  verify::SuiteOptions opts;
  opts.seed = *c.seed;
  opts.threads = c.threads;
  if (c.n) opts.samples = *c.n;

  auto results = verify::run_suite(opts);
  for (const auto& path : c.model_paths) {
    const auto m = load_model_file(path);
    auto more = verify::check_model(m, std::filesystem::path(path).stem().string(), opts);
    results.insert(results.end(), more.begin(), more.end());
  }
  Sink sink(c.out_path, out);
  *sink << verify::format_table(results);
  sink.finish(c.out_path);
  for (const auto& r : results)
    if (!r.passed) return kVerifyFailed;
  return kOk;
}

}  // namespace

std::optional<RunConfig> parse_args(int argc, const char* const* argv, std::ostream& out, std::ostream& err,
                                    int& exit_code) {
  RunConfig config;
  if (const char* env = std::getenv(kThreadsEnv)) {
    char* end = nullptr;
    const auto v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0') config.threads = static_cast<std::size_t>(v);
  }

  CLI::App app{"Max-stable mixture copulas: evaluation, sampling and orthant tail dependence", "mevmix"};
  std::string command;
  std::vector<std::string> j_strings;
  std::string format;
  std::uint64_t seed = 0;
  std::size_t n = 0;
  app.add_option("command", command, "validate | eval | sample | taildep | verify")->required();
  app.add_option("--model", config.model_paths, "model description (JSON); verify accepts several")
      ->expected(1)
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  auto* out_opt = app.add_option("--out", config.out_path, "output file (default: stdout)");
  auto* seed_opt = app.add_option("--seed", seed, "random seed");
  auto* n_opt = app.add_option("--n", n, "sample count");
  app.add_option("--u", config.u, "tail threshold in (0,1) for empirical estimates");
  app.add_option("--J", j_strings, "conditioning set, e.g. 1,3 (repeatable)")
      ->expected(1)
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  app.add_option("--grid-file", config.grid_file, "evaluation points for eval, one per row");
  app.add_option("--data", config.data_file, "external data for empirical taildep, one observation per row");
  app.add_option("--threads", config.threads, "worker threads (0 = all cores); never changes results");
  app.add_option("--format", format, "json | csv (taildep)");
  app.add_option("--margins", config.margins, "frechet | ranks (empirical taildep)");
  app.add_flag("--uniform", config.uniform, "sample: also write uniform-scale columns");
  (void)out_opt;

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    exit_code = kOk;
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    write_error(err, {kUsage, "usage", e.what()});
    exit_code = kUsage;
    return std::nullopt;
  }

  try {
    auto cmd = parse_command(command);
    if (!cmd) throw CliError{kUsage, "usage", "unknown command \"" + command + "\""};
    config.command = *cmd;
    if (*seed_opt) config.seed = seed;
    if (*n_opt) config.n = n;
    for (const auto& s : j_strings) config.j_sets.push_back(parse_coordinate_list(s));
    if (!format.empty()) {
      if (format == "json")
        config.format = OutputFormat::json;
      else if (format == "csv")
        config.format = OutputFormat::csv;
      else
        throw CliError{kUsage, "usage", "--format must be json or csv"};
    }
    if (config.command != Command::verify && config.command != Command::taildep && config.model_paths.empty())
      throw CliError{kUsage, "usage", command + " needs --model"};
  } catch (const CliError& e) {
    write_error(err, e);
    exit_code = e.code;
    return std::nullopt;
  }
  exit_code = kOk;
  return config;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    switch (config.command) {
      case Command::validate: return do_validate(config, out);
      case Command::eval: return do_eval(config, out);
      case Command::sample: return do_sample(config, out);
      case Command::taildep: return do_taildep(config, out);
      case Command::verify: return do_verify(config, out);
    }
    throw CliError{kUsage, "usage", "unknown command"};
  } catch (const CliError& e) {
    write_error(err, e);
    return e.code;
  } catch (const format_error& e) {
    write_error(err, {kMalformedModel, "malformed_model", e.what()});
    return kMalformedModel;
  } catch (const shape_error& e) {
    write_error(err, {kMalformedModel, "malformed_model", e.what()});
    return kMalformedModel;
  } catch (const config_error& e) {
    write_error(err, {kUsage, "usage", e.what()});
    return kUsage;
  } catch (const std::exception& e) {
    write_error(err, {kDomain, "domain", e.what()});
    return kDomain;
  }
}

}  // namespace mevmix::cli
