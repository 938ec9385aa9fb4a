#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "slicedw/bench.hpp"
#include "slicedw/core_ot.hpp"
#include "slicedw/datagen.hpp"
#include "slicedw/dataset_io.hpp"
#include "slicedw/error.hpp"
#include "slicedw/estimators.hpp"

namespace {

using namespace slicedw;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitRuntime = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const std::map<std::string, SwMethod> kMethodNames{
    {"deterministic", SwMethod::Deterministic},
    {"mc-sphere", SwMethod::MonteCarloSphere},
    {"mc-gaussian", SwMethod::MonteCarloGaussian},
    {"closed-form-gauss", SwMethod::ClosedFormGaussian},
    {"gaussian-raw", SwMethod::UncenteredGaussian},
};

bool is_monte_carlo(SwMethod m) {
  return m == SwMethod::MonteCarloSphere || m == SwMethod::MonteCarloGaussian;
}

std::string fmt(double x) { return io::format_double(x); }

PairBudget parse_pair_budget(const std::string& text, std::size_t n) {
  if (text == "auto") return default_pair_budget(n);
  if (text == "all") return std::nullopt;
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || value == 0) {
    throw UsageError("--pair-budget must be auto, all or a positive integer, got '" + text + "'");
  }
  return value;
}

bench::Scenario parse_scenario_or_throw(const std::string& name) {
  const auto s = bench::parse_scenario(name);
  if (!s) throw UsageError("unknown scenario '" + name + "'");
  return *s;
}

void emit(const std::optional<std::string>& path, const std::string& contents) {
  if (path) {
    io::write_file_atomic(*path, contents);
  } else {
    std::cout << contents;
  }
}

// ---- estimate ----

struct EstimateArgs {
  std::string first;
  std::string second;
  std::string method = "deterministic";
  std::size_t L = 1000;
  double p = 2.0;
  std::uint64_t seed = 0;
  bool header = false;
};

int cmd_estimate(const EstimateArgs& a) {
  const SwMethod method = kMethodNames.at(a.method);
  if (!is_monte_carlo(method) && a.p != 2.0) {
    throw UsageError("--p other than 2 needs a Monte Carlo method");
  }
  const EmpiricalDistribution mu = io::load_dataset(a.first, a.header);
  const EmpiricalDistribution nu = io::load_dataset(a.second, a.header);
  if (mu.dim() != nu.dim()) {
    throw Error(ErrorCode::DimMismatch, a.first + " has dim " + std::to_string(mu.dim()) + ", " +
                                            a.second + " has dim " + std::to_string(nu.dim()));
  }

  SwEstimate est;
  double p = 2.0;
  switch (method) {
    case SwMethod::Deterministic: est = sw_hat(mu, nu); break;
    case SwMethod::UncenteredGaussian: est = sw_uncentered_gaussian(mu, nu); break;
    case SwMethod::ClosedFormGaussian: {
      const auto start = std::chrono::steady_clock::now();
      est.value_sq = ot::sw2_gaussian_iso_closed(fit_iso_gaussian(mu), fit_iso_gaussian(nu));
      est.method = method;
      est.wall_time_ns = std::chrono::duration_cast<std::chrono::nanoseconds>(
                             std::chrono::steady_clock::now() - start)
                             .count();
      break;
    }
    case SwMethod::MonteCarloSphere:
    case SwMethod::MonteCarloGaussian: {
      MonteCarloOptions opts;
      opts.projections = a.L;
      opts.p = p = a.p;
      opts.law = method == SwMethod::MonteCarloSphere ? ProjectionLaw::SphereUniform
                                                      : ProjectionLaw::GaussianGammaD;
      opts.seed = a.seed;
      est = monte_carlo_sw_pp(mu, nu, opts).estimate;
      break;
    }
  }
  std::cout << to_string(est.method) << ',' << fmt(est.value_sq) << ','
            << fmt(std::pow(std::max(0.0, est.value_sq), 1.0 / p)) << ',' << est.num_projections << ','
            << est.wall_time_ns << '\n';
  return kExitOk;
}

// ---- diagnostics ----

struct DiagnosticsArgs {
  std::string input;
  std::optional<std::string> against;
  std::string pair_budget = "auto";
  std::uint64_t seed = 0;
  std::size_t max_lag = 10;
  bool header = false;
};

struct ColumnVariances {
  double max_var = 0.0;
  double max_var_sq = 0.0;
};

// max_j Var[X_j] and max_j Var[X_j^2] over the empirical law.
ColumnVariances column_variances(const EmpiricalDistribution& mu) {
  const std::size_t n = mu.size();
  const std::size_t d = mu.dim();
  std::vector<double> s1(d, 0.0), s2(d, 0.0), s4(d, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = mu.row(i);
    for (std::size_t j = 0; j < d; ++j) {
      const double x2 = row[j] * row[j];
      s1[j] += row[j];
      s2[j] += x2;
      s4[j] += x2 * x2;
    }
  }
  ColumnVariances out;
  const double nn = static_cast<double>(n);
  for (std::size_t j = 0; j < d; ++j) {
    const double m1 = s1[j] / nn, m2 = s2[j] / nn, m4 = s4[j] / nn;
    out.max_var = std::max(out.max_var, std::max(0.0, m2 - m1 * m1));
    out.max_var_sq = std::max(out.max_var_sq, std::max(0.0, m4 - m2 * m2));
  }
  return out;
}

int cmd_diagnostics(const DiagnosticsArgs& a) {
  const EmpiricalDistribution mu = io::load_dataset(a.input, a.header);
  const PairBudget budget = parse_pair_budget(a.pair_budget, mu.size());
  const MomentStats stats = moment_stats(mu, budget, a.seed);
  const double d = static_cast<double>(mu.dim());
  double mean_sq = 0.0;
  for (double m : stats.mean) mean_sq += m * m;
  const double xi = xi_d(stats);
  const ColumnVariances vars = column_variances(mu);

  std::ostream& out = std::cout;
  out << "n=" << mu.size() << '\n';
  out << "d=" << mu.dim() << '\n';
  out << "m2_raw=" << fmt(stats.m2_raw) << '\n';
  out << "m2_raw_over_d=" << fmt(stats.m2_raw / d) << '\n';
  out << "mean_norm=" << fmt(std::sqrt(mean_sq)) << '\n';
  out << "alpha=" << fmt(stats.alpha) << '\n';
  out << "beta1=" << fmt(stats.beta1) << '\n';
  out << "beta2=" << fmt(stats.beta2) << '\n';
  out << "pair_count_used=" << stats.pair_count_used << '\n';
  out << "xi_d=" << fmt(xi) << '\n';
  out << "indep_bound=" << fmt(indep_bound(mu.dim(), vars.max_var, vars.max_var_sq)) << '\n';
  if (a.against) {
    const EmpiricalDistribution nu = io::load_dataset(*a.against, a.header);
    const MomentStats other = moment_stats(nu, parse_pair_budget(a.pair_budget, nu.size()), a.seed);
    out << "xi_d_against=" << fmt(xi_d(other)) << '\n';
    out << "gap_bound=" << fmt(theorem2_gap_bound(stats, other)) << '\n';
  }
  const std::size_t lags = std::min<std::size_t>(a.max_lag, mu.dim() - 1);
  const AutocovDecay decay = autocov_decay(mu, lags);
  for (std::size_t k = 0; k < decay.lags.size(); ++k) {
    out << "autocov_lag" << decay.lags[k] << '=' << fmt(decay.cov[k]) << '\n';
    out << "autocov_sq_lag" << decay.lags[k] << '=' << fmt(decay.cov_sq[k]) << '\n';
  }
  return kExitOk;
}

// ---- convergence / timing ----

struct ExperimentArgs {
  std::string scenario;
  std::vector<std::size_t> d_grid;
  std::optional<std::size_t> n;
  std::optional<std::size_t> runs;
  std::vector<double> alpha;
  std::vector<std::string> methods;
  std::vector<std::size_t> L;
  std::uint64_t seed = 0;
  std::optional<std::size_t> burn_in;
  std::optional<std::size_t> reference_L;
  std::optional<std::size_t> repetitions;
  bool paper_scale = false;
  bool dry_run = false;
  std::optional<std::string> out;
};

std::vector<bench::MethodSpec> resolve_methods(const ExperimentArgs& a) {
  std::vector<bench::MethodSpec> specs;
  std::vector<std::size_t> Ls = a.L;
  for (const auto& name : a.methods) {
    const SwMethod kind = kMethodNames.at(name);
    if (!is_monte_carlo(kind)) {
      specs.push_back({kind, 0});
      continue;
    }
    if (Ls.empty()) throw UsageError("Monte Carlo method '" + name + "' needs --L");
    for (std::size_t L : Ls) specs.push_back({kind, L});
  }
  return specs;
}

bench::ExperimentConfig resolve_config(const ExperimentArgs& a, bool timing) {
  const bench::Scenario scenario = parse_scenario_or_throw(a.scenario);
  bench::ExperimentConfig cfg =
      a.paper_scale ? bench::ExperimentConfig::paper_scale(scenario) : bench::ExperimentConfig{};
  cfg.scenario = scenario;
  if (!a.d_grid.empty()) {
    cfg.d_grid = a.d_grid;
    std::sort(cfg.d_grid.begin(), cfg.d_grid.end());
    cfg.d_grid.erase(std::unique(cfg.d_grid.begin(), cfg.d_grid.end()), cfg.d_grid.end());
  }
  if (a.n) cfg.n = *a.n;
  if (a.runs) cfg.runs = *a.runs;
  if (!a.alpha.empty()) cfg.alpha_list = a.alpha;
  if (a.burn_in) cfg.burn_in = *a.burn_in;
  if (a.repetitions) cfg.timing_repetitions = *a.repetitions;
  if (a.reference_L) {
    cfg.reference.projections = *a.reference_L;
  }
  if (timing) cfg.reference.kind = bench::ReferenceSpec::Kind::MonteCarlo;
  cfg.master_seed = a.seed;
  cfg.methods = resolve_methods(a);
  if (cfg.methods.empty()) {
    cfg.methods = timing ? bench::default_timing_methods() : bench::default_convergence_methods(scenario);
  }
  for (double alpha : cfg.alpha_list) {
    if (!(alpha >= 0.0 && alpha < 1.0)) throw UsageError("--alpha values must lie in [0, 1)");
  }
  return cfg;
}

std::string join(const std::vector<std::string>& parts, char sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += sep;
    out += parts[i];
  }
  return out;
}

std::string describe(const bench::ExperimentConfig& cfg, bool timing) {
  std::vector<std::string> ds, alphas, methods;
  for (auto d : cfg.d_grid) ds.push_back(std::to_string(d));
  for (auto a : cfg.alpha_list) alphas.push_back(fmt(a));
  for (const auto& m : cfg.methods) methods.push_back(m.name());
  std::ostringstream s;
  s << "experiment=" << (timing ? "timing" : "convergence") << " scenario=" << bench::to_string(cfg.scenario)
    << " d=" << join(ds, ';') << " n=" << cfg.n << " runs=" << cfg.runs;
  if (bench::is_ar1(cfg.scenario)) s << " alpha=" << join(alphas, ';') << " burn_in=" << cfg.burn_in;
  s << " methods=" << join(methods, ';') << " reference_L=" << cfg.reference.projections
    << " master_seed=" << cfg.master_seed;
  if (timing) s << " repetitions=" << cfg.timing_repetitions;
  s << " hyperparameters=regenerated-per-run";
  return s.str();
}

std::filesystem::path summary_path(const std::filesystem::path& records) {
  std::filesystem::path p = records;
  p.replace_extension();
  return p.string() + ".summary.csv";
}

int cmd_experiment(const ExperimentArgs& a, bool timing) {
  const bench::ExperimentConfig cfg = resolve_config(a, timing);
  const std::string metadata = describe(cfg, timing);
  if (a.dry_run) {
    std::cout << metadata << '\n';
    return kExitOk;
  }
  const auto records = timing ? bench::run_timing(cfg) : bench::run_convergence(cfg);
  const auto rows = bench::summarize(records);

  std::ostringstream rec_csv, sum_csv;
  bench::write_records_csv(rec_csv, records, metadata);
  bench::write_summary_csv(sum_csv, rows);
  if (a.out) {
    io::write_file_atomic(*a.out, rec_csv.str());
    io::write_file_atomic(summary_path(*a.out), sum_csv.str());
    std::cerr << "wrote " << records.size() << " records to " << *a.out << " and summary to "
              << summary_path(*a.out).string() << '\n';
  }
  std::cout << sum_csv.str();
  return kExitOk;
}

// ---- generate ----

struct GenerateArgs {
  std::string family = "gaussian";
  std::string role = "first";
  bool centered = false;
  std::size_t d = 10;
  std::size_t n = 100;
  double alpha = 0.5;
  std::size_t burn_in = 10'000;
  std::uint64_t seed = 0;
  bool header = false;
  std::optional<std::string> out;
};

int cmd_generate(const GenerateArgs& a) {
  EmpiricalDistribution data;
  if (a.family == "gaussian" || a.family == "gamma") {
    datagen::FactorConfig cfg;
    cfg.dim = a.d;
    cfg.n = a.n;
    cfg.family = a.family == "gaussian" ? datagen::FactorFamily::GaussianFactors
                                        : datagen::FactorFamily::GammaFactors;
    cfg.centered = a.centered;
    cfg.role = a.role == "first" ? datagen::FactorRole::First : datagen::FactorRole::Second;
    cfg.seed = a.seed;
    data = datagen::gen_factors(cfg);
  } else {
    if (!(a.alpha >= 0.0 && a.alpha < 1.0)) throw UsageError("--alpha must lie in [0, 1)");
    datagen::Ar1Config cfg;
    cfg.dim = a.d;
    cfg.n = a.n;
    cfg.alpha = a.alpha;
    cfg.noise = a.family == "ar1-gaussian" ? datagen::Ar1Noise::Gaussian01 : datagen::Ar1Noise::StudentT10;
    cfg.burn_in = a.burn_in;
    cfg.seed = a.seed;
    data = datagen::gen_ar1(cfg);
    if (a.centered) data = datagen::center_columns(data);
  }
  std::ostringstream csv;
  io::write_dataset(csv, data, a.header);
  emit(a.out, csv.str());
  if (a.out) std::cerr << "wrote " << data.size() << " x " << data.dim() << " to " << *a.out << '\n';
  return kExitOk;
}

std::vector<std::string> method_choices() {
  std::vector<std::string> names;
  for (const auto& [name, _] : kMethodNames) names.push_back(name);
  return names;
}

std::vector<std::string> scenario_choices() {
  return {"gaussian-noncentered", "gaussian-centered", "gamma-noncentered",
          "gamma-centered",       "ar1-gaussian",      "ar1-student-t"};
}

void add_experiment_flags(CLI::App* cmd, ExperimentArgs& a) {
  cmd->add_option("--scenario", a.scenario, "Data scenario")->check(CLI::IsMember(scenario_choices()))->capture_default_str();
  cmd->add_option("--d", a.d_grid, "Dimensions, comma separated")->delimiter(',')->check(CLI::PositiveNumber);
  cmd->add_option("--n", a.n, "Samples per dataset")->check(CLI::PositiveNumber);
  cmd->add_option("--runs", a.runs, "Runs per dimension")->check(CLI::PositiveNumber);
  cmd->add_option("--alpha", a.alpha, "AR(1) coefficients, comma separated")->delimiter(',');
  cmd->add_option("--method", a.methods, "Methods to evaluate (repeatable)")
      ->delimiter(',')
      ->check(CLI::IsMember(method_choices()));
  cmd->add_option("--L,--projections", a.L, "Projection counts for Monte Carlo methods")
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  cmd->add_option("--reference-L", a.reference_L, "Projections of the Monte Carlo reference")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--seed", a.seed, "Master seed")->capture_default_str();
  cmd->add_option("--burn-in", a.burn_in, "AR(1) burn-in steps");
  cmd->add_flag("--paper-scale", a.paper_scale, "n = 10^4, runs = 100, burn-in 10^4");
  cmd->add_flag("--dry-run", a.dry_run, "Print the resolved configuration and exit");
  cmd->add_option("--out", a.out, "Records CSV path; summary goes next to it");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sliced-Wasserstein estimation, diagnostics and experiments"};
  app.require_subcommand(1);

  EstimateArgs est;
  auto* c_est = app.add_subcommand("estimate", "Estimate SW_2^2 (or SW_p^p) between two CSV datasets");
  c_est->add_option("first", est.first, "First dataset (CSV, one sample per line)")->required()->check(CLI::ExistingFile);
  c_est->add_option("second", est.second, "Second dataset")->required()->check(CLI::ExistingFile);
  c_est->add_option("--method", est.method, "Estimator")->check(CLI::IsMember(method_choices()))->capture_default_str();
  c_est->add_option("--L,--projections", est.L, "Monte Carlo projections")->check(CLI::PositiveNumber)->capture_default_str();
  c_est->add_option("--p,--order", est.p, "Order p >= 1 (Monte Carlo only)")->check(CLI::Range(1.0, 1e300))->capture_default_str();
  c_est->add_option("--seed", est.seed, "Projection seed")->capture_default_str();
  c_est->add_flag("--header", est.header, "Inputs start with a header line");

  DiagnosticsArgs diag;
  auto* c_diag = app.add_subcommand("diagnostics", "Moment statistics, Xi_d and bounds of a dataset");
  c_diag->add_option("input", diag.input, "Dataset (CSV)")->required()->check(CLI::ExistingFile);
  c_diag->add_option("--against", diag.against, "Second dataset for the gap bound")->check(CLI::ExistingFile);
  c_diag->add_option("--pair-budget", diag.pair_budget, "auto, all, or number of sampled pairs")->capture_default_str();
  c_diag->add_option("--seed", diag.seed, "Seed for sampled pairs")->capture_default_str();
  c_diag->add_option("--max-lag", diag.max_lag, "Largest autocovariance lag")->capture_default_str();
  c_diag->add_flag("--header", diag.header, "Input starts with a header line");

  ExperimentArgs conv;
  conv.scenario = "gaussian-centered";
  auto* c_conv = app.add_subcommand("convergence", "Approximation error against dimension");
  add_experiment_flags(c_conv, conv);

  ExperimentArgs timing;
  timing.scenario = "gamma-centered";
  auto* c_time = app.add_subcommand("timing", "Accuracy and wall time against Monte Carlo");
  add_experiment_flags(c_time, timing);
  c_time->add_option("--repetitions", timing.repetitions, "Timed repetitions per cell (median kept)")
      ->check(CLI::PositiveNumber);

  GenerateArgs gen;
  auto* c_gen = app.add_subcommand("generate", "Write a synthetic dataset as CSV");
  c_gen->add_option("--family", gen.family, "Data family")
      ->check(CLI::IsMember({"gaussian", "gamma", "ar1-gaussian", "ar1-student-t"}))
      ->capture_default_str();
  c_gen->add_option("--role", gen.role, "Hyperparameter role of factor data")
      ->check(CLI::IsMember({"first", "second"}))
      ->capture_default_str();
  c_gen->add_flag("--centered", gen.centered, "Subtract column means");
  c_gen->add_option("--d", gen.d, "Dimension")->check(CLI::PositiveNumber)->capture_default_str();
  c_gen->add_option("--n", gen.n, "Samples")->check(CLI::PositiveNumber)->capture_default_str();
  c_gen->add_option("--alpha", gen.alpha, "AR(1) coefficient")->capture_default_str();
  c_gen->add_option("--burn-in", gen.burn_in, "AR(1) burn-in steps")->capture_default_str();
  c_gen->add_option("--seed", gen.seed, "Seed")->capture_default_str();
  c_gen->add_flag("--header", gen.header, "Write a header line");
  c_gen->add_option("--out", gen.out, "Output path (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*c_est) return cmd_estimate(est);
    if (*c_diag) return cmd_diagnostics(diag);
    if (*c_conv) return cmd_experiment(conv, false);
    if (*c_time) return cmd_experiment(timing, true);
    if (*c_gen) return cmd_generate(gen);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::InvalidArgument ? kExitUsage : kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}
