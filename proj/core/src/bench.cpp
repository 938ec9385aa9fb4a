#include "slicedw/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <ostream>
#include <tuple>

#include "slicedw/core_ot.hpp"
#include "slicedw/datagen.hpp"
#include "slicedw/dataset_io.hpp"
#include "slicedw/error.hpp"
#include "slicedw/parallel.hpp"
#include "slicedw/rng.hpp"
#include "slicedw/summation.hpp"

namespace slicedw::bench {

namespace {

constexpr std::array<std::pair<Scenario, std::string_view>, 6> kScenarioNames{{
    {Scenario::GaussianNonCentered, "gaussian-noncentered"},
    {Scenario::GaussianCentered, "gaussian-centered"},
    {Scenario::GammaNonCentered, "gamma-noncentered"},
    {Scenario::GammaCentered, "gamma-centered"},
    {Scenario::Ar1Gaussian, "ar1-gaussian"},
    {Scenario::Ar1StudentT, "ar1-student-t"},
}};

bool is_gaussian(Scenario s) {
  return s == Scenario::GaussianNonCentered || s == Scenario::GaussianCentered;
}
bool is_centered(Scenario s) {
  return s == Scenario::GaussianCentered || s == Scenario::GammaCentered || is_ar1(s);
}

void validate(const ExperimentConfig& cfg) {
  if (cfg.d_grid.empty()) throw Error(ErrorCode::InvalidArgument, "d grid is empty");
  for (std::size_t i = 0; i < cfg.d_grid.size(); ++i) {
    if (cfg.d_grid[i] == 0) throw Error(ErrorCode::InvalidArgument, "d grid entries must be >= 1");
    if (i > 0 && cfg.d_grid[i] <= cfg.d_grid[i - 1]) {
      throw Error(ErrorCode::InvalidArgument, "d grid must be strictly increasing");
    }
  }
  if (cfg.runs == 0) throw Error(ErrorCode::InvalidArgument, "runs must be >= 1");
  if (cfg.n == 0) throw Error(ErrorCode::InvalidArgument, "n must be >= 1");
  if (is_ar1(cfg.scenario) && cfg.alpha_list.empty()) {
    throw Error(ErrorCode::InvalidArgument, "AR(1) scenarios need at least one alpha");
  }
  for (const auto& m : cfg.methods) {
    const bool mc = m.kind == SwMethod::MonteCarloSphere || m.kind == SwMethod::MonteCarloGaussian;
    if (mc && m.projections == 0) {
      throw Error(ErrorCode::InvalidArgument, "Monte Carlo method needs L >= 1");
    }
  }
}

struct Cell {
  std::size_t d = 0;
  std::size_t run = 0;
  std::optional<double> alpha;
  std::size_t alpha_index = 0;
  std::uint64_t seed = 0;
};

std::vector<Cell> enumerate_cells(const ExperimentConfig& cfg) {
  std::vector<Cell> cells;
  const std::size_t alphas = is_ar1(cfg.scenario) ? cfg.alpha_list.size() : 1;
  for (std::size_t d : cfg.d_grid) {
    for (std::size_t a = 0; a < alphas; ++a) {
      for (std::size_t run = 0; run < cfg.runs; ++run) {
        Cell c;
        c.d = d;
        c.run = run;
        c.alpha_index = a;
        if (is_ar1(cfg.scenario)) c.alpha = cfg.alpha_list[a];
        c.seed = cell_seed(cfg.master_seed, cfg.scenario, d, run, a);
        cells.push_back(c);
      }
    }
  }
  return cells;
}

struct CellData {
  EmpiricalDistribution x;
  EmpiricalDistribution y;
  std::optional<double> exact_reference_sq;  // closed form or exactly zero
};

CellData make_cell_data(const ExperimentConfig& cfg, const Cell& cell, bool want_closed_form) {
  CellData out;
  if (is_ar1(cfg.scenario)) {
    datagen::Ar1Config ar;
    ar.dim = cell.d;
    ar.n = cfg.n;
    ar.alpha = *cell.alpha;
    ar.noise = cfg.scenario == Scenario::Ar1Gaussian ? datagen::Ar1Noise::Gaussian01
                                                     : datagen::Ar1Noise::StudentT10;
    ar.burn_in = cfg.burn_in;
    ar.seed = rng::derive_seed(cell.seed, rng::StreamTag::DatasetX);
    out.x = datagen::center_columns(datagen::gen_ar1(ar, 1));
    ar.seed = rng::derive_seed(cell.seed, rng::StreamTag::DatasetY);
    out.y = datagen::center_columns(datagen::gen_ar1(ar, 1));
    // Both datasets share one law.
    out.exact_reference_sq = 0.0;
    return out;
  }

  datagen::FactorConfig fc;
  fc.dim = cell.d;
  fc.n = cfg.n;
  fc.family = is_gaussian(cfg.scenario) ? datagen::FactorFamily::GaussianFactors
                                        : datagen::FactorFamily::GammaFactors;
  fc.centered = is_centered(cfg.scenario);
  fc.seed = cell.seed;
  fc.role = datagen::FactorRole::First;
  out.x = datagen::gen_factors(fc, 1);
  const datagen::FactorParams px = datagen::factor_params(fc);
  fc.role = datagen::FactorRole::Second;
  out.y = datagen::gen_factors(fc, 1);
  const datagen::FactorParams py = datagen::factor_params(fc);

  if (want_closed_form) {
    if (!is_gaussian(cfg.scenario)) {
      throw Error(ErrorCode::InvalidArgument,
                  std::string("no closed-form reference for scenario ") + std::string(to_string(cfg.scenario)));
    }
    IsoGaussian a{px.location, px.scale};
    IsoGaussian b{py.location, py.scale};
    if (fc.centered) {
      std::fill(a.mean.begin(), a.mean.end(), 0.0);
      std::fill(b.mean.begin(), b.mean.end(), 0.0);
    }
    out.exact_reference_sq = ot::sw2_gaussian_iso_closed(a, b);
  }
  return out;
}

bool wants_closed_form(const ExperimentConfig& cfg) {
  using Kind = ReferenceSpec::Kind;
  if (is_ar1(cfg.scenario)) return false;
  if (cfg.reference.kind == Kind::ClosedForm) return true;
  return cfg.reference.kind == Kind::Auto && is_gaussian(cfg.scenario);
}

double mc_reference(const ExperimentConfig& cfg, const Cell& cell, const CellData& data) {
  MonteCarloOptions opts;
  opts.projections = cfg.reference.projections;
  opts.p = 2.0;
  opts.law = ProjectionLaw::SphereUniform;
  opts.seed = rng::derive_seed(cell.seed, rng::StreamTag::Reference);
  opts.workers = 1;
  return monte_carlo_sw_pp(data.x, data.y, opts).estimate.value_sq;
}

SwEstimate evaluate(const MethodSpec& method, std::size_t method_index, const Cell& cell,
                    const CellData& data) {
  switch (method.kind) {
    case SwMethod::Deterministic: return sw_hat(data.x, data.y);
    case SwMethod::UncenteredGaussian: return sw_uncentered_gaussian(data.x, data.y);
    case SwMethod::ClosedFormGaussian: {
      const auto start = std::chrono::steady_clock::now();
      SwEstimate est;
      est.value_sq = ot::sw2_gaussian_iso_closed(fit_iso_gaussian(data.x), fit_iso_gaussian(data.y));
      est.method = SwMethod::ClosedFormGaussian;
      est.wall_time_ns = std::chrono::duration_cast<std::chrono::nanoseconds>(
                             std::chrono::steady_clock::now() - start)
                             .count();
      return est;
    }
    case SwMethod::MonteCarloSphere:
    case SwMethod::MonteCarloGaussian: {
      MonteCarloOptions opts;
      opts.projections = method.projections;
      opts.p = 2.0;
      opts.law = method.kind == SwMethod::MonteCarloSphere ? ProjectionLaw::SphereUniform
                                                           : ProjectionLaw::GaussianGammaD;
      opts.seed = rng::derive_seed(rng::derive_seed(cell.seed, rng::StreamTag::Method), method_index);
      opts.workers = 1;
      return monte_carlo_sw_pp(data.x, data.y, opts).estimate;
    }
  }
  throw Error(ErrorCode::InvalidArgument, "unknown method");
}

ResultRecord make_record(const ExperimentConfig& cfg, const Cell& cell, const MethodSpec& method,
                         double estimate_sq, double reference_sq, std::int64_t wall_ns) {
  ResultRecord r;
  r.scenario = std::string(to_string(cfg.scenario));
  r.run_id = cell.run;
  r.d = cell.d;
  r.n = cfg.n;
  r.alpha = cell.alpha;
  r.method = method.name();
  r.estimate_sq = estimate_sq;
  r.reference_sq = reference_sq;
  r.abs_error = std::abs(std::sqrt(std::max(0.0, estimate_sq)) - std::sqrt(std::max(0.0, reference_sq)));
  r.wall_time_ns = wall_ns;
  r.seed = cell.seed;
  return r;
}

template <typename CellFn>
std::vector<ResultRecord> run_cells(const std::vector<Cell>& cells, unsigned workers, CellFn&& fn) {
  std::vector<std::vector<ResultRecord>> per_cell(cells.size());
  parallel_for(cells.size(), workers, [&](std::size_t i) {
    try {
      per_cell[i] = fn(cells[i]);
    } catch (const Error& e) {
      throw Error(e.code(), "cell d=" + std::to_string(cells[i].d) + " run=" +
                                std::to_string(cells[i].run) + ": " + e.what());
    }
  });
  std::vector<ResultRecord> out;
  for (auto& recs : per_cell) {
    out.insert(out.end(), std::make_move_iterator(recs.begin()), std::make_move_iterator(recs.end()));
  }
  return out;
}

std::string scenario_label(const ResultRecord& r) {
  if (!r.alpha) return r.scenario;
  return r.scenario + "[alpha=" + io::format_double(*r.alpha) + "]";
}

}  // namespace

std::string_view to_string(Scenario s) noexcept {
  for (const auto& [value, name] : kScenarioNames) {
    if (value == s) return name;
  }
  return "unknown";
}

std::optional<Scenario> parse_scenario(std::string_view name) noexcept {
  for (const auto& [value, label] : kScenarioNames) {
    if (label == name) return value;
  }
  return std::nullopt;
}

bool is_ar1(Scenario s) noexcept { return s == Scenario::Ar1Gaussian || s == Scenario::Ar1StudentT; }

std::string MethodSpec::name() const {
  std::string base(slicedw::to_string(kind));
  if (kind == SwMethod::MonteCarloSphere || kind == SwMethod::MonteCarloGaussian) {
    base += "-L" + std::to_string(projections);
  }
  return base;
}

ExperimentConfig ExperimentConfig::paper_scale(Scenario scenario) {
  ExperimentConfig cfg;
  cfg.scenario = scenario;
  cfg.n = 10'000;
  cfg.runs = 100;
  cfg.burn_in = 10'000;
  return cfg;
}

std::vector<MethodSpec> default_convergence_methods(Scenario s) {
  if (is_centered(s)) return {{SwMethod::Deterministic, 0}};
  return {{SwMethod::UncenteredGaussian, 0}};
}

std::vector<MethodSpec> default_timing_methods() {
  return {{SwMethod::Deterministic, 0},
          {SwMethod::MonteCarloSphere, 100},
          {SwMethod::MonteCarloSphere, 1000},
          {SwMethod::MonteCarloSphere, 5000}};
}

std::uint64_t cell_seed(std::uint64_t master_seed, Scenario s, std::size_t d, std::size_t run,
                        std::size_t alpha_index) noexcept {
  std::uint64_t seed = rng::derive_seed(master_seed, rng::StreamTag::Cell);
  seed = rng::derive_seed(seed, static_cast<std::uint64_t>(s));
  seed = rng::derive_seed(seed, d);
  seed = rng::derive_seed(seed, alpha_index);
  return rng::derive_seed(seed, run);
}

std::vector<ResultRecord> run_convergence(const ExperimentConfig& cfg) {
  validate(cfg);
  const std::vector<MethodSpec> methods = cfg.methods.empty() ? default_convergence_methods(cfg.scenario) : cfg.methods;
  const bool closed_form = wants_closed_form(cfg);
  return run_cells(enumerate_cells(cfg), resolve_workers(cfg.workers), [&](const Cell& cell) {
    const CellData data = make_cell_data(cfg, cell, closed_form);
    const double reference_sq =
        data.exact_reference_sq ? *data.exact_reference_sq : mc_reference(cfg, cell, data);
    std::vector<ResultRecord> recs;
    for (std::size_t m = 0; m < methods.size(); ++m) {
      const SwEstimate est = evaluate(methods[m], m, cell, data);
      recs.push_back(make_record(cfg, cell, methods[m], est.value_sq, reference_sq, est.wall_time_ns));
    }
    return recs;
  });
}

std::vector<ResultRecord> run_timing(const ExperimentConfig& cfg) {
  validate(cfg);
  const std::vector<MethodSpec> methods = cfg.methods.empty() ? default_timing_methods() : cfg.methods;
  const std::size_t reps = std::max<std::size_t>(1, cfg.timing_repetitions);
  // Single worker throughout so estimators do not compete for cores.
  return run_cells(enumerate_cells(cfg), 1, [&](const Cell& cell) {
    const CellData data = make_cell_data(cfg, cell, false);
    const double reference_sq =
        data.exact_reference_sq ? *data.exact_reference_sq : mc_reference(cfg, cell, data);
    std::vector<ResultRecord> recs;
    for (std::size_t m = 0; m < methods.size(); ++m) {
      std::vector<std::int64_t> times;
      double value_sq = 0.0;
      for (std::size_t rep = 0; rep < reps; ++rep) {
        const SwEstimate est = evaluate(methods[m], m, cell, data);
        value_sq = est.value_sq;
        times.push_back(est.wall_time_ns);
      }
      std::sort(times.begin(), times.end());
      recs.push_back(make_record(cfg, cell, methods[m], value_sq, reference_sq, times[times.size() / 2]));
    }
    return recs;
  });
}

double percentile_sorted(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) throw Error(ErrorCode::EmptyInput, "percentile of an empty sample");
  const double h = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

std::vector<SummaryRow> summarize(const std::vector<ResultRecord>& records) {
  if (records.empty()) throw Error(ErrorCode::EmptyInput, "no records to summarize");
  struct Acc {
    std::vector<double> errors;
    std::vector<double> times;
  };
  std::map<std::tuple<std::string, std::string, std::size_t>, Acc> groups;
  for (const auto& r : records) {
    auto& acc = groups[{scenario_label(r), r.method, r.d}];
    acc.errors.push_back(r.abs_error);
    acc.times.push_back(static_cast<double>(r.wall_time_ns));
  }

  std::vector<SummaryRow> rows;
  for (auto& [key, acc] : groups) {
    std::sort(acc.errors.begin(), acc.errors.end());
    std::sort(acc.times.begin(), acc.times.end());
    SummaryRow row;
    std::tie(row.scenario, row.method, row.d) = key;
    const double count = static_cast<double>(acc.errors.size());
    row.mean_error = pairwise_sum(acc.errors) / count;
    row.p10 = percentile_sorted(acc.errors, 0.1);
    row.p90 = percentile_sorted(acc.errors, 0.9);
    row.mean_time_ns = pairwise_sum(acc.times) / count;
    rows.push_back(std::move(row));
  }

  // Rows are ordered by (scenario, method, d), so each group's prefix is contiguous.
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::vector<double> ds;
    std::vector<double> errs;
    bool positive = true;
    for (std::size_t j = 0; j <= i; ++j) {
      if (rows[j].scenario != rows[i].scenario || rows[j].method != rows[i].method) continue;
      ds.push_back(static_cast<double>(rows[j].d));
      errs.push_back(rows[j].mean_error);
      positive = positive && rows[j].mean_error > 0.0;
    }
    if (ds.size() >= 2 && positive) rows[i].slope_to_date = fit_loglog_slope(ds, errs).slope;
  }
  return rows;
}

LogLogFit fit_loglog_slope(const std::vector<double>& d_values, const std::vector<double>& mean_errors) {
  if (d_values.size() != mean_errors.size()) {
    throw Error(ErrorCode::LengthMismatch, "d values and errors differ in length");
  }
  if (d_values.size() < 2) throw Error(ErrorCode::InvalidArgument, "need at least two points");
  const std::size_t m = d_values.size();
  std::vector<double> xs(m);
  std::vector<double> ys(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (!(d_values[i] > 0.0)) throw Error(ErrorCode::NonPositiveError, "dimension must be positive");
    if (!(mean_errors[i] > 0.0)) {
      throw Error(ErrorCode::NonPositiveError, "error " + io::format_double(mean_errors[i]) +
                                                   " at d=" + io::format_double(d_values[i]) +
                                                   " has no logarithm");
    }
    xs[i] = std::log10(d_values[i]);
    ys[i] = std::log10(mean_errors[i]);
  }
  const double mx = pairwise_sum(xs) / static_cast<double>(m);
  const double my = pairwise_sum(ys) / static_cast<double>(m);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx == 0.0) throw Error(ErrorCode::InvalidArgument, "all d values are equal");
  LogLogFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
    ss_res += r * r;
  }
  fit.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  return fit;
}

LogLogFit fit_summary_slope(const std::vector<SummaryRow>& rows, std::string_view scenario,
                            std::string_view method) {
  std::vector<double> ds;
  std::vector<double> errs;
  for (const auto& r : rows) {
    if (r.scenario == scenario && r.method == method) {
      ds.push_back(static_cast<double>(r.d));
      errs.push_back(r.mean_error);
    }
  }
  return fit_loglog_slope(ds, errs);
}

void write_records_csv(std::ostream& out, const std::vector<ResultRecord>& records,
                       std::string_view metadata) {
  if (!metadata.empty()) out << "# " << metadata << '\n';
  out << kRecordHeader << '\n';
  for (const auto& r : records) {
    out << r.scenario << ',' << r.run_id << ',' << r.d << ',' << r.n << ','
        << (r.alpha ? io::format_double(*r.alpha) : std::string()) << ',' << r.method << ','
        << io::format_double(r.estimate_sq) << ',' << io::format_double(r.reference_sq) << ','
        << io::format_double(r.abs_error) << ',' << r.wall_time_ns << ',' << r.seed << '\n';
  }
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows) {
  out << kSummaryHeader << '\n';
  for (const auto& r : rows) {
    out << r.scenario << ',' << r.d << ',' << r.method << ',' << io::format_double(r.mean_error) << ','
        << io::format_double(r.p10) << ',' << io::format_double(r.p90) << ','
        << io::format_double(r.mean_time_ns) << ','
        << (r.slope_to_date ? io::format_double(*r.slope_to_date) : std::string()) << '\n';
  }
}

}  // namespace slicedw::bench
