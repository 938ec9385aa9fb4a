#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "slicedw/estimators.hpp"

// Experiment runners for the convergence-in-dimension and accuracy/timing
// studies. Every record is a pure function of the config except the
// wall-clock column.
namespace slicedw::bench {

enum class Scenario {
  GaussianNonCentered,
  GaussianCentered,
  GammaNonCentered,
  GammaCentered,
  Ar1Gaussian,
  Ar1StudentT,
};

std::string_view to_string(Scenario s) noexcept;
std::optional<Scenario> parse_scenario(std::string_view name) noexcept;
bool is_ar1(Scenario s) noexcept;

struct MethodSpec {
  SwMethod kind = SwMethod::Deterministic;
  std::size_t projections = 0;  // Monte Carlo only

  std::string name() const;
  bool operator==(const MethodSpec&) const = default;
};

struct ReferenceSpec {
  enum class Kind { Auto, ClosedForm, MonteCarlo } kind = Kind::Auto;
  std::size_t projections = 20'000;
};

inline constexpr std::size_t kReferenceProjections = 20'000;

struct ExperimentConfig {
  Scenario scenario = Scenario::GaussianCentered;
  std::vector<std::size_t> d_grid{10, 32, 100, 316, 1000};
  std::size_t n = 2000;
  std::size_t runs = 20;
  std::vector<double> alpha_list{0.2, 0.5, 0.8};
  ReferenceSpec reference;
  std::vector<MethodSpec> methods;  // empty = runner default
  std::uint64_t master_seed = 0;
  std::size_t burn_in = 1000;
  unsigned workers = 0;
  std::size_t timing_repetitions = 3;

  // n = 10^4, runs = 100, burn-in 10^4.
  static ExperimentConfig paper_scale(Scenario scenario);
};

struct ResultRecord {
  std::string scenario;
  std::size_t run_id = 0;
  std::size_t d = 0;
  std::size_t n = 0;
  std::optional<double> alpha;
  std::string method;
  double estimate_sq = 0.0;
  double reference_sq = 0.0;
  double abs_error = 0.0;  // |sqrt(estimate_sq) - sqrt(reference_sq)|
  std::int64_t wall_time_ns = 0;
  std::uint64_t seed = 0;
};

struct SummaryRow {
  std::string scenario;  // AR rows carry "[alpha=..]" so alphas are not pooled
  std::size_t d = 0;
  std::string method;
  double mean_error = 0.0;
  double p10 = 0.0;
  double p90 = 0.0;
  double mean_time_ns = 0.0;
  std::optional<double> slope_to_date;
};

struct LogLogFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

// One approximation per cell: the raw-moment Gaussian approximation for the
// non-centered scenarios, the centered approximation otherwise.
std::vector<MethodSpec> default_convergence_methods(Scenario s);
std::vector<MethodSpec> default_timing_methods();

// Seed for one (d, run, alpha) cell; independent of execution order.
std::uint64_t cell_seed(std::uint64_t master_seed, Scenario s, std::size_t d, std::size_t run,
                        std::size_t alpha_index) noexcept;

std::vector<ResultRecord> run_convergence(const ExperimentConfig& cfg);
std::vector<ResultRecord> run_timing(const ExperimentConfig& cfg);

std::vector<SummaryRow> summarize(const std::vector<ResultRecord>& records);

// Linear-interpolation percentile on sorted values, q in [0, 1].
double percentile_sorted(const std::vector<double>& sorted, double q);

// OLS of log10(error) on log10(d).
LogLogFit fit_loglog_slope(const std::vector<double>& d_values, const std::vector<double>& mean_errors);

// Slope of mean_error vs d for one (scenario, method) group of a summary.
LogLogFit fit_summary_slope(const std::vector<SummaryRow>& rows, std::string_view scenario,
                            std::string_view method);

inline constexpr std::string_view kRecordHeader =
    "scenario,run_id,d,n,alpha,method,estimate_sq,reference_sq,abs_error,wall_time_ns,seed";
inline constexpr std::string_view kSummaryHeader =
    "scenario,d,method,mean_error,p10,p90,mean_time_ns,slope_to_date";

// metadata: optional "# ..." line written before the header.
void write_records_csv(std::ostream& out, const std::vector<ResultRecord>& records,
                       std::string_view metadata = {});
void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows);

}  // namespace slicedw::bench
