#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "geoecc/eccentricity.hpp"
#include "geoecc/netgen.hpp"

namespace geoecc {

/// Sweep over L, model parameters and localization error. Every
/// combination is one cell; each cell collects `instances` connected
/// networks with seeds seed_base, seed_base + 1, ...
struct CampaignConfig {
  std::string name = "campaign";
  std::vector<double> L{10.0};
  std::vector<LinkModel> models;
  std::vector<double> sigma_err{0.0};
  std::optional<int> n;
  std::optional<double> max_apparent_range;
  int instances = 30;
  std::uint64_t seed_base = 1;
  int max_attempts = 1000;

  /// Throws ConfigError.
  void validate() const;
  std::vector<GenParams> cells() const;
  /// L = 25 (2500 nodes) and 100 instances per cell.
  void apply_full_scale();
};

/// `key = value` lines, `#` comments, comma-separated lists. Keys: name,
/// model (random | sinr | exponential), p, r, R, r_avg, L, n, sigma_err,
/// max_range, instances, seed_base, max_attempts. For sinr, r and R lists
/// are paired; a single value pairs with every value of the other list.
/// Throws ParseError or ConfigError.
CampaignConfig parse_campaign_config(std::istream& in);
CampaignConfig load_campaign_config(const std::string& path);

struct InstanceRow {
  int net_id = 0;  // index of the instance within its cell
  int cell = 0;
  std::uint64_t seed = 0;
  GenParams params;
  EccentricityReport report;
  int discarded = 0;
};

struct Stat {
  double mean = 0.0;
  double sd = 0.0;  // sample standard deviation
};

struct CellSummary {
  int cell = 0;
  GenParams params;
  int instances = 0;
  int total_runs = 0;  // instances plus discarded draws
  int discarded = 0;
  Stat D, N1, kT, ke, kg, dk, dN, Nke, Nkg;
};

Stat summarize(const std::vector<double>& values);
CellSummary summarize_cell(int cell, const GenParams& params, const std::vector<InstanceRow>& rows);

/// One instance: generation with rejection, then the full report.
InstanceRow run_instance(const GenParams& params, int cell, int net_id, std::uint64_t seed);

/// Runs cell by cell, instances in parallel. `on_cell` receives each
/// finished cell in order. Stops between cells once `cancel` is set.
/// Throws ConnectivityExhausted.
void run_campaign(const CampaignConfig& cfg,
                  const std::function<void(const std::vector<InstanceRow>&, const CellSummary&)>& on_cell,
                  const std::atomic<bool>* cancel = nullptr);

void write_rows_header(std::ostream& out);
void write_row(std::ostream& out, const InstanceRow& row);
void write_summary_header(std::ostream& out);
void write_summary(std::ostream& out, const CellSummary& s);

/// Shortest round-trip decimal, independent of the locale.
std::string format_number(double x);

}  // namespace geoecc
