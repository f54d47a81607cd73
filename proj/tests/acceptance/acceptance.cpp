// Acceptance run: one PASS/FAIL line per criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <sstream>

#include "geoecc/campaign.hpp"
#include "geoecc/canonical.hpp"
#include "geoecc/distributed.hpp"
#include "geoecc/eccentricity.hpp"
#include "geoecc/errors.hpp"
#include "geoecc/navigation.hpp"
#include "geoecc/netgen.hpp"
#include "../fixtures.hpp"
#include "../oracles.hpp"
#include "invariants.hpp"

using namespace geoecc;

namespace {

struct Verdict {
  bool pass;
  std::string detail;
};

std::string join(const std::vector<double>& v) {
  std::ostringstream s;
  for (std::size_t i = 0; i < v.size(); ++i) s << (i ? " " : "") << std::setprecision(4) << v[i];
  return s.str();
}

std::vector<EccentricityReport> reports(const GenParams& gp, int instances, std::uint64_t seed_base, int* discarded = nullptr) {
  std::vector<EccentricityReport> out;
  const CampaignConfig cfg = [&] {
    CampaignConfig c;
    c.L = {gp.L};
    c.n = gp.n;
    c.models = {gp.model};
    c.sigma_err = {gp.sigma_err};
    c.max_apparent_range = gp.max_apparent_range;
    c.instances = instances;
    c.seed_base = seed_base;
    return c;
  }();
  run_campaign(cfg, [&](const std::vector<InstanceRow>& rows, const CellSummary& s) {
    for (const auto& r : rows) out.push_back(r.report);
    if (discarded) *discarded = s.discarded;
  });
  return out;
}

GenParams params(double L, LinkModel m, double sigma = 0.0) {
  GenParams gp;
  gp.L = L;
  gp.model = m;
  gp.sigma_err = sigma;
  return gp;
}

// Mixed small instances shared by the oracle and protocol criteria.
LocalizedNetwork mixed(int i) {
  GenParams gp;
  gp.L = 2.5 + (i % 4) * 0.5;
  switch (i % 3) {
    case 0: gp.model = SinrModel{1.0, 1.6}; break;
    case 1: gp.model = RandomModel{0.08}; break;
    default: gp.model = ExponentialModel{0.8};
  }
  if (i % 5 == 4) gp.sigma_err = 0.3;
  return generate(gp, 1000 + i);
}

Verdict geometry_oracle() {
  Rng rng(2024);
  int mismatches = 0;
  for (int t = 0; t < 200; ++t) {
    const int n = 3 + static_cast<int>(rng.next() % 48);
    std::vector<Site> sites;
    for (int i = 0; i < n; ++i) sites.push_back({i, {10 * rng.uniform(), 10 * rng.uniform()}});
    const auto sub = PlanarSubdivision::build(sites, {{-1, -1}, {11, 11}});
    if (sub.delaunay_edges() != oracle::brute_delaunay(sites)) ++mismatches;
  }
  return {mismatches == 0, std::to_string(mismatches) + " mismatches over 200 site sets"};
}

Verdict metric_oracle() {
  int mismatches = 0;
  for (int i = 0; i < 100; ++i) {
    const auto net = mixed(i);
    const auto sub = build_apparent_subdivision(net);
    const auto d = oracle::floyd(net.graph);
    const auto walks = oracle::all_walks(net, sub);
    const auto r = full_report(net);
    int ke = -1, kg = -1;
    for (int k = 1; k <= r.D && kg < 0; ++k) {
      const auto c = oracle::check_at(walks, d, k);
      if (ke < 0 && c.embed) ke = k;
      if (kg < 0 && c.geo) kg = k;
    }
    if (r.k_e != ke || r.k_g != kg) ++mismatches;
  }
  return {mismatches == 0, std::to_string(mismatches) + " mismatches over 100 networks"};
}

Verdict quasi_udg_bound() {
  const auto rs = reports(params(10, SinrModel{1.6, 2.24}), 30, 1);
  int worst = 0, over = 0;
  for (const auto& r : rs) {
    worst = std::max(worst, r.k_g);
    over += r.k_g > 3;
  }
  return {over == 0, "max k_g " + std::to_string(worst) + ", " + std::to_string(over) + " of 30 above 3"};
}

Verdict sinr_wide() {
  const auto rs = reports(params(10, SinrModel{1.2, 6.0}), 30, 1);
  std::vector<int> kg;
  for (const auto& r : rs) kg.push_back(r.k_g);
  std::sort(kg.begin(), kg.end());
  const double median = (kg[14] + kg[15]) / 2.0;
  return {median <= 4 && kg.back() <= 5,
          "median k_g " + join({median}) + ", max " + std::to_string(kg.back())};
}

Verdict random_degenerate() {
  const auto rs = reports(params(10, RandomModel{0.025}), 30, 1);
  int close = 0;
  for (const auto& r : rs) close += r.k_g >= r.D - 1;
  return {close >= 27, std::to_string(close) + " of 30 with k_g >= D - 1"};
}

Verdict error_linearity() {
  const std::vector<double> sigmas{0, 0.5, 1.0, 1.5, 2.0};
  std::vector<double> means;
  for (double s : sigmas) {
    const auto rs = reports(params(10, SinrModel{1.6, 2.24}, s), 30, 1);
    double sum = 0;
    for (const auto& r : rs) sum += r.k_g;
    means.push_back(sum / rs.size());
  }
  const double mx = std::accumulate(sigmas.begin(), sigmas.end(), 0.0) / 5;
  const double my = std::accumulate(means.begin(), means.end(), 0.0) / 5;
  double sxy = 0, sxx = 0, syy = 0;
  for (int i = 0; i < 5; ++i) {
    sxy += (sigmas[i] - mx) * (means[i] - my);
    sxx += (sigmas[i] - mx) * (sigmas[i] - mx);
    syy += (means[i] - my) * (means[i] - my);
  }
  const double slope = sxy / sxx, r2 = syy > 0 ? sxy * sxy / (sxx * syy) : 0.0;
  return {r2 >= 0.9 && slope > 0,
          "mean k_g " + join(means) + "; slope " + join({slope}) + ", R^2 " + join({r2})};
}

Verdict scalability() {
  std::vector<double> means;
  for (auto [L, inst] : {std::pair{5.0, 30}, std::pair{10.0, 30}, std::pair{20.0, 30}}) {
    const auto rs = reports(params(L, SinrModel{1.2, 6.0}, 0.5), inst, 1);
    double sum = 0;
    for (const auto& r : rs) sum += r.k_g;
    means.push_back(sum / rs.size());
  }
  const double diff = std::abs(means[2] - means[0]);
  return {diff <= 1.5, "mean k_g at n = 100, 400, 1600: " + join(means)};
}

Verdict protocol_consistency() {
  int runs = 0, mismatches = 0;
  for (int i = 0; i < 100; ++i) {
    const auto net = mixed(i);
    const auto r = full_report(net);
    for (int k = 1; k <= std::min(r.D, 6); ++k) {
      ++runs;
      ProtocolRun run;
      try {
        run = run_full_protocol(net, k);
      } catch (const ProbeLost&) {
        ++mismatches;
        continue;
      }
      if (run.success() != (r.k_g <= k)) {
        ++mismatches;
        continue;
      }
      if (!run.success()) continue;
      const auto sim = CanonicalSimulation::build(net, k);
      if (run.zones().zones != sim.zones() || run.zones().holes != sim.forbidden()) ++mismatches;
    }
  }
  return {mismatches == 0, std::to_string(mismatches) + " mismatches over " + std::to_string(runs) + " runs"};
}

Verdict routing_completeness() {
  std::size_t pairs = 0, failed = 0;
  for (int i = 0; i < 20; ++i) {
    GenParams gp;
    gp.L = 3 + (i % 2) * 0.5;  // 36 or 49 nodes
    switch (i % 3) {
      case 0: gp.model = SinrModel{1.2, 2.5}; break;
      case 1: gp.model = ExponentialModel{1.0}; break;
      default: gp.model = SinrModel{1.6, 2.24};
    }
    if (i % 4 == 3) gp.sigma_err = 0.3;
    const auto net = generate(gp, 300 + i);
    const auto sim = CanonicalSimulation::build(net, full_report(net).k_g);
    const Navigator nav(sim);
    for (NodeId s = 0; s < net.size(); ++s)
      for (NodeId t = 0; t < net.size(); ++t) {
        ++pairs;
        if (route(nav, Engine::GradientPerimeter, s, t).outcome != Outcome::Delivered) ++failed;
      }
  }
  const auto sim = CanonicalSimulation::build(fixtures::three_collinear(), 1);
  const auto t = route(sim, Engine::Gradient, 0, 1);
  const bool dead = t.outcome == Outcome::DeadEnd && t.dead_end.x == 0.5 && t.dead_end.y == 0.0;
  std::ostringstream d;
  d << failed << " of " << pairs << " ordered pairs undelivered; collinear gradient " << to_string(t.outcome) << " at ("
    << t.dead_end.x << "," << t.dead_end.y << ")";
  return {failed == 0 && dead, d.str()};
}

Verdict invariant_suites() {
  int failed = 0;
  std::string names;
  for (const auto& r : invariants::run_all())
    if (!r.pass) ++failed, names += " " + r.name;
  return {failed == 0, failed == 0 ? "all suites pass" : std::to_string(failed) + " failing:" + names};
}

// Exponential model with apparent-length pruning, as in the long-link
// experiments. A seed that never yields a connected draw counts all its
// attempts as discarded.
Verdict discard_trend() {
  std::vector<double> rates;
  for (double s : {0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5}) {
    GenParams gp = params(10, ExponentialModel{2.0}, s);
    gp.max_apparent_range = 6.0;
    gp.max_attempts = 50;
    long discarded = 0, connected = 0;
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
      try {
        discarded += generate(gp, seed).discarded;
        ++connected;
      } catch (const ConnectivityExhausted&) {
        discarded += gp.max_attempts;
      }
    }
    rates.push_back(static_cast<double>(discarded) / (discarded + connected));
  }
  const bool mono = std::is_sorted(rates.begin(), rates.end());
  return {mono && rates.back() > rates.front(), "discard rate by sigma_err 0..3.5: " + join(rates)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"1 geometry oracle", geometry_oracle},
      {"2 metric oracle", metric_oracle},
      {"3 quasi-UDG bound", quasi_udg_bound},
      {"4 SINR R = 5r", sinr_wide},
      {"5 random-graph degeneracy", random_degenerate},
      {"6 localization-error linearity", error_linearity},
      {"7 scalability trend", scalability},
      {"8 distributed/centralized consistency", protocol_consistency},
      {"9 routing completeness", routing_completeness},
      {"10 invariant suites", invariant_suites},
      {"delta discard trend", discard_trend},
  };
  bool all = true;
  for (const auto& [name, run] : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v{false, ""};
    try {
      v = run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << (v.pass ? "PASS" : "FAIL") << " criterion " << name << ": " << v.detail << " [" << std::fixed
              << std::setprecision(1) << secs << " s]" << std::defaultfloat << std::endl;
    all = all && v.pass;
  }
  return all ? 0 : 1;
}
