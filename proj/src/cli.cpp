#include "geoecc/cli.hpp"

#include <algorithm>
#include <atomic>
#include <csignal>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "geoecc/campaign.hpp"
#include "geoecc/canonical.hpp"
#include "geoecc/distributed.hpp"
#include "geoecc/eccentricity.hpp"
#include "geoecc/errors.hpp"
#include "geoecc/navigation.hpp"
#include "geoecc/netgen.hpp"
#include "json.hpp"

namespace geoecc {

namespace {

using nlohmann::json;

std::atomic<bool> g_interrupted{false};

extern "C" void on_interrupt(int) { g_interrupted = true; }

// A command signals its verdict through the returned code; errors go
// through exceptions mapped in run_cli.
struct GenerateOpts {
  std::string model = "sinr";
  double p = 0.01, r = 1.6, R = 2.24, r_avg = 1.0;
  double L = 10, sigma = 0;
  std::optional<int> n;
  std::optional<double> max_range;
  int max_attempts = 1000;
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "text";
};

LinkModel model_from(const GenerateOpts& o) {
  if (o.model == "random") return RandomModel{o.p};
  if (o.model == "sinr") return SinrModel{o.r, o.R};
  return ExponentialModel{o.r_avg};
}

int cmd_generate(const GenerateOpts& o, std::ostream& out) {
  GenParams gp;
  gp.L = o.L;
  gp.n = o.n;
  gp.model = model_from(o);
  gp.sigma_err = o.sigma;
  gp.max_apparent_range = o.max_range;
  gp.max_attempts = o.max_attempts;
  const LocalizedNetwork net = generate(gp, o.seed);
  std::ostream* info = &out;
  if (o.out.empty() || o.out == "-") {
    save_network(out, net);
    info = &std::cerr;
  } else {
    save_network_file(o.out, net);
  }
  if (o.format == "json") {
    *info << json{{"n", net.size()}, {"edges", net.graph.edge_count()}, {"connected", true},
                  {"discarded", net.discarded}, {"seed", net.seed}}.dump()
          << '\n';
  } else {
    *info << "n " << net.size() << "\nedges " << net.graph.edge_count() << "\nconnected yes\ndiscarded "
          << net.discarded << '\n';
  }
  return kExitOk;
}

json report_json(const EccentricityReport& r) {
  return json{{"D", r.D},       {"N1", r.N.at(1)}, {"Nke", r.N.at(r.k_e)}, {"Nkg", r.N.at(r.k_g)},
              {"kT", r.k_T},    {"ke", r.k_e},     {"kg", r.k_g},          {"dk", r.dk},
              {"dN", r.dN},     {"edges", r.edges}, {"kT_le_kg", r.kT_le_kg}};
}

int cmd_measure(const std::string& path, const std::string& format, std::ostream& out) {
  const LocalizedNetwork net = load_network_file(path);
  const EccentricityReport r = full_report(net);
  if (format == "json") {
    json j = report_json(r);
    j["n"] = net.size();
    out << j.dump(2) << '\n';
    return kExitOk;
  }
  out << "n " << net.size() << "\nedges " << r.edges << "\nD " << r.D << "\nN1 " << format_number(r.N.at(1))
      << "\nNke " << format_number(r.N.at(r.k_e)) << "\nNkg " << format_number(r.N.at(r.k_g)) << "\nkT " << r.k_T
      << "\nke " << r.k_e << "\nkg " << r.k_g << "\ndk " << r.dk << "\ndN " << format_number(r.dN) << '\n';
  return kExitOk;
}

struct RouteOpts {
  std::string path;
  int k = 1;
  std::string engine = "perimeter";
  int source = 0, dest = 0;
  bool all_pairs = false, force = false;
  std::string format = "text";
};

int cmd_route(const RouteOpts& o, std::ostream& out) {
  const LocalizedNetwork net = load_network_file(o.path);
  const int kg = full_report(net).k_g;
  if (o.k < kg && !o.force)
    throw ConfigError("k = " + std::to_string(o.k) + " is below k_g = " + std::to_string(kg) + "; use --force");
  const Engine engine = o.engine == "gradient" ? Engine::Gradient : Engine::GradientPerimeter;
  const auto sim = CanonicalSimulation::build(net, o.k);
  const Navigator nav(sim);
  const int n = net.size();

  if (!o.all_pairs) {
    if (o.source < 0 || o.source >= n || o.dest < 0 || o.dest >= n) throw ConfigError("node id out of range");
    const RouteTrace t = route(nav, engine, o.source, o.dest);
    if (o.format == "json") {
      json hops = json::array();
      for (const RouteHop& h : t.log)
        hops.push_back({{"node", h.node}, {"x", h.at.x}, {"y", h.at.y}, {"via", to_string(h.via)}});
      json j{{"outcome", to_string(t.outcome)}, {"hop_count", t.hop_count}, {"handovers", t.handovers},
             {"stretch", t.stretch},            {"hops", t.hops},           {"log", hops}};
      if (t.outcome != Outcome::Delivered) j["dead_end"] = {t.dead_end.x, t.dead_end.y};
      out << j.dump(2) << '\n';
    } else {
      out << "outcome " << to_string(t.outcome) << "\nhops " << t.hop_count << "\nhandovers " << t.handovers
          << "\nstretch " << format_number(t.stretch) << '\n';
      if (t.outcome != Outcome::Delivered)
        out << "dead_end (" << format_number(t.dead_end.x) << "," << format_number(t.dead_end.y) << ")\n";
      write_trace(out, t);
    }
    return t.outcome == Outcome::Delivered ? kExitOk : kExitDeadEnd;
  }

  std::vector<int> delivered(static_cast<std::size_t>(n) * n, 0);
  std::vector<double> stretch(static_cast<std::size_t>(n) * n, 0.0);
#pragma omp parallel for schedule(dynamic, 4)
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) {
      if (s == t) continue;
      const RouteTrace tr = route(nav, engine, s, t);
      delivered[s * n + t] = tr.outcome == Outcome::Delivered;
      stretch[s * n + t] = tr.stretch;
    }
  std::size_t pairs = 0, ok = 0;
  double sum = 0, worst = 0;
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) {
      if (s == t) continue;
      ++pairs;
      if (!delivered[s * n + t]) continue;
      ++ok;
      sum += stretch[s * n + t];
      worst = std::max(worst, stretch[s * n + t]);
    }
  const double rate = pairs ? double(ok) / pairs : 1.0;
  const double mean = ok ? sum / ok : 0.0;
  if (o.format == "json") {
    out << json{{"pairs", pairs}, {"delivered", ok}, {"rate", rate}, {"mean_stretch", mean}, {"max_stretch", worst}}.dump(2)
        << '\n';
  } else {
    out << "pairs " << pairs << "\ndelivered " << ok << "\nrate " << format_number(rate) << "\nmean_stretch "
        << format_number(mean) << "\nmax_stretch " << format_number(worst) << '\n';
  }
  return ok == pairs ? kExitOk : kExitDeadEnd;
}

int cmd_protocol(const std::string& path, int k, bool log, const std::string& format, std::ostream& out) {
  const LocalizedNetwork net = load_network_file(path);
  const ProtocolRun run = run_full_protocol(net, k);
  if (format == "json") {
    json j{{"k", k},
           {"rounds", run.rounds},
           {"messages",
            {{"delaunay", run.messages.delaunay},
             {"probes", run.messages.probes},
             {"probes_raw", run.messages.probes_raw},
             {"zones", run.messages.zones},
             {"total", run.messages.total()}}},
           {"verdict", run.success() ? "Success" : "GlobalFailure"}};
    if (run.success()) {
      j["holes"] = run.zones().holes.size();
    } else {
      json w = json::array();
      for (const NodePair& e : run.failure().witness) w.push_back({e.first, e.second});
      j["cause"] = to_string(run.failure().cause);
      j["detector"] = run.failure().detector;
      j["witness"] = w;
    }
    out << j.dump(2) << '\n';
  } else {
    if (log) write_protocol_log(out, run);
    out << "k " << k << "\nrounds " << run.rounds << "\nmessages_delaunay " << run.messages.delaunay
        << "\nmessages_probes " << run.messages.probes << "\nmessages_probes_raw " << run.messages.probes_raw
        << "\nmessages_zones " << run.messages.zones << "\nmessages_total " << run.messages.total() << '\n';
    if (run.success()) {
      out << "verdict Success\nholes " << run.zones().holes.size() << '\n';
    } else {
      out << "verdict GlobalFailure\ncause " << to_string(run.failure().cause) << "\ndetector "
          << run.failure().detector << "\nwitness";
      for (const NodePair& e : run.failure().witness) out << ' ' << e.first << '-' << e.second;
      out << '\n';
    }
  }
  return run.success() ? kExitOk : kExitGlobalFailure;
}

struct CampaignOpts {
  std::string config;
  std::string out = "campaign.csv";
  std::string summary;
  bool full_scale = false;
  std::optional<std::uint64_t> seed;
};

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw ConfigError("cannot write " + path);
  return f;
}

int cmd_campaign(const CampaignOpts& o, std::ostream& out) {
  CampaignConfig cfg = load_campaign_config(o.config);
  if (o.full_scale) cfg.apply_full_scale();
  if (o.seed) cfg.seed_base = *o.seed;
  std::string summary_path = o.summary;
  if (summary_path.empty()) {
    const auto dot = o.out.rfind('.');
    summary_path = (dot == std::string::npos ? o.out : o.out.substr(0, dot)) + "_summary.csv";
  }
  std::ofstream rows = open_out(o.out), summary = open_out(summary_path);
  write_rows_header(rows);
  write_summary_header(summary);
  g_interrupted = false;
  auto previous = std::signal(SIGINT, on_interrupt);
  int cells = 0;
  run_campaign(
      cfg,
      [&](const std::vector<InstanceRow>& r, const CellSummary& s) {
        for (const auto& row : r) write_row(rows, row);
        write_summary(summary, s);
        rows.flush();
        summary.flush();
        out << "cell " << s.cell << ": " << s.instances << " instances, mean kg " << format_number(s.kg.mean)
            << ", discarded " << s.discarded << '\n';
        ++cells;
      },
      &g_interrupted);
  std::signal(SIGINT, previous);
  out << "wrote " << o.out << " and " << summary_path << '\n';
  if (g_interrupted) {
    out << "interrupted after " << cells << " cells\n";
    return 130;
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Geographic eccentricity of localized networks"};
  app.require_subcommand(1);

  GenerateOpts gen;
  auto* g = app.add_subcommand("generate", "Generate a connected localized network");
  g->add_option("--model", gen.model)->check(CLI::IsMember({"random", "sinr", "exponential"}));
  g->add_option("--p", gen.p, "link probability (random)");
  g->add_option("--r", gen.r, "inner radius (sinr)");
  g->add_option("--R", gen.R, "outer radius (sinr)");
  g->add_option("--r-avg", gen.r_avg, "decay length (exponential)");
  g->add_option("--L", gen.L, "rectangle scale: 4L x L");
  g->add_option("--n", gen.n, "node count (default 4L^2)");
  g->add_option("--sigma", gen.sigma, "localization error");
  g->add_option("--max-range", gen.max_range, "drop links longer than this in apparent positions");
  g->add_option("--max-attempts", gen.max_attempts);
  g->add_option("--seed", gen.seed);
  g->add_option("-o,--out", gen.out, "network file (default stdout)");
  g->add_option("--format", gen.format)->check(CLI::IsMember({"text", "json"}));

  std::string measure_path, measure_format = "text";
  auto* m = app.add_subcommand("measure", "Report D, N_i, k_T, k_e, k_g");
  m->add_option("network", measure_path)->required();
  m->add_option("--format", measure_format)->check(CLI::IsMember({"text", "json"}));

  RouteOpts ro;
  auto* r = app.add_subcommand("route", "Route messages over the canonical simulation");
  r->add_option("network", ro.path)->required();
  r->add_option("--k", ro.k)->required()->check(CLI::PositiveNumber);
  r->add_option("--engine", ro.engine)->check(CLI::IsMember({"gradient", "perimeter"}));
  auto* src = r->add_option("--source", ro.source);
  auto* dst = r->add_option("--dest", ro.dest);
  auto* all = r->add_flag("--all-pairs", ro.all_pairs);
  all->excludes(src)->excludes(dst);
  r->add_flag("--force", ro.force, "allow k below k_g");
  r->add_option("--format", ro.format)->check(CLI::IsMember({"text", "json"}));

  std::string proto_path, proto_format = "text";
  int proto_k = 1;
  bool proto_log = false;
  auto* pr = app.add_subcommand("protocol", "Run the distributed zone construction");
  pr->add_option("network", proto_path)->required();
  pr->add_option("--k", proto_k)->required()->check(CLI::PositiveNumber);
  pr->add_flag("--log", proto_log, "print one line per round");
  pr->add_option("--format", proto_format)->check(CLI::IsMember({"text", "json"}));

  CampaignOpts co;
  auto* c = app.add_subcommand("campaign", "Batch measurements over a parameter sweep");
  c->add_option("config", co.config)->required();
  c->add_option("-o,--out", co.out, "per-instance CSV");
  c->add_option("--summary", co.summary, "per-cell CSV (default <out>_summary.csv)");
  c->add_flag("--full-scale", co.full_scale, "L = 25 and 100 instances per cell");
  c->add_option("--seed", co.seed, "override seed_base");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*g) return cmd_generate(gen, out);
    if (*m) return cmd_measure(measure_path, measure_format, out);
    if (*r) {
      if (!ro.all_pairs && (src->count() == 0 || dst->count() == 0))
        throw ConfigError("route needs --source and --dest, or --all-pairs");
      return cmd_route(ro, out);
    }
    if (*pr) return cmd_protocol(proto_path, proto_k, proto_log, proto_format, out);
    if (*c) return cmd_campaign(co, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const Disconnected& e) {
    err << e.what() << '\n';
    return kExitDisconnected;
  } catch (const ConnectivityExhausted& e) {
    err << e.what() << '\n';
    return kExitDisconnected;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

}  // namespace geoecc
