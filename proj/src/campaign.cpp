#include "geoecc/campaign.hpp"

#include <omp.h>

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "geoecc/errors.hpp"

namespace geoecc {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

double parse_double(const std::string& s, int line) {
  double x = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc() || p != s.data() + s.size()) throw ParseError(line, "not a number: '" + s + "'");
  return x;
}

long long parse_int(const std::string& s, int line) {
  long long x = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc() || p != s.data() + s.size()) throw ParseError(line, "not an integer: '" + s + "'");
  return x;
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  return out;
}

std::vector<double> doubles(const std::string& v, int line) {
  std::vector<double> out;
  for (const auto& s : split_list(v)) out.push_back(parse_double(s, line));
  return out;
}

struct ModelParams {
  double p = NAN, r = NAN, R = NAN, r_avg = NAN;
};

ModelParams params_of(const LinkModel& m) {
  ModelParams q;
  if (auto x = std::get_if<RandomModel>(&m)) q.p = x->p;
  if (auto x = std::get_if<SinrModel>(&m)) q.r = x->r, q.R = x->R;
  if (auto x = std::get_if<ExponentialModel>(&m)) q.r_avg = x->r_avg;
  return q;
}

std::string opt(double x) { return std::isnan(x) ? "" : format_number(x); }

}  // namespace

std::string format_number(double x) {
  char buf[64];
  const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, p);
}

void CampaignConfig::validate() const {
  if (L.empty() || models.empty() || sigma_err.empty()) throw ConfigError("empty sweep");
  if (instances < 1) throw ConfigError("instances must be at least 1");
  for (const GenParams& g : cells()) g.validate();
}

std::vector<GenParams> CampaignConfig::cells() const {
  std::vector<GenParams> out;
  for (double l : L)
    for (const LinkModel& m : models)
      for (double s : sigma_err) {
        GenParams g;
        g.L = l;
        g.n = n;
        g.model = m;
        g.sigma_err = s;
        g.max_apparent_range = max_apparent_range;
        g.max_attempts = max_attempts;
        out.push_back(g);
      }
  return out;
}

void CampaignConfig::apply_full_scale() {
  L = {25.0};
  n.reset();
  instances = 100;
}

CampaignConfig parse_campaign_config(std::istream& in) {
  CampaignConfig cfg;
  std::map<std::string, std::pair<std::string, int>> kv;
  std::string text;
  int line = 0;
  while (std::getline(in, text)) {
    ++line;
    const auto hash = text.find('#');
    if (hash != std::string::npos) text.resize(hash);
    text = trim(text);
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw ParseError(line, "expected key = value");
    const std::string key = trim(text.substr(0, eq)), value = trim(text.substr(eq + 1));
    if (key.empty() || value.empty()) throw ParseError(line, "expected key = value");
    if (kv.count(key)) throw ParseError(line, "duplicate key '" + key + "'");
    kv[key] = {value, line};
  }
  auto take = [&](const std::string& key) -> std::optional<std::pair<std::string, int>> {
    auto it = kv.find(key);
    if (it == kv.end()) return std::nullopt;
    auto v = it->second;
    kv.erase(it);
    return v;
  };

  if (auto v = take("name")) cfg.name = v->first;
  if (auto v = take("L")) cfg.L = doubles(v->first, v->second);
  if (auto v = take("sigma_err")) cfg.sigma_err = doubles(v->first, v->second);
  if (auto v = take("n")) cfg.n = static_cast<int>(parse_int(v->first, v->second));
  if (auto v = take("max_range")) cfg.max_apparent_range = parse_double(v->first, v->second);
  if (auto v = take("instances")) cfg.instances = static_cast<int>(parse_int(v->first, v->second));
  if (auto v = take("seed_base")) cfg.seed_base = static_cast<std::uint64_t>(parse_int(v->first, v->second));
  if (auto v = take("max_attempts")) cfg.max_attempts = static_cast<int>(parse_int(v->first, v->second));

  const auto model = take("model");
  if (!model) throw ConfigError("missing key 'model'");
  const auto p = take("p"), r = take("r"), R = take("R"), r_avg = take("r_avg");
  auto need = [&](const auto& v, const char* key) {
    if (!v) throw ConfigError(std::string("model ") + model->first + " needs '" + key + "'");
    return doubles(v->first, v->second);
  };
  if (model->first == "random") {
    for (double x : need(p, "p")) cfg.models.push_back(RandomModel{x});
  } else if (model->first == "sinr") {
    const auto rs = need(r, "r"), Rs = need(R, "R");
    if (rs.size() != Rs.size() && rs.size() != 1 && Rs.size() != 1)
      throw ConfigError("r and R lists must have equal length or one value");
    const std::size_t m = std::max(rs.size(), Rs.size());
    for (std::size_t i = 0; i < m; ++i)
      cfg.models.push_back(SinrModel{rs[rs.size() == 1 ? 0 : i], Rs[Rs.size() == 1 ? 0 : i]});
  } else if (model->first == "exponential") {
    for (double x : need(r_avg, "r_avg")) cfg.models.push_back(ExponentialModel{x});
  } else {
    throw ParseError(model->second, "unknown model '" + model->first + "'");
  }
  if (!kv.empty()) throw ParseError(kv.begin()->second.second, "unknown or unused key '" + kv.begin()->first + "'");
  cfg.validate();
  return cfg;
}

CampaignConfig load_campaign_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  return parse_campaign_config(in);
}

Stat summarize(const std::vector<double>& values) {
  Stat s;
  if (values.empty()) return s;
  double sum = 0;
  for (double v : values) sum += v;
  s.mean = sum / values.size();
  if (values.size() > 1) {
    double sq = 0;
    for (double v : values) sq += (v - s.mean) * (v - s.mean);
    s.sd = std::sqrt(sq / (values.size() - 1));
  }
  return s;
}

CellSummary summarize_cell(int cell, const GenParams& params, const std::vector<InstanceRow>& rows) {
  CellSummary s;
  s.cell = cell;
  s.params = params;
  s.instances = static_cast<int>(rows.size());
  for (const auto& r : rows) s.discarded += r.discarded;
  s.total_runs = s.instances + s.discarded;
  auto stat = [&](auto get) {
    std::vector<double> v;
    for (const auto& r : rows) v.push_back(get(r.report));
    return summarize(v);
  };
  s.D = stat([](const EccentricityReport& r) { return double(r.D); });
  s.N1 = stat([](const EccentricityReport& r) { return r.N.at(1); });
  s.kT = stat([](const EccentricityReport& r) { return double(r.k_T); });
  s.ke = stat([](const EccentricityReport& r) { return double(r.k_e); });
  s.kg = stat([](const EccentricityReport& r) { return double(r.k_g); });
  s.dk = stat([](const EccentricityReport& r) { return double(r.dk); });
  s.dN = stat([](const EccentricityReport& r) { return r.dN; });
  s.Nke = stat([](const EccentricityReport& r) { return r.N.at(r.k_e); });
  s.Nkg = stat([](const EccentricityReport& r) { return r.N.at(r.k_g); });
  return s;
}

InstanceRow run_instance(const GenParams& params, int cell, int net_id, std::uint64_t seed) {
  InstanceRow row;
  row.net_id = net_id;
  row.cell = cell;
  row.seed = seed;
  row.params = params;
  const LocalizedNetwork net = generate(params, seed);
  row.discarded = net.discarded;
  row.report = full_report(net, false);
  return row;
}

void run_campaign(const CampaignConfig& cfg,
                  const std::function<void(const std::vector<InstanceRow>&, const CellSummary&)>& on_cell,
                  const std::atomic<bool>* cancel) {
  cfg.validate();
  const auto cells = cfg.cells();
  for (std::size_t c = 0; c < cells.size(); ++c) {
    if (cancel && cancel->load()) return;
    std::vector<InstanceRow> rows(cfg.instances);
    std::vector<std::string> errors(cfg.instances);
    std::vector<int> exhausted(cfg.instances, 0);
#pragma omp parallel for schedule(dynamic, 1)
    for (int i = 0; i < cfg.instances; ++i) {
      try {
        rows[i] = run_instance(cells[c], static_cast<int>(c), i, cfg.seed_base + i);
      } catch (const ConnectivityExhausted& e) {
        exhausted[i] = e.attempts;
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
    for (int i = 0; i < cfg.instances; ++i) {
      if (exhausted[i]) throw ConnectivityExhausted(exhausted[i]);
      if (!errors[i].empty()) throw Error(errors[i]);
    }
    on_cell(rows, summarize_cell(static_cast<int>(c), cells[c], rows));
  }
}

namespace {

const char* kParamColumns = "model,L,n,p,r,R,r_avg,sigma_err,max_range";

void write_params(std::ostream& out, const GenParams& g) {
  const ModelParams q = params_of(g.model);
  out << model_name(g.model) << ',' << format_number(g.L) << ',' << g.node_count() << ',' << opt(q.p) << ','
      << opt(q.r) << ',' << opt(q.R) << ',' << opt(q.r_avg) << ',' << format_number(g.sigma_err) << ','
      << (g.max_apparent_range ? format_number(*g.max_apparent_range) : "");
}

}  // namespace

void write_rows_header(std::ostream& out) {
  out << "net_id,seed," << kParamColumns << ",D,N1,kT,ke,kg,dk,dN,Nke,Nkg,sigma_total,delta_discarded\n";
}

void write_row(std::ostream& out, const InstanceRow& row) {
  const EccentricityReport& r = row.report;
  out << row.net_id << ',' << row.seed << ',';
  write_params(out, row.params);
  out << ',' << r.D << ',' << format_number(r.N.at(1)) << ',' << r.k_T << ',' << r.k_e << ',' << r.k_g << ',' << r.dk
      << ',' << format_number(r.dN) << ',' << format_number(r.N.at(r.k_e)) << ',' << format_number(r.N.at(r.k_g))
      << ',' << row.discarded + 1 << ',' << row.discarded << '\n';
}

void write_summary_header(std::ostream& out) {
  out << "cell," << kParamColumns << ",instances,sigma_total,delta_discarded";
  for (const char* m : {"D", "N1", "kT", "ke", "kg", "dk", "dN", "Nke", "Nkg"}) out << ',' << m << "_mean," << m << "_sd";
  out << '\n';
}

void write_summary(std::ostream& out, const CellSummary& s) {
  out << s.cell << ',';
  write_params(out, s.params);
  out << ',' << s.instances << ',' << s.total_runs << ',' << s.discarded;
  for (const Stat* st : {&s.D, &s.N1, &s.kT, &s.ke, &s.kg, &s.dk, &s.dN, &s.Nke, &s.Nkg})
    out << ',' << format_number(st->mean) << ',' << format_number(st->sd);
  out << '\n';
}

}  // namespace geoecc
