#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "geoecc/errors.hpp"
#include "geoecc/netgen.hpp"

namespace geoecc {

namespace {

constexpr const char* kHeader = "geoecc-net v1";

std::string fmt(double v) {
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

template <class T>
T parse_num(const std::string& s, int line, const char* what) {
  T v{};
  auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc() || r.ptr != s.data() + s.size()) {
    throw ParseError(line, std::string("bad ") + what + " '" + s + "'");
  }
  return v;
}

std::vector<std::string> split(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> out;
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

}  // namespace

void save_network(std::ostream& out, const LocalizedNetwork& net) {
  const GenParams& p = net.params;
  out << kHeader << '\n';
  out << "params L=" << fmt(p.L) << " n=" << net.size() << " model=" << model_name(p.model);
  if (auto* r = std::get_if<RandomModel>(&p.model)) out << " p=" << fmt(r->p);
  if (auto* s = std::get_if<SinrModel>(&p.model)) out << " r=" << fmt(s->r) << " R=" << fmt(s->R);
  if (auto* e = std::get_if<ExponentialModel>(&p.model)) out << " r_avg=" << fmt(e->r_avg);
  out << " sigma_err=" << fmt(p.sigma_err);
  out << " max_range=" << (p.max_apparent_range ? fmt(*p.max_apparent_range) : std::string("none"));
  out << " max_attempts=" << p.max_attempts << " seed=" << net.seed << " discarded=" << net.discarded << '\n';
  for (int i = 0; i < net.size(); ++i) {
    const Point2 t = net.true_positions[i], a = net.apparent_positions[i];
    out << "node " << i << ' ' << fmt(t.x) << ' ' << fmt(t.y) << ' ' << fmt(a.x) << ' ' << fmt(a.y) << '\n';
  }
  for (const NodePair& e : net.graph.edges()) out << "edge " << e.first << ' ' << e.second << '\n';
}

LocalizedNetwork load_network(std::istream& in) {
  std::string line;
  int lineno = 0;
  auto next = [&]() -> bool {
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.find_first_not_of(" \t") != std::string::npos) return true;
    }
    return false;
  };
  if (!next() || line != kHeader) throw ParseError(lineno ? lineno : 1, "missing header '" + std::string(kHeader) + "'");
  if (!next()) throw ParseError(lineno + 1, "missing params line");
  auto toks = split(line);
  if (toks.empty() || toks[0] != "params") throw ParseError(lineno, "expected params line");
  std::map<std::string, std::string> kv;
  for (std::size_t i = 1; i < toks.size(); ++i) {
    auto eq = toks[i].find('=');
    if (eq == std::string::npos) throw ParseError(lineno, "expected key=value, got '" + toks[i] + "'");
    kv[toks[i].substr(0, eq)] = toks[i].substr(eq + 1);
  }
  const int params_line = lineno;
  auto need = [&](const std::string& k) -> const std::string& {
    auto it = kv.find(k);
    if (it == kv.end()) throw ParseError(params_line, "missing parameter '" + k + "'");
    return it->second;
  };
  LocalizedNetwork net;
  GenParams& p = net.params;
  p.L = parse_num<double>(need("L"), lineno, "L");
  const int n = parse_num<int>(need("n"), lineno, "n");
  if (n < 0) throw ParseError(lineno, "negative node count");
  p.n = n;
  const std::string& model = need("model");
  if (model == "random") {
    p.model = RandomModel{parse_num<double>(need("p"), lineno, "p")};
  } else if (model == "sinr") {
    p.model = SinrModel{parse_num<double>(need("r"), lineno, "r"), parse_num<double>(need("R"), lineno, "R")};
  } else if (model == "exponential") {
    p.model = ExponentialModel{parse_num<double>(need("r_avg"), lineno, "r_avg")};
  } else {
    throw ParseError(lineno, "unknown model '" + model + "'");
  }
  if (kv.count("sigma_err")) p.sigma_err = parse_num<double>(kv["sigma_err"], lineno, "sigma_err");
  if (kv.count("max_range") && kv["max_range"] != "none") {
    p.max_apparent_range = parse_num<double>(kv["max_range"], lineno, "max_range");
  }
  if (kv.count("max_attempts")) p.max_attempts = parse_num<int>(kv["max_attempts"], lineno, "max_attempts");
  if (kv.count("seed")) net.seed = parse_num<std::uint64_t>(kv["seed"], lineno, "seed");
  if (kv.count("discarded")) net.discarded = parse_num<int>(kv["discarded"], lineno, "discarded");

  net.true_positions.resize(n);
  net.apparent_positions.resize(n);
  std::vector<bool> seen(n, false);
  std::vector<NodePair> edges;
  while (next()) {
    toks = split(line);
    if (toks[0] == "node") {
      if (toks.size() != 6) throw ParseError(lineno, "node line needs 5 fields");
      const int id = parse_num<int>(toks[1], lineno, "node id");
      if (id < 0 || id >= n) throw ParseError(lineno, "node id out of range");
      if (seen[id]) throw ParseError(lineno, "repeated node " + toks[1]);
      seen[id] = true;
      net.true_positions[id] = {parse_num<double>(toks[2], lineno, "coordinate"),
                                parse_num<double>(toks[3], lineno, "coordinate")};
      net.apparent_positions[id] = {parse_num<double>(toks[4], lineno, "coordinate"),
                                    parse_num<double>(toks[5], lineno, "coordinate")};
    } else if (toks[0] == "edge") {
      if (toks.size() != 3) throw ParseError(lineno, "edge line needs 2 fields");
      const int u = parse_num<int>(toks[1], lineno, "node id");
      const int v = parse_num<int>(toks[2], lineno, "node id");
      if (u < 0 || v < 0 || u >= n || v >= n) throw ParseError(lineno, "edge endpoint out of range");
      if (u == v) throw ParseError(lineno, "self-loop");
      edges.push_back(NodePair::of(u, v));
    } else {
      throw ParseError(lineno, "unknown record '" + toks[0] + "'");
    }
  }
  for (int i = 0; i < n; ++i) {
    if (!seen[i]) throw ParseError(lineno, "node " + std::to_string(i) + " never defined");
  }
  net.graph = CommGraph::from_edges(n, edges);
  return net;
}

void save_network_file(const std::string& path, const LocalizedNetwork& net) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  save_network(out, net);
  if (!out) throw Error("write failed: " + path);
}

LocalizedNetwork load_network_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  return load_network(in);
}

}  // namespace geoecc
