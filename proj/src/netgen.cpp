#include "geoecc/netgen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "geoecc/errors.hpp"
#include "geoecc/geometry.hpp"

namespace geoecc {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

bool positive(double x) { return std::isfinite(x) && x > 0; }

double pair_uniform(std::uint64_t seed, std::uint64_t i, std::uint64_t j) {
  const std::uint64_t h = splitmix64(seed ^ splitmix64((i << 32) | j));
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

}  // namespace

std::string model_name(const LinkModel& m) {
  return std::visit(Overloaded{[](const RandomModel&) { return std::string("random"); },
                               [](const SinrModel&) { return std::string("sinr"); },
                               [](const ExponentialModel&) { return std::string("exponential"); }},
                    m);
}

void validate_model(const LinkModel& m) {
  std::visit(Overloaded{[](const RandomModel& r) {
                          if (!(r.p > 0 && r.p <= 1)) throw ConfigError("random model needs 0 < p <= 1");
                        },
                        [](const SinrModel& s) {
                          if (!positive(s.r) || !positive(s.R)) throw ConfigError("sinr ranges must be positive");
                          if (!(s.r < s.R)) throw ConfigError("sinr model needs r < R");
                        },
                        [](const ExponentialModel& e) {
                          if (!positive(e.r_avg)) throw ConfigError("exponential model needs r_avg > 0");
                        }},
             m);
}

double link_probability(const LinkModel& m, double d) {
  return std::visit(Overloaded{[](const RandomModel& r) { return r.p; },
                               [d](const SinrModel& s) {
                                 if (d <= s.r) return 1.0;
                                 if (d >= s.R) return 0.0;
                                 const double v = (1.0 / (d * d) - 1.0 / (s.R * s.R)) /
                                                  (1.0 / (s.r * s.r) - 1.0 / (s.R * s.R));
                                 return std::clamp(v, 0.0, 1.0);
                               },
                               [d](const ExponentialModel& e) { return std::exp(-d / e.r_avg); }},
                    m);
}

int GenParams::node_count() const { return n ? *n : static_cast<int>(std::lround(4.0 * L * L)); }

BoundingBox GenParams::deployment() const { return {{0.0, 0.0}, {4.0 * L, L}}; }

void GenParams::validate() const {
  if (!positive(L)) throw ConfigError("L must be positive");
  if (node_count() < 1) throw ConfigError("node count must be positive");
  validate_model(model);
  if (!(std::isfinite(sigma_err) && sigma_err >= 0)) throw ConfigError("sigma_err must be nonnegative");
  if (max_apparent_range && !(*max_apparent_range > 0)) throw ConfigError("max_apparent_range must be positive");
  if (max_attempts < 1) throw ConfigError("max_attempts must be positive");
}

BoundingBox LocalizedNetwork::clip_box() const {
  BoundingBox bb = params.deployment();
  for (Point2 p : apparent_positions) {
    bb.min.x = std::min(bb.min.x, p.x);
    bb.min.y = std::min(bb.min.y, p.y);
    bb.max.x = std::max(bb.max.x, p.x);
    bb.max.y = std::max(bb.max.y, p.y);
  }
  return bb.inflated(apparent_positions.size() > 1 ? 2.0 * mean_nn_spacing(apparent_positions) : 1.0);
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t substream(std::uint64_t seed, int attempt, Stream s) {
  return splitmix64(splitmix64(seed) ^ splitmix64((static_cast<std::uint64_t>(attempt) << 8) |
                                                  static_cast<std::uint64_t>(s)));
}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::normal() {
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::vector<Point2> scatter(int n, double L, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Point2> pts;
  std::set<std::pair<double, double>> used;
  pts.reserve(n);
  while (static_cast<int>(pts.size()) < n) {
    const double x = 4.0 * L * rng.uniform();
    const double y = L * rng.uniform();
    if (used.emplace(x, y).second) pts.push_back({x, y});
  }
  return pts;
}

std::vector<NodePair> sample_links_serial(std::span<const Point2> pos, const LinkModel& m, std::uint64_t seed) {
  std::vector<NodePair> out;
  const int n = static_cast<int>(pos.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (pair_uniform(seed, i, j) < link_probability(m, distance(pos[i], pos[j]))) out.push_back({i, j});
  return out;
}

std::vector<NodePair> sample_links(std::span<const Point2> pos, const LinkModel& m, std::uint64_t seed) {
  const int n = static_cast<int>(pos.size());
  std::vector<std::vector<NodePair>> rows(n);
#pragma omp parallel for schedule(dynamic, 16)
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (pair_uniform(seed, i, j) < link_probability(m, distance(pos[i], pos[j]))) rows[i].push_back({i, j});
  std::vector<NodePair> out;
  for (auto& r : rows) out.insert(out.end(), r.begin(), r.end());
  return out;
}

std::vector<Point2> inject_error(std::span<const Point2> positions, double sigma, std::uint64_t seed) {
  std::vector<Point2> out(positions.begin(), positions.end());
  if (sigma == 0.0) return out;
  Rng rng(seed);
  for (Point2& p : out) {
    const double theta = std::numbers::pi * rng.uniform();
    const double radius = sigma * rng.normal();
    p = p + Point2{radius * std::cos(theta), radius * std::sin(theta)};
  }
  return out;
}

LocalizedNetwork remove_long_links(const LocalizedNetwork& net, double max_apparent_range) {
  if (!(max_apparent_range > 0)) throw ConfigError("max_apparent_range must be positive");
  std::vector<NodePair> kept;
  for (const NodePair& e : net.graph.edges()) {
    if (distance(net.apparent_positions[e.first], net.apparent_positions[e.second]) <= max_apparent_range) {
      kept.push_back(e);
    }
  }
  LocalizedNetwork out = net;
  out.graph = CommGraph::from_edges(net.size(), kept);
  return out;
}

LocalizedNetwork generate(const GenParams& params, std::uint64_t seed) {
  params.validate();
  const int n = params.node_count();
  for (int attempt = 0; attempt < params.max_attempts; ++attempt) {
    LocalizedNetwork net;
    net.params = params;
    net.seed = seed;
    net.discarded = attempt;
    net.true_positions = scatter(n, params.L, substream(seed, attempt, Stream::kScatter));
    net.graph = CommGraph::from_edges(n, sample_links(net.true_positions, params.model,
                                                      substream(seed, attempt, Stream::kLinks)));
    net.apparent_positions = inject_error(net.true_positions, params.sigma_err,
                                          substream(seed, attempt, Stream::kError));
    if (params.max_apparent_range) net = remove_long_links(net, *params.max_apparent_range);
    if (is_connected(net.graph)) return net;
  }
  throw ConnectivityExhausted(params.max_attempts);
}

}  // namespace geoecc
