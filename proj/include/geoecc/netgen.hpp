#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "geoecc/netgraph.hpp"
#include "geoecc/types.hpp"

namespace geoecc {

struct RandomModel {
  double p = 0.0;
};
struct SinrModel {
  double r = 1.0;
  double R = 2.0;
};
struct ExponentialModel {
  double r_avg = 1.0;
};
using LinkModel = std::variant<RandomModel, SinrModel, ExponentialModel>;

std::string model_name(const LinkModel& m);
/// Throws ConfigError for non-positive parameters, p > 1, or r >= R.
void validate_model(const LinkModel& m);
double link_probability(const LinkModel& m, double d);

struct GenParams {
  double L = 10.0;
  std::optional<int> n;  // defaults to round(4 L^2)
  LinkModel model = SinrModel{1.6, 2.24};
  double sigma_err = 0.0;
  std::optional<double> max_apparent_range;
  int max_attempts = 1000;

  int node_count() const;
  /// [0, 4L] x [0, L].
  BoundingBox deployment() const;
  /// Throws ConfigError.
  void validate() const;
};

struct LocalizedNetwork {
  std::vector<Point2> true_positions;
  std::vector<Point2> apparent_positions;
  CommGraph graph;
  GenParams params;
  std::uint64_t seed = 0;
  int discarded = 0;  // disconnected draws rejected before this one

  int size() const { return graph.size(); }
  /// Deployment rectangle joined with every apparent position, inflated by
  /// twice the mean nearest-neighbour spacing of the apparent positions.
  BoundingBox clip_box() const;
};

/// Seeded generator: mt19937_64 with hand-rolled uniform and normal
/// transforms so that draws are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  /// Uniform in [0, 1) with 53 random bits.
  double uniform();
  /// Standard normal (Box-Muller, one value per call).
  double normal();
  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

enum class Stream : std::uint64_t { kScatter = 1, kLinks = 2, kError = 3 };
/// Independent seed for one purpose of one generation attempt.
std::uint64_t substream(std::uint64_t seed, int attempt, Stream s);

/// Uniform positions in the deployment rectangle, duplicates redrawn.
std::vector<Point2> scatter(int n, double L, std::uint64_t seed);
/// Each unordered pair linked independently with the model probability.
std::vector<NodePair> sample_links(std::span<const Point2> pos, const LinkModel& m, std::uint64_t seed);
std::vector<NodePair> sample_links_serial(std::span<const Point2> pos, const LinkModel& m, std::uint64_t seed);
/// Displaces each position by a signed Gaussian radius of scale sigma
/// along a direction uniform in [0, pi).
std::vector<Point2> inject_error(std::span<const Point2> positions, double sigma, std::uint64_t seed);
/// Drops edges whose apparent length exceeds the bound.
LocalizedNetwork remove_long_links(const LocalizedNetwork& net, double max_apparent_range);

/// Throws ConfigError or ConnectivityExhausted.
LocalizedNetwork generate(const GenParams& params, std::uint64_t seed);

/// Line-oriented text format; floats round-trip exactly.
void save_network(std::ostream& out, const LocalizedNetwork& net);
/// Throws ParseError.
LocalizedNetwork load_network(std::istream& in);
void save_network_file(const std::string& path, const LocalizedNetwork& net);
LocalizedNetwork load_network_file(const std::string& path);

}  // namespace geoecc
