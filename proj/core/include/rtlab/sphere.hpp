#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rtlab/rng.hpp"

namespace rtlab {

/// A point of the k-dimensional unit sphere S^k in R^{k+1}.
class SpherePoint {
 public:
  /// Scales a non-zero vector onto the sphere.
  static SpherePoint normalized(std::vector<double> coords);
  /// Wraps coordinates that are already unit length (within 1e-12).
  static SpherePoint from_unit(std::vector<double> coords);

  int dimension() const { return static_cast<int>(coords_.size()) - 1; }
  std::span<const double> coords() const { return coords_; }
  double operator[](std::size_t i) const { return coords_[i]; }
  double dot(const SpherePoint& other) const;
  SpherePoint antipode() const;

  friend bool operator==(const SpherePoint&, const SpherePoint&) = default;

 private:
  explicit SpherePoint(std::vector<double> coords) : coords_(std::move(coords)) {}
  std::vector<double> coords_;
};

/// Uniform point on S^k (normalized standard-normal vector).
SpherePoint sample_uniform_point(int k, Rng& rng);

/// Euclidean distance in R^{k+1}.
double distance(const SpherePoint& p, const SpherePoint& q);

/// {x : x . center >= threshold}. Height h = 1 - threshold, and the largest
/// distance a from the centre to a cap point satisfies 2h = a^2.
struct SphericalCap {
  SpherePoint center;
  double threshold;

  static SphericalCap with_radius(SpherePoint center, double a);
  static SphericalCap with_measure(SpherePoint center, double measure);

  double height() const { return 1.0 - threshold; }
  double radius() const;
  bool contains(const SpherePoint& x) const { return x.dot(center) >= threshold; }
};

/// Threshold of the cap whose points are within chord distance a of the
/// centre: s = 1 - a^2 / 2.
double cap_threshold_for_radius(double a);
/// Threshold of the cap (no larger than a hemisphere) whose diameter, the
/// diameter of its boundary sphere, is D: s = sqrt(1 - (D/2)^2).
double cap_threshold_for_diameter(double diameter);

/// Normalized measure (mu(S^k) = 1) of a cap {x : x . c >= s} in S^k.
/// Adaptive Gauss-Kronrod quadrature of sin^{k-1} over the polar angle.
double cap_measure(int k, double s);

/// Inverse of cap_measure in s, by bisection.
double cap_threshold_for_measure(int k, double measure);

/// Length of a side of the regular t-simplex inscribed in the unit sphere.
double simplex_edge_length(int t);

struct P2Check {
  int t = 0;
  double estimate = 0;  // Monte Carlo measure of the t-fold intersection
  double floor = 0;     // 1 - sum(1 - mu(C_i)), clamped at 0
  double required = 0;  // 2^{-t} - t alpha
  bool holds = false;
};

struct EpsK {
  double epsilon = 0;
  int k = 0;
  double theta = 0;
  double p1_measure = 0;  // must be >= 1/2 - alpha
  double p3_measure = 0;  // must be <= beta
  std::vector<P2Check> p2;
};

struct EpsKOptions {
  std::size_t p2_samples = 100'000;
  std::uint64_t seed = 0x5eed;
  int max_k = 1'000'000;
  int max_halvings = 40;
};

/// Finds (epsilon, k) for which the cap properties used by the
/// constructions hold numerically:
///   p1: mu(cap with 2h = (sqrt2 - eps/sqrt k)^2) >= 1/2 - alpha,
///   p2: t caps of that height with pairwise centre distance sqrt2 meet in
///       measure >= 2^{-t} - t alpha for 2 <= t <= t_max,
///   p3: mu(cap of diameter 2 - eps/(2 sqrt k)) <= beta,
/// together with theta = eps/sqrt k < 1/4. k is minimal for the chosen eps.
/// Throws std::runtime_error when k would exceed options.max_k.
EpsK find_eps_k(double alpha, double beta, int t_max, const EpsKOptions& options = {});

double p1_measure(double epsilon, int k);
double p3_measure(double epsilon, int k);
/// Monte Carlo estimate of the t-fold intersection in p2 for mutually
/// orthogonal centres.
double p2_intersection_estimate(double epsilon, int k, int t, std::size_t samples,
                                Rng& rng);

/// Violation margin of the four-point configuration forbidden for
/// 0 < gamma < 1/4:
///   min(d(p1,p2) - (2-gamma), d(q1,q2) - (2-gamma),
///       min_{i,j} (sqrt2 - gamma) - d(p_i,q_j)).
/// A non-negative margin would be a counterexample.
double check_p4(const SpherePoint& p1, const SpherePoint& p2, const SpherePoint& q1,
                const SpherePoint& q2, double gamma);

struct P4Search {
  double best_margin = 0;
  std::size_t random_draws = 0;
  std::size_t refinements = 0;
};

/// Random search plus hill-climbing refinements for the largest check_p4
/// margin on S^k.
P4Search p4_search(int k, double gamma, std::size_t draws, std::size_t refinements,
                   Rng& rng);

struct PartitionOptions {
  int lloyd_iterations = 20;
  std::size_t samples_per_domain = 200;
  std::size_t min_samples = 20'000;
};

/// z representative points; the domains are the Voronoi cells of the reps.
struct SpherePartition {
  int k = 0;
  std::size_t z = 0;
  std::vector<SpherePoint> reps;
  double theta = 0;
  double domain_diam_bound = 0;  // theta / 4
  std::uint64_t seed = 0;

  /// Index of the domain containing x (nearest rep, ties to the lower index).
  std::size_t domain_of(const SpherePoint& x) const;
};

SpherePartition build_partition(int k, std::size_t z, double theta, std::uint64_t seed,
                                const PartitionOptions& options = {});

struct PartitionReport {
  std::vector<double> measures;  // empirical measure of each domain
  double max_relative_deviation = 0;
  double max_diameter_estimate = 0;
  bool diameter_warning = false;  // estimate exceeds theta / 4
};

PartitionReport assess_partition(const SpherePartition& partition, std::size_t samples,
                                 Rng& rng);

/// Uniform point of a cap (rejection sampling of the polar angle).
SpherePoint sample_in_cap(const SphericalCap& cap, Rng& rng);

struct DtOptions {
  std::size_t ascent_steps = 400;
};

/// Lower estimate of d_t of the union of the caps: the best minimum pairwise
/// distance over t-point configurations inside the union, by random
/// multistart (samples starts) and local coordinate ascent.
double estimate_dt(std::span<const SphericalCap> regions, int t, std::size_t samples,
                   Rng& rng, const DtOptions& options = {});

}  // namespace rtlab
