#include "rtlab/sphere.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

namespace rtlab {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr double kHalfPi = std::numbers::pi / 2;

void require_dimension(int k) {
  if (k < 1) throw std::invalid_argument("sphere dimension k must be >= 1");
}

double norm(std::span<const double> v) {
  double s = 0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

// Unnormalized polar-angle density of S^k, peak value 1 at pi/2.
double polar_density(int k, double phi) {
  if (k == 1) return 1.0;
  const double sin_phi = std::sin(phi);
  if (sin_phi <= 0) return 0.0;
  return std::exp((k - 1) * std::log(sin_phi));
}

// Integral of the polar density over [0, upper], upper <= pi/2. The density
// concentrates in a window of width ~1/sqrt(k) below pi/2, so the interval is
// split at pi/2 - c/sqrt(k) before adaptive integration.
double polar_integral(int k, double upper) {
  if (upper <= 0) return 0.0;
  std::vector<double> cuts{0.0};
  const double scale = 1.0 / std::sqrt(static_cast<double>(k));
  for (double c : {64.0, 32.0, 16.0, 8.0, 4.0, 2.0, 1.0, 0.5}) {
    const double x = kHalfPi - c * scale;
    if (x > cuts.back()) cuts.push_back(x);
  }
  cuts.push_back(kHalfPi);

  auto f = [k](double phi) { return polar_density(k, phi); };
  double total = 0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i];
    const double b = std::min(cuts[i + 1], upper);
    if (b <= a) break;
    total += boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, 8,
                                                                          1e-12);
    if (b >= upper) break;
  }
  return total;
}

double cap_measure_nonneg(int k, double s, double half_total) {
  return polar_integral(k, std::acos(s)) / (2 * half_total);
}

}  // namespace

SpherePoint SpherePoint::normalized(std::vector<double> coords) {
  if (coords.size() < 2) throw std::invalid_argument("a sphere point needs >= 2 coordinates");
  const double n = norm(coords);
  if (!(n > 0) || !std::isfinite(n)) throw std::invalid_argument("cannot normalize a zero vector");
  for (double& x : coords) x /= n;
  return SpherePoint(std::move(coords));
}

SpherePoint SpherePoint::from_unit(std::vector<double> coords) {
  if (coords.size() < 2) throw std::invalid_argument("a sphere point needs >= 2 coordinates");
  if (std::abs(norm(coords) - 1.0) > 1e-12)
    throw std::invalid_argument("coordinates are not unit length");
  return SpherePoint(std::move(coords));
}

double SpherePoint::dot(const SpherePoint& other) const {
  if (other.coords_.size() != coords_.size())
    throw std::invalid_argument("sphere points of different dimension");
  double s = 0;
  for (std::size_t i = 0; i < coords_.size(); ++i) s += coords_[i] * other.coords_[i];
  return s;
}

SpherePoint SpherePoint::antipode() const {
  std::vector<double> c = coords_;
  for (double& x : c) x = -x;
  return SpherePoint(std::move(c));
}

SpherePoint sample_uniform_point(int k, Rng& rng) {
  require_dimension(k);
  std::vector<double> g(static_cast<std::size_t>(k) + 1);
  for (;;) {
    for (double& x : g) x = rng.normal();
    if (norm(g) > 1e-300) return SpherePoint::normalized(g);
  }
}

double distance(const SpherePoint& p, const SpherePoint& q) {
  if (p.dimension() != q.dimension())
    throw std::invalid_argument("sphere points of different dimension");
  double s = 0;
  for (std::size_t i = 0; i < p.coords().size(); ++i) {
    const double d = p[i] - q[i];
    s += d * d;
  }
  return std::sqrt(s);
}

SphericalCap SphericalCap::with_radius(SpherePoint center, double a) {
  return {std::move(center), cap_threshold_for_radius(a)};
}

SphericalCap SphericalCap::with_measure(SpherePoint center, double measure) {
  const int k = center.dimension();
  return {std::move(center), cap_threshold_for_measure(k, measure)};
}

double SphericalCap::radius() const { return std::sqrt(2 * height()); }

double cap_threshold_for_radius(double a) {
  if (a < 0 || a > 2) throw std::invalid_argument("cap radius must lie in [0, 2]");
  return 1.0 - a * a / 2;
}

double cap_threshold_for_diameter(double diameter) {
  if (diameter < 0 || diameter > 2) throw std::invalid_argument("cap diameter must lie in [0, 2]");
  const double half = diameter / 2;
  return std::sqrt(std::max(0.0, 1.0 - half * half));
}

double cap_measure(int k, double s) {
  require_dimension(k);
  if (!(s >= -1.0 && s <= 1.0)) throw std::invalid_argument("cap threshold must lie in [-1, 1]");
  if (s == 0.0) return 0.5;
  if (s == 1.0) return 0.0;
  if (s == -1.0) return 1.0;
  const double half_total = polar_integral(k, kHalfPi);
  if (s > 0) return cap_measure_nonneg(k, s, half_total);
  return 1.0 - cap_measure_nonneg(k, -s, half_total);
}

double cap_threshold_for_measure(int k, double measure) {
  require_dimension(k);
  if (!(measure >= 0 && measure <= 1)) throw std::invalid_argument("measure must lie in [0, 1]");
  double lo = -1.0, hi = 1.0;  // cap_measure decreasing in s
  for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
    const double mid = (lo + hi) / 2;
    if (cap_measure(k, mid) > measure)
      lo = mid;
    else
      hi = mid;
  }
  return (lo + hi) / 2;
}

double simplex_edge_length(int t) {
  if (t < 2) throw std::invalid_argument("simplex needs t >= 2 points");
  const double td = t;
  return std::sqrt(2 * td / (td - 1));
}

double p1_measure(double epsilon, int k) {
  const double theta = epsilon / std::sqrt(static_cast<double>(k));
  return cap_measure(k, cap_threshold_for_radius(kSqrt2 - theta));
}

double p3_measure(double epsilon, int k) {
  const double theta = epsilon / std::sqrt(static_cast<double>(k));
  return cap_measure(k, cap_threshold_for_diameter(2 - theta / 2));
}

double p2_intersection_estimate(double epsilon, int k, int t, std::size_t samples,
                                Rng& rng) {
  require_dimension(k);
  if (t < 1 || t > k + 1) throw std::invalid_argument("need 1 <= t <= k+1 orthogonal centres");
  const double theta = epsilon / std::sqrt(static_cast<double>(k));
  const double s = cap_threshold_for_radius(kSqrt2 - theta);
  const int rest = k + 1 - t;
  std::chi_squared_distribution<double> chi(rest > 0 ? rest : 1);
  std::vector<double> g(static_cast<std::size_t>(t));
  std::size_t hits = 0;
  for (std::size_t n = 0; n < samples; ++n) {
    double sq = 0;
    for (double& x : g) {
      x = rng.normal();
      sq += x * x;
    }
    if (rest > 0) sq += chi(rng);
    const double len = std::sqrt(sq);
    bool inside = true;
    for (double x : g) {
      if (x / len < s) {
        inside = false;
        break;
      }
    }
    hits += inside ? 1 : 0;
  }
  return static_cast<double>(hits) / static_cast<double>(samples);
}

EpsK find_eps_k(double alpha, double beta, int t_max, const EpsKOptions& options) {
  if (!(alpha > 0 && alpha < 0.5) || !(beta > 0 && beta < 0.5))
    throw std::invalid_argument("alpha and beta must lie in (0, 1/2)");
  if (t_max < 1) throw std::invalid_argument("t_max must be >= 1");

  double epsilon = 1.0;
  for (int halving = 0; halving <= options.max_halvings; ++halving, epsilon /= 2) {
    // Large-k limit of the p1 measure is erfc(eps)/2.
    if (std::erfc(epsilon) / 2 < 0.5 - alpha) continue;

    auto good = [&](int k) {
      if (k + 1 < t_max) return false;
      if (!(epsilon / std::sqrt(static_cast<double>(k)) < 0.25)) return false;
      return p3_measure(epsilon, k) <= beta;
    };
    int hi = 1;
    while (!good(hi)) {
      if (hi > options.max_k / 2)
        throw std::runtime_error("find_eps_k: no k <= " + std::to_string(options.max_k) +
                                 " satisfies the cap properties for these tolerances");
      hi *= 2;
    }
    int lo = hi / 2;  // good(lo) false, or lo == 0
    while (hi - lo > 1) {
      const int mid = lo + (hi - lo) / 2;
      if (good(mid))
        hi = mid;
      else
        lo = mid;
    }
    const int k = hi;

    EpsK out;
    out.epsilon = epsilon;
    out.k = k;
    out.theta = epsilon / std::sqrt(static_cast<double>(k));
    out.p1_measure = p1_measure(epsilon, k);
    out.p3_measure = p3_measure(epsilon, k);
    if (out.p1_measure < 0.5 - alpha) continue;

    bool p2_ok = true;
    for (int t = 2; t <= t_max; ++t) {
      Rng rng = derive_rng(options.seed, "find_eps_k/p2", static_cast<std::uint64_t>(t));
      P2Check c;
      c.t = t;
      c.estimate = p2_intersection_estimate(epsilon, k, t, options.p2_samples, rng);
      c.floor = std::max(0.0, 1.0 - t * (1.0 - out.p1_measure));
      c.required = std::ldexp(1.0, -t) - t * alpha;
      c.holds = c.estimate >= c.required;
      p2_ok = p2_ok && c.holds;
      out.p2.push_back(c);
    }
    if (!p2_ok) continue;
    return out;
  }
  throw std::runtime_error("find_eps_k: no epsilon on the halving chain satisfies p1-p3");
}

double check_p4(const SpherePoint& p1, const SpherePoint& p2, const SpherePoint& q1,
                const SpherePoint& q2, double gamma) {
  if (!(gamma > 0 && gamma < 0.25)) throw std::invalid_argument("gamma must lie in (0, 1/4)");
  double margin = std::min(distance(p1, p2) - (2 - gamma), distance(q1, q2) - (2 - gamma));
  const double close = kSqrt2 - gamma;
  for (const SpherePoint* p : {&p1, &p2})
    for (const SpherePoint* q : {&q1, &q2}) margin = std::min(margin, close - distance(*p, *q));
  return margin;
}

namespace {

SpherePoint jitter(const SpherePoint& x, double sigma, Rng& rng) {
  std::vector<double> c(x.coords().begin(), x.coords().end());
  for (double& v : c) v += sigma * rng.normal();
  return SpherePoint::normalized(std::move(c));
}

// Unit vector orthogonal to x.
SpherePoint orthogonal_to(const SpherePoint& x, Rng& rng) {
  for (;;) {
    std::vector<double> g(x.coords().size());
    for (double& v : g) v = rng.normal();
    double d = 0;
    for (std::size_t i = 0; i < g.size(); ++i) d += g[i] * x[i];
    for (std::size_t i = 0; i < g.size(); ++i) g[i] -= d * x[i];
    if (norm(g) > 1e-9) return SpherePoint::normalized(std::move(g));
  }
}

}  // namespace

P4Search p4_search(int k, double gamma, std::size_t draws, std::size_t refinements,
                   Rng& rng) {
  require_dimension(k);
  P4Search out;
  out.best_margin = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < draws; ++i) {
    const SpherePoint p1 = sample_uniform_point(k, rng);
    const SpherePoint p2 = sample_uniform_point(k, rng);
    const SpherePoint q1 = sample_uniform_point(k, rng);
    const SpherePoint q2 = sample_uniform_point(k, rng);
    out.best_margin = std::max(out.best_margin, check_p4(p1, p2, q1, q2, gamma));
    ++out.random_draws;
  }
  // Refinements start at the antipodal/orthogonal configuration, which has
  // margin exactly -gamma, and hill-climb from a perturbation of it.
  constexpr int kSteps = 300;
  for (std::size_t i = 0; i < refinements; ++i) {
    const SpherePoint p = sample_uniform_point(k, rng);
    const SpherePoint q = orthogonal_to(p, rng);
    std::vector<SpherePoint> pts{jitter(p, 0.05, rng), jitter(p.antipode(), 0.05, rng),
                                 jitter(q, 0.05, rng), jitter(q.antipode(), 0.05, rng)};
    double cur = check_p4(pts[0], pts[1], pts[2], pts[3], gamma);
    double sigma = 0.05;
    for (int step = 0; step < kSteps; ++step) {
      const std::size_t which = rng.below(4);
      std::vector<SpherePoint> cand = pts;
      cand[which] = jitter(pts[which], sigma, rng);
      const double m = check_p4(cand[0], cand[1], cand[2], cand[3], gamma);
      if (m > cur) {
        cur = m;
        pts = std::move(cand);
      } else {
        sigma = std::max(sigma * 0.97, 1e-6);
      }
    }
    out.best_margin = std::max(out.best_margin, cur);
    ++out.refinements;
  }
  return out;
}

std::size_t SpherePartition::domain_of(const SpherePoint& x) const {
  std::size_t best = 0;
  double best_dot = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < reps.size(); ++i) {
    const double d = x.dot(reps[i]);
    if (d > best_dot) {
      best_dot = d;
      best = i;
    }
  }
  return best;
}

SpherePartition build_partition(int k, std::size_t z, double theta, std::uint64_t seed,
                                const PartitionOptions& options) {
  require_dimension(k);
  if (z < 1) throw std::invalid_argument("partition needs z >= 1 domains");
  SpherePartition part;
  part.k = k;
  part.z = z;
  part.theta = theta;
  part.domain_diam_bound = theta / 4;
  part.seed = seed;

  Rng init = derive_rng(seed, "build_partition/init");
  part.reps.reserve(z);
  for (std::size_t i = 0; i < z; ++i) part.reps.push_back(sample_uniform_point(k, init));
  if (z == 1) return part;

  const std::size_t dim = static_cast<std::size_t>(k) + 1;
  const std::size_t samples = std::max(options.min_samples, options.samples_per_domain * z);
  for (int it = 0; it < options.lloyd_iterations; ++it) {
    Rng rng = derive_rng(seed, "build_partition/lloyd", static_cast<std::uint64_t>(it));
    std::vector<double> sums(z * dim, 0.0);
    std::vector<std::size_t> counts(z, 0);
    for (std::size_t n = 0; n < samples; ++n) {
      const SpherePoint x = sample_uniform_point(k, rng);
      const std::size_t d = part.domain_of(x);
      ++counts[d];
      for (std::size_t c = 0; c < dim; ++c) sums[d * dim + c] += x[c];
    }
    for (std::size_t d = 0; d < z; ++d) {
      if (counts[d] == 0) continue;
      std::vector<double> centroid(sums.begin() + static_cast<std::ptrdiff_t>(d * dim),
                                   sums.begin() + static_cast<std::ptrdiff_t>((d + 1) * dim));
      if (norm(centroid) > 1e-12) part.reps[d] = SpherePoint::normalized(std::move(centroid));
    }
  }
  return part;
}

PartitionReport assess_partition(const SpherePartition& partition, std::size_t samples,
                                 Rng& rng) {
  constexpr std::size_t kDiameterSamplesPerDomain = 64;
  PartitionReport out;
  const std::size_t z = partition.reps.size();
  std::vector<std::size_t> counts(z, 0);
  std::vector<std::vector<SpherePoint>> kept(z);
  for (std::size_t n = 0; n < samples; ++n) {
    SpherePoint x = sample_uniform_point(partition.k, rng);
    const std::size_t d = partition.domain_of(x);
    ++counts[d];
    if (kept[d].size() < kDiameterSamplesPerDomain) kept[d].push_back(std::move(x));
  }
  out.measures.resize(z);
  for (std::size_t d = 0; d < z; ++d) {
    out.measures[d] = static_cast<double>(counts[d]) / static_cast<double>(samples);
    out.max_relative_deviation =
        std::max(out.max_relative_deviation, std::abs(out.measures[d] * static_cast<double>(z) - 1));
    for (std::size_t i = 0; i < kept[d].size(); ++i)
      for (std::size_t j = i + 1; j < kept[d].size(); ++j)
        out.max_diameter_estimate =
            std::max(out.max_diameter_estimate, distance(kept[d][i], kept[d][j]));
  }
  out.diameter_warning = out.max_diameter_estimate > partition.domain_diam_bound;
  return out;
}

SpherePoint sample_in_cap(const SphericalCap& cap, Rng& rng) {
  const int k = cap.center.dimension();
  const double s = std::clamp(cap.threshold, -1.0, 1.0);
  const double phi_max = std::acos(s);
  if (phi_max <= 0) return cap.center;
  const double peak = std::sin(std::min(phi_max, kHalfPi));
  double phi = 0;
  for (;;) {
    phi = rng.uniform() * phi_max;
    if (k == 1) break;
    const double ratio = std::sin(phi) / peak;
    if (rng.uniform() < std::pow(ratio, k - 1)) break;
  }
  const SpherePoint w = orthogonal_to(cap.center, rng);
  std::vector<double> x(cap.center.coords().size());
  for (std::size_t i = 0; i < x.size(); ++i)
    x[i] = std::cos(phi) * cap.center[i] + std::sin(phi) * w[i];
  return SpherePoint::normalized(std::move(x));
}

namespace {

double min_pairwise(const std::vector<SpherePoint>& pts) {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) m = std::min(m, distance(pts[i], pts[j]));
  return m;
}

}  // namespace

double estimate_dt(std::span<const SphericalCap> regions, int t, std::size_t samples,
                   Rng& rng, const DtOptions& options) {
  if (t < 2) throw std::invalid_argument("d_t needs t >= 2");
  if (regions.empty()) throw std::invalid_argument("d_t of an empty region set");
  const int k = regions.front().center.dimension();
  std::vector<double> weights;
  double sigma0 = 0;
  for (const SphericalCap& c : regions) {
    if (c.center.dimension() != k) throw std::invalid_argument("caps of different dimension");
    weights.push_back(std::max(cap_measure(k, std::clamp(c.threshold, -1.0, 1.0)), 1e-300));
    sigma0 = std::max(sigma0, c.radius());
  }
  sigma0 = std::min(sigma0, 1.0);
  std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
  auto in_union = [&](const SpherePoint& x) {
    return std::any_of(regions.begin(), regions.end(),
                       [&](const SphericalCap& c) { return c.contains(x); });
  };

  double best = 0;
  for (std::size_t start = 0; start < std::max<std::size_t>(samples, 1); ++start) {
    std::vector<SpherePoint> pts;
    for (int i = 0; i < t; ++i) pts.push_back(sample_in_cap(regions[pick(rng)], rng));
    double cur = min_pairwise(pts);
    double sigma = sigma0 / 2;
    int misses = 0;
    for (std::size_t step = 0; step < options.ascent_steps && sigma > 1e-9; ++step) {
      const std::size_t i = rng.below(static_cast<std::uint64_t>(t));
      SpherePoint moved = jitter(pts[i], sigma, rng);
      if (!in_union(moved)) {
        if (++misses > 10) {
          sigma *= 0.7;
          misses = 0;
        }
        continue;
      }
      std::swap(pts[i], moved);
      const double m = min_pairwise(pts);
      if (m >= cur) {
        cur = m;
        misses = 0;
      } else {
        std::swap(pts[i], moved);
        if (++misses > 10) {
          sigma *= 0.7;
          misses = 0;
        }
      }
    }
    best = std::max(best, cur);
  }
  return best;
}

}  // namespace rtlab
