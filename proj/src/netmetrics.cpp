#include "econet/netmetrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "econet/error.hpp"
#include "econet/parallel.hpp"
#include "econet/rng.hpp"

namespace econet {
namespace {

struct Triangles {
  // Sum over closed neighbor pairs {j, h} of node i of w_ij + w_ih, and the
  // number of such pairs.
  double weighted = 0.0;
  std::size_t closed = 0;
};

class TriangleCounter {
 public:
  explicit TriangleCounter(const WeightedGraph& g) : g_(g), mark_(g.node_count(), -1.0) {}

  Triangles at(std::size_t i) {
    Triangles t;
    const auto nbrs = g_.neighbors(i);
    for (const auto& nb : nbrs) mark_[nb.node] = nb.weight;
    for (const auto& j : nbrs) {
      for (const auto& h : g_.neighbors(j.node)) {
        if (h.node <= j.node || mark_[h.node] < 0.0) continue;
        t.weighted += j.weight + mark_[h.node];
        ++t.closed;
      }
    }
    for (const auto& nb : nbrs) mark_[nb.node] = -1.0;
    return t;
  }

 private:
  const WeightedGraph& g_;
  std::vector<double> mark_;
};

std::optional<double> weighted_from(const WeightedGraph& g, std::size_t i, const Triangles& t) {
  const std::size_t k = g.degree(i);
  if (k < 2) return std::nullopt;
  return t.weighted / (g.strength(i) * static_cast<double>(k - 1));
}

std::optional<double> unweighted_from(const WeightedGraph& g, std::size_t i, const Triangles& t) {
  const std::size_t k = g.degree(i);
  if (k < 2) return std::nullopt;
  return static_cast<double>(t.closed) / (static_cast<double>(k) * static_cast<double>(k - 1) / 2.0);
}

std::vector<double> defined_weighted_clustering(const WeightedGraph& g) {
  TriangleCounter counter(g);
  std::vector<double> out;
  for (std::size_t i = 0; i < g.node_count(); ++i) {
    if (g.degree(i) < 2) continue;
    out.push_back(*weighted_from(g, i, counter.at(i)));
  }
  return out;
}

std::optional<double> mean_of(const std::vector<double>& v) {
  if (v.empty()) return std::nullopt;
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

// Fraction of a sorted sample strictly greater than x.
double exceed_fraction(const std::vector<double>& sorted, double x) {
  if (sorted.empty()) return 0.0;
  const auto it = std::upper_bound(sorted.begin(), sorted.end(), x);
  return static_cast<double>(sorted.end() - it) / static_cast<double>(sorted.size());
}

}  // namespace

std::optional<double> global_clustering(const WeightedGraph& graph) {
  TriangleCounter counter(graph);
  double closed = 0.0, triples = 0.0;
  for (std::size_t i = 0; i < graph.node_count(); ++i) {
    const auto k = static_cast<double>(graph.degree(i));
    if (k < 2) continue;
    triples += k * (k - 1) / 2.0;
    closed += static_cast<double>(counter.at(i).closed);
  }
  if (triples == 0.0) return std::nullopt;
  return closed / triples;
}

std::optional<double> local_weighted_clustering(const WeightedGraph& graph, std::size_t node) {
  TriangleCounter counter(graph);
  return weighted_from(graph, node, counter.at(node));
}

std::optional<double> local_unweighted_clustering(const WeightedGraph& graph, std::size_t node) {
  TriangleCounter counter(graph);
  return unweighted_from(graph, node, counter.at(node));
}

std::vector<NodeStats> node_stats(const WeightedGraph& graph) {
  TriangleCounter counter(graph);
  std::vector<NodeStats> out(graph.node_count());
  for (std::size_t i = 0; i < graph.node_count(); ++i) {
    const Triangles t = counter.at(i);
    out[i].degree = graph.degree(i);
    out[i].strength = graph.strength(i);
    out[i].weighted_clustering = weighted_from(graph, i, t);
    out[i].unweighted_clustering = unweighted_from(graph, i, t);
  }
  return out;
}

std::optional<double> mean_defined(std::span<const std::optional<double>> values) {
  double s = 0.0;
  std::size_t n = 0;
  for (const auto& v : values) {
    if (!v) continue;
    s += *v;
    ++n;
  }
  if (n == 0) return std::nullopt;
  return s / static_cast<double>(n);
}

CcdfCurve ccdf(std::vector<double> samples) {
  std::sort(samples.begin(), samples.end());
  CcdfCurve c;
  const auto n = static_cast<double>(samples.size());
  for (std::size_t i = 0; i < samples.size();) {
    std::size_t j = i;
    while (j < samples.size() && samples[j] == samples[i]) ++j;
    c.values.push_back(samples[i]);
    c.exceed.push_back(static_cast<double>(samples.size() - j) / n);
    i = j;
  }
  return c;
}

NullEnsemble::NullEnsemble(const WeightedGraph& graph, std::size_t instances, std::uint64_t seed)
    : graph_(&graph), weights_(graph.weights()), instances_(instances), seed_(seed) {}

std::vector<double> NullEnsemble::instance_weights(std::size_t t) const {
  std::vector<double> w = weights_;
  Rng rng(stream_seed(seed_, t));
  rng.shuffle(std::span<double>(w));
  return w;
}

WeightedGraph NullEnsemble::instance(std::size_t t) const {
  return graph_->with_weights(instance_weights(t));
}

ClusteringNull clustering_null(const WeightedGraph& graph, std::size_t instances, std::uint64_t seed,
                               unsigned workers) {
  ClusteringNull r;
  std::vector<double> actual = defined_weighted_clustering(graph);
  r.actual_mean = mean_of(actual);

  const NullEnsemble ensemble(graph, instances, seed);
  std::vector<std::vector<double>> per_instance(instances);
  parallel_for(instances, workers, [&](unsigned, std::size_t t) {
    per_instance[t] = defined_weighted_clustering(ensemble.instance(t));
  });

  std::vector<double> pooled;
  for (auto& v : per_instance) {
    if (auto m = mean_of(v)) r.instance_means.push_back(*m);
    pooled.insert(pooled.end(), v.begin(), v.end());
  }
  r.null_mean = mean_of(r.instance_means);

  std::sort(actual.begin(), actual.end());
  std::sort(pooled.begin(), pooled.end());
  std::vector<double> points = actual;
  points.insert(points.end(), pooled.begin(), pooled.end());
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  std::size_t shifted = 0;
  for (double x : points) {
    if (exceed_fraction(actual, x) >= exceed_fraction(pooled, x)) ++shifted;
  }
  if (!points.empty()) r.right_shift_fraction = static_cast<double>(shifted) / static_cast<double>(points.size());

  r.actual = ccdf(std::move(actual));
  r.pooled = ccdf(std::move(pooled));
  return r;
}

std::optional<double> assortativity_scalar(const WeightedGraph& graph, std::span<const double> x) {
  if (x.size() != graph.node_count()) throw ValidationError("assortativity: attribute size mismatch");
  if (graph.edge_count() == 0) return std::nullopt;
  const double two_m = 2.0 * static_cast<double>(graph.edge_count());
  double mean = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) mean += static_cast<double>(graph.degree(i)) * x[i];
  mean /= two_m;

  double num = 0.0, den = 0.0, scale = 0.0;
  for (const auto& e : graph.edges()) num += 2.0 * (x[e.u] - mean) * (x[e.v] - mean);
  for (std::size_t i = 0; i < x.size(); ++i) {
    const auto k = static_cast<double>(graph.degree(i));
    den += k * (x[i] - mean) * (x[i] - mean);
    scale += k * x[i] * x[i];
  }
  if (den <= 1e-12 * scale || den == 0.0) return std::nullopt;
  return std::clamp(num / den, -1.0, 1.0);
}

std::optional<double> assortativity_categorical(const WeightedGraph& graph,
                                                std::span<const std::string> categories) {
  if (categories.size() != graph.node_count()) throw ValidationError("assortativity: attribute size mismatch");
  if (graph.edge_count() == 0) return std::nullopt;
  const double two_m = 2.0 * static_cast<double>(graph.edge_count());
  std::map<std::string_view, double> total_degree;
  for (std::size_t i = 0; i < categories.size(); ++i) {
    total_degree[categories[i]] += static_cast<double>(graph.degree(i));
  }
  double expected = 0.0;
  for (const auto& [cat, k] : total_degree) expected += k * k / two_m;
  double same = 0.0;
  for (const auto& e : graph.edges()) {
    if (categories[e.u] == categories[e.v]) same += 2.0;
  }
  const double den = two_m - expected;
  if (std::abs(den) <= 1e-12 * two_m) return std::nullopt;
  return (same - expected) / den;
}

Histogram histogram(std::span<const double> values, std::size_t bins) {
  if (values.empty()) throw ValidationError("histogram: no values");
  if (bins == 0) throw ValidationError("histogram: bins must be positive");
  Histogram h;
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  h.lo = *lo;
  h.hi = *hi;
  h.counts.assign(bins, 0);
  const double span = h.hi - h.lo;
  for (double v : values) {
    std::size_t b = 0;
    if (span > 0.0) {
      b = static_cast<std::size_t>((v - h.lo) / span * static_cast<double>(bins));
      b = std::min(b, bins - 1);
    }
    ++h.counts[b];
  }
  return h;
}

// Hartigan & Hartigan (1985). Works in count units on the sorted sample:
// the lower points (x_i, i) trace F just before each observation and the
// upper points (x_i, i + 1) trace F at it. The modal interval [low, high]
// shrinks each round to where the greatest convex minorant of the lower
// points and the least concave majorant of the upper points separate most.
double dip_statistic(std::vector<double> x) {
  if (x.empty()) throw ValidationError("dip: empty sample");
  std::sort(x.begin(), x.end());
  const auto n = static_cast<long>(x.size());
  double dip = 1.0;
  if (n < 2 || x.front() == x.back()) return dip / (2.0 * static_cast<double>(n));

  // Predecessor on the convex minorant of points 0..j and successor on the
  // concave majorant of points j..n-1.
  std::vector<long> prev(n), next(n);
  prev[0] = 0;
  for (long j = 1; j < n; ++j) {
    long p = j - 1;
    while (p > 0) {
      const long pp = prev[p];
      if ((x[j] - x[p]) * static_cast<double>(p - pp) < (x[p] - x[pp]) * static_cast<double>(j - p)) break;
      p = pp;
    }
    prev[j] = p;
  }
  next[n - 1] = n - 1;
  for (long k = n - 2; k >= 0; --k) {
    long q = k + 1;
    while (q < n - 1) {
      const long qq = next[q];
      if ((x[q] - x[k]) * static_cast<double>(qq - q) < (x[qq] - x[q]) * static_cast<double>(q - k)) break;
      q = qq;
    }
    next[k] = q;
  }

  long low = 0, high = n - 1;
  std::vector<long> gcm, lcm;
  for (;;) {
    gcm.assign(1, high);  // descending from high to low
    while (gcm.back() > low) gcm.push_back(prev[gcm.back()]);
    lcm.assign(1, low);  // ascending from low to high
    while (lcm.back() < high) lcm.push_back(next[lcm.back()]);
    const auto ng = static_cast<long>(gcm.size());
    const auto nl = static_cast<long>(lcm.size());

    // Walk both hulls left to right, measuring the gap at each vertex.
    long ig = ng - 1, ih = nl - 1;
    double gap = 0.0;
    if (ng == 2 && nl == 2) {
      gap = 1.0;
    } else {
      long ix = ng - 2, iv = 1;
      do {
        const long g = gcm[ix];
        const long l = lcm[iv];
        if (g > l) {
          const long g0 = gcm[ix + 1];
          const double d = static_cast<double>(l - g0 + 1) -
                           (x[l] - x[g0]) * static_cast<double>(g - g0) / (x[g] - x[g0]);
          ++iv;
          if (d >= gap) {
            gap = d;
            ig = ix + 1;
            ih = iv - 1;
          }
        } else {
          const long l0 = lcm[iv - 1];
          const double d = (x[g] - x[l0]) * static_cast<double>(l - l0) / (x[l] - x[l0]) -
                           static_cast<double>(g - l0 - 1);
          --ix;
          if (d >= gap) {
            gap = d;
            ig = ix + 1;
            ih = iv;
          }
        }
        ix = std::max(ix, 0L);
        iv = std::min(iv, nl - 1);
      } while (gcm[ix] != lcm[iv]);
    }
    if (gap < dip) break;

    // Largest departure of F from the minorant left of the gap and from the
    // majorant right of it.
    double dip_left = 0.0;
    for (long j = ig; j < ng - 1; ++j) {
      double worst = 1.0;
      const long top = gcm[j], bottom = gcm[j + 1];
      if (top - bottom > 1 && x[top] != x[bottom]) {
        const double slope = static_cast<double>(top - bottom) / (x[top] - x[bottom]);
        for (long i = bottom; i <= top; ++i) {
          worst = std::max(worst, static_cast<double>(i - bottom + 1) - (x[i] - x[bottom]) * slope);
        }
      }
      dip_left = std::max(dip_left, worst);
    }
    double dip_right = 0.0;
    for (long j = ih; j < nl - 1; ++j) {
      double worst = 1.0;
      const long a = lcm[j], b = lcm[j + 1];
      if (b - a > 1 && x[b] != x[a]) {
        const double slope = static_cast<double>(b - a) / (x[b] - x[a]);
        for (long i = a; i <= b; ++i) {
          worst = std::max(worst, (x[i] - x[a]) * slope - static_cast<double>(i - a - 1));
        }
      }
      dip_right = std::max(dip_right, worst);
    }
    dip = std::max({dip, dip_left, dip_right});

    if (low == gcm[ig] && high == lcm[ih]) break;
    low = gcm[ig];
    high = lcm[ih];
  }
  return dip / (2.0 * static_cast<double>(n));
}

std::optional<double> bimodality_coefficient(std::span<const double> sample) {
  const auto n = static_cast<double>(sample.size());
  if (sample.size() < 4) return std::nullopt;
  double mean = 0.0;
  for (double v : sample) mean += v;
  mean /= n;
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double v : sample) {
    const double d = v - mean;
    m2 += d * d;
    m3 += d * d * d;
    m4 += d * d * d * d;
  }
  m2 /= n;
  m3 /= n;
  m4 /= n;
  if (m2 <= 0.0) return std::nullopt;
  const double g1 = std::sqrt(n * (n - 1.0)) / (n - 2.0) * m3 / std::pow(m2, 1.5);
  const double g2 = (n - 1.0) / ((n - 2.0) * (n - 3.0)) * ((n + 1.0) * (m4 / (m2 * m2) - 3.0) + 6.0);
  return (g1 * g1 + 1.0) / (g2 + 3.0 * (n - 1.0) * (n - 1.0) / ((n - 2.0) * (n - 3.0)));
}

}  // namespace econet
