#include "econet/community.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>
#include <unordered_map>

#include "econet/csv.hpp"
#include "econet/error.hpp"
#include "econet/rng.hpp"

namespace econet {
namespace {

// Graph used by the local-moving phase. Aggregated nodes carry the weight
// of their internal edges as a self-loop counted twice.
struct LevelGraph {
  std::vector<std::vector<std::pair<std::size_t, double>>> adj;
  std::vector<double> loop;
  std::vector<double> degree;
  double two_m = 0.0;

  std::size_t size() const { return adj.size(); }
};

LevelGraph level_from(const WeightedGraph& g, bool weighted) {
  LevelGraph L;
  const std::size_t n = g.node_count();
  L.adj.resize(n);
  L.loop.assign(n, 0.0);
  L.degree.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& nb : g.neighbors(i)) {
      const double w = weighted ? nb.weight : 1.0;
      L.adj[i].emplace_back(nb.node, w);
      L.degree[i] += w;
    }
    L.two_m += L.degree[i];
  }
  return L;
}

LevelGraph aggregate(const LevelGraph& base, const std::vector<std::size_t>& comm, std::size_t count) {
  std::vector<std::map<std::size_t, double>> acc(count);
  LevelGraph L;
  L.loop.assign(count, 0.0);
  L.degree.assign(count, 0.0);
  for (std::size_t u = 0; u < base.size(); ++u) {
    const std::size_t cu = comm[u];
    L.loop[cu] += base.loop[u];
    L.degree[cu] += base.degree[u];
    for (const auto& [v, w] : base.adj[u]) {
      if (v < u) continue;
      const std::size_t cv = comm[v];
      if (cu == cv) {
        L.loop[cu] += 2.0 * w;
      } else {
        acc[cu][cv] += w;
        acc[cv][cu] += w;
      }
    }
  }
  L.adj.resize(count);
  for (std::size_t c = 0; c < count; ++c) L.adj[c].assign(acc[c].begin(), acc[c].end());
  L.two_m = base.two_m;
  return L;
}

std::size_t relabel_dense(std::vector<std::size_t>& labels) {
  std::unordered_map<std::size_t, std::size_t> ids;
  for (auto& l : labels) l = ids.emplace(l, ids.size()).first->second;
  return ids.size();
}

double move_tolerance(double k) { return 1e-12 * (1.0 + k); }

// State for evaluating single-node moves: community totals plus the weight
// from the current node to each touched community.
class MoveScorer {
 public:
  MoveScorer(const LevelGraph& g, const std::vector<std::size_t>& comm)
      : g_(g), tot_(g.size(), 0.0), size_(g.size(), 0), link_(g.size(), 0.0) {
    for (std::size_t i = 0; i < g.size(); ++i) {
      tot_[comm[i]] += g.degree[i];
      ++size_[comm[i]];
    }
  }

  // Takes node i out of community `own` and collects its links.
  void lift(std::size_t i, std::size_t own, const std::vector<std::size_t>& comm) {
    touched_.clear();
    for (const auto& [j, w] : g_.adj[i]) {
      const std::size_t c = comm[j];
      if (link_[c] == 0.0) touched_.push_back(c);
      link_[c] += w;
    }
    tot_[own] -= g_.degree[i];
    if (--size_[own] == 0) tot_[own] = 0.0;
  }

  void place(std::size_t i, std::size_t c) {
    tot_[c] += g_.degree[i];
    ++size_[c];
    for (std::size_t t : touched_) link_[t] = 0.0;
  }

  double gain(std::size_t i, std::size_t c) const {
    return link_[c] - tot_[c] * g_.degree[i] / g_.two_m;
  }

  const std::vector<std::size_t>& touched() const { return touched_; }
  std::size_t members(std::size_t c) const { return size_[c]; }

 private:
  const LevelGraph& g_;
  std::vector<double> tot_;
  std::vector<std::size_t> size_;
  std::vector<double> link_;
  std::vector<std::size_t> touched_;
};

// Sweeps single-node moves in random order until a sweep moves nothing.
// Returns whether any node moved. Community ids stay below g.size().
bool local_moves(const LevelGraph& g, std::vector<std::size_t>& comm, Rng& rng) {
  const std::size_t n = g.size();
  MoveScorer scorer(g, comm);
  std::vector<std::size_t> empty;
  for (std::size_t c = n; c-- > 0;) {
    if (scorer.members(c) == 0) empty.push_back(c);
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  bool any = false;
  for (bool moved = true; moved;) {
    moved = false;
    rng.shuffle(std::span<std::size_t>(order));
    for (std::size_t i : order) {
      const std::size_t own = comm[i];
      scorer.lift(i, own, comm);
      const double eps = move_tolerance(g.degree[i]);
      std::size_t best = own;
      double best_gain = scorer.gain(i, own);
      for (std::size_t c : scorer.touched()) {
        const double gc = scorer.gain(i, c);
        if (gc > best_gain + eps) {
          best = c;
          best_gain = gc;
        }
      }
      if (best_gain < -eps && !empty.empty()) {
        best = empty.back();
        empty.pop_back();
      }
      if (best != own) {
        if (scorer.members(own) == 0) empty.push_back(own);
        moved = any = true;
      }
      scorer.place(i, best);
      comm[i] = best;
    }
  }
  return any;
}

struct Pick {
  double dq = 0.0;
  std::size_t other = 0;
  bool valid = false;
};

bool better(double dq, std::size_t j, const Pick& p) {
  return !p.valid || dq > p.dq || (dq == p.dq && j < p.other);
}

std::uint64_t choose2(std::uint64_t x) { return x * (x - (x > 0 ? 1 : 0)) / 2; }

}  // namespace

std::size_t Partition::community_count() const {
  return community.empty() ? 0 : *std::max_element(community.begin(), community.end()) + 1;
}

Partition make_partition(const WeightedGraph& graph, std::string method,
                         std::span<const std::size_t> labels) {
  if (labels.size() != graph.node_count()) throw ValidationError("partition does not cover the graph");
  Partition p;
  p.method = std::move(method);
  for (const auto& n : graph.nodes()) p.nodes.push_back(n.id);
  p.community.assign(labels.begin(), labels.end());
  relabel_dense(p.community);
  return p;
}

void validate_partition(const Partition& partition, const WeightedGraph& graph) {
  const std::string what = "partition '" + partition.method + "'";
  if (partition.nodes.size() != graph.node_count() || partition.community.size() != graph.node_count()) {
    throw ValidationError(what + " does not cover the graph");
  }
  for (std::size_t i = 0; i < graph.node_count(); ++i) {
    if (partition.nodes[i] != graph.nodes()[i].id) {
      throw ValidationError(what + ": node " + std::to_string(i) + " is '" + partition.nodes[i] +
                            "', expected '" + graph.nodes()[i].id + "'");
    }
  }
  std::size_t next = 0;
  for (std::size_t c : partition.community) {
    if (c > next) throw ValidationError(what + ": community ids are not dense");
    if (c == next) ++next;
  }
}

double modularity(const WeightedGraph& graph, const Partition& partition, bool weighted) {
  validate_partition(partition, graph);
  const std::size_t k = partition.community_count();
  std::vector<double> inner(k, 0.0), tot(k, 0.0);
  double two_m = 0.0;
  for (const auto& e : graph.edges()) {
    const double w = weighted ? e.weight : 1.0;
    two_m += 2.0 * w;
    tot[partition.community[e.u]] += w;
    tot[partition.community[e.v]] += w;
    if (partition.community[e.u] == partition.community[e.v]) inner[partition.community[e.u]] += 2.0 * w;
  }
  if (two_m == 0.0) return 0.0;
  double q = 0.0;
  for (std::size_t c = 0; c < k; ++c) q += inner[c] / two_m - (tot[c] / two_m) * (tot[c] / two_m);
  return q;
}

double best_single_move_gain(const WeightedGraph& graph, const Partition& partition, bool weighted) {
  validate_partition(partition, graph);
  const LevelGraph g = level_from(graph, weighted);
  if (g.two_m == 0.0) return 0.0;
  std::vector<std::size_t> comm = partition.community;
  MoveScorer scorer(g, comm);
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < g.size(); ++i) {
    const std::size_t own = comm[i];
    scorer.lift(i, own, comm);
    const double stay = scorer.gain(i, own);
    double alt = scorer.members(own) > 0 ? 0.0 : stay;  // a community of its own
    for (std::size_t c : scorer.touched()) {
      if (c != own) alt = std::max(alt, scorer.gain(i, c));
    }
    best = std::max(best, alt - stay);
    scorer.place(i, own);
  }
  return best;
}

Partition louvain(const WeightedGraph& graph, std::uint64_t seed, bool weighted) {
  const LevelGraph base = level_from(graph, weighted);
  const std::size_t n = base.size();
  std::vector<std::size_t> assign(n);
  std::iota(assign.begin(), assign.end(), 0);
  if (base.two_m == 0.0) return make_partition(graph, "louvain", assign);

  Rng rng(seed);
  for (bool first = true;; first = false) {
    if (!local_moves(base, assign, rng) && !first) break;
    std::size_t count = relabel_dense(assign);
    for (;;) {
      const LevelGraph level = aggregate(base, assign, count);
      std::vector<std::size_t> merged(count);
      std::iota(merged.begin(), merged.end(), 0);
      if (!local_moves(level, merged, rng)) break;
      for (auto& a : assign) a = merged[a];
      count = relabel_dense(assign);
    }
  }
  return make_partition(graph, "louvain", assign);
}

Partition label_propagation(const WeightedGraph& graph, std::uint64_t seed, bool weighted,
                            std::size_t max_sweeps) {
  const std::size_t n = graph.node_count();
  std::vector<std::size_t> labels(n), order(n);
  std::iota(labels.begin(), labels.end(), 0);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> score(n, 0.0);
  std::vector<std::size_t> touched, candidates;
  Rng rng(seed);
  for (std::size_t sweep = 0; sweep < max_sweeps; ++sweep) {
    rng.shuffle(std::span<std::size_t>(order));
    bool changed = false;
    for (std::size_t i : order) {
      if (graph.degree(i) == 0) continue;
      touched.clear();
      double top = 0.0;
      for (const auto& nb : graph.neighbors(i)) {
        const std::size_t l = labels[nb.node];
        if (score[l] == 0.0) touched.push_back(l);
        score[l] += weighted ? nb.weight : 1.0;
        top = std::max(top, score[l]);
      }
      const double floor = top * (1.0 - 1e-12);
      if (score[labels[i]] < floor) {
        candidates.clear();
        for (std::size_t l : touched) {
          if (score[l] >= floor) candidates.push_back(l);
        }
        std::sort(candidates.begin(), candidates.end());
        labels[i] = candidates[rng.below(candidates.size())];
        changed = true;
      }
      for (std::size_t l : touched) score[l] = 0.0;
    }
    if (!changed) break;
  }
  return make_partition(graph, "lp", labels);
}

Partition greedy_modularity(const WeightedGraph& graph, bool weighted) {
  const std::size_t n = graph.node_count();
  std::vector<std::map<std::size_t, double>> link(n);
  std::vector<double> a(n, 0.0);
  double two_m = 0.0;
  for (const auto& e : graph.edges()) {
    const double w = weighted ? e.weight : 1.0;
    link[e.u][e.v] += w;
    link[e.v][e.u] += w;
    a[e.u] += w;
    a[e.v] += w;
    two_m += 2.0 * w;
  }
  std::vector<std::size_t> owner(n);
  std::iota(owner.begin(), owner.end(), 0);
  if (two_m == 0.0) return make_partition(graph, "greedy", owner);
  for (double& x : a) x /= two_m;

  auto dq = [&](std::size_t i, std::size_t j) { return 2.0 * (link[i].at(j) / two_m - a[i] * a[j]); };
  std::vector<Pick> best(n);
  auto rescan = [&](std::size_t i) {
    best[i] = Pick{};
    for (const auto& [j, w] : link[i]) {
      const double d = dq(i, j);
      if (better(d, j, best[i])) best[i] = {d, j, true};
    }
  };
  for (std::size_t i = 0; i < n; ++i) rescan(i);

  std::vector<bool> alive(n, true);
  for (;;) {
    Pick top;
    std::size_t from = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!alive[i] || !best[i].valid) continue;
      const std::size_t lo = std::min(i, best[i].other), hi = std::max(i, best[i].other);
      const std::size_t top_lo = std::min(from, top.other), top_hi = std::max(from, top.other);
      if (!top.valid || best[i].dq > top.dq ||
          (best[i].dq == top.dq && std::pair(lo, hi) < std::pair(top_lo, top_hi))) {
        top = best[i];
        from = i;
      }
    }
    if (!top.valid || top.dq <= 0.0) break;
    const std::size_t keep = std::min(from, top.other), gone = std::max(from, top.other);

    for (const auto& [k, w] : link[gone]) {
      if (k == keep) continue;
      link[keep][k] += w;
      link[k][keep] += w;
      link[k].erase(gone);
    }
    link[keep].erase(gone);
    link[gone].clear();
    a[keep] += a[gone];
    alive[gone] = false;
    best[gone] = Pick{};
    for (auto& o : owner) {
      if (o == gone) o = keep;
    }

    rescan(keep);
    for (const auto& [k, w] : link[keep]) {
      if (best[k].other == keep || best[k].other == gone) {
        rescan(k);
      } else {
        const double d = dq(k, keep);
        if (better(d, keep, best[k])) best[k] = {d, keep, true};
      }
    }
  }
  return make_partition(graph, "greedy", owner);
}

double adjusted_rand_index(const Partition& a, const Partition& b) {
  if (a.nodes != b.nodes) {
    throw ValidationError("partitions '" + a.method + "' and '" + b.method + "' cover different nodes");
  }
  std::map<std::pair<std::size_t, std::size_t>, std::uint64_t> table;
  std::map<std::size_t, std::uint64_t> rows, cols;
  for (std::size_t i = 0; i < a.community.size(); ++i) {
    ++table[{a.community[i], b.community[i]}];
    ++rows[a.community[i]];
    ++cols[b.community[i]];
  }
  double index = 0.0, sum_a = 0.0, sum_b = 0.0;
  for (const auto& [key, c] : table) index += static_cast<double>(choose2(c));
  for (const auto& [key, c] : rows) sum_a += static_cast<double>(choose2(c));
  for (const auto& [key, c] : cols) sum_b += static_cast<double>(choose2(c));
  const auto pairs = static_cast<double>(choose2(a.community.size()));
  if (pairs == 0.0) return 1.0;
  const double expected = sum_a * sum_b / pairs;
  const double maximum = (sum_a + sum_b) / 2.0;
  if (maximum == expected) return 1.0;
  return (index - expected) / (maximum - expected);
}

Matrix<double> ari_matrix(std::span<const Partition> partitions) {
  const std::size_t k = partitions.size();
  Matrix<double> m(k, k, 1.0);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) m(i, j) = m(j, i) = adjusted_rand_index(partitions[i], partitions[j]);
  }
  return m;
}

void write_partition(const Partition& partition, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  csv::write_row(out, {"node_id", "community_id"});
  for (std::size_t i = 0; i < partition.nodes.size(); ++i) {
    csv::write_row(out, {partition.nodes[i], std::to_string(partition.community[i])});
  }
}

Partition read_partition(const WeightedGraph& graph, const std::filesystem::path& path,
                         std::string method) {
  const auto table = csv::read(path);
  const std::string what = path.string();
  csv::require_header(table, {"node_id", "community_id"}, what);
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < graph.node_count(); ++i) index.emplace(graph.nodes()[i].id, i);

  constexpr auto unset = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> labels(graph.node_count(), unset);
  for (const auto& r : table.rows) {
    const auto it = index.find(r[0]);
    if (it == index.end()) throw ValidationError(what + ": unknown node '" + r[0] + "'");
    std::size_t c = 0;
    const auto [end, ec] = std::from_chars(r[1].data(), r[1].data() + r[1].size(), c);
    if (ec != std::errc{} || end != r[1].data() + r[1].size() || c == unset) {
      throw ValidationError(what + ": bad community id '" + r[1] + "'");
    }
    if (labels[it->second] != unset) throw ValidationError(what + ": node '" + r[0] + "' listed twice");
    labels[it->second] = c;
  }
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == unset) throw ValidationError(what + ": node '" + graph.nodes()[i].id + "' missing");
  }
  return make_partition(graph, std::move(method), labels);
}

}  // namespace econet
