#include "econet/richclub.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>

#include "econet/csv.hpp"
#include "econet/error.hpp"
#include "econet/parallel.hpp"

namespace econet {
namespace {

struct ClubScan {
  std::vector<std::size_t> size;
  std::vector<std::optional<double>> phi;
};

// phi at every threshold (ascending) by adding nodes in decreasing order of
// attribute and counting the edges each one closes with the club so far.
ClubScan scan(const WeightedGraph& g, const std::vector<double>& attr, const std::vector<double>& thresholds) {
  std::vector<std::size_t> order(g.node_count());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return attr[a] > attr[b]; });
  std::vector<bool> in_club(g.node_count(), false);
  ClubScan s{std::vector<std::size_t>(thresholds.size()), std::vector<std::optional<double>>(thresholds.size())};
  std::size_t pos = 0, edges = 0;
  for (std::size_t t = thresholds.size(); t-- > 0;) {
    while (pos < order.size() && attr[order[pos]] > thresholds[t]) {
      const std::size_t v = order[pos++];
      for (const auto& nb : g.neighbors(v)) edges += in_club[nb.node] ? 1 : 0;
      in_club[v] = true;
    }
    s.size[t] = pos;
    if (pos >= 2) s.phi[t] = 2.0 * static_cast<double>(edges) / (static_cast<double>(pos) * static_cast<double>(pos - 1));
  }
  return s;
}

std::string optional_field(const std::optional<double>& v) { return v ? csv::format_double(*v) : std::string(); }

}  // namespace

std::string_view to_string(RichClubMode mode) {
  switch (mode) {
    case RichClubMode::degree:
      return "degree";
    case RichClubMode::strength:
      return "strength";
    case RichClubMode::rank:
      return "rank";
  }
  return "rank";
}

RichClubMode parse_rich_club_mode(std::string_view text) {
  if (text == "degree") return RichClubMode::degree;
  if (text == "strength") return RichClubMode::strength;
  if (text == "rank") return RichClubMode::rank;
  throw ValidationError("unknown rich-club mode '" + std::string(text) + "' (degree, strength, rank)");
}

std::vector<std::size_t> strength_ranks(const WeightedGraph& graph) {
  std::vector<std::size_t> order(graph.node_count());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return graph.strength(a) < graph.strength(b); });
  std::vector<std::size_t> rank(graph.node_count());
  for (std::size_t r = 0; r < order.size(); ++r) rank[order[r]] = r + 1;
  return rank;
}

std::vector<double> club_attribute(const WeightedGraph& graph, RichClubMode mode) {
  std::vector<double> out(graph.node_count());
  if (mode == RichClubMode::rank) {
    const auto ranks = strength_ranks(graph);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<double>(ranks[i]);
  } else {
    for (std::size_t i = 0; i < out.size(); ++i) {
      out[i] = mode == RichClubMode::degree ? static_cast<double>(graph.degree(i)) : graph.strength(i);
    }
  }
  return out;
}

std::optional<double> phi(const WeightedGraph& graph, RichClubMode mode, double threshold) {
  if (graph.node_count() == 0) throw ValidationError("rich club of an empty graph");
  return scan(graph, club_attribute(graph, mode), {threshold}).phi[0];
}

std::vector<double> club_thresholds(const WeightedGraph& graph, RichClubMode mode) {
  std::vector<double> t;
  if (mode == RichClubMode::rank) {
    for (std::size_t p = 1; p <= graph.node_count(); ++p) t.push_back(static_cast<double>(p));
    return t;
  }
  t = club_attribute(graph, mode);
  t.push_back(0.0);
  std::sort(t.begin(), t.end());
  t.erase(std::unique(t.begin(), t.end()), t.end());
  return t;
}

RichClubCurve normalized_curve(const WeightedGraph& graph, RichClubMode mode, const NullEnsemble& ensemble,
                               unsigned workers) {
  if (graph.node_count() == 0) throw ValidationError("rich club of an empty graph");
  const auto thresholds = club_thresholds(graph, mode);
  const ClubScan actual = scan(graph, club_attribute(graph, mode), thresholds);

  std::vector<std::vector<std::optional<double>>> null_phi(ensemble.size());
  parallel_for(ensemble.size(), workers, [&](unsigned, std::size_t t) {
    const WeightedGraph inst = ensemble.instance(t);
    null_phi[t] = scan(inst, club_attribute(inst, mode), thresholds).phi;
  });

  RichClubCurve curve;
  curve.mode = mode;
  for (std::size_t k = 0; k < thresholds.size(); ++k) {
    RichClubPoint p;
    p.threshold = thresholds[k];
    p.club_size = actual.size[k];
    p.phi = actual.phi[k];
    double sum = 0.0;
    std::size_t defined = 0;
    for (const auto& inst : null_phi) {
      if (!inst[k]) continue;
      sum += *inst[k];
      ++defined;
    }
    if (defined > 0) p.phi_null_mean = sum / static_cast<double>(defined);
    if (p.phi && p.phi_null_mean && *p.phi_null_mean > 0.0) p.phi_norm = *p.phi / *p.phi_null_mean;
    curve.points.push_back(p);
  }
  curve.regime_start = detect_regime(curve);
  return curve;
}

std::optional<double> detect_regime(const RichClubCurve& curve, double q) {
  if (curve.points.empty()) throw ValidationError("empty rich-club curve");
  std::vector<double> norm;
  std::vector<double> at;
  for (const auto& p : curve.points) {
    if (!p.phi_norm) continue;
    norm.push_back(*p.phi_norm);
    at.push_back(p.threshold);
  }
  // Values within rounding of 1 (e.g. a constant-weight graph) do not count.
  constexpr double one = 1.0 + 1e-9;
  std::vector<std::size_t> above(norm.size() + 1, 0);
  for (std::size_t k = norm.size(); k-- > 0;) above[k] = above[k + 1] + (norm[k] > one ? 1 : 0);
  for (std::size_t k = 0; k < norm.size(); ++k) {
    if (norm[k] <= one) continue;
    if (static_cast<double>(above[k]) >= q * static_cast<double>(norm.size() - k)) return at[k];
  }
  return std::nullopt;
}

std::size_t CoreMembership::core_size() const {
  return static_cast<std::size_t>(std::count(in_core.begin(), in_core.end(), true));
}

CoreMembership core_periphery_split(const WeightedGraph& graph, std::size_t cut) {
  CoreMembership m;
  m.cut = cut;
  m.rank = strength_ranks(graph);
  m.in_core.resize(graph.node_count());
  for (std::size_t i = 0; i < graph.node_count(); ++i) m.in_core[i] = m.rank[i] > cut;
  return m;
}

std::size_t regime_cut(const WeightedGraph& graph, const RichClubCurve& curve) {
  if (!curve.regime_start) {
    throw ValidationError("no rich-club regime detected in " + std::string(to_string(curve.mode)) +
                          " mode; try another --mode or pass --club-cut");
  }
  const double t = *curve.regime_start;
  switch (curve.mode) {
    case RichClubMode::rank:
      return static_cast<std::size_t>(t);
    case RichClubMode::strength: {
      std::size_t below = 0;
      for (std::size_t i = 0; i < graph.node_count(); ++i) below += graph.strength(i) <= t ? 1 : 0;
      return below;
    }
    case RichClubMode::degree:
      break;
  }
  throw ValidationError("a degree threshold does not define a strength-rank cut; use --mode rank or --club-cut");
}

std::vector<CategoryBalance> category_balance(const WeightedGraph& graph, const CoreMembership& membership) {
  std::map<std::string, CategoryBalance> by;
  for (std::size_t i = 0; i < graph.node_count(); ++i) {
    auto& b = by[graph.nodes()[i].category];
    b.category = graph.nodes()[i].category;
    (membership.in_core[i] ? b.core : b.periphery) += 1;
  }
  std::vector<CategoryBalance> out;
  for (auto& [k, v] : by) out.push_back(v);
  return out;
}

void write_curve(const RichClubCurve& curve, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  csv::write_row(out, {"threshold", "phi", "phi_null_mean", "phi_norm", "club_size"});
  for (const auto& p : curve.points) {
    csv::write_row(out, {csv::format_double(p.threshold), optional_field(p.phi), optional_field(p.phi_null_mean),
                         optional_field(p.phi_norm), std::to_string(p.club_size)});
  }
}

void write_membership(const WeightedGraph& graph, const CoreMembership& membership,
                      const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  csv::write_row(out, {"node_id", "rank", "in_core"});
  for (std::size_t i = 0; i < graph.node_count(); ++i) {
    csv::write_row(out, {graph.nodes()[i].id, std::to_string(membership.rank[i]), membership.in_core[i] ? "1" : "0"});
  }
}

}  // namespace econet
