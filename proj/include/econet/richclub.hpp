#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "econet/graph.hpp"
#include "econet/netmetrics.hpp"

namespace econet {

enum class RichClubMode { degree, strength, rank };

std::string_view to_string(RichClubMode mode);
/// Accepts "degree", "strength" or "rank".
RichClubMode parse_rich_club_mode(std::string_view text);

/// Strength ranks 1..n, ascending (rank n is the strongest node); equal
/// strengths are ordered by node index.
std::vector<std::size_t> strength_ranks(const WeightedGraph& graph);

/// Per-node value compared against the threshold: degree, strength or
/// strength rank.
std::vector<double> club_attribute(const WeightedGraph& graph, RichClubMode mode);

/// Density of the binary subgraph induced by the nodes whose attribute
/// exceeds `threshold`; nullopt when fewer than two nodes qualify.
std::optional<double> phi(const WeightedGraph& graph, RichClubMode mode, double threshold);

/// Thresholds at which the club changes: 0 and every distinct attribute
/// value for degree and strength, 1..n for rank.
std::vector<double> club_thresholds(const WeightedGraph& graph, RichClubMode mode);

struct RichClubPoint {
  double threshold = 0.0;
  std::size_t club_size = 0;
  std::optional<double> phi;
  std::optional<double> phi_null_mean;
  std::optional<double> phi_norm;
};

struct RichClubCurve {
  RichClubMode mode = RichClubMode::rank;
  std::vector<RichClubPoint> points;
  std::optional<double> regime_start;
};

/// phi at every threshold of `graph`, together with its mean over the
/// ensemble instances where it is defined. Each instance is evaluated on
/// its own attribute (its own strengths and strength ranks) at the
/// original thresholds. The regime is detected with q = 0.9.
RichClubCurve normalized_curve(const WeightedGraph& graph, RichClubMode mode, const NullEnsemble& ensemble,
                               unsigned workers = 1);

/// Smallest threshold t with phi_norm(t) > 1 such that phi_norm > 1 on at
/// least a fraction q of the points at or above t where phi_norm is
/// defined. Values within 1e-9 of 1 count as not above 1.
std::optional<double> detect_regime(const RichClubCurve& curve, double q = 0.9);

struct CoreMembership {
  std::vector<std::size_t> rank;
  std::vector<bool> in_core;
  std::size_t cut = 0;

  std::size_t core_size() const;
};

/// Nodes with strength rank above `cut` form the core.
CoreMembership core_periphery_split(const WeightedGraph& graph, std::size_t cut);

/// Rank cut for a detected regime. Rank thresholds are used as they are;
/// a strength threshold s becomes the number of nodes with strength <= s.
/// Throws ValidationError when no regime was found or the mode is degree.
std::size_t regime_cut(const WeightedGraph& graph, const RichClubCurve& curve);

struct CategoryBalance {
  std::string category;
  std::size_t core = 0;
  std::size_t periphery = 0;
};

/// Node counts per category inside and outside the core, by category name.
std::vector<CategoryBalance> category_balance(const WeightedGraph& graph, const CoreMembership& membership);

/// CSV `threshold,phi,phi_null_mean,phi_norm,club_size`; undefined values
/// are empty fields.
void write_curve(const RichClubCurve& curve, const std::filesystem::path& path);
/// CSV `node_id,rank,in_core`.
void write_membership(const WeightedGraph& graph, const CoreMembership& membership,
                      const std::filesystem::path& path);

}  // namespace econet
