#include "econet/simnet.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "econet/error.hpp"
#include "econet/parallel.hpp"
#include "econet/rng.hpp"

namespace econet {
namespace {

// Ascending-index dot product over the nonzero entries of `sparse_idx`.
// Adding zero products never changes a non-negative partial sum, so this
// equals the dense ascending sum bit-for-bit whichever side is iterated.
double sparse_dot(std::span<const std::uint32_t> idx, std::span<const double> vals,
                  std::span<const double> dense) {
  double s = 0.0;
  for (std::size_t k = 0; k < idx.size(); ++k) s += vals[k] * dense[idx[k]];
  return s;
}

struct SparseRows {
  std::vector<std::vector<std::uint32_t>> idx;
  std::vector<std::vector<double>> vals;

  explicit SparseRows(const Matrix<double>& m) : idx(m.rows()), vals(m.rows()) {
    for (std::size_t r = 0; r < m.rows(); ++r) fill(r, m.row(r));
  }
  void fill(std::size_t r, std::span<const double> row) {
    idx[r].clear();
    vals[r].clear();
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (row[c] != 0.0) {
        idx[r].push_back(static_cast<std::uint32_t>(c));
        vals[r].push_back(row[c]);
      }
    }
  }
};

double pair_dot(const SparseRows& s, const Matrix<double>& dense, std::size_t i, std::size_t j) {
  if (s.idx[j].size() < s.idx[i].size()) std::swap(i, j);
  return sparse_dot(s.idx[i], s.vals[i], dense.row(j));
}

void shuffle_into(const Matrix<double>& rows, Rng& rng, Matrix<double>& out) {
  for (std::size_t r = 0; r < rows.rows(); ++r) {
    auto dst = out.row(r);
    std::copy(rows.row(r).begin(), rows.row(r).end(), dst.begin());
    rng.shuffle(dst);
  }
}

void check_rows(const Matrix<double>& rows) {
  if (rows.rows() < 2) throw ValidationError("need at least 2 documents");
  for (std::size_t r = 0; r < rows.rows(); ++r) {
    bool nonzero = false;
    for (double v : rows.row(r)) {
      if (v < 0.0 || !std::isfinite(v)) throw ValidationError("frequency rows must be finite and non-negative");
      nonzero = nonzero || v > 0.0;
    }
    if (!nonzero) throw ValidationError("row " + std::to_string(r) + " is all zero");
  }
}

}  // namespace

double cosine(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ValidationError("cosine: dimension mismatch");
  double dot = 0.0, xx = 0.0, yy = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    dot += x[k] * y[k];
    xx += x[k] * x[k];
    yy += y[k] * y[k];
  }
  if (xx == 0.0 || yy == 0.0) throw ValidationError("cosine: zero vector");
  return std::clamp(dot / (std::sqrt(xx) * std::sqrt(yy)), 0.0, 1.0);
}

Matrix<double> frequency_rows(const DocTermMatrix& matrix, FrequencyInput input) {
  if (input == FrequencyInput::relative) return matrix.rel;
  Matrix<double> out(matrix.abs.rows(), matrix.abs.cols());
  for (std::size_t r = 0; r < out.rows(); ++r) {
    for (std::size_t c = 0; c < out.cols(); ++c) out(r, c) = matrix.abs(r, c);
  }
  return out;
}

SimilarityMatrix similarity_matrix(const Matrix<double>& rows) {
  check_rows(rows);
  const std::size_t n = rows.rows();
  SimilarityMatrix s{Matrix<double>(n, n, 0.0)};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) s.w(i, j) = s.w(j, i) = cosine(rows.row(i), rows.row(j));
  }
  return s;
}

PValueMatrix::PValueMatrix(std::size_t n, std::size_t permutations, std::uint64_t seed,
                           std::vector<std::uint32_t> exceedances)
    : n_(n), permutations_(permutations), seed_(seed), counts_(std::move(exceedances)) {
  if (counts_.size() != n * (n - (n > 0)) / 2) throw Error("PValueMatrix: packed size mismatch");
}

std::uint32_t PValueMatrix::exceedances(std::size_t i, std::size_t j) const {
  if (i == j) return static_cast<std::uint32_t>(permutations_);
  if (i > j) std::swap(i, j);
  return counts_[pair_index(n_, i, j)];
}

double PValueMatrix::p(std::size_t i, std::size_t j, bool smoothed) const {
  const double c = exceedances(i, j);
  const double total = static_cast<double>(permutations_);
  return smoothed ? (c + 1.0) / (total + 1.0) : c / total;
}

Matrix<double> shuffled_instance(const Matrix<double>& rows, std::uint64_t seed, std::size_t instance) {
  Rng rng(stream_seed(seed, instance));
  Matrix<double> out(rows.rows(), rows.cols());
  shuffle_into(rows, rng, out);
  return out;
}

PValueMatrix permutation_pvalues(const Matrix<double>& rows, const PermutationOptions& options) {
  check_rows(rows);
  if (options.permutations == 0) throw ValidationError("permutations must be >= 1");
  const std::size_t n = rows.rows();
  const std::size_t pairs = n * (n - 1) / 2;

  const SparseRows observed_sparse(rows);
  std::vector<double> observed(pairs);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) observed[pair_index(n, i, j)] = pair_dot(observed_sparse, rows, i, j);
  }

  const unsigned workers = options.workers == 0 ? default_workers() : options.workers;
  struct Scratch {
    std::vector<std::uint32_t> counts;
    Matrix<double> shuffled;
    std::optional<SparseRows> sparse;
  };
  std::vector<Scratch> scratch(workers);
  for (auto& s : scratch) {
    s.counts.assign(pairs, 0);
    s.shuffled = Matrix<double>(n, rows.cols());
  }

  parallel_for(options.permutations, workers, [&](unsigned w, std::size_t t) {
    Scratch& s = scratch[w];
    Rng rng(stream_seed(options.seed, t));
    shuffle_into(rows, rng, s.shuffled);
    if (!s.sparse) {
      s.sparse.emplace(s.shuffled);
    } else {
      for (std::size_t r = 0; r < n; ++r) s.sparse->fill(r, s.shuffled.row(r));
    }
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t base = pair_index(n, i, i + 1);
      for (std::size_t j = i + 1; j < n; ++j) {
        if (pair_dot(*s.sparse, s.shuffled, i, j) >= observed[base + (j - i - 1)]) ++s.counts[base + (j - i - 1)];
      }
    }
  });

  std::vector<std::uint32_t> total(pairs, 0);
  for (const auto& s : scratch) {
    for (std::size_t k = 0; k < pairs; ++k) total[k] += s.counts[k];
  }
  return PValueMatrix(n, options.permutations, options.seed, std::move(total));
}

double bonferroni_threshold(double alpha, std::size_t n) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ValidationError("alpha must lie in (0, 1)");
  if (n < 2) throw ValidationError("Bonferroni threshold needs n >= 2");
  const double comparisons = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
  return alpha / comparisons;
}

WeightedGraph filter_network(const SimilarityMatrix& w, const PValueMatrix& p, const FilterOptions& options,
                             std::vector<NodeAttributes> nodes) {
  const std::size_t n = w.size();
  if (p.size() != n || nodes.size() != n) throw ValidationError("filter_network: size mismatch");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (w(i, j) > 0.0 && p.p(i, j, options.smoothed_pvalues) < options.threshold) {
        edges.push_back({i, j, w(i, j)});
      }
    }
  }
  return WeightedGraph(std::move(nodes), std::move(edges));
}

std::vector<std::vector<std::size_t>> connected_components(const WeightedGraph& graph) {
  const std::size_t n = graph.node_count();
  std::vector<bool> seen(n, false);
  std::vector<std::vector<std::size_t>> components;
  std::vector<std::size_t> stack;
  for (std::size_t start = 0; start < n; ++start) {
    if (seen[start]) continue;
    std::vector<std::size_t> members;
    seen[start] = true;
    stack.push_back(start);
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      members.push_back(u);
      for (const auto& nb : graph.neighbors(u)) {
        if (!seen[nb.node]) {
          seen[nb.node] = true;
          stack.push_back(nb.node);
        }
      }
    }
    std::sort(members.begin(), members.end());
    components.push_back(std::move(members));
  }
  return components;
}

WeightedGraph largest_component(const WeightedGraph& graph) {
  if (graph.node_count() == 0) throw ValidationError("largest_component: empty graph");
  const auto components = connected_components(graph);
  // Components are ordered by smallest member, so the first maximum wins ties.
  const auto best = std::max_element(components.begin(), components.end(),
                                     [](const auto& a, const auto& b) { return a.size() < b.size(); });
  if (best->size() == graph.node_count()) return graph;
  return graph.induced(*best);
}

double density(const WeightedGraph& graph) {
  const double n = static_cast<double>(graph.node_count());
  if (graph.node_count() < 2) throw ValidationError("density needs n >= 2");
  return 2.0 * static_cast<double>(graph.edge_count()) / (n * (n - 1.0));
}

std::vector<NodeAttributes> node_attributes(const DocTermMatrix& matrix, const Corpus& corpus) {
  std::vector<NodeAttributes> nodes;
  nodes.reserve(matrix.rows());
  for (const auto& id : matrix.doc_ids) {
    const Document* doc = corpus.find(id);
    if (!doc) throw ValidationError("document '" + id + "' is in the matrix but not in the corpus");
    nodes.push_back({doc->id, format_date(doc->date), doc->speaker, doc->category});
  }
  return nodes;
}

NetworkBuild build_network(const DocTermMatrix& matrix, std::vector<NodeAttributes> nodes,
                           const NetworkOptions& options) {
  const Matrix<double> rows = frequency_rows(matrix, options.input);
  NetworkBuild b;
  b.similarity = similarity_matrix(rows);
  b.pvalues = permutation_pvalues(rows, options.permutation);
  if (options.bonferroni) {
    b.threshold = bonferroni_threshold(options.alpha, matrix.rows());
  } else {
    if (!(options.alpha > 0.0 && options.alpha < 1.0)) throw ValidationError("alpha must lie in (0, 1)");
    b.threshold = options.alpha;
  }
  b.filtered = filter_network(b.similarity, b.pvalues, {b.threshold, options.smoothed_pvalues}, std::move(nodes));
  b.component = largest_component(b.filtered);
  return b;
}

}  // namespace econet
