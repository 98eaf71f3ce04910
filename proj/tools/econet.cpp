// Command-line front end: glossary -> corpus -> matrix -> network ->
// metrics / communities / rich club -> report. Every stage reads and writes
// files in the --out directory.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "econet/community.hpp"
#include "econet/corpus.hpp"
#include "econet/csv.hpp"
#include "econet/error.hpp"
#include "econet/glossary.hpp"
#include "econet/graph.hpp"
#include "econet/netmetrics.hpp"
#include "econet/report.hpp"
#include "econet/richclub.hpp"
#include "econet/simnet.hpp"
#include "econet/termmatrix.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace econet;

namespace {

struct Paths {
  fs::path out = ".";

  fs::path glossary() const { return out / "glossary.json"; }
  fs::path corpus() const { return out / "corpus.json"; }
  fs::path matrix() const { return out / "matrix.csv"; }
  fs::path edges() const { return out / "edges.csv"; }
  fs::path nodes() const { return out / "nodes.csv"; }
  fs::path membership() const { return out / "richclub_membership.csv"; }
};

void write_json(const json& doc, const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << doc.dump(2) << '\n';
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::string show(const std::optional<double>& v) {
  if (!v) return "undefined";
  std::ostringstream s;
  s << *v;
  return s.str();
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  for (std::string item; std::getline(in, item, ',');) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

WeightedGraph load_network(const Paths& paths) { return read_graph(paths.edges(), paths.nodes()); }

// --- glossary build -------------------------------------------------------

struct GlossaryArgs {
  std::vector<std::string> sources;
};

void run_glossary(const GlossaryArgs& args, const Paths& paths) {
  std::vector<std::vector<RawEntry>> raw;
  for (const auto& s : args.sources) raw.push_back(read_glossary_source(s));
  const Glossary g = merge_sources(raw);
  std::size_t variants = 0;
  for (const auto& l : g.locutions()) variants += l.variants.size();
  save_glossary(g, paths.glossary());
  std::cout << "glossary: " << g.size() << " locutions, " << variants << " variants, longest " << g.max_length()
            << " tokens -> " << paths.glossary().string() << '\n';
}

// --- ingest ---------------------------------------------------------------

struct IngestArgs {
  std::string corpus_dir;
  std::string metadata;
  std::string cut_marker;
};

void run_ingest(const IngestArgs& args, const Paths& paths) {
  std::optional<std::string> marker;
  if (!args.cut_marker.empty()) marker = args.cut_marker;
  const Corpus c = ingest(args.corpus_dir, read_metadata(args.metadata), marker);
  save_corpus(c, paths.corpus());
  std::cout << "corpus: " << c.documents.size() << " documents (" << c.empty_documents.size()
            << " empty) -> " << paths.corpus().string() << '\n';
}

// --- matrix ---------------------------------------------------------------

struct MatrixArgs {
  unsigned workers = 1;
};

void run_matrix(const MatrixArgs& args, const Paths& paths) {
  const Corpus corpus = load_corpus(paths.corpus());
  const Glossary glossary = load_glossary(paths.glossary());
  const MatrixBuild build = build_matrix(corpus, glossary, args.workers);
  save_matrix(build, paths.matrix());
  std::cout << "matrix: " << build.matrix.rows() << " documents x " << build.matrix.cols() << " terms, "
            << build.removed_docs.size() << " documents without glossary terms removed -> "
            << paths.matrix().string() << '\n';
}

// --- network --------------------------------------------------------------

struct NetworkArgs {
  double alpha = 0.001;
  std::size_t permutations = 1000;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  bool no_bonferroni = false;
  bool smoothing = false;
  std::string input = "absolute";
  std::size_t bins = 50;
};

void run_network(const NetworkArgs& args, const Paths& paths) {
  const Corpus corpus = load_corpus(paths.corpus());
  const MatrixBuild mb = load_matrix(paths.matrix());
  NetworkOptions opt;
  opt.alpha = args.alpha;
  opt.bonferroni = !args.no_bonferroni;
  opt.smoothed_pvalues = args.smoothing;
  opt.input = args.input == "relative" ? FrequencyInput::relative : FrequencyInput::absolute;
  opt.permutation = {args.permutations, args.seed, args.workers};
  const NetworkBuild nb = build_network(mb.matrix, node_attributes(mb.matrix, corpus), opt);

  write_edges(nb.component, paths.edges());
  write_nodes(nb.component, paths.nodes());

  const std::size_t n = nb.similarity.size();
  std::vector<double> all, significant;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      all.push_back(nb.similarity(i, j));
      if (nb.pvalues.p(i, j, args.smoothing) < args.alpha) significant.push_back(nb.similarity(i, j));
    }
  }
  write_histogram(histogram(all, args.bins), paths.out / "similarity_pdf_all.csv");
  if (!significant.empty()) {
    write_histogram(histogram(significant, args.bins), paths.out / "similarity_pdf_alpha.csv");
  }
  if (nb.component.edge_count() > 0) {
    write_histogram(histogram(nb.component.weights(), args.bins), paths.out / "similarity_pdf_network.csv");
  }

  std::vector<std::string> dropped;
  {
    std::vector<bool> kept(n, false);
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < n; ++i) index[nb.filtered.nodes()[i].id] = i;
    for (const auto& node : nb.component.nodes()) kept[index[node.id]] = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (!kept[i]) dropped.push_back(nb.filtered.nodes()[i].id);
    }
  }
  const double d_before = density(nb.filtered);
  const double d_after = nb.component.node_count() >= 2 ? density(nb.component) : 0.0;
  json summary = {
      {"alpha", args.alpha},
      {"bonferroni", opt.bonferroni},
      {"threshold", nb.threshold},
      {"permutations", args.permutations},
      {"seed", args.seed},
      {"pvalue_smoothing", args.smoothing},
      {"frequency_input", args.input},
      {"before_component", {{"nodes", nb.filtered.node_count()}, {"edges", nb.filtered.edge_count()}, {"density", d_before}}},
      {"after_component", {{"nodes", nb.component.node_count()}, {"edges", nb.component.edge_count()}, {"density", d_after}}},
      {"components", connected_components(nb.filtered).size()},
      {"dropped_nodes", dropped},
      {"pairs_significant_uncorrected", significant.size()},
  };
  write_json(summary, paths.out / "network.json");
  std::cout << "network: tau = " << nb.threshold << "\n"
            << "  before component extraction: n = " << nb.filtered.node_count()
            << ", m = " << nb.filtered.edge_count() << ", density = " << d_before << "\n"
            << "  largest component:            n = " << nb.component.node_count()
            << ", m = " << nb.component.edge_count() << ", density = " << d_after << '\n';
  if (nb.pvalues.permutations() > 0 && nb.threshold <= 1.0 / static_cast<double>(nb.pvalues.permutations()) &&
      !args.smoothing) {
    std::cout << "  note: tau is below 1/permutations, so only pairs with zero exceedances survive\n";
  }
}

// --- metrics --------------------------------------------------------------

struct MetricsArgs {
  std::size_t ensemble = 100;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  std::size_t bins = 30;
};

std::vector<double> date_values(const WeightedGraph& g, bool& ok) {
  std::vector<double> x;
  ok = true;
  for (const auto& n : g.nodes()) {
    const auto d = parse_date(n.date);
    if (!d) {
      ok = false;
      return {};
    }
    x.push_back(static_cast<double>(day_number(*d)));
  }
  return x;
}

void write_counts(const std::map<std::string, std::size_t>& counts, const std::string& key, const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  csv::write_row(out, {key, "count"});
  for (const auto& [k, c] : counts) csv::write_row(out, {k, std::to_string(c)});
}

void run_metrics(const MetricsArgs& args, const Paths& paths) {
  const WeightedGraph g = load_network(paths);
  if (g.node_count() < 2) throw ValidationError("network has fewer than 2 nodes");
  const auto stats = node_stats(g);

  std::vector<double> degree, strength, cw, cu;
  std::vector<std::optional<double>> cw_opt, cu_opt;
  {
    std::ofstream out(paths.out / "node_stats.csv");
    if (!out) throw Error("cannot write node_stats.csv");
    csv::write_row(out, {"id", "degree", "strength", "clustering_weighted", "clustering_unweighted"});
    for (std::size_t i = 0; i < g.node_count(); ++i) {
      const auto& s = stats[i];
      degree.push_back(static_cast<double>(s.degree));
      strength.push_back(s.strength);
      cw_opt.push_back(s.weighted_clustering);
      cu_opt.push_back(s.unweighted_clustering);
      if (s.weighted_clustering) cw.push_back(*s.weighted_clustering);
      if (s.unweighted_clustering) cu.push_back(*s.unweighted_clustering);
      csv::write_row(out, {g.nodes()[i].id, std::to_string(s.degree), csv::format_double(s.strength),
                           s.weighted_clustering ? csv::format_double(*s.weighted_clustering) : "",
                           s.unweighted_clustering ? csv::format_double(*s.unweighted_clustering) : ""});
    }
  }
  write_histogram(histogram(degree, args.bins), paths.out / "degree_hist.csv");
  write_histogram(histogram(strength, args.bins), paths.out / "strength_hist.csv");
  if (!cw.empty()) write_histogram(histogram(cw, args.bins), paths.out / "clustering_weighted_hist.csv");
  if (!cu.empty()) write_histogram(histogram(cu, args.bins), paths.out / "clustering_unweighted_hist.csv");

  const ClusteringNull null = clustering_null(g, args.ensemble, args.seed, args.workers);
  write_ccdf(null.actual, paths.out / "clustering_ccdf_actual.csv");
  write_ccdf(null.pooled, paths.out / "clustering_ccdf_null.csv");

  std::vector<std::string> category, speaker;
  std::map<std::string, std::size_t> by_category, by_speaker, by_year;
  for (const auto& n : g.nodes()) {
    category.push_back(n.category);
    speaker.push_back(n.speaker);
    ++by_category[n.category];
    ++by_speaker[n.speaker];
    ++by_year[n.date.substr(0, 4)];
  }
  write_counts(by_category, "category", paths.out / "counts_category.csv");
  write_counts(by_speaker, "speaker", paths.out / "counts_speaker.csv");
  write_counts(by_year, "year", paths.out / "counts_year.csv");

  bool dates_ok = false;
  const auto dates = date_values(g, dates_ok);
  json assort = {
      {"degree", optional_json(assortativity_scalar(g, degree))},
      {"strength", optional_json(assortativity_scalar(g, strength))},
      {"date", dates_ok ? optional_json(assortativity_scalar(g, dates)) : json(nullptr)},
      {"category", optional_json(assortativity_categorical(g, category))},
      {"speaker", optional_json(assortativity_categorical(g, speaker))},
  };
  const auto mean_w = mean_defined(cw_opt);
  const auto mean_u = mean_defined(cu_opt);
  const auto global = global_clustering(g);
  json doc = {
      {"nodes", g.node_count()},
      {"edges", g.edge_count()},
      {"density", density(g)},
      {"global_clustering", optional_json(global)},
      {"mean_local_clustering_weighted", optional_json(mean_w)},
      {"mean_local_clustering_unweighted", optional_json(mean_u)},
      {"clustering_null",
       {{"instances", args.ensemble},
        {"seed", args.seed},
        {"null_mean", optional_json(null.null_mean)},
        {"right_shift_fraction", null.right_shift_fraction}}},
      {"assortativity", assort},
      {"bimodality",
       {{"degree_dip", dip_statistic(degree)},
        {"strength_dip", dip_statistic(strength)},
        {"degree_coefficient", optional_json(bimodality_coefficient(degree))},
        {"strength_coefficient", optional_json(bimodality_coefficient(strength))}}},
  };
  write_json(doc, paths.out / "metrics.json");
  std::cout << "metrics: n = " << g.node_count() << ", m = " << g.edge_count() << ", density = " << density(g) << "\n"
            << "  global clustering " << show(global) << ", mean local weighted " << show(mean_w)
            << ", unweighted " << show(mean_u) << ", null mean " << show(null.null_mean) << "\n"
            << "  assortativity: " << assort.dump() << '\n';
}

// --- communities ----------------------------------------------------------

struct CommunityArgs {
  std::string methods = "louvain,lp,greedy";
  std::vector<std::string> imports;
  std::uint64_t seed = 0;
  bool binary = false;
};

void run_communities(const CommunityArgs& args, const Paths& paths) {
  const WeightedGraph g = load_network(paths);
  if (g.node_count() >= 2 && density(g) > 0.2) {
    std::cerr << "warning: network density " << density(g)
              << " > 0.2; community detection methods are designed for sparse networks\n";
  }
  const bool weighted = !args.binary;
  std::vector<Partition> parts;
  for (const auto& m : split_list(args.methods)) {
    if (m == "louvain") {
      parts.push_back(louvain(g, args.seed, weighted));
    } else if (m == "lp") {
      parts.push_back(label_propagation(g, args.seed, weighted));
    } else if (m == "greedy") {
      parts.push_back(greedy_modularity(g, weighted));
    } else {
      throw ValidationError("unknown community method '" + m + "' (louvain, lp, greedy)");
    }
  }
  for (const auto& spec : args.imports) {
    const auto eq = spec.find('=');
    const fs::path file = spec.substr(0, eq);
    const std::string label = eq == std::string::npos ? file.stem().string() : spec.substr(eq + 1);
    parts.push_back(read_partition(g, file, label));
  }
  if (parts.empty()) throw ValidationError("no partitions to compare");

  json summary = json::array();
  std::vector<std::string> labels;
  for (const auto& p : parts) {
    validate_partition(p, g);
    write_partition(p, paths.out / ("partition_" + p.method + ".csv"));
    labels.push_back(p.method);
    summary.push_back({{"method", p.method},
                       {"communities", p.community_count()},
                       {"modularity", modularity(g, p, false)},
                       {"modularity_weighted", modularity(g, p, true)}});
    std::cout << p.method << ": " << p.community_count() << " communities, Q = " << modularity(g, p, false) << '\n';
  }
  write_json({{"weighted", weighted}, {"seed", args.seed}, {"partitions", summary}}, paths.out / "communities.json");
  if (parts.size() >= 2) write_labeled_matrix(ari_matrix(parts), labels, paths.out / "ari_matrix.csv");
}

// --- richclub -------------------------------------------------------------

struct RichClubArgs {
  std::string mode = "rank";
  std::size_t ensemble = 100;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  std::optional<std::size_t> club_cut;
};

void run_richclub(const RichClubArgs& args, const Paths& paths) {
  const WeightedGraph g = load_network(paths);
  const RichClubMode mode = parse_rich_club_mode(args.mode);
  const NullEnsemble ensemble(g, args.ensemble, args.seed);
  const RichClubCurve curve = normalized_curve(g, mode, ensemble, args.workers);
  write_curve(curve, paths.out / ("richclub_" + std::string(to_string(mode)) + ".csv"));
  std::cout << "rich club (" << to_string(mode) << "): regime "
            << (curve.regime_start ? "starts at " + csv::format_double(*curve.regime_start) : std::string("not found"))
            << '\n';

  const std::size_t cut = args.club_cut ? *args.club_cut : regime_cut(g, curve);
  if (cut >= g.node_count()) throw ValidationError("club cut must be below the node count");
  const CoreMembership m = core_periphery_split(g, cut);
  write_membership(g, m, paths.membership());
  json balance = json::array();
  for (const auto& b : category_balance(g, m)) {
    balance.push_back({{"category", b.category}, {"core", b.core}, {"periphery", b.periphery}});
  }
  write_json({{"mode", to_string(mode)},
              {"ensemble", args.ensemble},
              {"seed", args.seed},
              {"regime_start", optional_json(curve.regime_start)},
              {"cut", cut},
              {"core_size", m.core_size()},
              {"periphery_size", g.node_count() - m.core_size()},
              {"category_balance", balance}},
             paths.out / "richclub.json");
  std::cout << "  cut at rank " << cut << ": core " << m.core_size() << ", periphery "
            << g.node_count() - m.core_size() << '\n';
}

// --- report ---------------------------------------------------------------

struct ReportArgs {
  std::string periods;
  double cutoff = 0.02;
};

void run_report(const ReportArgs& args, const Paths& paths) {
  const Corpus corpus = load_corpus(paths.corpus());
  const MatrixBuild mb = load_matrix(paths.matrix());
  const PeriodConfig periods = args.periods.empty() ? PeriodConfig{} : read_periods(args.periods);
  const auto rows = content_timeseries(corpus, mb.matrix, periods);
  write_timeseries(rows, paths.out / "content_timeseries.csv");
  {
    std::ofstream out(paths.out / "period_summary.csv");
    if (!out) throw Error("cannot write period_summary.csv");
    csv::write_row(out, {"period", "documents", "mean_score", "mean_percentage"});
    for (const auto& s : summarize_periods(rows)) {
      csv::write_row(out, {s.period, std::to_string(s.documents), csv::format_double(s.mean_score),
                           csv::format_double(s.mean_score * 100.0)});
    }
  }
  std::cout << "report: " << rows.size() << " documents in the content time series\n";

  if (!fs::exists(paths.membership())) {
    std::cout << "  no " << paths.membership().string() << "; skipping group term tables\n";
    return;
  }
  const auto flags = read_core_flags(paths.membership());
  const GroupTerms full = group_terms(mb.matrix, flags, std::nullopt);
  const GroupTerms cut = group_terms(mb.matrix, flags, args.cutoff);
  write_term_table(full.core, paths.out / "terms_core.csv");
  write_term_table(full.periphery, paths.out / "terms_periphery.csv");
  write_term_table(cut.core, paths.out / "terms_core_cutoff.csv");
  write_term_table(cut.periphery, paths.out / "terms_periphery_cutoff.csv");
  std::cout << "  group term tables: core " << full.core.terms.size() << " terms, periphery "
            << full.periphery.terms.size() << " terms (cutoff " << args.cutoff << " removes "
            << high_frequency_terms(mb.matrix, args.cutoff).size() << ")\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Glossary-based document similarity networks"};
  app.require_subcommand(1);
  app.fallthrough();
  Paths paths;
  std::string out_dir = ".";
  app.add_option("--out", out_dir, "Result directory")->capture_default_str();

  auto* glossary = app.add_subcommand("glossary", "Glossary operations");
  glossary->require_subcommand(1);
  GlossaryArgs gargs;
  auto* gbuild = glossary->add_subcommand("build", "Merge glossary sources into glossary.json");
  gbuild->add_option("sources", gargs.sources, "TSV or JSON glossary sources")->required();

  IngestArgs iargs;
  auto* ing = app.add_subcommand("ingest", "Read <id>.txt files and metadata into corpus.json");
  ing->add_option("--corpus", iargs.corpus_dir, "Directory of <id>.txt files")->required();
  ing->add_option("--metadata", iargs.metadata, "CSV id,date,speaker,category")->required();
  ing->add_option("--cut-marker", iargs.cut_marker, "Discard text from the first occurrence of this marker");

  MatrixArgs margs;
  auto* mat = app.add_subcommand("matrix", "Count glossary terms per document");
  mat->add_option("--workers", margs.workers, "Worker threads (0 = all cores)")->capture_default_str();

  NetworkArgs nargs;
  auto* net = app.add_subcommand("network", "Permutation-filtered similarity network");
  net->add_option("--alpha", nargs.alpha, "Significance level")->capture_default_str();
  net->add_option("--permutations", nargs.permutations, "Permutation instances")->capture_default_str();
  net->add_option("--seed", nargs.seed, "Master seed")->capture_default_str();
  net->add_option("--workers", nargs.workers, "Worker threads (0 = all cores)")->capture_default_str();
  net->add_flag("--no-bonferroni", nargs.no_bonferroni, "Threshold at alpha instead of alpha / C(n,2)");
  net->add_flag("--pvalue-smoothing", nargs.smoothing, "Use (count + 1) / (permutations + 1)");
  net->add_option("--input", nargs.input, "Frequencies fed to cosine")
      ->check(CLI::IsMember({"absolute", "relative"}))
      ->capture_default_str();
  net->add_option("--bins", nargs.bins, "Histogram bins for similarity pdfs")->capture_default_str();

  MetricsArgs xargs;
  auto* met = app.add_subcommand("metrics", "Clustering, assortativity and distributions");
  met->add_option("--ensemble", xargs.ensemble, "Reshuffled-weight null instances")->capture_default_str();
  met->add_option("--seed", xargs.seed, "Master seed")->capture_default_str();
  met->add_option("--workers", xargs.workers, "Worker threads (0 = all cores)")->capture_default_str();
  met->add_option("--bins", xargs.bins, "Histogram bins")->capture_default_str();

  CommunityArgs cargs;
  auto* com = app.add_subcommand("communities", "Community detection and ARI matrix");
  com->add_option("--methods", cargs.methods, "Comma-separated: louvain, lp, greedy")->capture_default_str();
  com->add_option("--import", cargs.imports, "External partition FILE[=LABEL] (node_id,community_id)");
  com->add_option("--seed", cargs.seed, "Seed for louvain and lp")->capture_default_str();
  com->add_flag("--binary", cargs.binary, "Ignore edge weights");

  RichClubArgs rargs;
  auto* rc = app.add_subcommand("richclub", "Normalized rich-club curve and core/periphery split");
  rc->add_option("--mode", rargs.mode, "degree, strength or rank")
      ->check(CLI::IsMember({"degree", "strength", "rank"}))
      ->capture_default_str();
  rc->add_option("--ensemble", rargs.ensemble, "Reshuffled-weight null instances")->capture_default_str();
  rc->add_option("--seed", rargs.seed, "Master seed")->capture_default_str();
  rc->add_option("--workers", rargs.workers, "Worker threads (0 = all cores)")->capture_default_str();
  rc->add_option("--club-cut", rargs.club_cut, "Strength rank above which nodes are in the core");

  ReportArgs pargs;
  auto* rep = app.add_subcommand("report", "Content time series and group term tables");
  rep->add_option("--periods", pargs.periods, "CSV start,end,label");
  rep->add_option("--cutoff", pargs.cutoff, "Share of term mass removed as high-frequency terms")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    paths.out = out_dir;
    fs::create_directories(paths.out);
    if (gbuild->parsed()) run_glossary(gargs, paths);
    if (ing->parsed()) run_ingest(iargs, paths);
    if (mat->parsed()) run_matrix(margs, paths);
    if (net->parsed()) run_network(nargs, paths);
    if (met->parsed()) run_metrics(xargs, paths);
    if (com->parsed()) run_communities(cargs, paths);
    if (rc->parsed()) run_richclub(rargs, paths);
    if (rep->parsed()) run_report(pargs, paths);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
