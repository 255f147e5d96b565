#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "cohesion/bench.hpp"
#include "cohesion/export.hpp"
#include "cohesion/graph.hpp"
#include "cohesion/strong_truss.hpp"
#include "cohesion/trapeze.hpp"
#include "cohesion/triangles.hpp"
#include "cohesion/truss.hpp"
#include "cohesion/weighted.hpp"

namespace cohesion::cli {

enum class Format { tsv, json };

struct Options {
  std::string input;
  std::string out_dir = ".";
  Format format = Format::tsv;
  std::string dot_path;
  std::string graphml_path;
  bool weighted_input = false;

  std::int64_t k = -1;  // -1: every level

  std::string weight_fn = "min";
  double alpha = 1.0;
  std::uint64_t support_cap = kDefaultSupportCap;
  bool strong_summits = false;

  std::vector<std::uint32_t> levels;
  std::int64_t geometric = -1;
  bool check_bipartite = false;

  std::uint32_t l = 10;
  std::uint32_t size = 10;
  std::string sizes;
  double p = 0.8;
  double mu = 0.1;
  std::string method = "truss";
  std::uint32_t trials = 20;
  std::uint64_t seed = 1;
  std::uint32_t k_min = 3;
  std::uint32_t k_max = 14;
  std::string report_path;
};

// A block of clusters sharing one level and kind.
struct Group {
  std::uint32_t k;
  std::string kind;
  std::vector<EdgeSet> members;
};

namespace detail {

inline void renumber(std::vector<EdgeSet>& members) {
  for (EdgeSet& s : members) std::sort(s.begin(), s.end());
  std::sort(members.begin(), members.end(),
            [](const EdgeSet& a, const EdgeSet& b) { return a.front() < b.front(); });
}

class Writer {
 public:
  Writer(const Options& o, std::ostream& out) : opt_(o), out_(out) {
    std::filesystem::create_directories(o.out_dir);
  }

  std::string path(const std::string& stem) const {
    return (std::filesystem::path(opt_.out_dir) / (stem + (opt_.format == Format::json ? ".json" : ".tsv"))).string();
  }

  std::ofstream open(const std::string& p) const {
    std::ofstream f(p, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + p);
    return f;
  }

  void labels(const Graph& g) const {
    auto f = open(path("labels"));
    if (opt_.format == Format::tsv) {
      write_label_table(f, g);
    } else {
      nlohmann::json j = nlohmann::json::array();
      for (VertexId v = 0; v < g.vertex_count(); ++v) j.push_back({{"id", v}, {"label", g.label(v)}});
      f << j.dump(1) << '\n';
    }
  }

  void trussness(const std::string& stem, const Graph& g, const KClassDecomposition& d) const {
    auto f = open(path(stem));
    if (opt_.format == Format::tsv) {
      write_trussness_tsv(f, g, d);
    } else {
      nlohmann::json j = nlohmann::json::array();
      for (EdgeId e = 0; e < g.edge_count(); ++e)
        j.push_back({{"u", g.label(g.edge(e).lo)}, {"v", g.label(g.edge(e).hi)}, {"phi", d.phi[e]}});
      f << j.dump(1) << '\n';
    }
    out_ << "wrote " << path(stem) << '\n';
  }

  void dendrogram(const std::string& stem, const ClusterFamily& fam) const {
    auto f = open(path(stem));
    if (opt_.format == Format::tsv) {
      write_dendrogram_tsv(f, fam);
    } else {
      nlohmann::json j = nlohmann::json::array();
      for (const Merge& m : fam.merges())
        j.push_back({{"level", m.level}, {"absorbed", m.absorbed}, {"result", m.result}});
      f << j.dump(1) << '\n';
    }
    out_ << "wrote " << path(stem) << '\n';
  }

  // Rows are "k<TAB>[kind<TAB>]index<TAB>u<TAB>v".
  void groups(const std::string& stem, const Graph& g, std::vector<Group>& gs, bool kind_column) const {
    for (Group& grp : gs) renumber(grp.members);
    auto f = open(path(stem));
    if (opt_.format == Format::tsv) {
      for (const Group& grp : gs)
        for (std::size_t i = 0; i < grp.members.size(); ++i)
          for (EdgeId e : grp.members[i]) {
            f << grp.k << '\t';
            if (kind_column) f << grp.kind << '\t';
            f << i << '\t' << g.label(g.edge(e).lo) << '\t' << g.label(g.edge(e).hi) << '\n';
          }
    } else {
      nlohmann::json j = nlohmann::json::array();
      for (const Group& grp : gs) {
        nlohmann::json clusters = nlohmann::json::array();
        for (std::size_t i = 0; i < grp.members.size(); ++i) {
          nlohmann::json edges = nlohmann::json::array();
          for (EdgeId e : grp.members[i])
            edges.push_back({g.label(g.edge(e).lo), g.label(g.edge(e).hi)});
          clusters.push_back({{"index", i}, {"edges", std::move(edges)}});
        }
        j.push_back({{"k", grp.k}, {"kind", grp.kind}, {"clusters", std::move(clusters)}});
      }
      f << j.dump(1) << '\n';
    }
    out_ << "wrote " << path(stem) << '\n';
  }

  void exports(const Graph& g, std::vector<EdgeSet> clusters, std::span<const std::uint32_t> phi) const {
    renumber(clusters);
    if (!opt_.dot_path.empty()) {
      auto f = open(opt_.dot_path);
      write_dot(f, g, clusters);
      out_ << "wrote " << opt_.dot_path << '\n';
    }
    if (!opt_.graphml_path.empty()) {
      auto f = open(opt_.graphml_path);
      write_graphml(f, g, clusters, phi);
      out_ << "wrote " << opt_.graphml_path << '\n';
    }
  }

 private:
  const Options& opt_;
  std::ostream& out_;
};

inline std::vector<EdgeSet> edge_sets(const std::vector<Cluster>& cs) {
  std::vector<EdgeSet> out;
  for (const Cluster& c : cs) out.push_back(c.edges);
  return out;
}

inline std::vector<Group> summit_groups(const std::vector<Cluster>& cs, const std::string& kind) {
  std::vector<Group> out;
  for (const Cluster& c : cs) {
    auto it = std::find_if(out.begin(), out.end(), [&](const Group& g) { return g.k == c.level; });
    if (it == out.end()) {
      out.push_back({c.level, kind, {}});
      it = std::prev(out.end());
    }
    it->members.push_back(c.edges);
  }
  std::sort(out.begin(), out.end(), [](const Group& a, const Group& b) { return a.k > b.k; });
  return out;
}

inline std::vector<std::uint32_t> requested_levels(const Options& o, std::uint32_t k_max) {
  if (o.k >= 0) {
    if (o.k < 2) throw std::invalid_argument("k must be at least 2");
    return {static_cast<std::uint32_t>(o.k)};
  }
  std::vector<std::uint32_t> out;
  for (std::uint32_t k = 2; k <= k_max; ++k) out.push_back(k);
  return out;
}

inline Graph load(const Options& o, bool weighted) {
  return load_edge_list_file(o.input, LoadOptions{weighted || o.weighted_input});
}

inline int cmd_truss(const Options& o, std::ostream& out) {
  if (o.k >= 0 && o.k < 2) throw std::invalid_argument("k must be at least 2");
  Graph g = load(o, false);
  KClassDecomposition d = k_classes(g);
  Writer w(o, out);
  w.labels(g);
  w.trussness("trussness", g, d);
  std::vector<Group> gs;
  for (std::uint32_t k : requested_levels(o, d.k_max)) gs.push_back({k, "weak", trusses_at(g, d, k).members});
  w.groups("trusses", g, gs, false);
  w.dendrogram("dendrogram", truss_dendrogram(d, g));
  for (const Group& grp : gs) out << "k=" << grp.k << " trusses=" << grp.members.size() << '\n';
  w.exports(g, gs.empty() ? std::vector<EdgeSet>{} : gs.back().members, d.phi);
  return 0;
}

inline int cmd_strong_truss(const Options& o, std::ostream& out) {
  if (o.k >= 0 && o.k < 2) throw std::invalid_argument("k must be at least 2");
  Graph g = load(o, false);
  KClassDecomposition d = k_classes(g);
  ClusterFamily fam = strong_truss_family(g, d);
  Writer w(o, out);
  w.labels(g);
  w.trussness("trussness", g, d);
  std::vector<Group> gs;
  for (std::uint32_t k : requested_levels(o, d.k_max)) gs.push_back({k, "strong", strong_trusses_at(fam, k)});
  w.groups("strong_trusses", g, gs, true);
  w.dendrogram("strong_dendrogram", fam);
  for (const Group& grp : gs) out << "k=" << grp.k << " strong_trusses=" << grp.members.size() << '\n';
  w.exports(g, gs.empty() ? std::vector<EdgeSet>{} : gs.back().members, d.phi);
  return 0;
}

inline int cmd_summit(const Options& o, std::ostream& out) {
  Graph g = load(o, false);
  KClassDecomposition d = k_classes(g);
  std::vector<Cluster> cs = o.strong_summits ? summit_strong_trusses(strong_truss_family(g, d))
                                             : summit_trusses(d, g);
  Writer w(o, out);
  w.labels(g);
  auto gs = summit_groups(cs, o.strong_summits ? "strong-summit" : "summit");
  w.groups("summits", g, gs, true);
  out << "summits=" << cs.size() << '\n';
  w.exports(g, edge_sets(cs), d.phi);
  return 0;
}

inline int cmd_weighted(const Options& o, std::ostream& out) {
  if (o.k >= 0 && o.k < 2) throw std::invalid_argument("k must be at least 2");
  TriangleWeightSpec spec{o.weight_fn == "harmonic" ? TriangleWeightKind::harmonic : TriangleWeightKind::minimum,
                          o.alpha};
  if (!(spec.alpha > 0)) throw std::invalid_argument("alpha must be positive");
  Graph g = load(o, true);
  KClassDecomposition d = weighted_k_classes(g, spec, o.support_cap);
  ClusterFamily fam = weighted_strong_family(g, d);
  Writer w(o, out);
  w.labels(g);
  w.trussness("weighted_trussness", g, d);
  std::vector<Group> weak, strong;
  if (o.k >= 0) {
    weak.push_back({static_cast<std::uint32_t>(o.k), "weak", trusses_at(g, d, static_cast<std::uint32_t>(o.k)).members});
    strong.push_back({static_cast<std::uint32_t>(o.k), "strong", strong_trusses_at(fam, static_cast<std::uint32_t>(o.k))});
  } else {
    for (auto& [k, edges] : d.classes) {
      weak.push_back({k, "weak", trusses_at(g, d, k).members});
      strong.push_back({k, "strong", strong_trusses_at(fam, k)});
    }
  }
  w.groups("weighted_trusses", g, weak, false);
  w.groups("weighted_strong_trusses", g, strong, true);
  auto summits = summit_strong_trusses(fam);
  auto sg = summit_groups(summits, "strong-summit");
  w.groups("weighted_summits", g, sg, true);
  w.dendrogram("weighted_strong_dendrogram", fam);
  out << "k_max=" << d.k_max << " summits=" << summits.size() << '\n';
  w.exports(g, strong.empty() ? std::vector<EdgeSet>{} : strong.back().members, d.phi);
  return 0;
}

inline std::vector<std::uint32_t> schedule(const Options& o) {
  if (!o.levels.empty() && o.geometric >= 0) throw std::invalid_argument("use either --levels or --geometric");
  if (o.geometric >= 0) return geometric_schedule(static_cast<std::uint32_t>(o.geometric));
  if (!o.levels.empty()) return o.levels;
  return geometric_schedule(4);
}

inline bool bipartite(const Graph& g) {
  std::vector<int> side(g.vertex_count(), -1);
  std::vector<VertexId> stack;
  for (VertexId s = 0; s < g.vertex_count(); ++s) {
    if (side[s] >= 0) continue;
    side[s] = 0;
    stack.push_back(s);
    while (!stack.empty()) {
      VertexId x = stack.back();
      stack.pop_back();
      for (const Adjacent& a : g.neighbors(x)) {
        if (side[a.vertex] < 0) {
          side[a.vertex] = 1 - side[x];
          stack.push_back(a.vertex);
        } else if (side[a.vertex] == side[x]) {
          return false;
        }
      }
    }
  }
  return true;
}

enum class TrapezeOutput { weak, strong, summit };

inline int cmd_trapeze(const Options& o, std::ostream& out, TrapezeOutput what) {
  auto sch = schedule(o);
  Graph g = load(o, false);
  if (o.check_bipartite) out << "bipartite=" << (bipartite(g) ? "yes" : "no") << '\n';
  TrapezeRun run = trapeze_level_run(g, sch);
  Writer w(o, out);
  w.labels(g);
  std::vector<Group> levels, strong, summits;
  for (std::size_t i = 0; i < run.levels.size(); ++i) {
    levels.push_back({run.levels[i].k, "weak", run.levels[i].weak.members});
    strong.push_back({run.levels[i].k, "strong", run.levels[i].strong.members});
    if (!run.summits[i].members.empty()) summits.push_back({run.summits[i].k, "summit", run.summits[i].members});
  }
  std::vector<EdgeSet> shown;
  if (what == TrapezeOutput::weak) {
    w.groups("trapezes", g, levels, true);
    w.groups("trapeze_summits", g, summits, true);
    for (const Group& grp : levels) out << "k=" << grp.k << " trapezes=" << grp.members.size() << '\n';
    if (!levels.empty()) shown = levels.back().members;
  } else if (what == TrapezeOutput::strong) {
    w.groups("strong_trapezes", g, strong, true);
    for (const Group& grp : strong) out << "k=" << grp.k << " strong_trapezes=" << grp.members.size() << '\n';
    if (!strong.empty()) shown = strong.back().members;
  } else {
    w.groups("trapeze_summits", g, summits, true);
    std::size_t total = 0;
    for (const Group& grp : summits) {
      total += grp.members.size();
      shown.insert(shown.end(), grp.members.begin(), grp.members.end());
    }
    out << "summits=" << total << '\n';
  }
  w.exports(g, shown, {});
  return 0;
}

inline int cmd_stats(const Options& o, std::ostream& out) {
  Graph g = load(o, false);
  SupportMap sup = edge_supports(g);
  KClassDecomposition d = k_classes(g, sup);
  std::vector<std::pair<std::string, std::uint64_t>> rows = {
      {"vertices", g.vertex_count()},
      {"edges", g.edge_count()},
      {"components", connected_components(g).size()},
      {"triangles", triangle_count(sup)},
      {"k_max", d.k_max},
  };
  if (o.format == Format::json) {
    nlohmann::json j = nlohmann::json::object();
    for (auto& [k, v] : rows) j[k] = v;
    out << j.dump(1) << '\n';
  } else {
    for (auto& [k, v] : rows) out << k << '\t' << v << '\n';
  }
  return 0;
}

inline BenchMethod parse_method(const std::string& m) {
  if (m == "truss") return BenchMethod::truss;
  if (m == "strong") return BenchMethod::strong;
  if (m == "summit") return BenchMethod::summit;
  return BenchMethod::strong_summit;
}

inline int cmd_bench(const Options& o, std::ostream& out) {
  PlantedModel model;
  model.l = o.l;
  model.size_lo = model.size_hi = o.size;
  if (!o.sizes.empty()) {
    auto dots = o.sizes.find("..");
    if (dots == std::string::npos) throw std::invalid_argument("--sizes expects lo..hi");
    model.size_lo = static_cast<std::uint32_t>(std::stoul(o.sizes.substr(0, dots)));
    model.size_hi = static_cast<std::uint32_t>(std::stoul(o.sizes.substr(dots + 2)));
  }
  model.p = o.p;
  model.mu = o.mu;
  model.seed = o.seed;
  validate(model);
  double mean_size = (model.size_lo + model.size_hi) / 2.0;
  derive_inter_prob(model.l, model.l * mean_size, model.p, model.mu);

  BenchSpec spec{parse_method(o.method), o.k_min, o.k_max};
  if (spec.k_lo < 2 && !is_summit(spec.method)) throw std::invalid_argument("k must be at least 2");
  BenchReport rep = run_benchmark(model, spec, o.trials);

  std::ostringstream cells;
  std::ostringstream head;
  for (auto& [k, v] : rep.mean_nmi) {
    head << '\t' << (k == 0 ? std::string("summit") : "k=" + std::to_string(k));
    cells << '\t' << std::fixed << std::setprecision(4) << v;
  }
  std::ostringstream model_cells;
  model_cells << model.l << '\t' << (model.size_lo == model.size_hi ? std::to_string(model.size_lo)
                                                                    : std::to_string(model.size_lo) + ".." + std::to_string(model.size_hi))
              << '\t' << model.p << '\t' << model.mu;
  std::ostringstream graph_cells;
  graph_cells << std::fixed << std::setprecision(1) << rep.mean_n << '\t' << rep.mean_m;

  if (o.format == Format::json) {
    nlohmann::json j = {{"l", model.l}, {"size_lo", model.size_lo}, {"size_hi", model.size_hi},
                        {"p", model.p}, {"mu", model.mu}, {"method", o.method}, {"trials", o.trials},
                        {"seed", o.seed}, {"mean_n", rep.mean_n}, {"mean_m", rep.mean_m},
                        {"mean_seconds", rep.mean_seconds}};
    nlohmann::json cols = nlohmann::json::object();
    for (auto& [k, v] : rep.mean_nmi) cols[k == 0 ? std::string("summit") : std::to_string(k)] = v;
    j["nmi"] = cols;
    out << j.dump(1) << '\n';
  } else {
    out << "seed\t" << o.seed << "\ttrials\t" << o.trials << "\tmethod\t" << o.method << '\n';
    out << "l\tn/l\tp\tmu\tn\tm\ttime_s" << head.str() << '\n';
    out << model_cells.str() << '\t' << graph_cells.str() << '\t' << std::setprecision(4) << std::fixed
        << rep.mean_seconds << cells.str() << '\n';
  }
  if (!o.report_path.empty()) {
    std::ofstream f(o.report_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + o.report_path);
    f << "seed\t" << o.seed << "\ttrials\t" << o.trials << "\tmethod\t" << o.method << '\n';
    f << "l\tn/l\tp\tmu\tn\tm" << head.str() << '\n';
    f << model_cells.str() << '\t' << graph_cells.str() << cells.str() << '\n';
  }
  return 0;
}

}  // namespace detail

// Returns the process exit code: 0 success, 1 runtime failure, 2 usage error.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Truss and trapeze cohesion analysis for edge-list graphs", "cohesion"};
  app.require_subcommand(1);
  std::map<std::string, Format> formats{{"tsv", Format::tsv}, {"json", Format::json}};

  auto common = [&](CLI::App* sub, bool graph_input) {
    sub->add_option("--format", o.format, "Output format")->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    if (!graph_input) return;
    sub->add_option("input", o.input, "Edge list: one 'u v [w]' per line")->required()->check(CLI::ExistingFile);
    sub->add_option("--out-dir", o.out_dir, "Directory for output files");
    sub->add_option("--dot", o.dot_path, "Write a DOT file with one subgraph per cluster");
    sub->add_option("--graphml", o.graphml_path, "Write a GraphML file with phi and cluster attributes");
    sub->add_flag("--weighted", o.weighted_input, "Input lines carry a third weight column");
  };

  auto* truss = app.add_subcommand("truss", "Trussness, maximal k-trusses and the truss dendrogram");
  common(truss, true);
  truss->add_option("--k", o.k, "Truss level (default: every level)");

  auto* strong = app.add_subcommand("strong-truss", "Strong (triangle-connected) k-trusses");
  common(strong, true);
  strong->add_option("--k", o.k, "Truss level (default: every level)");

  auto* summit = app.add_subcommand("summit", "Summit trusses");
  common(summit, true);
  summit->add_flag("--strong", o.strong_summits, "Report summit strong trusses");

  auto* weighted = app.add_subcommand("weighted-truss", "Weighted k-classes, trusses and summits");
  common(weighted, true);
  weighted->add_option("--k", o.k, "Truss level (default: every non-empty class)");
  weighted->add_option("--weight-fn", o.weight_fn, "Triangle weight")->check(CLI::IsMember({"min", "harmonic"}));
  weighted->add_option("--alpha", o.alpha, "Triangle weight scale");
  weighted->add_option("--support-cap", o.support_cap, "Largest weighted support accepted");

  std::vector<std::pair<CLI::App*, detail::TrapezeOutput>> trapeze_cmds;
  for (auto [name, what, help] : {std::tuple{"trapeze", detail::TrapezeOutput::weak, "Maximal k-trapezes per level"},
                                  std::tuple{"strong-trapeze", detail::TrapezeOutput::strong, "Strong k-trapezes per level"},
                                  std::tuple{"summit-trapeze", detail::TrapezeOutput::summit, "Summit trapezes over the level schedule"}}) {
    auto* sub = app.add_subcommand(name, help);
    common(sub, true);
    sub->add_option("--levels", o.levels, "Ascending support levels, e.g. 1,2,4")->delimiter(',');
    sub->add_option("--geometric", o.geometric, "Use levels 1,2,4,...,2^N");
    sub->add_flag("--check-bipartite", o.check_bipartite, "Report whether the input is bipartite");
    trapeze_cmds.emplace_back(sub, what);
  }

  auto* bench = app.add_subcommand("bench", "Planted partition benchmark");
  common(bench, false);
  bench->add_option("--l", o.l, "Number of planted groups");
  bench->add_option("--size", o.size, "Group size");
  bench->add_option("--sizes", o.sizes, "Group size range lo..hi, drawn uniformly");
  bench->add_option("--p", o.p, "Intra-group edge probability");
  bench->add_option("--mu", o.mu, "Mixing parameter");
  bench->add_option("--method", o.method, "Clustering method")->check(CLI::IsMember({"truss", "strong", "summit", "strong-summit"}));
  bench->add_option("--trials", o.trials, "Number of trials");
  bench->add_option("--seed", o.seed, "Base seed; trial i uses seed + i");
  bench->add_option("--k-min", o.k_min, "Lowest truss level reported");
  bench->add_option("--k-max", o.k_max, "Highest truss level reported");
  bench->add_option("--output", o.report_path, "Also write the report (without timing) to this file");

  auto* stats = app.add_subcommand("stats", "Basic graph statistics");
  common(stats, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (truss->parsed()) return detail::cmd_truss(o, out);
    if (strong->parsed()) return detail::cmd_strong_truss(o, out);
    if (summit->parsed()) return detail::cmd_summit(o, out);
    if (weighted->parsed()) return detail::cmd_weighted(o, out);
    for (auto& [sub, what] : trapeze_cmds)
      if (sub->parsed()) return detail::cmd_trapeze(o, out, what);
    if (bench->parsed()) return detail::cmd_bench(o, out);
    if (stats->parsed()) return detail::cmd_stats(o, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace cohesion::cli
