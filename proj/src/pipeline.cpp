#include "reebskel/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "json.hpp"
#include "reebskel/export.hpp"

namespace reebskel {

void PipelineConfig::validate() const {
  if (input.empty()) {
    if (fields.empty()) throw ConfigError("fields: at least one field is required");
    for (int a = 0; a < 3; ++a) {
      if (dims[a] < 1) throw ConfigError("dims: every axis needs at least one sample");
      if (dims[a] > 1 && !(bounds.hi[a] > bounds.lo[a]))
        throw ConfigError("bounds: axis " + std::to_string(a) + " has zero extent");
    }
    if (dims[0] < 2 || dims[1] < 2) throw ConfigError("dims: x and y need at least 2 samples");
  }
  if (widths.empty()) throw ConfigError("widths: at least one slab width is required");
  for (double w : widths)
    if (!(w > 0.0) || !std::isfinite(w)) throw ConfigError("widths: slab widths must be positive");
  for (double b : bases)
    if (!std::isfinite(b)) throw ConfigError("bases: slab bases must be finite");
  if (!(threshold >= 0.0 && threshold <= 1.0)) throw ConfigError("threshold: must lie in [0, 1]");
  if (exports.jcn || exports.mdrg || exports.skeleton || exports.journal || exports.stats)
    if (output_dir.empty()) throw ConfigError("output: exports requested without an output directory");
}

QuantizationSpec PipelineConfig::quantization(int field_count) const {
  QuantizationSpec q;
  if (widths.size() == 1) {
    q.widths.assign(field_count, widths[0]);
  } else if (static_cast<int>(widths.size()) == field_count) {
    q.widths = widths;
  } else {
    throw ConfigError("widths: expected 1 or " + std::to_string(field_count) + " values, got " +
                      std::to_string(widths.size()));
  }
  if (bases.size() == 1) {
    q.bases.assign(field_count, bases[0]);
  } else if (static_cast<int>(bases.size()) == field_count || bases.empty()) {
    q.bases = bases;
  } else {
    throw ConfigError("bases: expected 1 or " + std::to_string(field_count) + " values, got " +
                      std::to_string(bases.size()));
  }
  q.validate(field_count);
  return q;
}

MultiFieldGrid load_grid(const PipelineConfig& config) {
  if (!config.input.empty()) return read_field_file(config.input);
  std::vector<FieldSpec> specs;
  for (const auto& f : config.fields) specs.push_back(parse_field_spec(f));
  return generate_field(specs, config.dims, config.bounds);
}

namespace {

class Stopwatch {
 public:
  double lap() {
    const auto now = std::chrono::steady_clock::now();
    const double s = std::chrono::duration<double>(now - last_).count();
    last_ = now;
    return s;
  }

 private:
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

template <typename Write>
void export_file(const std::filesystem::path& dir, const char* name, Write write) {
  std::ofstream os(dir / name, std::ios::binary);
  if (!os) throw InputError("cannot write " + (dir / name).string());
  write(os);
  if (!os) throw InputError("error writing " + (dir / name).string());
}

}  // namespace

PipelineResult run_pipeline(const PipelineConfig& config, Stage last) {
  config.validate();
  PipelineResult r;
  auto& st = r.stats;
  Stopwatch clock;

  r.grid = load_grid(config);
  const auto& grid = *r.grid;
  const auto q = config.quantization(grid.field_count());
  if (!config.field_order.empty() && static_cast<int>(config.field_order.size()) != grid.field_count())
    throw ConfigError("field_order: expected " + std::to_string(grid.field_count()) + " entries");
  st.dims = grid.dims();
  st.field_count = grid.field_count();
  st.timings.push_back({"Load", clock.lap()});

  const auto mesh = simplices(grid);
  st.simplices = static_cast<std::int64_t>(mesh.size());
  r.fragments = slice_grid(grid, q, {config.workers, false});
  st.fragments = r.fragments.size();
  st.timings.push_back({"Fragments", clock.lap()});
  r.adjacency = fragment_adjacency(r.fragments, mesh);
  st.fragment_pairs = static_cast<std::int64_t>(r.adjacency.size());
  r.jcn = build_jcn(r.fragments, r.adjacency);
  st.jcn_nodes = r.jcn.node_count();
  st.jcn_edges = r.jcn.edge_count();
  st.jcn_components = r.jcn.component_count();
  st.timings.push_back({"JCN", clock.lap()});

  const bool files = !config.output_dir.empty();
  if (files) std::filesystem::create_directories(config.output_dir);
  const auto& dir = config.output_dir;
  if (files && config.exports.jcn) {
    export_file(dir, "jcn.dot", [&](std::ostream& os) { write_jcn_dot(os, r.jcn); });
    export_file(dir, "jcn.graphml", [&](std::ostream& os) { write_jcn_graphml(os, r.jcn); });
  }

  auto write_stats = [&] {
    if (!files || !config.exports.stats) return;
    export_file(dir, "stats.json", [&](std::ostream& os) {
      nlohmann::ordered_json j;
      j["dims"] = st.dims;
      j["fields"] = st.field_count;
      j["simplices"] = st.simplices;
      j["fragments"] = st.fragments;
      j["fragment_pairs"] = st.fragment_pairs;
      j["jcn_nodes"] = st.jcn_nodes;
      j["jcn_edges"] = st.jcn_edges;
      j["jcn_components"] = st.jcn_components;
      j["mdrg_graphs"] = st.mdrg_graphs;
      j["jacobi_nodes"] = st.jacobi_nodes;
      j["regular_components"] = st.regular_components;
      j["singular_components"] = st.singular_components;
      j["skeleton_nodes"] = st.skeleton_nodes;
      j["skeleton_edges"] = st.skeleton_edges;
      j["prune_steps"] = st.prune_steps;
      j["simplified_regular"] = st.simplified_regular;
      j["simplified_nodes"] = st.simplified_nodes;
      os << j.dump(1) << '\n';
    });
  };
  if (last == Stage::Jcn) {
    write_stats();
    return r;
  }

  r.mdrg = build_mdrg(r.jcn, config.field_order);
  st.mdrg_graphs = static_cast<std::int64_t>(r.mdrg.graphs.size());
  st.timings.push_back({"MDRG", clock.lap()});
  r.jacobi = config.all_orders ? extract_jacobi_all_orders(r.jcn) : extract_jacobi(r.mdrg, r.jcn.node_count());
  st.jacobi_nodes = r.jacobi.size();
  st.timings.push_back({"Jacobi-Structure", clock.lap()});
  if (files && config.exports.mdrg) {
    export_file(dir, "mdrg.json", [&](std::ostream& os) { write_mdrg_json(os, r.mdrg); });
    if (!r.mdrg.graphs.empty())
      export_file(dir, "level1.dot", [&](std::ostream& os) {
        write_reeb_graph_dot(os, r.mdrg.graphs[0].graph, r.mdrg.graphs[0].critical);
      });
  }
  if (last == Stage::Mdrg) {
    write_stats();
    return r;
  }

  r.partition = partition_components(r.jcn, r.jacobi);
  r.skeleton = build_skeleton(r.partition, r.jcn);
  st.regular_components = static_cast<int>(r.partition.regular.size());
  st.singular_components = static_cast<int>(r.partition.singular.size());
  st.skeleton_nodes = r.skeleton.node_count();
  st.skeleton_edges = static_cast<std::int64_t>(r.skeleton.edges().size());
  st.timings.push_back({"Reeb-Skeleton", clock.lap()});
  if (files && config.exports.skeleton) {
    export_file(dir, "skeleton.dot", [&](std::ostream& os) { write_skeleton_dot(os, r.skeleton); });
    export_file(dir, "skeleton.graphml", [&](std::ostream& os) { write_skeleton_graphml(os, r.skeleton); });
    export_file(dir, "components.json", [&](std::ostream& os) { write_components_json(os, r.skeleton, r.jcn); });
  }

  r.simplified = r.skeleton;
  st.simplified_regular = r.simplified.regular_count();
  st.simplified_nodes = r.simplified.node_count();
  if (last == Stage::Skeleton) {
    write_stats();
    return r;
  }

  st.prune_steps = simplify(r.simplified, r.jcn, config.measure, config.threshold);
  st.simplified_regular = r.simplified.regular_count();
  st.simplified_nodes = r.simplified.node_count();
  st.timings.push_back({"Simplification", clock.lap()});
  if (files && config.exports.skeleton) {
    export_file(dir, "simplified.dot", [&](std::ostream& os) { write_skeleton_dot(os, r.simplified); });
    export_file(dir, "simplified.graphml", [&](std::ostream& os) { write_skeleton_graphml(os, r.simplified); });
  }
  if (files && config.exports.journal)
    export_file(dir, "journal.json", [&](std::ostream& os) { write_journal_json(os, r.simplified, config.measure); });
  write_stats();
  return r;
}

void print_stats(std::ostream& os, const PipelineStats& st) {
  char line[160];
  auto row = [&](const char* name, long long v) {
    std::snprintf(line, sizeof line, "%-22s %14lld\n", name, v);
    os << line;
  };
  std::snprintf(line, sizeof line, "%-22s %14s\n", "dims",
                (std::to_string(st.dims[0]) + "x" + std::to_string(st.dims[1]) + "x" + std::to_string(st.dims[2]))
                    .c_str());
  os << line;
  row("fields", st.field_count);
  row("simplices", st.simplices);
  row("fragments", st.fragments);
  row("fragment pairs", st.fragment_pairs);
  row("JCN nodes", st.jcn_nodes);
  row("JCN edges", st.jcn_edges);
  row("JCN components", st.jcn_components);
  row("MDRG graphs", st.mdrg_graphs);
  row("Jacobi nodes", st.jacobi_nodes);
  row("regular components", st.regular_components);
  row("singular components", st.singular_components);
  row("skeleton nodes", st.skeleton_nodes);
  row("skeleton edges", st.skeleton_edges);
  row("prune steps", st.prune_steps);
  row("regular after", st.simplified_regular);
  for (const auto& t : st.timings) {
    std::snprintf(line, sizeof line, "%-22s %12.3f s\n", ("time " + t.name).c_str(), t.seconds);
    os << line;
  }
}

}  // namespace reebskel
