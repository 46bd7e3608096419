#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "reebskel/export.hpp"
#include "reebskel/oracle.hpp"
#include "reebskel/pipeline.hpp"

using namespace reebskel;
using nlohmann::json;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitInput = 3;

// Raw flag values; a flag overrides the config file only when given.
struct Flags {
  std::string config;
  std::string input;
  std::vector<std::string> fields;
  std::vector<std::int64_t> dims;
  std::vector<double> bounds;
  std::vector<double> widths;
  std::vector<double> bases;
  std::vector<int> field_order;
  bool all_orders = false;
  std::string measure;
  double threshold = 0.0;
  std::string output;
  std::vector<std::string> exports;
  int workers = 0;
  std::string field_file;  // generate only
};

struct Options {
  CLI::Option* input = nullptr;
  CLI::Option* fields = nullptr;
  CLI::Option* dims = nullptr;
  CLI::Option* bounds = nullptr;
  CLI::Option* widths = nullptr;
  CLI::Option* bases = nullptr;
  CLI::Option* field_order = nullptr;
  CLI::Option* all_orders = nullptr;
  CLI::Option* measure = nullptr;
  CLI::Option* threshold = nullptr;
  CLI::Option* output = nullptr;
  CLI::Option* exports = nullptr;
  CLI::Option* workers = nullptr;
};

Options add_common(CLI::App* sub, Flags& f, bool generating) {
  Options o;
  sub->add_option("--config", f.config, "JSON config file; flags override its values");
  if (!generating) o.input = sub->add_option("--input", f.input, "field file (instead of --fields)");
  o.fields = sub->add_option("--fields", f.fields, "synthetic fields, e.g. circle,line")->delimiter(',');
  o.dims = sub->add_option("--dims", f.dims, "samples per axis: nx,ny,nz")->delimiter(',')->expected(3);
  o.bounds = sub->add_option("--bounds", f.bounds, "domain box: x0,y0,z0,x1,y1,z1")->delimiter(',')->expected(6);
  if (generating) return o;
  o.widths = sub->add_option("--widths", f.widths, "slab width per field (one value applies to all)")
                 ->delimiter(',');
  o.bases = sub->add_option("--bases", f.bases, "slab base per field")->delimiter(',');
  o.field_order = sub->add_option("--field-order", f.field_order, "MDRG field order, e.g. 1,0")->delimiter(',');
  o.all_orders = sub->add_flag("--all-orders", f.all_orders, "union the Jacobi Structure over all field orders");
  o.measure = sub->add_option("--measure", f.measure, "range, volume or surface_area");
  o.threshold = sub->add_option("--threshold", f.threshold, "simplification threshold in [0, 1]");
  o.output = sub->add_option("--output", f.output, "output directory for exports");
  o.exports = sub->add_option("--export", f.exports, "jcn,mdrg,skeleton,journal,stats or all")->delimiter(',');
  o.workers = sub->add_option("--workers", f.workers, "slicing threads (0: all cores)");
  return o;
}

void set_exports(ExportToggles& t, const std::vector<std::string>& names) {
  t = {};
  for (const auto& n : names) {
    if (n == "jcn") t.jcn = true;
    else if (n == "mdrg") t.mdrg = true;
    else if (n == "skeleton") t.skeleton = true;
    else if (n == "journal") t.journal = true;
    else if (n == "stats") t.stats = true;
    else if (n == "all") t = {true, true, true, true, true};
    else throw ConfigError("export: unknown export '" + n + "'");
  }
}

void set_bounds(Box& box, const std::vector<double>& b) {
  if (b.size() != 6) throw ConfigError("bounds: expected 6 values");
  box = {{b[0], b[1], b[2]}, {b[3], b[4], b[5]}};
}

void set_dims(std::array<std::int64_t, 3>& dims, const std::vector<std::int64_t>& d) {
  if (d.size() != 3) throw ConfigError("dims: expected 3 values");
  dims = {d[0], d[1], d[2]};
}

template <typename T>
T get_key(const json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("config: bad value for '") + key + "'");
  }
}

void apply_config_file(PipelineConfig& c, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("config: cannot read " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("config: " + path + " is not valid JSON (" + e.what() + ")");
  }
  if (!j.is_object()) throw ConfigError("config: top level must be an object");
  static const std::set<std::string> known{"input",       "fields",     "dims",    "bounds",
                                           "widths",      "bases",      "field_order", "all_orders",
                                           "measure",     "threshold",  "output",  "exports",
                                           "workers"};
  for (const auto& [key, value] : j.items())
    if (!known.count(key)) throw ConfigError("config: unknown key '" + key + "'");
  if (j.contains("input")) c.input = get_key<std::string>(j, "input");
  if (j.contains("fields")) c.fields = get_key<std::vector<std::string>>(j, "fields");
  if (j.contains("dims")) set_dims(c.dims, get_key<std::vector<std::int64_t>>(j, "dims"));
  if (j.contains("bounds")) set_bounds(c.bounds, get_key<std::vector<double>>(j, "bounds"));
  if (j.contains("widths")) c.widths = get_key<std::vector<double>>(j, "widths");
  if (j.contains("bases")) c.bases = get_key<std::vector<double>>(j, "bases");
  if (j.contains("field_order")) c.field_order = get_key<std::vector<int>>(j, "field_order");
  if (j.contains("all_orders")) c.all_orders = get_key<bool>(j, "all_orders");
  if (j.contains("measure")) c.measure = parse_measure_kind(get_key<std::string>(j, "measure"));
  if (j.contains("threshold")) c.threshold = get_key<double>(j, "threshold");
  if (j.contains("output")) c.output_dir = get_key<std::string>(j, "output");
  if (j.contains("exports")) set_exports(c.exports, get_key<std::vector<std::string>>(j, "exports"));
  if (j.contains("workers")) c.workers = get_key<int>(j, "workers");
}

PipelineConfig resolve(const Flags& f, const Options& o) {
  PipelineConfig c;
  if (!f.config.empty()) apply_config_file(c, f.config);
  auto given = [](CLI::Option* opt) { return opt && opt->count() > 0; };
  if (given(o.input)) c.input = f.input;
  if (given(o.fields)) c.fields = f.fields;
  if (given(o.dims)) set_dims(c.dims, f.dims);
  if (given(o.bounds)) set_bounds(c.bounds, f.bounds);
  if (given(o.widths)) c.widths = f.widths;
  if (given(o.bases)) c.bases = f.bases;
  if (given(o.field_order)) c.field_order = f.field_order;
  if (given(o.all_orders)) c.all_orders = f.all_orders;
  if (given(o.measure)) c.measure = parse_measure_kind(f.measure);
  if (given(o.threshold)) c.threshold = f.threshold;
  if (given(o.output)) c.output_dir = f.output;
  if (given(o.exports)) set_exports(c.exports, f.exports);
  if (given(o.workers)) c.workers = f.workers;
  return c;
}

void print_jcn_summary(const PipelineResult& r) {
  std::printf("fragments %lld\nfragment_pairs %lld\njcn_nodes %d\njcn_edges %lld\njcn_components %d\n",
              static_cast<long long>(r.stats.fragments), static_cast<long long>(r.stats.fragment_pairs),
              r.stats.jcn_nodes, static_cast<long long>(r.stats.jcn_edges), r.stats.jcn_components);
}

void print_mdrg_summary(const PipelineResult& r) {
  std::map<int, std::pair<long long, long long>> per_level;  // graphs, nodes
  std::map<int, long long> critical;
  for (const auto& g : r.mdrg.graphs) {
    per_level[g.depth].first += 1;
    per_level[g.depth].second += g.graph.node_count();
    for (char c : g.critical) critical[g.depth] += c;
  }
  for (const auto& [depth, counts] : per_level)
    std::printf("level %d field %d graphs %lld nodes %lld critical %lld\n", depth + 1, r.mdrg.field_order[depth],
                counts.first, counts.second, critical[depth]);
  std::printf("jacobi_nodes %lld\n", static_cast<long long>(r.stats.jacobi_nodes));
}

void print_skeleton_summary(const ReebSkeleton& s, const char* label) {
  std::printf("%s regular %d singular %d nodes %d edges %zu components %d detachable %zu\n", label,
              s.regular_count(), s.singular_count(), s.node_count(), s.edges().size(), s.component_count(),
              find_detachable(s).size());
}

int run(const std::string& command, const Flags& f, const Options& o) {
  if (command == "generate") {
    PipelineConfig c = resolve(f, o);
    c.input.clear();
    if (f.field_file.empty()) throw ConfigError("output: generate needs --output FILE");
    c.validate();
    const auto grid = load_grid(c);
    write_field_file(f.field_file, grid);
    spdlog::info("wrote {} ({} fields, {}x{}x{})", f.field_file, grid.field_count(), grid.dims()[0],
                 grid.dims()[1], grid.dims()[2]);
    return 0;
  }

  const PipelineConfig c = resolve(f, o);
  spdlog::debug("config: {} fields, dims {}x{}x{}, threshold {}", c.fields.size(), c.dims[0], c.dims[1], c.dims[2],
                c.threshold);
  if (command == "jcn") {
    const auto r = run_pipeline(c, Stage::Jcn);
    print_jcn_summary(r);
  } else if (command == "mdrg") {
    const auto r = run_pipeline(c, Stage::Mdrg);
    print_mdrg_summary(r);
  } else if (command == "skeleton") {
    const auto r = run_pipeline(c, Stage::Skeleton);
    print_skeleton_summary(r.skeleton, "skeleton");
  } else if (command == "simplify") {
    const auto r = run_pipeline(c, Stage::Simplify);
    print_skeleton_summary(r.skeleton, "before");
    print_skeleton_summary(r.simplified, "after");
    for (const auto& step : r.simplified.journal)
      std::printf("prune step %d node %d measure %s merged_into %d\n", step.step, step.node,
                  format_real(step.measure).c_str(), step.merged_into);
  } else if (command == "oracle") {
    const auto r = run_pipeline(c, Stage::Jcn);
    const auto oracle = count_fiber_components(r.fragments, r.adjacency);
    std::map<std::vector<int>, int> nodes;
    for (const auto& n : r.jcn.nodes()) ++nodes[n.tuple];
    int mismatches = 0;
    std::printf("tuple oracle jcn\n");
    for (const auto& [tuple, count] : oracle) {
      const int jc = nodes.count(tuple) ? nodes.at(tuple) : 0;
      mismatches += jc != count;
      std::printf("%s %d %d\n", format_tuple(tuple).c_str(), count, jc);
    }
    std::printf("mismatches %d\n", mismatches);
    return mismatches == 0 ? 0 : 1;
  } else if (command == "stats") {
    const auto r = run_pipeline(c, Stage::Simplify);
    std::ostringstream os;
    print_stats(os, r.stats);
    std::fputs(os.str().c_str(), stdout);
  }
  return 0;
}

void init_logging() {
  auto logger = spdlog::stderr_logger_mt("reebskel");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  const char* env = std::getenv("REEBSKEL_LOG_LEVEL");
  spdlog::set_level(env ? spdlog::level::from_str(env) : spdlog::level::warn);
}

}  // namespace

int main(int argc, char** argv) {
  init_logging();
  CLI::App app{"Reeb space approximation through joint contour nets"};
  app.require_subcommand(1);
  Flags flags;
  std::map<std::string, Options> options;

  auto* gen = app.add_subcommand("generate", "sample synthetic fields into a field file");
  options["generate"] = add_common(gen, flags, true);
  gen->add_option("--output", flags.field_file, "field file to write")->required();
  const std::vector<std::pair<const char*, const char*>> stages{
      {"jcn", "build the joint contour net"},
      {"mdrg", "build the multi-dimensional Reeb graph and Jacobi Structure"},
      {"skeleton", "build the Reeb skeleton"},
      {"simplify", "simplify the Reeb skeleton by pruning lips"},
      {"oracle", "compare JCN node counts per tuple with a flood fill"},
      {"stats", "run every stage and print a statistics table"}};
  for (const auto& [name, help] : stages) options[name] = add_common(app.add_subcommand(name, help), flags, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    return run(command, flags, options[command]);
  } catch (const ConfigError& e) {
    // Diagnostics bypass the logger so that a quiet log level cannot hide them.
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  } catch (const InputError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInput;
  } catch (const std::filesystem::filesystem_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInput;
  }
}
