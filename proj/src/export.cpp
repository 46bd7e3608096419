#include "reebskel/export.hpp"

#include <algorithm>
#include <cstdio>

#include "json.hpp"

namespace reebskel {

using nlohmann::ordered_json;

std::string format_tuple(std::span<const int> tuple) {
  std::string out;
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(tuple[i]);
  }
  return out;
}

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

namespace {

const char* kind_name(ComponentKind k) { return k == ComponentKind::Regular ? "regular" : "singular"; }

void graphml_header(std::ostream& os, const std::vector<std::pair<std::string, std::string>>& node_keys,
                    const std::vector<std::pair<std::string, std::string>>& edge_keys) {
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n";
  for (const auto& [name, type] : node_keys)
    os << "  <key id=\"" << name << "\" for=\"node\" attr.name=\"" << name << "\" attr.type=\"" << type
       << "\"/>\n";
  for (const auto& [name, type] : edge_keys)
    os << "  <key id=\"" << name << "\" for=\"edge\" attr.name=\"" << name << "\" attr.type=\"" << type
       << "\"/>\n";
  os << "  <graph id=\"G\" edgedefault=\"undirected\">\n";
}

void graphml_footer(std::ostream& os) { os << "  </graph>\n</graphml>\n"; }

}  // namespace

void write_jcn_dot(std::ostream& os, const JointContourNet& jcn) {
  os << "graph jcn {\n";
  for (NodeId n = 0; n < jcn.node_count(); ++n) {
    const auto& node = jcn.node(n);
    os << "  n" << n << " [label=\"" << format_tuple(node.tuple) << "\", tuple=\"" << format_tuple(node.tuple)
       << "\", volume=" << format_real(node.volume) << ", fragments=" << node.fragments.size() << "];\n";
  }
  for (const auto& e : jcn.edges())
    os << "  n" << e.a << " -- n" << e.b << " [area=" << format_real(e.area) << "];\n";
  os << "}\n";
}

void write_jcn_graphml(std::ostream& os, const JointContourNet& jcn) {
  graphml_header(os, {{"tuple", "string"}, {"volume", "double"}, {"fragments", "int"}}, {{"area", "double"}});
  for (NodeId n = 0; n < jcn.node_count(); ++n) {
    const auto& node = jcn.node(n);
    os << "    <node id=\"n" << n << "\"><data key=\"tuple\">" << format_tuple(node.tuple)
       << "</data><data key=\"volume\">" << format_real(node.volume) << "</data><data key=\"fragments\">"
       << node.fragments.size() << "</data></node>\n";
  }
  for (std::size_t i = 0; i < jcn.edges().size(); ++i) {
    const auto& e = jcn.edges()[i];
    os << "    <edge id=\"e" << i << "\" source=\"n" << e.a << "\" target=\"n" << e.b << "\"><data key=\"area\">"
       << format_real(e.area) << "</data></edge>\n";
  }
  graphml_footer(os);
}

void write_reeb_graph_dot(std::ostream& os, const QReebGraph& g, std::span<const char> critical) {
  os << "graph qreeb_f" << g.field << " {\n";
  for (int n = 0; n < g.node_count(); ++n) {
    os << "  n" << n << " [label=\"" << g.value[n] << "\", members=" << g.members[n].size();
    if (!critical.empty()) os << ", critical=" << (critical[n] ? 1 : 0) << (critical[n] ? ", color=red" : "");
    os << "];\n";
  }
  for (const auto& [a, b] : g.edges) os << "  n" << a << " -- n" << b << ";\n";
  os << "}\n";
}

void write_skeleton_dot(std::ostream& os, const ReebSkeleton& s) {
  os << "graph skeleton {\n";
  for (std::size_t i = 0; i < s.nodes.size(); ++i) {
    const auto& n = s.nodes[i];
    if (!n.alive) continue;
    const bool regular = n.kind == ComponentKind::Regular;
    os << "  c" << i << " [kind=" << kind_name(n.kind) << ", color=" << (regular ? "blue" : "red")
       << ", shape=" << (regular ? "ellipse" : "box") << ", size=" << n.members.size()
       << ", range=" << n.measures.range << ", volume=" << format_real(n.measures.volume)
       << ", surface_area=" << format_real(n.measures.surface_area) << "];\n";
  }
  for (const auto& [a, b] : s.edges()) os << "  c" << a << " -- c" << b << ";\n";
  os << "}\n";
}

void write_skeleton_graphml(std::ostream& os, const ReebSkeleton& s) {
  graphml_header(os,
                 {{"kind", "string"},
                  {"color", "string"},
                  {"size", "int"},
                  {"range", "long"},
                  {"volume", "double"},
                  {"surface_area", "double"}},
                 {});
  for (std::size_t i = 0; i < s.nodes.size(); ++i) {
    const auto& n = s.nodes[i];
    if (!n.alive) continue;
    os << "    <node id=\"c" << i << "\"><data key=\"kind\">" << kind_name(n.kind) << "</data><data key=\"color\">"
       << (n.kind == ComponentKind::Regular ? "blue" : "red") << "</data><data key=\"size\">" << n.members.size()
       << "</data><data key=\"range\">" << n.measures.range << "</data><data key=\"volume\">"
       << format_real(n.measures.volume) << "</data><data key=\"surface_area\">"
       << format_real(n.measures.surface_area) << "</data></node>\n";
  }
  int id = 0;
  for (const auto& [a, b] : s.edges())
    os << "    <edge id=\"e" << id++ << "\" source=\"c" << a << "\" target=\"c" << b << "\"/>\n";
  graphml_footer(os);
}

void write_mdrg_json(std::ostream& os, const Mdrg& mdrg) {
  ordered_json root;
  root["field_order"] = mdrg.field_order;
  root["union_find_operations"] = mdrg.union_find_operations;
  ordered_json graphs = ordered_json::array();
  for (const auto& g : mdrg.graphs) {
    ordered_json jg;
    jg["depth"] = g.depth;
    jg["field"] = g.graph.field;
    jg["parent_graph"] = g.parent_graph;
    jg["parent_node"] = g.parent_node;
    ordered_json nodes = ordered_json::array();
    for (int n = 0; n < g.graph.node_count(); ++n)
      nodes.push_back({{"value", g.graph.value[n]},
                       {"members", g.graph.members[n]},
                       {"critical", static_cast<bool>(g.critical[n])},
                       {"child", g.child[n]}});
    jg["nodes"] = std::move(nodes);
    ordered_json edges = ordered_json::array();
    for (const auto& [a, b] : g.graph.edges) edges.push_back({a, b});
    jg["edges"] = std::move(edges);
    graphs.push_back(std::move(jg));
  }
  root["graphs"] = std::move(graphs);
  os << root.dump(1) << '\n';
}

void write_components_json(std::ostream& os, const ReebSkeleton& s, const JointContourNet& jcn) {
  ordered_json list = ordered_json::array();
  for (std::size_t i = 0; i < s.nodes.size(); ++i) {
    const auto& n = s.nodes[i];
    if (!n.alive) continue;
    std::vector<int> lo(jcn.field_count(), 0), hi(jcn.field_count(), 0);
    for (std::size_t k = 0; k < n.members.size(); ++k) {
      const auto& t = jcn.node(n.members[k]).tuple;
      for (int f = 0; f < jcn.field_count(); ++f) {
        lo[f] = k ? std::min(lo[f], t[f]) : t[f];
        hi[f] = k ? std::max(hi[f], t[f]) : t[f];
      }
    }
    list.push_back({{"id", i},
                    {"kind", kind_name(n.kind)},
                    {"size", n.members.size()},
                    {"range", n.measures.range},
                    {"volume", n.measures.volume},
                    {"surface_area", n.measures.surface_area},
                    {"tuple_min", lo},
                    {"tuple_max", hi},
                    {"adjacent", s.adjacency[i]}});
  }
  os << list.dump(1) << '\n';
}

void write_journal_json(std::ostream& os, const ReebSkeleton& s, MeasureKind kind) {
  ordered_json root;
  root["measure"] = std::string(measure_kind_name(kind));
  ordered_json steps = ordered_json::array();
  for (const auto& p : s.journal)
    steps.push_back({{"step", p.step},
                     {"node", p.node},
                     {"measure", p.measure},
                     {"absorbed", p.absorbed},
                     {"attachment", p.attachment},
                     {"merged_into", p.merged_into}});
  root["steps"] = std::move(steps);
  os << root.dump(1) << '\n';
}

}  // namespace reebskel
