#include "eonsim/graph_io.hpp"

#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace eonsim {

namespace {

[[noreturn]] void fail(size_t line, const std::string& what) {
  throw std::runtime_error("graph file, line " + std::to_string(line) + ": " + what);
}

}  // namespace

Graph load_graph(std::istream& in) {
  std::string raw;
  size_t lineno = 0;
  bool have_header = false;
  uint32_t node_count = 0, slice_count = 0;
  uint32_t nodes_seen = 0;
  Graph g(0);
  std::vector<char> node_defined;
  std::unordered_set<uint64_t> ext_seen;

  while (std::getline(in, raw)) {
    ++lineno;
    const size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    std::string kind;
    if (!(ls >> kind)) continue;

    if (kind == "graph") {
      if (have_header) fail(lineno, "duplicate header");
      if (!(ls >> node_count >> slice_count)) fail(lineno, "expected 'graph <nodes> <slices>'");
      g = Graph(slice_count);
      for (uint32_t i = 0; i < node_count; ++i) g.add_node();
      node_defined.assign(node_count, 0);
      have_header = true;
      continue;
    }
    if (!have_header) fail(lineno, "header line must come first");

    if (kind == "node") {
      uint32_t id;
      double x, y;
      if (!(ls >> id >> x >> y)) fail(lineno, "expected 'node <id> <x> <y>'");
      if (id >= node_count) fail(lineno, "node id out of range");
      if (node_defined[id]) fail(lineno, "duplicate node id");
      node_defined[id] = 1;
      ++nodes_seen;
      g.set_node(id, x, y);
    } else if (kind == "link") {
      uint64_t ext;
      uint32_t u, v;
      Cost cost;
      std::string slices;
      if (!(ls >> ext >> u >> v >> cost >> slices))
        fail(lineno, "expected 'link <ext> <u> <v> <cost> <slice-set>'");
      if (u >= node_count || v >= node_count) fail(lineno, "link endpoint out of range");
      if (cost < 0) fail(lineno, "negative link cost");
      if (!ext_seen.insert(ext).second) fail(lineno, "duplicate link id");
      SliceSet pool;
      try {
        pool = SliceSet::parse(slices, slice_count);
      } catch (const std::invalid_argument& e) {
        fail(lineno, e.what());
      }
      const LinkId l = g.add_link(u, v, cost, std::move(pool));
      g.set_link_ext(l, ext);
    } else {
      fail(lineno, "unknown directive '" + kind + "'");
    }
    std::string extra;
    if (ls >> extra) fail(lineno, "trailing tokens");
  }
  if (!have_header) throw std::runtime_error("graph file: missing header");
  if (nodes_seen != node_count)
    throw std::runtime_error("graph file: " + std::to_string(node_count - nodes_seen) +
                             " node(s) missing coordinates");
  return g;
}

void save_graph(const Graph& g, std::ostream& out) {
  if (!g.arc_paired())
    throw std::logic_error("save_graph: graph contains unpaired arcs");
  out << "graph " << g.num_nodes() << ' ' << g.slice_count() << '\n';
  out << std::setprecision(17);
  for (uint32_t v = 0; v < g.num_nodes(); ++v) {
    const Node& n = g.node(v);
    out << "node " << v << ' ' << n.x << ' ' << n.y << '\n';
  }
  for (uint32_t l = 0; l < g.num_links(); ++l) {
    const Link& lk = g.link(l);
    out << "link " << lk.ext << ' ' << lk.u << ' ' << lk.v << ' ' << lk.cost << ' '
        << lk.available.to_string() << '\n';
  }
}

Graph load_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open graph file: " + path);
  return load_graph(in);
}

void save_graph_file(const Graph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write graph file: " + path);
  save_graph(g, out);
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace eonsim
