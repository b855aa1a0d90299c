#pragma once

#include <iosfwd>
#include <string>

#include "eonsim/graph.hpp"

namespace eonsim {

// Line-oriented text format, '#' starts a comment:
//   graph <node-count> <slice-count>
//   node <id> <x> <y>
//   link <ext-id> <u> <v> <cost> <slice-set>
// Node ids must be dense 0..n-1; link ext-ids must be unique. Coordinates
// round-trip exactly; slice sets use the "1-2,5,7-9" form ("-" = empty).
Graph load_graph(std::istream& in);
void save_graph(const Graph& g, std::ostream& out);

Graph load_graph_file(const std::string& path);
void save_graph_file(const Graph& g, const std::string& path);

}  // namespace eonsim
