#pragma once

#include <string>
#include <vector>

#include "regraph/graph.hpp"

namespace regraph {

// Standard graph6 codec (the format used by nauty's tools): 6-bit printable
// encoding of n followed by the upper triangle of the adjacency matrix in
// column order x(0,1), x(0,2), x(1,2), x(0,3), ... padded with zeros.
// Sizes 0..62 use the single byte n+63; sizes 63..258047 use the '~' prefix
// with three 6-bit digits.

std::string graph6_encode(const Graph& g);

// Accepts an optional ">>graph6<<" header prefix. Throws ParseError.
Graph graph6_decode(const std::string& line);

// Reads one graph per non-empty line; lines starting with '#' are skipped.
std::vector<Graph> graph6_read_file(const std::string& path);

void graph6_write_file(const std::string& path, const std::vector<Graph>& graphs);

}  // namespace regraph
