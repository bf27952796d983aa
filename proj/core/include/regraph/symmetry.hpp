#pragma once

#include <compare>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "regraph/graph.hpp"

namespace regraph {

using BigInt = boost::multiprecision::cpp_int;

// Relabeling-invariant certificate: the graph6 string of the canonically
// labeled graph. Equal certificates <=> isomorphic graphs.
struct CanonicalForm {
    std::string bytes;

    friend auto operator<=>(const CanonicalForm&, const CanonicalForm&) = default;
};

struct SymmetryResult {
    BigInt order;                             // |Aut(G)|, exact
    std::vector<std::vector<int>> generators; // image arrays
    std::vector<std::vector<int>> orbits;     // sorted by least member
    bool vertex_transitive = false;
    bool edge_transitive = false;
};

// Supported size range for canonical labeling and group computation.
inline constexpr int kMaxSymmetryVertices = 64;

// Throws TooLargeError beyond kMaxSymmetryVertices.
CanonicalForm canonical_form(const Graph& g);

// Automorphism group via individualization-refinement searches along a
// stabilizer chain; order is the exact product of chain orbit sizes.
SymmetryResult automorphisms(const Graph& g);

bool is_isomorphic(const Graph& g, const Graph& h);

}  // namespace regraph
