#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <unordered_map>
#include <vector>

#include "pptlab/action.hpp"

namespace pptlab {

/// Finite neighborhood of a Bass-Serre / Cayley tree built by coset
/// enumeration. Vertex identity is decided algebraically (canonical coset
/// keys); distances come from plain BFS, independent of any normal-form
/// machinery. Immutable once built.
struct CosetGraph {
    ActionHandle action;
    int depth = 0;
    int root = 0;
    std::vector<std::string> key;          // vertex id -> canonical coset key
    std::vector<GroupElement> rep;         // representative traced by the BFS word
    std::vector<std::string> label;        // lexicographically least BFS edge word
    std::vector<int> dist;                 // exact tree distance to the root
    std::vector<std::vector<int>> adj;
    std::unordered_map<std::string, int> id;

    int64_t vertex_count() const { return static_cast<int64_t>(key.size()); }
};

/// Full degree of interior vertices: 3 for the lamplighter trees,
/// n+1 for the BS(1,n) tree, 2*rank for free Cayley trees.
int expected_degree(const ActionHandle& action);

CosetGraph build_coset_graph(const ActionHandle& action, int depth,
                             int64_t budget = 4'000'000);

/// BFS distance from the root to the vertex g.basepoint, or nullopt when that
/// vertex lies outside the explored depth.
std::optional<int64_t> oracle_distance(const CosetGraph& graph, const GroupElement& g);

/// One line per edge: "<id>,<id>,<label>,<label>".
void write_edge_list(const CosetGraph& graph, std::ostream& os);

}  // namespace pptlab
