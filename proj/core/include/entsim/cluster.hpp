#pragma once

#include <utility>
#include <vector>

#include "entsim/statevec.hpp"

namespace entsim {

// Simple undirected graph: no self-loops, no duplicate edges. Edges are kept
// in canonical order (smaller endpoint first, sorted), so states built from
// equal edge sets are bit-identical regardless of insertion order.
class Graph {
  public:
    Graph(int vertex_count, const std::vector<std::pair<int, int>>& edges);

    static Graph path(int length);

    int vertex_count() const { return vertex_count_; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    bool has_edge(int a, int b) const;
    std::vector<int> neighbors(int v) const;

    // Deletes v and its incident edges; vertices above v shift down by one,
    // matching statevec qubit removal.
    Graph without_vertex(int v) const;

  private:
    int vertex_count_;
    std::vector<std::pair<int, int>> edges_;
};

// |+>^n with one CZ per edge.
PureState graph_state(const Graph& g);

// Graph state of the path 0-1-...-(m-1).
PureState linear_cluster(int m);

struct ZRemoval {
    MeasurementOutcome outcome;
    Graph graph; // vertex-deleted, reindexed
};

// Measures qubit q of a graph state in Z and removes it from the cluster.
// On outcome s=1 a Pauli Z lands on every former neighbor, so the posterior
// is the graph state of the vertex-deleted graph on every branch.
ZRemoval remove_qubit_z(const PureState& state, const Graph& g, int q, OutcomeMode mode);

// Expectation of every stabilizer generator K_j = X_j prod_{k in N(j)} Z_k;
// all are +1 exactly on graph_state(g).
std::vector<std::pair<int, double>> stabilizer_check(const PureState& state, const Graph& g);

} // namespace entsim
