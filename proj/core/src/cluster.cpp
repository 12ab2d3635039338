#include "entsim/cluster.hpp"

#include <algorithm>
#include <string>

namespace entsim {

Graph::Graph(int vertex_count, const std::vector<std::pair<int, int>>& edges)
    : vertex_count_(vertex_count) {
    if (vertex_count < 1) throw std::invalid_argument("graph needs at least one vertex");
    edges_.reserve(edges.size());
    for (auto [a, b] : edges) {
        if (a == b) throw std::invalid_argument("self-loop on vertex " + std::to_string(a));
        if (a < 0 || b < 0 || a >= vertex_count || b >= vertex_count) {
            throw std::invalid_argument("edge (" + std::to_string(a) + ", " + std::to_string(b) +
                                        ") leaves the vertex range");
        }
        edges_.emplace_back(std::min(a, b), std::max(a, b));
    }
    std::sort(edges_.begin(), edges_.end());
    if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end()) {
        throw std::invalid_argument("duplicate edge");
    }
}

Graph Graph::path(int length) {
    std::vector<std::pair<int, int>> edges;
    for (int v = 0; v + 1 < length; ++v) edges.emplace_back(v, v + 1);
    return Graph(length, edges);
}

bool Graph::has_edge(int a, int b) const {
    auto key = std::make_pair(std::min(a, b), std::max(a, b));
    return std::binary_search(edges_.begin(), edges_.end(), key);
}

std::vector<int> Graph::neighbors(int v) const {
    std::vector<int> out;
    for (auto [a, b] : edges_) {
        if (a == v) out.push_back(b);
        if (b == v) out.push_back(a);
    }
    std::sort(out.begin(), out.end());
    return out;
}

Graph Graph::without_vertex(int v) const {
    if (v < 0 || v >= vertex_count_) throw std::invalid_argument("no such vertex");
    if (vertex_count_ == 1) throw std::invalid_argument("cannot delete the last vertex");
    std::vector<std::pair<int, int>> kept;
    for (auto [a, b] : edges_) {
        if (a == v || b == v) continue;
        kept.emplace_back(a > v ? a - 1 : a, b > v ? b - 1 : b);
    }
    return Graph(vertex_count_ - 1, kept);
}

PureState graph_state(const Graph& g) {
    PureState state = plus_state(g.vertex_count());
    for (auto [a, b] : g.edges()) state.apply_cz(a, b);
    return state;
}

PureState linear_cluster(int m) {
    if (m < 1 || m > kMaxQubits) {
        throw CapacityError("linear_cluster: length " + std::to_string(m) + " outside [1, " +
                            std::to_string(kMaxQubits) + "]");
    }
    return graph_state(Graph::path(m));
}

ZRemoval remove_qubit_z(const PureState& state, const Graph& g, int q, OutcomeMode mode) {
    if (state.qubit_count() != g.vertex_count()) {
        throw std::invalid_argument("state size does not match graph");
    }
    if (q < 0 || q >= g.vertex_count()) throw std::invalid_argument("no such vertex");

    MeasurementOutcome outcome = measure_z(state, q, mode);
    if (outcome.s == 1) {
        // Z on every former neighbor folds the measured qubit's phase back
        // into the cluster; indices above q already shifted down by one.
        for (int nb : g.neighbors(q)) {
            outcome.posterior.apply_pauli(nb > q ? nb - 1 : nb, Pauli::Z);
        }
    }
    return ZRemoval{std::move(outcome), g.without_vertex(q)};
}

std::vector<std::pair<int, double>> stabilizer_check(const PureState& state, const Graph& g) {
    if (state.qubit_count() != g.vertex_count()) {
        throw std::invalid_argument("state size does not match graph");
    }
    std::vector<std::pair<int, double>> report;
    report.reserve(g.vertex_count());
    for (int v = 0; v < g.vertex_count(); ++v) {
        std::vector<Pauli> ops(g.vertex_count(), Pauli::I);
        ops[v] = Pauli::X;
        for (int nb : g.neighbors(v)) ops[nb] = Pauli::Z;
        report.emplace_back(v, expect_pauli_string(state, ops));
    }
    return report;
}

} // namespace entsim
