#pragma once

#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

#include "block_operator.hpp"
#include "ensemble.hpp"

namespace macrospin {

// One node of the compatibility graph: the projector P_outcome(direction).
struct ObservableId {
    std::size_t direction_index; // into the direction list the graph was built from
    Direction direction;
    HalfInt outcome;
};

struct CompatibilityGraph {
    std::vector<ObservableId> nodes;
    std::set<std::pair<std::size_t, std::size_t>> edges; // (u,v) with u < v
    double tolerance = 0.0;

    bool has_edge(std::size_t u, std::size_t v) const
    {
        if (u > v) std::swap(u, v);
        return edges.count({u, v}) > 0;
    }
};

// A context in the paper's minimal form: A commutes with both B and C,
// while B and C do not commute.
struct ContextTriple {
    std::size_t a, b, c; // node indices, b < c
    bool operator==(const ContextTriple&) const = default;
};

// Default edge tolerance: 1e-10 per unit of block dimension.
inline double default_edge_tolerance(const EnsembleSpec& spec)
{
    long long block_dim = 0;
    for (const auto& [j, lambda] : spec.table().entries) block_dim += j.twice() + 1;
    return 1e-10 * static_cast<double>(block_dim);
}

// Builds the compatibility graph over all (direction, outcome) projectors.
// Edges are decided from block-representation commutator norms after
// reducing each direction pair to its canonical polar angle
// beta = arccos(n . n'); pairs sharing an axis (beta = 0 or pi) share an
// eigenbasis and are connected outright.
inline CompatibilityGraph compatibility_graph(const EnsembleSpec& spec,
                                              const std::vector<Direction>& directions,
                                              double tol)
{
    if (directions.empty())
        throw std::invalid_argument("compatibility_graph: no directions");

    CompatibilityGraph graph;
    graph.tolerance = tol;
    for (std::size_t d = 0; d < directions.size(); ++d)
        for (HalfInt m : spec.outcomes())
            graph.nodes.push_back({d, directions[d], m});

    // commutator norms depend on the pair (m, m') and the angle only;
    // cache per direction pair
    std::map<std::pair<std::size_t, std::size_t>, double> angle_cache;
    auto angle_of = [&](std::size_t d1, std::size_t d2) {
        auto key = std::minmax(d1, d2);
        auto it = angle_cache.find(key);
        if (it == angle_cache.end())
            it = angle_cache.emplace(key, directions[d1].angle_to(directions[d2])).first;
        return it->second;
    };

    for (std::size_t u = 0; u < graph.nodes.size(); ++u) {
        for (std::size_t v = u + 1; v < graph.nodes.size(); ++v) {
            const auto& a = graph.nodes[u];
            const auto& b = graph.nodes[v];
            double norm;
            if (a.direction_index == b.direction_index) {
                norm = 0.0; // same eigenbasis
            } else {
                double beta = angle_of(a.direction_index, b.direction_index);
                if (beta < 1e-12 || beta > M_PI - 1e-12) {
                    norm = 0.0; // parallel or antiparallel axes
                } else {
                    norm = commutator_norm(spec, a.outcome, b.outcome, beta);
                }
            }
            if (norm <= tol) graph.edges.insert({u, v});
        }
    }
    return graph;
}

inline CompatibilityGraph compatibility_graph(const EnsembleSpec& spec,
                                              const std::vector<Direction>& directions)
{
    return compatibility_graph(spec, directions, default_edge_tolerance(spec));
}

// All triples (A; B, C) with edges (A,B), (A,C) present and (B,C) absent,
// in lexicographic (a, b, c) order with b < c.
inline std::vector<ContextTriple> find_contexts(const CompatibilityGraph& graph)
{
    std::vector<ContextTriple> out;
    const std::size_t n = graph.nodes.size();
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            if (b == a || !graph.has_edge(a, b)) continue;
            for (std::size_t c = b + 1; c < n; ++c) {
                if (c == a || !graph.has_edge(a, c)) continue;
                if (!graph.has_edge(b, c)) out.push_back({a, b, c});
            }
        }
    return out;
}

// Raw commutator-norm data for [P_m(z), P_m'(n_beta)] over a beta grid,
// block path; no smoothing.
inline std::vector<std::pair<double, double>> theorem_scan(const EnsembleSpec& spec,
                                                           HalfInt m, HalfInt m_prime,
                                                           const std::vector<double>& beta_grid)
{
    if (!spec.valid_outcome(m) || !spec.valid_outcome(m_prime))
        throw std::invalid_argument("theorem_scan: invalid outcome labels");
    std::vector<std::pair<double, double>> out;
    out.reserve(beta_grid.size());
    for (double beta : beta_grid)
        out.emplace_back(beta, commutator_norm(spec, m, m_prime, beta));
    return out;
}

} // namespace macrospin
