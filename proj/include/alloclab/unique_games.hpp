#pragma once

#include "alloclab/function_table.hpp"
#include "alloclab/point.hpp"
#include "alloclab/rational.hpp"

#include <json.hpp>

#include <cstdint>
#include <vector>

namespace alloclab {

// One constraint edge: pi maps a-side labels to b-side labels, so the edge
// is satisfied when pi(label(a)) == label(b). The reverse direction is the
// inverse, taken on demand.
struct UgEdge {
    int a = 0;
    int b = 0;
    Permutation pi;
};

// A biregular bipartite unique-games instance over label set {1,...,R}.
class UgInstance {
public:
    UgInstance(int a_nodes, int b_nodes, int labels, std::vector<UgEdge> edges);

    int a_nodes() const { return a_nodes_; }
    int b_nodes() const { return b_nodes_; }
    int labels() const { return labels_; }
    int degree_a() const { return degree_a_; }
    int degree_b() const { return degree_b_; }
    const std::vector<UgEdge>& edges() const { return edges_; }
    const std::vector<int>& edges_of_a(int a) const { return by_a_.at(static_cast<std::size_t>(a)); }
    const std::vector<int>& edges_of_b(int b) const { return by_b_.at(static_cast<std::size_t>(b)); }

    nlohmann::json to_json() const;
    static UgInstance from_json(const nlohmann::json& j);

private:
    int a_nodes_, b_nodes_, labels_;
    int degree_a_ = 0, degree_b_ = 0;
    std::vector<UgEdge> edges_;
    std::vector<std::vector<int>> by_a_, by_b_;  // incident edge indices
};

// Labels in {1,...,R}, one per node, A side then B side.
struct Labeling {
    std::vector<int> a_labels;
    std::vector<int> b_labels;

    nlohmann::json to_json() const;
    static Labeling from_json(const nlohmann::json& j, int a_nodes, int b_nodes);
};

// Exact fraction of satisfied edges.
Rational satisfaction(const UgInstance& inst, const Labeling& labeling);

// A fully satisfiable instance: biregular simple graph, a random labeling,
// and per-edge permutations random subject to pi(label(a)) == label(b).
struct PlantedInstance {
    UgInstance instance;
    Labeling labeling;
};

PlantedInstance planted_instance(int a_nodes, int b_nodes, int degree_b, int labels,
                                 std::uint64_t seed);

// f_a = 1{x_{label(a)} > 0} for every a, over alphabet q+1.
std::vector<FunctionTable> dictator_functions(const UgInstance& inst, const Labeling& labeling, int q);

// f_b(x) = average over incident edges of f_a(x o pi_{a,b}).
FunctionTable side_b_function(const UgInstance& inst, const std::vector<FunctionTable>& fa, int b);

// The influence decoder: each b takes the smallest coordinate whose
// degree-d influence of f_b exceeds tau; each a draws uniformly from the
// coordinates with degree-d influence at least tau/2. Nodes with empty
// candidate sets get label 1.
Labeling decode_labeling(const UgInstance& inst, const std::vector<FunctionTable>& fa, int d,
                         const Rational& tau, std::uint64_t seed);

// Candidate set sizes |{i : Inf_i^{<=d}(f_a) >= tau/2}| per a-node.
std::vector<int> decoder_candidate_counts(const UgInstance& inst,
                                          const std::vector<FunctionTable>& fa, int d,
                                          const Rational& tau);

}  // namespace alloclab
