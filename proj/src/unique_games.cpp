#include "alloclab/unique_games.hpp"

#include "alloclab/efron_stein.hpp"
#include "alloclab/errors.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

namespace alloclab {

UgInstance::UgInstance(int a_nodes, int b_nodes, int labels, std::vector<UgEdge> edges)
    : a_nodes_(a_nodes), b_nodes_(b_nodes), labels_(labels), edges_(std::move(edges)) {
    if (a_nodes_ < 1 || b_nodes_ < 1) throw InvalidParameterError("node counts must be positive");
    if (labels_ < 1) throw InvalidParameterError("label count must be positive");
    if (edges_.empty()) throw InvalidParameterError("instance needs at least one edge");
    by_a_.resize(static_cast<std::size_t>(a_nodes_));
    by_b_.resize(static_cast<std::size_t>(b_nodes_));
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        const auto& edge = edges_[e];
        if (edge.a < 0 || edge.a >= a_nodes_ || edge.b < 0 || edge.b >= b_nodes_)
            throw InvalidParameterError("edge endpoint out of range");
        if (edge.pi.size() != labels_) throw DimensionError("edge permutation size must equal the label count");
        by_a_[static_cast<std::size_t>(edge.a)].push_back(static_cast<int>(e));
        by_b_[static_cast<std::size_t>(edge.b)].push_back(static_cast<int>(e));
    }
    degree_a_ = static_cast<int>(by_a_.front().size());
    degree_b_ = static_cast<int>(by_b_.front().size());
    for (const auto& inc : by_a_)
        if (static_cast<int>(inc.size()) != degree_a_)
            throw InvalidParameterError("graph is not left-regular");
    for (const auto& inc : by_b_)
        if (static_cast<int>(inc.size()) != degree_b_)
            throw InvalidParameterError("graph is not right-regular");
}

Rational satisfaction(const UgInstance& inst, const Labeling& labeling) {
    if (static_cast<int>(labeling.a_labels.size()) != inst.a_nodes() ||
        static_cast<int>(labeling.b_labels.size()) != inst.b_nodes())
        throw DimensionError("labeling must cover all nodes");
    std::size_t satisfied = 0;
    for (const auto& edge : inst.edges()) {
        const int la = labeling.a_labels[static_cast<std::size_t>(edge.a)];
        const int lb = labeling.b_labels[static_cast<std::size_t>(edge.b)];
        if (la < 1 || la > inst.labels() || lb < 1 || lb > inst.labels())
            throw InvalidParameterError("label out of range");
        if (edge.pi.apply(la) == lb) ++satisfied;
    }
    return Rational(BigInt(satisfied), BigInt(inst.edges().size()));
}

PlantedInstance planted_instance(int a_nodes, int b_nodes, int degree_b, int labels,
                                 std::uint64_t seed) {
    if (a_nodes < 1 || b_nodes < 1 || degree_b < 1 || labels < 1)
        throw InvalidParameterError("planted instance parameters must be positive");
    const std::size_t edge_count = static_cast<std::size_t>(b_nodes) * static_cast<std::size_t>(degree_b);
    if (edge_count % static_cast<std::size_t>(a_nodes) != 0)
        throw InvalidParameterError("|B| * degree_b must be divisible by |A| for a biregular graph");
    const int degree_a = static_cast<int>(edge_count / static_cast<std::size_t>(a_nodes));
    if (degree_b > a_nodes || degree_a > b_nodes)
        throw InvalidParameterError("degrees too large for a simple biregular graph");

    std::mt19937_64 rng(seed);

    // stub matching with rejection; deterministic block layout as fallback
    std::vector<int> a_stubs(edge_count), b_stubs(edge_count);
    for (std::size_t e = 0; e < edge_count; ++e) {
        a_stubs[e] = static_cast<int>(e / static_cast<std::size_t>(degree_a));
        b_stubs[e] = static_cast<int>(e / static_cast<std::size_t>(degree_b));
    }
    bool simple = false;
    for (int attempt = 0; attempt < 1000 && !simple; ++attempt) {
        for (std::size_t i = edge_count; i > 1; --i)
            std::swap(a_stubs[i - 1], a_stubs[bounded_draw(rng, i)]);
        std::set<std::pair<int, int>> seen;
        simple = true;
        for (std::size_t e = 0; e < edge_count; ++e)
            if (!seen.emplace(a_stubs[e], b_stubs[e]).second) {
                simple = false;
                break;
            }
    }
    if (!simple) {
        // consecutive residues mod |B| per a-node; distinct since degree_a <= |B|
        std::size_t e = 0;
        for (int a = 0; a < a_nodes; ++a)
            for (int t = 0; t < degree_a; ++t, ++e) {
                a_stubs[e] = a;
                b_stubs[e] = static_cast<int>((static_cast<std::size_t>(a) * degree_a + t) %
                                              static_cast<std::size_t>(b_nodes));
            }
    }

    Labeling labeling;
    labeling.a_labels.resize(static_cast<std::size_t>(a_nodes));
    labeling.b_labels.resize(static_cast<std::size_t>(b_nodes));
    for (auto& l : labeling.a_labels) l = static_cast<int>(bounded_draw(rng, static_cast<std::uint64_t>(labels))) + 1;
    for (auto& l : labeling.b_labels) l = static_cast<int>(bounded_draw(rng, static_cast<std::uint64_t>(labels))) + 1;

    std::vector<UgEdge> edges;
    edges.reserve(edge_count);
    for (std::size_t e = 0; e < edge_count; ++e) {
        const int a = a_stubs[e];
        const int b = b_stubs[e];
        Permutation pi = Permutation::random(labels, rng);
        const int la = labeling.a_labels[static_cast<std::size_t>(a)];
        const int lb = labeling.b_labels[static_cast<std::size_t>(b)];
        if (pi.apply(la) != lb) {
            // swap two images to pin pi(la) = lb
            auto images = pi.images_one_based();
            for (std::size_t j = 0; j < images.size(); ++j)
                if (images[j] == lb) {
                    std::swap(images[static_cast<std::size_t>(la - 1)], images[j]);
                    break;
                }
            pi = Permutation(std::move(images));
        }
        edges.push_back(UgEdge{a, b, std::move(pi)});
    }
    return PlantedInstance{UgInstance(a_nodes, b_nodes, labels, std::move(edges)), std::move(labeling)};
}

std::vector<FunctionTable> dictator_functions(const UgInstance& inst, const Labeling& labeling, int q) {
    std::vector<FunctionTable> fa;
    fa.reserve(static_cast<std::size_t>(inst.a_nodes()));
    for (int a = 0; a < inst.a_nodes(); ++a)
        fa.push_back(FunctionTable::dictator(inst.labels(),
                                             labeling.a_labels.at(static_cast<std::size_t>(a)), q));
    return fa;
}

FunctionTable side_b_function(const UgInstance& inst, const std::vector<FunctionTable>& fa, int b) {
    if (static_cast<int>(fa.size()) != inst.a_nodes())
        throw DimensionError("need one function per a-node");
    const auto& incident = inst.edges_of_b(b);
    std::vector<Rational> sum;
    for (int e : incident) {
        const auto& edge = inst.edges()[static_cast<std::size_t>(e)];
        const FunctionTable composed = fa[static_cast<std::size_t>(edge.a)].compose(edge.pi);
        if (sum.empty())
            sum = composed.values();
        else
            for (std::size_t c = 0; c < sum.size(); ++c) sum[c] += composed.value(c);
    }
    const Rational inv_deg(1, BigInt(incident.size()));
    for (auto& v : sum) v *= inv_deg;
    return FunctionTable(fa.front().coordinates(), fa.front().q(), std::move(sum));
}

std::vector<int> decoder_candidate_counts(const UgInstance& inst,
                                          const std::vector<FunctionTable>& fa, int d,
                                          const Rational& tau) {
    std::vector<int> counts(static_cast<std::size_t>(inst.a_nodes()), 0);
    const Rational half_tau = tau / 2;
    for (int a = 0; a < inst.a_nodes(); ++a) {
        const auto prof = influence_profile(fa.at(static_cast<std::size_t>(a)), d);
        counts[static_cast<std::size_t>(a)] = prof.count_at_least(half_tau);
    }
    return counts;
}

Labeling decode_labeling(const UgInstance& inst, const std::vector<FunctionTable>& fa, int d,
                         const Rational& tau, std::uint64_t seed) {
    if (static_cast<int>(fa.size()) != inst.a_nodes())
        throw DimensionError("need one function per a-node");
    if (tau <= 0) throw InvalidParameterError("tau must be positive");
    std::mt19937_64 rng(seed);
    Labeling out;
    out.a_labels.resize(static_cast<std::size_t>(inst.a_nodes()), 1);
    out.b_labels.resize(static_cast<std::size_t>(inst.b_nodes()), 1);

    const Rational half_tau = tau / 2;
    for (int a = 0; a < inst.a_nodes(); ++a) {
        const auto prof = influence_profile(fa[static_cast<std::size_t>(a)], d);
        std::vector<int> cand;
        for (int i = 1; i <= inst.labels(); ++i)
            if (prof.inf_le(i) >= half_tau) cand.push_back(i);
        if (!cand.empty())
            out.a_labels[static_cast<std::size_t>(a)] =
                cand[bounded_draw(rng, cand.size())];
    }
    for (int b = 0; b < inst.b_nodes(); ++b) {
        const auto prof = influence_profile(side_b_function(inst, fa, b), d);
        for (int i = 1; i <= inst.labels(); ++i)
            if (prof.inf_le(i) > tau) {
                out.b_labels[static_cast<std::size_t>(b)] = i;  // smallest qualifying coordinate
                break;
            }
    }
    return out;
}

nlohmann::json UgInstance::to_json() const {
    nlohmann::json edges_json = nlohmann::json::array();
    for (const auto& edge : edges_)
        edges_json.push_back({{"a", edge.a}, {"b", edge.b}, {"perm", edge.pi.images_one_based()}});
    return nlohmann::json{{"R", labels_}, {"A", a_nodes_}, {"B", b_nodes_}, {"edges", edges_json}};
}

UgInstance UgInstance::from_json(const nlohmann::json& j) {
    try {
        std::vector<UgEdge> edges;
        for (const auto& je : j.at("edges"))
            edges.push_back(UgEdge{je.at("a").get<int>(), je.at("b").get<int>(),
                                   Permutation(je.at("perm").get<std::vector<int>>())});
        return UgInstance(j.at("A").get<int>(), j.at("B").get<int>(), j.at("R").get<int>(),
                          std::move(edges));
    } catch (const nlohmann::json::exception& e) {
        throw BadConfigError(std::string("malformed unique-games file: ") + e.what());
    }
}

nlohmann::json Labeling::to_json() const {
    nlohmann::json labels = nlohmann::json::array();
    for (int l : a_labels) labels.push_back(l);
    for (int l : b_labels) labels.push_back(l);
    return nlohmann::json{{"labels", labels}};
}

Labeling Labeling::from_json(const nlohmann::json& j, int a_nodes, int b_nodes) {
    try {
        const auto labels = j.at("labels").get<std::vector<int>>();
        if (static_cast<int>(labels.size()) != a_nodes + b_nodes)
            throw BadConfigError("labeling length must be |A| + |B|");
        Labeling out;
        out.a_labels.assign(labels.begin(), labels.begin() + a_nodes);
        out.b_labels.assign(labels.begin() + a_nodes, labels.end());
        return out;
    } catch (const nlohmann::json::exception& e) {
        throw BadConfigError(std::string("malformed labeling file: ") + e.what());
    }
}

}  // namespace alloclab
