#include "alloclab/allocation.hpp"

#include "alloclab/errors.hpp"

#include <algorithm>
#include <set>

namespace alloclab {

void AllocationInstance::validate() const {
    if (n_agents < 1) throw InvalidParameterError("instance needs at least one agent");
    bool any_size = false;
    for (const auto& g : goods) {
        std::set<int> seen;
        for (const auto& [agent, value] : g.values) {
            if (agent < 0 || agent >= n_agents) throw InvalidParameterError("valuation names an unknown agent");
            if (!seen.insert(agent).second) throw InvalidParameterError("duplicate agent in valuation list");
            if (value < 0) throw InvalidParameterError("valuations must be nonnegative");
        }
        if (g.size) {
            any_size = true;
            if (*g.size < 0) throw InvalidParameterError("good sizes must be nonnegative");
        }
    }
    if (any_size && !capacities)
        throw InvalidParameterError("instances with good sizes need agent capacities");
    for (const auto& vec : {budgets, capacities}) {
        if (vec && static_cast<int>(vec->size()) != n_agents)
            throw DimensionError("per-agent vector length must equal the agent count");
    }
    if (groups) {
        std::vector<bool> seen(static_cast<std::size_t>(n_agents), false);
        for (const auto& group : *groups) {
            for (int a : group) {
                if (a < 0 || a >= n_agents) throw InvalidParameterError("group names an unknown agent");
                if (seen[static_cast<std::size_t>(a)]) throw InvalidParameterError("groups must be disjoint");
                seen[static_cast<std::size_t>(a)] = true;
            }
        }
        if (!std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }))
            throw InvalidParameterError("groups must cover every agent");
    }
}

Rational AllocationInstance::value_of(int agent, std::size_t good) const {
    for (const auto& [a, v] : goods.at(good).values)
        if (a == agent) return v;
    return Rational(0);
}

const char* objective_name(Objective obj) {
    switch (obj) {
        case Objective::nash: return "nash";
        case Objective::budgeted: return "budgeted";
        case Objective::usw_gap: return "usw_gap";
    }
    return "?";
}

Objective objective_from_name(const std::string& name) {
    if (name == "nash") return Objective::nash;
    if (name == "budgeted") return Objective::budgeted;
    if (name == "usw_gap") return Objective::usw_gap;
    throw BadConfigError("unknown objective '" + name + "'");
}

std::vector<Rational> agent_utilities(const AllocationInstance& inst, const Allocation& alloc) {
    if (alloc.assignment.size() != inst.goods.size())
        throw DimensionError("allocation length must equal the good count");
    std::vector<Rational> utility(static_cast<std::size_t>(inst.n_agents), Rational(0));
    for (std::size_t g = 0; g < alloc.assignment.size(); ++g) {
        const auto& holder = alloc.assignment[g];
        if (!holder) continue;
        if (*holder < 0 || *holder >= inst.n_agents)
            throw InvalidParameterError("allocation names an unknown agent");
        utility[static_cast<std::size_t>(*holder)] += inst.value_of(*holder, g);
    }
    return utility;
}

std::optional<Rational> evaluate_welfare(const AllocationInstance& inst, const Allocation& alloc,
                                         Objective obj) {
    const auto utility = agent_utilities(inst, alloc);
    switch (obj) {
        case Objective::nash: {
            Rational prod(1);
            for (const Rational& u : utility) prod *= u;
            return prod;
        }
        case Objective::budgeted: {
            if (!inst.budgets) throw InvalidParameterError("budgeted welfare needs agent budgets");
            Rational sum(0);
            for (int a = 0; a < inst.n_agents; ++a)
                sum += std::min((*inst.budgets)[static_cast<std::size_t>(a)], utility[static_cast<std::size_t>(a)]);
            return sum;
        }
        case Objective::usw_gap: {
            if (!inst.capacities) throw InvalidParameterError("GAP welfare needs agent capacities");
            std::vector<Rational> load(static_cast<std::size_t>(inst.n_agents), Rational(0));
            for (std::size_t g = 0; g < alloc.assignment.size(); ++g) {
                const auto& holder = alloc.assignment[g];
                if (!holder) continue;
                const auto& size = inst.goods[g].size;
                if (!size) throw InvalidParameterError("GAP welfare needs a size on every good");
                load[static_cast<std::size_t>(*holder)] += *size;
            }
            for (int a = 0; a < inst.n_agents; ++a)
                if (load[static_cast<std::size_t>(a)] > (*inst.capacities)[static_cast<std::size_t>(a)])
                    return std::nullopt;
            Rational sum(0);
            for (const Rational& u : utility) sum += u;
            return sum;
        }
    }
    return std::nullopt;
}

Family2Report validate_family2(const AllocationInstance& inst, const Rational& eps) {
    if (eps <= 0 || eps >= 1) throw InvalidParameterError("family membership needs eps in (0,1)");
    if (!inst.groups) return {false, "groups missing"};
    const auto& groups = *inst.groups;
    if (groups.empty()) return {false, "groups missing"};

    const std::size_t group_size = groups.front().size();
    for (const auto& g : groups)
        if (g.size() != group_size) return {false, "groups not equal-sized"};
    if (group_size == 0 || group_size % 3 != 0) return {false, "group size not divisible by 3"};

    std::vector<int> group_of(static_cast<std::size_t>(inst.n_agents), -1);
    for (std::size_t k = 0; k < groups.size(); ++k)
        for (int a : groups[k]) group_of[static_cast<std::size_t>(a)] = static_cast<int>(k);
    for (int g : group_of)
        if (g == -1) return {false, "groups do not cover every agent"};

    const Rational large_value = Rational(1) / eps;
    std::vector<std::size_t> large_count(groups.size(), 0);
    for (const auto& good : inst.goods) {
        if (!good.is_large) continue;
        if (good.values.empty()) return {false, "large good valued by nobody"};
        const int k = group_of[static_cast<std::size_t>(good.values.front().first)];
        // valued exactly 1/eps by every member of group k, 0 outside
        std::set<int> holders;
        for (const auto& [agent, value] : good.values) {
            if (group_of[static_cast<std::size_t>(agent)] != k) return {false, "large good valued outside its group"};
            if (value != large_value) return {false, "large good value"};
            holders.insert(agent);
        }
        if (holders.size() != group_size) return {false, "large good not valued by its whole group"};
        ++large_count[static_cast<std::size_t>(k)];
    }
    const std::size_t wanted = 2 * group_size / 3;
    for (std::size_t k = 0; k < groups.size(); ++k)
        if (large_count[k] != wanted) return {false, "large good count"};

    std::vector<Rational> non_large_total(static_cast<std::size_t>(inst.n_agents), Rational(0));
    for (const auto& good : inst.goods) {
        if (good.is_large) continue;
        for (const auto& [agent, value] : good.values)
            non_large_total[static_cast<std::size_t>(agent)] += value;
    }
    const Rational limit = Rational(1) + eps;
    for (const Rational& total : non_large_total)
        if (total > limit) return {false, "non-large value per agent exceeds 1+eps"};

    return {true, ""};
}

nlohmann::json AllocationInstance::to_json() const {
    nlohmann::json goods_json = nlohmann::json::array();
    for (const auto& g : goods) {
        nlohmann::json vals = nlohmann::json::array();
        for (const auto& [agent, value] : g.values)
            vals.push_back({agent, fraction_string(value)});
        nlohmann::json jg{{"id", g.id}, {"vals", vals}};
        if (g.size) jg["size"] = fraction_string(*g.size);
        if (g.is_large) jg["is_large"] = true;
        goods_json.push_back(std::move(jg));
    }
    nlohmann::json j{{"n_agents", n_agents}, {"goods", goods_json}};
    auto rationals = [](const std::vector<Rational>& v) {
        nlohmann::json out = nlohmann::json::array();
        for (const auto& r : v) out.push_back(fraction_string(r));
        return out;
    };
    if (budgets) j["budgets"] = rationals(*budgets);
    if (capacities) j["capacities"] = rationals(*capacities);
    if (groups) j["groups"] = *groups;
    return j;
}

AllocationInstance AllocationInstance::from_json(const nlohmann::json& j) {
    AllocationInstance inst;
    try {
        inst.n_agents = j.at("n_agents").get<int>();
        for (const auto& jg : j.at("goods")) {
            Good g;
            g.id = jg.value("id", "");
            for (const auto& pair : jg.at("vals"))
                g.values.emplace_back(pair.at(0).get<int>(), parse_rational(pair.at(1).get<std::string>()));
            if (jg.contains("size")) g.size = parse_rational(jg.at("size").get<std::string>());
            g.is_large = jg.value("is_large", false);
            inst.goods.push_back(std::move(g));
        }
        auto read_rationals = [](const nlohmann::json& arr) {
            std::vector<Rational> out;
            for (const auto& s : arr) out.push_back(parse_rational(s.get<std::string>()));
            return out;
        };
        if (j.contains("budgets")) inst.budgets = read_rationals(j.at("budgets"));
        if (j.contains("capacities")) inst.capacities = read_rationals(j.at("capacities"));
        if (j.contains("groups")) inst.groups = j.at("groups").get<std::vector<std::vector<int>>>();
    } catch (const nlohmann::json::exception& e) {
        throw BadConfigError(std::string("malformed instance file: ") + e.what());
    }
    inst.validate();
    return inst;
}

nlohmann::json Allocation::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& holder : assignment) {
        if (holder)
            arr.push_back(*holder);
        else
            arr.push_back(nullptr);
    }
    return nlohmann::json{{"assignment", arr}};
}

Allocation Allocation::from_json(const nlohmann::json& j) {
    Allocation alloc;
    try {
        for (const auto& v : j.at("assignment")) {
            if (v.is_null())
                alloc.assignment.push_back(std::nullopt);
            else
                alloc.assignment.push_back(v.get<int>());
        }
    } catch (const nlohmann::json::exception& e) {
        throw BadConfigError(std::string("malformed allocation file: ") + e.what());
    }
    return alloc;
}

}  // namespace alloclab
