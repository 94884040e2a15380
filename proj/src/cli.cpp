#include "alloclab/cli.hpp"

#include "alloclab/allocation.hpp"
#include "alloclab/constants.hpp"
#include "alloclab/correlation.hpp"
#include "alloclab/dictator_gadget.hpp"
#include "alloclab/efron_stein.hpp"
#include "alloclab/errors.hpp"
#include "alloclab/reduction.hpp"
#include "alloclab/report.hpp"
#include "alloclab/solver.hpp"
#include "alloclab/unique_games.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace alloclab {

namespace {

nlohmann::json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw BadConfigError("cannot open '" + path + "'");
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw BadConfigError("cannot parse '" + path + "': " + e.what());
    }
}

void save_json(const std::string& path, const nlohmann::json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw BadConfigError("cannot write '" + path + "'");
    out << j.dump(2) << '\n';
}

std::string default_out_dir() {
    if (const char* env = std::getenv("ALLOCLAB_OUT")) return env;
    return ".";
}

void print_rows(const ReportWriter& writer) {
    for (const auto& row : writer.rows()) {
        std::cout << row.experiment << "  " << row.quantity;
        if (!row.exact.empty()) std::cout << " = " << row.exact;
        if (!row.decimal.empty()) std::cout << " (" << row.decimal << ")";
        std::cout << "  [" << row.bound << "] " << row.status << '\n';
    }
}

// visits every {0,1} table of the given size with exactly `ones` ones
template <typename Visit>
void for_each_fixed_weight(std::size_t size, std::size_t ones, Visit&& visit) {
    std::vector<PointCode> idx(ones);
    for (std::size_t i = 0; i < ones; ++i) idx[i] = static_cast<PointCode>(i);
    while (true) {
        visit(idx);
        // next combination in lexicographic order
        std::size_t i = ones;
        while (i-- > 0) {
            if (idx[i] + (ones - i) < size) {
                ++idx[i];
                for (std::size_t j = i + 1; j < ones; ++j) idx[j] = idx[j - 1] + 1;
                break;
            }
            if (i == 0) return;
        }
    }
}

struct CommonOptions {
    std::string out_dir;
};

int finish(const ReportWriter& writer, const CommonOptions& common) {
    writer.save(common.out_dir);
    print_rows(writer);
    return writer.all_passed() ? 0 : kExitChecksFailed;
}

int cmd_distributions(int q, const std::string& eps_text, const std::string& export_path,
                      const CommonOptions& common) {
    const Rational eps = parse_rational(eps_text);
    ReportWriter writer;
    const std::string params = "q=" + std::to_string(q) + ";eps=" + eps_text;

    const TupleDistribution base = TupleDistribution::eta(q);
    const auto base_report = base.analyze();
    writer.add_flag("distributions", params, "base balanced", base_report.balanced, "balanced",
                    base_report.balanced);
    writer.add_flag("distributions", params, "base pairwise independent",
                    base_report.pairwise_independent, "pairwise-independent",
                    base_report.pairwise_independent);
    writer.add_check("distributions", params, "base prob_some_zero", base_report.prob_some_zero,
                     "some-zero=1", base_report.prob_some_zero == 1);
    writer.add_info("distributions", params, "base min_probability", base_report.min_probability);

    const TupleDistribution* exported = &base;
    TupleDistribution noisy = base;
    if (eps != 0) {
        noisy = base.with_noise(eps);
        exported = &noisy;
        const auto report = noisy.analyze();
        const Rational floor = eps / Rational(BigInt(base.table_size()));
        writer.add_flag("distributions", params, "noisy balanced", report.balanced, "balanced",
                        report.balanced);
        writer.add_flag("distributions", params, "noisy pairwise independent",
                        report.pairwise_independent, "pairwise-independent",
                        report.pairwise_independent);
        writer.add_check("distributions", params, "noisy min_probability", report.min_probability,
                         "min=eps/(q+1)^(q+2)", report.min_probability == floor);
        writer.add_check("distributions", params, "noisy prob_some_zero", report.prob_some_zero,
                         "some-zero>=1-eps", report.prob_some_zero >= 1 - eps);
    }
    if (!export_path.empty()) save_json(export_path, exported->to_json());
    return finish(writer, common);
}

int cmd_decompose(int R, int q, int d, const std::string& tau_text, int count, std::uint64_t seed,
                  const CommonOptions& common) {
    const Rational tau = parse_rational(tau_text);
    if (tau <= 0) throw InvalidParameterError("tau must be positive");
    ReportWriter writer;
    std::ostringstream ps;
    ps << "R=" << R << ";q=" << q << ";d=" << d << ";tau=" << tau_text << ";count=" << count
       << ";seed=" << seed;
    const std::string params = ps.str();

    const std::size_t size = checked_pow(static_cast<std::size_t>(q + 1), static_cast<unsigned>(R));
    bool reconstruction_ok = true, orthogonal_ok = true, parseval_ok = true, count_bound_ok = true;
    std::mt19937_64 rng(seed);
    for (int n = 0; n < count; ++n) {
        FunctionTable f = [&] {
            if (n % 2 == 0) return FunctionTable::random_mean_indicator(R, q, Rational(q, q + 1), rng());
            std::vector<Rational> values(size);
            for (auto& v : values) v = Rational(BigInt(bounded_draw(rng, 9)), 8);
            return FunctionTable(R, q, std::move(values));
        }();
        const auto dec = EfronSteinDecomposition::compute(f);
        if (dec.reconstruct() != f) reconstruction_ok = false;

        const SubsetMask full = static_cast<SubsetMask>((1u << R) - 1u);
        Rational weight_sum(0), second_moment(0);
        for (SubsetMask S = 0; S <= full; ++S) {
            weight_sum += dec.component_weight(S);
            for (SubsetMask T = S + 1; T <= full && T != 0; ++T) {
                Rational dot(0);
                for (std::size_t c = 0; c < size; ++c)
                    dot += dec.component(S)[c] * dec.component(T)[c];
                if (dot != 0) orthogonal_ok = false;
            }
        }
        for (std::size_t c = 0; c < size; ++c) second_moment += f.value(c) * f.value(c);
        second_moment /= Rational(BigInt(size));
        if (weight_sum != second_moment) parseval_ok = false;

        const auto prof = influence_profile(dec, d);
        if (Rational(prof.count_at_least(tau)) > Rational(d) / tau) count_bound_ok = false;
    }
    writer.add_flag("decompose", params, "reconstruction", reconstruction_ok, "sum-of-components",
                    reconstruction_ok);
    writer.add_flag("decompose", params, "orthogonality", orthogonal_ok, "components-orthogonal",
                    orthogonal_ok);
    writer.add_flag("decompose", params, "parseval", parseval_ok, "parseval", parseval_ok);
    writer.add_flag("decompose", params, "influence count <= d/tau", count_bound_ok, "count<=d/tau",
                    count_bound_ok);
    return finish(writer, common);
}

int cmd_gadget_completeness(int R, int q, const std::string& eps_text, int coordinate,
                            std::uint64_t max_leaves, const CommonOptions& common) {
    const Rational eps = parse_rational(eps_text);
    if (coordinate < 0 || coordinate > R)
        throw DimensionError("coordinate must be 0 (all) or in 1..R");
    const auto inst = build_dictator_test(R, q, eps);
    ReportWriter writer;
    const Rational floor =
        (Rational(1) - eps) / Rational(BigInt(checked_pow(static_cast<std::size_t>(q + 1),
                                                          static_cast<unsigned>(R - 1))));
    for (int i = 1; i <= R; ++i) {
        if (coordinate != 0 && i != coordinate) continue;
        std::ostringstream ps;
        ps << "R=" << R << ";q=" << q << ";eps=" << eps_text << ";i=" << i;
        const auto utilities = completeness_utilities(inst, i, max_leaves);
        const std::size_t stride =
            checked_pow(static_cast<std::size_t>(q + 1), static_cast<unsigned>(i - 1));
        Rational min_zero_side;
        bool first = true;
        Rational total(0);
        for (std::size_t x = 0; x < utilities.size(); ++x) {
            total += utilities[x];
            if ((x / stride) % static_cast<std::size_t>(q + 1) != 0) continue;
            if (first || utilities[x] < min_zero_side) {
                min_zero_side = utilities[x];
                first = false;
            }
        }
        writer.add_check("gadget-completeness", ps.str(), "min utility with x_i=0", min_zero_side,
                         "min>=(1-eps)/(q+1)^(R-1)", min_zero_side >= floor);
        writer.add_check("gadget-completeness", ps.str(), "total small-good utility", total,
                         "total=1", total == 1);
    }
    return finish(writer, common);
}

int cmd_gadget_soundness(int R, int q, const std::string& eps_text, bool exhaustive, int samples,
                         std::uint64_t seed, int inf_d, const std::string& inf_tau_text,
                         const std::string& slack_text, const CommonOptions& common) {
    const Rational eps = parse_rational(eps_text);
    const Rational inf_tau = parse_rational(inf_tau_text);
    const Rational slack = parse_rational(slack_text);
    const auto inst = build_dictator_test(R, q, eps);
    const Rational limit = constants::soundness_limit(q);
    ReportWriter writer;
    std::ostringstream ps;
    ps << "R=" << R << ";q=" << q << ";eps=" << eps_text << ";inf_d=" << inf_d
       << ";inf_tau=" << inf_tau_text << ";slack=" << slack_text;

    if (exhaustive) {
        const std::size_t size = inst.agent_count();
        const std::size_t ones = inst.large_good_count();
        std::vector<FunctionTable> dictators;
        for (int i = 1; i <= R; ++i) dictators.push_back(FunctionTable::dictator(R, i, q));

        Rational max_value(0);
        std::vector<bool> max_is_dictator;
        bool low_influence_ok = true;
        std::size_t index = 0;
        for_each_fixed_weight(size, ones, [&](const std::vector<PointCode>& idx) {
            const FunctionTable f = FunctionTable::indicator(R, q, idx);
            const Rational value = soundness_value(inst, f);
            std::ostringstream fp;
            fp << ps.str() << ";function=" << index;
            writer.add_info("gadget-soundness", fp.str(), "soundness value", value);
            const bool is_dictator =
                std::find(dictators.begin(), dictators.end(), f) != dictators.end();
            if (value > max_value) {
                max_value = value;
                max_is_dictator.clear();
            }
            if (value == max_value) max_is_dictator.push_back(is_dictator);
            const auto prof = influence_profile(f, inf_d);
            if (prof.max_degree_influence() <= inf_tau && value > limit + slack)
                low_influence_ok = false;
            ++index;
        });
        const bool only_dictators =
            std::all_of(max_is_dictator.begin(), max_is_dictator.end(), [](bool b) { return b; });
        writer.add_check("gadget-soundness", ps.str(), "max soundness value", max_value,
                         "max-attained-only-by-dictators", only_dictators);
        writer.add_flag("gadget-soundness", ps.str(), "low-influence functions below limit+slack",
                        low_influence_ok, "soundness<=limit+slack", low_influence_ok);
    } else {
        std::mt19937_64 rng(seed);
        const Rational band(1, 20);
        int inside = 0;
        Rational max_inf_seen(0);
        for (int n = 0; n < samples; ++n) {
            const FunctionTable f =
                FunctionTable::random_mean_indicator(R, q, Rational(q, q + 1), rng());
            const Rational value = soundness_value(inst, f);
            const auto prof = influence_profile(f, inf_d);
            const Rational max_inf = prof.max_degree_influence();
            if (max_inf > max_inf_seen) max_inf_seen = max_inf;
            if (value >= limit - band && value <= limit + eps + band) ++inside;
            std::ostringstream fp;
            fp << ps.str() << ";sample=" << n;
            writer.add_info("gadget-soundness", fp.str(), "soundness value", value);
        }
        const Rational fraction(inside, samples);
        writer.add_check("gadget-soundness", ps.str(), "fraction inside band", fraction,
                         "fraction>=19/20", fraction >= Rational(19, 20));
        writer.add_check("gadget-soundness", ps.str(), "max degree-d influence", max_inf_seen,
                         "max-influence<inf_tau", max_inf_seen < inf_tau);
    }
    return finish(writer, common);
}

int cmd_build_ug(int a_nodes, int b_nodes, int degree_b, int labels, std::uint64_t seed,
                 const std::string& out_instance, const std::string& out_labels,
                 const CommonOptions& common) {
    const auto planted = planted_instance(a_nodes, b_nodes, degree_b, labels, seed);
    if (!out_instance.empty()) save_json(out_instance, planted.instance.to_json());
    if (!out_labels.empty()) save_json(out_labels, planted.labeling.to_json());
    ReportWriter writer;
    std::ostringstream ps;
    ps << "A=" << a_nodes << ";B=" << b_nodes << ";deg_b=" << degree_b << ";R=" << labels
       << ";seed=" << seed;
    const Rational sat = satisfaction(planted.instance, planted.labeling);
    writer.add_check("build-ug", ps.str(), "planted satisfaction", sat, "satisfaction=1", sat == 1);
    return finish(writer, common);
}

int cmd_decode(const std::string& instance_path, const std::string& labels_path, int d,
               const std::string& tau_text, std::uint64_t seed, const CommonOptions& common) {
    const Rational tau = parse_rational(tau_text);
    const UgInstance ug = UgInstance::from_json(load_json(instance_path));
    const Labeling planted = Labeling::from_json(load_json(labels_path), ug.a_nodes(), ug.b_nodes());
    const auto fa = dictator_functions(ug, planted, 2);
    const Labeling decoded = decode_labeling(ug, fa, d, tau, seed);
    ReportWriter writer;
    std::ostringstream ps;
    ps << "instance=" << instance_path << ";d=" << d << ";tau=" << tau_text << ";seed=" << seed;
    const Rational sat = satisfaction(ug, decoded);
    writer.add_check("decode", ps.str(), "decoded satisfaction", sat, "planted-recovery", sat == 1);
    const auto counts = decoder_candidate_counts(ug, fa, d, tau);
    bool sizes_ok = true;
    for (int c : counts)
        if (Rational(c) > Rational(2 * d) / tau) sizes_ok = false;
    writer.add_flag("decode", ps.str(), "candidate sets within 2d/tau", sizes_ok, "cand<=2d/tau",
                    sizes_ok);
    return finish(writer, common);
}

int cmd_build_reduction(const std::string& instance_path, const std::string& eps_text, int d,
                        const std::string& tau_text, std::size_t max_goods,
                        const std::string& export_path, const CommonOptions& common) {
    const UgInstance ug = UgInstance::from_json(load_json(instance_path));
    const Rational eps = parse_rational(eps_text);
    const Rational tau = parse_rational(tau_text);
    const MetaInstance meta = build_meta_instance(ug, eps, d, tau);
    ReportWriter writer;
    std::ostringstream ps;
    ps << "instance=" << instance_path << ";eps=" << eps_text << ";d=" << d << ";tau=" << tau_text;

    writer.add_info("build-reduction", ps.str(), "delta", meta.delta());
    writer.add_check("build-reduction", ps.str(), "dummy total value", meta.dummy_total_value(),
                     "dummy<=delta<=eps",
                     meta.dummy_total_value() <= meta.delta() && meta.delta() <= eps);
    // factor sums to one, hence the R-fold product does as well
    Rational factor_mass(0);
    for (const auto& p : meta.p().factor.table()) factor_mass += p;
    writer.add_check("build-reduction", ps.str(), "small-good mass", rational_pow(factor_mass,
                     static_cast<unsigned>(meta.R())), "mass=1",
                     rational_pow(factor_mass, static_cast<unsigned>(meta.R())) == 1);

    const AllocationInstance explicit_form = materialize_meta(meta, max_goods);
    const auto family = validate_family2(explicit_form, eps);
    writer.add_flag("build-reduction", ps.str(),
                    family.ok ? "family membership" : "family membership (" + family.violation + ")",
                    family.ok, "family2", family.ok);
    if (!export_path.empty()) save_json(export_path, explicit_form.to_json());
    return finish(writer, common);
}

int cmd_yes_case(const std::string& instance_path, const std::string& labels_path,
                 const std::string& eps_text, int d, const std::string& tau_text,
                 const std::string& out_utilities, const CommonOptions& common) {
    const UgInstance ug = UgInstance::from_json(load_json(instance_path));
    const Labeling labeling = Labeling::from_json(load_json(labels_path), ug.a_nodes(), ug.b_nodes());
    const Rational eps = parse_rational(eps_text);
    const Rational tau = parse_rational(tau_text);
    const MetaInstance meta = build_meta_instance(ug, eps, d, tau);

    std::vector<int> a_prime(static_cast<std::size_t>(ug.a_nodes()));
    for (int a = 0; a < ug.a_nodes(); ++a) a_prime[static_cast<std::size_t>(a)] = a;
    const auto result = yes_allocation(meta, labeling, a_prime);

    ReportWriter writer;
    std::ostringstream ps;
    ps << "instance=" << instance_path << ";eps=" << eps_text << ";d=" << d << ";tau=" << tau_text;
    const Rational floor =
        (Rational(1) - eps) /
        Rational(BigInt(ug.a_nodes()) * BigInt(meta.agents_per_group()) / 3);
    const Rational min_util = result.min_non_large_utility();
    writer.add_check("yes-case", ps.str(), "min non-large utility", min_util,
                     "min>=(1-eps)/(|A|3^(R-1))", min_util >= floor);

    Rational small_total(0);
    std::size_t large_agents = 0;
    for (std::size_t i = 0; i < result.utility.size(); ++i) {
        small_total += result.utility[i];
        if (result.has_large[i]) ++large_agents;
    }
    small_total -= Rational(BigInt(large_agents)) * meta.large_value();
    small_total -= Rational(BigInt(result.dummies_used)) * meta.dummy_value();
    writer.add_check("yes-case", ps.str(), "total small-good utility", small_total, "total=1",
                     small_total == 1);
    writer.add_info("yes-case", ps.str(), "dummies used", Rational(BigInt(result.dummies_used)));
    if (!out_utilities.empty()) {
        nlohmann::json utilities = nlohmann::json::array();
        for (std::size_t i = 0; i < result.utility.size(); ++i)
            utilities.push_back({{"utility", fraction_string(result.utility[i])},
                                 {"has_large", result.has_large[i] != 0}});
        save_json(out_utilities, nlohmann::json{{"agents", utilities}});
    }
    return finish(writer, common);
}

int cmd_no_bound(const std::string& instance_path, const std::string& labels_path,
                 const std::string& eps_text, int d, const std::string& tau_text, bool dictators,
                 std::uint64_t seed, const CommonOptions& common) {
    const UgInstance ug = UgInstance::from_json(load_json(instance_path));
    const Rational eps = parse_rational(eps_text);
    const Rational tau = parse_rational(tau_text);
    const MetaInstance meta = build_meta_instance(ug, eps, d, tau);

    std::vector<FunctionTable> fa;
    if (dictators) {
        const Labeling labeling =
            Labeling::from_json(load_json(labels_path), ug.a_nodes(), ug.b_nodes());
        fa = dictator_functions(ug, labeling, 2);
    } else {
        for (int a = 0; a < ug.a_nodes(); ++a)
            fa.push_back(FunctionTable::random_mean_indicator(
                meta.R(), 2, Rational(2, 3), seed + static_cast<std::uint64_t>(a)));
    }
    ReportWriter writer;
    std::ostringstream ps;
    ps << "instance=" << instance_path << ";eps=" << eps_text << ";d=" << d << ";tau=" << tau_text
       << ";functions=" << (dictators ? "dictators" : "random") << ";seed=" << seed;
    writer.add_info("no-bound", ps.str(), "non-large utility ceiling", no_case_bound(meta, fa));

    // averaging the b-side functions preserves the mean
    Rational mean_a(0), mean_b(0);
    for (const auto& f : fa) mean_a += f.mean();
    mean_a /= ug.a_nodes();
    for (int b = 0; b < ug.b_nodes(); ++b) mean_b += side_b_function(ug, fa, b).mean();
    mean_b /= ug.b_nodes();
    writer.add_check("no-bound", ps.str(), "b-side mean", mean_b, "mean-identity", mean_a == mean_b);
    return finish(writer, common);
}

int cmd_gap_instance(const std::string& instance_path, const std::string& eps_text, int d,
                     const std::string& tau_text, const std::string& c_text, int grid_steps,
                     const CommonOptions& common) {
    const UgInstance ug = UgInstance::from_json(load_json(instance_path));
    const Rational eps = parse_rational(eps_text);
    const Rational tau = parse_rational(tau_text);
    const Rational c = parse_rational(c_text);
    const GapInstance gap = build_gap_instance(ug, eps, d, tau, c);

    ReportWriter writer;
    std::ostringstream ps;
    ps << "instance=" << instance_path << ";eps=" << eps_text << ";c=" << c_text
       << ";grid=" << grid_steps;
    const Rational yes = gap_yes_usw(gap);
    if (c == constants::gap_c())
        writer.add_check("gap-instance", ps.str(), "yes-side welfare", yes, "yes=145/81-eps",
                         yes == constants::gap_yes_base() - eps);
    else
        writer.add_info("gap-instance", ps.str(), "yes-side welfare", yes);

    const auto grid = gap_poly_grid_min(constants::gap_c(), grid_steps);
    writer.add_check("gap-instance", ps.str(), "grid minimum of x^4-(32/27)x", grid.value,
                     "min=-48/81@2/3",
                     grid.value == constants::gap_poly_min() &&
                         grid.argmin == constants::gap_poly_argmin());
    writer.add_flag("gap-instance", ps.str(), "stationary point algebra",
                    gap_stationary_point_check(), "4x^3=32/27", gap_stationary_point_check());
    writer.add_flag("gap-instance", ps.str(), "no-side formula", gap_no_side_check(eps),
                    "no<=129/81+5eps", gap_no_side_check(eps));
    writer.add_info("gap-instance", ps.str(), "large-good value", gap.large_value());
    writer.add_info("gap-instance", ps.str(), "small-good size", gap.small_size());
    return finish(writer, common);
}

int cmd_ratios(const std::string& eps_text, const CommonOptions& common) {
    const Rational eps = parse_rational(eps_text);
    const auto report = ratio_bounds(eps);
    ReportWriter writer;
    const std::string params = "eps=" + eps_text;
    for (const auto& bound : report.bounds) {
        ReportRow row;
        row.experiment = "ratios";
        row.params = params;
        row.quantity = bound.objective + (bound.ratio_is_cubed ? " ratio bound (cubed)" : " ratio bound");
        row.exact = fraction_string(bound.ratio_bound);
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.15g", bound.decimal);
        row.decimal = buf;
        row.bound = bound.objective + "-chain";
        row.status = bound.chain_holds ? "pass" : "fail";
        writer.add(std::move(row));
    }
    return finish(writer, common);
}

int cmd_solve(const std::string& instance_path, const std::string& objective_name,
              std::uint64_t cap, bool check_single_large, const std::string& eps_text,
              const std::string& out_result, const CommonOptions& common) {
    const AllocationInstance inst = AllocationInstance::from_json(load_json(instance_path));
    const Objective obj = objective_from_name(objective_name);
    SolverCaps caps;
    caps.max_assignments = cap;
    const SolveResult result = solve_exact(inst, obj, caps);

    ReportWriter writer;
    const std::string params = "instance=" + instance_path + ";objective=" + objective_name;
    writer.add_info("solve", params, "best value", result.best_value);
    writer.add_info("solve", params, "assignments explored", Rational(BigInt(result.explored)));
    if (!out_result.empty()) {
        nlohmann::json j = result.best_allocation.to_json();
        j["best_value"] = fraction_string(result.best_value);
        j["explored"] = result.explored;
        save_json(out_result, j);
    }

    if (check_single_large) {
        const Rational eps = parse_rational(eps_text);
        const auto family = validate_family2(inst, eps);
        writer.add_flag("solve", params, "family membership", family.ok, "family2", family.ok);
        const bool single = check_single_large_good_property(inst, caps);
        writer.add_flag("solve", params, "single large good per agent", single,
                        "one-large-per-agent", single);
    }
    return finish(writer, common);
}

std::vector<std::string> args_from_config(const std::string& path) {
    const nlohmann::json cfg = load_json(path);
    if (!cfg.is_object() || !cfg.contains("command"))
        throw BadConfigError("run config must be an object with a 'command' key");
    std::vector<std::string> args;
    args.push_back(cfg.at("command").get<std::string>());
    for (const auto& [key, value] : cfg.items()) {
        if (key == "command") continue;
        if (value.is_boolean()) {
            if (value.get<bool>()) args.push_back("--" + key);
        } else if (value.is_string()) {
            args.push_back("--" + key);
            args.push_back(value.get<std::string>());
        } else {
            args.push_back("--" + key);
            args.push_back(value.dump());
        }
    }
    return args;
}

int dispatch(std::vector<std::string> args);

int cmd_run(const std::string& config_path) { return dispatch(args_from_config(config_path)); }

int dispatch(std::vector<std::string> args) {
    CLI::App app{"exact laboratory for allocation hardness gadgets"};
    app.require_subcommand(1);

    CommonOptions common;
    common.out_dir = default_out_dir();
    app.add_option("--out", common.out_dir, "report output directory");

    // distributions
    auto* distributions = app.add_subcommand("distributions", "analyze the tuple distributions");
    int q = 2;
    std::string eps_text = "0";
    std::string export_path;
    distributions->add_option("--q", q, "alphabet parameter; q+1 must be prime")->required();
    distributions->add_option("--eps", eps_text, "noise level as num/den; 0 for none");
    distributions->add_option("--export", export_path, "write the distribution as JSON");

    // decompose
    auto* decompose = app.add_subcommand("decompose", "decomposition and influence checks");
    int dec_R = 3, dec_q = 2, dec_d = 2, dec_count = 20;
    std::string dec_tau = "1/8";
    std::uint64_t dec_seed = 1;
    decompose->add_option("--R", dec_R, "coordinates");
    decompose->add_option("--q", dec_q, "alphabet parameter");
    decompose->add_option("--d", dec_d, "degree bound");
    decompose->add_option("--tau", dec_tau, "influence threshold");
    decompose->add_option("--count", dec_count, "number of random functions");
    decompose->add_option("--seed", dec_seed, "random seed");

    // gadget-completeness
    auto* completeness = app.add_subcommand("gadget-completeness", "first-zero allocation floor");
    int comp_R = 1, comp_q = 2, comp_i = 0;
    std::string comp_eps = "1/10";
    std::uint64_t comp_cap = kDefaultSupportCap;
    completeness->add_option("--R", comp_R, "coordinates")->required();
    completeness->add_option("--q", comp_q, "alphabet parameter");
    completeness->add_option("--eps", comp_eps, "noise level");
    completeness->add_option("--i", comp_i, "coordinate to test; 0 = all");
    completeness->add_option("--cap", comp_cap, "enumeration cap");

    // gadget-soundness
    auto* soundness = app.add_subcommand("gadget-soundness", "soundness landscape");
    int snd_R = 1, snd_q = 2, snd_samples = 0, snd_inf_d = 1;
    std::string snd_eps = "0", snd_inf_tau = "1/20", snd_slack = "1/10";
    bool snd_exhaustive = false;
    std::uint64_t snd_seed = 1;
    soundness->add_option("--R", snd_R, "coordinates")->required();
    soundness->add_option("--q", snd_q, "alphabet parameter");
    soundness->add_option("--eps", snd_eps, "noise level");
    soundness->add_flag("--exhaustive", snd_exhaustive, "enumerate all mean-q/(q+1) functions");
    soundness->add_option("--samples", snd_samples, "sampled mode: number of random functions");
    soundness->add_option("--seed", snd_seed, "sampled mode: random seed");
    soundness->add_option("--inf-d", snd_inf_d, "influence degree bound");
    soundness->add_option("--inf-tau", snd_inf_tau, "low-influence threshold");
    soundness->add_option("--slack", snd_slack, "allowed excess over the soundness limit");

    // build-ug
    auto* build_ug = app.add_subcommand("build-ug", "generate a planted unique-games instance");
    int ug_a = 2, ug_b = 2, ug_deg = 2, ug_R = 2;
    std::uint64_t ug_seed = 1;
    std::string ug_out_instance, ug_out_labels;
    build_ug->add_option("--A", ug_a, "a-side nodes")->required();
    build_ug->add_option("--B", ug_b, "b-side nodes")->required();
    build_ug->add_option("--deg-b", ug_deg, "b-side degree")->required();
    build_ug->add_option("--R", ug_R, "labels")->required();
    build_ug->add_option("--seed", ug_seed, "random seed");
    build_ug->add_option("--out-instance", ug_out_instance, "instance JSON path");
    build_ug->add_option("--out-labels", ug_out_labels, "labeling JSON path");

    // decode
    auto* decode = app.add_subcommand("decode", "influence decoder on dictator functions");
    std::string dec_instance, dec_labels;
    int decode_d = 2;
    std::string decode_tau = "1/10";
    std::uint64_t decode_seed = 1;
    decode->add_option("--instance", dec_instance, "unique-games JSON")->required();
    decode->add_option("--labels", dec_labels, "planted labeling JSON")->required();
    decode->add_option("--d", decode_d, "degree bound");
    decode->add_option("--tau", decode_tau, "influence threshold");
    decode->add_option("--seed", decode_seed, "random seed");

    // build-reduction
    auto* build_red = app.add_subcommand("build-reduction", "build and validate the instance");
    std::string red_instance, red_eps = "1/10", red_tau = "1/10", red_export;
    int red_d = 2;
    std::size_t red_max_goods = 1000000;
    build_red->add_option("--instance", red_instance, "unique-games JSON")->required();
    build_red->add_option("--eps", red_eps, "noise level");
    build_red->add_option("--d", red_d, "degree bound");
    build_red->add_option("--tau", red_tau, "influence threshold");
    build_red->add_option("--max-goods", red_max_goods, "explicit materialization cap");
    build_red->add_option("--export", red_export, "write the explicit instance as JSON");

    // yes-case
    auto* yes_case = app.add_subcommand("yes-case", "certifying allocation utilities");
    std::string yes_instance, yes_labels, yes_eps = "1/10", yes_tau = "1/10", yes_out_utilities;
    int yes_d = 2;
    yes_case->add_option("--instance", yes_instance, "unique-games JSON")->required();
    yes_case->add_option("--labels", yes_labels, "satisfying labeling JSON")->required();
    yes_case->add_option("--eps", yes_eps, "noise level");
    yes_case->add_option("--d", yes_d, "degree bound");
    yes_case->add_option("--tau", yes_tau, "influence threshold");
    yes_case->add_option("--out-utilities", yes_out_utilities, "per-agent utility table JSON");

    // no-bound
    auto* no_bound = app.add_subcommand("no-bound", "utility ceiling for encoded allocations");
    std::string no_instance, no_labels, no_eps = "1/10", no_tau = "1/10";
    int no_d = 2;
    bool no_dictators = false;
    std::uint64_t no_seed = 1;
    no_bound->add_option("--instance", no_instance, "unique-games JSON")->required();
    no_bound->add_option("--labels", no_labels, "labeling JSON (with --dictators)");
    no_bound->add_flag("--dictators", no_dictators, "use dictator functions from --labels");
    no_bound->add_option("--eps", no_eps, "noise level");
    no_bound->add_option("--d", no_d, "degree bound");
    no_bound->add_option("--tau", no_tau, "influence threshold");
    no_bound->add_option("--seed", no_seed, "seed for random mean-2/3 functions");

    // gap-instance
    auto* gap_cmd = app.add_subcommand("gap-instance", "assignment-problem rescaling");
    std::string gap_ug, gap_eps = "1/100", gap_tau = "1/10", gap_c = "32/27";
    int gap_d = 2, gap_grid = 1000;
    gap_cmd->add_option("--instance", gap_ug, "unique-games JSON")->required();
    gap_cmd->add_option("--eps", gap_eps, "noise level");
    gap_cmd->add_option("--d", gap_d, "degree bound");
    gap_cmd->add_option("--tau", gap_tau, "influence threshold");
    gap_cmd->add_option("--c", gap_c, "large-good value scale");
    gap_cmd->add_option("--grid", gap_grid, "grid steps for the polynomial minimum");

    // ratios
    auto* ratios = app.add_subcommand("ratios", "the three ratio lower bounds");
    std::string ratios_eps = "1/1000000";
    ratios->add_option("--eps", ratios_eps, "eps in (0, 1/100]");

    // solve
    auto* solve = app.add_subcommand("solve", "brute-force optimal allocation");
    std::string solve_instance, solve_objective = "nash", solve_eps = "1/10", solve_out;
    std::uint64_t solve_cap = 10000000;
    bool solve_single_large = false;
    solve->add_option("--instance", solve_instance, "instance JSON")->required();
    solve->add_option("--objective", solve_objective, "nash | budgeted | usw_gap");
    solve->add_option("--cap", solve_cap, "assignment enumeration cap");
    solve->add_flag("--check-single-large", solve_single_large,
                    "also verify every Nash optimum uses at most one large good per agent");
    solve->add_option("--eps", solve_eps, "eps for the family membership check");
    solve->add_option("--out-result", solve_out, "write the solve result as JSON");

    // run
    auto* run = app.add_subcommand("run", "dispatch a run-configuration JSON");
    std::string run_config;
    run->add_option("--config", run_config, "run configuration JSON")->required();

    // parent options (--out) remain reachable after the subcommand name,
    // which run-configuration dispatch relies on
    for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; }))
        sub->fallthrough();

    std::vector<const char*> argv;
    argv.push_back("alloclab");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    if (distributions->parsed()) return cmd_distributions(q, eps_text, export_path, common);
    if (decompose->parsed())
        return cmd_decompose(dec_R, dec_q, dec_d, dec_tau, dec_count, dec_seed, common);
    if (completeness->parsed())
        return cmd_gadget_completeness(comp_R, comp_q, comp_eps, comp_i, comp_cap, common);
    if (soundness->parsed())
        return cmd_gadget_soundness(snd_R, snd_q, snd_eps, snd_exhaustive, snd_samples, snd_seed,
                                    snd_inf_d, snd_inf_tau, snd_slack, common);
    if (build_ug->parsed())
        return cmd_build_ug(ug_a, ug_b, ug_deg, ug_R, ug_seed, ug_out_instance, ug_out_labels, common);
    if (decode->parsed())
        return cmd_decode(dec_instance, dec_labels, decode_d, decode_tau, decode_seed, common);
    if (build_red->parsed())
        return cmd_build_reduction(red_instance, red_eps, red_d, red_tau, red_max_goods, red_export,
                                   common);
    if (yes_case->parsed())
        return cmd_yes_case(yes_instance, yes_labels, yes_eps, yes_d, yes_tau, yes_out_utilities,
                            common);
    if (no_bound->parsed())
        return cmd_no_bound(no_instance, no_labels, no_eps, no_d, no_tau, no_dictators, no_seed,
                            common);
    if (gap_cmd->parsed())
        return cmd_gap_instance(gap_ug, gap_eps, gap_d, gap_tau, gap_c, gap_grid, common);
    if (ratios->parsed()) return cmd_ratios(ratios_eps, common);
    if (solve->parsed())
        return cmd_solve(solve_instance, solve_objective, solve_cap, solve_single_large, solve_eps,
                         solve_out, common);
    if (run->parsed()) return cmd_run(run_config);
    return kExitUsage;
}

}  // namespace

int run_cli(std::vector<std::string> args) {
    try {
        return dispatch(std::move(args));
    } catch (const ResourceLimitError& e) {
        std::cerr << "cap exceeded: " << e.what() << '\n';
        return kExitCapExceeded;
    } catch (const BadConfigError& e) {
        std::cerr << "bad config: " << e.what() << '\n';
        return kExitBadConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid parameter: " << e.what() << '\n';
        return kExitBadConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitBadConfig;
    }
}

}  // namespace alloclab
