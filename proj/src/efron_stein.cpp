#include "alloclab/efron_stein.hpp"

#include "alloclab/errors.hpp"

#include <bit>
#include <string>

namespace alloclab {

namespace {

// Averages `table` along the (0-based) coordinate i: every fiber obtained by
// varying digit i is replaced by its mean, so the result no longer depends
// on coordinate i.
std::vector<Rational> average_coordinate(const std::vector<Rational>& table, int i, int m) {
    std::vector<Rational> out(table.size());
    const std::size_t stride = [&] {
        std::size_t s = 1;
        for (int t = 0; t < i; ++t) s *= static_cast<std::size_t>(m);
        return s;
    }();
    const Rational inv_m(1, m);
    for (std::size_t block = 0; block < table.size(); block += stride * static_cast<std::size_t>(m)) {
        for (std::size_t off = 0; off < stride; ++off) {
            Rational mean(0);
            for (int v = 0; v < m; ++v) mean += table[block + off + static_cast<std::size_t>(v) * stride];
            mean *= inv_m;
            for (int v = 0; v < m; ++v) out[block + off + static_cast<std::size_t>(v) * stride] = mean;
        }
    }
    return out;
}

}  // namespace

EfronSteinDecomposition EfronSteinDecomposition::compute(const FunctionTable& f, const EfronSteinOptions& opts) {
    const int R = f.coordinates();
    const int m = f.alphabet();
    if (R > opts.max_coordinates)
        throw ResourceLimitError("decomposition cap is R <= " + std::to_string(opts.max_coordinates) +
                                 ", got R = " + std::to_string(R));

    const std::size_t size = f.table_size();
    const SubsetMask full = static_cast<SubsetMask>((1u << R) - 1u);

    // cond[T](x) = E[f | x_T], computed by stripping coordinates off the full set
    std::vector<std::vector<Rational>> cond(static_cast<std::size_t>(full) + 1);
    cond[full] = f.values();
    for (SubsetMask mask = full; mask-- > 0;) {
        // average out one coordinate present in a superset already computed
        const SubsetMask missing = full & ~mask;
        const int i = std::countr_zero(missing);  // lowest absent coordinate
        cond[mask] = average_coordinate(cond[mask | (1u << i)], i, m);
    }

    EfronSteinDecomposition dec;
    dec.R_ = R;
    dec.alphabet_ = m;
    dec.components_.resize(static_cast<std::size_t>(full) + 1);
    dec.weights_.resize(static_cast<std::size_t>(full) + 1);

    for (SubsetMask S = 0; S <= full; ++S) {
        // f_S = sum_{T subseteq S} (-1)^{|S\T|} E[f | x_T]
        std::vector<Rational> comp(size, Rational(0));
        SubsetMask T = S;
        while (true) {
            const bool negate = (std::popcount(S & ~T) % 2) != 0;
            const auto& g = cond[T];
            if (negate)
                for (std::size_t c = 0; c < size; ++c) comp[c] -= g[c];
            else
                for (std::size_t c = 0; c < size; ++c) comp[c] += g[c];
            if (T == 0) break;
            T = (T - 1) & S;
        }
        Rational w(0);
        for (const Rational& v : comp) w += v * v;
        dec.weights_[S] = w / Rational(BigInt(size));
        dec.components_[S] = std::move(comp);
    }

    if (opts.validate) {
        // reconstruction: sum_S f_S == f
        std::vector<Rational> sum(size, Rational(0));
        for (SubsetMask S = 0; S <= full; ++S)
            for (std::size_t c = 0; c < size; ++c) sum[c] += dec.components_[S][c];
        for (std::size_t c = 0; c < size; ++c)
            if (sum[c] != f.value(c))
                throw std::logic_error("decomposition failed to reconstruct the function");

        for (SubsetMask S = 0; S <= full; ++S) {
            const auto& comp = dec.components_[S];
            // f_S depends only on coordinates in S: averaging any coordinate
            // outside S leaves it unchanged...
            for (int i = 0; i < R; ++i) {
                const bool in_S = (S >> i) & 1u;
                const auto avg = average_coordinate(comp, i, m);
                if (in_S) {
                    // ...and every in-S fiber mean is zero.
                    for (const Rational& v : avg)
                        if (v != 0) throw std::logic_error("component has nonzero fiber mean");
                } else {
                    if (avg != comp) throw std::logic_error("component depends on a coordinate outside its subset");
                }
            }
        }
    }
    return dec;
}

FunctionTable EfronSteinDecomposition::reconstruct() const {
    const std::size_t size = components_.front().size();
    std::vector<Rational> sum(size, Rational(0));
    for (const auto& comp : components_)
        for (std::size_t c = 0; c < size; ++c) sum[c] += comp[c];
    return FunctionTable(R_, alphabet_ - 1, std::move(sum));
}

Rational InfluenceProfile::max_degree_influence() const {
    Rational best(0);
    for (const Rational& v : degree_influence)
        if (v > best) best = v;
    return best;
}

int InfluenceProfile::count_at_least(const Rational& tau) const {
    int n = 0;
    for (const Rational& v : degree_influence)
        if (v >= tau) ++n;
    return n;
}

InfluenceProfile influence_profile(const EfronSteinDecomposition& dec, int d) {
    if (d < 1) throw InvalidParameterError("degree bound d must be >= 1");
    const int R = dec.coordinates();
    InfluenceProfile prof;
    prof.degree = d;
    prof.influence.assign(static_cast<std::size_t>(R), Rational(0));
    prof.degree_influence.assign(static_cast<std::size_t>(R), Rational(0));
    const SubsetMask full = static_cast<SubsetMask>((1u << R) - 1u);
    for (SubsetMask S = 1; S <= full; ++S) {
        const Rational& w = dec.component_weight(S);
        if (w == 0) continue;
        const int sz = std::popcount(S);
        for (int i = 0; i < R; ++i) {
            if (!((S >> i) & 1u)) continue;
            prof.influence[static_cast<std::size_t>(i)] += w;
            if (sz <= d) prof.degree_influence[static_cast<std::size_t>(i)] += w;
        }
    }
    return prof;
}

InfluenceProfile influence_profile(const FunctionTable& f, int d, const EfronSteinOptions& opts) {
    return influence_profile(EfronSteinDecomposition::compute(f, opts), d);
}

}  // namespace alloclab
