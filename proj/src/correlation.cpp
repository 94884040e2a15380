#include "alloclab/correlation.hpp"

#include "alloclab/errors.hpp"

#include <string>

namespace alloclab {

namespace {

void check_compatible(const std::vector<FunctionTable>& fs, const ProductDistribution& p) {
    if (fs.empty()) throw InvalidParameterError("correlation needs at least one function");
    if (static_cast<int>(fs.size()) != p.arity())
        throw DimensionError("need one function per distribution slot");
    for (const auto& f : fs) {
        if (f.coordinates() != p.coordinates || f.alphabet() != p.alphabet())
            throw DimensionError("functions must share R and q with the distribution");
    }
}

// digit i of every point code, laid out as digits[code * R + i]
std::vector<int> digit_table(std::size_t size, int R, int m) {
    std::vector<int> digits(size * static_cast<std::size_t>(R));
    for (std::size_t c = 0; c < size; ++c) {
        std::size_t tmp = c;
        for (int i = 0; i < R; ++i) {
            digits[c * static_cast<std::size_t>(R) + static_cast<std::size_t>(i)] =
                static_cast<int>(tmp % static_cast<std::size_t>(m));
            tmp /= static_cast<std::size_t>(m);
        }
    }
    return digits;
}

struct ExactContext {
    int k, R, m;
    std::size_t size;                       // m^R
    const std::vector<BigInt>* weight;      // factor weights, (m^k entries)
    std::vector<FunctionTable::ScaledValues> scaled;
    std::vector<std::vector<std::size_t>> nonzero;  // codes with num != 0, per slot
    std::vector<int> digits;                // digit table over point codes
    std::vector<std::size_t> slot_place;    // m^j per slot j
    std::vector<std::size_t> base;          // per-coordinate partial tuple codes
    BigInt total;

    // contracts the last two slots given the outer slots' digits in base
    BigInt two_slot_kernel() {
        const auto& nums_second = scaled[static_cast<std::size_t>(k - 2)].num;
        const auto& nums_last = scaled[static_cast<std::size_t>(k - 1)].num;
        const std::size_t place_second = slot_place[static_cast<std::size_t>(k - 2)];
        const std::size_t place_last = slot_place[static_cast<std::size_t>(k - 1)];

        thread_local std::vector<BigInt> v, fiber;
        v.assign(nums_last.begin(), nums_last.end());
        fiber.resize(static_cast<std::size_t>(m));

        for (int i = 0; i < R; ++i) {
            const std::size_t tuple_base = base[static_cast<std::size_t>(i)];
            std::size_t stride = 1;
            for (int t = 0; t < i; ++t) stride *= static_cast<std::size_t>(m);
            for (std::size_t block = 0; block < size; block += stride * static_cast<std::size_t>(m)) {
                for (std::size_t off = 0; off < stride; ++off) {
                    const std::size_t at = block + off;
                    bool all_zero = true;
                    for (int d = 0; d < m; ++d) {
                        fiber[static_cast<std::size_t>(d)] = v[at + static_cast<std::size_t>(d) * stride];
                        if (all_zero && fiber[static_cast<std::size_t>(d)] != 0) all_zero = false;
                    }
                    if (all_zero) continue;
                    for (int c = 0; c < m; ++c) {
                        BigInt acc(0);
                        const std::size_t row = tuple_base + static_cast<std::size_t>(c) * place_second;
                        for (int d = 0; d < m; ++d) {
                            const BigInt& fv = fiber[static_cast<std::size_t>(d)];
                            if (fv == 0) continue;
                            acc += (*weight)[row + static_cast<std::size_t>(d) * place_last] * fv;
                        }
                        v[at + static_cast<std::size_t>(c) * stride] = std::move(acc);
                    }
                }
            }
        }

        BigInt out(0);
        for (std::size_t u = 0; u < size; ++u) {
            const BigInt& nu = nums_second[u];
            if (nu == 0 || v[u] == 0) continue;
            out += nu * v[u];
        }
        return out;
    }

    void walk_outer(int slot, const BigInt& coeff) {
        if (slot == k - 2) {
            const BigInt inner = two_slot_kernel();
            if (inner != 0) total += coeff * inner;
            return;
        }
        const std::size_t place = slot_place[static_cast<std::size_t>(slot)];
        for (std::size_t code : nonzero[static_cast<std::size_t>(slot)]) {
            for (int i = 0; i < R; ++i)
                base[static_cast<std::size_t>(i)] +=
                    static_cast<std::size_t>(digits[code * static_cast<std::size_t>(R) + static_cast<std::size_t>(i)]) * place;
            walk_outer(slot + 1, coeff * scaled[static_cast<std::size_t>(slot)].num[code]);
            for (int i = 0; i < R; ++i)
                base[static_cast<std::size_t>(i)] -=
                    static_cast<std::size_t>(digits[code * static_cast<std::size_t>(R) + static_cast<std::size_t>(i)]) * place;
        }
    }
};

}  // namespace

Rational correlation_exact(const std::vector<FunctionTable>& fs, const ProductDistribution& p,
                           const CorrelationCaps& caps) {
    check_compatible(fs, p);
    if (p.coordinates > caps.max_coordinates)
        throw ResourceLimitError("exact correlation cap is R <= " + std::to_string(caps.max_coordinates) +
                                 "; request Monte Carlo mode for larger R");

    const auto weights = p.factor.integer_weights();
    const int k = p.arity();
    const int R = p.coordinates;
    const int m = p.alphabet();

    BigInt den = weights.den;
    BigInt total_den(1);
    for (int i = 0; i < R; ++i) total_den *= den;

    ExactContext ctx;
    ctx.k = k;
    ctx.R = R;
    ctx.m = m;
    ctx.size = checked_pow(static_cast<std::size_t>(m), static_cast<unsigned>(R));
    ctx.weight = &weights.weight;
    ctx.scaled.reserve(fs.size());
    for (const auto& f : fs) {
        ctx.scaled.push_back(f.scaled_values());
        total_den *= ctx.scaled.back().den;
    }

    if (k == 1) {
        // E[f(x)] where each coordinate is an independent arity-1 draw
        BigInt total(0);
        const auto digits = digit_table(ctx.size, R, m);
        for (std::size_t c = 0; c < ctx.size; ++c) {
            const BigInt& nv = ctx.scaled[0].num[c];
            if (nv == 0) continue;
            BigInt w(1);
            for (int i = 0; i < R; ++i)
                w *= weights.weight[static_cast<std::size_t>(
                    digits[c * static_cast<std::size_t>(R) + static_cast<std::size_t>(i)])];
            total += w * nv;
        }
        return Rational(total, total_den);
    }

    ctx.nonzero.resize(fs.size());
    for (std::size_t j = 0; j + 2 < fs.size(); ++j)
        for (std::size_t c = 0; c < ctx.size; ++c)
            if (ctx.scaled[j].num[c] != 0) ctx.nonzero[j].push_back(c);
    ctx.digits = digit_table(ctx.size, R, m);
    ctx.slot_place.resize(static_cast<std::size_t>(k));
    std::size_t pl = 1;
    for (int j = 0; j < k; ++j) {
        ctx.slot_place[static_cast<std::size_t>(j)] = pl;
        pl *= static_cast<std::size_t>(m);
    }
    ctx.base.assign(static_cast<std::size_t>(R), 0);
    ctx.total = 0;
    ctx.walk_outer(0, BigInt(1));
    return Rational(ctx.total, total_den);
}

MonteCarloCorrelation correlation_monte_carlo(const std::vector<FunctionTable>& fs,
                                              const ProductDistribution& p,
                                              std::uint64_t samples, std::uint64_t seed) {
    check_compatible(fs, p);
    if (samples == 0) throw InvalidParameterError("Monte Carlo needs at least one sample");
    ProductSampler sampler(p, seed);
    Rational sum(0);
    for (std::uint64_t s = 0; s < samples; ++s) {
        const auto points = sampler.draw();
        Rational prod(1);
        for (std::size_t j = 0; j < fs.size() && prod != 0; ++j)
            prod *= fs[j].value(points[j].code());
        sum += prod;
    }
    return MonteCarloCorrelation{sum / Rational(BigInt(samples)), samples, seed};
}

}  // namespace alloclab
