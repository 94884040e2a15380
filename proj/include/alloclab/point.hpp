#pragma once

#include "alloclab/errors.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace alloclab {

// Dense index of a point: code(x) = sum_i x_i * alphabet^(i-1), so the
// first coordinate is the least significant digit. Distribution tables and
// function tables are addressed this way throughout.
using PointCode = std::uint64_t;

// A point of {0,...,q}^R with alphabet = q+1. Coordinates are numbered
// 1..R in the public API, matching the label set of unique-games instances.
class Point {
public:
    Point(std::vector<int> entries, int alphabet);
    static Point from_code(PointCode code, int length, int alphabet);

    int length() const { return static_cast<int>(entries_.size()); }
    int alphabet() const { return alphabet_; }
    int coord(int i) const;  // 1-based
    const std::vector<int>& entries() const { return entries_; }
    PointCode code() const;

    bool operator==(const Point& other) const = default;

private:
    std::vector<int> entries_;
    int alphabet_;
};

// Bijection on {1,...,R}. Stored 0-based internally; apply() speaks 1-based.
class Permutation {
public:
    // images[j] = pi(j+1), 1-based values.
    explicit Permutation(std::vector<int> images_one_based);
    static Permutation identity(int size);
    static Permutation random(int size, std::mt19937_64& rng);
    // The cyclic shift with pi(from) = to; the deterministic choice used
    // wherever only a single constraint pins the permutation down.
    static Permutation cyclic_sending(int size, int from, int to);

    int size() const { return static_cast<int>(image0_.size()); }
    int apply(int i) const;  // 1-based in, 1-based out
    int apply0(int i) const { return image0_[static_cast<std::size_t>(i)]; }
    Permutation inverse() const;
    std::vector<int> images_one_based() const;

    bool operator==(const Permutation& other) const = default;

private:
    explicit Permutation(std::vector<int> image0, int /*tag*/) : image0_(std::move(image0)) {}
    std::vector<int> image0_;  // image0_[i] = pi(i+1)-1
};

// (x o pi)_i = x_{pi(i)}.
Point compose_with_permutation(const Point& x, const Permutation& pi);

// Applies the composition directly on 0-based digit vectors; out[i] = in[pi0(i)].
void compose_digits(const std::vector<int>& in, const Permutation& pi, std::vector<int>& out);

// Uniform draw from [0, n) by rejection; deterministic for a given seed on
// every platform, unlike std::uniform_int_distribution.
std::uint64_t bounded_draw(std::mt19937_64& rng, std::uint64_t n);

}  // namespace alloclab
