#include "alloclab/point.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace alloclab {

Point::Point(std::vector<int> entries, int alphabet)
    : entries_(std::move(entries)), alphabet_(alphabet) {
    if (alphabet_ < 2) throw InvalidParameterError("point alphabet must be at least 2");
    if (entries_.empty()) throw DimensionError("point must have positive length");
    for (int e : entries_) {
        if (e < 0 || e >= alphabet_)
            throw InvalidParameterError("point entry " + std::to_string(e) + " outside alphabet");
    }
}

Point Point::from_code(PointCode code, int length, int alphabet) {
    std::vector<int> entries(static_cast<std::size_t>(length));
    for (int i = 0; i < length; ++i) {
        entries[static_cast<std::size_t>(i)] = static_cast<int>(code % static_cast<PointCode>(alphabet));
        code /= static_cast<PointCode>(alphabet);
    }
    if (code != 0) throw DimensionError("point code out of range for given length");
    return Point(std::move(entries), alphabet);
}

int Point::coord(int i) const {
    if (i < 1 || i > length()) throw DimensionError("coordinate index out of range");
    return entries_[static_cast<std::size_t>(i - 1)];
}

PointCode Point::code() const {
    PointCode c = 0;
    for (std::size_t i = entries_.size(); i-- > 0;)
        c = c * static_cast<PointCode>(alphabet_) + static_cast<PointCode>(entries_[i]);
    return c;
}

Permutation::Permutation(std::vector<int> images_one_based) {
    const int n = static_cast<int>(images_one_based.size());
    if (n == 0) throw DimensionError("permutation must have positive size");
    image0_.resize(images_one_based.size());
    std::vector<bool> seen(images_one_based.size(), false);
    for (int i = 0; i < n; ++i) {
        int v = images_one_based[static_cast<std::size_t>(i)];
        if (v < 1 || v > n) throw InvalidParameterError("permutation image out of range");
        if (seen[static_cast<std::size_t>(v - 1)]) throw InvalidParameterError("permutation image repeated");
        seen[static_cast<std::size_t>(v - 1)] = true;
        image0_[static_cast<std::size_t>(i)] = v - 1;
    }
}

Permutation Permutation::identity(int size) {
    std::vector<int> img(static_cast<std::size_t>(size));
    std::iota(img.begin(), img.end(), 0);
    return Permutation(std::move(img), 0);
}

Permutation Permutation::random(int size, std::mt19937_64& rng) {
    std::vector<int> img(static_cast<std::size_t>(size));
    std::iota(img.begin(), img.end(), 0);
    for (std::size_t i = img.size(); i > 1; --i)
        std::swap(img[i - 1], img[bounded_draw(rng, i)]);
    return Permutation(std::move(img), 0);
}

Permutation Permutation::cyclic_sending(int size, int from, int to) {
    if (from < 1 || from > size || to < 1 || to > size)
        throw InvalidParameterError("cyclic_sending endpoints out of range");
    std::vector<int> img(static_cast<std::size_t>(size));
    const int shift = (to - from + size) % size;
    for (int i = 0; i < size; ++i) img[static_cast<std::size_t>(i)] = (i + shift) % size;
    return Permutation(std::move(img), 0);
}

int Permutation::apply(int i) const {
    if (i < 1 || i > size()) throw DimensionError("permutation argument out of range");
    return image0_[static_cast<std::size_t>(i - 1)] + 1;
}

Permutation Permutation::inverse() const {
    std::vector<int> inv(image0_.size());
    for (std::size_t i = 0; i < image0_.size(); ++i)
        inv[static_cast<std::size_t>(image0_[i])] = static_cast<int>(i);
    return Permutation(std::move(inv), 0);
}

std::vector<int> Permutation::images_one_based() const {
    std::vector<int> out(image0_.size());
    for (std::size_t i = 0; i < image0_.size(); ++i) out[i] = image0_[i] + 1;
    return out;
}

Point compose_with_permutation(const Point& x, const Permutation& pi) {
    if (x.length() != pi.size())
        throw DimensionError("point length does not match permutation size");
    std::vector<int> out(static_cast<std::size_t>(x.length()));
    compose_digits(x.entries(), pi, out);
    return Point(std::move(out), x.alphabet());
}

void compose_digits(const std::vector<int>& in, const Permutation& pi, std::vector<int>& out) {
    out.resize(in.size());
    for (std::size_t i = 0; i < in.size(); ++i)
        out[i] = in[static_cast<std::size_t>(pi.apply0(static_cast<int>(i)))];
}

std::uint64_t bounded_draw(std::mt19937_64& rng, std::uint64_t n) {
    if (n == 0) throw InvalidParameterError("bounded_draw needs n > 0");
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t v;
    do {
        v = rng();
    } while (v >= limit);
    return v % n;
}

}  // namespace alloclab
