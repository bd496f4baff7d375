#include "charsum/characters.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace charsum {

CharTable::CharTable(const FieldTable& field) : field_(&field), m_(field.units()) {
    std::int64_t p = field.p();
    root_p_.reserve(static_cast<std::size_t>(p));
    for (std::int64_t i = 0; i < p; ++i) root_p_.push_back(unit_root(i, p));
    root_m_.reserve(static_cast<std::size_t>(m_));
    for (std::int64_t t = 0; t < m_; ++t) root_m_.push_back(unit_root(t, m_));
}

std::int64_t CharTable::char_order(std::int64_t j) const {
    return m_ / std::gcd(normalize(j), m_);
}

namespace {

// Uniform draw from [0, n) by rejection on the top remainder band.
std::uint64_t bounded_draw(std::mt19937_64& rng, std::uint64_t n) {
    std::uint64_t reject_below = (0 - n) % n; // 2^64 mod n
    for (;;) {
        std::uint64_t x = rng();
        if (x >= reject_below) return x % n;
    }
}

} // namespace

std::vector<std::int64_t> random_subset(std::int64_t universe, std::int64_t size,
                                        std::uint64_t seed) {
    if (universe < 0 || size < 0 || size > universe)
        throw SizeOutOfRange("subset size " + std::to_string(size) + " out of range for universe " +
                             std::to_string(universe));
    if (size == 0) return {};
    std::vector<std::int64_t> pool(static_cast<std::size_t>(universe));
    for (std::int64_t i = 0; i < universe; ++i) pool[static_cast<std::size_t>(i)] = i + 1;
    std::mt19937_64 rng(seed);
    // Partial Fisher-Yates: after k swaps the prefix is a uniform k-subset.
    for (std::int64_t i = 0; i < size; ++i) {
        std::uint64_t j = i + bounded_draw(rng, static_cast<std::uint64_t>(universe - i));
        std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
    }
    pool.resize(static_cast<std::size_t>(size));
    std::sort(pool.begin(), pool.end());
    return pool;
}

} // namespace charsum
