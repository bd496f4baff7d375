#include "charsum/discrepancy.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstring>

namespace charsum {

namespace {

std::uint64_t bits_of(double d) {
    std::uint64_t u;
    std::memcpy(&u, &d, sizeof u);
    return u;
}

// Bit patterns of non-negative doubles order like the doubles themselves, so
// four 16-bit counting passes sort the angles. Same result as std::sort, a
// few times faster on the multi-million-point families; comparison sort
// still wins below a few thousand elements.
void sort_angles(std::vector<double>& a) {
    const std::size_t n = a.size();
    if (n < 4096) {
        std::sort(a.begin(), a.end());
        return;
    }
    std::vector<double> tmp(n);
    constexpr std::size_t kBuckets = 1 << 16;
    std::vector<std::uint64_t> counts(4 * kBuckets, 0);
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint64_t b = bits_of(a[i]);
        ++counts[b & 0xffff];
        ++counts[kBuckets + ((b >> 16) & 0xffff)];
        ++counts[2 * kBuckets + ((b >> 32) & 0xffff)];
        ++counts[3 * kBuckets + (b >> 48)];
    }
    double* src = a.data();
    double* dst = tmp.data();
    for (int pass = 0; pass < 4; ++pass) {
        std::uint64_t* h = counts.data() + static_cast<std::size_t>(pass) * kBuckets;
        const int shift = 16 * pass;
        if (h[(bits_of(src[0]) >> shift) & 0xffff] == n) continue; // constant digit
        std::uint64_t sum = 0;
        for (std::size_t d = 0; d < kBuckets; ++d) {
            const std::uint64_t c = h[d];
            h[d] = sum;
            sum += c;
        }
        for (std::size_t i = 0; i < n; ++i)
            dst[h[(bits_of(src[i]) >> shift) & 0xffff]++] = src[i];
        std::swap(src, dst);
    }
    if (src != a.data()) std::copy(src, src + n, a.data());
}

} // namespace

double angle_of(cplx z) {
    double mod = std::abs(z);
    if (std::abs(mod - 1.0) > 1e-6) throw NotOnCircle(mod);
    double a = std::arg(z) / two_pi;
    if (a < 0.0) a += 1.0;
    if (a >= 1.0) a = 0.0;
    return a;
}

std::vector<double> angles_of(const std::vector<cplx>& points) {
    std::vector<double> out;
    out.reserve(points.size());
    for (cplx z : points) out.push_back(angle_of(z));
    return out;
}

DiscrepancyResult discrepancy_exact(std::vector<double> angles) {
    DiscrepancyResult res;
    res.n = angles.size();
    if (res.n == 0) return res;
    for (double a : angles)
        if (!(a >= 0.0 && a < 1.0)) throw DomainError("angles must lie in [0, 1)");
    sort_angles(angles);

    // Ties in the angle value make consecutive scores strictly increasing
    // (1/n exceeds one ulp for any feasible n), so taking the first minimizer
    // and the last maximizer lands both witness endpoints on the outermost
    // copy of their angle and the closed-arc hit count below is exact.
    double nd = static_cast<double>(res.n);
    std::size_t arg_min = 0, arg_max = 0;
    double lo = 0.0 / nd - angles[0];
    double hi = 1.0 / nd - angles[0];
    for (std::size_t i = 1; i < angles.size(); ++i) {
        double base = static_cast<double>(i) / nd - angles[i];
        if (base < lo) {
            lo = base;
            arg_min = i;
        }
        if (base + 1.0 / nd >= hi) {
            hi = base + 1.0 / nd;
            arg_max = i;
        }
    }

    res.arc_start = angles[arg_min];
    if (arg_min <= arg_max) {
        res.hits = arg_max - arg_min + 1;
        res.arc_length = angles[arg_max] - angles[arg_min];
    } else {
        res.hits = res.n - (arg_min - arg_max) + 1;
        res.arc_length = 1.0 + angles[arg_max] - angles[arg_min];
    }
    res.value = static_cast<double>(res.hits) / nd - res.arc_length;
    return res;
}

double discrepancy_pairwise(const std::vector<double>& angles) {
    std::size_t n = angles.size();
    if (n == 0) return 1.0;
    for (double a : angles)
        if (!(a >= 0.0 && a < 1.0)) throw DomainError("angles must lie in [0, 1)");
    std::vector<double> sorted(angles);
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> distinct;
    std::vector<std::uint64_t> cum; // cum[k]: points at angles <= distinct[k]
    for (double a : sorted) {
        if (distinct.empty() || a != distinct.back()) {
            distinct.push_back(a);
            cum.push_back(cum.empty() ? 0 : cum.back());
        }
        ++cum.back();
    }
    std::size_t s = distinct.size();
    double nd = static_cast<double>(n);
    auto count_closed = [&](std::size_t j, std::size_t i) -> std::uint64_t {
        // points in the closed arc running forward from distinct[j] to distinct[i]
        if (j <= i) return cum[i] - (j == 0 ? 0 : cum[j - 1]);
        return (n - cum[j - 1]) + cum[i];
    };
    auto multiplicity = [&](std::size_t k) -> std::uint64_t {
        return cum[k] - (k == 0 ? 0 : cum[k - 1]);
    };
    // A maximizing arc can always shrink (excess, closed) or grow (deficiency,
    // open) until both endpoints sit on sample angles, so scanning ordered
    // pairs of distinct angles, wrap and degenerate cases included, is exhaustive.
    double best = 0.0;
    for (std::size_t j = 0; j < s; ++j) {
        for (std::size_t i = 0; i < s; ++i) {
            double len = distinct[i] - distinct[j];
            if (j > i) len += 1.0;
            std::uint64_t closed = count_closed(j, i);
            best = std::max(best, static_cast<double>(closed) / nd - len);
            if (i != j) {
                std::uint64_t open = closed - multiplicity(j) - multiplicity(i);
                best = std::max(best, len - static_cast<double>(open) / nd);
            }
        }
    }
    return best;
}

} // namespace charsum
