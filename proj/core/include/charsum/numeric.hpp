#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>

namespace charsum {

using cplx = std::complex<double>;

inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// Absolute tolerance for a sum of `nterms` complex terms each bounded by `max_mag`.
/// Scales as 64 ulp-equivalents per term; generous enough for naive summation order.
inline double sum_tolerance(std::size_t nterms, double max_mag) {
    return 64.0 * std::numeric_limits<double>::epsilon() *
           static_cast<double>(nterms ? nterms : 1) * (max_mag > 0 ? max_mag : 1.0);
}

/// Compensated (Kahan) accumulator for complex doubles.
/// Used where a sum's cancellation error would otherwise grow with term count.
class KahanSum {
public:
    void add(cplx x) {
        cplx y = x - comp_;
        cplx t = sum_ + y;
        comp_ = (t - sum_) - y;
        sum_ = t;
    }
    cplx value() const { return sum_; }

private:
    cplx sum_{0.0, 0.0};
    cplx comp_{0.0, 0.0};
};

/// e^{2*pi*i * num/den} with the angle reduced exactly in integer arithmetic first.
inline cplx unit_root(long long num, long long den) {
    long long r = num % den;
    if (r < 0) r += den;
    return std::polar(1.0, two_pi * static_cast<double>(r) / static_cast<double>(den));
}

} // namespace charsum
