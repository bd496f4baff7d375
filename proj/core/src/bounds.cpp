#include "charsum/bounds.hpp"

#include <algorithm>
#include <cmath>

namespace charsum {
namespace {

bigint bigint_pow(std::int64_t base, std::int64_t e) {
    bigint v = 1;
    for (std::int64_t i = 0; i < e; ++i) v *= base;
    return v;
}

double factorial_d(std::int64_t s) {
    double v = 1.0;
    for (std::int64_t i = 2; i <= s; ++i) v *= static_cast<double>(i);
    return v;
}

double dfactorial_d(std::int64_t s) {
    double v = 1.0;
    for (std::int64_t i = s; i >= 2; i -= 2) v *= static_cast<double>(i);
    return v;
}

void check_q(std::int64_t q) {
    if (q < 3) throw DomainError("field order must be >= 3");
}

} // namespace

KlPowerBounds lemma_kl_rhs(std::int64_t q, std::int64_t n, std::int64_t k, std::int64_t l,
                           const bigint& R) {
    check_q(q);
    if (n < 1 || k < 0 || l < 0) throw DomainError("need n >= 1 and k, l >= 0");
    bigint swan_num = bigint_pow(n, k + l) - R;
    if (swan_num < 0) throw DomainError("R exceeds the tensor-space dimension");
    double swan = static_cast<double>(swan_num / n); // exact floor: numerator >= 0
    double qd = static_cast<double>(q);
    double rd = static_cast<double>(R);
    double e1 = static_cast<double>((n - 1) * (k + l) + 1) / 2.0;
    double e2 = static_cast<double>((n - 1) * (k + l) + 2) / 2.0;
    return {rd * std::pow(qd, e2) + (swan + rd) * std::pow(qd, e1), swan * std::pow(qd, e1)};
}

double rhs_theorem1(std::int64_t q, std::int64_t A1, std::int64_t A2) {
    check_q(q);
    if (A1 < 1 || A2 < 1) throw DomainError("subset sizes must be >= 1");
    double qd = static_cast<double>(q);
    double lnq = std::log(qd);
    auto value = [&](double a1, double a2) {
        double first = (2.0 * std::pow(6.0, 2.0 / 3.0) * std::pow(a1, -1.0 / 3.0) *
                            std::pow(qd, 1.0 / 6.0) +
                        0.5 * std::pow(a1 * a2, -0.5) * std::sqrt(qd) * lnq) *
                       (1.0 + 0.01 * std::pow(qd, -0.5));
        double second = 4.5 * std::pow(a1, -2.0 / 7.0) * std::pow(a2, -1.0 / 7.0) *
                            std::pow(qd, 3.0 / 14.0) +
                        1.1 * std::pow(a1, -0.5) * std::pow(a2, -0.25) * std::sqrt(qd) * lnq;
        return std::min(first, second);
    };
    double a1 = static_cast<double>(A1), a2 = static_cast<double>(A2);
    return std::min(value(a1, a2), value(a2, a1));
}

double rhs_theorem2(std::int64_t q, std::int64_t k, std::int64_t A1, std::int64_t m) {
    check_q(q);
    if (k < 1 || A1 < 1 || m < 1) throw DomainError("need k, A1, m >= 1");
    double qd = static_cast<double>(q);
    double a1 = static_cast<double>(A1);
    double lnq = std::log(qd);
    if (k == 1) {
        double delta = m > 1 ? 1.0 : 0.0;
        return (2.0 * std::sqrt(3.0) * std::pow(qd, -0.25) +
                0.75 * delta / a1 * (2.0 + lnq)) *
               (1.0 + 2.0 * std::pow(qd, -0.5));
    }
    double kd = static_cast<double>(k);
    double first = 3.0 * std::pow(qd, -kd / (2.0 * (kd + 1.0))) *
                   (1.0 + factorial_d(k + 1) * std::pow(qd, -1.0 / 6.0) * lnq);
    double second = 3.0 * std::pow(a1, -1.0 / (2.0 * kd + 3.0)) *
                    std::pow(qd, -(2.0 * kd - 1.0) / (2.0 * (2.0 * kd + 3.0))) *
                    (1.0 + std::pow(qd, -2.0 / 7.0) *
                               (std::pow(7.0, kd) + std::sqrt(dfactorial_d(2 * k + 1)) * lnq));
    return std::min(first, second) / std::pow(1.0 - 2.0 / qd, kd);
}

double rhs_theorem2_large(std::int64_t q, std::int64_t A1) {
    check_q(q);
    if (A1 < 1) throw DomainError("subset size must be >= 1");
    if (bigint_pow(A1, 4) < bigint_pow(q, 3))
        throw DomainError("bound needs A1 >= q^(3/4)");
    double qd = static_cast<double>(q);
    return 3.0 * std::pow(static_cast<double>(A1), -0.2) * std::pow(qd, -0.1) *
           (1.0 + std::pow(qd, -0.125) * std::log(qd));
}

double rhs_theorem3(std::int64_t q, std::int64_t k) {
    check_q(q);
    if (k < 2) throw DomainError("need k >= 2");
    double qd = static_cast<double>(q);
    double kd = static_cast<double>(k);
    return 3.0 * std::pow(qd, -kd / (2.0 * (kd + 1.0))) *
           (1.0 + factorial_d(k + 1) * std::pow(qd, -1.0 / 6.0) * std::log(qd)) /
           std::pow(1.0 - 2.0 / qd, kd);
}

double rhs_moment1(std::int64_t q, std::int64_t n, const std::vector<std::int64_t>& sizes) {
    check_q(q);
    if (n < 1) throw DomainError("moment order must be >= 1");
    if (sizes.size() < 2) throw DomainError("need at least two subset sizes");
    for (std::int64_t a : sizes)
        if (a < 1) throw DomainError("subset sizes must be >= 1");
    double qd = static_cast<double>(q);
    double rest = 1.0;
    for (std::size_t i = 2; i < sizes.size(); ++i) rest *= static_cast<double>(sizes[i]);
    double a1 = static_cast<double>(sizes[0]), a2 = static_cast<double>(sizes[1]);
    if (n == 1) return std::sqrt(a1 * a2) * rest * std::sqrt(qd) * (1.0 + 0.5 / qd);
    double nd = static_cast<double>(n);
    auto value = [&](double x1, double x2) {
        double first = std::sqrt(qd + (nd - 1.0) * x2 * std::sqrt(qd));
        double second = std::pow(x2, 0.25) *
                        std::pow(4.0 * qd * qd + (nd * nd * nd + 3.0) * std::pow(qd, 1.5), 0.25);
        return std::sqrt(x1 * x2) * rest * std::min(first, second);
    };
    return std::min(value(a1, a2), value(a2, a1));
}

double rhs_moment2(std::int64_t q, std::int64_t p, std::int64_t n, std::int64_t k,
                   const std::vector<std::int64_t>& sizes) {
    check_q(q);
    if (n < 1 || k < 1) throw DomainError("need n >= 1 and k >= 1");
    if (sizes.empty()) throw DomainError("need at least one subset size");
    for (std::int64_t a : sizes)
        if (a < 1) throw DomainError("subset sizes must be >= 1");
    Monodromy g = group_for(p, n);
    double r_k1 = static_cast<double>(r_lookup(g, k, 1));
    double r_kk = static_cast<double>(r_lookup(g, k + 1, k + 1));
    double qd = static_cast<double>(q);
    double nd = static_cast<double>(n);
    double kd = static_cast<double>(k);
    double all = 1.0, tail = 1.0;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        all *= static_cast<double>(sizes[i]);
        if (i > 0) tail *= static_cast<double>(sizes[i]);
    }
    double a1 = static_cast<double>(sizes[0]);
    double delta = sizes.size() > 1 ? 1.0 : 0.0;
    double sq1 = std::sqrt(qd) + 1.0;
    double first = a1 * std::pow(nd, kd) + delta * r_k1 * sq1;
    double second = std::sqrt(a1) * std::pow(qd, 0.25) *
                    std::sqrt(std::pow(nd, 2.0 * kd + 1.0) + r_kk * sq1);
    return (kd + 1.0) * all * std::pow(qd, kd - 1.0 - nd / 2.0) +
           tail * std::pow(qd, kd / 2.0) * std::min(first, second);
}

double rhs_moment3(std::int64_t q, std::int64_t p, std::int64_t n, std::int64_t k) {
    check_q(q);
    if (n < 1) throw DomainError("moment order must be >= 1");
    if (k < 2) throw DomainError("need k >= 2");
    Monodromy g = group_for(p, n);
    double r_k1 = static_cast<double>(r_lookup(g, k, 1));
    double qd = static_cast<double>(q);
    double nd = static_cast<double>(n);
    double kd = static_cast<double>(k);
    return (kd + 1.0) * std::pow(qd, kd - 1.0 - nd / 2.0) +
           std::pow(qd, kd / 2.0) * (std::pow(nd, kd) + r_k1 * (std::sqrt(qd) + 1.0));
}

bigrat f_exponent(const bigrat& x, const bigrat& y) {
    if (x < 0 || x > 1 || y < 0 || y > 1) throw DomainError("exponents live on [0,1]^2");
    const bigrat& a = std::max(x, y);
    const bigrat& b = std::min(x, y);
    if (a + b <= 1) return 0;
    if (a + 3 * b <= 2) return a / 2 + b / 2 - bigrat(1, 2);
    if (2 * a + 3 * b <= 4) return a / 3 - bigrat(1, 6);
    if (2 * a + b <= bigrat(8, 3)) return a / 2 + b / 4 - bigrat(1, 2);
    return 2 * a / 7 + b / 7 - bigrat(3, 14);
}

bigrat g_exponent(std::int64_t k, std::int64_t m, const bigrat& x) {
    if (k < 1 || m < 1) throw DomainError("need k, m >= 1");
    if (x < 0 || x > 1) throw DomainError("exponent lives on [0,1]");
    if (m > 1 && k == 1) {
        if (x <= bigrat(1, 4)) return x;
        if (x <= bigrat(3, 4)) return bigrat(1, 4);
        return x / 5 + bigrat(1, 10);
    }
    if (x <= bigrat(2 * k + 1, 2 * k + 2)) return bigrat(k, 2 * (k + 1));
    return x / (2 * k + 3) + bigrat(2 * k - 1, 2 * (2 * k + 3));
}

EtBound erdos_turan(const std::vector<double>& abs_moments, std::uint64_t n_points) {
    if (n_points == 0) throw DomainError("need at least one point");
    if (abs_moments.empty()) throw DomainError("need at least one moment");
    double nd = static_cast<double>(n_points);
    double partial = 0.0;
    EtBound best{0.0, 0};
    for (std::size_t i = 0; i < abs_moments.size(); ++i) {
        partial += abs_moments[i] / static_cast<double>(i + 1);
        double value = 1.0 / static_cast<double>(i + 2) + 3.0 * partial / nd;
        if (best.cutoff == 0 || value < best.value) {
            best.value = value;
            best.cutoff = static_cast<std::int64_t>(i + 1);
        }
    }
    return best;
}

bigrat rational_from_double(double x) {
    if (!std::isfinite(x)) throw DomainError("value must be finite");
    if (x == 0.0) return 0;
    int exp = 0;
    double mant = std::frexp(x, &exp); // x = mant * 2^exp, |mant| in [0.5, 1)
    long long scaled = static_cast<long long>(std::ldexp(mant, 53));
    exp -= 53;
    bigrat r(scaled);
    if (exp > 0) r *= bigint(1) << exp;
    else if (exp < 0) r /= bigint(1) << -exp;
    return r;
}

} // namespace charsum
