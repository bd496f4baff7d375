#include "charsum/dft.hpp"

#include <cstdint>
#include <memory>
#include <mutex>
#include <unordered_map>
#include <utility>

namespace charsum {
namespace {

constexpr std::size_t kNaiveCutoff = 64;

// Iterative radix-2 FFT over a power-of-two length, sign -1 forward.
// `roots` holds e^{-2 pi i j / L} for j in [0, L/2).
void fft_pow2(std::vector<cplx>& a, const std::vector<cplx>& roots, bool inverse) {
    std::size_t L = a.size();
    for (std::size_t i = 1, j = 0; i < L; ++i) {
        std::size_t bit = L >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= L; len <<= 1) {
        std::size_t stride = L / len;
        for (std::size_t blk = 0; blk < L; blk += len) {
            for (std::size_t k = 0; k < len / 2; ++k) {
                cplx w = roots[k * stride];
                if (inverse) w = std::conj(w);
                cplx u = a[blk + k];
                cplx v = a[blk + k + len / 2] * w;
                a[blk + k] = u + v;
                a[blk + k + len / 2] = u - v;
            }
        }
    }
    if (inverse) {
        double s = 1.0 / static_cast<double>(L);
        for (cplx& z : a) z *= s;
    }
}

struct BluesteinPlan {
    std::size_t M = 0;
    std::size_t L = 0;              // smallest power of two >= 2M - 1
    std::vector<cplx> chirp;        // c[t] = e^{-pi i t^2 / M}, t in [0, M)
    std::vector<cplx> roots;        // e^{-2 pi i j / L}, j in [0, L/2)
    std::vector<cplx> chirp_fft;    // FFT of the even extension of conj(chirp)
};

std::shared_ptr<const BluesteinPlan> plan_for(std::size_t M) {
    static std::mutex mu;
    static std::unordered_map<std::size_t, std::shared_ptr<const BluesteinPlan>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(M);
    if (it != cache.end()) return it->second;

    auto plan = std::make_shared<BluesteinPlan>();
    plan->M = M;
    std::size_t L = 1;
    while (L < 2 * M - 1) L <<= 1;
    plan->L = L;
    plan->chirp.resize(M);
    for (std::size_t t = 0; t < M; ++t) {
        // t^2 reduced mod 2M in integers before any float conversion.
        std::int64_t sq = static_cast<std::int64_t>(t) * static_cast<std::int64_t>(t) %
                          static_cast<std::int64_t>(2 * M);
        plan->chirp[t] = unit_root(-sq, static_cast<std::int64_t>(2 * M));
    }
    plan->roots.resize(L / 2);
    for (std::size_t j = 0; j < L / 2; ++j)
        plan->roots[j] = unit_root(-static_cast<std::int64_t>(j), static_cast<std::int64_t>(L));
    std::vector<cplx> b(L, cplx{0.0, 0.0});
    for (std::size_t t = 0; t < M; ++t) {
        cplx v = std::conj(plan->chirp[t]);
        b[t] = v;
        if (t > 0) b[L - t] = v;
    }
    fft_pow2(b, plan->roots, false);
    plan->chirp_fft = std::move(b);

    auto [ins, _] = cache.emplace(M, std::move(plan));
    return ins->second;
}

std::vector<cplx> dft_bluestein(const std::vector<cplx>& x) {
    std::size_t M = x.size();
    auto plan = plan_for(M);
    std::vector<cplx> a(plan->L, cplx{0.0, 0.0});
    for (std::size_t t = 0; t < M; ++t) a[t] = x[t] * plan->chirp[t];
    fft_pow2(a, plan->roots, false);
    for (std::size_t j = 0; j < plan->L; ++j) a[j] *= plan->chirp_fft[j];
    fft_pow2(a, plan->roots, true);
    std::vector<cplx> out(M);
    for (std::size_t j = 0; j < M; ++j) out[j] = a[j] * plan->chirp[j];
    return out;
}

} // namespace

std::vector<cplx> dft_naive(const std::vector<cplx>& x) {
    std::size_t M = x.size();
    std::vector<cplx> out(M, cplx{0.0, 0.0});
    for (std::size_t j = 0; j < M; ++j) {
        cplx acc{0.0, 0.0};
        for (std::size_t k = 0; k < M; ++k) {
            std::int64_t t = static_cast<std::int64_t>(j) * static_cast<std::int64_t>(k) %
                             static_cast<std::int64_t>(M);
            acc += x[k] * unit_root(-t, static_cast<std::int64_t>(M));
        }
        out[j] = acc;
    }
    return out;
}

std::vector<cplx> dft(const std::vector<cplx>& x) {
    if (x.size() <= kNaiveCutoff) return dft_naive(x);
    return dft_bluestein(x);
}

std::vector<cplx> idft(const std::vector<cplx>& x) {
    std::size_t M = x.size();
    if (M == 0) return {};
    std::vector<cplx> conj_in(M);
    for (std::size_t k = 0; k < M; ++k) conj_in[k] = std::conj(x[k]);
    std::vector<cplx> out = dft(conj_in);
    double s = 1.0 / static_cast<double>(M);
    for (cplx& z : out) z = std::conj(z) * s;
    return out;
}

std::vector<cplx> cyclic_convolve(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    if (a.size() != b.size()) throw LengthMismatch(a.size(), b.size());
    std::size_t M = a.size();
    if (M == 0) return {};
    if (M <= kNaiveCutoff) {
        std::vector<cplx> out(M, cplx{0.0, 0.0});
        for (std::size_t s = 0; s < M; ++s)
            for (std::size_t t = 0; t < M; ++t) out[(s + t) % M] += a[s] * b[t];
        return out;
    }
    std::vector<cplx> fa = dft(a);
    std::vector<cplx> fb = dft(b);
    for (std::size_t j = 0; j < M; ++j) fa[j] *= fb[j];
    return idft(fa);
}

} // namespace charsum
