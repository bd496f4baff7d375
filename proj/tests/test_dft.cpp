#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "charsum/dft.hpp"
#include "charsum/errors.hpp"
#include "doctest.h"

using namespace charsum;

namespace {

std::vector<cplx> random_signal(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto u = [&] { return (static_cast<double>(rng() >> 11) * 0x1p-53) * 2.0 - 1.0; };
    std::vector<cplx> x(n);
    for (cplx& v : x) v = {u(), u()};
    return x;
}

double max_err(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    REQUIRE(a.size() == b.size());
    double worst = 0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

} // namespace

TEST_CASE("fast transform matches the quadratic one at every size") {
    std::vector<std::size_t> sizes;
    for (std::size_t n = 1; n <= 40; ++n) sizes.push_back(n);
    for (std::size_t n : {63, 64, 65, 97, 101, 128, 199, 255, 256, 360, 1000}) sizes.push_back(n);
    for (std::size_t n : sizes) {
        std::vector<cplx> x = random_signal(n, 1000 + n);
        double tol = 1e-11 * static_cast<double>(n) + 1e-12;
        CHECK(max_err(dft(x), dft_naive(x)) < tol);
    }
}

TEST_CASE("inverse transform round trips") {
    for (std::size_t n : {1, 2, 5, 64, 97, 256, 999}) {
        std::vector<cplx> x = random_signal(n, 2000 + n);
        CHECK(max_err(idft(dft(x)), x) < 1e-10);
    }
}

TEST_CASE("delta and constant signals") {
    std::vector<cplx> delta(16, 0.0);
    delta[0] = 1.0;
    std::vector<cplx> flat = dft(delta);
    for (const cplx& v : flat) CHECK(std::abs(v - cplx(1.0, 0.0)) < 1e-12);

    std::vector<cplx> ones(15, 1.0);
    std::vector<cplx> spike = dft(ones);
    CHECK(std::abs(spike[0] - cplx(15.0, 0.0)) < 1e-12);
    for (std::size_t i = 1; i < spike.size(); ++i) CHECK(std::abs(spike[i]) < 1e-11);

    CHECK(dft(std::vector<cplx>{}).empty());
}

TEST_CASE("transform is linear") {
    std::vector<cplx> x = random_signal(77, 3);
    std::vector<cplx> y = random_signal(77, 4);
    cplx a{0.7, -1.3}, b{-2.1, 0.4};
    std::vector<cplx> mix(77);
    for (std::size_t i = 0; i < 77; ++i) mix[i] = a * x[i] + b * y[i];
    std::vector<cplx> fx = dft(x), fy = dft(y), fmix = dft(mix);
    for (std::size_t i = 0; i < 77; ++i)
        CHECK(std::abs(fmix[i] - (a * fx[i] + b * fy[i])) < 1e-10);
}

TEST_CASE("cyclic convolution matches the direct sum") {
    for (std::size_t n : {1, 2, 3, 8, 50, 65, 97}) {
        std::vector<cplx> x = random_signal(n, 5000 + n);
        std::vector<cplx> y = random_signal(n, 6000 + n);
        std::vector<cplx> direct(n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) direct[(i + j) % n] += x[i] * y[j];
        CHECK(max_err(cyclic_convolve(x, y), direct) < 1e-10 * static_cast<double>(n) + 1e-12);
    }
}

TEST_CASE("convolution length mismatch is rejected") {
    std::vector<cplx> x(4, 1.0), y(5, 1.0);
    CHECK_THROWS_AS(cyclic_convolve(x, y), LengthMismatch);
}
