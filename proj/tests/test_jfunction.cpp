#include <doctest.h>

#include <cmath>
#include <vector>

#include "core/jfunction.hpp"

using namespace ldpc;

namespace {

// Gauss-Hermite nodes/weights for integrals against exp(-x^2), via Newton
// iteration on the orthonormal Hermite recurrence.
void gauss_hermite(int n, std::vector<double>& x, std::vector<double>& w) {
    x.assign(static_cast<size_t>(n), 0.0);
    w.assign(static_cast<size_t>(n), 0.0);
    const double pim4 = 0.7511255444649425; // pi^(-1/4)
    int m = (n + 1) / 2;
    double z = 0.0;
    for (int i = 0; i < m; ++i) {
        if (i == 0)
            z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
        else if (i == 1)
            z -= 1.14 * std::pow(n, 0.426) / z;
        else if (i == 2)
            z = 1.86 * z - 0.86 * x[0];
        else if (i == 3)
            z = 1.91 * z - 0.91 * x[1];
        else
            z = 2.0 * z - x[static_cast<size_t>(i) - 2];
        double pp = 0.0;
        for (int its = 0; its < 100; ++its) {
            double p1 = pim4, p2 = 0.0;
            for (int j = 1; j <= n; ++j) {
                double p3 = p2;
                p2 = p1;
                p1 = z * std::sqrt(2.0 / j) * p2 - std::sqrt((j - 1.0) / j) * p3;
            }
            pp = std::sqrt(2.0 * n) * p2;
            double dz = p1 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-14) break;
        }
        x[static_cast<size_t>(i)] = z;
        x[static_cast<size_t>(n) - 1 - i] = -z;
        w[static_cast<size_t>(i)] = 2.0 / (pp * pp);
        w[static_cast<size_t>(n) - 1 - i] = w[static_cast<size_t>(i)];
    }
}

// Exact J(sigma) = 1 - E[log2(1 + e^-L)], L ~ N(sigma^2/2, sigma^2), by
// Gauss-Hermite quadrature of the defining integral.
double j_exact(double sigma) {
    static std::vector<double> x, w;
    if (x.empty()) gauss_hermite(96, x, w);
    const double mu = sigma * sigma / 2.0;
    const double scale = sigma * std::sqrt(2.0);
    double acc = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        double l = mu + scale * x[i];
        // log2(1 + e^-l), evaluated stably
        double val = l > 0 ? std::log1p(std::exp(-l)) : -l + std::log1p(std::exp(l));
        acc += w[i] * val / std::log(2.0);
    }
    return 1.0 - acc / std::sqrt(M_PI);
}

} // namespace

TEST_CASE("J endpoints") {
    CHECK(j_function(0.0) == 0.0);
    CHECK(j_function(-1.0) == 0.0);
    CHECK(j_function(J_SIGMA_MAX) == 1.0);
    CHECK(j_function(1e9) == 1.0);
    CHECK(j_function(40.0) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("J is strictly increasing") {
    double prev = j_function(0.02);
    for (int i = 1; i <= 5000; ++i) {
        double sigma = 0.02 + (10.0 - 0.02) * i / 5000.0;
        double cur = j_function(sigma);
        CHECK(cur > prev);
        prev = cur;
    }
}

TEST_CASE("J inverse is self-consistent over sigma in [0.02, 10]") {
    for (int i = 0; i <= 2000; ++i) {
        double sigma = 0.02 + (10.0 - 0.02) * i / 2000.0;
        double back = j_inverse(j_function(sigma));
        CHECK(std::abs(back - sigma) < 1e-6);
    }
    // and in the MI direction
    for (int i = 1; i < 1000; ++i) {
        double mi = i / 1000.0;
        CHECK(std::abs(j_function(j_inverse(mi)) - mi) < 1e-6);
    }
    CHECK(j_inverse(0.0) == 0.0);
    CHECK(j_inverse(1.0) == J_SIGMA_MAX);
    CHECK(j_inverse(-0.5) == 0.0);
    CHECK(j_inverse(2.0) == J_SIGMA_MAX);
}

TEST_CASE("J agrees with quadrature of the defining integral") {
    // The fit is accurate to a few 1e-3 over the whole range; J(2.0) is the
    // value used by the 0 dB, rate-1/2 channel example.
    CHECK(j_exact(2.0) == doctest::Approx(0.4859).epsilon(2e-3));
    CHECK(j_function(2.0) == doctest::Approx(j_exact(2.0)).epsilon(5e-3));
    for (double sigma : {0.2, 0.5, 1.0, 1.6363, 3.0, 5.0})
        CHECK(std::abs(j_function(sigma) - j_exact(sigma)) < 5e-3);
}
