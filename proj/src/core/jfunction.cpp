#include "jfunction.hpp"

#include <array>
#include <cmath>

namespace ldpc {

namespace {

// Two-piece fit coefficients (ten Brink/Kramer/Ashikhmin form).
constexpr double A1 = -0.0421061, B1 = 0.209252, C1 = -0.00640081;
constexpr double A2 = 0.00181491, B2 = -0.142675, C2 = -0.0822054, D2 = 0.0549608;
constexpr double SIGMA_STAR = 1.6363;
constexpr double SIGMA_KNEE = 0.05;

double cubic_piece(double s) { return ((A1 * s + B1) * s + C1) * s; }
double exp_arg(double s) { return ((A2 * s + B2) * s + C2) * s + D2; }

// Continuity factor for the exponential piece and matched low-end quadratic.
const double KNEE_VALUE = cubic_piece(SIGMA_KNEE);
const double SEAM_FACTOR = (1.0 - cubic_piece(SIGMA_STAR)) / std::exp(exp_arg(SIGMA_STAR));

// Bracket table for the inverse: j_function sampled on a uniform sigma grid.
constexpr int TABLE_SIZE = 16384;
constexpr double TABLE_STEP = J_SIGMA_MAX / TABLE_SIZE;

struct InverseTable {
    std::array<double, TABLE_SIZE + 1> mi{};
    InverseTable() {
        for (int i = 0; i <= TABLE_SIZE; ++i) mi[static_cast<size_t>(i)] = j_function(i * TABLE_STEP);
    }
};

const InverseTable& inverse_table() {
    static const InverseTable table;
    return table;
}

} // namespace

double j_function(double sigma) {
    if (sigma <= 0.0) return 0.0;
    if (sigma < SIGMA_KNEE) return KNEE_VALUE * (sigma / SIGMA_KNEE) * (sigma / SIGMA_KNEE);
    if (sigma <= SIGMA_STAR) return cubic_piece(sigma);
    if (sigma < J_SIGMA_MAX) return 1.0 - SEAM_FACTOR * std::exp(exp_arg(sigma));
    return 1.0;
}

double j_inverse(double mi) {
    if (mi <= 0.0) return 0.0;
    if (mi >= 1.0) return J_SIGMA_MAX;

    const auto& table = inverse_table().mi;
    // Binary search for the grid cell bracketing mi.
    int lo = 0, hi = TABLE_SIZE;
    while (hi - lo > 1) {
        int mid = (lo + hi) / 2;
        if (table[static_cast<size_t>(mid)] < mi)
            lo = mid;
        else
            hi = mid;
    }
    double slo = lo * TABLE_STEP, shi = hi * TABLE_STEP;
    while (shi - slo > 1e-10) {
        double mid = 0.5 * (slo + shi);
        if (j_function(mid) < mi)
            slo = mid;
        else
            shi = mid;
    }
    return 0.5 * (slo + shi);
}

} // namespace ldpc
