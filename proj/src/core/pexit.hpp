#ifndef LDPC_CORE_PEXIT_HPP
#define LDPC_CORE_PEXIT_HPP

#include <optional>
#include <vector>

#include "base_matrix.hpp"
#include "pattern.hpp"

namespace ldpc {

struct PexitOptions {
    double epsilon = 1e-4;    // convergence target on 1 - I_APP
    int max_iterations = 1000;
    double bracket_lo_db = -2.0;
    double bracket_hi_db = 12.0;
    double bracket_tol_db = 1e-3;
};

/// One protograph threshold query. The matrix is the protograph after
/// shortening (columns erased); punctured columns are flagged, not removed.
/// `rate` sets the E_b/N_0 <-> sigma conversion. `pinned_cols` force the
/// channel MI of a column to 1 — the analysis-side equivalent of erasing it,
/// kept as an explicit hook so the equivalence can be tested.
struct ThresholdQuery {
    const BaseMatrix* matrix = nullptr;
    std::vector<int> punctured_cols; // 1-based into *matrix
    std::vector<int> pinned_cols;    // 1-based into *matrix
    Rational rate{1, 2};
    PexitOptions options;
};

/// Channel mutual information of a BPSK/AWGN symbol at the given E_b/N_0:
/// J(sigma_ch) with sigma_ch^2 = 8 * R * 10^(ebno_db/10); 0 when punctured.
double channel_mi(double ebno_db, double rate, bool punctured);

struct ConvergenceResult {
    bool converged = false;
    int iterations = 0;
};

/// Run the protograph EXIT recursion at a fixed E_b/N_0 and report whether
/// every column's APP mutual information reaches 1 - epsilon within the
/// iteration cap. Exits early when the state stops moving.
ConvergenceResult pexit_converges(const ThresholdQuery& query, double ebno_db);

enum class ThresholdStatus {
    Converged,             // threshold found inside the bracket
    NoConvergenceAtUpper,  // pattern unusable, threshold reported +inf
    ConvergesAtLower       // bracket does not straddle the transition
};

struct ThresholdResult {
    ThresholdStatus status = ThresholdStatus::NoConvergenceAtUpper;
    double threshold_db = 0.0; // +inf when NoConvergenceAtUpper
    int iterations = 0;        // iterations used at the returned threshold
};

/// Bisect E_b/N_0 until the bracket is narrower than bracket_tol_db and
/// return the upper end. Deterministic for a fixed query.
ThresholdResult find_threshold(const ThresholdQuery& query);

/// Convenience wrapper: shorten/puncture `mother` by `pattern`, derive the
/// pruned rate (k - alpha)/(n - alpha - beta) unless overridden, and run the
/// bisection.
ThresholdResult threshold_for_pattern(const BaseMatrix& mother, const PruningPattern& pattern,
                                      std::optional<Rational> rate_override = std::nullopt,
                                      const PexitOptions& options = {});

} // namespace ldpc

#endif
