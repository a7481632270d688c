#include "pexit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "errors.hpp"
#include "jfunction.hpp"

namespace ldpc {

double channel_mi(double ebno_db, double rate, bool punctured) {
    if (punctured) return 0.0;
    double sigma_sq = 8.0 * rate * std::pow(10.0, ebno_db / 10.0);
    return j_function(std::sqrt(sigma_sq));
}

namespace {

// Flattened protograph with per-edge state, reusable across bisection probes.
class PexitEngine {
public:
    explicit PexitEngine(const ThresholdQuery& query) : query_(query) {
        const BaseMatrix& bm = *query.matrix;
        n_ = bm.cols();
        m_ = bm.rows();
        for (int i = 0; i < m_; ++i)
            for (int j = 0; j < n_; ++j)
                if (bm.has_edge(i, j)) {
                    edge_col_.push_back(j);
                    edge_row_.push_back(i);
                }
        edges_ = static_cast<int>(edge_col_.size());
        punctured_.assign(static_cast<size_t>(n_), 0);
        for (int c : query.punctured_cols) {
            if (c < 1 || c > n_) fail(ErrorKind::Range, "punctured column out of range");
            punctured_[static_cast<size_t>(c) - 1] = 1;
        }
        pinned_.assign(static_cast<size_t>(n_), 0);
        for (int c : query.pinned_cols) {
            if (c < 1 || c > n_) fail(ErrorKind::Range, "pinned column out of range");
            pinned_[static_cast<size_t>(c) - 1] = 1;
        }
        i_ec_.resize(static_cast<size_t>(edges_));
        i_ev_.resize(static_cast<size_t>(edges_));
        sq_.resize(static_cast<size_t>(edges_));
        col_sum_.resize(static_cast<size_t>(n_));
        row_sum_.resize(static_cast<size_t>(m_));
        ch_sq_.resize(static_cast<size_t>(n_));
    }

    // One full EXIT evolution at fixed E_b/N_0. The APP convergence test for
    // iteration t reuses the column sums assembled at the top of iteration
    // t+1, so each iteration costs exactly two J^-1 sweeps over the edges.
    ConvergenceResult run(double ebno_db) {
        const double rate = query_.rate.value();
        const PexitOptions& opt = query_.options;
        for (int j = 0; j < n_; ++j) {
            double mi = pinned_[static_cast<size_t>(j)]
                            ? 1.0
                            : channel_mi(ebno_db, rate, punctured_[static_cast<size_t>(j)] != 0);
            double s = j_inverse(mi);
            ch_sq_[static_cast<size_t>(j)] = s * s;
        }
        std::fill(i_ec_.begin(), i_ec_.end(), 0.0);
        std::fill(i_ev_.begin(), i_ev_.end(), 0.0);

        int stall_count = 0;
        for (int iter = 1; iter <= opt.max_iterations; ++iter) {
            // Variable side: J^-1(I_Ec)^2 per edge and per-column totals.
            std::fill(col_sum_.begin(), col_sum_.end(), 0.0);
            for (int e = 0; e < edges_; ++e) {
                double s = j_inverse(i_ec_[static_cast<size_t>(e)]);
                sq_[static_cast<size_t>(e)] = s * s;
                col_sum_[static_cast<size_t>(edge_col_[static_cast<size_t>(e)])] +=
                    sq_[static_cast<size_t>(e)];
            }
            if (iter > 1 && all_columns_converged(opt.epsilon)) return {true, iter - 1};

            for (int e = 0; e < edges_; ++e) {
                int j = edge_col_[static_cast<size_t>(e)];
                double sum = col_sum_[static_cast<size_t>(j)] - sq_[static_cast<size_t>(e)];
                if (sum < 0.0) sum = 0.0;
                i_ev_[static_cast<size_t>(e)] =
                    j_function(std::sqrt(sum + ch_sq_[static_cast<size_t>(j)]));
            }

            // Check side: J^-1(1 - I_Ev)^2 per edge and per-row totals.
            std::fill(row_sum_.begin(), row_sum_.end(), 0.0);
            for (int e = 0; e < edges_; ++e) {
                double s = j_inverse(1.0 - i_ev_[static_cast<size_t>(e)]);
                sq_[static_cast<size_t>(e)] = s * s;
                row_sum_[static_cast<size_t>(edge_row_[static_cast<size_t>(e)])] +=
                    sq_[static_cast<size_t>(e)];
            }
            double max_delta = 0.0;
            for (int e = 0; e < edges_; ++e) {
                int i = edge_row_[static_cast<size_t>(e)];
                double sum = row_sum_[static_cast<size_t>(i)] - sq_[static_cast<size_t>(e)];
                if (sum < 0.0) sum = 0.0;
                double next = 1.0 - j_function(std::sqrt(sum));
                max_delta =
                    std::max(max_delta, std::abs(next - i_ec_[static_cast<size_t>(e)]));
                i_ec_[static_cast<size_t>(e)] = next;
            }

            // A numerically frozen state can be judged immediately.
            stall_count = max_delta < 1e-12 ? stall_count + 1 : 0;
            if (stall_count >= 3) return {refresh_and_check(opt.epsilon), iter};
        }
        return {refresh_and_check(opt.epsilon), opt.max_iterations};
    }

private:
    bool all_columns_converged(double epsilon) const {
        for (int j = 0; j < n_; ++j) {
            double app = j_function(std::sqrt(col_sum_[static_cast<size_t>(j)] +
                                              ch_sq_[static_cast<size_t>(j)]));
            if (app < 1.0 - epsilon) return false;
        }
        return true;
    }

    bool refresh_and_check(double epsilon) {
        std::fill(col_sum_.begin(), col_sum_.end(), 0.0);
        for (int e = 0; e < edges_; ++e) {
            double s = j_inverse(i_ec_[static_cast<size_t>(e)]);
            col_sum_[static_cast<size_t>(edge_col_[static_cast<size_t>(e)])] += s * s;
        }
        return all_columns_converged(epsilon);
    }

    const ThresholdQuery& query_;
    int n_ = 0, m_ = 0, edges_ = 0;
    std::vector<int> edge_col_, edge_row_;
    std::vector<char> punctured_, pinned_;
    std::vector<double> i_ec_, i_ev_, sq_, col_sum_, row_sum_, ch_sq_;
};

void check_query(const ThresholdQuery& query) {
    if (!query.matrix) fail(ErrorKind::Validation, "threshold query without a matrix");
    double r = query.rate.value();
    if (!(r > 0.0) || !(r < 1.0))
        fail(ErrorKind::Validation, "design rate must lie strictly between 0 and 1, got " +
                                        query.rate.str());
    if (!(query.options.bracket_lo_db < query.options.bracket_hi_db))
        fail(ErrorKind::Validation, "bisection bracket is empty");
}

} // namespace

ConvergenceResult pexit_converges(const ThresholdQuery& query, double ebno_db) {
    check_query(query);
    PexitEngine engine(query);
    return engine.run(ebno_db);
}

ThresholdResult find_threshold(const ThresholdQuery& query) {
    check_query(query);
    PexitEngine engine(query);
    const PexitOptions& opt = query.options;

    ConvergenceResult at_hi = engine.run(opt.bracket_hi_db);
    if (!at_hi.converged)
        return {ThresholdStatus::NoConvergenceAtUpper,
                std::numeric_limits<double>::infinity(), at_hi.iterations};
    ConvergenceResult at_lo = engine.run(opt.bracket_lo_db);
    if (at_lo.converged)
        return {ThresholdStatus::ConvergesAtLower, opt.bracket_lo_db, at_lo.iterations};

    double lo = opt.bracket_lo_db;
    double hi = opt.bracket_hi_db;
    int iters_at_hi = at_hi.iterations;
    while (hi - lo > opt.bracket_tol_db) {
        double mid = 0.5 * (lo + hi);
        ConvergenceResult r = engine.run(mid);
        if (r.converged) {
            hi = mid;
            iters_at_hi = r.iterations;
        } else {
            lo = mid;
        }
    }
    return {ThresholdStatus::Converged, hi, iters_at_hi};
}

ThresholdResult threshold_for_pattern(const BaseMatrix& mother, const PruningPattern& pattern,
                                      std::optional<Rational> rate_override,
                                      const PexitOptions& options) {
    PrunedProtograph pruned = apply(pattern, mother);
    ThresholdQuery query;
    query.matrix = &pruned.matrix;
    query.punctured_cols = pruned.puncture_cols;
    query.rate = rate_override ? *rate_override
                               : pruned_rate(mother.cols(), mother.info_cols(), pattern.alpha(),
                                             pattern.beta());
    query.options = options;
    return find_threshold(query);
}

} // namespace ldpc
