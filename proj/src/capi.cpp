// C API implementation: thin handle layer over the C++ core.

#include "ldpc_prune.h"

#include <cmath>
#include <cstring>
#include <new>
#include <string>

#include "core/base_matrix.hpp"
#include "core/binary_matrix.hpp"
#include "core/errors.hpp"
#include "core/pattern.hpp"
#include "core/pexit.hpp"
#include "core/search.hpp"
#include "core/sim.hpp"

using namespace ldpc;

struct lp_matrix {
    BaseMatrix value;
};
struct lp_pattern {
    PruningPattern value;
};
struct lp_search {
    SearchResult value;
};
struct lp_sim {
    std::vector<SimPoint> value;
};

namespace {

thread_local std::string g_last_error;

lp_status status_of(const Error& e) {
    switch (e.kind()) {
        case ErrorKind::Parse: return LP_EPARSE;
        case ErrorKind::Validation: return LP_EINVAL;
        case ErrorKind::Range: return LP_ERANGE;
        case ErrorKind::Io: return LP_EIO;
        case ErrorKind::Singular: return LP_ESINGULAR;
        case ErrorKind::Infeasible: return LP_EINFEASIBLE;
        case ErrorKind::Internal: return LP_EINTERNAL;
    }
    return LP_EINTERNAL;
}

template <typename Fn>
lp_status guarded(Fn&& fn) {
    try {
        fn();
        return LP_OK;
    } catch (const Error& e) {
        g_last_error = e.what();
        return status_of(e);
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return LP_EINTERNAL;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return LP_EINTERNAL;
    }
}

char* copy_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

} // namespace

extern "C" {

const char* lp_status_str(lp_status status) {
    switch (status) {
        case LP_OK: return "ok";
        case LP_EPARSE: return "parse error";
        case LP_EINVAL: return "invalid argument";
        case LP_ERANGE: return "out of range";
        case LP_EIO: return "io error";
        case LP_ESINGULAR: return "singular matrix";
        case LP_EINFEASIBLE: return "infeasible";
        case LP_EINTERNAL: return "internal error";
    }
    return "unknown";
}

const char* lp_last_error(void) { return g_last_error.c_str(); }

const char* lp_version(void) { return "1.0.0"; }

/* ---- matrices ---- */

lp_status lp_matrix_parse(const char* text, lp_matrix** out) {
    if (!text || !out) return LP_EINVAL;
    return guarded([&] { *out = new lp_matrix{BaseMatrix::parse(text)}; });
}

lp_status lp_matrix_load(const char* path, lp_matrix** out) {
    if (!path || !out) return LP_EINVAL;
    return guarded([&] { *out = new lp_matrix{BaseMatrix::load_file(path)}; });
}

void lp_matrix_free(lp_matrix* bm) { delete bm; }

int lp_matrix_cols(const lp_matrix* bm) { return bm->value.cols(); }
int lp_matrix_rows(const lp_matrix* bm) { return bm->value.rows(); }
int lp_matrix_lift(const lp_matrix* bm) { return bm->value.lift(); }
int lp_matrix_info_cols(const lp_matrix* bm) { return bm->value.info_cols(); }

int lp_matrix_entry(const lp_matrix* bm, int row, int col) {
    if (row < 0 || row >= bm->value.rows() || col < 0 || col >= bm->value.cols()) return -1;
    return bm->value.at(row, col);
}

lp_status lp_matrix_to_text(const lp_matrix* bm, char** out) {
    if (!bm || !out) return LP_EINVAL;
    return guarded([&] { *out = copy_string(bm->value.to_text()); });
}

lp_status lp_matrix_rescale(const lp_matrix* bm, int z, lp_matrix** out) {
    if (!bm || !out) return LP_EINVAL;
    return guarded([&] { *out = new lp_matrix{bm->value.rescale(z)}; });
}

lp_status lp_matrix_erase_columns(const lp_matrix* bm, const int* cols, int count,
                                  lp_matrix** out) {
    if (!bm || !out || (count > 0 && !cols) || count < 0) return LP_EINVAL;
    return guarded([&] {
        std::vector<int> v(cols, cols + count);
        *out = new lp_matrix{bm->value.erase_columns(v)};
    });
}

lp_status lp_matrix_lift_alist(const lp_matrix* bm, char** out) {
    if (!bm || !out) return LP_EINVAL;
    return guarded([&] { *out = copy_string(to_alist(lift(bm->value))); });
}

void lp_string_free(char* text) { delete[] text; }

/* ---- patterns ---- */

lp_status lp_pattern_create(const int* shorten, int shorten_count, const int* puncture,
                            int puncture_count, lp_pattern** out) {
    if (!out || shorten_count < 0 || puncture_count < 0 || (shorten_count > 0 && !shorten) ||
        (puncture_count > 0 && !puncture))
        return LP_EINVAL;
    return guarded([&] {
        *out = new lp_pattern{PruningPattern{{shorten, shorten + shorten_count},
                                             {puncture, puncture + puncture_count}}};
    });
}

lp_status lp_pattern_parse_json(const char* text, lp_pattern** out) {
    if (!text || !out) return LP_EINVAL;
    return guarded([&] { *out = new lp_pattern{PruningPattern::from_json(text)}; });
}

lp_status lp_pattern_load(const char* path, lp_pattern** out) {
    if (!path || !out) return LP_EINVAL;
    return guarded([&] { *out = new lp_pattern{PruningPattern::load_file(path)}; });
}

lp_status lp_pattern_to_json(const lp_pattern* pattern, char** out) {
    if (!pattern || !out) return LP_EINVAL;
    return guarded([&] { *out = copy_string(pattern->value.to_json()); });
}

void lp_pattern_free(lp_pattern* pattern) { delete pattern; }

int lp_pattern_shorten_count(const lp_pattern* pattern) { return pattern->value.alpha(); }
int lp_pattern_puncture_count(const lp_pattern* pattern) { return pattern->value.beta(); }

int lp_pattern_shorten_at(const lp_pattern* pattern, int index) {
    if (index < 0 || index >= pattern->value.alpha()) return 0;
    return pattern->value.shorten[static_cast<size_t>(index)];
}

int lp_pattern_puncture_at(const lp_pattern* pattern, int index) {
    if (index < 0 || index >= pattern->value.beta()) return 0;
    return pattern->value.puncture[static_cast<size_t>(index)];
}

lp_status lp_pattern_prefix(const lp_pattern* pattern, int alpha, int beta, lp_pattern** out) {
    if (!pattern || !out) return LP_EINVAL;
    return guarded([&] { *out = new lp_pattern{pattern->value.prefix(alpha, beta)}; });
}

lp_status lp_pattern_validate(const lp_pattern* pattern, const lp_matrix* bm) {
    if (!pattern || !bm) return LP_EINVAL;
    return guarded([&] { validate(pattern->value, bm->value); });
}

/* ---- thresholds ---- */

void lp_threshold_opts_init(lp_threshold_opts* opts) {
    if (!opts) return;
    PexitOptions d;
    opts->epsilon = d.epsilon;
    opts->max_iterations = d.max_iterations;
    opts->bracket_lo_db = d.bracket_lo_db;
    opts->bracket_hi_db = d.bracket_hi_db;
    opts->bracket_tol_db = d.bracket_tol_db;
    opts->rate_num = 0;
    opts->rate_den = 0;
}

lp_status lp_threshold(const lp_matrix* bm, const lp_pattern* pattern,
                       const lp_threshold_opts* opts, lp_threshold_result* out) {
    if (!bm || !out) return LP_EINVAL;
    return guarded([&] {
        PexitOptions po;
        std::optional<Rational> rate_override;
        if (opts) {
            po.epsilon = opts->epsilon;
            po.max_iterations = opts->max_iterations;
            po.bracket_lo_db = opts->bracket_lo_db;
            po.bracket_hi_db = opts->bracket_hi_db;
            po.bracket_tol_db = opts->bracket_tol_db;
            if (opts->rate_den != 0) rate_override = Rational{opts->rate_num, opts->rate_den};
        }
        PruningPattern pat = pattern ? pattern->value : PruningPattern{};
        Rational rate = rate_override ? *rate_override
                                      : pruned_rate(bm->value.cols(), bm->value.info_cols(),
                                                    pat.alpha(), pat.beta());
        ThresholdResult r = threshold_for_pattern(bm->value, pat, rate_override, po);
        if (r.status == ThresholdStatus::ConvergesAtLower)
            fail(ErrorKind::Range, "recursion already converges at the lower bracket end " +
                                       std::to_string(po.bracket_lo_db) + " dB");
        out->threshold_db = r.threshold_db;
        out->iterations = r.iterations;
        out->rate = rate.value();
        out->converged = r.status == ThresholdStatus::Converged ? 1 : 0;
    });
}

/* ---- search ---- */

lp_status lp_optimize(const lp_matrix* bm, int stages, int beam, int threads, lp_search** out) {
    if (!bm || !out) return LP_EINVAL;
    return guarded([&] {
        SearchConfig cfg{bm->value};
        cfg.stages = stages;
        cfg.beam = beam;
        cfg.threads = threads;
        *out = new lp_search{run_search(cfg)};
    });
}

int lp_search_count(const lp_search* search) {
    return static_cast<int>(search->value.final_beam().size());
}

double lp_search_threshold(const lp_search* search, int rank) {
    const auto& fin = search->value.final_beam();
    if (rank < 0 || rank >= static_cast<int>(fin.size())) return INFINITY;
    return fin[static_cast<size_t>(rank)].threshold_db;
}

lp_status lp_search_pattern(const lp_search* search, int rank, lp_pattern** out) {
    if (!search || !out) return LP_EINVAL;
    const auto& fin = search->value.final_beam();
    if (rank < 0 || rank >= static_cast<int>(fin.size())) {
        g_last_error = "rank out of range";
        return LP_ERANGE;
    }
    return guarded([&] { *out = new lp_pattern{fin[static_cast<size_t>(rank)].pattern}; });
}

lp_status lp_search_stage_log(const lp_search* search, char** out) {
    if (!search || !out) return LP_EINVAL;
    return guarded([&] { *out = copy_string(search->value.stage_log_csv()); });
}

void lp_search_free(lp_search* search) { delete search; }

/* ---- simulation ---- */

void lp_sim_opts_init(lp_sim_opts* opts) {
    if (!opts) return;
    SimPlan d;
    opts->ns_bits = -1;
    opts->np_bits = -1;
    opts->alpha = 0;
    opts->beta = 0;
    opts->snr_start_db = d.snr_start_db;
    opts->snr_step_db = d.snr_step_db;
    opts->snr_stop_db = d.snr_stop_db;
    opts->seed = d.seed;
    opts->max_frames = d.max_frames;
    opts->min_frame_errors = d.min_frame_errors;
    opts->max_bp_iterations = d.max_bp_iterations;
    opts->threads = 0;
    opts->noiseless = 0;
}

lp_status lp_simulate(const lp_matrix* bm, const lp_pattern* pattern, const lp_sim_opts* opts,
                      lp_sim** out) {
    if (!bm || !opts || !out) return LP_EINVAL;
    return guarded([&] {
        SimPlan plan;
        plan.pattern = pattern ? pattern->value : PruningPattern{};
        long z = bm->value.lift();
        plan.ns_bits = opts->ns_bits >= 0 ? opts->ns_bits : static_cast<long>(opts->alpha) * z;
        plan.np_bits = opts->np_bits >= 0 ? opts->np_bits : static_cast<long>(opts->beta) * z;
        plan.snr_start_db = opts->snr_start_db;
        plan.snr_step_db = opts->snr_step_db;
        plan.snr_stop_db = opts->snr_stop_db;
        plan.seed = opts->seed;
        plan.max_frames = opts->max_frames;
        plan.min_frame_errors = opts->min_frame_errors;
        plan.max_bp_iterations = opts->max_bp_iterations;
        plan.threads = opts->threads;
        plan.noiseless = opts->noiseless != 0;
        *out = new lp_sim{run_sim(bm->value, plan)};
    });
}

int lp_sim_count(const lp_sim* sim) { return static_cast<int>(sim->value.size()); }

lp_status lp_sim_point_at(const lp_sim* sim, int index, lp_sim_point* out) {
    if (!sim || !out) return LP_EINVAL;
    if (index < 0 || index >= static_cast<int>(sim->value.size())) {
        g_last_error = "index out of range";
        return LP_ERANGE;
    }
    const SimPoint& p = sim->value[static_cast<size_t>(index)];
    out->ebno_db = p.ebno_db;
    out->frames = p.frames;
    out->bit_errors = p.bit_errors;
    out->frame_errors = p.frame_errors;
    out->ber = p.ber;
    out->fer = p.fer;
    out->seconds = p.seconds;
    return LP_OK;
}

void lp_sim_free(lp_sim* sim) { delete sim; }

} // extern "C"
