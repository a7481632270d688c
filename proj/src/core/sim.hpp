#ifndef LDPC_CORE_SIM_HPP
#define LDPC_CORE_SIM_HPP

#include <cstdint>
#include <vector>

#include "base_matrix.hpp"
#include "pattern.hpp"

namespace ldpc {

/// Monte Carlo plan for one code + pruning configuration over a BPSK/AWGN
/// E_b/N_0 sweep. Bit counts come from the pattern's bit schedule.
struct SimPlan {
    PruningPattern pattern;
    long ns_bits = 0;
    long np_bits = 0;
    double snr_start_db = 1.0;
    double snr_step_db = 0.5;
    double snr_stop_db = 3.0;
    uint64_t seed = 1;
    uint64_t max_frames = 1000000;
    uint64_t min_frame_errors = 100;
    int max_bp_iterations = 100;
    int threads = 0;     // 0 = resolve from env / hardware
    bool noiseless = false; // diagnostic: transmit without noise
};

struct SimPoint {
    double ebno_db = 0.0;
    uint64_t frames = 0;
    uint64_t bit_errors = 0;
    uint64_t frame_errors = 0;
    double ber = 0.0;
    double fer = 0.0;
    double seconds = 0.0;
};

/// Run the plan. Frames are dispatched in fixed batches with counter-based
/// per-frame RNG streams, so the counts are bit-identical for any thread
/// count and fully reproducible from the seed.
std::vector<SimPoint> run_sim(const BaseMatrix& bm, const SimPlan& plan);

} // namespace ldpc

#endif
