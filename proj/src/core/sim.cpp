#include "sim.hpp"

#include <chrono>
#include <cmath>
#include <memory>

#include "codec.hpp"
#include "errors.hpp"
#include "threading.hpp"

namespace ldpc {

namespace {

// SplitMix64 stream keyed by (seed, snr index, frame index). Counter-based:
// every frame owns an independent deterministic stream.
class FrameRng {
public:
    FrameRng(uint64_t seed, uint64_t snr_index, uint64_t frame_index) {
        state_ = mix(seed ^ mix(snr_index + 0x9E3779B97F4A7C15ull) ^
                     mix(frame_index + 0xBF58476D1CE4E5B9ull));
    }

    uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ull;
        return mix(state_);
    }

    // Uniform in (0, 1].
    double next_unit() {
        return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    }

    double next_gauss() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double r = std::sqrt(-2.0 * std::log(next_unit()));
        double theta = 6.283185307179586476925286766559 * next_unit();
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

private:
    static uint64_t mix(uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    uint64_t state_ = 0;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

constexpr uint64_t BATCH_FRAMES = 256; // stop rule granularity, thread-count independent

struct FrameCounts {
    uint64_t bit_errors = 0;
    bool frame_error = false;
};

} // namespace

std::vector<SimPoint> run_sim(const BaseMatrix& bm, const SimPlan& plan) {
    if (plan.snr_step_db <= 0.0) fail(ErrorKind::Validation, "SNR step must be positive");
    if (plan.max_frames < 1) fail(ErrorKind::Validation, "max_frames must be >= 1");
    if (plan.snr_stop_db < plan.snr_start_db)
        fail(ErrorKind::Validation, "empty SNR sweep");

    BitSchedule sched = bit_schedule(plan.pattern, bm, plan.ns_bits, plan.np_bits);
    const int z = bm.lift();
    LiftedCode code(bm);
    const int n = code.n();
    const int k = code.k();

    // Bit-position roles derived from the schedule.
    std::vector<uint8_t> shortened(static_cast<size_t>(n), 0);
    std::vector<uint8_t> punctured(static_cast<size_t>(n), 0);
    auto mark = [&](std::vector<uint8_t>& flags, const std::vector<int>& full, int part_col,
                    int part_bits) {
        for (int c : full)
            for (int b = 0; b < z; ++b) flags[static_cast<size_t>((c - 1) * z + b)] = 1;
        for (int b = 0; b < part_bits; ++b)
            flags[static_cast<size_t>((part_col - 1) * z + b)] = 1;
    };
    mark(shortened, sched.full_shorten, sched.partial_shorten_col, sched.partial_shorten_bits);
    mark(punctured, sched.full_puncture, sched.partial_puncture_col, sched.partial_puncture_bits);

    std::vector<int> unknown_info; // information bits counted for BER
    for (int v = 0; v < k; ++v)
        if (!shortened[static_cast<size_t>(v)]) unknown_info.push_back(v);
    const double rate_tx = sched.tx_rate.value();

    const int threads = resolve_threads(plan.threads);
    std::vector<std::unique_ptr<BpDecoder>> decoders;
    for (int t = 0; t < threads; ++t) decoders.emplace_back(std::make_unique<BpDecoder>(code));

    std::vector<SimPoint> points;
    int snr_index = 0;
    for (double ebno = plan.snr_start_db; ebno <= plan.snr_stop_db + 1e-9;
         ebno += plan.snr_step_db, ++snr_index) {
        auto t0 = std::chrono::steady_clock::now();
        const double sigma =
            std::sqrt(1.0 / (2.0 * rate_tx * std::pow(10.0, ebno / 10.0)));
        const double llr_scale = 2.0 / (sigma * sigma);

        SimPoint point;
        point.ebno_db = ebno;

        std::vector<FrameCounts> batch(BATCH_FRAMES);
        while (point.frames < plan.max_frames &&
               (plan.min_frame_errors == 0 || point.frame_errors < plan.min_frame_errors)) {
            uint64_t batch_size = std::min<uint64_t>(BATCH_FRAMES, plan.max_frames - point.frames);
            uint64_t first_frame = point.frames;

            parallel_for_workers(static_cast<size_t>(batch_size), threads, [&](size_t slot, int worker) {
                BpDecoder& decoder = *decoders[static_cast<size_t>(worker)];

                FrameRng rng(plan.seed, static_cast<uint64_t>(snr_index), first_frame + slot);
                std::vector<uint8_t> info(static_cast<size_t>(k));
                for (int v = 0; v < k; ++v)
                    info[static_cast<size_t>(v)] =
                        shortened[static_cast<size_t>(v)] ? 0 : static_cast<uint8_t>(rng.next_u64() & 1);
                std::vector<uint8_t> codeword = code.encode(info);

                std::vector<double> llr(static_cast<size_t>(n));
                for (int v = 0; v < n; ++v) {
                    if (shortened[static_cast<size_t>(v)]) {
                        llr[static_cast<size_t>(v)] = LLR_SAT;
                    } else if (punctured[static_cast<size_t>(v)]) {
                        llr[static_cast<size_t>(v)] = 0.0;
                    } else {
                        double x = codeword[static_cast<size_t>(v)] ? -1.0 : 1.0;
                        double y = plan.noiseless ? x : x + sigma * rng.next_gauss();
                        llr[static_cast<size_t>(v)] = llr_scale * y;
                    }
                }

                DecodeResult dec = decoder.decode(llr, plan.max_bp_iterations);
                FrameCounts& fc = batch[slot];
                fc.bit_errors = 0;
                for (int v : unknown_info)
                    fc.bit_errors += dec.bits[static_cast<size_t>(v)] != info[static_cast<size_t>(v)];
                fc.frame_error = fc.bit_errors > 0;
            });

            for (uint64_t i = 0; i < batch_size; ++i) {
                point.bit_errors += batch[static_cast<size_t>(i)].bit_errors;
                point.frame_errors += batch[static_cast<size_t>(i)].frame_error ? 1 : 0;
            }
            point.frames += batch_size;
        }

        uint64_t payload = static_cast<uint64_t>(unknown_info.size());
        point.ber = point.frames ? static_cast<double>(point.bit_errors) /
                                       (static_cast<double>(point.frames) * payload)
                                 : 0.0;
        point.fer = point.frames
                        ? static_cast<double>(point.frame_errors) / static_cast<double>(point.frames)
                        : 0.0;
        point.seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        points.push_back(point);
    }
    return points;
}

} // namespace ldpc
