// ldpc_prune CLI: lift/export, threshold queries, pattern search, and
// Monte Carlo simulation on top of the C API.

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ldpc_prune.h"

namespace {

[[noreturn]] void die(const std::string& message) {
    std::cerr << "error: " << message << "\n";
    std::exit(1);
}

void require(lp_status status) {
    if (status != LP_OK)
        die(std::string(lp_status_str(status)) + ": " + lp_last_error());
}

struct MatrixHandle {
    lp_matrix* ptr = nullptr;
    ~MatrixHandle() { lp_matrix_free(ptr); }
};

struct PatternHandle {
    lp_pattern* ptr = nullptr;
    ~PatternHandle() { lp_pattern_free(ptr); }
};

void load_matrix(const std::string& path, int z, MatrixHandle& out) {
    require(lp_matrix_load(path.c_str(), &out.ptr));
    if (z > 0 && z != lp_matrix_lift(out.ptr)) {
        lp_matrix* scaled = nullptr;
        require(lp_matrix_rescale(out.ptr, z, &scaled));
        lp_matrix_free(out.ptr);
        out.ptr = scaled;
    }
}

std::vector<int> parse_index_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        try {
            out.push_back(std::stoi(item));
        } catch (...) {
            die("bad column index '" + item + "'");
        }
    }
    return out;
}

void build_pattern(const std::string& pattern_file, const std::string& shorten,
                   const std::string& puncture, PatternHandle& out) {
    if (!pattern_file.empty() && (!shorten.empty() || !puncture.empty()))
        die("use either --pattern or --shorten/--puncture, not both");
    if (!pattern_file.empty()) {
        require(lp_pattern_load(pattern_file.c_str(), &out.ptr));
    } else if (!shorten.empty() || !puncture.empty()) {
        std::vector<int> s = parse_index_list(shorten);
        std::vector<int> p = parse_index_list(puncture);
        require(lp_pattern_create(s.data(), static_cast<int>(s.size()), p.data(),
                                  static_cast<int>(p.size()), &out.ptr));
    }
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path);
    if (!f) die("cannot write " + path);
    f << content;
    if (!f) die("write failed for " + path);
}

std::string rate_fraction(const lp_matrix* bm) {
    int k = lp_matrix_info_cols(bm);
    int n = lp_matrix_cols(bm);
    int a = k, b = n;
    while (b) {
        int t = a % b;
        a = b;
        b = t;
    }
    return std::to_string(k / a) + "/" + std::to_string(n / a);
}

int run_show(const std::string& in, int z) {
    MatrixHandle bm;
    load_matrix(in, z, bm);
    const int n = lp_matrix_cols(bm.ptr);
    const int m = lp_matrix_rows(bm.ptr);
    std::printf("n=%d m=%d k=%d Z=%d rate=%s\n", n, m, lp_matrix_info_cols(bm.ptr),
                lp_matrix_lift(bm.ptr), rate_fraction(bm.ptr).c_str());
    std::map<int, int> var_deg, chk_deg;
    for (int j = 0; j < n; ++j) {
        int d = 0;
        for (int i = 0; i < m; ++i) d += lp_matrix_entry(bm.ptr, i, j) >= 0 ? 1 : 0;
        ++var_deg[d];
    }
    for (int i = 0; i < m; ++i) {
        int d = 0;
        for (int j = 0; j < n; ++j) d += lp_matrix_entry(bm.ptr, i, j) >= 0 ? 1 : 0;
        ++chk_deg[d];
    }
    std::printf("variable degrees:");
    for (auto [d, c] : var_deg) std::printf(" %d:%d", d, c);
    std::printf("\ncheck degrees:");
    for (auto [d, c] : chk_deg) std::printf(" %d:%d", d, c);
    std::printf("\n");
    return 0;
}

int run_lift(const std::string& in, int z, const std::string& out_path) {
    MatrixHandle bm;
    load_matrix(in, z, bm);
    char* alist = nullptr;
    require(lp_matrix_lift_alist(bm.ptr, &alist));
    write_file(out_path, alist);
    lp_string_free(alist);
    return 0;
}

int run_threshold(const std::string& in, int z, const std::string& pattern_file,
                  const std::string& shorten, const std::string& puncture,
                  const std::string& rate_override) {
    MatrixHandle bm;
    load_matrix(in, z, bm);
    PatternHandle pattern;
    build_pattern(pattern_file, shorten, puncture, pattern);

    lp_threshold_opts opts;
    lp_threshold_opts_init(&opts);
    if (!rate_override.empty()) {
        if (std::sscanf(rate_override.c_str(), "%d/%d", &opts.rate_num, &opts.rate_den) != 2 ||
            opts.rate_den == 0)
            die("--rate-override expects num/den");
    }
    lp_threshold_result result;
    require(lp_threshold(bm.ptr, pattern.ptr, &opts, &result));
    if (result.converged)
        std::printf("{\"threshold_db\": %.3f, \"iterations_at_threshold\": %d, \"rate\": %.6f}\n",
                    result.threshold_db, result.iterations, result.rate);
    else
        std::printf("{\"threshold_db\": \"inf\", \"iterations_at_threshold\": %d, \"rate\": %.6f}\n",
                    result.iterations, result.rate);
    return 0;
}

int run_optimize(const std::string& in, int z, int stages, int beam, int threads,
                 const std::string& out_path, std::string log_path) {
    MatrixHandle bm;
    load_matrix(in, z, bm);
    lp_search* search = nullptr;
    require(lp_optimize(bm.ptr, stages, beam, threads, &search));

    PatternHandle best;
    require(lp_search_pattern(search, 0, &best.ptr));
    char* json = nullptr;
    require(lp_pattern_to_json(best.ptr, &json));
    write_file(out_path, std::string(json) + "\n");

    if (log_path.empty()) log_path = out_path + ".stages.csv";
    char* csv = nullptr;
    require(lp_search_stage_log(search, &csv));
    write_file(log_path, csv);

    std::printf("{\"threshold_db\": %.3f, \"pattern\": %s, \"candidates_kept\": %d}\n",
                lp_search_threshold(search, 0), json, lp_search_count(search));
    lp_string_free(csv);
    lp_string_free(json);
    lp_search_free(search);
    return 0;
}

int run_simulate(const std::string& in, int z, const std::string& pattern_file,
                 const std::string& shorten, const std::string& puncture, int alpha, int beta,
                 int64_t ns, int64_t np, const std::string& snr, uint64_t seed,
                 uint64_t max_frames, uint64_t min_fe, int iters, int threads, bool noiseless,
                 const std::string& out_path) {
    MatrixHandle bm;
    load_matrix(in, z, bm);
    PatternHandle pattern;
    build_pattern(pattern_file, shorten, puncture, pattern);

    lp_sim_opts opts;
    lp_sim_opts_init(&opts);
    double start = 0, step = 1, stop = 0;
    int fields = std::sscanf(snr.c_str(), "%lf:%lf:%lf", &start, &step, &stop);
    if (fields == 1) {
        stop = start;
        step = 1.0;
    } else if (fields != 3) {
        die("--snr expects start:step:stop or a single value");
    }
    opts.snr_start_db = start;
    opts.snr_step_db = step;
    opts.snr_stop_db = stop;
    if (alpha < 0) alpha = pattern.ptr ? lp_pattern_shorten_count(pattern.ptr) : 0;
    if (beta < 0) beta = pattern.ptr ? lp_pattern_puncture_count(pattern.ptr) : 0;
    opts.alpha = alpha;
    opts.beta = beta;
    opts.ns_bits = ns;
    opts.np_bits = np;
    opts.seed = seed;
    opts.max_frames = max_frames;
    opts.min_frame_errors = min_fe;
    opts.max_bp_iterations = iters;
    opts.threads = threads;
    opts.noiseless = noiseless ? 1 : 0;

    lp_sim* sim = nullptr;
    require(lp_simulate(bm.ptr, pattern.ptr, &opts, &sim));

    std::ostringstream csv;
    csv << "ebno_db,frames,bit_errors,frame_errors,ber,fer,seconds\n";
    for (int i = 0; i < lp_sim_count(sim); ++i) {
        lp_sim_point p;
        require(lp_sim_point_at(sim, i, &p));
        char line[256];
        std::snprintf(line, sizeof line,
                      "%.3f,%" PRIu64 ",%" PRIu64 ",%" PRIu64 ",%.6e,%.6e,%.3f\n", p.ebno_db,
                      p.frames, p.bit_errors, p.frame_errors, p.ber, p.fer, p.seconds);
        csv << line;
        std::fputs(line, stdout);
    }
    if (!out_path.empty()) write_file(out_path, csv.str());
    lp_sim_free(sim);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"QC-LDPC pruning: PEXIT thresholds, pattern search, BER/FER simulation"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand
    int threads = 0;
    app.add_option("--threads", threads, "worker threads (default: LDPC_PRUNE_THREADS or all cores)")
        ->envname("LDPC_PRUNE_THREADS");

    std::string in, out, pattern_file, shorten, puncture, rate_override, snr = "1.0:0.5:3.0";
    std::string log_path;
    int z = 0, stages = 4, beam = 8, alpha = -1, beta = -1, iters = 100;
    int64_t ns = -1, np = -1;
    uint64_t seed = 1, max_frames = 1000000, min_fe = 100;
    bool noiseless = false;

    CLI::App* show = app.add_subcommand("show", "print base-matrix parameters and degree profile");
    show->add_option("--in", in, "base matrix file")->required();
    show->add_option("--z", z, "rescale to lifting factor Z");

    CLI::App* lift = app.add_subcommand("lift", "lift to a binary matrix and export alist");
    lift->add_option("--in", in, "base matrix file")->required();
    lift->add_option("--z", z, "rescale to lifting factor Z");
    lift->add_option("--out", out, "alist output file")->required();

    CLI::App* thr = app.add_subcommand("threshold", "PEXIT decoding threshold of a pruned matrix");
    thr->add_option("--in", in, "base matrix file")->required();
    thr->add_option("--z", z, "rescale to lifting factor Z");
    thr->add_option("--pattern", pattern_file, "pruning pattern JSON file");
    thr->add_option("--shorten", shorten, "comma-separated shorten columns (1-based)");
    thr->add_option("--puncture", puncture, "comma-separated puncture columns (1-based)");
    thr->add_option("--rate-override", rate_override, "rate num/den for the E_b/N_0 conversion");

    CLI::App* opt = app.add_subcommand("optimize", "search a joint shorten/puncture pattern");
    opt->add_option("--in", in, "base matrix file")->required();
    opt->add_option("--z", z, "rescale to lifting factor Z");
    opt->add_option("--stages", stages, "stage count T (adds one shorten+puncture pair per stage)");
    opt->add_option("--beam", beam, "beam width (candidates kept per stage)");
    opt->add_option("--out", out, "pattern JSON output file")->required();
    opt->add_option("--log", log_path, "stage log CSV (default: <out>.stages.csv)");

    CLI::App* sim = app.add_subcommand("simulate", "Monte Carlo BER/FER over BPSK/AWGN");
    sim->add_option("--in", in, "base matrix file")->required();
    sim->add_option("--z", z, "rescale to lifting factor Z");
    sim->add_option("--pattern", pattern_file, "pruning pattern JSON file");
    sim->add_option("--shorten", shorten, "comma-separated shorten columns (1-based)");
    sim->add_option("--puncture", puncture, "comma-separated puncture columns (1-based)");
    sim->add_option("--alpha", alpha, "shortened columns used (default: full pattern)");
    sim->add_option("--beta", beta, "punctured columns used (default: full pattern)");
    sim->add_option("--ns", ns, "shortened bits (overrides --alpha)");
    sim->add_option("--np", np, "punctured bits (overrides --beta)");
    sim->add_option("--snr", snr, "E_b/N_0 sweep start:step:stop in dB");
    sim->add_option("--seed", seed, "RNG seed");
    sim->add_option("--max-frames", max_frames, "frame cap per SNR point");
    sim->add_option("--min-fe", min_fe, "stop a point after this many frame errors");
    sim->add_option("--iters", iters, "max BP iterations per frame");
    sim->add_flag("--noiseless", noiseless, "diagnostic: transmit without noise");
    sim->add_option("--out", out, "results CSV file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    try {
        if (show->parsed()) return run_show(in, z);
        if (lift->parsed()) return run_lift(in, z, out);
        if (thr->parsed()) return run_threshold(in, z, pattern_file, shorten, puncture, rate_override);
        if (opt->parsed()) return run_optimize(in, z, stages, beam, threads, out, log_path);
        if (sim->parsed())
            return run_simulate(in, z, pattern_file, shorten, puncture, alpha, beta, ns, np, snr,
                                seed, max_frames, min_fe, iters, threads, noiseless, out);
    } catch (const std::exception& e) {
        die(e.what());
    }
    return 0;
}
