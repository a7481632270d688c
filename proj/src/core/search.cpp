#include "search.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "errors.hpp"
#include "threading.hpp"

namespace ldpc {

std::string SearchResult::stage_log_csv() const {
    std::ostringstream out;
    out << "stage,rank,s,p,threshold_db,parent_rank\n";
    for (size_t t = 0; t < stages.size(); ++t) {
        for (size_t r = 0; r < stages[t].size(); ++r) {
            const BeamEntry& e = stages[t][r];
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.3f", e.threshold_db);
            out << (t + 1) << ',' << (r + 1) << ',' << e.shorten_col << ',' << e.puncture_col
                << ',' << buf << ',' << e.parent_rank << '\n';
        }
    }
    return out.str();
}

std::vector<std::pair<int, int>> stage1_candidates(const BaseMatrix& bm) {
    std::vector<std::pair<int, int>> out;
    const int n = bm.cols();
    const int k = bm.info_cols();
    out.reserve(static_cast<size_t>(k) * (n - 1));
    for (int s = 1; s <= k; ++s)
        for (int p = 1; p <= n; ++p)
            if (p != s) out.emplace_back(s, p);
    return out;
}

std::vector<StageCandidate> stage_candidates(const std::vector<BeamEntry>& beam,
                                             const BaseMatrix& bm) {
    if (beam.empty()) fail(ErrorKind::Infeasible, "stage extension of an empty beam");
    const int n = bm.cols();
    const int k = bm.info_cols();
    std::vector<StageCandidate> out;
    for (size_t parent = 0; parent < beam.size(); ++parent) {
        const PruningPattern& pat = beam[parent].pattern;
        std::vector<char> used(static_cast<size_t>(n) + 1, 0);
        for (int c : pat.shorten) used[static_cast<size_t>(c)] = 1;
        for (int c : pat.puncture) used[static_cast<size_t>(c)] = 1;
        for (int s = 1; s <= k; ++s) {
            if (used[static_cast<size_t>(s)]) continue;
            for (int p = 1; p <= n; ++p) {
                if (p == s || used[static_cast<size_t>(p)]) continue;
                out.push_back({static_cast<int>(parent), s, p});
            }
        }
    }
    if (out.empty()) fail(ErrorKind::Infeasible, "no legal column pairs remain");
    return out;
}

namespace {

// Ranking key: threshold first, then parent rank and the added pair. The
// bisection quantizes thresholds, so exact ties do occur and the tail of the
// key keeps the result schedule-independent.
bool beam_less(const BeamEntry& a, const BeamEntry& b) {
    if (a.threshold_db != b.threshold_db) return a.threshold_db < b.threshold_db;
    if (a.parent_rank != b.parent_rank) return a.parent_rank < b.parent_rank;
    if (a.shorten_col != b.shorten_col) return a.shorten_col < b.shorten_col;
    return a.puncture_col < b.puncture_col;
}

// The threshold of an accumulated pattern depends only on its column sets,
// so two orderings of the same sets are the same search state: keeping both
// would spend beam slots on clones and stall the search. Only the best-ranked
// ordering of each state survives.
std::string state_key(const PruningPattern& p) {
    std::vector<int> s = p.shorten, q = p.puncture;
    std::sort(s.begin(), s.end());
    std::sort(q.begin(), q.end());
    std::string key;
    for (int c : s) key += std::to_string(c) + ",";
    key += ";";
    for (int c : q) key += std::to_string(c) + ",";
    return key;
}

std::vector<BeamEntry> select_beam(std::vector<BeamEntry>&& candidates, int beam_width,
                                   int stage) {
    std::erase_if(candidates, [](const BeamEntry& e) { return std::isinf(e.threshold_db); });
    if (candidates.empty())
        fail(ErrorKind::Infeasible,
             "no candidate converges within the bracket at stage " + std::to_string(stage));
    std::sort(candidates.begin(), candidates.end(), beam_less);
    std::vector<BeamEntry> beam;
    std::set<std::string> seen;
    for (BeamEntry& e : candidates) {
        if (static_cast<int>(beam.size()) >= beam_width) break;
        if (seen.insert(state_key(e.pattern)).second) beam.push_back(std::move(e));
    }
    return beam;
}

} // namespace

SearchResult run_search(const SearchConfig& config) {
    const BaseMatrix& bm = config.matrix;
    const int n = bm.cols();
    const int k = bm.info_cols();
    const int m = bm.rows();
    const int T = config.stages;
    if (T < 1 || config.beam < 1) fail(ErrorKind::Validation, "stages and beam must be >= 1");
    if (2 * T > n || T > k || T >= m)
        fail(ErrorKind::Validation, "infeasible stage count: need 2T <= n, T <= k, T < m");
    const int threads = resolve_threads(config.threads);

    SearchResult result;
    std::vector<BeamEntry> beam;

    for (int t = 1; t <= T; ++t) {
        std::vector<BeamEntry> candidates;
        if (t == 1) {
            for (auto [s, p] : stage1_candidates(bm))
                candidates.push_back({s, p, 0.0, 0, PruningPattern{{s}, {p}}});
        } else {
            for (const StageCandidate& c : stage_candidates(beam, bm)) {
                PruningPattern pat = beam[static_cast<size_t>(c.parent_index)].pattern;
                pat.shorten.push_back(c.shorten_col);
                pat.puncture.push_back(c.puncture_col);
                candidates.push_back(
                    {c.shorten_col, c.puncture_col, 0.0, c.parent_index + 1, std::move(pat)});
            }
        }

        parallel_for(candidates.size(), threads, [&](size_t i) {
            BeamEntry& e = candidates[i];
            ThresholdResult r =
                threshold_for_pattern(bm, e.pattern, std::nullopt, config.pexit);
            e.threshold_db = r.threshold_db;
        });

        beam = select_beam(std::move(candidates), config.beam, t);
        result.stages.push_back(beam);
    }
    return result;
}

} // namespace ldpc
