#ifndef LDPC_CORE_SEARCH_HPP
#define LDPC_CORE_SEARCH_HPP

#include <string>
#include <vector>

#include "base_matrix.hpp"
#include "pattern.hpp"
#include "pexit.hpp"

namespace ldpc {

/// T-stage non-greedy beam search configuration. Each stage adds one
/// (shorten, puncture) column pair to every surviving pattern and keeps the
/// `beam` lowest-threshold candidates, one per distinct pair of column sets.
/// Aggregate: brace-init with the matrix.
struct SearchConfig {
    BaseMatrix matrix;
    int stages = 4;
    int beam = 8;
    int threads = 0; // 0 = resolve from env / hardware
    PexitOptions pexit{};
};

/// One surviving candidate: the pair added at this stage, the threshold of
/// the accumulated pattern, and the parent's rank in the previous beam.
struct BeamEntry {
    int shorten_col = 0;
    int puncture_col = 0;
    double threshold_db = 0.0;
    int parent_rank = 0; // 1-based rank in the previous stage's beam; 0 at stage 1
    PruningPattern pattern; // accumulated ordered pattern up to this stage
};

struct SearchResult {
    std::vector<std::vector<BeamEntry>> stages; // stages[t-1] = beam after stage t
    const std::vector<BeamEntry>& final_beam() const { return stages.back(); }
    const BeamEntry& recommended() const { return stages.back().front(); }
    /// CSV log: stage,rank,s,p,threshold_db,parent_rank
    std::string stage_log_csv() const;
};

/// All stage-1 pairs: s over information columns, p over every other column,
/// enumerated in (s ascending, p ascending) order. Size k*(n-1).
std::vector<std::pair<int, int>> stage1_candidates(const BaseMatrix& bm);

struct StageCandidate {
    int parent_index = 0; // 0-based into the beam
    int shorten_col = 0;
    int puncture_col = 0;
};

/// Legal extensions of every beam entry: s over information columns not yet
/// pruned by the parent pattern, p over the remaining unpruned columns
/// (excluding s). Enumerated in (parent, s, p) order.
std::vector<StageCandidate> stage_candidates(const std::vector<BeamEntry>& beam,
                                             const BaseMatrix& bm);

SearchResult run_search(const SearchConfig& config);

} // namespace ldpc

#endif
