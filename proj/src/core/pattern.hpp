#ifndef LDPC_CORE_PATTERN_HPP
#define LDPC_CORE_PATTERN_HPP

#include <string>
#include <vector>

#include "base_matrix.hpp"

namespace ldpc {

/// Ordered pruning pattern: shorten lists information columns to erase,
/// puncture lists columns whose bits are not transmitted. Order matters —
/// it is the priority used when only part of the pattern is applied.
/// Indices are 1-based everywhere a pattern crosses an API boundary.
struct PruningPattern {
    std::vector<int> shorten;
    std::vector<int> puncture;

    int alpha() const { return static_cast<int>(shorten.size()); }
    int beta() const { return static_cast<int>(puncture.size()); }
    bool empty() const { return shorten.empty() && puncture.empty(); }

    /// Prefix pattern: first alpha shorten indices, first beta puncture indices.
    PruningPattern prefix(int alpha, int beta) const;

    std::string to_json() const;
    static PruningPattern from_json(const std::string& text);
    static PruningPattern load_file(const std::string& path);

    bool operator==(const PruningPattern&) const = default;
};

/// Check all pattern invariants against a base matrix; throws on violation.
void validate(const PruningPattern& pattern, const BaseMatrix& bm);

/// Result of applying a pattern: shortened columns erased, punctured columns
/// kept but flagged. puncture_cols holds 1-based indices into `matrix`
/// (reindexed after the erasure).
struct PrunedProtograph {
    BaseMatrix matrix;
    std::vector<int> puncture_cols;
    int transmitted_cols = 0; // n - alpha - beta
    int info_cols = 0;        // k - alpha
};

PrunedProtograph apply(const PruningPattern& pattern, const BaseMatrix& bm);

/// (k - alpha) / (n - alpha - beta); throws if the denominator vanishes.
Rational pruned_rate(int n, int k, int alpha, int beta);

/// Bit-level pruning schedule. Whole columns are pruned first; a trailing
/// partial column takes its first `partial_*_bits` lifted positions
/// (0 < bits < Z; exact multiples of Z fold into the full lists).
struct BitSchedule {
    std::vector<int> full_shorten;
    int partial_shorten_col = 0; // 0 = none
    int partial_shorten_bits = 0;
    std::vector<int> full_puncture;
    int partial_puncture_col = 0;
    int partial_puncture_bits = 0;
    long shortened_bits = 0;   // N_s
    long punctured_bits = 0;   // N_p
    long transmitted_bits = 0; // N = n*Z - N_s - N_p
    Rational tx_rate;          // (k*Z - N_s) / N
};

BitSchedule bit_schedule(const PruningPattern& pattern, const BaseMatrix& bm, long ns_bits,
                         long np_bits);

} // namespace ldpc

#endif
