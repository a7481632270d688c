#include "pattern.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "errors.hpp"

namespace ldpc {

PruningPattern PruningPattern::prefix(int a, int b) const {
    if (a < 0 || a > alpha() || b < 0 || b > beta())
        fail(ErrorKind::Range, "sub-pattern lengths exceed the pattern");
    return PruningPattern{{shorten.begin(), shorten.begin() + a},
                          {puncture.begin(), puncture.begin() + b}};
}

std::string PruningPattern::to_json() const {
    nlohmann::json j;
    j["shorten"] = shorten;
    j["puncture"] = puncture;
    return j.dump();
}

PruningPattern PruningPattern::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_object())
        fail(ErrorKind::Parse, "pattern is not a JSON object");
    PruningPattern p;
    try {
        if (j.contains("shorten")) p.shorten = j.at("shorten").get<std::vector<int>>();
        if (j.contains("puncture")) p.puncture = j.at("puncture").get<std::vector<int>>();
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::Parse, std::string("bad pattern JSON: ") + e.what());
    }
    return p;
}

PruningPattern PruningPattern::load_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) fail(ErrorKind::Io, "cannot open " + path);
    std::ostringstream buf;
    buf << f.rdbuf();
    return from_json(buf.str());
}

void validate(const PruningPattern& pattern, const BaseMatrix& bm) {
    const int n = bm.cols();
    const int k = bm.info_cols();
    std::set<int> seen;
    for (int s : pattern.shorten) {
        if (s < 1 || s > n)
            fail(ErrorKind::Range, "shorten index " + std::to_string(s) + " outside [1, " +
                                       std::to_string(n) + "]");
        if (s > k)
            fail(ErrorKind::Validation,
                 "shorten index " + std::to_string(s) + " is a parity column (k = " +
                     std::to_string(k) + ")");
        if (!seen.insert(s).second)
            fail(ErrorKind::Validation, "column " + std::to_string(s) + " listed twice");
    }
    for (int p : pattern.puncture) {
        if (p < 1 || p > n)
            fail(ErrorKind::Range, "puncture index " + std::to_string(p) + " outside [1, " +
                                       std::to_string(n) + "]");
        if (!seen.insert(p).second)
            fail(ErrorKind::Validation,
                 "column " + std::to_string(p) + " appears in both shorten and puncture");
    }
    if (pattern.beta() >= bm.rows())
        fail(ErrorKind::Validation, "puncturing " + std::to_string(pattern.beta()) +
                                        " columns with only " + std::to_string(bm.rows()) +
                                        " checks leaves no redundancy");
}

PrunedProtograph apply(const PruningPattern& pattern, const BaseMatrix& bm) {
    validate(pattern, bm);
    BaseMatrix pruned = bm.erase_columns(pattern.shorten);
    // Reindex punctures into the erased matrix.
    std::vector<int> punct;
    punct.reserve(pattern.puncture.size());
    for (int p : pattern.puncture) {
        int rank = 0;
        for (int s : pattern.shorten) rank += s < p ? 1 : 0;
        punct.push_back(p - rank);
    }
    return PrunedProtograph{std::move(pruned), std::move(punct),
                            bm.cols() - pattern.alpha() - pattern.beta(),
                            bm.info_cols() - pattern.alpha()};
}

Rational pruned_rate(int n, int k, int alpha, int beta) {
    if (alpha < 0 || beta < 0 || alpha > k)
        fail(ErrorKind::Range, "invalid pruning lengths");
    long den = n - alpha - beta;
    if (den <= 0) fail(ErrorKind::Range, "pattern prunes every column");
    return Rational{k - alpha, den}.reduced();
}

namespace {

struct ColumnSplit {
    std::vector<int> full;
    int partial_col = 0;
    int partial_bits = 0;
};

ColumnSplit split_bits(const std::vector<int>& order, int z, long bits, const char* what) {
    ColumnSplit out;
    if (bits < 0) fail(ErrorKind::Range, std::string(what) + " bit count is negative");
    if (bits == 0) return out;
    long cols_needed = (bits + z - 1) / z;
    if (cols_needed > static_cast<long>(order.size()))
        fail(ErrorKind::Range, std::string(what) + " pattern too short for " +
                                   std::to_string(bits) + " bits");
    long rem = bits - (cols_needed - 1) * z;
    out.full.assign(order.begin(), order.begin() + cols_needed - 1);
    if (rem == z) {
        out.full.push_back(order[static_cast<size_t>(cols_needed) - 1]);
    } else {
        out.partial_col = order[static_cast<size_t>(cols_needed) - 1];
        out.partial_bits = static_cast<int>(rem);
    }
    return out;
}

} // namespace

BitSchedule bit_schedule(const PruningPattern& pattern, const BaseMatrix& bm, long ns_bits,
                         long np_bits) {
    validate(pattern, bm);
    const int z = bm.lift();
    BitSchedule sched;
    ColumnSplit s = split_bits(pattern.shorten, z, ns_bits, "shorten");
    ColumnSplit p = split_bits(pattern.puncture, z, np_bits, "puncture");
    sched.full_shorten = std::move(s.full);
    sched.partial_shorten_col = s.partial_col;
    sched.partial_shorten_bits = s.partial_bits;
    sched.full_puncture = std::move(p.full);
    sched.partial_puncture_col = p.partial_col;
    sched.partial_puncture_bits = p.partial_bits;
    sched.shortened_bits = ns_bits;
    sched.punctured_bits = np_bits;
    sched.transmitted_bits = static_cast<long>(bm.cols()) * z - ns_bits - np_bits;
    if (sched.transmitted_bits <= 0) fail(ErrorKind::Range, "nothing left to transmit");
    long info_bits = static_cast<long>(bm.info_cols()) * z - ns_bits;
    if (info_bits < 0) fail(ErrorKind::Range, "shortening more bits than information bits");
    sched.tx_rate = Rational{info_bits, sched.transmitted_bits}.reduced();
    return sched;
}

} // namespace ldpc
