#include "base_matrix.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include "errors.hpp"

namespace ldpc {

Rational Rational::reduced() const {
    if (den == 0) fail(ErrorKind::Range, "rational with zero denominator");
    long g = std::gcd(num, den);
    if (g == 0) return {0, 1};
    long s = den < 0 ? -1 : 1;
    return {s * num / g, s * den / g};
}

std::string Rational::str() const {
    Rational r = reduced();
    return std::to_string(r.num) + "/" + std::to_string(r.den);
}

BaseMatrix::BaseMatrix(unchecked_t, int cols, int rows, int lift, std::vector<int> entries)
    : cols_(cols), rows_(rows), lift_(lift), entries_(std::move(entries)) {}

BaseMatrix::BaseMatrix(int cols, int rows, int lift, std::vector<int> entries)
    : cols_(cols), rows_(rows), lift_(lift), entries_(std::move(entries)) {
    if (rows_ < 1) fail(ErrorKind::Validation, "base matrix needs at least one row");
    if (cols_ <= rows_)
        fail(ErrorKind::Validation, "base matrix needs at least one information column (n > m)");
    if (lift_ < 1) fail(ErrorKind::Validation, "lifting factor must be positive");
    if (entries_.size() != static_cast<size_t>(rows_) * cols_)
        fail(ErrorKind::Validation, "entry count does not match matrix dimensions");
    check_entry_ranges();
    for (int i = 0; i < rows_; ++i)
        if (row_degree(i) == 0)
            fail(ErrorKind::Validation, "row " + std::to_string(i + 1) + " has no entries");
    for (int j = 0; j < cols_; ++j)
        if (col_degree(j) == 0)
            fail(ErrorKind::Validation, "column " + std::to_string(j + 1) + " has no entries");
}

void BaseMatrix::check_entry_ranges() const {
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) {
            int h = at(i, j);
            if (h < -1 || h >= lift_)
                fail(ErrorKind::Validation,
                     "entry " + std::to_string(h) + " at row " + std::to_string(i + 1) +
                         ", column " + std::to_string(j + 1) + " outside [-1, " +
                         std::to_string(lift_ - 1) + "]");
        }
}

BaseMatrix BaseMatrix::parse(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::vector<std::string> rows_text;
    while (std::getline(in, line)) {
        size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        rows_text.push_back(line);
    }
    if (rows_text.empty()) fail(ErrorKind::Parse, "empty base matrix file");

    int n = 0, m = 0, z = 0;
    {
        std::istringstream hdr(rows_text.front());
        if (!(hdr >> n >> m >> z)) fail(ErrorKind::Parse, "malformed header, expected \"n m Z\"");
        std::string extra;
        if (hdr >> extra) fail(ErrorKind::Parse, "trailing tokens after header");
    }
    if (n < 2 || m < 1 || z < 1) fail(ErrorKind::Parse, "invalid dimensions in header");
    if (rows_text.size() != static_cast<size_t>(m) + 1)
        fail(ErrorKind::Parse, "expected " + std::to_string(m) + " matrix rows, got " +
                                   std::to_string(rows_text.size() - 1));

    std::vector<int> entries;
    entries.reserve(static_cast<size_t>(m) * n);
    for (int i = 0; i < m; ++i) {
        std::istringstream row(rows_text[static_cast<size_t>(i) + 1]);
        int v = 0, count = 0;
        while (row >> v) {
            entries.push_back(v);
            ++count;
        }
        if (!row.eof()) fail(ErrorKind::Parse, "non-numeric token in row " + std::to_string(i + 1));
        if (count != n)
            fail(ErrorKind::Parse, "row " + std::to_string(i + 1) + " has " +
                                       std::to_string(count) + " entries, expected " +
                                       std::to_string(n));
    }
    return BaseMatrix(n, m, z, std::move(entries));
}

BaseMatrix BaseMatrix::load_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) fail(ErrorKind::Io, "cannot open " + path);
    std::ostringstream buf;
    buf << f.rdbuf();
    return parse(buf.str());
}

int BaseMatrix::col_degree(int j) const {
    int d = 0;
    for (int i = 0; i < rows_; ++i) d += has_edge(i, j) ? 1 : 0;
    return d;
}

int BaseMatrix::row_degree(int i) const {
    int d = 0;
    for (int j = 0; j < cols_; ++j) d += has_edge(i, j) ? 1 : 0;
    return d;
}

int BaseMatrix::edge_count() const {
    int e = 0;
    for (int i = 0; i < rows_; ++i) e += row_degree(i);
    return e;
}

std::string BaseMatrix::to_text() const {
    std::ostringstream out;
    out << cols_ << ' ' << rows_ << ' ' << lift_ << '\n';
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) {
            if (j) out << ' ';
            out << at(i, j);
        }
        out << '\n';
    }
    return out.str();
}

BaseMatrix BaseMatrix::erase_columns(const std::vector<int>& cols_1based) const {
    std::vector<char> drop(static_cast<size_t>(cols_), 0);
    for (int c : cols_1based) {
        if (c < 1 || c > cols_)
            fail(ErrorKind::Range, "column index " + std::to_string(c) + " outside [1, " +
                                       std::to_string(cols_) + "]");
        drop[static_cast<size_t>(c) - 1] = 1;
    }
    int kept = cols_ - static_cast<int>(std::count(drop.begin(), drop.end(), 1));
    if (kept == 0) fail(ErrorKind::Validation, "erasure would remove every column");

    std::vector<int> entries;
    entries.reserve(static_cast<size_t>(rows_) * kept);
    for (int i = 0; i < rows_; ++i) {
        int deg = 0;
        for (int j = 0; j < cols_; ++j) {
            if (drop[static_cast<size_t>(j)]) continue;
            int h = at(i, j);
            entries.push_back(h);
            deg += h >= 0 ? 1 : 0;
        }
        if (deg == 0)
            fail(ErrorKind::Validation,
                 "erasure leaves check " + std::to_string(i + 1) + " with degree 0");
    }
    return BaseMatrix(unchecked_t{}, kept, rows_, lift_, std::move(entries));
}

BaseMatrix BaseMatrix::rescale(int new_lift) const {
    if (new_lift < 1) fail(ErrorKind::Range, "lifting factor must be positive");
    std::vector<int> entries(entries_.size());
    for (size_t idx = 0; idx < entries_.size(); ++idx) {
        int h = entries_[idx];
        entries[idx] = h < 0 ? -1
                             : static_cast<int>(static_cast<long>(h) * new_lift / lift_);
    }
    return BaseMatrix(unchecked_t{}, cols_, rows_, new_lift, std::move(entries));
}

bool BaseMatrix::same_support(const BaseMatrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_) return false;
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            if (has_edge(i, j) != other.has_edge(i, j)) return false;
    return true;
}

} // namespace ldpc
