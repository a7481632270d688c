#include "binary_matrix.hpp"

#include <algorithm>
#include <sstream>

#include "errors.hpp"

namespace ldpc {

BinaryMatrix::BinaryMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
    if (rows < 1 || cols < 1) fail(ErrorKind::Validation, "empty binary matrix");
    row_cols_.resize(static_cast<size_t>(rows));
    col_rows_.resize(static_cast<size_t>(cols));
}

void BinaryMatrix::set(int i, int j) {
    row_cols_[static_cast<size_t>(i)].push_back(j);
    col_rows_[static_cast<size_t>(j)].push_back(i);
    ++ones_;
}

void BinaryMatrix::finalize() {
    for (auto& r : row_cols_) std::sort(r.begin(), r.end());
    for (auto& c : col_rows_) std::sort(c.begin(), c.end());
}

BinaryMatrix lift(const BaseMatrix& bm) {
    const int z = bm.lift();
    BinaryMatrix h(bm.rows() * z, bm.cols() * z);
    for (int i = 0; i < bm.rows(); ++i) {
        for (int j = 0; j < bm.cols(); ++j) {
            int shift = bm.at(i, j);
            if (shift < 0) continue;
            for (int r = 0; r < z; ++r) h.set(i * z + r, j * z + (r + shift) % z);
        }
    }
    h.finalize();
    return h;
}

std::string to_alist(const BinaryMatrix& h) {
    const int n = h.cols();
    const int m = h.rows();
    int max_col = 0, max_row = 0;
    for (int j = 0; j < n; ++j) max_col = std::max(max_col, static_cast<int>(h.col_rows(j).size()));
    for (int i = 0; i < m; ++i) max_row = std::max(max_row, static_cast<int>(h.row_cols(i).size()));

    std::ostringstream out;
    out << n << ' ' << m << '\n';
    out << max_col << ' ' << max_row << '\n';
    for (int j = 0; j < n; ++j) out << h.col_rows(j).size() << (j + 1 < n ? ' ' : '\n');
    for (int i = 0; i < m; ++i) out << h.row_cols(i).size() << (i + 1 < m ? ' ' : '\n');
    auto write_padded = [&out](const std::vector<int>& idx, int width) {
        for (int t = 0; t < width; ++t) {
            if (t) out << ' ';
            out << (t < static_cast<int>(idx.size()) ? idx[static_cast<size_t>(t)] + 1 : 0);
        }
        out << '\n';
    };
    for (int j = 0; j < n; ++j) write_padded(h.col_rows(j), max_col);
    for (int i = 0; i < m; ++i) write_padded(h.row_cols(i), max_row);
    return out.str();
}

} // namespace ldpc
