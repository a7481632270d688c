#ifndef LDPC_CORE_BINARY_MATRIX_HPP
#define LDPC_CORE_BINARY_MATRIX_HPP

#include <string>
#include <vector>

#include "base_matrix.hpp"

namespace ldpc {

/// Sparse binary parity-check matrix with row and column adjacency.
/// Produced by lifting a BaseMatrix; every Z x Z block is all-zero or a
/// circulant permutation.
class BinaryMatrix {
public:
    BinaryMatrix(int rows, int cols);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    long ones() const { return ones_; }

    const std::vector<int>& row_cols(int i) const { return row_cols_[static_cast<size_t>(i)]; }
    const std::vector<int>& col_rows(int j) const { return col_rows_[static_cast<size_t>(j)]; }

    void set(int i, int j);
    void finalize(); // sort adjacency lists; call once after all set()

private:
    int rows_;
    int cols_;
    long ones_ = 0;
    std::vector<std::vector<int>> row_cols_;
    std::vector<std::vector<int>> col_rows_;
};

/// Expand each shift entry into its Z x Z block: h = -1 gives the zero block,
/// h >= 0 the identity cyclically right-shifted by h (block-row r has its one
/// in block-column (r + h) mod Z).
BinaryMatrix lift(const BaseMatrix& bm);

/// MacKay alist text for a sparse binary matrix (1-based indices, degree
/// lists padded with zeros to the maximum degree).
std::string to_alist(const BinaryMatrix& h);

} // namespace ldpc

#endif
