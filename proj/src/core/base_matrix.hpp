#ifndef LDPC_CORE_BASE_MATRIX_HPP
#define LDPC_CORE_BASE_MATRIX_HPP

#include <string>
#include <string_view>
#include <vector>

namespace ldpc {

/// Exact rational, used for code rates.
struct Rational {
    long num = 0;
    long den = 1;

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    Rational reduced() const;
    std::string str() const; // "num/den", reduced
};

/// QC-LDPC base matrix: an m x n grid of circulant shifts with lifting factor Z.
/// Entry -1 denotes the all-zero Z x Z block; h in [0, Z-1] denotes the identity
/// right-shifted h times. Columns 1..k are information columns, k = n - m.
/// Immutable after construction.
class BaseMatrix {
public:
    /// Validating constructor. Rejects out-of-range entries, empty rows/columns,
    /// and degenerate shapes (m < 1 or k < 1).
    BaseMatrix(int cols, int rows, int lift, std::vector<int> entries);

    /// Parse the text format: header "n m Z", then m rows of n shift values.
    /// '#' starts a comment line.
    static BaseMatrix parse(std::string_view text);
    static BaseMatrix load_file(const std::string& path);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int lift() const { return lift_; }
    int info_cols() const { return cols_ - rows_; }

    /// Shift value at (row i, col j), 0-based.
    int at(int i, int j) const { return entries_[static_cast<size_t>(i) * cols_ + j]; }
    bool has_edge(int i, int j) const { return at(i, j) >= 0; }

    int col_degree(int j) const;
    int row_degree(int i) const;
    int edge_count() const;

    Rational design_rate() const { return Rational{info_cols(), cols_}.reduced(); }

    std::string to_text() const;

    /// Remove the given 1-based columns; remaining columns keep their order.
    /// Fails if a row would lose all of its entries. The result may have fewer
    /// information columns than checks (k <= 0 is allowed here).
    BaseMatrix erase_columns(const std::vector<int>& cols_1based) const;

    /// Derive the shift matrix for another lifting factor: h -> floor(h*z/Z).
    /// This is the 802.16e Z-scaling rule; it never changes the support.
    BaseMatrix rescale(int new_lift) const;

    /// True if both matrices have the same -1 / >=0 pattern.
    bool same_support(const BaseMatrix& other) const;

    bool operator==(const BaseMatrix& other) const = default;

private:
    struct unchecked_t {};
    BaseMatrix(unchecked_t, int cols, int rows, int lift, std::vector<int> entries);
    void check_entry_ranges() const;

    int cols_;
    int rows_;
    int lift_;
    std::vector<int> entries_; // row-major
};

} // namespace ldpc

#endif
