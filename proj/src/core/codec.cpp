#include "codec.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "errors.hpp"

namespace ldpc {

namespace {

inline bool get_bit(const std::vector<uint64_t>& row, int j) {
    return (row[static_cast<size_t>(j >> 6)] >> (j & 63)) & 1u;
}

inline void flip_bit(std::vector<uint64_t>& row, int j) {
    row[static_cast<size_t>(j >> 6)] ^= uint64_t{1} << (j & 63);
}

} // namespace

LiftedCode::LiftedCode(const BaseMatrix& bm) {
    z_ = bm.lift();
    n_ = bm.cols() * z_;
    m_ = bm.rows() * z_;
    k_ = n_ - m_;
    if (k_ < 1) fail(ErrorKind::Validation, "lifted code has no information bits");
    build_graph(bm);
    factor_parity(bm);
}

void LiftedCode::build_graph(const BaseMatrix& bm) {
    row_ptr_.assign(static_cast<size_t>(m_) + 1, 0);
    for (int i = 0; i < bm.rows(); ++i) {
        int deg = bm.row_degree(i);
        for (int r = 0; r < z_; ++r) row_ptr_[static_cast<size_t>(i * z_ + r) + 1] = deg;
    }
    for (int i = 0; i < m_; ++i) row_ptr_[static_cast<size_t>(i) + 1] += row_ptr_[static_cast<size_t>(i)];
    edge_col_.resize(static_cast<size_t>(row_ptr_.back()));
    std::vector<int> fill(row_ptr_.begin(), row_ptr_.end() - 1);
    for (int i = 0; i < bm.rows(); ++i)
        for (int j = 0; j < bm.cols(); ++j) {
            int h = bm.at(i, j);
            if (h < 0) continue;
            for (int r = 0; r < z_; ++r) {
                int row = i * z_ + r;
                edge_col_[static_cast<size_t>(fill[static_cast<size_t>(row)]++)] =
                    j * z_ + (r + h) % z_;
            }
        }
}

void LiftedCode::factor_parity(const BaseMatrix& bm) {
    words_ = (m_ + 63) / 64;
    std::vector<std::vector<uint64_t>> a(static_cast<size_t>(m_),
                                         std::vector<uint64_t>(static_cast<size_t>(words_), 0));
    for (int i = 0; i < bm.rows(); ++i)
        for (int j = bm.info_cols(); j < bm.cols(); ++j) {
            int h = bm.at(i, j);
            if (h < 0) continue;
            int jp = j - bm.info_cols();
            for (int r = 0; r < z_; ++r)
                flip_bit(a[static_cast<size_t>(i * z_ + r)], jp * z_ + (r + h) % z_);
        }

    // Gaussian elimination with row pivoting; records L alongside U.
    std::vector<std::vector<uint64_t>> l(static_cast<size_t>(m_),
                                         std::vector<uint64_t>(static_cast<size_t>(words_), 0));
    pivot_rows_.resize(static_cast<size_t>(m_));
    std::vector<int> perm(static_cast<size_t>(m_));
    for (int i = 0; i < m_; ++i) perm[static_cast<size_t>(i)] = i;

    for (int col = 0; col < m_; ++col) {
        int pivot = -1;
        for (int r = col; r < m_; ++r)
            if (get_bit(a[static_cast<size_t>(r)], col)) {
                pivot = r;
                break;
            }
        if (pivot < 0)
            fail(ErrorKind::Singular, "parity part of the lifted matrix is singular");
        std::swap(a[static_cast<size_t>(col)], a[static_cast<size_t>(pivot)]);
        std::swap(l[static_cast<size_t>(col)], l[static_cast<size_t>(pivot)]);
        std::swap(perm[static_cast<size_t>(col)], perm[static_cast<size_t>(pivot)]);
        flip_bit(l[static_cast<size_t>(col)], col); // unit diagonal
        for (int r = col + 1; r < m_; ++r)
            if (get_bit(a[static_cast<size_t>(r)], col)) {
                for (int w = 0; w < words_; ++w)
                    a[static_cast<size_t>(r)][static_cast<size_t>(w)] ^=
                        a[static_cast<size_t>(col)][static_cast<size_t>(w)];
                flip_bit(l[static_cast<size_t>(r)], col);
            }
    }
    for (int i = 0; i < m_; ++i) pivot_rows_[static_cast<size_t>(i)] = perm[static_cast<size_t>(i)];

    lower_.resize(static_cast<size_t>(m_) * words_);
    upper_.resize(static_cast<size_t>(m_) * words_);
    for (int i = 0; i < m_; ++i)
        for (int w = 0; w < words_; ++w) {
            lower_[static_cast<size_t>(i) * words_ + w] = l[static_cast<size_t>(i)][static_cast<size_t>(w)];
            upper_[static_cast<size_t>(i) * words_ + w] = a[static_cast<size_t>(i)][static_cast<size_t>(w)];
        }
}

std::vector<uint8_t> LiftedCode::encode(const std::vector<uint8_t>& info) const {
    if (static_cast<int>(info.size()) != k_)
        fail(ErrorKind::Range, "information word length mismatch");

    // Syndrome of the information part.
    std::vector<uint64_t> synd(static_cast<size_t>(words_), 0);
    for (int i = 0; i < m_; ++i) {
        uint8_t acc = 0;
        for (int e = row_ptr_[static_cast<size_t>(i)]; e < row_ptr_[static_cast<size_t>(i) + 1]; ++e) {
            int v = edge_col_[static_cast<size_t>(e)];
            if (v < k_) acc ^= info[static_cast<size_t>(v)];
        }
        if (acc) flip_bit(synd, i);
    }

    // Apply the recorded row permutation, then solve L y = s, U p = y with
    // word-parallel dot products.
    std::vector<uint64_t> permuted(static_cast<size_t>(words_), 0);
    for (int i = 0; i < m_; ++i)
        if (get_bit(synd, pivot_rows_[static_cast<size_t>(i)])) flip_bit(permuted, i);

    auto dot_below = [this](const uint64_t* row, const std::vector<uint64_t>& vec, int i) {
        uint64_t acc = 0;
        int last = i >> 6;
        for (int w = 0; w < last; ++w) acc ^= row[w] & vec[static_cast<size_t>(w)];
        acc ^= row[last] & vec[static_cast<size_t>(last)] & ((uint64_t{1} << (i & 63)) - 1);
        return static_cast<uint8_t>(std::popcount(acc) & 1);
    };
    auto dot_above = [this](const uint64_t* row, const std::vector<uint64_t>& vec, int i) {
        uint64_t acc = 0;
        int first = i >> 6;
        uint64_t mask = ~(((uint64_t{1} << (i & 63)) - 1) | (uint64_t{1} << (i & 63)));
        acc ^= row[first] & vec[static_cast<size_t>(first)] & mask;
        for (int w = first + 1; w < words_; ++w) acc ^= row[w] & vec[static_cast<size_t>(w)];
        return static_cast<uint8_t>(std::popcount(acc) & 1);
    };

    std::vector<uint64_t> y(static_cast<size_t>(words_), 0);
    for (int i = 0; i < m_; ++i) {
        const uint64_t* lrow = &lower_[static_cast<size_t>(i) * words_];
        if (get_bit(permuted, i) ^ dot_below(lrow, y, i)) flip_bit(y, i);
    }

    std::vector<uint64_t> parity(static_cast<size_t>(words_), 0);
    for (int i = m_ - 1; i >= 0; --i) {
        const uint64_t* urow = &upper_[static_cast<size_t>(i) * words_];
        if (get_bit(y, i) ^ dot_above(urow, parity, i)) flip_bit(parity, i);
    }

    std::vector<uint8_t> codeword(static_cast<size_t>(n_));
    std::copy(info.begin(), info.end(), codeword.begin());
    for (int i = 0; i < m_; ++i) codeword[static_cast<size_t>(k_ + i)] = get_bit(parity, i);
    return codeword;
}

bool LiftedCode::in_code(const std::vector<uint8_t>& bits) const {
    if (static_cast<int>(bits.size()) != n_) return false;
    for (int i = 0; i < m_; ++i) {
        uint8_t acc = 0;
        for (int e = row_ptr_[static_cast<size_t>(i)]; e < row_ptr_[static_cast<size_t>(i) + 1]; ++e)
            acc ^= bits[static_cast<size_t>(edge_col_[static_cast<size_t>(e)])];
        if (acc) return false;
    }
    return true;
}

BpDecoder::BpDecoder(const LiftedCode& code) : code_(code) {
    check_msg_.resize(static_cast<size_t>(code.edge_count()));
    total_.resize(static_cast<size_t>(code.n()));
    tanh_buf_.resize(static_cast<size_t>(code.edge_count()));
    prefix_buf_.resize(static_cast<size_t>(code.edge_count()));
    hard_.resize(static_cast<size_t>(code.n()));
}

bool BpDecoder::syndrome_ok(const std::vector<uint8_t>& bits) const {
    const auto& row_ptr = code_.row_ptr();
    const auto& edge_col = code_.edge_col();
    for (int i = 0; i < code_.m(); ++i) {
        uint8_t acc = 0;
        for (int e = row_ptr[static_cast<size_t>(i)]; e < row_ptr[static_cast<size_t>(i) + 1]; ++e)
            acc ^= bits[static_cast<size_t>(edge_col[static_cast<size_t>(e)])];
        if (acc) return false;
    }
    return true;
}

DecodeResult BpDecoder::decode(const std::vector<double>& llr, int max_iterations) {
    if (static_cast<int>(llr.size()) != code_.n())
        fail(ErrorKind::Range, "LLR frame length mismatch");
    const auto& row_ptr = code_.row_ptr();
    const auto& edge_col = code_.edge_col();
    const int m = code_.m();
    const int n = code_.n();

    std::fill(check_msg_.begin(), check_msg_.end(), 0.0);
    std::copy(llr.begin(), llr.end(), total_.begin());
    for (int v = 0; v < n; ++v) hard_[static_cast<size_t>(v)] = total_[static_cast<size_t>(v)] < 0.0;
    if (syndrome_ok(hard_)) return {hard_, true, 0};

    for (int iter = 1; iter <= max_iterations; ++iter) {
        // Check pass: tanh-product extrinsic per edge (prefix/suffix, no division).
        for (int i = 0; i < m; ++i) {
            int begin = row_ptr[static_cast<size_t>(i)];
            int end = row_ptr[static_cast<size_t>(i) + 1];
            for (int e = begin; e < end; ++e) {
                double in = total_[static_cast<size_t>(edge_col[static_cast<size_t>(e)])] -
                            check_msg_[static_cast<size_t>(e)];
                in = std::clamp(in, -LLR_CLIP, LLR_CLIP);
                tanh_buf_[static_cast<size_t>(e)] = std::tanh(0.5 * in);
            }
            double prefix = 1.0;
            for (int e = begin; e < end; ++e) {
                double t = tanh_buf_[static_cast<size_t>(e)];
                prefix_buf_[static_cast<size_t>(e)] = prefix;
                prefix *= t;
            }
            double suffix = 1.0;
            for (int e = end - 1; e >= begin; --e) {
                double prod = std::clamp(prefix_buf_[static_cast<size_t>(e)] * suffix,
                                         -(1.0 - 1e-13), 1.0 - 1e-13);
                suffix *= tanh_buf_[static_cast<size_t>(e)];
                check_msg_[static_cast<size_t>(e)] =
                    std::clamp(2.0 * std::atanh(prod), -LLR_CLIP, LLR_CLIP);
            }
        }

        // Variable pass: fresh totals.
        std::copy(llr.begin(), llr.end(), total_.begin());
        for (int i = 0; i < m; ++i)
            for (int e = row_ptr[static_cast<size_t>(i)]; e < row_ptr[static_cast<size_t>(i) + 1]; ++e)
                total_[static_cast<size_t>(edge_col[static_cast<size_t>(e)])] +=
                    check_msg_[static_cast<size_t>(e)];

        for (int v = 0; v < n; ++v) hard_[static_cast<size_t>(v)] = total_[static_cast<size_t>(v)] < 0.0;
        if (syndrome_ok(hard_)) return {hard_, true, iter};
    }
    return {hard_, false, max_iterations};
}

} // namespace ldpc
