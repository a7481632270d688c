#ifndef LDPC_CORE_CODEC_HPP
#define LDPC_CORE_CODEC_HPP

#include <cstdint>
#include <vector>

#include "base_matrix.hpp"

namespace ldpc {

/// Decoder saturation value standing in for "infinite" reliability on
/// shortened bits, and the message clip bound for the tanh domain.
inline constexpr double LLR_SAT = 1e3;
inline constexpr double LLR_CLIP = 30.0;

/// Lifted QC code with a precomputed GF(2) factorization of the parity part.
/// Encoding is systematic: information bits first, then parity. Construction
/// fails if the parity part of the lifted matrix is singular.
class LiftedCode {
public:
    explicit LiftedCode(const BaseMatrix& bm);

    int n() const { return n_; }             // coded bits
    int k() const { return k_; }             // information bits
    int m() const { return m_; }             // checks
    int edge_count() const { return static_cast<int>(edge_col_.size()); }

    /// Systematic encoding; info.size() == k(), returns n() bits.
    std::vector<uint8_t> encode(const std::vector<uint8_t>& info) const;

    /// H * c over GF(2); all-zero iff c is a codeword.
    bool in_code(const std::vector<uint8_t>& bits) const;

    // Graph access for the decoder.
    const std::vector<int>& row_ptr() const { return row_ptr_; }
    const std::vector<int>& edge_col() const { return edge_col_; }

private:
    void build_graph(const BaseMatrix& bm);
    void factor_parity(const BaseMatrix& bm);

    int n_ = 0, k_ = 0, m_ = 0, z_ = 0;
    std::vector<int> row_ptr_;   // CSR over checks
    std::vector<int> edge_col_;  // variable index per edge
    // Dense GF(2) LU of the parity square, packed in 64-bit words.
    int words_ = 0;
    std::vector<uint64_t> lower_;  // unit lower triangle, row-major
    std::vector<uint64_t> upper_;  // upper triangle, row-major
    std::vector<int> pivot_rows_;  // row permutation applied to the syndrome
};

struct DecodeResult {
    std::vector<uint8_t> bits;
    bool converged = false;
    int iterations = 0;
};

/// Flooding sum-product decoder with syndrome-check early exit. Owns its
/// working buffers; use one instance per thread and reuse it across frames.
class BpDecoder {
public:
    explicit BpDecoder(const LiftedCode& code);

    DecodeResult decode(const std::vector<double>& llr, int max_iterations);

private:
    bool syndrome_ok(const std::vector<uint8_t>& bits) const;

    const LiftedCode& code_;
    std::vector<double> check_msg_;  // check-to-variable, per edge
    std::vector<double> total_;      // per variable
    std::vector<double> tanh_buf_;
    std::vector<double> prefix_buf_;
    std::vector<uint8_t> hard_;
};

} // namespace ldpc

#endif
