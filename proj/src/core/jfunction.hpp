#ifndef LDPC_CORE_JFUNCTION_HPP
#define LDPC_CORE_JFUNCTION_HPP

namespace ldpc {

/// J(sigma): mutual information between a BPSK symbol and a consistent
/// Gaussian LLR with standard deviation sigma (mean sigma^2/2).
///
/// Uses the standard two-piece polynomial/exponential fit, made strictly
/// increasing on (0, SIGMA_MAX): the cubic piece is replaced by a matched
/// quadratic below sigma = 0.05 (where the raw cubic is non-monotone), and
/// the exponential piece carries a constant factor that removes the small
/// fit mismatch at the seam. J(0) = 0 and J(sigma >= SIGMA_MAX) = 1.
double j_function(double sigma);

/// Inverse of j_function, computed by bisection on the forward function so
/// that j_function(j_inverse(x)) == x to high accuracy by construction.
/// Inputs <= 0 map to 0; inputs >= 1 map to SIGMA_MAX.
double j_inverse(double mi);

/// Saturation point: beyond it 1 - J(sigma) underflows double precision, so
/// J is pinned to exactly 1 (and J^-1(1) returns this value).
inline constexpr double J_SIGMA_MAX = 20.0;

} // namespace ldpc

#endif
