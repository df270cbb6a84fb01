#pragma once

#include "crowdlim/pmf.hpp"

namespace crowdlim {

/// p * log2(p) with the continuity convention 0 * log 0 = 0.
double plogp(double p);

/// Shannon entropy of a pmf, in bits.
double entropy(const Pmf& p);

/// Entropy in bits of the symmetric pmf (1-epsilon, epsilon/(n-1), ...,
/// epsilon/(n-1)) over n_symbols outcomes. Maximized (= log2 n) at
/// epsilon = (n-1)/n; epsilon may legally exceed that point.
double symmetric_entropy(double epsilon, int n_symbols);

/// Capacity in bits/use of an M-ary symmetric channel with total error
/// probability epsilon: log2(M) - symmetric_entropy(epsilon, M). Reaches
/// exactly zero at epsilon = (M-1)/M (uniform output); callers decide how to
/// treat zero-capacity workers.
double msc_capacity_pointwise(double epsilon, int m_symbols);

/// Rate-distortion value in bits/item for an N-ary source under per-item
/// Hamming distortion: H(source) - symmetric_entropy(target_error, N) while
/// target_error <= min(1 - p_max, 1 - 1/N), and 0 past that point where a
/// constant or uniformly random reconstruction already meets the target.
double rate_distortion_hamming(const Pmf& source, double target_error);

}  // namespace crowdlim
