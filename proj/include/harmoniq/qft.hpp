#pragma once

#include <cstdint>
#include <vector>

#include "harmoniq/circuit.hpp"
#include "harmoniq/simulator.hpp"

namespace harmoniq {

/// QFT convention: QFT|j> = N^{-1/2} sum_k omega^{jk} |k> with
/// omega = e^{2 pi i / N}. Output in standard (non bit-reversed) order.
DenseMatrix exact_qft_matrix(int n);

/// Fast in-place transform of a statevector (same convention as the matrix).
StateVector exact_qft(const StateVector& s);
/// Inverse transform.
StateVector exact_qft_inverse(const StateVector& s);

/// Closed-form image of the linear state:
/// QFT|L> = sqrt(3/(N^2-1)) * sum_{k>=1} (1 + i cot(pi k / N)) |k>.
StateVector qft_linear_closed_form(int n);

/// Standard QFT circuit. The distance-1 and distance-2 rotation layers are
/// exact controlled-S / controlled-T gates; every farther rotation carries
/// the synthesized flag with accuracy delta. Ledger T-depth follows
/// (n-3)(1.15 log2(1/delta) + 13.2) + 7 for n >= 3; n < 3 falls back to the
/// fully exact circuit (depth 2 for n = 2, 0 for n = 1).
Circuit build_approx_qft(int n, double delta);

/// Formula-mode T-depth / T-count of the approximate QFT.
double qft_t_depth(int n, double delta);
double qft_t_count(int n, double delta);

struct ErrorFit {
  double measured = 0.0;   // mean deviation over seeds
  double predicted = 0.0;  // quoted fit
  std::vector<double> samples;
};

/// Mean L2 deviation of the perturbed QFT applied to |L>, against the fit
/// (n/2 - 4/3) * delta. Requires n <= 12 and at least 50 seeds.
ErrorFit measure_state_error(int n, double delta, int seeds, uint64_t seed0 = 0);

/// Mean spectral-norm deviation of the perturbed conjugation of the
/// unit-norm linear circulant matrix, against the fit (2/3) n delta.
/// The two QFT applications draw independent perturbations. n <= 8.
ErrorFit measure_conjugation_error(int n, double delta, int seeds, uint64_t seed0 = 0);

}  // namespace harmoniq
