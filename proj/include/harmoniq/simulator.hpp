#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "harmoniq/circuit.hpp"

namespace harmoniq {

using Complex = std::complex<double>;
using DenseMatrix = Eigen::MatrixXcd;

/// Dense amplitude vector over `qubits` qubits. Big-endian convention:
/// qubit 0 is the most significant bit of the basis index, so basis index
/// x = sum_i 2^(q-1-i) * bit(i). "Qubit k from the bottom" means array
/// index q-1-k (bit weight 2^k).
struct StateVector {
  int qubits = 0;
  std::vector<Complex> amps;

  StateVector() = default;
  explicit StateVector(int q) : qubits(q), amps(size_t(1) << q, Complex(0.0, 0.0)) {}

  size_t dim() const { return amps.size(); }
  double norm() const;

  static StateVector basis(int qubits, uint64_t index);
};

/// How synthesized rotations are simulated. In exact mode delta is ignored.
/// In perturbed mode each synthesized rotation applies Rz(theta + eta) with
/// eta = +/-delta chosen by a counter-based stream keyed on (seed, ordinal of
/// the synthesized gate), so a run is reproducible and every column of a
/// unitary extraction sees the same draw.
struct SynthesisModel {
  enum class Mode { Exact, Perturbed };
  Mode mode = Mode::Exact;
  uint64_t seed = 0;
  double delta_override = 0.0;  // >0 replaces the per-gate delta

  static SynthesisModel exact() { return SynthesisModel{}; }
  static SynthesisModel perturbed(uint64_t seed, double delta_override = 0.0) {
    SynthesisModel m;
    m.mode = Mode::Perturbed;
    m.seed = seed;
    m.delta_override = delta_override;
    return m;
  }
};

/// Applies the circuit's gates in order. Measure gates are rejected;
/// measurement is modelled by postselect(). Width must match.
StateVector run(const Circuit& circuit, const StateVector& input,
                const SynthesisModel& model = SynthesisModel::exact());

/// Projects the contiguous register [start, start+len) onto the computational
/// value `bits` and renormalizes. Returns the conditional state (same width)
/// and the outcome probability. Outcomes with probability < 1e-300 throw.
std::pair<StateVector, double> postselect(const StateVector& state, int start, int len,
                                          uint64_t bits);

/// Removes a register that has already been pinned to `bits` (e.g. right
/// after postselect), returning the state on the remaining qubits.
StateVector drop_register(const StateVector& state, int start, int len, uint64_t bits);

/// Embeds product-state factors into a wider |0...0> background. Factors are
/// (start, state) pairs over disjoint qubit ranges; qubits not covered stay 0.
StateVector tensor_embed(int width, const std::vector<std::pair<int, StateVector>>& factors);

/// Brute-force unitary of a circuit: column j is run(circuit, |j>).
/// Exact-mode rotations unless a model is supplied. Capped at max_qubits.
DenseMatrix unitary_of(const Circuit& circuit, const SynthesisModel& model = SynthesisModel::exact(),
                       int max_qubits = 14);

/// L2 distance minimized over a global phase: for unit vectors this is
/// sqrt(2 - 2|<a|b>|).
double distance(const StateVector& a, const StateVector& b);
/// Plain L2 distance ||a - b|| with the relative phase kept fixed.
double l2_distance(const StateVector& a, const StateVector& b);

/// Largest singular value by power iteration on M^dag M (tolerance 1e-12).
double spectral_norm(const DenseMatrix& m);
/// Spectral-norm distance ||a - b||_2.
double distance(const DenseMatrix& a, const DenseMatrix& b);
/// Largest entry magnitude of a - b.
double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b);

}  // namespace harmoniq
