#pragma once

#include <vector>

#include "harmoniq/circuit.hpp"
#include "harmoniq/rotation_widgets.hpp"
#include "harmoniq/simulator.hpp"

namespace harmoniq {

/// Normalized sawtooth state |L> with amplitudes proportional to
/// (N-1)/2 - x over n qubits.
StateVector linear_state(int n);

/// SELECT oracle: sum_k |k><k| (x) Z_k where Z_k acts on the data qubit k
/// counted from the bottom (bit weight 2^k). Built from a controlled-SWAP
/// routing network that moves data qubit k to the bottom position, applies a
/// bare Z and routes back. Layout: ancilla register [0, a), data [a, a+n).
/// Requires n to be a power of two (otherwise the ancilla register would
/// address qubits that do not exist).
Circuit build_select_z(int n);

/// Unary-iteration variant of the same SELECT, valid for any n (one
/// multi-controlled Z per ancilla value below n). Used by block encoders.
Circuit build_select_z_unary(int n, int width, int anc_start, int anc_len, int data_start);

/// The linear-state program: widget-injected exponential ancilla state plus
/// the main circuit (PREP bit flips, data Hadamards, SELECT-Z, ancilla
/// Hadamards, CNOT correction network, final ancilla Hadamards). After the
/// correction the data register holds |L> for every ancilla outcome and the
/// ancilla register returns to |0...0>; only widget retries are probabilistic.
struct LinearProgram {
  int n = 0;  // data qubits (power of two)
  int a = 0;  // ceil(log2 n) ancilla qubits
  std::vector<int> widget_ks;  // widget per ancilla qubit, MSB first
  Circuit main;                // width a + n
  /// Ancilla total as reported in the text: n + 2*ceil(log2 n) - 1. Our
  /// construction uses a + sum(widget_ks) qubits; both are reported.
  int paper_ancilla_total() const;
  int measured_ancilla_total() const;
};

LinearProgram build_linear(int n);

struct LinearRun {
  StateVector data_state;          // n-qubit output
  double ancilla_zero_prob;        // mass on ancilla |0...0> (should be 1)
  std::vector<double> widget_probs;
};

LinearRun simulate_linear(const LinearProgram& prog,
                          const SynthesisModel& model = SynthesisModel::exact());

/// Runs the uncorrected circuit (no CNOT network), postselects the ancilla
/// register on `outcome` and applies the X-pattern correction classically:
/// X on every data qubit k with parity(outcome & k) odd. Returns the
/// corrected data state (used by the exhaustive permutation check).
StateVector simulate_linear_outcome(const LinearProgram& prog, uint64_t outcome);

struct ReduceResult {
  StateVector state;      // (n-1)-qubit linear state
  double outcome1_prob;   // exactly 3/(N^2-1); the quoted fit is 3/N^2
};

/// Hadamard on the bottom qubit and a 0-measurement turn an n-qubit |L>
/// into the (n-1)-qubit |L> exactly. Rejects inputs farther than 1e-9
/// from a linear state.
ReduceResult reduce_linear(const StateVector& state);

struct LinearAnyResult {
  StateVector state;
  double reduction_prob;  // product of the 0-outcome probabilities
  int built_n;            // power of two actually constructed
};

/// Linear state for any n >= 1: builds the next power of two and reduces.
LinearAnyResult linear_state_any(int n, const SynthesisModel& model = SynthesisModel::exact());

}  // namespace harmoniq
