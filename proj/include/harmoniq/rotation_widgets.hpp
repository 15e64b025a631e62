#pragma once

#include <cstdint>
#include <vector>

#include "harmoniq/circuit.hpp"
#include "harmoniq/simulator.hpp"

namespace harmoniq {

/// A repeat-until-success widget preparing
///   |phi_k> = sqrt(2^k/(2^k+1)) (|0> + 2^{-k/2} |1>)
/// exactly on its first qubit when all k ancillas measure 0, which happens
/// with probability 1/2 + 2^{-(k+1)}. T-depth 2: the controlled-Hadamards
/// share the control and run in parallel.
struct WidgetSpec {
  int k = 1;
  double success_prob() const;
  StateVector target_state() const;  // 1-qubit output
};

/// Circuit layout: qubit 0 = output, qubits [1, k+1) = persistent ancillas.
Circuit build_widget(int k);

struct WidgetRun {
  StateVector output;  // 1-qubit postselected state
  double success_prob;
};
WidgetRun simulate_widget(int k);

enum class ExpBase { Half, InvSqrt2 };

/// Product state |e_beta> with amplitudes proportional to beta^x. The bit of
/// weight w gets a widget with k = w * 2*log2(1/beta), repeated until success
/// independently per bit.
struct ExponentialSpec {
  int a = 1;  // data qubits
  ExpBase base = ExpBase::Half;

  double beta() const;
  /// Widget index for each data qubit, MSB first.
  std::vector<int> widget_ks() const;
  int ancilla_total() const;  // sum of widget ancillas
  StateVector target_state() const;
};

struct ExponentialProgram {
  ExponentialSpec spec;
  std::vector<Circuit> widgets;  // one per data qubit, MSB first
  ResourceEstimate ledger;
};

ExponentialProgram build_exponential(const ExponentialSpec& spec);

/// Tensor product of the simulated widget outputs; equals target_state()
/// to machine precision once every widget has succeeded.
StateVector simulate_exponential(const ExponentialProgram& prog);

struct RusEstimate {
  double mean = 0.0;    // Monte Carlo mean T-depth
  double stderr_ = 0.0;  // standard error of the mean
  double fit = 0.0;     // closed-form fit 2*log2(5n/2 + 0.92)
};

/// Monte Carlo of n parallel RUS components with per-attempt success
/// probabilities `probs`; per trial the depth is 2 * max attempts.
/// Deterministic given (seed, trials) regardless of thread count.
RusEstimate expected_tdepth_mc(const std::vector<double>& probs, int64_t trials, uint64_t seed);

/// Same, with the component probabilities of an n-qubit |e_{1/2}> state:
/// p_i = 1/2 + 2^{-(k_i+1)} with k_i = 2^{i+1}.
RusEstimate expected_tdepth_mc(int n_components, int64_t trials, uint64_t seed);

/// Closed-form fit for the expected T-depth of n parallel widgets.
double rus_fit(int n_components);

/// Exact E[max of n geometric(p) variables] via the tail-sum series.
double expected_max_geometric(int n, double p);

/// Expected T-depth fit 2^(a+1) for the single-ancilla exponential-state
/// variant (formula only; that circuit is not reconstructed here).
double single_ancilla_estimate(int a);

}  // namespace harmoniq
