#pragma once

#include <cstdint>

#include "harmoniq/circuit.hpp"
#include "harmoniq/linear_prep.hpp"
#include "harmoniq/simulator.hpp"

namespace harmoniq {

/// Normalized harmonic-sequence state: amplitudes proportional to
/// (0, 1, 1/2, ..., 1/(N-1)).
StateVector harmonic_target(int n);

enum class CotangentVariant { Single, Combined };

/// Analytic cotangent states. Single:
///   |c>  ~ sum_{x=1}^{N-1} (1 + i cot(pi x / (M N))) |x>,
/// combined:
///   |c'> ~ (1/2)|0...0> + i sum_{x=1}^{N-1} cot(pi x / (M N)) |x>,
/// with M = 2^m. Only the n-qubit vector is materialized (n <= 26); m enters
/// through the cotangent argument and may be large.
StateVector cotangent_target(int n, int m, CotangentVariant variant);

/// Analytic form of the amended second asymptote (ancillas all ones,
/// combine = false): proportional to -|0> + sum_{x>=1} (1 - i cot(pi x/(MN))) |x>.
StateVector amended_mirror_target(int n, int m);

/// The full state-preparation pipeline on q = n + m qubits: linear state,
/// QFT, asymptote amendment (stray-amplitude relocation with a sign, the
/// top-ancilla-conditioned bit reversal, a controlled incrementer), and for
/// the combined variant the ancilla relocation CNOTs plus the phased
/// Hadamard (phase -1, frozen empirically) on the top ancilla.
struct HarmonicProgram {
  int n = 0;
  int m = 0;
  double delta = 0.0;
  bool combine = true;
  Circuit qft;    // over q qubits
  Circuit amend;  // over q qubits, includes combine stage when requested
  ResourceEstimate ledger;
};

HarmonicProgram build_harmonic(int n, int m, double delta, bool combine);

struct HarmonicRun {
  StateVector output;        // n-qubit postselected state (ancillas |0...0>)
  double post_prob;          // probability of the all-zeros ancilla outcome
  double mirror_prob;        // all-ones outcome probability (combine = false)
  StateVector mirror_output; // amended second asymptote (combine = false)
  double reduction_prob;     // linear-stage reduction probability
};

HarmonicRun run_harmonic(const HarmonicProgram& prog,
                         const SynthesisModel& model = SynthesisModel::exact());

struct StateOptimum {
  int m = 0;
  double delta = 0.0;
  double t_depth = 0.0;  // expected T-depth
  double t_count = 0.0;
  double epsilon_achieved = 0.0;
  double qft_share = 0.0;
  double qft_count_share = 0.0;
  double ancilla_clean = 0.0;
  double ancilla_persistent = 0.0;
};

/// Grid search over m in [1, 40] and a 60-points-per-decade delta grid,
/// subject to sqrt(3)/2^(n+m+1/2) + ((n+m)/2 - 4/3) delta <= epsilon.
/// Objective: linear(n+m) + qft(n+m, delta) + mcx(n+1) + incrementer(n).
/// Ties break to the smallest m, then the largest delta.
StateOptimum optimize_state(int n, double epsilon);

/// Smallest total qubit count q with sqrt(3)/2^(q+1/2) <= epsilon, i.e.
/// ceil(log2(sqrt(3)/epsilon) - 1/2).
int required_qubits(double epsilon);

}  // namespace harmoniq
