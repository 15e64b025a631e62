#pragma once

#include <vector>

#include <Eigen/Dense>

#include "harmoniq/circuit.hpp"
#include "harmoniq/simulator.hpp"

namespace harmoniq {

/// Linear circulant matrix: C_ij = (N-1)/2 - ((i+j) mod N).
DenseMatrix circulant_matrix(int n);
/// Its spectral norm in closed form: N / (2 sin(pi/N)).
double circulant_spectral_norm(int n);

enum class ComponentKind { Ones, DiagL, DMat, Xn, Grover, RGate };

/// Target matrices. Ones: all ones. DiagL: the affine diagonal produced by
/// the geometric Z LCU, diag((N-1-2i)/(N-1)). DMat:
/// [i+j < N-1] - (N+1)/(N-1) [i+j > N-1]. Xn: X^(x)n. Grover: 2|s><s| - I
/// on n qubits. RGate: diag(1, -(N+1)/(N-1)) where N refers to 2^n.
DenseMatrix target_matrix(ComponentKind which, int n);

/// A block-encoding circuit plus optional widget-state injections at the
/// input. Data register is always the trailing (least significant) qubits;
/// the encoded block lives where every other qubit is |0> in and out.
struct BlockEncoder {
  Circuit circuit;
  std::vector<std::pair<int, StateVector>> injections;
  int data_start = 0;
  int data_len = 0;
};

/// Top-left block over the first 2^sub_n basis states of the data register
/// (sub_n = data_len for the full block). Columns run in parallel.
DenseMatrix extract_block(const BlockEncoder& enc,
                          const SynthesisModel& model = SynthesisModel::exact(),
                          int sub_n = -1);

struct BlockEncodingReport {
  DenseMatrix block;
  Complex proportionality;  // best scalar fit block ~ proportionality * target
  double alpha = 0.0;       // spectral norm of the block (subnormalization)
  double max_element = 0.0;
  double distance = 0.0;      // spectral residual after the scalar fit
  double max_residual = 0.0;  // max-element residual after the fit
};

BlockEncodingReport report_block(const DenseMatrix& block, const DenseMatrix& target);

enum class PrepMode { Injected, Synthesized };

/// Component encoders. All preps are symmetric; rotations carry the
/// synthesized flag with accuracy delta. DiagL's first PREP can inject the
/// widget-built exponential state (power-of-two n only); the adjoint PREP is
/// always the synthesized rotation tree.
BlockEncoder ones_encoder(int n);
BlockEncoder diag_l_encoder(int n, double delta, PrepMode mode = PrepMode::Synthesized);
BlockEncoder d_encoder(int n, double delta);
BlockEncoder xn_encoder(int n);
BlockEncoder r_encoder(int n, double delta);  // single data qubit, R of size N = 2^n
Circuit grover_circuit(int k);                 // plain unitary 2|s><s| - I

struct ComponentEncoding {
  BlockEncoder encoder;
  BlockEncodingReport report;
};

ComponentEncoding build_component_encoding(ComponentKind which, int n, double delta);

struct CirculantEncoding {
  BlockEncoder encoder;
  BlockEncodingReport report;
  Eigen::Vector4cd weights;  // solved LCU weights on diag*1, 1*diag, D, X^n
  double t_depth = 0.0;      // quoted formula 6.9 log2(1/delta) + 8n + 24 log2 n + 94.1
};

/// Plain LCU of the four verified components with numerically solved PREP
/// weights; the combined block is proportional to C exactly in exact mode.
CirculantEncoding build_circulant_encoding(int n, double delta);

struct DiagHarmonicEncoding {
  BlockEncoder encoder;
  DenseMatrix block;        // top-left n-qubit data block
  double alpha = 0.0;
  double distance = 0.0;    // unit-norm block vs i * diag(1/x)
  double bound = 0.0;       // pi / 2^(n+m)
  double t_depth = 0.0;
};

/// Conjugates the (n+m)-qubit circulant encoding with (n+m)-qubit QFTs
/// (delta0 per QFT rotation, delta1 inside the circulant encoder) and
/// extracts the top-left n-qubit block, which approximates i * diag(|h>).
DiagHarmonicEncoding build_diag_harmonic(int n, int m, double delta0, double delta1);

/// Same, reusing an already-built circulant encoding over n+m qubits.
DiagHarmonicEncoding diag_harmonic_from(const CirculantEncoding& circ, int n, int m,
                                        double delta0);

struct ConvolutionCheck {
  double off_diag_max = 0.0;
  Complex scalar;  // diagonal relative to QFT(v); sqrt(N) in this convention
};

/// Builds C_ij = v_{(i+j) mod N} and conjugates with the exact QFT (the
/// symmetric conjugation QFT * C * QFT diagonalizes this index convention).
ConvolutionCheck convolution_check(const std::vector<Complex>& v, int n);

/// Emits gates preparing sqrt(weights)/norm over `qubits` (MSB first) from
/// |0...0>, as a tree of controlled y-rotations compiled to H/CH/CRz/CS with
/// the synthesized flag `delta` (0 = exact). Nodes with two controls use the
/// clean `flag` qubit. Returns the emitted gates so callers can append the
/// adjoint later.
std::vector<Gate> prep_tree_gates(const std::vector<int>& qubits, const std::vector<double>& weights,
                                  int flag, double delta);
std::vector<Gate> adjoint_gates(const std::vector<Gate>& gates);

}  // namespace harmoniq
