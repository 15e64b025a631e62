#include <stdexcept>
#include <cmath>

#include "doctest.h"
#include "harmoniq/circulant_block.hpp"
#include "harmoniq/qft.hpp"
#include "harmoniq/estimator.hpp"
#include "harmoniq/rng.hpp"
#include "harmoniq/simulator.hpp"

using namespace harmoniq;

TEST_CASE("target matrices") {
  DenseMatrix c1 = circulant_matrix(1);
  CHECK(std::abs(c1(0, 0) - 0.5) < 1e-15);
  CHECK(std::abs(c1(0, 1) + 0.5) < 1e-15);
  CHECK(std::abs(c1(1, 0) + 0.5) < 1e-15);
  CHECK(std::abs(c1(1, 1) - 0.5) < 1e-15);

  // C is symmetric with constant anti-diagonals
  DenseMatrix c3 = circulant_matrix(3);
  CHECK(max_abs_diff(c3, c3.transpose()) < 1e-15);
  for (int s = 0; s < 8; ++s)
    for (int i = 0; i <= s && i < 8; ++i)
      if (s - i < 8) CHECK(std::abs(c3(i, s - i) - c3(std::min(s, 7), s - std::min(s, 7))) < 1e-12);

  DenseMatrix d2 = target_matrix(ComponentKind::DMat, 2);
  double b = 5.0 / 3.0;
  DenseMatrix want(4, 4);
  want << 1, 1, 1, 0, 1, 1, 0, -b, 1, 0, -b, -b, 0, -b, -b, -b;
  CHECK(max_abs_diff(d2, want) < 1e-12);
  // the central anti-diagonal is exactly zero
  for (int n = 1; n <= 4; ++n) {
    DenseMatrix d = target_matrix(ComponentKind::DMat, n);
    int N = 1 << n;
    for (int i = 0; i < N; ++i) CHECK(d(i, N - 1 - i) == 0.0);
  }

  DenseMatrix g1 = target_matrix(ComponentKind::Grover, 1);
  CHECK(std::abs(g1(0, 1) - 1.0) < 1e-15);
  CHECK(std::abs(g1(0, 0)) < 1e-15);
}

TEST_CASE("Grover circuit implements the reflection exactly") {
  for (int k = 1; k <= 4; ++k) {
    DenseMatrix g = unitary_of(grover_circuit(k));
    DenseMatrix want = target_matrix(ComponentKind::Grover, k);
    CHECK(max_abs_diff(g, want) <= 1e-12);
    // involution and fixed uniform state
    CHECK(max_abs_diff(DenseMatrix(g * g), DenseMatrix::Identity(g.rows(), g.cols())) <= 1e-12);
    Eigen::VectorXcd s = Eigen::VectorXcd::Constant(1 << k, std::pow(0.5, k / 2.0));
    CHECK((g * s - s).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("state-prep tree reaches arbitrary non-negative weight vectors") {
  for (int qn = 1; qn <= 3; ++qn) {
    for (uint64_t seed = 0; seed < 4; ++seed) {
      CounterRng rng(seed, qn);
      std::vector<double> w(size_t(1) << qn);
      for (auto& x : w) x = rng.next_double();
      if (seed % 2) w[seed % w.size()] = 0.0;  // include zeros
      std::vector<int> qubits;
      for (int i = 0; i < qn; ++i) qubits.push_back(i);
      Circuit c(qn + 1);
      c.append_all(prep_tree_gates(qubits, w, qn, 0.0));
      StateVector out = run(c, StateVector::basis(qn + 1, 0));
      double total = 0.0;
      for (double x : w) total += x;
      StateVector want(qn + 1);
      for (size_t i = 0; i < w.size(); ++i) want.amps[i << 1] = std::sqrt(w[i] / total);
      CHECK(distance(out, want) <= 1e-13);

      // adjoint returns to |0...0>
      Circuit inv(qn + 1);
      inv.append_all(adjoint_gates(c.gates()));
      StateVector back = run(inv, out);
      CHECK(std::abs(std::abs(back.amps[0]) - 1.0) <= 1e-13);
    }
  }
  CHECK_THROWS_AS(prep_tree_gates({0}, {0.0, 0.0}, 1, 0.0), std::invalid_argument);
}

TEST_CASE("component encodings reproduce their targets up to a scalar") {
  // ONES: proportionality 1/N
  ComponentEncoding ones = build_component_encoding(ComponentKind::Ones, 3, 1e-9);
  CHECK(ones.report.distance <= 1e-10);
  CHECK(std::abs(ones.report.proportionality - Complex(1.0 / 8.0, 0.0)) <= 1e-12);

  // DIAG_L at n=3: diagonal and affine in the index
  ComponentEncoding diag = build_component_encoding(ComponentKind::DiagL, 3, 1e-9);
  CHECK(diag.report.distance <= 1e-10);
  const DenseMatrix& blk = diag.report.block;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j)
      if (i != j) CHECK(std::abs(blk(i, j)) <= 1e-12);
  Complex step = blk(1, 1) - blk(0, 0);
  for (int i = 1; i < 8; ++i) CHECK(std::abs(blk(i, i) - blk(i - 1, i - 1) - step) <= 1e-12);

  // injected and synthesized preps produce the same block at power-of-two n
  DenseMatrix inj = extract_block(diag_l_encoder(4, 1e-9, PrepMode::Injected));
  DenseMatrix syn = extract_block(diag_l_encoder(4, 1e-9, PrepMode::Synthesized));
  CHECK(max_abs_diff(inj, syn) <= 1e-12);

  ComponentEncoding d4 = build_component_encoding(ComponentKind::DMat, 4, 1e-9);
  CHECK(d4.report.distance <= 1e-10);

  ComponentEncoding r3 = build_component_encoding(ComponentKind::RGate, 3, 1e-9);
  CHECK(r3.report.distance <= 1e-12);
}

TEST_CASE("component residuals stay tiny over the full small grid") {
  for (int n = 2; n <= 6; ++n) {
    for (auto which :
         {ComponentKind::Ones, ComponentKind::DiagL, ComponentKind::DMat, ComponentKind::Xn}) {
      ComponentEncoding enc = build_component_encoding(which, n, 1e-9);
      CHECK(enc.report.distance <= 1e-10);
    }
  }
}

TEST_CASE("convolution lemma checks") {
  CounterRng rng(12, 0);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<Complex> v(8);
    for (auto& x : v) x = Complex(rng.next_double() - 0.5, rng.next_double() - 0.5);
    ConvolutionCheck res = convolution_check(v, 3);
    CHECK(res.off_diag_max <= 1e-10);
    CHECK(std::abs(res.scalar - Complex(std::sqrt(8.0), 0.0)) <= 1e-10);
  }
  // uniform vector: diagonal supported on a single entry
  std::vector<Complex> uniform(8, Complex(0.5, 0.0));
  ConvolutionCheck u = convolution_check(uniform, 3);
  CHECK(u.off_diag_max <= 1e-12);
  DenseMatrix q = exact_qft_matrix(3);
  StateVector sv(3);
  sv.amps = uniform;
  StateVector qv = exact_qft(sv);
  for (size_t i = 1; i < 8; ++i) CHECK(std::abs(qv.amps[i]) <= 1e-12);

  std::vector<Complex> zero(8, Complex(0.0, 0.0));
  ConvolutionCheck z = convolution_check(zero, 3);
  CHECK(z.off_diag_max == 0.0);
  CHECK(std::abs(z.scalar) == 0.0);
}

TEST_CASE("circulant encoding closes onto C with the solved weights") {
  CirculantEncoding enc = build_circulant_encoding(4, 1e-9);
  CHECK(enc.report.distance <= 1e-10);
  CHECK(enc.report.proportionality.real() > 0.0);
  CHECK(std::abs(enc.report.proportionality.imag()) <= 1e-12);

  // Decomposition closure: weighted component targets rebuild C entrywise.
  DenseMatrix B1 = extract_block(diag_l_encoder(4, 1e-9)) * extract_block(ones_encoder(4));
  DenseMatrix B2 = extract_block(ones_encoder(4)) * extract_block(diag_l_encoder(4, 1e-9));
  DenseMatrix B3 = extract_block(d_encoder(4, 1e-9));
  DenseMatrix B4 = extract_block(xn_encoder(4));
  DenseMatrix sum = enc.weights(0) * B1 + enc.weights(1) * B2 + enc.weights(2) * B3 +
                    enc.weights(3) * B4;
  CHECK(max_abs_diff(sum, circulant_matrix(4)) <= 1e-10);

  // The X^n weight is exponentially suppressed relative to the others.
  double wx = std::abs(enc.weights(3));
  for (int i = 0; i < 3; ++i) CHECK(wx * 8.0 < std::abs(enc.weights(i)));
}

TEST_CASE("circulant subnormalization and max element at n=6") {
  CirculantEncoding enc = build_circulant_encoding(6, 1e-9);
  CHECK(enc.report.alpha >= 0.1008);
  CHECK(enc.report.alpha <= 0.1114);
  double want = 1.0 / (3.0 * 64.0);
  CHECK(std::abs(enc.report.max_element - want) <= 0.05 * want);
  CHECK(enc.t_depth == cost::circulant(6, 1e-9));
}

TEST_CASE("perturbed circulant error tracks (n/5 + 4) delta within a factor 2") {
  int n = 4;
  double delta = 1e-3;
  CirculantEncoding enc = build_circulant_encoding(n, delta);
  DenseMatrix exact = enc.report.block;
  double alpha = enc.report.alpha;
  double sum = 0.0;
  int seeds = 12;
  for (int s = 0; s < seeds; ++s) {
    DenseMatrix pert = extract_block(enc.encoder, SynthesisModel::perturbed(s + 1));
    sum += spectral_norm(pert - exact) / alpha;
  }
  double measured = sum / seeds;
  double predicted = (n / 5.0 + 4.0) * delta;
  CHECK(measured / predicted >= 0.5);
  CHECK(measured / predicted <= 2.0);
}

TEST_CASE("diagonal harmonic block") {
  DiagHarmonicEncoding enc = build_diag_harmonic(4, 3, 2e-9, 1e-9);
  CHECK(enc.distance <= 2.0 * enc.bound);

  // exact mode: the block is diagonal
  DiagHarmonicEncoding e22 = build_diag_harmonic(2, 2, 2e-9, 1e-9);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i != j) CHECK(std::abs(e22.block(i, j)) <= 1e-10);

  // enlarging m strictly improves the approximation at fixed n
  DiagHarmonicEncoding m0 = build_diag_harmonic(4, 0, 2e-9, 1e-9);
  CHECK(enc.distance < m0.distance);

  CHECK_THROWS_AS(build_diag_harmonic(8, 2, 2e-9, 1e-9), std::invalid_argument);
}

TEST_CASE("encoder preconditions") {
  CHECK_THROWS_AS(build_circulant_encoding(2, 1e-9), std::invalid_argument);
  CHECK_THROWS_AS(build_circulant_encoding(9, 1e-9), std::invalid_argument);
  CHECK_THROWS_AS(diag_l_encoder(3, 1e-9, PrepMode::Injected), std::invalid_argument);
  CHECK_THROWS_AS(convolution_check(std::vector<Complex>(4), 3), std::invalid_argument);
}
