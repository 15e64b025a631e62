#include "harmoniq/simulator.hpp"

#include <cmath>
#include <stdexcept>

#include "harmoniq/parallel.hpp"
#include "harmoniq/rng.hpp"

namespace harmoniq {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

inline uint64_t qubit_mask(int width, int qubit) {
  return uint64_t(1) << (width - 1 - qubit);
}

/// Visits exactly the indices i with (i & need) == need and (i & zero) == 0,
/// by enumerating submasks of the free-bit complement.
template <typename F>
inline void for_each_match(uint64_t full, uint64_t need, uint64_t zero, F&& f) {
  uint64_t comp = full & ~need & ~zero;
  uint64_t s = comp;
  for (;;) {
    f(need | s);
    if (s == 0) break;
    s = (s - 1) & comp;
  }
}

void apply_phase_if(std::vector<Complex>& s, uint64_t need, Complex phase) {
  uint64_t full = s.size() - 1;
  for_each_match(full, need, 0, [&](uint64_t i) { s[i] *= phase; });
}

void apply_h_controlled(std::vector<Complex>& s, uint64_t ctrl, uint64_t tgt) {
  uint64_t full = s.size() - 1;
  for_each_match(full, ctrl, tgt, [&](uint64_t i) {
    uint64_t j = i | tgt;
    Complex x = s[i], y = s[j];
    s[i] = kInvSqrt2 * (x + y);
    s[j] = kInvSqrt2 * (x - y);
  });
}

void apply_x_controlled(std::vector<Complex>& s, uint64_t ctrl, uint64_t tgt) {
  uint64_t full = s.size() - 1;
  for_each_match(full, ctrl, tgt, [&](uint64_t i) { std::swap(s[i], s[i | tgt]); });
}

void apply_swap_controlled(std::vector<Complex>& s, uint64_t ctrl, uint64_t qa, uint64_t qb) {
  uint64_t full = s.size() - 1;
  for_each_match(full, ctrl | qa, qb, [&](uint64_t i) { std::swap(s[i], s[(i & ~qa) | qb]); });
}

}  // namespace

double StateVector::norm() const {
  double n2 = 0.0;
  for (const auto& a : amps) n2 += std::norm(a);
  return std::sqrt(n2);
}

StateVector StateVector::basis(int qubits, uint64_t index) {
  StateVector s(qubits);
  s.amps[index] = Complex(1.0, 0.0);
  return s;
}

StateVector run(const Circuit& circuit, const StateVector& input, const SynthesisModel& model) {
  if (circuit.width() != input.qubits)
    throw std::invalid_argument("run: circuit width does not match state qubit count");
  if (input.qubits > 26) throw std::invalid_argument("run: state cap of 26 qubits exceeded");

  StateVector out = input;
  auto& s = out.amps;
  int w = circuit.width();
  uint64_t synth_ordinal = 0;

  for (const Gate& g : circuit.gates()) {
    switch (g.kind) {
      case GateKind::H:
        apply_h_controlled(s, 0, qubit_mask(w, g.qubits[0]));
        break;
      case GateKind::X:
        apply_x_controlled(s, 0, qubit_mask(w, g.qubits[0]));
        break;
      case GateKind::Z:
        apply_phase_if(s, qubit_mask(w, g.qubits[0]), Complex(-1.0, 0.0));
        break;
      case GateKind::S:
        apply_phase_if(s, qubit_mask(w, g.qubits[0]), Complex(0.0, 1.0));
        break;
      case GateKind::T:
        apply_phase_if(s, qubit_mask(w, g.qubits[0]), Complex(kInvSqrt2, kInvSqrt2));
        break;
      case GateKind::Tdg:
        apply_phase_if(s, qubit_mask(w, g.qubits[0]), Complex(kInvSqrt2, -kInvSqrt2));
        break;
      case GateKind::CX:
        apply_x_controlled(s, qubit_mask(w, g.qubits[0]), qubit_mask(w, g.qubits[1]));
        break;
      case GateKind::CZ:
        apply_phase_if(s, qubit_mask(w, g.qubits[0]) | qubit_mask(w, g.qubits[1]),
                       Complex(-1.0, 0.0));
        break;
      case GateKind::CH:
        apply_h_controlled(s, qubit_mask(w, g.qubits[0]), qubit_mask(w, g.qubits[1]));
        break;
      case GateKind::SWAP:
        apply_swap_controlled(s, 0, qubit_mask(w, g.qubits[0]), qubit_mask(w, g.qubits[1]));
        break;
      case GateKind::CSWAP:
        apply_swap_controlled(s, qubit_mask(w, g.qubits[0]), qubit_mask(w, g.qubits[1]),
                              qubit_mask(w, g.qubits[2]));
        break;
      case GateKind::CCX:
        apply_x_controlled(s, qubit_mask(w, g.qubits[0]) | qubit_mask(w, g.qubits[1]),
                           qubit_mask(w, g.qubits[2]));
        break;
      case GateKind::Rz:
      case GateKind::CRz: {
        double theta = g.angle;
        if (g.synthesized() && model.mode == SynthesisModel::Mode::Perturbed) {
          double delta = model.delta_override > 0.0 ? model.delta_override : *g.delta;
          CounterRng rng(model.seed, synth_ordinal);
          theta += rng.next_sign() * delta;
        }
        if (g.synthesized()) ++synth_ordinal;
        uint64_t need = 0;
        for (int q : g.qubits) need |= qubit_mask(w, q);
        apply_phase_if(s, need, std::polar(1.0, theta));
        break;
      }
      case GateKind::MCX: {
        uint64_t ctrl = 0;
        for (size_t i = 0; i + 1 < g.qubits.size(); ++i) ctrl |= qubit_mask(w, g.qubits[i]);
        apply_x_controlled(s, ctrl, qubit_mask(w, g.qubits.back()));
        break;
      }
      case GateKind::Incrementer: {
        int len = g.arity();
        std::vector<uint64_t> masks(len);
        for (int i = 0; i < len; ++i) masks[i] = qubit_mask(w, g.qubits[i]);  // MSB first
        std::vector<Complex> next(s.size());
        uint64_t reg_span = uint64_t(1) << len;
        for (size_t i = 0; i < s.size(); ++i) {
          uint64_t v = 0;
          for (int b = 0; b < len; ++b)
            if (i & masks[b]) v |= uint64_t(1) << (len - 1 - b);
          uint64_t v2 = (v + 1) & (reg_span - 1);
          size_t j = i;
          for (int b = 0; b < len; ++b) {
            if (v2 & (uint64_t(1) << (len - 1 - b)))
              j |= masks[b];
            else
              j &= ~masks[b];
          }
          next[j] = s[i];
        }
        s.swap(next);
        break;
      }
      case GateKind::Measure:
        throw std::invalid_argument("run: Measure gates are not supported; use postselect");
    }
  }
  return out;
}

std::pair<StateVector, double> postselect(const StateVector& state, int start, int len,
                                          uint64_t bits) {
  if (start < 0 || len <= 0 || start + len > state.qubits)
    throw std::out_of_range("postselect: register out of range");
  int w = state.qubits;
  int shift = w - start - len;
  uint64_t reg_mask = ((uint64_t(1) << len) - 1) << shift;
  uint64_t want = bits << shift;
  double prob = 0.0;
  for (size_t i = 0; i < state.dim(); ++i)
    if ((i & reg_mask) == want) prob += std::norm(state.amps[i]);
  if (prob < 1e-300) throw std::runtime_error("postselect: impossible outcome");
  StateVector out(state.qubits);
  double scale = 1.0 / std::sqrt(prob);
  for (size_t i = 0; i < state.dim(); ++i)
    if ((i & reg_mask) == want) out.amps[i] = state.amps[i] * scale;
  return {out, prob};
}

StateVector drop_register(const StateVector& state, int start, int len, uint64_t bits) {
  int w = state.qubits;
  if (start < 0 || len <= 0 || start + len > w)
    throw std::out_of_range("drop_register: register out of range");
  int rest = w - len;
  StateVector out(rest);
  int shift = w - start - len;  // bits below the register
  uint64_t low_mask = (uint64_t(1) << shift) - 1;
  for (size_t j = 0; j < out.amps.size(); ++j) {
    uint64_t high = (j >> shift) << (shift + len);
    uint64_t i = high | (bits << shift) | (j & low_mask);
    out.amps[j] = state.amps[i];
  }
  return out;
}

StateVector tensor_embed(int width, const std::vector<std::pair<int, StateVector>>& factors) {
  StateVector out(width);
  for (size_t i = 0; i < out.dim(); ++i) {
    Complex amp(1.0, 0.0);
    uint64_t covered = 0;
    for (const auto& [start, st] : factors) {
      int shift = width - start - st.qubits;
      uint64_t v = (i >> shift) & ((uint64_t(1) << st.qubits) - 1);
      amp *= st.amps[v];
      covered |= (((uint64_t(1) << st.qubits) - 1) << shift);
    }
    if ((i & ~covered) != 0) amp = 0.0;  // uncovered qubits must be |0>
    out.amps[i] = amp;
  }
  return out;
}

DenseMatrix unitary_of(const Circuit& circuit, const SynthesisModel& model, int max_qubits) {
  int q = circuit.width();
  if (q > max_qubits)
    throw std::invalid_argument("unitary_of: qubit cap exceeded (" + std::to_string(q) + " > " +
                                std::to_string(max_qubits) + ")");
  size_t dim = size_t(1) << q;
  DenseMatrix u(dim, dim);
  parallel_for(static_cast<int64_t>(dim), [&](int64_t j) {
    StateVector col = run(circuit, StateVector::basis(q, j), model);
    for (size_t i = 0; i < dim; ++i) u(i, j) = col.amps[i];
  });
  return u;
}

double distance(const StateVector& a, const StateVector& b) {
  if (a.qubits != b.qubits) throw std::invalid_argument("distance: shape mismatch");
  Complex overlap(0.0, 0.0);
  for (size_t i = 0; i < a.dim(); ++i) overlap += std::conj(a.amps[i]) * b.amps[i];
  // Align the global phase and take the plain difference; summing small
  // squares avoids the cancellation a norm-and-overlap formula would hit.
  Complex phase =
      std::abs(overlap) > 0.0 ? std::conj(overlap) / std::abs(overlap) : Complex(1.0, 0.0);
  double d2 = 0.0;
  for (size_t i = 0; i < a.dim(); ++i) d2 += std::norm(a.amps[i] - phase * b.amps[i]);
  return std::sqrt(d2);
}

double l2_distance(const StateVector& a, const StateVector& b) {
  if (a.qubits != b.qubits) throw std::invalid_argument("l2_distance: shape mismatch");
  double d2 = 0.0;
  for (size_t i = 0; i < a.dim(); ++i) d2 += std::norm(a.amps[i] - b.amps[i]);
  return std::sqrt(d2);
}

double spectral_norm(const DenseMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::Index n = m.cols();
  double best = 0.0;
  // A few deterministic restarts guard against an unlucky starting vector.
  for (int restart = 0; restart < 3; ++restart) {
    CounterRng rng(0x5eed5eed, restart);
    Eigen::VectorXcd v(n);
    for (Eigen::Index i = 0; i < n; ++i)
      v(i) = Complex(rng.next_double() - 0.5, rng.next_double() - 0.5);
    v.normalize();
    double sigma = 0.0;
    for (int it = 0; it < 5000; ++it) {
      Eigen::VectorXcd w = m.adjoint() * (m * v);
      double lambda = w.norm();
      if (lambda == 0.0) break;
      v = w / lambda;
      double next = std::sqrt(lambda);
      if (std::abs(next - sigma) <= 1e-12 * std::max(1.0, next)) {
        sigma = next;
        break;
      }
      sigma = next;
    }
    best = std::max(best, sigma);
  }
  return best;
}

double distance(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("distance: shape mismatch");
  return spectral_norm(a - b);
}

double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("max_abs_diff: shape mismatch");
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace harmoniq
