#include "harmoniq/circulant_block.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

#include "harmoniq/estimator.hpp"
#include "harmoniq/linear_prep.hpp"
#include "harmoniq/parallel.hpp"
#include "harmoniq/qft.hpp"
#include "harmoniq/rotation_widgets.hpp"

namespace harmoniq {

namespace {

constexpr double kPi = 3.14159265358979323846;

int ceil_log2(int n) {
  int a = 0;
  while ((1 << a) < n) ++a;
  return a;
}

Gate mcx_gate(std::vector<int> controls, int target) {
  controls.push_back(target);
  if (controls.size() == 2) return gate(GateKind::CX, controls);
  if (controls.size() == 3) return gate(GateKind::CCX, controls);
  return gate(GateKind::MCX, controls);
}

/// Phase -1 exactly when every qubit in `qs` is 1 (|qs| >= 1).
void emit_mcz(std::vector<Gate>& gs, std::vector<int> qs) {
  if (qs.size() == 1) {
    gs.push_back(gate(GateKind::Z, qs));
    return;
  }
  if (qs.size() == 2) {
    gs.push_back(gate(GateKind::CZ, qs));
    return;
  }
  int target = qs.back();
  qs.pop_back();
  gs.push_back(gate(GateKind::H, {target}));
  gs.push_back(mcx_gate(qs, target));
  gs.push_back(gate(GateKind::H, {target}));
}

/// X gates turning "register == pattern" into an all-ones control set.
std::vector<Gate> pattern_conj(const std::vector<int>& qubits, uint64_t pattern) {
  std::vector<Gate> conj;
  for (size_t j = 0; j < qubits.size(); ++j) {
    int bit = static_cast<int>((pattern >> (qubits.size() - 1 - j)) & 1);
    if (!bit) conj.push_back(gate(GateKind::X, {qubits[j]}));
  }
  return conj;
}

/// Exact state-prep rotation: column (cos t, sin t) from |0>.
void emit_prep_y(std::vector<Gate>& gs, int q, double theta, double delta) {
  auto rot = [&](double angle) {
    Gate g = rz(q, angle);
    if (delta > 0.0) g.delta = delta;
    return g;
  };
  gs.push_back(gate(GateKind::H, {q}));
  gs.push_back(rot(2.0 * theta));
  gs.push_back(gate(GateKind::H, {q}));
  gs.push_back(gate(GateKind::S, {q}));
}

/// Controlled version with the branch phase cancelled, so the fired column
/// is exactly (cos t, sin t).
void emit_cprep_y(std::vector<Gate>& gs, int ctl, int q, double theta, double delta) {
  auto rot = [&](int a, int b, double angle) {
    Gate g = crz(a, b, angle);
    if (delta > 0.0) g.delta = delta;
    return g;
  };
  gs.push_back(gate(GateKind::CH, {ctl, q}));
  gs.push_back(rot(ctl, q, 2.0 * theta));
  gs.push_back(gate(GateKind::CH, {ctl, q}));
  gs.push_back(crz(ctl, q, kPi / 2.0));  // exact controlled-S
  Gate fix = rz(ctl, -theta);
  if (delta > 0.0) fix.delta = delta;
  gs.push_back(fix);
}

/// Grover reflection 2|s><s| - I over `data`, fired when every control in
/// `ctls` is 1.
void emit_controlled_grover(std::vector<Gate>& gs, const std::vector<int>& ctls,
                            const std::vector<int>& data) {
  emit_mcz(gs, ctls);  // global -1 of the reflection
  for (int q : data) gs.push_back(gate(GateKind::H, {q}));
  for (int q : data) gs.push_back(gate(GateKind::X, {q}));
  std::vector<int> all = ctls;
  all.insert(all.end(), data.begin(), data.end());
  emit_mcz(gs, all);
  for (int q : data) gs.push_back(gate(GateKind::X, {q}));
  for (int q : data) gs.push_back(gate(GateKind::H, {q}));
}

/// Block-encodes R = diag(1, -(N+1)/(N-1)) on data qubit `dq` into ancilla
/// `r` when `ctls` fire, using `flag` for the rotation control: block
/// diag(c, -1) with c = (N-1)/(N+1).
void emit_r_gadget(std::vector<Gate>& gs, const std::vector<int>& ctls, int dq, int r, int flag,
                   double theta_c, double delta) {
  std::vector<int> with_dq = ctls;
  with_dq.push_back(dq);
  emit_mcz(gs, with_dq);  // the -1 on data bit 1
  gs.push_back(gate(GateKind::X, {dq}));
  gs.push_back(mcx_gate(with_dq, flag));
  gs.push_back(gate(GateKind::X, {dq}));
  emit_cprep_y(gs, flag, r, theta_c, delta);
  gs.push_back(gate(GateKind::X, {dq}));
  gs.push_back(mcx_gate(with_dq, flag));
  gs.push_back(gate(GateKind::X, {dq}));
}

double r_theta(int n) {
  double N = std::ldexp(1.0, n);
  return std::acos((N - 1.0) / (N + 1.0));
}

struct DCoreLayout {
  std::vector<int> geo;
  int u, r, flag;
  int data_start, n;
};

/// The D SELECT network: for each geometric-register value k, X on the top
/// k data qubits, the R gadget on data qubit k, and the Grover reflection on
/// the remaining bottom qubits (shared uniform ancilla). `base` carries any
/// additional LCU controls.
void emit_d_core(std::vector<Gate>& gs, const DCoreLayout& lay, const std::vector<int>& base,
                 double delta) {
  int n = lay.n;
  double theta_c = r_theta(n);
  for (int k = 0; k < n; ++k) {
    std::vector<Gate> conj = pattern_conj(lay.geo, static_cast<uint64_t>(k));
    for (const auto& g : conj) gs.push_back(g);
    std::vector<int> ctls = base;
    ctls.insert(ctls.end(), lay.geo.begin(), lay.geo.end());
    for (int j = 0; j < k; ++j) gs.push_back(mcx_gate(ctls, lay.data_start + j));
    emit_r_gadget(gs, ctls, lay.data_start + k, lay.r, lay.flag, theta_c, delta);
    int bottom = n - k - 1;
    if (bottom >= 1) {
      std::vector<int> bots;
      for (int j = k + 1; j < n; ++j) bots.push_back(lay.data_start + j);
      std::vector<int> gctls = ctls;
      gctls.push_back(lay.u);
      emit_controlled_grover(gs, gctls, bots);
    }
    for (const auto& g : conj) gs.push_back(g);
  }
}

}  // namespace

DenseMatrix circulant_matrix(int n) {
  if (n < 1 || n > 12) throw std::invalid_argument("circulant_matrix: n out of range");
  size_t N = size_t(1) << n;
  DenseMatrix C(N, N);
  double Nd = static_cast<double>(N);
  for (size_t i = 0; i < N; ++i)
    for (size_t j = 0; j < N; ++j)
      C(i, j) = (Nd - 1.0) / 2.0 - static_cast<double>((i + j) % N);
  return C;
}

double circulant_spectral_norm(int n) {
  double N = std::ldexp(1.0, n);
  return N / (2.0 * std::sin(kPi / N));
}

DenseMatrix target_matrix(ComponentKind which, int n) {
  if (n < 1 || n > 10) throw std::invalid_argument("target_matrix: n out of range");
  size_t N = size_t(1) << n;
  double Nd = static_cast<double>(N);
  DenseMatrix m = DenseMatrix::Zero(N, N);
  switch (which) {
    case ComponentKind::Ones:
      m.setOnes();
      return m;
    case ComponentKind::DiagL:
      for (size_t i = 0; i < N; ++i) m(i, i) = (Nd - 1.0 - 2.0 * i) / (Nd - 1.0);
      return m;
    case ComponentKind::DMat: {
      double beta = (Nd + 1.0) / (Nd - 1.0);
      for (size_t i = 0; i < N; ++i)
        for (size_t j = 0; j < N; ++j) {
          size_t s = i + j;
          if (s < N - 1)
            m(i, j) = 1.0;
          else if (s > N - 1)
            m(i, j) = -beta;
        }
      return m;
    }
    case ComponentKind::Xn:
      for (size_t i = 0; i < N; ++i) m(i, N - 1 - i) = 1.0;
      return m;
    case ComponentKind::Grover: {
      m.setConstant(2.0 / Nd);
      for (size_t i = 0; i < N; ++i) m(i, i) -= 1.0;
      return m;
    }
    case ComponentKind::RGate: {
      DenseMatrix r = DenseMatrix::Zero(2, 2);
      r(0, 0) = 1.0;
      r(1, 1) = -(Nd + 1.0) / (Nd - 1.0);
      return r;
    }
  }
  throw std::logic_error("target_matrix: unknown component");
}

DenseMatrix extract_block(const BlockEncoder& enc, const SynthesisModel& model, int sub_n) {
  int q = enc.data_len;
  if (sub_n < 0) sub_n = q;
  if (enc.data_start + enc.data_len != enc.circuit.width())
    throw std::logic_error("extract_block: data register must be the trailing qubits");
  size_t dim = size_t(1) << sub_n;
  DenseMatrix block(dim, dim);
  int width = enc.circuit.width();
  parallel_for(static_cast<int64_t>(dim), [&](int64_t x) {
    auto factors = enc.injections;
    factors.emplace_back(enc.data_start, StateVector::basis(q, static_cast<uint64_t>(x)));
    StateVector in = tensor_embed(width, factors);
    StateVector out = run(enc.circuit, in, model);
    for (size_t y = 0; y < dim; ++y) block(y, x) = out.amps[y];
  });
  return block;
}

BlockEncodingReport report_block(const DenseMatrix& block, const DenseMatrix& target) {
  BlockEncodingReport rep;
  rep.block = block;
  Complex num(0.0, 0.0);
  double den = 0.0;
  for (Eigen::Index j = 0; j < block.cols(); ++j)
    for (Eigen::Index i = 0; i < block.rows(); ++i) {
      num += std::conj(target(i, j)) * block(i, j);
      den += std::norm(target(i, j));
    }
  rep.proportionality = den > 0.0 ? num / den : Complex(0.0, 0.0);
  rep.alpha = spectral_norm(block);
  rep.max_element = block.cwiseAbs().maxCoeff();
  DenseMatrix resid = block - rep.proportionality * target;
  rep.distance = spectral_norm(resid);
  rep.max_residual = resid.cwiseAbs().maxCoeff();
  return rep;
}

BlockEncoder ones_encoder(int n) {
  if (n < 1 || n > 8) throw std::invalid_argument("ones_encoder: n out of range");
  BlockEncoder enc;
  Circuit c(1 + n);
  c.add_register("u", 0, 1, RegKind::PersistentAncilla);
  c.add_register("data", 1, n, RegKind::Data);
  std::vector<Gate> gs;
  std::vector<int> data;
  for (int i = 0; i < n; ++i) data.push_back(1 + i);
  gs.push_back(gate(GateKind::H, {0}));
  emit_controlled_grover(gs, {0}, data);
  gs.push_back(gate(GateKind::H, {0}));
  c.append_all(gs);
  auto& l = c.ledger();
  l.t_depth = 4.0 * std::ceil(std::log2(n + 1.0)) + 8.0;
  l.expected_t_depth = l.t_depth;
  l.t_count = 4.0 * n;
  l.persistent_ancilla = 1;
  enc.circuit = std::move(c);
  enc.data_start = 1;
  enc.data_len = n;
  return enc;
}

std::vector<Gate> prep_tree_gates(const std::vector<int>& qubits,
                                  const std::vector<double>& weights, int flag, double delta) {
  int k = static_cast<int>(qubits.size());
  if (weights.size() != (size_t(1) << k))
    throw std::invalid_argument("prep_tree_gates: weight count must be 2^qubits");
  double total = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw std::invalid_argument("prep_tree_gates: weights must be non-negative");
    total += w;
  }
  if (total <= 0.0) throw std::invalid_argument("prep_tree_gates: all weights zero");

  // mass[level][prefix]
  std::vector<std::vector<double>> mass(k + 1);
  mass[k] = weights;
  for (int level = k - 1; level >= 0; --level) {
    mass[level].resize(size_t(1) << level);
    for (size_t p = 0; p < mass[level].size(); ++p)
      mass[level][p] = mass[level + 1][2 * p] + mass[level + 1][2 * p + 1];
  }

  std::vector<Gate> gs;
  for (int level = 0; level < k; ++level) {
    for (size_t p = 0; p < (size_t(1) << level); ++p) {
      double m0 = mass[level + 1][2 * p];
      double m1 = mass[level + 1][2 * p + 1];
      if (m0 + m1 <= 0.0) continue;
      double theta = std::atan2(std::sqrt(m1), std::sqrt(m0));
      if (theta == 0.0) continue;
      if (level == 0) {
        emit_prep_y(gs, qubits[0], theta, delta);
      } else if (level == 1) {
        std::vector<Gate> conj = pattern_conj({qubits[0]}, p);
        for (const auto& g : conj) gs.push_back(g);
        emit_cprep_y(gs, qubits[0], qubits[1], theta, delta);
        for (const auto& g : conj) gs.push_back(g);
      } else {
        std::vector<int> pat(qubits.begin(), qubits.begin() + level);
        std::vector<Gate> conj = pattern_conj(pat, p);
        for (const auto& g : conj) gs.push_back(g);
        gs.push_back(mcx_gate(pat, flag));
        emit_cprep_y(gs, flag, qubits[level], theta, delta);
        gs.push_back(mcx_gate(pat, flag));
        for (const auto& g : conj) gs.push_back(g);
      }
    }
  }
  return gs;
}

std::vector<Gate> adjoint_gates(const std::vector<Gate>& gates) {
  std::vector<Gate> out;
  out.reserve(gates.size() + 4);
  for (auto it = gates.rbegin(); it != gates.rend(); ++it) {
    const Gate& g = *it;
    switch (g.kind) {
      case GateKind::S:
        out.push_back(gate(GateKind::Z, g.qubits));
        out.push_back(gate(GateKind::S, g.qubits));
        break;
      case GateKind::T:
        out.push_back(gate(GateKind::Tdg, g.qubits));
        break;
      case GateKind::Tdg:
        out.push_back(gate(GateKind::T, g.qubits));
        break;
      case GateKind::Rz:
      case GateKind::CRz: {
        Gate inv = g;
        inv.angle = -g.angle;
        out.push_back(inv);
        break;
      }
      case GateKind::Incrementer:
      case GateKind::Measure:
        throw std::invalid_argument("adjoint_gates: unsupported gate kind");
      default:
        out.push_back(g);  // self-adjoint
    }
  }
  return out;
}

BlockEncoder diag_l_encoder(int n, double delta, PrepMode mode) {
  if (n < 1 || n > 8) throw std::invalid_argument("diag_l_encoder: n out of range");
  int a = std::max(1, ceil_log2(n));
  bool pow2 = (n & (n - 1)) == 0 && n >= 2;
  if (mode == PrepMode::Injected && !pow2)
    throw std::invalid_argument("diag_l_encoder: injected prep needs a power-of-two n");
  BlockEncoder enc;
  int flag = a;  // one clean scratch qubit after the ancilla register
  Circuit c(a + 1 + n);
  c.add_register("anc", 0, a, RegKind::PersistentAncilla);
  c.add_register("scratch", a, 1, RegKind::CleanAncilla);
  c.add_register("data", a + 1, n, RegKind::Data);

  std::vector<int> anc;
  for (int j = 0; j < a; ++j) anc.push_back(j);
  std::vector<double> weights(size_t(1) << a, 0.0);
  for (int k = 0; k < n; ++k) weights[k] = std::ldexp(1.0, k);  // |amp|^2 ~ 2^k

  std::vector<Gate> tree = prep_tree_gates(anc, weights, flag, delta);
  if (mode == PrepMode::Injected) {
    // Exponential ancilla state from widgets: qubit j carries the bit of
    // weight w = 2^(a-1-j) and needs amplitude ratio 2^(w/2), i.e. an
    // X-flipped widget with k = w.
    for (int j = 0; j < a; ++j) {
      enc.injections.emplace_back(j, simulate_widget(1 << (a - 1 - j)).output);
      c.append(gate(GateKind::X, {j}));
    }
  } else {
    c.append_all(tree);
  }

  Circuit sel = build_select_z_unary(n, c.width(), 0, a, a + 1);
  c.append_all(sel.gates());
  c.append_all(adjoint_gates(tree));

  auto& l = c.ledger();
  l.t_depth = 4.0 * std::ceil(std::log2(std::max(2, n))) + cost::rotation(delta > 0 ? delta : 1e-9);
  l.expected_t_depth = l.t_depth;
  l.persistent_ancilla = a;
  l.clean_ancilla = 1;
  enc.circuit = std::move(c);
  enc.data_start = a + 1;
  enc.data_len = n;
  return enc;
}

BlockEncoder d_encoder(int n, double delta) {
  if (n < 1 || n > 8) throw std::invalid_argument("d_encoder: n out of range");
  int ag = std::max(1, ceil_log2(n));
  // layout: [geo ag][u][r][flag][data n]
  int u = ag, r = ag + 1, flag = ag + 2, data_start = ag + 3;
  Circuit c(data_start + n);
  c.add_register("geo", 0, ag, RegKind::PersistentAncilla);
  c.add_register("u", ag, 1, RegKind::PersistentAncilla);
  c.add_register("r", ag + 1, 1, RegKind::PersistentAncilla);
  c.add_register("flag", ag + 2, 1, RegKind::CleanAncilla);
  c.add_register("data", data_start, n, RegKind::Data);

  std::vector<int> geo;
  for (int j = 0; j < ag; ++j) geo.push_back(j);
  std::vector<double> weights(size_t(1) << ag, 0.0);
  for (int k = 0; k < n; ++k) weights[k] = std::ldexp(1.0, -k);

  std::vector<Gate> gs;
  std::vector<Gate> tree = prep_tree_gates(geo, weights, flag, delta);
  for (const auto& g : tree) gs.push_back(g);
  gs.push_back(gate(GateKind::H, {u}));
  DCoreLayout lay{geo, u, r, flag, data_start, n};
  emit_d_core(gs, lay, {}, delta);
  gs.push_back(gate(GateKind::H, {u}));
  for (const auto& g : adjoint_gates(tree)) gs.push_back(g);

  BlockEncoder enc;
  c.append_all(gs);
  auto& l = c.ledger();
  double lg = std::log2(std::max(2, n));
  l.t_depth = 2.0 * (4.0 * std::ceil(lg) + 6.0) + 4.0 * std::ceil(lg) + (8.0 * n - 12.0) +
              cost::rotation(delta > 0 ? delta : 1e-9);
  l.expected_t_depth = l.t_depth;
  l.persistent_ancilla = ag + 2;
  l.clean_ancilla = 1;
  enc.circuit = std::move(c);
  enc.data_start = data_start;
  enc.data_len = n;
  return enc;
}

BlockEncoder xn_encoder(int n) {
  if (n < 1 || n > 10) throw std::invalid_argument("xn_encoder: n out of range");
  BlockEncoder enc;
  Circuit c(n);
  c.add_register("data", 0, n, RegKind::Data);
  for (int i = 0; i < n; ++i) c.append(gate(GateKind::X, {i}));
  enc.circuit = std::move(c);
  enc.data_start = 0;
  enc.data_len = n;
  return enc;
}

BlockEncoder r_encoder(int n, double delta) {
  BlockEncoder enc;
  Circuit c(3);
  c.add_register("r", 0, 1, RegKind::PersistentAncilla);
  c.add_register("flag", 1, 1, RegKind::CleanAncilla);
  c.add_register("data", 2, 1, RegKind::Data);
  std::vector<Gate> gs;
  emit_r_gadget(gs, {}, 2, 0, 1, r_theta(n), delta);
  c.append_all(gs);
  enc.circuit = std::move(c);
  enc.data_start = 2;
  enc.data_len = 1;
  return enc;
}

Circuit grover_circuit(int k) {
  if (k < 1 || k > 10) throw std::invalid_argument("grover_circuit: k out of range");
  Circuit c(k);
  c.add_register("data", 0, k, RegKind::Data);
  // global -1 via XZXZ on one qubit
  c.append(gate(GateKind::X, {0}));
  c.append(gate(GateKind::Z, {0}));
  c.append(gate(GateKind::X, {0}));
  c.append(gate(GateKind::Z, {0}));
  for (int q = 0; q < k; ++q) c.append(gate(GateKind::H, {q}));
  for (int q = 0; q < k; ++q) c.append(gate(GateKind::X, {q}));
  if (k == 1) {
    c.append(gate(GateKind::Z, {0}));
  } else {
    std::vector<Gate> gs;
    std::vector<int> qs;
    for (int q = 0; q < k; ++q) qs.push_back(q);
    emit_mcz(gs, qs);
    c.append_all(gs);
  }
  for (int q = 0; q < k; ++q) c.append(gate(GateKind::X, {q}));
  for (int q = 0; q < k; ++q) c.append(gate(GateKind::H, {q}));
  return c;
}

ComponentEncoding build_component_encoding(ComponentKind which, int n, double delta) {
  ComponentEncoding out;
  switch (which) {
    case ComponentKind::Ones:
      out.encoder = ones_encoder(n);
      break;
    case ComponentKind::DiagL:
      out.encoder = diag_l_encoder(n, delta, (n & (n - 1)) == 0 && n >= 2 ? PrepMode::Injected
                                                                          : PrepMode::Synthesized);
      break;
    case ComponentKind::DMat:
      out.encoder = d_encoder(n, delta);
      break;
    case ComponentKind::Xn:
      out.encoder = xn_encoder(n);
      break;
    case ComponentKind::Grover: {
      out.encoder.circuit = grover_circuit(n);
      out.encoder.data_start = 0;
      out.encoder.data_len = n;
      break;
    }
    case ComponentKind::RGate:
      out.encoder = r_encoder(n, delta);
      break;
  }
  DenseMatrix block = extract_block(out.encoder);
  out.report = report_block(block, target_matrix(which, n));
  return out;
}

CirculantEncoding build_circulant_encoding(int n, double delta) {
  if (n < 3 || n > 8) throw std::invalid_argument("build_circulant_encoding: n must lie in [3, 8]");
  size_t N = size_t(1) << n;

  // Component blocks (exact mode) for the weight solve.
  DenseMatrix Bones = extract_block(ones_encoder(n));
  DenseMatrix Bdiag = extract_block(diag_l_encoder(n, delta));
  DenseMatrix Bd = extract_block(d_encoder(n, delta));
  DenseMatrix Bx = extract_block(xn_encoder(n));
  DenseMatrix C = circulant_matrix(n);

  DenseMatrix B1 = Bdiag * Bones;  // diag{|L>} * ones
  DenseMatrix B2 = Bones * Bdiag;
  Eigen::MatrixXcd A(N * N, 4);
  Eigen::VectorXcd b(N * N);
  for (size_t j = 0; j < N; ++j)
    for (size_t i = 0; i < N; ++i) {
      size_t row = j * N + i;
      A(row, 0) = B1(i, j);
      A(row, 1) = B2(i, j);
      A(row, 2) = Bd(i, j);
      A(row, 3) = Bx(i, j);
      b(row) = C(i, j);
    }
  Eigen::Vector4cd mu = A.colPivHouseholderQr().solve(b);
  double resid = (A * mu - b).cwiseAbs().maxCoeff();
  if (resid > 1e-8)
    throw std::runtime_error("build_circulant_encoding: LCU weight solve residual " +
                             std::to_string(resid) + "; component encoder inconsistency");
  for (int i = 0; i < 4; ++i) {
    if (std::abs(mu(i).imag()) > 1e-8 * std::abs(mu(i)))
      throw std::runtime_error("build_circulant_encoding: unexpected complex LCU weight");
  }

  // Composite layout: [top 2][dla a][u][geo ag][r][flag][data n]
  int a = std::max(1, ceil_log2(n));
  int ag = a;
  int top0 = 0, top1 = 1;
  int dla_start = 2;
  int u = dla_start + a;
  int geo_start = u + 1;
  int rq = geo_start + ag;
  int flag = rq + 1;
  int data_start = flag + 1;
  Circuit c(data_start + n);
  c.add_register("prep", 0, 2, RegKind::PersistentAncilla);
  c.add_register("dla", dla_start, a, RegKind::PersistentAncilla);
  c.add_register("u", u, 1, RegKind::PersistentAncilla);
  c.add_register("geo", geo_start, ag, RegKind::PersistentAncilla);
  c.add_register("r", rq, 1, RegKind::PersistentAncilla);
  c.add_register("flag", flag, 1, RegKind::CleanAncilla);
  c.add_register("data", data_start, n, RegKind::Data);

  std::vector<int> top{top0, top1};
  std::vector<int> dla, geo, data;
  for (int j = 0; j < a; ++j) dla.push_back(dla_start + j);
  for (int j = 0; j < ag; ++j) geo.push_back(geo_start + j);
  for (int j = 0; j < n; ++j) data.push_back(data_start + j);

  std::vector<double> top_weights(4);
  for (int i = 0; i < 4; ++i) top_weights[i] = std::abs(mu(i).real());
  std::vector<double> dla_weights(size_t(1) << a, 0.0);
  for (int k = 0; k < n; ++k) dla_weights[k] = std::ldexp(1.0, k);
  std::vector<double> geo_weights(size_t(1) << ag, 0.0);
  for (int k = 0; k < n; ++k) geo_weights[k] = std::ldexp(1.0, -k);

  std::vector<Gate> gs;
  std::vector<Gate> top_tree = prep_tree_gates(top, top_weights, flag, delta);
  std::vector<Gate> dla_tree = prep_tree_gates(dla, dla_weights, flag, delta);
  std::vector<Gate> geo_tree = prep_tree_gates(geo, geo_weights, flag, delta);
  for (const auto& g : top_tree) gs.push_back(g);
  for (const auto& g : dla_tree) gs.push_back(g);
  gs.push_back(gate(GateKind::H, {u}));
  for (const auto& g : geo_tree) gs.push_back(g);

  auto emit_diag_core = [&](const std::vector<int>& base) {
    for (int k = 0; k < n; ++k) {
      std::vector<Gate> conj = pattern_conj(dla, static_cast<uint64_t>(k));
      for (const auto& g : conj) gs.push_back(g);
      std::vector<int> qs = base;
      qs.insert(qs.end(), dla.begin(), dla.end());
      qs.push_back(data_start + (n - 1 - k));  // Z on data qubit k from the bottom
      emit_mcz(gs, qs);
      for (const auto& g : conj) gs.push_back(g);
    }
  };
  auto emit_ones_core = [&](const std::vector<int>& base) {
    std::vector<int> ctls = base;
    ctls.push_back(u);
    emit_controlled_grover(gs, ctls, data);
  };

  for (int i = 0; i < 4; ++i) {
    std::vector<Gate> conj = pattern_conj(top, static_cast<uint64_t>(i));
    for (const auto& g : conj) gs.push_back(g);
    if (mu(i).real() < 0.0) emit_mcz(gs, top);
    switch (i) {
      case 0:
        emit_ones_core(top);
        emit_diag_core(top);
        break;
      case 1:
        emit_diag_core(top);
        emit_ones_core(top);
        break;
      case 2: {
        DCoreLayout lay{geo, u, rq, flag, data_start, n};
        emit_d_core(gs, lay, top, delta);
        break;
      }
      case 3:
        for (int d : data) gs.push_back(mcx_gate(top, d));
        break;
    }
    for (const auto& g : conj) gs.push_back(g);
  }

  for (const auto& g : adjoint_gates(geo_tree)) gs.push_back(g);
  gs.push_back(gate(GateKind::H, {u}));
  for (const auto& g : adjoint_gates(dla_tree)) gs.push_back(g);
  for (const auto& g : adjoint_gates(top_tree)) gs.push_back(g);
  c.append_all(gs);

  CirculantEncoding out;
  out.weights = mu;
  out.t_depth = cost::circulant(n, delta);
  auto& l = c.ledger();
  l.t_depth = out.t_depth;
  l.expected_t_depth = out.t_depth;
  l.t_count = cost::circulant_count(n, delta);
  l.persistent_ancilla = 2 + a + 1 + ag + 1;
  l.clean_ancilla = 1;
  out.encoder.circuit = std::move(c);
  out.encoder.data_start = data_start;
  out.encoder.data_len = n;
  out.report = report_block(extract_block(out.encoder), C);
  return out;
}

DiagHarmonicEncoding build_diag_harmonic(int n, int m, double delta0, double delta1) {
  int q = n + m;
  if (q < 3 || q > 8)
    throw std::invalid_argument("build_diag_harmonic: n + m must lie in [3, 8]");
  if (n < 1) throw std::invalid_argument("build_diag_harmonic: n must be >= 1");
  CirculantEncoding circ = build_circulant_encoding(q, delta1);
  return diag_harmonic_from(circ, n, m, delta0);
}

DiagHarmonicEncoding diag_harmonic_from(const CirculantEncoding& circ, int n, int m,
                                        double delta0) {
  int q = n + m;
  if (circ.encoder.data_len != q)
    throw std::invalid_argument("diag_harmonic_from: encoding size does not match n + m");

  Circuit qft_small = build_approx_qft(q, delta0);
  int width = circ.encoder.circuit.width();
  int offset = circ.encoder.data_start;
  Circuit full(width);
  for (const auto& r : circ.encoder.circuit.registers())
    full.add_register(r.name, r.start, r.len, r.kind);
  auto lift_append = [&](const Circuit& small) {
    for (Gate g : small.gates()) {
      for (int& qb : g.qubits) qb += offset;
      full.append(g);
    }
  };
  lift_append(qft_small);
  full.append_all(circ.encoder.circuit.gates());
  lift_append(qft_small);

  DiagHarmonicEncoding out;
  out.encoder.circuit = std::move(full);
  out.encoder.data_start = offset;
  out.encoder.data_len = q;
  out.encoder.injections = circ.encoder.injections;
  out.block = extract_block(out.encoder, SynthesisModel::exact(), n);
  out.alpha = circ.report.alpha;  // conjugation by unitaries preserves it
  out.bound = kPi / std::ldexp(1.0, q);
  out.t_depth = 2.0 * cost::qft(q, delta0) + circ.t_depth;

  size_t Nn = size_t(1) << n;
  DenseMatrix target = DenseMatrix::Zero(Nn, Nn);
  for (size_t x = 1; x < Nn; ++x) target(x, x) = Complex(0.0, 1.0 / static_cast<double>(x));
  double bnorm = spectral_norm(out.block);
  out.distance = spectral_norm(out.block / bnorm - target);
  return out;
}

ConvolutionCheck convolution_check(const std::vector<Complex>& v, int n) {
  if (n < 1 || n > 4) throw std::invalid_argument("convolution_check: n must lie in [1, 4]");
  size_t N = size_t(1) << n;
  if (v.size() != N) throw std::invalid_argument("convolution_check: v must have length 2^n");
  DenseMatrix C(N, N);
  for (size_t i = 0; i < N; ++i)
    for (size_t j = 0; j < N; ++j) C(i, j) = v[(i + j) % N];
  DenseMatrix Q = exact_qft_matrix(n);
  DenseMatrix A = Q * C * Q;  // symmetric conjugation diagonalizes this convention
  ConvolutionCheck res;
  for (size_t i = 0; i < N; ++i)
    for (size_t j = 0; j < N; ++j)
      if (i != j) res.off_diag_max = std::max(res.off_diag_max, std::abs(A(i, j)));
  // diag(A) = scalar * QFT(v)
  StateVector sv(n);
  sv.amps = v;
  StateVector qv = exact_qft(sv);
  Complex num(0.0, 0.0);
  double den = 0.0;
  for (size_t i = 0; i < N; ++i) {
    num += std::conj(qv.amps[i]) * A(i, i);
    den += std::norm(qv.amps[i]);
  }
  res.scalar = den > 0.0 ? num / den : Complex(0.0, 0.0);
  return res;
}

}  // namespace harmoniq
