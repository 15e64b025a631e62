#include "harmoniq/linear_prep.hpp"

#include <cmath>
#include <stdexcept>

namespace harmoniq {

namespace {

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

int log2_exact(int n) {
  int a = 0;
  while ((1 << a) < n) ++a;
  return a;
}

}  // namespace

StateVector linear_state(int n) {
  if (n < 1 || n > 26) throw std::invalid_argument("linear_state: n out of range");
  StateVector s(n);
  double N = std::ldexp(1.0, n);
  double norm2 = N * (N * N - 1.0) / 12.0;
  double scale = 1.0 / std::sqrt(norm2);
  for (size_t x = 0; x < s.dim(); ++x)
    s.amps[x] = scale * ((N - 1.0) / 2.0 - static_cast<double>(x));
  return s;
}

Circuit build_select_z(int n) {
  if (!is_pow2(n)) throw std::invalid_argument("build_select_z: n must be a power of two");
  if (n < 2 || n > 4096) throw std::invalid_argument("build_select_z: n out of range");
  int a = log2_exact(n);
  Circuit c(a + n);
  c.add_register("anc", 0, a, RegKind::CleanAncilla);
  c.add_register("data", a, n, RegKind::Data);

  // Data qubit with bottom-label m sits at array index a + (n-1-m).
  auto data_qubit = [&](int m) { return a + (n - 1 - m); };
  // Ancilla bit j (weight 2^j in the ancilla value) sits at index a-1-j.
  auto anc_qubit = [&](int j) { return a - 1 - j; };

  std::vector<Gate> forward;
  for (int j = a - 1; j >= 0; --j) {
    for (int m = 0; m < n; ++m) {
      if (m & (1 << j)) continue;
      forward.push_back(gate(GateKind::CSWAP, {anc_qubit(j), data_qubit(m), data_qubit(m | (1 << j))}));
    }
  }
  c.append_all(forward);
  c.append(gate(GateKind::Z, {data_qubit(0)}));
  for (auto it = forward.rbegin(); it != forward.rend(); ++it) c.append(*it);

  auto& l = c.ledger();
  l.t_count = 2.0 * a * n;  // a*n controlled swaps, paired, 4 T per pair
  l.t_depth = 4.0 * a;
  l.expected_t_depth = l.t_depth;
  l.clean_ancilla = a;
  return c;
}

Circuit build_select_z_unary(int n, int width, int anc_start, int anc_len, int data_start) {
  Circuit c(width);
  auto data_qubit = [&](int m) { return data_start + (n - 1 - m); };
  for (int k = 0; k < n; ++k) {
    std::vector<Gate> conj;
    for (int j = 0; j < anc_len; ++j) {
      int bit = (k >> (anc_len - 1 - j)) & 1;
      if (!bit) conj.push_back(gate(GateKind::X, {anc_start + j}));
    }
    c.append_all(conj);
    // Multi-controlled Z on data qubit k, controls = whole ancilla register.
    int target = data_qubit(k);
    c.append(gate(GateKind::H, {target}));
    std::vector<int> qubits;
    for (int j = 0; j < anc_len; ++j) qubits.push_back(anc_start + j);
    qubits.push_back(target);
    if (anc_len == 1)
      c.append(gate(GateKind::CX, {qubits[0], target}));
    else
      c.append(gate(GateKind::MCX, qubits));
    c.append(gate(GateKind::H, {target}));
    c.append_all(conj);
  }
  return c;
}

int LinearProgram::paper_ancilla_total() const { return n + 2 * a - 1; }

int LinearProgram::measured_ancilla_total() const {
  int total = a;
  for (int k : widget_ks) total += k;
  return total;
}

LinearProgram build_linear(int n) {
  if (!is_pow2(n) || n < 2 || n > 4096)
    throw std::invalid_argument("build_linear: n must be a power of two in [2, 4096]");
  int a = log2_exact(n);
  LinearProgram prog;
  prog.n = n;
  prog.a = a;
  // Ancilla qubit j holds the bit of weight 2^(a-1-j); the LCU weight on
  // ancilla value k must be 2^k, so qubit j carries amplitude ratio
  // 2^(2^(a-1-j)), i.e. an X-flipped widget with k = 2^(a-j).
  for (int j = 0; j < a; ++j) prog.widget_ks.push_back(2 << (a - 1 - j));

  Circuit main(a + n);
  main.add_register("anc", 0, a, RegKind::CleanAncilla);
  main.add_register("data", a, n, RegKind::Data);
  auto data_qubit = [&](int m) { return a + (n - 1 - m); };

  for (int j = 0; j < a; ++j) main.append(gate(GateKind::X, {j}));
  for (int q = a; q < a + n; ++q) main.append(gate(GateKind::H, {q}));

  Circuit sel = build_select_z(n);
  main.append_all(sel.gates());

  for (int j = 0; j < a; ++j) main.append(gate(GateKind::H, {j}));
  // Coherent correction: outcome bit j flips the sign of every Z_k term with
  // bit j of k set, undone by X on those data qubits.
  for (int j = 0; j < a; ++j) {
    int anc = a - 1 - j;  // qubit holding outcome bit of weight 2^j
    for (int k = 0; k < n; ++k)
      if (k & (1 << j)) main.append(gate(GateKind::CX, {anc, data_qubit(k)}));
  }
  for (int j = 0; j < a; ++j) main.append(gate(GateKind::H, {j}));

  auto& l = main.ledger();
  double widget_t_count = 0.0;
  int widget_ancillas = 0;
  for (int k : prog.widget_ks) {
    widget_t_count += 2.0 * k;
    widget_ancillas += k;
  }
  l.t_count = widget_t_count + sel.ledger().t_count;
  l.t_depth = 2.0 + sel.ledger().t_depth;           // parallel widgets + SELECT
  l.expected_t_depth = 2.0 * n + 4.0 * a;           // quoted expected depth
  l.clean_ancilla = a;
  l.persistent_ancilla = widget_ancillas;
  l.success_prob = 1.0;  // every ancilla outcome is corrected coherently

  prog.main = std::move(main);
  return prog;
}

namespace {

StateVector linear_input_state(const LinearProgram& prog, std::vector<double>* widget_probs) {
  std::vector<std::pair<int, StateVector>> factors;
  for (int j = 0; j < prog.a; ++j) {
    WidgetRun wr = simulate_widget(prog.widget_ks[j]);
    if (widget_probs) widget_probs->push_back(wr.success_prob);
    factors.emplace_back(j, wr.output);
  }
  return tensor_embed(prog.a + prog.n, factors);
}

}  // namespace

LinearRun simulate_linear(const LinearProgram& prog, const SynthesisModel& model) {
  LinearRun res;
  StateVector input = linear_input_state(prog, &res.widget_probs);
  StateVector out = run(prog.main, input, model);
  auto [post, prob] = postselect(out, 0, prog.a, 0);
  res.ancilla_zero_prob = prob;
  res.data_state = drop_register(post, 0, prog.a, 0);
  return res;
}

StateVector simulate_linear_outcome(const LinearProgram& prog, uint64_t outcome) {
  // Uncorrected circuit: PREP flips, Hadamards, SELECT, ancilla Hadamards.
  int a = prog.a, n = prog.n;
  Circuit bare(a + n);
  bare.add_register("anc", 0, a, RegKind::CleanAncilla);
  bare.add_register("data", a, n, RegKind::Data);
  for (int j = 0; j < a; ++j) bare.append(gate(GateKind::X, {j}));
  for (int q = a; q < a + n; ++q) bare.append(gate(GateKind::H, {q}));
  bare.append_all(build_select_z(n).gates());
  for (int j = 0; j < a; ++j) bare.append(gate(GateKind::H, {j}));

  StateVector input = linear_input_state(prog, nullptr);
  StateVector out = run(bare, input);
  auto [post, prob] = postselect(out, 0, a, outcome);
  StateVector data = drop_register(post, 0, a, outcome);
  // X-pattern correction: flip data qubit k when parity(outcome & k) is odd.
  Circuit fix(n);
  for (int k = 0; k < n; ++k) {
    if (__builtin_parityll(outcome & static_cast<uint64_t>(k)))
      fix.append(gate(GateKind::X, {n - 1 - k}));
  }
  return run(fix, data);
}

ReduceResult reduce_linear(const StateVector& state) {
  int n = state.qubits;
  if (n < 2) throw std::invalid_argument("reduce_linear: need at least 2 qubits");
  if (l2_distance(state, linear_state(n)) > 1e-9)
    throw std::invalid_argument("reduce_linear: input is not a linear state");
  Circuit h(n);
  h.append(gate(GateKind::H, {n - 1}));
  StateVector rotated = run(h, state);
  auto [post, p0] = postselect(rotated, n - 1, 1, 0);
  ReduceResult res;
  res.state = drop_register(post, n - 1, 1, 0);
  res.outcome1_prob = 1.0 - p0;
  return res;
}

LinearAnyResult linear_state_any(int n, const SynthesisModel& model) {
  if (n < 1 || n > 20) throw std::invalid_argument("linear_state_any: n out of range");
  int built = 2;
  while (built < n) built <<= 1;
  if (n == 1) built = 2;
  LinearAnyResult res;
  res.built_n = built;
  res.reduction_prob = 1.0;
  LinearProgram prog = build_linear(built);
  StateVector s = simulate_linear(prog, model).data_state;
  for (int q = built; q > n; --q) {
    ReduceResult r = reduce_linear(s);
    s = std::move(r.state);
    res.reduction_prob *= (1.0 - r.outcome1_prob);
  }
  res.state = std::move(s);
  return res;
}

}  // namespace harmoniq
