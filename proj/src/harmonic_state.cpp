#include "harmoniq/harmonic_state.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "harmoniq/estimator.hpp"
#include "harmoniq/qft.hpp"

namespace harmoniq {

namespace {

constexpr double kPi = 3.14159265358979323846;

void normalize(StateVector& s) {
  double n = s.norm();
  for (auto& a : s.amps) a /= n;
}

}  // namespace

StateVector harmonic_target(int n) {
  if (n < 1 || n > 26) throw std::invalid_argument("harmonic_target: n out of range");
  StateVector s(n);
  for (size_t x = 1; x < s.dim(); ++x) s.amps[x] = 1.0 / static_cast<double>(x);
  normalize(s);
  return s;
}

StateVector cotangent_target(int n, int m, CotangentVariant variant) {
  if (n < 1 || n > 26) throw std::invalid_argument("cotangent_target: n out of range");
  if (m < 0 || m > 64) throw std::invalid_argument("cotangent_target: m out of range");
  StateVector s(n);
  double MN = std::ldexp(1.0, n + m);
  for (size_t x = 1; x < s.dim(); ++x) {
    double c = 1.0 / std::tan(kPi * static_cast<double>(x) / MN);
    s.amps[x] = variant == CotangentVariant::Single ? Complex(1.0, c) : Complex(0.0, c);
  }
  if (variant == CotangentVariant::Combined) s.amps[0] = Complex(0.5, 0.0);
  normalize(s);
  return s;
}

StateVector amended_mirror_target(int n, int m) {
  if (n < 1 || n > 26) throw std::invalid_argument("amended_mirror_target: n out of range");
  StateVector s(n);
  double MN = std::ldexp(1.0, n + m);
  s.amps[0] = Complex(-1.0, 0.0);
  for (size_t x = 1; x < s.dim(); ++x) {
    double c = 1.0 / std::tan(kPi * static_cast<double>(x) / MN);
    s.amps[x] = Complex(1.0, -c);
  }
  normalize(s);
  return s;
}

namespace {

/// Amendment circuit over q = n + m qubits (ancillas [0, m), data [m, q)).
/// Relocates the stray amplitude at |anc = 1..1, data = 0> to |anc = 10..0,
/// data = 0> with a sign flip on the amplitude entering the mirror branch,
/// reverses and increments the data register conditioned on the top ancilla.
Circuit build_amendment(int n, int m, bool combine) {
  int q = n + m;
  Circuit c(q);
  c.add_register("anc", 0, m, RegKind::PersistentAncilla);
  c.add_register("data", m, n, RegKind::Data);

  // (1) stray relocation. Conjugate the data register with X so "data = 0"
  // becomes an all-ones control pattern.
  for (int d = 0; d < n; ++d) c.append(gate(GateKind::X, {m + d}));
  for (int t = 1; t < m; ++t) {
    std::vector<int> qs;
    qs.push_back(0);
    for (int d = 0; d < n; ++d) qs.push_back(m + d);
    qs.push_back(t);
    c.append(gate(GateKind::MCX, qs));
  }
  // Sign on the relocated amplitude: Z on the |anc = 1..1, data = 0> state.
  {
    std::vector<int> qs;
    for (int t = 1; t < m; ++t) qs.push_back(t);
    for (int d = 0; d < n; ++d) qs.push_back(m + d);
    qs.push_back(0);
    c.append(gate(GateKind::H, {0}));
    if (qs.size() == 1)
      c.append(gate(GateKind::X, {0}));
    else if (qs.size() == 2)
      c.append(gate(GateKind::CX, qs));
    else
      c.append(gate(GateKind::MCX, qs));
    c.append(gate(GateKind::H, {0}));
  }
  for (int d = 0; d < n; ++d) c.append(gate(GateKind::X, {m + d}));

  // (2) bit reversal of the upper branches (CNOTs from the top ancilla).
  for (int d = 0; d < n; ++d) c.append(gate(GateKind::CX, {0, m + d}));

  // (3) incrementer on the data register conditioned on the top ancilla:
  // MCX ladder, most significant data bit first.
  for (int d = 0; d < n; ++d) {
    std::vector<int> qs;
    qs.push_back(0);
    for (int lower = d + 1; lower < n; ++lower) qs.push_back(m + lower);
    qs.push_back(m + d);
    if (qs.size() == 2)
      c.append(gate(GateKind::CX, qs));
    else
      c.append(gate(GateKind::MCX, qs));
  }

  if (combine) {
    for (int t = 1; t < m; ++t) c.append(gate(GateKind::CX, {0, t}));
    c.append(gate(GateKind::Z, {0}));  // frozen combining phase
    c.append(gate(GateKind::H, {0}));
  }
  return c;
}

/// Formula-mode T-count of the amendment: a flag-assisted stray relocation
/// (one (n+m-1)-control Toffoli ladder pair), the reversal's (n+1)-qubit
/// controlled-X series, and the controlled incrementer at its quoted count.
double amend_t_count_formula(int n, int m) {
  int q = n + m;
  return 4.0 * (q - 2) + 4.0 * n + (8.0 * n - 4.0);
}

}  // namespace

HarmonicProgram build_harmonic(int n, int m, double delta, bool combine) {
  if (m < 1) throw std::invalid_argument("build_harmonic: m must be >= 1");
  if (n < 1) throw std::invalid_argument("build_harmonic: n must be >= 1");
  int q = n + m;
  if (q > 20) throw std::invalid_argument("build_harmonic: n + m must be <= 20 for simulation");
  HarmonicProgram prog;
  prog.n = n;
  prog.m = m;
  prog.delta = delta;
  prog.combine = combine;
  prog.qft = build_approx_qft(q, delta);
  prog.amend = build_amendment(n, m, combine);

  auto& l = prog.ledger;
  l.expected_t_depth = cost::linear(q) + cost::qft(q, delta) + cost::mcx(n + 1) +
                       cost::incrementer(n);
  l.t_depth = l.expected_t_depth;
  l.t_count = cost::linear_count(q) + cost::qft_count(q, delta) + amend_t_count_formula(n, m);
  int a = 0;
  while ((1 << a) < q) ++a;
  l.clean_ancilla = a + 1;
  l.persistent_ancilla = 2.0 * std::ldexp(1.0, a) - 2.0 + m;
  l.success_prob = 1.0;
  return prog;
}

HarmonicRun run_harmonic(const HarmonicProgram& prog, const SynthesisModel& model) {
  int q = prog.n + prog.m;
  HarmonicRun res;
  LinearAnyResult lin = linear_state_any(q, model);
  res.reduction_prob = lin.reduction_prob;
  StateVector s = run(prog.qft, lin.state, model);
  s = run(prog.amend, s, model);
  auto [post0, p0] = postselect(s, 0, prog.m, 0);
  res.post_prob = p0;
  res.output = drop_register(post0, 0, prog.m, 0);
  res.mirror_prob = 0.0;
  if (!prog.combine) {
    uint64_t ones = (uint64_t(1) << prog.m) - 1;
    auto [post1, p1] = postselect(s, 0, prog.m, ones);
    res.mirror_prob = p1;
    res.mirror_output = drop_register(post1, 0, prog.m, ones);
  }
  return res;
}

StateOptimum optimize_state(int n, double epsilon) {
  if (!(epsilon > 1e-14 && epsilon < 1e-1))
    throw std::invalid_argument("optimize_state: epsilon must lie in (1e-14, 1e-1)");
  StateOptimum best;
  best.t_depth = std::numeric_limits<double>::infinity();
  std::vector<double> grid;
  for (int i = 0; i <= 15 * 60; ++i) grid.push_back(std::pow(10.0, -16.0 + i / 60.0));
  for (int m = 1; m <= 40; ++m) {
    int q = n + m;
    if (q > 40) break;
    double cot_err = std::sqrt(3.0) / std::ldexp(1.0, q) / std::sqrt(2.0);
    if (cot_err >= epsilon) continue;
    double budget = epsilon - cot_err;
    double coeff = q / 2.0 - 4.0 / 3.0;
    for (auto it = grid.rbegin(); it != grid.rend(); ++it) {  // prefer larger delta
      double d = *it;
      if (coeff * d > budget) continue;
      double depth = cost::linear(q) + cost::qft(q, d) + cost::mcx(n + 1) + cost::incrementer(n);
      if (depth < best.t_depth - 1e-9) {
        best.m = m;
        best.delta = d;
        best.t_depth = depth;
        best.epsilon_achieved = cot_err + coeff * d;
      }
      break;  // the largest feasible delta minimizes depth for this m
    }
  }
  if (!std::isfinite(best.t_depth))
    throw std::invalid_argument("optimize_state: epsilon infeasible within n+m <= 40");
  int q = n + best.m;
  double qd = cost::qft(q, best.delta);
  best.qft_share = qd / best.t_depth;
  double qc = cost::qft_count(q, best.delta);
  double amend_count = amend_t_count_formula(n, best.m);
  best.t_count = qc + cost::linear_count(q) + amend_count;
  best.qft_count_share = qc / best.t_count;
  int a = 0;
  while ((1 << a) < q) ++a;
  best.ancilla_clean = a + 1;
  best.ancilla_persistent = 2.0 * std::ldexp(1.0, a) - 2.0 + best.m;
  return best;
}

int required_qubits(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw std::invalid_argument("required_qubits: epsilon must lie in (0, 1)");
  return static_cast<int>(std::ceil(std::log2(std::sqrt(3.0) / epsilon) - 0.5));
}

}  // namespace harmoniq
