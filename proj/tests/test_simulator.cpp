#include <stdexcept>
#include <cmath>

#include "doctest.h"
#include "harmoniq/circuit.hpp"
#include "harmoniq/rng.hpp"
#include "harmoniq/rotation_widgets.hpp"
#include "harmoniq/simulator.hpp"

using namespace harmoniq;

namespace {

constexpr double kInv2 = 0.70710678118654752440;

Circuit random_circuit(int width, int gates, uint64_t seed, bool with_big_gates) {
  CounterRng rng(seed, 7);
  Circuit c(width);
  while (static_cast<int>(c.size()) < gates) {
    int pick = static_cast<int>(rng.next_u64() % (with_big_gates ? 14 : 9));
    int a = static_cast<int>(rng.next_u64() % width);
    int b = static_cast<int>(rng.next_u64() % width);
    int d = static_cast<int>(rng.next_u64() % width);
    if (a == b || b == d || a == d) continue;
    switch (pick) {
      case 0: c.append(gate(GateKind::H, {a})); break;
      case 1: c.append(gate(GateKind::X, {a})); break;
      case 2: c.append(gate(GateKind::Z, {a})); break;
      case 3: c.append(gate(GateKind::S, {a})); break;
      case 4: c.append(gate(GateKind::T, {a})); break;
      case 5: c.append(gate(GateKind::Tdg, {a})); break;
      case 6: c.append(gate(GateKind::CX, {a, b})); break;
      case 7: c.append(gate(GateKind::CH, {a, b})); break;
      case 8: c.append(rz_synth(a, 6.283 * rng.next_double(), 1e-4)); break;
      case 9: c.append(gate(GateKind::SWAP, {a, b})); break;
      case 10: c.append(gate(GateKind::CSWAP, {a, b, d})); break;
      case 11: c.append(gate(GateKind::CCX, {a, b, d})); break;
      case 12: c.append(crz_synth(a, b, 6.283 * rng.next_double(), 1e-4)); break;
      case 13: {
        if (width >= 3) c.append(gate(GateKind::Incrementer, {a, b, d}));
        break;
      }
    }
  }
  return c;
}

StateVector random_state(int qubits, uint64_t seed) {
  CounterRng rng(seed, 3);
  StateVector s(qubits);
  for (auto& a : s.amps) a = Complex(rng.next_double() - 0.5, rng.next_double() - 0.5);
  double n = s.norm();
  for (auto& a : s.amps) a /= n;
  return s;
}

}  // namespace

TEST_CASE("single-qubit gate semantics") {
  Circuit h(1);
  h.append(gate(GateKind::H, {0}));
  StateVector out = run(h, StateVector::basis(1, 0));
  CHECK(std::abs(out.amps[0] - Complex(kInv2, 0)) < 1e-15);
  CHECK(std::abs(out.amps[1] - Complex(kInv2, 0)) < 1e-15);

  Circuit xx(2);
  xx.append(gate(GateKind::X, {0}));
  xx.append(gate(GateKind::X, {1}));
  out = run(xx, StateVector::basis(2, 0));
  CHECK(std::abs(out.amps[3] - Complex(1, 0)) < 1e-15);
}

TEST_CASE("widget pre-measurement amplitude (k=1)") {
  Circuit w = build_widget(1);
  StateVector out = run(w, StateVector::basis(2, 0));
  // basis |data=1, ancilla=0> is index 2 (data qubit is the most significant)
  CHECK(std::abs(out.amps[2] - Complex(0.5, 0)) < 1e-15);
}

TEST_CASE("postselect renormalizes and reports the outcome probability") {
  Circuit bell(2);
  bell.append(gate(GateKind::H, {0}));
  bell.append(gate(GateKind::CX, {0, 1}));
  StateVector s = run(bell, StateVector::basis(2, 0));
  auto [post, prob] = postselect(s, 0, 1, 0);
  CHECK(prob == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(std::abs(post.amps[0] - Complex(1, 0)) < 1e-12);

  // Lemma-1 widget at k=2: all-zero ancilla outcome has probability 5/8 and
  // the output state is (sqrt(4/5), sqrt(1/5)).
  WidgetRun r = simulate_widget(2);
  CHECK(r.success_prob == doctest::Approx(0.625).epsilon(1e-12));
  CHECK(std::abs(r.output.amps[0] - std::sqrt(0.8)) < 1e-12);
  CHECK(std::abs(r.output.amps[1] - std::sqrt(0.2)) < 1e-12);

  CHECK_THROWS_AS(postselect(StateVector::basis(2, 0), 0, 1, 1), std::runtime_error);
}

TEST_CASE("postselect outcome probabilities sum to one") {
  StateVector s = random_state(5, 11);
  double total = 0.0;
  for (uint64_t bits = 0; bits < 4; ++bits) total += postselect(s, 1, 2, bits).second;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("unitary_of basics") {
  Circuit empty(2);
  DenseMatrix u = unitary_of(empty);
  CHECK(max_abs_diff(u, DenseMatrix::Identity(4, 4)) < 1e-15);

  Circuit h(1);
  h.append(gate(GateKind::H, {0}));
  u = unitary_of(h);
  DenseMatrix expect(2, 2);
  expect << kInv2, kInv2, kInv2, -kInv2;
  CHECK(max_abs_diff(u, expect) < 1e-15);

  Circuit big(15);
  CHECK_THROWS_AS(unitary_of(big), std::invalid_argument);
}

TEST_CASE("2-qubit exact QFT unitary has entries i^(jk)/2") {
  // Standard circuit: H, controlled-S, H, final SWAP.
  Circuit qft2(2);
  qft2.append(gate(GateKind::H, {0}));
  qft2.append(crz(1, 0, std::acos(0.0)));  // controlled-S = CRz(pi/2)
  qft2.append(gate(GateKind::H, {1}));
  qft2.append(gate(GateKind::SWAP, {0, 1}));
  DenseMatrix u = unitary_of(qft2);
  Complex im(0, 1);
  for (int j = 0; j < 4; ++j)
    for (int k = 0; k < 4; ++k)
      CHECK(std::abs(u(k, j) - 0.5 * std::pow(im, j * k)) < 1e-14);
}

TEST_CASE("run preserves norm for every gate kind") {
  for (uint64_t seed = 0; seed < 8; ++seed) {
    Circuit c = random_circuit(4, 60, seed, true);
    StateVector out = run(c, random_state(4, seed + 100));
    CHECK(std::abs(out.norm() - 1.0) < 1e-12);
  }
}

TEST_CASE("unitary_of(compose(a,b)) = U_b * U_a") {
  for (uint64_t seed = 0; seed < 4; ++seed) {
    Circuit a = random_circuit(4, 25, seed, false);
    Circuit b = random_circuit(4, 25, seed + 50, false);
    DenseMatrix ua = unitary_of(a);
    DenseMatrix ub = unitary_of(b);
    Circuit ab(4);
    ab.append_all(a.gates());
    ab.append_all(b.gates());
    CHECK(distance(unitary_of(ab), DenseMatrix(ub * ua)) < 1e-10);
  }
}

TEST_CASE("distance variants") {
  StateVector s = random_state(3, 5);
  CHECK(distance(s, s) == doctest::Approx(0.0).epsilon(1e-14));

  StateVector z0 = StateVector::basis(1, 0);
  StateVector z1 = StateVector::basis(1, 1);
  CHECK(distance(z0, z1) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));

  StateVector iz0 = z0;
  iz0.amps[0] = Complex(0, 1);
  CHECK(distance(z0, iz0) == doctest::Approx(0.0).epsilon(1e-14));  // global phase
  CHECK(l2_distance(z0, iz0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("spectral norm via power iteration") {
  DenseMatrix m = DenseMatrix::Zero(4, 4);
  m(0, 0) = 3.0;
  m(1, 1) = Complex(0, -5.0);
  m(2, 3) = 1.0;
  CHECK(spectral_norm(m) == doctest::Approx(5.0).epsilon(1e-10));
}

TEST_CASE("perturbed mode is deterministic and seed-dependent") {
  Circuit c(3);
  c.append(gate(GateKind::H, {0}));
  c.append(crz_synth(0, 1, 0.7, 1e-2));
  c.append(rz_synth(2, 0.3, 1e-2));
  StateVector in = random_state(3, 9);
  StateVector a = run(c, in, SynthesisModel::perturbed(5));
  StateVector b = run(c, in, SynthesisModel::perturbed(5));
  CHECK(l2_distance(a, b) == 0.0);
  bool any_differs = false;
  for (uint64_t seed = 6; seed < 16; ++seed)
    if (l2_distance(a, run(c, in, SynthesisModel::perturbed(seed))) > 0.0) any_differs = true;
  CHECK(any_differs);
  // exact mode ignores the delta flags entirely
  StateVector e = run(c, in, SynthesisModel::exact());
  StateVector f = run(c, in);
  CHECK(l2_distance(e, f) == 0.0);
}

TEST_CASE("Measure gates are rejected by run") {
  Circuit c(1);
  c.append(gate(GateKind::Measure, {0}));
  CHECK_THROWS_AS(run(c, StateVector::basis(1, 0)), std::invalid_argument);
}

TEST_CASE("incrementer wraps the addressed register") {
  Circuit c(3);
  c.append(gate(GateKind::Incrementer, {0, 1, 2}));
  for (uint64_t x = 0; x < 8; ++x) {
    StateVector out = run(c, StateVector::basis(3, x));
    CHECK(std::abs(out.amps[(x + 1) % 8] - Complex(1, 0)) < 1e-15);
  }
  // Register order is explicit: incrementing [2,1,0] reverses bit weights.
  Circuit rev(3);
  rev.append(gate(GateKind::Incrementer, {2, 1, 0}));
  StateVector out = run(rev, StateVector::basis(3, 0));
  CHECK(std::abs(out.amps[4] - Complex(1, 0)) < 1e-15);  // +1 on reversed register
}

TEST_CASE("drop_register keeps the remaining qubits in order") {
  StateVector s = random_state(3, 21);
  auto [post, prob] = postselect(s, 1, 1, 1);
  StateVector dropped = drop_register(post, 1, 1, 1);
  REQUIRE(dropped.qubits == 2);
  CHECK(std::abs(dropped.amps[0] - post.amps[2]) < 1e-15);  // |0,1,0>
  CHECK(std::abs(dropped.amps[1] - post.amps[3]) < 1e-15);  // |0,1,1>
  CHECK(std::abs(dropped.amps[2] - post.amps[6]) < 1e-15);  // |1,1,0>
  CHECK(std::abs(dropped.amps[3] - post.amps[7]) < 1e-15);  // |1,1,1>
}
