#include <stdexcept>
#include <cmath>

#include "doctest.h"
#include "harmoniq/linear_prep.hpp"
#include "harmoniq/simulator.hpp"

using namespace harmoniq;

TEST_CASE("select-Z applies Z to the addressed data qubit") {
  // n=2: ancilla |1> must flip the sign of components with x_1 = 1 (bit of
  // weight 2), i.e. phase (-1)^(x1) on |x1 x0>.
  Circuit sel = build_select_z(2);
  DenseMatrix u = unitary_of(sel);
  size_t dim = 8;  // 1 ancilla + 2 data qubits
  for (size_t anc = 0; anc < 2; ++anc)
    for (size_t x = 0; x < 4; ++x) {
      size_t idx = (anc << 2) | x;
      int bit = anc == 0 ? static_cast<int>(x & 1) : static_cast<int>((x >> 1) & 1);
      double expect = bit ? -1.0 : 1.0;
      for (size_t row = 0; row < dim; ++row) {
        Complex want = row == idx ? Complex(expect, 0.0) : Complex(0.0, 0.0);
        CHECK(std::abs(u(row, idx) - want) < 1e-12);
      }
    }
}

TEST_CASE("select-Z equals the unary-iteration construction") {
  for (int n : {2, 4}) {
    int a = n == 2 ? 1 : 2;
    DenseMatrix routed = unitary_of(build_select_z(n));
    DenseMatrix unary = unitary_of(build_select_z_unary(n, a + n, 0, a, a));
    CHECK(max_abs_diff(routed, unary) < 1e-12);
  }
}

TEST_CASE("select-Z ledger and preconditions") {
  CHECK(build_select_z(4).ledger().t_depth == 8.0);
  CHECK(build_select_z(8).ledger().t_depth == 12.0);
  CHECK_THROWS_AS(build_select_z(3), std::invalid_argument);
}

TEST_CASE("action on |k>|0...0> is the identity") {
  Circuit sel = build_select_z(4);
  for (uint64_t k = 0; k < 4; ++k) {
    StateVector in = StateVector::basis(6, k << 4);
    StateVector out = run(sel, in);
    CHECK(l2_distance(out, in) < 1e-12);
  }
}

TEST_CASE("linear state targets") {
  StateVector l2 = linear_state(2);
  double s = std::sqrt(5.0);
  CHECK(std::abs(l2.amps[0] - 1.5 / s) < 1e-15);
  CHECK(std::abs(l2.amps[1] - 0.5 / s) < 1e-15);
  CHECK(std::abs(l2.amps[2] + 0.5 / s) < 1e-15);
  CHECK(std::abs(l2.amps[3] + 1.5 / s) < 1e-15);
}

TEST_CASE("corrected pipeline prepares |L> exactly with clean ancillas") {
  for (int n : {2, 4, 8}) {
    LinearProgram prog = build_linear(n);
    LinearRun res = simulate_linear(prog);
    CHECK(res.ancilla_zero_prob >= 1.0 - 1e-12);
    CHECK(l2_distance(res.data_state, linear_state(n)) <= 1e-12);
  }
}

TEST_CASE("every ancilla outcome is an X-pattern permutation of |L>") {
  for (int n : {2, 4}) {
    LinearProgram prog = build_linear(n);
    int a = prog.a;
    for (uint64_t outcome = 0; outcome < (uint64_t(1) << a); ++outcome) {
      StateVector corrected = simulate_linear_outcome(prog, outcome);
      CHECK(l2_distance(corrected, linear_state(n)) <= 1e-12);
    }
  }
}

TEST_CASE("linear ledger follows the expected T-depth formula") {
  LinearProgram p8 = build_linear(8);
  CHECK(p8.main.ledger().expected_t_depth == 28.0);  // 2*8 + 4*3
  CHECK(p8.main.ledger().success_prob == 1.0);
  CHECK(p8.main.ledger().t_depth <= p8.main.ledger().t_count);
  CHECK(p8.paper_ancilla_total() == 8 + 2 * 3 - 1);
  CHECK(p8.measured_ancilla_total() == 3 + 14);  // LCU register + widget ancillas

  LinearProgram p2 = build_linear(2);
  CHECK(p2.main.ledger().expected_t_depth == 8.0);  // 2*2 + 4*1
  CHECK_THROWS_AS(build_linear(3), std::invalid_argument);
  CHECK_THROWS_AS(build_linear(1), std::invalid_argument);
}

TEST_CASE("non-power-of-two sizes via reduction have equal amplitude steps") {
  LinearAnyResult res = linear_state_any(3);
  CHECK(res.built_n == 4);
  CHECK(l2_distance(res.state, linear_state(3)) <= 1e-12);
  double step = std::abs(res.state.amps[1] - res.state.amps[0]);
  for (size_t x = 1; x < res.state.dim(); ++x)
    CHECK(std::abs(std::abs(res.state.amps[x] - res.state.amps[x - 1]) - step) < 1e-12);
}

TEST_CASE("reduce_linear measurement statistics") {
  // outcome-1 probability is exactly 3/(N^2-1); the quoted value 3/N^2 is the
  // paper's approximation (within 2% already at n = 3).
  ReduceResult r3 = reduce_linear(linear_state(3));
  CHECK(r3.outcome1_prob == doctest::Approx(3.0 / 63.0).epsilon(1e-12));
  CHECK(std::abs(r3.outcome1_prob - 3.0 / 64.0) / (3.0 / 64.0) < 0.02);
  CHECK(l2_distance(r3.state, linear_state(2)) <= 1e-12);

  ReduceResult r2 = reduce_linear(linear_state(2));
  CHECK(l2_distance(r2.state, linear_state(1)) <= 1e-12);
  // 1-qubit |L> is (1, -1)/sqrt(2)
  CHECK(std::abs(r2.state.amps[0] - 1.0 / std::sqrt(2.0)) < 1e-12);
  CHECK(std::abs(r2.state.amps[1] + 1.0 / std::sqrt(2.0)) < 1e-12);

  // success probability increases with n
  double p1 = 1.0 - reduce_linear(linear_state(2)).outcome1_prob;
  double p2 = 1.0 - reduce_linear(linear_state(4)).outcome1_prob;
  double p3 = 1.0 - reduce_linear(linear_state(6)).outcome1_prob;
  CHECK(p1 < p2);
  CHECK(p2 < p3);

  CHECK_THROWS_AS(reduce_linear(StateVector::basis(3, 1)), std::invalid_argument);
}
