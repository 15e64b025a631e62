#include <stdexcept>
#include <cmath>

#include "doctest.h"
#include "harmoniq/circuit.hpp"
#include "harmoniq/rng.hpp"

using namespace harmoniq;

namespace {

Circuit random_circuit(int width, int gates, uint64_t seed) {
  CounterRng rng(seed, 0);
  Circuit c(width);
  c.add_register("data", 0, width, RegKind::Data);
  while (static_cast<int>(c.size()) < gates) {
    int pick = static_cast<int>(rng.next_u64() % 10);
    int a = static_cast<int>(rng.next_u64() % width);
    int b = static_cast<int>(rng.next_u64() % width);
    int d = static_cast<int>(rng.next_u64() % width);
    if (a == b || b == d || a == d) continue;
    switch (pick) {
      case 0: c.append(gate(GateKind::H, {a})); break;
      case 1: c.append(gate(GateKind::X, {a})); break;
      case 2: c.append(gate(GateKind::T, {a})); break;
      case 3: c.append(gate(GateKind::Tdg, {a})); break;
      case 4: c.append(gate(GateKind::CX, {a, b})); break;
      case 5: c.append(gate(GateKind::CZ, {a, b})); break;
      case 6: c.append(gate(GateKind::CH, {a, b})); break;
      case 7: c.append(rz_synth(a, rng.next_double(), 1e-6)); break;
      case 8: c.append(crz(a, b, rng.next_double())); break;
      case 9: c.append(gate(GateKind::CCX, {a, b, d})); break;
    }
  }
  c.ledger().t_count = 12.0;
  c.ledger().t_depth = 3.0;
  c.ledger().expected_t_depth = 4.0;
  c.ledger().success_prob = 0.75;
  return c;
}

}  // namespace

TEST_CASE("append builds ordered gate lists and validates indices") {
  Circuit c(1);
  c.append(gate(GateKind::H, {0}));
  CHECK(c.size() == 1);

  Circuit c2(2);
  c2.append(gate(GateKind::CX, {0, 1}));
  c2.append(gate(GateKind::CX, {1, 0}));
  REQUIRE(c2.size() == 2);
  CHECK(c2.gates()[0].qubits == std::vector<int>{0, 1});
  CHECK(c2.gates()[1].qubits == std::vector<int>{1, 0});

  Circuit c3(3);
  CHECK_THROWS_AS(c3.append(gate(GateKind::H, {5})), std::out_of_range);
  CHECK_THROWS_AS(c3.append(gate(GateKind::CX, {1, 1})), std::invalid_argument);
  CHECK_THROWS_AS(c3.append(rz(0, std::nan(""))), std::invalid_argument);
}

TEST_CASE("compose concatenates gates and combines ledgers") {
  Circuit empty(2);
  empty.add_register("data", 0, 2, RegKind::Data);
  Circuit c(2);
  c.add_register("data", 0, 2, RegKind::Data);
  c.append(gate(GateKind::H, {0}));
  c.append(gate(GateKind::CX, {0, 1}));
  c.ledger().t_count = 4.0;

  Circuit both = compose(empty, c);
  CHECK(both.size() == c.size());
  CHECK(both.ledger().t_count == 4.0);

  Circuit d(2);
  d.add_register("data", 0, 2, RegKind::Data);
  d.ledger().t_count = 2.0;
  CHECK(compose(c, d).ledger().t_count == 6.0);

  // Lemma-1 probabilities for k=1 and k=2 multiply under composition.
  Circuit w1(2), w2(2);
  w1.add_register("data", 0, 2, RegKind::Data);
  w2.add_register("data", 0, 2, RegKind::Data);
  w1.ledger().success_prob = 0.75;
  w2.ledger().success_prob = 0.625;
  CHECK(compose(w1, w2).ledger().success_prob == doctest::Approx(0.46875).epsilon(1e-15));

  Circuit wrong(3);
  wrong.add_register("data", 0, 3, RegKind::Data);
  CHECK_THROWS_AS(compose(c, wrong), std::invalid_argument);
}

TEST_CASE("cost_of_gate matches the Clifford+T table") {
  GateCost ch = cost_of_gate(GateKind::CH);
  CHECK(ch.t_count == 2.0);
  CHECK(ch.t_depth == 2.0);

  GateCost rzc = cost_of_gate(GateKind::Rz, 1e-9);
  CHECK(rzc.t_count == doctest::Approx(1.15 * std::log2(1e9) + 9.2).epsilon(1e-12));
  CHECK(rzc.t_count == doctest::Approx(43.58).epsilon(1e-3));
  CHECK(rzc.t_depth == rzc.t_count);

  GateCost h = cost_of_gate(GateKind::H);
  CHECK(h.t_count == 0.0);
  CHECK(h.t_depth == 0.0);

  GateCost ccx = cost_of_gate(GateKind::CCX);  // compute/uncompute pair price
  CHECK(ccx.t_count == 4.0);
  CHECK(ccx.t_depth == 2.0);

  CHECK_THROWS_AS(cost_of_gate(GateKind::Rz), std::invalid_argument);
  CHECK_THROWS_AS(cost_of_gate(GateKind::CRz), std::invalid_argument);
}

TEST_CASE("naive ledger pairs Toffolis and layers T gates") {
  Circuit c(4);
  c.append(gate(GateKind::T, {0}));
  c.append(gate(GateKind::T, {1}));
  c.append(gate(GateKind::Tdg, {0}));
  ResourceEstimate est = naive_ledger(c);
  CHECK(est.t_count == 3.0);
  CHECK(est.t_depth == 2.0);

  Circuit pair(4);
  pair.append(gate(GateKind::CCX, {0, 1, 2}));
  pair.append(gate(GateKind::CCX, {0, 1, 2}));
  est = naive_ledger(pair);
  CHECK(est.t_count == 4.0);
  CHECK(est.t_depth == 2.0);

  Circuit lone(4);
  lone.append(gate(GateKind::CCX, {0, 1, 2}));
  est = naive_ledger(lone);
  CHECK(est.t_count == 7.0);
  CHECK(est.t_depth == 3.0);
}

TEST_CASE("serialization round-trips and is byte-stable") {
  Circuit c = random_circuit(5, 100, 42);
  std::string doc = serialize(c);
  Circuit back = deserialize(doc);
  CHECK(back.width() == c.width());
  REQUIRE(back.size() == c.size());
  for (size_t i = 0; i < c.size(); ++i) {
    CHECK(back.gates()[i].kind == c.gates()[i].kind);
    CHECK(back.gates()[i].qubits == c.gates()[i].qubits);
    CHECK(back.gates()[i].angle == c.gates()[i].angle);
    CHECK(back.gates()[i].delta == c.gates()[i].delta);
  }
  CHECK(back.ledger().t_count == c.ledger().t_count);
  CHECK(back.ledger().success_prob == c.ledger().success_prob);
  CHECK(serialize(back) == doc);  // byte stability

  Circuit empty(3);
  empty.add_register("data", 0, 3, RegKind::Data);
  std::string edoc = serialize(empty);
  CHECK(edoc.find("\"gates\": []") != std::string::npos);
  CHECK(deserialize(edoc).size() == 0);
}

TEST_CASE("deserialize reports bad input") {
  CHECK_THROWS_WITH_AS(
      deserialize(R"({"width":1,"registers":{},"gates":[{"kind":"Hadamard","qubits":[0]}],)"
                  R"("ledger":{"t_count":0,"t_depth":0,"expected_t_depth":0,"clean_ancilla":0,)"
                  R"("persistent_ancilla":0,"success_prob":1}})"),
      doctest::Contains("Hadamard"), std::invalid_argument);
  CHECK_THROWS_AS(deserialize("{not json"), std::invalid_argument);
}

TEST_CASE("register bookkeeping") {
  Circuit c(5);
  c.add_register("anc", 0, 2, RegKind::CleanAncilla);
  c.add_register("data", 2, 3, RegKind::Data);
  CHECK(c.registers_partition_width());
  CHECK(c.find_register("data").start == 2);
  CHECK_THROWS_AS(c.add_register("overlap", 1, 2, RegKind::Data), std::invalid_argument);
  CHECK_THROWS_AS(c.find_register("nope"), std::invalid_argument);
}
