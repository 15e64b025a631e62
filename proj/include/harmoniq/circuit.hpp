#pragma once

#include <optional>
#include <string>
#include <vector>

namespace harmoniq {

enum class GateKind {
  H,
  X,
  Z,
  S,
  T,
  Tdg,
  CX,
  CZ,
  CH,
  SWAP,
  CSWAP,
  CCX,
  Rz,
  CRz,
  MCX,
  Incrementer,
  Measure,
};

const char* gate_kind_name(GateKind k);
GateKind gate_kind_from_name(const std::string& name);

/// One gate in a circuit. `qubits` is ordered: controls first, target last
/// for CX/CZ/CH/CCX/CRz/MCX; (control, a, b) for CSWAP; register qubits
/// MSB-first for Incrementer. Rotations are phase gates:
/// Rz(theta) = diag(1, e^{i theta}), CRz applies the phase on |11>.
/// A rotation with `delta` set is a synthesized rotation of accuracy delta;
/// without it the rotation is treated as exact (e.g. the controlled-S and
/// controlled-T layers of the QFT).
struct Gate {
  GateKind kind;
  std::vector<int> qubits;
  double angle = 0.0;
  std::optional<double> delta;

  bool synthesized() const { return delta.has_value(); }
  int arity() const { return static_cast<int>(qubits.size()); }
};

Gate gate(GateKind kind, std::vector<int> qubits);
Gate rz(int qubit, double angle);
Gate crz(int control, int target, double angle);
Gate rz_synth(int qubit, double angle, double delta);
Gate crz_synth(int control, int target, double angle, double delta);

enum class RegKind { Data, CleanAncilla, PersistentAncilla };

const char* reg_kind_name(RegKind k);
RegKind reg_kind_from_name(const std::string& name);

struct Register {
  std::string name;
  int start = 0;
  int len = 0;
  RegKind kind = RegKind::Data;
};

/// Builder-annotated resource ledger. T-counts may be fractional because the
/// rotation-synthesis cost model is a real-valued fit. expected_t_depth folds
/// in repeat-until-success retries (t_depth / success_prob when a single RUS
/// stage applies).
struct ResourceEstimate {
  double t_count = 0.0;
  double t_depth = 0.0;
  double expected_t_depth = 0.0;
  double clean_ancilla = 0.0;
  double persistent_ancilla = 0.0;
  double success_prob = 1.0;
};

/// Sum of ledgers: every field adds except success_prob, which multiplies.
ResourceEstimate combine_ledgers(const ResourceEstimate& a, const ResourceEstimate& b);

/// Immutable-after-construction gate list over named qubit registers.
class Circuit {
 public:
  Circuit() = default;
  explicit Circuit(int width) : width_(width) {}

  int width() const { return width_; }
  const std::vector<Gate>& gates() const { return gates_; }
  const std::vector<Register>& registers() const { return registers_; }
  ResourceEstimate& ledger() { return ledger_; }
  const ResourceEstimate& ledger() const { return ledger_; }

  /// Appends a gate after validating qubit indices. Does not touch the
  /// ledger; ledgers are annotated by builders, not per gate.
  void append(const Gate& g);
  void append_all(const std::vector<Gate>& gs);

  /// Declares a named register. Ranges must stay disjoint; registers are
  /// expected to partition [0, width) once construction is finished.
  void add_register(const std::string& name, int start, int len, RegKind kind);
  const Register& find_register(const std::string& name) const;
  bool registers_partition_width() const;

  size_t size() const { return gates_.size(); }

 private:
  int width_ = 0;
  std::vector<Gate> gates_;
  std::vector<Register> registers_;
  ResourceEstimate ledger_;
};

/// Concatenates two circuits with identical width and register layout.
/// Ledgers are summed field-wise except success_prob, which multiplies.
Circuit compose(const Circuit& a, const Circuit& b);

struct GateCost {
  double t_count = 0.0;
  double t_depth = 0.0;
};

/// Clifford+T cost table. Toffoli-style gates (CCX, CSWAP) are priced per
/// compute/uncompute pair: (4, 2). Synthesized rotations cost
/// 1.15*log2(1/delta) + 9.2 and execute serially. Rotations require delta;
/// asking for the cost of an unsynthesized rotation throws.
GateCost cost_of_gate(GateKind kind, std::optional<double> delta = std::nullopt);
GateCost cost_of_gate(const Gate& g);

/// Greedy T-layering over the explicit gate list ("naive" costing mode,
/// informational only). Matching compute/uncompute Toffoli pairs cost (4, 2)
/// together; a lone Toffoli costs (7, 3). Exact controlled-S / controlled-T
/// rotations cost (3, 2) and (5, 5).
ResourceEstimate naive_ledger(const Circuit& c);

/// JSON round-trip. serialize is byte-stable for equal inputs; deserialize
/// reports parse failures with a byte position and names unknown gate kinds.
std::string serialize(const Circuit& c);
Circuit deserialize(const std::string& text);

}  // namespace harmoniq
