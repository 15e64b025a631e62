#include "harmoniq/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

#include "json.hpp"

namespace harmoniq {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct KindInfo {
  GateKind kind;
  const char* name;
  int arity;  // -1: variable
};

const KindInfo kKinds[] = {
    {GateKind::H, "H", 1},           {GateKind::X, "X", 1},
    {GateKind::Z, "Z", 1},           {GateKind::S, "S", 1},
    {GateKind::T, "T", 1},           {GateKind::Tdg, "Tdg", 1},
    {GateKind::CX, "CX", 2},         {GateKind::CZ, "CZ", 2},
    {GateKind::CH, "CH", 2},         {GateKind::SWAP, "SWAP", 2},
    {GateKind::CSWAP, "CSWAP", 3},   {GateKind::CCX, "CCX", 3},
    {GateKind::Rz, "Rz", 1},         {GateKind::CRz, "CRz", 2},
    {GateKind::MCX, "MCX", -1},      {GateKind::Incrementer, "Incrementer", -1},
    {GateKind::Measure, "Measure", -1},
};

const KindInfo& info_for(GateKind k) {
  for (const auto& i : kKinds)
    if (i.kind == k) return i;
  throw std::logic_error("unknown gate kind");
}

bool is_rotation(GateKind k) { return k == GateKind::Rz || k == GateKind::CRz; }

}  // namespace

const char* gate_kind_name(GateKind k) { return info_for(k).name; }

GateKind gate_kind_from_name(const std::string& name) {
  for (const auto& i : kKinds)
    if (name == i.name) return i.kind;
  throw std::invalid_argument("unknown gate kind '" + name + "'");
}

Gate gate(GateKind kind, std::vector<int> qubits) {
  Gate g;
  g.kind = kind;
  g.qubits = std::move(qubits);
  return g;
}

Gate rz(int qubit, double angle) {
  Gate g = gate(GateKind::Rz, {qubit});
  g.angle = angle;
  return g;
}

Gate crz(int control, int target, double angle) {
  Gate g = gate(GateKind::CRz, {control, target});
  g.angle = angle;
  return g;
}

Gate rz_synth(int qubit, double angle, double delta) {
  Gate g = rz(qubit, angle);
  g.delta = delta;
  return g;
}

Gate crz_synth(int control, int target, double angle, double delta) {
  Gate g = crz(control, target, angle);
  g.delta = delta;
  return g;
}

const char* reg_kind_name(RegKind k) {
  switch (k) {
    case RegKind::Data: return "data";
    case RegKind::CleanAncilla: return "clean-ancilla";
    case RegKind::PersistentAncilla: return "persistent-ancilla";
  }
  throw std::logic_error("unknown register kind");
}

RegKind reg_kind_from_name(const std::string& name) {
  if (name == "data") return RegKind::Data;
  if (name == "clean-ancilla") return RegKind::CleanAncilla;
  if (name == "persistent-ancilla") return RegKind::PersistentAncilla;
  throw std::invalid_argument("unknown register kind '" + name + "'");
}

ResourceEstimate combine_ledgers(const ResourceEstimate& a, const ResourceEstimate& b) {
  ResourceEstimate r;
  r.t_count = a.t_count + b.t_count;
  r.t_depth = a.t_depth + b.t_depth;
  r.expected_t_depth = a.expected_t_depth + b.expected_t_depth;
  r.clean_ancilla = a.clean_ancilla + b.clean_ancilla;
  r.persistent_ancilla = a.persistent_ancilla + b.persistent_ancilla;
  r.success_prob = a.success_prob * b.success_prob;
  return r;
}

void Circuit::append(const Gate& g) {
  const KindInfo& info = info_for(g.kind);
  if (info.arity >= 0 && g.arity() != info.arity)
    throw std::invalid_argument(std::string("gate ") + info.name + " expects " +
                                std::to_string(info.arity) + " qubits");
  if (g.kind == GateKind::MCX && g.arity() < 2)
    throw std::invalid_argument("MCX needs at least one control and a target");
  if (g.kind == GateKind::Incrementer && g.arity() < 1)
    throw std::invalid_argument("Incrementer needs at least one qubit");
  std::set<int> seen;
  for (int q : g.qubits) {
    if (q < 0 || q >= width_)
      throw std::out_of_range("qubit index " + std::to_string(q) +
                              " out of range for width " + std::to_string(width_));
    if (!seen.insert(q).second)
      throw std::invalid_argument("duplicate qubit index in gate");
  }
  if (is_rotation(g.kind)) {
    if (!std::isfinite(g.angle)) throw std::invalid_argument("rotation angle must be finite");
    if (g.delta && !(*g.delta > 0.0 && *g.delta < 1.0))
      throw std::invalid_argument("synthesis accuracy delta must lie in (0, 1)");
  }
  gates_.push_back(g);
}

void Circuit::append_all(const std::vector<Gate>& gs) {
  for (const auto& g : gs) append(g);
}

void Circuit::add_register(const std::string& name, int start, int len, RegKind kind) {
  if (start < 0 || len <= 0 || start + len > width_)
    throw std::out_of_range("register '" + name + "' does not fit circuit width");
  for (const auto& r : registers_) {
    if (r.name == name) throw std::invalid_argument("duplicate register name '" + name + "'");
    if (start < r.start + r.len && r.start < start + len)
      throw std::invalid_argument("register '" + name + "' overlaps '" + r.name + "'");
  }
  registers_.push_back(Register{name, start, len, kind});
  std::sort(registers_.begin(), registers_.end(),
            [](const Register& a, const Register& b) { return a.start < b.start; });
}

const Register& Circuit::find_register(const std::string& name) const {
  for (const auto& r : registers_)
    if (r.name == name) return r;
  throw std::invalid_argument("no register named '" + name + "'");
}

bool Circuit::registers_partition_width() const {
  int covered = 0;
  for (const auto& r : registers_) {
    if (r.start != covered) return false;
    covered += r.len;
  }
  return covered == width_;
}

Circuit compose(const Circuit& a, const Circuit& b) {
  if (a.width() != b.width()) throw std::invalid_argument("compose: width mismatch");
  const auto& ra = a.registers();
  const auto& rb = b.registers();
  if (ra.size() != rb.size()) throw std::invalid_argument("compose: register mismatch");
  for (size_t i = 0; i < ra.size(); ++i) {
    if (ra[i].name != rb[i].name || ra[i].start != rb[i].start || ra[i].len != rb[i].len ||
        ra[i].kind != rb[i].kind)
      throw std::invalid_argument("compose: register mismatch");
  }
  Circuit out(a.width());
  for (const auto& r : ra) out.add_register(r.name, r.start, r.len, r.kind);
  out.append_all(a.gates());
  out.append_all(b.gates());
  out.ledger() = combine_ledgers(a.ledger(), b.ledger());
  return out;
}

GateCost cost_of_gate(GateKind kind, std::optional<double> delta) {
  Gate g;
  g.kind = kind;
  g.delta = delta;
  switch (kind) {
    case GateKind::CX:
    case GateKind::CZ:
    case GateKind::SWAP:
      g.qubits = {0, 1};
      break;
    case GateKind::CCX:
    case GateKind::CSWAP:
      g.qubits = {0, 1, 2};
      break;
    case GateKind::CRz:
      g.qubits = {0, 1};
      break;
    default:
      g.qubits = {0};
      break;
  }
  return cost_of_gate(g);
}

GateCost cost_of_gate(const Gate& g) {
  switch (g.kind) {
    case GateKind::T:
    case GateKind::Tdg:
      return {1.0, 1.0};
    case GateKind::CH:
      return {2.0, 2.0};
    case GateKind::CCX:
    case GateKind::CSWAP:
      // Compute/uncompute pair price; naive_ledger splits it per member.
      return {4.0, 2.0};
    case GateKind::Rz:
    case GateKind::CRz: {
      if (!g.delta)
        throw std::invalid_argument("cost_of_gate: rotation without synthesis accuracy delta");
      double t = 1.15 * std::log2(1.0 / *g.delta) + 9.2;
      return {t, t};
    }
    case GateKind::MCX: {
      int controls = g.arity() - 1;
      if (controls <= 1) return controls == 1 ? GateCost{0.0, 0.0} : GateCost{0.0, 0.0};
      if (controls == 2) return {4.0, 2.0};
      return {4.0 * (controls - 1), 4.0 * std::ceil(std::log2(controls + 1.0))};
    }
    case GateKind::Incrementer: {
      int w = g.arity();
      return {8.0 * w - 4.0, 4.0 * w + 4.0};
    }
    default:
      return {0.0, 0.0};  // Clifford
  }
}

namespace {

bool same_qubit_set(const Gate& a, const Gate& b) {
  if (a.kind != b.kind || a.arity() != b.arity()) return false;
  return a.qubits == b.qubits;
}

}  // namespace

ResourceEstimate naive_ledger(const Circuit& c) {
  const auto& gs = c.gates();
  size_t n = gs.size();
  // Pair up identical Toffoli-type gates (LIFO per qubit tuple).
  std::vector<int> pair_of(n, -1);
  std::map<std::vector<int>, std::vector<size_t>> open;
  for (size_t i = 0; i < n; ++i) {
    if (gs[i].kind != GateKind::CCX && gs[i].kind != GateKind::CSWAP) continue;
    std::vector<int> key = gs[i].qubits;
    key.insert(key.begin(), static_cast<int>(gs[i].kind));
    auto& stack = open[key];
    if (!stack.empty()) {
      size_t j = stack.back();
      stack.pop_back();
      pair_of[i] = static_cast<int>(j);
      pair_of[j] = static_cast<int>(i);
    } else {
      stack.push_back(i);
    }
  }

  ResourceEstimate est;
  std::vector<double> clock(c.width(), 0.0);
  double total_depth = 0.0;
  auto schedule = [&](const Gate& g, double tc, double td) {
    est.t_count += tc;
    if (td <= 0.0) return;
    double start = 0.0;
    for (int q : g.qubits) start = std::max(start, clock[q]);
    double end = start + td;
    for (int q : g.qubits) clock[q] = end;
    total_depth = std::max(total_depth, end);
  };

  for (size_t i = 0; i < n; ++i) {
    const Gate& g = gs[i];
    switch (g.kind) {
      case GateKind::CCX:
      case GateKind::CSWAP:
        if (pair_of[i] >= 0)
          schedule(g, 2.0, 1.0);  // half of the (4, 2) pair
        else
          schedule(g, 7.0, 3.0);  // lone Toffoli
        break;
      case GateKind::Rz:
      case GateKind::CRz: {
        if (g.synthesized()) {
          GateCost k = cost_of_gate(g);
          schedule(g, k.t_count, k.t_depth);
        } else {
          // Exact Clifford+T phase gates: controlled-S and controlled-T.
          double a = std::abs(std::remainder(g.angle, 2.0 * kPi));
          if (std::abs(a - kPi / 2.0) < 1e-12)
            schedule(g, 3.0, 2.0);
          else if (std::abs(a - kPi / 4.0) < 1e-12)
            schedule(g, 5.0, 5.0);
          else if (std::abs(a) < 1e-12 || std::abs(a - kPi) < 1e-12)
            schedule(g, 0.0, 0.0);
          else
            schedule(g, 5.0, 5.0);  // other exact diagonal gates, charge like cT
        }
        break;
      }
      default: {
        GateCost k = cost_of_gate(g);
        schedule(g, k.t_count, k.t_depth);
        break;
      }
    }
  }
  est.t_depth = total_depth;
  est.expected_t_depth = total_depth;
  est.success_prob = 1.0;
  return est;
}

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json ledger_to_json(const ResourceEstimate& l) {
  ordered_json j;
  j["t_count"] = l.t_count;
  j["t_depth"] = l.t_depth;
  j["expected_t_depth"] = l.expected_t_depth;
  j["clean_ancilla"] = l.clean_ancilla;
  j["persistent_ancilla"] = l.persistent_ancilla;
  j["success_prob"] = l.success_prob;
  return j;
}

ResourceEstimate ledger_from_json(const nlohmann::json& j) {
  ResourceEstimate l;
  l.t_count = j.at("t_count").get<double>();
  l.t_depth = j.at("t_depth").get<double>();
  l.expected_t_depth = j.at("expected_t_depth").get<double>();
  l.clean_ancilla = j.at("clean_ancilla").get<double>();
  l.persistent_ancilla = j.at("persistent_ancilla").get<double>();
  l.success_prob = j.at("success_prob").get<double>();
  return l;
}

}  // namespace

std::string serialize(const Circuit& c) {
  ordered_json doc;
  doc["width"] = c.width();
  ordered_json regs = ordered_json::object();
  auto sorted = c.registers();  // kept sorted by start
  for (const auto& r : sorted) {
    ordered_json jr;
    jr["start"] = r.start;
    jr["len"] = r.len;
    jr["kind"] = reg_kind_name(r.kind);
    regs[r.name] = jr;
  }
  doc["registers"] = regs;
  ordered_json gates = ordered_json::array();
  for (const auto& g : c.gates()) {
    ordered_json jg;
    jg["kind"] = gate_kind_name(g.kind);
    jg["qubits"] = g.qubits;
    if (g.kind == GateKind::Rz || g.kind == GateKind::CRz) jg["angle"] = g.angle;
    if (g.delta) jg["delta"] = *g.delta;
    gates.push_back(jg);
  }
  doc["gates"] = gates;
  doc["ledger"] = ledger_to_json(c.ledger());
  return doc.dump(2) + "\n";
}

Circuit deserialize(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("circuit parse error: ") + e.what());
  }
  Circuit c(doc.at("width").get<int>());
  for (auto it = doc.at("registers").begin(); it != doc.at("registers").end(); ++it) {
    const auto& jr = it.value();
    c.add_register(it.key(), jr.at("start").get<int>(), jr.at("len").get<int>(),
                   reg_kind_from_name(jr.at("kind").get<std::string>()));
  }
  for (const auto& jg : doc.at("gates")) {
    Gate g;
    g.kind = gate_kind_from_name(jg.at("kind").get<std::string>());
    g.qubits = jg.at("qubits").get<std::vector<int>>();
    if (jg.contains("angle")) g.angle = jg.at("angle").get<double>();
    if (jg.contains("delta")) g.delta = jg.at("delta").get<double>();
    c.append(g);
  }
  c.ledger() = ledger_from_json(doc.at("ledger"));
  return c;
}

}  // namespace harmoniq
