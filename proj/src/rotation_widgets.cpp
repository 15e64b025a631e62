#include "harmoniq/rotation_widgets.hpp"

#include <cmath>
#include <stdexcept>

#include "harmoniq/parallel.hpp"
#include "harmoniq/rng.hpp"

namespace harmoniq {

double WidgetSpec::success_prob() const { return 0.5 + std::ldexp(1.0, -(k + 1)); }

StateVector WidgetSpec::target_state() const {
  StateVector s(1);
  double ratio = std::ldexp(1.0, -k);  // 2^{-k}, amplitude ratio squared is 2^{-k}
  double a0 = std::sqrt(1.0 / (1.0 + ratio));
  s.amps[0] = a0;
  s.amps[1] = a0 * std::sqrt(ratio);
  return s;
}

Circuit build_widget(int k) {
  if (k < 1 || k > 20) throw std::invalid_argument("build_widget: k must lie in [1, 20]");
  Circuit c(k + 1);
  c.add_register("out", 0, 1, RegKind::Data);
  c.add_register("anc", 1, k, RegKind::PersistentAncilla);
  c.append(gate(GateKind::H, {0}));
  for (int i = 1; i <= k; ++i) c.append(gate(GateKind::CH, {0, i}));
  WidgetSpec spec{k};
  auto& l = c.ledger();
  l.t_count = 2.0 * k;
  l.t_depth = 2.0;
  l.success_prob = spec.success_prob();
  l.expected_t_depth = l.t_depth / l.success_prob;
  l.clean_ancilla = 0;
  l.persistent_ancilla = k;
  return c;
}

WidgetRun simulate_widget(int k) {
  Circuit c = build_widget(k);
  StateVector out = run(c, StateVector::basis(k + 1, 0));
  auto [post, prob] = postselect(out, 1, k, 0);
  return {drop_register(post, 1, k, 0), prob};
}

double ExponentialSpec::beta() const { return base == ExpBase::Half ? 0.5 : 1.0 / std::sqrt(2.0); }

std::vector<int> ExponentialSpec::widget_ks() const {
  // bit weight of data qubit j (MSB first) is 2^(a-1-j); k = w * 2*log2(1/beta)
  int per_weight = base == ExpBase::Half ? 2 : 1;
  std::vector<int> ks(a);
  for (int j = 0; j < a; ++j) ks[j] = per_weight << (a - 1 - j);
  return ks;
}

int ExponentialSpec::ancilla_total() const {
  int total = 0;
  for (int k : widget_ks()) total += k;
  return total;
}

StateVector ExponentialSpec::target_state() const {
  StateVector s(a);
  double b = beta();
  double norm2 = 0.0;
  for (size_t x = 0; x < s.dim(); ++x) {
    double amp = std::pow(b, static_cast<double>(x));
    s.amps[x] = amp;
    norm2 += amp * amp;
  }
  double scale = 1.0 / std::sqrt(norm2);
  for (auto& amp : s.amps) amp *= scale;
  return s;
}

ExponentialProgram build_exponential(const ExponentialSpec& spec) {
  if (spec.a < 1 || spec.a > 8) throw std::invalid_argument("build_exponential: a must lie in [1, 8]");
  ExponentialProgram prog;
  prog.spec = spec;
  for (int k : spec.widget_ks()) {
    Circuit w = build_widget(k);
    prog.ledger = combine_ledgers(prog.ledger, w.ledger());
    prog.widgets.push_back(std::move(w));
  }
  // Widgets run in parallel and retry independently; depth stays 2 per round.
  prog.ledger.t_depth = 2.0;
  prog.ledger.expected_t_depth = rus_fit(spec.a);
  return prog;
}

StateVector simulate_exponential(const ExponentialProgram& prog) {
  std::vector<std::pair<int, StateVector>> factors;
  for (int j = 0; j < prog.spec.a; ++j) {
    factors.emplace_back(j, simulate_widget(prog.spec.widget_ks()[j]).output);
  }
  return tensor_embed(prog.spec.a, factors);
}

RusEstimate expected_tdepth_mc(const std::vector<double>& probs, int64_t trials, uint64_t seed) {
  if (trials < 10000) throw std::invalid_argument("expected_tdepth_mc: trials must be >= 1e4");
  std::vector<double> depth(trials);
  parallel_for(trials, [&](int64_t t) {
    CounterRng rng(seed, static_cast<uint64_t>(t));
    int max_attempts = 0;
    for (double p : probs) {
      int attempts = rng.next_geometric(p);
      if (attempts > max_attempts) max_attempts = attempts;
    }
    depth[t] = 2.0 * max_attempts;
  });
  double sum = 0.0;
  for (double d : depth) sum += d;
  double mean = sum / trials;
  double var = 0.0;
  for (double d : depth) var += (d - mean) * (d - mean);
  var /= (trials - 1);
  RusEstimate est;
  est.mean = mean;
  est.stderr_ = std::sqrt(var / trials);
  est.fit = rus_fit(static_cast<int>(probs.size()));
  return est;
}

RusEstimate expected_tdepth_mc(int n_components, int64_t trials, uint64_t seed) {
  std::vector<double> probs(n_components);
  for (int i = 0; i < n_components; ++i) {
    double k = std::ldexp(1.0, i + 1);  // k_i = 2^{i+1}
    probs[i] = k >= 1060 ? 0.5 : 0.5 + std::pow(2.0, -(k + 1.0));
  }
  return expected_tdepth_mc(probs, trials, seed);
}

double rus_fit(int n_components) { return 2.0 * std::log2(2.5 * n_components + 0.92); }

double expected_max_geometric(int n, double p) {
  // E[max] = sum_{t>=0} (1 - (1-q^t)^n) with q = 1-p.
  double q = 1.0 - p;
  double sum = 0.0;
  double qt = 1.0;  // q^t
  for (int t = 0; t < 100000; ++t) {
    double term = 1.0 - std::pow(1.0 - qt, n);
    sum += term;
    if (term < 1e-16 && t > 0) break;
    qt *= q;
  }
  return sum;
}

double single_ancilla_estimate(int a) {
  if (a < 0) throw std::invalid_argument("single_ancilla_estimate: a must be >= 0");
  return std::ldexp(1.0, a + 1);
}

}  // namespace harmoniq
