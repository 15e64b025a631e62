#include "harmoniq/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "harmoniq/circulant_block.hpp"
#include "harmoniq/estimator.hpp"
#include "harmoniq/harmonic_state.hpp"
#include "harmoniq/json_out.hpp"
#include "harmoniq/linear_prep.hpp"
#include "harmoniq/parallel.hpp"
#include "harmoniq/qft.hpp"
#include "harmoniq/rng.hpp"
#include "harmoniq/rotation_widgets.hpp"
#include "harmoniq/simulator.hpp"

namespace harmoniq {

namespace {

struct Output {
  std::string path;
  std::string format = "json";

  void write_rows(const std::vector<Row>& rows, std::ostream& fallback) const {
    std::string text = format == "csv" ? to_csv(rows) : to_json(rows);
    if (path.empty()) {
      fallback << text;
    } else {
      std::ofstream f(path, std::ios::binary);
      if (!f) throw std::invalid_argument("cannot open output file '" + path + "'");
      f << text;
    }
  }
};

SynthesisModel make_model(const std::string& mode, uint64_t seed) {
  if (mode == "exact") return SynthesisModel::exact();
  if (mode == "perturbed") return SynthesisModel::perturbed(seed);
  throw std::invalid_argument("mode must be 'exact' or 'perturbed'");
}

int cmd_state(int n, int m, double delta, bool combine, const std::string& mode, uint64_t seed,
              const Output& outspec, std::ostream& out) {
  HarmonicProgram prog = build_harmonic(n, m, delta, combine);
  HarmonicRun res = run_harmonic(prog, make_model(mode, seed));
  StateVector h = harmonic_target(n);
  StateVector ih(n);
  for (size_t i = 0; i < ih.dim(); ++i) ih.amps[i] = Complex(0.0, 1.0) * h.amps[i];
  StateVector target =
      cotangent_target(n, m, combine ? CotangentVariant::Combined : CotangentVariant::Single);
  Row row;
  row.add("n", n);
  row.add("m", m);
  row.add("delta", delta);
  row.add("epsilon_achieved", l2_distance(res.output, ih));
  row.add("t_depth", prog.ledger.expected_t_depth);
  row.add("t_count", prog.ledger.t_count);
  row.add("ancilla", prog.ledger.clean_ancilla + prog.ledger.persistent_ancilla);
  row.add("success_prob", res.post_prob);
  row.add("target_distance", l2_distance(res.output, target));
  row.add("combine", combine);
  outspec.write_rows({row}, out);
  return 0;
}

int cmd_linear(int n, const std::string& mode, uint64_t seed, const Output& outspec,
               std::ostream& out) {
  Row row;
  row.add("n", n);
  bool pow2 = n >= 2 && (n & (n - 1)) == 0;
  if (pow2) {
    LinearProgram prog = build_linear(n);
    LinearRun res = simulate_linear(prog, make_model(mode, seed));
    row.add("distance", l2_distance(res.data_state, linear_state(n)));
    row.add("ancilla_zero_prob", res.ancilla_zero_prob);
    row.add("expected_t_depth", prog.main.ledger().expected_t_depth);
    row.add("t_depth", prog.main.ledger().t_depth);
    row.add("t_count", prog.main.ledger().t_count);
    row.add("paper_ancilla_total", prog.paper_ancilla_total());
    row.add("measured_ancilla_total", prog.measured_ancilla_total());
  } else {
    LinearAnyResult res = linear_state_any(n, make_model(mode, seed));
    row.add("distance", l2_distance(res.state, linear_state(n)));
    row.add("built_n", res.built_n);
    row.add("reduction_prob", res.reduction_prob);
    row.add("expected_t_depth", cost::linear(res.built_n));
  }
  outspec.write_rows({row}, out);
  return 0;
}

int cmd_qft(int n, double delta, int seeds, bool conjugation, uint64_t seed, const Output& outspec,
            std::ostream& out) {
  Circuit c = build_approx_qft(n, delta);
  Row row;
  row.add("n", n);
  row.add("delta", delta);
  row.add("t_depth", c.ledger().t_depth);
  row.add("t_count", c.ledger().t_count);
  if (seeds > 0) {
    ErrorFit fit = conjugation ? measure_conjugation_error(n, delta, seeds, seed)
                               : measure_state_error(n, delta, seeds, seed);
    row.add("measured", fit.measured);
    row.add("predicted", fit.predicted);
    row.add("seeds", seeds);
  }
  outspec.write_rows({row}, out);
  return 0;
}

int cmd_rus(int n, int64_t trials, uint64_t seed, const Output& outspec, std::ostream& out) {
  RusEstimate est = expected_tdepth_mc(n, trials, seed);
  Row row;
  row.add("n", n);
  row.add("trials", trials);
  row.add("mean", est.mean);
  row.add("stderr", est.stderr_);
  row.add("fit", est.fit);
  outspec.write_rows({row}, out);
  return 0;
}

ComponentKind component_from_name(const std::string& name) {
  if (name == "ones") return ComponentKind::Ones;
  if (name == "diag_l") return ComponentKind::DiagL;
  if (name == "d") return ComponentKind::DMat;
  if (name == "xn") return ComponentKind::Xn;
  if (name == "grover") return ComponentKind::Grover;
  if (name == "r") return ComponentKind::RGate;
  throw std::invalid_argument("unknown component '" + name + "'");
}

int cmd_block(int n, double delta, const std::string& component, const Output& outspec,
              std::ostream& out) {
  Row row;
  row.add("n", n);
  row.add("delta", delta);
  if (component == "circulant") {
    CirculantEncoding enc = build_circulant_encoding(n, delta);
    row.add("alpha", enc.report.alpha);
    row.add("max_element", enc.report.max_element);
    row.add("distance", enc.report.distance);
    row.add("t_depth", enc.t_depth);
  } else {
    ComponentEncoding enc = build_component_encoding(component_from_name(component), n, delta);
    row.add("component", component);
    row.add("alpha", enc.report.alpha);
    row.add("max_element", enc.report.max_element);
    row.add("distance", enc.report.distance);
    row.add("t_depth", enc.encoder.circuit.ledger().t_depth);
  }
  outspec.write_rows({row}, out);
  return 0;
}

int cmd_diag(int n, int m, double delta0, double delta1, const Output& outspec,
             std::ostream& out) {
  DiagHarmonicEncoding enc = build_diag_harmonic(n, m, delta0, delta1);
  Row row;
  row.add("n", n);
  row.add("m", m);
  row.add("delta0", delta0);
  row.add("delta1", delta1);
  row.add("alpha", enc.alpha);
  row.add("distance", enc.distance);
  row.add("bound", enc.bound);
  row.add("t_depth", enc.t_depth);
  outspec.write_rows({row}, out);
  return 0;
}

int cmd_optimize(const std::string& target, const std::vector<int>& ns,
                 const std::vector<double>& epsilons, bool free_deltas, const Output& outspec,
                 std::ostream& out) {
  std::vector<Row> rows;
  for (int n : ns) {
    for (double eps : epsilons) {
      Row row;
      row.add("n", n);
      row.add("epsilon", eps);
      if (target == "state") {
        StateOptimum opt = optimize_state(n, eps);
        row.add("m", opt.m);
        row.add("delta0", opt.delta);
        row.add("delta1", 0.0);
        row.add("t_depth", opt.t_depth);
        row.add("t_count", opt.t_count);
        row.add("ancilla_clean", opt.ancilla_clean);
        row.add("ancilla_persistent", opt.ancilla_persistent);
        row.add("qft_share", opt.qft_share);
        row.add("epsilon_achieved", opt.epsilon_achieved);
      } else if (target == "block") {
        BlockOptimum opt = optimize_block(n, eps, free_deltas);
        int q = n + opt.m;
        int a = 0;
        while ((1 << a) < q) ++a;
        row.add("m", opt.m);
        row.add("delta0", opt.delta0);
        row.add("delta1", opt.delta1);
        row.add("t_depth", opt.t_depth);
        row.add("t_count", opt.t_count);
        row.add("ancilla_clean", 3.0);
        row.add("ancilla_persistent", static_cast<double>(2 + a + 1 + a + 1 + opt.m));
        row.add("qft_share", opt.qft_share);
        row.add("epsilon_achieved", opt.epsilon_achieved);
      } else {
        throw std::invalid_argument("optimize target must be 'state' or 'block'");
      }
      rows.push_back(std::move(row));
    }
  }
  outspec.write_rows(rows, out);
  return 0;
}

int cmd_table(const Output& outspec, std::ostream& out) {
  std::vector<Row> rows;
  for (const ComparisonRow& r : comparison_table()) {
    Row row;
    row.add("label", r.label);
    row.add("n", r.n);
    row.add("epsilon", r.epsilon);
    row.add("ours", r.ours);
    row.add("reference", r.reference);
    row.add("source", r.reference_source);
    rows.push_back(std::move(row));
  }
  outspec.write_rows(rows, out);
  return 0;
}

// ---- verify suites ----------------------------------------------------

struct Verifier {
  std::ostream& out;
  int failures = 0;

  void check(bool ok, const std::string& name, const std::string& detail) {
    out << (ok ? "PASS " : "FAIL ") << name << " (" << detail << ")\n";
    if (!ok) ++failures;
  }
};

void verify_widgets(Verifier& v, int nmax) {
  int kmax = std::min(nmax, 8);
  for (int k = 1; k <= kmax; ++k) {
    WidgetRun r = simulate_widget(k);
    WidgetSpec spec{k};
    double dp = std::abs(r.success_prob - spec.success_prob());
    double ds = l2_distance(r.output, spec.target_state());
    v.check(dp <= 1e-12 && ds <= 1e-12, "widget_k" + std::to_string(k),
            "|dp|=" + format_double17(dp) + " dist=" + format_double17(ds));
  }
  ExponentialSpec spec{3, ExpBase::Half};
  StateVector e = simulate_exponential(build_exponential(spec));
  double d = l2_distance(e, spec.target_state());
  v.check(d <= 1e-12, "exponential_a3", "dist=" + format_double17(d));
}

void verify_linear(Verifier& v, int nmax) {
  for (int n = 2; n <= std::min(nmax, 8); n *= 2) {
    LinearProgram prog = build_linear(n);
    LinearRun res = simulate_linear(prog);
    double d = l2_distance(res.data_state, linear_state(n));
    v.check(d <= 1e-12 && res.ancilla_zero_prob >= 1.0 - 1e-12, "linear_n" + std::to_string(n),
            "dist=" + format_double17(d));
  }
}

void verify_qft(Verifier& v, int nmax) {
  for (int n = 1; n <= std::min(nmax, 12); ++n) {
    StateVector got = exact_qft(linear_state(n));
    double d = l2_distance(got, qft_linear_closed_form(n));
    v.check(d <= 1e-10, "qft_linear_closed_form_n" + std::to_string(n),
            "dist=" + format_double17(d));
  }
  for (int n = 2; n <= std::min(nmax, 6); ++n) {
    DenseMatrix q = unitary_of(build_approx_qft(n, 1e-8));
    double d = distance(q, exact_qft_matrix(n));
    v.check(d <= 1e-10, "qft_circuit_exact_n" + std::to_string(n), "dist=" + format_double17(d));
  }
}

void verify_harmonic(Verifier& v, int nmax) {
  double d25 = l2_distance(cotangent_target(20, 25, CotangentVariant::Single),
                           [] {
                             StateVector h = harmonic_target(20);
                             for (auto& a : h.amps) a *= Complex(0.0, 1.0);
                             return h;
                           }());
  v.check(d25 <= 1e-10, "single_threshold_20_25", "dist=" + format_double17(d25));
  double d14 = l2_distance(cotangent_target(20, 14, CotangentVariant::Combined),
                           [] {
                             StateVector h = harmonic_target(20);
                             for (auto& a : h.amps) a *= Complex(0.0, 1.0);
                             return h;
                           }());
  v.check(d14 <= 1e-10, "combined_threshold_20_14", "dist=" + format_double17(d14));
  int n = std::min(nmax, 5);
  int m = 3;
  if (n >= 2) {
    HarmonicProgram prog = build_harmonic(n, m, 1e-9, true);
    HarmonicRun res = run_harmonic(prog);
    double d = l2_distance(res.output, cotangent_target(n, m, CotangentVariant::Combined));
    v.check(d <= 1e-10, "pipeline_combined_n" + std::to_string(n) + "_m" + std::to_string(m),
            "dist=" + format_double17(d));
  }
}

void verify_convolution(Verifier& v, int nmax) {
  for (int n = 1; n <= std::min(nmax, 4); ++n) {
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      CounterRng rng(kDefaultSeed, trial + 100 * n);
      std::vector<Complex> vec(size_t(1) << n);
      for (auto& x : vec) x = Complex(rng.next_double() - 0.5, rng.next_double() - 0.5);
      worst = std::max(worst, convolution_check(vec, n).off_diag_max);
    }
    v.check(worst <= 1e-10, "convolution_n" + std::to_string(n),
            "max_offdiag=" + format_double17(worst));
  }
}

void verify_block(Verifier& v, int nmax) {
  int n = std::min(std::max(nmax, 3), 5);
  for (auto which : {ComponentKind::Ones, ComponentKind::DiagL, ComponentKind::DMat,
                     ComponentKind::Xn}) {
    ComponentEncoding enc = build_component_encoding(which, n, 1e-9);
    const char* names[] = {"ones", "diag_l", "d", "xn"};
    int idx = which == ComponentKind::Ones   ? 0
              : which == ComponentKind::DiagL ? 1
              : which == ComponentKind::DMat  ? 2
                                              : 3;
    v.check(enc.report.distance <= 1e-10, std::string("component_") + names[idx],
            "resid=" + format_double17(enc.report.distance));
  }
  CirculantEncoding circ = build_circulant_encoding(n, 1e-9);
  v.check(circ.report.distance <= 1e-10, "circulant_n" + std::to_string(n),
          "resid=" + format_double17(circ.report.distance));
}

int cmd_verify(const std::string& suite, int nmax, std::ostream& out) {
  Verifier v{out};
  bool all = suite == "all";
  if (all || suite == "widgets") verify_widgets(v, nmax);
  if (all || suite == "linear") verify_linear(v, nmax);
  if (all || suite == "qft") verify_qft(v, nmax);
  if (all || suite == "lemmas" || suite == "harmonic") verify_harmonic(v, nmax);
  if (all || suite == "convolution") verify_convolution(v, nmax);
  if (all || suite == "block") verify_block(v, nmax);
  return v.failures == 0 ? 0 : 3;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"harmoniq: harmonic-sequence state preparation and block-encoding toolkit"};
  app.require_subcommand(1);

  int threads = 0;
  Output outspec;
  app.add_option("--threads", threads, "worker threads (default: HARMONIQ_THREADS or cores)");
  app.add_option("--output", outspec.path, "write results to a file instead of stdout");
  app.add_option("--format", outspec.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));

  int n = 4, m = 2, seeds = 0, nmax = 6;
  int64_t trials = 100000;
  double delta = 1e-9, delta0 = 0.0, delta1 = 0.0;
  std::vector<int> ns;
  std::vector<double> epsilons;
  uint64_t seed = kDefaultSeed;
  std::string mode = "exact", component = "circulant", target = "state", suite = "all";
  bool combine = true, single = false, conjugation = false, free_deltas = false;

  auto* state = app.add_subcommand("state", "build and simulate the harmonic-state pipeline");
  state->add_option("--n", n)->required();
  state->add_option("--m", m)->required();
  state->add_option("--delta", delta);
  state->add_option("--mode", mode)->check(CLI::IsMember({"exact", "perturbed"}));
  state->add_option("--seed", seed);
  state->add_flag("--single", single, "measure-and-amend variant instead of combining");

  auto* linear = app.add_subcommand("linear", "linear (sawtooth) state preparation");
  linear->add_option("--n", n)->required();
  linear->add_option("--mode", mode)->check(CLI::IsMember({"exact", "perturbed"}));
  linear->add_option("--seed", seed);

  auto* qft = app.add_subcommand("qft", "approximate QFT ledger and error measurement");
  qft->add_option("--n", n)->required();
  qft->add_option("--delta", delta);
  qft->add_option("--seeds", seeds, "perturbed-mode seeds (>= 50 enables measurement)");
  qft->add_flag("--conjugation", conjugation, "measure conjugation error instead of state error");
  qft->add_option("--seed", seed);

  auto* rus = app.add_subcommand("rus", "repeat-until-success expected T-depth Monte Carlo");
  rus->add_option("--n", n)->required();
  rus->add_option("--trials", trials);
  rus->add_option("--seed", seed);

  auto* block = app.add_subcommand("block", "block-encoding reports");
  block->add_option("--n", n)->required();
  block->add_option("--delta", delta);
  block->add_option("--component", component,
                    "circulant|ones|diag_l|d|xn|grover|r (default circulant)");

  auto* diag = app.add_subcommand("diag", "diagonal harmonic block-encoding");
  diag->add_option("--n", n)->required();
  diag->add_option("--m", m)->required();
  diag->add_option("--delta0", delta0);
  diag->add_option("--delta1", delta1);
  diag->add_option("--delta", delta, "sets delta1 = delta, delta0 = 2*delta unless given");

  auto* optimize = app.add_subcommand("optimize", "T-depth optimization for a target error");
  optimize->add_option("--target", target)->check(CLI::IsMember({"state", "block"}));
  optimize->add_option("--n", ns)->required();
  optimize->add_option("--epsilon", epsilons)->required();
  optimize->add_flag("--free-deltas", free_deltas, "optimize delta0, delta1 independently");

  auto* verify = app.add_subcommand("verify", "run a named verification suite");
  verify->add_option("--suite", suite,
                     "widgets|linear|qft|lemmas|convolution|block|all");
  verify->add_option("--nmax", nmax);

  app.add_subcommand("table", "headline resource comparisons");

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n" << app.help();
    return 2;
  }

  if (threads > 0) set_thread_count(threads);

  try {
    if (app.got_subcommand("state"))
      return cmd_state(n, m, delta, combine && !single, mode, seed, outspec, out);
    if (app.got_subcommand("linear")) return cmd_linear(n, mode, seed, outspec, out);
    if (app.got_subcommand("qft"))
      return cmd_qft(n, delta, seeds, conjugation, seed, outspec, out);
    if (app.got_subcommand("rus")) return cmd_rus(n, trials, seed, outspec, out);
    if (app.got_subcommand("block")) return cmd_block(n, delta, component, outspec, out);
    if (app.got_subcommand("diag")) {
      if (delta1 <= 0.0) delta1 = delta;
      if (delta0 <= 0.0) delta0 = 2.0 * delta1;
      return cmd_diag(n, m, delta0, delta1, outspec, out);
    }
    if (app.got_subcommand("optimize"))
      return cmd_optimize(target, ns, epsilons, free_deltas, outspec, out);
    if (app.got_subcommand("verify")) return cmd_verify(suite, nmax, out);
    if (app.got_subcommand("table")) return cmd_table(outspec, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  err << "error: no subcommand\n";
  return 2;
}

int cli_main(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace harmoniq
