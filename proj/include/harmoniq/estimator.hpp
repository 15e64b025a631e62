#pragma once

#include <map>
#include <string>
#include <vector>

namespace harmoniq {
namespace cost {

/// Clifford+T cost of one synthesized rotation: 1.15 log2(1/delta) + 9.2.
double rotation(double delta);
/// Approximate QFT T-depth: (n-3)(1.15 log2(1/delta) + 13.2) + 7 for n >= 3.
double qft(int n, double delta);
double qft_count(int n, double delta);
/// Linear state preparation expected T-depth: 2n + 4 ceil(log2 n).
double linear(int n);
double linear_count(int n);
/// Multi-controlled X with c controls: 4 ceil(log2(c + 1)).
double mcx(int c);
/// Controlled incrementer over n qubits: 4n + 4.
double incrementer(int n);
/// Linear circulant block-encoding T-depth:
/// 6.9 log2(1/delta) + 8n + 24 log2 n + 94.1.
double circulant(int n, double delta);
double circulant_count(int n, double delta);

/// The eight contributions to the circulant total, in the quoted forms
/// (ceilinged logs). `smooth` replaces ceil(log2 x) by log2 x, which is the
/// aggregation that reproduces the quoted total.
std::vector<double> circulant_items(int n, double delta, bool smooth);
double circulant_items_sum(int n, double delta, bool smooth);

/// Name-keyed evaluation ("rotation", "qft", "linear", "mcx", "incrementer",
/// "circulant", "circulant_item_1" .. "circulant_item_8"). Parameters: n,
/// delta as applicable. Out-of-range parameters throw.
double evaluate(const std::string& formula, const std::map<std::string, double>& params);

}  // namespace cost

struct BlockOptimum {
  int m = 0;
  double delta0 = 0.0;  // QFT rotations
  double delta1 = 0.0;  // circulant rotations
  double t_depth = 0.0;
  double t_count = 0.0;
  double epsilon_achieved = 0.0;
  double qft_share = 0.0;        // of T-depth
  double qft_count_share = 0.0;  // of T-count
};

/// Minimizes 2*qft(n+m, delta0) + circulant(n+m, delta1) subject to
/// pi/2^(n+m) + 2*(2/3)(n+m) delta0 + ((n+m)/5 + 4) delta1 <= epsilon.
/// delta0 = 2*delta1 unless free_deltas; exhaustive log-grid search
/// (60 points per decade), tie-break on the smallest m.
BlockOptimum optimize_block(int n, double epsilon, bool free_deltas = false);

struct ComparisonRow {
  std::string label;
  double n = 0.0;
  double epsilon = 0.0;
  double ours = 0.0;
  double reference = 0.0;
  std::string reference_source;
};

/// Headline comparisons: state-prep expected T-depth vs the rejection
/// sampling Toffoli count, and the QFT share of depth and count.
std::vector<ComparisonRow> comparison_table();

}  // namespace harmoniq
