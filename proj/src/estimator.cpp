#include "harmoniq/estimator.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "harmoniq/harmonic_state.hpp"
#include "harmoniq/qft.hpp"

namespace harmoniq {
namespace cost {

namespace {

constexpr double kPi = 3.14159265358979323846;

double ceil_log2(double x) { return std::ceil(std::log2(x)); }

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

double rotation(double delta) {
  require(delta > 0.0 && delta < 1.0, "rotation: delta must lie in (0, 1)");
  return 1.15 * std::log2(1.0 / delta) + 9.2;
}

double qft(int n, double delta) {
  require(n >= 1, "qft: n must be positive");
  if (n >= 3) require(delta > 0.0 && delta < 1.0, "qft: delta must lie in (0, 1)");
  return qft_t_depth(n, delta);
}

double qft_count(int n, double delta) {
  require(n >= 1, "qft_count: n must be positive");
  if (n >= 3) require(delta > 0.0 && delta < 1.0, "qft_count: delta must lie in (0, 1)");
  return qft_t_count(n, delta);
}

double linear(int n) {
  require(n >= 2, "linear: n must be >= 2");
  return 2.0 * n + 4.0 * ceil_log2(n);
}

double linear_count(int n) {
  require(n >= 2, "linear_count: n must be >= 2");
  int a = static_cast<int>(ceil_log2(n));
  double pow2n = std::ldexp(1.0, a);
  return 4.0 * (pow2n - 1.0) + 2.0 * a * pow2n;
}

double mcx(int c) {
  require(c >= 1, "mcx: need at least one control");
  return 4.0 * ceil_log2(c + 1.0);
}

double incrementer(int n) {
  require(n >= 1, "incrementer: n must be positive");
  return 4.0 * n + 4.0;
}

double circulant(int n, double delta) {
  require(n >= 2, "circulant: n must be >= 2");
  require(delta > 0.0 && delta < 1.0, "circulant: delta must lie in (0, 1)");
  return 6.9 * std::log2(1.0 / delta) + 8.0 * n + 24.0 * std::log2(static_cast<double>(n)) + 94.1;
}

double circulant_count(int n, double delta) {
  // No quoted total; a serial bound of the same items with rotation counts.
  require(n >= 2, "circulant_count: n must be >= 2");
  double l = std::log2(1.0 / delta);
  return 6.9 * l + 16.0 * n + 48.0 * std::log2(static_cast<double>(n)) + 160.0;
}

std::vector<double> circulant_items(int n, double delta, bool smooth) {
  require(n >= 2, "circulant_items: n must be >= 2");
  require(delta > 0.0 && delta < 1.0, "circulant_items: delta must lie in (0, 1)");
  double l = std::log2(1.0 / delta);
  auto lg = [&](double x) { return smooth ? std::log2(x) : std::ceil(std::log2(x)); };
  double logn = lg(static_cast<double>(n));
  double logn1 = smooth ? std::log2(static_cast<double>(n)) : std::ceil(std::log2(n + 1.0));
  std::vector<double> items(8);
  items[0] = 4.6 * l + 41.4;              // PREP oracle rotation layers
  items[1] = 4.0;                          // two Toffoli pairs cycling the control basis state
  items[2] = 2.0 * (4.0 * logn1 + 8.0);    // the two controlled Grover reflections
  items[3] = 4.0 * logn + 4.0;             // doubly controlled SWAP pairs
  items[4] = 2.3 * l + 20.7;               // doubly controlled rotation R
  items[5] = 2.0 * (4.0 * logn + 6.0);     // the two Hadamard accumulators
  items[6] = 4.0 * logn;                   // X accumulator
  items[7] = 8.0 * n - 4.0;                // doubly controlled incrementer
  return items;
}

double circulant_items_sum(int n, double delta, bool smooth) {
  double sum = 0.0;
  for (double v : circulant_items(n, delta, smooth)) sum += v;
  return sum;
}

double evaluate(const std::string& formula, const std::map<std::string, double>& params) {
  auto get = [&](const char* key) {
    auto it = params.find(key);
    if (it == params.end())
      throw std::invalid_argument("evaluate: missing parameter '" + std::string(key) + "'");
    return it->second;
  };
  if (formula == "rotation") return rotation(get("delta"));
  if (formula == "qft") return qft(static_cast<int>(get("n")), get("delta"));
  if (formula == "qft_count") return qft_count(static_cast<int>(get("n")), get("delta"));
  if (formula == "linear") return linear(static_cast<int>(get("n")));
  if (formula == "mcx") return mcx(static_cast<int>(get("n")));
  if (formula == "incrementer") return incrementer(static_cast<int>(get("n")));
  if (formula == "circulant") return circulant(static_cast<int>(get("n")), get("delta"));
  for (int i = 1; i <= 8; ++i) {
    if (formula == "circulant_item_" + std::to_string(i))
      return circulant_items(static_cast<int>(get("n")), get("delta"), false)[i - 1];
  }
  throw std::invalid_argument("evaluate: unknown formula '" + formula + "'");
}

}  // namespace cost

namespace {

constexpr double kPi = 3.14159265358979323846;

/// Log grid with 60 points per decade over [1e-16, 1e-1].
std::vector<double> delta_grid() {
  std::vector<double> grid;
  for (int i = 0; i <= 15 * 60; ++i) grid.push_back(std::pow(10.0, -16.0 + i / 60.0));
  return grid;
}

}  // namespace

BlockOptimum optimize_block(int n, double epsilon, bool free_deltas) {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw std::invalid_argument("optimize_block: epsilon must lie in (0, 1)");
  static const std::vector<double> grid = delta_grid();
  BlockOptimum best;
  best.t_depth = std::numeric_limits<double>::infinity();
  for (int m = 1; m <= 40; ++m) {
    int q = n + m;
    if (q > 40) break;
    double cot_err = kPi / std::ldexp(1.0, q);
    if (cot_err >= epsilon) continue;
    double budget = epsilon - cot_err;
    auto consider = [&](double d0, double d1) {
      if (2.0 * (2.0 / 3.0) * q * d0 + (q / 5.0 + 4.0) * d1 > budget) return;
      double depth = 2.0 * cost::qft(q, d0) + cost::circulant(q, d1);
      if (depth < best.t_depth - 1e-9) {
        best.m = m;
        best.delta0 = d0;
        best.delta1 = d1;
        best.t_depth = depth;
        best.epsilon_achieved = cot_err + 2.0 * (2.0 / 3.0) * q * d0 + (q / 5.0 + 4.0) * d1;
      }
    };
    if (free_deltas) {
      for (double d0 : grid)
        for (double d1 : grid) consider(d0, d1);
    } else {
      for (double d1 : grid) consider(2.0 * d1, d1);
    }
  }
  if (!std::isfinite(best.t_depth))
    throw std::invalid_argument("optimize_block: epsilon infeasible within n+m <= 40");
  int q = n + best.m;
  double qft_depth = 2.0 * cost::qft(q, best.delta0);
  best.qft_share = qft_depth / best.t_depth;
  double qft_cnt = 2.0 * cost::qft_count(q, best.delta0);
  double circ_cnt = cost::circulant_count(q, best.delta1);
  best.t_count = qft_cnt + circ_cnt;
  best.qft_count_share = qft_cnt / best.t_count;
  return best;
}

std::vector<ComparisonRow> comparison_table() {
  std::vector<ComparisonRow> rows;
  StateOptimum s22 = optimize_state(22, 1e-9);
  rows.push_back({"state_prep_expected_t_depth", 22, 1e-9, s22.t_depth, 1700.0,
                  "QFT-based pipeline headline"});
  rows.push_back({"rejection_sampling_toffoli_count", 22, 1e-9, s22.t_depth, 11000.0,
                  "rejection-sampling comparison point"});
  StateOptimum s20 = optimize_state(20, 1e-9);
  rows.push_back({"state_prep_qft_t_depth_share", 20, 1e-9, s20.qft_share, 0.92,
                  "QFT share of state-prep T-depth"});
  rows.push_back({"state_prep_qft_t_count_share", 20, 1e-9, s20.qft_count_share, 0.98,
                  "QFT share of state-prep T-count"});
  BlockOptimum b20 = optimize_block(20, 1e-9);
  rows.push_back({"block_encoding_qft_t_depth_share", 20, 1e-9, b20.qft_share, 0.82,
                  "QFT share of block-encoding T-depth"});
  return rows;
}

}  // namespace harmoniq
