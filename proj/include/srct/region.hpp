#pragma once
/// Closed-form region quantities for (n, k, d, ell): Gamma, the corner point,
/// the wiretap thresholds and the outer bound.

#include <cstddef>
#include <string>
#include <vector>

#include "srct/rational.hpp"

namespace srct {

struct SystemParams {
  int n = 0;
  int k = 0;
  int d = 0;
  int ell = 0;

  /// Throws InvalidParams unless 1 <= ell < k <= d <= n-1.
  void validate() const;
};

struct RatePoint {
  Rational alpha_bar;
  Rational beta_bar;
  bool operator==(const RatePoint&) const = default;
};

long long gamma(int k, int d, int ell);
RatePoint corner_point(int k, int d, int ell);
int ell_hat_kd(int d);
bool in_Ps(int k, int d, int ell);
int ell_hat(int k, int d);
int ell_star(int k, int d);
Rational g_eval(int k, int d, int ell);

struct OuterBound {
  enum class Kind { Linear, Vertical };
  Kind kind;
  long long slope = 0;   // Gamma - d, for Linear
  Rational alpha_hat;    // for Vertical, and always the corner alpha
  Rational beta_hat;     // paired constraint beta_bar >= beta_hat

  bool admits(const RatePoint& pt) const;
  bool tight_at(const RatePoint& pt) const;  // binding constraint holds with equality
  std::string describe() const;
};

OuterBound outer_bound(int k, int d, int ell);

enum class SingleCorner { Yes, No, Unknown };
std::string to_string(SingleCorner v);

struct RegionVerdict {
  SystemParams params;
  long long gamma = 0;
  RatePoint corner;
  bool in_ps = false;
  int ell_hat = 0;
  int ell_star = 0;
  SingleCorner single_corner = SingleCorner::Unknown;
  OuterBound outer;
};

RegionVerdict region_report(const SystemParams& params);

struct SweepRow {
  int d, k, ell;
  long long gamma;
  bool in_ps;
  int ell_hat, ell_star;
  SingleCorner single_corner;
};

/// Every valid (k, d, ell) with d <= d_max, lexicographic in (d, k, ell).
std::vector<SweepRow> sweep_rows(int d_max);
std::string sweep_csv(const std::vector<SweepRow>& rows);

struct SweepCounterexample {
  int d, k, ell;
  std::string rule;
};

struct SweepReport {
  std::size_t tuples = 0;
  std::vector<SweepCounterexample> counterexamples;
};

/// Checks upward closure of P_s in ell, ell >= ell_star => in P_s, and the
/// corner/outer-bound equalities over tuples with k < d <= d_max, in
/// lexicographic (d, k, ell) order. `limit` > 0 stops after that many tuples.
SweepReport sweep_consistency(int d_max, std::size_t limit = 0);

}  // namespace srct
