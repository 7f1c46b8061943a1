#pragma once
/// Exact evaluation of the proof-coefficient families for k = d and k < d,
/// with every algebraic identity and sign claim checked both from the
/// definitions and from the closed forms.

#include <string>
#include <vector>

#include "srct/error.hpp"
#include "srct/rational.hpp"

namespace srct {

/// A list with an explicit first index. Reading outside [first, last] throws
/// IndexOutOfRange instead of returning zero.
class IndexedSeq {
 public:
  IndexedSeq() = default;
  IndexedSeq(std::string name, int first, int last);

  int first() const { return first_; }
  int last() const { return first_ + static_cast<int>(vals_.size()) - 1; }
  std::size_t size() const { return vals_.size(); }
  bool contains(int i) const { return i >= first_ && i <= last(); }

  const Rational& operator[](int i) const;
  Rational& operator[](int i);

  Rational sum(int from, int to) const;  // empty range gives 0
  std::string str() const;               // space-separated num/den values

 private:
  std::string name_;
  int first_ = 0;
  std::vector<Rational> vals_;
};

struct Check {
  std::string name;
  bool pass = true;
  bool gated = false;  // only binding when the tuple is in the sufficient set
  std::string detail;
};

struct KdCoeffs {
  int n = 0;
  int ell_hat = 0;
  IndexedSeq mu, b, c, lambda;  // lambda is empty unless ell_hat >= 3
  Rational T1, T2;
  std::vector<Check> checks;
  bool pass() const;
};

/// Base-case coefficients for k = d = n-1 at ell = ell_hat(n-1). Requires n >= 5.
KdCoeffs kd_base_coeffs(int n);

struct VCoeffs {
  int k = 0, d = 0, ell = 0;
  Rational v1, v2, v3;
  std::vector<Check> checks;
  bool pass() const;
};

/// Inductive-step weights for k = d. Accepts ell_hat(d) < ell <= k-1; the
/// ell = k-1 case uses the degenerate weights (0, 1, 0).
VCoeffs kd_inductive_v(int k, int d, int ell);

struct KldCoeffs {
  int k = 0, d = 0, ell = 0;
  bool in_ps = false;
  IndexedSeq z, c, mu_bar, nu_bar, delta_bar;
  std::vector<Check> checks;
  /// Failing checks that count: every ungated failure, and gated failures
  /// when the tuple is in the sufficient set.
  std::vector<Check> binding_failures() const;
  bool any_failure() const;
};

/// Coefficients for k < d. Requires 1 <= ell <= k-1 and k < d.
KldCoeffs kld_coeffs(int k, int d, int ell);

enum class SweepMode { Kd, Kld };

struct Counterexample {
  std::string kind;
  int k = 0, d = 0, ell = 0;
  std::string check;
  std::string detail;
};

struct CoeffSweepReport {
  SweepMode mode = SweepMode::Kd;
  int bound = 0;
  std::size_t tuples = 0;
  std::size_t checks = 0;
  std::vector<Counterexample> counterexamples;
  std::string csv;
  bool pass() const { return counterexamples.empty(); }
};

/// kd: base coefficients for 5 <= n <= bound and inductive weights for every
/// d <= bound-1 and ell_hat(d) < ell <= d-1. kld: all 2 <= k < d <= bound,
/// 1 <= ell <= k-1. Requires bound >= 5.
CoeffSweepReport verify_sweep(SweepMode mode, int bound);

}  // namespace srct
