// Entropy inequalities from the k = d converse, evaluated on a concrete code.
// Each entry records both sides exactly; an entry passes when lhs <= rhs.

#include <string>

#include "srct/entropy.hpp"
#include "srct/error.hpp"
#include "srct/region.hpp"

namespace srct {

namespace {

class Catalog {
 public:
  explicit Catalog(const EntropyOracle& o)
      : o_(o), n_(o.code().n), k_(o.code().k), d_(o.code().d), ell_(o.code().ell),
        alpha_(static_cast<long long>(o.code().alpha())), bs_(static_cast<long long>(o.code().B_s)) {}

  std::vector<CatalogEntry> run() {
    lemma1();
    bound_s();
    han();
    kd_chain();
    lemma4();
    appendix_a();
    return std::move(out_);
  }

 private:
  Rational H(const VarSet& a) const { return Rational(static_cast<long long>(o_.entropy(a))); }
  Rational Hc(const VarSet& a, const VarSet& c) const {
    return Rational(static_cast<long long>(o_.conditional(a, c)));
  }
  VarSet S(int j) const { return repair_to(n_, j); }
  VarSet SS(int a, int b) const { return a > b ? VarSet{} : repair_to_range(n_, a, b); }
  VarSet Sn(int a, int b) const { return a > b ? VarSet{} : repair_from_to(n_, a, b); }
  VarSet W(int a, int b) const { return a > b ? VarSet{} : nodes(a, b); }

  // H(W_[ell+1:k] | S^[ell]), the quantity bounded throughout the k = d proof.
  Rational target() const { return Hc(W(ell_ + 1, k_), SS(1, ell_)); }
  // H(S^i | S^[i-1])
  Rational step(int i) const { return Hc(S(i), SS(1, i - 1)); }

  void add(std::string name, std::string indices, Rational lhs, Rational rhs) {
    Rational slack = rhs - lhs;
    const bool pass = slack.sign() >= 0;
    out_.push_back({std::move(name), std::move(indices), std::move(lhs), std::move(rhs), std::move(slack), pass});
  }

  void lemma1() {
    const Rational lhs = target();
    for (int t = 0; t <= ell_ - 1; ++t) {
      const Rational w = frac(d_ + 1 - t, 3);
      Rational rhs = w * (Rational(alpha_) - H(Sn(1, t))) + frac(d_ + 1 - t, 6) * step(t + 1);
      for (int i = t + 1; i <= ell_; ++i) rhs -= step(i);
      add("lemma1", "t=" + std::to_string(t), lhs, rhs);
    }
  }

  void bound_s() {
    for (int t = 0; t <= k_ - 1; ++t) {
      add("bound_S", "t=" + std::to_string(t), step(t + 1),
          Rational(d_ - t) * Hc(Sn(t + 1, t + 1), Sn(1, t)));
    }
  }

  void han() {
    for (int i = 2; i <= n_ - 1; ++i) {
      for (int j = 1; j < i; ++j) {
        add("han", "i=" + std::to_string(i) + ",j=" + std::to_string(j), H(Sn(1, i)) / Rational(i),
            H(Sn(1, j)) / Rational(j));
      }
    }
  }

  void kd_chain() {
    const Rational lhs = target();
    const std::string at = "ell=" + std::to_string(ell_);

    // Upper bound on the target through the ell-th step.
    Rational rhs3 = frac(k_ - ell_ + 1, 2) * Rational(alpha_) + frac(k_ - ell_ - 2, 4) * step(ell_);
    for (int i = ell_ - 1; i <= k_ - 1; ++i) rhs3 -= frac(1, 2) * H(Sn(1, i));
    add("lemma3", at, lhs, rhs3);

    // Chain-rule step behind the inductive bound; holds with equality.
    add("temple1_step", at, lhs, Hc(W(ell_, k_), SS(1, ell_ - 1)) - step(ell_));
    if (ell_ - 1 >= ell_hat_kd(d_) && ell_ - 1 >= 1) {
      add("temple1", at, lhs, frac(gamma(k_, d_, ell_ - 1), d_) * Rational(alpha_) - step(ell_));
    }
    if (ell_ >= ell_hat_kd(d_)) {
      add("kd_bound", at, lhs, frac(gamma(k_, d_, ell_), d_) * Rational(alpha_));
    }

    Rational rhs_t3 = Rational(-(n_ - ell_ - 1)) * H(Sn(1, ell_));
    for (int i = ell_ + 1; i <= k_; ++i) rhs_t3 += H(Sn(1, i));
    add("temple3", at, lhs, rhs_t3);

    add("sc_kd", at, Rational(bs_), lhs);
  }

  void lemma4() {
    for (int y = ell_ + 1; y <= k_; ++y) {
      for (int t = ell_; t <= y - 1; ++t) {
        const std::string idx = "y=" + std::to_string(y) + ",t_y=" + std::to_string(t);
        const VarSet given = join(SS(1, t), W(t + 1, y - 1));
        add("lemma4_S", idx, Hc(S(y), given), frac(d_ + 1 - y, d_ - t) * step(t + 1));
        Rational rhs;
        if (t <= y - 2) {
          rhs = Rational(alpha_) - H(Sn(1, y - 2)) + frac(d_ + 1 - y, d_ + 1 - t) * step(t) - step(y - 1);
        } else {
          rhs = Rational(alpha_) - H(Sn(1, y - 1));
        }
        add("lemma4_W", idx, Hc(W(y, y), given), rhs);
      }
    }
  }

  void appendix_a() {
    const std::string at = "ell=" + std::to_string(ell_);
    const long long g = gamma(k_, d_, ell_);
    const Rational tail = Hc(SS(ell_ + 1, k_), SS(1, ell_));
    const Rational hn = H(Sn(1, ell_));
    add("appA_sc", at, Rational(bs_), tail);
    add("appA_t1", at, tail, frac(g, ell_) * hn);
    add("appA_t2_sc", at, Rational(bs_), Hc(join(SS(ell_ + 1, k_ - 1), W(k_, k_)), SS(1, ell_)));
    add("appA_t2", at, Rational(bs_), Rational(alpha_) + frac(g - d_, ell_) * hn);
  }

  const EntropyOracle& o_;
  int n_, k_, d_, ell_;
  long long alpha_, bs_;
  std::vector<CatalogEntry> out_;
};

}  // namespace

std::vector<CatalogEntry> check_inequality_catalog(const EntropyOracle& oracle) {
  const auto& code = oracle.code();
  if (code.k != code.n - 1 || code.d != code.n - 1) {
    throw PreconditionUnmet("inequality catalog needs k = d = n-1");
  }
  if (code.ell < 1 || code.ell >= code.k) throw PreconditionUnmet("inequality catalog needs 1 <= ell < k");
  return Catalog(oracle).run();
}

std::vector<CatalogEntry> check_inequality_catalog(const LinearStorageCode& code) {
  EntropyOracle o(code);
  return check_inequality_catalog(o);
}

}  // namespace srct
