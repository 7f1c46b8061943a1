#include "srct/coeff.hpp"

#include <algorithm>
#include <sstream>

#include "srct/region.hpp"

namespace srct {

IndexedSeq::IndexedSeq(std::string name, int first, int last)
    : name_(std::move(name)), first_(first), vals_(last >= first ? static_cast<std::size_t>(last - first + 1) : 0) {}

const Rational& IndexedSeq::operator[](int i) const {
  if (!contains(i)) {
    throw IndexOutOfRange(name_ + "[" + std::to_string(i) + "] outside " + std::to_string(first_) + ".." +
                          std::to_string(last()));
  }
  return vals_[static_cast<std::size_t>(i - first_)];
}

Rational& IndexedSeq::operator[](int i) {
  return const_cast<Rational&>(static_cast<const IndexedSeq&>(*this)[i]);
}

Rational IndexedSeq::sum(int from, int to) const {
  Rational s;
  for (int i = from; i <= to; ++i) s += (*this)[i];
  return s;
}

std::string IndexedSeq::str() const {
  std::string out;
  for (std::size_t i = 0; i < vals_.size(); ++i) {
    if (i) out += ' ';
    out += vals_[i].str();
  }
  return out;
}

namespace {

Rational R(long long v) { return Rational(v); }

class Checks {
 public:
  explicit Checks(std::vector<Check>& out) : out_(out) {}

  void eq(const std::string& name, const Rational& got, const Rational& want, bool gated = false) {
    const bool ok = got == want;
    out_.push_back({name, ok, gated, ok ? "" : "got " + got.str() + ", expected " + want.str()});
  }
  void nonneg(const std::string& name, const Rational& v, bool gated = false) {
    const bool ok = v.sign() >= 0;
    out_.push_back({name, ok, gated, ok ? "" : "value " + v.str() + " < 0"});
  }
  void nonpos(const std::string& name, const Rational& v, bool gated = false) {
    const bool ok = v.sign() <= 0;
    out_.push_back({name, ok, gated, ok ? "" : "value " + v.str() + " > 0"});
  }
  void truth(const std::string& name, bool ok, const std::string& why, bool gated = false) {
    out_.push_back({name, ok, gated, ok ? "" : why});
  }

 private:
  std::vector<Check>& out_;
};

std::string at(const std::string& name, int i) { return name + "[" + std::to_string(i) + "]"; }

bool all_pass(const std::vector<Check>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

}  // namespace

bool KdCoeffs::pass() const { return all_pass(checks); }
bool VCoeffs::pass() const { return all_pass(checks); }

std::vector<Check> KldCoeffs::binding_failures() const {
  std::vector<Check> out;
  for (const auto& c : checks) {
    if (!c.pass && (!c.gated || in_ps)) out.push_back(c);
  }
  return out;
}

bool KldCoeffs::any_failure() const { return !all_pass(checks); }

KdCoeffs kd_base_coeffs(int n) {
  if (n < 5) throw InvalidParams("kd_base_coeffs needs n >= 5");
  const int d = n - 1;
  const int L = ell_hat_kd(d);
  KdCoeffs out;
  out.n = n;
  out.ell_hat = L;
  out.mu = IndexedSeq("mu", 0, L - 1);
  out.b = IndexedSeq("b", 0, L - 1);
  out.c = IndexedSeq("c", 0, L - 1);
  out.lambda = IndexedSeq("lambda", 2, L - 1);
  auto& mu = out.mu;
  auto& b = out.b;
  auto& c = out.c;
  Checks ck(out.checks);

  for (int t = 1; t <= L - 1; ++t) {
    if (t <= L - 3) {
      mu[t] = frac(1, 2) * binom(n - L, 2) * R(n - 2 * L - 1 + t) / binom(n - t, 4);
    } else if (t == L - 2) {
      mu[t] = frac(6 * (n - L - 3), static_cast<long long>(n - L + 1) * (n - L + 2));
    } else {
      mu[t] = frac(6, n - L + 1);
    }
  }
  mu[0] = R(1) - mu.sum(1, L - 1);
  for (int t = 0; t <= L - 1; ++t) {
    b[t] = frac(n - t, 3) * mu[t];
    c[t] = frac(n - t, 6) * mu[t] - mu.sum(0, t);
  }
  for (int t = 2; t <= L - 1; ++t) {
    out.lambda[t] = c[t - 1] * R(d + 1 - t) - c[t] * R(d - t) - b[t];
  }
  out.T1 = b.sum(0, L - 1);

  ck.eq("mu_sum_one", mu.sum(0, L - 1), R(1));
  for (int t = 0; t <= L - 1; ++t) ck.nonneg(at("mu_nonneg", t), mu[t]);

  if (L == 1) {
    // Dedicated branch: f <= (n/3) alpha + ((n-6)/6) H(S^1) with H(S^1) >= alpha.
    ck.eq("branch1_b0", b[0], frac(n, 3));
    ck.eq("branch1_c0", c[0], frac(n - 6, 6));
    ck.nonpos("branch1_c0_sign", c[0]);
    ck.eq("branch1_alpha_coeff", b[0] + c[0], frac(gamma(d, d, 1), d));
    return out;
  }

  const long long nl = n - L, nl1 = n - L - 1;
  const Rational den3 = R(static_cast<long long>(n - 1) * (n - 2) * (n - 3));
  const Rational mu0_closed = R(nl * nl1 * (n + 1 - 4 * L)) / den3;
  ck.eq("mu0_closed", mu[0], mu0_closed);

  if (L == 2) {
    ck.eq("mu_ell2[0]", mu[0], frac(n - 7, n - 1));
    ck.eq("mu_ell2[1]", mu[1], frac(6, n - 1));
  } else if (L == 3) {
    const long long q = static_cast<long long>(n - 2) * (n - 1);
    ck.eq("mu_ell3[0]", mu[0], frac(static_cast<long long>(n - 11) * (n - 4), q));
    ck.eq("mu_ell3[1]", mu[1], frac(6LL * (n - 6), q));
    ck.eq("mu_ell3[2]", mu[2], frac(6, n - 2));
  } else {
    for (int j = 1; j <= L - 3; ++j) {
      const Rational closed =
          R(nl * nl1 * (n - 4 * L + 1 + 3 * j)) / R(static_cast<long long>(n - j - 1) * (n - j - 2) * (n - j - 3)) +
          R(nl * nl1 * (4 * L - n - 1)) / den3;
      ck.eq(at("mu_partial_sum", j), mu.sum(1, j), closed);
    }
  }

  for (int t = 0; t <= L - 1; ++t) {
    Rational closed;
    if (t == 0) {
      closed = frac(n - 6, 6) * mu[0];
    } else if (t <= L - 3) {
      closed = R(2 * nl * nl1 * (L - 1 - t)) / R(static_cast<long long>(n - t - 1) * (n - t - 2) * (n - t - 3));
    } else if (t == L - 2) {
      closed = frac(2, n - L + 1);
    } else {
      closed = R(0);
    }
    ck.eq(at("c_closed", t), c[t], closed);
    ck.nonneg(at("c_nonneg", t), c[t]);
  }
  ck.eq("c_last_zero", c[L - 1], R(0));
  if (L == 3) ck.eq("c1_ell3", c[1], frac(2, n - 2));

  for (int t = 2; t <= L - 1; ++t) ck.eq(at("lambda_zero", t), out.lambda[t], R(0));

  out.T2 = b[1] - c[0] * R(d) + c[1] * R(d - 1);
  ck.eq("T2_closed", out.T2, R((4 * L + 2 - n) * nl * nl1) / R(6LL * (n - 2)));
  ck.nonneg("T2_nonneg", out.T2);
  const Rational t1_closed = R(nl * nl1) / R(static_cast<long long>(n - 3) * (n - 2)) *
                             (R(static_cast<long long>(n) * (n + 1 - 4 * L)) / R(3LL * (n - 1)) + R(2 * (L - 1)));
  ck.eq("T1_closed", out.T1, t1_closed);
  const Rational target = frac(gamma(d, d, L), d);
  ck.eq("T1_minus_T2_over_d", out.T1 - out.T2 / R(d), target);
  ck.eq("gamma_over_d_closed", target, R(nl * nl1) / R(2LL * (n - 1)));
  return out;
}

VCoeffs kd_inductive_v(int k, int d, int ell) {
  if (k != d || d < 2) throw InvalidParams("kd_inductive_v needs k = d >= 2");
  if (ell <= ell_hat_kd(d) || ell > k - 1) {
    throw InvalidParams("kd_inductive_v needs ell_hat(d) < ell <= k-1, got ell=" + std::to_string(ell));
  }
  const int n = d + 1;
  VCoeffs out;
  out.k = k;
  out.d = d;
  out.ell = ell;
  Checks ck(out.checks);

  if (ell == k - 1) {
    out.v2 = R(1);
    ck.eq("last_branch_coeff", frac(gamma(d, d, d - 1), d), frac(1, k));
    return out;
  }

  const long long D = 4LL * (n - 1) + static_cast<long long>(n - ell + 1) * (k - ell - 2);
  out.v1 = frac(static_cast<long long>(k - ell - 2) * (n - ell - 1), D);
  out.v2 = frac(2LL * (k + ell - 2), D);
  out.v3 = frac(4LL * (n - ell - 1), D);
  const auto& [v1, v2, v3] = std::tie(out.v1, out.v2, out.v3);

  ck.nonneg("v1_nonneg", v1);
  ck.nonneg("v2_nonneg", v2);
  ck.nonneg("v3_nonneg", v3);
  ck.eq("v_sum_one", v1 + v2 + v3, R(1));
  ck.eq("v1_ratio", v1, frac(k - ell - 2, 4) * v3);

  const Rational g_prev = frac(gamma(k, d, ell - 1), d);
  const Rational g_here = frac(gamma(k, d, ell), d);
  const Rational alpha_coeff = v1 * g_prev + v3 * frac(k - ell + 1, 2);
  ck.eq("alpha_coeff_intermediate",
        R(static_cast<long long>(n - ell + 1) * (n - ell) * (k - ell - 2) + 4LL * d * (k - ell + 1)) / R(8LL * d) * v3,
        alpha_coeff);
  ck.eq("alpha_coeff", alpha_coeff, g_here);
  ck.eq("alpha_coeff_closed", g_here, frac(static_cast<long long>(n - ell) * (n - ell - 1), 2LL * (n - 1)));

  // Coefficient of H(S_n^[ell]) after bounding every H(S_n^[i]) by (i/ell) H(S_n^[ell]).
  Rational tail;
  for (int i = ell + 1; i <= k - 1; ++i) tail += frac(i, ell);
  const Rational han = frac(k, ell) * v2 + (v2 - v3 / R(2)) * tail - (v2 * R(n - ell - 1) + v3 / R(2)) -
                       v3 / R(2) * frac(ell - 1, ell);
  ck.eq("han_coeff_zero", han, R(0));
  long long isum = 0;
  for (int i = ell + 1; i <= k - 1; ++i) isum += i;
  const Rational expanded =
      (R(2 * k) * v2 + (R(2) * v2 - v3) * R(isum) - (R(2) * v2 * R(n - ell - 1) + v3) * R(ell) - v3 * R(ell - 1)) /
      R(2 * ell);
  ck.eq("han_coeff_expanded", expanded, han);
  ck.nonneg("v2_minus_half_v3", v2 - v3 / R(2));
  return out;
}

KldCoeffs kld_coeffs(int k, int d, int ell) {
  if (!(k >= 2 && k < d && ell >= 1 && ell <= k - 1)) {
    throw InvalidParams("kld_coeffs needs 1 <= ell < k < d");
  }
  KldCoeffs out;
  out.k = k;
  out.d = d;
  out.ell = ell;
  out.in_ps = in_Ps(k, d, ell);
  out.z = IndexedSeq("z", ell + 1, k);
  out.c = IndexedSeq("c", ell + 1, k);
  out.mu_bar = IndexedSeq("mu_bar", ell, k);
  out.nu_bar = IndexedSeq("nu_bar", ell, k - 1);
  out.delta_bar = IndexedSeq("delta_bar", ell + 1, k);
  auto& z = out.z;
  auto& c = out.c;
  auto& mu = out.mu_bar;
  auto& nu = out.nu_bar;
  auto& delta = out.delta_bar;
  Checks ck(out.checks);
  const bool g = true;  // marks checks that only bind inside the sufficient set

  const long long G = gamma(k, d, ell);
  const long long A = 2LL * d - k - ell + 1;
  const Rational Gd = frac(G, d);
  const Rational Ad = frac(A, d);
  const Rational half = frac(A, 2LL * d);

  z[ell + 1] = std::min({Gd, Ad, R(1)});
  if (ell <= k - 2) {
    for (int j = ell + 2; j <= k - 1; ++j) z[j] = half;
    z[k] = std::max(R(0), frac(d - k - ell + 1, d));
  }

  for (int j = ell + 1; j <= k; ++j) {
    Rational s;
    for (int i = j + 1; i <= k; ++i) s += (z[ell + i - j] - z[ell + i - j + 1]) * R(d + 1 - i);
    c[j] = s;
  }

  if (ell == k - 1) {
    mu[ell] = R(0);
    mu[k] = R(1) - z[ell + 1];
    nu[ell] = z[ell + 1];
  } else {
    Rational s;
    for (int j = ell + 2; j <= k; ++j) s += z[j] * R(d + 1 - j);
    mu[ell] = s / R(d + 1 - ell);
    for (int j = ell + 1; j <= k - 1; ++j) mu[j] = R(1) - z[ell + 1] - z[j + 1] + c[j] / R(d + 1 - j);
    mu[k] = R(1) - z[ell + 1];
    nu[ell] = z[ell + 1] + z[ell + 2];
    for (int j = ell + 1; j <= k - 2; ++j) nu[j] = z[j + 2];
    nu[k - 1] = R(0);
  }
  for (int j = ell + 1; j <= k; ++j) delta[j] = R(d + 1 - j) * mu[j] - nu.sum(j, k - 1);

  // Shape of the zero/one pattern.
  for (int j = ell + 1; j <= k; ++j) {
    ck.truth(at("z_range", j), z[j].sign() >= 0 && z[j] <= R(1), "z = " + z[j].str());
    if (j > ell + 1) ck.truth(at("z_monotone", j), z[j] <= z[j - 1], z[j].str() + " > " + z[j - 1].str());
  }
  ck.eq("c_last_zero", c[k], R(0));
  ck.eq("delta_last", delta[k], R(d + 1 - k) * mu[k]);

  if (ell == k - 1) {
    ck.eq("z_single", z[k], Gd);
    ck.eq("nu_single", nu[ell], Gd);
    ck.eq("mu_bar_single_next", mu[k], R(1) - Gd);
  } else {
    ck.eq("z_plus", z[ell + 1] + z[k], Ad);
    for (int j = ell + 1; j <= k - 1; ++j) {
      const Rational closed = R(d + 1 - j) * (R(1) - z[j + 1]) - R(d + 1 - k) * z[ell + k - j + 1] -
                              z.sum(j + 2, k) - z.sum(ell + 1, ell + k - j);
      ck.eq(at("delta_general", j), delta[j], closed);
    }
  }

  const bool low = ell < d - k + 1;  // z_k is positive exactly here
  if (ell == k - 2) {
    const Rational generic = low ? R(d - ell) - frac(2LL * (d - k + 1) * (d - k - ell + 1), d) - Ad : R(d - ell) - Ad;
    ck.eq("delta_kminus2_case", delta[ell + 1], generic);
    const long long num = low ? 1LL * d * (d - k + 2) - 2LL * (d - k + 1) * (d - 2 * k + 3) - (2LL * d - 2 * k + 3)
                              : 1LL * d * (d - k + 2) - (2LL * d - 2 * k + 3);
    ck.eq("delta_kminus2_substituted", delta[ell + 1], frac(num, d));
  } else if (ell == k - 3) {
    const Rational zk_term = low ? frac(static_cast<long long>(d + 1 - k) * (d - k - ell + 1), d) : R(0);
    ck.eq("delta_kminus3_first", delta[ell + 1],
          R(d - ell) - frac(static_cast<long long>(d - ell + 1) * A, 2LL * d) - zk_term - Ad);
    const Rational zk_term2 = low ? frac(static_cast<long long>(d - ell - 2) * (d - k - ell + 1), d) : R(0);
    ck.eq("delta_kminus3_second", delta[ell + 2],
          R(d - ell - 1) - zk_term2 - frac(static_cast<long long>(d + 1 - k) * A, 2LL * d) - Ad);
    if (low) {
      ck.eq("delta_kminus3_first_factored", delta[ell + 1],
            frac(static_cast<long long>(3 * k - d - 8) * (d - k + 2), d));
      ck.eq("delta_kminus3_second_factored", delta[ell + 2],
            frac(static_cast<long long>(d - k + 2) * (3 * k - d - 8) + (2LL * d - 3 * k + 6), d));
    }
  } else if (ell <= k - 4 && !low) {
    ck.eq("delta_first_closed", delta[ell + 1],
          R(d - ell) - frac(static_cast<long long>(d + 2 * k - 3 * ell - 3) * A, 2LL * d));
    ck.eq("delta_first_via_g", delta[ell + 1],
          g_eval(k, d, ell) / R(d) + frac(static_cast<long long>(d - k - 2) * A, 2LL * d) + R(1));
    ck.eq("delta_last_closed", delta[k - 1], R(d - k + 2) - frac(static_cast<long long>(d + 1 - k) * A, 2LL * d) - Ad);
    for (int j = ell + 2; j <= k - 2; ++j) {
      ck.eq(at("delta_middle_closed", j), delta[j],
            R(d + 1 - j) - frac(static_cast<long long>(2 * d + k - 3 * j + 1) * A, 2LL * d));
    }
    ck.eq("delta_second_is_g", delta[ell + 2], g_eval(k, d, ell) / R(d));
  }

  // Sufficient conditions and the checks resting on them.
  ck.eq("condition1", nu.sum(ell, k - 1), Gd, g);
  for (int j = ell; j <= k; ++j) ck.nonneg(at("condition2", j), mu[j], g);
  for (int j = ell + 1; j <= k; ++j) ck.nonneg(at("condition3", j), delta[j], g);
  const Rational prop7 = Gd - frac(d + 1 - ell, ell) * mu[ell] - delta.sum(ell + 1, k) / R(ell);
  ck.eq("prop7_identity", prop7, R(0), g);
  if (ell <= k - 2) {
    for (int j = ell + 1; j <= k - 1; ++j) ck.nonneg(at("prop8", j), delta[j], g);
  }
  return out;
}

namespace {

std::string kd_row(const KdCoeffs& c) {
  std::ostringstream os;
  os << "mu=" << c.mu.str() << ";b=" << c.b.str() << ";c=" << c.c.str() << ";lambda=" << c.lambda.str()
     << ";T1=" << c.T1.str() << ";T2=" << c.T2.str();
  return os.str();
}

std::string v_row(const VCoeffs& v) {
  return "v1=" + v.v1.str() + ";v2=" + v.v2.str() + ";v3=" + v.v3.str();
}

std::string kld_row(const KldCoeffs& c) {
  return "z=" + c.z.str() + ";c=" + c.c.str() + ";mu_bar=" + c.mu_bar.str() + ";nu_bar=" + c.nu_bar.str() +
         ";delta_bar=" + c.delta_bar.str();
}

std::size_t failed(const std::vector<Check>& checks) {
  return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const Check& c) { return !c.pass; }));
}

}  // namespace

CoeffSweepReport verify_sweep(SweepMode mode, int bound) {
  if (bound < 5) throw InvalidParams("verify_sweep needs bound >= 5");
  CoeffSweepReport rep;
  rep.mode = mode;
  rep.bound = bound;
  std::ostringstream csv;
  csv << "kind,k,d,ell,in_ps,coefficients,checks,failed\n";

  auto emit = [&](const char* kind, int k, int d, int ell, bool in_ps, const std::string& coeffs,
                  const std::vector<Check>& checks) {
    ++rep.tuples;
    rep.checks += checks.size();
    csv << kind << ',' << k << ',' << d << ',' << ell << ',' << (in_ps ? 1 : 0) << ',' << coeffs << ','
        << checks.size() << ',' << failed(checks) << '\n';
  };

  if (mode == SweepMode::Kd) {
    for (int n = 5; n <= bound; ++n) {
      const KdCoeffs c = kd_base_coeffs(n);
      emit("kd_base", n - 1, n - 1, c.ell_hat, true, kd_row(c), c.checks);
      for (const auto& f : c.checks) {
        if (!f.pass) rep.counterexamples.push_back({"kd_base", n - 1, n - 1, c.ell_hat, f.name, f.detail});
      }
    }
    for (int d = 2; d <= bound - 1; ++d) {
      for (int ell = ell_hat_kd(d) + 1; ell <= d - 1; ++ell) {
        const VCoeffs v = kd_inductive_v(d, d, ell);
        emit("kd_inductive", d, d, ell, true, v_row(v), v.checks);
        for (const auto& f : v.checks) {
          if (!f.pass) rep.counterexamples.push_back({"kd_inductive", d, d, ell, f.name, f.detail});
        }
      }
    }
  } else {
    for (int d = 3; d <= bound; ++d) {
      for (int k = 2; k < d; ++k) {
        for (int ell = 1; ell <= k - 1; ++ell) {
          const KldCoeffs c = kld_coeffs(k, d, ell);
          emit("kld", k, d, ell, c.in_ps, kld_row(c), c.checks);
          for (const auto& f : c.binding_failures()) rep.counterexamples.push_back({"kld", k, d, ell, f.name, f.detail});
        }
      }
    }
  }
  rep.csv = csv.str();
  return rep;
}

}  // namespace srct
