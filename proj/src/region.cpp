#include "srct/region.hpp"

#include <sstream>

#include "srct/error.hpp"

namespace srct {

namespace {

void check_triple(int k, int d, int ell) {
  if (!(1 <= ell && ell < k && k <= d)) {
    throw InvalidParams("need 1 <= ell < k <= d, got k=" + std::to_string(k) + " d=" + std::to_string(d) +
                        " ell=" + std::to_string(ell));
  }
}

}  // namespace

void SystemParams::validate() const {
  if (!(1 <= ell && ell < k && k <= d && d <= n - 1)) {
    throw InvalidParams("need 1 <= ell < k <= d <= n-1, got n=" + std::to_string(n) + " k=" + std::to_string(k) +
                        " d=" + std::to_string(d) + " ell=" + std::to_string(ell));
  }
}

long long gamma(int k, int d, int ell) {
  if (!(0 <= ell && ell < k && k <= d)) throw InvalidParams("gamma needs ell < k <= d");
  return static_cast<long long>(k - ell) * (2LL * d - k - ell + 1) / 2;
}

RatePoint corner_point(int k, int d, int ell) {
  check_triple(k, d, ell);
  const long long g = gamma(k, d, ell);
  return {frac(d, g), frac(1, g)};
}

int ell_hat_kd(int d) {
  if (d < 2) throw InvalidParams("ell_hat_kd needs d >= 2");
  return static_cast<int>(ceil_div_int(d - 1, 4));
}

bool in_Ps(int k, int d, int ell) {
  check_triple(k, d, ell);
  if (k == d) throw InvalidParams("in_Ps is defined for k < d only");
  if (ell == k - 1) return true;
  if (ell == k - 2) return 4LL * k >= d + 7;
  if (ell == k - 3) return 3LL * k >= d + 8;
  const long long two_g = 2LL * d * (d - ell - 1) -
                          (2LL * d - k - ell + 1) * (2LL * d + k - 3LL * ell - 5);
  return two_g >= 0;
}

int ell_hat(int k, int d) {
  if (!(2 <= k && k < d)) throw InvalidParams("ell_hat needs 2 <= k < d");
  for (int ell = 1; ell < k - 1; ++ell) {
    if (in_Ps(k, d, ell)) return ell;
  }
  return k - 1;
}

int ell_star(int k, int d) {
  if (!(2 <= k && k <= d)) throw InvalidParams("ell_star needs 2 <= k <= d");
  for (int ell = 1; ell < k; ++ell) {
    const long long excess = gamma(k, d, ell) - d;
    if (excess <= 0 || excess * excess <= static_cast<long long>(d) * ell) return ell;
  }
  return k - 1;  // unreachable: Gamma_{k,d,k-1} = d-k+1 <= d
}

Rational g_eval(int k, int d, int ell) {
  if (!(1 <= ell && ell <= k - 4 && k <= d)) throw InvalidParams("g_eval needs 1 <= ell <= k-4");
  const long long first = static_cast<long long>(d) * (d - ell - 1);
  const long long prod = (2LL * d - k - ell + 1) * (2LL * d + k - 3LL * ell - 5);
  return Rational(first) - frac(prod, 2);
}

bool OuterBound::admits(const RatePoint& pt) const {
  if (pt.beta_bar < beta_hat) return false;
  if (kind == Kind::Linear) return pt.alpha_bar + Rational(slope) * pt.beta_bar >= Rational(1);
  return pt.alpha_bar >= alpha_hat;
}

bool OuterBound::tight_at(const RatePoint& pt) const {
  if (pt.beta_bar != beta_hat) return false;
  if (kind == Kind::Linear) return pt.alpha_bar + Rational(slope) * pt.beta_bar == Rational(1);
  return pt.alpha_bar == alpha_hat;
}

std::string OuterBound::describe() const {
  std::ostringstream os;
  if (kind == Kind::Linear) {
    os << "alpha_bar + " << slope << "*beta_bar >= 1";
  } else {
    os << "alpha_bar >= " << alpha_hat.str();
  }
  os << ", beta_bar >= " << beta_hat.str();
  return os.str();
}

OuterBound outer_bound(int k, int d, int ell) {
  check_triple(k, d, ell);
  const long long g = gamma(k, d, ell);
  const RatePoint c = corner_point(k, d, ell);
  OuterBound b{g > d ? OuterBound::Kind::Linear : OuterBound::Kind::Vertical, g > d ? g - d : 0, c.alpha_bar,
               c.beta_bar};
  return b;
}

std::string to_string(SingleCorner v) {
  switch (v) {
    case SingleCorner::Yes: return "yes";
    case SingleCorner::No: return "no";
    case SingleCorner::Unknown: return "unknown";
  }
  return "unknown";
}

RegionVerdict region_report(const SystemParams& params) {
  params.validate();
  const int k = params.k, d = params.d, ell = params.ell;
  RegionVerdict v;
  v.params = params;
  v.gamma = gamma(k, d, ell);
  v.corner = corner_point(k, d, ell);
  v.ell_star = ell_star(k, d);
  v.outer = outer_bound(k, d, ell);
  if (k == d) {
    v.ell_hat = ell_hat_kd(d);
    v.in_ps = ell >= v.ell_hat;
    v.single_corner = v.in_ps ? SingleCorner::Yes : SingleCorner::No;
  } else {
    v.ell_hat = ell_hat(k, d);
    v.in_ps = in_Ps(k, d, ell);
    v.single_corner = v.in_ps ? SingleCorner::Yes : SingleCorner::Unknown;
  }
  return v;
}

std::vector<SweepRow> sweep_rows(int d_max) {
  std::vector<SweepRow> rows;
  for (int d = 2; d <= d_max; ++d) {
    for (int k = 2; k <= d; ++k) {
      for (int ell = 1; ell < k; ++ell) {
        auto v = region_report({d + 1, k, d, ell});
        rows.push_back({d, k, ell, v.gamma, v.in_ps, v.ell_hat, v.ell_star, v.single_corner});
      }
    }
  }
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << "d,k,ell,gamma,in_ps,ell_hat,ell_star,single_corner\n";
  for (const auto& r : rows) {
    os << r.d << ',' << r.k << ',' << r.ell << ',' << r.gamma << ',' << (r.in_ps ? "true" : "false") << ','
       << r.ell_hat << ',' << r.ell_star << ',' << to_string(r.single_corner) << '\n';
  }
  return os.str();
}

SweepReport sweep_consistency(int d_max, std::size_t limit) {
  if (d_max < 3) throw InvalidParams("sweep_consistency needs d_max >= 3");
  SweepReport rep;
  for (int d = 3; d <= d_max; ++d) {
    for (int k = 2; k < d; ++k) {
      const int star = ell_star(k, d);
      for (int ell = 1; ell < k; ++ell) {
        if (limit && rep.tuples >= limit) return rep;
        ++rep.tuples;
        const bool in = in_Ps(k, d, ell);
        if (ell <= k - 2 && in && !in_Ps(k, d, ell + 1)) rep.counterexamples.push_back({d, k, ell, "upward_closure"});
        if (ell >= star && !in) rep.counterexamples.push_back({d, k, ell, "ell_star_implies_Ps"});
        const RatePoint c = corner_point(k, d, ell);
        const OuterBound b = outer_bound(k, d, ell);
        const long long g = gamma(k, d, ell);
        const bool identity = c.alpha_bar + Rational(g - d) * c.beta_bar == Rational(1);
        if (!b.admits(c) || !b.tight_at(c) || !identity) {
          rep.counterexamples.push_back({d, k, ell, "corner_on_outer_bound"});
        }
      }
    }
  }
  return rep;
}

}  // namespace srct
