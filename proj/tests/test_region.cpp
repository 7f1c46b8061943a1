#include <doctest.h>

#include <cmath>

#include "srct/error.hpp"
#include "srct/region.hpp"

using namespace srct;

namespace {

long long gamma_sum(int k, int d, int ell) {
  long long s = 0;
  for (int i = ell; i <= k - 1; ++i) s += d - i;
  return s;
}

// Smallest ell from which every larger ell < k is in P_s.
int ell_hat_by_closure(int k, int d) {
  int hat = k - 1;
  for (int ell = k - 2; ell >= 1 && in_Ps(k, d, ell); --ell) hat = ell;
  return hat;
}

bool star_condition(int k, int d, int ell) {
  const long long e = gamma_sum(k, d, ell) - d;
  if (e <= 0) return true;
  // e <= sqrt(d*ell), decided with integers only.
  const long long r = static_cast<long long>(std::sqrt(static_cast<double>(d) * ell));
  long long s = r + 2;
  while (s * s > static_cast<long long>(d) * ell) --s;
  return e <= s;
}

}  // namespace

TEST_CASE("gamma matches the summation") {
  CHECK(gamma(6, 6, 1) == 15);
  CHECK(gamma(31, 32, 22) == 54);
  CHECK(gamma(31, 32, 12) == 209);
  for (int d = 2; d <= 40; ++d)
    for (int k = 1; k <= d; ++k)
      for (int ell = 0; ell < k; ++ell) CHECK(gamma(k, d, ell) == gamma_sum(k, d, ell));
  for (int k = 2; k <= 12; ++k) CHECK(gamma(k, k + 3, k - 1) == 4);
  CHECK_THROWS_AS(gamma(3, 2, 1), InvalidParams);
}

TEST_CASE("corner point") {
  CHECK(corner_point(6, 6, 2) == RatePoint{frac(3, 5), frac(1, 10)});
  CHECK(corner_point(31, 32, 22) == RatePoint{frac(16, 27), frac(1, 54)});
  for (int d = 2; d <= 15; ++d)
    for (int k = 2; k <= d; ++k)
      CHECK(corner_point(k, d, k - 1) == RatePoint{frac(d, d - k + 1), frac(1, d - k + 1)});
  CHECK_THROWS_AS(corner_point(5, 6, 0), InvalidParams);
}

TEST_CASE("thresholds") {
  CHECK(ell_hat_kd(6) == 2);
  CHECK(ell_hat_kd(5) == 1);
  CHECK(ell_hat_kd(32) == 8);

  CHECK(in_Ps(31, 32, 12));
  CHECK_FALSE(in_Ps(31, 32, 11));
  CHECK(in_Ps(5, 6, 3));
  CHECK(ell_hat(31, 32) == 12);
  CHECK(ell_star(31, 32) == 22);
  CHECK_FALSE(star_condition(31, 32, 21));
  CHECK(54 <= 32 + std::sqrt(32.0 * 22));
  CHECK(ell_star(2, 3) == 1);

  CHECK(g_eval(31, 32, 12) >= Rational(0));
  CHECK(g_eval(31, 32, 11) < Rational(0));

  for (int d = 3; d <= 60; ++d) {
    for (int k = 2; k < d; ++k) {
      CHECK(in_Ps(k, d, k - 1));
      CHECK(ell_hat(k, d) == ell_hat_by_closure(k, d));
      int first = 0;
      for (int ell = 1; ell < k && first == 0; ++ell)
        if (star_condition(k, d, ell)) first = ell;
      CHECK(ell_star(k, d) == first);
      CHECK(ell_hat(k, d) <= ell_star(k, d));
      for (int ell = 1; ell <= k - 4; ++ell) CHECK(in_Ps(k, d, ell) == (g_eval(k, d, ell) >= Rational(0)));
    }
  }
}

TEST_CASE("property: P_s is upward closed and contains every ell >= ell_star") {
  for (int d = 3; d <= 60; ++d) {
    for (int k = 2; k < d; ++k) {
      for (int ell = 1; ell < k; ++ell) {
        if (ell + 1 < k && in_Ps(k, d, ell)) CHECK(in_Ps(k, d, ell + 1));
        if (ell >= ell_star(k, d)) CHECK(in_Ps(k, d, ell));
      }
    }
  }
  CHECK(sweep_consistency(40).counterexamples.empty());
  CHECK(sweep_consistency(3).counterexamples.empty());
  CHECK(sweep_consistency(60, 500).tuples == 500);
}

TEST_CASE("outer bound") {
  const OuterBound lin = outer_bound(31, 32, 12);
  CHECK(lin.kind == OuterBound::Kind::Linear);
  CHECK(lin.slope == 177);
  const OuterBound vert = outer_bound(6, 6, 5);
  CHECK(vert.kind == OuterBound::Kind::Vertical);
  CHECK(vert.alpha_hat == Rational(6));

  for (int d = 2; d <= 20; ++d) {
    for (int k = 2; k <= d; ++k) {
      for (int ell = 1; ell < k; ++ell) {
        const RatePoint c = corner_point(k, d, ell);
        const OuterBound b = outer_bound(k, d, ell);
        CHECK(b.admits(c));
        CHECK(b.tight_at(c));
        CHECK_FALSE(b.admits({c.alpha_bar - frac(1, 1000), c.beta_bar}));
        CHECK_FALSE(b.admits({c.alpha_bar, c.beta_bar - frac(1, 100000)}));
        CHECK(b.admits({c.alpha_bar + frac(1, 7), c.beta_bar + frac(1, 7)}));
      }
    }
  }
}

TEST_CASE("region verdicts") {
  auto v = region_report({7, 6, 6, 2});
  CHECK(v.single_corner == SingleCorner::Yes);
  CHECK(v.corner == RatePoint{frac(3, 5), frac(1, 10)});
  CHECK(region_report({7, 6, 6, 1}).single_corner == SingleCorner::No);
  CHECK(region_report({33, 31, 32, 11}).single_corner == SingleCorner::Unknown);
  v = region_report({33, 31, 32, 12});
  CHECK(v.single_corner == SingleCorner::Yes);
  CHECK(v.ell_hat == 12);
  CHECK(v.ell_star == 22);

  for (int n = 33; n <= 40; ++n) {
    const auto w = region_report({n, 31, 32, 12});
    CHECK(w.single_corner == v.single_corner);
    CHECK(w.corner == v.corner);
  }
  for (int d = 2; d <= 25; ++d) {
    for (int k = 2; k <= d; ++k) {
      for (int ell = 1; ell < k; ++ell) {
        const auto a = region_report({d + 1, k, d, ell});
        const auto b = region_report({d + 5, k, d, ell});
        CHECK(a.single_corner == b.single_corner);
        CHECK(a.in_ps == b.in_ps);
        CHECK(a.corner == b.corner);
        CHECK(a.ell_hat == b.ell_hat);
        if (k == d) CHECK((a.single_corner == SingleCorner::Yes) == (ell >= ell_hat_kd(d)));
        if (k < d) CHECK(a.single_corner != SingleCorner::No);
      }
    }
  }
  CHECK_THROWS_AS(region_report({6, 6, 6, 2}), InvalidParams);
  CHECK_THROWS_AS(region_report({8, 6, 6, 6}), InvalidParams);

  const auto rows = sweep_rows(4);
  CHECK(rows.size() == 1 + 3 + 6);  // d=2: 1, d=3: 1+2, d=4: 1+2+3
  CHECK(sweep_csv(rows).rfind("d,k,ell,gamma,in_ps,ell_hat,ell_star,single_corner\n", 0) == 0);
}
