// Acceptance run: one PASS/FAIL line per criterion. Exit status is nonzero if
// any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "srct/coeff.hpp"
#include "srct/entropy.hpp"
#include "srct/layered.hpp"
#include "srct/region.hpp"

using namespace srct;

namespace {

// Runtime budgets in seconds.
constexpr double kBudgetThresholds = 1.0;
constexpr double kBudgetBoundary = 10.0;
constexpr double kBudgetConstruction = 120.0;
constexpr double kBudgetCoefficients = 60.0;

constexpr int kSymmetrySamples = 100;
constexpr std::size_t kRegionTuples = 500;
constexpr int kRegionDMax = 60;

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::vector<std::vector<int>> subsets(int n, int size) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(cur.size()) == size) {
      out.push_back(cur);
      return;
    }
    for (int v = start; v <= n; ++v) {
      cur.push_back(v);
      rec(v + 1);
      cur.pop_back();
    }
  };
  rec(1);
  return out;
}

long long choose(long long n, long long r) {
  if (r < 0 || r > n) return 0;
  long long c = 1;
  for (long long i = 1; i <= r; ++i) c = c * (n - r + i) / i;
  return c;
}

// Secure codes keyed by (n, ell), built once with the default options.
std::map<std::pair<int, int>, LinearStorageCode> g_codes;

const LinearStorageCode& secure_code(int n, int ell) {
  auto it = g_codes.find({n, ell});
  if (it == g_codes.end()) {
    it = g_codes.emplace(std::make_pair(n, ell), secure_precode(build_layered_code(n, 1009), ell)).first;
  }
  return it->second;
}

Outcome thresholds() {
  const int hat = ell_hat(31, 32), star = ell_star(31, 32);
  return {hat == 12 && star == 22, "ell_hat=" + std::to_string(hat) + " ell_star=" + std::to_string(star)};
}

Outcome boundary() {
  Outcome o;
  int pairs = 0;
  for (int n = 5; n <= 12; ++n) {
    for (int ell = 1; ell <= n - 3; ++ell) {
      const auto& code = secure_code(n, ell);
      const RatePoint pt = achieved_point(code);
      const RatePoint corner = corner_point(n - 1, n - 1, ell);
      const Rational gap = pt.alpha_bar - corner.alpha_bar;
      const Rational closed =
          frac((4LL * ell + 2 - n) * (n - 1), 2LL * (n - ell) * (n - ell - 1) * (n - ell - 2));
      const bool below = pt.alpha_bar < corner.alpha_bar;
      const bool predicted = ell < ceil_div_int(n - 2, 4);
      ++pairs;
      if (gap != closed || below != predicted) {
        o.pass = false;
        o.detail += " mismatch n=" + std::to_string(n) + ",ell=" + std::to_string(ell);
      }
    }
  }
  const Rational spot = achieved_point(secure_code(7, 1)).alpha_bar - corner_point(6, 6, 1).alpha_bar;
  if (spot != frac(-1, 40)) o.pass = false;
  o.detail = std::to_string(pairs) + " (n, ell) pairs, n=7 ell=1 gap " + spot.str() + o.detail;
  return o;
}

Outcome construction() {
  Outcome o;
  int codes = 0;
  for (int n = 5; n <= 7; ++n) {
    for (int ell = 1; ell <= n - 3; ++ell) {
      const auto& code = secure_code(n, ell);
      const auto rep = check_sdss(code);
      const bool counts = rep.reconstruction.checks == static_cast<std::size_t>(n) &&
                          rep.regeneration.checks == static_cast<std::size_t>(n) &&
                          rep.security.checks == static_cast<std::size_t>(choose(n, ell));
      const bool dim = code.B_s == static_cast<std::size_t>(2 * choose(n - ell, 3));
      ++codes;
      if (!rep.pass() || !counts || !dim) {
        o.pass = false;
        o.detail += " failed n=" + std::to_string(n) + ",ell=" + std::to_string(ell);
      }
    }
  }
  o.detail = std::to_string(codes) + " codes" + o.detail;
  return o;
}

// Both secrecy tests over every wiretap set of every code built above.
Outcome secrecy_equivalence() {
  Outcome o;
  std::size_t sets = 0, agree = 0;
  for (int n = 5; n <= 12; ++n) {
    for (int ell = 1; ell <= n - 3; ++ell) {
      const auto& code = secure_code(n, ell);
      const EntropyOracle oracle(code);
      for (const auto& L : subsets(n, ell)) {
        ++sets;
        const bool rank_secure = wiretap_leakage(oracle, L) == 0;
        if (rank_secure == touched_block_test(code, L)) ++agree;
      }
    }
  }
  o.pass = sets > 0 && agree == sets;
  o.detail = std::to_string(agree) + "/" + std::to_string(sets) + " wiretap sets agree (n=5..12)";
  return o;
}

Outcome coefficients() {
  const auto kd = verify_sweep(SweepMode::Kd, 60);
  const auto kld = verify_sweep(SweepMode::Kld, 40);
  return {kd.pass() && kld.pass(), "kd: " + std::to_string(kd.tuples) + " tuples, " +
                                       std::to_string(kd.counterexamples.size()) + " counterexamples; kld: " +
                                       std::to_string(kld.tuples) + " tuples, " +
                                       std::to_string(kld.counterexamples.size()) + " counterexamples"};
}

Outcome catalog() {
  Outcome o;
  std::size_t entries = 0;
  for (int n = 6; n <= 7; ++n) {
    for (int ell = 1; ell <= n - 3; ++ell) {
      for (const auto& e : check_inequality_catalog(secure_code(n, ell))) {
        ++entries;
        if (!e.pass || e.slack < Rational(0)) {
          o.pass = false;
          o.detail += " " + e.name + "[" + e.indices + "]@n=" + std::to_string(n) + ",ell=" + std::to_string(ell);
        }
      }
    }
  }
  o.pass = o.pass && entries > 0;
  o.detail = std::to_string(entries) + " inequalities" + o.detail;
  return o;
}

Outcome symmetry() {
  Outcome o;
  std::size_t evals = 0, violations = 0;
  for (int n = 5; n <= 7; ++n) {
    for (int ell = 1; ell <= n - 3; ++ell) {
      SymmetryOptions opts;
      opts.subset_size_limit = 2;
      opts.random_samples = kSymmetrySamples;
      opts.sample_min_size = 3;
      opts.sample_max_size = 4;
      opts.seed = static_cast<std::uint64_t>(100 * n + ell);
      const auto rep = check_symmetry(secure_code(n, ell), opts);
      evals += rep.evaluations;
      violations += rep.violations.size();
    }
  }
  o.pass = violations == 0;
  o.detail = std::to_string(evals) + " comparisons, " + std::to_string(violations) + " violations";
  return o;
}

Outcome region_structure() {
  const auto rep = sweep_consistency(kRegionDMax, kRegionTuples);
  Outcome o;
  o.pass = rep.tuples == kRegionTuples && rep.counterexamples.empty();
  o.detail = std::to_string(rep.tuples) + " tuples, " + std::to_string(rep.counterexamples.size()) +
             " counterexamples";
  for (const auto& c : rep.counterexamples) {
    o.detail += " " + c.rule + "@(" + std::to_string(c.d) + "," + std::to_string(c.k) + "," +
                std::to_string(c.ell) + ")";
  }
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
    double budget;  // seconds, 0 when the criterion has no runtime bound
  };
  const std::vector<Criterion> criteria{
      {1, "threshold reproduction", thresholds, kBudgetThresholds},
      {2, "k = d boundary of the layered code", boundary, kBudgetBoundary},
      {3, "construction validity", construction, kBudgetConstruction},
      {4, "secrecy test equivalence", secrecy_equivalence, 0},
      {5, "coefficient certification", coefficients, kBudgetCoefficients},
      {6, "inequality catalog", catalog, 0},
      {7, "entropy symmetry", symmetry, 0},
      {8, "region structure", region_structure, 0},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = c.budget == 0 || secs < c.budget;
    const bool pass = out.pass && in_time;
    if (!pass) ++failed;
    std::printf("%s criterion %d (%s): %s; %.2fs", pass ? "PASS" : "FAIL", c.id, c.name, out.detail.c_str(), secs);
    if (c.budget > 0) std::printf(" (budget %.0fs)", c.budget);
    std::printf("\n");
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
