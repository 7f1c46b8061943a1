#include <doctest.h>

#include <algorithm>
#include <optional>

#include "srct/entropy.hpp"
#include "srct/error.hpp"
#include "srct/layered.hpp"

using namespace srct;

namespace {

long long choose(long long n, long long r) {
  if (r < 0 || r > n) return 0;
  long long c = 1;
  for (long long i = 1; i <= r; ++i) c = c * (n - r + i) / i;
  return c;
}

std::vector<std::vector<int>> all_subsets(int n, int size) {
  std::vector<std::vector<int>> out;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (__builtin_popcount(mask) != size) continue;
    std::vector<int> s;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) s.push_back(i + 1);
    out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

VarSet view_of(int n, const std::vector<int>& L) {
  VarSet v;
  for (int j : L)
    for (int i = 1; i <= n; ++i)
      if (i != j) v.push_back(VarRef::repair(i, j));
  return v;
}

}  // namespace

TEST_CASE("block design") {
  const auto d4 = build_design(4);
  CHECK(d4.blocks == std::vector<std::array<int, 3>>{{1, 2, 3}, {1, 2, 4}, {1, 3, 4}, {2, 3, 4}});
  const auto d5 = build_design(5);
  CHECK(d5.blocks.size() == 10);
  int pair12 = 0;
  for (const auto& b : d5.blocks) pair12 += (b[0] == 1 && b[1] == 2) ? 1 : 0;
  CHECK(pair12 == 3);
  CHECK(build_design(7).blocks.size() == 35);
}

TEST_CASE("layered code dimensions") {
  const auto c7 = build_layered_code(7, 1009);
  CHECK(c7.alpha() == 15);
  CHECK(c7.beta() == 5);
  CHECK(c7.T == 70);
  const auto c5 = build_layered_code(5, 1009);
  CHECK(c5.alpha() == 6);
  CHECK(c5.beta() == 3);
  CHECK(c5.T == 20);
  for (int n = 4; n <= 10; ++n) {
    const auto c = build_layered_code(n, 101);
    CHECK(c.alpha() == static_cast<std::size_t>(choose(n - 1, 2)));
    CHECK(c.beta() == static_cast<std::size_t>(n - 2));
    CHECK(c.T == static_cast<std::size_t>(2 * choose(n, 3)));
    for (int ell = 0; ell <= n; ++ell) CHECK(secure_message_dim(n, ell) == static_cast<std::size_t>(2 * choose(n - ell, 3)));
  }
  CHECK_THROWS_AS(build_layered_code(3, 7), InvalidParams);
  CHECK_THROWS_AS(build_layered_code(5, 9), NotPrime);
}

TEST_CASE("prime ladder") {
  CHECK(prime_ladder(1009, 8009) == std::vector<std::uint64_t>{1009, 2003, 4001, 8009});
  CHECK(prime_ladder(1009, 1009) == std::vector<std::uint64_t>{1009});
  CHECK(prime_ladder(3001, 8009) == std::vector<std::uint64_t>{3001, 4001, 8009});
  const auto ext = prime_ladder(1009, 20000);
  CHECK(ext.back() == next_prime(2 * 8009));
  CHECK_THROWS_AS(prime_ladder(1000, 8009), NotPrime);
}

TEST_CASE("secure precoding") {
  const auto base = build_layered_code(7, 1009);
  PrecodeOptions opts;
  opts.seed = 42;
  const auto code = secure_precode(base, 2, opts);
  CHECK(code.B_s == 20);
  CHECK(code.ell == 2);
  CHECK(achieved_point(code) == RatePoint{frac(3, 4), frac(1, 4)});
  const EntropyOracle o(code);
  CHECK(o.msg_entropy() == 20);
  for (const auto& L : all_subsets(7, 2)) {
    CHECK(wiretap_leakage(o, L) == 0);
    CHECK(touched_block_test(code, L));
  }
  CHECK_FALSE(o.first_leaking_wiretap(2).has_value());

  const auto again = secure_precode(base, 2, opts);
  CHECK(again.node_maps == code.node_maps);

  const auto c5 = secure_precode(build_layered_code(5, 1009), 1);
  CHECK(c5.B_s == 8);
  CHECK(achieved_point(c5) == RatePoint{frac(6, 8), frac(3, 8)});
  CHECK_THROWS_AS(secure_precode(build_layered_code(5, 1009), 3), InvalidEll);
  CHECK_THROWS_AS(secure_precode(build_layered_code(5, 1009), 0), InvalidEll);

  PrecodeOptions none;
  none.max_retries = 0;
  CHECK_THROWS_AS(secure_precode(base, 1, none), SecrecyUnachievable);
}

TEST_CASE("achieved point against the corner") {
  for (int n = 5; n <= 9; ++n) {
    for (int ell = 1; ell <= n - 3; ++ell) {
      const Rational alpha_bar = frac(choose(n - 1, 2), 2 * choose(n - ell, 3));
      long long g = 0;
      for (int i = ell; i <= n - 2; ++i) g += n - 1 - i;
      const Rational alpha_hat = frac(n - 1, g);
      const Rational closed = frac((4LL * ell + 2 - n) * (n - 1), 2LL * (n - ell) * (n - ell - 1) * (n - ell - 2));
      CHECK(alpha_bar - alpha_hat == closed);
      CHECK((alpha_bar < alpha_hat) == (ell < ceil_div_int(n - 2, 4)));
    }
  }
  CHECK(frac(15, 40) - corner_point(6, 6, 1).alpha_bar == frac(-1, 40));
}

TEST_CASE("property: fast leakage paths agree with the entropy definition") {
  // A weak field and an identity precoder both produce leaking wiretap sets.
  for (std::uint64_t p : {2ULL, 3ULL, 1009ULL}) {
    for (int n = 5; n <= 7; ++n) {
      const auto base = build_layered_code(n, p);
      for (int ell = 1; ell <= n - 3; ++ell) {
        for (std::uint64_t seed : {1ULL, 2ULL}) {
          const FieldMatrix P = seed == 1 ? FieldMatrix::identity(base.T, p) : seeded_random_matrix(base.T, base.T, p, seed);
          if (mat_rank(P) < base.T) continue;
          const auto code = apply_precoder(base, ell, P);
          const EntropyOracle o(code);
          std::optional<std::vector<int>> first;
          for (const auto& L : all_subsets(n, ell)) {
            const std::size_t leak = wiretap_leakage(o, L);
            CHECK(o.msg_leakage(view_of(n, L)) == leak);
            CHECK(touched_block_test(code, L) == (leak == 0));
            if (leak != 0 && !first) first = L;
          }
          CHECK(o.first_leaking_wiretap(ell) == first);
        }
      }
    }
  }
}

TEST_CASE("encoding, repair and reconstruction") {
  const auto c5 = build_layered_code(5, 1009);
  const auto zero = encode_source(c5, std::vector<std::uint32_t>(c5.T, 0));
  for (const auto& w : zero.stored)
    for (auto s : w) CHECK(s == 0);
  const auto r0 = repair_node(c5, zero, 2);
  CHECK(r0.matches);
  for (auto s : r0.symbols) CHECK(s == 0);

  const auto s1 = encode_state(c5, 7);
  CHECK(encode_state(c5, 7).stored == s1.stored);

  const auto rep = repair_node(c5, s1, 3);
  CHECK(rep.matches);
  CHECK(rep.downloaded == 12);

  const auto secure = secure_precode(build_layered_code(6, 1009), 1);
  const auto st = encode_state(secure, 11);
  for (int j = 1; j <= 6; ++j) {
    const auto out = repair_node(secure, st, j);
    CHECK(out.matches);
    CHECK(out.downloaded == 5 * secure.beta());
  }
  const std::vector<std::uint32_t> msg(st.source.begin(), st.source.begin() + static_cast<long>(secure.B_s));
  for (const auto& K : all_subsets(6, 5)) CHECK(reconstruct_message(secure, st, K) == msg);
  CHECK_THROWS_AS(reconstruct_message(secure, st, {1, 2, 3, 4}), InsufficientNodes);
  CHECK_THROWS_AS(repair_node(secure, st, 7), BadIndex);

  const auto m5 = reconstruct_message(c5, s1, {1, 2, 3, 4});
  CHECK(m5 == s1.source);
}
