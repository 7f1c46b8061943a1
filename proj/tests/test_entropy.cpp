#include <doctest.h>

#include <algorithm>
#include <random>

#include "srct/entropy.hpp"
#include "srct/error.hpp"
#include "srct/layered.hpp"

using namespace srct;

namespace {

// H(A) straight from the definition: rank of the stacked functionals, with M
// contributing the first B_s unit rows.
std::size_t rank_entropy(const LinearStorageCode& code, const VarSet& vars) {
  FieldMatrix a(0, code.T, code.p);
  for (const auto& v : vars) {
    switch (v.kind) {
      case VarRef::Kind::Msg:
        for (std::size_t u = 0; u < code.B_s; ++u) {
          std::vector<std::uint32_t> e(code.T, 0);
          e[u] = 1;
          a.append_row(e);
        }
        break;
      case VarRef::Kind::Node: a = a.stacked(code.node(v.i)); break;
      case VarRef::Kind::Repair: a = a.stacked(code.repair(v.i, v.j)); break;
    }
  }
  return mat_rank(a);
}

VarSet universe(int n, bool with_msg) {
  VarSet u = nodes(1, n);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      if (i != j) u.push_back(VarRef::repair(i, j));
  if (with_msg) u.push_back(VarRef::msg());
  return u;
}

const LinearStorageCode& secure7() {
  static const LinearStorageCode code = [] {
    PrecodeOptions o;
    o.seed = 42;
    return secure_precode(build_layered_code(7, 1009), 2, o);
  }();
  return code;
}

}  // namespace

TEST_CASE("entropy of small sets") {
  const auto c5 = build_layered_code(5, 1009);
  const EntropyOracle o(c5);
  CHECK(o.entropy({}) == 0);
  CHECK(o.entropy({VarRef::node(1)}) == 6);
  CHECK(o.entropy({VarRef::node(1), VarRef::node(2)}) == 12);
  CHECK(o.entropy({VarRef::msg()}) == c5.T);
  CHECK(o.conditional({VarRef::node(2)}, {VarRef::node(2)}) == 0);
  CHECK(o.conditional({VarRef::node(3)}, repair_to(5, 3)) == 0);
  CHECK_THROWS_AS(o.entropy({VarRef::node(6)}), BadIndex);
  CHECK_THROWS_AS(o.entropy({VarRef::repair(1, 9)}), BadIndex);
}

TEST_CASE("property: oracle entropy equals the stacked rank") {
  std::mt19937_64 rng(5);
  std::vector<LinearStorageCode> codes;
  codes.push_back(build_layered_code(6, 1009));
  codes.push_back(secure_precode(build_layered_code(6, 1009), 1));
  codes.push_back(secure7());
  for (const auto& code : codes) {
    const EntropyOracle o(code);
    const VarSet u = universe(code.n, true);
    for (int trial = 0; trial < 150; ++trial) {
      VarSet s;
      const std::size_t size = 1 + rng() % 6;
      for (std::size_t t = 0; t < size; ++t) s.push_back(u[rng() % u.size()]);
      CHECK(o.entropy(s) == rank_entropy(code, s));
    }
  }
}

TEST_CASE("property: rank entropy is a polymatroid") {
  std::mt19937_64 rng(8);
  const auto& code = secure7();
  const EntropyOracle o(code);
  const VarSet u = universe(code.n, true);
  auto pick = [&](std::size_t max) {
    VarSet s;
    const std::size_t size = rng() % (max + 1);
    for (std::size_t t = 0; t < size; ++t) s.push_back(u[rng() % u.size()]);
    return s;
  };
  for (int trial = 0; trial < 200; ++trial) {
    const VarSet a = pick(4), b = pick(4), c = pick(3);
    const auto ac = join(a, c);
    CHECK(o.entropy(ac) >= o.entropy(a));
    CHECK(o.entropy(a) + o.entropy(b) >= o.entropy(join(a, b)));
    const long long lhs = static_cast<long long>(o.entropy(join(a, c))) + static_cast<long long>(o.entropy(join(b, c)));
    const long long rhs =
        static_cast<long long>(o.entropy(join(join(a, b), c))) + static_cast<long long>(o.entropy(c));
    CHECK(lhs >= rhs);
  }
}

TEST_CASE("SDSS properties") {
  const auto rep = check_sdss(secure7());
  CHECK(rep.pass());
  CHECK(rep.reconstruction.checks == 7);
  CHECK(rep.regeneration.checks == 7);
  CHECK(rep.security.checks == 21);

  const auto c5 = build_layered_code(5, 1009);
  const auto open = check_sdss(c5, 1);
  CHECK(open.reconstruction.pass);
  CHECK(open.reconstruction.checks == 5);
  CHECK(open.regeneration.pass);
  CHECK_FALSE(open.security.pass);
  REQUIRE_FALSE(open.security.witnesses.empty());
  CHECK(open.security.witnesses.front() == std::vector<int>{1});

  const EntropyOracle o(secure7());
  for (int a = 1; a <= 7; ++a)
    for (int b = a + 1; b <= 7; ++b) CHECK(wiretap_leakage(o, {a, b}) == 0);
}

TEST_CASE("entropy symmetry") {
  SymmetryOptions opts;
  opts.subset_size_limit = 2;
  const auto sym = check_symmetry(build_layered_code(6, 1009), opts);
  CHECK(sym.pass());
  CHECK(sym.evaluations > 0);

  CHECK(relabel({VarRef::node(1), VarRef::repair(1, 2)}, {1, 2, 3}) ==
        VarSet{VarRef::node(1), VarRef::repair(1, 2)});
  CHECK(relabel({VarRef::node(1), VarRef::repair(1, 2)}, {2, 1, 3}) ==
        VarSet{VarRef::node(2), VarRef::repair(2, 1)});

  BlockDesign partial = build_design(6);
  partial.blocks.erase(partial.blocks.begin());
  const auto lopsided = build_code_from_design(partial, 1009);
  opts.subset_size_limit = 1;
  const auto bad = check_symmetry(lopsided, opts);
  CHECK_FALSE(bad.pass());

  opts.subset_size_limit = 1;
  opts.random_samples = 30;
  CHECK(check_symmetry(secure7(), opts).pass());
}

TEST_CASE("outer-bound evaluation") {
  const auto& code = secure7();
  const EntropyOracle o(code);
  VarSet t;
  for (int j = 1; j <= code.k; ++j)
    for (int i = j + 1; i <= code.n; ++i) t.push_back(VarRef::repair(i, j));
  const std::size_t v = sc_outer_eval(o, t, {1, 2});
  const long long g = gamma(code.k, code.d, code.ell);
  CHECK(v >= code.B_s);
  CHECK(static_cast<long long>(v) <= g * static_cast<long long>(code.beta()));

  CHECK(sc_outer_eval(o, nodes(1, 7), {}) == code.T);
  CHECK(sc_outer_eval(code, nodes(1, 7), {}) == Rational(static_cast<long long>(code.T)));
  CHECK_THROWS_AS(sc_outer_eval(o, nodes(1, 3), {1}), PreconditionUnmet);
}

TEST_CASE("inequality catalog") {
  const auto cat = check_inequality_catalog(secure7());
  REQUIRE_FALSE(cat.empty());
  for (const auto& e : cat) {
    CHECK_MESSAGE(e.pass, e.name << " " << e.indices << " slack " << e.slack.str());
    CHECK(e.slack == e.rhs - e.lhs);
    CHECK(e.slack >= Rational(0));
  }
  auto has = [&](const std::string& name, const std::string& idx) {
    return std::any_of(cat.begin(), cat.end(), [&](const CatalogEntry& e) { return e.name == name && e.indices == idx; });
  };
  CHECK(has("lemma1", "t=0"));
  CHECK(has("lemma1", "t=1"));
  CHECK(has("bound_S", "t=0"));
  CHECK(has("lemma4_S", "y=3,t_y=2"));

  for (int ell = 1; ell <= 3; ++ell) {
    const auto c6 = secure_precode(build_layered_code(6, 1009), ell);
    for (const auto& e : check_inequality_catalog(c6)) CHECK_MESSAGE(e.pass, e.name << " " << e.indices);
  }
  CHECK_THROWS_AS(check_inequality_catalog(build_layered_code(6, 1009)), PreconditionUnmet);
}
