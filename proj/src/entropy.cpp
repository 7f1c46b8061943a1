#include "srct/entropy.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <string>

#include "srct/error.hpp"

namespace srct {

std::string VarRef::str() const {
  switch (kind) {
    case Kind::Msg: return "M";
    case Kind::Node: return "W" + std::to_string(i);
    case Kind::Repair: return "S" + std::to_string(i) + "^" + std::to_string(j);
  }
  return "?";
}

VarSet join(VarSet a, const VarSet& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

VarSet nodes(int first, int last) {
  VarSet v;
  for (int i = first; i <= last; ++i) v.push_back(VarRef::node(i));
  return v;
}

VarSet repair_to(int n, int j) {
  VarSet v;
  for (int i = 1; i <= n; ++i) {
    if (i != j) v.push_back(VarRef::repair(i, j));
  }
  return v;
}

VarSet repair_to_range(int n, int first, int last) {
  VarSet v;
  for (int j = first; j <= last; ++j) v = join(v, repair_to(n, j));
  return v;
}

VarSet repair_from_to(int i, int first, int last) {
  VarSet v;
  for (int j = first; j <= last; ++j) v.push_back(VarRef::repair(i, j));
  return v;
}

namespace {

std::vector<std::vector<int>> subsets_of_size(int n, int size) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int start) -> void {
    if (static_cast<int>(cur.size()) == size) {
      out.push_back(cur);
      return;
    }
    for (int v = start; v <= n; ++v) {
      cur.push_back(v);
      self(self, v + 1);
      cur.pop_back();
    }
  };
  if (size >= 0 && size <= n) rec(rec, 1);
  return out;
}

VarSet wiretap_view(int n, const std::vector<int>& wiretap) {
  VarSet v;
  for (int j : wiretap) v = join(v, repair_to(n, j));
  return v;
}

}  // namespace

EntropyOracle::EntropyOracle(const LinearStorageCode& code) : code_(&code) {
  const std::size_t T = code.T;
  const PrimeField field(code.p);
  if (code.node_maps.size() != static_cast<std::size_t>(code.n) ||
      code.repair_maps.size() != static_cast<std::size_t>(code.n) * static_cast<std::size_t>(code.n)) {
    throw ValidationError("code has the wrong number of maps");
  }

  // Distinct functionals, in first-seen order.
  std::map<std::vector<std::uint32_t>, std::size_t> index;
  std::vector<std::vector<std::uint32_t>> distinct;
  auto intern = [&](std::span<const std::uint32_t> row) {
    std::vector<std::uint32_t> key(row.begin(), row.end());
    auto [it, fresh] = index.emplace(std::move(key), distinct.size());
    if (fresh) distinct.push_back(it->first);
    return it->second;
  };
  for (const auto& m : code.node_maps) {
    if (m.cols() != T) throw DimensionMismatch("node map width differs from T");
    std::vector<std::size_t> ids;
    for (std::size_t r = 0; r < m.rows(); ++r) ids.push_back(intern(m.row(r)));
    node_rows_.push_back(std::move(ids));
  }
  for (const auto& m : code.repair_maps) {
    if (m.cols() != T) throw DimensionMismatch("repair map width differs from T");
    std::vector<std::size_t> ids;
    for (std::size_t r = 0; r < m.rows(); ++r) ids.push_back(intern(m.row(r)));
    repair_rows_.push_back(std::move(ids));
  }

  // Columns of `a` are the message unit vectors followed by the distinct
  // functionals. Its reduced echelon form expresses every column in the basis
  // formed by the pivot columns, and the message units are always the first
  // B_s pivots. Coordinates are rotated so the message part comes last: a view
  // then leaks exactly as many symbols as its echelon form has pivots there.
  const std::size_t D = distinct.size();
  const std::size_t B = code.B_s;
  FieldMatrix a(T, B + D, code.p);
  for (std::size_t u = 0; u < B; ++u) a.set(u, u, 1);
  for (std::size_t j = 0; j < D; ++j) {
    for (std::size_t r = 0; r < T; ++r) {
      if (distinct[j][r]) a.set(r, B + j, distinct[j][r]);
    }
  }
  const Rref red = rref(a);
  dim_ = red.pivots.size();
  key_dim_ = dim_ - B;

  auto coords = [&](std::size_t col) {
    std::vector<std::uint32_t> v(dim_);
    for (std::size_t r = 0; r < dim_; ++r) v[(r + key_dim_) % dim_] = red.reduced.at(r, col);
    return v;
  };
  for (std::size_t j = 0; j < D; ++j) basis_rows_.push_back(coords(B + j));
  for (std::size_t u = 0; u < B; ++u) {
    msg_rows_.push_back(basis_rows_.size());
    basis_rows_.push_back(coords(u));
  }
  msg_entropy_ = entropy({VarRef::msg()});

  for (int j = 1; j <= code.n; ++j) {
    std::vector<std::size_t> ids;
    for (int i = 1; i <= code.n; ++i) {
      if (i == j) continue;
      const auto& r = repair_rows_[static_cast<std::size_t>((i - 1) * code.n + (j - 1))];
      ids.insert(ids.end(), r.begin(), r.end());
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    view_rows_.push_back(std::move(ids));
  }
}

std::size_t EntropyOracle::msg_leakage(const VarSet& view) const {
  RowEchelon ech(dim_, PrimeField(code_->p));
  for (const auto& v : view) {
    if (v.kind == VarRef::Kind::Msg) throw InvalidParams("the view must not contain M");
    for (auto id : rows_of(v)) ech.insert(basis_rows_[id]);
  }
  return ech.rank_from(key_dim_);
}

std::optional<std::vector<int>> EntropyOracle::first_leaking_wiretap(int ell) const {
  const int n = code_->n;
  if (ell < 1 || ell > n) throw InvalidEll("wiretap size " + std::to_string(ell) + " outside 1.." + std::to_string(n));
  std::vector<int> cur;
  std::optional<std::vector<int>> found;
  auto rec = [&](auto&& self, const RowEchelon& prefix, int start) -> void {
    if (static_cast<int>(cur.size()) == ell) {
      if (prefix.rank_from(key_dim_) != 0) found = cur;
      return;
    }
    for (int v = start; v <= n - (ell - static_cast<int>(cur.size())) + 1 && !found; ++v) {
      RowEchelon next = prefix;
      for (auto id : view_rows_[static_cast<std::size_t>(v - 1)]) next.insert(basis_rows_[id]);
      // Leakage only grows with the view, so a leaking prefix settles it.
      cur.push_back(v);
      if (next.rank_from(key_dim_) != 0) {
        found = cur;
        while (static_cast<int>(found->size()) < ell) found->push_back(found->back() + 1);
      } else {
        self(self, next, v + 1);
      }
      cur.pop_back();
    }
  };
  rec(rec, RowEchelon(dim_, PrimeField(code_->p)), 1);
  return found;
}

const std::vector<std::size_t>& EntropyOracle::rows_of(const VarRef& v) const {
  const int n = code_->n;
  switch (v.kind) {
    case VarRef::Kind::Msg: return msg_rows_;
    case VarRef::Kind::Node:
      if (v.i < 1 || v.i > n) throw BadIndex("node index " + std::to_string(v.i) + " out of range");
      return node_rows_[static_cast<std::size_t>(v.i - 1)];
    case VarRef::Kind::Repair:
      if (v.i < 1 || v.i > n || v.j < 1 || v.j > n) throw BadIndex("repair index out of range");
      return repair_rows_[static_cast<std::size_t>((v.i - 1) * n + (v.j - 1))];
  }
  throw BadIndex("unknown variable kind");
}

std::size_t EntropyOracle::entropy(const VarSet& vars) const {
  std::vector<std::size_t> ids;
  bool with_msg = false;
  for (const auto& v : vars) {
    if (v.kind == VarRef::Kind::Msg) {
      with_msg = true;
      continue;
    }
    const auto& r = rows_of(v);
    ids.insert(ids.end(), r.begin(), r.end());
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  if (with_msg) ids.insert(ids.end(), msg_rows_.begin(), msg_rows_.end());
  RowEchelon ech(dim_, PrimeField(code_->p));
  for (auto id : ids) {
    ech.insert(basis_rows_[id]);
    if (ech.rank() == dim_) break;
  }
  return ech.rank();
}

std::size_t EntropyOracle::conditional(const VarSet& a, const VarSet& given) const {
  return entropy(join(a, given)) - entropy(given);
}

std::size_t EntropyOracle::mutual(const VarSet& a, const VarSet& b, const VarSet& given) const {
  return entropy(join(a, given)) + entropy(join(b, given)) - entropy(join(join(a, b), given)) - entropy(given);
}

Rational joint_entropy(const LinearStorageCode& code, const VarSet& vars) {
  EntropyOracle o(code);
  return Rational(static_cast<long long>(o.entropy(vars)));
}

CondMutual cond_mutual(const LinearStorageCode& code, const VarSet& a, const VarSet& b, const VarSet& c) {
  EntropyOracle o(code);
  return {Rational(static_cast<long long>(o.conditional(a, c))), Rational(static_cast<long long>(o.mutual(a, b, c)))};
}

std::size_t wiretap_leakage(const EntropyOracle& oracle, const std::vector<int>& wiretap) {
  const VarSet view = wiretap_view(oracle.code().n, wiretap);
  const VarSet m{VarRef::msg()};
  return oracle.msg_entropy() + oracle.entropy(view) - oracle.entropy(join(m, view));
}

SdssReport check_sdss(const LinearStorageCode& code, std::optional<int> ell) {
  EntropyOracle o(code);
  return check_sdss(o, ell);
}

SdssReport check_sdss(const EntropyOracle& o, std::optional<int> ell) {
  const auto& code = o.code();
  SdssReport rep;
  rep.reconstruction.family = "reconstruction";
  rep.regeneration.family = "regeneration";
  rep.security.family = "security";
  const VarSet m{VarRef::msg()};

  for (const auto& K : subsets_of_size(code.n, code.k)) {
    VarSet w;
    for (int i : K) w.push_back(VarRef::node(i));
    ++rep.reconstruction.checks;
    if (o.conditional(m, w) != 0) {
      rep.reconstruction.pass = false;
      rep.reconstruction.witnesses.push_back(K);
    }
  }
  for (int j = 1; j <= code.n; ++j) {
    ++rep.regeneration.checks;
    if (o.conditional({VarRef::node(j)}, repair_to(code.n, j)) != 0) {
      rep.regeneration.pass = false;
      rep.regeneration.witnesses.push_back({j});
    }
  }
  const int e = ell.value_or(code.ell);
  if (e >= 1) {
    for (const auto& L : subsets_of_size(code.n, e)) {
      ++rep.security.checks;
      if (wiretap_leakage(o, L) != 0) {
        rep.security.pass = false;
        rep.security.witnesses.push_back(L);
      }
    }
  }
  return rep;
}

VarSet relabel(const VarSet& vars, const std::vector<int>& perm) {
  VarSet out;
  auto img = [&](int i) { return perm.at(static_cast<std::size_t>(i - 1)); };
  for (const auto& v : vars) {
    switch (v.kind) {
      case VarRef::Kind::Msg: out.push_back(v); break;
      case VarRef::Kind::Node: out.push_back(VarRef::node(img(v.i))); break;
      case VarRef::Kind::Repair: out.push_back(VarRef::repair(img(v.i), img(v.j))); break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

SymmetryReport check_symmetry(const LinearStorageCode& code, const SymmetryOptions& opts) {
  EntropyOracle o(code);
  const int n = code.n;
  VarSet universe = nodes(1, n);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      if (i != j) universe.push_back(VarRef::repair(i, j));

  std::map<VarSet, std::size_t> cache;
  auto H = [&](const VarSet& s) {
    auto it = cache.find(s);
    if (it != cache.end()) return it->second;
    const std::size_t h = o.entropy(s);
    cache.emplace(s, h);
    return h;
  };

  std::vector<std::vector<int>> perms;
  for (int a = 1; a <= n; ++a) {
    for (int b = a + 1; b <= n; ++b) {
      std::vector<int> p(static_cast<std::size_t>(n));
      for (int i = 1; i <= n; ++i) p[static_cast<std::size_t>(i - 1)] = i;
      std::swap(p[static_cast<std::size_t>(a - 1)], p[static_cast<std::size_t>(b - 1)]);
      perms.push_back(std::move(p));
    }
  }

  SymmetryReport rep;
  auto compare = [&](VarSet subset, const std::vector<int>& perm) {
    std::sort(subset.begin(), subset.end());
    const std::size_t before = H(subset);
    const VarSet image = relabel(subset, perm);
    const std::size_t after = H(image);
    ++rep.evaluations;
    if (before != after) rep.violations.push_back({subset, perm, before, after});
  };

  const std::size_t U = universe.size();
  std::vector<std::size_t> pick;
  auto rec = [&](auto&& self, std::size_t start, int left) -> void {
    if (left == 0) {
      VarSet s;
      for (auto k : pick) s.push_back(universe[k]);
      for (const auto& p : perms) compare(s, p);
      return;
    }
    for (std::size_t k = start; k < U; ++k) {
      pick.push_back(k);
      self(self, k + 1, left - 1);
      pick.pop_back();
    }
  };
  for (int size = 1; size <= opts.subset_size_limit; ++size) rec(rec, 0, size);

  std::mt19937_64 rng(opts.seed);
  auto below = [&](std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t v;
    do {
      v = rng();
    } while (v >= limit);
    return v % bound;
  };
  for (int s = 0; s < opts.random_samples; ++s) {
    const int span = opts.sample_max_size - opts.sample_min_size + 1;
    const int size = opts.sample_min_size + static_cast<int>(below(static_cast<std::uint64_t>(span)));
    std::vector<std::size_t> idx(U);
    for (std::size_t k = 0; k < U; ++k) idx[k] = k;
    VarSet subset;
    for (int t = 0; t < size; ++t) {
      const std::size_t r = static_cast<std::size_t>(t) + below(U - static_cast<std::size_t>(t));
      std::swap(idx[static_cast<std::size_t>(t)], idx[r]);
      subset.push_back(universe[idx[static_cast<std::size_t>(t)]]);
    }
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) perm[static_cast<std::size_t>(i - 1)] = i;
    for (std::size_t t = perm.size() - 1; t > 0; --t) std::swap(perm[t], perm[below(t + 1)]);
    compare(subset, perm);
  }
  return rep;
}

std::size_t sc_outer_eval(const EntropyOracle& o, const VarSet& t_set, const std::vector<int>& l_set) {
  const auto& code = o.code();
  int determined = 0;
  for (int i = 1; i <= code.n; ++i) {
    if (o.conditional({VarRef::node(i)}, t_set) == 0) ++determined;
  }
  if (determined < code.k) {
    throw PreconditionUnmet("the set determines only " + std::to_string(determined) + " nodes, need " +
                            std::to_string(code.k));
  }
  return o.conditional(t_set, wiretap_view(code.n, l_set));
}

Rational sc_outer_eval(const LinearStorageCode& code, const VarSet& t_set, const std::vector<int>& l_set) {
  EntropyOracle o(code);
  return Rational(static_cast<long long>(sc_outer_eval(o, t_set, l_set)));
}

}  // namespace srct
