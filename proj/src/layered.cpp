#include "srct/layered.hpp"

#include <algorithm>
#include <string>

#include "srct/entropy.hpp"
#include "srct/error.hpp"

namespace srct {

namespace {

constexpr std::uint64_t kDefaultRungs[] = {1009, 2003, 4001, 8009};

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// For every node, the blocks it belongs to in design order and its position
// (0: X, 1: Y, 2: X+Y) inside each of them.
struct Layout {
  std::vector<std::vector<std::size_t>> blocks_of;
  std::vector<std::vector<int>> position;  // [node-1][block] = position or -1
  std::vector<std::vector<std::size_t>> row_of;  // [node-1][block] = row in node map
};

Layout make_layout(const BlockDesign& design) {
  Layout lay;
  const auto n = static_cast<std::size_t>(design.n);
  lay.blocks_of.assign(n, {});
  lay.position.assign(n, std::vector<int>(design.blocks.size(), -1));
  lay.row_of.assign(n, std::vector<std::size_t>(design.blocks.size(), 0));
  for (std::size_t b = 0; b < design.blocks.size(); ++b) {
    for (int q = 0; q < 3; ++q) {
      const auto v = static_cast<std::size_t>(design.blocks[b][static_cast<std::size_t>(q)] - 1);
      lay.row_of[v][b] = lay.blocks_of[v].size();
      lay.blocks_of[v].push_back(b);
      lay.position[v][b] = q;
    }
  }
  return lay;
}

bool contains(const std::array<int, 3>& block, int v) {
  return block[0] == v || block[1] == v || block[2] == v;
}

void check_node(const LinearStorageCode& code, int i) {
  if (i < 1 || i > code.n) throw BadIndex("node index " + std::to_string(i) + " outside 1.." + std::to_string(code.n));
}

}  // namespace

BlockDesign build_design(int n) {
  if (n < 3) throw InvalidParams("block design needs n >= 3");
  BlockDesign d{n, {}};
  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b)
      for (int c = b + 1; c <= n; ++c) d.blocks.push_back({a, b, c});
  return d;
}

const FieldMatrix& LinearStorageCode::node(int i) const {
  if (i < 1 || i > n) throw BadIndex("node index " + std::to_string(i) + " out of range");
  return node_maps[static_cast<std::size_t>(i - 1)];
}

const FieldMatrix& LinearStorageCode::repair(int i, int j) const {
  if (i < 1 || i > n || j < 1 || j > n) throw BadIndex("repair index out of range");
  return repair_maps[static_cast<std::size_t>((i - 1) * n + (j - 1))];
}

std::size_t LinearStorageCode::alpha() const {
  std::size_t a = 0;
  for (const auto& m : node_maps) a = std::max(a, m.rows());
  return a;
}

std::size_t LinearStorageCode::beta() const {
  std::size_t b = 0;
  for (const auto& m : repair_maps) b = std::max(b, m.rows());
  return b;
}

LinearStorageCode build_code_from_design(const BlockDesign& design, std::uint64_t p) {
  if (design.n < 4) throw InvalidParams("layered code needs n >= 4");
  const int n = design.n;
  const std::size_t T = 2 * design.blocks.size();
  LinearStorageCode code;
  code.p = p;
  code.n = n;
  code.k = n - 1;
  code.d = n - 1;
  code.ell = 0;
  code.T = T;
  code.B_s = T;
  const Layout lay = make_layout(design);
  for (int i = 1; i <= n; ++i) {
    const auto& bl = lay.blocks_of[static_cast<std::size_t>(i - 1)];
    FieldMatrix m(bl.size(), T, p);
    for (std::size_t r = 0; r < bl.size(); ++r) {
      const std::size_t b = bl[r];
      const int q = lay.position[static_cast<std::size_t>(i - 1)][b];
      if (q != 1) m.set(r, 2 * b, 1);
      if (q != 0) m.set(r, 2 * b + 1, 1);
    }
    code.node_maps.push_back(std::move(m));
  }
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      std::vector<std::size_t> rows;
      if (i != j) {
        const auto& bl = lay.blocks_of[static_cast<std::size_t>(i - 1)];
        for (std::size_t r = 0; r < bl.size(); ++r) {
          if (contains(design.blocks[bl[r]], j)) rows.push_back(r);
        }
      }
      code.repair_maps.push_back(code.node_maps[static_cast<std::size_t>(i - 1)].select_rows(rows));
    }
  }
  return code;
}

LinearStorageCode build_layered_code(int n, std::uint64_t p) {
  if (n < 4) throw InvalidParams("layered code needs n >= 4");
  if (!is_prime(p)) throw NotPrime("modulus " + std::to_string(p) + " is not prime");
  return build_code_from_design(build_design(n), p);
}

std::size_t secure_message_dim(int n, int ell) {
  const long long m = n - ell;
  if (m < 3) return 0;
  return static_cast<std::size_t>(m * (m - 1) * (m - 2) / 3);
}

LinearStorageCode apply_precoder(const LinearStorageCode& code, int ell, const FieldMatrix& precoder) {
  if (precoder.rows() != code.T || precoder.cols() != code.T || precoder.modulus() != code.p) {
    throw DimensionMismatch("precoder must be a T x T matrix over the code's field");
  }
  LinearStorageCode out = code;
  out.ell = ell;
  out.B_s = secure_message_dim(code.n, ell);
  for (auto& m : out.node_maps) m = m * precoder;
  for (auto& m : out.repair_maps) m = m * precoder;
  return out;
}

std::vector<std::uint64_t> prime_ladder(std::uint64_t start, std::uint64_t max_prime) {
  if (!is_prime(start)) throw NotPrime("modulus " + std::to_string(start) + " is not prime");
  std::vector<std::uint64_t> ladder{start};
  for (auto r : kDefaultRungs) {
    if (r > ladder.back() && r <= max_prime) ladder.push_back(r);
  }
  while (true) {
    const std::uint64_t next = next_prime(2 * ladder.back());
    if (next > max_prime || next >= (std::uint64_t{1} << 31)) break;
    ladder.push_back(next);
  }
  return ladder;
}

LinearStorageCode secure_precode(const LinearStorageCode& code, int ell, const PrecodeOptions& opts) {
  if (ell < 1 || ell > code.n - 3) {
    throw InvalidEll("ell=" + std::to_string(ell) + " outside 1.." + std::to_string(code.n - 3) +
                     ": zero secrecy capacity for this construction");
  }
  for (std::uint64_t p : prime_ladder(code.p, opts.max_prime)) {
    LinearStorageCode base = code;
    base.p = p;
    for (auto& m : base.node_maps) m = m.with_modulus(p);
    for (auto& m : base.repair_maps) m = m.with_modulus(p);
    for (int attempt = 0; attempt < opts.max_retries; ++attempt) {
      const std::uint64_t seed = splitmix(opts.seed ^ splitmix(p * 1315423911ULL + static_cast<std::uint64_t>(attempt)));
      FieldMatrix precoder = seeded_random_matrix(code.T, code.T, p, seed);
      if (mat_rank(precoder) < code.T) continue;
      LinearStorageCode cand = apply_precoder(base, ell, precoder);
      const EntropyOracle oracle(cand);
      if (!oracle.first_leaking_wiretap(ell)) return cand;
    }
  }
  throw SecrecyUnachievable("no secure precoder found for n=" + std::to_string(code.n) +
                            " ell=" + std::to_string(ell) + " within the prime ladder");
}

RatePoint achieved_point(const LinearStorageCode& code) {
  if (code.B_s == 0) throw InvalidParams("achieved point needs B_s > 0");
  const auto bs = static_cast<long long>(code.B_s);
  return {frac(static_cast<long long>(code.alpha()), bs), frac(static_cast<long long>(code.beta()), bs)};
}

bool touched_block_test(const LinearStorageCode& code, const std::vector<int>& wiretap) {
  const BlockDesign design = build_design(code.n);
  const Layout lay = make_layout(design);
  std::vector<std::size_t> key_cols;
  for (std::size_t c = code.B_s; c < code.T; ++c) key_cols.push_back(c);
  FieldMatrix touched(0, code.T, code.p);
  for (std::size_t b = 0; b < design.blocks.size(); ++b) {
    const auto& blk = design.blocks[b];
    const bool hit = std::any_of(wiretap.begin(), wiretap.end(), [&](int v) { return contains(blk, v); });
    if (!hit) continue;
    for (int q = 0; q < 2; ++q) {
      const int v = blk[static_cast<std::size_t>(q)];
      const auto row = lay.row_of[static_cast<std::size_t>(v - 1)][b];
      touched.append_row(code.node(v).row(row));
    }
  }
  if (touched.rows() != key_cols.size()) return false;
  return mat_rank(touched.select_cols(key_cols)) == key_cols.size();
}

CodeState encode_source(const LinearStorageCode& code, std::vector<std::uint32_t> source) {
  if (source.size() != code.T) throw DimensionMismatch("source length must equal T");
  CodeState st;
  st.source = std::move(source);
  for (const auto& m : code.node_maps) st.stored.push_back(m.apply(st.source));
  return st;
}

CodeState encode_state(const LinearStorageCode& code, std::uint64_t seed) {
  FieldMatrix draw = seeded_random_matrix(1, code.T, code.p, seed);
  auto row = draw.row(0);
  return encode_source(code, {row.begin(), row.end()});
}

RepairOutcome repair_node(const LinearStorageCode& code, const CodeState& state, int j) {
  check_node(code, j);
  const BlockDesign design = build_design(code.n);
  const Layout lay = make_layout(design);
  const auto J = static_cast<std::size_t>(j - 1);
  if (state.stored.size() != static_cast<std::size_t>(code.n) || lay.blocks_of[J].size() != code.node(j).rows()) {
    throw ValidationError("state or code does not follow the full layered design");
  }

  // received[b][q]: symbol of block b at position q, as sent by its holder.
  std::vector<std::array<std::uint32_t, 3>> received(design.blocks.size());
  RepairOutcome out;
  for (int i = 1; i <= code.n; ++i) {
    if (i == j) continue;
    const auto I = static_cast<std::size_t>(i - 1);
    for (std::size_t b : lay.blocks_of[I]) {
      if (!contains(design.blocks[b], j)) continue;
      const int q = lay.position[I][b];
      received[b][static_cast<std::size_t>(q)] = state.stored[I][lay.row_of[I][b]];
      ++out.downloaded;
    }
  }
  const PrimeField f(code.p);
  for (std::size_t b : lay.blocks_of[J]) {
    const auto& v = received[b];
    switch (lay.position[J][b]) {
      case 0: out.symbols.push_back(f.sub(v[2], v[1])); break;
      case 1: out.symbols.push_back(f.sub(v[2], v[0])); break;
      default: out.symbols.push_back(f.add(v[0], v[1])); break;
    }
  }
  out.matches = out.symbols == state.stored[J];
  return out;
}

std::vector<std::uint32_t> reconstruct_message(const LinearStorageCode& code, const CodeState& state,
                                               const std::vector<int>& nodes) {
  std::vector<int> sorted = nodes;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) throw BadIndex("repeated node in K");
  for (int i : sorted) check_node(code, i);
  if (static_cast<int>(sorted.size()) < code.k) {
    throw InsufficientNodes("reconstruction needs " + std::to_string(code.k) + " nodes, got " +
                            std::to_string(sorted.size()));
  }
  FieldMatrix a(0, code.T, code.p);
  std::vector<std::uint32_t> rhs;
  for (int i : sorted) {
    const auto& m = code.node(i);
    for (std::size_t r = 0; r < m.rows(); ++r) a.append_row(m.row(r));
    const auto& w = state.stored[static_cast<std::size_t>(i - 1)];
    rhs.insert(rhs.end(), w.begin(), w.end());
  }
  auto src = solve(a, rhs);
  src.resize(code.B_s);
  return src;
}

}  // namespace srct
