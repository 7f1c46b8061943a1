#pragma once
/// Rank-based entropy oracle for linear storage codes, plus the SDSS,
/// symmetry and inequality-catalog checks built on it.
///
/// Entropies are measured in field symbols: H(A) is the rank of the stacked
/// functionals of the variables in A.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "srct/field.hpp"
#include "srct/layered.hpp"
#include "srct/rational.hpp"

namespace srct {

struct VarRef {
  enum class Kind { Msg, Node, Repair };
  Kind kind = Kind::Msg;
  int i = 0;
  int j = 0;

  static VarRef msg() { return {Kind::Msg, 0, 0}; }
  static VarRef node(int i) { return {Kind::Node, i, 0}; }
  static VarRef repair(int i, int j) { return {Kind::Repair, i, j}; }

  auto operator<=>(const VarRef&) const = default;
  std::string str() const;
};

using VarSet = std::vector<VarRef>;

VarSet join(VarSet a, const VarSet& b);
VarSet nodes(int first, int last);                 // W_[first:last]
VarSet repair_to(int n, int j);                    // S^j
VarSet repair_to_range(int n, int first, int last);  // S^[first:last]
VarSet repair_from_to(int i, int first, int last);   // S_i^[first:last]

/// Precomputes every functional of a code in a basis of stored symbols, so
/// that rank queries over unions of code variables touch sparse rows only.
class EntropyOracle {
 public:
  explicit EntropyOracle(const LinearStorageCode& code);

  std::size_t entropy(const VarSet& vars) const;
  std::size_t conditional(const VarSet& a, const VarSet& given) const;  // H(A|C)
  std::size_t mutual(const VarSet& a, const VarSet& b, const VarSet& given = {}) const;

  std::size_t msg_entropy() const { return msg_entropy_; }
  const LinearStorageCode& code() const { return *code_; }

  /// I(M; view) from a single elimination.
  std::size_t msg_leakage(const VarSet& view) const;

  /// Lexicographically first ell-set of nodes whose repair traffic leaks
  /// message information, or nullopt if none does. Shares elimination work
  /// between subsets with a common prefix.
  std::optional<std::vector<int>> first_leaking_wiretap(int ell) const;

 private:
  const std::vector<std::size_t>& rows_of(const VarRef& v) const;

  const LinearStorageCode* code_;
  std::size_t dim_ = 0;
  std::size_t key_dim_ = 0;  // coordinates before the message block
  std::vector<std::vector<std::uint32_t>> basis_rows_;       // transformed functionals
  std::vector<std::vector<std::size_t>> node_rows_;          // per node: indices into basis_rows_
  std::vector<std::vector<std::size_t>> repair_rows_;        // per ordered pair
  std::vector<std::size_t> msg_rows_;
  std::vector<std::vector<std::size_t>> view_rows_;          // per node j: rows of every S_i^j
  std::size_t msg_entropy_ = 0;
};

Rational joint_entropy(const LinearStorageCode& code, const VarSet& vars);

struct CondMutual {
  Rational h_a_given_c;
  Rational i_ab_given_c;
};
CondMutual cond_mutual(const LinearStorageCode& code, const VarSet& a, const VarSet& b, const VarSet& c);

struct FamilyResult {
  std::string family;
  std::size_t checks = 0;
  bool pass = true;
  std::vector<std::vector<int>> witnesses;  // violating node sets
};

struct SdssReport {
  FamilyResult reconstruction;
  FamilyResult regeneration;
  FamilyResult security;
  bool pass() const { return reconstruction.pass && regeneration.pass && security.pass; }
};

/// Checks reconstruction for every k-set, regeneration for every node and
/// secrecy for every ell-set. `ell` overrides the code's own secrecy target.
SdssReport check_sdss(const LinearStorageCode& code, std::optional<int> ell = std::nullopt);
SdssReport check_sdss(const EntropyOracle& oracle, std::optional<int> ell = std::nullopt);

/// Leakage I(M; Y_L) of the eavesdropper on wiretap set L.
std::size_t wiretap_leakage(const EntropyOracle& oracle, const std::vector<int>& wiretap);

struct SymmetryViolation {
  VarSet subset;
  std::vector<int> permutation;  // perm[i-1] = image of node i
  std::size_t before = 0;
  std::size_t after = 0;
};

struct SymmetryReport {
  std::size_t evaluations = 0;
  std::vector<SymmetryViolation> violations;
  bool pass() const { return violations.empty(); }
};

/// Exhaustive over subsets of W/S variables up to `subset_size_limit` under
/// every transposition, plus `random_samples` seeded draws of a subset of
/// size in [sample_min_size, sample_max_size] and a random permutation.
struct SymmetryOptions {
  int subset_size_limit = 2;
  int random_samples = 0;
  int sample_min_size = 3;
  int sample_max_size = 4;
  std::uint64_t seed = 1;
};
SymmetryReport check_symmetry(const LinearStorageCode& code, const SymmetryOptions& opts = {});
VarSet relabel(const VarSet& vars, const std::vector<int>& perm);

/// H(T | S^L), after checking that T determines some k nodes.
Rational sc_outer_eval(const LinearStorageCode& code, const VarSet& t_set, const std::vector<int>& l_set);
std::size_t sc_outer_eval(const EntropyOracle& oracle, const VarSet& t_set, const std::vector<int>& l_set);

struct CatalogEntry {
  std::string name;
  std::string indices;
  Rational lhs;
  Rational rhs;
  Rational slack;
  bool pass = true;
};

std::vector<CatalogEntry> check_inequality_catalog(const LinearStorageCode& code);
std::vector<CatalogEntry> check_inequality_catalog(const EntropyOracle& oracle);

}  // namespace srct
