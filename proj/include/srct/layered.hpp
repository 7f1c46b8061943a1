#pragma once
/// Layered exact-repair code over the 3-subset block design, the secure
/// precoder, and symbol-level repair/reconstruction simulation.

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "srct/field.hpp"
#include "srct/region.hpp"

namespace srct {

struct BlockDesign {
  int n = 0;
  std::vector<std::array<int, 3>> blocks;  // 1-based, sorted, lexicographic
};

BlockDesign build_design(int n);

/// A linear storage code: every stored or transmitted symbol is a linear
/// functional of a source vector of length T. The first B_s source
/// coordinates are the message, the rest are key.
struct LinearStorageCode {
  std::uint64_t p = 0;
  int n = 0;
  int k = 0;
  int d = 0;
  int ell = 0;  // 0 for a code without a secrecy target
  std::size_t T = 0;
  std::size_t B_s = 0;
  std::vector<FieldMatrix> node_maps;    // node i at i-1
  std::vector<FieldMatrix> repair_maps;  // S_i^j at (i-1)*n + (j-1); S_i^i has 0 rows

  const FieldMatrix& node(int i) const;
  const FieldMatrix& repair(int i, int j) const;
  std::size_t alpha() const;  // largest per-node symbol count
  std::size_t beta() const;   // largest repair message size
};

/// Builds the layered code for an arbitrary list of blocks on n nodes.
/// The full design gives the symmetric construction; partial designs are
/// useful as asymmetric fixtures.
LinearStorageCode build_code_from_design(const BlockDesign& design, std::uint64_t p);
LinearStorageCode build_layered_code(int n, std::uint64_t p);

std::size_t secure_message_dim(int n, int ell);  // 2*C(n-ell, 3)

/// Re-expresses the source through an invertible T x T precoder P: every
/// functional g becomes g*P. Sets B_s to the secure message dimension for
/// `ell`. No secrecy verification is performed.
LinearStorageCode apply_precoder(const LinearStorageCode& code, int ell, const FieldMatrix& precoder);

/// Default escalation primes. A custom start prime is followed by the default
/// rungs above it; `max_prime` caps the ladder and, when larger than the last
/// default rung, extends it with next_prime(2*previous).
std::vector<std::uint64_t> prime_ladder(std::uint64_t start, std::uint64_t max_prime);

struct PrecodeOptions {
  std::uint64_t seed = 0;
  int max_retries = 8;
  std::uint64_t max_prime = 8009;
};

/// Draws random invertible precoders until every ell-subset of wiretapped
/// nodes learns nothing about the message, escalating the prime along the
/// ladder. Throws InvalidEll for ell outside 1..n-3 and SecrecyUnachievable
/// when the ladder is exhausted.
LinearStorageCode secure_precode(const LinearStorageCode& code, int ell, const PrecodeOptions& opts = {});

RatePoint achieved_point(const LinearStorageCode& code);

/// Independent secrecy test for precoded layered codes: the eavesdropper of L
/// sees exactly the X/Y coordinates of blocks meeting L, so the message is
/// hidden iff those coordinates restricted to the key columns form an
/// invertible matrix.
bool touched_block_test(const LinearStorageCode& code, const std::vector<int>& wiretap);

struct CodeState {
  std::vector<std::uint32_t> source;
  std::vector<std::vector<std::uint32_t>> stored;  // node i at i-1
};

CodeState encode_state(const LinearStorageCode& code, std::uint64_t seed);
CodeState encode_source(const LinearStorageCode& code, std::vector<std::uint32_t> source);

struct RepairOutcome {
  std::vector<std::uint32_t> symbols;
  std::size_t downloaded = 0;
  bool matches = false;
};

/// Simulates repair of node j from all other nodes using the per-block (3,2)
/// relations of the layered design.
RepairOutcome repair_node(const LinearStorageCode& code, const CodeState& state, int j);

std::vector<std::uint32_t> reconstruct_message(const LinearStorageCode& code, const CodeState& state,
                                               const std::vector<int>& nodes);

}  // namespace srct
