#pragma once

#include <optional>
#include <vector>

#include "brauerkit/galgebra.hpp"

namespace bk {

struct BlockData {
  Subgroup group;  // blocks of k[group]
  Field field;
  Vec idempotent;  // in kG coordinates of the parent group, supported on `group`
  Subgroup defect;
  std::size_t ideal_dim;  // dim kGb
};

// Central primitive idempotents of kG with their defect groups, in the order
// produced by the centre splitting.
std::vector<BlockData> blocks(const Group& g, const Field& f);
std::vector<BlockData> blocks(const Subgroup& h, const Field& f);
// Largest p-subgroup class with br_P(b) != 0. Every class with nonzero image
// is checked to lie in a conjugate of it.
Subgroup defect_group(const Group& g, const Field& f, std::span<const Elem> b);
// b is a block of k[H], given in parent coordinates.
Subgroup defect_group(const Subgroup& h, const Field& f, std::span<const Elem> b);

// Primitive idempotents of (k[H]b)^P with br_P != 0, from one decomposition of
// b; P must be conjugate to the defect group.
std::vector<Vec> source_idempotents(const BlockData& b, const Subgroup& p, std::uint64_t seed = 0);

struct SourceAlgebra {
  Vec idempotent;   // i in (kGb)^D, primitive, br_D(i) != 0
  GAlgebra algebra; // i kH i as an interior D-algebra
  Matrix inclusion; // parent kG coordinates x dim iHi
};
SourceAlgebra source_algebra(const BlockData& b, std::uint64_t seed = 0);

struct GaloisDescentRecord {
  Vec base_block;  // over k
  std::vector<Vec> extension_blocks;  // blocks b' of k'G with b b' != 0, as a Frobenius orbit
  unsigned definition_degree;  // k[b'] = GF(p^definition_degree)
  bool orbit_sum_matches;      // b = sum of the orbit of b' under Gal(k[b']/k)
  bool defects_match;
  Subgroup defect;
};
// k must embed in k'.
std::vector<GaloisDescentRecord> galois_descent(const Group& g, const Field& k, const Field& bigger);
std::vector<GaloisDescentRecord> galois_descent(const Subgroup& h, const Field& k, const Field& bigger);

}  // namespace bk
