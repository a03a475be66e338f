#pragma once

#include <optional>
#include <string>
#include <vector>

#include "brauerkit/blocks.hpp"

namespace bk {

// An (L, R)-bimodule for L <= G and R <= H, stored as a module over L x R in
// G x H with (g, h) m = g m h^-1.
struct Bimodule {
  DirectProduct prod;
  Subgroup left, right;
  ModuleRep module;

  const Field& field() const { return module.field(); }
  std::size_t dim() const { return module.dim(); }
  Matrix left_action(int g) const;   // m -> g m
  Matrix right_action(int h) const;  // m -> m h
  // Left multiplication by an element of k[left], right by one of k[right]
  // (kG resp. kH coordinates).
  Matrix left_mult(std::span<const Elem> x) const;
  Matrix right_mult(std::span<const Elem> y) const;
};

// Reads off L and R as the projections; the acting group must be L x R.
Bimodule as_bimodule(const DirectProduct& prod, const ModuleRep& m);
// e k[S] f inside kG for prod = G x G, with L, R <= S, e fixed by L and f
// fixed by R under conjugation.
Bimodule group_algebra_bimodule(const DirectProduct& prod, const Field& f, const Subgroup& support, const Subgroup& l,
                                const Subgroup& r, std::span<const Elem> e, std::span<const Elem> fi);
// k[L] e as an (L, L)-bimodule, e a central idempotent of k[L].
Bimodule regular_bimodule(const DirectProduct& prod, const Field& f, const Subgroup& l, std::span<const Elem> e);

// M* as an (R, L)-bimodule over swapped = H x G.
Bimodule dual(const Bimodule& m, const DirectProduct& swapped);
// G = H: the same product group serves both ways.
Bimodule dual(const Bimodule& m);
// M (x)_{k[R]} N over target = G x K. The quotient of M (x) N by the balancing
// relations keeps the non-pivot coordinates of their echelon form.
Bimodule tensor_over(const Bimodule& m, const Bimodule& n, const DirectProduct& target);
// All groups equal.
Bimodule tensor_over(const Bimodule& m, const Bimodule& n);
Bimodule scalar_extend(const Bimodule& m, const Field& bigger);

// ---------------------------------------------------------------------------

struct ProductCheck {
  std::size_t dim = 0;
  std::size_t summands = 0;
  bool regular_found = false;          // a summand is the regular block bimodule
  bool remainder_projective = false;  // every other summand is projective
  bool pass() const { return regular_found && remainder_projective; }
};

struct StableEquivalenceCertificate {
  bool bimodule_ok = false;
  std::string failure;  // first violated bimodule invariant
  ProductCheck left_product;   // M (x)_{kHc} M*
  ProductCheck right_product;  // M* (x)_{kGb} M
  bool pass() const { return bimodule_ok && left_product.pass() && right_product.pass(); }
};

// b is a block of k[L] and c of k[R], in parent coordinates. Needs G = H.
// Invariant violations are reported in the certificate.
StableEquivalenceCertificate check_stable_equivalence(const Bimodule& m, std::span<const Elem> b,
                                                      std::span<const Elem> c, std::uint64_t seed = 0);

struct VertexSourceReport {
  Subgroup vertex;
  ModuleRep source;  // over the vertex
  bool twisted_diagonal = false;  // both projections injective on the vertex
  bool endopermutation = false;   // source, pulled back to p1(X), is endopermutation
  bool coprime_dim = false;       // p does not divide dim of the source
  std::optional<GroupIso> twist;  // p1(X) -> p2(X) when twisted diagonal
  // Projections conjugate to the defect groups of b and c (twisted case only).
  std::optional<bool> left_defect, right_defect;
  bool consistent() const { return twisted_diagonal == endopermutation && endopermutation == coprime_dim; }
  bool pass() const;
};

// m must be indecomposable.
VertexSourceReport vertex_source_check(const Bimodule& m, std::span<const Elem> b, std::span<const Elem> c,
                                       std::uint64_t seed = 0);

// The source viewed as a module over p1(X) through u -> (u, phi(u)).
ModuleRep source_on_left(const Bimodule& m, const VertexSourceReport& r);

struct TwistedSummand {
  std::size_t dim = 0;
  std::size_t multiplicity = 0;
  bool matched = false;           // isomorphic to Ind_{Delta phi}^{P x Q}(k) for some phi: R -> Q
  std::size_t twist_order = 0;    // |R| of the first match
  std::size_t vertex_order = 0;
  bool full_twist_ok = false;     // vertex of order |P| forces R = P
};

struct TwistedSummandReport {
  std::vector<TwistedSummand> summands;
  bool pass() const;
};

// Summands of kG restricted to P x Q, matched against the modules induced from
// twisted diagonals of subgroups of P.
TwistedSummandReport twisted_summands_check(const Group& g, const Field& f, const Subgroup& p, const Subgroup& q,
                                            std::uint64_t seed = 0);

// M is a summand of kGi (x)_{kP} Ind_X^{P x Q}(V) (x)_{kQ} j kH for source
// idempotents i of b and j of c (every pair from one decomposition is tried).
bool source_summand_check(const Bimodule& m, std::span<const Elem> b, std::span<const Elem> c,
                          const VertexSourceReport& r, std::uint64_t seed = 0);

// ---------------------------------------------------------------------------

// Input of the endopermutation harness: V over the p-group P, interior
// P-algebras A and B, a symmetric form on A and an embedding A -> End(V) (x) B.
struct HarnessInstance {
  std::string label;
  ModuleRep source;
  std::optional<GAlgebra> a;  // absent when no A with A(P) != 0 could be built
  GAlgebra b;
  SymmetricForm form;
  Matrix embedding;  // dim(S) dim(B) x dim(A)
};

struct HarnessCheck {
  std::string name;
  bool pass = false;
  std::string witness;
};

struct HarnessReport {
  bool hypotheses = false;
  std::vector<HarnessCheck> gate;    // hypothesis checks
  std::vector<HarnessCheck> checks;  // run only when the gate passes
  bool pass() const;
};

HarnessReport endopermutation_harness(const HarnessInstance& in, std::uint64_t seed = 0);

// A = e (End(V) (x) B) e for a local point e of P, with the inclusion and the
// restricted product form. A stays absent when S (x) B has no local point of P.
HarnessInstance corner_instance(std::string label, const ModuleRep& v, const GAlgebra& b,
                                const SymmetricForm& b_form, std::uint64_t seed = 0);

// B = kP over P with the standard form.
struct GroupAlgebraData {
  GAlgebra alg;
  SymmetricForm form;
};
GroupAlgebraData group_algebra_data(const Subgroup& p, const Field& f);

struct SourceAlgebraComparison {
  bool attempted = false;
  std::string note;
  std::size_t end_dim = 0;     // dim t End_{B^op}(iMj) t
  std::size_t corner_dim = 0;  // dim e (S (x) B) e
  bool isomorphic = false;     // as interior P-algebras, via the structure units
  bool stable_basis = false;
  // Harness input built from this comparison when isomorphic.
  std::optional<HarnessInstance> instance;
};

// Builds t End_{B^op}(iMj) t with B = j kH j and compares it with
// e (End(V) (x) B) e; only attempted when both are spanned by structure units.
SourceAlgebraComparison compare_source_algebras(const Bimodule& m, std::span<const Elem> b, std::span<const Elem> c,
                                                const VertexSourceReport& r, std::uint64_t seed = 0);

// ---------------------------------------------------------------------------

// k' (x) M for a finite extension k' of k.
struct ExtensionReport {
  std::size_t summands = 0;
  bool vertices_match = false;   // every summand has the vertex of M
  bool sources_descend = false;  // k' (x) V is a source of a summand
  bool stable_summand = false;   // a summand gives a stable equivalence between blocks over b and c
  unsigned left_degree = 0, right_degree = 0;  // k[b~] and k[c~] as degrees over GF(p)
  bool pass() const {
    return vertices_match && sources_descend && stable_summand && left_degree == right_degree;
  }
};

ExtensionReport extension_check(const Bimodule& m, std::span<const Elem> b, std::span<const Elem> c,
                                const VertexSourceReport& r, const Field& bigger, std::uint64_t seed = 0);

// ---------------------------------------------------------------------------

struct Witness {
  std::string label;
  Bimodule bimodule;
  Vec left_block, right_block;
};

// Identity bimodules of kP for C2, C4, C2xC2 over GF(2) and C3 over GF(3),
// and b0 kA4 as a (kA4 b0, kC3)-bimodule at p = 3. With extensions, each is
// also given over GF(4) or GF(9).
std::vector<Witness> witness_set(bool extensions);
Witness extend_witness(const Witness& w, const Field& bigger);

}  // namespace bk
