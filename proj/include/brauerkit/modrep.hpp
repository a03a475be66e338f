#pragma once

#include <optional>
#include <string>
#include <vector>

#include "brauerkit/algebra.hpp"
#include "brauerkit/ffield.hpp"
#include "brauerkit/groups.hpp"

namespace bk {

inline constexpr std::size_t kDefaultDimCap = 400;

// A representation of a subgroup of some parent group. act(g) is defined for
// g in group(); matrices act on column vectors.
class ModuleRep {
 public:
  // mats[i] is the image of gen_elems[i]; the relations are checked on every
  // element times every generator.
  static ModuleRep from_generators(const Subgroup& grp, const Field& f, std::size_t dim,
                                   std::span<const int> gen_elems, const std::vector<Matrix>& mats);
  // mats indexed by parent element; entries outside grp are ignored.
  static ModuleRep from_elements(const Subgroup& grp, const Field& f, std::size_t dim, std::vector<Matrix> mats);
  // `module group=<ref> field=<spec> dim=d` (keys in any order), then one d-row block per generator
  // of g, in g.generators() order.
  static ModuleRep parse(std::string_view text, const Group& g);
  std::string serialize() const;

  const Subgroup& group() const { return grp_; }
  const Field& field() const { return f_; }
  std::size_t dim() const { return dim_; }
  const Matrix& act(int g) const;

 private:
  ModuleRep(Subgroup grp, Field f, std::size_t dim, std::vector<Matrix> act)
      : grp_(std::move(grp)), f_(std::move(f)), dim_(dim), act_(std::move(act)) {}
  Subgroup grp_;
  Field f_;
  std::size_t dim_;
  std::vector<Matrix> act_;
};

ModuleRep trivial_module(const Subgroup& grp, const Field& f);
ModuleRep regular_module(const Subgroup& grp, const Field& f);
// Ind_Q^P(k), basis the left cosets of q in p (least representative order).
ModuleRep permutation_module(const Subgroup& p, const Subgroup& q, const Field& f);
// Generator of a cyclic group acting as a unipotent Jordan block of size n.
ModuleRep jordan_module(const Subgroup& cyclic, const Field& f, std::size_t n);

// Basis t_i (x) m_j at index i*dim(m)+j, t_i the least coset representatives.
ModuleRep induce(const ModuleRep& m, const Subgroup& bigger);
ModuleRep restrict(const ModuleRep& m, const Subgroup& smaller);
// Same acting group; Kronecker basis.
ModuleRep tensor(const ModuleRep& m, const ModuleRep& n);
ModuleRep dual(const ModuleRep& m);
ModuleRep direct_sum(const ModuleRep& m, const ModuleRep& n);
// The module x -> m(g^-1 x g) of g H g^-1.
ModuleRep twist(const ModuleRep& m, int g);
// Pull back along an isomorphism onto the acting group.
ModuleRep pull_back(const ModuleRep& m, const GroupIso& iso);
// Entries re-encoded through the embedding of fields.
ModuleRep scalar_extend(const ModuleRep& m, const Field& bigger);
// g(x) = m.act(g) x restricted to an invariant subspace given by basis columns.
ModuleRep submodule(const ModuleRep& m, const Matrix& basis_cols);

// Basis of Hom_{kG}(m, n) as dim(n) x dim(m) matrices.
std::vector<Matrix> hom_space(const ModuleRep& m, const ModuleRep& n);

struct EndAlgebra {
  Algebra alg;
  Subspace flat;              // row-major flattened matrices
  std::vector<Matrix> basis;  // matrix of each algebra basis element
  Matrix to_matrix(std::span<const Elem> x) const;
  Vec to_elem(const Matrix& m) const;
};
EndAlgebra end_algebra(const ModuleRep& m);
// Algebra on the span of n x n matrices; the span must contain 1 and be closed.
EndAlgebra matrix_span_algebra(const Field& f, std::size_t n, const std::vector<Matrix>& span);

bool is_indecomposable(const ModuleRep& m);

struct Summand {
  ModuleRep module;
  Matrix inclusion;   // dim(m) x dim(summand)
  Matrix projection;  // dim(summand) x dim(m)
  std::size_t iso_class;
};

struct Decomposition {
  std::vector<Summand> summands;
  std::vector<std::size_t> multiplicity;  // per iso class
  std::vector<std::size_t> representative;  // summand index of each class
};

Decomposition decompose(const ModuleRep& m, std::uint64_t seed = 0, std::size_t dim_cap = kDefaultDimCap);

// An isomorphism m -> n as a dim(n) x dim(m) matrix.
std::optional<Matrix> find_isomorphism(const ModuleRep& m, const ModuleRep& n, std::uint64_t seed = 0);
bool is_isomorphic(const ModuleRep& m, const ModuleRep& n, std::uint64_t seed = 0);

// Higman: id in Tr_Q^G(End_kQ(m)).
bool relatively_projective(const ModuleRep& m, const Subgroup& q);
bool is_projective(const ModuleRep& m);

// Smallest p-subgroup class with m relatively projective; every such class is
// checked to contain a conjugate of it.
Subgroup vertex(const ModuleRep& m);
// Indecomposable summands V of Res_P(m), one per iso class, with m a summand of
// Ind_P(V). All are checked to be N_G(P)-conjugate.
std::vector<ModuleRep> sources(const ModuleRep& m, const Subgroup& vtx, std::uint64_t seed = 0);

// For a p-group: columns of a basis permuted by the group, when one exists.
std::optional<Matrix> is_permutation_module(const ModuleRep& m, std::uint64_t seed = 0);
// End_k(V) with conjugation, as V (x) V*.
ModuleRep end_module(const ModuleRep& v);
bool is_endopermutation(const ModuleRep& v, std::uint64_t seed = 0);

}  // namespace bk
