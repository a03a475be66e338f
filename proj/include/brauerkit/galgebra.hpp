#pragma once

#include <optional>
#include <vector>

#include "brauerkit/algebra.hpp"
#include "brauerkit/modrep.hpp"

namespace bk {

// An algebra with a group acting by automorphisms, optionally interior. The
// action is kept as a ModuleRep on the underlying vector space.
class GAlgebra {
 public:
  // Each generator matrix must be an algebra automorphism.
  static GAlgebra from_generators(Algebra a, const Subgroup& grp, std::span<const int> gens,
                                  const std::vector<Matrix>& mats);
  // Structure units per generator; the action is conjugation by them.
  static GAlgebra interior(Algebra a, const Subgroup& grp, std::span<const int> gens, const std::vector<Vec>& units);

  const Algebra& algebra() const { return alg_; }
  const Subgroup& group() const { return rep_.group(); }
  const ModuleRep& rep() const { return rep_; }
  const Matrix& action(int g) const { return rep_.act(g); }
  Vec act(int g, std::span<const Elem> x) const { return rep_.act(g).apply(x); }
  bool is_interior() const { return !units_.empty(); }
  // Image of g in the unit group (interior algebras only).
  const Vec& structure_unit(int g) const;

 private:
  GAlgebra(Algebra a, ModuleRep rep, std::vector<Vec> units)
      : alg_(std::move(a)), rep_(std::move(rep)), units_(std::move(units)) {}
  friend GAlgebra restrict(const GAlgebra& a, const Subgroup& h);
  Algebra alg_;
  ModuleRep rep_;
  std::vector<Vec> units_;  // indexed by parent element, empty if not interior
};

// kG with g acting by conjugation; interior.
GAlgebra conjugation_algebra(const Group& g, const Field& f);
// k[H] for a subgroup, basis h.elements() in order; interior over H.
GAlgebra conjugation_algebra(const Subgroup& h, const Field& f);
// End_k(V) with the structure map of V; interior. Basis as matrix_algebra.
GAlgebra endomorphism_algebra(const ModuleRep& v);
GAlgebra trivial_action(const Algebra& a, const Subgroup& grp);
GAlgebra restrict(const GAlgebra& a, const Subgroup& h);
// Diagonal action on the tensor product; interior when both are.
GAlgebra tensor(const GAlgebra& a, const GAlgebra& b);
// A stable subalgebra with the restricted action (not interior).
GAlgebra stable_subalgebra(const GAlgebra& a, const Subalgebra& sub);
// e A e for a fixed idempotent e; interior when A is, with units e u e.
struct GCorner {
  GAlgebra alg;
  Matrix inclusion;  // dim(A) x dim(eAe)
};
GCorner corner(const GAlgebra& a, std::span<const Elem> e);

// ---------------------------------------------------------------------------

Subspace fixed_points(const GAlgebra& a, const Subgroup& p);
Subalgebra fixed_subalgebra(const GAlgebra& a, const Subgroup& p);
// Sum over the least left coset representatives of P/Q; x must be Q-fixed.
Vec relative_trace(const GAlgebra& a, const Subgroup& p, const Subgroup& q, std::span<const Elem> x);
// Tr_Q^P(A^Q) as a subspace of A.
Subspace trace_image(const GAlgebra& a, const Subgroup& p, const Subgroup& q);
// Sum of Tr_Q^P(A^Q) over every proper subgroup Q (the slow reference).
Subspace brauer_kernel_reference(const GAlgebra& a, const Subgroup& p);

struct BrauerData {
  Subgroup subgroup;
  Subalgebra fixed;  // A^P with its inclusion into A
  Subspace fixed_space;
  Subspace kernel;  // inside A
  QuotientAlgebra quotient;  // A(P) as a quotient of the fixed algebra
  Matrix br;       // dim A(P) x dim A, valid on A^P
  Matrix section;  // dim A x dim A(P), lands in A^P
  const Algebra& alg() const { return quotient.alg; }
  Vec operator()(std::span<const Elem> x) const;  // checks x in A^P
};

// Kernel from maximal subgroups only; P must be a p-group for the characteristic.
BrauerData brauer_quotient(const GAlgebra& a, const Subgroup& p);
// A(P) with the induced action of N_G(P).
GAlgebra brauer_galgebra(const GAlgebra& a, const BrauerData& bd);

// A P-stable basis (columns) when A is a permutation kP-module. When found,
// the images of its P-fixed members are checked to be a basis of A(P).
std::optional<Matrix> stable_basis(const GAlgebra& a, const Subgroup& p, std::uint64_t seed = 0);

// br_Q(x) -> br_Q(br_P(x)) for x fixed by P and Q. Defined on br_Q(A^{PQ}),
// which is all of A(Q) when P <= Q.
struct AlphaMap {
  Algebra source;  // A(Q)
  Algebra target;  // A(P)(Q)
  Subspace domain;
  Matrix map;  // dim target x dim source, meaningful on domain
  bool bijective() const;
};
AlphaMap alpha_pq(const GAlgebra& a, const Subgroup& p, const Subgroup& q);
// br(x) (x) br(y) -> br(x (x) y); the source basis is the lexicographic one.
AlgebraHom alpha_tensor(const GAlgebra& a, const GAlgebra& b, const Subgroup& p);

// Throws PreconditionError unless f commutes with the actions.
void require_equivariant(const GAlgebra& a, const GAlgebra& b, const AlgebraHom& f);
// f(P): A(P) -> B(P).
AlgebraHom induced_map(const GAlgebra& a, const GAlgebra& b, const AlgebraHom& f, const Subgroup& p);
// f(A^H) + J(B^H) = B^H for every subgroup H; the p-subgroup Brauer quotient
// criterion is computed too and must agree.
bool is_covering(const GAlgebra& a, const GAlgebra& b, const AlgebraHom& f);

// ---------------------------------------------------------------------------

struct PointedGroups {
  Subgroup subgroup;
  Subalgebra fixed;
  BrauerData brauer;
  std::vector<Point> points;  // of A^P, representatives in A coordinates
  std::vector<bool> local;
  std::vector<int> quotient_point;  // index into points of A(P), -1 if not local
  std::vector<Point> quotient_points;
};

// Points of A^P with locality; the bijection with points of A(P) and the
// equality of multiplicities are checked.
PointedGroups local_points(const GAlgebra& a, const Subgroup& p, std::uint64_t seed = 0);
// Q_beta <= P_alpha: the point beta occurs in a decomposition of i in A^Q.
bool pointed_contained(const GAlgebra& a, const Subgroup& q, std::span<const Elem> j, const Subgroup& p,
                       std::span<const Elem> i);

struct QuotientForm {
  SymmetricForm form;
  bool symmetric;
  bool nondegenerate;
};
// s(Q)(br_Q(x)) = s(x). Needs a P-stable basis, A(P) != 0 and Q <= P.
QuotientForm form_quotient(const GAlgebra& a, const SymmetricForm& s, const Subgroup& q, const Subgroup& p);

struct StablePoint {
  std::size_t matching_blocks;  // P-stable blocks e with (Ae)(P) = A(P)
  Vec block;
  bool complement_in_kernel;  // br_P^{Z(A)}(1 - e) = 0
};
// For split semisimple A with a single point on A(P).
StablePoint unique_stable_point(const GAlgebra& a, const Subgroup& p, std::uint64_t seed = 0);

// ---------------------------------------------------------------------------
// Commutative squares between Brauer functors and alpha maps; both composites
// are computed and compared entrywise. Chains need P <= Q <= R, each
// normalizing the smaller ones.

// f(P)(Q) o alpha_A(P,Q) = alpha_B(P,Q) o f(Q) for f: A -> B.
bool diagram_functor_alpha(const GAlgebra& a, const GAlgebra& b, const AlgebraHom& f, const Subgroup& p,
                           const Subgroup& q);
// (f (x) g)(P) o alpha_{A,C}(P) = alpha_{B,D}(P) o (f(P) (x) g(P)) for f: A -> B, g: C -> D.
bool diagram_functor_tensor(const GAlgebra& a, const GAlgebra& b, const GAlgebra& c, const GAlgebra& d,
                            const AlgebraHom& f, const AlgebraHom& g, const Subgroup& p);
// alpha_{A(x)B}(P,Q) o alpha_{A,B}(Q)
//   = alpha_{A,B}(P)(Q) o alpha_{A(P),B(P)}(Q) o (alpha_A(P,Q) (x) alpha_B(P,Q)).
bool diagram_alpha_tensor(const GAlgebra& a, const GAlgebra& b, const Subgroup& p, const Subgroup& q);
// alpha_A(P,Q)(R) o alpha_A(Q,R) = alpha_{A(P)}(Q,R) o alpha_A(P,R).
bool diagram_alpha_transitive(const GAlgebra& a, const Subgroup& p, const Subgroup& q, const Subgroup& r);
// alpha_{A(x)B,C}(P) o (alpha_{A,B}(P) (x) id) = alpha_{A,B(x)C}(P) o (id (x) alpha_{B,C}(P)).
bool diagram_tensor_associative(const GAlgebra& a, const GAlgebra& b, const GAlgebra& c, const Subgroup& p);

}  // namespace bk
