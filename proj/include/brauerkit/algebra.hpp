#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "brauerkit/ffield.hpp"
#include "brauerkit/groups.hpp"

namespace bk {

struct Term {
  std::uint32_t index;
  Elem coeff;
};

namespace detail {
struct AlgebraData;
}

// Associative unital algebra over a finite field, given by structure
// constants b_i * b_j = sum_k c[i][j][k] b_k (stored sparsely).
class Algebra {
 public:
  // products[i*d+j] lists the nonzero terms of b_i * b_j. Associativity and the
  // unit axioms are checked exhaustively for d <= 80 and on a sample above.
  static Algebra make(Field f, std::size_t d, std::vector<std::vector<Term>> products, Vec unit,
                      std::vector<std::string> labels = {});
  // Same, from dense vectors of length d.
  static Algebra from_dense(Field f, std::size_t d, const std::vector<Vec>& products, Vec unit,
                            std::vector<std::string> labels = {});
  // `algebra dim=d` line, `field ...` line, d*d product lines, `unit=` line.
  static Algebra parse(std::string_view text);
  std::string serialize() const;

  const Field& field() const;
  std::size_t dim() const;
  const Vec& unit() const;
  const std::string& label(std::size_t i) const;
  const std::vector<Term>& product(std::size_t i, std::size_t j) const;
  bool is_commutative() const;

  Vec zero() const { return Vec(dim(), 0); }
  Vec basis_vector(std::size_t i) const;
  Vec mul(std::span<const Elem> x, std::span<const Elem> y) const;
  Vec add(std::span<const Elem> x, std::span<const Elem> y) const;
  Vec sub(std::span<const Elem> x, std::span<const Elem> y) const;
  Vec scale(Elem c, std::span<const Elem> x) const;
  Vec pow(std::span<const Elem> x, std::uint64_t e) const;
  // Columns: x * b_j (left multiplication by x).
  Matrix left_matrix(std::span<const Elem> x) const;
  // Columns: b_j * x.
  Matrix right_matrix(std::span<const Elem> x) const;
  bool is_idempotent(std::span<const Elem> e) const;
  std::optional<Vec> inverse(std::span<const Elem> x) const;

  // Optional symmetrizing functional carried along (group algebras).
  const std::optional<Vec>& form() const;
  Algebra with_form(Vec values) const;

 private:
  friend struct AlgebraFactory;
  explicit Algebra(std::shared_ptr<const detail::AlgebraData> d) : d_(std::move(d)) {}
  std::shared_ptr<const detail::AlgebraData> d_;
};

// Basis indexed by group elements; the standard form picks the coefficient at 1.
Algebra group_algebra(const Group& g, const Field& f);
// Basis E_ij at index i*n+j, matching row-major flattening of Matrix.
Algebra matrix_algebra(const Field& f, std::size_t n);
// Basis (i,j) at index i*dim(b)+j.
Algebra tensor(const Algebra& a, const Algebra& b);
Algebra opposite(const Algebra& a);
// Tensor of elements in the lexicographic basis.
Vec tensor_elem(const Field& f, std::span<const Elem> x, std::span<const Elem> y);
// Matrix of the element x in M_n.
Matrix as_matrix(const Field& f, std::span<const Elem> x, std::size_t n);

struct Subalgebra {
  Algebra alg;
  Matrix inclusion;  // dim(parent) x dim(alg), columns are the basis
};

// A multiplicatively closed subspace containing `unit`, which becomes the unit.
Subalgebra subalgebra(const Algebra& a, const Subspace& w, std::span<const Elem> unit);
// e A e with unit e.
Subalgebra corner(const Algebra& a, std::span<const Elem> e);

struct QuotientAlgebra {
  Algebra alg;
  Matrix projection;  // dim(alg) x dim(parent)
  Matrix lift;        // dim(parent) x dim(alg), a linear section
};

QuotientAlgebra quotient(const Algebra& a, const Subspace& ideal);

// ---------------------------------------------------------------------------

struct AlgebraHom {
  Algebra source, target;
  Matrix map;  // dim(target) x dim(source)
  Vec operator()(std::span<const Elem> x) const { return map.apply(x); }
  Vec image_of_unit() const { return map.apply(source.unit()); }
  bool unital() const { return map.apply(source.unit()) == target.unit(); }
};

// Checks multiplicativity on basis pairs and that f(1) is idempotent.
AlgebraHom make_hom(Algebra source, Algebra target, Matrix map);
bool is_multiplicative(const AlgebraHom& f);
AlgebraHom compose(const AlgebraHom& g, const AlgebraHom& f);  // g o f
// ker f = 0 and Im f = f(1) B f(1).
bool is_embedding(const AlgebraHom& f);

// ---------------------------------------------------------------------------

Subspace center(const Algebra& a);
// {z in w : z x = x z for all x in xs}
Subspace commutant(const Algebra& a, const Subspace& w, const std::vector<Vec>& xs);
// Span of products x*y, x in u, y in v.
Subspace product_space(const Algebra& a, const Subspace& u, const Subspace& v);
// Smallest subalgebra containing the given elements and the unit.
Subspace generated_subalgebra(const Algebra& a, const std::vector<Vec>& gens);
bool is_ideal(const Algebra& a, const Subspace& w);

// Jacobson radical by the characteristic-p trace sequence; commutative
// algebras use the kernel of a Frobenius power.
Subspace radical(const Algebra& a);
// Minimal polynomial of x relative to `unit` (an idempotent with x = unit x unit).
Poly element_minimal_polynomial(const Algebra& a, std::span<const Elem> x);
Poly element_minimal_polynomial(const Algebra& a, std::span<const Elem> x, std::span<const Elem> unit);

// Newton iteration e <- 3e^2 - 2e^3 until exact.
Vec lift_idempotent(const Algebra& a, Vec e);

// Primitive idempotents of the subalgebra {x : x^q = x} of a commutative
// subalgebra w. These are orthogonal and sum to the unit of w.
std::vector<Vec> berlekamp_idempotents(const Algebra& a, const Subspace& w, std::span<const Elem> unit);

std::vector<Vec> central_primitive_idempotents(const Algebra& a);

// Wedderburn data of A/J(A), computed once and reused.
struct Semisimple {
  Subspace radical;
  QuotientAlgebra top;
  Subspace top_center;
  std::vector<Vec> blocks;       // central primitive idempotents of the top
  std::vector<std::size_t> deg;  // matrix size n_i of each Wedderburn component
  std::vector<std::size_t> ext;  // dim over F of its division algebra (a field)
  bool split() const;
};
Semisimple semisimple_data(const Algebra& a);

// Orthogonal primitive idempotents summing to 1. The count is seed-independent.
std::vector<Vec> primitive_decomposition(const Algebra& a, std::uint64_t seed = 0);
std::vector<Vec> primitive_decomposition(const Algebra& a, const Semisimple& ss, std::uint64_t seed = 0);
// e A e / J(e A e) is a field.
bool is_primitive(const Algebra& a, std::span<const Elem> e);

// Multiplicity of each simple top factor of A e.
std::vector<std::size_t> idempotent_key(const Algebra& a, const Semisimple& ss, std::span<const Elem> e);
bool idempotents_conjugate(const Algebra& a, std::span<const Elem> e, std::span<const Elem> f);
// A unit u with u f u^-1 = e, when A e and A f are isomorphic.
std::optional<Vec> conjugating_unit(const Algebra& a, std::span<const Elem> e, std::span<const Elem> f,
                                    std::uint64_t seed = 0);

struct Point {
  Vec representative;
  std::size_t multiplicity;
  std::vector<std::size_t> key;
};

// Points from a primitive decomposition, ordered by key.
std::vector<Point> points(const Algebra& a, std::uint64_t seed = 0);
bool is_split(const Algebra& a);

// Representation: one matrix per basis element.
using Representation = std::vector<Matrix>;
// One simple module per Wedderburn component, in block order.
std::vector<Representation> simple_modules(const Algebra& a);
Matrix represent(const Representation& rho, std::span<const Elem> x);
Elem trace_of_primitive_on_simple(const Algebra& a, std::span<const Elem> e, const Representation& simple);

// b with f(x) = b g(x) b^-1 for all x, both f, g embeddings M_m -> M_n.
Vec matrix_embedding_normalize(const AlgebraHom& f, const AlgebraHom& g);

// ---------------------------------------------------------------------------

struct SymmetricForm {
  Field field;
  Vec values;  // value on each basis element
  Elem operator()(std::span<const Elem> x) const;
};

bool is_symmetric(const Algebra& a, const SymmetricForm& s);
Matrix gram_matrix(const Algebra& a, const SymmetricForm& s);
bool is_nondegenerate(const Algebra& a, const SymmetricForm& s);

}  // namespace bk
