#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "brauerkit/errors.hpp"

namespace bk {

// Field elements are integers < q: the base-p digits are the coefficients of
// the residue polynomial, constant term first.
using Elem = std::uint32_t;
using Vec = std::vector<Elem>;

class FieldError : public InputError {
 public:
  using InputError::InputError;
};

namespace detail {
struct FieldData;
}

// GF(p^n) given by an explicit monic irreducible polynomial.
class Field {
 public:
  // poly holds n+1 coefficients, constant first, leading coefficient 1.
  static Field make(std::uint32_t p, unsigned n, std::vector<Elem> poly);
  static Field prime(std::uint32_t p);
  // Smallest monic irreducible of degree n in the constant-first encoding order.
  static Field standard(std::uint32_t p, unsigned n);
  // Parses `field p=2 n=2 poly=1,1,1` (the leading word is optional).
  static Field parse(std::string_view text);

  std::uint32_t p() const;
  unsigned n() const;
  std::uint32_t q() const;
  const std::vector<Elem>& poly() const;
  std::string spec() const;

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const;
  Elem from_int(std::int64_t v) const;
  Elem frobenius(Elem a) const { return pow(a, p()); }
  // Smallest d dividing n with a^(p^d) = a.
  unsigned degree_of(Elem a) const;

  // y[i] += c * x[i]
  void axpy(std::span<Elem> y, Elem c, std::span<const Elem> x) const;
  // x[i] *= c
  void scale(std::span<Elem> x, Elem c) const;

  bool operator==(const Field& o) const;
  bool operator!=(const Field& o) const { return !(*this == o); }

 private:
  explicit Field(std::shared_ptr<const detail::FieldData> d) : d_(std::move(d)) {}
  std::shared_ptr<const detail::FieldData> d_;
};

// Embedding GF(p^m) -> GF(p^n), m | n, via the least root of the small field's
// defining polynomial inside the big field.
class FieldEmbedding {
 public:
  FieldEmbedding(const Field& small, const Field& big);
  const Field& small() const { return small_; }
  const Field& big() const { return big_; }
  Elem operator()(Elem a) const;
  Vec map(std::span<const Elem> v) const;
  // Inverse on the image; nullopt when b is not in the image.
  std::optional<Elem> preimage(Elem b) const;

 private:
  Field small_, big_;
  std::vector<Elem> table_;
};

bool is_irreducible_over_prime(std::uint32_t p, std::span<const Elem> poly);
bool is_prime(std::uint64_t v);

// ---------------------------------------------------------------------------
// Dense matrices over a Field. Linear maps act on column vectors.

class Matrix {
 public:
  Matrix(Field f, std::size_t rows, std::size_t cols);
  static Matrix identity(Field f, std::size_t n);
  static Matrix from_rows(Field f, const std::vector<Vec>& rows, std::size_t cols);
  static Matrix from_cols(Field f, const std::vector<Vec>& cols, std::size_t rows);

  const Field& field() const { return f_; }
  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  Elem& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
  Elem operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }
  std::span<Elem> row(std::size_t i) { return {a_.data() + i * c_, c_}; }
  std::span<const Elem> row(std::size_t i) const { return {a_.data() + i * c_, c_}; }
  Vec row_vec(std::size_t i) const { return Vec(row(i).begin(), row(i).end()); }
  Vec col_vec(std::size_t j) const;
  const std::vector<Elem>& data() const { return a_; }

  Matrix operator*(const Matrix& o) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix scaled(Elem c) const;
  Matrix transpose() const;
  Vec apply(std::span<const Elem> x) const;
  bool is_zero() const;
  bool operator==(const Matrix& o) const;
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  Matrix select_rows(std::span<const std::size_t> idx) const;
  Matrix select_cols(std::span<const std::size_t> idx) const;

 private:
  Field f_;
  std::size_t r_, c_;
  std::vector<Elem> a_;
};

Matrix kron(const Matrix& a, const Matrix& b);
Matrix vstack(const Matrix& a, const Matrix& b);
Matrix hstack(const Matrix& a, const Matrix& b);

struct Echelon {
  Matrix rref;  // only the nonzero rows
  std::vector<std::size_t> pivots;
};

Echelon rref(const Matrix& m);
std::size_t rank(const Matrix& m);
std::optional<Matrix> inverse(const Matrix& m);

class Subspace;

// Rows of the result form the canonical basis of {x : m x = 0}.
Matrix nullspace(const Matrix& m);

struct LinearSolution;
std::optional<LinearSolution> solve_linear(const Matrix& a, const Matrix& b);

// Row space of a matrix kept in reduced row-echelon form.
class Subspace {
 public:
  Subspace(Field f, std::size_t ambient);  // zero subspace
  static Subspace span(const Matrix& rows);
  static Subspace span(Field f, std::size_t ambient, const std::vector<Vec>& vecs);
  static Subspace full(Field f, std::size_t ambient);

  const Field& field() const { return basis_.field(); }
  std::size_t ambient() const { return basis_.cols(); }
  std::size_t dim() const { return basis_.rows(); }
  const Matrix& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  Vec vector(std::size_t i) const { return basis_.row_vec(i); }

  bool contains(std::span<const Elem> v) const;
  bool contains(const Subspace& o) const;
  // Coefficients of v in the canonical basis (v must be a member).
  Vec coords(std::span<const Elem> v) const;
  Subspace operator+(const Subspace& o) const;
  Subspace intersect(const Subspace& o) const;
  // Image under the linear map m (m.cols() == ambient()).
  Subspace image(const Matrix& m) const;
  bool operator==(const Subspace& o) const;
  bool operator!=(const Subspace& o) const { return !(*this == o); }

 private:
  explicit Subspace(Echelon e);
  Matrix basis_;
  std::vector<std::size_t> pivots_;
};

struct LinearSolution {
  Matrix x;
  Subspace null;
};

// Incremental independence test; keeps a semi-reduced echelon basis.
class EchelonBuilder {
 public:
  EchelonBuilder(Field f, std::size_t ambient) : f_(std::move(f)), n_(ambient) {}
  // Returns true when v is independent of the vectors added so far.
  bool add(std::span<const Elem> v);
  bool independent(std::span<const Elem> v) const;
  std::size_t rank() const { return rows_.size(); }
  Subspace subspace() const;

 private:
  Vec reduce(std::span<const Elem> v) const;
  Field f_;
  std::size_t n_;
  std::vector<Vec> rows_;  // each normalized to 1 at its pivot
  std::vector<std::size_t> piv_;
};

// Coordinates on a quotient W/U for U inside W.
class QuotientMap {
 public:
  QuotientMap(const Subspace& whole, const Subspace& sub);
  std::size_t dim() const { return complement_.rows(); }
  // Rows: lifts of the quotient basis inside W.
  const Matrix& complement() const { return complement_; }
  // Quotient coordinates of a member of W.
  Vec project(std::span<const Elem> v) const;
  // dim() x ambient matrix implementing project on W.
  const Matrix& projection() const { return proj_; }

 private:
  Matrix complement_;
  Matrix proj_;
};

// ---------------------------------------------------------------------------
// Univariate polynomials, coefficients constant first, no trailing zeros.

class Poly {
 public:
  explicit Poly(Field f) : f_(std::move(f)) {}
  Poly(Field f, std::vector<Elem> c);
  static Poly x(Field f);
  static Poly constant(Field f, Elem c);

  const Field& field() const { return f_; }
  const std::vector<Elem>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  Elem lead() const { return c_.empty() ? 0 : c_.back(); }
  Elem operator[](std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
  Elem eval(Elem x) const;
  Poly monic() const;
  Poly derivative() const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator%(const Poly& o) const;
  Poly operator/(const Poly& o) const;
  bool operator==(const Poly& o) const { return c_ == o.c_; }
  bool operator!=(const Poly& o) const { return c_ != o.c_; }

 private:
  void trim();
  Field f_;
  std::vector<Elem> c_;
};

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
Poly gcd(const Poly& a, const Poly& b);
Poly powmod(const Poly& base, std::uint64_t e, const Poly& mod);

struct PolyFactor {
  Poly factor;  // monic irreducible
  unsigned multiplicity;
};

// Complete factorization of f; factors are monic and sorted by (degree, coeffs).
// The leading coefficient of f is dropped.
std::vector<PolyFactor> poly_factor(const Poly& f, std::uint64_t seed = 0);

// Minimal polynomial of the linear map m (square) applied to vector v.
Poly minimal_polynomial(const Matrix& m);

}  // namespace bk
