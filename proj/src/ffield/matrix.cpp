#include <algorithm>

#include "brauerkit/ffield.hpp"

namespace bk {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace

Matrix::Matrix(Field f, std::size_t rows, std::size_t cols)
    : f_(std::move(f)), r_(rows), c_(cols), a_(rows * cols, 0) {}

Matrix Matrix::identity(Field f, std::size_t n) {
  Matrix m(std::move(f), n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(Field f, const std::vector<Vec>& rows, std::size_t cols) {
  Matrix m(std::move(f), rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    require(rows[i].size() == cols, "row length mismatch");
    std::copy(rows[i].begin(), rows[i].end(), m.row(i).begin());
  }
  return m;
}

Matrix Matrix::from_cols(Field f, const std::vector<Vec>& cols, std::size_t rows) {
  Matrix m(std::move(f), rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    require(cols[j].size() == rows, "column length mismatch");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  }
  return m;
}

Vec Matrix::col_vec(std::size_t j) const {
  Vec v(r_);
  for (std::size_t i = 0; i < r_; ++i) v[i] = (*this)(i, j);
  return v;
}

Matrix Matrix::operator*(const Matrix& o) const {
  require(c_ == o.r_, "matrix product shape mismatch");
  Matrix out(f_, r_, o.c_);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t k = 0; k < c_; ++k) {
      Elem a = (*this)(i, k);
      if (a) f_.axpy(out.row(i), a, o.row(k));
    }
  return out;
}

Matrix Matrix::operator+(const Matrix& o) const {
  require(r_ == o.r_ && c_ == o.c_, "matrix sum shape mismatch");
  Matrix out = *this;
  for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = f_.add(a_[i], o.a_[i]);
  return out;
}

Matrix Matrix::operator-(const Matrix& o) const {
  require(r_ == o.r_ && c_ == o.c_, "matrix difference shape mismatch");
  Matrix out = *this;
  for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = f_.sub(a_[i], o.a_[i]);
  return out;
}

Matrix Matrix::scaled(Elem c) const {
  Matrix out = *this;
  f_.scale(out.a_, c);
  return out;
}

Matrix Matrix::transpose() const {
  Matrix out(f_, c_, r_);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < c_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

Vec Matrix::apply(std::span<const Elem> x) const {
  require(x.size() == c_, "matrix-vector shape mismatch");
  Vec y(r_, 0);
  for (std::size_t i = 0; i < r_; ++i) {
    Elem acc = 0;
    auto rw = row(i);
    for (std::size_t j = 0; j < c_; ++j)
      if (rw[j] && x[j]) acc = f_.add(acc, f_.mul(rw[j], x[j]));
    y[i] = acc;
  }
  return y;
}

bool Matrix::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](Elem e) { return e == 0; });
}

bool Matrix::operator==(const Matrix& o) const {
  return r_ == o.r_ && c_ == o.c_ && f_ == o.f_ && a_ == o.a_;
}

Matrix Matrix::select_rows(std::span<const std::size_t> idx) const {
  Matrix out(f_, idx.size(), c_);
  for (std::size_t i = 0; i < idx.size(); ++i) std::copy_n(row(idx[i]).begin(), c_, out.row(i).begin());
  return out;
}

Matrix Matrix::select_cols(std::span<const std::size_t> idx) const {
  Matrix out(f_, r_, idx.size());
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) out(i, j) = (*this)(i, idx[j]);
  return out;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  require(a.field() == b.field(), "kron field mismatch");
  const Field& f = a.field();
  Matrix out(f, a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      Elem x = a(i, j);
      if (!x) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = f.mul(x, b(k, l));
    }
  return out;
}

Matrix vstack(const Matrix& a, const Matrix& b) {
  require(a.cols() == b.cols(), "vstack shape mismatch");
  Matrix out(a.field(), a.rows() + b.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) std::copy_n(a.row(i).begin(), a.cols(), out.row(i).begin());
  for (std::size_t i = 0; i < b.rows(); ++i)
    std::copy_n(b.row(i).begin(), b.cols(), out.row(a.rows() + i).begin());
  return out;
}

Matrix hstack(const Matrix& a, const Matrix& b) {
  require(a.rows() == b.rows(), "hstack shape mismatch");
  Matrix out(a.field(), a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    std::copy_n(a.row(i).begin(), a.cols(), out.row(i).begin());
    std::copy_n(b.row(i).begin(), b.cols(), out.row(i).begin() + static_cast<std::ptrdiff_t>(a.cols()));
  }
  return out;
}

namespace {

// In-place reduction; returns pivot columns. Columns >= col_limit never pivot.
std::vector<std::size_t> reduce_in_place(Matrix& m, std::size_t col_limit) {
  const Field& f = m.field();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  std::vector<Elem> tmp(m.cols());
  for (std::size_t c = 0; c < col_limit && r < m.rows(); ++c) {
    std::size_t pr = r;
    while (pr < m.rows() && m(pr, c) == 0) ++pr;
    if (pr == m.rows()) continue;
    if (pr != r) std::swap_ranges(m.row(pr).begin(), m.row(pr).end(), m.row(r).begin());
    Elem inv = f.inv(m(r, c));
    if (inv != 1) f.scale(m.row(r), inv);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r) continue;
      Elem x = m(i, c);
      if (x) f.axpy(m.row(i), f.neg(x), m.row(r));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

Echelon rref(const Matrix& m) {
  Matrix w = m;
  auto piv = reduce_in_place(w, w.cols());
  std::vector<std::size_t> keep(piv.size());
  for (std::size_t i = 0; i < piv.size(); ++i) keep[i] = i;
  return {w.select_rows(keep), std::move(piv)};
}

std::size_t rank(const Matrix& m) {
  Matrix w = m;
  return reduce_in_place(w, w.cols()).size();
}

std::optional<Matrix> inverse(const Matrix& m) {
  require(m.rows() == m.cols(), "inverse of non-square matrix");
  const std::size_t n = m.rows();
  Matrix w = hstack(m, Matrix::identity(m.field(), n));
  auto piv = reduce_in_place(w, n);
  if (piv.size() != n) return std::nullopt;
  Matrix out(m.field(), n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = w(i, n + j);
  return out;
}

Matrix nullspace(const Matrix& m) {
  const Field& f = m.field();
  Matrix w = m;
  auto piv = reduce_in_place(w, w.cols());
  std::vector<bool> is_piv(m.cols(), false);
  for (auto c : piv) is_piv[c] = true;
  std::vector<Vec> basis;
  for (std::size_t fc = 0; fc < m.cols(); ++fc) {
    if (is_piv[fc]) continue;
    Vec v(m.cols(), 0);
    v[fc] = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = f.neg(w(i, fc));
    basis.push_back(std::move(v));
  }
  return Subspace::span(f, m.cols(), basis).basis();
}

std::optional<LinearSolution> solve_linear(const Matrix& a, const Matrix& b) {
  require(a.rows() == b.rows(), "solve_linear shape mismatch");
  require(a.field() == b.field(), "solve_linear field mismatch");
  const std::size_t c = a.cols();
  Matrix w = hstack(a, b);
  auto piv = reduce_in_place(w, c);
  // consistency: rows beyond the rank must vanish on the right-hand side
  for (std::size_t i = piv.size(); i < w.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j)
      if (w(i, c + j)) return std::nullopt;
  Matrix x(a.field(), c, b.cols());
  for (std::size_t i = 0; i < piv.size(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) x(piv[i], j) = w(i, c + j);
  return LinearSolution{std::move(x), Subspace::span(nullspace(a))};
}

// ---------------------------------------------------------------------------

Subspace::Subspace(Field f, std::size_t ambient) : basis_(std::move(f), 0, ambient) {}

Subspace::Subspace(Echelon e) : basis_(std::move(e.rref)), pivots_(std::move(e.pivots)) {}

Subspace Subspace::span(const Matrix& rows) { return Subspace(rref(rows)); }

Subspace Subspace::span(Field f, std::size_t ambient, const std::vector<Vec>& vecs) {
  return span(Matrix::from_rows(std::move(f), vecs, ambient));
}

Subspace Subspace::full(Field f, std::size_t ambient) {
  return Subspace(Echelon{Matrix::identity(f, ambient), [&] {
                            std::vector<std::size_t> p(ambient);
                            for (std::size_t i = 0; i < ambient; ++i) p[i] = i;
                            return p;
                          }()});
}

bool Subspace::contains(std::span<const Elem> v) const {
  require(v.size() == ambient(), "subspace membership ambient mismatch");
  const Field& f = field();
  Vec r(v.begin(), v.end());
  for (std::size_t i = 0; i < dim(); ++i) {
    Elem c = r[pivots_[i]];
    if (c) f.axpy(r, f.neg(c), basis_.row(i));
  }
  return std::all_of(r.begin(), r.end(), [](Elem e) { return e == 0; });
}

bool Subspace::contains(const Subspace& o) const {
  for (std::size_t i = 0; i < o.dim(); ++i)
    if (!contains(o.basis_.row(i))) return false;
  return true;
}

Vec Subspace::coords(std::span<const Elem> v) const {
  Vec c(dim());
  for (std::size_t i = 0; i < dim(); ++i) c[i] = v[pivots_[i]];
  return c;
}

Subspace Subspace::operator+(const Subspace& o) const {
  require(ambient() == o.ambient(), "subspace sum ambient mismatch");
  return span(vstack(basis_, o.basis_));
}

// Zassenhaus: reduce [[U, U], [V, 0]]; rows with zero left half span U ∩ V.
Subspace Subspace::intersect(const Subspace& o) const {
  require(ambient() == o.ambient(), "subspace intersection ambient mismatch");
  const std::size_t n = ambient();
  Matrix z(field(), dim() + o.dim(), 2 * n);
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = 0; j < n; ++j) z(i, j) = z(i, n + j) = basis_(i, j);
  for (std::size_t i = 0; i < o.dim(); ++i)
    for (std::size_t j = 0; j < n; ++j) z(dim() + i, j) = o.basis_(i, j);
  auto e = rref(z);
  std::vector<Vec> rows;
  for (std::size_t i = 0; i < e.pivots.size(); ++i) {
    if (e.pivots[i] < n) continue;
    Vec v(n);
    for (std::size_t j = 0; j < n; ++j) v[j] = e.rref(i, n + j);
    rows.push_back(std::move(v));
  }
  return span(field(), n, rows);
}

Subspace Subspace::image(const Matrix& m) const {
  require(m.cols() == ambient(), "subspace image shape mismatch");
  std::vector<Vec> rows;
  rows.reserve(dim());
  for (std::size_t i = 0; i < dim(); ++i) rows.push_back(m.apply(basis_.row(i)));
  return span(field(), m.rows(), rows);
}

bool Subspace::operator==(const Subspace& o) const { return basis_ == o.basis_; }

// ---------------------------------------------------------------------------

Vec EchelonBuilder::reduce(std::span<const Elem> v) const {
  Vec r(v.begin(), v.end());
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    Elem c = r[piv_[i]];
    if (c) f_.axpy(r, f_.neg(c), rows_[i]);
  }
  return r;
}

bool EchelonBuilder::independent(std::span<const Elem> v) const {
  Vec r = reduce(v);
  return std::any_of(r.begin(), r.end(), [](Elem e) { return e != 0; });
}

bool EchelonBuilder::add(std::span<const Elem> v) {
  require(v.size() == n_, "echelon builder ambient mismatch");
  Vec r = reduce(v);
  auto it = std::find_if(r.begin(), r.end(), [](Elem e) { return e != 0; });
  if (it == r.end()) return false;
  std::size_t p = static_cast<std::size_t>(it - r.begin());
  f_.scale(r, f_.inv(r[p]));
  rows_.push_back(std::move(r));
  piv_.push_back(p);
  return true;
}

Subspace EchelonBuilder::subspace() const { return Subspace::span(f_, n_, rows_); }

QuotientMap::QuotientMap(const Subspace& whole, const Subspace& sub)
    : complement_(whole.field(), 0, whole.ambient()), proj_(whole.field(), 0, whole.ambient()) {
  require(whole.contains(sub), "quotient by a non-subspace");
  const Field& f = whole.field();
  const std::size_t n = whole.ambient();
  EchelonBuilder eb(f, n);
  std::vector<Vec> b;
  for (std::size_t i = 0; i < sub.dim(); ++i) {
    eb.add(sub.basis().row(i));
    b.push_back(sub.vector(i));
  }
  std::vector<Vec> comp;
  for (std::size_t i = 0; i < whole.dim(); ++i) {
    if (eb.add(whole.basis().row(i))) {
      comp.push_back(whole.vector(i));
      b.push_back(whole.vector(i));
    }
  }
  complement_ = Matrix::from_rows(f, comp, n);
  const std::size_t w = whole.dim();
  // coordinates of the stacked basis in the canonical basis of W
  Matrix bw(f, w, w);
  for (std::size_t i = 0; i < w; ++i)
    for (std::size_t j = 0; j < w; ++j) bw(i, j) = b[i][whole.pivots()[j]];
  auto binv = inverse(bw);
  require(binv.has_value(), "quotient basis is singular");
  const std::size_t k = comp.size(), s = sub.dim();
  proj_ = Matrix(f, k, n);
  for (std::size_t jq = 0; jq < k; ++jq)
    for (std::size_t i = 0; i < w; ++i) proj_(jq, whole.pivots()[i]) = (*binv)(i, s + jq);
}

Vec QuotientMap::project(std::span<const Elem> v) const { return proj_.apply(v); }

}  // namespace bk
