#include "brauerkit/algebra.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace bk {

namespace detail {

struct AlgebraData {
  explicit AlgebraData(Field fld) : f(std::move(fld)) {}
  Field f;
  std::size_t d = 0;
  std::vector<std::vector<Term>> prod;
  Vec unit;
  std::vector<std::string> labels;
  bool commutative = true;
  std::optional<Vec> form;
};

}  // namespace detail

namespace {

void add_terms(const Field& f, Vec& r, Elem c, const std::vector<Term>& terms) {
  for (const Term& t : terms) r[t.index] = f.add(r[t.index], f.mul(c, t.coeff));
}

std::vector<Term> to_terms(std::span<const Elem> v) {
  std::vector<Term> t;
  for (std::size_t k = 0; k < v.size(); ++k)
    if (v[k]) t.push_back({static_cast<std::uint32_t>(k), v[k]});
  return t;
}

bool check_unit(const Algebra& a) {
  for (std::size_t j = 0; j < a.dim(); ++j) {
    Vec b = a.basis_vector(j);
    if (a.mul(a.unit(), b) != b || a.mul(b, a.unit()) != b) return false;
  }
  return true;
}

bool check_associative(const Algebra& a) {
  const std::size_t d = a.dim();
  const Field& f = a.field();
  std::size_t nnz = 0;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) nnz += a.product(i, j).size();
  const double avg = d ? static_cast<double>(nnz) / static_cast<double>(d * d) : 0.0;
  if (d <= 80 && static_cast<double>(d * d * d) * (avg * avg + 1) <= 6e7) {
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        const auto& ij = a.product(i, j);
        for (std::size_t k = 0; k < d; ++k) {
          Vec lhs(d, 0), rhs(d, 0);
          for (const Term& t : ij) add_terms(f, lhs, t.coeff, a.product(t.index, k));
          for (const Term& t : a.product(j, k)) add_terms(f, rhs, t.coeff, a.product(i, t.index));
          if (lhs != rhs) return false;
        }
      }
    return true;
  }
  // large dense tables: random trilinear probes
  std::mt19937_64 rng(0x5eed);
  auto rnd = [&] {
    Vec v(d);
    for (auto& x : v) x = static_cast<Elem>(rng() % f.q());
    return v;
  };
  for (int trial = 0; trial < 64; ++trial) {
    Vec x = rnd(), y = rnd(), z = rnd();
    if (a.mul(a.mul(x, y), z) != a.mul(x, a.mul(y, z))) return false;
  }
  return true;
}

Algebra trusted(Field f, std::size_t d, std::vector<std::vector<Term>> prod, Vec unit,
                std::vector<std::string> labels, std::optional<Vec> form = std::nullopt);

}  // namespace

// Construction path for the unchecked factories below.
struct AlgebraFactory {
  static Algebra build(std::shared_ptr<detail::AlgebraData> d) { return Algebra(std::move(d)); }
};

namespace {

Algebra trusted(Field f, std::size_t d, std::vector<std::vector<Term>> prod, Vec unit,
                std::vector<std::string> labels, std::optional<Vec> form) {
  auto data = std::make_shared<detail::AlgebraData>(std::move(f));
  data->d = d;
  data->prod = std::move(prod);
  data->unit = std::move(unit);
  if (labels.empty())
    for (std::size_t i = 0; i < d; ++i) labels.push_back("b" + std::to_string(i));
  data->labels = std::move(labels);
  data->form = std::move(form);
  for (std::size_t i = 0; i < d && data->commutative; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      const auto& x = data->prod[i * d + j];
      const auto& y = data->prod[j * d + i];
      if (x.size() != y.size() || !std::equal(x.begin(), x.end(), y.begin(), [](const Term& s, const Term& t) {
            return s.index == t.index && s.coeff == t.coeff;
          })) {
        data->commutative = false;
        break;
      }
    }
  return AlgebraFactory::build(std::move(data));
}

}  // namespace

Algebra Algebra::make(Field f, std::size_t d, std::vector<std::vector<Term>> products, Vec unit,
                      std::vector<std::string> labels) {
  if (products.size() != d * d) throw InputError("structure constant table has wrong size");
  if (unit.size() != d) throw InputError("unit vector has wrong length");
  if (!labels.empty() && labels.size() != d) throw InputError("label count mismatch");
  for (auto& terms : products) {
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.index < b.index; });
    for (const Term& t : terms)
      if (t.index >= d || t.coeff >= f.q() || t.coeff == 0) throw InputError("bad structure constant term");
  }
  for (Elem u : unit)
    if (u >= f.q()) throw InputError("unit entry out of range");
  Algebra a = trusted(std::move(f), d, std::move(products), std::move(unit), std::move(labels));
  if (!check_unit(a)) throw InputError("unit axioms fail");
  if (!check_associative(a)) throw InputError("structure constants are not associative");
  return a;
}

Algebra Algebra::from_dense(Field f, std::size_t d, const std::vector<Vec>& products, Vec unit,
                            std::vector<std::string> labels) {
  if (products.size() != d * d) throw InputError("structure constant table has wrong size");
  std::vector<std::vector<Term>> t;
  t.reserve(d * d);
  for (const auto& v : products) {
    if (v.size() != d) throw InputError("structure constant vector has wrong length");
    t.push_back(to_terms(v));
  }
  return make(std::move(f), d, std::move(t), std::move(unit), std::move(labels));
}

namespace {

Vec parse_vec(const std::string& s, std::size_t d, const Field& f) {
  std::string t = s;
  for (char& c : t)
    if (c == ',') c = ' ';
  std::istringstream in(t);
  Vec v;
  long long x;
  while (in >> x) {
    if (x < 0 || static_cast<unsigned long long>(x) >= f.q()) throw InputError("vector entry out of range");
    v.push_back(static_cast<Elem>(x));
  }
  if (!in.eof()) throw InputError("bad vector: " + s);
  if (v.size() != d) throw InputError("vector has wrong length: " + s);
  return v;
}

std::string format_vec(std::span<const Elem> v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(v[i]);
  }
  return s;
}

}  // namespace

Algebra Algebra::parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    lines.push_back(line.substr(b, line.find_last_not_of(" \t\r") - b + 1));
  }
  if (lines.empty() || lines[0].rfind("algebra", 0) != 0) throw InputError("algebra file must start with `algebra`");
  auto fpos = lines[0].find("field=");
  if (fpos == std::string::npos) throw InputError("algebra header lacks field=");
  auto dpos = lines[0].find("dim=");
  if (dpos == std::string::npos) throw InputError("algebra header lacks dim=");
  std::size_t d = std::stoul(lines[0].substr(dpos + 4));
  Field f = Field::parse(lines[0].substr(fpos + 6));
  if (lines.size() != d * d + 2) throw InputError("algebra file needs d*d product lines and a unit line");
  std::vector<Vec> prods;
  for (std::size_t i = 0; i < d * d; ++i) prods.push_back(parse_vec(lines[1 + i], d, f));
  const std::string& u = lines.back();
  if (u.rfind("unit=", 0) != 0) throw InputError("algebra file lacks unit= line");
  return from_dense(f, d, prods, parse_vec(u.substr(5), d, f));
}

std::string Algebra::serialize() const {
  std::string spec = field().spec();
  std::string s = "algebra dim=" + std::to_string(dim()) + " field=" + spec.substr(spec.find(' ') + 1) + "\n";
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = 0; j < dim(); ++j) {
      Vec v(dim(), 0);
      for (const Term& t : product(i, j)) v[t.index] = t.coeff;
      s += format_vec(v) + "\n";
    }
  return s + "unit=" + format_vec(unit()) + "\n";
}

const Field& Algebra::field() const { return d_->f; }
std::size_t Algebra::dim() const { return d_->d; }
const Vec& Algebra::unit() const { return d_->unit; }
const std::string& Algebra::label(std::size_t i) const { return d_->labels.at(i); }
const std::vector<Term>& Algebra::product(std::size_t i, std::size_t j) const { return d_->prod[i * d_->d + j]; }
bool Algebra::is_commutative() const { return d_->commutative; }
const std::optional<Vec>& Algebra::form() const { return d_->form; }

Algebra Algebra::with_form(Vec values) const {
  if (values.size() != dim()) throw InputError("form has wrong length");
  auto data = std::make_shared<detail::AlgebraData>(*d_);
  data->form = std::move(values);
  return Algebra(std::move(data));
}

Vec Algebra::basis_vector(std::size_t i) const {
  Vec v(dim(), 0);
  v.at(i) = 1;
  return v;
}

Vec Algebra::mul(std::span<const Elem> x, std::span<const Elem> y) const {
  const std::size_t d = dim();
  const Field& f = field();
  Vec r(d, 0);
  std::vector<std::size_t> ny;
  for (std::size_t j = 0; j < d; ++j)
    if (y[j]) ny.push_back(j);
  for (std::size_t i = 0; i < d; ++i) {
    if (!x[i]) continue;
    const auto* row = &d_->prod[i * d];
    for (std::size_t j : ny) add_terms(f, r, f.mul(x[i], y[j]), row[j]);
  }
  return r;
}

Vec Algebra::add(std::span<const Elem> x, std::span<const Elem> y) const {
  Vec r(x.begin(), x.end());
  field().axpy(r, 1, y);
  return r;
}

Vec Algebra::sub(std::span<const Elem> x, std::span<const Elem> y) const {
  Vec r(x.begin(), x.end());
  field().axpy(r, field().neg(1), y);
  return r;
}

Vec Algebra::scale(Elem c, std::span<const Elem> x) const {
  Vec r(x.begin(), x.end());
  field().scale(r, c);
  return r;
}

Vec Algebra::pow(std::span<const Elem> x, std::uint64_t e) const {
  Vec r = unit();
  Vec b(x.begin(), x.end());
  while (e) {
    if (e & 1) r = mul(r, b);
    e >>= 1;
    if (e) b = mul(b, b);
  }
  return r;
}

Matrix Algebra::left_matrix(std::span<const Elem> x) const {
  const std::size_t d = dim();
  const Field& f = field();
  Matrix m(f, d, d);
  for (std::size_t i = 0; i < d; ++i) {
    if (!x[i]) continue;
    for (std::size_t j = 0; j < d; ++j)
      for (const Term& t : product(i, j)) m(t.index, j) = f.add(m(t.index, j), f.mul(x[i], t.coeff));
  }
  return m;
}

Matrix Algebra::right_matrix(std::span<const Elem> x) const {
  const std::size_t d = dim();
  const Field& f = field();
  Matrix m(f, d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      if (!x[j]) continue;
      for (const Term& t : product(i, j)) m(t.index, i) = f.add(m(t.index, i), f.mul(x[j], t.coeff));
    }
  return m;
}

bool Algebra::is_idempotent(std::span<const Elem> e) const {
  return mul(e, e) == Vec(e.begin(), e.end());
}

std::optional<Vec> Algebra::inverse(std::span<const Elem> x) const {
  // x y = 1 in a finite-dimensional algebra forces y x = 1
  Matrix l = left_matrix(x);
  Matrix rhs = Matrix::from_cols(field(), {unit()}, dim());
  auto sol = solve_linear(l, rhs);
  if (!sol) return std::nullopt;
  return sol->x.col_vec(0);
}

// ---------------------------------------------------------------------------

Algebra group_algebra(const Group& g, const Field& f) {
  const std::size_t n = g.order();
  std::vector<std::vector<Term>> prod(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      prod[a * n + b] = {{static_cast<std::uint32_t>(g.mul(static_cast<int>(a), static_cast<int>(b))), 1}};
  Vec unit(n, 0);
  unit[0] = 1;
  std::vector<std::string> labels;
  for (std::size_t a = 0; a < n; ++a) labels.push_back(g.label(static_cast<int>(a)));
  Vec form(n, 0);
  form[0] = 1;
  return trusted(f, n, std::move(prod), unit, std::move(labels), form);
}

Algebra matrix_algebra(const Field& f, std::size_t n) {
  const std::size_t d = n * n;
  std::vector<std::vector<Term>> prod(d * d);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t l = 0; l < n; ++l) prod[(i * n + j) * d + (j * n + l)] = {{static_cast<std::uint32_t>(i * n + l), 1}};
  Vec unit(d, 0);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) {
    unit[i * n + i] = 1;
    for (std::size_t j = 0; j < n; ++j) labels.push_back("E" + std::to_string(i + 1) + "," + std::to_string(j + 1));
  }
  // trace form
  Vec form(d, 0);
  for (std::size_t i = 0; i < n; ++i) form[i * n + i] = 1;
  return trusted(f, d, std::move(prod), unit, std::move(labels), form);
}

Vec tensor_elem(const Field& f, std::span<const Elem> x, std::span<const Elem> y) {
  Vec r(x.size() * y.size(), 0);
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i]) f.axpy(std::span<Elem>(r.data() + i * y.size(), y.size()), x[i], y);
  return r;
}

Algebra tensor(const Algebra& a, const Algebra& b) {
  if (a.field() != b.field()) throw InputError("tensor of algebras over different fields");
  const Field& f = a.field();
  const std::size_t da = a.dim(), db = b.dim(), d = da * db;
  std::vector<std::vector<Term>> prod(d * d);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t k = 0; k < da; ++k) {
      const auto& ta = a.product(i, k);
      if (ta.empty()) continue;
      for (std::size_t j = 0; j < db; ++j)
        for (std::size_t l = 0; l < db; ++l) {
          const auto& tb = b.product(j, l);
          auto& out = prod[(i * db + j) * d + (k * db + l)];
          out.reserve(ta.size() * tb.size());
          for (const Term& s : ta)
            for (const Term& t : tb)
              out.push_back({static_cast<std::uint32_t>(s.index * db + t.index), f.mul(s.coeff, t.coeff)});
        }
    }
  Vec unit(d, 0);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < db; ++j) unit[i * db + j] = f.mul(a.unit()[i], b.unit()[j]);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < db; ++j) labels.push_back(a.label(i) + "⊗" + b.label(j));
  std::optional<Vec> form;
  if (a.form() && b.form()) {
    form = Vec(d, 0);
    for (std::size_t i = 0; i < da; ++i)
      for (std::size_t j = 0; j < db; ++j) (*form)[i * db + j] = f.mul((*a.form())[i], (*b.form())[j]);
  }
  return trusted(f, d, std::move(prod), unit, std::move(labels), form);
}

Algebra opposite(const Algebra& a) {
  const std::size_t d = a.dim();
  std::vector<std::vector<Term>> prod(d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) prod[i * d + j] = a.product(j, i);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < d; ++i) labels.push_back(a.label(i));
  return trusted(a.field(), d, std::move(prod), a.unit(), std::move(labels), a.form());
}

Matrix as_matrix(const Field& f, std::span<const Elem> x, std::size_t n) {
  if (x.size() != n * n) throw InputError("element is not in a matrix algebra of this size");
  Matrix m(f, n, n);
  for (std::size_t i = 0; i < n * n; ++i) m(i / n, i % n) = x[i];
  return m;
}

// ---------------------------------------------------------------------------

Subalgebra subalgebra(const Algebra& a, const Subspace& w, std::span<const Elem> unit) {
  const std::size_t m = w.dim();
  if (!w.contains(unit)) throw PreconditionError("subalgebra does not contain its unit");
  std::vector<Vec> basis;
  for (std::size_t i = 0; i < m; ++i) basis.push_back(w.vector(i));
  std::vector<std::vector<Term>> prod(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      Vec p = a.mul(basis[i], basis[j]);
      if (!w.contains(p)) throw PreconditionError("subspace is not closed under multiplication");
      prod[i * m + j] = to_terms(w.coords(p));
    }
  Matrix inc = Matrix::from_cols(a.field(), basis, a.dim());
  std::optional<Vec> form;
  if (a.form()) {
    form = Vec(m, 0);
    for (std::size_t i = 0; i < m; ++i) {
      Elem s = 0;
      for (std::size_t k = 0; k < a.dim(); ++k) s = a.field().add(s, a.field().mul(basis[i][k], (*a.form())[k]));
      (*form)[i] = s;
    }
  }
  Algebra sub = trusted(a.field(), m, std::move(prod), w.coords(unit), {}, form);
  return Subalgebra{sub, inc};
}

Subalgebra corner(const Algebra& a, std::span<const Elem> e) {
  if (!a.is_idempotent(e)) throw InputError("corner of a non-idempotent");
  Matrix both = a.left_matrix(e) * a.right_matrix(e);
  return subalgebra(a, Subspace::span(both.transpose()), e);
}

QuotientAlgebra quotient(const Algebra& a, const Subspace& ideal) {
  const Field& f = a.field();
  QuotientMap qm(Subspace::full(f, a.dim()), ideal);
  const std::size_t m = qm.dim();
  std::vector<Vec> lifts;
  for (std::size_t i = 0; i < m; ++i) lifts.push_back(qm.complement().row_vec(i));
  std::vector<std::vector<Term>> prod(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) prod[i * m + j] = to_terms(qm.project(a.mul(lifts[i], lifts[j])));
  Algebra q = trusted(f, m, std::move(prod), qm.project(a.unit()), {});
  return QuotientAlgebra{q, qm.projection(), Matrix::from_cols(f, lifts, a.dim())};
}

// ---------------------------------------------------------------------------

bool is_multiplicative(const AlgebraHom& h) {
  const std::size_t d = h.source.dim();
  std::vector<Vec> img;
  for (std::size_t i = 0; i < d; ++i) img.push_back(h.map.col_vec(i));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      Vec lhs(h.target.dim(), 0);
      for (const Term& t : h.source.product(i, j)) h.target.field().axpy(lhs, t.coeff, img[t.index]);
      if (lhs != h.target.mul(img[i], img[j])) return false;
    }
  return h.target.is_idempotent(h.image_of_unit());
}

AlgebraHom make_hom(Algebra source, Algebra target, Matrix map) {
  if (source.field() != target.field()) throw InputError("homomorphism between algebras over different fields");
  if (map.rows() != target.dim() || map.cols() != source.dim()) throw InputError("homomorphism matrix has wrong shape");
  AlgebraHom h{std::move(source), std::move(target), std::move(map)};
  if (!is_multiplicative(h)) throw InputError("map is not an algebra homomorphism");
  return h;
}

AlgebraHom compose(const AlgebraHom& g, const AlgebraHom& f) {
  if (f.target.dim() != g.source.dim()) throw InputError("composition shape mismatch");
  return AlgebraHom{f.source, g.target, g.map * f.map};
}

bool is_embedding(const AlgebraHom& h) {
  if (rank(h.map) != h.source.dim()) return false;
  Subspace img = Subspace::span(h.map.transpose());
  Vec e = h.image_of_unit();
  Matrix both = h.target.left_matrix(e) * h.target.right_matrix(e);
  return img == Subspace::span(both.transpose());
}

// ---------------------------------------------------------------------------

Subspace commutant(const Algebra& a, const Subspace& w, const std::vector<Vec>& xs) {
  const Field& f = a.field();
  Matrix cur = w.basis();  // rows
  for (const Vec& x : xs) {
    if (cur.rows() == 0) break;
    Matrix diff = a.left_matrix(x) - a.right_matrix(x);  // z -> x z - z x
    Matrix img = diff * cur.transpose();                 // columns: images of current basis
    Matrix null = nullspace(img);
    cur = null * cur;
  }
  return Subspace::span(cur.rows() ? cur : Matrix(f, 0, a.dim()));
}

Subspace center(const Algebra& a) {
  std::vector<Vec> xs;
  for (std::size_t i = 0; i < a.dim(); ++i) xs.push_back(a.basis_vector(i));
  return commutant(a, Subspace::full(a.field(), a.dim()), xs);
}

Subspace product_space(const Algebra& a, const Subspace& u, const Subspace& v) {
  EchelonBuilder eb(a.field(), a.dim());
  for (std::size_t i = 0; i < u.dim(); ++i) {
    Vec x = u.vector(i);
    for (std::size_t j = 0; j < v.dim() && eb.rank() < a.dim(); ++j) eb.add(a.mul(x, v.basis().row(j)));
  }
  return eb.subspace();
}

Subspace generated_subalgebra(const Algebra& a, const std::vector<Vec>& gens) {
  EchelonBuilder eb(a.field(), a.dim());
  std::vector<Vec> frontier;
  if (eb.add(a.unit())) frontier.push_back(a.unit());
  for (const Vec& g : gens)
    if (eb.add(g)) frontier.push_back(g);
  std::vector<Matrix> right;
  for (const Vec& g : gens) right.push_back(a.right_matrix(g));
  while (!frontier.empty()) {
    std::vector<Vec> next;
    for (const Vec& x : frontier)
      for (const Matrix& r : right) {
        Vec y = r.apply(x);
        if (eb.add(y)) next.push_back(std::move(y));
      }
    frontier = std::move(next);
  }
  return eb.subspace();
}

bool is_ideal(const Algebra& a, const Subspace& w) {
  for (std::size_t i = 0; i < w.dim(); ++i) {
    Vec x = w.vector(i);
    for (std::size_t j = 0; j < a.dim(); ++j) {
      Vec b = a.basis_vector(j);
      if (!w.contains(a.mul(x, b)) || !w.contains(a.mul(b, x))) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------

Elem SymmetricForm::operator()(std::span<const Elem> x) const {
  Elem r = 0;
  for (std::size_t i = 0; i < x.size(); ++i) r = field.add(r, field.mul(x[i], values[i]));
  return r;
}

bool is_symmetric(const Algebra& a, const SymmetricForm& s) {
  const Field& f = a.field();
  auto val = [&](const std::vector<Term>& t) {
    Elem r = 0;
    for (const Term& x : t) r = f.add(r, f.mul(x.coeff, s.values[x.index]));
    return r;
  };
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = i + 1; j < a.dim(); ++j)
      if (val(a.product(i, j)) != val(a.product(j, i))) return false;
  return true;
}

Matrix gram_matrix(const Algebra& a, const SymmetricForm& s) {
  const Field& f = a.field();
  Matrix g(f, a.dim(), a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) {
      Elem r = 0;
      for (const Term& x : a.product(i, j)) r = f.add(r, f.mul(x.coeff, s.values[x.index]));
      g(i, j) = r;
    }
  return g;
}

bool is_nondegenerate(const Algebra& a, const SymmetricForm& s) { return rank(gram_matrix(a, s)) == a.dim(); }

}  // namespace bk
