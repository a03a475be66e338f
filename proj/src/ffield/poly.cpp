#include <algorithm>
#include <random>

#include "brauerkit/ffield.hpp"

namespace bk {

Poly::Poly(Field f, std::vector<Elem> c) : f_(std::move(f)), c_(std::move(c)) { trim(); }

Poly Poly::x(Field f) { return Poly(std::move(f), {0, 1}); }

Poly Poly::constant(Field f, Elem c) { return Poly(std::move(f), {c}); }

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Elem Poly::eval(Elem x) const {
  Elem acc = 0;
  for (std::size_t i = c_.size(); i-- > 0;) acc = f_.add(f_.mul(acc, x), c_[i]);
  return acc;
}

Poly Poly::monic() const {
  if (c_.empty()) return *this;
  Poly r = *this;
  f_.scale(r.c_, f_.inv(lead()));
  return r;
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return Poly(f_);
  std::vector<Elem> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = f_.mul(f_.from_int(static_cast<std::int64_t>(i)), c_[i]);
  return Poly(f_, std::move(d));
}

Poly Poly::operator+(const Poly& o) const {
  std::vector<Elem> r(std::max(c_.size(), o.c_.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = f_.add((*this)[i], o[i]);
  return Poly(f_, std::move(r));
}

Poly Poly::operator-(const Poly& o) const {
  std::vector<Elem> r(std::max(c_.size(), o.c_.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = f_.sub((*this)[i], o[i]);
  return Poly(f_, std::move(r));
}

Poly Poly::operator*(const Poly& o) const {
  if (c_.empty() || o.c_.empty()) return Poly(f_);
  std::vector<Elem> r(c_.size() + o.c_.size() - 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (!c_[i]) continue;
    f_.axpy(std::span<Elem>(r.data() + i, o.c_.size()), c_[i], o.c_);
  }
  return Poly(f_, std::move(r));
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw std::invalid_argument("polynomial division by zero");
  const Field& f = a.field();
  std::vector<Elem> r = a.coeffs();
  const auto& bc = b.coeffs();
  const std::size_t db = bc.size() - 1;
  if (r.size() <= db) return {Poly(f), a};
  std::vector<Elem> q(r.size() - db, 0);
  Elem inv_lead = f.inv(b.lead());
  for (std::size_t k = r.size(); k-- > db;) {
    Elem c = f.mul(r[k], inv_lead);
    if (!c) continue;
    q[k - db] = c;
    f.axpy(std::span<Elem>(r.data() + (k - db), db + 1), f.neg(c), bc);
  }
  r.resize(db);
  return {Poly(f, std::move(q)), Poly(f, std::move(r))};
}

Poly Poly::operator%(const Poly& o) const { return divmod(*this, o).second; }
Poly Poly::operator/(const Poly& o) const { return divmod(*this, o).first; }

Poly gcd(const Poly& a, const Poly& b) {
  Poly x = a, y = b;
  while (!y.is_zero()) {
    Poly r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

Poly powmod(const Poly& base, std::uint64_t e, const Poly& mod) {
  Poly r = Poly::constant(base.field(), 1) % mod;
  Poly b = base % mod;
  while (e) {
    if (e & 1) r = (r * b) % mod;
    b = (b * b) % mod;
    e >>= 1;
  }
  return r;
}

namespace {

bool poly_less(const Poly& a, const Poly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (std::size_t i = a.coeffs().size(); i-- > 0;)
    if (a.coeffs()[i] != b.coeffs()[i]) return a.coeffs()[i] < b.coeffs()[i];
  return false;
}

bool is_one(const Poly& p) { return p.degree() == 0 && p.lead() == 1; }

// f = g(x^p): return g with coefficients replaced by their p-th roots.
Poly pth_root(const Poly& f) {
  const Field& fd = f.field();
  const std::uint64_t root_exp = static_cast<std::uint64_t>(fd.q()) / fd.p();
  std::vector<Elem> g;
  for (std::size_t i = 0; i < f.coeffs().size(); i += fd.p()) g.push_back(fd.pow(f.coeffs()[i], root_exp));
  return Poly(fd, std::move(g));
}

void squarefree(const Poly& f, unsigned mult, std::vector<std::pair<Poly, unsigned>>& out) {
  if (f.degree() <= 0) return;
  Poly d = f.derivative();
  if (d.is_zero()) {
    squarefree(pth_root(f), mult * f.field().p(), out);
    return;
  }
  Poly c = gcd(f, d);
  Poly w = f / c;
  unsigned i = 1;
  while (!is_one(w)) {
    Poly y = gcd(w, c);
    Poly fac = (w / y).monic();
    if (fac.degree() > 0) out.emplace_back(fac, i * mult);
    w = y;
    c = c / y;
    ++i;
  }
  c = c.monic();
  if (c.degree() > 0) squarefree(pth_root(c), mult * f.field().p(), out);
}

// Frobenius x -> x^q on residues modulo g.
Poly frob(const Poly& a, const Poly& g) { return powmod(a, a.field().q(), g); }

void equal_degree(const Poly& f, unsigned d, std::mt19937_64& rng, std::vector<Poly>& out) {
  if (f.degree() == static_cast<int>(d)) {
    out.push_back(f.monic());
    return;
  }
  const Field& fd = f.field();
  const std::size_t n = static_cast<std::size_t>(f.degree());
  for (;;) {
    std::vector<Elem> ac(n);
    for (auto& c : ac) c = static_cast<Elem>(rng() % fd.q());
    Poly a(fd, ac);
    if (a.degree() <= 0) continue;
    Poly t(fd);
    if (fd.p() == 2) {
      // absolute trace: sum of a^(2^i) for i < n_field * d
      const unsigned m = fd.n() * d;
      Poly s = a % f;
      t = s;
      for (unsigned i = 1; i < m; ++i) {
        s = (s * s) % f;
        t = t + s;
      }
    } else {
      // a^((q^d - 1)/2) = (a^(1+q+...+q^(d-1)))^((q-1)/2)
      Poly b = a % f, acc = a % f;
      for (unsigned i = 1; i < d; ++i) {
        b = frob(b, f);
        acc = (acc * b) % f;
      }
      t = powmod(acc, (fd.q() - 1) / 2, f) - Poly::constant(fd, 1);
    }
    Poly g = gcd(f, t);
    if (g.degree() > 0 && g.degree() < f.degree()) {
      equal_degree(g, d, rng, out);
      equal_degree(f / g, d, rng, out);
      return;
    }
  }
}

}  // namespace

std::vector<PolyFactor> poly_factor(const Poly& f, std::uint64_t seed) {
  if (f.is_zero()) throw std::invalid_argument("factorization of the zero polynomial");
  std::mt19937_64 rng(seed);
  std::vector<std::pair<Poly, unsigned>> sqf;
  squarefree(f.monic(), 1, sqf);
  std::vector<PolyFactor> result;
  for (auto& [g0, mult] : sqf) {
    Poly g = g0;
    Poly h = Poly::x(f.field()) % g;
    const Poly x = Poly::x(f.field());
    for (unsigned d = 1; g.degree() >= static_cast<int>(2 * d); ++d) {
      h = frob(h, g);
      Poly fac = gcd(g, h - x);
      if (fac.degree() > 0) {
        std::vector<Poly> parts;
        equal_degree(fac, d, rng, parts);
        for (auto& p : parts) result.push_back({p, mult});
        g = g / fac;
        h = h % g;
      }
    }
    if (g.degree() > 0) result.push_back({g.monic(), mult});
  }
  // merge equal factors arising from different square-free layers
  std::sort(result.begin(), result.end(), [](const PolyFactor& a, const PolyFactor& b) {
    if (a.factor != b.factor) return poly_less(a.factor, b.factor);
    return a.multiplicity < b.multiplicity;
  });
  std::vector<PolyFactor> merged;
  for (auto& pf : result) {
    if (!merged.empty() && merged.back().factor == pf.factor)
      merged.back().multiplicity += pf.multiplicity;
    else
      merged.push_back(pf);
  }
  return merged;
}

Poly minimal_polynomial(const Matrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("minimal polynomial of non-square matrix");
  const Field& f = m.field();
  const std::size_t n = m.rows();
  // Krylov sequence of flattened powers; first dependency gives the polynomial.
  std::vector<Vec> powers;
  Matrix cur = Matrix::identity(f, n);
  for (std::size_t k = 0; k <= n; ++k) {
    powers.push_back(cur.data());
    Matrix cols = Matrix::from_cols(f, powers, n * n);
    auto null = nullspace(cols);
    if (null.rows() > 0) {
      // the nullspace is one-dimensional here; its vector has a nonzero last entry
      Vec c = null.row_vec(0);
      return Poly(f, c).monic();
    }
    cur = cur * m;
  }
  throw std::logic_error("minimal polynomial search exceeded the degree bound");
}

}  // namespace bk
