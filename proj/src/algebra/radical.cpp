#include <algorithm>

#include "brauerkit/algebra.hpp"

namespace bk {

namespace {

using Wide = std::uint64_t;

// Dense integer matrix product modulo m. Entries stay below m < 2^16 and
// D <= 2^16, so the row sums fit in 64 bits before reduction.
std::vector<Wide> mul_mod(const std::vector<Wide>& x, const std::vector<Wide>& y, std::size_t n, Wide m) {
  std::vector<Wide> r(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    Wide* ri = r.data() + i * n;
    for (std::size_t k = 0; k < n; ++k) {
      const Wide a = x[i * n + k];
      if (!a) continue;
      const Wide* yk = y.data() + k * n;
      for (std::size_t j = 0; j < n; ++j) ri[j] += a * yk[j];
    }
    for (std::size_t j = 0; j < n; ++j) ri[j] %= m;
  }
  return r;
}

struct PrimeView {
  Field f;
  std::uint32_t p;
  unsigned n;
  std::vector<Elem> omega;  // x^t as field elements, t < n

  explicit PrimeView(const Field& fld) : f(fld), p(fld.p()), n(fld.n()) {
    Elem e = 1;
    for (unsigned t = 0; t < n; ++t) {
      omega.push_back(e);
      e *= p;
    }
  }
  unsigned digit(Elem e, unsigned s) const {
    for (unsigned i = 0; i < s; ++i) e /= p;
    return e % p;
  }
};

// Tr(X^(p^l)) / p^l mod p for the integer lift X of the prime-field regular
// representation of y.
unsigned trace_sequence_value(const Algebra& a, const PrimeView& pv, std::span<const Elem> y, unsigned l) {
  const std::size_t d = a.dim(), n = pv.n, big = d * n;
  Matrix lm = a.left_matrix(y);
  Wide mod = 1;
  for (unsigned i = 0; i <= l; ++i) mod *= pv.p;
  std::vector<Wide> x(big * big, 0);
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t j = 0; j < d; ++j) {
      const Elem c = lm(k, j);
      if (!c) continue;
      for (unsigned t = 0; t < n; ++t) {
        Elem v = pv.f.mul(c, pv.omega[t]);
        for (unsigned s = 0; s < n; ++s, v /= pv.p) x[(k * n + s) * big + j * n + t] = v % pv.p;
      }
    }
  for (unsigned step = 0; step < l; ++step) {
    // x <- x^p
    std::vector<Wide> r = x, base = x;
    for (unsigned e = pv.p - 1; e; e >>= 1) {
      if (e & 1) r = mul_mod(r, base, big, mod);
      if (e > 1) base = mul_mod(base, base, big, mod);
    }
    x = std::move(r);
  }
  Wide tr = 0;
  for (std::size_t i = 0; i < big; ++i) tr = (tr + x[i * big + i]) % mod;
  const Wide pl = mod / pv.p;
  if (tr % pl != 0) throw std::logic_error("trace sequence value not divisible by p^l");
  return static_cast<unsigned>((tr / pl) % pv.p);
}

bool is_nilpotent_ideal(const Algebra& a, const Subspace& ideal) {
  Subspace cur = ideal;
  for (std::size_t step = 0; step <= a.dim(); ++step) {
    if (cur.dim() == 0) return true;
    Subspace next = product_space(a, cur, ideal);
    if (next.dim() == cur.dim()) return false;
    cur = std::move(next);
  }
  return cur.dim() == 0;
}

Subspace commutative_radical(const Algebra& a) {
  const Field& f = a.field();
  const std::size_t d = a.dim();
  std::vector<Vec> cols;
  for (std::size_t j = 0; j < d; ++j) cols.push_back(a.pow(a.basis_vector(j), f.q()));
  Matrix frob = Matrix::from_cols(f, cols, d);
  // x -> x^(q^m) kills exactly the nilpotents once q^m >= d
  Matrix power = frob;
  for (std::uint64_t reach = f.q(); reach < d; reach *= f.q()) power = power * frob;
  Matrix null = nullspace(power);
  return null.rows() ? Subspace::span(null) : Subspace(f, d);
}

}  // namespace

Subspace radical(const Algebra& a) {
  const Field& f = a.field();
  const std::size_t d = a.dim();
  if (d == 0) return Subspace(f, 0);
  if (a.is_commutative()) return commutative_radical(a);
  const PrimeView pv(f);
  const Field fp = Field::prime(pv.p);
  const std::size_t n = pv.n, big = d * n;
  Subspace ideal = Subspace::full(f, d);
  std::uint64_t pl = 1;
  for (unsigned l = 0; pl <= big; ++l, pl *= pv.p) {
    const std::size_t r = ideal.dim();
    if (r == 0) break;
    // every level contains the radical, so a nilpotent level is the radical
    if (l > 0 && !ideal.contains(a.unit()) && is_nilpotent_ideal(a, ideal)) break;
    std::vector<Vec> v;
    for (std::size_t i = 0; i < r; ++i) v.push_back(ideal.vector(i));
    // the level functional is prime-field linear on the previous level, so it
    // is enough to know it on a prime-field basis of that level
    std::vector<unsigned> g(r * n);
    for (std::size_t i = 0; i < r; ++i)
      for (unsigned t = 0; t < n; ++t) g[i * n + t] = trace_sequence_value(a, pv, a.scale(pv.omega[t], v[i]), l);
    auto value = [&](std::span<const Elem> coords, Elem factor) {
      unsigned s = 0;
      for (std::size_t m = 0; m < r; ++m) {
        Elem c = f.mul(factor, coords[m]);
        for (unsigned tau = 0; tau < n && c; ++tau, c /= pv.p) s = (s + (c % pv.p) * g[m * n + tau]) % pv.p;
      }
      return static_cast<Elem>(s);
    };
    Matrix eqs(fp, d * n, r * n);
    for (std::size_t i = 0; i < r; ++i) {
      Matrix lv = a.left_matrix(v[i]);
      for (std::size_t j = 0; j < d; ++j) {
        Vec coords = ideal.coords(lv.col_vec(j));
        for (unsigned t = 0; t < n; ++t)
          for (unsigned s = 0; s < n; ++s)
            eqs(j * n + s, i * n + t) = value(coords, f.mul(pv.omega[t], pv.omega[s]));
      }
    }
    Matrix null = nullspace(eqs);
    std::vector<Vec> next;
    for (std::size_t k = 0; k < null.rows(); ++k) {
      Vec x(d, 0);
      for (std::size_t i = 0; i < r; ++i)
        for (unsigned t = 0; t < n; ++t)
          if (Elem c = null(k, i * n + t)) f.axpy(x, f.mul(c, pv.omega[t]), v[i]);
      next.push_back(std::move(x));
    }
    ideal = Subspace::span(f, d, next);
    if (ideal.dim() * n != null.rows()) throw std::logic_error("trace sequence level is not a subspace over the field");
  }
  return ideal;
}

Poly element_minimal_polynomial(const Algebra& a, std::span<const Elem> x) {
  return element_minimal_polynomial(a, x, a.unit());
}

Poly element_minimal_polynomial(const Algebra& a, std::span<const Elem> x, std::span<const Elem> unit) {
  const Field& f = a.field();
  EchelonBuilder eb(f, a.dim());
  std::vector<Vec> powers;
  Vec cur(unit.begin(), unit.end());
  Matrix lx = a.left_matrix(x);
  while (eb.add(cur)) {
    powers.push_back(cur);
    cur = lx.apply(cur);
  }
  const std::size_t k = powers.size();
  std::vector<Elem> coeffs(k + 1, 0);
  coeffs[k] = 1;
  if (k > 0) {
    auto sol = solve_linear(Matrix::from_cols(f, powers, a.dim()), Matrix::from_cols(f, {cur}, a.dim()));
    if (!sol) throw std::logic_error("dependent power not in the span of lower powers");
    for (std::size_t i = 0; i < k; ++i) coeffs[i] = f.neg(sol->x(i, 0));
  }
  return Poly(f, coeffs);
}

Vec lift_idempotent(const Algebra& a, Vec e) {
  const Field& f = a.field();
  const Elem three = f.from_int(3), two = f.from_int(2);
  for (int iter = 0; iter < 64; ++iter) {
    Vec e2 = a.mul(e, e);
    if (e2 == e) return e;
    Vec e3 = a.mul(e2, e);
    Vec next = a.scale(three, e2);
    f.axpy(next, f.neg(two), e3);
    e = std::move(next);
  }
  throw std::logic_error("idempotent lifting did not converge");
}

std::vector<Vec> berlekamp_idempotents(const Algebra& a, const Subspace& w, std::span<const Elem> unit) {
  const Field& f = a.field();
  const std::size_t m = w.dim();
  if (m == 0) return {};
  Matrix phi(f, m, m);
  for (std::size_t k = 0; k < m; ++k) {
    Vec c = w.coords(a.pow(w.vector(k), f.q()));
    for (std::size_t i = 0; i < m; ++i) phi(i, k) = c[i];
  }
  Matrix fixed = nullspace(phi - Matrix::identity(f, m));
  std::vector<Vec> idems{Vec(unit.begin(), unit.end())};
  for (std::size_t r = 0; r < fixed.rows(); ++r) {
    Vec y(a.dim(), 0);
    for (std::size_t k = 0; k < m; ++k)
      if (fixed(r, k)) f.axpy(y, fixed(r, k), w.basis().row(k));
    std::vector<Vec> next;
    for (const Vec& eps : idems) {
      Vec z = a.mul(eps, y);
      Poly mp = element_minimal_polynomial(a, z, eps);
      std::vector<Elem> roots;
      for (const auto& pf : poly_factor(mp)) {
        if (pf.factor.degree() != 1 || pf.multiplicity != 1)
          throw std::logic_error("Berlekamp element is not split semisimple");
        roots.push_back(f.neg(pf.factor.coeffs()[0]));
      }
      if (roots.size() == 1) {
        next.push_back(eps);
        continue;
      }
      for (Elem lam : roots) {
        Vec acc = eps;
        for (Elem mu : roots) {
          if (mu == lam) continue;
          Vec factor = z;
          f.axpy(factor, f.neg(mu), eps);
          acc = a.scale(f.inv(f.sub(lam, mu)), a.mul(acc, factor));
        }
        next.push_back(std::move(acc));
      }
    }
    idems = std::move(next);
  }
  std::sort(idems.begin(), idems.end());
  return idems;
}

std::vector<Vec> central_primitive_idempotents(const Algebra& a) {
  if (a.dim() == 0) return {};
  return berlekamp_idempotents(a, center(a), a.unit());
}

}  // namespace bk
