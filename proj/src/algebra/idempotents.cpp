#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "brauerkit/algebra.hpp"

namespace bk {

namespace {

std::size_t isqrt(std::size_t v) {
  auto r = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(v))));
  while (r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r;
}

Vec random_vec(const Field& f, std::size_t d, std::mt19937_64& rng) {
  Vec v(d);
  for (auto& x : v) x = static_cast<Elem>(rng() % f.q());
  return v;
}

std::size_t corner_dim(const Algebra& a, std::span<const Elem> e) {
  return rank(a.left_matrix(e) * a.right_matrix(e));
}

// Primitive idempotents of the semisimple top, grouped by Wedderburn block.
std::vector<std::vector<Vec>> top_primitives(const Semisimple& ss, std::uint64_t seed) {
  const Algebra& top = ss.top.alg;
  std::mt19937_64 rng(seed);
  std::vector<std::vector<Vec>> out(ss.blocks.size());
  for (std::size_t b = 0; b < ss.blocks.size(); ++b) {
    const Vec& c = ss.blocks[b];
    if (ss.deg[b] == 1) {
      out[b].push_back(c);
      continue;
    }
    std::vector<Vec> stack{c};
    while (!stack.empty()) {
      Vec eps = std::move(stack.back());
      stack.pop_back();
      if (corner_dim(top, eps) == ss.ext[b]) {
        out[b].push_back(std::move(eps));
        continue;
      }
      bool split = false;
      for (int attempt = 0; attempt < 1000 && !split; ++attempt) {
        Vec x = top.mul(top.mul(eps, random_vec(top.field(), top.dim(), rng)), eps);
        // the commutative algebra generated by the block's centre and x
        std::vector<Vec> gens;
        for (std::size_t k = 0; k < ss.top_center.dim(); ++k) gens.push_back(top.mul(eps, ss.top_center.vector(k)));
        EchelonBuilder eb(top.field(), top.dim());
        std::vector<Vec> frontier;
        for (auto& g : gens)
          if (eb.add(g)) frontier.push_back(g);
        Matrix rx = top.right_matrix(x);
        while (!frontier.empty()) {
          std::vector<Vec> next;
          for (auto& y : frontier) {
            Vec z = rx.apply(y);
            if (eb.add(z)) next.push_back(std::move(z));
          }
          frontier = std::move(next);
        }
        auto parts = berlekamp_idempotents(top, eb.subspace(), eps);
        if (parts.size() > 1) {
          for (auto& p : parts) stack.push_back(std::move(p));
          split = true;
        }
      }
      if (!split) throw std::logic_error("failed to split a simple component");
    }
    std::sort(out[b].begin(), out[b].end());
  }
  return out;
}

}  // namespace

bool Semisimple::split() const {
  return std::all_of(ext.begin(), ext.end(), [](std::size_t e) { return e == 1; });
}

Semisimple semisimple_data(const Algebra& a) {
  Subspace j = radical(a);
  QuotientAlgebra top = quotient(a, j);
  Subspace zc = center(top.alg);
  std::vector<Vec> blocks = top.alg.dim() ? berlekamp_idempotents(top.alg, zc, top.alg.unit()) : std::vector<Vec>{};
  std::vector<std::size_t> deg, ext;
  for (const Vec& c : blocks) {
    const std::size_t whole = rank(top.alg.left_matrix(c));
    Matrix rc = top.alg.right_matrix(c);
    const std::size_t s = zc.image(rc).dim();
    const std::size_t n = isqrt(whole / s);
    if (n * n * s != whole) throw std::logic_error("Wedderburn component has inconsistent dimension");
    deg.push_back(n);
    ext.push_back(s);
  }
  return Semisimple{std::move(j), std::move(top), std::move(zc), std::move(blocks), std::move(deg), std::move(ext)};
}

std::vector<Vec> primitive_decomposition(const Algebra& a, std::uint64_t seed) {
  return primitive_decomposition(a, semisimple_data(a), seed);
}

std::vector<Vec> primitive_decomposition(const Algebra& a, const Semisimple& ss, std::uint64_t seed) {
  if (a.dim() == 0) return {};
  std::vector<Vec> tops;
  for (auto& group : top_primitives(ss, seed))
    for (auto& e : group) tops.push_back(std::move(e));
  const Field& f = a.field();
  std::vector<Vec> out;
  Vec rest = a.unit();
  for (std::size_t k = 0; k < tops.size(); ++k) {
    if (k + 1 == tops.size()) {
      out.push_back(rest);
      break;
    }
    Vec y = ss.top.lift.apply(tops[k]);
    y = a.mul(a.mul(rest, y), rest);
    Vec e = lift_idempotent(a, std::move(y));
    f.axpy(rest, f.neg(1), e);
    out.push_back(std::move(e));
  }
  return out;
}

bool is_primitive(const Algebra& a, std::span<const Elem> e) {
  if (std::all_of(e.begin(), e.end(), [](Elem x) { return x == 0; })) return false;
  Subalgebra c = corner(a, e);
  Semisimple ss = semisimple_data(c.alg);
  return ss.blocks.size() == 1 && ss.deg[0] == 1;
}

std::vector<std::size_t> idempotent_key(const Algebra& a, const Semisimple& ss, std::span<const Elem> e) {
  (void)a;
  const Algebra& top = ss.top.alg;
  Vec eb = ss.top.projection.apply(e);
  Matrix le = top.left_matrix(eb);
  std::vector<std::size_t> key;
  for (std::size_t b = 0; b < ss.blocks.size(); ++b) {
    const std::size_t r = rank(le * top.right_matrix(ss.blocks[b]));
    key.push_back(r / (ss.deg[b] * ss.ext[b]));
  }
  return key;
}

bool idempotents_conjugate(const Algebra& a, std::span<const Elem> e, std::span<const Elem> f) {
  if (!a.is_idempotent(e) || !a.is_idempotent(f)) throw InputError("conjugacy test on a non-idempotent");
  Semisimple ss = semisimple_data(a);
  return idempotent_key(a, ss, e) == idempotent_key(a, ss, f);
}

namespace {

// x in eAf, y in fAe with xy = e and yx = f.
std::optional<std::pair<Vec, Vec>> iso_pair(const Algebra& a, const Vec& e, const Vec& f, std::mt19937_64& rng) {
  if (std::all_of(e.begin(), e.end(), [](Elem v) { return v == 0; })) return std::pair{a.zero(), a.zero()};
  Matrix lf = a.left_matrix(f);
  Matrix rhs = Matrix::from_cols(a.field(), {f}, a.dim());
  for (int attempt = 0; attempt < 1000; ++attempt) {
    Vec x = a.mul(a.mul(e, random_vec(a.field(), a.dim(), rng)), f);
    auto sol = solve_linear(lf * a.right_matrix(x), rhs);
    if (!sol) continue;
    Vec y = a.mul(a.mul(f, sol->x.col_vec(0)), e);
    if (a.mul(x, y) == e && a.mul(y, x) == f) return std::pair{x, y};
  }
  return std::nullopt;
}

}  // namespace

std::optional<Vec> conjugating_unit(const Algebra& a, std::span<const Elem> e, std::span<const Elem> f,
                                    std::uint64_t seed) {
  if (!idempotents_conjugate(a, e, f)) return std::nullopt;
  std::mt19937_64 rng(seed);
  Vec ev(e.begin(), e.end()), fv(f.begin(), f.end());
  auto p1 = iso_pair(a, ev, fv, rng);
  auto p2 = iso_pair(a, a.sub(a.unit(), ev), a.sub(a.unit(), fv), rng);
  if (!p1 || !p2) throw std::logic_error("isomorphic idempotents without a found iso pair");
  Vec u = a.add(p1->first, p2->first);
  Vec ui = a.add(p1->second, p2->second);
  if (a.mul(a.mul(u, fv), ui) != ev || a.mul(u, ui) != a.unit()) throw std::logic_error("conjugating unit check failed");
  return u;
}

std::vector<Point> points(const Algebra& a, std::uint64_t seed) {
  Semisimple ss = semisimple_data(a);
  std::map<std::vector<std::size_t>, Point> by_key;
  for (auto& e : primitive_decomposition(a, ss, seed)) {
    auto key = idempotent_key(a, ss, e);
    auto it = by_key.find(key);
    if (it == by_key.end())
      by_key.emplace(key, Point{std::move(e), 1, key});
    else
      ++it->second.multiplicity;
  }
  std::vector<Point> out;
  for (auto& [key, pt] : by_key) {
    if (ss.split()) {
      auto b = static_cast<std::size_t>(std::find(key.begin(), key.end(), 1) - key.begin());
      if (b == key.size() || pt.multiplicity != ss.deg[b])
        throw std::logic_error("split algebra point multiplicity differs from the simple dimension");
    }
    out.push_back(std::move(pt));
  }
  return out;
}

bool is_split(const Algebra& a) { return semisimple_data(a).split(); }

std::vector<Representation> simple_modules(const Algebra& a) {
  Semisimple ss = semisimple_data(a);
  const Algebra& top = ss.top.alg;
  std::vector<Representation> out;
  for (auto& group : top_primitives(ss, 0)) {
    Subspace s = Subspace::span(top.right_matrix(group.front()).transpose());
    Representation rho;
    for (std::size_t j = 0; j < a.dim(); ++j) {
      Matrix l = top.left_matrix(ss.top.projection.col_vec(j));
      std::vector<Vec> cols;
      for (std::size_t k = 0; k < s.dim(); ++k) cols.push_back(s.coords(l.apply(s.basis().row(k))));
      rho.push_back(Matrix::from_cols(a.field(), cols, s.dim()));
    }
    out.push_back(std::move(rho));
  }
  return out;
}

Matrix represent(const Representation& rho, std::span<const Elem> x) {
  if (rho.empty()) throw InputError("empty representation");
  if (rho.size() != x.size()) throw InputError("element does not match the representation");
  const Field& f = rho[0].field();
  Matrix m(f, rho[0].rows(), rho[0].cols());
  for (std::size_t j = 0; j < x.size(); ++j)
    if (x[j]) m = m + rho[j].scaled(x[j]);
  return m;
}

Elem trace_of_primitive_on_simple(const Algebra& a, std::span<const Elem> e, const Representation& simple) {
  if (!a.is_idempotent(e)) throw InputError("trace of a non-idempotent");
  Matrix m = represent(simple, e);
  Elem t = 0;
  for (std::size_t i = 0; i < m.rows(); ++i) t = a.field().add(t, m(i, i));
  return t;
}

Vec matrix_embedding_normalize(const AlgebraHom& f, const AlgebraHom& g) {
  if (!is_embedding(f) || !is_embedding(g)) throw InputError("normalization needs two embeddings");
  if (f.source.dim() != g.source.dim() || f.target.dim() != g.target.dim())
    throw InputError("embeddings have different shapes");
  const Field& fld = f.target.field();
  const std::size_t m = isqrt(f.source.dim()), n = isqrt(f.target.dim());
  if (m * m != f.source.dim() || n * n != f.target.dim()) throw InputError("normalization needs matrix algebras");
  auto img = [&](const AlgebraHom& h, std::size_t i, std::size_t j) {
    return as_matrix(fld, h(f.source.basis_vector(i * m + j)), n);
  };
  auto nonzero_col = [&](const Matrix& x) {
    for (std::size_t j = 0; j < x.cols(); ++j) {
      Vec c = x.col_vec(j);
      if (std::any_of(c.begin(), c.end(), [](Elem v) { return v != 0; })) return c;
    }
    throw std::logic_error("primitive image is zero");
  };
  auto frame = [&](const AlgebraHom& h) {
    Vec v = nonzero_col(img(h, 0, 0));
    std::vector<Vec> cols;
    for (std::size_t i = 0; i < m; ++i) cols.push_back(img(h, i, 0).apply(v));
    Matrix null = nullspace(as_matrix(fld, h.image_of_unit(), n));
    for (std::size_t k = 0; k < null.rows(); ++k) cols.push_back(null.row_vec(k));
    return Matrix::from_cols(fld, cols, n);
  };
  Matrix pg = frame(g), pf = frame(f);
  auto inv = bk::inverse(pg);
  if (!inv) throw std::logic_error("embedding frame is singular");
  Matrix b = pf * *inv;
  Matrix bi = *bk::inverse(b);
  for (std::size_t k = 0; k < f.source.dim(); ++k) {
    Vec x = f.source.basis_vector(k);
    if (b * as_matrix(fld, g(x), n) * bi != as_matrix(fld, f(x), n))
      throw std::logic_error("normalizing unit check failed");
  }
  return b.data();
}

}  // namespace bk
