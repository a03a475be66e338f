#include "brauerkit/galgebra.hpp"

#include <algorithm>
#include <stdexcept>

namespace bk {

namespace {

bool all_zero(std::span<const Elem> v) {
  return std::all_of(v.begin(), v.end(), [](Elem x) { return x == 0; });
}

// L with L * inc = I, for inc with independent columns.
Matrix left_inverse(const Matrix& inc) {
  const Field& f = inc.field();
  Echelon e = rref(inc.transpose());
  if (e.pivots.size() != inc.cols()) throw std::logic_error("inclusion has dependent columns");
  Matrix sel = Matrix::identity(f, inc.rows()).select_rows(e.pivots);
  return *inverse(inc.select_rows(e.pivots)) * sel;
}

void require_p_subgroup(const GAlgebra& a, const Subgroup& p) {
  if (!a.group().contains(p)) throw PreconditionError("subgroup is not inside the acting group");
  if (!p.is_p_group(a.algebra().field().p())) throw PreconditionError("subgroup is not a p-group");
}

std::vector<Matrix> generator_images(const GAlgebra& a, const std::vector<int>& gens, const Matrix& to,
                                     const Matrix& from) {
  std::vector<Matrix> out;
  for (int s : gens) out.push_back(to * a.action(s) * from);
  return out;
}

}  // namespace

GAlgebra GAlgebra::from_generators(Algebra a, const Subgroup& grp, std::span<const int> gens,
                                   const std::vector<Matrix>& mats) {
  const std::size_t d = a.dim();
  const Field& f = a.field();
  for (const Matrix& m : mats) {
    if (m.rows() != d || m.cols() != d) throw InputError("action matrix has wrong size");
    if (m.apply(a.unit()) != a.unit()) throw InputError("action does not fix the unit");
    std::vector<Vec> cols;
    for (std::size_t i = 0; i < d; ++i) cols.push_back(m.col_vec(i));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        Vec lhs(d, 0);
        for (const Term& t : a.product(i, j)) f.axpy(lhs, t.coeff, cols[t.index]);
        if (lhs != a.mul(cols[i], cols[j])) throw InputError("action matrix is not an algebra automorphism");
      }
  }
  ModuleRep rep = ModuleRep::from_generators(grp, f, d, gens, mats);
  return GAlgebra(std::move(a), std::move(rep), {});
}

GAlgebra GAlgebra::interior(Algebra a, const Subgroup& grp, std::span<const int> gens, const std::vector<Vec>& units) {
  if (gens.size() != units.size()) throw InputError("one unit per generator expected");
  const Group& g = grp.group();
  const Field& f = a.field();
  std::vector<Matrix> mats;
  for (const Vec& u : units) {
    auto ui = a.inverse(u);
    if (!ui) throw InputError("structure element is not a unit");
    mats.push_back(a.left_matrix(u) * a.right_matrix(*ui));
  }
  ModuleRep rep = ModuleRep::from_generators(grp, f, a.dim(), gens, mats);
  std::vector<Vec> all(g.order());
  std::vector<char> seen(g.order(), 0);
  all[0] = a.unit();
  seen[0] = 1;
  std::vector<int> frontier{0};
  while (!frontier.empty()) {
    std::vector<int> next;
    for (int x : frontier)
      for (std::size_t i = 0; i < gens.size(); ++i) {
        int y = g.mul(x, gens[i]);
        if (seen[y]) continue;
        seen[y] = 1;
        all[y] = a.mul(all[x], units[i]);
        next.push_back(y);
      }
    frontier = std::move(next);
  }
  for (int x : grp.elements())
    for (std::size_t i = 0; i < gens.size(); ++i)
      if (all[g.mul(x, gens[i])] != a.mul(all[x], units[i]))
        throw InputError("structure units do not satisfy the group relations");
  return GAlgebra(std::move(a), std::move(rep), std::move(all));
}

const Vec& GAlgebra::structure_unit(int g) const {
  if (units_.empty()) throw PreconditionError("not an interior algebra");
  if (!group().contains(g)) throw PreconditionError("element outside the acting group");
  return units_[g];
}

GAlgebra conjugation_algebra(const Group& g, const Field& f) {
  Algebra a = group_algebra(g, f);
  std::vector<int> gens = g.generators();
  std::vector<Vec> units;
  for (int s : gens) units.push_back(a.basis_vector(s));
  return GAlgebra::interior(a, Subgroup::whole(g), gens, units);
}

GAlgebra conjugation_algebra(const Subgroup& h, const Field& f) {
  if (h.order() == h.group().order()) return conjugation_algebra(h.group(), f);
  const Group& g = h.group();
  const auto& el = h.elements();
  const std::size_t d = el.size();
  std::vector<int> index(g.order(), -1);
  for (std::size_t i = 0; i < d; ++i) index[el[i]] = static_cast<int>(i);
  std::vector<Vec> prods;
  prods.reserve(d * d);
  for (int x : el)
    for (int y : el) {
      Vec v(d, 0);
      v[index[g.mul(x, y)]] = 1;
      prods.push_back(std::move(v));
    }
  Vec unit(d, 0);
  unit[index[0]] = 1;
  Algebra a = Algebra::from_dense(f, d, prods, unit);
  std::vector<int> gens = h.generators();
  std::vector<Vec> units;
  for (int s : gens) units.push_back(a.basis_vector(static_cast<std::size_t>(index[s])));
  return GAlgebra::interior(a, h, gens, units);
}

GAlgebra endomorphism_algebra(const ModuleRep& v) {
  Algebra a = matrix_algebra(v.field(), v.dim());
  std::vector<int> gens = v.group().generators();
  std::vector<Vec> units;
  for (int s : gens) units.push_back(v.act(s).data());
  return GAlgebra::interior(a, v.group(), gens, units);
}

GAlgebra trivial_action(const Algebra& a, const Subgroup& grp) {
  std::vector<int> gens = grp.generators();
  return GAlgebra::from_generators(a, grp, gens, std::vector<Matrix>(gens.size(), Matrix::identity(a.field(), a.dim())));
}

GAlgebra restrict(const GAlgebra& a, const Subgroup& h) {
  return GAlgebra(a.alg_, restrict(a.rep_, h), a.units_);
}

GAlgebra tensor(const GAlgebra& a, const GAlgebra& b) {
  if (a.group() != b.group()) throw PreconditionError("tensor of algebras over different groups");
  Algebra t = tensor(a.algebra(), b.algebra());
  std::vector<int> gens = a.group().generators();
  if (a.is_interior() && b.is_interior()) {
    std::vector<Vec> units;
    for (int s : gens) units.push_back(tensor_elem(t.field(), a.structure_unit(s), b.structure_unit(s)));
    return GAlgebra::interior(t, a.group(), gens, units);
  }
  std::vector<Matrix> mats;
  for (int s : gens) mats.push_back(kron(a.action(s), b.action(s)));
  return GAlgebra::from_generators(t, a.group(), gens, mats);
}

GAlgebra stable_subalgebra(const GAlgebra& a, const Subalgebra& sub) {
  Matrix left = left_inverse(sub.inclusion);
  std::vector<int> gens = a.group().generators();
  auto mats = generator_images(a, gens, left, sub.inclusion);
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (sub.inclusion * mats[i] != a.action(gens[i]) * sub.inclusion)
      throw PreconditionError("subalgebra is not stable under the action");
  return GAlgebra::from_generators(sub.alg, a.group(), gens, mats);
}

GCorner corner(const GAlgebra& a, std::span<const Elem> e) {
  std::vector<int> gens = a.group().generators();
  for (int s : gens)
    if (a.act(s, e) != Vec(e.begin(), e.end())) throw PreconditionError("corner idempotent is not fixed by the group");
  Subalgebra sub = corner(a.algebra(), e);
  if (!a.is_interior()) return GCorner{stable_subalgebra(a, sub), sub.inclusion};
  Matrix left = left_inverse(sub.inclusion);
  std::vector<Vec> units;
  const Algebra& alg = a.algebra();
  for (int s : gens) units.push_back(left.apply(alg.mul(alg.mul(e, a.structure_unit(s)), e)));
  return GCorner{GAlgebra::interior(sub.alg, a.group(), gens, units), sub.inclusion};
}

// ---------------------------------------------------------------------------

Subspace fixed_points(const GAlgebra& a, const Subgroup& p) {
  if (!a.group().contains(p)) throw PreconditionError("subgroup is not inside the acting group");
  const Field& f = a.algebra().field();
  const std::size_t d = a.algebra().dim();
  auto gens = p.generators();
  if (gens.empty()) return Subspace::full(f, d);
  Matrix stacked(f, 0, d);
  for (int s : gens) stacked = vstack(stacked, a.action(s) - Matrix::identity(f, d));
  return Subspace::span(nullspace(stacked));
}

Subalgebra fixed_subalgebra(const GAlgebra& a, const Subgroup& p) {
  return subalgebra(a.algebra(), fixed_points(a, p), a.algebra().unit());
}

Vec relative_trace(const GAlgebra& a, const Subgroup& p, const Subgroup& q, std::span<const Elem> x) {
  if (!a.group().contains(p) || !p.contains(q)) throw PreconditionError("relative trace needs Q <= P <= G");
  for (int s : q.generators())
    if (a.act(s, x) != Vec(x.begin(), x.end())) throw PreconditionError("element is not fixed by the smaller group");
  const Field& f = a.algebra().field();
  Vec out(x.size(), 0);
  for (int t : left_transversal(p, q)) f.axpy(out, 1, a.act(t, x));
  return out;
}

Subspace trace_image(const GAlgebra& a, const Subgroup& p, const Subgroup& q) {
  if (!a.group().contains(p) || !p.contains(q)) throw PreconditionError("relative trace needs Q <= P <= G");
  const Field& f = a.algebra().field();
  const std::size_t d = a.algebra().dim();
  Subspace fq = fixed_points(a, q);
  auto reps = left_transversal(p, q);
  Matrix sum(f, d, d);
  for (int t : reps) sum = sum + a.action(t);
  return fq.image(sum);
}

Subspace brauer_kernel_reference(const GAlgebra& a, const Subgroup& p) {
  Subspace out(a.algebra().field(), a.algebra().dim());
  for (const auto& q : all_subgroups(p))
    if (q.order() < p.order()) out = out + trace_image(a, p, q);
  return out;
}

Vec BrauerData::operator()(std::span<const Elem> x) const {
  if (!fixed_space.contains(x)) throw PreconditionError("Brauer map applied to a non-fixed element");
  return br.apply(x);
}

BrauerData brauer_quotient(const GAlgebra& a, const Subgroup& p) {
  require_p_subgroup(a, p);
  const Field& f = a.algebra().field();
  const std::size_t d = a.algebra().dim();
  Subspace fs = fixed_points(a, p);
  Subalgebra fixed = subalgebra(a.algebra(), fs, a.algebra().unit());
  Subspace kernel(f, d);
  if (p.order() > 1)
    for (const auto& m : maximal_subgroups(p)) kernel = kernel + trace_image(a, p, m);
  std::vector<Vec> kc;
  for (std::size_t i = 0; i < kernel.dim(); ++i) kc.push_back(fs.coords(kernel.vector(i)));
  QuotientAlgebra q = quotient(fixed.alg, Subspace::span(f, fs.dim(), kc));
  Matrix coords = Matrix::identity(f, d).select_rows(fs.pivots());
  Matrix br = q.projection * coords;
  Matrix section = fixed.inclusion * q.lift;
  return BrauerData{p, std::move(fixed), std::move(fs), std::move(kernel), std::move(q), std::move(br),
                    std::move(section)};
}

GAlgebra brauer_galgebra(const GAlgebra& a, const BrauerData& bd) {
  Subgroup n = normalizer(bd.subgroup, a.group());
  std::vector<int> gens = n.generators();
  return GAlgebra::from_generators(bd.alg(), n, gens, generator_images(a, gens, bd.br, bd.section));
}

std::optional<Matrix> stable_basis(const GAlgebra& a, const Subgroup& p, std::uint64_t seed) {
  auto basis = is_permutation_module(restrict(a.rep(), p), seed);
  if (!basis) return std::nullopt;
  BrauerData bd = brauer_quotient(a, p);
  std::vector<Vec> images;
  auto gens = p.generators();
  for (std::size_t j = 0; j < basis->cols(); ++j) {
    Vec c = basis->col_vec(j);
    bool fixed = std::all_of(gens.begin(), gens.end(), [&](int s) { return a.act(s, c) == c; });
    if (fixed) images.push_back(bd.br.apply(c));
  }
  const std::size_t qd = bd.alg().dim();
  if (images.size() != qd ||
      (qd > 0 && rank(Matrix::from_cols(a.algebra().field(), images, qd)) != qd))
    throw std::logic_error("fixed members of a stable basis do not map to a basis of the Brauer quotient");
  return basis;
}

// ---------------------------------------------------------------------------

bool AlphaMap::bijective() const {
  return domain.dim() == source.dim() && source.dim() == target.dim() &&
         (target.dim() == 0 || rank(map) == target.dim());
}

AlphaMap alpha_pq(const GAlgebra& a, const Subgroup& p, const Subgroup& q) {
  require_p_subgroup(a, p);
  require_p_subgroup(a, q);
  if (!normalizer(p, a.group()).contains(q)) throw PreconditionError("Q does not normalize P");
  const Field& f = a.algebra().field();
  BrauerData bdp = brauer_quotient(a, p);
  GAlgebra ap = brauer_galgebra(a, bdp);
  BrauerData bdpq = brauer_quotient(ap, q);
  BrauerData bdq = brauer_quotient(a, q);
  Subspace both = fixed_points(a, p).intersect(fixed_points(a, q));
  const std::size_t sd = bdq.alg().dim(), td = bdpq.alg().dim();
  std::vector<Vec> gam, bet;
  for (std::size_t k = 0; k < both.dim(); ++k) {
    Vec x = both.vector(k);
    gam.push_back(bdq.br.apply(x));
    bet.push_back(bdpq.br.apply(bdp.br.apply(x)));
  }
  Subspace domain = Subspace::span(f, sd, gam);
  Matrix map(f, td, sd);
  if (!gam.empty() && sd > 0) {
    Matrix g = Matrix::from_cols(f, gam, sd), b = Matrix::from_cols(f, bet, td);
    Matrix rel = nullspace(g);
    for (std::size_t r = 0; r < rel.rows(); ++r)
      if (!all_zero(b.apply(rel.row(r)))) throw std::logic_error("alpha map is not well defined");
    if (td > 0) {
      auto sol = solve_linear(g.transpose(), b.transpose());
      if (!sol) throw std::logic_error("alpha map system is inconsistent");
      map = sol->x.transpose();
    }
  }
  return AlphaMap{bdq.alg(), bdpq.alg(), std::move(domain), std::move(map)};
}

AlgebraHom alpha_tensor(const GAlgebra& a, const GAlgebra& b, const Subgroup& p) {
  if (a.group() != b.group()) throw PreconditionError("tensor of algebras over different groups");
  const Field& f = a.algebra().field();
  BrauerData ba = brauer_quotient(a, p), bb = brauer_quotient(b, p);
  BrauerData bab = brauer_quotient(tensor(a, b), p);
  const std::size_t da = ba.alg().dim(), db = bb.alg().dim();
  std::vector<Vec> xs, ys;
  for (std::size_t i = 0; i < da; ++i) xs.push_back(ba.section.col_vec(i));
  for (std::size_t j = 0; j < db; ++j) ys.push_back(bb.section.col_vec(j));
  std::vector<Vec> cols;
  for (const auto& x : xs)
    for (const auto& y : ys) cols.push_back(bab.br.apply(tensor_elem(f, x, y)));
  // kernels on either side must die
  for (std::size_t k = 0; k < ba.kernel.dim(); ++k)
    for (const auto& y : ys)
      if (!all_zero(bab.br.apply(tensor_elem(f, ba.kernel.vector(k), y))))
        throw std::logic_error("tensor alpha map is not well defined");
  for (std::size_t k = 0; k < bb.kernel.dim(); ++k)
    for (const auto& x : xs)
      if (!all_zero(bab.br.apply(tensor_elem(f, x, bb.kernel.vector(k)))))
        throw std::logic_error("tensor alpha map is not well defined");
  Matrix map = cols.empty() ? Matrix(f, bab.alg().dim(), 0) : Matrix::from_cols(f, cols, bab.alg().dim());
  AlgebraHom h = make_hom(tensor(ba.alg(), bb.alg()), bab.alg(), std::move(map));
  if (!h.unital()) throw std::logic_error("tensor alpha map is not unital");
  return h;
}

void require_equivariant(const GAlgebra& a, const GAlgebra& b, const AlgebraHom& f) {
  if (a.group() != b.group()) throw PreconditionError("algebras over different groups");
  if (f.map.rows() != b.algebra().dim() || f.map.cols() != a.algebra().dim())
    throw PreconditionError("homomorphism does not match the algebras");
  for (int s : a.group().generators())
    if (f.map * a.action(s) != b.action(s) * f.map) throw PreconditionError("homomorphism is not equivariant");
}

AlgebraHom induced_map(const GAlgebra& a, const GAlgebra& b, const AlgebraHom& f, const Subgroup& p) {
  require_equivariant(a, b, f);
  BrauerData ba = brauer_quotient(a, p), bb = brauer_quotient(b, p);
  return make_hom(ba.alg(), bb.alg(), bb.br * f.map * ba.section);
}

bool is_covering(const GAlgebra& a, const GAlgebra& b, const AlgebraHom& f) {
  require_equivariant(a, b, f);
  const Field& fld = b.algebra().field();
  // image + J(target) = whole, with the radical pushed into ambient coordinates
  auto covers = [&](const Subspace& image, const Subalgebra& target, const Subspace& whole) {
    std::vector<Vec> vs;
    if (target.alg.dim() > 0) {
      Subspace r = radical(target.alg);
      for (std::size_t i = 0; i < r.dim(); ++i) vs.push_back(target.inclusion.apply(r.vector(i)));
    }
    return image + Subspace::span(fld, whole.ambient(), vs) == whole;
  };
  bool by_fixed = true;
  for (const auto& h : all_subgroups(a.group())) {
    Subspace bh = fixed_points(b, h);
    Subalgebra bsub = subalgebra(b.algebra(), bh, b.algebra().unit());
    if (!covers(fixed_points(a, h).image(f.map), bsub, bh)) {
      by_fixed = false;
      break;
    }
  }
  bool by_brauer = true;
  for (const auto& p : all_subgroups(a.group(), fld.p())) {
    AlgebraHom fp = induced_map(a, b, f, p);
    const std::size_t td = fp.target.dim();
    if (td == 0) continue;
    Subspace whole = Subspace::full(fld, td);
    Subalgebra tsub{fp.target, Matrix::identity(fld, td)};
    Subspace img = fp.source.dim() ? Subspace::full(fld, fp.source.dim()).image(fp.map) : Subspace(fld, td);
    if (!covers(img, tsub, whole)) {
      by_brauer = false;
      break;
    }
  }
  if (by_fixed != by_brauer) throw std::logic_error("covering criteria disagree");
  return by_fixed;
}

// ---------------------------------------------------------------------------

PointedGroups local_points(const GAlgebra& a, const Subgroup& p, std::uint64_t seed) {
  BrauerData bd = brauer_quotient(a, p);
  Subalgebra fixed = bd.fixed;
  std::vector<Point> pts = points(fixed.alg, seed);
  for (auto& pt : pts) pt.representative = fixed.inclusion.apply(pt.representative);
  std::vector<Point> qpts;
  std::optional<Semisimple> qss;
  if (bd.alg().dim() > 0) {
    qpts = points(bd.alg(), seed);
    qss = semisimple_data(bd.alg());
  }
  std::vector<bool> local;
  std::vector<int> qidx;
  std::vector<int> hits(qpts.size(), 0);
  for (const auto& pt : pts) {
    Vec y = bd.br.apply(pt.representative);
    bool is_local = !all_zero(y);
    local.push_back(is_local);
    if (!is_local) {
      qidx.push_back(-1);
      continue;
    }
    auto key = idempotent_key(bd.alg(), *qss, y);
    auto it = std::find_if(qpts.begin(), qpts.end(), [&](const Point& q) { return q.key == key; });
    if (it == qpts.end()) throw std::logic_error("image of a local point is not a point of the Brauer quotient");
    auto k = static_cast<std::size_t>(it - qpts.begin());
    ++hits[k];
    if (it->multiplicity != pt.multiplicity) throw std::logic_error("local point multiplicity changed under br_P");
    qidx.push_back(static_cast<int>(k));
  }
  for (int h : hits)
    if (h != 1) throw std::logic_error("local points are not in bijection with points of the Brauer quotient");
  return PointedGroups{p, std::move(fixed), std::move(bd), std::move(pts), std::move(local), std::move(qidx),
                       std::move(qpts)};
}

bool pointed_contained(const GAlgebra& a, const Subgroup& q, std::span<const Elem> j, const Subgroup& p,
                       std::span<const Elem> i) {
  if (!p.contains(q)) return false;
  Subspace fq = fixed_points(a, q);
  if (!fq.contains(i) || !fq.contains(j)) throw PreconditionError("idempotents are not fixed by Q");
  Subalgebra aq = subalgebra(a.algebra(), fq, a.algebra().unit());
  Semisimple ss = semisimple_data(aq.alg);
  auto ki = idempotent_key(aq.alg, ss, fq.coords(i));
  auto kj = idempotent_key(aq.alg, ss, fq.coords(j));
  for (std::size_t b = 0; b < ki.size(); ++b)
    if (kj[b] > 0 && ki[b] > 0) return true;
  return false;
}

QuotientForm form_quotient(const GAlgebra& a, const SymmetricForm& s, const Subgroup& q, const Subgroup& p) {
  if (!p.contains(q)) throw PreconditionError("form descent needs Q <= P");
  if (!is_symmetric(a.algebra(), s) || !is_nondegenerate(a.algebra(), s))
    throw PreconditionError("form is not symmetric and nondegenerate");
  if (!stable_basis(a, p)) throw PreconditionError("no P-stable basis");
  if (brauer_quotient(a, p).alg().dim() == 0) throw PreconditionError("the Brauer quotient at P is zero");
  BrauerData bd = brauer_quotient(a, q);
  for (std::size_t k = 0; k < bd.kernel.dim(); ++k)
    if (s(bd.kernel.vector(k)) != 0) throw std::logic_error("form does not vanish on the Brauer kernel");
  Vec values;
  for (std::size_t i = 0; i < bd.alg().dim(); ++i) values.push_back(s(bd.section.col_vec(i)));
  SymmetricForm sq{a.algebra().field(), std::move(values)};
  bool sym = is_symmetric(bd.alg(), sq);
  bool nondeg = is_nondegenerate(bd.alg(), sq);
  return QuotientForm{std::move(sq), sym, nondeg};
}

StablePoint unique_stable_point(const GAlgebra& a, const Subgroup& p, std::uint64_t seed) {
  const Algebra& alg = a.algebra();
  if (radical(alg).dim() != 0 || !is_split(alg)) throw PreconditionError("algebra is not split semisimple");
  GAlgebra ap = restrict(a, p);
  BrauerData bd = brauer_quotient(ap, p);
  if (bd.alg().dim() == 0 || points(bd.alg(), seed).size() != 1)
    throw PreconditionError("the Brauer quotient does not have a single point");
  auto gens = p.generators();
  StablePoint out{0, alg.zero(), false};
  for (const Vec& e : central_primitive_idempotents(alg)) {
    if (!std::all_of(gens.begin(), gens.end(), [&](int s) { return a.act(s, e) == e; })) continue;
    GCorner c = corner(ap, e);
    AlgebraHom inc{c.alg.algebra(), alg, c.inclusion};
    AlgebraHom fp = induced_map(c.alg, ap, inc, p);
    const std::size_t sd = fp.source.dim(), td = fp.target.dim();
    if (sd == td && rank(fp.map) == td) {
      ++out.matching_blocks;
      out.block = e;
    }
  }
  if (out.matching_blocks == 0) return out;
  Subspace z = center(alg);
  Subalgebra zs = subalgebra(alg, z, alg.unit());
  GAlgebra zg = stable_subalgebra(ap, zs);
  BrauerData bz = brauer_quotient(zg, p);
  Vec comp = z.coords(alg.sub(alg.unit(), out.block));
  out.complement_in_kernel = all_zero(bz(comp));
  return out;
}

}  // namespace bk
