#include "brauerkit/equivalence.hpp"

#include <algorithm>
#include <stdexcept>

namespace bk {

namespace {

Vec unit_at(std::size_t n, std::size_t i) {
  Vec v(n, 0);
  v[i] = 1;
  return v;
}

Vec group_one(const Group& g) { return unit_at(g.order(), 0); }

std::string elements_label(const Subgroup& h) {
  std::string s = "{";
  for (std::size_t i = 0; i < h.order(); ++i) s += (i ? "," : "") + std::to_string(h.elements()[i]);
  return s + "}";
}

// Column basis of the column space of m, with the rows that give coordinates.
struct ColumnSpace {
  Matrix inclusion;  // ambient x dim
  std::vector<std::size_t> pivots;
  std::size_t dim() const { return pivots.size(); }
  Matrix restrict(const Matrix& op) const { return (op * inclusion).select_rows(pivots); }
};

ColumnSpace column_space(const Matrix& m) {
  Subspace s = Subspace::span(m.transpose());
  return ColumnSpace{s.basis().transpose(), s.pivots()};
}

// Coordinates in k[H] (basis h.elements()) of an element supported on H.
Vec local_coords(const Subgroup& h, std::span<const Elem> v) {
  Vec out;
  for (int x : h.elements()) out.push_back(v[static_cast<std::size_t>(x)]);
  return out;
}

Vec parent_coords(const Subgroup& h, std::span<const Elem> v) {
  Vec out(h.group().order(), 0);
  for (std::size_t i = 0; i < v.size(); ++i) out[static_cast<std::size_t>(h.elements()[i])] = v[i];
  return out;
}

BlockData block_of(const Subgroup& h, const Field& f, std::span<const Elem> b) {
  Subgroup d = defect_group(h, f, b);
  return BlockData{h, f, Vec(b.begin(), b.end()), std::move(d), 0};
}

ProductCheck check_product(const Bimodule& prod, const Bimodule& regular, std::uint64_t seed) {
  ProductCheck out;
  out.dim = prod.dim();
  Decomposition d = decompose(prod.module, seed);
  out.summands = d.summands.size();
  out.remainder_projective = true;
  bool used = false;
  for (const auto& s : d.summands) {
    if (!used && s.module.dim() == regular.dim() && is_isomorphic(s.module, regular.module, seed)) {
      used = true;
      continue;
    }
    if (!is_projective(s.module)) out.remainder_projective = false;
  }
  out.regular_found = used;
  return out;
}

std::size_t count_local(const PointedGroups& pg) {
  return static_cast<std::size_t>(std::count(pg.local.begin(), pg.local.end(), true));
}

// Values of the product form on a tensor algebra, Kronecker basis.
Vec tensor_form(const Field& f, const Vec& a, const Vec& b) {
  Vec out;
  out.reserve(a.size() * b.size());
  for (Elem x : a)
    for (Elem y : b) out.push_back(f.mul(x, y));
  return out;
}

Vec trace_form(std::size_t n) {
  Vec v(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1;
  return v;
}

// S^op with units u^-1, so conjugation agrees with S.
GAlgebra opposite_interior(const GAlgebra& s) {
  const Algebra& a = s.algebra();
  std::vector<int> gens = s.group().generators();
  std::vector<Vec> units;
  for (int g : gens) units.push_back(*a.inverse(s.structure_unit(g)));
  return GAlgebra::interior(opposite(a), s.group(), gens, units);
}

HarnessCheck check(std::string name, bool pass, std::string witness = {}) {
  return HarnessCheck{std::move(name), pass, std::move(witness)};
}

}  // namespace

// ---------------------------------------------------------------------------

Matrix Bimodule::left_action(int g) const { return module.act(prod.pair(g, 0)); }

Matrix Bimodule::right_action(int h) const { return module.act(prod.pair(0, prod.right.inv(h))); }

Matrix Bimodule::left_mult(std::span<const Elem> x) const {
  const Field& f = field();
  Matrix out(f, dim(), dim());
  for (std::size_t g = 0; g < x.size(); ++g) {
    if (x[g] == 0) continue;
    if (!left.contains(static_cast<int>(g))) throw PreconditionError("element is not supported on the left group");
    out = out + left_action(static_cast<int>(g)).scaled(x[g]);
  }
  return out;
}

Matrix Bimodule::right_mult(std::span<const Elem> y) const {
  const Field& f = field();
  Matrix out(f, dim(), dim());
  for (std::size_t h = 0; h < y.size(); ++h) {
    if (y[h] == 0) continue;
    if (!right.contains(static_cast<int>(h))) throw PreconditionError("element is not supported on the right group");
    out = out + right_action(static_cast<int>(h)).scaled(y[h]);
  }
  return out;
}

Bimodule as_bimodule(const DirectProduct& prod, const ModuleRep& m) {
  if (m.group().group() != prod.group) throw InputError("module does not live on the product group");
  Subgroup l = project_left(prod, m.group()), r = project_right(prod, m.group());
  if (product_subgroup(prod, l, r) != m.group()) throw InputError("acting group is not a product of subgroups");
  return Bimodule{prod, std::move(l), std::move(r), m};
}

Bimodule group_algebra_bimodule(const DirectProduct& prod, const Field& f, const Subgroup& support, const Subgroup& l,
                                const Subgroup& r, std::span<const Elem> e, std::span<const Elem> fi) {
  if (prod.left != prod.right) throw PreconditionError("group algebra bimodules need G x G");
  const Group& g = prod.left;
  if (!support.contains(l) || !support.contains(r)) throw PreconditionError("acting groups must lie in the support");
  Algebra kg = group_algebra(g, f);
  auto fixed_by = [&](std::span<const Elem> x, const Subgroup& h) {
    for (int s : h.generators())
      if (kg.mul(kg.mul(kg.basis_vector(s), x), kg.basis_vector(g.inv(s))) != Vec(x.begin(), x.end())) return false;
    return true;
  };
  if (!fixed_by(e, l) || !fixed_by(fi, r)) throw PreconditionError("idempotents must be fixed by the acting groups");
  std::vector<Vec> span;
  for (int x : support.elements()) span.push_back(kg.mul(kg.mul(e, kg.basis_vector(x)), fi));
  Subspace w = Subspace::span(f, g.order(), span);
  if (w.dim() == 0) throw PreconditionError("zero bimodule");
  Matrix inc = w.basis().transpose();
  Subgroup x = product_subgroup(prod, l, r);
  std::vector<int> gens = x.generators();
  std::vector<Matrix> mats;
  for (int z : gens) {
    Matrix op = kg.left_matrix(kg.basis_vector(prod.p1[z])) * kg.right_matrix(kg.basis_vector(g.inv(prod.p2[z])));
    mats.push_back((op * inc).select_rows(w.pivots()));
  }
  return Bimodule{prod, l, r, ModuleRep::from_generators(x, f, w.dim(), gens, mats)};
}

Bimodule regular_bimodule(const DirectProduct& prod, const Field& f, const Subgroup& l, std::span<const Elem> e) {
  return group_algebra_bimodule(prod, f, l, l, l, e, e);
}

Bimodule dual(const Bimodule& m, const DirectProduct& swapped) {
  if (swapped.left != m.prod.right || swapped.right != m.prod.left)
    throw PreconditionError("swapped product has the wrong factors");
  Subgroup y = product_subgroup(swapped, m.right, m.left);
  std::vector<int> map(swapped.group.order(), -1);
  for (int v : y.elements()) map[v] = m.prod.pair(swapped.p2[v], swapped.p1[v]);
  GroupIso iso = make_iso(y, m.module.group(), std::move(map));
  return Bimodule{swapped, m.right, m.left, pull_back(dual(m.module), iso)};
}

Bimodule dual(const Bimodule& m) {
  if (m.prod.left != m.prod.right) throw PreconditionError("dual needs an explicit swapped product when G != H");
  return dual(m, m.prod);
}

Bimodule tensor_over(const Bimodule& m, const Bimodule& n, const DirectProduct& target) {
  if (m.prod.right != n.prod.left || m.right != n.left) throw PreconditionError("middle groups do not match");
  if (target.left != m.prod.left || target.right != n.prod.right)
    throw PreconditionError("target product has the wrong factors");
  if (m.field() != n.field()) throw PreconditionError("bimodules over different fields");
  const Field& f = m.field();
  const std::size_t a = m.dim(), b = n.dim(), total = a * b;
  const Matrix ia = Matrix::identity(f, a), ib = Matrix::identity(f, b);
  Matrix rel(f, 0, total);
  for (int h : m.right.generators()) {
    Matrix r = kron(m.right_action(h), ib) - kron(ia, n.left_action(h));
    rel = vstack(rel, r.transpose());
  }
  Subspace u = Subspace::span(rel);
  std::vector<char> is_pivot(total, 0);
  for (std::size_t p : u.pivots()) is_pivot[p] = 1;
  std::vector<std::size_t> free;
  for (std::size_t i = 0; i < total; ++i)
    if (!is_pivot[i]) free.push_back(i);
  if (free.empty()) throw PreconditionError("tensor product is zero");
  // v minus its U-part has zero pivot entries; keep the rest.
  Matrix pick = Matrix::identity(f, total).select_rows(u.pivots());
  Matrix reduce = Matrix::identity(f, total) - u.basis().transpose() * pick;
  Matrix proj = reduce.select_rows(free);
  Matrix lift = Matrix::identity(f, total).select_cols(free);
  Subgroup z = product_subgroup(target, m.left, n.right);
  std::vector<int> gens = z.generators();
  std::vector<Matrix> mats;
  for (int x : gens) {
    Matrix op = kron(m.module.act(m.prod.pair(target.p1[x], 0)), n.module.act(n.prod.pair(0, target.p2[x])));
    mats.push_back(proj * op * lift);
  }
  return Bimodule{target, m.left, n.right, ModuleRep::from_generators(z, f, free.size(), gens, mats)};
}

Bimodule tensor_over(const Bimodule& m, const Bimodule& n) {
  if (m.prod.group != n.prod.group || m.prod.left != m.prod.right)
    throw PreconditionError("tensor_over needs an explicit target product");
  return tensor_over(m, n, m.prod);
}

Bimodule scalar_extend(const Bimodule& m, const Field& bigger) {
  return Bimodule{m.prod, m.left, m.right, scalar_extend(m.module, bigger)};
}

// ---------------------------------------------------------------------------

StableEquivalenceCertificate check_stable_equivalence(const Bimodule& m, std::span<const Elem> b,
                                                      std::span<const Elem> c, std::uint64_t seed) {
  if (m.prod.left != m.prod.right) throw PreconditionError("certificate needs both groups inside one G");
  StableEquivalenceCertificate out;
  const Field& f = m.field();
  const Matrix id = Matrix::identity(f, m.dim());
  try {
    if (m.left_mult(b) != id) out.failure = "b M != M";
    else if (m.right_mult(c) != id) out.failure = "M c != M";
  } catch (const PreconditionError& e) {
    out.failure = e.what();
  }
  const Group& g = m.prod.left;
  if (out.failure.empty() &&
      !is_projective(restrict(m.module, product_subgroup(m.prod, m.left, Subgroup::trivial(g)))))
    out.failure = "not projective as a left module";
  if (out.failure.empty() &&
      !is_projective(restrict(m.module, product_subgroup(m.prod, Subgroup::trivial(g), m.right))))
    out.failure = "not projective as a right module";
  out.bimodule_ok = out.failure.empty();
  if (!out.bimodule_ok) return out;
  Bimodule md = dual(m);
  out.left_product = check_product(tensor_over(m, md), regular_bimodule(m.prod, f, m.left, b), seed);
  out.right_product = check_product(tensor_over(md, m), regular_bimodule(m.prod, f, m.right, c), seed);
  return out;
}

bool VertexSourceReport::pass() const {
  if (!consistent()) return false;
  if (!twisted_diagonal) return true;
  return left_defect.value_or(false) && right_defect.value_or(false);
}

VertexSourceReport vertex_source_check(const Bimodule& m, std::span<const Elem> b, std::span<const Elem> c,
                                       std::uint64_t seed) {
  if (!is_indecomposable(m.module)) throw PreconditionError("bimodule is not indecomposable");
  Subgroup x = vertex(m.module);
  ModuleRep v = sources(m.module, x, seed).front();
  const Field& f = m.field();
  VertexSourceReport out{x, v, false, false, false, std::nullopt, std::nullopt, std::nullopt};
  auto tw = is_twisted_diagonal(m.prod, x);
  out.twisted_diagonal = tw.has_value() && project_right(m.prod, x).order() == x.order();
  if (out.twisted_diagonal) out.twist = tw;
  out.endopermutation = is_endopermutation(v, seed);
  out.coprime_dim = v.dim() % f.p() != 0;
  if (out.twisted_diagonal) {
    Subgroup d_left = defect_group(m.left, f, b), d_right = defect_group(m.right, f, c);
    out.left_defect = conjugating_element(tw->source, d_left, m.left).has_value();
    out.right_defect = conjugating_element(tw->target, d_right, m.right).has_value();
  }
  return out;
}

ModuleRep source_on_left(const Bimodule& m, const VertexSourceReport& r) {
  if (!r.twist) throw PreconditionError("vertex is not twisted diagonal");
  const GroupIso& phi = *r.twist;
  std::vector<int> map(m.prod.left.order(), -1);
  for (int u : phi.source.elements()) map[u] = m.prod.pair(u, phi(u));
  return pull_back(r.source, make_iso(phi.source, r.vertex, std::move(map)));
}

bool TwistedSummandReport::pass() const {
  return !summands.empty() && std::all_of(summands.begin(), summands.end(), [](const TwistedSummand& s) {
    return s.matched && s.full_twist_ok;
  });
}

TwistedSummandReport twisted_summands_check(const Group& g, const Field& f, const Subgroup& p, const Subgroup& q,
                                            std::uint64_t seed) {
  if (!p.is_p_group(f.p()) || !q.is_p_group(f.p())) throw PreconditionError("P and Q must be p-subgroups");
  DirectProduct prod = direct_product(g, g);
  Subgroup whole = Subgroup::whole(g);
  Vec one = group_one(g);
  Bimodule kg = group_algebra_bimodule(prod, f, whole, whole, whole, one, one);
  Subgroup pq = product_subgroup(prod, p, q);
  Decomposition d = decompose(restrict(kg.module, pq), seed);
  struct Candidate {
    std::size_t order;
    ModuleRep module;
  };
  std::vector<Candidate> candidates;
  for (const auto& r : all_subgroups(p, f.p()))
    for (const auto& h : homomorphisms(r, q)) {
      if (!h.injective()) continue;
      Subgroup delta = twisted_diagonal(prod, make_iso(r, h.image(), h.map));
      candidates.push_back(Candidate{r.order(), permutation_module(pq, delta, f)});
    }
  TwistedSummandReport out;
  for (std::size_t cls = 0; cls < d.representative.size(); ++cls) {
    const ModuleRep& s = d.summands[d.representative[cls]].module;
    TwistedSummand ts;
    ts.dim = s.dim();
    ts.multiplicity = d.multiplicity[cls];
    for (const auto& c : candidates)
      if (c.module.dim() == s.dim() && is_isomorphic(s, c.module, seed)) {
        ts.matched = true;
        ts.twist_order = c.order;
        break;
      }
    ts.vertex_order = vertex(s).order();
    ts.full_twist_ok = ts.vertex_order != p.order() || ts.twist_order == p.order();
    out.summands.push_back(ts);
  }
  return out;
}

bool source_summand_check(const Bimodule& m, std::span<const Elem> b, std::span<const Elem> c,
                          const VertexSourceReport& r, std::uint64_t seed) {
  if (!r.twist) throw PreconditionError("vertex is not twisted diagonal");
  const Field& f = m.field();
  const Subgroup &p = r.twist->source, &q = r.twist->target;
  auto is = source_idempotents(block_of(m.left, f, b), p, seed);
  auto js = source_idempotents(block_of(m.right, f, c), q, seed);
  Bimodule ind = as_bimodule(m.prod, induce(r.source, product_subgroup(m.prod, p, q)));
  Vec one_l = group_one(m.prod.left), one_r = group_one(m.prod.right);
  for (const Vec& i : is) {
    Bimodule kgi = group_algebra_bimodule(m.prod, f, m.left, m.left, p, one_l, i);
    Bimodule left = tensor_over(kgi, ind);
    for (const Vec& j : js) {
      Bimodule jkh = group_algebra_bimodule(m.prod, f, m.right, q, m.right, j, one_r);
      Bimodule whole = tensor_over(left, jkh);
      Decomposition d = decompose(whole.module, seed);
      for (std::size_t cls : d.representative) {
        const ModuleRep& s = d.summands[cls].module;
        if (s.dim() == m.dim() && is_isomorphic(s, m.module, seed)) return true;
      }
    }
  }
  return false;
}

// ---------------------------------------------------------------------------

bool HarnessReport::pass() const {
  return hypotheses &&
         std::all_of(checks.begin(), checks.end(), [](const HarnessCheck& c) { return c.pass; });
}

HarnessReport endopermutation_harness(const HarnessInstance& in, std::uint64_t seed) {
  HarnessReport out;
  const ModuleRep& v = in.source;
  const Subgroup& p = v.group();
  const Field& f = v.field();
  if (in.b.group() != p) throw PreconditionError("B must be an interior algebra over the source's group");
  GAlgebra s = endomorphism_algebra(v);
  GAlgebra sb = tensor(s, in.b);

  out.gate.push_back(check("source-indecomposable", is_indecomposable(v)));
  out.gate.push_back(check("algebra-exists", in.a.has_value(),
                           in.a ? "" : "End(V) (x) B has no local point of P"));
  if (in.a) {
    const GAlgebra& a = *in.a;
    auto unit_primitive = [&](const GAlgebra& x) {
      PointedGroups lp = local_points(x, p, seed);
      return lp.points.size() == 1 && lp.points[0].multiplicity == 1;
    };
    out.gate.push_back(check("unit-primitive-A", unit_primitive(a)));
    out.gate.push_back(check("unit-primitive-B", unit_primitive(in.b)));
    out.gate.push_back(check("stable-basis-A", stable_basis(a, p, seed).has_value()));
    out.gate.push_back(check("stable-basis-B", stable_basis(in.b, p, seed).has_value()));
    out.gate.push_back(check("form-symmetric-nondegenerate", is_symmetric(a.algebra(), in.form) &&
                                                                 is_nondegenerate(a.algebra(), in.form)));
    out.gate.push_back(check("brauer-quotient-A-nonzero", brauer_quotient(a, p).alg().dim() > 0));
    bool emb = false;
    try {
      AlgebraHom g = make_hom(a.algebra(), sb.algebra(), in.embedding);
      emb = is_embedding(g);
      Vec g1 = g.image_of_unit();
      for (int u : p.generators())
        emb = emb && g(a.structure_unit(u)) == sb.algebra().mul(sb.structure_unit(u), g1);
    } catch (const InputError&) {
      emb = false;
    }
    out.gate.push_back(check("interior-embedding", emb));
  }
  out.hypotheses = std::all_of(out.gate.begin(), out.gate.end(), [](const HarnessCheck& c) { return c.pass; });
  if (!out.hypotheses) return out;
  const GAlgebra& a = *in.a;

  std::vector<Subgroup> subs = all_subgroups(p, f.p());
  for (const auto& q : subs) {
    const std::string tag = " Q=" + elements_label(q);
    std::size_t da = brauer_quotient(a, q).alg().dim(), db = brauer_quotient(in.b, q).alg().dim();
    BrauerData bs = brauer_quotient(s, q);
    std::size_t ds = bs.alg().dim();
    out.checks.push_back(check("quotients-nonzero" + tag, da && db && ds,
                               "dims A(Q)=" + std::to_string(da) + " B(Q)=" + std::to_string(db) +
                                   " S(Q)=" + std::to_string(ds)));
    QuotientForm qf = form_quotient(a, in.form, q, p);
    out.checks.push_back(check("quotient-form" + tag, qf.symmetric && qf.nondegenerate));

    PointedGroups lps = local_points(s, q, seed);
    std::size_t ls = count_local(lps);
    out.checks.push_back(check("unique-local-point-S" + tag, ls == 1, std::to_string(ls) + " local points"));
    std::size_t la = count_local(local_points(a, q, seed)), lsb = count_local(local_points(sb, q, seed));
    out.checks.push_back(check("local-point-counts" + tag, la == lsb,
                               "A: " + std::to_string(la) + ", S(x)B: " + std::to_string(lsb)));

    Subgroup n = normalizer(q, p);
    for (const auto& r : subs) {
      if (!r.contains(q) || !n.contains(r) || ds == 0) continue;
      const std::string chain = " Q=" + elements_label(q) + " R=" + elements_label(r);
      GAlgebra sq = restrict(brauer_galgebra(s, bs), r);
      std::size_t dqr = brauer_quotient(sq, r).alg().dim();
      out.checks.push_back(check("chain-quotient-nonzero" + chain, dqr > 0, "dim S(Q)(R)=" + std::to_string(dqr)));
      PointedGroups lpr = local_points(s, r, seed);
      bool contained = false;
      for (std::size_t i = 0; i < lps.points.size() && !contained; ++i)
        for (std::size_t j = 0; j < lpr.points.size() && !contained; ++j)
          if (lps.local[i] && lpr.local[j])
            contained = pointed_contained(s, q, lps.points[i].representative, r, lpr.points[j].representative);
      out.checks.push_back(check("chain-local-containment" + chain, contained));
    }
  }

  Decomposition conj = decompose(s.rep(), seed);
  bool trivial = false;
  for (const auto& sm : conj.summands)
    if (sm.module.dim() == 1 && is_isomorphic(sm.module, trivial_module(p, f))) trivial = true;
  out.checks.push_back(check("trivial-summand-of-S", trivial));

  GAlgebra t3 = tensor(tensor(opposite_interior(s), s), in.b);
  if (t3.algebra().dim() > kDefaultDimCap)
    throw CapError("S^op (x) S (x) B has dimension " + std::to_string(t3.algebra().dim()));
  PointedGroups lp3 = local_points(t3, p, seed);
  std::size_t l3 = 0, mult = 0;
  for (std::size_t i = 0; i < lp3.points.size(); ++i)
    if (lp3.local[i]) {
      ++l3;
      mult = lp3.points[i].multiplicity;
    }
  out.checks.push_back(check("unique-local-point-SopSB", l3 == 1 && mult == 1,
                             std::to_string(l3) + " local points, multiplicity " + std::to_string(mult)));
  std::size_t sp = brauer_quotient(s, p).alg().dim(), bp = brauer_quotient(in.b, p).alg().dim();
  std::size_t t3p = lp3.brauer.alg().dim();
  out.checks.push_back(check("quotient-SopSB-dims", t3p == sp * sp * bp,
                             std::to_string(t3p) + " vs " + std::to_string(sp * sp * bp)));
  return out;
}

GroupAlgebraData group_algebra_data(const Subgroup& p, const Field& f) {
  GAlgebra a = conjugation_algebra(p, f);
  return GroupAlgebraData{a, SymmetricForm{f, unit_at(p.order(), 0)}};
}

HarnessInstance corner_instance(std::string label, const ModuleRep& v, const GAlgebra& b, const SymmetricForm& b_form,
                                std::uint64_t seed) {
  const Field& f = v.field();
  GAlgebra s = endomorphism_algebra(v);
  GAlgebra sb = tensor(s, b);
  HarnessInstance out{std::move(label), v, std::nullopt, b, SymmetricForm{f, {}}, Matrix(f, 0, 0)};
  PointedGroups lp = local_points(sb, v.group(), seed);
  for (std::size_t i = 0; i < lp.points.size(); ++i) {
    if (!lp.local[i]) continue;
    GCorner c = corner(sb, lp.points[i].representative);
    SymmetricForm big{f, tensor_form(f, trace_form(v.dim()), b_form.values)};
    Vec values;
    for (std::size_t k = 0; k < c.inclusion.cols(); ++k) values.push_back(big(c.inclusion.col_vec(k)));
    out.a = c.alg;
    out.form = SymmetricForm{f, std::move(values)};
    out.embedding = c.inclusion;
    break;
  }
  return out;
}

SourceAlgebraComparison compare_source_algebras(const Bimodule& m, std::span<const Elem> b, std::span<const Elem> c,
                                                const VertexSourceReport& r, std::uint64_t seed) {
  if (!r.twist) throw PreconditionError("vertex is not twisted diagonal");
  const Field& f = m.field();
  const GroupIso& phi = *r.twist;
  const Subgroup &p = phi.source, &q = phi.target;
  SourceAlgebraComparison out;
  Vec i = source_idempotents(block_of(m.left, f, b), p, seed).front();
  Vec j = source_idempotents(block_of(m.right, f, c), q, seed).front();

  // i M j, with B = j k[R] j acting on the right
  ColumnSpace n = column_space(m.left_mult(i) * m.right_mult(j));
  const std::size_t nd = n.dim();
  GAlgebra conj_r = restrict(conjugation_algebra(m.right, f), q);
  GCorner bq = corner(conj_r, local_coords(m.right, j));
  const Matrix id = Matrix::identity(f, nd);
  Matrix eqs(f, 0, nd * nd);
  for (std::size_t k = 0; k < bq.inclusion.cols(); ++k) {
    Matrix rb = n.restrict(m.right_mult(parent_coords(m.right, bq.inclusion.col_vec(k))));
    eqs = vstack(eqs, kron(id, rb.transpose()) - kron(rb, id));
  }
  Matrix null = nullspace(eqs);
  std::vector<Matrix> span;
  for (std::size_t k = 0; k < null.rows(); ++k) {
    Matrix x(f, nd, nd);
    for (std::size_t e = 0; e < nd * nd; ++e) x(e / nd, e % nd) = null(k, e);
    span.push_back(std::move(x));
  }
  EndAlgebra end = matrix_span_algebra(f, nd, span);
  std::vector<int> gens = p.generators();
  std::vector<Vec> units;
  for (int u : gens) units.push_back(end.to_elem(n.restrict(m.left_action(u))));
  GAlgebra eg = GAlgebra::interior(end.alg, p, gens, units);
  PointedGroups lp = local_points(eg, p, seed);
  std::optional<GAlgebra> a1;
  for (std::size_t k = 0; k < lp.points.size() && !a1; ++k)
    if (lp.local[k]) a1 = corner(eg, lp.points[k].representative).alg;
  if (!a1) {
    out.note = "no local point of P on End(iMj)";
    return out;
  }
  out.end_dim = a1->algebra().dim();

  // B as an interior P-algebra through phi, with the restricted standard form
  std::vector<Vec> b_units;
  for (int u : gens) b_units.push_back(bq.alg.structure_unit(phi(u)));
  GAlgebra tb = GAlgebra::interior(bq.alg.algebra(), p, gens, b_units);
  Vec b_values;
  for (std::size_t k = 0; k < bq.inclusion.cols(); ++k) b_values.push_back(bq.inclusion(0, k));
  ModuleRep vp = source_on_left(m, r);
  HarnessInstance ci = corner_instance("", vp, tb, SymmetricForm{f, b_values}, seed);
  if (!ci.a) {
    out.note = "no local point of P on End(V) (x) B";
    return out;
  }
  const GAlgebra& a2 = *ci.a;
  out.corner_dim = a2.algebra().dim();

  auto unit_span = [&](const GAlgebra& x) {
    std::vector<Vec> us;
    for (int u : p.elements()) us.push_back(x.structure_unit(u));
    return Subspace::span(f, x.algebra().dim(), us).dim() == x.algebra().dim();
  };
  if (out.end_dim != out.corner_dim) {
    out.attempted = true;
    out.note = "dimensions differ";
    return out;
  }
  if (!unit_span(*a1) || !unit_span(a2)) {
    out.note = "structure units do not span; isomorphism search not attempted";
    return out;
  }
  out.attempted = true;
  // phi(sigma_1(u)) = sigma_2(u) on a basis of structure units
  EchelonBuilder eb(f, out.end_dim);
  std::vector<Vec> src, dst;
  for (int u : p.elements())
    if (eb.add(a1->structure_unit(u))) {
      src.push_back(a1->structure_unit(u));
      dst.push_back(a2.structure_unit(u));
    }
  Matrix s1 = Matrix::from_cols(f, src, out.end_dim), s2 = Matrix::from_cols(f, dst, out.corner_dim);
  Matrix iso = s2 * *inverse(s1);
  bool ok = true;
  for (int u : p.elements()) ok = ok && iso.apply(a1->structure_unit(u)) == a2.structure_unit(u);
  try {
    AlgebraHom h = make_hom(a1->algebra(), a2.algebra(), iso);
    ok = ok && h.unital() && rank(iso) == out.end_dim;
  } catch (const InputError&) {
    ok = false;
  }
  out.isomorphic = ok;
  out.stable_basis = stable_basis(*a1, p, seed).has_value();
  if (ok) {
    Vec values;
    for (std::size_t k = 0; k < out.end_dim; ++k) values.push_back(ci.form(iso.col_vec(k)));
    out.instance = HarnessInstance{"", vp, a1, tb, SymmetricForm{f, std::move(values)}, ci.embedding * iso};
  }
  return out;
}

// ---------------------------------------------------------------------------

ExtensionReport extension_check(const Bimodule& m, std::span<const Elem> b, std::span<const Elem> c,
                                const VertexSourceReport& r, const Field& bigger, std::uint64_t seed) {
  const Field& k = m.field();
  ExtensionReport out;
  auto descent_of = [&](const Subgroup& h, std::span<const Elem> blk) {
    for (auto& rec : galois_descent(h, k, bigger))
      if (rec.base_block == Vec(blk.begin(), blk.end())) return rec;
    throw PreconditionError("idempotent is not a block");
  };
  GaloisDescentRecord lb = descent_of(m.left, b), rb = descent_of(m.right, c);
  out.left_degree = lb.definition_degree;
  out.right_degree = rb.definition_degree;

  Bimodule ext = scalar_extend(m, bigger);
  Decomposition d = decompose(ext.module, seed);
  out.summands = d.summands.size();
  ModuleRep v_ext = scalar_extend(r.source, bigger);
  out.vertices_match = true;
  for (std::size_t cls : d.representative) {
    const ModuleRep& s = d.summands[cls].module;
    Subgroup x = vertex(s);
    if (!conjugating_element(x, r.vertex, s.group())) {
      out.vertices_match = false;
      continue;
    }
    // sources are taken at the vertex of M itself
    for (const ModuleRep& v : sources(s, r.vertex, seed))
      if (v.dim() == v_ext.dim() && is_isomorphic(v, v_ext, seed)) out.sources_descend = true;
    Bimodule sb = as_bimodule(m.prod, s);
    for (const Vec& bt : lb.extension_blocks)
      for (const Vec& ct : rb.extension_blocks)
        if (!out.stable_summand && check_stable_equivalence(sb, bt, ct, seed).pass()) out.stable_summand = true;
  }
  return out;
}

std::vector<Witness> witness_set(bool extensions) {
  std::vector<Witness> out;
  struct Identity {
    const char* group;
    unsigned p;
  };
  for (const Identity& w : {Identity{"C2", 2}, Identity{"C4", 2}, Identity{"C2xC2", 2}, Identity{"C3", 3}}) {
    Group g = Group::named(w.group);
    Field f = Field::prime(w.p);
    DirectProduct prod = direct_product(g, g);
    Subgroup whole = Subgroup::whole(g);
    Vec one = group_one(g);
    out.push_back(Witness{std::string("k") + w.group + " over " + f.spec(),
                          group_algebra_bimodule(prod, f, whole, whole, whole, one, one), one, one});
  }
  {
    Group a4 = Group::named("A4");
    Field f = Field::prime(3);
    DirectProduct prod = direct_product(a4, a4);
    Subgroup whole = Subgroup::whole(a4), c3 = sylow(a4, 3);
    Vec b0;
    for (const auto& bd : blocks(a4, f)) {
      Elem s = 0;
      for (Elem x : bd.idempotent) s = f.add(s, x);
      if (s != 0) b0 = bd.idempotent;
    }
    Vec one = group_one(a4);
    out.push_back(Witness{"b0 kA4 as (kA4 b0, kC3) over " + f.spec(),
                          group_algebra_bimodule(prod, f, whole, whole, c3, b0, one), b0, one});
  }
  if (extensions) {
    const std::size_t base = out.size();
    for (std::size_t k = 0; k < base; ++k) {
      Field big = Field::standard(out[k].bimodule.field().p(), 2);
      out.push_back(extend_witness(out[k], big));
    }
  }
  return out;
}

Witness extend_witness(const Witness& w, const Field& bigger) {
  FieldEmbedding emb(w.bimodule.field(), bigger);
  std::string label = w.label.substr(0, w.label.rfind(" over ")) + " over " + bigger.spec();
  return Witness{std::move(label), scalar_extend(w.bimodule, bigger), emb.map(w.left_block), emb.map(w.right_block)};
}

}  // namespace bk
