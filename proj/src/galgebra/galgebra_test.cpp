#include <doctest.h>

#include <random>
#include <set>

#include "brauerkit/galgebra.hpp"

using namespace bk;

namespace {

struct Instance {
  const char* group;
  unsigned p;
};

const Instance kInstances[] = {{"S3", 2}, {"S3", 3}, {"D8", 2}, {"A4", 2}, {"A4", 3}, {"C2xC2", 2}, {"C4", 2}};

// Number of orbits of h acting on the group by conjugation.
std::size_t conjugation_orbits(const Subgroup& h) {
  const Group& g = h.group();
  std::set<std::set<int>> orbits;
  for (int x = 0; x < static_cast<int>(g.order()); ++x) {
    std::set<int> o;
    for (int u : h.elements()) o.insert(g.conj(u, x));
    orbits.insert(o);
  }
  return orbits.size();
}

std::size_t centralizer_order(const Subgroup& h) {
  const Group& g = h.group();
  std::size_t n = 0;
  for (int x = 0; x < static_cast<int>(g.order()); ++x) {
    bool ok = true;
    for (int u : h.elements()) ok = ok && g.mul(u, x) == g.mul(x, u);
    n += ok;
  }
  return n;
}

Vec random_vec(const Field& f, std::size_t n, std::mt19937_64& rng) {
  Vec v(n);
  for (auto& x : v) x = static_cast<Elem>(rng() % f.q());
  return v;
}

// kG -> End_k(kG), x -> left multiplication.
AlgebraHom left_regular(const GAlgebra& kg, const GAlgebra& end, const ModuleRep& reg) {
  const Field& f = kg.algebra().field();
  const std::size_t n = reg.dim();
  Matrix map(f, n * n, n);
  for (std::size_t x = 0; x < n; ++x) {
    const Matrix& m = reg.act(static_cast<int>(x));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) map(i * n + j, x) = m(i, j);
  }
  return make_hom(kg.algebra(), end.algebra(), map);
}

}  // namespace

TEST_CASE("fixed points of the conjugation algebra count conjugation orbits") {
  for (const char* name : {"S3", "D8", "A4", "Q8"}) {
    Group g = Group::named(name);
    GAlgebra a = conjugation_algebra(g, Field::prime(2));
    for (const auto& h : all_subgroups(Subgroup::whole(g))) CHECK(fixed_points(a, h).dim() == conjugation_orbits(h));
    CHECK(fixed_points(a, Subgroup::whole(g)) == center(a.algebra()));
    CHECK(fixed_points(a, Subgroup::trivial(g)).dim() == g.order());
  }
  Group s3 = Group::named("S3");
  GAlgebra a = conjugation_algebra(s3, Field::prime(3));
  CHECK(fixed_points(a, sylow(s3, 3)).dim() == 4);
}

TEST_CASE("relative traces") {
  Group d8 = Group::named("D8");
  Field f = Field::prime(3);
  GAlgebra a = conjugation_algebra(d8, f);
  Subgroup w = Subgroup::whole(d8);
  for (const auto& q : all_subgroups(w)) {
    Vec t = relative_trace(a, w, q, a.algebra().unit());
    CHECK(t == a.algebra().scale(static_cast<Elem>((d8.order() / q.order()) % 3), a.algebra().unit()));
  }
  // g + g = 0 in characteristic 2
  Group c2 = Group::named("C2");
  GAlgebra b = conjugation_algebra(c2, Field::prime(2));
  CHECK(relative_trace(b, Subgroup::whole(c2), Subgroup::trivial(c2), b.algebra().basis_vector(1)) ==
        b.algebra().zero());
  // a non-fixed element is rejected
  CHECK_THROWS_AS(relative_trace(a, w, w, a.algebra().basis_vector(2)), PreconditionError);
}

TEST_CASE("Brauer maps kill traces from the trivial subgroup") {
  Group d8 = Group::named("D8");
  GAlgebra a = conjugation_algebra(d8, Field::prime(2));
  std::mt19937_64 rng(7);
  for (const auto& p : all_subgroups(Subgroup::whole(d8), 2)) {
    if (p.order() == 1) continue;
    for (int trial = 0; trial < 5; ++trial) {
      Vec x = random_vec(a.algebra().field(), a.algebra().dim(), rng);
      Vec t = relative_trace(a, p, Subgroup::trivial(d8), x);
      for (const auto& q : all_subgroups(p))
        if (q.order() > 1) CHECK(brauer_quotient(a, q)(t) == Vec(brauer_quotient(a, q).alg().dim(), 0));
    }
  }
}

TEST_CASE("Brauer quotients of group algebras have the centralizer as basis") {
  for (Instance inst : kInstances) {
    Group g = Group::named(inst.group);
    GAlgebra a = conjugation_algebra(g, Field::prime(inst.p));
    for (const auto& p : subgroup_classes(g, inst.p)) {
      BrauerData bd = brauer_quotient(a, p);
      std::string group_name = inst.group;
      CAPTURE(group_name);
      CAPTURE(p.order());
      CHECK(bd.alg().dim() == centralizer_order(p));
      CHECK(bd.kernel == brauer_kernel_reference(a, p));
      CHECK(stable_basis(a, p).has_value());
      // multiplicative on fixed vectors
      for (std::size_t i = 0; i < bd.fixed_space.dim(); ++i)
        for (std::size_t j = 0; j < bd.fixed_space.dim(); ++j) {
          Vec x = bd.fixed_space.vector(i), y = bd.fixed_space.vector(j);
          CHECK(bd(a.algebra().mul(x, y)) == bd.alg().mul(bd(x), bd(y)));
        }
    }
  }
  Group s3 = Group::named("S3");
  GAlgebra a = conjugation_algebra(s3, Field::prime(2));
  CHECK(brauer_quotient(a, sylow(s3, 2)).alg().dim() == 2);
  CHECK(brauer_quotient(a, Subgroup::trivial(s3)).alg().dim() == 6);
  CHECK_THROWS_AS(brauer_quotient(a, sylow(s3, 3)), PreconditionError);
  Group c2 = Group::named("C2");
  CHECK(brauer_quotient(conjugation_algebra(c2, Field::prime(2)), Subgroup::whole(c2)).alg().dim() == 2);
}

TEST_CASE("stable bases") {
  Group c5 = Group::named("C5");
  Field f5 = Field::prime(5);
  Subgroup w = Subgroup::whole(c5);
  CHECK(stable_basis(trivial_action(matrix_algebra(f5, 2), w), w).has_value());
  CHECK_FALSE(stable_basis(endomorphism_algebra(jordan_module(w, f5, 2)), w).has_value());
  CHECK(stable_basis(endomorphism_algebra(jordan_module(w, f5, 1)), w).has_value());
}

TEST_CASE("kernel identities for Brauer maps and relative traces") {
  for (Instance inst : kInstances) {
    Group g = Group::named(inst.group);
    Field f = Field::prime(inst.p);
    GAlgebra a = conjugation_algebra(g, f);
    Subgroup whole = Subgroup::whole(g);
    for (const auto& p : all_subgroups(whole, inst.p)) {
      std::string group_name = inst.group;
      CAPTURE(group_name);
      CAPTURE(p.order());
      BrauerData bd = brauer_quotient(a, p);
      Subspace lower(f, g.order());
      for (const auto& q : all_subgroups(p))
        if (q.order() < p.order()) lower = lower + trace_image(a, whole, q);
      CHECK(bd.kernel.intersect(trace_image(a, whole, p)) == lower);
      if (p.order() == 1) continue;
      Subspace meet = Subspace::full(f, g.order());
      for (const auto& q : all_subgroups(p))
        if (q.order() > 1) meet = meet.intersect(brauer_quotient(a, q).kernel);
      CHECK(meet == trace_image(a, p, Subgroup::trivial(g)));
    }
  }
}

TEST_CASE("alpha maps") {
  Group d8 = Group::named("D8");
  GAlgebra a = conjugation_algebra(d8, Field::prime(2));
  Subgroup one = Subgroup::trivial(d8);
  Subgroup z = centralizer(Subgroup::whole(d8), Subgroup::whole(d8));
  REQUIRE(z.order() == 2);
  for (const auto& q : all_subgroups(Subgroup::whole(d8), 2)) {
    AlphaMap m = alpha_pq(a, one, q);
    CHECK(m.bijective());
    CHECK(m.map == Matrix::identity(a.algebra().field(), m.source.dim()));
  }
  // Q = 1: alpha is br_P on A^P
  for (const auto& p : all_subgroups(Subgroup::whole(d8), 2)) {
    AlphaMap m = alpha_pq(a, p, one);
    BrauerData bd = brauer_quotient(a, p);
    CHECK(m.domain == bd.fixed_space);
    for (std::size_t i = 0; i < bd.fixed_space.dim(); ++i)
      CHECK(m.map.apply(bd.fixed_space.vector(i)) == bd(bd.fixed_space.vector(i)));
  }
  CHECK(alpha_pq(a, z, z).bijective());
  // every chain P <= Q <= N(P) in each instance
  for (Instance inst : kInstances) {
    Group g = Group::named(inst.group);
    GAlgebra ga = conjugation_algebra(g, Field::prime(inst.p));
    for (const auto& p : all_subgroups(Subgroup::whole(g), inst.p))
      for (const auto& q : all_subgroups(normalizer(p, Subgroup::whole(g)), inst.p))
        if (q.contains(p)) CHECK(alpha_pq(ga, p, q).bijective());
  }
  Group s3 = Group::named("S3");
  GAlgebra b = conjugation_algebra(s3, Field::prime(3));
  CHECK_THROWS_AS(alpha_pq(b, sylow(s3, 3), Subgroup::generated(s3, std::vector<int>{1})), PreconditionError);
}

TEST_CASE("tensor alpha maps") {
  for (Instance inst : {Instance{"S3", 2}, Instance{"C4", 2}, Instance{"S3", 3}}) {
    Group g = Group::named(inst.group);
    Field f = Field::prime(inst.p);
    GAlgebra a = conjugation_algebra(g, f);
    for (const auto& p : subgroup_classes(g, inst.p)) {
      AlgebraHom h = alpha_tensor(a, a, p);
      CHECK(h.map.rows() == h.map.cols());
      CHECK(rank(h.map) == h.map.rows());
      AlgebraHom t = alpha_tensor(a, trivial_action(matrix_algebra(f, 1), Subgroup::whole(g)), p);
      CHECK(t.map == Matrix::identity(f, t.map.rows()));
    }
    AlgebraHom h1 = alpha_tensor(a, a, Subgroup::trivial(g));
    CHECK(h1.map == Matrix::identity(f, g.order() * g.order()));
  }
}

TEST_CASE("induced maps, embeddings and coverings") {
  Group s3 = Group::named("S3");
  Field f = Field::prime(2);
  GAlgebra a = conjugation_algebra(s3, f);
  AlgebraHom id{a.algebra(), a.algebra(), Matrix::identity(f, 6)};
  CHECK(is_covering(a, a, id));
  for (const auto& p : subgroup_classes(s3, 2)) CHECK(is_embedding(induced_map(a, a, id, p)));

  // eAe -> A for A = End(k + kC2) and e the projection on the trivial summand
  Group c2 = Group::named("C2");
  Subgroup w = Subgroup::whole(c2);
  ModuleRep v = direct_sum(trivial_module(w, f), regular_module(w, f));
  GAlgebra s = endomorphism_algebra(v);
  Vec e = s.algebra().basis_vector(0);
  GCorner c = corner(s, e);
  AlgebraHom inc = make_hom(c.alg.algebra(), s.algebra(), c.inclusion);
  CHECK(is_embedding(inc));
  CHECK(is_embedding(induced_map(c.alg, s, inc, w)));

  // x -> (x, 0) from kC2 into kC2 x kC2
  Algebra kc2 = group_algebra(c2, f);
  std::vector<Vec> prods(16, Vec(4, 0));
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      std::size_t k = (i + j) % 2;
      prods[i * 4 + j][k] = 1;
      prods[(i + 2) * 4 + (j + 2)][k + 2] = 1;
    }
  Algebra prod = Algebra::from_dense(f, 4, prods, Vec{1, 0, 1, 0});
  Matrix first(f, 4, 2);
  first(0, 0) = first(1, 1) = 1;
  GAlgebra src = trivial_action(kc2, w), tgt = trivial_action(prod, w);
  CHECK_FALSE(is_covering(src, tgt, make_hom(kc2, prod, first)));

  // equivariance is checked
  GAlgebra d8 = conjugation_algebra(Group::named("D8"), f);
  Matrix swap = Matrix::identity(f, 8);
  std::swap(swap(1, 1), swap(1, 2));
  std::swap(swap(2, 2), swap(2, 1));
  CHECK_THROWS_AS(require_equivariant(d8, d8, AlgebraHom{d8.algebra(), d8.algebra(), swap}), PreconditionError);
}

TEST_CASE("commutative diagrams of Brauer functors") {
  Group s3 = Group::named("S3");
  Field f = Field::prime(2);
  Subgroup w = Subgroup::whole(s3);
  GAlgebra a = conjugation_algebra(s3, f);
  ModuleRep reg = regular_module(w, f);
  GAlgebra e = endomorphism_algebra(reg);
  AlgebraHom lr = left_regular(a, e, reg);
  Subgroup one = Subgroup::trivial(s3), c2 = sylow(s3, 2);
  CHECK(diagram_functor_alpha(a, e, lr, one, c2));
  CHECK(diagram_functor_alpha(a, e, lr, c2, c2));
  AlgebraHom id{a.algebra(), a.algebra(), Matrix::identity(f, 6)};
  CHECK(diagram_functor_tensor(a, e, a, a, lr, id, c2));
  CHECK(diagram_alpha_tensor(a, a, one, c2));
  CHECK(diagram_alpha_tensor(a, a, c2, c2));

  Group d8 = Group::named("D8");
  GAlgebra b = conjugation_algebra(d8, f);
  Subgroup dw = Subgroup::whole(d8);
  Subgroup z = centralizer(dw, dw);
  for (const auto& q : all_subgroups(dw, 2)) {
    if (q.order() != 4) continue;
    CHECK(diagram_alpha_transitive(b, z, q, dw));
    CHECK(diagram_alpha_transitive(b, Subgroup::trivial(d8), z, q));
  }
  Group c2g = Group::named("C2");
  Subgroup cw = Subgroup::whole(c2g);
  GAlgebra k = conjugation_algebra(c2g, f);
  GAlgebra m = endomorphism_algebra(direct_sum(trivial_module(cw, f), regular_module(cw, f)));
  CHECK(diagram_tensor_associative(k, m, k, cw));
  CHECK(diagram_tensor_associative(m, k, m, Subgroup::trivial(c2g)));
  CHECK_THROWS_AS(diagram_alpha_transitive(b, dw, z, z), PreconditionError);
}

TEST_CASE("local points") {
  Field f = Field::prime(2);
  for (const char* name : {"C4", "D8", "C2xC2"}) {
    Group g = Group::named(name);
    Subgroup w = Subgroup::whole(g);
    PointedGroups pg = local_points(conjugation_algebra(g, f), w);
    CHECK(pg.points.size() == 1);
    CHECK(pg.local == std::vector<bool>{true});
    CHECK(pg.brauer.alg().dim() == centralizer(w, w).order());
  }
  Group s3 = Group::named("S3");
  PointedGroups one = local_points(conjugation_algebra(s3, f), Subgroup::trivial(s3));
  CHECK(std::all_of(one.local.begin(), one.local.end(), [](bool b) { return b; }));
  CHECK(one.points.size() == one.quotient_points.size());

  // End(kC2): one point on the fixed algebra, and the Brauer quotient is zero
  Group c2 = Group::named("C2");
  Subgroup cw = Subgroup::whole(c2);
  PointedGroups free = local_points(endomorphism_algebra(regular_module(cw, f)), cw);
  CHECK(free.points.size() == 1);
  CHECK(free.points[0].multiplicity == 1);
  CHECK(free.brauer.alg().dim() == 0);
  CHECK(free.local == std::vector<bool>{false});
  // End(k + kC2) has a local point with multiplicity 1
  PointedGroups mixed =
      local_points(endomorphism_algebra(direct_sum(trivial_module(cw, f), regular_module(cw, f))), cw);
  std::size_t n_local = std::count(mixed.local.begin(), mixed.local.end(), true);
  CHECK(n_local == 1);
}

TEST_CASE("pointed group containment") {
  Field f = Field::prime(2);
  Group c2 = Group::named("C2");
  Subgroup one = Subgroup::trivial(c2), cw = Subgroup::whole(c2);
  GAlgebra m2 = trivial_action(matrix_algebra(f, 2), cw);
  Vec e11 = m2.algebra().basis_vector(0), e22 = m2.algebra().basis_vector(3);
  CHECK(pointed_contained(m2, one, e22, one, e11));
  CHECK(pointed_contained(m2, one, e22, cw, m2.algebra().unit()));
  Group c3 = Group::named("C3");
  Field f4 = Field::standard(2, 2);
  Algebra kc3 = group_algebra(c3, f4);
  auto blocks = central_primitive_idempotents(kc3);
  REQUIRE(blocks.size() == 3);
  GAlgebra t = trivial_action(kc3, Subgroup::trivial(c3));
  CHECK_FALSE(pointed_contained(t, Subgroup::trivial(c3), blocks[0], Subgroup::trivial(c3), blocks[1]));
  CHECK(pointed_contained(t, Subgroup::trivial(c3), blocks[2], Subgroup::trivial(c3), kc3.unit()));
}

TEST_CASE("symmetric forms descend to Brauer quotients") {
  Field f = Field::prime(2);
  Group d8 = Group::named("D8");
  GAlgebra a = conjugation_algebra(d8, f);
  SymmetricForm s{f, *a.algebra().form()};
  Subgroup w = Subgroup::whole(d8), one = Subgroup::trivial(d8);
  QuotientForm q1 = form_quotient(a, s, one, w);
  CHECK(q1.form.values == s.values);
  Subgroup z = centralizer(w, w);
  QuotientForm qz = form_quotient(a, s, z, w);
  CHECK(qz.symmetric);
  CHECK(qz.nondegenerate);
  CHECK(qz.form.values.size() == centralizer_order(z));
  for (const auto& q : all_subgroups(w, 2)) {
    QuotientForm qf = form_quotient(a, s, q, w);
    CHECK(qf.symmetric);
    CHECK(qf.nondegenerate);
  }
  CHECK_THROWS_AS(form_quotient(a, s, w, z), PreconditionError);
  // End(kC2) with the trace form: A(C2) = 0
  Group c2 = Group::named("C2");
  Subgroup cw = Subgroup::whole(c2);
  GAlgebra e = endomorphism_algebra(regular_module(cw, f));
  SymmetricForm tr{f, Vec{1, 0, 0, 1}};
  CHECK_THROWS_AS(form_quotient(e, tr, cw, cw), PreconditionError);
  SymmetricForm degenerate{f, Vec(8, 0)};
  CHECK_THROWS_AS(form_quotient(a, degenerate, one, w), PreconditionError);
}

TEST_CASE("a single point on the Brauer quotient picks out one stable block") {
  // kC3 over GF(4), C2 acting by inversion
  Group c3 = Group::named("C3");
  Group c2 = Group::named("C2");
  Field f4 = Field::standard(2, 2);
  Algebra kc3 = group_algebra(c3, f4);
  Matrix inv(f4, 3, 3);
  for (int x = 0; x < 3; ++x) inv(c3.inv(x), x) = 1;
  Subgroup cw = Subgroup::whole(c2);
  std::vector<int> gens = cw.generators();
  GAlgebra a = GAlgebra::from_generators(kc3, cw, gens, {inv});
  StablePoint sp = unique_stable_point(a, cw);
  CHECK(sp.matching_blocks == 1);
  CHECK(sp.complement_in_kernel);
  CHECK(fixed_points(a, cw).contains(sp.block));

  // End(k + kC2) over GF(2): simple, A(C2) = k
  Field f = Field::prime(2);
  GAlgebra s = endomorphism_algebra(direct_sum(trivial_module(cw, f), regular_module(cw, f)));
  StablePoint whole = unique_stable_point(s, cw);
  CHECK(whole.matching_blocks == 1);
  CHECK(whole.block == s.algebra().unit());
  CHECK(whole.complement_in_kernel);

  // kC2 is not semisimple in characteristic 2
  CHECK_THROWS_AS(unique_stable_point(conjugation_algebra(c2, f), cw), PreconditionError);
}

TEST_CASE("interior structure") {
  Group s3 = Group::named("S3");
  Field f = Field::prime(3);
  GAlgebra a = conjugation_algebra(s3, f);
  CHECK(a.is_interior());
  for (int g = 0; g < 6; ++g) CHECK(a.structure_unit(g) == a.algebra().basis_vector(static_cast<std::size_t>(g)));
  GAlgebra r = restrict(a, sylow(s3, 3));
  CHECK(r.group() == sylow(s3, 3));
  CHECK(r.is_interior());
  GAlgebra t = tensor(a, a);
  CHECK(t.is_interior());
  CHECK(t.algebra().dim() == 36);
  // a non-automorphism is rejected
  Matrix bad = Matrix::identity(f, 6);
  bad(0, 0) = 2;
  std::vector<int> gens = Subgroup::whole(s3).generators();
  std::vector<Matrix> mats(gens.size(), bad);
  CHECK_THROWS(GAlgebra::from_generators(a.algebra(), Subgroup::whole(s3), gens, mats));
}
