#include <doctest.h>

#include <algorithm>
#include <set>

#include "brauerkit/modrep.hpp"

using namespace bk;

namespace {

// Jordan block sizes of a unipotent matrix, from ranks of powers of (x - 1).
std::multiset<std::size_t> jordan_type(const Matrix& x) {
  const std::size_t n = x.rows();
  Matrix nil = x - Matrix::identity(x.field(), n);
  std::vector<std::size_t> ranks{n};
  Matrix pw = Matrix::identity(x.field(), n);
  for (std::size_t k = 1; k <= n + 1; ++k) {
    pw = pw * nil;
    ranks.push_back(rank(pw));
  }
  std::multiset<std::size_t> out;
  for (std::size_t k = 1; k <= n; ++k) {
    // blocks of size >= k minus blocks of size >= k+1
    std::size_t ge_k = ranks[k - 1] - ranks[k], ge_k1 = ranks[k] - ranks[k + 1];
    for (std::size_t c = 0; c < ge_k - ge_k1; ++c) out.insert(k);
  }
  return out;
}

std::multiset<std::size_t> summand_dims(const Decomposition& d) {
  std::multiset<std::size_t> out;
  for (const auto& s : d.summands) out.insert(s.module.dim());
  return out;
}

std::size_t double_cosets(const Subgroup& g, const Subgroup& h) {
  const Group& grp = g.group();
  std::set<std::vector<int>> seen;
  for (int x : g.elements()) {
    std::set<int> dc;
    for (int a : h.elements())
      for (int b : h.elements()) dc.insert(grp.mul(grp.mul(a, x), b));
    seen.insert(std::vector<int>(dc.begin(), dc.end()));
  }
  return seen.size();
}

ModuleRep conjugated(const ModuleRep& m, const Matrix& t) {
  Matrix ti = *inverse(t);
  std::vector<Matrix> act(m.group().group().order(), Matrix(m.field(), 0, 0));
  for (int x : m.group().elements()) act[x] = t * m.act(x) * ti;
  return ModuleRep::from_elements(m.group(), m.field(), m.dim(), act);
}

}  // namespace

TEST_CASE("cyclic tensor products follow the Jordan type of the generator") {
  struct Case {
    const char* group;
    unsigned p;
  };
  for (Case c : {Case{"C5", 5}, Case{"C4", 2}, Case{"C3", 3}, Case{"C8", 2}}) {
    Group g = Group::named(c.group);
    Subgroup whole = Subgroup::whole(g);
    Field f = Field::prime(c.p);
    const int gen = g.generators().front();
    for (std::size_t a = 1; a <= g.order(); ++a)
      for (std::size_t b = a; b <= g.order() && a * b <= 20; ++b) {
        ModuleRep t = tensor(jordan_module(whole, f, a), jordan_module(whole, f, b));
        CHECK(summand_dims(decompose(t)) == jordan_type(t.act(gen)));
      }
  }
  // 2 (x) 2 = 1 + 3 in characteristic 5
  Group c5 = Group::named("C5");
  Field f5 = Field::prime(5);
  Subgroup w = Subgroup::whole(c5);
  Decomposition d = decompose(tensor(jordan_module(w, f5, 2), jordan_module(w, f5, 2)));
  CHECK(summand_dims(d) == std::multiset<std::size_t>{1, 3});
  CHECK(is_isomorphic(d.summands[0].module.dim() == 1 ? d.summands[1].module : d.summands[0].module,
                      jordan_module(w, f5, 3)));
}

TEST_CASE("jordan module relations are validated") {
  Group c4 = Group::named("C4");
  CHECK_THROWS_AS(jordan_module(Subgroup::whole(c4), Field::prime(2), 5), InputError);
  CHECK_THROWS_AS(jordan_module(Subgroup::whole(Group::named("V4")), Field::prime(2), 2), PreconditionError);
}

TEST_CASE("permutation module endomorphisms count double cosets") {
  for (auto name : {"S3", "D8", "A4"}) {
    Group g = Group::named(name);
    Subgroup whole = Subgroup::whole(g);
    for (unsigned p : {2u, 3u}) {
      Field f = Field::prime(p);
      for (const auto& h : subgroup_classes(g)) {
        if (h.order() == 1 && g.order() > 8) continue;
        ModuleRep m = permutation_module(whole, h, f);
        CHECK(hom_space(m, m).size() == double_cosets(whole, h));
      }
    }
  }
}

TEST_CASE("decomposition multiset does not depend on the seed") {
  Group s3 = Group::named("S3");
  Subgroup whole = Subgroup::whole(s3);
  for (unsigned p : {2u, 3u}) {
    ModuleRep reg = regular_module(whole, Field::prime(p));
    std::multiset<std::pair<std::size_t, std::size_t>> first;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      Decomposition d = decompose(reg, seed);
      std::multiset<std::pair<std::size_t, std::size_t>> now;
      for (const auto& s : d.summands) now.insert({s.module.dim(), s.iso_class});
      if (seed == 0) first = now;
      CHECK(now == first);
      for (const auto& s : d.summands) CHECK(s.projection * s.inclusion == Matrix::identity(s.module.field(), s.module.dim()));
    }
  }
  // kS3 at p=2: projective covers 2 (trivial) and 2 copies of the 2-dim simple
  Decomposition d2 = decompose(regular_module(whole, Field::prime(2)));
  CHECK(summand_dims(d2) == std::multiset<std::size_t>{2, 2, 2});
  CHECK(d2.multiplicity.size() == 2);
  Decomposition d3 = decompose(regular_module(whole, Field::prime(3)));
  CHECK(summand_dims(d3) == std::multiset<std::size_t>{3, 3});
  CHECK(decompose(regular_module(whole, Field::prime(3)), 0, 6).summands.size() == 2);
  CHECK_THROWS_AS(decompose(regular_module(whole, Field::prime(3)), 0, 5), CapError);
}

TEST_CASE("isomorphism survives a change of basis") {
  Group d8 = Group::named("D8");
  Subgroup whole = Subgroup::whole(d8);
  Field f = Field::prime(2);
  ModuleRep m = permutation_module(whole, subgroup_classes(d8)[1], f);
  Matrix t = Matrix::identity(f, m.dim());
  for (std::size_t i = 0; i + 1 < m.dim(); ++i) t(i, i + 1) = 1;
  REQUIRE(inverse(t).has_value());
  ModuleRep mt = conjugated(m, t);
  auto phi = find_isomorphism(m, mt);
  REQUIRE(phi.has_value());
  for (int x : whole.elements()) CHECK(mt.act(x) * *phi == *phi * m.act(x));
  Subgroup c4 = Subgroup::whole(Group::named("C4"));
  CHECK_FALSE(is_isomorphic(direct_sum(jordan_module(c4, f, 2), jordan_module(c4, f, 1)), jordan_module(c4, f, 3)));
  CHECK(is_isomorphic(dual(jordan_module(c4, f, 3)), jordan_module(c4, f, 3)));
}

TEST_CASE("projectivity agrees with freeness over p-groups") {
  Field f2 = Field::prime(2);
  for (auto name : {"C4", "V4", "D8"}) {
    Group g = Group::named(name);
    Subgroup whole = Subgroup::whole(g);
    for (const auto& h : subgroup_classes(g)) {
      ModuleRep m = permutation_module(whole, h, f2);
      // a p-group permutation module on cosets is free iff the stabilizer is trivial
      CHECK(is_projective(m) == (h.order() == 1));
      // and it is always projective relative to the stabilizer
      CHECK(relatively_projective(m, h));
    }
  }
  Subgroup s3 = Subgroup::whole(Group::named("S3"));
  CHECK(is_projective(regular_module(s3, Field::prime(3))));
  CHECK_FALSE(is_projective(trivial_module(s3, Field::prime(3))));
  CHECK(is_projective(trivial_module(s3, Field::prime(5))));
}

TEST_CASE("vertices and sources") {
  Group s3 = Group::named("S3");
  Subgroup whole = Subgroup::whole(s3);
  ModuleRep k2 = trivial_module(whole, Field::prime(2));
  Subgroup v = vertex(k2);
  CHECK(v.order() == 2);
  auto src = sources(k2, v);
  REQUIRE(src.size() == 1);
  CHECK(src[0].dim() == 1);
  CHECK(vertex(trivial_module(whole, Field::prime(3))).order() == 3);
  Decomposition d = decompose(regular_module(whole, Field::prime(2)));
  for (const auto& s : d.summands) CHECK(vertex(s.module).order() == 1);

  // A4 at p=2: the trivial module has the Sylow V4 as vertex
  Subgroup a4 = Subgroup::whole(Group::named("A4"));
  CHECK(vertex(trivial_module(a4, Field::prime(2))).order() == 4);
  // V4 acts regularly on the cosets of C3, so this module is projective
  ModuleRep m = permutation_module(a4, sylow(a4.group(), 3), Field::prime(2));
  CHECK(is_projective(m));
  CHECK_THROWS_AS(vertex(regular_module(whole, Field::prime(2))), PreconditionError);
}

TEST_CASE("permutation and endopermutation recognition") {
  Field f2 = Field::prime(2);
  Group d8 = Group::named("D8");
  Subgroup whole = Subgroup::whole(d8);
  for (const auto& h : subgroup_classes(d8)) {
    ModuleRep m = direct_sum(permutation_module(whole, h, f2), trivial_module(whole, f2));
    Matrix t = Matrix::identity(f2, m.dim());
    t(0, m.dim() - 1) = 1;
    auto basis = is_permutation_module(conjugated(m, t));
    REQUIRE(basis.has_value());
    CHECK(rank(*basis) == m.dim());
  }
  Subgroup c4 = Subgroup::whole(Group::named("C4"));
  CHECK(is_permutation_module(jordan_module(c4, f2, 2)).has_value());
  CHECK_FALSE(is_permutation_module(jordan_module(c4, f2, 3)).has_value());
  // the Heller translate of the trivial module is endopermutation
  CHECK(is_endopermutation(jordan_module(c4, f2, 3)));
  CHECK_THROWS_AS(is_permutation_module(trivial_module(Subgroup::whole(Group::named("S3")), f2)),
                  PreconditionError);
}

TEST_CASE("induction, restriction and twisting") {
  Group s4 = Group::named("S4");
  Subgroup whole = Subgroup::whole(s4);
  Subgroup p = sylow(s4, 2);
  Field f = Field::prime(2);
  ModuleRep ind = induce(trivial_module(p, f), whole);
  CHECK(ind.dim() == 3);
  // Frobenius reciprocity: Hom(Ind k, k) = Hom_P(k, k)
  CHECK(hom_space(ind, trivial_module(whole, f)).size() == 1);
  ModuleRep res = restrict(ind, p);
  CHECK(res.dim() == 3);
  for (int g : whole.elements()) {
    ModuleRep tw = twist(trivial_module(p, f), g);
    CHECK(tw.group() == conjugate(p, g));
  }
  Field f4 = Field::standard(2, 2);
  ModuleRep big = scalar_extend(ind, f4);
  CHECK(big.field() == f4);
  CHECK(hom_space(big, big).size() == hom_space(ind, ind).size());
}

TEST_CASE("module file round trip") {
  Group s3 = Group::named("S3");
  ModuleRep m = permutation_module(Subgroup::whole(s3), sylow(s3, 2), Field::prime(3));
  std::string text = m.serialize();
  ModuleRep back = ModuleRep::parse(text, s3);
  for (int x = 0; x < 6; ++x) CHECK(back.act(x) == m.act(x));
  CHECK_THROWS_AS(ModuleRep::parse("module group=S3 dim=1 field=p=3 n=1 poly=0,1\n1\n", s3), InputError);
  CHECK_THROWS_AS(ModuleRep::parse("module group=S3 dim=1 field=p=3 n=1 poly=0,1\n0\n1\n", s3), InputError);
  CHECK_THROWS_AS(ModuleRep::parse("mod dim=1\n", s3), InputError);
}

TEST_CASE("submodules") {
  Subgroup c4 = Subgroup::whole(Group::named("C4"));
  Field f = Field::prime(2);
  ModuleRep j3 = jordan_module(c4, f, 3);
  // first basis vector spans the fixed line
  ModuleRep line = submodule(j3, Matrix::from_cols(f, {{1, 0, 0}}, 3));
  CHECK(line.dim() == 1);
  CHECK_THROWS_AS(submodule(j3, Matrix::from_cols(f, {{0, 0, 1}}, 3)), InputError);
}

TEST_CASE("small decompositions and isomorphisms") {
  Field f2 = Field::prime(2);
  Subgroup c2 = Subgroup::whole(Group::named("C2"));
  ModuleRep k = trivial_module(c2, f2);
  Decomposition kk = decompose(direct_sum(k, k));
  CHECK(kk.summands.size() == 2);
  CHECK(kk.multiplicity == std::vector<std::size_t>{2});
  CHECK(decompose(regular_module(c2, f2)).summands.size() == 1);
  CHECK(is_isomorphic(regular_module(c2, f2), induce(trivial_module(Subgroup::trivial(c2.group()), f2), c2)));

  // sign of S3 is trivial in characteristic 2
  Group s3 = Group::named("S3");
  Subgroup w = Subgroup::whole(s3);
  std::vector<Matrix> sign(6, Matrix(f2, 0, 0));
  for (int x = 0; x < 6; ++x) sign[x] = Matrix::identity(f2, 1);
  CHECK(is_isomorphic(ModuleRep::from_elements(w, f2, 1, sign), trivial_module(w, f2)));
  CHECK_FALSE(is_isomorphic(trivial_module(w, f2), regular_module(w, f2)));

  // restriction then induction of the trivial module keeps it as a summand
  Subgroup p = sylow(s3, 2);
  Decomposition d = decompose(induce(restrict(trivial_module(w, f2), p), w));
  bool found = false;
  for (std::size_t r : d.representative) found = found || is_isomorphic(d.summands[r].module, trivial_module(w, f2));
  CHECK(found);
}

TEST_CASE("higman criterion is monotone and sharp at the vertex") {
  Field f2 = Field::prime(2);
  CHECK_FALSE(relatively_projective(trivial_module(Subgroup::whole(Group::named("C2")), f2),
                                    Subgroup::trivial(Group::named("C2"))));
  Group s4 = Group::named("S4");
  Subgroup w = Subgroup::whole(s4);
  ModuleRep k = trivial_module(w, f2);
  Subgroup v = vertex(k);
  CHECK(v.order() == 8);
  auto classes = subgroup_classes(w, 2);
  for (const auto& q : classes) {
    bool rp = relatively_projective(k, q);
    if (q.order() < v.order()) CHECK_FALSE(rp);
    for (const auto& r : all_subgroups(w, 2))
      if (r.contains(q) && rp) CHECK(relatively_projective(k, r));
  }
  // duality preserves vertices
  Decomposition d = decompose(permutation_module(w, classes[2], f2));
  for (std::size_t r : d.representative) {
    const ModuleRep& m = d.summands[r].module;
    CHECK(vertex(m).order() == vertex(dual(m)).order());
  }
  // the free module kP has vertex 1 and source k
  Subgroup c4 = Subgroup::whole(Group::named("C4"));
  ModuleRep free = regular_module(c4, f2);
  Subgroup v1 = vertex(free);
  CHECK(v1.order() == 1);
  auto src = sources(free, v1);
  REQUIRE(src.size() == 1);
  CHECK(src[0].dim() == 1);
}

TEST_CASE("permutation and endopermutation examples over cyclic groups") {
  Field f5 = Field::prime(5);
  Subgroup c5 = Subgroup::whole(Group::named("C5"));
  CHECK_FALSE(is_permutation_module(direct_sum(jordan_module(c5, f5, 1), jordan_module(c5, f5, 3))).has_value());
  CHECK(is_permutation_module(regular_module(c5, f5)).has_value());
  CHECK(is_endopermutation(jordan_module(c5, f5, 1)));
  CHECK_FALSE(is_endopermutation(jordan_module(c5, f5, 2)));
  CHECK(is_endopermutation(jordan_module(c5, f5, 4)));  // Heller translate of k
  Field f2 = Field::prime(2);
  Subgroup c2 = Subgroup::whole(Group::named("C2"));
  CHECK(is_endopermutation(regular_module(c2, f2)));
  Subgroup c8 = Subgroup::whole(Group::named("C8"));
  for (std::size_t n = 1; n <= 4; ++n) {
    ModuleRep j = jordan_module(c8, f2, n);
    CHECK(is_endopermutation(j) == is_endopermutation(dual(j)));
  }
}

TEST_CASE("scalar extension keeps vertices") {
  Field f2 = Field::prime(2);
  Field f4 = Field::standard(2, 2);
  Subgroup c3 = Subgroup::whole(Group::named("C3"));
  CHECK(decompose(regular_module(c3, f2)).summands.size() == 2);
  Decomposition big = decompose(scalar_extend(regular_module(c3, f2), f4));
  CHECK(big.summands.size() == 3);
  for (const auto& s : big.summands) CHECK(vertex(s.module).order() == 1);
  Subgroup s3 = Subgroup::whole(Group::named("S3"));
  CHECK(vertex(scalar_extend(trivial_module(s3, f2), f4)).order() == 2);
}

TEST_CASE("module header keys in the documented order") {
  Group c2 = Group::named("C2");
  ModuleRep m = ModuleRep::parse("module group=C2 field=p=2 n=1 poly=0,1 dim=2\n0 1\n1 0\n", c2);
  CHECK(is_isomorphic(m, regular_module(Subgroup::whole(c2), Field::prime(2))));
  CHECK_THROWS_AS(ModuleRep::parse("module group=C2 dim=1\n1\n", c2), InputError);
}
