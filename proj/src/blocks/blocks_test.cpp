#include <doctest.h>

#include <set>

#include "brauerkit/blocks.hpp"

using namespace bk;

namespace {

// All primitive idempotents of Z(kG) by enumerating the centre.
std::size_t primitive_central_idempotents(const Group& g, const Field& f) {
  Algebra kg = group_algebra(g, f);
  Subspace z = center(kg);
  std::vector<Vec> idem;
  std::size_t total = 1;
  for (std::size_t i = 0; i < z.dim(); ++i) total *= f.q();
  REQUIRE(total <= (1u << 16));
  for (std::size_t code = 1; code < total; ++code) {
    Vec x(kg.dim(), 0);
    std::size_t c = code;
    for (std::size_t i = 0; i < z.dim(); ++i, c /= f.q()) f.axpy(x, static_cast<Elem>(c % f.q()), z.vector(i));
    if (kg.is_idempotent(x)) idem.push_back(x);
  }
  std::size_t n = 0;
  for (const auto& e : idem) {
    bool primitive = true;
    for (const auto& e2 : idem)
      if (e2 != e && kg.mul(e, e2) == e2) primitive = false;
    n += primitive;
  }
  return n;
}

// br_P(b) != 0 in kG exactly when b has support on C_G(P).
Subgroup defect_by_support(const Group& g, unsigned p, const Vec& b) {
  std::optional<Subgroup> best;
  for (const auto& cls : subgroup_classes(g, p)) {
    Subgroup c = centralizer(cls, Subgroup::whole(g));
    bool hit = false;
    for (int x : c.elements()) hit = hit || b[static_cast<std::size_t>(x)] != 0;
    if (hit) best = cls;
  }
  return *best;
}

bool is_principal(const BlockData& b) {
  Elem s = 0;
  for (Elem c : b.idempotent) s = b.field.add(s, c);
  return s != 0;
}

}  // namespace

TEST_CASE("block idempotents partition the identity") {
  struct Case {
    const char* group;
    Field field;
  };
  const Case cases[] = {{"S3", Field::prime(2)}, {"S3", Field::prime(3)}, {"A4", Field::prime(2)},
                        {"A4", Field::prime(3)}, {"S4", Field::prime(2)}, {"S4", Field::prime(3)},
                        {"D8", Field::prime(2)}, {"C3", Field::prime(2)}, {"C3", Field::standard(2, 2)},
                        {"C5", Field::standard(2, 2)}, {"Q8", Field::prime(3)}};
  for (const auto& c : cases) {
    Group g = Group::named(c.group);
    std::string group_name = c.group;
    CAPTURE(group_name);
    CAPTURE(c.field.spec());
    Algebra kg = group_algebra(g, c.field);
    auto bs = blocks(g, c.field);
    CHECK(bs.size() == primitive_central_idempotents(g, c.field));
    Vec sum = kg.zero();
    std::size_t dims = 0;
    Subspace z = center(kg);
    for (std::size_t i = 0; i < bs.size(); ++i) {
      c.field.axpy(sum, 1, bs[i].idempotent);
      dims += bs[i].ideal_dim;
      CHECK(z.contains(bs[i].idempotent));
      CHECK(kg.is_idempotent(bs[i].idempotent));
      for (std::size_t j = 0; j < bs.size(); ++j)
        if (i != j) CHECK(kg.mul(bs[i].idempotent, bs[j].idempotent) == kg.zero());
      CHECK(bs[i].defect == defect_by_support(g, c.field.p(), bs[i].idempotent));
    }
    CHECK(sum == kg.unit());
    CHECK(dims == g.order());
    CHECK(std::count_if(bs.begin(), bs.end(), is_principal) == 1);
  }
}

TEST_CASE("block counts and defect groups on small examples") {
  for (const char* name : {"C4", "D8", "Q8", "C2xC2", "C8"}) {
    Group g = Group::named(name);
    auto bs = blocks(g, Field::prime(2));
    REQUIRE(bs.size() == 1);
    CHECK(bs[0].defect.order() == g.order());
  }
  Group c3 = Group::named("C3");
  CHECK(blocks(c3, Field::prime(2)).size() == 2);
  CHECK(blocks(c3, Field::standard(2, 2)).size() == 3);
  for (const auto& b : blocks(c3, Field::standard(2, 2))) CHECK(b.defect.order() == 1);
  Group s3 = Group::named("S3");
  for (const auto& b : blocks(s3, Field::prime(2)))
    if (is_principal(b)) CHECK(b.defect == sylow(s3, 2));
  Group a4 = Group::named("A4");
  auto b3 = blocks(a4, Field::prime(3));
  REQUIRE(b3.size() == 2);
  std::multiset<std::size_t> dims{b3[0].ideal_dim, b3[1].ideal_dim};
  CHECK(dims == std::multiset<std::size_t>{3, 9});
}

TEST_CASE("source idempotents and source algebras") {
  Group c4 = Group::named("C4");
  auto bc = blocks(c4, Field::prime(2));
  SourceAlgebra sc = source_algebra(bc[0]);
  CHECK(sc.idempotent == group_algebra(c4, Field::prime(2)).unit());
  CHECK(sc.algebra.algebra().dim() == 4);
  CHECK(sc.algebra.is_interior());

  Group a4 = Group::named("A4");
  Field f3 = Field::prime(3);
  for (const auto& b : blocks(a4, f3)) {
    SourceAlgebra s = source_algebra(b);
    BrauerData bd = brauer_quotient(restrict(conjugation_algebra(a4, f3), b.defect), b.defect);
    CHECK(bd(s.idempotent) != Vec(bd.alg().dim(), 0));
    if (b.ideal_dim == 3) {
      CHECK(b.defect.order() == 3);
      CHECK(s.idempotent == b.idempotent);
      CHECK(s.algebra.algebra().dim() == 3);
      CHECK(s.algebra.algebra().is_commutative());
    } else {
      CHECK(b.defect.order() == 1);
      CHECK(s.algebra.algebra().dim() == 1);
    }
  }
}

TEST_CASE("Galois descent of blocks") {
  struct Case {
    const char* group;
    Field small, big;
  };
  const Case cases[] = {
      {"C3", Field::prime(2), Field::standard(2, 2)}, {"S3", Field::prime(2), Field::standard(2, 2)},
      {"A4", Field::prime(2), Field::standard(2, 2)}, {"C5", Field::prime(2), Field::standard(2, 4)},
      {"C3", Field::prime(2), Field::standard(2, 4)}, {"A4", Field::prime(3), Field::standard(3, 2)},
      {"C5", Field::prime(3), Field::standard(3, 2)}, {"S3", Field::prime(3), Field::standard(3, 2)},
  };
  for (const auto& c : cases) {
    Group g = Group::named(c.group);
    std::string group_name = c.group;
    CAPTURE(group_name);
    CAPTURE(c.big.spec());
    auto recs = galois_descent(g, c.small, c.big);
    std::size_t ext_total = 0;
    for (const auto& r : recs) {
      CHECK(r.orbit_sum_matches);
      CHECK(r.defects_match);
      CHECK(r.extension_blocks.size() * c.small.n() == r.definition_degree);
      ext_total += r.extension_blocks.size();
    }
    CHECK(ext_total == blocks(g, c.big).size());
  }
  Group c3 = Group::named("C3");
  auto recs = galois_descent(c3, Field::prime(2), Field::standard(2, 2));
  REQUIRE(recs.size() == 2);
  for (const auto& r : recs) {
    Elem s = 0;
    for (Elem x : r.base_block) s ^= x;
    if (s != 0) {  // principal
      CHECK(r.extension_blocks.size() == 1);
      CHECK(r.definition_degree == 1);
    } else {
      CHECK(r.extension_blocks.size() == 2);
      CHECK(r.definition_degree == 2);
    }
  }
  auto p_group = galois_descent(Group::named("C4"), Field::prime(2), Field::standard(2, 2));
  CHECK(p_group.size() == 1);
  CHECK(p_group[0].extension_blocks.size() == 1);
  CHECK_THROWS_AS(galois_descent(c3, Field::standard(2, 2), Field::standard(2, 3)), PreconditionError);
}

TEST_CASE("blocks of a subgroup algebra") {
  Group a4 = Group::named("A4");
  Field f3 = Field::prime(3);
  Subgroup c3 = sylow(a4, 3);
  auto bs = blocks(c3, f3);
  REQUIRE(bs.size() == 1);
  CHECK(bs[0].defect == c3);
  CHECK(bs[0].ideal_dim == 3);
  Vec one(a4.order(), 0);
  one[0] = 1;
  CHECK(bs[0].idempotent == one);
  CHECK(defect_group(c3, f3, one) == c3);

  // V4 inside A4 at p = 3: four defect-zero blocks supported on V4.
  auto v4_elems = std::vector<int>{};
  for (const auto& s : subgroup_classes(a4, 2))
    if (s.order() == 4) v4_elems = s.elements();
  Subgroup v4 = Subgroup::from_elements(a4, v4_elems);
  auto bv = blocks(v4, f3);
  CHECK(bv.size() == 4);
  for (const auto& b : bv) {
    CHECK(b.defect.order() == 1);
    for (std::size_t x = 0; x < a4.order(); ++x)
      if (b.idempotent[x] != 0) CHECK(v4.contains(static_cast<int>(x)));
    SourceAlgebra s = source_algebra(b);
    CHECK(s.algebra.algebra().dim() == 1);
    CHECK(s.inclusion.rows() == a4.order());
  }
  Vec outside(a4.order(), 0);
  outside[static_cast<std::size_t>(c3.elements().back())] = 1;
  CHECK_THROWS_AS(defect_group(v4, f3, outside), PreconditionError);
}
