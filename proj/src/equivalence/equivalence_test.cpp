#include <doctest.h>

#include <set>

#include "brauerkit/equivalence.hpp"

using namespace bk;

namespace {

Vec one_of(const Group& g) {
  Vec v(g.order(), 0);
  v[0] = 1;
  return v;
}

Bimodule identity_bimodule(const Group& g, const Field& f) {
  DirectProduct prod = direct_product(g, g);
  Subgroup w = Subgroup::whole(g);
  return group_algebra_bimodule(prod, f, w, w, w, one_of(g), one_of(g));
}

// dim (M (x)_R N)^* = dim Hom_R(M, N^*), with M turned into a left module by
// r * m = m r^-1 and N^* the dual of N restricted to R.
std::size_t balanced_dim_oracle(const Bimodule& m, const Bimodule& n) {
  const Subgroup& r = m.right;
  const Field& f = m.field();
  std::vector<Matrix> mm(r.group().order(), Matrix(f, 0, 0)), nn(r.group().order(), Matrix(f, 0, 0));
  for (int x : r.elements()) {
    mm[x] = m.module.act(m.prod.pair(0, x));
    nn[x] = n.module.act(n.prod.pair(x, 0));
  }
  ModuleRep mr = ModuleRep::from_elements(r, f, m.dim(), mm);
  ModuleRep nr = ModuleRep::from_elements(r, f, n.dim(), nn);
  return hom_space(mr, dual(nr)).size();
}

// Double cosets P g Q by brute force.
std::vector<std::size_t> double_coset_sizes(const Group& g, const Subgroup& p, const Subgroup& q) {
  std::vector<char> seen(g.order(), 0);
  std::vector<std::size_t> sizes;
  for (int x = 0; x < static_cast<int>(g.order()); ++x) {
    if (seen[x]) continue;
    std::set<int> c;
    for (int a : p.elements())
      for (int b : q.elements()) c.insert(g.mul(g.mul(a, x), b));
    for (int y : c) seen[y] = 1;
    sizes.push_back(c.size());
  }
  std::sort(sizes.begin(), sizes.end());
  return sizes;
}

Subgroup klein_in_a4(const Group& a4) {
  for (const auto& s : subgroup_classes(a4, 2))
    if (s.order() == 4) return s;
  throw std::logic_error("no V4");
}

}  // namespace

TEST_CASE("bimodule actions match the product action") {
  for (const Witness& w : witness_set(false)) {
    const Bimodule& m = w.bimodule;
    CAPTURE(w.label);
    for (int z : m.module.group().elements()) {
      int g = m.prod.p1[z], h = m.prod.p2[z];
      CHECK(m.module.act(z) == m.left_action(g) * m.right_action(m.prod.right.inv(h)));
    }
    Bimodule again = as_bimodule(m.prod, m.module);
    CHECK(again.left == m.left);
    CHECK(again.right == m.right);
    CHECK(is_isomorphic(dual(dual(m)).module, m.module));
  }
}

TEST_CASE("tensor over the middle group") {
  Field f2 = Field::prime(2);
  for (const char* name : {"C2", "C4", "C2xC2"}) {
    Bimodule kp = identity_bimodule(Group::named(name), f2);
    Bimodule t = tensor_over(kp, kp);
    CHECK(t.dim() == kp.dim());
    CHECK(is_isomorphic(t.module, kp.module));
  }
  auto ws = witness_set(false);
  const Witness& a4 = ws.back();
  const Bimodule& m = a4.bimodule;
  Bimodule md = dual(m);
  Bimodule mm = tensor_over(m, md);
  CHECK(mm.dim() == 3);
  CHECK(mm.dim() == balanced_dim_oracle(m, md));
  Bimodule mdm = tensor_over(md, m);
  CHECK(mdm.dim() == 3);
  CHECK(mdm.dim() == balanced_dim_oracle(md, m));
  // the regular left factor acts as an identity
  Bimodule reg = regular_bimodule(m.prod, m.field(), m.left, a4.left_block);
  Bimodule rm = tensor_over(reg, m);
  CHECK(rm.dim() == m.dim());
  CHECK(is_isomorphic(rm.module, m.module));
  // (M (x) N)* = N* (x) M* and associativity
  Bimodule kg = identity_bimodule(Group::named("A4"), Field::prime(3));
  CHECK(kg.prod.group != m.prod.group);  // separate product groups, rebuild inside m.prod
  Subgroup a4w = m.left;
  Vec one = one_of(m.prod.left);
  Bimodule whole = group_algebra_bimodule(m.prod, m.field(), a4w, a4w, a4w, one, one);
  Bimodule lhs = dual(tensor_over(whole, m));
  Bimodule rhs = tensor_over(md, dual(whole));
  CHECK(is_isomorphic(lhs.module, rhs.module));
  Bimodule left_assoc = tensor_over(tensor_over(whole, m), md);
  Bimodule right_assoc = tensor_over(whole, tensor_over(m, md));
  CHECK(is_isomorphic(left_assoc.module, right_assoc.module));
  CHECK(balanced_dim_oracle(whole, m) == tensor_over(whole, m).dim());
  CHECK_THROWS_AS(tensor_over(m, m), PreconditionError);
}

TEST_CASE("stable equivalence certificates on the witness set") {
  for (const Witness& w : witness_set(true)) {
    CAPTURE(w.label);
    auto cert = check_stable_equivalence(w.bimodule, w.left_block, w.right_block);
    CHECK(cert.bimodule_ok);
    CHECK(cert.left_product.regular_found);
    CHECK(cert.left_product.remainder_projective);
    CHECK(cert.right_product.pass());
    CHECK(cert.pass());
  }
  // kS3 as a (kS3, k)-bimodule: M (x) M* is free, kS3 is not a summand.
  Group s3 = Group::named("S3");
  Field f2 = Field::prime(2);
  DirectProduct prod = direct_product(s3, s3);
  Subgroup w = Subgroup::whole(s3), one = Subgroup::trivial(s3);
  Vec e = one_of(s3);
  Bimodule m = group_algebra_bimodule(prod, f2, w, w, one, e, e);
  auto cert = check_stable_equivalence(m, e, e);
  CHECK(cert.bimodule_ok);
  CHECK_FALSE(cert.left_product.regular_found);
  CHECK(cert.right_product.pass());  // M* (x) M is k itself
  CHECK_FALSE(cert.pass());
  // wrong block: b M != M
  Bimodule kp = identity_bimodule(Group::named("C2"), f2);
  Vec zero(2, 0);
  auto bad = check_stable_equivalence(kp, zero, one_of(Group::named("C2")));
  CHECK_FALSE(bad.bimodule_ok);
  CHECK(bad.failure == "b M != M");
}

TEST_CASE("vertices and sources of the witness bimodules") {
  for (const Witness& w : witness_set(true)) {
    CAPTURE(w.label);
    auto r = vertex_source_check(w.bimodule, w.left_block, w.right_block);
    CHECK(r.twisted_diagonal);
    CHECK(r.endopermutation);
    CHECK(r.coprime_dim);
    CHECK(r.source.dim() == 1);
    CHECK(r.left_defect == std::optional<bool>(true));
    CHECK(r.right_defect == std::optional<bool>(true));
    CHECK(r.pass());
    CHECK(r.vertex.order() == w.bimodule.right.order());
    CHECK(source_summand_check(w.bimodule, w.left_block, w.right_block, r));
  }
}

TEST_CASE("trivial bimodule: the three conditions disagree without a stable equivalence") {
  Group c2 = Group::named("C2");
  Field f2 = Field::prime(2);
  DirectProduct prod = direct_product(c2, c2);
  Subgroup w = Subgroup::whole(c2);
  ModuleRep k = trivial_module(product_subgroup(prod, w, w), f2);
  Bimodule m = as_bimodule(prod, k);
  Vec e = one_of(c2);
  CHECK_FALSE(check_stable_equivalence(m, e, e).pass());
  auto r = vertex_source_check(m, e, e);
  CHECK(r.vertex.order() == 4);
  CHECK_FALSE(r.twisted_diagonal);
  CHECK(r.coprime_dim);
  CHECK_FALSE(r.consistent());
  CHECK_FALSE(r.pass());
}

TEST_CASE("restricted regular bimodules are induced from twisted diagonals") {
  struct Case {
    const char* group;
    unsigned p;
  };
  for (const Case c : {Case{"C2", 2}, Case{"C4", 2}, Case{"S3", 2}, Case{"A4", 2}, Case{"S3", 3}}) {
    Group g = Group::named(c.group);
    std::string group_name = c.group;
    CAPTURE(group_name);
    Field f = Field::prime(c.p);
    Subgroup p = std::string(c.group) == "A4" ? klein_in_a4(g) : sylow(g, c.p);
    auto report = twisted_summands_check(g, f, p, p);
    CHECK(report.pass());
    std::vector<std::size_t> dims;
    for (const auto& s : report.summands)
      for (std::size_t i = 0; i < s.multiplicity; ++i) dims.push_back(s.dim);
    std::sort(dims.begin(), dims.end());
    CHECK(dims == double_coset_sizes(g, p, p));
  }
  Group s3 = Group::named("S3");
  auto r = twisted_summands_check(s3, Field::prime(2), sylow(s3, 2), sylow(s3, 2));
  std::multiset<std::size_t> twists;
  for (const auto& s : r.summands) twists.insert(s.twist_order);
  CHECK(twists == std::multiset<std::size_t>{2, 1});
}

TEST_CASE("harness on kP with the trivial source") {
  Field f2 = Field::prime(2);
  for (const char* name : {"C2", "C4", "C2xC2"}) {
    Group g = Group::named(name);
    std::string group_name = name;
    CAPTURE(group_name);
    Subgroup p = Subgroup::whole(g);
    GroupAlgebraData b = group_algebra_data(p, f2);
    HarnessInstance in = corner_instance(name, trivial_module(p, f2), b.alg, b.form);
    REQUIRE(in.a.has_value());
    CHECK(in.a->algebra().dim() == g.order());
    HarnessReport r = endopermutation_harness(in);
    CHECK(r.hypotheses);
    for (const auto& c : r.checks) {
      CAPTURE(c.name);
      CAPTURE(c.witness);
      CHECK(c.pass);
    }
    CHECK(r.pass());
  }
}

TEST_CASE("harness on nontrivial endopermutation sources") {
  // Heller translates of k over C3 and C4.
  struct Case {
    const char* group;
    unsigned p;
    std::size_t n;
  };
  for (const Case c : {Case{"C3", 3, 2}, Case{"C4", 2, 3}}) {
    Group g = Group::named(c.group);
    std::string group_name = c.group;
    CAPTURE(group_name);
    Field f = Field::prime(c.p);
    Subgroup p = Subgroup::whole(g);
    GroupAlgebraData b = group_algebra_data(p, f);
    ModuleRep v = jordan_module(p, f, c.n);
    HarnessInstance in = corner_instance(c.group, v, b.alg, b.form);
    REQUIRE(in.a.has_value());
    HarnessReport r = endopermutation_harness(in);
    for (const auto& h : r.gate) {
      CAPTURE(h.name);
      CHECK(h.pass);
    }
    for (const auto& h : r.checks) {
      CAPTURE(h.name);
      CAPTURE(h.witness);
      CHECK(h.pass);
    }
  }
}

TEST_CASE("harness gate: the free kC2 source has no local point") {
  Group c2 = Group::named("C2");
  Field f2 = Field::prime(2);
  Subgroup p = Subgroup::whole(c2);
  GroupAlgebraData b = group_algebra_data(p, f2);
  HarnessInstance in = corner_instance("free", regular_module(p, f2), b.alg, b.form);
  CHECK_FALSE(in.a.has_value());
  HarnessReport r = endopermutation_harness(in);
  CHECK_FALSE(r.hypotheses);
  CHECK(r.checks.empty());
  CHECK(brauer_quotient(endomorphism_algebra(regular_module(p, f2)), p).alg().dim() == 0);
}

TEST_CASE("source algebra comparison on the witness set") {
  for (const Witness& w : witness_set(false)) {
    CAPTURE(w.label);
    auto r = vertex_source_check(w.bimodule, w.left_block, w.right_block);
    auto cmp = compare_source_algebras(w.bimodule, w.left_block, w.right_block, r);
    CAPTURE(cmp.note);
    CHECK(cmp.attempted);
    CHECK(cmp.isomorphic);
    CHECK(cmp.end_dim == cmp.corner_dim);
    CHECK(cmp.stable_basis);
    REQUIRE(cmp.instance.has_value());
    HarnessReport h = endopermutation_harness(*cmp.instance);
    CHECK(h.pass());
  }
}

TEST_CASE("scalar extension of the witness bimodules") {
  for (const Witness& w : witness_set(false)) {
    CAPTURE(w.label);
    auto r = vertex_source_check(w.bimodule, w.left_block, w.right_block);
    Field big = Field::standard(w.bimodule.field().p(), 2);
    auto e = extension_check(w.bimodule, w.left_block, w.right_block, r, big);
    CHECK(e.summands == 1);
    CHECK(e.vertices_match);
    CHECK(e.sources_descend);
    CHECK(e.stable_summand);
    CHECK(e.left_degree == e.right_degree);
    CHECK(e.pass());
  }
}
