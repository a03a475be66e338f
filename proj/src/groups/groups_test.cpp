#include <doctest.h>

#include <algorithm>
#include <set>

#include "brauerkit/groups.hpp"

using namespace bk;

namespace {

// Brute-force subgroup enumeration over all subsets generated by pairs; fine for |G| <= 24.
std::set<std::vector<int>> brute_subgroups(const Group& g) {
  std::set<std::vector<int>> out;
  const int n = static_cast<int>(g.order());
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) {
      std::vector<int> gens{a, b};
      out.insert(Subgroup::generated(g, gens).elements());
    }
  return out;
}

std::size_t brute_class_count(const Group& g) {
  auto subs = brute_subgroups(g);
  std::set<std::vector<int>> seen;
  std::size_t classes = 0;
  for (const auto& s : subs) {
    if (seen.count(s)) continue;
    ++classes;
    Subgroup h = Subgroup::from_elements(g, s);
    for (int x = 0; x < static_cast<int>(g.order()); ++x) seen.insert(conjugate(h, x).elements());
  }
  return classes;
}

}  // namespace

TEST_CASE("named group orders") {
  CHECK(Group::named("S3").order() == 6);
  CHECK(Group::named("S4").order() == 24);
  CHECK(Group::named("D8").order() == 8);
  CHECK(Group::named("A4").order() == 12);
  CHECK(Group::named("A5").order() == 60);
  CHECK(Group::named("Q8").order() == 8);
  CHECK(Group::named("V4").order() == 4);
  CHECK(Group::named("C7").order() == 7);
  CHECK(Group::named("C2xC4").order() == 8);
  CHECK(Group::named("C1").order() == 1);
  CHECK_THROWS_AS(Group::named("M11"), InputError);
}

TEST_CASE("group axioms and inverses") {
  for (auto name : {"S3", "D8", "Q8", "A4", "C2xC2"}) {
    Group g = Group::named(name);
    for (int a = 0; a < static_cast<int>(g.order()); ++a) {
      CHECK(g.mul(a, g.inv(a)) == 0);
      CHECK(g.mul(0, a) == a);
    }
  }
}

TEST_CASE("conjugacy classes") {
  CHECK(Group::named("S3").conjugacy_classes().size() == 3);
  CHECK(Group::named("S4").conjugacy_classes().size() == 5);
  CHECK(Group::named("D8").conjugacy_classes().size() == 5);
  CHECK(Group::named("Q8").conjugacy_classes().size() == 5);
  CHECK(Group::named("A4").conjugacy_classes().size() == 4);
  CHECK(Group::named("A5").conjugacy_classes().size() == 5);
}

TEST_CASE("subgroup classes match brute force") {
  CHECK(subgroup_classes(Group::named("S3")).size() == 4);
  CHECK(subgroup_classes(Group::named("D8")).size() == 8);
  CHECK(subgroup_classes(Group::named("A4")).size() == 5);
  CHECK(subgroup_classes(Group::named("S4")).size() == 11);
  CHECK(subgroup_classes(Group::named("Q8")).size() == 6);
  for (auto name : {"S3", "D8", "Q8", "A4", "S4", "C2xC4"}) {
    Group g = Group::named(name);
    CHECK(subgroup_classes(g).size() == brute_class_count(g));
    CHECK(all_subgroups(Subgroup::whole(g)).size() == brute_subgroups(g).size());
  }
}

TEST_CASE("class representatives are least conjugates") {
  Group g = Group::named("S4");
  Subgroup whole = Subgroup::whole(g);
  for (const auto& h : subgroup_classes(g))
    for (int x = 0; x < static_cast<int>(g.order()); ++x) CHECK_FALSE(conjugate(h, x) < h);
  (void)whole;
}

TEST_CASE("number of conjugates is the index of the normalizer") {
  for (auto name : {"S3", "D8", "A4", "S4"}) {
    Group g = Group::named(name);
    Subgroup whole = Subgroup::whole(g);
    for (const auto& h : subgroup_classes(g)) {
      std::set<std::vector<int>> conj;
      for (int x = 0; x < static_cast<int>(g.order()); ++x) conj.insert(conjugate(h, x).elements());
      CHECK(conj.size() * normalizer(h, whole).order() == g.order());
    }
  }
}

TEST_CASE("p-subgroups and Sylow") {
  Group s3 = Group::named("S3");
  Subgroup p2 = sylow(s3, 2);
  CHECK(p2.order() == 2);
  std::set<std::vector<int>> conj;
  for (int x = 0; x < 6; ++x) conj.insert(conjugate(p2, x).elements());
  CHECK(conj.size() == 3);
  CHECK(sylow(s3, 3).order() == 3);
  CHECK(sylow(Group::named("S4"), 2).order() == 8);
  CHECK(sylow(Group::named("A5"), 2).order() == 4);
  for (const auto& h : subgroup_classes(Group::named("S4"), 2)) CHECK(h.is_p_group(2));
  // 1, <(12)>, <(12)(34)>, C4, normal V4, other V4, D8
  CHECK(subgroup_classes(Group::named("S4"), 2).size() == 7);
  {
    Group s4 = Group::named("S4");
    std::size_t brute = 0;
    for (auto& s : brute_subgroups(s4))
      if (Subgroup::from_elements(s4, s).is_p_group(2)) ++brute;
    CHECK(all_subgroups(Subgroup::whole(s4), 2).size() == brute);
  }
  CHECK(p_part(24, 2) == 8);
  CHECK(p_part(60, 5) == 5);
}

TEST_CASE("centralizer and normalizer") {
  Group s3 = Group::named("S3");
  Subgroup c3 = sylow(s3, 3);
  Subgroup whole = Subgroup::whole(s3);
  CHECK(centralizer(c3, whole) == c3);
  CHECK(normalizer(c3, whole) == whole);
  Subgroup c2 = sylow(s3, 2);
  CHECK(normalizer(c2, whole) == c2);
  CHECK(intersect(c2, c3).order() == 1);
}

TEST_CASE("maximal subgroups") {
  Group d8 = Group::named("D8");
  auto m = maximal_subgroups(Subgroup::whole(d8));
  CHECK(m.size() == 3);
  for (auto& h : m) CHECK(h.order() == 4);
  CHECK(maximal_subgroups(Subgroup::whole(Group::named("C4"))).size() == 1);
}

TEST_CASE("left transversal partitions P") {
  Group s4 = Group::named("S4");
  Subgroup p = sylow(s4, 2);
  for (const auto& q : all_subgroups(p)) {
    auto reps = left_transversal(p, q);
    CHECK(reps.size() * q.order() == p.order());
    std::set<int> cover;
    for (int x : reps)
      for (int y : q.elements()) cover.insert(s4.mul(x, y));
    CHECK(cover.size() == p.order());
    for (int x : cover) CHECK(p.contains(x));
  }
  CHECK_THROWS_AS(left_transversal(sylow(s4, 3), p), PreconditionError);
}

TEST_CASE("group file parsing") {
  Group g = Group::parse("# dihedral\ngroup degree=4 order=8\n(1 2 3 4)\n(1 3)\n");
  CHECK(g.order() == 8);
  CHECK_THROWS_AS(Group::parse("group degree=4 order=6\n(1 2 3 4)\n"), InputError);
  CHECK_THROWS_AS(Group::parse("group degree=3\n(1 4)\n"), InputError);
  CHECK_THROWS_AS(Group::parse("grp degree=3\n"), InputError);
  CHECK_THROWS_AS(Group::parse("group degree=5 order=?\n(1 2 3 4 5)\n(1 2)\n", 100), CapError);
  CHECK(format_cycles(parse_cycles("(1 3 2)", 3)) == "(1 3 2)");
  CHECK(format_cycles(parse_cycles("", 3)) == "()");
}

TEST_CASE("from_table validation") {
  // C2 table
  Group c2 = Group::from_table(2, {0, 1, 1, 0}, {1}, {"e", "t"});
  CHECK(c2.order() == 2);
  CHECK_THROWS_AS(Group::from_table(2, {0, 1, 1, 1}, {1}, {"e", "t"}), InputError);
  CHECK_THROWS_AS(Group::from_table(3, {0, 1, 2, 1, 0, 2, 2, 2, 0}, {1}, {"a", "b", "c"}), InputError);
}

TEST_CASE("direct products and twisted diagonals") {
  Group c4 = Group::named("C4");
  DirectProduct prod = direct_product(c4, c4);
  CHECK(prod.group.order() == 16);
  auto homs = homomorphisms(Subgroup::whole(c4), Subgroup::whole(c4));
  CHECK(homs.size() == 4);
  std::size_t autos = 0;
  for (auto& h : homs) {
    if (!h.injective()) continue;
    ++autos;
    GroupIso phi = make_iso(h.source, h.target_group, h.map);
    Subgroup delta = twisted_diagonal(prod, phi);
    CHECK(delta.order() == 4);
    auto back = is_twisted_diagonal(prod, delta);
    REQUIRE(back.has_value());
    CHECK(back->map == phi.map);
    GroupIso inv = phi.inverse();
    for (int x = 0; x < 4; ++x) CHECK(inv(phi(x)) == x);
  }
  CHECK(autos == 2);
  Subgroup whole = Subgroup::whole(c4);
  Subgroup pr = product_subgroup(prod, whole, whole);
  CHECK(pr.order() == 16);
  CHECK_FALSE(is_twisted_diagonal(prod, pr).has_value());
  CHECK(project_left(prod, pr) == whole);
  // homomorphisms S3 -> C2: trivial and sign
  CHECK(homomorphisms(Subgroup::whole(Group::named("S3")), Subgroup::whole(Group::named("C2"))).size() == 2);
}
