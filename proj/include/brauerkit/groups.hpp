#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "brauerkit/errors.hpp"

namespace bk {

// Images of 0..degree-1.
using Perm = std::vector<int>;

inline constexpr std::size_t kDefaultOrderCap = 200;

namespace detail {
struct GroupData;
}

// A finite group stored as a Cayley table. Element 0 is the identity.
class Group {
 public:
  // Products compose right to left: (a*b)(i) = a(b(i)).
  static Group from_permutations(int degree, const std::vector<Perm>& gens,
                                 std::size_t order_cap = kDefaultOrderCap);
  // table[a*n+b] = a*b; validated exhaustively.
  static Group from_table(std::size_t n, std::vector<int> table, std::vector<int> gens,
                          std::vector<std::string> labels);
  // `group degree=n order=?` header, then one cycle-notation generator per line.
  static Group parse(std::string_view text, std::size_t order_cap = kDefaultOrderCap);
  // Small named groups: C<n>, S3, S4, D8, A4, A5, C2xC2 (V4), Q8.
  static Group named(std::string_view name);

  std::size_t order() const;
  int mul(int a, int b) const;
  int inv(int a) const;
  // g x g^-1
  int conj(int g, int x) const { return mul(mul(g, x), inv(g)); }
  int elem_order(int a) const;
  const std::vector<int>& generators() const;
  const std::string& label(int a) const;
  const std::vector<std::vector<int>>& conjugacy_classes() const;
  const std::string& name() const;

  bool operator==(const Group& o) const { return d_ == o.d_; }
  bool operator!=(const Group& o) const { return d_ != o.d_; }

 private:
  explicit Group(std::shared_ptr<const detail::GroupData> d) : d_(std::move(d)) {}
  std::shared_ptr<const detail::GroupData> d_;
};

Perm parse_cycles(std::string_view text, int degree);
std::string format_cycles(const Perm& p);

class Subgroup {
 public:
  static Subgroup generated(const Group& g, std::span<const int> gens);
  static Subgroup whole(const Group& g);
  static Subgroup trivial(const Group& g);
  // Validates closure; elems need not be sorted.
  static Subgroup from_elements(const Group& g, std::vector<int> elems);

  const Group& group() const { return g_; }
  std::size_t order() const { return elems_.size(); }
  const std::vector<int>& elements() const { return elems_; }
  bool contains(int x) const;
  bool contains(const Subgroup& o) const;
  // Greedy generating set: least elements not already generated.
  std::vector<int> generators() const;
  bool is_p_group(unsigned p) const;

  bool operator==(const Subgroup& o) const { return g_ == o.g_ && elems_ == o.elems_; }
  bool operator!=(const Subgroup& o) const { return !(*this == o); }
  bool operator<(const Subgroup& o) const;

 private:
  Subgroup(Group g, std::vector<int> elems) : g_(std::move(g)), elems_(std::move(elems)) {}
  Group g_;
  std::vector<int> elems_;  // sorted
};

// g H g^-1
Subgroup conjugate(const Subgroup& h, int g);
Subgroup normalizer(const Subgroup& h, const Subgroup& within);
Subgroup centralizer(const Subgroup& h, const Subgroup& within);
Subgroup intersect(const Subgroup& a, const Subgroup& b);
// Some g in `within` with g a g^-1 = b.
std::optional<int> conjugating_element(const Subgroup& a, const Subgroup& b, const Subgroup& within);

// One representative per `within`-conjugacy class of subgroups of `within`,
// each the least conjugate, ordered by (order, elements). p = 0: all subgroups.
std::vector<Subgroup> subgroup_classes(const Subgroup& within, unsigned p = 0);
std::vector<Subgroup> subgroup_classes(const Group& g, unsigned p = 0);
// Every subgroup (not up to conjugacy).
std::vector<Subgroup> all_subgroups(const Subgroup& within, unsigned p = 0);
std::vector<Subgroup> maximal_subgroups(const Subgroup& h);
Subgroup sylow(const Group& g, unsigned p);
std::size_t p_part(std::size_t n, unsigned p);

// Representatives of the left cosets xQ in P, least element index per coset.
std::vector<int> left_transversal(const Subgroup& p, const Subgroup& q);

// ---------------------------------------------------------------------------

struct DirectProduct {
  Group group;
  Group left, right;
  std::vector<int> p1, p2;  // projections as index maps
  int pair(int a, int b) const { return a * static_cast<int>(right.order()) + b; }
};

DirectProduct direct_product(const Group& g, const Group& h);
Subgroup project_left(const DirectProduct& prod, const Subgroup& x);
Subgroup project_right(const DirectProduct& prod, const Subgroup& x);
// A x B as a subgroup of the product.
Subgroup product_subgroup(const DirectProduct& prod, const Subgroup& a, const Subgroup& b);

// Group homomorphism defined on `source`; map is indexed by element of the
// source's parent group, -1 off the source.
struct GroupHom {
  Subgroup source;
  Subgroup target_group;  // subgroup of the codomain containing the image
  std::vector<int> map;
  int operator()(int x) const { return map.at(static_cast<std::size_t>(x)); }
  Subgroup image() const;
  bool injective() const;
};

// Checks multiplicativity exhaustively.
bool is_homomorphism(const GroupHom& h);
// All homomorphisms source -> target, by generator images.
std::vector<GroupHom> homomorphisms(const Subgroup& source, const Subgroup& target);

// Isomorphism between a subgroup of G and a subgroup of H.
struct GroupIso {
  Subgroup source, target;
  std::vector<int> map;
  int operator()(int x) const { return map.at(static_cast<std::size_t>(x)); }
  GroupIso inverse() const;
};

GroupIso make_iso(const Subgroup& source, const Subgroup& target, std::vector<int> map);
GroupIso identity_iso(const Subgroup& s);

// {(u, phi(u))}
Subgroup twisted_diagonal(const DirectProduct& prod, const GroupIso& phi);
// When |X| = |p1(X)|, the iso u -> p2(p1^-1(u)) from p1(X) to p2(X).
std::optional<GroupIso> is_twisted_diagonal(const DirectProduct& prod, const Subgroup& x);

}  // namespace bk
