#include "brauerkit/groups.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace bk {

namespace detail {

struct GroupData {
  std::size_t n = 1;
  std::vector<int> table;
  std::vector<int> inverse;
  std::vector<int> gens;
  std::vector<std::string> labels;
  std::vector<std::vector<int>> classes;
  std::string name;
};

}  // namespace detail

namespace {

void validate_table(const detail::GroupData& d) {
  const std::size_t n = d.n;
  if (d.table.size() != n * n) throw InputError("Cayley table has wrong size");
  for (int v : d.table)
    if (v < 0 || static_cast<std::size_t>(v) >= n) throw InputError("Cayley table entry out of range");
  for (std::size_t a = 0; a < n; ++a) {
    if (d.table[a] != static_cast<int>(a) || d.table[a * n] != static_cast<int>(a))
      throw InputError("element 0 is not the identity");
    std::vector<char> seen(n, 0);
    for (std::size_t b = 0; b < n; ++b) seen[d.table[a * n + b]] = 1;
    if (std::find(seen.begin(), seen.end(), 0) != seen.end()) throw InputError("Cayley table row is not a permutation");
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const int ab = d.table[a * n + b];
      for (std::size_t c = 0; c < n; ++c)
        if (d.table[ab * n + c] != d.table[a * n + d.table[b * n + c]])
          throw InputError("Cayley table is not associative");
    }
}

void finish(detail::GroupData& d) {
  const std::size_t n = d.n;
  d.inverse.assign(n, -1);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (d.table[a * n + b] == 0) d.inverse[a] = static_cast<int>(b);
  std::vector<char> done(n, 0);
  for (std::size_t x = 0; x < n; ++x) {
    if (done[x]) continue;
    std::set<int> cls;
    for (std::size_t g = 0; g < n; ++g) {
      int y = d.table[d.table[g * n + x] * n + d.inverse[g]];
      cls.insert(y);
    }
    for (int y : cls) done[y] = 1;
    d.classes.emplace_back(cls.begin(), cls.end());
  }
}

Perm compose(const Perm& a, const Perm& b) {
  Perm r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[b[i]];
  return r;
}

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    auto e = line.find_last_not_of(" \t\r");
    out.push_back(line.substr(b, e - b + 1));
  }
  return out;
}

}  // namespace

Perm parse_cycles(std::string_view text, int degree) {
  Perm p(static_cast<std::size_t>(degree));
  std::iota(p.begin(), p.end(), 0);
  std::size_t i = 0;
  std::vector<char> used(static_cast<std::size_t>(degree), 0);
  while (i < text.size()) {
    if (text[i] == ' ' || text[i] == '\t') {
      ++i;
      continue;
    }
    if (text[i] != '(') throw InputError("bad cycle notation: " + std::string(text));
    auto close = text.find(')', i);
    if (close == std::string_view::npos) throw InputError("unclosed cycle: " + std::string(text));
    std::vector<int> cyc;
    std::string body(text.substr(i + 1, close - i - 1));
    for (char& c : body)
      if (c == ',') c = ' ';
    std::istringstream in(body);
    std::string tok;
    while (in >> tok) {
      int v = 0;
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (ec != std::errc() || ptr != tok.data() + tok.size() || v < 1 || v > degree)
        throw InputError("bad point in cycle: " + tok);
      if (used[v - 1]) throw InputError("point repeated in generator: " + tok);
      used[v - 1] = 1;
      cyc.push_back(v - 1);
    }
    for (std::size_t k = 0; k < cyc.size(); ++k) p[cyc[k]] = cyc[(k + 1) % cyc.size()];
    i = close + 1;
  }
  return p;
}

std::string format_cycles(const Perm& p) {
  std::string s;
  std::vector<char> seen(p.size(), 0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i] || p[i] == static_cast<int>(i)) continue;
    s += '(';
    std::size_t j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = 1;
      if (!first) s += ' ';
      s += std::to_string(j + 1);
      first = false;
      j = static_cast<std::size_t>(p[j]);
    }
    s += ')';
  }
  return s.empty() ? "()" : s;
}

Group Group::from_permutations(int degree, const std::vector<Perm>& gens, std::size_t order_cap) {
  if (degree < 1) throw InputError("permutation degree must be positive");
  Perm id(static_cast<std::size_t>(degree));
  std::iota(id.begin(), id.end(), 0);
  for (const auto& g : gens) {
    if (g.size() != id.size()) throw InputError("generator degree mismatch");
    Perm s = g;
    std::sort(s.begin(), s.end());
    if (s != id) throw InputError("generator is not a permutation");
  }
  std::map<Perm, int> index;
  std::vector<Perm> elems{id};
  index[id] = 0;
  for (std::size_t k = 0; k < elems.size(); ++k) {
    for (const auto& g : gens) {
      Perm x = compose(elems[k], g);
      if (index.count(x)) continue;
      if (elems.size() >= order_cap)
        throw CapError("group order exceeds the cap of " + std::to_string(order_cap));
      index[x] = static_cast<int>(elems.size());
      elems.push_back(std::move(x));
    }
  }
  auto d = std::make_shared<detail::GroupData>();
  d->n = elems.size();
  d->table.resize(d->n * d->n);
  for (std::size_t a = 0; a < d->n; ++a)
    for (std::size_t b = 0; b < d->n; ++b) d->table[a * d->n + b] = index.at(compose(elems[a], elems[b]));
  for (const auto& g : gens) {
    int gi = index.at(g);
    if (gi != 0 && std::find(d->gens.begin(), d->gens.end(), gi) == d->gens.end()) d->gens.push_back(gi);
  }
  for (const auto& e : elems) d->labels.push_back(format_cycles(e));
  validate_table(*d);
  finish(*d);
  return Group(std::move(d));
}

Group Group::from_table(std::size_t n, std::vector<int> table, std::vector<int> gens,
                        std::vector<std::string> labels) {
  auto d = std::make_shared<detail::GroupData>();
  d->n = n;
  d->table = std::move(table);
  d->gens = std::move(gens);
  d->labels = std::move(labels);
  if (d->labels.size() != n) throw InputError("label count mismatch");
  validate_table(*d);
  finish(*d);
  return Group(std::move(d));
}

Group Group::parse(std::string_view text, std::size_t order_cap) {
  auto lines = split_lines(text);
  if (lines.empty()) throw InputError("empty group file");
  std::istringstream head(lines[0]);
  std::string tok;
  head >> tok;
  if (tok != "group") throw InputError("group file must start with `group`");
  int degree = -1;
  std::optional<std::size_t> order;
  while (head >> tok) {
    auto eq = tok.find('=');
    if (eq == std::string::npos) throw InputError("bad group header token: " + tok);
    auto key = tok.substr(0, eq), val = tok.substr(eq + 1);
    if (key == "degree") {
      degree = std::stoi(val);
    } else if (key == "order") {
      if (val != "?") order = static_cast<std::size_t>(std::stoul(val));
    } else {
      throw InputError("unknown group header key: " + key);
    }
  }
  if (degree < 1) throw InputError("group header lacks degree");
  std::vector<Perm> gens;
  for (std::size_t i = 1; i < lines.size(); ++i) gens.push_back(parse_cycles(lines[i], degree));
  Group g = from_permutations(degree, gens, order_cap);
  if (order && *order != g.order())
    throw InputError("declared order " + std::to_string(*order) + " but generators give " +
                     std::to_string(g.order()));
  return g;
}

Group Group::named(std::string_view name) {
  auto cyc = [](int n, int offset) {
    std::string s = "(";
    for (int i = 1; i <= n; ++i) s += std::to_string(offset + i) + (i < n ? " " : "");
    return s + ")";
  };
  std::string nm(name);
  auto build = [&](int degree, std::vector<std::string> gens) {
    std::vector<Perm> ps;
    for (auto& g : gens) ps.push_back(parse_cycles(g, degree));
    Group g = from_permutations(degree, ps);
    auto d = std::make_shared<detail::GroupData>(*g.d_);
    d->name = nm;
    return Group(std::move(d));
  };
  if (nm == "S3") return build(3, {"(1 2)", "(1 2 3)"});
  if (nm == "S4") return build(4, {"(1 2)", "(1 2 3 4)"});
  if (nm == "D8") return build(4, {"(1 2 3 4)", "(1 3)"});
  if (nm == "A4") return build(4, {"(1 2 3)", "(1 2)(3 4)"});
  if (nm == "A5") return build(5, {"(1 2 3)", "(1 2 3 4 5)"});
  if (nm == "V4" || nm == "C2xC2") return build(4, {"(1 2)(3 4)", "(1 3)(2 4)"});
  if (nm == "Q8") return build(8, {"(1 2 3 4)(5 6 7 8)", "(1 5 3 7)(2 8 4 6)"});
  if (nm.size() >= 2 && nm[0] == 'C') {
    std::vector<int> parts;
    std::size_t i = 0;
    while (i < nm.size()) {
      if (nm[i] != 'C') throw InputError("unknown group name: " + nm);
      std::size_t j = nm.find('x', i);
      if (j == std::string::npos) j = nm.size();
      parts.push_back(std::stoi(nm.substr(i + 1, j - i - 1)));
      i = j == nm.size() ? j : j + 1;
    }
    int degree = 0;
    std::vector<std::string> gens;
    for (int k : parts) {
      if (k < 1) throw InputError("bad cyclic order in " + nm);
      if (k > 1) gens.push_back(cyc(k, degree));
      degree += k;
    }
    return build(std::max(degree, 1), gens);
  }
  throw InputError("unknown group name: " + nm);
}

std::size_t Group::order() const { return d_->n; }
int Group::mul(int a, int b) const { return d_->table[static_cast<std::size_t>(a) * d_->n + b]; }
int Group::inv(int a) const { return d_->inverse[a]; }
const std::vector<int>& Group::generators() const { return d_->gens; }
const std::string& Group::label(int a) const { return d_->labels.at(a); }
const std::vector<std::vector<int>>& Group::conjugacy_classes() const { return d_->classes; }
const std::string& Group::name() const { return d_->name; }

int Group::elem_order(int a) const {
  int k = 1;
  for (int x = a; x != 0; x = mul(x, a)) ++k;
  return k;
}

// ---------------------------------------------------------------------------

Subgroup Subgroup::generated(const Group& g, std::span<const int> gens) {
  std::vector<char> in(g.order(), 0);
  std::vector<int> elems{0};
  in[0] = 1;
  for (std::size_t k = 0; k < elems.size(); ++k)
    for (int s : gens) {
      int x = g.mul(elems[k], s);
      if (!in[x]) {
        in[x] = 1;
        elems.push_back(x);
      }
    }
  std::sort(elems.begin(), elems.end());
  return Subgroup(g, std::move(elems));
}

Subgroup Subgroup::whole(const Group& g) {
  std::vector<int> e(g.order());
  std::iota(e.begin(), e.end(), 0);
  return Subgroup(g, std::move(e));
}

Subgroup Subgroup::trivial(const Group& g) { return Subgroup(g, {0}); }

Subgroup Subgroup::from_elements(const Group& g, std::vector<int> elems) {
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  Subgroup s(g, std::move(elems));
  if (s.elems_.empty() || s.elems_[0] != 0) throw InputError("subgroup lacks the identity");
  for (int a : s.elems_) {
    if (!s.contains(g.inv(a))) throw InputError("subset not closed under inverses");
    for (int b : s.elems_)
      if (!s.contains(g.mul(a, b))) throw InputError("subset not closed under products");
  }
  return s;
}

bool Subgroup::contains(int x) const { return std::binary_search(elems_.begin(), elems_.end(), x); }

bool Subgroup::contains(const Subgroup& o) const {
  return std::includes(elems_.begin(), elems_.end(), o.elems_.begin(), o.elems_.end());
}

std::vector<int> Subgroup::generators() const {
  std::vector<int> gens;
  std::vector<int> cur{0};
  for (int x : elems_) {
    if (std::binary_search(cur.begin(), cur.end(), x)) continue;
    gens.push_back(x);
    cur = Subgroup::generated(g_, gens).elems_;
    if (cur.size() == elems_.size()) break;
  }
  return gens;
}

bool Subgroup::is_p_group(unsigned p) const {
  std::size_t n = order();
  while (n % p == 0) n /= p;
  return n == 1;
}

bool Subgroup::operator<(const Subgroup& o) const {
  if (order() != o.order()) return order() < o.order();
  return elems_ < o.elems_;
}

Subgroup conjugate(const Subgroup& h, int g) {
  std::vector<int> e;
  e.reserve(h.order());
  for (int x : h.elements()) e.push_back(h.group().conj(g, x));
  std::sort(e.begin(), e.end());
  return Subgroup::generated(h.group(), e);
}

Subgroup normalizer(const Subgroup& h, const Subgroup& within) {
  std::vector<int> n;
  const Group& g = h.group();
  auto gens = h.generators();
  for (int x : within.elements()) {
    bool ok = true;
    for (int s : gens)
      if (!h.contains(g.conj(x, s))) {
        ok = false;
        break;
      }
    if (ok) n.push_back(x);
  }
  return Subgroup::generated(g, n);
}

Subgroup centralizer(const Subgroup& h, const Subgroup& within) {
  std::vector<int> c;
  const Group& g = h.group();
  auto gens = h.generators();
  for (int x : within.elements()) {
    bool ok = true;
    for (int s : gens)
      if (g.mul(x, s) != g.mul(s, x)) {
        ok = false;
        break;
      }
    if (ok) c.push_back(x);
  }
  return Subgroup::generated(g, c);
}

Subgroup intersect(const Subgroup& a, const Subgroup& b) {
  std::vector<int> e;
  std::set_intersection(a.elements().begin(), a.elements().end(), b.elements().begin(), b.elements().end(),
                        std::back_inserter(e));
  return Subgroup::generated(a.group(), e);
}

std::optional<int> conjugating_element(const Subgroup& a, const Subgroup& b, const Subgroup& within) {
  if (a.order() != b.order()) return std::nullopt;
  for (int x : within.elements())
    if (conjugate(a, x) == b) return x;
  return std::nullopt;
}

namespace {

std::vector<int> canonical_conjugate(const Subgroup& h, const Subgroup& within) {
  std::vector<int> best = h.elements();
  const Group& g = h.group();
  std::vector<int> e(h.order());
  for (int x : within.elements()) {
    for (std::size_t i = 0; i < h.order(); ++i) e[i] = g.conj(x, h.elements()[i]);
    std::sort(e.begin(), e.end());
    if (e < best) best = e;
  }
  return best;
}

}  // namespace

// Cyclic extension: every class arises as <H, g> for a class representative H.
std::vector<Subgroup> subgroup_classes(const Subgroup& within, unsigned p) {
  const Group& g = within.group();
  std::set<std::vector<int>> seen;
  std::vector<Subgroup> reps;
  Subgroup triv = Subgroup::trivial(g);
  seen.insert(triv.elements());
  reps.push_back(triv);
  for (std::size_t k = 0; k < reps.size(); ++k) {
    const Subgroup h = reps[k];
    std::set<std::vector<int>> tried;
    for (int x : within.elements()) {
      if (h.contains(x)) continue;
      if (p && !Subgroup::generated(g, std::vector<int>{x}).is_p_group(p)) continue;
      std::vector<int> gens = h.generators();
      gens.push_back(x);
      Subgroup ext = Subgroup::generated(g, gens);
      if (!tried.insert(ext.elements()).second) continue;
      if (p && !ext.is_p_group(p)) continue;
      auto canon = canonical_conjugate(ext, within);
      if (seen.insert(canon).second) reps.push_back(Subgroup::generated(g, canon));
    }
  }
  std::sort(reps.begin(), reps.end());
  return reps;
}

std::vector<Subgroup> subgroup_classes(const Group& g, unsigned p) {
  return subgroup_classes(Subgroup::whole(g), p);
}

std::vector<Subgroup> all_subgroups(const Subgroup& within, unsigned p) {
  std::set<std::vector<int>> seen;
  std::vector<Subgroup> out;
  for (const auto& rep : subgroup_classes(within, p))
    for (int x : within.elements()) {
      Subgroup c = conjugate(rep, x);
      if (seen.insert(c.elements()).second) out.push_back(c);
    }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Subgroup> maximal_subgroups(const Subgroup& h) {
  std::vector<Subgroup> proper;
  for (auto& s : all_subgroups(h))
    if (s.order() < h.order()) proper.push_back(s);
  std::vector<Subgroup> out;
  for (auto& s : proper) {
    bool maximal = true;
    for (auto& t : proper)
      if (t.order() > s.order() && t.contains(s)) {
        maximal = false;
        break;
      }
    if (maximal) out.push_back(s);
  }
  return out;
}

std::size_t p_part(std::size_t n, unsigned p) {
  std::size_t r = 1;
  while (n % p == 0) {
    n /= p;
    r *= p;
  }
  return r;
}

Subgroup sylow(const Group& g, unsigned p) {
  const std::size_t target = p_part(g.order(), p);
  for (auto& s : subgroup_classes(g, p))
    if (s.order() == target) return s;
  throw std::logic_error("Sylow subgroup not found");
}

std::vector<int> left_transversal(const Subgroup& p, const Subgroup& q) {
  if (!p.contains(q)) throw PreconditionError("transversal: Q is not contained in P");
  const Group& g = p.group();
  std::vector<char> covered(g.order(), 0);
  std::vector<int> reps;
  for (int x : p.elements()) {
    if (covered[x]) continue;
    reps.push_back(x);
    for (int y : q.elements()) covered[g.mul(x, y)] = 1;
  }
  return reps;
}

// ---------------------------------------------------------------------------

DirectProduct direct_product(const Group& g, const Group& h) {
  const std::size_t n = g.order(), m = h.order();
  std::vector<int> table(n * m * n * m);
  for (std::size_t a = 0; a < n * m; ++a)
    for (std::size_t b = 0; b < n * m; ++b) {
      int x = g.mul(static_cast<int>(a / m), static_cast<int>(b / m));
      int y = h.mul(static_cast<int>(a % m), static_cast<int>(b % m));
      table[a * n * m + b] = x * static_cast<int>(m) + y;
    }
  std::vector<int> gens;
  for (int s : g.generators()) gens.push_back(s * static_cast<int>(m));
  for (int t : h.generators()) gens.push_back(t);
  std::vector<std::string> labels;
  std::vector<int> p1, p2;
  for (std::size_t a = 0; a < n * m; ++a) {
    labels.push_back("[" + g.label(static_cast<int>(a / m)) + "," + h.label(static_cast<int>(a % m)) + "]");
    p1.push_back(static_cast<int>(a / m));
    p2.push_back(static_cast<int>(a % m));
  }
  Group prod = Group::from_table(n * m, std::move(table), std::move(gens), std::move(labels));
  return DirectProduct{prod, g, h, std::move(p1), std::move(p2)};
}

Subgroup project_left(const DirectProduct& prod, const Subgroup& x) {
  std::vector<int> e;
  for (int v : x.elements()) e.push_back(prod.p1[v]);
  return Subgroup::generated(prod.left, e);
}

Subgroup project_right(const DirectProduct& prod, const Subgroup& x) {
  std::vector<int> e;
  for (int v : x.elements()) e.push_back(prod.p2[v]);
  return Subgroup::generated(prod.right, e);
}

Subgroup product_subgroup(const DirectProduct& prod, const Subgroup& a, const Subgroup& b) {
  std::vector<int> e;
  for (int x : a.elements())
    for (int y : b.elements()) e.push_back(prod.pair(x, y));
  return Subgroup::from_elements(prod.group, std::move(e));
}

Subgroup GroupHom::image() const {
  std::vector<int> e;
  for (int x : source.elements()) e.push_back(map[x]);
  return Subgroup::generated(target_group.group(), e);
}

bool GroupHom::injective() const { return image().order() == source.order(); }

bool is_homomorphism(const GroupHom& h) {
  const Group& g = h.source.group();
  const Group& t = h.target_group.group();
  for (int a : h.source.elements()) {
    if (h.map[a] < 0 || !h.target_group.contains(h.map[a])) return false;
    for (int b : h.source.elements())
      if (h.map[g.mul(a, b)] != t.mul(h.map[a], h.map[b])) return false;
  }
  return true;
}

std::vector<GroupHom> homomorphisms(const Subgroup& source, const Subgroup& target) {
  const Group& g = source.group();
  const Group& t = target.group();
  auto gens = source.generators();
  std::vector<GroupHom> out;
  std::vector<std::size_t> choice(gens.size(), 0);
  const auto& te = target.elements();
  for (;;) {
    // extend generator images along words by breadth-first search
    std::vector<int> map(g.order(), -1);
    map[0] = 0;
    std::deque<int> queue{0};
    bool ok = true;
    while (!queue.empty() && ok) {
      int x = queue.front();
      queue.pop_front();
      for (std::size_t k = 0; k < gens.size(); ++k) {
        int y = g.mul(x, gens[k]);
        int img = t.mul(map[x], te[choice[k]]);
        if (map[y] < 0) {
          map[y] = img;
          queue.push_back(y);
        } else if (map[y] != img) {
          ok = false;
          break;
        }
      }
    }
    if (ok) {
      GroupHom h{source, target, map};
      if (is_homomorphism(h)) out.push_back(std::move(h));
    }
    std::size_t k = 0;
    while (k < choice.size() && ++choice[k] == te.size()) choice[k++] = 0;
    if (k == choice.size()) break;
  }
  return out;
}

GroupIso make_iso(const Subgroup& source, const Subgroup& target, std::vector<int> map) {
  if (source.order() != target.order()) throw InputError("isomorphism between groups of different order");
  if (map.size() != source.group().order()) throw InputError("isomorphism map has wrong size");
  GroupHom h{source, target, map};
  if (!is_homomorphism(h) || !h.injective()) throw InputError("map is not an isomorphism");
  return GroupIso{source, target, std::move(map)};
}

GroupIso identity_iso(const Subgroup& s) {
  std::vector<int> map(s.group().order(), -1);
  for (int x : s.elements()) map[x] = x;
  return GroupIso{s, s, std::move(map)};
}

GroupIso GroupIso::inverse() const {
  std::vector<int> m(target.group().order(), -1);
  for (int x : source.elements()) m[map[x]] = x;
  return GroupIso{target, source, std::move(m)};
}

Subgroup twisted_diagonal(const DirectProduct& prod, const GroupIso& phi) {
  if (phi.source.group() != prod.left || phi.target.group() != prod.right)
    throw InputError("isomorphism does not live in the product's factors");
  std::vector<int> e;
  for (int u : phi.source.elements()) e.push_back(prod.pair(u, phi(u)));
  return Subgroup::from_elements(prod.group, std::move(e));
}

std::optional<GroupIso> is_twisted_diagonal(const DirectProduct& prod, const Subgroup& x) {
  Subgroup l = project_left(prod, x);
  if (l.order() != x.order()) return std::nullopt;
  Subgroup r = project_right(prod, x);
  std::vector<int> map(prod.left.order(), -1);
  for (int v : x.elements()) map[prod.p1[v]] = prod.p2[v];
  return GroupIso{l, r, std::move(map)};
}

}  // namespace bk
