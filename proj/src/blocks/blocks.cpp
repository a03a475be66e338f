#include "brauerkit/blocks.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace bk {

namespace {

bool all_zero(std::span<const Elem> v) {
  return std::all_of(v.begin(), v.end(), [](Elem x) { return x == 0; });
}

// Some conjugate of small lies inside big.
bool subconjugate(const Subgroup& small, const Subgroup& big, const Subgroup& within) {
  for (int x : within.elements())
    if (big.contains(conjugate(small, x))) return true;
  return false;
}

Subgroup defect_in(const GAlgebra& conj, std::span<const Elem> b) {
  const Subgroup& h = conj.group();
  const unsigned p = conj.algebra().field().p();
  std::vector<Subgroup> hits;
  for (const auto& cls : subgroup_classes(h, p))
    if (!all_zero(brauer_quotient(conj, cls)(b))) hits.push_back(cls);
  if (hits.empty()) throw std::logic_error("br_1(b) vanished for a nonzero block");
  const Subgroup& top = hits.back();
  for (const auto& x : hits) {
    if (x.order() == top.order() && x != top) throw std::logic_error("two maximal defect classes for one block");
    if (!subconjugate(x, top, h)) throw std::logic_error("Brauer-nonvanishing class outside the defect group");
  }
  return top;
}

// Coordinates in k[H] (basis h.elements()) of an element of kG supported on H.
Vec to_local(const Subgroup& h, std::span<const Elem> v) {
  Vec out;
  std::vector<char> in(v.size(), 0);
  for (int x : h.elements()) {
    out.push_back(v[static_cast<std::size_t>(x)]);
    in[static_cast<std::size_t>(x)] = 1;
  }
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!in[i] && v[i] != 0) throw PreconditionError("element is not supported on the subgroup");
  return out;
}

Vec to_parent(const Subgroup& h, std::span<const Elem> v) {
  Vec out(h.group().order(), 0);
  for (std::size_t i = 0; i < v.size(); ++i) out[static_cast<std::size_t>(h.elements()[i])] = v[i];
  return out;
}

Matrix parent_embedding(const Subgroup& h, const Field& f) {
  Matrix m(f, h.group().order(), h.order());
  for (std::size_t i = 0; i < h.order(); ++i) m(static_cast<std::size_t>(h.elements()[i]), i) = 1;
  return m;
}

}  // namespace

Subgroup defect_group(const Subgroup& h, const Field& f, std::span<const Elem> b) {
  return defect_in(conjugation_algebra(h, f), to_local(h, b));
}

Subgroup defect_group(const Group& g, const Field& f, std::span<const Elem> b) {
  return defect_group(Subgroup::whole(g), f, b);
}

std::vector<BlockData> blocks(const Subgroup& h, const Field& f) {
  GAlgebra conj = conjugation_algebra(h, f);
  const Algebra& kh = conj.algebra();
  std::vector<BlockData> out;
  for (Vec& b : central_primitive_idempotents(kh)) {
    Subgroup d = defect_in(conj, b);
    std::size_t dim = rank(kh.left_matrix(b));
    out.push_back(BlockData{h, f, to_parent(h, b), std::move(d), dim});
  }
  return out;
}

std::vector<BlockData> blocks(const Group& g, const Field& f) { return blocks(Subgroup::whole(g), f); }

std::vector<Vec> source_idempotents(const BlockData& b, const Subgroup& p, std::uint64_t seed) {
  if (!conjugating_element(p, b.defect, b.group)) throw PreconditionError("subgroup is not a defect group of the block");
  GAlgebra conj = restrict(conjugation_algebra(b.group, b.field), p);
  BrauerData bd = brauer_quotient(conj, p);
  Subalgebra fb = corner(bd.fixed.alg, bd.fixed_space.coords(to_local(b.group, b.idempotent)));
  std::vector<Vec> out;
  for (const Vec& e : primitive_decomposition(fb.alg, seed)) {
    Vec i = bd.fixed.inclusion.apply(fb.inclusion.apply(e));
    if (!all_zero(bd(i))) out.push_back(to_parent(b.group, i));
  }
  if (out.empty()) throw std::logic_error("no primitive idempotent of the block survives br_P");
  return out;
}

SourceAlgebra source_algebra(const BlockData& b, std::uint64_t seed) {
  Vec i = source_idempotents(b, b.defect, seed).front();
  GAlgebra conj = restrict(conjugation_algebra(b.group, b.field), b.defect);
  GCorner c = corner(conj, to_local(b.group, i));
  Matrix inc = parent_embedding(b.group, b.field) * c.inclusion;
  return SourceAlgebra{std::move(i), std::move(c.alg), std::move(inc)};
}

std::vector<GaloisDescentRecord> galois_descent(const Group& g, const Field& k, const Field& bigger) {
  return galois_descent(Subgroup::whole(g), k, bigger);
}

std::vector<GaloisDescentRecord> galois_descent(const Subgroup& h, const Field& k, const Field& bigger) {
  if (k.p() != bigger.p() || bigger.n() % k.n() != 0) throw PreconditionError("fields are not nested");
  FieldEmbedding emb(k, bigger);
  Algebra kg_big = group_algebra(h.group(), bigger);
  std::vector<BlockData> base = blocks(h, k), ext = blocks(h, bigger);
  std::vector<GaloisDescentRecord> out;
  for (const auto& b : base) {
    Vec bb = emb.map(b.idempotent);
    std::vector<Vec> hits;
    std::vector<const BlockData*> hit_data;
    for (const auto& e : ext)
      if (!all_zero(kg_big.mul(bb, e.idempotent))) {
        hits.push_back(e.idempotent);
        hit_data.push_back(&e);
      }
    if (hits.empty()) throw std::logic_error("block meets no block of the extension");
    unsigned m = k.n();
    for (Elem c : hits.front()) m = std::lcm(m, bigger.degree_of(c));
    const unsigned r = m / k.n();
    std::vector<Vec> orbit{hits.front()};
    for (unsigned j = 1; j < r; ++j) {
      Vec next = orbit.back();
      for (auto& c : next) c = bigger.pow(c, k.q());
      orbit.push_back(std::move(next));
    }
    Vec sum(bb.size(), 0);
    for (const auto& o : orbit) bigger.axpy(sum, 1, o);
    auto sorted = [](std::vector<Vec> v) {
      std::sort(v.begin(), v.end());
      return v;
    };
    std::vector<Vec> so = sorted(orbit);
    bool distinct = std::adjacent_find(so.begin(), so.end()) == so.end();
    bool ok = distinct && so == sorted(hits) && sum == bb;
    bool defects = std::all_of(hit_data.begin(), hit_data.end(), [&](const BlockData* e) {
      return conjugating_element(e->defect, b.defect, h).has_value();
    });
    out.push_back(GaloisDescentRecord{b.idempotent, std::move(orbit), m, ok, defects, b.defect});
  }
  return out;
}

}  // namespace bk
