#include "brauerkit/modrep.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

namespace bk {

namespace {

Matrix empty_matrix(const Field& f) { return Matrix(f, 0, 0); }

Vec flatten(const Matrix& m) { return m.data(); }

Matrix unflatten(const Field& f, std::span<const Elem> v, std::size_t rows, std::size_t cols) {
  Matrix m(f, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = v[i * cols + j];
  return m;
}

Matrix random_matrix_combo(const Field& f, const std::vector<Matrix>& basis, std::mt19937_64& rng) {
  std::uniform_int_distribution<Elem> dist(0, f.q() - 1);
  Matrix out(f, basis[0].rows(), basis[0].cols());
  for (const auto& b : basis) {
    Elem c = dist(rng);
    if (c) out = out + b.scaled(c);
  }
  return out;
}

void require_same_group(const ModuleRep& m, const ModuleRep& n) {
  if (m.group() != n.group()) throw PreconditionError("modules over different groups");
  if (m.field() != n.field()) throw PreconditionError("modules over different fields");
}

std::vector<std::string> content_lines(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    lines.push_back(line.substr(b, line.find_last_not_of(" \t\r") - b + 1));
  }
  return lines;
}

Vec parse_row(std::string s, std::size_t d, const Field& f) {
  for (char& c : s)
    if (c == ',') c = ' ';
  std::istringstream in(s);
  Vec v;
  long long x;
  while (in >> x) {
    if (x < 0 || static_cast<unsigned long long>(x) >= f.q()) throw InputError("matrix entry out of range");
    v.push_back(static_cast<Elem>(x));
  }
  if (!in.eof()) throw InputError("bad matrix row: " + s);
  if (v.size() != d) throw InputError("matrix row has wrong length: " + s);
  return v;
}

}  // namespace

// ---------------------------------------------------------------------------

ModuleRep ModuleRep::from_generators(const Subgroup& grp, const Field& f, std::size_t dim,
                                     std::span<const int> gen_elems, const std::vector<Matrix>& mats) {
  if (gen_elems.size() != mats.size()) throw InputError("one matrix per generator expected");
  const Group& g = grp.group();
  for (std::size_t i = 0; i < mats.size(); ++i) {
    if (!grp.contains(gen_elems[i])) throw InputError("generator outside the acting group");
    if (mats[i].rows() != dim || mats[i].cols() != dim) throw InputError("generator matrix has wrong size");
    if (mats[i].field() != f) throw InputError("generator matrix over the wrong field");
  }
  if (Subgroup::generated(g, gen_elems) != grp) throw InputError("generators do not generate the acting group");
  std::vector<Matrix> act(g.order(), empty_matrix(f));
  std::vector<char> seen(g.order(), 0);
  act[0] = Matrix::identity(f, dim);
  seen[0] = 1;
  std::deque<int> queue{0};
  while (!queue.empty()) {
    int x = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < mats.size(); ++i) {
      int y = g.mul(x, gen_elems[i]);
      if (seen[y]) continue;
      seen[y] = 1;
      act[y] = act[x] * mats[i];
      queue.push_back(y);
    }
  }
  for (int x : grp.elements())
    for (std::size_t i = 0; i < mats.size(); ++i)
      if (act[g.mul(x, gen_elems[i])] != act[x] * mats[i])
        throw InputError("generator matrices do not satisfy the group relations");
  return ModuleRep(grp, f, dim, std::move(act));
}

ModuleRep ModuleRep::from_elements(const Subgroup& grp, const Field& f, std::size_t dim, std::vector<Matrix> mats) {
  if (mats.size() != grp.group().order()) throw InputError("one matrix per parent element expected");
  std::vector<int> gens = grp.generators();
  std::vector<Matrix> gm;
  for (int s : gens) gm.push_back(mats[s]);
  ModuleRep m = from_generators(grp, f, dim, gens, gm);
  for (int x : grp.elements())
    if (m.act_[x] != mats[x]) throw InputError("element matrices are not a representation");
  return m;
}

ModuleRep ModuleRep::parse(std::string_view text, const Group& g) {
  auto lines = content_lines(text);
  if (lines.empty() || lines[0].rfind("module", 0) != 0) throw InputError("module file must start with `module`");
  // header keys in any order; the field spec spans the p=, n= and poly= tokens
  std::istringstream head(lines[0].substr(6));
  std::string tok, field_spec;
  std::optional<std::size_t> d_opt;
  while (head >> tok) {
    if (tok.rfind("dim=", 0) == 0) {
      try {
        d_opt = std::stoul(tok.substr(4));
      } catch (const std::exception&) {
        throw InputError("bad dim= in module header");
      }
    } else if (tok.rfind("field=", 0) == 0) {
      field_spec += tok.substr(6) + " ";
    } else if (tok.rfind("p=", 0) == 0 || tok.rfind("n=", 0) == 0 || tok.rfind("poly=", 0) == 0) {
      field_spec += tok + " ";
    } else if (tok.rfind("group=", 0) != 0) {
      throw InputError("unknown module header token: " + tok);
    }
  }
  if (!d_opt) throw InputError("module header lacks dim=");
  if (field_spec.empty()) throw InputError("module header lacks field=");
  const std::size_t d = *d_opt;
  Field f = Field::parse(field_spec);
  const auto& gens = g.generators();
  if (lines.size() != 1 + gens.size() * d)
    throw InputError("module file needs dim rows for each of the " + std::to_string(gens.size()) + " generators");
  std::vector<Matrix> mats;
  for (std::size_t k = 0; k < gens.size(); ++k) {
    std::vector<Vec> rows;
    for (std::size_t i = 0; i < d; ++i) rows.push_back(parse_row(lines[1 + k * d + i], d, f));
    mats.push_back(Matrix::from_rows(f, rows, d));
  }
  return from_generators(Subgroup::whole(g), f, d, gens, mats);
}

std::string ModuleRep::serialize() const {
  const Group& g = grp_.group();
  if (grp_.order() != g.order()) throw PreconditionError("only modules over a whole group can be written");
  std::string spec = f_.spec();
  std::string s = "module group=" + g.name() + " field=" + spec.substr(spec.find(' ') + 1) +
                  " dim=" + std::to_string(dim_) + "\n";
  for (int x : g.generators()) {
    const Matrix& m = act_[x];
    for (std::size_t i = 0; i < dim_; ++i) {
      for (std::size_t j = 0; j < dim_; ++j) s += (j ? " " : "") + std::to_string(m(i, j));
      s += "\n";
    }
  }
  return s;
}

const Matrix& ModuleRep::act(int g) const {
  if (!grp_.contains(g)) throw PreconditionError("element outside the acting group");
  return act_[g];
}

// ---------------------------------------------------------------------------

ModuleRep trivial_module(const Subgroup& grp, const Field& f) {
  std::vector<int> gens = grp.generators();
  return ModuleRep::from_generators(grp, f, 1, gens, std::vector<Matrix>(gens.size(), Matrix::identity(f, 1)));
}

ModuleRep permutation_module(const Subgroup& p, const Subgroup& q, const Field& f) {
  return induce(trivial_module(q, f), p);
}

ModuleRep regular_module(const Subgroup& grp, const Field& f) {
  return permutation_module(grp, Subgroup::trivial(grp.group()), f);
}

ModuleRep jordan_module(const Subgroup& cyclic, const Field& f, std::size_t n) {
  const Group& g = cyclic.group();
  auto it = std::find_if(cyclic.elements().begin(), cyclic.elements().end(), [&](int x) {
    return static_cast<std::size_t>(g.elem_order(x)) == cyclic.order();
  });
  if (it == cyclic.elements().end()) throw PreconditionError("jordan module needs a cyclic group");
  Matrix j = Matrix::identity(f, n);
  for (std::size_t i = 0; i + 1 < n; ++i) j(i, i + 1) = 1;
  std::vector<int> gens;
  std::vector<Matrix> mats;
  if (cyclic.order() > 1) {
    gens.push_back(*it);
    mats.push_back(j);
  }
  return ModuleRep::from_generators(cyclic, f, n, gens, mats);
}

ModuleRep induce(const ModuleRep& m, const Subgroup& bigger) {
  const Subgroup& h = m.group();
  if (!bigger.contains(h)) throw PreconditionError("induction to a group not containing the acting group");
  const Group& g = bigger.group();
  const Field& f = m.field();
  auto reps = left_transversal(bigger, h);
  std::vector<int> coset(g.order(), -1);
  for (std::size_t i = 0; i < reps.size(); ++i)
    for (int y : h.elements()) coset[g.mul(reps[i], y)] = static_cast<int>(i);
  const std::size_t n = m.dim(), k = reps.size();
  std::vector<Matrix> act(g.order(), empty_matrix(f));
  for (int x : bigger.elements()) {
    Matrix big(f, n * k, n * k);
    for (std::size_t i = 0; i < k; ++i) {
      int y = g.mul(x, reps[i]);
      auto j = static_cast<std::size_t>(coset[y]);
      const Matrix& blk = m.act(g.mul(g.inv(reps[j]), y));
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) big(j * n + a, i * n + b) = blk(a, b);
    }
    act[x] = std::move(big);
  }
  return ModuleRep::from_elements(bigger, f, n * k, std::move(act));
}

ModuleRep restrict(const ModuleRep& m, const Subgroup& smaller) {
  if (!m.group().contains(smaller)) throw PreconditionError("restriction to a group not inside the acting group");
  std::vector<Matrix> act(smaller.group().order(), empty_matrix(m.field()));
  for (int x : smaller.elements()) act[x] = m.act(x);
  return ModuleRep::from_elements(smaller, m.field(), m.dim(), std::move(act));
}

ModuleRep tensor(const ModuleRep& m, const ModuleRep& n) {
  require_same_group(m, n);
  std::vector<Matrix> act(m.group().group().order(), empty_matrix(m.field()));
  for (int x : m.group().elements()) act[x] = kron(m.act(x), n.act(x));
  return ModuleRep::from_elements(m.group(), m.field(), m.dim() * n.dim(), std::move(act));
}

ModuleRep dual(const ModuleRep& m) {
  const Group& g = m.group().group();
  std::vector<Matrix> act(g.order(), empty_matrix(m.field()));
  for (int x : m.group().elements()) act[x] = m.act(g.inv(x)).transpose();
  return ModuleRep::from_elements(m.group(), m.field(), m.dim(), std::move(act));
}

ModuleRep direct_sum(const ModuleRep& m, const ModuleRep& n) {
  require_same_group(m, n);
  const Field& f = m.field();
  const std::size_t a = m.dim(), b = n.dim();
  std::vector<Matrix> act(m.group().group().order(), empty_matrix(f));
  for (int x : m.group().elements()) {
    Matrix s(f, a + b, a + b);
    const Matrix &mx = m.act(x), &nx = n.act(x);
    for (std::size_t i = 0; i < a; ++i)
      for (std::size_t j = 0; j < a; ++j) s(i, j) = mx(i, j);
    for (std::size_t i = 0; i < b; ++i)
      for (std::size_t j = 0; j < b; ++j) s(a + i, a + j) = nx(i, j);
    act[x] = std::move(s);
  }
  return ModuleRep::from_elements(m.group(), f, a + b, std::move(act));
}

ModuleRep twist(const ModuleRep& m, int g) {
  const Group& grp = m.group().group();
  Subgroup target = conjugate(m.group(), g);
  std::vector<Matrix> act(grp.order(), empty_matrix(m.field()));
  for (int x : target.elements()) act[x] = m.act(grp.conj(grp.inv(g), x));
  return ModuleRep::from_elements(target, m.field(), m.dim(), std::move(act));
}

ModuleRep pull_back(const ModuleRep& m, const GroupIso& iso) {
  if (iso.target != m.group()) throw PreconditionError("isomorphism does not land on the acting group");
  std::vector<Matrix> act(iso.source.group().order(), empty_matrix(m.field()));
  for (int x : iso.source.elements()) act[x] = m.act(iso(x));
  return ModuleRep::from_elements(iso.source, m.field(), m.dim(), std::move(act));
}

ModuleRep scalar_extend(const ModuleRep& m, const Field& bigger) {
  FieldEmbedding emb(m.field(), bigger);
  std::vector<Matrix> act(m.group().group().order(), empty_matrix(bigger));
  for (int x : m.group().elements()) {
    const Matrix& a = m.act(x);
    Matrix b(bigger, a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) b(i, j) = emb(a(i, j));
    act[x] = std::move(b);
  }
  return ModuleRep::from_elements(m.group(), bigger, m.dim(), std::move(act));
}

ModuleRep submodule(const ModuleRep& m, const Matrix& basis_cols) {
  const Field& f = m.field();
  if (basis_cols.rows() != m.dim()) throw InputError("submodule basis has wrong length");
  const std::size_t k = basis_cols.cols();
  Echelon e = rref(basis_cols.transpose());
  if (e.pivots.size() != k) throw InputError("submodule basis is dependent");
  // rows of the basis at the pivots form an invertible block
  Matrix sel = basis_cols.select_rows(e.pivots);
  Matrix left = *inverse(sel);
  std::vector<Matrix> act(m.group().group().order(), empty_matrix(f));
  for (int x : m.group().elements()) {
    Matrix img = m.act(x) * basis_cols;
    Matrix c = left * img.select_rows(e.pivots);
    if (basis_cols * c != img) throw InputError("subspace is not invariant");
    act[x] = std::move(c);
  }
  return ModuleRep::from_elements(m.group(), f, k, std::move(act));
}

// ---------------------------------------------------------------------------

std::vector<Matrix> hom_space(const ModuleRep& m, const ModuleRep& n) {
  require_same_group(m, n);
  const Field& f = m.field();
  const std::size_t rn = n.dim(), cm = m.dim(), u = rn * cm;
  if (u == 0) return {};
  Matrix cur = Matrix::identity(f, u);
  for (int s : m.group().generators()) {
    const Matrix &ns = n.act(s), &ms = m.act(s);
    Matrix images(f, cur.rows(), u);
    for (std::size_t r = 0; r < cur.rows(); ++r) {
      Matrix x = unflatten(f, cur.row(r), rn, cm);
      Matrix l = ns * x - x * ms;
      std::copy(l.data().begin(), l.data().end(), images.row(r).begin());
    }
    Matrix keep = nullspace(images.transpose());
    if (keep.rows() == 0) return {};
    cur = keep * cur;
  }
  std::vector<Matrix> out;
  for (std::size_t r = 0; r < cur.rows(); ++r) out.push_back(unflatten(f, cur.row(r), rn, cm));
  return out;
}

Matrix EndAlgebra::to_matrix(std::span<const Elem> x) const {
  const Field& f = alg.field();
  Matrix out(f, basis.at(0).rows(), basis.at(0).cols());
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i]) out = out + basis[i].scaled(x[i]);
  return out;
}

Vec EndAlgebra::to_elem(const Matrix& m) const {
  Vec v = flatten(m);
  if (!flat.contains(v)) throw PreconditionError("matrix is not an endomorphism of the module");
  return flat.coords(v);
}

EndAlgebra matrix_span_algebra(const Field& f, std::size_t n, const std::vector<Matrix>& span) {
  std::vector<Vec> flats;
  for (const auto& h : span) flats.push_back(flatten(h));
  Subspace flat = Subspace::span(f, n * n, flats);
  std::vector<Matrix> basis;
  for (std::size_t i = 0; i < flat.dim(); ++i) basis.push_back(unflatten(f, flat.basis().row(i), n, n));
  const std::size_t d = basis.size();
  std::vector<Vec> prods;
  prods.reserve(d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      Vec x = flatten(basis[i] * basis[j]);
      if (!flat.contains(x)) throw PreconditionError("matrix span is not closed under products");
      prods.push_back(flat.coords(x));
    }
  Vec id = flatten(Matrix::identity(f, n));
  if (!flat.contains(id)) throw PreconditionError("matrix span does not contain the identity");
  Algebra alg = Algebra::from_dense(f, d, prods, flat.coords(id));
  return EndAlgebra{std::move(alg), std::move(flat), std::move(basis)};
}

EndAlgebra end_algebra(const ModuleRep& m) {
  if (m.dim() == 0) throw PreconditionError("endomorphism algebra of the zero module");
  return matrix_span_algebra(m.field(), m.dim(), hom_space(m, m));
}

bool is_indecomposable(const ModuleRep& m) {
  if (m.dim() == 0) return false;
  EndAlgebra e = end_algebra(m);
  Semisimple ss = semisimple_data(e.alg);
  return ss.blocks.size() == 1 && ss.deg[0] == 1;
}

Decomposition decompose(const ModuleRep& m, std::uint64_t seed, std::size_t dim_cap) {
  if (m.dim() > dim_cap) throw CapError("module dimension " + std::to_string(m.dim()) + " exceeds the cap");
  Decomposition out;
  if (m.dim() == 0) return out;
  const Field& f = m.field();
  EndAlgebra e = end_algebra(m);
  Semisimple ss = semisimple_data(e.alg);
  auto idems = primitive_decomposition(e.alg, ss, seed);
  std::map<std::vector<std::size_t>, std::size_t> class_of;
  std::vector<std::vector<std::size_t>> keys;
  for (const auto& x : idems) keys.push_back(idempotent_key(e.alg, ss, x));
  for (const auto& k : keys) class_of.emplace(k, 0);
  std::size_t next = 0;
  for (auto& [k, c] : class_of) c = next++;
  for (std::size_t i = 0; i < idems.size(); ++i) {
    Matrix p = e.to_matrix(idems[i]);
    Subspace img = Subspace::span(p.transpose());
    std::vector<Vec> cols;
    for (std::size_t r = 0; r < img.dim(); ++r) cols.push_back(img.vector(r));
    Matrix inc = Matrix::from_cols(f, cols, m.dim());
    Matrix proj = p.select_rows(img.pivots());
    std::vector<Matrix> act(m.group().group().order(), empty_matrix(f));
    for (int x : m.group().elements()) act[x] = proj * m.act(x) * inc;
    ModuleRep sub = ModuleRep::from_elements(m.group(), f, img.dim(), std::move(act));
    out.summands.push_back(Summand{std::move(sub), std::move(inc), std::move(proj), class_of[keys[i]]});
  }
  std::stable_sort(out.summands.begin(), out.summands.end(),
                   [](const Summand& a, const Summand& b) { return a.iso_class < b.iso_class; });
  out.multiplicity.assign(next, 0);
  out.representative.assign(next, 0);
  for (std::size_t i = out.summands.size(); i-- > 0;) {
    ++out.multiplicity[out.summands[i].iso_class];
    out.representative[out.summands[i].iso_class] = i;
  }
  return out;
}

std::optional<Matrix> find_isomorphism(const ModuleRep& m, const ModuleRep& n, std::uint64_t seed) {
  if (m.group() != n.group() || m.field() != n.field() || m.dim() != n.dim()) return std::nullopt;
  const Field& f = m.field();
  const std::size_t d = m.dim();
  if (d == 0) return empty_matrix(f);
  auto homs = hom_space(m, n);
  if (homs.empty()) return std::nullopt;
  for (const auto& h : homs)
    if (rank(h) == d) return h;
  std::mt19937_64 rng(seed);
  for (int t = 0; t < 64; ++t) {
    Matrix h = random_matrix_combo(f, homs, rng);
    if (rank(h) == d) return h;
  }
  // Decide through idempotent conjugacy in End(m + n).
  ModuleRep s = direct_sum(m, n);
  EndAlgebra e = end_algebra(s);
  Matrix em(f, 2 * d, 2 * d), en(f, 2 * d, 2 * d);
  for (std::size_t i = 0; i < d; ++i) {
    em(i, i) = 1;
    en(d + i, d + i) = 1;
  }
  Vec xm = e.to_elem(em), xn = e.to_elem(en);
  auto u = conjugating_unit(e.alg, xn, xm, seed);
  if (!u) return std::nullopt;
  Matrix um = e.to_matrix(*u);
  Matrix phi(f, d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) phi(i, j) = um(d + i, j);
  if (rank(phi) != d) throw std::logic_error("conjugating unit gave a singular module map");
  for (int x : m.group().generators())
    if (n.act(x) * phi != phi * m.act(x)) throw std::logic_error("conjugating unit gave a non-module map");
  return phi;
}

bool is_isomorphic(const ModuleRep& m, const ModuleRep& n, std::uint64_t seed) {
  return find_isomorphism(m, n, seed).has_value();
}

// ---------------------------------------------------------------------------

bool relatively_projective(const ModuleRep& m, const Subgroup& q) {
  const Subgroup& g = m.group();
  if (!g.contains(q)) throw PreconditionError("relative projectivity needs a subgroup of the acting group");
  if (q.order() == g.order() || m.dim() == 0) return true;
  const Field& f = m.field();
  const Group& grp = g.group();
  const std::size_t n = m.dim();
  EchelonBuilder span(f, n * n);
  if (q.order() == 1) {
    // Tr(E_ij) = sum_g (column i of g)(row j of g^-1)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Vec t(n * n, 0);
        for (int x : g.elements()) {
          const Matrix &a = m.act(x), &b = m.act(grp.inv(x));
          for (std::size_t r = 0; r < n; ++r)
            if (Elem c = a(r, i)) f.axpy(std::span<Elem>(t.data() + r * n, n), c, b.row(j));
        }
        span.add(t);
      }
  } else {
    auto reps = left_transversal(g, q);
    ModuleRep res = restrict(m, q);
    for (const auto& x : hom_space(res, res)) {
      Matrix t(f, n, n);
      for (int r : reps) t = t + m.act(r) * x * m.act(grp.inv(r));
      span.add(flatten(t));
    }
  }
  return span.subspace().contains(flatten(Matrix::identity(f, n)));
}

bool is_projective(const ModuleRep& m) { return relatively_projective(m, Subgroup::trivial(m.group().group())); }

Subgroup vertex(const ModuleRep& m) {
  if (!is_indecomposable(m)) throw PreconditionError("vertex of a decomposable module");
  const Subgroup& g = m.group();
  const unsigned p = m.field().p();
  const std::size_t sylow_order = p_part(g.order(), p);
  std::vector<Subgroup> good;
  for (const auto& q : subgroup_classes(g, p))
    if (q.order() == sylow_order || relatively_projective(m, q)) good.push_back(q);
  // classes come ordered by order, so the first one is a smallest
  const Subgroup& vtx = good.front();
  for (const auto& q : good) {
    bool contains_conjugate = false;
    for (int x : g.elements())
      if (q.contains(conjugate(vtx, x))) {
        contains_conjugate = true;
        break;
      }
    if (!contains_conjugate) throw std::logic_error("relatively projective classes do not share a vertex");
  }
  return vtx;
}

std::vector<ModuleRep> sources(const ModuleRep& m, const Subgroup& vtx, std::uint64_t seed) {
  const Subgroup& g = m.group();
  Decomposition d = decompose(restrict(m, vtx), seed);
  std::vector<ModuleRep> out;
  for (std::size_t c : d.representative) {
    const ModuleRep& v = d.summands[c].module;
    Decomposition ind = decompose(induce(v, g), seed);
    bool found = false;
    for (std::size_t r : ind.representative) {
      const ModuleRep& w = ind.summands[r].module;
      if (w.dim() == m.dim() && is_isomorphic(w, m, seed)) {
        found = true;
        break;
      }
    }
    if (found) out.push_back(v);
  }
  if (out.empty()) throw std::logic_error("no source found; the subgroup is not a vertex");
  Subgroup norm = normalizer(vtx, g);
  for (std::size_t k = 1; k < out.size(); ++k) {
    bool conj = false;
    for (int x : norm.elements())
      if (is_isomorphic(twist(out[0], x), out[k], seed)) {
        conj = true;
        break;
      }
    if (!conj) throw std::logic_error("sources are not conjugate under the normalizer");
  }
  return out;
}

std::optional<Matrix> is_permutation_module(const ModuleRep& m, std::uint64_t seed) {
  const Subgroup& p = m.group();
  const Field& f = m.field();
  if (!p.is_p_group(f.p())) throw PreconditionError("permutation basis search needs a p-group");
  if (m.dim() == 0) return empty_matrix(f);
  auto classes = subgroup_classes(p);
  std::map<std::size_t, ModuleRep> perm_cache;
  Decomposition d = decompose(m, seed);
  std::vector<Vec> cols;
  for (const auto& s : d.summands) {
    std::optional<Matrix> found;
    for (std::size_t i = 0; i < classes.size() && !found; ++i) {
      if (classes[i].order() * s.module.dim() != p.order()) continue;
      auto it = perm_cache.find(i);
      if (it == perm_cache.end()) it = perm_cache.emplace(i, permutation_module(p, classes[i], f)).first;
      if (auto iso = find_isomorphism(it->second, s.module, seed)) found = s.inclusion * *iso;
    }
    if (!found) return std::nullopt;
    for (std::size_t j = 0; j < found->cols(); ++j) cols.push_back(found->col_vec(j));
  }
  Matrix basis = Matrix::from_cols(f, cols, m.dim());
  if (rank(basis) != m.dim()) throw std::logic_error("stable basis is dependent");
  std::map<Vec, int> index;
  for (const auto& c : cols) index.emplace(c, 0);
  for (int x : p.generators())
    for (const auto& c : cols)
      if (!index.count(m.act(x).apply(c))) throw std::logic_error("stable basis is not permuted");
  return basis;
}

ModuleRep end_module(const ModuleRep& v) { return tensor(v, dual(v)); }

bool is_endopermutation(const ModuleRep& v, std::uint64_t seed) {
  return is_permutation_module(end_module(v), seed).has_value();
}

}  // namespace bk
