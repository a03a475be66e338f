#include "brauerkit/galgebra.hpp"

namespace bk {

namespace {

void require_chain(const GAlgebra& a, const Subgroup& p, const Subgroup& q) {
  if (!q.contains(p) || !normalizer(p, a.group()).contains(q))
    throw PreconditionError("diagram needs P <= Q with Q normalizing P");
}

AlgebraHom as_hom(const AlphaMap& m) {
  if (m.domain.dim() != m.source.dim()) throw PreconditionError("alpha map is not defined on all of A(Q)");
  return make_hom(m.source, m.target, m.map);
}

GAlgebra brauer_galgebra_of(const GAlgebra& a, const Subgroup& p) { return brauer_galgebra(a, brauer_quotient(a, p)); }

AlgebraHom tensor_hom(const AlgebraHom& f, const AlgebraHom& g) {
  return AlgebraHom{tensor(f.source, g.source), tensor(f.target, g.target), kron(f.map, g.map)};
}

AlgebraHom identity_hom(const Algebra& a) { return AlgebraHom{a, a, Matrix::identity(a.field(), a.dim())}; }

}  // namespace

bool diagram_functor_alpha(const GAlgebra& a, const GAlgebra& b, const AlgebraHom& f, const Subgroup& p,
                           const Subgroup& q) {
  require_chain(a, p, q);
  AlgebraHom fp = induced_map(a, b, f, p);
  AlgebraHom fpq = induced_map(brauer_galgebra_of(a, p), brauer_galgebra_of(b, p), fp, q);
  AlgebraHom fq = induced_map(a, b, f, q);
  AlphaMap aa = alpha_pq(a, p, q), ab = alpha_pq(b, p, q);
  return fpq.map * aa.map == ab.map * fq.map;
}

bool diagram_functor_tensor(const GAlgebra& a, const GAlgebra& b, const GAlgebra& c, const GAlgebra& d,
                            const AlgebraHom& f, const AlgebraHom& g, const Subgroup& p) {
  AlgebraHom fg = tensor_hom(f, g);
  AlgebraHom top = induced_map(tensor(a, c), tensor(b, d), fg, p);
  AlgebraHom left = alpha_tensor(a, c, p), right = alpha_tensor(b, d, p);
  AlgebraHom bottom = tensor_hom(induced_map(a, b, f, p), induced_map(c, d, g, p));
  return top.map * left.map == right.map * bottom.map;
}

bool diagram_alpha_tensor(const GAlgebra& a, const GAlgebra& b, const Subgroup& p, const Subgroup& q) {
  require_chain(a, p, q);
  GAlgebra ab = tensor(a, b);
  AlgebraHom lhs1 = alpha_tensor(a, b, q);
  AlphaMap lhs2 = alpha_pq(ab, p, q);
  AlgebraHom bottom = tensor_hom(as_hom(alpha_pq(a, p, q)), as_hom(alpha_pq(b, p, q)));
  GAlgebra ap = brauer_galgebra_of(a, p), bp = brauer_galgebra_of(b, p);
  AlgebraHom mid = alpha_tensor(ap, bp, q);
  AlgebraHom abp = alpha_tensor(a, b, p);
  AlgebraHom top = induced_map(tensor(ap, bp), brauer_galgebra_of(ab, p), abp, q);
  return lhs2.map * lhs1.map == top.map * mid.map * bottom.map;
}

bool diagram_alpha_transitive(const GAlgebra& a, const Subgroup& p, const Subgroup& q, const Subgroup& r) {
  require_chain(a, p, q);
  require_chain(a, q, r);
  require_chain(a, p, r);
  Subgroup h = intersect(normalizer(p, a.group()), normalizer(q, a.group()));
  GAlgebra ap = brauer_galgebra_of(a, p);
  GAlgebra src = restrict(brauer_galgebra_of(a, q), h);
  GAlgebra tgt = restrict(brauer_galgebra_of(ap, q), h);
  AlgebraHom pq_r = induced_map(src, tgt, as_hom(alpha_pq(a, p, q)), r);
  AlphaMap qr = alpha_pq(a, q, r), pr = alpha_pq(a, p, r), ap_qr = alpha_pq(ap, q, r);
  return pq_r.map * qr.map == ap_qr.map * pr.map;
}

bool diagram_tensor_associative(const GAlgebra& a, const GAlgebra& b, const GAlgebra& c, const Subgroup& p) {
  AlgebraHom ab = alpha_tensor(a, b, p), bc = alpha_tensor(b, c, p);
  AlgebraHom ab_c = alpha_tensor(tensor(a, b), c, p), a_bc = alpha_tensor(a, tensor(b, c), p);
  BrauerData ba = brauer_quotient(a, p), bcq = brauer_quotient(c, p);
  AlgebraHom left = tensor_hom(ab, identity_hom(bcq.alg()));
  AlgebraHom right = tensor_hom(identity_hom(ba.alg()), bc);
  return ab_c.map * left.map == a_bc.map * right.map;
}

}  // namespace bk
