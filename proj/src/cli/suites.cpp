#include "brauerkit/suites.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <map>
#include <thread>

namespace bk {

namespace {

using Job = std::function<SuiteInstance()>;

SuiteCheck check(std::string name, bool pass, std::optional<std::string> witness = std::nullopt) {
  return SuiteCheck{std::move(name), pass, std::move(witness)};
}

SuiteInstance instance(std::vector<std::string> refs) {
  SuiteInstance si;
  si.input_refs = std::move(refs);
  return si;
}

std::string group_ref(const Group& g) { return "group=" + (g.name().empty() ? std::string("input") : g.name()); }
std::string field_ref(const Field& f) { return "field=" + describe(f); }
std::string count_witness(std::string_view what, std::size_t a, std::size_t b) {
  return std::string(what) + ": " + std::to_string(a) + " vs " + std::to_string(b);
}

struct GroupCase {
  Group group;
  Field field;
};

// Conjugation algebras kG: the instance set shared by the Brauer quotient suites.
std::vector<GroupCase> conjugation_cases(const SuiteInputs& in) {
  std::vector<GroupCase> out;
  for (auto [name, p] : std::vector<std::pair<const char*, std::uint32_t>>{
           {"S3", 2}, {"S3", 3}, {"D8", 2}, {"A4", 2}, {"A4", 3}, {"C2xC2", 2}, {"C4", 2}})
    out.push_back({Group::named(name), Field::prime(p)});
  if (in.group && in.field) out.push_back({*in.group, *in.field});
  return out;
}

std::size_t centralizer_count(const Subgroup& p) {
  const Group& g = p.group();
  std::size_t n = 0;
  for (int x = 0; x < static_cast<int>(g.order()); ++x)
    n += std::all_of(p.elements().begin(), p.elements().end(), [&](int u) { return g.conj(u, x) == x; });
  return n;
}

// ---------------------------------------------------------------------------

std::vector<Job> basis_jobs(const SuiteInputs& in) {
  std::vector<Job> jobs;
  for (const auto& c : conjugation_cases(in)) {
    GAlgebra a = conjugation_algebra(c.group, c.field);
    for (const auto& p : subgroup_classes(c.group, c.field.p()))
      jobs.push_back([c, a, p] {
        SuiteInstance si = instance({group_ref(c.group), field_ref(c.field), "P=" + describe(p)});
        BrauerData bd = brauer_quotient(a, p);
        const std::size_t cent = centralizer_count(p);
        si.checks.push_back(check("dim-equals-centralizer-order", bd.alg().dim() == cent,
                                  count_witness("dim A(P), |C_G(P)|", bd.alg().dim(), cent)));
        // the P-fixed group elements are exactly C_G(P)
        std::vector<Vec> images;
        const Group& g = c.group;
        for (int x = 0; x < static_cast<int>(g.order()); ++x)
          if (std::all_of(p.elements().begin(), p.elements().end(), [&](int u) { return g.conj(u, x) == x; }))
            images.push_back(bd(a.algebra().basis_vector(static_cast<std::size_t>(x))));
        std::size_t r = images.empty() ? 0 : rank(Matrix::from_rows(c.field, images, bd.alg().dim()));
        si.checks.push_back(check("fixed-basis-maps-to-basis", r == images.size() && r == bd.alg().dim(),
                                  count_witness("rank of images, dim A(P)", r, bd.alg().dim())));
        si.checks.push_back(check("kernel-matches-trace-sum", bd.kernel == brauer_kernel_reference(a, p)));
        si.checks.push_back(check("stable-basis-found", stable_basis(a, p).has_value()));
        return si;
      });
  }
  return jobs;
}

std::vector<Job> kernel_jobs(const SuiteInputs& in) {
  std::vector<Job> jobs;
  for (const auto& c : conjugation_cases(in)) {
    GAlgebra a = conjugation_algebra(c.group, c.field);
    for (const auto& p : subgroup_classes(c.group, c.field.p()))
      jobs.push_back([c, a, p] {
        SuiteInstance si = instance({group_ref(c.group), field_ref(c.field), "P=" + describe(p)});
        const Field& f = c.field;
        const std::size_t n = c.group.order();
        Subgroup whole = Subgroup::whole(c.group);
        BrauerData bd = brauer_quotient(a, p);
        Subspace lower(f, n);
        for (const auto& q : all_subgroups(p))
          if (q.order() < p.order()) lower = lower + trace_image(a, whole, q);
        Subspace lhs = bd.kernel.intersect(trace_image(a, whole, p));
        si.checks.push_back(check("kernel-meets-trace-image", lhs == lower,
                                  count_witness("dims", lhs.dim(), lower.dim())));
        if (p.order() > 1) {
          Subspace meet = Subspace::full(f, n);
          for (const auto& q : all_subgroups(p))
            if (q.order() > 1) meet = meet.intersect(brauer_quotient(a, q).kernel);
          Subspace tr = trace_image(a, p, Subgroup::trivial(c.group));
          si.checks.push_back(check("kernel-intersection-is-trace-from-1", meet == tr,
                                    count_witness("dims", meet.dim(), tr.dim())));
        }
        return si;
      });
  }
  return jobs;
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

std::vector<Job> diagram_jobs(const SuiteInputs& in) {
  std::vector<Job> jobs;
  for (const auto& c : conjugation_cases(in)) {
    GAlgebra a = conjugation_algebra(c.group, c.field);
    jobs.push_back([c, a] {
      SuiteInstance si = instance({group_ref(c.group), field_ref(c.field)});
      Subgroup whole = Subgroup::whole(c.group);
      const unsigned p = c.field.p();
      for (const auto& pp : subgroup_classes(c.group, p)) {
        si.gate.push_back(check("stable-basis P=" + describe(pp), stable_basis(a, pp).has_value()));
        std::size_t chains = 0, bad = 0;
        for (const auto& q : all_subgroups(normalizer(pp, whole), p)) {
          if (!q.contains(pp)) continue;
          ++chains;
          bad += !alpha_pq(a, pp, q).bijective();
        }
        si.checks.push_back(check("alpha-pq-bijective P=" + describe(pp), bad == 0,
                                  count_witness("failing chains, chains", bad, chains)));
        if (c.group.order() <= 8) {
          AlgebraHom h = alpha_tensor(a, a, pp);
          std::size_t r = rank(h.map);
          si.checks.push_back(check("alpha-tensor-bijective P=" + describe(pp),
                                    h.map.rows() == h.map.cols() && r == h.map.rows(),
                                    count_witness("rank, dim", r, h.map.rows())));
        }
      }
      si.skipped = std::any_of(si.gate.begin(), si.gate.end(), [](const SuiteCheck& g) { return !g.pass; });
      if (si.skipped) si.checks.clear();
      return si;
    });
  }

  // The four squares, on algebras with homomorphisms between them.
  jobs.push_back([] {
    Group s3 = Group::named("S3");
    Field f = Field::prime(2);
    SuiteInstance si = instance({"group=S3", field_ref(f), "f=left regular kS3 -> End(kS3)"});
    GAlgebra a = conjugation_algebra(s3, f);
    ModuleRep reg = regular_module(Subgroup::whole(s3), f);
    GAlgebra e = endomorphism_algebra(reg);
    AlgebraHom lr = left_regular(a, e, reg);
    AlgebraHom id{a.algebra(), a.algebra(), Matrix::identity(f, 6)};
    Subgroup one = Subgroup::trivial(s3), c2 = sylow(s3, 2);
    si.checks.push_back(check("functor-alpha P=1 Q=C2", diagram_functor_alpha(a, e, lr, one, c2)));
    si.checks.push_back(check("functor-alpha P=Q=C2", diagram_functor_alpha(a, e, lr, c2, c2)));
    si.checks.push_back(check("functor-tensor P=C2", diagram_functor_tensor(a, e, a, a, lr, id, c2)));
    si.checks.push_back(check("alpha-tensor P=1 Q=C2", diagram_alpha_tensor(a, a, one, c2)));
    si.checks.push_back(check("alpha-tensor P=Q=C2", diagram_alpha_tensor(a, a, c2, c2)));
    return si;
  });
  jobs.push_back([] {
    Group d8 = Group::named("D8");
    Field f = Field::prime(2);
    SuiteInstance si = instance({"group=D8", field_ref(f)});
    GAlgebra b = conjugation_algebra(d8, f);
    Subgroup dw = Subgroup::whole(d8);
    Subgroup z = centralizer(dw, dw);
    for (const auto& q : all_subgroups(dw, 2)) {
      if (q.order() != 4) continue;
      si.checks.push_back(check("alpha-transitive Z<" + describe(q) + "<D8", diagram_alpha_transitive(b, z, q, dw)));
      si.checks.push_back(check("alpha-transitive 1<Z<" + describe(q),
                                diagram_alpha_transitive(b, Subgroup::trivial(d8), z, q)));
    }
    return si;
  });
  jobs.push_back([] {
    Group c2 = Group::named("C2");
    Field f = Field::prime(2);
    Subgroup cw = Subgroup::whole(c2);
    SuiteInstance si = instance({"group=C2", field_ref(f), "algebras=kC2, End(k + kC2)"});
    GAlgebra k = conjugation_algebra(c2, f);
    GAlgebra m = endomorphism_algebra(direct_sum(trivial_module(cw, f), regular_module(cw, f)));
    si.checks.push_back(check("tensor-associative (kC2, E, kC2) P=C2", diagram_tensor_associative(k, m, k, cw)));
    si.checks.push_back(
        check("tensor-associative (E, kC2, E) P=1", diagram_tensor_associative(m, k, m, Subgroup::trivial(c2))));
    return si;
  });
  return jobs;
}

// ---------------------------------------------------------------------------

std::vector<Job> points_jobs(const SuiteInputs& in) {
  std::vector<Job> jobs;
  jobs.push_back([] {
    SuiteInstance si = instance({"tensor pairs over GF(4) and GF(3)"});
    struct Named {
      std::string name;
      Algebra alg;
    };
    for (std::uint32_t p : {2u, 3u}) {
      Field f = p == 2 ? Field::standard(2, 2) : Field::prime(3);
      std::vector<Named> algs = {{"kC2", group_algebra(Group::named("C2"), f)},
                                 {"kC3", group_algebra(Group::named("C3"), f)},
                                 {"M2", matrix_algebra(f, 2)}};
      if (p == 3) algs.push_back({"kS3", group_algebra(Group::named("S3"), f)});
      for (const auto& a : algs)
        for (const auto& b : algs) {
          if (!is_split(a.alg) && !is_split(b.alg)) continue;
          std::size_t pa = points(a.alg).size(), pb = points(b.alg).size(), pt = points(tensor(a.alg, b.alg)).size();
          si.checks.push_back(check("points-multiply " + a.name + " (x) " + b.name + " over GF(" +
                                        std::to_string(f.q()) + ")",
                                    pt == pa * pb, count_witness("|P(A(x)B)|, |P(A)||P(B)|", pt, pa * pb)));
        }
    }
    return si;
  });

  for (const auto& c : conjugation_cases(in)) {
    GAlgebra a = conjugation_algebra(c.group, c.field);
    for (const auto& p : subgroup_classes(c.group, c.field.p()))
      jobs.push_back([c, a, p] {
        SuiteInstance si = instance({group_ref(c.group), field_ref(c.field), "P=" + describe(p)});
        PointedGroups pg = local_points(a, p);
        std::vector<int> hits(pg.quotient_points.size(), 0);
        bool mult = true;
        for (std::size_t i = 0; i < pg.points.size(); ++i) {
          if (!pg.local[i]) continue;
          int j = pg.quotient_point[i];
          if (j < 0) {
            mult = false;
            continue;
          }
          ++hits[static_cast<std::size_t>(j)];
          mult = mult && pg.points[i].multiplicity == pg.quotient_points[static_cast<std::size_t>(j)].multiplicity;
        }
        bool bij = std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; });
        std::size_t n_local = static_cast<std::size_t>(std::count(pg.local.begin(), pg.local.end(), true));
        si.checks.push_back(check("local-points-biject-with-quotient-points", bij,
                                  count_witness("local points, points of A(P)", n_local, pg.quotient_points.size())));
        si.checks.push_back(check("multiplicity-preserved-by-br", mult));
        return si;
      });
  }

  jobs.push_back([] {
    SuiteInstance si = instance({"primitive idempotents on simple modules"});
    struct Named {
      std::string name;
      Algebra alg;
    };
    std::vector<Named> algs = {{"kS3/GF(3)", group_algebra(Group::named("S3"), Field::prime(3))},
                               {"kS3/GF(2)", group_algebra(Group::named("S3"), Field::prime(2))},
                               {"kC2/GF(2)", group_algebra(Group::named("C2"), Field::prime(2))},
                               {"kC3/GF(4)", group_algebra(Group::named("C3"), Field::standard(2, 2))},
                               {"kA4/GF(4)", group_algebra(Group::named("A4"), Field::standard(2, 2))},
                               {"M2/GF(3)", matrix_algebra(Field::prime(3), 2)}};
    for (const auto& a : algs) {
      si.gate.push_back(check("split " + a.name, is_split(a.alg)));
      auto simples = simple_modules(a.alg);
      std::size_t n = 0, bad = 0;
      for (const Vec& e : primitive_decomposition(a.alg))
        for (const auto& rho : simples) {
          Matrix img = represent(rho, e);
          Elem t = trace_of_primitive_on_simple(a.alg, e, rho);
          bool ok = img.is_zero() ? t == 0 : (t == 1 && rank(img) == 1);
          ++n;
          bad += !ok;
        }
      si.checks.push_back(
          check("trace-is-0-or-1 " + a.name, bad == 0, count_witness("bad pairs, pairs", bad, n)));
    }
    return si;
  });

  jobs.push_back([] {
    SuiteInstance si = instance({"split semisimple P-algebras with one point on A(P)"});
    Group c3 = Group::named("C3"), c2 = Group::named("C2");
    Field f4 = Field::standard(2, 2);
    Algebra kc3 = group_algebra(c3, f4);
    Matrix inv(f4, 3, 3);
    for (int x = 0; x < 3; ++x) inv(static_cast<std::size_t>(c3.inv(x)), static_cast<std::size_t>(x)) = 1;
    Subgroup cw = Subgroup::whole(c2);
    std::vector<int> gens = cw.generators();
    GAlgebra a = GAlgebra::from_generators(kc3, cw, gens, {inv});
    StablePoint sp = unique_stable_point(a, cw);
    si.checks.push_back(check("unique-stable-block kC3/GF(4) under inversion", sp.matching_blocks == 1,
                              "matching blocks: " + std::to_string(sp.matching_blocks)));
    si.checks.push_back(check("complement-in-kernel kC3/GF(4)", sp.complement_in_kernel));
    Field f2 = Field::prime(2);
    GAlgebra s = endomorphism_algebra(direct_sum(trivial_module(cw, f2), regular_module(cw, f2)));
    StablePoint ws = unique_stable_point(s, cw);
    si.checks.push_back(check("unique-stable-block End(k + kC2)", ws.matching_blocks == 1,
                              "matching blocks: " + std::to_string(ws.matching_blocks)));
    si.checks.push_back(check("complement-in-kernel End(k + kC2)", ws.complement_in_kernel));
    return si;
  });
  return jobs;
}

// ---------------------------------------------------------------------------

struct TwistCase {
  Group group;
  Field field;
  Subgroup p, q;
};

Job twisted_job(TwistCase c, std::uint64_t seed) {
  return [c, seed] {
    SuiteInstance si = instance({group_ref(c.group), field_ref(c.field), "P=" + describe(c.p), "Q=" + describe(c.q)});
    TwistedSummandReport r = twisted_summands_check(c.group, c.field, c.p, c.q, seed);
    for (std::size_t i = 0; i < r.summands.size(); ++i) {
      const TwistedSummand& s = r.summands[i];
      std::string w = "dim " + std::to_string(s.dim) + ", multiplicity " + std::to_string(s.multiplicity) +
                      ", |R| " + std::to_string(s.twist_order) + ", vertex order " + std::to_string(s.vertex_order);
      si.checks.push_back(check("summand " + std::to_string(i) + " is induced from a twisted diagonal", s.matched, w));
      si.checks.push_back(check("summand " + std::to_string(i) + " full vertex forces full twist", s.full_twist_ok));
    }
    if (r.summands.empty()) si.checks.push_back(check("has summands", false));
    return si;
  };
}

std::vector<TwistCase> builtin_twist_cases() {
  std::vector<TwistCase> out;
  for (auto [name, p] : std::vector<std::pair<const char*, std::uint32_t>>{
           {"C2", 2}, {"C4", 2}, {"C2xC2", 2}, {"S3", 2}, {"A4", 2}, {"S3", 3}}) {
    Group g = Group::named(name);
    Subgroup s = sylow(g, p);
    out.push_back({g, Field::prime(p), s, s});
  }
  return out;
}

std::vector<Job> summand_jobs(const SuiteInputs& in, std::uint64_t seed) {
  std::vector<Job> jobs;
  for (auto& c : builtin_twist_cases()) jobs.push_back(twisted_job(c, seed));
  if (in.group && in.field) {
    Subgroup s = sylow(*in.group, in.field->p());
    jobs.push_back(twisted_job({*in.group, *in.field, s, s}, seed));
  }
  return jobs;
}

// Witness bimodules plus, for a user group, kGb for each block b.
std::vector<Witness> bimodule_cases(const SuiteInputs& in, bool extensions) {
  std::vector<Witness> out = witness_set(extensions);
  if (in.group && in.field) {
    DirectProduct prod = direct_product(*in.group, *in.group);
    Subgroup whole = Subgroup::whole(*in.group);
    std::size_t i = 0;
    for (const BlockData& b : blocks(*in.group, *in.field)) {
      std::string label = "k" + (in.group->name().empty() ? std::string("G") : in.group->name()) + " block " +
                          std::to_string(i++);
      out.push_back({label, regular_bimodule(prod, *in.field, whole, b.idempotent), b.idempotent, b.idempotent});
    }
  }
  return out;
}

std::vector<std::string> bimodule_refs(const Witness& w) {
  return {"bimodule=" + w.label, field_ref(w.bimodule.field()), "left=" + describe(w.bimodule.left),
          "right=" + describe(w.bimodule.right)};
}

std::vector<Job> defect_jobs(const SuiteInputs& in, std::uint64_t seed) {
  std::vector<Job> jobs;
  for (const Witness& w : bimodule_cases(in, false))
    jobs.push_back([w, seed] {
      SuiteInstance si = instance(bimodule_refs(w));
      VertexSourceReport r = vertex_source_check(w.bimodule, w.left_block, w.right_block, seed);
      si.checks.push_back(check("vertex-twisted-diagonal", r.twisted_diagonal, "vertex " + describe(r.vertex)));
      si.checks.push_back(check("left-projection-is-defect-group", r.left_defect.value_or(false)));
      si.checks.push_back(check("right-projection-is-defect-group", r.right_defect.value_or(false)));
      si.checks.push_back(check("summand-of-induced-source",
                                source_summand_check(w.bimodule, w.left_block, w.right_block, r, seed)));
      SourceAlgebraComparison cmp = compare_source_algebras(w.bimodule, w.left_block, w.right_block, r, seed);
      if (cmp.attempted) {
        si.checks.push_back(check("source-algebras-isomorphic", cmp.isomorphic,
                                  count_witness("dims", cmp.end_dim, cmp.corner_dim)));
        si.checks.push_back(check("source-algebra-stable-basis", cmp.stable_basis));
      } else {
        si.notes.push_back("source algebra comparison not attempted: " + cmp.note);
      }
      return si;
    });
  return jobs;
}

std::vector<Job> main_jobs(const SuiteInputs& in, std::uint64_t seed) {
  std::vector<Job> jobs;
  for (const Witness& w : bimodule_cases(in, true))
    jobs.push_back([w, seed] {
      SuiteInstance si = instance(bimodule_refs(w));
      StableEquivalenceCertificate cert = check_stable_equivalence(w.bimodule, w.left_block, w.right_block, seed);
      si.checks.push_back(check("stable-equivalence-certificate", cert.pass(),
                                cert.bimodule_ok ? "product dims " + std::to_string(cert.left_product.dim) + ", " +
                                                       std::to_string(cert.right_product.dim)
                                                 : cert.failure));
      VertexSourceReport r = vertex_source_check(w.bimodule, w.left_block, w.right_block, seed);
      si.checks.push_back(check("vertex-twisted-diagonal", r.twisted_diagonal, "vertex " + describe(r.vertex)));
      si.checks.push_back(check("source-endopermutation", r.endopermutation));
      si.checks.push_back(
          check("p-does-not-divide-source-dim", r.coprime_dim, "dim " + std::to_string(r.source.dim())));
      si.checks.push_back(check("conditions-agree", r.consistent()));
      si.checks.push_back(check("projections-are-defect-groups",
                                r.left_defect.value_or(false) && r.right_defect.value_or(false)));
      return si;
    });
  for (auto& c : builtin_twist_cases()) {
    std::string name = c.group.name();
    if ((name == "S3" && c.field.p() == 2) || name == "A4") jobs.push_back(twisted_job(c, seed));
  }
  return jobs;
}

// ---------------------------------------------------------------------------

struct Extension {
  Field small, big;
};

std::vector<Job> galois_jobs(const SuiteInputs& in, std::uint64_t seed) {
  std::vector<Job> jobs;
  std::vector<Extension> exts = {{Field::prime(2), Field::standard(2, 2)},
                                 {Field::prime(2), Field::standard(2, 4)},
                                 {Field::prime(3), Field::standard(3, 2)}};
  std::vector<Group> groups;
  for (const char* name : {"C3", "S3", "A4", "C5"}) groups.push_back(Group::named(name));
  auto descent_job = [](Group g, Extension e) -> Job {
    return [g, e] {
      SuiteInstance si = instance({group_ref(g), "small=" + describe(e.small), "big=" + describe(e.big)});
      auto recs = galois_descent(g, e.small, e.big);
      for (std::size_t i = 0; i < recs.size(); ++i) {
        const auto& r = recs[i];
        std::string w = std::to_string(r.extension_blocks.size()) + " blocks over the extension, degree " +
                        std::to_string(r.definition_degree) + ", defect order " + std::to_string(r.defect.order());
        si.checks.push_back(check("block " + std::to_string(i) + " orbit-sum", r.orbit_sum_matches, w));
        si.checks.push_back(check("block " + std::to_string(i) + " defect-invariant", r.defects_match));
      }
      return si;
    };
  };
  for (const Group& g : groups)
    for (const Extension& e : exts) jobs.push_back(descent_job(g, e));
  if (in.group && in.field) jobs.push_back(descent_job(*in.group, {*in.field, Field::standard(in.field->p(), 2 * in.field->n())}));

  // Vertices of the summands of k' (x) M.
  struct ModCase {
    std::string label;
    ModuleRep m;
  };
  std::vector<ModCase> mods;
  for (const char* name : {"S3", "A4", "D8"})
    mods.push_back({std::string("trivial k") + name, trivial_module(Subgroup::whole(Group::named(name)), Field::prime(2))});
  {
    Group c3 = Group::named("C3");
    mods.push_back({"J2 over kC3", jordan_module(Subgroup::whole(c3), Field::prime(3), 2)});
    Group s3 = Group::named("S3");
    mods.push_back({"permutation kS3 on C2 cosets at p=3", permutation_module(Subgroup::whole(s3), sylow(s3, 2), Field::prime(3))});
  }
  if (in.module) mods.push_back({"input module", *in.module});
  for (const auto& mc : mods)
    jobs.push_back([mc, seed] {
      const Field& k = mc.m.field();
      Field big = Field::standard(k.p(), 2 * k.n());
      SuiteInstance si = instance({"module=" + mc.label, field_ref(k), "big=" + describe(big)});
      Decomposition base = decompose(mc.m, seed);
      for (std::size_t cls : base.representative) {
        const ModuleRep& s = base.summands[cls].module;
        Subgroup x = vertex(s);
        Decomposition d = decompose(scalar_extend(s, big), seed);
        std::size_t bad = 0;
        for (const auto& t : d.summands) bad += !conjugating_element(vertex(t.module), x, s.group()).has_value();
        si.checks.push_back(check("extension summands keep the vertex (dim " + std::to_string(s.dim()) + ")",
                                  bad == 0, "vertex " + describe(x) + ", summands " + std::to_string(d.summands.size())));
      }
      return si;
    });

  for (const Witness& w : witness_set(false))
    jobs.push_back([w, seed] {
      Field big = Field::standard(w.bimodule.field().p(), 2);
      SuiteInstance si = instance(bimodule_refs(w));
      si.input_refs.push_back("big=" + describe(big));
      VertexSourceReport r = vertex_source_check(w.bimodule, w.left_block, w.right_block, seed);
      ExtensionReport e = extension_check(w.bimodule, w.left_block, w.right_block, r, big, seed);
      si.checks.push_back(check("summands-keep-vertex", e.vertices_match, std::to_string(e.summands) + " summands"));
      si.checks.push_back(check("extended-source-is-a-source", e.sources_descend));
      si.checks.push_back(check("summand-gives-stable-equivalence", e.stable_summand));
      si.checks.push_back(check("definition-fields-agree", e.left_degree == e.right_degree,
                                count_witness("degrees", e.left_degree, e.right_degree)));
      return si;
    });
  return jobs;
}

// ---------------------------------------------------------------------------

SuiteInstance harness_instance(const HarnessInstance& h, std::vector<std::string> refs, std::uint64_t seed) {
  SuiteInstance si = instance(std::move(refs));
  HarnessReport r = endopermutation_harness(h, seed);
  for (const auto& g : r.gate) si.gate.push_back(check(g.name, g.pass, g.witness.empty() ? std::nullopt : std::optional(g.witness)));
  for (const auto& c : r.checks)
    si.checks.push_back(check(c.name, c.pass, c.witness.empty() ? std::nullopt : std::optional(c.witness)));
  si.skipped = !r.hypotheses;
  return si;
}

std::vector<Job> harness_jobs(const SuiteInputs& in, std::uint64_t seed) {
  std::vector<Job> jobs;
  struct SourceCase {
    std::string label;
    const char* group;
    std::uint32_t p;
    std::size_t jordan;  // 0: trivial, 99: free
  };
  for (const SourceCase& c : std::vector<SourceCase>{{"V=k over C2", "C2", 2, 1},
                                                     {"V=k over C4", "C4", 2, 1},
                                                     {"V=k over C2xC2", "C2xC2", 2, 0},
                                                     {"V=J2 over C3", "C3", 3, 2},
                                                     {"V=J3 over C4", "C4", 2, 3},
                                                     {"V=kC2 free", "C2", 2, 99}})
    jobs.push_back([c, seed] {
      Group g = Group::named(c.group);
      Field f = Field::prime(c.p);
      Subgroup p = Subgroup::whole(g);
      ModuleRep v = c.jordan == 0    ? trivial_module(p, f)
                    : c.jordan == 99 ? regular_module(p, f)
                                     : jordan_module(p, f, c.jordan);
      GroupAlgebraData b = group_algebra_data(p, f);
      HarnessInstance h = corner_instance(c.label, v, b.alg, b.form, seed);
      return harness_instance(h, {"source=" + c.label, field_ref(f), "B=kP"}, seed);
    });
  for (const Witness& w : witness_set(false))
    jobs.push_back([w, seed] {
      std::vector<std::string> refs = bimodule_refs(w);
      refs.push_back("A = source algebra comparison");
      VertexSourceReport r = vertex_source_check(w.bimodule, w.left_block, w.right_block, seed);
      SourceAlgebraComparison cmp = compare_source_algebras(w.bimodule, w.left_block, w.right_block, r, seed);
      if (!cmp.instance) {
        SuiteInstance si = instance(refs);
        si.skipped = true;
        si.gate.push_back(check("comparison-built-instance", false, cmp.note));
        return si;
      }
      return harness_instance(*cmp.instance, refs, seed);
    });
  if (in.module) {
    ModuleRep v = *in.module;
    jobs.push_back([v, seed] {
      if (!v.group().is_p_group(v.field().p())) throw PreconditionError("the source module must be over a p-group");
      GroupAlgebraData b = group_algebra_data(v.group(), v.field());
      HarnessInstance h = corner_instance("input", v, b.alg, b.form, seed);
      return harness_instance(h, {"source=input module", field_ref(v.field()), "B=kP"}, seed);
    });
  }
  return jobs;
}

// ---------------------------------------------------------------------------

std::vector<SuiteInstance> run_jobs(const std::vector<Job>& jobs, unsigned workers) {
  std::vector<SuiteInstance> out(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      try {
        out[i] = jobs[i]();
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(jobs.size())));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

nlohmann::json checks_json(const std::vector<SuiteCheck>& cs) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : cs) {
    nlohmann::json j{{"name", c.name}, {"pass", c.pass}};
    if (c.witness) j["witness"] = *c.witness;
    arr.push_back(std::move(j));
  }
  return arr;
}

}  // namespace

bool SuiteInstance::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const SuiteCheck& c) { return c.pass; });
}

bool SuiteReport::pass() const {
  std::size_t ran = 0;
  for (const auto& i : instances) {
    if (i.skipped) continue;
    ++ran;
    if (!i.pass()) return false;
  }
  return ran > 0;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"lemma2-basis",    "lemma2-kernels", "lemma2-diagrams",
                                                 "prop2-points",    "lemma3-summands", "prop3-defect",
                                                 "thm-main",        "lemma4-galois",  "section5"};
  return names;
}

bool is_suite(std::string_view name) {
  const auto& n = suite_names();
  return std::find(n.begin(), n.end(), name) != n.end();
}

SuiteReport run_suite(std::string_view name, const SuiteInputs& inputs, std::uint64_t seed, unsigned workers) {
  if (!is_suite(name)) throw InputError("unknown suite: " + std::string(name));
  std::vector<Job> jobs;
  if (name == "lemma2-basis") jobs = basis_jobs(inputs);
  else if (name == "lemma2-kernels") jobs = kernel_jobs(inputs);
  else if (name == "lemma2-diagrams") jobs = diagram_jobs(inputs);
  else if (name == "prop2-points") jobs = points_jobs(inputs);
  else if (name == "lemma3-summands") jobs = summand_jobs(inputs, seed);
  else if (name == "prop3-defect") jobs = defect_jobs(inputs, seed);
  else if (name == "thm-main") jobs = main_jobs(inputs, seed);
  else if (name == "lemma4-galois") jobs = galois_jobs(inputs, seed);
  else jobs = harness_jobs(inputs, seed);
  return SuiteReport{std::string(name), seed, run_jobs(jobs, workers)};
}

nlohmann::json to_json(const SuiteReport& r) {
  nlohmann::json inst = nlohmann::json::array();
  for (const auto& i : r.instances) {
    nlohmann::json j{{"input_refs", i.input_refs}, {"checks", checks_json(i.checks)}};
    if (i.skipped) j["skipped"] = true;
    if (!i.gate.empty()) j["gate"] = checks_json(i.gate);
    if (!i.notes.empty()) j["notes"] = i.notes;
    inst.push_back(std::move(j));
  }
  return nlohmann::json{{"suite", r.suite}, {"seed", r.seed}, {"pass", r.pass()}, {"instances", std::move(inst)}};
}

std::string describe(const Field& f) {
  std::string s = f.spec();
  return s.rfind("field ", 0) == 0 ? s.substr(6) : s;
}

std::string describe(const Subgroup& s) {
  std::string out = "order " + std::to_string(s.order()) + " <";
  bool first = true;
  for (int g : s.generators()) {
    out += (first ? "" : ", ") + s.group().label(g);
    first = false;
  }
  return out + ">";
}

}  // namespace bk
