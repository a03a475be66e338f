#include "brauerkit/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

namespace bk::cli {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Group load_group(const RunConfig& cfg) {
  if (!cfg.group_path) throw InputError("--group is required");
  return Group::parse(read_file(*cfg.group_path), cfg.max_order);
}

nlohmann::json labels(const Group& g, const std::vector<int>& elems) {
  nlohmann::json arr = nlohmann::json::array();
  for (int x : elems) arr.push_back(g.label(x));
  return arr;
}

nlohmann::json field_json(const Field& f) {
  return nlohmann::json{{"p", f.p()}, {"n", f.n()}, {"poly", f.poly()}};
}

// Vertex and sources of an indecomposable module.
nlohmann::json vertex_json(const ModuleRep& m, std::uint64_t seed) {
  Subgroup x = vertex(m);
  nlohmann::json src = nlohmann::json::array();
  for (const ModuleRep& v : sources(m, x, seed))
    src.push_back(nlohmann::json{{"dim", v.dim()}, {"endopermutation", is_endopermutation(v, seed)}});
  return nlohmann::json{{"dim", m.dim()},
                        {"vertex_order", x.order()},
                        {"vertex_generators", labels(m.group().group(), x.generators())},
                        {"sources", std::move(src)}};
}

std::string cell(const nlohmann::json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

}  // namespace

Field select_field(const RunConfig& cfg) {
  if (!cfg.prime) throw InputError("--prime is required");
  if (!is_prime(*cfg.prime)) throw InputError("--prime must be prime");
  if (cfg.field_poly) return Field::parse("p=" + std::to_string(*cfg.prime) + " poly=" + *cfg.field_poly);
  if (cfg.degree == 0) throw InputError("--degree must be positive");
  return Field::standard(*cfg.prime, cfg.degree);
}

unsigned worker_count() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("BRAUERKIT_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1) throw InputError("BRAUERKIT_THREADS must be a positive integer");
    return std::min(hw, static_cast<unsigned>(v));
  }
  return hw;
}

Outcome cmd_blocks(const RunConfig& cfg) {
  Group g = load_group(cfg);
  Field f = select_field(cfg);
  nlohmann::json arr = nlohmann::json::array();
  for (const BlockData& b : blocks(g, f)) {
    SourceAlgebra s = source_algebra(b, cfg.seed);
    arr.push_back(nlohmann::json{{"idempotent", b.idempotent},
                                 {"defect_order", b.defect.order()},
                                 {"defect_class_repr", labels(g, b.defect.generators())},
                                 {"source_algebra_dim", s.algebra.algebra().dim()},
                                 {"block_dim", b.ideal_dim}});
  }
  return {nlohmann::json{{"command", "blocks"},
                         {"group_order", g.order()},
                         {"field", field_json(f)},
                         {"seed", cfg.seed},
                         {"blocks", std::move(arr)}},
          0};
}

Outcome cmd_vertex(const RunConfig& cfg) {
  Group g = load_group(cfg);
  if (!cfg.module_path) throw InputError("--module is required");
  ModuleRep m = ModuleRep::parse(read_file(*cfg.module_path), g);
  if (cfg.prime && *cfg.prime != m.field().p()) throw InputError("--prime does not match the module's field");
  if (m.dim() > cfg.max_dim) throw CapError("module dimension " + std::to_string(m.dim()) + " exceeds --max-dim");
  nlohmann::json base{{"command", "vertex"}, {"field", field_json(m.field())}, {"seed", cfg.seed}};
  if (is_indecomposable(m)) {
    base.update(vertex_json(m, cfg.seed));
    return {base, 0};
  }
  Decomposition d = decompose(m, cfg.seed, cfg.max_dim);
  nlohmann::json parts = nlohmann::json::array();
  for (std::size_t cls = 0; cls < d.representative.size(); ++cls) {
    nlohmann::json j = vertex_json(d.summands[d.representative[cls]].module, cfg.seed);
    j["multiplicity"] = d.multiplicity[cls];
    parts.push_back(std::move(j));
  }
  base["dim"] = m.dim();
  base["error"] = "module is decomposable";
  base["summands"] = std::move(parts);
  return {base, 4};
}

Outcome cmd_verify(const RunConfig& cfg) {
  if (!cfg.suite) throw InputError("--suite is required");
  if (!is_suite(*cfg.suite)) throw InputError("unknown suite: " + *cfg.suite);
  SuiteInputs in;
  if (cfg.group_path) {
    in.group = load_group(cfg);
    in.field = select_field(cfg);
  }
  if (cfg.module_path) {
    if (!in.group) throw InputError("--module needs --group");
    in.module = ModuleRep::parse(read_file(*cfg.module_path), *in.group);
    if (in.module->dim() > cfg.max_dim) throw CapError("module dimension exceeds --max-dim");
  }
  SuiteReport r = run_suite(*cfg.suite, in, cfg.seed, cfg.workers);
  nlohmann::json j = to_json(r);
  j["command"] = "verify";
  if (in.field) j["field"] = field_json(*in.field);
  return {j, r.pass() ? 0 : 1};
}

std::string render_json(const nlohmann::json& report) { return report.dump() + "\n"; }

std::string render_pretty(const nlohmann::json& report) {
  std::ostringstream s;
  const std::string cmd = report.value("command", "");
  if (cmd == "blocks") {
    s << "block  dim  defect  source  defect generators\n";
    std::size_t i = 0;
    for (const auto& b : report["blocks"])
      s << i++ << "  " << b["block_dim"] << "  " << b["defect_order"] << "  " << b["source_algebra_dim"] << "  "
        << b["defect_class_repr"].dump() << "\n";
  } else if (cmd == "vertex") {
    auto one = [&](const nlohmann::json& v) {
      s << "dim " << v["dim"] << "  vertex order " << v["vertex_order"] << "  generators "
        << v["vertex_generators"].dump() << "\n";
      for (const auto& src : v["sources"])
        s << "  source dim " << src["dim"] << (src["endopermutation"].get<bool>() ? "  endopermutation" : "") << "\n";
    };
    if (report.contains("summands")) {
      s << "decomposable module of dim " << report["dim"] << "\n";
      for (const auto& v : report["summands"]) {
        s << "x" << v["multiplicity"] << " ";
        one(v);
      }
    } else {
      one(report);
    }
  } else {
    s << "suite " << cell(report["suite"]) << ": " << (report["pass"].get<bool>() ? "PASS" : "FAIL") << "\n";
    for (const auto& inst : report["instances"]) {
      std::string refs;
      for (const auto& r : inst["input_refs"]) refs += (refs.empty() ? "" : "; ") + cell(r);
      s << (inst.value("skipped", false) ? "[skipped] " : "") << refs << "\n";
      for (const auto& c : inst["checks"]) {
        s << "  " << (c["pass"].get<bool>() ? "ok  " : "FAIL") << "  " << cell(c["name"]);
        if (c.contains("witness")) s << "  (" << cell(c["witness"]) << ")";
        s << "\n";
      }
      if (inst.contains("gate"))
        for (const auto& c : inst["gate"])
          if (!c["pass"].get<bool>()) s << "  gate failed: " << cell(c["name"]) << "\n";
      if (inst.contains("notes"))
        for (const auto& n : inst["notes"]) s << "  note: " << cell(n) << "\n";
    }
  }
  return s.str();
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Block and bimodule computations over finite fields"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::uint32_t prime = 0;
  std::string poly, suite;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--group", cfg.group_path, "group file");
    sub->add_option("--prime", prime, "characteristic");
    sub->add_option("--field-poly", poly, "defining polynomial, constant-first coefficients");
    sub->add_option("--degree", cfg.degree, "field degree over GF(p)");
    sub->add_option("--seed", cfg.seed, "seed for randomized routines");
    sub->add_option("--max-order", cfg.max_order, "group order cap")->check(CLI::PositiveNumber);
    sub->add_option("--max-dim", cfg.max_dim, "module dimension cap")->check(CLI::PositiveNumber);
    sub->add_option("--out", cfg.out_path, "write the report here");
    sub->add_flag("--pretty", cfg.pretty, "human-readable table");
    sub->add_flag("-v,--verbose", cfg.verbosity, "timing on stderr");
  };
  CLI::App* blocks_cmd = app.add_subcommand("blocks", "blocks of kG with defect groups");
  common(blocks_cmd);
  CLI::App* vertex_cmd = app.add_subcommand("vertex", "vertex and sources of a module");
  common(vertex_cmd);
  vertex_cmd->add_option("--module", cfg.module_path, "module file");
  CLI::App* verify_cmd = app.add_subcommand("verify", "run a verification suite");
  common(verify_cmd);
  verify_cmd->add_option("--suite", suite, "suite name")->required();
  verify_cmd->add_option("--module", cfg.module_path, "extra module instance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (prime != 0) cfg.prime = prime;
    if (!poly.empty()) cfg.field_poly = poly;
    if (!suite.empty()) cfg.suite = suite;
    cfg.workers = worker_count();
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    if (*blocks_cmd) {
      cfg.command = "blocks";
      o = cmd_blocks(cfg);
    } else if (*vertex_cmd) {
      cfg.command = "vertex";
      o = cmd_vertex(cfg);
    } else {
      cfg.command = "verify";
      o = cmd_verify(cfg);
    }
    std::string text = cfg.pretty ? render_pretty(o.report) : render_json(o.report);
    if (cfg.out_path) {
      std::ofstream f(*cfg.out_path, std::ios::binary);
      if (!f) throw InputError("cannot write " + *cfg.out_path);
      f << text;
    } else {
      out << text;
    }
    if (cfg.verbosity > 0) {
      auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0);
      err << cfg.command << ": " << ms.count() << " ms, " << cfg.workers << " worker(s)\n";
    }
    return o.exit_code;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    // number conversion inside the file parsers
    err << "input error: malformed number (" << e.what() << ")\n";
    return 2;
  } catch (const std::out_of_range& e) {
    err << "input error: number out of range (" << e.what() << ")\n";
    return 2;
  } catch (const CapError& e) {
    err << "cap exceeded: " << e.what() << "\n";
    return 3;
  } catch (const PreconditionError& e) {
    err << "precondition violated: " << e.what() << "\n";
    return 4;
  }
}

}  // namespace bk::cli
