#include "bmu/cli.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "CLI11.hpp"
#include "bmu/legdsl.hpp"

namespace bmu {

using nlohmann::json;

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr);
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
  return os.str();
}

json certificate_to_json(const Certificate& cert, bool with_times) {
  json checks = json::array();
  for (const auto& c : cert.checks) {
    json e{{"name", c.name}, {"relation", c.relation}, {"threshold", c.threshold}, {"pass", c.pass}};
    e["value"] = std::isfinite(c.value) ? json(c.value) : json(nullptr);
    if (with_times) e["wall_time_s"] = c.wall_time_s;
    checks.push_back(std::move(e));
  }
  const RegularityReport& r = cert.regularity;
  json reg{{"rank_C", r.rank_C},
           {"rank_D", r.rank_D},
           {"full", r.full},
           {"goodness_dim", r.goodness_dim},
           {"good", r.good},
           {"semi_regular", r.semi_regular},
           {"regular", r.regular},
           {"bi_regular", r.bi_regular},
           {"dual_consistent", r.dual_consistent}};
  return json{{"checks", checks}, {"regularity", reg}, {"all_pass", cert.all_pass()}};
}

json search_to_json(const SearchProblem& p, const SearchOutcome& o) {
  json results = json::array();
  for (const auto& r : o.results) {
    results.push_back(json{{"restart", r.restart},
                           {"iterations", r.iterations},
                           {"residual", r.residual},
                           {"trivial", r.trivial},
                           {"certificate", certificate_to_json(r.certificate, false)},
                           {"matrix", matrix_to_json(r.unitary.op().matrix())}});
  }
  json space{{"id", p.l.id}, {"dim", p.l.dim}};
  if (p.l.grading) space["grading"] = *p.l.grading;
  return json{{"tool", "bmu"},
              {"version", kToolVersion},
              {"seed", o.seed},
              {"restarts", o.restarts},
              {"max_iter", p.max_iter},
              {"target_residual", p.target_residual},
              {"degree_modulus", p.degree_modulus},
              {"braiding", p.braiding->kind()},
              {"modulus", p.braiding->grading_modulus()},
              {"space", space},
              {"num_params", o.num_params},
              {"count", o.results.size()},
              {"results", results}};
}

namespace {

struct UsageError : Error {
  using Error::Error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<int> alternating(int dim) {
  std::vector<int> g(dim);
  for (int i = 0; i < dim; ++i) g[i] = i % 2;
  return g;
}

struct GenerateOptions {
  std::string kind, group = "Zn", out;
  int n = 2, dim = 2, modulus = 2;
};

Bundle generate(const GenerateOptions& o) {
  Bundle b;
  if (o.kind == "kac-takesaki") {
    FiniteGroup g;
    std::string gname;
    if (o.group == "Zn") {
      if (o.n < 1) throw UsageError("--n must be >= 1");
      g = cyclic_group(o.n);
      gname = "Z" + std::to_string(o.n);
    } else if (o.group == "S3") {
      g = symmetric_group(3);
      gname = "S3";
    } else if (o.group == "Sn") {
      if (o.n < 1 || o.n > 4) throw UsageError("--n must be in 1..4 for Sn");
      g = symmetric_group(o.n);
      gname = "S" + std::to_string(o.n);
    } else {
      throw UsageError("unknown group '" + o.group + "' (expected Zn, S3 or Sn)");
    }
    MultUnitary w = kac_takesaki(g);
    b.braiding = w.braiding();
    b.add_operator("W", w.op());
    b.groups.emplace(gname, g);
  } else if (o.kind == "super" || o.kind == "phase") {
    if (o.dim < 1) throw UsageError("--dim must be >= 1");
    const int m = o.kind == "super" ? 2 : o.modulus;
    if (m < 1) throw UsageError("--modulus must be >= 1");
    std::vector<int> grading(o.dim);
    for (int i = 0; i < o.dim; ++i) grading[i] = o.kind == "super" ? i % 2 : i % m;
    Space l("L", o.dim, grading);
    b.braiding = make_phase(m);
    b.add_operator("F", LegOperator::identity(Legs{l, l}));
  } else if (o.kind == "identity") {
    if (o.dim < 1) throw UsageError("--dim must be >= 1");
    Space l("L", o.dim);
    b.braiding = make_flip();
    b.add_operator("F", LegOperator::identity(Legs{l, l}));
  } else if (o.kind == "yd-z2") {
    MultUnitary w = kac_takesaki(cyclic_group(2), "K");
    YDModule m = z2_sign_module(w, "H");
    b.braiding = w.braiding();
    b.add_operator("W", w.op());
    b.add_operator("U", m.u);
    b.add_operator("V", m.v);
    b.add_operator("Phi", yd_braiding(m, m, w, 1e-10));
    b.groups.emplace("Z2", cyclic_group(2));
  } else {
    throw UsageError("unknown kind '" + o.kind +
                     "' (expected kac-takesaki, super, phase, identity or yd-z2)");
  }
  return b;
}

int cmd_generate(const GenerateOptions& o, std::ostream& out) {
  Bundle b = generate(o);
  save_bundle(b, o.out);
  out << "wrote " << o.out << " (" << b.operators.size() << " operator"
      << (b.operators.size() == 1 ? "" : "s") << ")\n";
  return kExitPass;
}

struct AnalyzeOptions {
  std::string file, object, report;
  double tol = kDefaultTol;
};

int cmd_analyze(const AnalyzeOptions& o, std::ostream& out) {
  const std::string bytes = read_file(o.file);
  Bundle b = deserialize(bytes);
  if (!b.operators.count(o.object)) throw UsageError("no operator '" + o.object + "' in " + o.file);
  MultUnitary m = b.mult_unitary(o.object);
  Certificate cert = full_certificate(m, o.tol);
  for (const auto& c : cert.checks) {
    out << (c.pass ? "PASS " : "FAIL ") << c.name << " = ";
    if (std::isfinite(c.value)) out << c.value;
    else out << "n/a";
    out << " (" << c.relation << " " << c.threshold << ")\n";
  }
  out << (cert.all_pass() ? "certificate passed" : "certificate failed") << "\n";
  if (!o.report.empty()) {
    json r = certificate_to_json(cert);
    r["tool"] = "bmu";
    r["version"] = kToolVersion;
    r["input"] = o.file;
    r["input_digest"] = "sha256:" + sha256_hex(bytes);
    r["object"] = o.object;
    r["tolerance"] = o.tol;
    write_atomic(o.report, canonical_json(r));
  }
  return cert.all_pass() ? kExitPass : kExitCheckFailed;
}

struct SearchOptions {
  std::string category = "super", out;
  int dim = 2, modulus = 2, restarts = 16, max_iter = 200;
  std::uint64_t seed = 0;
  double target = 1e-10;
};

int cmd_search(const SearchOptions& o, std::ostream& out) {
  if (o.dim < 1) throw UsageError("--dim must be >= 1");
  SearchProblem p{Space("L", o.dim), make_flip()};
  if (o.category == "super") {
    p.l = Space("L", o.dim, alternating(o.dim));
    p.braiding = make_phase(2);
    p.degree_modulus = 2;
  } else if (o.category == "phase") {
    if (o.modulus < 1) throw UsageError("--modulus must be >= 1");
    std::vector<int> g(o.dim);
    for (int i = 0; i < o.dim; ++i) g[i] = i % o.modulus;
    p.l = Space("L", o.dim, g);
    p.braiding = make_phase(o.modulus);
    p.degree_modulus = o.modulus;
  } else if (o.category != "flip") {
    throw UsageError("unknown category '" + o.category + "' (expected flip, super or phase)");
  }
  p.seed = o.seed;
  p.restarts = o.restarts;
  p.max_iter = o.max_iter;
  p.target_residual = o.target;
  SearchOutcome res = search(p);
  out << "found " << res.results.size() << " certified unitar"
      << (res.results.size() == 1 ? "y" : "ies") << " (seed " << res.seed << ")\n";
  for (const auto& r : res.results)
    out << "  restart " << r.restart << ": residual " << r.residual
        << (r.trivial ? " (trivial)" : "") << "\n";
  if (!o.out.empty()) write_atomic(o.out, canonical_json(search_to_json(p, res)));
  return kExitPass;
}

struct EvalOptions {
  std::string statements, data;
  double tol = kDefaultTol;
};

int cmd_eval(const EvalOptions& o, std::ostream& out, std::ostream& err) {
  const std::string text = read_file(o.statements);
  Bundle b = load_bundle(o.data);
  dsl::Script script;
  try {
    script = dsl::parse_script(text);
  } catch (const ParseError& e) {
    err << o.statements << ": " << e.what() << "\n";
    return kExitUsage;
  }
  const dsl::ScriptReport rep =
      dsl::run_script(script, b.spaces, b.operators, *b.braiding, o.tol);
  for (const auto& r : rep.results) {
    out << (r.pass ? "PASS " : "FAIL ") << "line " << r.line << ": " << r.text;
    if (r.assertion && r.error.empty()) out << "  residual " << r.residual;
    if (!r.error.empty()) out << "  error: " << r.error;
    out << "\n";
  }
  return rep.all_pass() ? kExitPass : kExitCheckFailed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Braided multiplicative unitaries: certificates, search and leg notation", "bmu"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  GenerateOptions gen;
  auto* g = app.add_subcommand("generate", "Write an example bundle");
  g->add_option("kind", gen.kind, "kac-takesaki | super | phase | identity | yd-z2")->required();
  g->add_option("--group", gen.group, "Zn, S3 or Sn (kac-takesaki)");
  g->add_option("--n", gen.n, "Group parameter");
  g->add_option("--dim", gen.dim, "Space dimension");
  g->add_option("--modulus", gen.modulus, "Phase modulus");
  g->add_option("-o,--out", gen.out, "Output bundle")->required();

  AnalyzeOptions an;
  auto* a = app.add_subcommand("analyze", "Certify an operator of a bundle");
  a->add_option("file", an.file, "Bundle")->required();
  a->add_option("--object", an.object, "Operator name")->required();
  a->add_option("--tol", an.tol, "Tolerance");
  a->add_option("--report", an.report, "JSON report path");

  SearchOptions se;
  auto* s = app.add_subcommand("search", "Search for braided multiplicative unitaries");
  s->add_option("--category", se.category, "flip | super | phase");
  s->add_option("--dim", se.dim, "Dimension of L");
  s->add_option("--modulus", se.modulus, "Phase modulus (phase category)");
  s->add_option("--seed", se.seed, "Random seed");
  s->add_option("--restarts", se.restarts, "Number of restarts");
  s->add_option("--max-iter", se.max_iter, "Iterations per restart");
  s->add_option("--target-residual", se.target, "Acceptance threshold");
  s->add_option("-o,--out", se.out, "Result file");

  EvalOptions ev;
  auto* e = app.add_subcommand("eval", "Check leg-notation statements");
  e->add_option("statements", ev.statements, "Statement file")->required();
  e->add_option("data", ev.data, "Bundle")->required();
  e->add_option("--tol", ev.tol, "Tolerance");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << "\n";
    return kExitPass;
  } catch (const CLI::ParseError& pe) {
    err << "error: " << pe.what() << "\n" << app.help();
    return kExitUsage;
  }

  try {
    if (g->parsed()) return cmd_generate(gen, out);
    if (a->parsed()) return cmd_analyze(an, out);
    if (s->parsed()) return cmd_search(se, out);
    if (e->parsed()) return cmd_eval(ev, out, err);
  } catch (const UsageError& ue) {
    err << "error: " << ue.what() << "\n";
    return kExitUsage;
  } catch (const SchemaError& se2) {
    err << "error: invalid bundle at " << se2.what() << "\n";
    return kExitUsage;
  } catch (const Error& other) {
    err << "error: " << other.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace bmu
