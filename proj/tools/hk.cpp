#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "hk/gamma.hpp"
#include "hk/kclass.hpp"
#include "hk/random.hpp"
#include "hk/serialize.hpp"

using namespace hk;

namespace {

constexpr int kOk = 0, kReject = 1, kMalformed = 2;

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

int fail(const std::string& kind, const std::string& message) {
  std::cerr << Json{{"error", message}, {"kind", kind}}.dump() << "\n";
  return kMalformed;
}

Json load(const std::string& path) {
  std::stringstream buf;
  if (path == "-") {
    buf << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read '" + path + "'");
    buf << in.rdbuf();
  }
  return parse_document(buf.str());
}

std::string kind_of(const Json& doc) {
  if (!doc.is_object()) throw ParseError("document must be a JSON object");
  if (doc.contains("type") && doc["type"].is_string()) return doc["type"].get<std::string>();
  if (doc.contains("certificates")) return "certificate_set";
  if (doc.contains("steps")) return "certificate";
  if (doc.contains("ops")) return "structure";
  if (doc.contains("ranks")) return "complex";
  throw ParseError("cannot tell what kind of document this is");
}

HomotopyStructure load_structure(const std::string& path) {
  Json doc = load(path);
  if (kind_of(doc) != "structure") throw ParseError("expected a structure document");
  return structure_from_json(doc);
}

std::vector<Scalar> parse_scalars(const std::vector<std::string>& items, const Ring& ring) {
  std::vector<Scalar> out;
  for (const auto& s : items) {
    try {
      out.push_back(ring.parse(s));
    } catch (const Error& e) {
      throw ParseError(e.what());
    }
  }
  if (out.empty()) throw ParseError("at least one generator is required");
  return out;
}

int default_top(const HomotopyStructure& m) {
  auto t = m.base().top();
  return t ? *t : m.base().hi();
}

Json tagged(const char* type, Json body) {
  body["type"] = type;
  return body;
}

Json ses_json(const ModuleSes& q) {
  return {{"a", to_json(q.a)}, {"b", to_json(q.b)}, {"c", to_json(q.c)}, {"f", to_json(q.f)}, {"g", to_json(q.g)}};
}

Json check_all(const std::vector<Certificate>& certs, bool& all) {
  Json results = Json::array();
  all = true;
  for (const auto& c : certs) {
    auto r = check_certificate(c);
    all = all && r.accepted;
    results.push_back(to_json(r));
  }
  return results;
}

std::vector<Certificate> load_certificates(const Json& doc) {
  std::vector<Certificate> out;
  std::string kind = kind_of(doc);
  if (kind == "certificate") {
    out.push_back(certificate_from_json(doc));
  } else if (kind == "certificate_set") {
    const Json& list = doc.at("certificates");
    if (!list.is_array()) throw ParseError("'certificates' must be an array");
    for (const auto& c : list) out.push_back(certificate_from_json(c));
  } else {
    throw ParseError("expected a certificate document");
  }
  return out;
}

// ---------------------------------------------------------------------------

int cmd_validate(const std::string& path) {
  Json doc = load(path);
  std::string kind = kind_of(doc);
  if (kind == "certificate" || kind == "certificate_set") {
    bool all = false;
    Json results = check_all(load_certificates(doc), all);
    emit({{"kind", kind}, {"valid", all}, {"results", results}});
    return all ? kOk : kReject;
  }
  std::vector<std::string> problems;
  std::optional<ChainComplex> base;
  if (kind == "structure") {
    auto m = structure_from_json(doc);
    problems = check_structure(m);
    base = m.base();
  } else if (kind == "complex") {
    base = complex_from_json(doc);
    problems = validate(*base);
  } else {
    throw ParseError("validate does not understand documents of type '" + kind + "'");
  }
  Json out = {{"kind", kind}, {"valid", problems.empty()}, {"problems", problems}};
  if (validate(*base, true).empty()) {
    try {
      out["homology"] = to_json(homology_invariants(*base));
    } catch (const Error&) {
      out["homology"] = nullptr;
    }
  }
  emit(out);
  return problems.empty() ? kOk : kReject;
}

int cmd_find(const std::string& path, const std::vector<std::string>& gens, unsigned kmax,
             std::optional<std::uint64_t> seed) {
  Json doc = load(path);
  std::string kind = kind_of(doc);
  ChainComplex x = kind == "structure" ? structure_from_json(doc).base() : complex_from_json(doc);
  auto sys = MultiplicativeSystem{parse_scalars(gens, x.ring())};
  auto found = find_structure(x, sys, kmax, seed);
  if (!found) {
    emit({{"found", false}, {"k_max", kmax}, {"reason", "inconclusive: no power up to k_max is null-homotopic"}});
    return kReject;
  }
  emit({{"found", true},
        {"exponents", found->exponents},
        {"scalars", to_json(found->structure)["scalars"]},
        {"structure", tagged("structure", to_json(found->structure))}});
  return kOk;
}

int cmd_gamma(const std::string& path, std::optional<int> n_opt, bool general) {
  auto m = load_structure(path);
  if (auto problems = check_structure(m); !problems.empty()) {
    emit({{"valid", false}, {"problems", problems}});
    return kReject;
  }
  int n = n_opt ? *n_opt : default_top(m);
  Json out = {{"n", n}};
  std::optional<GammaResult> r;
  if (n >= static_cast<int>(m.arity()) + 1) r = gamma_general(m, n);
  if (general) {
    if (!r) throw Error("gamma --general needs n >= d+1");
    out["gamma"] = tagged("structure", to_json(r->gamma));
  } else {
    out["gamma"] = tagged("structure", to_json(gamma1(m, n)));
    if (r) out["comparison"] = to_json(gamma_comparison(m, n));
  }
  if (r) {
    out["koszul_term"] = tagged("structure", to_json(r->koszul));
    out["sequences"] = {ses_json(r->counit_sequence), ses_json(r->disk_sequence)};
  }
  emit(out);
  return kOk;
}

int cmd_cone(const std::string& path, bool same) {
  Json doc = load(path);
  auto x = structure_from_json(doc.at("source"));
  auto y = structure_from_json(doc.at("target"));
  auto f = map_from_json(doc.at("map"), x.base(), y.base());
  auto cr = same ? cone_same(f, x, y) : cone_mixed(f, x, y);
  emit({{"cone", tagged("structure", to_json(cr.cone))},
        {"inclusion", to_json(cr.inclusion)},
        {"projection", to_json(cr.projection)},
        {"left", tagged("structure", to_json(cr.left))},
        {"right", tagged("structure", to_json(cr.right))}});
  return kOk;
}

int cmd_glue(const std::string& path) {
  Json doc = load(path);
  auto a = structure_from_json(doc.at("a"));
  auto c = structure_from_json(doc.at("c"));
  auto b = complex_from_json(doc.at("b"));
  auto f = map_from_json(doc.at("f"), a.base(), b);
  auto g = map_from_json(doc.at("g"), b, c.base());
  auto ses = check_ses(f, g);
  if (!ses.ok) {
    emit({{"valid", false}, {"problems", ses.problems}});
    return kReject;
  }
  auto glued = glue_extension(f, g, a, c);
  auto ra = restrict(a, c.scalars()), rc = restrict(c, a.scalars());
  bool ok = check_structure(glued, true).empty() && is_equivariant(f, ra, glued) && is_equivariant(g, glued, rc);
  emit({{"structure", tagged("structure", to_json(glued))},
        {"a", tagged("structure", to_json(ra))},
        {"c", tagged("structure", to_json(rc))},
        {"valid", ok}});
  return ok ? kOk : kReject;
}

int cmd_peel(const std::string& path, std::optional<int> n_opt) {
  auto m = load_structure(path);
  int n = n_opt ? *n_opt : default_top(m);
  if (!find_contraction(m.base())) {
    emit({{"contractible", false}});
    return kReject;
  }
  auto steps = peel_all(m, n);
  Json list = Json::array();
  for (std::size_t i = 0; i < steps.size(); ++i)
    list.push_back({{"degree", n - static_cast<int>(i)},
                    {"disk", tagged("structure", to_json(steps[i].disk))},
                    {"quotient", tagged("structure", to_json(steps[i].quotient))}});
  auto cert = peel_certificate(m, n);
  auto r = check_certificate(cert);
  emit({{"contractible", true}, {"steps", list}, {"certificate", to_json(cert)}, {"check", to_json(r)}});
  return r.accepted ? kOk : kReject;
}

int cmd_dual(const std::string& path, int n) {
  emit(tagged("structure", to_json(dual(load_structure(path), n))));
  return kOk;
}

int cmd_suspend(const std::string& path, int k) {
  emit(tagged("structure", to_json(suspend(load_structure(path), k))));
  return kOk;
}

int cmd_certify(const std::string& path) {
  bool all = false;
  Json results = check_all(load_certificates(load(path)), all);
  emit({{"accepted", all}, {"results", results}});
  return all ? kOk : kReject;
}

int cmd_demo(const std::string& which, std::uint64_t seed, const std::vector<std::string>& gens,
             std::optional<int> n_opt, const std::string& out_path) {
  std::mt19937_64 gen(seed);
  Ring ring = Ring::integers();
  auto s = parse_scalars(gens, ring);
  int d = static_cast<int>(s.size());
  std::vector<Certificate> certs;
  int n = 0;
  if (which == "wij") {
    n = n_opt ? *n_opt : d + 2;
    RandomOptions opt;
    opt.hi = n;
    auto m = random_structure(gen, ring, s, opt);
    auto [wi, iw] = wij_certificates(m, n);
    certs = {wi, iw};
  } else if (which == "colim1") {
    n = n_opt ? *n_opt : d + 1;
    RandomOptions opt;
    opt.hi = n;
    auto x = random_structure(gen, ring, s, opt).base();
    auto a = find_structure(x, {s}, 16, seed * 2 + 1), b = find_structure(x, {s}, 16, seed * 2 + 2);
    if (!a || !b) throw Error("demo colim1: no structure found on the random complex");
    certs = {colim1_certificate(a->structure, b->structure, n)};
  } else if (which == "ex3") {
    if (d != 1) throw ParseError("demo ex3 needs exactly one generator");
    n = n_opt ? *n_opt : 3;
    RandomOptions opt;
    opt.hi = n;
    certs = {fold_identity_certificate(random_structure(gen, ring, s, opt), n)};
  } else {
    throw ParseError("unknown demo '" + which + "' (expected wij, colim1 or ex3)");
  }
  bool all = false;
  Json results = check_all(certs, all);
  Json doc;
  if (certs.size() == 1) {
    doc = to_json(certs[0]);
  } else {
    doc = {{"type", "certificate_set"}, {"certificates", Json::array()}};
    for (const auto& c : certs) doc["certificates"].push_back(to_json(c));
  }
  Json report = {{"demo", which}, {"seed", seed}, {"n", n}, {"accepted", all}, {"results", results}};
  if (out_path.empty()) {
    report["certificate"] = doc;
  } else {
    std::ofstream out(out_path);
    if (!out) throw ParseError("cannot write '" + out_path + "'");
    out << doc.dump(2) << "\n";
    report["certificate_file"] = out_path;
  }
  emit(report);
  return all ? kOk : kReject;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Chain complexes with null-homotopy structures: constructions and certificates"};
  app.require_subcommand(1);
  std::function<int()> action;

  std::string file;
  std::optional<int> n_opt;
  int n_required = 0, k = 1;
  bool flag = false;

  auto* validate_cmd = app.add_subcommand("validate", "Diagnose a complex, structure or certificate");
  validate_cmd->add_option("file", file, "JSON document ('-' for stdin)")->required();
  validate_cmd->callback([&] { action = [&] { return cmd_validate(file); }; });

  std::vector<std::string> gens;
  unsigned kmax = 16;
  std::optional<std::uint64_t> seed_opt;
  auto* homotopy = app.add_subcommand("homotopy", "Null-homotopy searches");
  homotopy->require_subcommand(1);
  auto* find = homotopy->add_subcommand("find", "Least powers t_i^k with t_i^k·id null-homotopic");
  find->add_option("file", file, "complex or structure")->required();
  find->add_option("--gens", gens, "generators t_1,t_2,...")->delimiter(',')->required();
  find->add_option("--kmax", kmax, "largest exponent tried");
  find->add_option("--seed", seed_opt, "choose a pseudo-random lift");
  find->callback([&] { action = [&] { return cmd_find(file, gens, kmax, seed_opt); }; });

  auto* gamma = app.add_subcommand("gamma", "The fold functor Γ with its witnessing sequences");
  gamma->add_option("file", file, "structure")->required();
  gamma->add_option("--n", n_opt, "window top (default: top nonzero degree)");
  gamma->add_flag("--general", flag, "use the cone construction for any number of generators");
  gamma->callback([&] { action = [&] { return cmd_gamma(file, n_opt, flag); }; });

  auto* cone = app.add_subcommand("cone", "Mapping cone of {source, target, map}");
  cone->add_option("file", file)->required();
  cone->add_flag("--same", flag, "equivariant map, same scalars");
  cone->callback([&] { action = [&] { return cmd_cone(file, flag); }; });

  auto* glue = app.add_subcommand("glue", "Structure on the middle of {a, b, c, f, g}");
  glue->add_option("file", file)->required();
  glue->callback([&] { action = [&] { return cmd_glue(file); }; });

  auto* peel = app.add_subcommand("peel", "Split a contractible structure into disks");
  peel->add_option("file", file)->required();
  peel->add_option("--n", n_opt, "window top (default: top nonzero degree)");
  peel->callback([&] { action = [&] { return cmd_peel(file, n_opt); }; });

  auto* dual_cmd = app.add_subcommand("dual", "Dual structure in the window [0, n]");
  dual_cmd->add_option("file", file)->required();
  dual_cmd->add_option("--n", n_required, "window top")->required();
  dual_cmd->callback([&] { action = [&] { return cmd_dual(file, n_required); }; });

  auto* suspend_cmd = app.add_subcommand("suspend", "Suspension Σ^k");
  suspend_cmd->add_option("file", file)->required();
  suspend_cmd->add_option("--k", k, "power (default 1)");
  suspend_cmd->callback([&] { action = [&] { return cmd_suspend(file, k); }; });

  auto* certify = app.add_subcommand("certify", "Check a certificate or a certificate set");
  certify->add_option("file", file)->required();
  certify->callback([&] { action = [&] { return cmd_certify(file); }; });

  std::string which, out_path;
  std::uint64_t seed = 0;
  std::vector<std::string> demo_gens{"2"};
  auto* demo = app.add_subcommand("demo", "Generate and check a certificate on a random instance");
  demo->add_option("which", which, "wij | colim1 | ex3")->required();
  demo->add_option("--seed", seed, "random seed")->required();
  demo->add_option("--gens", demo_gens, "scalars s_1,s_2,... (default 2)")->delimiter(',');
  demo->add_option("--n", n_opt, "window top");
  demo->add_option("--out", out_path, "write the certificate document here");
  demo->callback([&] { action = [&] { return cmd_demo(which, seed, demo_gens, n_opt, out_path); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail("usage", e.what());
  }

  try {
    return action();
  } catch (const ParseError& e) {
    return fail("malformed", e.what());
  } catch (const Json::exception& e) {
    return fail("malformed", e.what());
  } catch (const Error& e) {
    return fail("precondition", e.what());
  } catch (const std::exception& e) {
    return fail("internal", e.what());
  }
}
