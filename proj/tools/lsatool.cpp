// lsatool: exact structure checks for left-symmetric algebroids and their
// doubles. Exit codes: 0 all checks pass, 1 a check failed, 2 usage or
// input error.

#include <CLI11.hpp>
#include <chrono>
#include <iostream>

#include "lsa/search.hpp"

namespace {

using namespace lsa;

constexpr const char* kToolVersion = "0.1.0";

struct RunCheck {
  std::string name;
  bool pass = true;
  std::vector<Witness> witnesses;
  std::vector<std::string> notes;
  double ms = 0.0;
};

struct RunContext {
  std::string command;
  std::vector<std::pair<std::string, std::string>> inputs;  // path, digest
  uint64_t seed = 0;
  int trials = 25;
  bool json = false;
  std::vector<RunCheck> checks;

  void add_input(const std::string& path) { inputs.emplace_back(path, file_digest(path)); }

  void run(const std::string& name, const std::function<Report()>& fn) {
    auto start = std::chrono::steady_clock::now();
    Report rep = fn();
    auto stop = std::chrono::steady_clock::now();
    RunCheck rc;
    rc.name = name.empty() ? rep.check : name;
    rc.pass = rep.pass;
    rc.witnesses = rep.witnesses;
    rc.notes = rep.notes;
    rc.ms = std::chrono::duration<double, std::milli>(stop - start).count();
    checks.push_back(std::move(rc));
  }

  bool overall() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }

  // timing is text-only: --json output must be byte-identical across reruns
  Json to_json() const {
    Json j;
    j["$schema_version"] = kSchemaVersion;
    j["tool_version"] = kToolVersion;
    j["command"] = command;
    Json ins = Json::array();
    for (const auto& [p, d] : inputs) ins.push_back(Json{{"path", p}, {"digest", d}});
    j["inputs"] = ins;
    j["seed"] = seed;
    j["trials"] = trials;
    Json cs = Json::array();
    for (const auto& c : checks) {
      Json cj;
      cj["name"] = c.name;
      cj["pass"] = c.pass;
      if (!c.witnesses.empty())
        cj["witness"] = Json{{"at", c.witnesses[0].at}, {"residual", c.witnesses[0].residual}};
      else
        cj["witness"] = nullptr;
      if (!c.notes.empty()) cj["notes"] = c.notes;
      cs.push_back(cj);
    }
    j["checks"] = cs;
    j["overall"] = overall() ? "pass" : "fail";
    return j;
  }

  int finish() const {
    if (json) {
      std::cout << to_json().dump(2) << "\n";
    } else {
      std::cout << "lsatool " << kToolVersion << " :: " << command << "\n";
      for (const auto& [p, d] : inputs) std::cout << "  input " << p << " (fnv1a " << d << ")\n";
      for (const auto& c : checks) {
        std::cout << "  " << (c.pass ? "[pass] " : "[FAIL] ") << c.name;
        char buf[32];
        snprintf(buf, sizeof(buf), " (%.1f ms)", c.ms);
        std::cout << buf << "\n";
        if (!c.pass && !c.witnesses.empty())
          std::cout << "         witness " << c.witnesses[0].at << " -> "
                    << c.witnesses[0].residual << "\n";
        for (const auto& n : c.notes) std::cout << "         note: " << n << "\n";
      }
      std::cout << (overall() ? "overall: pass" : "overall: FAIL") << "\n";
    }
    return overall() ? 0 : 1;
  }
};

std::string dirname_of(const std::string& path) {
  auto pos = path.find_last_of('/');
  return pos == std::string::npos ? std::string(".") : path.substr(0, pos);
}

AlgebroidStructure load_structure(const std::string& path) {
  return structure_from_json(load_json_file(path));
}

BialgebroidCandidate load_candidate(const std::string& fileA, const std::string& fileAstar) {
  AlgebroidStructure A = load_structure(fileA);
  AlgebroidStructure As = load_structure(fileAstar);
  if (A.rank != As.rank) throw InputError(fileAstar + ": rank differs from " + fileA);
  if (A.vars->base != As.vars->base || A.vars->param != As.vars->param)
    throw InputError(fileAstar + ": variable declarations differ from " + fileA);
  As.vars = A.vars;
  return {std::move(A), std::move(As)};
}

int cmd_check_lsa(RunContext& ctx, const std::string& file) {
  AlgebroidStructure alg = load_structure(file);
  if (alg.kind == Kind::LeftSymmetric) {
    ctx.run("check_left_symmetric", [&] { return check_left_symmetric(alg); });
    if (ctx.checks.back().pass)
      ctx.run("identity_suite", [&] { return identity_suite(alg, ctx.trials, ctx.seed); });
  } else {
    ctx.run("check_lie_algebroid", [&] { return check_lie_algebroid(alg); });
  }
  return ctx.finish();
}

int cmd_identities(RunContext& ctx, const std::string& file) {
  AlgebroidStructure alg = load_structure(file);
  ctx.run("identity_suite", [&] { return identity_suite(alg, ctx.trials, ctx.seed); });
  return ctx.finish();
}

int cmd_check_bialgebroid(RunContext& ctx, const std::string& fileA,
                          const std::string& fileAstar) {
  BialgebroidCandidate cand = load_candidate(fileA, fileAstar);
  ctx.run("check_bialgebroid", [&] { return check_bialgebroid(cand); });
  ctx.run("check_anchor_compat", [&] { return check_anchor_compat(cand); });
  return ctx.finish();
}

int cmd_double(RunContext& ctx, const std::string& fileA, const std::string& fileAstar,
               const std::string& out) {
  BialgebroidCandidate cand = load_candidate(fileA, fileAstar);
  Report bi = check_bialgebroid(cand);
  ctx.run("check_bialgebroid", [&] { return bi; });
  if (!bi.pass) return ctx.finish();
  PreSymplecticStructure dbl = double_of(cand, false);
  ctx.run("check_presymplectic",
          [&] { return check_presymplectic(dbl, ctx.trials, ctx.seed); });
  save_json_file(out, presymplectic_to_json(dbl));
  if (!ctx.json) std::cout << "wrote " << out << "\n";
  return ctx.finish();
}

int cmd_dirac(RunContext& ctx, const std::string& fileE, const std::string& fileSub) {
  PreSymplecticStructure E =
      presymplectic_from_json(load_json_file(fileE), dirname_of(fileE));
  Subbundle F = subbundle_from_json(load_json_file(fileSub), E.dim(), E.vars_ptr());
  ctx.run("check_dirac", [&] { return check_dirac(E, F); });
  return ctx.finish();
}

int cmd_manin(RunContext& ctx, const std::string& fileE, const std::string& fileSub1,
              const std::string& fileSub2) {
  PreSymplecticStructure E =
      presymplectic_from_json(load_json_file(fileE), dirname_of(fileE));
  Subbundle L1 = subbundle_from_json(load_json_file(fileSub1), E.dim(), E.vars_ptr());
  Subbundle L2 = subbundle_from_json(load_json_file(fileSub2), E.dim(), E.vars_ptr());
  ctx.run("check_manin", [&] { return check_manin(E, L1, L2); });
  return ctx.finish();
}

int cmd_mc(RunContext& ctx, const std::string& fileA, const std::string& fileAstar,
           const std::string& fileH) {
  BialgebroidCandidate cand = load_candidate(fileA, fileAstar);
  SymTensor H = symtensor_from_json(load_json_file(fileH), cand.A.vars);
  if (H.rank() != cand.rank()) throw InputError(fileH + ": rank differs from structures");
  Report bi = check_bialgebroid(cand);
  ctx.run("check_bialgebroid", [&] { return bi; });
  if (!bi.pass) return ctx.finish();
  ctx.run("mc_check", [&] { return mc_check(cand, H, false); });
  return ctx.finish();
}

int cmd_hessian(RunContext& ctx, const std::string& potential,
                const std::string& vars_csv, const std::string& christoffel_file) {
  std::vector<std::string> names;
  size_t pos = 0;
  while (pos <= vars_csv.size()) {
    auto comma = vars_csv.find(',', pos);
    std::string piece =
        comma == std::string::npos ? vars_csv.substr(pos) : vars_csv.substr(pos, comma - pos);
    if (!piece.empty()) names.push_back(piece);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (names.empty()) throw InputError("--vars: no variables given");
  VarSetPtr vars = make_varset(names);
  FlatConnection conn = FlatConnection::coordinate(vars);
  if (!christoffel_file.empty()) {
    Json j = load_json_file(christoffel_file);
    const int n = vars->nbase();
    if (!j.is_object()) throw InputError(christoffel_file + ": expected an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
      const std::string& key = it.key();
      if (key == "$schema_version" || key == "type") continue;
      auto comma = key.find(',');
      if (comma == std::string::npos)
        throw InputError("/" + key + ": expected \"i,j\" key");
      int i = std::stoi(key.substr(0, comma)) - 1;
      int jj = std::stoi(key.substr(comma + 1)) - 1;
      if (i < 0 || i >= n || jj < 0 || jj >= n)
        throw InputError("/" + key + ": index out of range");
      for (auto kt = it.value().begin(); kt != it.value().end(); ++kt) {
        int k = std::stoi(kt.key()) - 1;
        if (k < 0 || k >= n) throw InputError("/" + key + "/" + kt.key() + ": out of range");
        conn.christoffel[i][jj].c[k] = parse_scalar(kt.value().get<std::string>(), *vars);
      }
    }
  }
  Scalar phi = parse_scalar(potential, *vars);
  Metric g = hessian_metric(Potential{phi}, conn);
  ctx.run("check_pseudo_hessian", [&] { return check_pseudo_hessian(conn, g); });
  if (!ctx.checks.back().pass) return ctx.finish();
  BialgebroidCandidate cand = hessian_bialgebroid(conn, g);
  ctx.run("check_bialgebroid (T_nabla M, T*_H M)", [&] { return check_bialgebroid(cand); });
  PreSymplecticStructure dbl = double_of(cand, false);
  ctx.run("check_presymplectic (double)",
          [&] { return check_presymplectic(dbl, ctx.trials, ctx.seed); });
  return ctx.finish();
}

int cmd_search(RunContext& ctx, int dim, double density, int count, bool mc,
               const std::string& out) {
  SearchOptions opts;
  opts.dim = dim;
  opts.density = density;
  opts.count = count;
  opts.seed = ctx.seed;
  opts.mc_filter = mc;
  std::vector<SearchHit> hits = search_instances(opts);
  Report rep("search");
  rep.note("emitted " + std::to_string(hits.size()) + " verified instances");
  for (size_t i = 0; i < hits.size(); ++i) {
    if (!check_left_symmetric(hits[i].alg).pass)
      rep.fail("instance " + std::to_string(i), "re-verification failed");
    if (hits[i].H && !s_bracket(hits[i].alg, *hits[i].H).is_zero())
      rep.fail("instance " + std::to_string(i), "S-equation re-verification failed");
  }
  ctx.run("search", [&] { return rep; });
  save_json_file(out, catalog_to_json(hits));
  if (!ctx.json) std::cout << "wrote " << out << "\n";
  return ctx.finish();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact checks for left-symmetric algebroids, bialgebroids and their doubles"};
  app.require_subcommand(1);

  RunContext ctx;
  int max_degree = 64;
  app.add_flag("--json", ctx.json, "machine-readable report on stdout");
  app.add_option("--trials", ctx.trials, "random trials for sampled checks")->capture_default_str();
  app.add_option("--seed", ctx.seed, "seed for sampled checks")->capture_default_str();
  app.add_option("--max-degree", max_degree, "intermediate polynomial degree guard")
      ->capture_default_str();

  std::string file1, file2, file3, out = "out.json";
  std::string potential, vars_csv, christoffel;
  int dim = 2, count = 5;
  double density = 0.5;
  bool mc_filter = false;

  CLI::App* c_lsa = app.add_subcommand("check-lsa", "left-symmetric axioms + identity suite");
  c_lsa->add_option("file", file1, "structure JSON")->required();

  CLI::App* c_ids = app.add_subcommand("identities", "differential-calculus identity suite");
  c_ids->add_option("file", file1, "structure JSON")->required();

  CLI::App* c_bi = app.add_subcommand("check-bialgebroid", "bialgebroid compatibility");
  c_bi->add_option("fileA", file1, "structure JSON for A")->required();
  c_bi->add_option("fileAstar", file2, "structure JSON for A*")->required();

  CLI::App* c_double = app.add_subcommand("double", "build and check the double");
  c_double->add_option("fileA", file1, "structure JSON for A")->required();
  c_double->add_option("fileAstar", file2, "structure JSON for A*")->required();
  c_double->add_option("-o,--out", out, "output pre-symplectic JSON")->required();

  CLI::App* c_dirac = app.add_subcommand("dirac", "Dirac-structure check");
  c_dirac->add_option("fileE", file1, "pre-symplectic JSON")->required();
  c_dirac->add_option("fileSub", file2, "subbundle JSON")->required();

  CLI::App* c_manin = app.add_subcommand("manin", "Manin-triple check");
  c_manin->add_option("fileE", file1, "pre-symplectic JSON")->required();
  c_manin->add_option("sub1", file2, "subbundle JSON")->required();
  c_manin->add_option("sub2", file3, "subbundle JSON")->required();

  CLI::App* c_mc = app.add_subcommand("mc", "Maurer-Cartan / Dirac graph check");
  c_mc->add_option("fileA", file1, "structure JSON for A")->required();
  c_mc->add_option("fileAstar", file2, "structure JSON for A*")->required();
  c_mc->add_option("fileH", file3, "symmetric tensor JSON")->required();

  CLI::App* c_hess = app.add_subcommand("hessian", "potential -> metric -> bialgebroid -> double");
  c_hess->add_option("--potential", potential, "polynomial potential")->required();
  c_hess->add_option("--vars", vars_csv, "comma-separated base variables")->required();
  c_hess->add_option("--christoffel", christoffel, "optional Christoffel JSON");

  CLI::App* c_search = app.add_subcommand("search", "randomized instance search");
  c_search->add_option("--dim", dim, "rank (<= 4)")->capture_default_str();
  c_search->add_option("--density", density, "fill density of the tables")->capture_default_str();
  c_search->add_option("--count", count, "instances to emit")->capture_default_str();
  c_search->add_flag("--mc", mc_filter, "also search H with [[H,H]] == 0");
  c_search->add_option("-o,--out", out, "output catalog JSON")->required();

  CLI11_PARSE(app, argc, argv);
  set_degree_limit(max_degree);

  try {
    if (app.got_subcommand(c_lsa)) {
      ctx.command = "check-lsa";
      ctx.add_input(file1);
      return cmd_check_lsa(ctx, file1);
    }
    if (app.got_subcommand(c_ids)) {
      ctx.command = "identities";
      ctx.add_input(file1);
      return cmd_identities(ctx, file1);
    }
    if (app.got_subcommand(c_bi)) {
      ctx.command = "check-bialgebroid";
      ctx.add_input(file1);
      ctx.add_input(file2);
      return cmd_check_bialgebroid(ctx, file1, file2);
    }
    if (app.got_subcommand(c_double)) {
      ctx.command = "double";
      ctx.add_input(file1);
      ctx.add_input(file2);
      return cmd_double(ctx, file1, file2, out);
    }
    if (app.got_subcommand(c_dirac)) {
      ctx.command = "dirac";
      ctx.add_input(file1);
      ctx.add_input(file2);
      return cmd_dirac(ctx, file1, file2);
    }
    if (app.got_subcommand(c_manin)) {
      ctx.command = "manin";
      ctx.add_input(file1);
      ctx.add_input(file2);
      ctx.add_input(file3);
      return cmd_manin(ctx, file1, file2, file3);
    }
    if (app.got_subcommand(c_mc)) {
      ctx.command = "mc";
      ctx.add_input(file1);
      ctx.add_input(file2);
      ctx.add_input(file3);
      return cmd_mc(ctx, file1, file2, file3);
    }
    if (app.got_subcommand(c_hess)) {
      ctx.command = "hessian";
      return cmd_hessian(ctx, potential, vars_csv, christoffel);
    }
    if (app.got_subcommand(c_search)) {
      ctx.command = "search";
      return cmd_search(ctx, dim, density, count, mc_filter, out);
    }
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const UnknownVariable& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "check error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
