#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "acceptance.hpp"
#include "dquant/serialize.hpp"

using namespace dquant;

namespace {

struct RunConfig {
  std::string type = "A";
  int rank = 2;
  std::string gamma;  // Bourbaki labels "1,3"; empty for the full torus; "all" for classify
  std::string K;
  std::string f = "lambda";
  std::uint64_t seed = 1;
  int n = 3;
  int degree = 3;
  int q_samples = 3;
  std::string out;
  double tolerance = 1e-12;
  std::string only = "primary";
};

// Relative --out paths are placed under DQUANT_OUT_DIR when it is set.
std::filesystem::path output_path(const std::string& out) {
  std::filesystem::path p(out);
  if (p.is_relative())
    if (const char* dir = std::getenv("DQUANT_OUT_DIR")) p = std::filesystem::path(dir) / p;
  return p;
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::filesystem::path p = output_path(out);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream f(p, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + p.string());
  f << text;
}

void emit_json(const Json& j, const std::string& out) { emit(j.dump(2) + "\n", out); }

RootSystemPtr root_system(const RunConfig& c) {
  if (c.type.size() != 1) throw std::invalid_argument("--type must be a single letter A-G");
  char t = static_cast<char>(std::toupper(static_cast<unsigned char>(c.type[0])));
  std::string why;
  if (!is_valid_type(t, c.rank, &why)) throw std::invalid_argument(why);
  return build_root_system(t, c.rank);
}

// "2,4" (Bourbaki labels) -> {1, 3}.
std::vector<int> parse_gamma(const std::string& text, int rank) {
  std::vector<int> g;
  std::stringstream ss(text);
  for (std::string tok; std::getline(ss, tok, ',');) {
    if (tok.empty()) continue;
    int label = std::stoi(tok);
    if (label < 1 || label > rank)
      throw std::invalid_argument("--gamma label " + tok + " outside 1.." + std::to_string(rank));
    g.push_back(label - 1);
  }
  std::sort(g.begin(), g.end());
  if (std::adjacent_find(g.begin(), g.end()) != g.end()) throw std::invalid_argument("--gamma repeats a label");
  return g;
}

// Positive lambda is nonzero on every positive quasiroot, hence regular.
OrbitPoint positive_point(const LeviPtr& lv, Rng& rng) {
  std::vector<Rational> lam;
  for (std::size_t i = 0; i < lv->complement.size(); ++i)
    lam.push_back(make_rational(rng.uniform(1, 9), rng.uniform(1, 5)));
  return make_orbit_point(lv, lam);
}

// Multiplicative simple values above 1: products stay above 1, so no pole and
// no degenerate pair can occur.
std::vector<Rational> multiplicative_simple_values(const LeviPtr& lv, Rng& rng) {
  std::vector<Rational> v;
  for (std::size_t i = 0; i < lv->complement.size(); ++i)
    v.push_back(1 + make_rational(rng.uniform(1, 20), rng.uniform(1, 7)));
  return v;
}

Rational parse_K(const RunConfig& c, const Rational& fallback) { return c.K.empty() ? fallback : parse_rational(c.K); }

std::string gamma_csv(const std::vector<int>& g) {
  std::string s;
  for (std::size_t i = 0; i < g.size(); ++i) s += (i ? ";" : "") + std::to_string(g[i]);
  return s;
}

int cmd_classify(const RunConfig& c) {
  auto rs = root_system(c);
  std::vector<std::vector<int>> subsets;
  if (c.gamma == "all" || c.gamma == "all-proper-subsets") {
    for (int mask = 0; mask < (1 << rs->rank) - 1; ++mask) {
      std::vector<int> g;
      for (int i = 0; i < rs->rank; ++i)
        if (mask & (1 << i)) g.push_back(i);
      subsets.push_back(g);
    }
  } else {
    subsets.push_back(parse_gamma(c.gamma, rs->rank));
  }
  SolverOptions opt;
  opt.seed = c.seed;
  opt.tolerance = c.tolerance;
  Rng rng(c.seed);
  Json rows = Json::array(), bad = Json::array();
  std::string csv = "type,rank,gamma,rule_verdict,solver_verdict,is_good,discrepancy,evidence,numeric_residual,family_param\n";
  for (const auto& g : subsets) {
    auto lv = levi_datum(rs, g);
    OrbitPoint p = positive_point(lv, rng);
    GoodOrbitReport r = classify_good_orbit(p, opt);
    Json row = classification_row_json(r);
    row["lambda"] = rationals_json(p.lambda);
    rows.push_back(row);
    if (r.discrepancy) bad.push_back(lv->gamma_bourbaki());
    char res[32];
    std::snprintf(res, sizeof res, "%.3e", r.residual);
    csv += std::string(1, rs->type) + "," + std::to_string(rs->rank) + ",\"" + gamma_csv(lv->gamma_bourbaki()) +
           "\"," + (r.rule ? "good" : "not_good") + "," + (r.solver ? "good" : "not_good") + "," +
           (r.is_good ? "true" : "false") + "," + (r.discrepancy ? "true" : "false") + "," + r.evidence + "," +
           res + ",\"" + r.family_param + "\"\n";
  }
  Json report{{"type", std::string(1, rs->type)},
              {"rank", rs->rank},
              {"seed", c.seed},
              {"tolerance", c.tolerance},
              {"rows", rows},
              {"discrepancies", bad}};
  if (c.out.size() >= 4 && c.out.substr(c.out.size() - 4) == ".csv")
    emit(csv, c.out);
  else
    emit_json(report, c.out);
  if (!bad.empty()) {
    std::cerr << "classify: rule and solver disagree on Gamma = " << bad.dump() << "\n";
    return 1;
  }
  return 0;
}

int cmd_bracket_solve(const RunConfig& c) {
  auto lv = levi_datum(root_system(c), parse_gamma(c.gamma, c.rank));
  Rng rng(c.seed);
  if (c.f == "lambda") {
    OrbitPoint p = positive_point(lv, rng);
    emit_json(bivector_report_json(lambda_poisson(p), p, parse_K(c, 0)), c.out);
    return 0;
  }
  if (c.f == "psi") {
    Rational K = parse_K(c, 1);
    std::vector<Rational> vals = multiplicative_simple_values(lv, rng);
    OrbitPoint p = make_orbit_point(lv, vals);
    emit_json(bivector_report_json(psi_solution(lv, vals, K), p, K), c.out);
    return 0;
  }
  if (c.f == "solve") {
    Rational K = parse_K(c, 1);
    OrbitPoint p = positive_point(lv, rng);
    std::vector<Rational> initial;
    for (std::size_t i = 0; i < lv->complement.size(); ++i) initial.push_back(make_rational(rng.uniform(1, 9), rng.uniform(1, 5)));
    FfSolveResult res = solve_ff(lv, initial, K);
    if (!res.bivector) {
      std::cerr << "bracket-solve: propagation conflict: " << res.conflict->message << "\n";
      return 1;
    }
    emit_json(bivector_report_json(*res.bivector, p, K), c.out);
    return 0;
  }
  throw std::invalid_argument("--f must be lambda, psi or solve");
}

int cmd_cohomology(const RunConfig& c) {
  auto lv = levi_datum(root_system(c), parse_gamma(c.gamma, c.rank));
  Rng rng(c.seed);
  InvariantBivector f{lv, {}};
  Rational K;
  if (c.f == "lambda") {
    K = parse_K(c, 0);
    f = lambda_poisson(positive_point(lv, rng));
  } else if (c.f == "psi") {
    K = parse_K(c, 1);
    f = psi_solution(lv, multiplicative_simple_values(lv, rng), K);
  } else {
    throw std::invalid_argument("--f must be lambda or psi");
  }
  emit_json(cohomology_report_json(build_complex(f, K)), c.out);
  return 0;
}

int cmd_sl_pencil(const RunConfig& c) {
  PencilReport r = verify_pencil(c.n, 20, c.seed);
  emit_json(pencil_report_json(r), c.out);
  // dim_hom = 0 is a valid outcome: no quadratic bracket of this type exists.
  return r.dim_hom == 0 || (r.sf_zero && r.ff_colinear) ? 0 : 1;
}

int cmd_re_pbw(const RunConfig& c) {
  FlatnessReport flat = re_pbw_report(c.n, c.degree, c.q_samples, c.seed);
  FirstOrderReport first = first_order_report(c.n);
  emit_json(re_pbw_report_json(flat, first), c.out);
  return flat.flat ? 0 : 1;
}

int cmd_accept(const RunConfig& c) {
  acceptance::Options opt;
  opt.seed = c.seed;
  // Every criterion is primary, so "primary" and "all" select the same set.
  if (c.only != "primary" && c.only != "all") {
    std::stringstream ss(c.only);
    for (std::string tok; std::getline(ss, tok, ',');) {
      int id = std::stoi(tok);
      if (id < 1 || id > acceptance::criterion_count()) throw std::invalid_argument("--only id " + tok + " out of range");
      opt.only.insert(id);
    }
  }
  auto results = acceptance::run(opt, [](const acceptance::CriterionResult& r) {
    std::cerr << acceptance::format_line(r) << std::endl;
  });
  Json summary = acceptance::summary_json(results, opt);
  emit_json(summary, c.out);
  return summary["all_pass"].get<bool>() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification of invariant Poisson brackets and reflection-equation algebras"};
  app.require_subcommand(1);
  RunConfig c;

  auto add_orbit = [&](CLI::App* s, const std::string& gamma_help) {
    s->add_option("--type", c.type, "Cartan type letter A-G")->required();
    s->add_option("--rank", c.rank, "rank")->required();
    s->add_option("--gamma", c.gamma, gamma_help);
  };
  auto add_common = [&](CLI::App* s) {
    s->add_option("--seed", c.seed, "seed for every random choice")->capture_default_str();
    s->add_option("--out", c.out, "output file (default stdout)");
  };

  auto* classify = app.add_subcommand("classify", "good-orbit classification over Gamma subsets");
  add_orbit(classify, "\"all\" or comma-separated Bourbaki labels");
  add_common(classify);
  classify->add_option("--tolerance", c.tolerance, "residual bound for numeric-only evidence")->capture_default_str();

  auto* solve = app.add_subcommand("bracket-solve", "construct an invariant bivector and report its residuals");
  add_orbit(solve, "comma-separated Bourbaki labels (empty: Gamma = {})");
  add_common(solve);
  solve->add_option("--f", c.f, "lambda | psi | solve")->capture_default_str();
  solve->add_option("--K", c.K, "K as p/q (default 0 for lambda, 1 otherwise)");

  auto* coh = app.add_subcommand("cohomology", "invariant cohomology of delta_f");
  add_orbit(coh, "comma-separated Bourbaki labels (empty: Gamma = {})");
  add_common(coh);
  coh->add_option("--f", c.f, "lambda | psi")->capture_default_str();
  coh->add_option("--K", c.K, "K as p/q (default 0 for lambda, 1 for psi)");

  auto* pencil = app.add_subcommand("sl-pencil", "quadratic Poisson pencil on sl(n)*");
  pencil->add_option("--n", c.n, "n")->capture_default_str();
  add_common(pencil);

  auto* pbw = app.add_subcommand("re-pbw", "reflection-equation relations, graded dimensions, first-order bracket");
  pbw->add_option("--n", c.n, "n")->capture_default_str();
  pbw->add_option("--degree", c.degree, "top degree")->capture_default_str();
  pbw->add_option("--q-samples", c.q_samples, "number of rational q")->capture_default_str();
  add_common(pbw);

  auto* accept = app.add_subcommand("accept", "run the acceptance criteria");
  accept->add_option("--only", c.only, "primary | all | comma-separated ids")->capture_default_str();
  std::uint64_t accept_seed = acceptance::Options{}.seed;
  accept->add_option("--seed", accept_seed, "seed for every random choice")->capture_default_str();
  accept->add_option("--out", c.out, "summary JSON file (default stdout)");

  CLI11_PARSE(app, argc, argv);
  try {
    if (classify->parsed()) return cmd_classify(c);
    if (solve->parsed()) return cmd_bracket_solve(c);
    if (coh->parsed()) return cmd_cohomology(c);
    if (pencil->parsed()) return cmd_sl_pencil(c);
    if (pbw->parsed()) return cmd_re_pbw(c);
    if (accept->parsed()) {
      c.seed = accept_seed;
      return cmd_accept(c);
    }
  } catch (const std::exception& e) {
    std::cerr << app.get_subcommands().front()->get_name() << ": " << e.what() << "\n";
    return 2;
  }
  return 2;
}
