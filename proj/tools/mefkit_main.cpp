#include <cctype>
#include <cmath>
#include <complex>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mefkit/error.hpp"
#include "mefkit/fixtures.hpp"
#include "mefkit/io.hpp"
#include "mefkit/selftest.hpp"
#include "mefkit/version.hpp"

namespace {

using namespace mefkit;

struct GlobalOpts {
  bool json = false;
  std::uint64_t seed = 0;
  double tol = -1.0;  // negative = not set; commands pick their defaults

  double tol_or(double fallback) const { return tol >= 0.0 ? tol : fallback; }
};

// Uniform report shape: command, version, inputs (path + content hash),
// parameters (every tolerance that influenced the run), results, verdicts.
struct ReportBuilder {
  std::string command;
  Json inputs = Json::object();
  Json parameters = Json::object();
  Json results = Json::object();
  std::vector<std::pair<std::string, bool>> verdicts;

  void input(const std::string& name, const std::filesystem::path& path) {
    inputs[name] = Json{{"path", path.string()}, {"hash", file_hash(path)}};
  }
  void verdict(const std::string& name, bool pass) {
    verdicts.emplace_back(name, pass);
  }
  bool all_pass() const {
    for (const auto& [name, pass] : verdicts) {
      if (!pass) return false;
    }
    return true;
  }
  Json build(std::uint64_t seed) const {
    Json vj = Json::array();
    for (const auto& [name, pass] : verdicts) {
      vj.push_back(Json{{"name", name}, {"pass", pass}});
    }
    return Json{{"command", command},   {"version", version_string},
                {"inputs", inputs},     {"parameters", parameters},
                {"results", results},   {"verdicts", std::move(vj)},
                {"seed", seed}};
  }
};

void print_report(const GlobalOpts& g, const ReportBuilder& report,
                  const std::string& text) {
  if (g.json) {
    std::cout << canonical_text(report.build(g.seed));
  } else {
    std::cout << text;
    for (const auto& [name, pass] : report.verdicts) {
      std::cout << (pass ? "ok    " : "FAIL  ") << name << "\n";
    }
  }
}

int finish(const GlobalOpts& g, const ReportBuilder& report,
           const std::string& text) {
  print_report(g, report, text);
  return report.all_pass() ? 0 : 1;
}

Json system_notes(const TorusSystem& sys) {
  Json flags = Json::array();
  if (!sys.invertible()) flags.push_back("non-invertible: semigroup action");
  return flags;
}

int cmd_betti(const GlobalOpts& g, const std::filesystem::path& path) {
  ReportBuilder report;
  report.command = "betti";
  report.input("complex", path);
  const CellComplex k = load_complex(path);
  const int b0 = betti0(k);
  const int b1 = betti1(k);
  report.results = Json{{"b0", b0}, {"b1", b1}};
  std::ostringstream text;
  text << "b0 = " << b0 << "\n" << "b1 = " << b1 << "\n";
  return finish(g, report, text.str());
}

int cmd_decompose(const GlobalOpts& g, const std::filesystem::path& path,
                  double tol) {
  ReportBuilder report;
  report.command = "decompose";
  report.input("function", path);
  report.parameters = Json{{"tol", tol}};

  const LatticeFunction f = load_function(path);
  const auto parts = irreducible_decomposition(f, Tolerance{tol});

  Json parts_json = Json::array();
  for (const auto& part : parts) {
    const VertexSet supp = support(part, Tolerance{tol});
    Json values = Json::object();
    for (Vertex v : supp) {
      values[std::to_string(v)] =
          Json::array({part[v].real(), part[v].imag()});
    }
    parts_json.push_back(Json{{"support", supp}, {"values", std::move(values)}});
  }
  report.results = Json{{"part_count", parts.size()},
                        {"parts", std::move(parts_json)}};

  bool reconstruct = true;
  std::vector<Cx> sum(f.values().size(), Cx{0.0, 0.0});
  for (const auto& part : parts) {
    for (std::size_t v = 0; v < sum.size(); ++v) sum[v] += part.values()[v];
  }
  for (std::size_t v = 0; v < sum.size(); ++v) {
    if (std::abs(sum[v] - f.values()[v]) > tol) reconstruct = false;
  }
  bool orth = true;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (std::size_t j = i + 1; j < parts.size(); ++j) {
      if (!orthogonal(parts[i], parts[j])) orth = false;
    }
  }
  bool irr_ok = true;
  for (const auto& part : parts) {
    if (!is_irreducible(part, Tolerance{tol})) irr_ok = false;
  }
  report.verdict("reconstruction-within-tol", reconstruct);
  report.verdict("parts-orthogonal", orth);
  report.verdict("parts-irreducible", irr_ok);

  std::ostringstream text;
  text << "parts: " << parts.size() << "\n";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const VertexSet supp = support(parts[i], Tolerance{tol});
    text << "  part " << i << " support:";
    for (Vertex v : supp) text << ' ' << v;
    text << "\n";
  }
  return finish(g, report, text.str());
}

int cmd_check_monotone(const GlobalOpts& g, const std::filesystem::path& path,
                       const std::string& criteria, int samples) {
  ReportBuilder report;
  report.command = "check-monotone";
  report.input("map", path);
  report.parameters =
      Json{{"criteria", criteria}, {"samples", samples}, {"seed", g.seed}};

  const QuotientMap p = load_map(path);
  Json crit_results = Json::object();
  std::vector<bool> seen;
  std::ostringstream text;
  std::stringstream tokens(criteria);
  std::string token;
  while (std::getline(tokens, token, ',')) {
    bool verdict = false;
    if (token == "a") {
      verdict = is_monotone_fibers(p);
    } else if (token == "b") {
      verdict = is_monotone_connected_preimages(p, PreimageMode::Auto, samples,
                                                g.seed);
    } else if (token == "e" || token == "f") {
      verdict = is_monotone_algebraic(p, samples, g.seed);
    } else {
      fail(ErrorCode::InvalidArgument,
           "unknown criterion '" + token + "' (use a, b, e, f)");
    }
    crit_results[token] = verdict;
    seen.push_back(verdict);
    text << "criterion " << token << ": " << (verdict ? "monotone" : "not monotone")
         << "\n";
  }
  require(!seen.empty(), ErrorCode::InvalidArgument, "no criteria requested");
  bool agree = true;
  for (bool v : seen) {
    if (v != seen.front()) agree = false;
  }
  report.results = Json{{"criteria", std::move(crit_results)},
                        {"monotone", agree && seen.front()},
                        {"agreement", agree}};
  report.verdict("criteria-agree", agree);
  return finish(g, report, text.str());
}

int cmd_hull(const GlobalOpts& g, const std::filesystem::path& path,
             const std::filesystem::path& out_dir) {
  ReportBuilder report;
  report.command = "hull";
  report.input("map", path);
  report.parameters = Json{{"out_dir", out_dir.string()}};

  const Json map_json = load_json(path);
  const QuotientMap p = map_from_json(map_json, path.parent_path());
  const MonotoneHull hull = monotone_hull(p);

  std::filesystem::create_directories(out_dir);
  const auto rel_to_out = [&](std::string ref) {
    std::filesystem::path rp = ref;
    if (rp.is_relative()) rp = path.parent_path() / rp;
    std::error_code ec;
    const auto rel = std::filesystem::relative(rp, out_dir, ec);
    return ec ? std::filesystem::absolute(rp).string() : rel.string();
  };
  const std::string domain_ref =
      rel_to_out(map_json.at("domain").get<std::string>());
  const std::string codomain_ref =
      rel_to_out(map_json.at("codomain").get<std::string>());

  save_complex(out_dir / "hull.complex.json", hull.q.codomain());
  save_map(out_dir / "hull.q.json", hull.q, domain_ref, "hull.complex.json");
  save_map(out_dir / "hull.phat.json", hull.phat, "hull.complex.json",
           codomain_ref);

  const int hull_b1 = betti1(hull.q.codomain());
  report.results = Json{
      {"hull_vertices", hull.q.codomain().vertex_count()},
      {"hull_b1", hull_b1},
      {"note",
       "pushed-forward squares follow the conservative rule, so hull_b1 can "
       "overestimate the collapsed cycle count"},
      {"files", Json{{"complex", (out_dir / "hull.complex.json").string()},
                     {"q", (out_dir / "hull.q.json").string()},
                     {"phat", (out_dir / "hull.phat.json").string()}}}};

  const QuotientMap roundtrip = compose(hull.phat, hull.q);
  report.verdict("phat-after-q-equals-p",
                 roundtrip.assignment() == p.assignment());
  report.verdict("q-monotone", is_monotone_fibers(hull.q));

  std::ostringstream text;
  text << "hull vertices: " << hull.q.codomain().vertex_count() << "\n"
       << "wrote " << (out_dir / "hull.q.json").string() << ", "
       << (out_dir / "hull.phat.json").string() << "\n";
  return finish(g, report, text.str());
}

int cmd_equicont(const GlobalOpts& g, const std::filesystem::path& system_path,
                 const std::filesystem::path& function_path, int horizon,
                 double threshold, const std::string& deltas_text) {
  ReportBuilder report;
  report.command = "equicont";
  report.input("system", system_path);
  report.input("function", function_path);

  const TorusSystem sys = load_system(system_path);
  const LatticeFunction lf = load_function(function_path);
  const GridFunction f = to_grid_function(lf, sys.dim(), sys.grid());

  std::vector<double> deltas;
  if (deltas_text.empty()) {
    deltas = default_deltas(sys.grid());
  } else {
    std::stringstream tokens(deltas_text);
    std::string token;
    while (std::getline(tokens, token, ',')) {
      deltas.push_back(std::stod(token));
    }
  }
  report.parameters = Json{{"horizon", horizon},
                           {"threshold", threshold},
                           {"deltas", deltas}};

  const EquicontinuityResult result =
      equicontinuity_estimate(sys, f, horizon, deltas, threshold);
  report.results = Json{{"equicontinuous", result.equicontinuous},
                        {"best_uniform_bound", result.table.best_uniform_bound()},
                        {"table", modulus_table_to_json(result.table)},
                        {"generators_scope", "semigroup"},
                        {"system_flags", system_notes(sys)}};

  std::ostringstream text;
  text << "equicontinuous: " << (result.equicontinuous ? "yes" : "no") << "\n"
       << "best uniform bound: " << result.table.best_uniform_bound()
       << " (threshold " << threshold << ")\n";
  return finish(g, report, text.str());
}

int cmd_mef(const GlobalOpts& g, const std::filesystem::path& system_path,
            const std::filesystem::path& model_path, int kmax, double tol,
            const std::string& out) {
  ReportBuilder report;
  report.command = "mef";
  report.input("system", system_path);
  report.input("model", model_path);

  const TorusSystem sys = load_system(system_path);
  const CellComplex model = load_complex(model_path);
  const InvarianceParams inv;
  report.parameters = Json{{"kmax", kmax},
                           {"tol", tol},
                           {"invariance_steps", inv.steps},
                           {"invariance_eps_net",
                            inv.eps_net > 0 ? inv.eps_net : 2.0 / sys.grid()}};

  const MEFReport mef = mef_extract(sys, model, kmax, tol, inv);
  Json mef_json = mef_report_to_json(mef);
  if (!out.empty()) save_json(out, mef_json);
  mef_json["generators_scope"] = "semigroup";
  mef_json["system_flags"] = system_notes(sys);
  report.results = std::move(mef_json);
  report.verdict("bound-ok", mef.bound_ok);

  std::ostringstream text;
  text << "m = " << mef.m << " (b0 = " << mef.bound_b0
       << ", b1 = " << mef.bound_b1 << ")\n"
       << "applicable: " << (mef.applicable ? "yes" : "no");
  if (mef.heuristic) text << " (heuristic: " << mef.invariance_method << ")";
  text << "\n";
  for (std::size_t i = 0; i < mef.frequency_lattice_basis.size(); ++i) {
    text << "generator";
    for (long long c : mef.frequency_lattice_basis[i]) text << ' ' << c;
    text << "  phase " << mef.rotation[i] << "\n";
  }
  if (!out.empty()) text << "wrote " << out << "\n";
  return finish(g, report, text.str());
}

int cmd_spectrum(const GlobalOpts& g, const std::filesystem::path& path) {
  ReportBuilder report;
  report.command = "spectrum";
  report.input("report", path);

  Json j = load_json(path);
  if (j.contains("results")) j = j.at("results");
  const MEFReport mef = mef_report_from_json(j);

  bool rank_bound = true;
  PointSpectrumGroup group;
  try {
    group = point_spectrum_group(mef);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::TheoremViolation) throw;
    rank_bound = false;
    group.rank = mef.m;
    group.finite_order = mef.finite_order;
    group.generator_count = group.rank + (group.finite_order > 1 ? 1 : 0);
  }
  report.results = Json{{"rank", group.rank},
                        {"finite_order", group.finite_order},
                        {"generator_count", group.generator_count},
                        {"generators", mef.frequency_lattice_basis},
                        {"rotation", mef.rotation}};
  report.verdict("rank-bound", rank_bound);

  std::ostringstream text;
  text << "rank = " << group.rank << ", generators = " << group.generator_count
       << ", finite order = " << group.finite_order << "\n";
  for (std::size_t i = 0; i < mef.frequency_lattice_basis.size(); ++i) {
    text << "generator";
    for (long long c : mef.frequency_lattice_basis[i]) text << ' ' << c;
    text << "  phase " << mef.rotation[i] << "\n";
  }
  return finish(g, report, text.str());
}

FiniteAbelian parse_group(const std::string& text) {
  std::string t;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
  }
  if (t == "0" || t == "1") return FiniteAbelian{};
  std::vector<long long> orders;
  std::stringstream parts(t);
  std::string part;
  while (std::getline(parts, part, 'x')) {
    require(part.size() > 2 && (part[0] == 'Z' || part[0] == 'z') &&
                part[1] == '/',
            ErrorCode::ParseError, "groups look like Z/4 or Z/2xZ/4");
    orders.push_back(std::stoll(part.substr(2)));
  }
  return FiniteAbelian(orders);
}

std::vector<long long> parse_tuple(const std::string& text,
                                   std::size_t expected) {
  std::string t;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c)) && c != '(' && c != ')') {
      t.push_back(c);
    }
  }
  std::vector<long long> out;
  std::stringstream parts(t);
  std::string part;
  while (std::getline(parts, part, ',')) out.push_back(std::stoll(part));
  require(out.size() == expected, ErrorCode::ParseError,
          "tuple arity mismatch in '" + text + "'");
  return out;
}

// "Z/4->Z/2:1->1" or "Z/2xZ/4->Z/4:(1,0)->2;(0,1)->1". Left sides must be
// the canonical generators in order.
FiniteHom parse_finite_hom(const std::string& text) {
  const auto colon = text.find(':');
  require(colon != std::string::npos, ErrorCode::ParseError,
          "finite hom needs '<dom>-><cod>:<images>'");
  const std::string head = text.substr(0, colon);
  const auto arrow = head.find("->");
  require(arrow != std::string::npos, ErrorCode::ParseError,
          "finite hom needs '<dom>-><cod>'");
  const FiniteAbelian domain = parse_group(head.substr(0, arrow));
  const FiniteAbelian codomain = parse_group(head.substr(arrow + 2));

  std::vector<std::vector<long long>> images(
      domain.orders().size(),
      std::vector<long long>(codomain.orders().size(), 0));
  std::size_t seen = 0;
  std::stringstream maps(text.substr(colon + 1));
  std::string item;
  while (std::getline(maps, item, ';')) {
    if (item.empty()) continue;
    const auto a = item.find("->");
    require(a != std::string::npos, ErrorCode::ParseError,
            "image entries look like 'gen->image'");
    const auto lhs = parse_tuple(item.substr(0, a), domain.orders().size());
    const auto rhs = parse_tuple(item.substr(a + 2), codomain.orders().size());
    require(seen < domain.orders().size(), ErrorCode::ParseError,
            "more images than domain generators");
    for (std::size_t i = 0; i < lhs.size(); ++i) {
      require(lhs[i] == (i == seen ? 1 : 0), ErrorCode::ParseError,
              "left sides must be the canonical generators in order");
    }
    images[seen++] = rhs;
  }
  require(seen == domain.orders().size(), ErrorCode::ParseError,
          "one image per domain generator required");
  return FiniteHom(domain, codomain, images);
}

int cmd_classify_hom(const GlobalOpts& g, const std::string& matrix_text,
                     const std::string& finite_text) {
  ReportBuilder report;
  report.command = "classify-hom";
  report.parameters = Json{{"matrix", matrix_text}};
  if (!finite_text.empty()) report.parameters["finite"] = finite_text;

  Json jm = Json::parse(matrix_text, nullptr, false);
  require(!jm.is_discarded() && jm.is_array() && !jm.empty(),
          ErrorCode::ParseError, "--matrix takes JSON like [[2,0],[0,3]]");
  const std::size_t rows = jm.size();
  require(jm[0].is_array(), ErrorCode::ParseError,
          "--matrix takes JSON like [[2,0],[0,3]]");
  const std::size_t cols = jm[0].size();
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    require(jm[i].is_array() && jm[i].size() == cols, ErrorCode::ParseError,
            "matrix rows must have equal length");
    for (std::size_t c = 0; c < cols; ++c) {
      require(jm[i][c].is_number_integer(), ErrorCode::ParseError,
              "matrix entries are integers");
      m.at(i, c) = jm[i][c].get<long long>();
    }
  }

  const HomClassification hom =
      finite_text.empty() ? classify_torus_hom(m)
                          : classify_product_hom(parse_finite_hom(finite_text), m);

  report.results =
      Json{{"surjective", hom.surjective},
           {"kernel_finite", hom.kernel_finite},
           {"kernel_order",
            hom.kernel_order ? Json(hom.kernel_order->str()) : Json(nullptr)},
           {"image_torus_dim", hom.image_torus_dim},
           {"image_finite_part", hom.image_finite_part.to_string()}};

  std::ostringstream text;
  text << "surjective: " << (hom.surjective ? "yes" : "no") << "\n"
       << "kernel finite: " << (hom.kernel_finite ? "yes" : "no") << "\n";
  if (hom.kernel_order) text << "kernel order: " << hom.kernel_order->str() << "\n";
  text << "image torus dim: " << hom.image_torus_dim << "\n"
       << "image finite part: " << hom.image_finite_part.to_string() << "\n";
  return finish(g, report, text.str());
}

int cmd_selftest(const GlobalOpts& g, const std::string& suite, bool list) {
  if (list) {
    for (const std::string& name : selftest_suite_names()) {
      std::cout << name << "\n";
    }
    return 0;
  }
  ReportBuilder report;
  report.command = "selftest";
  report.parameters = Json{{"suite", suite.empty() ? "all" : suite}};

  std::vector<SuiteResult> results;
  if (suite.empty()) {
    results = run_selftest(g.seed);
  } else {
    results.push_back(run_selftest_suite(suite, g.seed));
  }
  report.results = selftest_report_json(results);

  std::ostringstream text;
  for (const SuiteResult& r : results) {
    report.verdict(r.suite, r.pass());
    text << (r.pass() ? "PASS" : "FAIL") << "  " << r.suite << " ("
         << r.checks.size() << " checks)\n";
    for (const SuiteCheck& c : r.checks) {
      if (!c.pass) {
        text << "      failed: " << c.name
             << (c.detail.empty() ? "" : " [" + c.detail + "]") << "\n";
      }
    }
  }
  return finish(g, report, text.str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite models of quotients, decompositions, and torus dynamics"};
  app.set_version_flag("--version", std::string(mefkit::version_string));
  app.fallthrough();
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_flag("--json", g.json, "emit a JSON run report");
  bool text_flag = false;
  app.add_flag("--text", text_flag, "plain text output (default)");
  app.add_option("--seed", g.seed, "seed for sampled checks");
  app.add_option("--tol", g.tol, "tolerance override");

  std::filesystem::path betti_path;
  auto* betti = app.add_subcommand("betti", "Betti numbers of a complex file");
  betti->add_option("complex", betti_path, "complex.json")->required();

  std::filesystem::path dec_path;
  auto* dec = app.add_subcommand("decompose",
                                 "irreducible decomposition of a function");
  dec->add_option("--function", dec_path, "function.json")->required();

  std::filesystem::path mon_path;
  std::string mon_criteria = "a,b,f";
  int mon_samples = 200;
  auto* mon = app.add_subcommand("check-monotone",
                                 "monotonicity criteria for a quotient map");
  mon->add_option("--map", mon_path, "map.json")->required();
  mon->add_option("--criteria", mon_criteria, "comma list from a,b,e,f");
  mon->add_option("--samples", mon_samples, "sample count for b/e/f");

  std::filesystem::path hull_path, hull_out = ".";
  auto* hull = app.add_subcommand("hull", "monotone hull of a quotient map");
  hull->add_option("--map", hull_path, "map.json")->required();
  hull->add_option("--out-dir", hull_out, "output directory");

  std::filesystem::path eq_sys, eq_fn;
  int eq_horizon = 64;
  double eq_threshold = 0.25;
  std::string eq_deltas;
  auto* eq = app.add_subcommand("equicont", "equicontinuity modulus table");
  eq->add_option("--system", eq_sys, "system.json")->required();
  eq->add_option("--function", eq_fn, "function.json")->required();
  eq->add_option("--horizon", eq_horizon, "iteration horizon");
  eq->add_option("--threshold", eq_threshold, "verdict threshold");
  eq->add_option("--deltas", eq_deltas, "comma list; default ladder 2^i/N");

  std::filesystem::path mef_sys, mef_model;
  int mef_kmax = 8;
  std::string mef_out;
  auto* mef = app.add_subcommand("mef", "maximal equicontinuous factor report");
  mef->add_option("--system", mef_sys, "system.json")->required();
  mef->add_option("--model", mef_model, "complex.json for b0/b1")->required();
  mef->add_option("--kmax", mef_kmax, "frequency box radius");
  mef->add_option("--out", mef_out, "also write the bare report JSON here");

  std::filesystem::path spec_path;
  auto* spec = app.add_subcommand("spectrum",
                                  "point spectrum group from a mef report");
  spec->add_option("--report", spec_path, "report.json")->required();

  std::string hom_matrix, hom_finite;
  auto* hom = app.add_subcommand("classify-hom",
                                 "classify a torus/product homomorphism");
  hom->add_option("--matrix", hom_matrix, "integer matrix as JSON")->required();
  hom->add_option("--finite", hom_finite, "finite block, e.g. Z/4->Z/2:1->1");

  std::string st_suite;
  bool st_list = false;
  auto* st = app.add_subcommand("selftest", "run the acceptance suites");
  st->add_option("suite", st_suite, "single suite name (default: all)");
  st->add_flag("--list", st_list, "list suite names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*betti) return cmd_betti(g, betti_path);
    if (*dec) return cmd_decompose(g, dec_path, g.tol_or(grid_default_eps));
    if (*mon) return cmd_check_monotone(g, mon_path, mon_criteria, mon_samples);
    if (*hull) return cmd_hull(g, hull_path, hull_out);
    if (*eq) return cmd_equicont(g, eq_sys, eq_fn, eq_horizon, eq_threshold,
                                 eq_deltas);
    if (*mef) return cmd_mef(g, mef_sys, mef_model, mef_kmax, g.tol_or(1e-6),
                             mef_out);
    if (*spec) return cmd_spectrum(g, spec_path);
    if (*hom) return cmd_classify_hom(g, hom_matrix, hom_finite);
    if (*st) return cmd_selftest(g, st_suite, st_list);
  } catch (const mefkit::Error& e) {
    std::cerr << "error [" << to_string(e.code()) << "]: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
