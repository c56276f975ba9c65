#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "klab/criteria.hpp"
#include "klab/curve.hpp"
#include "klab/report_json.hpp"

namespace {

using klab::Json;

struct CommonOpts {
  int n = 7;
  std::string xi_csv;
  std::string in_path;
  bool exact = false;
  double tol = 1e-7;  // curve-verification residual threshold
  int grid = 2048;
  std::string out_path;
  bool verify = false;
};

void add_xi_options(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--n", o.n, "Matrix size (default 7)");
  auto* xi = cmd->add_option("--xi", o.xi_csv, "Comma-separated xi values (decimal, p/q, or a+b*sqrt2)");
  auto* in = cmd->add_option("--in", o.in_path, "JSON input file with {\"n\": ..., \"xi\": [...]}");
  xi->excludes(in);
  cmd->add_flag("--exact", o.exact, "Require exact input (reject decimal tokens)");
}

klab::XiVector load_xi(const CommonOpts& o) {
  if (!o.in_path.empty()) {
    std::ifstream in(o.in_path);
    if (!in) throw std::invalid_argument("cannot open input file: " + o.in_path);
    std::stringstream ss;
    ss << in.rdbuf();
    auto xi = klab::xi_from_json(ss.str());
    if (o.exact && !xi.is_exact()) throw std::invalid_argument("--exact given but input has decimal entries");
    return xi;
  }
  if (o.xi_csv.empty()) throw std::invalid_argument("missing xi input (--xi or --in)");
  return klab::xi_from_csv(o.n, o.xi_csv, o.exact);
}

void emit(const Json& j, const std::string& out_path) {
  std::string text = j.dump(2);
  text += '\n';
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::invalid_argument("cannot open output file: " + out_path);
    out << text;
  }
}

/// Samples the curve for xi and checks the predicted conics against it.
/// Returns the assignment report plus an agreement flag: every nondegenerate
/// predicted ellipse must attract samples and fit below tol.
std::pair<Json, bool> run_verification(const klab::XiVector& xi,
                                       const std::vector<klab::EllipseSpec>& specs, int grid,
                                       double tol) {
  auto a = klab::matrix_from_xi(xi);
  auto samples = klab::sample_curve(a, klab::default_grid(grid));
  auto assignment = klab::verify_conics(samples, specs);
  bool ok = true;
  for (const auto& fit : assignment.fits) {
    if (fit.spec.degenerate()) continue;
    if (fit.assigned == 0 || fit.max_residual >= tol) ok = false;
  }
  Json j = klab::assignment_json(assignment);
  j["threshold"] = klab::round_sig15(tol);
  j["grid"] = grid;
  j["agrees"] = ok;
  return {j, ok};
}

Json xi_echo_json(const klab::XiVector& xi) {
  Json arr = Json::array();
  for (const auto& s : xi.xi) arr.push_back(klab::scalar_json(s));
  return Json{{"n", xi.n}, {"xi", arr}};
}

int cmd_classify(const CommonOpts& o) {
  auto xi = load_xi(o);
  auto cls = klab::classify(xi);
  Json j = xi_echo_json(xi);
  j["classification"] = klab::classification_json(cls);
  bool agree = true;
  if (o.verify) {
    auto [vj, ok] = run_verification(xi, cls.ellipses, o.grid, o.tol);
    j["verification"] = vj;
    agree = ok;
  }
  emit(j, o.out_path);
  return agree ? 0 : 2;
}

int cmd_reproduce(int figure, const CommonOpts& o) {
  klab::XiVector xi;
  std::optional<klab::CatalogEntry> entry;
  if (figure == 1) {
    xi = klab::xi_from_csv(7, "1,4,1,1,2,3");
  } else if (figure == 2) {
    xi = klab::xi_from_csv(7, "1,1,2,0,1,1");
  } else if (figure >= 3 && figure <= 6) {
    for (const auto& e : klab::solution_catalog_n7())
      if (e.figure == figure) entry = e;
    if (!entry) throw std::logic_error("reproduce: no catalogue entry for figure");
    std::vector<klab::Scalar> vals;
    for (const auto& t : entry->xi_exact) vals.push_back(klab::to_scalar(t));
    xi = klab::XiVector(7, vals);
  } else {
    throw std::invalid_argument("reproduce: figure must be 1..6");
  }

  auto cls = klab::classify(xi);
  Json j;
  j["figure"] = figure;
  j["input"] = xi_echo_json(xi);
  j["classification"] = klab::classification_json(cls);
  if (entry) j["catalog"] = klab::catalog_entry_json(*entry, klab::verify_catalog_entry(*entry));

  auto a = klab::matrix_from_xi(xi);
  auto samples = klab::sample_curve(a, klab::default_grid(o.grid));
  auto assignment = klab::verify_conics(samples, cls.ellipses);
  bool ok = true;
  for (const auto& fit : assignment.fits) {
    if (fit.spec.degenerate()) continue;
    if (fit.assigned == 0 || fit.max_residual >= o.tol) ok = false;
  }
  Json vj = klab::assignment_json(assignment);
  vj["threshold"] = klab::round_sig15(o.tol);
  vj["grid"] = o.grid;
  vj["agrees"] = ok;
  j["verification"] = vj;

  std::string base = o.out_path.empty() ? "figure" + std::to_string(figure) : o.out_path;
  emit(j, base + ".json");
  std::ofstream svg(base + ".svg");
  if (!svg) throw std::invalid_argument("cannot open output file: " + base + ".svg");
  klab::write_svg(svg, samples, cls.ellipses);
  return ok ? 0 : 2;
}

int cmd_catalog(const CommonOpts& o) {
  Json entries = Json::array();
  bool all_ok = true;
  for (const auto& e : klab::solution_catalog_n7()) {
    auto report = klab::verify_catalog_entry(e);
    if (!report.holds()) all_ok = false;
    entries.push_back(klab::catalog_entry_json(e, report));
  }
  Json j;
  j["entries"] = entries;
  j["count"] = static_cast<int>(entries.size());
  emit(j, o.out_path);
  return all_ok ? 0 : 2;
}

int cmd_sample(const CommonOpts& o) {
  auto xi = load_xi(o);
  auto a = klab::matrix_from_xi(xi);
  auto samples = klab::sample_curve(a, klab::default_grid(o.grid));
  if (o.out_path.empty()) {
    klab::write_samples_csv(std::cout, samples);
  } else {
    std::ofstream out(o.out_path);
    if (!out) throw std::invalid_argument("cannot open output file: " + o.out_path);
    klab::write_samples_csv(out, samples);
  }
  return 0;
}

int finish_check(const klab::XiVector& xi, const std::string& criterion,
                 const klab::CriterionReport& report, const std::vector<klab::EllipseSpec>& specs,
                 const CommonOpts& o) {
  Json j = xi_echo_json(xi);
  j["criterion"] = criterion;
  j["report"] = klab::report_json(report);
  Json ellipses = Json::array();
  for (const auto& e : specs) ellipses.push_back(klab::ellipse_json(e));
  j["ellipses"] = ellipses;
  bool agree = true;
  if (o.verify && report.holds()) {
    auto [vj, ok] = run_verification(xi, specs, o.grid, o.tol);
    j["verification"] = vj;
    agree = ok;
  }
  emit(j, o.out_path);
  return agree ? 0 : 2;
}

int cmd_check_origin(const CommonOpts& o, int k) {
  auto xi = load_xi(o);
  auto report = klab::origin_ellipse_check(xi, k);
  std::vector<klab::EllipseSpec> specs;
  if (report.holds()) {
    klab::EllipseSpec e;
    e.p = klab::Scalar(0);
    e.x2 = klab::squared_spectrum(xi.n)[static_cast<std::size_t>(k - 1)];
    for (const auto& [name, value] : report.params)
      if (name == "C") e.c = value;
    specs.push_back(e);
  }
  return finish_check(xi, "origin-ellipse", report, specs, o);
}

int cmd_check_concentric(const CommonOpts& o) {
  auto xi = load_xi(o);
  auto report = klab::concentric_check(xi);
  std::vector<klab::EllipseSpec> specs;
  if (report.holds()) {
    auto x2s = klab::squared_spectrum(xi.n);
    std::size_t k = 0;
    for (const auto& [name, value] : report.params) {
      if (name.rfind("C", 0) != 0 || name == "C") continue;
      klab::EllipseSpec e;
      e.p = klab::Scalar(0);
      e.x2 = x2s[k++];
      e.c = value;
      specs.push_back(e);
    }
  }
  return finish_check(xi, "all-concentric", report, specs, o);
}

int cmd_check_shifted(const CommonOpts& o, const std::string& p_text, const std::string& x_text) {
  auto xi = load_xi(o);
  klab::Scalar p = klab::Scalar::parse(p_text);
  klab::Scalar x = klab::Scalar::parse(x_text);
  auto report = klab::shifted_pair_residuals(xi, p * p, x * x);
  std::vector<klab::EllipseSpec> specs;
  if (report.holds()) {
    klab::Scalar c(0);
    for (const auto& [name, value] : report.params)
      if (name == "C") c = value;
    specs.push_back({p, x * x, c});
    specs.push_back({-p, x * x, c});
  }
  return finish_check(xi, "shifted-pair", report, specs, o);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kippenhahn-curve elliptic-component analysis for reciprocal tridiagonal matrices"};
  app.require_subcommand(1);

  CommonOpts o;
  int figure = 0, k = 1;
  std::string p_text, x_text;

  auto* classify = app.add_subcommand("classify", "Decide which elliptical components the curve contains");
  add_xi_options(classify, o);
  classify->add_flag("--verify", o.verify, "Cross-check the verdict against sampled curve points");
  classify->add_option("--tol", o.tol, "Verification residual threshold (default 1e-7)");
  classify->add_option("--grid", o.grid, "Number of sampling angles (default 2048)");
  classify->add_option("--out", o.out_path, "Write the JSON report to this file");

  auto* reproduce = app.add_subcommand("reproduce", "Regenerate a catalogued example figure (1..6)");
  reproduce->add_option("figure", figure, "Figure index")->required();
  reproduce->add_option("--grid", o.grid, "Number of sampling angles (default 2048)");
  reproduce->add_option("--tol", o.tol, "Verification residual threshold (default 1e-7)");
  reproduce->add_option("--out", o.out_path, "Output basename (writes .json and .svg)");

  auto* catalog = app.add_subcommand("catalog", "Dump the complete n = 7 shifted-pair solution catalogue");
  catalog->add_option("--out", o.out_path, "Write the JSON report to this file");

  auto* sample = app.add_subcommand("sample", "Emit raw curve samples as CSV");
  add_xi_options(sample, o);
  sample->add_option("--grid", o.grid, "Number of sampling angles (default 2048)");
  sample->add_option("--out", o.out_path, "Write CSV to this file");

  auto* check_origin = app.add_subcommand("check-origin", "Test for an origin-centered ellipse with foci +-X_k");
  add_xi_options(check_origin, o);
  check_origin->add_option("--k", k, "Eigenvalue index (1..floor(n/2), default 1)");
  check_origin->add_flag("--verify", o.verify, "Cross-check against sampled curve points");
  check_origin->add_option("--tol", o.tol, "Verification residual threshold (default 1e-7)");
  check_origin->add_option("--grid", o.grid, "Number of sampling angles (default 2048)");
  check_origin->add_option("--out", o.out_path, "Write the JSON report to this file");

  auto* check_conc = app.add_subcommand("check-concentric", "Test whether the whole curve is concentric ellipses");
  add_xi_options(check_conc, o);
  check_conc->add_flag("--verify", o.verify, "Cross-check against sampled curve points");
  check_conc->add_option("--tol", o.tol, "Verification residual threshold (default 1e-7)");
  check_conc->add_option("--grid", o.grid, "Number of sampling angles (default 2048)");
  check_conc->add_option("--out", o.out_path, "Write the JSON report to this file");

  auto* check_shift = app.add_subcommand("check-shifted", "Test for the ellipse pair with foci +-(p-X), +-(p+X)");
  add_xi_options(check_shift, o);
  check_shift->add_option("--p", p_text, "Center offset p (Scalar token)")->required();
  check_shift->add_option("--x", x_text, "Half focal distance X (Scalar token)")->required();
  check_shift->add_flag("--verify", o.verify, "Cross-check against sampled curve points");
  check_shift->add_option("--tol", o.tol, "Verification residual threshold (default 1e-7)");
  check_shift->add_option("--grid", o.grid, "Number of sampling angles (default 2048)");
  check_shift->add_option("--out", o.out_path, "Write the JSON report to this file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (classify->parsed()) return cmd_classify(o);
    if (reproduce->parsed()) return cmd_reproduce(figure, o);
    if (catalog->parsed()) return cmd_catalog(o);
    if (sample->parsed()) return cmd_sample(o);
    if (check_origin->parsed()) return cmd_check_origin(o, k);
    if (check_conc->parsed()) return cmd_check_concentric(o);
    if (check_shift->parsed()) return cmd_check_shifted(o, p_text, x_text);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::logic_error& e) {
    std::cerr << "internal disagreement: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
