#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

#include "minsos/pipeline.hpp"

using namespace minsos;

namespace {

constexpr int kOk = 0;
constexpr int kInput = 2;
constexpr int kSolver = 3;
constexpr int kVerify = 4;

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::PathFailureBudgetExceeded:
    case ErrorKind::IterationBudgetExceeded:
    case ErrorKind::StuckAboveTarget:
      return kSolver;
    case ErrorKind::VerificationFailed:
      return kVerify;
    default:
      return kInput;
  }
}

Json read_json(const std::string& path) {
  std::ifstream file;
  std::istream* in = &std::cin;
  if (path != "-") {
    file.open(path);
    if (!file) throw Error(ErrorKind::InputError, "cannot open " + path);
    in = &file;
  }
  try {
    return Json::parse(*in);
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::InputError, path + ": " + e.what());
  }
}

struct FormInput {
  BiformQ form;
  std::optional<SurfaceSpec> surface;
};

// Either a bare biform or {"form": ..., "surface": ...}.
FormInput read_form(const std::string& path) {
  const Json j = read_json(path);
  FormInput in;
  if (j.is_object() && j.contains("form")) {
    in.form = biform_from_json(j.at("form"));
    if (j.contains("surface")) in.surface = surface_from_json(j.at("surface"));
  } else {
    in.form = biform_from_json(j);
  }
  return in;
}

SurfaceSpec pick_surface(const FormInput& in, const std::string& flag) {
  if (!flag.empty()) return parse_surface(flag);
  if (in.surface) return *in.surface;
  throw Error(ErrorKind::InputError, "no surface given; pass --surface or a \"surface\" field");
}

void emit(const Json& j, const std::string& json_out, const std::string& summary) {
  if (json_out.empty()) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(json_out);
  if (!out) throw Error(ErrorKind::InputError, "cannot write " + json_out);
  out << j.dump(2) << "\n";
  if (!summary.empty()) std::cout << summary;
}

int thread_count(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

struct Common {
  uint64_t seed = 1;
  bool exact = false;
  double residual_tol = 1e-8;
  double cluster_radius = 1e-6;
  int paths_parallel = 0;
  std::string json_out;

  PipelineOptions pipeline() const {
    PipelineOptions o;
    o.exact = exact;
    o.enumeration.seed = seed;
    o.enumeration.residual_tol = residual_tol;
    o.enumeration.cluster_radius = cluster_radius;
    o.enumeration.tracker.threads = thread_count(paths_parallel);
    return o;
  }
};

void add_solver_flags(CLI::App* cmd, Common& c) {
  cmd->add_option("--seed", c.seed, "random seed (u64)");
  cmd->add_flag("--exact,!--float", c.exact, "also emit exact rational certificates where the point is rational");
  cmd->add_option("--residual-tol", c.residual_tol, "relative residual tolerance");
  cmd->add_option("--cluster-radius", c.cluster_radius, "radius for merging endpoints and roots");
  cmd->add_option("--paths-parallel", c.paths_parallel, "worker threads for path tracking (0 = all cores)");
}

std::string counts_line(const EnumerationReport& r) {
  std::ostringstream os;
  os << r.surface.name() << ": complex " << r.counts.complex << ", real " << r.counts.real << ", psd "
     << r.counts.psd << ", indefinite " << r.counts.indefinite << "\n";
  for (const auto& w : r.warnings) os << "warning: " << w << "\n";
  return os.str();
}

int cmd_gram_space(const std::string& file, const std::string& surface, const std::string& json_out) {
  const auto in = read_form(file);
  const auto spec = pick_surface(in, surface);
  const auto space = build_gram_space(in.form, spec);
  Json j = to_json(space);
  j["surface"] = to_json(spec);
  emit(j, json_out, "kernel dimension " + std::to_string(space.dim()) + "\n");
  return kOk;
}

int cmd_enumerate(const std::string& file, const std::string& surface, const Common& c, const std::string& curves) {
  const auto in = read_form(file);
  const auto spec = pick_surface(in, surface);
  const auto report = enumerate(in.form, spec, c.pipeline());
  emit(to_json(report), c.json_out, counts_line(report));
  for (const auto& w : report.warnings) std::cerr << "warning: " << w << "\n";
  for (const auto& n : report.degeneration.notes)
    if (report.degeneration.missing > 0) std::cerr << "degeneration: " << n << "\n";
  if (!curves.empty()) {
    const RepresentationD* rep = nullptr;
    for (const auto& cert : report.certificates)
      if (cert.inertia.minus == 0) {
        rep = &cert.rep;
        break;
      }
    std::ofstream out(curves);
    if (!out) throw Error(ErrorKind::InputError, "cannot write " + curves);
    out << curve_samples_csv(in.form, rep);
  }
  return report.all_verified() ? kOk : kVerify;
}

Json factorization_json(const SymMatrixPoly& a, const Factorization& fac) {
  Json rows = Json::array();
  for (const auto& row : fac.b) {
    Json r = Json::array();
    for (const auto& entry : row) r.push_back(to_json(entry));
    rows.push_back(std::move(r));
  }
  return Json{{"n", a.n()},
              {"columns", a.n() + 1},
              {"degrees", fac.degrees},
              {"B", rows},
              {"residual", fac.residual},
              {"extreme_rank", fac.extreme_rank},
              {"continuation", fac.continuation},
              {"warnings", fac.warnings}};
}

int cmd_factor(const std::string& file, const Common& c) {
  const auto a = matrix_from_json(read_json(file));
  FactorOptions opts;
  opts.residual_tol = c.residual_tol;
  const auto fac = factor(a, opts);
  std::ostringstream summary;
  summary << "B is " << a.n() << " x " << a.n() + 1 << ", residual " << fac.residual << "\n";
  emit(factorization_json(a, fac), c.json_out, summary.str());
  return kOk;
}

int cmd_two_squares(const std::string& file, const Common& c) {
  const auto f = binary_form_from_json(read_json(file));
  const auto res = enumerate_two_squares(f.cast<double>(), c.cluster_radius);
  Json reps = Json::array();
  double worst = 0.0;
  for (const auto& r : res.representations) {
    reps.push_back(Json{{"p", to_json(r.p)}, {"q", to_json(r.q)}, {"residual", r.residual}});
    worst = std::max(worst, r.residual);
  }
  Json j{{"form", to_json(f)},
         {"count", res.representations.size()},
         {"expected", res.expected_count()},
         {"conjugate_pairs", res.conjugate_pairs},
         {"simple_roots", res.simple_roots},
         {"representations", reps}};
  emit(j, c.json_out, std::to_string(res.representations.size()) + " representations\n");
  return worst <= c.residual_tol * std::max(1.0, f.max_abs_coeff()) ? kOk : kVerify;
}

int cmd_table(const Common& c, const std::string& surfaces, bool include_veronese) {
  std::vector<SurfaceSpec> specs;
  if (surfaces.empty()) {
    specs = {SurfaceSpec::cone_rnc(4), SurfaceSpec::scroll(2, 2), SurfaceSpec::scroll(3, 1)};
  } else {
    std::stringstream ss(surfaces);
    std::string item, pending;
    // Commas also separate scroll arguments; rejoin on unbalanced parentheses.
    while (std::getline(ss, item, ',')) {
      pending += pending.empty() ? item : "," + item;
      if (std::count(pending.begin(), pending.end(), '(') == std::count(pending.begin(), pending.end(), ')')) {
        specs.push_back(parse_surface(pending));
        pending.clear();
      }
    }
    if (!pending.empty()) specs.push_back(parse_surface(pending));
  }
  if (include_veronese) {
    bool present = false;
    for (const auto& s : specs) present = present || s.kind == SurfaceKind::Veronese;
    if (!present) specs.push_back(SurfaceSpec::veronese());
  }
  Json rows = Json::array();
  std::cout << std::left << std::setw(14) << "surface" << std::setw(8) << "psd" << std::setw(8) << "real"
            << std::setw(10) << "complex" << "expected\n";
  for (const auto& spec : specs) {
    const auto row = table_row(spec, c.seed, c.pipeline());
    auto cell = [&](int got, std::optional<int> want) {
      std::string s = std::to_string(got);
      if (want && *want != got) s += "*";
      return s;
    };
    std::optional<int> ep, er, ec;
    if (row.expected) {
      ep = row.expected->psd;
      er = row.expected->real;
      ec = row.expected->complex;
    }
    std::cout << std::setw(14) << spec.name() << std::setw(8) << cell(row.psd, ep) << std::setw(8)
              << cell(row.real, er) << std::setw(10) << cell(row.complex, ec);
    if (row.expected) std::cout << *ep << "/" << *er << "/" << *ec;
    std::cout << "\n";
    Json rj{{"surface", to_json(spec)}, {"psd", row.psd},   {"real", row.real},
            {"complex", row.complex},   {"matches", row.matches}, {"warnings", row.warnings}};
    if (row.expected) rj["expected"] = {{"psd", *ep}, {"real", *er}, {"complex", *ec}};
    rows.push_back(std::move(rj));
  }
  if (!c.json_out.empty()) emit(Json{{"seed", c.seed}, {"rows", rows}}, c.json_out, "");
  return kOk;
}

struct VerifyOutcome {
  int count = 0;
  int failed = 0;
  double max_residual = 0.0;
};

void verify_one(const Json& cj, double tol, VerifyOutcome& out) {
  const auto cert = certificate_from_json(cj);
  const auto basis = monomial_basis(cert.surface, 1);
  ++out.count;
  bool ok = true;
  if (cert.exact) {
    for (const auto& l : cert.exact_rep.forms) coefficients_in_basis(l, basis);
    ok = verifies_exactly(cert.form, cert.exact_rep);
    out.max_residual = std::max(out.max_residual, verify_representation(cert.form, cert.exact_rep));
  } else {
    for (const auto& l : cert.float_rep.forms) coefficients_in_basis(l, basis);
    const double r = verify_representation(cert.form.cast<double>(), cert.float_rep);
    out.max_residual = std::max(out.max_residual, r);
    ok = r <= tol * std::max(1.0, cert.form.max_abs_coeff());
  }
  if (!ok) ++out.failed;
}

int cmd_verify(const std::string& file, const Common& c) {
  const Json j = read_json(file);
  VerifyOutcome out;
  if (j.is_object() && j.contains("certificates")) {
    for (const auto& cj : j.at("certificates")) verify_one(cj, c.residual_tol, out);
  } else if (j.is_array()) {
    for (const auto& cj : j) verify_one(cj, c.residual_tol, out);
  } else {
    verify_one(j, c.residual_tol, out);
  }
  Json r{{"certificates", out.count}, {"failed", out.failed}, {"max_residual", out.max_residual},
         {"verified", out.failed == 0}};
  std::ostringstream summary;
  summary << out.count - out.failed << " of " << out.count << " certificates verified\n";
  emit(r, c.json_out, summary.str());
  return out.failed == 0 ? kOk : kVerify;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"minsos: low-rank sums of squares on surfaces of minimal degree"};
  app.require_subcommand(1);
  Common c;
  std::string file, surface, surfaces, curves;
  bool include_veronese = false;

  auto* gram = app.add_subcommand("gram-space", "affine family of Gram matrices of a form");
  gram->add_option("form", file, "form JSON file ('-' for stdin)")->required();
  gram->add_option("--surface", surface, "scroll(d,e), veronese, cone_rnc(d), rnc(d) or surface JSON");
  gram->add_option("--json-out", c.json_out, "write JSON here instead of stdout");

  auto* en = app.add_subcommand("enumerate", "all rank-(dim+1) Gram matrices with certificates");
  en->add_option("form", file, "form JSON file ('-' for stdin)")->required();
  en->add_option("--surface", surface, "scroll(d,e), veronese, cone_rnc(d), rnc(d) or surface JSON");
  add_solver_flags(en, c);
  en->add_option("--json-out", c.json_out, "write the report here instead of stdout");
  en->add_option("--dump-curve-samples", curves, "CSV of real points of V(f) and of the first psd certificate");

  auto* fac = app.add_subcommand("factor", "A = B B^T with n + 1 columns for a psd matrix polynomial");
  fac->add_option("matrix", file, "matrix JSON file ('-' for stdin)")->required();
  fac->add_option("--residual-tol", c.residual_tol, "relative residual tolerance");
  fac->add_option("--json-out", c.json_out, "write JSON here instead of stdout");

  auto* two = app.add_subcommand("two-squares", "inequivalent f = p^2 + q^2 for a nonnegative binary form");
  two->add_option("form", file, "binary form JSON file ('-' for stdin)")->required();
  two->add_option("--cluster-radius", c.cluster_radius, "root clustering radius");
  two->add_option("--residual-tol", c.residual_tol, "relative residual tolerance");
  two->add_option("--json-out", c.json_out, "write JSON here instead of stdout");

  auto* table = app.add_subcommand("table", "counts of rank-three Gram matrices for seeded generic forms");
  add_solver_flags(table, c);
  table->add_option("--surfaces", surfaces, "comma-separated surfaces (default cone_rnc(4),scroll(2,2),scroll(3,1))");
  table->add_flag("--include-veronese", include_veronese, "add the Veronese row");
  table->add_option("--json-out", c.json_out, "also write the rows as JSON");

  auto* ver = app.add_subcommand("verify", "re-check certificates by polynomial expansion");
  ver->add_option("certificate", file, "certificate or report JSON ('-' for stdin)")->required();
  ver->add_option("--residual-tol", c.residual_tol, "relative residual tolerance");
  ver->add_option("--json-out", c.json_out, "write JSON here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }

  try {
    if (*gram) return cmd_gram_space(file, surface, c.json_out);
    if (*en) return cmd_enumerate(file, surface, c, curves);
    if (*fac) return cmd_factor(file, c);
    if (*two) return cmd_two_squares(file, c);
    if (*table) return cmd_table(c, surfaces, include_veronese);
    if (*ver) return cmd_verify(file, c);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const Json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  }
  return kInput;
}
