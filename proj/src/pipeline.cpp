#include "minsos/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <iomanip>
#include <sstream>

namespace minsos {

bool EnumerationReport::all_verified() const {
  for (const auto& c : certificates)
    if (!c.verified || (c.exact && !c.exact_verified)) return false;
  return true;
}

double EnumerationReport::max_residual() const {
  double m = 0.0;
  for (const auto& c : certificates) m = std::max(m, c.residual);
  return m;
}

namespace {

int rank_for(const SurfaceSpec& spec) { return spec.dim() + 1; }

std::vector<double> real_theta(const SolutionPoint& p) {
  std::vector<double> th(p.theta.size());
  for (int j = 0; j < p.theta.size(); ++j) th[j] = p.theta(j).real();
  return th;
}

std::optional<RepresentationQ> exact_at(const GramSpace& space, const SolutionPoint& p, int rank, long max_den) {
  std::vector<Rational> th;
  for (int j = 0; j < p.theta.size(); ++j) {
    auto q = rationalize(p.theta(j).real(), max_den, 1e-9);
    if (!q) return std::nullopt;
    th.push_back(*q);
  }
  const QMatrix g = gram_at(space, th);
  if (g.rank() != rank) return std::nullopt;
  return exact_representation(space, g);
}

DegenerationReport degeneration(const SolutionSet& sols, int found, const std::optional<ExpectedCounts>& expected) {
  DegenerationReport d;
  if (expected) d.missing = std::max(0, expected->complex - found);
  d.infinity_endpoints = static_cast<int>(sols.at_infinity.size());
  d.singular_endpoints = static_cast<int>(sols.singular.size());
  d.notes.push_back(std::to_string(d.infinity_endpoints) + " paths ended at infinity, " +
                    std::to_string(d.singular_endpoints) + " at singular points");
  return d;
}

// Continues the solutions of f + eps0 h to eps -> 0. The kernel does not
// depend on the form, so eps enters as one more direction G0(h) next to the
// K_i. |eps| shrinks geometrically while its phase leaves the real axis,
// which keeps the path off the real branch points.
void probe(DegenerationReport& d, const BiformQ& f, const SurfaceSpec& spec, const GramSpace& space,
           const std::vector<SolutionPoint>& found, int rank, const PipelineOptions& options) {
  Rng rng(options.enumeration.seed ^ 0x5DEECE66DULL);
  const BiformQ h = random_generic_positive_form(spec, rng);
  const GramSpace hspace = build_gram_space(h, spec);
  const auto start = enumerate_rank_points(build_gram_space(f + h * make_rational(1, 10), spec), rank,
                                           options.enumeration);
  d.perturbed_count = static_cast<int>(start.points.size());
  GramSpace ext = space;
  ext.kernel.insert(ext.kernel.begin(), hspace.g0);
  const MinorSystem sys(ext, rank, rng.next(), false);
  const int k = space.dim();
  const double le0 = -1.0, le1 = -9.0;
  auto eps_at = [&](double u) {
    return std::pow(10.0, le0 + u * (le1 - le0)) * std::exp(Complex(0.0, M_PI / 4 * std::sin(M_PI * u)));
  };
  auto deps_du = [&](double u) {
    const Complex e = eps_at(u);
    return e * Complex((le1 - le0) * std::log(10.0), M_PI * M_PI / 4 * std::cos(M_PI * u));
  };
  Eigen::VectorXcd z(k + 2), fv(k + 1);
  Eigen::MatrixXcd jac(k + 1, k + 2);
  // Newton in theta at fixed eps; returns false unless it converges.
  auto correct = [&](Complex eps, Eigen::VectorXcd& theta) {
    for (int it = 0; it < 6; ++it) {
      z(0) = 1.0;
      z(1) = eps;
      z.tail(k) = theta;
      sys.evaluate(z, fv, jac);
      const Eigen::VectorXcd delta = jac.rightCols(k).fullPivLu().solve(-fv);
      if (!delta.allFinite()) return false;
      theta += delta;
      if (delta.norm() <= 1e-10 * std::max(1.0, theta.norm())) return true;
    }
    return false;
  };
  std::vector<double> samples;
  for (double le = -1.5; le >= le1 - 1e-9; le -= 0.5) samples.push_back(std::pow(10.0, le));
  for (const auto& p : start.points) {
    Eigen::VectorXcd theta = p.theta;
    double u = 0.0, du = 0.01;
    std::vector<double> norms;
    size_t next_sample = 0;
    bool lost = false;
    while (u < 1.0 && !lost) {
      const double un = std::min(1.0, u + du);
      z(0) = 1.0;
      z(1) = eps_at(u);
      z.tail(k) = theta;
      sys.evaluate(z, fv, jac);
      const Eigen::VectorXcd tangent = jac.rightCols(k).fullPivLu().solve(-jac.col(1) * deps_du(u));
      Eigen::VectorXcd guess = theta + tangent * (un - u);
      const Eigen::VectorXcd predicted = guess;
      if (tangent.allFinite() && correct(eps_at(un), guess) &&
          (guess - predicted).norm() <= 0.1 * std::max(1.0, theta.norm())) {
        theta = guess;
        u = un;
        du = std::min(0.05, du * 1.5);
        while (next_sample < samples.size() && std::abs(eps_at(u)) <= samples[next_sample] * (1 + 1e-9)) {
          norms.push_back(theta.norm());
          ++next_sample;
        }
        if (theta.norm() > 1e10) lost = true;
      } else {
        du /= 2;
        if (du < 1e-7) lost = true;
      }
    }
    std::vector<double> eps_seen(samples.begin(), samples.begin() + norms.size());
    if (lost && u > 0) {
      eps_seen.push_back(std::abs(eps_at(u)));
      norms.push_back(theta.norm());
    }
    bool matched = false;
    if (!lost)
      for (const auto& q : found)
        matched = matched || (q.theta - theta).norm() <= 1e-3 * std::max(1.0, theta.norm());
    if (matched) {
      ++d.converged;
      continue;
    }
    EscapingSolution e;
    e.eps = eps_seen;
    e.norms = norms;
    if (norms.size() >= 2)
      e.exponent = std::log(norms.back() / norms[norms.size() - 2]) /
                   std::log(eps_seen[norms.size() - 2] / eps_seen[norms.size() - 1]);
    e.real = p.real;
    Eigen::MatrixXd km = Eigen::MatrixXd::Zero(space.size(), space.size());
    const Eigen::VectorXcd dir = theta / theta.norm();
    // Real directions up to a unit phase.
    Eigen::Index big = 0;
    dir.cwiseAbs().maxCoeff(&big);
    const Eigen::VectorXcd rdir = dir * (std::abs(dir(big)) / dir(big));
    for (int j = 0; j < k; ++j) km += rdir(j).real() * space.kernel[j].to_double();
    e.direction = inertia(km, 1e-4);
    d.escaping.push_back(e);
  }
  std::ostringstream os;
  os << "continuing the " << d.perturbed_count << " solutions of f + eps h from eps = 0.1 to 1e-9: " << d.converged
     << " converge to solutions of f, " << d.escaping.size() << " do not";
  d.notes.push_back(os.str());
  for (const auto& e : d.escaping) {
    std::ostringstream es;
    es << std::setprecision(3) << (e.real ? "real" : "complex") << " solution with |theta| =";
    for (size_t i = 0; i < e.norms.size(); ++i) es << " " << e.norms[i] << " (|eps| " << e.eps[i] << ")";
    es << ", growth exponent " << e.exponent << ", limiting kernel direction of inertia (" << e.direction.plus << ","
       << e.direction.minus << "," << e.direction.zero << ")";
    d.notes.push_back(es.str());
  }
}

void compare_counts(EnumerationReport& r) {
  if (!r.expected) return;
  const auto& e = *r.expected;
  const auto& c = r.counts;
  auto check = [&](const char* what, int got, int want) {
    if (got != want)
      r.warnings.push_back(std::string(what) + " count " + std::to_string(got) + " differs from the generic value " +
                           std::to_string(want) + (got < want ? "; the form is not generic" : ""));
  };
  check("complex", c.complex, e.complex);
  check("real", c.real, e.real);
  check("psd", c.psd, e.psd);
  check("indefinite", c.indefinite, e.indefinite);
}

// The psd rank-2 Gram matrices of a binary form are exactly its two-squares
// representations; counts and Gram matrices must agree.
void cross_check_two_squares(EnumerationReport& r, const BinaryFormQ& g, const GramSpace& base_space,
                             double cluster_radius) {
  TwoSquaresResult ts;
  try {
    ts = enumerate_two_squares(g.cast<double>(), cluster_radius);
  } catch (const Error& e) {
    r.warnings.push_back(std::string("two-squares cross-check skipped: ") + e.what());
    return;
  }
  r.two_squares_count = static_cast<int>(ts.representations.size());
  if (*r.two_squares_count != r.counts.psd) {
    r.warnings.push_back("two-squares cross-check: " + std::to_string(*r.two_squares_count) +
                         " representations against " + std::to_string(r.counts.psd) + " psd points");
    return;
  }
  const double scale = std::max(1.0, g.max_abs_coeff());
  for (const auto& rep : ts.representations) {
    const Eigen::MatrixXd gts = two_squares_gram(rep);
    bool found = false;
    for (size_t i = 0; i < r.counts.real_point_index.size() && !found; ++i) {
      const auto& p = r.points[r.counts.real_point_index[i]];
      if (p.inertia.minus != 0) continue;
      const Eigen::MatrixXd gp = gram_at(base_space, real_theta(p));
      if ((gp - gts).cwiseAbs().maxCoeff() <= 1e-6 * scale) found = true;
    }
    if (!found) {
      r.warnings.push_back("two-squares cross-check: a representation has no matching psd point");
      return;
    }
  }
}

}  // namespace

EnumerationReport enumerate(const BiformQ& f, const SurfaceSpec& spec, const PipelineOptions& options) {
  if (!is_quadratic_form_on(f, spec))
    throw Error(ErrorKind::NotAQuadraticForm, "form is not a quadratic form on " + spec.name());
  EnumerationReport r;
  r.surface = spec;
  r.form = f;
  r.rank = rank_for(spec);
  r.expected = expected_counts(spec);
  if (spec.kind == SurfaceKind::Scroll || spec.kind == SurfaceKind::ConeOverRNC) {
    r.genericity = genericity_check(f, spec);
  } else if (spec.kind == SurfaceKind::RationalNormalCurve) {
    r.genericity.discriminant_squarefree = is_squarefree(BinaryFormQ::from_biform(f));
    r.genericity.smooth_in_p1xp1 = r.genericity.discriminant_squarefree;
    if (!r.genericity.discriminant_squarefree) r.genericity.notes.push_back("binary form has a repeated root");
  } else {
    r.genericity.applicable = false;
  }

  std::optional<ConeSplit> parts;
  GramSpace space;
  int solve_rank = r.rank;
  if (spec.kind == SurfaceKind::ConeOverRNC) {
    parts = split(f, spec);
    r.reduced = reduce(*parts);
    r.via_cone = true;
    space = build_gram_space(r.reduced->to_biform(0), SurfaceSpec::rnc(spec.d));
    solve_rank = 2;
  } else {
    space = build_gram_space(f, spec);
  }
  r.kernel_dim = space.dim();

  const SolutionSet sols = enumerate_rank_points(space, solve_rank, options.enumeration);
  r.points = sols.points;
  r.stats = sols.stats;
  r.gamma = sols.gamma;
  r.counts = classify(space, sols);
  if (!r.genericity.generic())
    r.warnings.push_back("input is not generic: " +
                         (r.genericity.notes.empty() ? std::string("discriminant test failed") : r.genericity.notes[0]));
  compare_counts(r);
  r.degeneration = degeneration(sols, r.counts.complex, r.expected);
  if (r.degeneration.missing > 0 && options.probe_degeneration && !parts)
    probe(r.degeneration, f, spec, space, r.points, solve_rank, options);

  if (spec.kind == SurfaceKind::ConeOverRNC)
    cross_check_two_squares(r, *r.reduced, space, options.enumeration.cluster_radius);
  else if (spec.kind == SurfaceKind::RationalNormalCurve)
    cross_check_two_squares(r, BinaryFormQ::from_biform(f), space, options.enumeration.cluster_radius);

  const BiformD fd = f.cast<double>();
  const double tol = options.enumeration.residual_tol * std::max(1.0, f.max_abs_coeff());
  for (size_t i = 0; i < r.counts.real_point_index.size(); ++i) {
    Certificate c;
    c.point = r.counts.real_point_index[i];
    const auto& p = r.points[c.point];
    c.inertia = p.inertia;
    c.rep = r.counts.real_representations[i];
    if (parts) {
      c.rep = lift(c.rep, *parts);
      ++c.inertia.plus;
    }
    c.residual = verify_representation(fd, c.rep);
    c.verified = c.residual <= tol;
    if (options.exact) {
      if (auto q = exact_at(space, p, solve_rank, options.exact_max_den)) {
        c.exact = parts ? lift(*q, *parts) : *q;
        c.exact_verified = verifies_exactly(f, *c.exact);
      }
    }
    r.certificates.push_back(std::move(c));
  }
  for (const auto& c : r.certificates)
    if (!c.verified) r.warnings.push_back("certificate at point " + std::to_string(c.point) + " failed verification");
  return r;
}

Json to_json(const EnumerationReport& r, bool with_certificates) {
  Json j;
  j["surface"] = to_json(r.surface);
  j["form"] = to_json(r.form);
  j["rank"] = r.rank;
  j["kernel_dim"] = r.kernel_dim;
  j["via_cone"] = r.via_cone;
  if (r.reduced) j["reduced_binary_form"] = to_json(*r.reduced);
  j["counts"] = {{"complex", r.counts.complex},
                 {"real", r.counts.real},
                 {"psd", r.counts.psd},
                 {"indefinite", r.counts.indefinite}};
  if (r.expected)
    j["expected"] = {{"complex", r.expected->complex},
                     {"real", r.expected->real},
                     {"psd", r.expected->psd},
                     {"indefinite", r.expected->indefinite}};
  j["genericity"] = {{"applicable", r.genericity.applicable},
                     {"discriminant_squarefree", r.genericity.discriminant_squarefree},
                     {"notes", r.genericity.notes}};
  j["paths"] = to_json(r.stats);
  j["gamma"] = {r.gamma.real(), r.gamma.imag()};
  Json pts = Json::array();
  for (const auto& p : r.points) {
    Json pj;
    Json th = Json::array();
    for (int i = 0; i < p.theta.size(); ++i) {
      if (p.real) th.push_back(p.theta(i).real());
      else th.push_back({p.theta(i).real(), p.theta(i).imag()});
    }
    pj["theta"] = th;
    pj["real"] = p.real;
    if (p.real) pj["inertia"] = to_json(p.inertia);
    pj["residual"] = p.residual;
    pts.push_back(std::move(pj));
  }
  j["points"] = pts;
  if (r.two_squares_count) j["two_squares_count"] = *r.two_squares_count;
  Json esc = Json::array();
  for (const auto& e : r.degeneration.escaping)
    esc.push_back({{"eps", e.eps},
                   {"norms", e.norms},
                   {"exponent", e.exponent},
                   {"real", e.real},
                   {"direction_inertia", to_json(e.direction)}});
  j["degeneration"] = {{"missing", r.degeneration.missing},
                       {"infinity_endpoints", r.degeneration.infinity_endpoints},
                       {"singular_endpoints", r.degeneration.singular_endpoints},
                       {"perturbed_count", r.degeneration.perturbed_count},
                       {"converged", r.degeneration.converged},
                       {"escaping", esc},
                       {"notes", r.degeneration.notes}};
  j["warnings"] = r.warnings;
  if (with_certificates) {
    const auto basis = monomial_basis(r.surface, 1);
    Json certs = Json::array();
    for (const auto& c : r.certificates) {
      Json cj = c.exact ? certificate_json(r.form, r.surface, *c.exact, basis, 0.0)
                        : certificate_json(r.form, r.surface, c.rep, basis, c.residual);
      cj["point"] = c.point;
      cj["inertia"] = to_json(c.inertia);
      cj["verified"] = c.exact ? c.exact_verified : c.verified;
      certs.push_back(std::move(cj));
    }
    j["certificates"] = certs;
  }
  return j;
}

BiformQ form_from_gram(const MonomialBasis& basis, const QMatrix& g) {
  BiformQ f(basis.nx, {2 * basis.degree.st, 2 * basis.degree.x});
  Exponent e;
  for (int i = 0; i < basis.size(); ++i)
    for (int j = 0; j < basis.size(); ++j) {
      if (sgn(g(i, j)) == 0) continue;
      e = basis.monomials[i];
      for (size_t v = 0; v < e.size(); ++v) e[v] += basis.monomials[j][v];
      f.add_term(e, g(i, j));
    }
  return f;
}

namespace {

void add_outer(QMatrix& g, const std::vector<long>& v) {
  for (size_t i = 0; i < v.size(); ++i)
    for (size_t j = 0; j < v.size(); ++j) g(i, j) += Rational(v[i] * v[j]);
}

}  // namespace

BiformQ random_generic_positive_form(const SurfaceSpec& spec, Rng& rng) {
  const auto basis = monomial_basis(spec, 1);
  const int n = basis.size();
  for (int attempt = 0; attempt < 1000; ++attempt) {
    QMatrix g(n, n);
    std::vector<long> v(n);
    for (int k = 0; k < 3; ++k) {
      for (auto& x : v) x = rng.integer(-5, 5);
      add_outer(g, v);
    }
    for (int k = 0; k < n; ++k) {
      for (auto& x : v) x = rng.integer(-2, 2);
      add_outer(g, v);
    }
    if (exact_inertia(g).plus != n) continue;
    BiformQ f = form_from_gram(basis, g);
    if (spec.kind == SurfaceKind::Scroll || spec.kind == SurfaceKind::ConeOverRNC) {
      if (!genericity_check(f, spec).generic()) continue;
    } else if (spec.kind == SurfaceKind::RationalNormalCurve) {
      if (!is_squarefree(BinaryFormQ::from_biform(f))) continue;
    }
    return f;
  }
  throw Error(ErrorKind::InputError, "could not sample a generic positive form on " + spec.name());
}

BinaryFormQ random_positive_binary_form(int d, Rng& rng) {
  if (d < 1) throw Error(ErrorKind::InputError, "degree 2d needs d >= 1");
  for (;;) {
    std::vector<std::pair<long, long>> used;
    BinaryFormQ f(std::vector<Rational>{Rational(1)});
    for (int k = 0; k < d; ++k) {
      std::pair<long, long> ab;
      do {
        ab = {rng.integer(-5, 5), rng.integer(1, 4)};
      } while (std::find(used.begin(), used.end(), ab) != used.end());
      used.push_back(ab);
      // (s - a t)^2 + b^2 t^2
      const long a = ab.first, b = ab.second;
      BinaryFormQ q(std::vector<Rational>{Rational(a * a + b * b), Rational(-2 * a), Rational(1)});
      f = f * q;
    }
    if (is_squarefree(f)) return f;
  }
}

SymMatrixPoly random_psd_matrix_poly(int n, Rng& rng, int max_half_degree) {
  if (n < 1) throw Error(ErrorKind::InputError, "n must be positive");
  for (;;) {
    std::vector<int> deg(n);
    for (auto& d : deg) d = static_cast<int>(rng.integer(0, max_half_degree));
    const int m = static_cast<int>(rng.integer(1, 2 * n));
    std::vector<std::vector<BinaryFormQ>> b(n);
    for (int i = 0; i < n; ++i)
      for (int c = 0; c < m; ++c) {
        std::vector<Rational> co(deg[i] + 1);
        for (auto& x : co) x = Rational(rng.integer(-3, 3));
        b[i].push_back(BinaryFormQ(std::move(co)));
      }
    std::vector<BinaryFormQ> entries;
    bool zero_diag = false;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        BinaryFormQ a(deg[i] + deg[j]);
        for (int c = 0; c < m; ++c) a += b[i][c] * b[j][c];
        if (i == j && a.is_zero()) zero_diag = true;
        entries.push_back(std::move(a));
      }
    if (!zero_diag) return SymMatrixPoly(n, std::move(entries));
  }
}

TableRow table_row(const SurfaceSpec& spec, uint64_t seed, const PipelineOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  uint64_t salt = 1469598103934665603ULL;
  for (char ch : spec.name()) salt = (salt ^ static_cast<unsigned char>(ch)) * 1099511628211ULL;
  Rng rng = Rng(seed).fork(salt);
  const BiformQ f = random_generic_positive_form(spec, rng);
  PipelineOptions opts = options;
  opts.enumeration.seed = rng.next();
  const auto rep = enumerate(f, spec, opts);
  TableRow row;
  row.surface = spec;
  row.psd = rep.counts.psd;
  row.real = rep.counts.real;
  row.complex = rep.counts.complex;
  row.expected = rep.expected;
  row.matches = rep.expected && rep.expected->psd == row.psd && rep.expected->real == row.real &&
                rep.expected->complex == row.complex;
  row.warnings = rep.warnings;
  row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return row;
}

std::string curve_samples_csv(const BiformQ& f, const RepresentationD* rep, double lo, double hi, int samples) {
  if (f.nx() != 2 || f.bidegree().x != 2)
    throw Error(ErrorKind::InputError, "curve samples need a form of x-degree 2 in (x, y)");
  const auto q = quadratic_parts(f.cast<double>());
  std::ostringstream os;
  os << std::setprecision(10) << "curve,s,x\n";
  for (int k = 0; k < samples; ++k) {
    const double s = lo + (hi - lo) * k / std::max(1, samples - 1);
    const double a = q.a.eval_at(s, 1.0), b = q.b.eval_at(s, 1.0), c = q.c.eval_at(s, 1.0);
    if (std::abs(a) < 1e-12) {
      if (std::abs(b) > 1e-12) os << "f," << s << "," << -c / (2 * b) << "\n";
      continue;
    }
    const double disc = b * b - a * c;
    if (disc < 0) continue;
    os << "f," << s << "," << (-b + std::sqrt(disc)) / a << "\n";
    os << "f," << s << "," << (-b - std::sqrt(disc)) / a << "\n";
  }
  if (!rep) return os.str();
  for (int i = 0; i < rep->size(); ++i) {
    const auto& l = rep->forms[i];
    if (l.nx() != 2) continue;
    for (int k = 0; k < samples; ++k) {
      const double s = lo + (hi - lo) * k / std::max(1, samples - 1);
      double alpha = 0, beta = 0;
      for (const auto& [e, c] : l.terms()) {
        const double m = std::pow(s, e[0]) * c;
        if (e[2] == 1) alpha += m;
        else beta += m;
      }
      if (std::abs(alpha) > 1e-12) os << "l" << i << "," << s << "," << -beta / alpha << "\n";
    }
  }
  return os.str();
}

}  // namespace minsos
