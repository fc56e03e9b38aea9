#include "minsos/serialize.hpp"

#include <regex>

namespace minsos {

namespace {

Json rational_json(const Rational& q) {
  Json j;
  const mpz_class& num = q.get_num();
  const mpz_class& den = q.get_den();
  if (num.fits_slong_p()) j["num"] = num.get_si();
  else j["num"] = num.get_str();
  if (den.fits_slong_p()) j["den"] = den.get_si();
  else j["den"] = den.get_str();
  return j;
}

std::string rational_string(const Rational& q) { return q.get_str(); }

template <class T, class F>
Json biform_json(const Biform<T>& f, F&& coeff) {
  Json j;
  j["degST"] = f.bidegree().st;
  j["degXY"] = f.bidegree().x;
  if (f.nx() != 2) j["nx"] = f.nx();
  Json terms = Json::array();
  for (const auto& [e, c] : f.terms()) {
    Json t;
    t["s"] = e[0];
    t["t"] = e[1];
    if (f.nx() == 2) {
      t["x"] = e[2];
      t["y"] = e[3];
    } else if (f.nx() > 0) {
      t["xexp"] = std::vector<int>(e.begin() + 2, e.end());
    }
    const Json cj = coeff(c);
    for (auto& [k, v] : cj.items()) t[k] = v;
    terms.push_back(std::move(t));
  }
  j["terms"] = std::move(terms);
  return j;
}

mpz_class integer_from_json(const Json& j) {
  if (j.is_number_integer()) return mpz_class(std::to_string(j.get<long long>()));
  if (j.is_string()) {
    mpz_class z;
    if (z.set_str(j.get<std::string>(), 10) != 0) throw Error(ErrorKind::InputError, "bad integer " + j.dump());
    return z;
  }
  throw Error(ErrorKind::InputError, "expected an integer, got " + j.dump());
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(ErrorKind::InputError, std::string("missing field '") + key + "'");
  return j.at(key);
}

int int_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer()) throw Error(ErrorKind::InputError, std::string("field '") + key + "' must be an integer");
  return v.get<int>();
}

template <class T, class F>
Biform<T> biform_parse(const Json& j, F&& coeff) {
  const int nx = j.contains("nx") ? int_field(j, "nx") : 2;
  if (nx < 0) throw Error(ErrorKind::InputError, "nx must be nonnegative");
  Biform<T> f(nx, {int_field(j, "degST"), int_field(j, "degXY")});
  const Json& terms = field(j, "terms");
  if (!terms.is_array()) throw Error(ErrorKind::InputError, "'terms' must be an array");
  for (const auto& t : terms) {
    Exponent e(nx + 2, 0);
    e[0] = int_field(t, "s");
    e[1] = int_field(t, "t");
    if (nx == 2) {
      e[2] = t.contains("x") ? int_field(t, "x") : 0;
      e[3] = t.contains("y") ? int_field(t, "y") : 0;
    } else if (nx > 0) {
      const auto xs = field(t, "xexp").get<std::vector<int>>();
      if (static_cast<int>(xs.size()) != nx) throw Error(ErrorKind::InputError, "xexp has the wrong length");
      std::copy(xs.begin(), xs.end(), e.begin() + 2);
    }
    for (int v : e)
      if (v < 0) throw Error(ErrorKind::InputError, "negative exponent");
    f.add_term(e, coeff(t));
  }
  return f;
}

}  // namespace

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(integer_from_json(j));
  if (j.is_object() && j.contains("num")) {
    const mpz_class num = integer_from_json(j.at("num"));
    const mpz_class den = j.contains("den") ? integer_from_json(j.at("den")) : mpz_class(1);
    if (den == 0) throw Error(ErrorKind::InputError, "zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
  }
  throw Error(ErrorKind::InputError, "expected a rational, got " + j.dump());
}

Json to_json(const BiformQ& f) {
  return biform_json(f, [](const Rational& c) { return rational_json(c); });
}

Json to_json(const BiformD& f) {
  return biform_json(f, [](double c) { return Json{{"value", c}}; });
}

Json to_json(const BiformC& f) {
  return biform_json(f, [](const Complex& c) { return Json{{"re", c.real()}, {"im", c.imag()}}; });
}

Json to_json(const BinaryFormQ& f) {
  Json coeffs = Json::array();
  for (const auto& c : f.coeffs()) coeffs.push_back(rational_string(c));
  return Json{{"deg", f.degree()}, {"coeffs", coeffs}};
}

Json to_json(const BinaryFormD& f) { return Json{{"deg", f.degree()}, {"coeffs", f.coeffs()}}; }

Json to_json(const SurfaceSpec& spec) {
  switch (spec.kind) {
    case SurfaceKind::Scroll: return Json{{"kind", "scroll"}, {"d", spec.d}, {"e", spec.e}};
    case SurfaceKind::Veronese: return Json{{"kind", "veronese"}};
    case SurfaceKind::ConeOverRNC: return Json{{"kind", "cone_rnc"}, {"d", spec.d}};
    case SurfaceKind::RationalNormalCurve: return Json{{"kind", "rnc"}, {"d", spec.d}};
    case SurfaceKind::Prism: return Json{{"kind", "prism"}, {"heights", spec.heights}};
  }
  return Json();
}

Json to_json(const QMatrix& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(rational_string(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const Inertia& in) { return Json{{"plus", in.plus}, {"minus", in.minus}, {"zero", in.zero}}; }

Json to_json(const GramSpace& space) {
  Json basis = Json::array();
  for (const auto& e : space.basis.monomials) basis.push_back(e);
  Json kernel = Json::array();
  for (const auto& k : space.kernel) kernel.push_back(to_json(k));
  return Json{{"form", to_json(space.form)},
              {"basis", basis},
              {"basis_size", space.size()},
              {"quadratic_monomials", space.quadratic.size()},
              {"kernel_dim", space.dim()},
              {"g0", to_json(space.g0)},
              {"kernel", kernel}};
}

Json to_json(const PathStats& st) {
  return Json{{"tracked", st.tracked},   {"finite", st.finite},     {"diverged", st.diverged},
              {"singular", st.singular}, {"failed", st.failed},     {"rejected", st.rejected},
              {"duplicates", st.duplicates}, {"recovered", st.recovered}, {"collisions", st.collisions}, {"irregular", st.irregular}, {"rescue_runs", st.rescue_runs}, {"rescued", st.rescued}, {"attempts", st.attempts}};
}

BiformQ biform_from_json(const Json& j) {
  return biform_parse<Rational>(j, [](const Json& t) {
    if (t.contains("num")) return rational_from_json(t);
    if (t.contains("coeff")) return rational_from_json(t.at("coeff"));
    throw Error(ErrorKind::InputError, "exact term needs num/den");
  });
}

BiformD biform_d_from_json(const Json& j) {
  return biform_parse<double>(j, [](const Json& t) {
    if (t.contains("value")) return t.at("value").get<double>();
    if (t.contains("re")) return t.at("re").get<double>();
    if (t.contains("num")) return rational_from_json(t).get_d();
    throw Error(ErrorKind::InputError, "term has no coefficient");
  });
}

BinaryFormQ binary_form_from_json(const Json& j) {
  if (j.is_object() && j.contains("coeffs")) {
    const Json& cs = j.at("coeffs");
    if (!cs.is_array() || cs.empty()) throw Error(ErrorKind::InputError, "'coeffs' must be a nonempty array");
    std::vector<Rational> c;
    for (const auto& v : cs) c.push_back(rational_from_json(v));
    if (j.contains("deg") && int_field(j, "deg") + 1 != static_cast<int>(c.size()))
      throw Error(ErrorKind::InputError, "'deg' does not match the coefficient count");
    return BinaryFormQ(std::move(c));
  }
  Json copy = j;
  if (!copy.contains("nx")) copy["nx"] = 0;
  if (!copy.contains("degXY")) copy["degXY"] = 0;
  if (copy["nx"].get<int>() == 2) {
    for (auto& t : copy["terms"]) {
      if ((t.contains("x") && t["x"] != 0) || (t.contains("y") && t["y"] != 0))
        throw Error(ErrorKind::InputError, "binary form has x or y terms");
      t.erase("x");
      t.erase("y");
    }
    copy["nx"] = 0;
  }
  return BinaryFormQ::from_biform(biform_from_json(copy));
}

SurfaceSpec surface_from_json(const Json& j) {
  if (j.is_string()) return parse_surface(j.get<std::string>());
  const std::string kind = field(j, "kind").get<std::string>();
  if (kind == "scroll") return SurfaceSpec::scroll(int_field(j, "d"), int_field(j, "e"));
  if (kind == "veronese") return SurfaceSpec::veronese();
  if (kind == "cone_rnc") return SurfaceSpec::cone_rnc(int_field(j, "d"));
  if (kind == "rnc") return SurfaceSpec::rnc(int_field(j, "d"));
  if (kind == "prism") return SurfaceSpec::prism(field(j, "heights").get<std::vector<int>>());
  throw Error(ErrorKind::InputError, "unknown surface kind '" + kind + "'");
}

SurfaceSpec parse_surface(const std::string& text) {
  if (!text.empty() && text.front() == '{') {
    Json j;
    try {
      j = Json::parse(text);
    } catch (const Json::exception& e) {
      throw Error(ErrorKind::InputError, std::string("surface JSON: ") + e.what());
    }
    return surface_from_json(j);
  }
  static const std::regex two(R"(\s*scroll\s*[\(:]\s*(\d+)\s*,\s*(\d+)\s*\)?\s*)");
  static const std::regex one(R"(\s*(cone_rnc|rnc)\s*[\(:]\s*(\d+)\s*\)?\s*)");
  std::smatch m;
  if (std::regex_match(text, m, two)) return SurfaceSpec::scroll(std::stoi(m[1]), std::stoi(m[2]));
  if (std::regex_match(text, m, one))
    return m[1] == "rnc" ? SurfaceSpec::rnc(std::stoi(m[2])) : SurfaceSpec::cone_rnc(std::stoi(m[2]));
  if (text == "veronese") return SurfaceSpec::veronese();
  throw Error(ErrorKind::InputError, "cannot parse surface '" + text + "'");
}

SymMatrixPoly matrix_from_json(const Json& j) {
  const int n = int_field(j, "n");
  if (n < 1) throw Error(ErrorKind::InputError, "n must be positive");
  const Json& entries = field(j, "entries");
  if (!entries.is_object()) throw Error(ErrorKind::InputError, "'entries' must be an object keyed \"i,j\"");
  std::vector<std::optional<BinaryFormQ>> slots(static_cast<size_t>(n) * n);
  static const std::regex key(R"(\s*(\d+)\s*,\s*(\d+)\s*)");
  for (const auto& [k, v] : entries.items()) {
    std::smatch m;
    if (!std::regex_match(k, m, key)) throw Error(ErrorKind::InputError, "bad entry key '" + k + "'");
    const int i = std::stoi(m[1]), jj = std::stoi(m[2]);
    if (i >= n || jj >= n) throw Error(ErrorKind::InputError, "entry key '" + k + "' out of range");
    slots[static_cast<size_t>(i) * n + jj] = binary_form_from_json(v);
  }
  std::vector<BinaryFormQ> out(static_cast<size_t>(n) * n, BinaryFormQ(0));
  for (int i = 0; i < n; ++i)
    for (int c = 0; c < n; ++c) {
      const auto& a = slots[static_cast<size_t>(i) * n + c];
      const auto& b = slots[static_cast<size_t>(c) * n + i];
      if (a) out[static_cast<size_t>(i) * n + c] = *a;
      else if (b) out[static_cast<size_t>(i) * n + c] = *b;
    }
  return SymMatrixPoly(n, std::move(out));
}

Json certificate_json(const BiformQ& form, const SurfaceSpec& spec, const RepresentationQ& rep,
                      const MonomialBasis& basis, double residual) {
  Json forms = Json::array();
  for (const auto& f : rep.forms) forms.push_back(to_json(f));
  Json weights = Json::array();
  for (const auto& w : rep.weights) weights.push_back(rational_string(w));
  Json j{{"form", to_json(form)},  {"surface", to_json(spec)}, {"exact", true},
         {"gram", to_json(canonical_gram(rep, basis))}, {"forms", forms}, {"signs", rep.signs},
         {"residual", residual}};
  if (!rep.weights.empty()) j["weights"] = weights;
  return j;
}

Json certificate_json(const BiformQ& form, const SurfaceSpec& spec, const RepresentationD& rep,
                      const MonomialBasis& basis, double residual) {
  Json forms = Json::array();
  for (const auto& f : rep.forms) forms.push_back(to_json(f));
  Json j{{"form", to_json(form)},  {"surface", to_json(spec)}, {"exact", false},
         {"gram", to_json(canonical_gram(rep, basis))}, {"forms", forms}, {"signs", rep.signs},
         {"residual", residual}};
  if (!rep.weights.empty()) j["weights"] = rep.weights;
  return j;
}

LoadedCertificate certificate_from_json(const Json& j) {
  LoadedCertificate c;
  c.form = biform_from_json(field(j, "form"));
  c.surface = surface_from_json(field(j, "surface"));
  c.exact = j.contains("exact") && j.at("exact").get<bool>();
  const auto signs = field(j, "signs").get<std::vector<int>>();
  const Json& forms = field(j, "forms");
  if (forms.size() != signs.size()) throw Error(ErrorKind::InputError, "forms and signs differ in length");
  for (int s : signs)
    if (s != 1 && s != -1) throw Error(ErrorKind::InputError, "signs must be +1 or -1");
  if (c.exact) {
    for (const auto& f : forms) c.exact_rep.forms.push_back(biform_from_json(f));
    c.exact_rep.signs = signs;
    if (j.contains("weights"))
      for (const auto& w : j.at("weights")) c.exact_rep.weights.push_back(rational_from_json(w));
  } else {
    for (const auto& f : forms) c.float_rep.forms.push_back(biform_d_from_json(f));
    c.float_rep.signs = signs;
    if (j.contains("weights")) c.float_rep.weights = j.at("weights").get<std::vector<double>>();
  }
  if (j.contains("residual")) c.recorded_residual = j.at("residual").get<double>();
  return c;
}

}  // namespace minsos
