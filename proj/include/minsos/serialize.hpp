#pragma once

#include <json.hpp>

#include "minsos/factorization.hpp"
#include "minsos/rank_enumerator.hpp"

namespace minsos {

using Json = nlohmann::json;

Json to_json(const BiformQ& f);
Json to_json(const BiformD& f);
Json to_json(const BiformC& f);
Json to_json(const BinaryFormQ& f);
Json to_json(const BinaryFormD& f);
Json to_json(const SurfaceSpec& spec);
Json to_json(const QMatrix& m);
Json to_json(const Eigen::MatrixXd& m);
Json to_json(const Inertia& in);
Json to_json(const GramSpace& space);
Json to_json(const PathStats& stats);

// Biform with exact coefficients: terms carry "num"/"den" (integers or
// decimal strings). Throws InputError on malformed input.
BiformQ biform_from_json(const Json& j);
// Accepts exact terms or float "value" terms.
BiformD biform_d_from_json(const Json& j);
// {"deg": D, "coeffs": [...]} or a biform with degXY = 0 and no x, y.
BinaryFormQ binary_form_from_json(const Json& j);
SurfaceSpec surface_from_json(const Json& j);
// Also accepts "scroll(2,1)", "veronese", "cone_rnc(4)", "rnc(3)".
SurfaceSpec parse_surface(const std::string& text);
SymMatrixPoly matrix_from_json(const Json& j);
Rational rational_from_json(const Json& j);

// The form is always stored exactly; the squares are exact or float.
Json certificate_json(const BiformQ& form, const SurfaceSpec& spec, const RepresentationQ& rep,
                      const MonomialBasis& basis, double residual);
Json certificate_json(const BiformQ& form, const SurfaceSpec& spec, const RepresentationD& rep,
                      const MonomialBasis& basis, double residual);

struct LoadedCertificate {
  BiformQ form;
  SurfaceSpec surface;
  bool exact = false;
  RepresentationQ exact_rep;
  RepresentationD float_rep;
  double recorded_residual = 0.0;
};

LoadedCertificate certificate_from_json(const Json& j);

}  // namespace minsos
