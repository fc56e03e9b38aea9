#pragma once

#include <optional>
#include <string>
#include <vector>

#include "minsos/binary_sos.hpp"
#include "minsos/cone.hpp"
#include "minsos/factorization.hpp"
#include "minsos/random.hpp"
#include "minsos/rank_enumerator.hpp"
#include "minsos/serialize.hpp"

namespace minsos {

struct PipelineOptions {
  EnumerationOptions enumeration;
  bool exact = false;          // also try rational certificates at rational points
  long exact_max_den = 1000;   // denominators tried when rationalizing theta
  bool probe_degeneration = true;  // perturb f when solutions are missing
};

struct Certificate {
  int point = 0;               // index into EnumerationReport::points
  Inertia inertia;
  RepresentationD rep;
  double residual = 0.0;       // max coefficient of f - sum, by expansion
  bool verified = false;       // residual <= residual_tol * max(1, |f|)
  std::optional<RepresentationQ> exact;
  bool exact_verified = false;
};

// A solution of f + eps h followed as eps -> 0 that has no limit among the
// solutions of f.
struct EscapingSolution {
  std::vector<double> eps;    // sample values of eps
  std::vector<double> norms;  // |theta| at those values
  double exponent = 0.0;      // fitted |theta| ~ eps^(-exponent)
  Inertia direction;          // of sum theta_i K_i / |theta| at the last sample, tol 1e-4
  bool real = false;
};

struct DegenerationReport {
  int missing = 0;  // expected complex count minus found
  int infinity_endpoints = 0;
  int singular_endpoints = 0;
  int perturbed_count = 0;   // complex count of the perturbed form
  int converged = 0;         // perturbed solutions with a limit among those of f
  std::vector<EscapingSolution> escaping;
  std::vector<std::string> notes;
};

struct EnumerationReport {
  SurfaceSpec surface;
  BiformQ form;
  int rank = 3;
  int kernel_dim = 0;
  bool via_cone = false;               // points live in the Gram space of the base curve
  std::optional<BinaryFormQ> reduced;  // c - b^2/a on the cone route
  std::vector<SolutionPoint> points;
  CountReport counts;
  std::optional<ExpectedCounts> expected;
  GenericityReport genericity;
  PathStats stats;
  Complex gamma;
  std::vector<Certificate> certificates;
  std::optional<int> two_squares_count;  // psd cross-check on curves
  DegenerationReport degeneration;
  std::vector<std::string> warnings;

  bool all_verified() const;
  double max_residual() const;
};

// Gram space, rank-(dim+1) points, classification and a verified certificate
// per real point. Cones go through the base curve and are lifted back.
EnumerationReport enumerate(const BiformQ& f, const SurfaceSpec& spec, const PipelineOptions& options = {});

Json to_json(const EnumerationReport& report, bool with_certificates = true);

// m^T G m over a linear monomial basis.
BiformQ form_from_gram(const MonomialBasis& basis, const QMatrix& g);

// Positive definite integer Gram matrix: three integer squares plus a small
// full-rank psd term, resampled until the discriminant is squarefree.
BiformQ random_generic_positive_form(const SurfaceSpec& spec, Rng& rng);

// Binary form of degree 2d, positive with simple roots: a product of d
// positive quadratics with distinct integer data.
BinaryFormQ random_positive_binary_form(int d, Rng& rng);

// A = B B^T for a random integer B with up to 2n columns; diagonal degrees
// 2 d_i with d_i <= max_half_degree.
SymMatrixPoly random_psd_matrix_poly(int n, Rng& rng, int max_half_degree = 4);

struct TableRow {
  SurfaceSpec surface;
  int psd = 0, real = 0, complex = 0;
  std::optional<ExpectedCounts> expected;
  bool matches = false;
  double seconds = 0.0;
  std::vector<std::string> warnings;
};

TableRow table_row(const SurfaceSpec& spec, uint64_t seed, const PipelineOptions& options = {});

// Chart t = 1, y = 1 samples (s, x) of the real curves V(f) and V(l_i) for
// the squares l_i of a certificate; CSV with columns curve,s,x.
std::string curve_samples_csv(const BiformQ& f, const RepresentationD* rep, double lo = -3.0, double hi = 3.0,
                              int samples = 601);

}  // namespace minsos
