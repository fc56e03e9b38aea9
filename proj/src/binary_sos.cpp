#include "minsos/binary_sos.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

namespace minsos {

int RootMultiset::total_multiplicity() const {
  int s = 0;
  for (const auto& r : roots) s += r.multiplicity;
  return s;
}

namespace {

Complex eval_poly(const std::vector<Complex>& p, Complex z, Complex* deriv = nullptr) {
  Complex v = 0.0, dv = 0.0;
  for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i) {
    dv = dv * z + v;
    v = v * z + p[i];
  }
  if (deriv) *deriv = dv;
  return v;
}

std::vector<Complex> companion_roots(const std::vector<Complex>& p) {
  const int n = static_cast<int>(p.size()) - 1;
  if (n <= 0) return {};
  if (n == 1) return {-p[0] / p[1]};
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) c(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) c(i, n - 1) = -p[i] / p[n];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(c, false);
  std::vector<Complex> r(es.eigenvalues().data(), es.eigenvalues().data() + n);
  for (auto& z : r) {
    for (int it = 0; it < 5; ++it) {
      Complex dz;
      const Complex v = eval_poly(p, z, &dz);
      if (std::abs(dz) == 0.0) break;
      const Complex next = z - v / dz;
      if (std::abs(eval_poly(p, next)) >= std::abs(v)) break;
      z = next;
    }
  }
  return r;
}

}  // namespace

RootMultiset roots(const BinaryFormD& f, double cluster_radius) {
  if (f.is_zero()) throw Error(ErrorKind::InputError, "roots of the zero form");
  RootMultiset out;
  out.degree = f.degree();
  const int sd = f.s_degree();
  std::vector<Complex> p(f.coeffs().begin(), f.coeffs().begin() + sd + 1);
  auto raw = companion_roots(p);
  std::sort(raw.begin(), raw.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  // Greedy clustering into multiplicities.
  std::vector<bool> used(raw.size(), false);
  std::vector<ProjectiveRoot> clusters;
  for (size_t i = 0; i < raw.size(); ++i) {
    if (used[i]) continue;
    Complex sum = raw[i];
    int count = 1;
    used[i] = true;
    for (size_t j = i + 1; j < raw.size(); ++j) {
      if (used[j]) continue;
      const double scale = std::max(1.0, std::abs(raw[i]));
      if (std::abs(raw[j] - raw[i]) <= cluster_radius * scale) {
        sum += raw[j];
        ++count;
        used[j] = true;
      }
    }
    clusters.push_back({sum / static_cast<double>(count), false, count});
  }
  // Conjugate symmetry: near-real clusters become real, the rest are paired.
  std::vector<bool> paired(clusters.size(), false);
  for (size_t i = 0; i < clusters.size(); ++i) {
    auto& c = clusters[i];
    const double scale = std::max(1.0, std::abs(c.value));
    if (std::abs(c.value.imag()) <= 1e-8 * scale) {
      c.value = {c.value.real(), 0.0};
      paired[i] = true;
    }
  }
  for (size_t i = 0; i < clusters.size(); ++i) {
    if (paired[i]) continue;
    size_t best = i;
    double best_dist = INFINITY;
    for (size_t j = 0; j < clusters.size(); ++j) {
      if (j == i || paired[j] || clusters[j].multiplicity != clusters[i].multiplicity) continue;
      const double dist = std::abs(clusters[j].value - std::conj(clusters[i].value));
      if (dist < best_dist) {
        best_dist = dist;
        best = j;
      }
    }
    const double scale = std::max(1.0, std::abs(clusters[i].value));
    if (best != i && best_dist <= 1e-8 * scale * 1e2) {
      const Complex mid = 0.5 * (clusters[i].value + std::conj(clusters[best].value));
      clusters[i].value = mid;
      clusters[best].value = std::conj(mid);
      paired[i] = paired[best] = true;
    }
  }
  out.roots = std::move(clusters);
  const int inf = f.degree() - sd;
  if (inf > 0) out.roots.push_back({Complex(0.0, 0.0), true, inf});
  return out;
}

bool is_nonnegative(const BinaryFormD& f, double cluster_radius) {
  if (f.is_zero()) return true;
  const auto rs = roots(f, cluster_radius);
  for (const auto& r : rs.roots) {
    const bool real = r.at_infinity || r.value.imag() == 0.0;
    if (real && r.multiplicity % 2 != 0) return false;
  }
  // Sign at the sample angle farthest from every real root.
  double best_val = 0.0, best_gap = -1.0;
  for (int k = 0; k < 64; ++k) {
    const double phi = M_PI * (k + 0.5) / 64.0;
    const double s = std::cos(phi), t = std::sin(phi);
    double gap = INFINITY;
    for (const auto& r : rs.roots) {
      if (!(r.at_infinity || r.value.imag() == 0.0)) continue;
      const double rphi = r.at_infinity ? 0.0 : std::atan2(1.0, r.value.real());
      double d = std::abs(phi - rphi);
      d = std::min(d, M_PI - d);
      gap = std::min(gap, d);
    }
    if (gap > best_gap) {
      best_gap = gap;
      best_val = f.eval_at<double>(s, t);
    }
  }
  return best_val > 0.0;
}

bool is_nonnegative(const BinaryFormQ& f, double cluster_radius) {
  return is_nonnegative(f.cast<double>(), cluster_radius);
}

Eigen::MatrixXd two_squares_gram(const TwoSquares& rep) {
  const int n = rep.p.degree() + 1;
  Eigen::VectorXd vp(n), vq(n);
  for (int i = 0; i < n; ++i) {
    vp(i) = rep.p[i];
    vq(i) = rep.q[i];
  }
  return vp * vp.transpose() + vq * vq.transpose();
}

TwoSquaresResult enumerate_two_squares(const BinaryFormD& f, double cluster_radius) {
  if (f.degree() % 2 != 0 || !is_nonnegative(f, cluster_radius))
    throw Error(ErrorKind::NotNonnegative, "form is not nonnegative");
  const int half = f.degree() / 2;
  const auto rs = roots(f, cluster_radius);

  // Common real factor sqrt(lc) * prod (s - r t)^(m/2) * t^(m_inf/2).
  const double lc = f[f.s_degree()];
  BinaryFormC common(std::vector<Complex>{Complex(std::sqrt(lc), 0.0)});
  struct Pair {
    Complex root;
    int multiplicity;
  };
  std::vector<Pair> pairs;
  for (const auto& r : rs.roots) {
    if (r.at_infinity) {
      common = common * BinaryFormC(std::vector<Complex>{1.0}).multiply_by_t_power(r.multiplicity / 2);
      continue;
    }
    if (r.value.imag() == 0.0) {
      BinaryFormC lin(std::vector<Complex>{-r.value, 1.0});
      for (int k = 0; k < r.multiplicity / 2; ++k) common = common * lin;
    } else if (r.value.imag() > 0.0) {
      pairs.push_back({r.value, r.multiplicity});
    }
  }

  TwoSquaresResult out;
  out.conjugate_pairs = 0;
  for (const auto& p : pairs) {
    out.conjugate_pairs += p.multiplicity;
    if (p.multiplicity > 1) out.simple_roots = false;
  }

  // Mixed radix over k_j in [0, mult_j]: k_j copies of rho_j, the rest conj.
  std::vector<int> choice(pairs.size(), 0);
  std::vector<Eigen::MatrixXd> grams;
  const double fscale = std::max(f.max_abs_coeff(), 1e-300);
  while (true) {
    BinaryFormC pi = common;
    for (size_t j = 0; j < pairs.size(); ++j) {
      BinaryFormC take(std::vector<Complex>{-pairs[j].root, 1.0});
      BinaryFormC other(std::vector<Complex>{-std::conj(pairs[j].root), 1.0});
      for (int k = 0; k < pairs[j].multiplicity; ++k) pi = pi * (k < choice[j] ? take : other);
    }
    if (pi.degree() != half) throw Error(ErrorKind::DegreeMismatch, "root bookkeeping lost a factor");
    TwoSquares rep{BinaryFormD(half), BinaryFormD(half), 0.0};
    for (int i = 0; i <= half; ++i) {
      rep.p[i] = pi[i].real();
      rep.q[i] = pi[i].imag();
    }
    const auto resid = f - (rep.p * rep.p + rep.q * rep.q);
    rep.residual = resid.max_abs_coeff();
    Eigen::MatrixXd g = two_squares_gram(rep);
    bool duplicate = false;
    for (const auto& h : grams)
      if ((h - g).cwiseAbs().maxCoeff() <= 1e-8 * std::max(1.0, fscale)) {
        duplicate = true;
        break;
      }
    if (!duplicate) {
      grams.push_back(g);
      out.representations.push_back(std::move(rep));
    }
    size_t j = 0;
    for (; j < pairs.size(); ++j) {
      if (++choice[j] <= pairs[j].multiplicity) break;
      choice[j] = 0;
    }
    if (j == pairs.size()) break;
  }
  return out;
}

}  // namespace minsos
