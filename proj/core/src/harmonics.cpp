#include "s3radon/harmonics.hpp"

#include <cmath>
#include <stdexcept>

#include "s3radon/kernels.hpp"

namespace s3radon {

double legendre(int l, double x) {
  if (l < 0) throw std::invalid_argument("legendre: degree must be nonnegative");
  if (std::fabs(x) > 1.0 + 1e-12) throw std::invalid_argument("legendre: |x| must be <= 1");
  double p0 = 1.0, p1 = x;
  if (l == 0) return p0;
  for (int k = 2; k <= l; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

std::vector<double> legendre_all(int lmax, double x) {
  std::vector<double> p(lmax + 1);
  p[0] = 1.0;
  if (lmax >= 1) p[1] = x;
  for (int k = 2; k <= lmax; ++k) p[k] = ((2.0 * k - 1.0) * x * p[k - 1] - (k - 1.0) * p[k - 2]) / k;
  return p;
}

namespace {

// Fully normalized associated Legendre P-bar_l^m(ct) for m = 0..l such that
// Y_l^0 = Pbar_l^0 and Y_l^{+-m} = sqrt(2) Pbar_l^m cos/sin(m phi) are
// L2(S2)-orthonormal.  Standard stable forward column recurrence.
void pbar_column(int lmax, double ct, double st, std::vector<std::vector<double>>& pbar) {
  pbar.assign(lmax + 1, {});
  for (int l = 0; l <= lmax; ++l) pbar[l].assign(l + 1, 0.0);
  pbar[0][0] = std::sqrt(1.0 / (4.0 * kPi));
  for (int m = 1; m <= lmax; ++m)
    pbar[m][m] = pbar[m - 1][m - 1] * st * std::sqrt((2.0 * m + 1.0) / (2.0 * m));
  for (int m = 0; m < lmax; ++m) pbar[m + 1][m] = pbar[m][m] * ct * std::sqrt(2.0 * m + 3.0);
  for (int m = 0; m <= lmax; ++m) {
    for (int l = m + 2; l <= lmax; ++l) {
      const double a = std::sqrt((4.0 * l * l - 1.0) / (static_cast<double>(l) * l - m * m));
      const double b = std::sqrt(((l - 1.0) * (l - 1.0) - m * m) / (4.0 * (l - 1.0) * (l - 1.0) - 1.0));
      pbar[l][m] = a * (ct * pbar[l - 1][m] - b * pbar[l - 2][m]);
    }
  }
}

}  // namespace

std::vector<std::vector<double>> sph_harm_all(int lmax, const Dir3& d) {
  const double ct = d.z;
  const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
  const double phi = std::atan2(d.y, d.x);
  std::vector<std::vector<double>> pbar;
  pbar_column(lmax, ct, st, pbar);
  std::vector<std::vector<double>> y(lmax + 1);
  const double sqrt2 = std::sqrt(2.0);
  for (int l = 0; l <= lmax; ++l) {
    y[l].assign(2 * l + 1, 0.0);
    y[l][l] = pbar[l][0];
    for (int m = 1; m <= l; ++m) {
      y[l][l + m] = sqrt2 * pbar[l][m] * std::cos(m * phi);
      y[l][l - m] = sqrt2 * pbar[l][m] * std::sin(m * phi);
    }
  }
  return y;
}

std::vector<double> sph_harm_row(int l, const Dir3& d) { return sph_harm_all(l, d)[l]; }

double sph_harm(int l, int m, const Dir3& d) {
  if (l < 0 || std::abs(m) > l) throw std::invalid_argument("sph_harm: need |m| <= l");
  return sph_harm_all(l, d)[l][l + m];
}

SphHarmRowEvaluator::SphHarmRowEvaluator(int l) : l_(l) {
  if (l < 0) throw std::invalid_argument("SphHarmRowEvaluator: degree must be nonnegative");
  pbar_.assign(static_cast<size_t>(l + 1) * (l + 1), 0.0);
}

void SphHarmRowEvaluator::eval(const Dir3& d, double* out) {
  const int l = l_;
  const double ct = d.z;
  const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
  auto pb = [&](int ll, int m) -> double& { return pbar_[static_cast<size_t>(ll) * (l + 1) + m]; };
  pb(0, 0) = std::sqrt(1.0 / (4.0 * kPi));
  for (int m = 1; m <= l; ++m) pb(m, m) = pb(m - 1, m - 1) * st * std::sqrt((2.0 * m + 1.0) / (2.0 * m));
  for (int m = 0; m < l; ++m) pb(m + 1, m) = pb(m, m) * ct * std::sqrt(2.0 * m + 3.0);
  for (int m = 0; m <= l; ++m) {
    for (int ll = m + 2; ll <= l; ++ll) {
      const double a = std::sqrt((4.0 * ll * ll - 1.0) / (static_cast<double>(ll) * ll - m * m));
      const double b =
          std::sqrt(((ll - 1.0) * (ll - 1.0) - m * m) / (4.0 * (ll - 1.0) * (ll - 1.0) - 1.0));
      pb(ll, m) = a * (ct * pb(ll - 1, m) - b * pb(ll - 2, m));
    }
  }
  // Azimuth by the cos/sin recurrence in m.
  double cphi = 1.0, sphi = 0.0;
  const double r = std::hypot(d.x, d.y);
  const double c1 = r > 1e-300 ? d.x / r : 1.0;
  const double s1 = r > 1e-300 ? d.y / r : 0.0;
  const double sqrt2 = std::sqrt(2.0);
  out[l] = pb(l, 0);
  for (int m = 1; m <= l; ++m) {
    const double cnext = cphi * c1 - sphi * s1;
    sphi = sphi * c1 + cphi * s1;
    cphi = cnext;
    out[l + m] = sqrt2 * pb(l, m) * cphi;
    out[l - m] = sqrt2 * pb(l, m) * sphi;
  }
}

double circle_avg_harmonic(int l, int n, const Dir3& r, double tau) {
  if (std::fabs(tau) > 1.0) throw std::invalid_argument("circle_avg_harmonic: |tau| must be <= 1");
  const double rho = std::acos(tau);
  const SmallCircle c{r, rho};
  const CircleRule rule = build_circle_rule(std::max(64, 4 * l + 8));
  return mean_over(c, [&](const Dir3& p) { return sph_harm(l, n, p); }, rule);
}

CoeffTable::CoeffTable(int max_degree) : max_degree_(max_degree) {
  if (max_degree < 0) throw std::invalid_argument("CoeffTable: degree must be nonnegative");
  blocks_.resize(max_degree / 2 + 1);
  for (int l = 0; l <= max_degree; l += 2)
    blocks_[l / 2].assign(static_cast<size_t>(2 * l + 1) * (2 * l + 1), 0.0);
}

void CoeffTable::check_index(int l, int m, int n) const {
  if (l < 0 || l > max_degree_ || std::abs(m) > l || std::abs(n) > l)
    throw std::out_of_range("CoeffTable: index out of range");
}

double CoeffTable::at(int l, int m, int n) const {
  check_index(l, m, n);
  if (l % 2 != 0) return 0.0;
  return blocks_[l / 2][static_cast<size_t>(m + l) * (2 * l + 1) + (n + l)];
}

void CoeffTable::set(int l, int m, int n, double value) {
  check_index(l, m, n);
  if (l % 2 != 0) {
    if (value != 0.0)
      throw std::invalid_argument("CoeffTable: odd-degree entries are structurally zero");
    return;
  }
  blocks_[l / 2][static_cast<size_t>(m + l) * (2 * l + 1) + (n + l)] = value;
}

const std::vector<double>& CoeffTable::block(int l) const {
  if (l % 2 != 0 || l < 0 || l > max_degree_) throw std::out_of_range("CoeffTable::block");
  return blocks_[l / 2];
}

std::vector<double>& CoeffTable::block(int l) {
  if (l % 2 != 0 || l < 0 || l > max_degree_) throw std::out_of_range("CoeffTable::block");
  return blocks_[l / 2];
}

int CoeffTable::size() const {
  int n = 0;
  for (int l = 0; l <= max_degree_; l += 2) n += (2 * l + 1) * (2 * l + 1);
  return n;
}

double w_series(const CoeffTable& table, const Dir3& h, const Dir3& r, double rho) {
  const int lmax = table.max_degree();
  const auto yh = sph_harm_all(lmax, h);
  const auto yr = sph_harm_all(lmax, r);
  const auto pl = legendre_all(lmax, std::cos(rho));
  double acc = 0.0;
  for (int l = 0; l <= lmax; l += 2) {
    const auto& blk = table.block(l);
    const int dim = 2 * l + 1;
    double s = 0.0;
    for (int i = 0; i < dim; ++i) {
      double row = 0.0;
      for (int j = 0; j < dim; ++j) row += blk[static_cast<size_t>(i) * dim + j] * yr[l][j];
      s += yh[l][i] * row;
    }
    acc += pl[l] * s;
  }
  return acc;
}

double w_series_radial(const std::vector<double>& profile, double rho, double eta) {
  double acc = 0.0;
  const int kmax = static_cast<int>(profile.size()) - 1;
  const int lmax = 2 * kmax;
  const auto p_rho = legendre_all(lmax, std::cos(rho));
  const auto p_eta = legendre_all(lmax, std::cos(eta));
  for (int k = 0; k <= kmax; ++k) {
    const int l = 2 * k;
    acc += (2.0 * l + 1.0) / (4.0 * kPi) * profile[k] * p_rho[l] * p_eta[l];
  }
  return acc;
}

ProjectionRules make_projection_rules(int sphere_degree, int circle_nodes) {
  return {build_sphere2_rule(sphere_degree), build_circle_rule(circle_nodes)};
}

CoeffTable project_radon_coeffs(const std::function<double(const Quat&)>& f, int max_degree,
                                const ProjectionRules& rules) {
  CoeffTable table(max_degree);
  const auto& sph = rules.sphere;
  const size_t nn = sph.nodes.size();
  // Precompute harmonic rows at every sphere node.
  std::vector<std::vector<std::vector<double>>> rows(nn);
  for (size_t i = 0; i < nn; ++i) rows[i] = sph_harm_all(max_degree, sph.nodes[i]);
  const double four_pi_sq = (4.0 * kPi) * (4.0 * kPi);
  for (size_t i = 0; i < nn; ++i) {
    const Dir3& h = sph.nodes[i];
    for (size_t j = 0; j < nn; ++j) {
      const Dir3& r = sph.nodes[j];
      const GreatCircle c = fibre_circle(h, r);
      const double rad = mean_over(c, f, rules.circle);
      const double wij = sph.weights[i] * sph.weights[j] * rad * four_pi_sq;
      for (int l = 0; l <= max_degree; l += 2) {
        auto& blk = table.block(l);
        const int dim = 2 * l + 1;
        const auto& yh = rows[i][l];
        const auto& yr = rows[j][l];
        for (int a = 0; a < dim; ++a) {
          const double wya = wij * yh[a];
          for (int b = 0; b < dim; ++b) blk[static_cast<size_t>(a) * dim + b] += wya * yr[b];
        }
      }
    }
  }
  return table;
}

CoeffTable scale_coefficients(const CoeffTable& table, ScaleDirection direction) {
  const auto& sig = table.scaling();
  if (static_cast<int>(sig.size()) < table.max_degree() / 2 + 1)
    throw std::invalid_argument("scale_coefficients: scaling entries sigma_l are not populated");
  CoeffTable out = table;
  for (int l = 0; l <= table.max_degree(); l += 2) {
    const double s = sig[l / 2];
    if (!(s > 0.0)) throw std::invalid_argument("scale_coefficients: sigma_l must be positive");
    const double factor = direction == ScaleDirection::ToOdf ? s : 1.0 / s;
    for (double& v : out.block(l)) v *= factor;
  }
  return out;
}

ScalingCalibration calibrate_scaling(int l, const Quat& q0) {
  if (l < 0 || l % 2 != 0) throw std::invalid_argument("calibrate_scaling: l must be even");
  ScalingCalibration out;
  out.l = l;
  if (l == 0) {
    // Constants map to constants under the mean-value convention.
    out.sigma = 1.0;
    out.entries_used = 1;
    return out;
  }
  const int dim = 2 * l + 1;
  const auto f = [&](const Quat& q) {
    double x = dot(q0, q);
    if (x > 1.0) x = 1.0;
    if (x < -1.0) x = -1.0;
    return cheb_u(2 * l, x);
  };

  // Radon side: Chat^{mn} = mean_h mean_r radon(f) Yhat_l^m(h) Yhat_l^n(r),
  // with Yhat = sqrt(4 pi) Y orthonormal against the mean measure.
  const Sphere2Rule sph = build_sphere2_rule(2 * l + 2);
  const CircleRule circ = build_circle_rule(std::max(32, 2 * l + 8));
  const size_t nn = sph.nodes.size();
  std::vector<std::vector<double>> yrows(nn);
  for (size_t i = 0; i < nn; ++i) yrows[i] = sph_harm_row(l, sph.nodes[i]);
  std::vector<double> c_hat(static_cast<size_t>(dim) * dim, 0.0);
  for (size_t i = 0; i < nn; ++i) {
    for (size_t j = 0; j < nn; ++j) {
      const GreatCircle c = fibre_circle(sph.nodes[i], sph.nodes[j]);
      const double rad = mean_over(c, f, circ);
      const double w = sph.weights[i] * sph.weights[j] * rad * (4.0 * kPi);
      for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b)
          c_hat[static_cast<size_t>(a) * dim + b] += w * yrows[i][a] * yrows[j][b];
    }
  }

  // ODF side: Ahat^{mn} = mean_{S3} f(q) psi_hat_lmn(q) with psi_hat the
  // mean-normalized degree-2l mode sqrt(2l+1) * 4 pi * mean_h Y_l^m(h) Y_l^n(q h q*).
  const Sphere2Rule hrule = build_sphere2_rule(2 * l);
  const Sphere2Rule vrule = build_sphere2_rule(4 * l);
  const int radial = 2 * l + 4;
  const size_t nh = hrule.nodes.size();
  std::vector<std::vector<double>> hy(nh);
  for (size_t i = 0; i < nh; ++i) hy[i] = sph_harm_row(l, hrule.nodes[i]);
  std::vector<double> a_hat(static_cast<size_t>(dim) * dim, 0.0);
  const double mode_norm = std::sqrt(2.0 * l + 1.0) * 4.0 * kPi;
  SphHarmRowEvaluator rowev(l);
  std::vector<double> yr(dim);
  for (int k = 1; k <= radial; ++k) {
    const double rho = kPi * k / (radial + 1);
    const double s2 = std::sin(rho) * std::sin(rho);
    const double wr = 2.0 / (radial + 1) * s2;
    const double cr = std::cos(rho), sr = std::sin(rho);
    for (size_t v = 0; v < vrule.nodes.size(); ++v) {
      const Dir3& dir = vrule.nodes[v];
      const Quat q{cr, sr * dir.x, sr * dir.y, sr * dir.z};
      const double fv = f(q);
      const double w = wr * vrule.weights[v] * fv * mode_norm;
      if (std::fabs(w) < 1e-300) continue;
      for (size_t i = 0; i < nh; ++i) {
        rowev.eval(rotate3(q, hrule.nodes[i]), yr.data());
        const double wh = w * hrule.weights[i];
        for (int a = 0; a < dim; ++a) {
          const double wa = wh * hy[i][a];
          for (int b = 0; b < dim; ++b) a_hat[static_cast<size_t>(a) * dim + b] += wa * yr[b];
        }
      }
    }
  }

  double amax = 0.0;
  for (double v : a_hat) amax = std::max(amax, std::fabs(v));
  double num = 0.0, den = 0.0;
  for (size_t i = 0; i < a_hat.size(); ++i) {
    num += a_hat[i] * c_hat[i];
    den += c_hat[i] * c_hat[i];
  }
  out.sigma = num / den;
  for (size_t i = 0; i < a_hat.size(); ++i) {
    if (std::fabs(a_hat[i]) > 0.05 * amax) {
      const double ratio = a_hat[i] / c_hat[i];
      out.max_deviation = std::max(out.max_deviation, std::fabs(ratio - out.sigma) / out.sigma);
      ++out.entries_used;
    }
  }
  return out;
}

void populate_scaling(CoeffTable& table, const Quat& q0) {
  auto& sig = table.scaling();
  sig.assign(table.max_degree() / 2 + 1, 1.0);
  for (int l = 0; l <= table.max_degree(); l += 2) sig[l / 2] = calibrate_scaling(l, q0).sigma;
}

}  // namespace s3radon
