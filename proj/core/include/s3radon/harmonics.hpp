#pragma once

#include <functional>
#include <vector>

#include "s3radon/quadrature.hpp"

namespace s3radon {

/// Legendre polynomial P_l(x) by the three-term recurrence.
double legendre(int l, double x);
/// P_0..P_L at once.
std::vector<double> legendre_all(int lmax, double x);

/// Real orthonormal spherical harmonic Y_l^m (no Condon-Shortley phase,
/// cosine/sine azimuth for +/-m), L2(S2)-orthonormal: Y_0^0 = 1/sqrt(4 pi).
double sph_harm(int l, int m, const Dir3& d);
/// All of Y_l^{-l..l} as a row vector of length 2l+1 (index m + l).
std::vector<double> sph_harm_row(int l, const Dir3& d);
/// Rows for all l = 0..L; out[l] has length 2l+1.
std::vector<std::vector<double>> sph_harm_all(int lmax, const Dir3& d);

/// Repeated single-degree evaluation with a reusable scratch buffer; not
/// thread-safe across a shared instance.
class SphHarmRowEvaluator {
 public:
  explicit SphHarmRowEvaluator(int l);
  int degree() const { return l_; }
  /// Writes Y_l^{-l..l}(d) into out[0..2l], index m + l.
  void eval(const Dir3& d, double* out);

 private:
  int l_ = 0;
  std::vector<double> pbar_;  // column scratch, (l+1)^2 entries
};

/// Quadrature mean of Y_l^n over the small circle c(r; arccos tau).  Equals
/// P_l(tau) Y_l^n(r) by the Funk-Hecke relation (tested, not assumed).
double circle_avg_harmonic(int l, int n, const Dir3& r, double tau);

/// Dense table of S2 x S2 harmonic coefficients C_l^{mn} of a Radon-transform
/// image, even degrees only; optionally carries a radial profile C_l and the
/// per-degree scaling entries sigma_l of the inversion.
class CoeffTable {
 public:
  CoeffTable() = default;
  explicit CoeffTable(int max_degree);

  int max_degree() const { return max_degree_; }
  /// Coefficient C_l^{mn}; entries with odd l are structurally zero.
  double at(int l, int m, int n) const;
  void set(int l, int m, int n, double value);
  /// Dense (2l+1)^2 block for even degree l, row index m+l, column n+l.
  const std::vector<double>& block(int l) const;
  std::vector<double>& block(int l);

  std::vector<double>& radial() { return radial_; }
  const std::vector<double>& radial() const { return radial_; }
  std::vector<double>& scaling() { return scaling_; }
  const std::vector<double>& scaling() const { return scaling_; }

  /// Number of stored coefficients, sum over even l of (2l+1)^2.
  int size() const;

 private:
  void check_index(int l, int m, int n) const;
  int max_degree_ = 0;
  std::vector<std::vector<double>> blocks_;  // blocks_[l/2] for even l
  std::vector<double> radial_;               // optional C_l profile, index l/2
  std::vector<double> scaling_;              // optional sigma_l, index l/2
};

/// W f as the harmonic series sum_{l even} P_l(cos rho) sum_{mn} C_l^{mn}
/// Y_l^m(h) Y_l^n(r).  At rho = 0 this is the Radon-transform series.
double w_series(const CoeffTable& table, const Dir3& h, const Dir3& r, double rho);

/// Radially symmetric series sum_{l even} (2l+1)/(4 pi) C_l P_l(cos rho)
/// P_l(cos eta), symmetric under rho <-> eta; profile[k] holds C_{2k}.
double w_series_radial(const std::vector<double>& profile, double rho, double eta);

struct ProjectionRules {
  Sphere2Rule sphere;   // for the double S2 projection
  CircleRule circle;    // for the inner Radon quadrature
};
ProjectionRules make_projection_rules(int sphere_degree, int circle_nodes);

/// C_l^{mn} = Int Int radon(f)(h,r) Y_l^m(h) Y_l^n(r) dw(h) dw(r) by double
/// sphere2 quadrature; odd-degree content (annihilated by the transform) is
/// measured and zeroed.
CoeffTable project_radon_coeffs(const std::function<double(const Quat&)>& f, int max_degree,
                                const ProjectionRules& rules);

enum class ScaleDirection { ToOdf, ToRadon };

/// Apply the per-degree scaling sigma_l: ToOdf multiplies, ToRadon divides.
/// Requires table.scaling() populated for all even l <= max_degree.
CoeffTable scale_coefficients(const CoeffTable& table, ScaleDirection direction);

/// One-shot numeric calibration of the inversion scaling for a single even
/// degree l: builds the zonal harmonic mode U_{2l}(q0 . q), measures its
/// coefficient tables on both sides of the Radon transform against
/// mean-normalized bases, and returns the per-(m,n) ratio statistics.
struct ScalingCalibration {
  int l = 0;
  double sigma = 0.0;        // ODF-side / Radon-side coefficient ratio
  double max_deviation = 0.0;  // max relative deviation of well-conditioned entries
  int entries_used = 0;
};
ScalingCalibration calibrate_scaling(int l, const Quat& q0);

/// Populate table.scaling() with calibrated sigma_l for all even l <= L.
void populate_scaling(CoeffTable& table, const Quat& q0);

}  // namespace s3radon
