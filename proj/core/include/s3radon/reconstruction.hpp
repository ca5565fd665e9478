#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "s3radon/harmonics.hpp"
#include "s3radon/kernels.hpp"
#include "s3radon/transforms.hpp"

namespace s3radon {

/// One measured or synthesized angle-density value w(h, r; rho).
struct SampleRecord {
  Dir3 h;
  Dir3 r;
  double rho = 0.0;       // radians, in [0, pi]
  double value = 0.0;
  std::optional<double> sigma;  // optional noise level
};

struct UniformOdf {};

struct RbfComponent {
  Quat center;
  double weight = 1.0;
  KernelSpec spec;
};

/// Probability mixture of radial kernels: f(q) = sum_j w_j K_j(2 arccos |Sc(q_j* q)|).
/// Weights sum to 1; evaluation folds antipodal centers, so it is even.
struct RbfMixture {
  std::vector<RbfComponent> components;
};

/// Truncated harmonic model carried by its Radon-side coefficient table; the
/// ODF evaluation pulls each Y_l^m (x) Y_l^n mode back through the dual
/// transform.
struct HarmonicModel {
  CoeffTable table;
};

using OdfModel = std::variant<UniformOdf, RbfMixture, HarmonicModel>;

/// Validate invariants (weight normalization, kappa domains); throws on
/// violation.
void validate_model(const OdfModel& model);

/// Pointwise ODF evaluation.  HarmonicModel needs a sphere rule for the mode
/// pullback; pass a rule of degree >= 2 L.
double evaluate_odf(const OdfModel& model, const Quat& q, const Sphere2Rule& sphere);
double evaluate_odf(const RbfMixture& model, const Quat& q);

/// Wrap a model as an OdfEvaluator for the quadrature transforms.
OdfEvaluator make_evaluator(const OdfModel& model, const Sphere2Rule& sphere);

/// Closed-form W transform of an RBF mixture: each component contributes the
/// symmetrized twofold-Radon profile
///   1/2 [ G(eta+, rho) + G(eta-, rho) ],  cos(eta+-) = +- (q_j h q_j*) . r.
double forward_w_rbf(const RbfMixture& model, const Dir3& h, const Dir3& r, double rho);

/// Forward W for any model: closed form for uniform/RBF, the harmonic series
/// for HarmonicModel.
double forward_w(const OdfModel& model, const Dir3& h, const Dir3& r, double rho);

/// Probe design: (h, r, rho) triples, reproducible from the seed.
struct DesignGrid {
  std::vector<Dir3> h;
  std::vector<Dir3> r;
  std::vector<double> rho;
  std::uint64_t seed = 0;

  std::size_t size() const { return h.size(); }

  /// count random probes, h and r uniform on S2, rho uniform in [rho_min, rho_max].
  static DesignGrid random(std::size_t count, std::uint64_t seed, double rho_min,
                           double rho_max);
  /// Structured product design: n_h random directions x n_r random directions
  /// x n_rho equispaced angles in [rho_min, rho_max].
  static DesignGrid product(std::size_t n_h, std::size_t n_r, std::size_t n_rho,
                            std::uint64_t seed, double rho_min, double rho_max);
};

/// Sample the forward model on the design and add Gaussian noise of standard
/// deviation sigma (deterministic per seed).
std::vector<SampleRecord> synthesize_samples(const OdfModel& model, const DesignGrid& design,
                                             double sigma, std::uint64_t seed);

/// Deterministic center dictionary on S3: the 600-cell vertex set folded to
/// canonical representatives, successively refined by normalized edge
/// midpoints, optionally rotated by a seeded random rotation.
std::vector<Quat> s3_center_grid(std::size_t count, std::uint64_t seed);

struct FitReport {
  double residual_norm = 0.0;   // sqrt(sum of squared residuals)
  double rms_residual = 0.0;
  double condition = 0.0;       // estimate for the solved system
  double scale = 1.0;           // total weight before renormalization (RBF fits)
  int iterations = 0;           // active-set iterations (nonneg fits)
};

/// Least-squares fit of mixture weights over a fixed center dictionary with
/// kernel `spec`: minimizes |w - K lambda|^2 + ridge |lambda|^2, optionally
/// with lambda >= 0 by active-set projection.  Returned weights are
/// renormalized to sum 1; the scale is reported.  Throws on a rank-deficient
/// system when ridge == 0.
RbfMixture fit_rbf(const std::vector<SampleRecord>& samples, const std::vector<Quat>& centers,
                   const KernelSpec& spec, double ridge, bool nonneg, FitReport* report = nullptr);

/// Least-squares fit of even-degree harmonic coefficients up to L:
/// w_i = sum_{l even} P_l(cos rho_i) sum_{mn} C_l^{mn} Y_l^m(h_i) Y_l^n(r_i).
HarmonicModel fit_harmonic(const std::vector<SampleRecord>& samples, int max_degree, double ridge,
                           FitReport* report = nullptr);

}  // namespace s3radon
