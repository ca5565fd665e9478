#pragma once

namespace s3radon {

/// Radially symmetric kernels on S3 used as ODF components.  The kernel value
/// depends on the rotation angle omega of p1* p2 only; its one- and twofold
/// spherical Radon transforms have the closed forms below.  All three levels
/// follow the mean-value convention: the Gegenbauer/Chebyshev coefficient
/// a_0 is 1, so every kernel integrates to 1 against the normalized measure.
enum class KernelKind { AbelPoisson, DeLaValleePoussin };

struct KernelSpec {
  KernelKind kind = KernelKind::DeLaValleePoussin;
  double kappa = 1.0;  // AbelPoisson: in (0,1); dlVP: > 0, integer preferred
};

KernelSpec abel_poisson(double kappa);
KernelSpec de_la_vallee_poussin(double kappa);

/// K(omega) for omega in [0, 2 pi); even around 0 and 2 pi, nonnegative.
double kernel_value(const KernelSpec& spec, double omega);

/// Chebyshev coefficient a_l of the expansion K(omega) = sum_l a_l U_{2l}(cos(omega/2)).
/// Abel-Poisson: a_l = (2l+1) kappa^{2l}.  dlVP: the alternating Beta sum;
/// vanishes for l > kappa at integer kappa.
double kernel_coeff(const KernelSpec& spec, int l);

/// One-fold Radon transform profile: (R K)(C) as a function of the angle eta
/// between the rotated witness directions, eta in [0, pi].
double kernel_radon(const KernelSpec& spec, double eta);

/// Twofold Radon transform G(eta1, eta2) = sum_l a_l P_l(cos eta1) P_l(cos eta2);
/// symmetric, and G(eta, 0) = kernel_radon(eta).
double kernel_double_radon(const KernelSpec& spec, double eta1, double eta2);

/// Twofold Radon transform by truncated Legendre series (exact finite sum for
/// integer-kappa dlVP); reference route for the closed forms.
double kernel_double_radon_series(const KernelSpec& spec, double eta1, double eta2);

// Special functions needed by the closed forms.

double gamma_fn(double x);
/// B(a, b) = Gamma(a) Gamma(b) / Gamma(a + b), a, b > 0.
double beta_fn(double a, double b);
/// Gauss hypergeometric 2F1(a, b; c; z) on z <= 1 (series, Pfaff for z < 0,
/// and the 1-z connection / Gauss evaluation near and at z = 1).
double hyp2f1(double a, double b, double c, double z);
/// Complete elliptic integral of the second kind, parameter convention m in
/// [0, 1], computed by the arithmetic-geometric mean.
double ellip_e(double m);
/// Chebyshev polynomial of the second kind U_n(x).
double cheb_u(int n, double x);

}  // namespace s3radon
