#include "s3radon/reconstruction.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <set>
#include <stdexcept>

namespace s3radon {

namespace {

double clamp1(double x) { return x > 1.0 ? 1.0 : (x < -1.0 ? -1.0 : x); }

double kernel_at(const RbfComponent& comp, const Quat& q) {
  const double omega = 2.0 * std::acos(std::fabs(clamp1(dot(comp.center, q))));
  return kernel_value(comp.spec, omega);
}

}  // namespace

void validate_model(const OdfModel& model) {
  if (const auto* rbf = std::get_if<RbfMixture>(&model)) {
    if (rbf->components.empty())
      throw std::invalid_argument("RbfMixture: needs at least one component");
    double sum = 0.0;
    for (const auto& c : rbf->components) {
      if (c.weight < -1e-12) throw std::invalid_argument("RbfMixture: weights must be >= 0");
      if (!is_unit(c.center)) throw std::invalid_argument("RbfMixture: centers must be unit");
      sum += c.weight;
    }
    if (std::fabs(sum - 1.0) > 1e-12)
      throw std::invalid_argument("RbfMixture: weights must sum to 1");
  }
}

double evaluate_odf(const RbfMixture& model, const Quat& q) {
  double acc = 0.0;
  for (const auto& c : model.components) acc += c.weight * kernel_at(c, q);
  return acc;
}

double evaluate_odf(const OdfModel& model, const Quat& q, const Sphere2Rule& sphere) {
  if (std::holds_alternative<UniformOdf>(model)) return 1.0;
  if (const auto* rbf = std::get_if<RbfMixture>(&model)) return evaluate_odf(*rbf, q);
  const auto& hm = std::get<HarmonicModel>(model);
  // f(q) = sum_l (2l+1) sum_mn C_l^{mn} mean_h Y_l^m(h) Y_l^n(q h q*): the
  // pullback whose Radon transform is exactly the stored coefficient series.
  const int lmax = hm.table.max_degree();
  double acc = 0.0;
  for (size_t i = 0; i < sphere.nodes.size(); ++i) {
    const Dir3& h = sphere.nodes[i];
    const auto yh = sph_harm_all(lmax, h);
    const auto yr = sph_harm_all(lmax, rotate3(q, h));
    double s = 0.0;
    for (int l = 0; l <= lmax; l += 2) {
      const auto& blk = hm.table.block(l);
      const int dim = 2 * l + 1;
      double bl = 0.0;
      for (int a = 0; a < dim; ++a) {
        double row = 0.0;
        for (int b = 0; b < dim; ++b) row += blk[static_cast<size_t>(a) * dim + b] * yr[l][b];
        bl += yh[l][a] * row;
      }
      s += (2.0 * l + 1.0) * bl;
    }
    acc += sphere.weights[i] * s;
  }
  return acc;
}

OdfEvaluator make_evaluator(const OdfModel& model, const Sphere2Rule& sphere) {
  return OdfEvaluator{[model, sphere](const Quat& q) { return evaluate_odf(model, q, sphere); },
                      true};
}

double forward_w_rbf(const RbfMixture& model, const Dir3& h, const Dir3& r, double rho) {
  double acc = 0.0;
  for (const auto& comp : model.components) {
    const double c = clamp1(dot(rotate3(comp.center, h), r));
    const double eta_p = std::acos(c);
    const double eta_m = std::acos(-c);
    acc += comp.weight * 0.5 *
           (kernel_double_radon(comp.spec, eta_p, rho) + kernel_double_radon(comp.spec, eta_m, rho));
  }
  return acc;
}

double forward_w(const OdfModel& model, const Dir3& h, const Dir3& r, double rho) {
  if (std::holds_alternative<UniformOdf>(model)) return 1.0;
  if (const auto* rbf = std::get_if<RbfMixture>(&model)) return forward_w_rbf(*rbf, h, r, rho);
  const auto& hm = std::get<HarmonicModel>(model);
  return w_series(hm.table, h, r, rho);
}

namespace {

Dir3 random_dir(std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  double x, y, z, n;
  do {
    x = normal(rng);
    y = normal(rng);
    z = normal(rng);
    n = std::sqrt(x * x + y * y + z * z);
  } while (n < 1e-12);
  return {x / n, y / n, z / n};
}

Quat random_quat(std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  double w, x, y, z, n;
  do {
    w = normal(rng);
    x = normal(rng);
    y = normal(rng);
    z = normal(rng);
    n = std::sqrt(w * w + x * x + y * y + z * z);
  } while (n < 1e-12);
  return {w / n, x / n, y / n, z / n};
}

}  // namespace

DesignGrid DesignGrid::random(std::size_t count, std::uint64_t seed, double rho_min,
                              double rho_max) {
  DesignGrid g;
  g.seed = seed;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(rho_min, rho_max);
  g.h.reserve(count);
  g.r.reserve(count);
  g.rho.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    g.h.push_back(random_dir(rng));
    g.r.push_back(random_dir(rng));
    g.rho.push_back(unif(rng));
  }
  return g;
}

DesignGrid DesignGrid::product(std::size_t n_h, std::size_t n_r, std::size_t n_rho,
                               std::uint64_t seed, double rho_min, double rho_max) {
  DesignGrid g;
  g.seed = seed;
  std::mt19937_64 rng(seed);
  std::vector<Dir3> hs(n_h), rs(n_r);
  for (auto& d : hs) d = random_dir(rng);
  for (auto& d : rs) d = random_dir(rng);
  for (std::size_t i = 0; i < n_h; ++i) {
    for (std::size_t j = 0; j < n_r; ++j) {
      for (std::size_t k = 0; k < n_rho; ++k) {
        const double rho =
            n_rho == 1 ? rho_min : rho_min + (rho_max - rho_min) * k / double(n_rho - 1);
        g.h.push_back(hs[i]);
        g.r.push_back(rs[j]);
        g.rho.push_back(rho);
      }
    }
  }
  return g;
}

std::vector<SampleRecord> synthesize_samples(const OdfModel& model, const DesignGrid& design,
                                             double sigma, std::uint64_t seed) {
  validate_model(model);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::vector<SampleRecord> out;
  out.reserve(design.size());
  for (std::size_t i = 0; i < design.size(); ++i) {
    SampleRecord rec;
    rec.h = design.h[i];
    rec.r = design.r[i];
    rec.rho = design.rho[i];
    rec.value = forward_w(model, rec.h, rec.r, rec.rho);
    if (sigma > 0.0) {
      rec.value += sigma * noise(rng);
      rec.sigma = sigma;
    }
    out.push_back(rec);
  }
  return out;
}

namespace {

// Vertices of the 600-cell: 8 unit-axis permutations, 16 half vectors, and 96
// even permutations of (phi, 1, 1/phi, 0)/2 with all sign choices.
std::vector<Quat> cell600_vertices() {
  std::vector<Quat> v;
  for (int i = 0; i < 4; ++i) {
    for (double s : {1.0, -1.0}) {
      double c[4] = {0, 0, 0, 0};
      c[i] = s;
      v.push_back({c[0], c[1], c[2], c[3]});
    }
  }
  for (double s0 : {0.5, -0.5})
    for (double s1 : {0.5, -0.5})
      for (double s2 : {0.5, -0.5})
        for (double s3 : {0.5, -0.5}) v.push_back({s0, s1, s2, s3});
  const double phi = 0.5 * (1.0 + std::sqrt(5.0));
  const double a = 0.5 * phi, b = 0.5, c = 0.5 / phi;
  // Even permutations of indices (0,1,2,3).
  const int even_perm[12][4] = {{0, 1, 2, 3}, {0, 2, 3, 1}, {0, 3, 1, 2}, {1, 0, 3, 2},
                                {1, 2, 0, 3}, {1, 3, 2, 0}, {2, 0, 1, 3}, {2, 1, 3, 0},
                                {2, 3, 0, 1}, {3, 0, 2, 1}, {3, 1, 0, 2}, {3, 2, 1, 0}};
  for (const auto& p : even_perm) {
    for (double sa : {1.0, -1.0})
      for (double sb : {1.0, -1.0})
        for (double sc : {1.0, -1.0}) {
          double comp[4];
          comp[p[0]] = sa * a;
          comp[p[1]] = sb * b;
          comp[p[2]] = sc * c;
          comp[p[3]] = 0.0;
          v.push_back({comp[0], comp[1], comp[2], comp[3]});
        }
  }
  return v;  // 8 + 16 + 96 = 120
}

struct QuatLess {
  bool operator()(const Quat& a, const Quat& b) const {
    auto key = [](const Quat& q) {
      return std::array<long long, 4>{std::llround(q.w * 1e9), std::llround(q.x * 1e9),
                                      std::llround(q.y * 1e9), std::llround(q.z * 1e9)};
    };
    return key(a) < key(b);
  }
};

}  // namespace

std::vector<Quat> s3_center_grid(std::size_t count, std::uint64_t seed) {
  // Canonical (Sc >= 0) fold of the 600-cell vertices gives 60 rotations;
  // successive refinement adds normalized midpoints of nearest-neighbour
  // pairs until the requested count is reached.
  std::set<Quat, QuatLess> pool;
  for (const Quat& q : cell600_vertices()) pool.insert(canonical(q));
  std::vector<Quat> pts(pool.begin(), pool.end());
  while (pts.size() < count) {
    // Nearest-neighbour cos distance within the current set.
    double best = -1.0;
    for (size_t i = 0; i < pts.size(); ++i)
      for (size_t j = i + 1; j < pts.size(); ++j)
        best = std::max(best, std::fabs(dot(pts[i], pts[j])));
    std::set<Quat, QuatLess> extra(pts.begin(), pts.end());
    for (size_t i = 0; i < pts.size() && extra.size() < count; ++i) {
      for (size_t j = i + 1; j < pts.size() && extra.size() < count; ++j) {
        if (std::fabs(dot(pts[i], pts[j])) >= best - 1e-9) {
          Quat m = pts[i];
          if (dot(pts[i], pts[j]) < 0.0) m = -m;
          extra.insert(canonical(normalized(m + pts[j])));
        }
      }
    }
    if (extra.size() == pts.size()) break;  // no further refinement possible
    pts.assign(extra.begin(), extra.end());
  }
  // Seeded global rotation decorrelates the grid from the coordinate axes;
  // a seeded shuffle keeps truncated subsets spread out.
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
  const Quat gl = random_quat(rng), gr = random_quat(rng);
  std::shuffle(pts.begin(), pts.end(), rng);
  std::vector<Quat> out;
  out.reserve(count);
  for (const Quat& q : pts) {
    out.push_back(canonical(gl * q * gr.conj()));
    if (out.size() == count) break;
  }
  if (out.size() < count)
    throw std::invalid_argument("s3_center_grid: refinement could not reach requested count");
  return out;
}

namespace {

struct LsqSolution {
  Eigen::VectorXd x;
  double condition = 0.0;
};

// Ridge least squares via normal equations + LLT when well-conditioned,
// column-pivoted QR fallback otherwise.
LsqSolution solve_lsq(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, double ridge) {
  const int n = static_cast<int>(a.cols());
  Eigen::MatrixXd ata = a.transpose() * a;
  ata.diagonal().array() += ridge;
  const Eigen::VectorXd atb = a.transpose() * b;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(ata);
  const double emin = es.eigenvalues().minCoeff();
  const double emax = es.eigenvalues().maxCoeff();
  LsqSolution sol;
  sol.condition = emax > 0.0 && emin > 0.0 ? std::sqrt(emax / emin) : 1e308;
  if (emin > 1e-10 * emax) {
    sol.x = Eigen::LLT<Eigen::MatrixXd>(ata).solve(atb);
    return sol;
  }
  if (ridge <= 0.0) {
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
    if (qr.rank() < n)
      throw std::runtime_error("least squares: rank-deficient system without ridge (condition ~ " +
                               std::to_string(sol.condition) + "); add regularization");
    sol.x = qr.solve(b);
    return sol;
  }
  sol.x = es.eigenvectors() *
          (es.eigenvalues().array().max(1e-300).inverse().matrix().asDiagonal() *
           (es.eigenvectors().transpose() * atb));
  return sol;
}

}  // namespace

RbfMixture fit_rbf(const std::vector<SampleRecord>& samples, const std::vector<Quat>& centers,
                   const KernelSpec& spec, double ridge, bool nonneg, FitReport* report) {
  if (samples.empty() || centers.empty())
    throw std::invalid_argument("fit_rbf: need samples and centers");
  const int m = static_cast<int>(samples.size());
  const int n = static_cast<int>(centers.size());
  Eigen::MatrixXd a(m, n);
  Eigen::VectorXd b(m);
  for (int i = 0; i < m; ++i) {
    const SampleRecord& s = samples[i];
    b(i) = s.value;
    for (int j = 0; j < n; ++j) {
      RbfMixture single{{RbfComponent{centers[j], 1.0, spec}}};
      a(i, j) = forward_w_rbf(single, s.h, s.r, s.rho);
    }
  }

  LsqSolution sol = solve_lsq(a, b, ridge);
  int iterations = 0;
  if (nonneg) {
    // Active-set projection: clamp the most negative coordinate to zero and
    // re-solve on the free set until all weights are nonnegative.
    std::vector<bool> active(n, false);
    for (int pass = 0; pass < n; ++pass) {
      int worst = -1;
      double worst_val = -1e-12;
      for (int j = 0; j < n; ++j) {
        if (!active[j] && sol.x(j) < worst_val) {
          worst_val = sol.x(j);
          worst = j;
        }
      }
      if (worst < 0) break;
      active[worst] = true;
      ++iterations;
      std::vector<int> free;
      for (int j = 0; j < n; ++j)
        if (!active[j]) free.push_back(j);
      if (free.empty()) {
        sol.x.setZero();
        break;
      }
      Eigen::MatrixXd af(m, free.size());
      for (size_t k = 0; k < free.size(); ++k) af.col(k) = a.col(free[k]);
      const LsqSolution sub = solve_lsq(af, b, ridge);
      sol.x.setZero();
      for (size_t k = 0; k < free.size(); ++k) sol.x(free[k]) = sub.x(k);
      sol.condition = sub.condition;
    }
    for (int j = 0; j < n; ++j) sol.x(j) = std::max(0.0, sol.x(j));
  }

  const double scale = sol.x.sum();
  RbfMixture out;
  out.components.reserve(n);
  for (int j = 0; j < n; ++j) {
    const double w = std::fabs(scale) > 1e-300 ? sol.x(j) / scale : 0.0;
    out.components.push_back({centers[j], w, spec});
  }
  if (report) {
    const Eigen::VectorXd resid = a * sol.x - b;
    report->residual_norm = resid.norm();
    report->rms_residual = resid.norm() / std::sqrt(double(m));
    report->condition = sol.condition;
    report->scale = scale;
    report->iterations = iterations;
  }
  return out;
}

HarmonicModel fit_harmonic(const std::vector<SampleRecord>& samples, int max_degree, double ridge,
                           FitReport* report) {
  if (max_degree % 2 != 0)
    throw std::invalid_argument("fit_harmonic: max degree must be even");
  CoeffTable table(max_degree);
  const int unknowns = table.size();
  const int m = static_cast<int>(samples.size());
  if (m < unknowns && ridge <= 0.0)
    throw std::invalid_argument("fit_harmonic: underdetermined system (" + std::to_string(m) +
                                " samples < " + std::to_string(unknowns) +
                                " unknowns) needs ridge");
  Eigen::MatrixXd a(m, unknowns);
  Eigen::VectorXd b(m);
  for (int i = 0; i < m; ++i) {
    const SampleRecord& s = samples[i];
    b(i) = s.value;
    const auto yh = sph_harm_all(max_degree, s.h);
    const auto yr = sph_harm_all(max_degree, s.r);
    const auto pl = legendre_all(max_degree, std::cos(s.rho));
    int col = 0;
    for (int l = 0; l <= max_degree; l += 2) {
      const int dim = 2 * l + 1;
      for (int mi = 0; mi < dim; ++mi)
        for (int ni = 0; ni < dim; ++ni) a(i, col++) = pl[l] * yh[l][mi] * yr[l][ni];
    }
  }
  const LsqSolution sol = solve_lsq(a, b, ridge);
  int col = 0;
  for (int l = 0; l <= max_degree; l += 2) {
    const int dim = 2 * l + 1;
    for (int mi = 0; mi < dim; ++mi)
      for (int ni = 0; ni < dim; ++ni) table.set(l, mi - l, ni - l, sol.x(col++));
  }
  if (report) {
    const Eigen::VectorXd resid = a * sol.x - b;
    report->residual_norm = resid.norm();
    report->rms_residual = resid.norm() / std::sqrt(double(m));
    report->condition = sol.condition;
    report->scale = 1.0;
    report->iterations = 0;
  }
  return HarmonicModel{std::move(table)};
}

}  // namespace s3radon
