#include "tenrad/tc.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>
#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "tenrad/dictionaries.hpp"
#include "tenrad/errors.hpp"
#include "tenrad/omp.hpp"
#include "tenrad/rng.hpp"

namespace tenrad {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Component reseeding: how many of the strongest grid atoms to try per
// component, how many coordinate sweeps each trial gets before the objective
// comparison, and how many times a solve may attempt a reseed pass.
constexpr size_t kReseedCandidates = 10;
constexpr int kReseedPolishSweeps = 30;
constexpr int kReseedPolishInner = 20;
constexpr int kReseedRounds = 3;

double nuclear_norm(const Matrix& m) {
  return Eigen::JacobiSVD<Matrix>(m).singularValues().sum();
}

Matrix shrink_singular_values(const Matrix& m, double thresh) {
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  Eigen::VectorXd s = svd.singularValues();
  for (Eigen::Index i = 0; i < s.size(); ++i) s(i) = std::max(s(i) - thresh, 0.0);
  return svd.matrixU() * s.asDiagonal() * svd.matrixV().adjoint();
}

// Sums of the anti-diagonals r+c = d of a Hankel-shaped matrix.
Vector antidiagonal_sums(const Matrix& m, int n) {
  Vector t = Vector::Zero(n);
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) t(r + c) += m(r, c);
  return t;
}

Eigen::VectorXd antidiagonal_counts(int rows, int cols, int n) {
  Eigen::VectorXd mult = Eigen::VectorXd::Zero(n);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) mult(r + c) += 1.0;
  return mult;
}

// Separable quadratic data model of one factor vector with the others fixed:
// (mu/2) * sum_i (w_i |u_i|^2 - 2 Re(conj(u_i) v_i)) + const.
struct BlockQuadratic {
  Eigen::VectorXd w;
  Vector v;
  double mu = 0.0;

  double value(const Vector& u) const {
    double q = 0.0;
    for (Eigen::Index i = 0; i < u.size(); ++i)
      q += w(i) * std::norm(u(i)) - 2.0 * (std::conj(u(i)) * v(i)).real();
    return 0.5 * mu * q;
  }
};

struct BlockState {
  Matrix t, d;
  bool warm = false;
};

// ADMM on: min ||H{u}||_* + quad(u), splitting T = H{u}.
Vector solve_block(Vector u, const BlockQuadratic& q, BlockState& st, int iters, double rho) {
  const int n = static_cast<int>(u.size());
  const int rows = (n + 2) / 2, cols = n + 1 - rows;
  const Eigen::VectorXd mult = antidiagonal_counts(rows, cols, n);
  if (!st.warm) {
    st.t = hankelize(u);
    st.d = Matrix::Zero(rows, cols);
    st.warm = true;
  }
  for (int it = 0; it < iters; ++it) {
    st.t = shrink_singular_values(hankelize(u) + st.d, 1.0 / rho);
    const Vector tsum = antidiagonal_sums(st.t - st.d, n);
    for (Eigen::Index i = 0; i < n; ++i)
      u(i) = (q.mu * q.v(i) + rho * tsum(i)) / (q.mu * q.w(i) + rho * mult(i));
    st.d += hankelize(u) - st.t;
  }
  return u;
}

cplx cbrt_complex(cplx z) { return std::polar(std::cbrt(std::abs(z)), std::arg(z) / 3.0); }

// Dominant-pole estimate: shift-invariance of the leading left singular
// vector of the Hankel lift, with a raw phase-difference ratio as fallback.
cplx single_pole(const Vector& u, const std::string& what) {
  const double big = u.cwiseAbs().maxCoeff();
  if (!(big > 1e-12) || !std::isfinite(big))
    throw extraction_error("degenerate " + what + " (near-zero or non-finite)");
  const Matrix h = hankelize(u / big);
  Eigen::JacobiSVD<Matrix> svd(h, Eigen::ComputeThinU);
  const Vector lead = svd.matrixU().col(0);
  const Eigen::Index m = lead.size() - 1;
  cplx pole{0.0, 0.0};
  const double den = lead.head(m).squaredNorm();
  if (den > 1e-12) pole = lead.head(m).dot(lead.tail(m)) / den;
  if (!std::isfinite(std::abs(pole)) || std::abs(pole) < 1e-9) {
    const Eigen::Index k = u.size() - 1;
    const double den2 = u.head(k).squaredNorm();
    if (den2 < 1e-20) throw extraction_error("degenerate " + what + " (no phase information)");
    pole = u.head(k).dot(u.tail(k)) / den2;
  }
  if (!std::isfinite(std::abs(pole)) || std::abs(pole) < 1e-9)
    throw extraction_error("degenerate " + what + " (no phase information)");
  return pole;
}

}  // namespace

Matrix hankelize(const Vector& v) {
  const int n = static_cast<int>(v.size());
  if (n < 2) throw argument_error("hankelize needs at least 2 samples");
  const int rows = (n + 2) / 2, cols = n + 1 - rows;
  Matrix h(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) h(r, c) = v(r + c);
  return h;
}

Vector CpFactors::evaluate(const std::vector<Triple>& at) const {
  Vector out = Vector::Zero(static_cast<Eigen::Index>(at.size()));
  for (size_t r = 0; r < at.size(); ++r)
    for (int l = 0; l < rank(); ++l)
      out(static_cast<Eigen::Index>(r)) += amplitudes[static_cast<size_t>(l)] *
                                           a_factors[static_cast<size_t>(l)](at[r].i) *
                                           b_factors[static_cast<size_t>(l)](at[r].j) *
                                           f_factors[static_cast<size_t>(l)](at[r].k);
  return out;
}

Tensor3 CpFactors::to_dense(const std::array<int, 3>& shape) const {
  Tensor3 t(shape[0], shape[1], shape[2]);
  for (int l = 0; l < rank(); ++l) {
    const auto& a = a_factors[static_cast<size_t>(l)];
    const auto& b = b_factors[static_cast<size_t>(l)];
    const auto& f = f_factors[static_cast<size_t>(l)];
    const cplx amp = amplitudes[static_cast<size_t>(l)];
    for (int k = 0; k < shape[2]; ++k)
      for (int j = 0; j < shape[1]; ++j)
        for (int i = 0; i < shape[0]; ++i) t(i, j, k) += amp * a(i) * b(j) * f(k);
  }
  return t;
}

void TcSolverConfig::validate() const {
  if (max_iters < 1) throw config_error("max_iters must be positive");
  if (!(tol > 0.0) || tol >= 1.0) throw config_error("tol must lie in (0, 1)");
  if (inner_admm_iters < 1) throw config_error("inner_admm_iters must be positive");
  if (!(rho > 0.0)) throw config_error("rho must be positive");
  if (std::isnan(mu)) throw config_error("mu must not be NaN");
}

TcResult tc_recover(const PartialMeasurementTensor& z, const IndexSets& sets,
                    const RadarConfig& config, int rank, const TcSolverConfig& solver) {
  solver.validate();
  config.validate();
  if (rank < 1) throw argument_error("rank must be at least 1");
  if (z.support.size() != sets.size())
    throw shape_error("measurement entries do not match index sets");

  const Vector& zv = z.values;
  const double mu =
      solver.mu > 0.0 ? solver.mu
                      : 10.0 * static_cast<double>(sets.size()) / std::max(zv.norm(), 1e-12);
  const std::array<int, 3> dims = sets.shape;
  const size_t nobs = sets.size();

  // factors[mode][l]; scale lives inside the vectors during the solve.
  std::array<std::vector<Vector>, 3> fac;
  if (solver.init == TcInit::omp_warm_start) {
    const OmpResult warm = omp_recover(z, sets, config, rank);
    const TargetScene scene = support_to_scene(warm, config);
    for (int l = 0; l < rank; ++l) {
      const FactorVectors fv = vandermonde_vectors(scene.targets[static_cast<size_t>(l)], config);
      const cplx s = cbrt_complex(warm.amplitudes[static_cast<size_t>(l)]);
      fac[0].push_back(fv.delay * s);
      fac[1].push_back(fv.doa * s);
      fac[2].push_back(fv.doppler * s);
    }
  } else {
    Rng rng(solver.seed);
    const double scale =
        std::cbrt(zv.norm() / std::sqrt(static_cast<double>(nobs)) / std::max(rank, 1));
    for (int mode = 0; mode < 3; ++mode)
      for (int l = 0; l < rank; ++l) {
        Vector u(dims[static_cast<size_t>(mode)]);
        for (Eigen::Index i = 0; i < u.size(); ++i)
          u(i) = std::polar(scale, kTwoPi * rng.uniform());
        fac[static_cast<size_t>(mode)].push_back(u);
      }
  }

  const auto component_values = [&](const Vector& a, const Vector& b, const Vector& f) {
    Vector c(static_cast<Eigen::Index>(nobs));
    for (size_t r = 0; r < nobs; ++r) {
      const Triple& t = sets.entries[r].at;
      c(static_cast<Eigen::Index>(r)) = a(t.i) * b(t.j) * f(t.k);
    }
    return c;
  };
  const auto contribution = [&](int l) {
    return component_values(fac[0][static_cast<size_t>(l)], fac[1][static_cast<size_t>(l)],
                            fac[2][static_cast<size_t>(l)]);
  };

  // Coordinate descent on a single component against a fixed residual.
  const auto polish_component = [&](std::array<Vector, 3>& vecs, const Vector& rl, double mu_eff,
                                    int sweeps) {
    std::array<BlockState, 3> st;
    for (int sweep = 0; sweep < sweeps; ++sweep)
      for (int mode = 0; mode < 3; ++mode) {
        const int n = dims[static_cast<size_t>(mode)];
        BlockQuadratic q;
        q.mu = mu_eff;
        q.w = Eigen::VectorXd::Zero(n);
        q.v = Vector::Zero(n);
        for (size_t r = 0; r < nobs; ++r) {
          const Triple& t = sets.entries[r].at;
          const int idx = mode == 0 ? t.i : (mode == 1 ? t.j : t.k);
          cplx coeff = 1.0;
          if (mode != 0) coeff *= vecs[0](t.i);
          if (mode != 1) coeff *= vecs[1](t.j);
          if (mode != 2) coeff *= vecs[2](t.k);
          q.w(idx) += std::norm(coeff);
          q.v(idx) += std::conj(coeff) * rl(static_cast<Eigen::Index>(r));
        }
        Vector& u = vecs[static_cast<size_t>(mode)];
        const double before = nuclear_norm(hankelize(u)) + q.value(u);
        BlockState& bs = st[static_cast<size_t>(mode)];
        const int inner = std::min(solver.inner_admm_iters, kReseedPolishInner);
        const Vector candidate = solve_block(u, q, bs, inner, solver.rho);
        if (!candidate.allFinite()) continue;
        const double after = nuclear_norm(hankelize(candidate)) + q.value(candidate);
        if (after <= before + 1e-12 * (1.0 + std::abs(before)))
          u = candidate;
        else
          bs.warm = false;
      }
  };
  std::vector<Vector> contribs;
  for (int l = 0; l < rank; ++l) contribs.push_back(contribution(l));
  Vector model = Vector::Zero(static_cast<Eigen::Index>(nobs));
  for (const auto& c : contribs) model += c;

  const auto objective = [&]() {
    double nuc = 0.0;
    for (int mode = 0; mode < 3; ++mode)
      for (int l = 0; l < rank; ++l)
        nuc += nuclear_norm(hankelize(fac[static_cast<size_t>(mode)][static_cast<size_t>(l)]));
    return nuc + 0.5 * mu * (model - zv).squaredNorm();
  };

  TcResult result;
  result.objective_history.push_back(objective());
  if (!std::isfinite(result.objective_history.back()))
    throw numerical_error("non-finite objective at initialization");

  std::vector<std::array<BlockState, 3>> states(static_cast<size_t>(rank));

  // Coordinate descent can park a component in a spurious basin adjacent to a
  // bad warm start (thinned-geometry sidelobes make the initial grid pick
  // unreliable). The reseed pass refits each component against its
  // leave-one-out residual from the strongest grid atoms, keeping a swap only
  // when it strictly lowers the full objective; trying the argmax alone is not
  // enough because the offending sidelobe usually *is* the argmax.
  const auto reseed_pass = [&]() -> bool {
    // A model that already fits the data has nothing to gain from a swap.
    if ((model - zv).norm() <= 1e-3 * std::max(zv.norm(), 1e-12)) return false;
    const Dictionaries dicts = build_dictionaries(config);
    const Matrix ah = dicts.delay.adjoint();
    const Matrix bh = dicts.doa.adjoint();
    const Matrix fh = dicts.doppler.adjoint();
    const GridMaps grid(config);
    double nuc_total = 0.0;
    for (int mode = 0; mode < 3; ++mode)
      for (int l = 0; l < rank; ++l)
        nuc_total += nuclear_norm(hankelize(fac[static_cast<size_t>(mode)][static_cast<size_t>(l)]));

    bool any = false;
    for (int l = 0; l < rank; ++l) {
      const Vector rl = zv - model + contribs[static_cast<size_t>(l)];
      Tensor3 rt(dims[0], dims[1], dims[2]);
      for (size_t r = 0; r < nobs; ++r) {
        const Triple& t = sets.entries[r].at;
        rt(t.i, t.j, t.k) = rl(static_cast<Eigen::Index>(r));
      }
      const Tensor3 proj = multilinear_product(rt, ah, bh, fh);

      std::vector<std::pair<double, Triple>> ranked;
      ranked.reserve(static_cast<size_t>(dims[0]) * dims[1] * dims[2]);
      for (int i = 0; i < dims[0]; ++i)
        for (int j = 0; j < dims[1]; ++j)
          for (int k = 0; k < dims[2]; ++k)
            ranked.push_back({std::abs(proj(i, j, k)), Triple{i, j, k}});
      const auto keep = static_cast<std::ptrdiff_t>(std::min(kReseedCandidates, ranked.size()));
      std::partial_sort(ranked.begin(), ranked.begin() + keep, ranked.end(),
                        [](const auto& x, const auto& y) {
                          return x.first != y.first ? x.first > y.first : x.second < y.second;
                        });

      double nuc_l = 0.0;
      for (int mode = 0; mode < 3; ++mode)
        nuc_l += nuclear_norm(hankelize(fac[static_cast<size_t>(mode)][static_cast<size_t>(l)]));
      const double cur_total = nuc_total + 0.5 * mu * (model - zv).squaredNorm();
      double best_total = cur_total - 1e-9 * (1.0 + std::abs(cur_total));
      std::array<Vector, 3> best_vecs;
      Vector best_contrib;
      double best_nuc = 0.0;
      bool found = false;
      for (std::ptrdiff_t c = 0; c < keep; ++c) {
        const Triple& at = ranked[static_cast<size_t>(c)].second;
        const cplx amp = proj(at.i, at.j, at.k) / static_cast<double>(nobs);
        Target t;
        t.amplitude = 1.0;
        t.delay = grid.delay_value(at.i);
        t.doa = grid.doa_value(at.j);
        t.doppler = grid.doppler_value(at.k);
        const FactorVectors fv = vandermonde_vectors(t, config);
        const cplx s = cbrt_complex(amp);
        std::array<Vector, 3> vecs{fv.delay * s, fv.doa * s, fv.doppler * s};
        // A bare grid atom explains an off-grid component poorly, so polish
        // the trial before judging it; the swap is judged on what the trial
        // becomes, not on where it starts.
        polish_component(vecs, rl, mu, kReseedPolishSweeps);
        const Vector tc = component_values(vecs[0], vecs[1], vecs[2]);
        double nuc_trial = 0.0;
        for (const auto& v : vecs) nuc_trial += nuclear_norm(hankelize(v));
        const double total =
            nuc_total - nuc_l + nuc_trial +
            0.5 * mu * (model - contribs[static_cast<size_t>(l)] + tc - zv).squaredNorm();
        if (total < best_total) {
          best_total = total;
          best_vecs = vecs;
          best_contrib = tc;
          best_nuc = nuc_trial;
          found = true;
        }
      }
      if (found) {
        model -= contribs[static_cast<size_t>(l)];
        for (int mode = 0; mode < 3; ++mode) {
          fac[static_cast<size_t>(mode)][static_cast<size_t>(l)] =
              best_vecs[static_cast<size_t>(mode)];
          states[static_cast<size_t>(l)][static_cast<size_t>(mode)].warm = false;
        }
        contribs[static_cast<size_t>(l)] = best_contrib;
        model += best_contrib;
        nuc_total += best_nuc - nuc_l;
        any = true;
      }
    }
    return any;
  };

  int reseed_rounds_left = kReseedRounds;
  const int reseed_interval = std::max(10, solver.max_iters / 4);

  for (int sweep = 0; sweep < solver.max_iters; ++sweep) {
    for (int l = 0; l < rank; ++l)
      for (int mode = 0; mode < 3; ++mode) {
        const int n = dims[static_cast<size_t>(mode)];
        BlockQuadratic q;
        q.mu = mu;
        q.w = Eigen::VectorXd::Zero(n);
        q.v = Vector::Zero(n);
        for (size_t r = 0; r < nobs; ++r) {
          const Triple& t = sets.entries[r].at;
          const int idx = mode == 0 ? t.i : (mode == 1 ? t.j : t.k);
          cplx coeff = 1.0;
          if (mode != 0) coeff *= fac[0][static_cast<size_t>(l)](t.i);
          if (mode != 1) coeff *= fac[1][static_cast<size_t>(l)](t.j);
          if (mode != 2) coeff *= fac[2][static_cast<size_t>(l)](t.k);
          const cplx resid = zv(static_cast<Eigen::Index>(r)) -
                             model(static_cast<Eigen::Index>(r)) +
                             contribs[static_cast<size_t>(l)](static_cast<Eigen::Index>(r));
          q.w(idx) += std::norm(coeff);
          q.v(idx) += std::conj(coeff) * resid;
        }

        Vector& u = fac[static_cast<size_t>(mode)][static_cast<size_t>(l)];
        const double before = nuclear_norm(hankelize(u)) + q.value(u);
        BlockState& st = states[static_cast<size_t>(l)][static_cast<size_t>(mode)];
        const Vector candidate = solve_block(u, q, st, solver.inner_admm_iters, solver.rho);
        if (!candidate.allFinite()) throw numerical_error("non-finite iterate in factor update");
        const double after = nuclear_norm(hankelize(candidate)) + q.value(candidate);
        if (after <= before + 1e-12 * (1.0 + std::abs(before))) {
          u = candidate;
          model -= contribs[static_cast<size_t>(l)];
          contribs[static_cast<size_t>(l)] = contribution(l);
          model += contribs[static_cast<size_t>(l)];
        } else {
          st.warm = false;  // restart the duals from the kept iterate next visit
        }
      }

    // Rebuild the model from scratch to stop incremental drift.
    model.setZero();
    for (int l = 0; l < rank; ++l) {
      contribs[static_cast<size_t>(l)] = contribution(l);
      model += contribs[static_cast<size_t>(l)];
    }

    const double obj = objective();
    if (!std::isfinite(obj)) throw numerical_error("non-finite objective during solve");
    const double prev = result.objective_history.back();
    result.objective_history.push_back(obj);
    bool settled = prev - obj < solver.tol * std::max(1.0, std::abs(prev));

    if (reseed_rounds_left > 0 && (settled || (sweep + 1) % reseed_interval == 0)) {
      --reseed_rounds_left;
      if (reseed_pass()) {
        const double reseeded = objective();
        if (!std::isfinite(reseeded)) throw numerical_error("non-finite objective after reseed");
        result.objective_history.push_back(reseeded);
        settled = false;
      } else {
        reseed_rounds_left = 0;  // a pass that finds nothing will not find it later
      }
    }
    if (settled) {
      result.converged = true;
      break;
    }
  }

  result.data_residual = (model - zv).norm();

  // Fold scales into amplitudes; a vector whose first entry vanishes is left
  // as-is (degenerate; parameter extraction rejects it).
  for (int l = 0; l < rank; ++l) {
    cplx amp = 1.0;
    const auto normalize = [&amp](Vector& u) {
      const double big = u.cwiseAbs().maxCoeff();
      if (!(big > 0.0) || std::abs(u(0)) < 1e-9 * big) return;
      amp *= u(0);
      u /= u(0);
    };
    Vector a = fac[0][static_cast<size_t>(l)];
    Vector b = fac[1][static_cast<size_t>(l)];
    Vector f = fac[2][static_cast<size_t>(l)];
    normalize(a);
    normalize(b);
    normalize(f);
    result.factors.a_factors.push_back(std::move(a));
    result.factors.b_factors.push_back(std::move(b));
    result.factors.f_factors.push_back(std::move(f));
    result.factors.amplitudes.push_back(amp);
  }
  return result;
}

TargetScene extract_parameters(const CpFactors& factors, const RadarConfig& config) {
  const size_t rank = factors.amplitudes.size();
  if (factors.a_factors.size() != rank || factors.b_factors.size() != rank ||
      factors.f_factors.size() != rank)
    throw argument_error("factor lists have mismatched lengths");

  TargetScene scene;
  for (size_t l = 0; l < rank; ++l) {
    const std::string tag = "factor of target " + std::to_string(l);
    const double ca = std::arg(single_pole(factors.a_factors[l], "delay " + tag)) / kTwoPi;
    const double cb = std::arg(single_pole(factors.b_factors[l], "doa " + tag)) / kTwoPi;
    const double cf = std::arg(single_pole(factors.f_factors[l], "doppler " + tag)) / kTwoPi;

    double delay_frac = -ca;  // a-pole angle is -2*pi*delay/pri
    delay_frac -= std::floor(delay_frac);
    Target t;
    t.delay = delay_frac * config.pri;
    t.doa = cb < 0.0 ? cb : cb - 1.0;  // representative in [-1, 0)
    t.doppler = -cf / config.pri;
    t.amplitude = factors.amplitudes[l];
    scene.targets.push_back(t);
  }
  return scene;
}

TargetScene extract_parameters(const CpFactors& factors, const RadarConfig& config,
                               const PartialMeasurementTensor& z, const IndexSets& sets) {
  TargetScene scene = extract_parameters(factors, config);
  Matrix g(static_cast<Eigen::Index>(sets.size()), static_cast<Eigen::Index>(scene.targets.size()));
  for (size_t l = 0; l < scene.targets.size(); ++l) {
    TargetScene one;
    one.targets.push_back(scene.targets[l]);
    one.targets[0].amplitude = 1.0;
    g.col(static_cast<Eigen::Index>(l)) = synthesize(one, config, sets).values;
  }
  const Vector alpha = Eigen::ColPivHouseholderQR<Matrix>(g).solve(z.values);
  for (size_t l = 0; l < scene.targets.size(); ++l)
    scene.targets[l].amplitude = alpha(static_cast<Eigen::Index>(l));
  return scene;
}

}  // namespace tenrad
