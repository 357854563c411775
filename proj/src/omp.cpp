#include "tenrad/omp.hpp"

#include <Eigen/QR>
#include <set>
#include <string>

#include "tenrad/dictionaries.hpp"
#include "tenrad/errors.hpp"
#include "tenrad/tensor3.hpp"

namespace tenrad {

namespace {

std::string triple_str(const Triple& t) {
  return "(" + std::to_string(t.i) + "," + std::to_string(t.j) + "," + std::to_string(t.k) + ")";
}

// Finds a nearly-parallel pair of columns to blame for a rank-deficient fit.
[[noreturn]] void throw_collision(const Matrix& u, const std::vector<Triple>& support) {
  for (Eigen::Index a = 0; a < u.cols(); ++a)
    for (Eigen::Index b = a + 1; b < u.cols(); ++b) {
      const double cosang = std::abs(u.col(a).dot(u.col(b))) / (u.col(a).norm() * u.col(b).norm());
      if (cosang > 1.0 - 1e-9)
        throw singularity_error("support triples " + triple_str(support[static_cast<size_t>(a)]) +
                                " and " + triple_str(support[static_cast<size_t>(b)]) +
                                " are indistinguishable under this observation pattern");
    }
  throw singularity_error("support matrix is rank deficient");
}

}  // namespace

OmpResult omp_recover(const PartialMeasurementTensor& z, const IndexSets& sets,
                      const RadarConfig& config, int sparsity) {
  if (sparsity < 1) throw argument_error("sparsity must be at least 1");
  if (sets.size() < static_cast<size_t>(sparsity))
    throw argument_error("fewer observed entries than requested sparsity");
  if (z.support.size() != sets.size())
    throw shape_error("measurement entries do not match index sets");

  const Dictionaries dicts = build_dictionaries(config);
  const Matrix ah = dicts.delay.adjoint();
  const Matrix bh = dicts.doa.adjoint();
  const Matrix fh = dicts.doppler.adjoint();
  const std::vector<Triple> observed = sets.triples();

  OmpResult result;
  result.residual_norm_history.push_back(z.values.norm());
  Vector residual = z.values;
  std::set<Triple> chosen;

  for (int it = 0; it < sparsity; ++it) {
    Tensor3 r(sets.shape[0], sets.shape[1], sets.shape[2]);
    for (size_t idx = 0; idx < observed.size(); ++idx)
      r(observed[idx].i, observed[idx].j, observed[idx].k) = residual(static_cast<Eigen::Index>(idx));
    const Tensor3 proj = multilinear_product(r, ah, bh, fh);

    // Two passes: find the peak magnitude, then take the lowest lexicographic
    // triple within a relative tie window. Aliased dictionary columns produce
    // exact ties up to rounding, so a strict scan would be order-fragile.
    double peak = -1.0;
    for (int i = 0; i < proj.dim(0); ++i)
      for (int j = 0; j < proj.dim(1); ++j)
        for (int k = 0; k < proj.dim(2); ++k) {
          if (chosen.count({i, j, k})) continue;
          peak = std::max(peak, std::abs(proj(i, j, k)));
        }
    Triple best{-1, -1, -1};
    const double cutoff = peak - 1e-9 * peak;
    for (int i = 0; i < proj.dim(0) && best.i < 0; ++i)
      for (int j = 0; j < proj.dim(1) && best.i < 0; ++j)
        for (int k = 0; k < proj.dim(2) && best.i < 0; ++k) {
          if (chosen.count({i, j, k})) continue;
          if (std::abs(proj(i, j, k)) >= cutoff) best = {i, j, k};
        }
    chosen.insert(best);
    result.support.push_back(best);

    const Matrix u = khatri_rao_support(result.support, dicts, observed);
    Eigen::ColPivHouseholderQR<Matrix> qr(u);
    qr.setThreshold(1e-10);
    if (qr.rank() < u.cols()) throw_collision(u, result.support);
    const Vector alpha = qr.solve(z.values);
    residual = z.values - u * alpha;
    result.residual_norm_history.push_back(residual.norm());
    result.amplitudes.assign(alpha.data(), alpha.data() + alpha.size());
  }

  result.recovered.shape = sets.shape;
  result.recovered.support = result.support;
  result.recovered.amplitudes = result.amplitudes;
  result.recovered.validate();
  return result;
}

TargetScene support_to_scene(const OmpResult& result, const RadarConfig& config) {
  const GridMaps grid(config);
  TargetScene scene;
  for (size_t l = 0; l < result.support.size(); ++l) {
    const Triple& t = result.support[l];
    scene.targets.push_back({result.amplitudes[l], grid.delay_value(t.i), grid.doa_value(t.j),
                             grid.doppler_value(t.k)});
  }
  return scene;
}

}  // namespace tenrad
