#pragma once

#include <cstdint>
#include <vector>

#include "tenrad/index_sets.hpp"
#include "tenrad/synth.hpp"
#include "tenrad/tensor3.hpp"
#include "tenrad/types.hpp"

namespace tenrad {

/// Rank-L factor triples of the recovered tensor, sum_l amp_l a_l (x) b_l (x) f_l.
/// Factor vectors are normalized to unit first entry where possible, with the
/// scale folded into amplitudes; a near-zero factor is left as-is (degenerate,
/// rejected downstream by extraction).
struct CpFactors {
  std::vector<Vector> a_factors;  // length TN each
  std::vector<Vector> b_factors;  // length TR each
  std::vector<Vector> f_factors;  // length P each
  std::vector<cplx> amplitudes;

  int rank() const { return static_cast<int>(amplitudes.size()); }
  /// Model values at the given cells: sum_l amp_l a[i] b[j] f[k].
  Vector evaluate(const std::vector<Triple>& at) const;
  Tensor3 to_dense(const std::array<int, 3>& shape) const;
};

enum class TcInit { omp_warm_start, random };

struct TcSolverConfig {
  double mu = 0.0;   // data-term weight; <= 0 selects 10*|observed|/||z||
  int max_iters = 150;
  double tol = 1e-7;  // relative objective decrease per sweep
  TcInit init = TcInit::omp_warm_start;
  int inner_admm_iters = 40;
  double rho = 1.0;   // ADMM penalty
  std::uint64_t seed = 0;  // used by random init only

  void validate() const;
};

struct TcResult {
  CpFactors factors;
  std::vector<double> objective_history;  // one entry per sweep, non-increasing
  bool converged = false;
  double data_residual = 0.0;  // ||model - z|| on the observed cells at exit
};

/// Hankel lift of a vector: ceil((n+1)/2) x (n+1-ceil((n+1)/2)) matrix with
/// H[i,j] = v[i+j]. Rank 1 exactly when v is a geometric progression.
Matrix hankelize(const Vector& v);

/// Completes the measurement tensor as a rank-L sum of outer products whose
/// factor vectors have low-rank Hankel lifts (i.e. look like single complex
/// exponentials), by block-coordinate descent with an ADMM subproblem solver.
/// The reported objective history is non-increasing; NaN in the iterates
/// raises numerical_error. Non-convergence is reported via the flag.
TcResult tc_recover(const PartialMeasurementTensor& z, const IndexSets& sets,
                    const RadarConfig& config, int rank, const TcSolverConfig& solver = {});

/// Reads the dominant complex-exponential generator off each factor vector
/// (matrix pencil on its Hankel lift) and maps the three pole angles to
/// delay / DoA / Doppler. Amplitudes are carried over from the factors.
TargetScene extract_parameters(const CpFactors& factors, const RadarConfig& config);

/// Same, but refits all amplitudes by least squares against the observed
/// measurements at the extracted parameters.
TargetScene extract_parameters(const CpFactors& factors, const RadarConfig& config,
                               const PartialMeasurementTensor& z, const IndexSets& sets);

}  // namespace tenrad
