#pragma once

#include <vector>

#include "tenrad/types.hpp"

namespace tenrad {

/// The full square dictionary matrices whose row selections give the
/// per-transmitter partial sensing matrices.
///
/// Sign conventions (fixed so that on-grid direct synthesis and the
/// multi-linear path agree exactly):
///   delay   A[r,n] = exp(-2i pi r n / TN)
///   doa     B[v,j] = exp(+2i pi v (-1 + 2j/TR))
///   doppler F[p,c] = exp(-2i pi p c / P)
struct Dictionaries {
  Matrix delay;    // TN x TN
  Matrix doa;      // TR x TR
  Matrix doppler;  // P x P
};

Dictionaries build_dictionaries(const RadarConfig& config);

/// Geometric factor vectors of one target: a[n] = exp(-2i pi n delay/pri),
/// b[v] = exp(+2i pi v doa), f[p] = exp(-2i pi doppler p pri). On-grid
/// parameters reproduce the corresponding dictionary columns.
struct FactorVectors {
  Vector delay;    // length TN
  Vector doa;      // length TR
  Vector doppler;  // length P
};

FactorVectors vandermonde_vectors(const Target& target, const RadarConfig& config);

/// Khatri-Rao support matrix: one column per candidate triple, one row per
/// observed triple (in the given order). Entry (r,l) is the product of the
/// three dictionary entries at (observed[r], candidates[l]).
Matrix khatri_rao_support(const std::vector<Triple>& candidates, const Dictionaries& dicts,
                          const std::vector<Triple>& observed);

}  // namespace tenrad
