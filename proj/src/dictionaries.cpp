#include "tenrad/dictionaries.hpp"

#include <cmath>
#include <numbers>

#include "tenrad/errors.hpp"

namespace tenrad {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

Dictionaries build_dictionaries(const RadarConfig& config) {
  config.validate();
  const int tn = config.tn();
  const int tr = config.tr();
  const int p = config.pulse_count;

  Dictionaries d;
  d.delay.resize(tn, tn);
  for (int r = 0; r < tn; ++r)
    for (int n = 0; n < tn; ++n)
      d.delay(r, n) = std::polar(1.0, -kTwoPi * r * n / tn);

  d.doa.resize(tr, tr);
  for (int v = 0; v < tr; ++v)
    for (int j = 0; j < tr; ++j)
      d.doa(v, j) = std::polar(1.0, kTwoPi * v * (-1.0 + 2.0 * j / tr));

  d.doppler.resize(p, p);
  for (int r = 0; r < p; ++r)
    for (int c = 0; c < p; ++c)
      d.doppler(r, c) = std::polar(1.0, -kTwoPi * r * c / p);
  return d;
}

FactorVectors vandermonde_vectors(const Target& target, const RadarConfig& config) {
  const int tn = config.tn();
  const int tr = config.tr();
  const int p = config.pulse_count;
  FactorVectors v;
  v.delay.resize(tn);
  for (int n = 0; n < tn; ++n)
    v.delay(n) = std::polar(1.0, -kTwoPi * n * target.delay / config.pri);
  v.doa.resize(tr);
  for (int i = 0; i < tr; ++i)
    v.doa(i) = std::polar(1.0, kTwoPi * i * target.doa);
  v.doppler.resize(p);
  for (int i = 0; i < p; ++i)
    v.doppler(i) = std::polar(1.0, -kTwoPi * target.doppler * i * config.pri);
  return v;
}

Matrix khatri_rao_support(const std::vector<Triple>& candidates, const Dictionaries& dicts,
                          const std::vector<Triple>& observed) {
  const auto tn = static_cast<int>(dicts.delay.rows());
  const auto tr = static_cast<int>(dicts.doa.rows());
  const auto p = static_cast<int>(dicts.doppler.rows());
  for (const Triple& t : candidates) {
    if (t.i < 0 || t.i >= tn || t.j < 0 || t.j >= tr || t.k < 0 || t.k >= p)
      throw index_error("candidate triple out of dictionary range");
  }
  for (const Triple& t : observed) {
    if (t.i < 0 || t.i >= tn || t.j < 0 || t.j >= tr || t.k < 0 || t.k >= p)
      throw index_error("observed triple out of dictionary range");
  }
  Matrix u(observed.size(), candidates.size());
  for (Eigen::Index r = 0; r < u.rows(); ++r) {
    const Triple& o = observed[static_cast<size_t>(r)];
    for (Eigen::Index l = 0; l < u.cols(); ++l) {
      const Triple& c = candidates[static_cast<size_t>(l)];
      u(r, l) = dicts.delay(o.i, c.i) * dicts.doa(o.j, c.j) * dicts.doppler(o.k, c.k);
    }
  }
  return u;
}

}  // namespace tenrad
