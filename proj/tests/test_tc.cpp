#include <doctest.h>

#include <Eigen/SVD>
#include <cmath>
#include <complex>

#include "helpers.hpp"
#include "tenrad/dictionaries.hpp"
#include "tenrad/errors.hpp"
#include "tenrad/index_sets.hpp"
#include "tenrad/synth.hpp"
#include "tenrad/tc.hpp"

using namespace tenrad;

namespace {

void check_monotone(const std::vector<double>& history) {
  REQUIRE(!history.empty());
  for (size_t i = 1; i < history.size(); ++i)
    CHECK(history[i] <= history[i - 1] + 1e-9 * (1.0 + std::abs(history[i - 1])));
}

CpFactors factors_for(const std::vector<Target>& targets, const RadarConfig& config) {
  CpFactors f;
  for (const Target& t : targets) {
    const FactorVectors v = vandermonde_vectors(t, config);
    f.a_factors.push_back(v.delay);
    f.b_factors.push_back(v.doa);
    f.f_factors.push_back(v.doppler);
    f.amplitudes.push_back(t.amplitude);
  }
  return f;
}

}  // namespace

TEST_CASE("hankel lift lays out antidiagonals") {
  Vector v(3);
  v << 1.0, 1.0, 1.0;
  const Matrix h = hankelize(v);
  REQUIRE(h.rows() == 2);
  REQUIRE(h.cols() == 2);
  CHECK((h - Matrix::Ones(2, 2)).norm() == 0.0);

  Vector w(4);
  w << 1.0, 2.0, 3.0, 4.0;
  const Matrix hw = hankelize(w);
  REQUIRE(hw.rows() == 3);
  REQUIRE(hw.cols() == 2);
  CHECK(hw(0, 1) == cplx(2.0));
  CHECK(hw(1, 1) == cplx(3.0));
  CHECK(hw(2, 0) == cplx(3.0));
  CHECK(hw(2, 1) == cplx(4.0));

  Vector tiny(1);
  tiny << 1.0;
  CHECK_THROWS_AS(hankelize(tiny), argument_error);
}

TEST_CASE("hankel rank separates one exponential from two") {
  const cplx z1 = std::polar(0.95, 0.7), z2 = std::polar(1.0, -1.9);
  Vector one(8), two(8);
  for (int i = 0; i < 8; ++i) {
    one(i) = std::pow(z1, i);
    two(i) = std::pow(z1, i) + 0.8 * std::pow(z2, i);
  }
  Eigen::JacobiSVD<Matrix> svd_one(hankelize(one));
  const auto& s1 = svd_one.singularValues();
  CHECK(s1(1) < 1e-10 * s1(0));

  Eigen::JacobiSVD<Matrix> svd_two(hankelize(two));
  const auto& s2 = svd_two.singularValues();
  CHECK(s2(1) > 1e-3 * s2(0));
  CHECK(s2(2) < 1e-10 * s2(0));
}

TEST_CASE("factor evaluation matches the dense expansion") {
  const RadarConfig c = fixtures::tiny();
  const IndexSets sets = build_index_sets(c);
  const GridMaps grid(c);
  Target t1{cplx(0.5, 1.0), grid.delay_value(1), grid.doa_value(2), grid.doppler_value(3)};
  Target t2{cplx(-1.0, 0.2), grid.delay_value(3), grid.doa_value(0), grid.doppler_value(1)};
  const CpFactors f = factors_for({t1, t2}, c);
  CHECK(f.rank() == 2);

  const Tensor3 dense = f.to_dense({c.tn(), c.tr(), c.pulse_count});
  const Vector at = f.evaluate(sets.triples());
  double worst = 0.0;
  for (size_t r = 0; r < sets.size(); ++r) {
    const Triple& t = sets.entries[r].at;
    worst = std::max(worst, std::abs(dense(t.i, t.j, t.k) - at(static_cast<Eigen::Index>(r))));
  }
  CHECK(worst < 1e-12 * at.norm());
}

TEST_CASE("pole extraction inverts clean steering vectors off the grid") {
  const RadarConfig c = fixtures::thinned();
  Rng rng(2718);
  for (int rep = 0; rep < 100; ++rep) {
    Target t;
    t.amplitude = std::polar(rng.uniform(0.5, 2.0), 2.0 * M_PI * rng.uniform());
    t.delay = rng.uniform(0.0, c.pri);
    t.doa = rng.uniform(-1.0, 0.0);
    t.doppler = rng.uniform(-0.5 / c.pri, 0.5 / c.pri);
    const TargetScene got = extract_parameters(factors_for({t}, c), c);
    REQUIRE(got.targets.size() == 1);
    CHECK(std::abs(got.targets[0].delay - t.delay) < 1e-9 * c.pri);
    CHECK(std::abs(got.targets[0].doa - t.doa) < 2e-9);
    CHECK(std::abs(got.targets[0].doppler - t.doppler) < 1e-9 / c.pri);
    CHECK(std::abs(got.targets[0].amplitude - t.amplitude) < 1e-9 * std::abs(t.amplitude));
  }
}

TEST_CASE("least-squares refit restores the true amplitudes") {
  const RadarConfig c = fixtures::thinned();
  const IndexSets sets = build_index_sets(c);
  const TargetScene truth =
      fixtures::scene_at(c, {{2, 3, 4}, {9, 8, 12}}, {cplx(1.3, -0.4), cplx(-0.2, 0.9)});
  const PartialMeasurementTensor z = synthesize(truth, c, sets);

  std::vector<Target> unit = truth.targets;
  for (Target& t : unit) t.amplitude = 1.0;  // wrong on purpose
  const TargetScene got = extract_parameters(factors_for(unit, c), c, z, sets);
  REQUIRE(got.targets.size() == 2);
  for (size_t l = 0; l < 2; ++l)
    CHECK(std::abs(got.targets[l].amplitude - truth.targets[l].amplitude) < 1e-8);
}

TEST_CASE("degenerate factors are rejected at extraction") {
  const RadarConfig c = fixtures::tiny();
  Target t{cplx(1.0), 0.0, -0.5, 0.0};
  CpFactors f = factors_for({t}, c);
  f.a_factors[0].setZero();
  CHECK_THROWS_AS(extract_parameters(f, c), extraction_error);

  CpFactors g = factors_for({t}, c);
  g.b_factors.push_back(g.b_factors[0]);
  CHECK_THROWS_AS(extract_parameters(g, c), argument_error);
}

TEST_CASE("solver configuration is validated") {
  TcSolverConfig s;
  CHECK_NOTHROW(s.validate());
  s.max_iters = 0;
  CHECK_THROWS_AS(s.validate(), config_error);
  s = {};
  s.tol = 0.0;
  CHECK_THROWS_AS(s.validate(), config_error);
  s = {};
  s.tol = 1.0;
  CHECK_THROWS_AS(s.validate(), config_error);
  s = {};
  s.inner_admm_iters = 0;
  CHECK_THROWS_AS(s.validate(), config_error);
  s = {};
  s.rho = 0.0;
  CHECK_THROWS_AS(s.validate(), config_error);
  s = {};
  s.mu = std::nan("");
  CHECK_THROWS_AS(s.validate(), config_error);
}

TEST_CASE("completion nails a fully observed rank-1 tensor") {
  // Noiseless complete data: weight the data term heavily so the Hankel
  // prior's shrinkage bias (which scales as 1/mu) drops below tolerance.
  const RadarConfig c = fixtures::tiny_full();
  const IndexSets sets = build_index_sets(c);
  REQUIRE(sets.size() == 8);  // every cell of the 2x2x2 tensor
  const TargetScene truth = fixtures::scene_at(c, {{1, 0, 1}}, {cplx(0.8, -0.3)});
  const PartialMeasurementTensor z = synthesize(truth, c, sets);

  TcSolverConfig s;
  s.mu = 1e7;
  const TcResult r = tc_recover(z, sets, c, 1, s);
  CHECK(r.converged);
  CHECK(r.data_residual < 1e-6 * z.values.norm());
  check_monotone(r.objective_history);
  CHECK((r.factors.evaluate(sets.triples()) - z.values).norm() < 1e-6 * z.values.norm());

  const TargetScene got = extract_parameters(r.factors, c, z, sets);
  REQUIRE(got.targets.size() == 1);
  CHECK(std::abs(got.targets[0].delay - truth.targets[0].delay) < 1e-6 * c.pri);
  CHECK(std::abs(got.targets[0].doa - truth.targets[0].doa) < 1e-6);
  CHECK(std::abs(got.targets[0].amplitude - truth.targets[0].amplitude) < 1e-6);
}

TEST_CASE("the default data weight trades a small residual for regularity") {
  const RadarConfig c = fixtures::tiny_full();
  const IndexSets sets = build_index_sets(c);
  const TargetScene truth = fixtures::scene_at(c, {{0, 0, 1}}, {cplx(1.5, 0.5)});
  const PartialMeasurementTensor z = synthesize(truth, c, sets);
  const TcResult r = tc_recover(z, sets, c, 1);
  check_monotone(r.objective_history);
  CHECK(r.converged);
  CHECK(r.data_residual < 0.05 * z.values.norm());
  // The shrinkage only touches the amplitude; the pole stays exact.
  const TargetScene got = extract_parameters(r.factors, c);
  CHECK(std::abs(got.targets[0].delay - truth.targets[0].delay) < 1e-8 * c.pri);
  CHECK(std::abs(got.targets[0].doppler - truth.targets[0].doppler) < 1e-8 / c.pri);
}

TEST_CASE("on-grid completion agrees with the greedy baseline") {
  const RadarConfig c = fixtures::thinned();
  const IndexSets sets = build_index_sets(c);
  const GridMaps grid(c);
  const std::vector<Triple> cells = {{3, 4, 2}, {10, 7, 13}};
  const PartialMeasurementTensor z =
      synthesize(fixtures::scene_at(c, cells, {cplx(1.0), cplx(0.6, -0.8)}), c, sets);

  const TcResult r = tc_recover(z, sets, c, 2);
  check_monotone(r.objective_history);
  CHECK(r.data_residual < 1e-3 * z.values.norm());

  const TargetScene got = extract_parameters(r.factors, c, z, sets);
  std::vector<bool> matched(cells.size(), false);
  for (const Target& t : got.targets) {
    const auto i = grid.delay_bin(t.delay, 0.05);
    const auto j = grid.doa_bin(t.doa, 0.05);
    const auto k = grid.doppler_bin(t.doppler, 0.05);
    REQUIRE(i);
    REQUIRE(j);
    REQUIRE(k);
    for (size_t l = 0; l < cells.size(); ++l)
      if (cells[l] == Triple{*i, *j, *k}) matched[l] = true;
  }
  CHECK(matched[0]);
  CHECK(matched[1]);
}

TEST_CASE("objective stays monotone on noisy data") {
  const RadarConfig c = fixtures::thinned();
  const IndexSets sets = build_index_sets(c);
  const PartialMeasurementTensor z = add_noise(
      synthesize(fixtures::scene_at(c, {{5, 2, 7}, {12, 8, 3}}), c, sets), -20.0, c, 31);
  TcSolverConfig s;
  s.max_iters = 60;
  const TcResult r = tc_recover(z, sets, c, 2, s);
  check_monotone(r.objective_history);
  for (double v : r.objective_history) CHECK(std::isfinite(v));
}

TEST_CASE("a mildly off-grid target is located to sub-bin accuracy") {
  const RadarConfig c = fixtures::thinned();
  const IndexSets sets = build_index_sets(c);
  const GridMaps grid(c);
  Target t;
  t.amplitude = 1.0;
  t.delay = 2.3 * grid.delay_bin_width();
  t.doa = -1.0 + 6.25 * grid.doa_bin_width();
  t.doppler = 3.7 * grid.doppler_bin_width();
  TargetScene truth;
  truth.targets = {t};
  const PartialMeasurementTensor z = synthesize(truth, c, sets);

  const TcResult r = tc_recover(z, sets, c, 1);
  const TargetScene got = extract_parameters(r.factors, c, z, sets);
  REQUIRE(got.targets.size() == 1);
  CHECK(std::abs(got.targets[0].delay - t.delay) < 0.5 * grid.delay_bin_width());
  CHECK(std::abs(got.targets[0].doa - t.doa) < 0.5 * grid.doa_bin_width());
  CHECK(std::abs(got.targets[0].doppler - t.doppler) < 0.5 * grid.doppler_bin_width());
}

TEST_CASE("random initialization still descends") {
  const RadarConfig c = fixtures::tiny_full();
  const IndexSets sets = build_index_sets(c);
  const PartialMeasurementTensor z =
      synthesize(fixtures::scene_at(c, {{1, 0, 1}}, {cplx(1.0, 1.0)}), c, sets);
  TcSolverConfig s;
  s.init = TcInit::random;
  s.seed = 4;
  const TcResult r = tc_recover(z, sets, c, 1, s);
  check_monotone(r.objective_history);
  REQUIRE(r.objective_history.size() >= 2);
  CHECK(r.objective_history.back() < r.objective_history.front());
}

TEST_CASE("completion validates its inputs") {
  const RadarConfig c = fixtures::tiny();
  const IndexSets sets = build_index_sets(c);
  PartialMeasurementTensor z = synthesize(fixtures::scene_at(c, {{1, 1, 1}}), c, sets);
  CHECK_THROWS_AS(tc_recover(z, sets, c, 0), argument_error);
  z.support.pop_back();
  CHECK_THROWS_AS(tc_recover(z, sets, c, 1), shape_error);
}
