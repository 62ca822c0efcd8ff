#include "doctest.h"

#include <cmath>
#include <numbers>
#include <vector>

#include "rmtd/ensembles.hpp"
#include "test_support.hpp"

using namespace rmtd;

TEST_CASE("GUE smallest case and shape") {
  const CouplingMatrix v = sample_gue(1, {7, 0});
  REQUIRE(v.dim() == 1);
  CHECK(v.matrix(0, 0).imag() == 0.0);
  CHECK(std::isfinite(v.matrix(0, 0).real()));
  CHECK_THROWS_AS(sample_gue(0, {7, 0}), DimensionError);
  CHECK_THROWS_AS(sample_goe(0, {7, 0}), DimensionError);
}

TEST_CASE("samplers are deterministic per seed and distinct across streams") {
  const CouplingMatrix a = sample_gue(16, {42, 3});
  const CouplingMatrix b = sample_gue(16, {42, 3});
  const CouplingMatrix c = sample_gue(16, {42, 4});
  CHECK(max_abs(a.matrix - b.matrix) == 0.0);
  CHECK(max_abs(a.matrix - c.matrix) > 0.1);
  const Spectrum s1 = sample_spectrum(SpectrumKind::GUE, 32, {1, 1});
  const Spectrum s2 = sample_spectrum(SpectrumKind::GUE, 32, {1, 1});
  CHECK((s1.energies() - s2.energies()).cwiseAbs().maxCoeff() == 0.0);
  CHECK(!(component_seed({1, 1}, SeedComponent::Coupling) == component_seed({1, 1}, SeedComponent::Spectrum)));
}

TEST_CASE("GUE normalisation: <tr V^2> = n^2 and entry variances") {
  const Index n = 64;
  const int samples = 1000;
  double sum_tr = 0.0;
  double off_abs2 = 0.0, off_re2 = 0.0, diag2 = 0.0;
  long off_count = 0, diag_count = 0;
  for (int s = 0; s < samples; ++s) {
    const CouplingMatrix v = sample_gue(n, {2024, static_cast<std::uint64_t>(s)});
    CHECK(hermiticity_defect(v.matrix) <= 1e-12);
    sum_tr += (v.matrix * v.matrix).trace().real() / static_cast<double>(n * n);
    if (s < 20) {
      for (Index i = 0; i < n; ++i) {
        diag2 += std::norm(v.matrix(i, i));
        ++diag_count;
        for (Index j = i + 1; j < n; ++j) {
          off_abs2 += std::norm(v.matrix(i, j));
          off_re2 += v.matrix(i, j).real() * v.matrix(i, j).real();
          ++off_count;
        }
      }
    }
  }
  CHECK(sum_tr / samples == doctest::Approx(1.0).epsilon(0.03));
  // 5 sigma bands: Var|V|^2 = 1 (exponential), Var V_ii^2 = 2, Var Re^2 = 2 * (1/2)^2
  CHECK(std::abs(off_abs2 / off_count - 1.0) < 5.0 / std::sqrt(off_count));
  CHECK(std::abs(diag2 / diag_count - 1.0) < 5.0 * std::sqrt(2.0 / diag_count));
  CHECK(std::abs(off_re2 / off_count - 0.5) < 5.0 * std::sqrt(0.5 / off_count));
}

TEST_CASE("GOE structure and variances") {
  const CouplingMatrix one = sample_goe(1, {5, 0});
  CHECK(one.matrix(0, 0).imag() == 0.0);
  double d2 = 0.0;
  const int draws = 20000;
  for (int s = 0; s < draws; ++s) d2 += std::norm(sample_goe(1, {5, static_cast<std::uint64_t>(s)}).matrix(0, 0));
  CHECK(std::abs(d2 / draws - 2.0) < 5.0 * std::sqrt(8.0 / draws));

  const CouplingMatrix v = sample_goe(64, {5, 1});
  CHECK(v.matrix.imag().cwiseAbs().maxCoeff() == 0.0);
  CHECK(max_abs(v.matrix - v.matrix.transpose()) == 0.0);
  double off = 0.0;
  long count = 0;
  for (int s = 0; s < 20; ++s) {
    const CouplingMatrix w = sample_goe(64, {6, static_cast<std::uint64_t>(s)});
    for (Index i = 0; i < 64; ++i)
      for (Index j = i + 1; j < 64; ++j) {
        off += std::norm(w.matrix(i, j));
        ++count;
      }
  }
  CHECK(std::abs(off / count - 1.0) < 5.0 * std::sqrt(2.0 / count));
}

TEST_CASE("GOE level spacings follow the Wigner surmise rather than Poisson") {
  const int bins = 30;
  const double width = 0.1;
  std::vector<double> hist(bins, 0.0);
  long total = 0;
  for (int s = 0; s < 1000; ++s) {
    const CouplingMatrix v = sample_goe(64, {77, static_cast<std::uint64_t>(s)});
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(v.matrix, Eigen::EigenvaluesOnly);
    const Spectrum u = unfold(es.eigenvalues(), 1.0, UnfoldMethod::Semicircle, SpectrumKind::GOE);
    for (Index i = 13; i < 51; ++i) {
      const double gap = u.energies()(i + 1) - u.energies()(i);
      const auto b = static_cast<int>(gap / width);
      if (b < bins) hist[b] += 1.0;
      ++total;
    }
  }
  double l1_wigner = 0.0, l1_poisson = 0.0;
  for (int b = 0; b < bins; ++b) {
    const double lo = b * width, hi = lo + width;
    const double p_w = std::exp(-std::numbers::pi * lo * lo / 4) - std::exp(-std::numbers::pi * hi * hi / 4);
    const double p_p = std::exp(-lo) - std::exp(-hi);
    const double p = hist[b] / static_cast<double>(total);
    l1_wigner += std::abs(p - p_w);
    l1_poisson += std::abs(p - p_p);
  }
  CHECK(l1_wigner < 0.1);
  CHECK(l1_wigner < 0.3 * l1_poisson);
}

TEST_CASE("GUE entry moments are invariant under a fixed unitary rotation") {
  std::mt19937_64 eng(8);
  const Index n = 8;
  const ComplexMatrix u = testing::random_unitary(n, eng);
  const int samples = 2000;
  double m_v01 = 0.0, m_w01 = 0.0, v2_v01 = 0.0, v2_w01 = 0.0, v2_v00 = 0.0, v2_w00 = 0.0;
  for (int s = 0; s < samples; ++s) {
    const ComplexMatrix v = sample_gue(n, {99, static_cast<std::uint64_t>(s)}).matrix;
    const ComplexMatrix w = u * v * u.adjoint();
    m_v01 += v(0, 1).real();
    m_w01 += w(0, 1).real();
    v2_v01 += std::norm(v(0, 1));
    v2_w01 += std::norm(w(0, 1));
    v2_v00 += std::norm(v(0, 0));
    v2_w00 += std::norm(w(0, 0));
  }
  const double r = samples;
  const double band1 = 5.0 * std::sqrt(0.5 / r);
  CHECK(std::abs(m_v01 / r) < band1);
  CHECK(std::abs(m_w01 / r) < band1);
  const double band2 = 5.0 * std::sqrt(2.0 / r);  // two independent estimates, Var|V|^2 = 1
  CHECK(std::abs(v2_v01 / r - v2_w01 / r) < band2);
  CHECK(std::abs(v2_v00 / r - v2_w00 / r) < 5.0 * std::sqrt(4.0 / r));
  CHECK(std::abs(v2_w01 / r - 1.0) < 5.0 / std::sqrt(r));
}

TEST_CASE("Poisson spectrum structure") {
  const Spectrum s = sample_spectrum(SpectrumKind::Poisson, 2, {3, 0});
  REQUIRE(s.size() == 2);
  CHECK(s.energies()(0) > 0.0);
  CHECK(s.energies()(1) > s.energies()(0));
  CHECK(s.kind() == SpectrumKind::Poisson);
  CHECK_THROWS_AS(sample_spectrum(SpectrumKind::Poisson, 1, {3, 0}), DimensionError);
  const Spectrum big = sample_spectrum(SpectrumKind::Poisson, 200, {3, 1});
  CHECK(central_mean_spacing(big.energies()) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("explicit spectra pass through unchanged") {
  RealVector e(4);
  e << -1.5, 0.25, 0.25, 7.0;
  const Spectrum s = explicit_spectrum(e);
  CHECK((s.energies() - e).cwiseAbs().maxCoeff() == 0.0);
  CHECK(s.kind() == SpectrumKind::Explicit);
  RealVector bad(2);
  bad << 1.0, 0.0;
  CHECK_THROWS(explicit_spectrum(bad));
  CHECK_THROWS(sample_spectrum(SpectrumKind::Explicit, 4, {0, 0}));
}

TEST_CASE("affine unfolding") {
  RealVector raw(4);
  raw << 0.0, 2.0, 4.0, 6.0;
  const Spectrum s = unfold(raw, 1.0);
  for (Index i = 0; i < 4; ++i) CHECK(s.energies()(i) == doctest::Approx(static_cast<double>(i)));
  CHECK_THROWS_AS(unfold(RealVector::Zero(1), 1.0), DimensionError);
}

TEST_CASE("GUE spectra unfold to unit spacing") {
  for (Index n : {128, 256}) {
    const Spectrum s = sample_spectrum(SpectrumKind::GUE, n, {11, static_cast<std::uint64_t>(n)});
    const RealVector& e = s.energies();
    for (Index i = 1; i < n; ++i) CHECK(e(i) > e(i - 1));
    const double overall = (e(n - 1) - e(0)) / static_cast<double>(n - 1);
    CHECK(overall == doctest::Approx(1.0).epsilon(0.02));
    CHECK(central_mean_spacing(e) == doctest::Approx(1.0).epsilon(1e-12));
  }
  // average over realizations of the plain nearest-neighbour mean
  double acc = 0.0;
  for (int s = 0; s < 50; ++s) {
    const Spectrum sp = sample_spectrum(SpectrumKind::GUE, 256, {12, static_cast<std::uint64_t>(s)});
    acc += (sp.energies()(255) - sp.energies()(0)) / 255.0;
  }
  CHECK(acc / 50.0 == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("unfolding is idempotent") {
  const Spectrum once = sample_spectrum(SpectrumKind::GUE, 256, {13, 0});
  const Spectrum twice = unfold(once.energies(), 1.0);
  const double scale = once.energies().cwiseAbs().maxCoeff();
  CHECK((twice.energies() - once.energies()).cwiseAbs().maxCoeff() < 0.01 * scale);
  const Spectrum semi = unfold(once.energies(), 1.0, UnfoldMethod::Semicircle);
  CHECK(central_mean_spacing(semi.energies()) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("Heisenberg time convention") {
  RealVector unit = RealVector::LinSpaced(20, 0.0, 19.0);
  CHECK(heisenberg_time(explicit_spectrum(unit)) == doctest::Approx(2.0 * std::numbers::pi));
  CHECK(heisenberg_time(explicit_spectrum(2.0 * unit)) == doctest::Approx(std::numbers::pi));
  const Spectrum g = sample_spectrum(SpectrumKind::GUE, 128, {14, 0});
  CHECK(heisenberg_time(g) == doctest::Approx(2.0 * std::numbers::pi).epsilon(0.02));
}
