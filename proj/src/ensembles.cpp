#include "rmtd/ensembles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace rmtd {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

void require_size(Index n, Index min, const char* who) {
  if (n < min) {
    throw DimensionError(std::string(who) + ": need at least " + std::to_string(min) +
                         " levels, got " + std::to_string(n));
  }
  if (n > kMaxDimension) throw DimensionError(std::string(who) + ": dimension too large");
}

}  // namespace

RandomSeed component_seed(RandomSeed seed, SeedComponent component) {
  const auto tag = static_cast<std::uint64_t>(component);
  return {splitmix64(seed.root ^ splitmix64(tag)), seed.stream};
}

std::mt19937_64 make_engine(RandomSeed seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed.root), static_cast<std::uint32_t>(seed.root >> 32),
                    static_cast<std::uint32_t>(seed.stream),
                    static_cast<std::uint32_t>(seed.stream >> 32)};
  return std::mt19937_64(seq);
}

CouplingMatrix sample_gue(Index n, RandomSeed seed) {
  require_size(n, 1, "sample_gue");
  auto eng = make_engine(seed);
  std::normal_distribution<double> diag(0.0, 1.0);
  std::normal_distribution<double> half(0.0, std::sqrt(0.5));
  ComplexMatrix v(n, n);
  for (Index i = 0; i < n; ++i) {
    v(i, i) = diag(eng);
    for (Index j = i + 1; j < n; ++j) {
      const double re = half(eng);
      const double im = half(eng);
      v(i, j) = Complex(re, im);
      v(j, i) = Complex(re, -im);
    }
  }
  return {std::move(v), CouplingEnsemble::GUE};
}

CouplingMatrix sample_goe(Index n, RandomSeed seed) {
  require_size(n, 1, "sample_goe");
  auto eng = make_engine(seed);
  std::normal_distribution<double> diag(0.0, std::sqrt(2.0));
  std::normal_distribution<double> off(0.0, 1.0);
  ComplexMatrix v(n, n);
  for (Index i = 0; i < n; ++i) {
    v(i, i) = diag(eng);
    for (Index j = i + 1; j < n; ++j) {
      const double x = off(eng);
      v(i, j) = x;
      v(j, i) = x;
    }
  }
  return {std::move(v), CouplingEnsemble::GOE};
}

CouplingMatrix sample_coupling(CouplingEnsemble ensemble, Index n, RandomSeed seed) {
  return ensemble == CouplingEnsemble::GUE ? sample_gue(n, seed) : sample_goe(n, seed);
}

Spectrum::Spectrum(RealVector energies, SpectrumKind kind)
    : energies_(std::move(energies)), kind_(kind) {
  if (energies_.size() == 0) throw DimensionError("Spectrum: no levels");
  if (!energies_.allFinite()) throw std::invalid_argument("Spectrum: non-finite energy");
  for (Index i = 1; i < energies_.size(); ++i) {
    if (energies_(i) < energies_(i - 1)) throw std::invalid_argument("Spectrum: not ascending");
  }
}

Spectrum explicit_spectrum(RealVector energies) {
  return Spectrum(std::move(energies), SpectrumKind::Explicit);
}

Spectrum sample_spectrum(SpectrumKind kind, Index n, RandomSeed seed) {
  require_size(n, 2, "sample_spectrum");
  switch (kind) {
    case SpectrumKind::Poisson: {
      auto eng = make_engine(seed);
      std::exponential_distribution<double> gap(1.0);
      RealVector e(n);
      double acc = 0.0;
      for (Index i = 0; i < n; ++i) {
        acc += gap(eng);
        e(i) = acc;
      }
      return unfold(e, 1.0, UnfoldMethod::Affine, SpectrumKind::Poisson);
    }
    case SpectrumKind::GOE:
    case SpectrumKind::GUE: {
      const auto ens = kind == SpectrumKind::GUE ? CouplingEnsemble::GUE : CouplingEnsemble::GOE;
      const CouplingMatrix h = sample_coupling(ens, n, seed);
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h.matrix, Eigen::EigenvaluesOnly);
      return unfold(es.eigenvalues(), 1.0, UnfoldMethod::Semicircle, kind);
    }
    case SpectrumKind::Explicit:
      break;
  }
  throw std::invalid_argument("sample_spectrum: explicit spectra are not sampled");
}

double central_mean_spacing(const RealVector& sorted) {
  const Index n = sorted.size();
  if (n < 2) throw DimensionError("central_mean_spacing: need at least 2 levels");
  const auto lo = static_cast<Index>(std::floor(0.1 * static_cast<double>(n - 1)));
  auto hi = static_cast<Index>(std::ceil(0.9 * static_cast<double>(n - 1)));
  hi = std::max(hi, lo + 1);
  return (sorted(hi) - sorted(lo)) / static_cast<double>(hi - lo);
}

Spectrum unfold(const RealVector& raw, double target_mean_spacing, UnfoldMethod method,
                SpectrumKind kind) {
  const Index n = raw.size();
  if (n < 2) throw DimensionError("unfold: need at least 2 levels");
  if (!(target_mean_spacing > 0.0)) throw std::invalid_argument("unfold: target spacing must be positive");
  std::vector<double> x(raw.data(), raw.data() + n);
  std::sort(x.begin(), x.end());

  if (method == UnfoldMethod::Semicircle) {
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (double v : x) var += (v - mean) * (v - mean);
    var /= static_cast<double>(n);
    const double radius = 2.0 * std::sqrt(var);
    if (!(radius > 0.0)) throw std::invalid_argument("unfold: degenerate spectrum");
    const double nd = static_cast<double>(n);
    for (double& v : x) {
      const double u = std::clamp((v - mean) / radius, -1.0, 1.0);
      v = nd * (0.5 + (u * std::sqrt(1.0 - u * u) + std::asin(u)) / std::numbers::pi);
    }
    // Levels outside the fitted edge collapse onto it; space them by one unit.
    const Index mid = n / 2;
    for (Index i = mid + 1; i < n; ++i) {
      if (x[i] <= x[i - 1]) x[i] = x[i - 1] + 1.0;
    }
    for (Index i = mid; i-- > 0;) {
      if (x[i] >= x[i + 1]) x[i] = x[i + 1] - 1.0;
    }
  }

  RealVector e = Eigen::Map<RealVector>(x.data(), n);
  const double d = central_mean_spacing(e);
  if (!(d > 0.0)) throw std::invalid_argument("unfold: zero central spacing");
  const double x0 = e(0);
  e = (x0 + (e.array() - x0) * (target_mean_spacing / d)).matrix();
  return Spectrum(std::move(e), kind);
}

double heisenberg_time(const Spectrum& s) {
  return 2.0 * std::numbers::pi / central_mean_spacing(s.energies());
}

}  // namespace rmtd
