#include "rmtd/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "rmtd/linear_response.hpp"
#include "rmtd/master_equation.hpp"
#include "rmtd/observables.hpp"
#include "rmtd/parallel.hpp"

#ifndef RMTD_VERSION
#define RMTD_VERSION "unknown"
#endif

namespace rmtd {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

std::size_t workers_of(const ExperimentConfig& cfg) { return cfg.workers == 0 ? default_workers() : cfg.workers; }

StudyResult start(const char* name, const ExperimentConfig& cfg) {
  validate_config(cfg);
  StudyResult r;
  r.study = name;
  r.config_hash = experiment_hash(cfg);
  r.seed = cfg.seed;
  r.code_version = code_version();
  return r;
}

void warn_once(StudyResult& r, const std::string& w) {
  if (std::find(r.warnings.begin(), r.warnings.end(), w) == r.warnings.end()) r.warnings.push_back(w);
}

void require_two_qubit_bell(const ExperimentConfig& cfg, const char* who) {
  if (cfg.topology != Topology::Spectator || cfg.m != 2 || cfg.m2 != 2) {
    throw ConfigError(std::string(who) + ": needs topology = spectator with m = 2 and m2 = 2");
  }
  if (cfg.initial_state.kind != InitialKind::Bell) throw ConfigError(std::string(who) + ": needs initial_state = bell");
}

// Sums over a set of ensemble members.
struct Accum {
  ComplexMatrix rho;
  double s = 0.0, c = 0.0, p = 0.0;
  double n = 0.0;

  explicit Accum(Index dim) : rho(ComplexMatrix::Zero(dim, dim)) {}
  Accum& operator+=(const Accum& o) {
    rho += o.rho;
    s += o.s;
    c += o.c;
    p += o.p;
    n += o.n;
    return *this;
  }
  Accum operator-(const Accum& o) const {
    Accum out = *this;
    out.rho -= o.rho;
    out.s -= o.s;
    out.c -= o.c;
    out.p -= o.p;
    out.n -= o.n;
    return out;
  }
  DensityMatrix mean_state() const { return validate_density(rho / n, 1e-9); }
};

struct MemberValues {
  const DensityMatrix* rho;
  double s, c, p;
};

// Contiguous groups of near-equal size; G is reduced when R is small and the
// error is inflated by sqrt(G_requested / G_used).
struct Grouping {
  std::vector<std::size_t> bounds;
  double inflation = 1.0;
  bool degraded = false;
};

Grouping make_groups(std::size_t r, std::size_t requested) {
  Grouping g;
  std::size_t groups = requested;
  if (r < 2 * requested) {
    groups = r / 2;
    g.degraded = true;
  }
  if (groups < 2) return g;
  g.inflation = std::sqrt(static_cast<double>(requested) / static_cast<double>(groups));
  for (std::size_t k = 0; k <= groups; ++k) g.bounds.push_back(k * r / groups);
  return g;
}

// Grouped delete-one jackknife of stat(Accum).
template <class Stat>
Estimate jackknife(const std::vector<MemberValues>& v, const Grouping& g, Index dim, Stat&& stat) {
  Accum total(dim);
  std::vector<Accum> parts;
  const std::size_t groups = g.bounds.empty() ? 1 : g.bounds.size() - 1;
  for (std::size_t k = 0; k < groups; ++k) {
    Accum a(dim);
    const std::size_t lo = g.bounds.empty() ? 0 : g.bounds[k];
    const std::size_t hi = g.bounds.empty() ? v.size() : g.bounds[k + 1];
    for (std::size_t i = lo; i < hi; ++i) {
      a.rho += v[i].rho->matrix();
      a.s += v[i].s;
      a.c += v[i].c;
      a.p += v[i].p;
      a.n += 1.0;
    }
    total += a;
    parts.push_back(std::move(a));
  }
  Estimate e;
  e.value = stat(total);
  if (g.bounds.empty()) {
    e.se = kInf;
    return e;
  }
  std::vector<double> loo(groups);
  for (std::size_t k = 0; k < groups; ++k) loo[k] = stat(total - parts[k]);
  const double mean = std::accumulate(loo.begin(), loo.end(), 0.0) / static_cast<double>(groups);
  double ss = 0.0;
  for (double x : loo) ss += (x - mean) * (x - mean);
  e.se = std::sqrt(ss * static_cast<double>(groups - 1) / static_cast<double>(groups)) * g.inflation;
  return e;
}

Estimate mean_se(const std::vector<double>& x) {
  const double n = static_cast<double>(x.size());
  Estimate e;
  e.value = std::accumulate(x.begin(), x.end(), 0.0) / n;
  if (x.size() < 2) {
    e.se = kInf;
    return e;
  }
  double ss = 0.0;
  for (double v : x) ss += (v - e.value) * (v - e.value);
  e.se = std::sqrt(ss / (n - 1.0) / n);
  return e;
}

double sign_of(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

Column col(const char* name, const char* doc) { return {name, doc}; }

std::vector<MemberValues> member_values(const StateEnsemble& e, bool with_concurrence) {
  std::vector<MemberValues> v;
  v.reserve(e.members.size());
  for (const auto& m : e.members) {
    v.push_back({&m, von_neumann_entropy(m), with_concurrence ? concurrence(m) : kNaN, purity(m)});
  }
  return v;
}

// Per-realization linear-response problems, one per ensemble member.
std::vector<LrProblem> lr_problems(const EnsembleConfig& ec, std::size_t workers) {
  std::vector<LrProblem> out(ec.realizations);
  parallel_for(ec.realizations, workers, [&](std::size_t i) {
    const Realization r = make_realization(ec, i);
    out[i] = lr_problem(r.spec, r.env_state);
  });
  return out;
}

}  // namespace

const char* code_version() { return RMTD_VERSION; }

std::size_t Table::column(std::string_view n) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i].name == n) return i;
  }
  throw std::out_of_range("table " + name + ": no column " + std::string(n));
}

double Table::number(std::size_t row, std::string_view c) const {
  const Cell& cell = rows.at(row).at(column(c));
  if (const auto* d = std::get_if<double>(&cell)) return *d;
  if (const auto* i = std::get_if<std::int64_t>(&cell)) return static_cast<double>(*i);
  throw std::invalid_argument("table " + name + ": column " + std::string(c) + " is not numeric");
}

const std::string& Table::text(std::size_t row, std::string_view c) const {
  return std::get<std::string>(rows.at(row).at(column(c)));
}

const Table& StudyResult::table(std::string_view n) const {
  for (const auto& t : tables) {
    if (t.name == n) return t;
  }
  throw std::out_of_range("study " + study + ": no table " + std::string(n));
}

SlopeFit loglog_fit(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw std::invalid_argument("loglog_fit: size mismatch");
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] > 0.0 && std::abs(y[i]) > 0.0 && std::isfinite(y[i])) {
      lx.push_back(std::log(x[i]));
      ly.push_back(std::log(std::abs(y[i])));
    }
  }
  SlopeFit f;
  f.points = lx.size();
  if (lx.size() < 2) {
    f.slope = f.intercept = f.slope_se = kNaN;
    return f;
  }
  const double n = static_cast<double>(lx.size());
  const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / n;
  const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (sxx == 0.0) {
    f.slope = f.intercept = f.slope_se = kNaN;
    return f;
  }
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  if (lx.size() > 2) {
    double rss = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
      const double r = ly[i] - f.intercept - f.slope * lx[i];
      rss += r * r;
    }
    f.slope_se = std::sqrt(rss / (n - 2.0) / sxx);
  } else {
    f.slope_se = kNaN;
  }
  return f;
}

double beta_hat(const DensityMatrix& rho) {
  if (rho.dim() != 4) throw DimensionError("beta_hat: two-qubit state required");
  return (4.0 * hermitian_eigensystem(rho.matrix()).values(3) - 1.0) / 3.0;
}

StudyResult run_convergence_study(const ExperimentConfig& cfg) {
  StudyResult res = start("convergence", cfg);
  require_two_qubit_bell(cfg, "convergence");
  const std::size_t workers = workers_of(cfg);
  const bool with_lr = cfg.coupling == CouplingEnsemble::GUE;
  if (!with_lr) warn_once(res, "linear-response columns are NaN: analytic formulas cover GUE coupling only");

  Table pts;
  pts.name = "points";
  pts.columns = {
      col("env_dim", "environment dimension N"),
      col("time", "time in units of tau_H"),
      col("realizations", "ensemble size R"),
      col("entropy_of_mean", "S(rho_bar), natural log"),
      col("mean_entropy", "<S(rho)>"),
      col("entropy_diff", "|S(rho_bar) - <S>|"),
      col("entropy_diff_sign", "sign of S(rho_bar) - <S>"),
      col("entropy_diff_se", "standard error of entropy_diff (grouped jackknife)"),
      col("concurrence_of_mean", "C(rho_bar)"),
      col("mean_concurrence", "<C(rho)>"),
      col("concurrence_diff", "|<C> - C(rho_bar)|"),
      col("concurrence_diff_sign", "sign of <C> - C(rho_bar)"),
      col("concurrence_diff_se", "standard error of concurrence_diff"),
      col("purity_of_mean", "P(rho_bar)"),
      col("mean_purity", "<P(rho)>"),
      col("purity_diff", "|<P> - P(rho_bar)|"),
      col("purity_diff_sign", "sign of <P> - P(rho_bar)"),
      col("purity_diff_se", "standard error of purity_diff"),
      col("lr_purity_diff", "linear-response <P> - P(rho_bar), averaged over the sampled realizations"),
      col("lr_purity_diff_se", "standard error of lr_purity_diff over realizations"),
  };
  Table fits;
  fits.name = "fits";
  fits.columns = {
      col("time", "time in units of tau_H"),
      col("observable", "entropy, concurrence or purity"),
      col("slope", "least-squares slope of log|diff| against log N"),
      col("slope_se", "standard error of the slope from the fit residuals"),
      col("intercept", "intercept of the log-log fit"),
      col("points", "number of environment sizes used"),
  };

  const std::size_t nt = cfg.times.size();
  std::vector<std::vector<double>> ds(nt), dc(nt), dp(nt);
  std::vector<double> ns;
  const Grouping groups = make_groups(cfg.realizations, cfg.bootstrap_groups);
  if (groups.degraded) {
    warn_once(res, "realizations < 2 * bootstrap_groups: standard errors use fewer groups and are inflated");
  }

  for (Index n : cfg.env_dims) {
    const EnsembleConfig ec = ensemble_config(cfg, n, cfg.delta);
    const std::vector<StateEnsemble> ens = generate_ensembles(ec, cfg.times);
    std::vector<LrProblem> probs;
    if (with_lr) probs = lr_problems(ec, workers);
    ns.push_back(static_cast<double>(n));
    for (std::size_t k = 0; k < nt; ++k) {
      const auto v = member_values(ens[k], true);
      auto entropy_stat = [](const Accum& a) { return von_neumann_entropy(a.mean_state()) - a.s / a.n; };
      auto conc_stat = [](const Accum& a) { return a.c / a.n - concurrence(a.mean_state()); };
      auto pur_stat = [](const Accum& a) { return a.p / a.n - purity(a.mean_state()); };
      const Estimate es = jackknife(v, groups, 4, entropy_stat);
      const Estimate cs = jackknife(v, groups, 4, conc_stat);
      const Estimate ps = jackknife(v, groups, 4, pur_stat);
      const DensityMatrix mean = ensemble_mean(ens[k]);
      const double sbar = von_neumann_entropy(mean), cbar = concurrence(mean), pbar = purity(mean);

      Estimate lr{kNaN, kNaN};
      if (with_lr) {
        std::vector<double> vals(probs.size());
        parallel_for(probs.size(), workers, [&](std::size_t i) {
          vals[i] = purity_difference_lr(probs[i], ec.initial_state, cfg.times[k] * probs[i].tau_h);
        });
        lr = mean_se(vals);
      }
      pts.rows.push_back({static_cast<std::int64_t>(n), cfg.times[k], static_cast<std::int64_t>(cfg.realizations),
                          sbar, sbar - es.value, std::abs(es.value), sign_of(es.value), es.se,
                          cbar, cbar + cs.value, std::abs(cs.value), sign_of(cs.value), cs.se,
                          pbar, pbar + ps.value, std::abs(ps.value), sign_of(ps.value), ps.se, lr.value, lr.se});
      ds[k].push_back(es.value);
      dc[k].push_back(cs.value);
      dp[k].push_back(ps.value);
    }
  }
  for (std::size_t k = 0; k < nt; ++k) {
    const std::pair<const char*, const std::vector<double>*> obs[] = {
        {"entropy", &ds[k]}, {"concurrence", &dc[k]}, {"purity", &dp[k]}};
    for (const auto& [name, y] : obs) {
      const SlopeFit f = loglog_fit(ns, *y);
      fits.rows.push_back({cfg.times[k], std::string(name), f.slope, f.slope_se, f.intercept,
                           static_cast<std::int64_t>(f.points)});
    }
  }
  res.tables = {std::move(pts), std::move(fits)};
  return res;
}

StudyResult run_werner_study(const ExperimentConfig& cfg) {
  StudyResult res = start("werner", cfg);
  require_two_qubit_bell(cfg, "werner");
  if (cfg.partition_sizes.empty()) throw ConfigError("werner: partition_sizes must not be empty");
  if (cfg.deltas.empty()) throw ConfigError("werner: deltas must not be empty");
  for (std::size_t p : cfg.partition_sizes) {
    if (cfg.realizations % p != 0) {
      throw ConfigError("werner: partition size " + std::to_string(p) + " does not divide realizations = " +
                        std::to_string(cfg.realizations));
    }
  }

  Table pts;
  pts.name = "points";
  pts.columns = {
      col("env_dim", "environment dimension N"),
      col("delta", "level splitting of the coupled qubit, H_1 = delta sigma_z / 2"),
      col("time", "time in units of tau_H"),
      col("n_par", "partition size"),
      col("groups", "number of partitions R / n_par"),
      col("sigma_werner", "mean over partitions of the std of the three closest eigenvalues"),
      col("sigma_werner_se", "standard error of sigma_werner across partitions"),
      col("dominant_concurrence", "mean concurrence of the dominant eigenvector"),
      col("dominant_concurrence_min", "smallest dominant-eigenvector concurrence over partitions"),
      col("purity_of_mean", "purity of the full-ensemble average"),
  };
  Table fits;
  fits.name = "fits";
  fits.columns = {
      col("env_dim", "environment dimension N"),
      col("delta", "level splitting"),
      col("time", "time in units of tau_H"),
      col("slope", "least-squares slope of log sigma_werner against log n_par"),
      col("slope_se", "standard error of the slope"),
      col("points", "number of partition sizes used"),
  };

  for (Index n : cfg.env_dims) {
    for (double delta : cfg.deltas) {
      const EnsembleConfig ec = ensemble_config(cfg, n, delta);
      const std::vector<StateEnsemble> ens = generate_ensembles(ec, cfg.times);
      for (std::size_t k = 0; k < cfg.times.size(); ++k) {
        const auto& members = ens[k].members;
        const double pbar = purity(ensemble_mean(ens[k]));
        std::vector<double> xs, ys;
        for (std::size_t np : cfg.partition_sizes) {
          const std::size_t groups = cfg.realizations / np;
          std::vector<double> sig(groups), cd(groups);
          for (std::size_t g = 0; g < groups; ++g) {
            const std::vector<DensityMatrix> part(members.begin() + static_cast<std::ptrdiff_t>(g * np),
                                                  members.begin() + static_cast<std::ptrdiff_t>((g + 1) * np));
            const WernerDiagnostics d = werner_diagnostics(ensemble_mean(part));
            sig[g] = d.sigma_werner;
            cd[g] = d.dominant_eigenvector_concurrence;
          }
          const Estimate s = mean_se(sig);
          const Estimate c = mean_se(cd);
          pts.rows.push_back({static_cast<std::int64_t>(n), delta, cfg.times[k], static_cast<std::int64_t>(np),
                              static_cast<std::int64_t>(groups), s.value, s.se, c.value,
                              *std::min_element(cd.begin(), cd.end()), pbar});
          xs.push_back(static_cast<double>(np));
          ys.push_back(s.value);
        }
        const SlopeFit f = loglog_fit(xs, ys);
        fits.rows.push_back({static_cast<std::int64_t>(n), delta, cfg.times[k], f.slope, f.slope_se,
                             static_cast<std::int64_t>(f.points)});
      }
    }
  }
  res.tables = {std::move(pts), std::move(fits)};
  return res;
}

StudyResult run_layer_comparison(const ExperimentConfig& cfg) {
  StudyResult res = start("layers", cfg);
  const std::size_t workers = workers_of(cfg);
  const bool two_qubit_bell = cfg.topology == Topology::Spectator && cfg.m == 2 && cfg.m2 == 2 &&
                              cfg.initial_state.kind == InitialKind::Bell;
  const bool with_lr = cfg.coupling == CouplingEnsemble::GUE;
  if (!with_lr) warn_once(res, "linear-response columns are NaN: analytic formulas cover GUE coupling only");

  Table pts;
  pts.name = "points";
  pts.columns = {
      col("env_dim", "environment dimension N"),
      col("time", "time in units of tau_H"),
      col("realizations", "ensemble size R"),
      col("mc_mean_purity", "Monte Carlo <P(rho)>"),
      col("mc_mean_purity_se", "standard error of mc_mean_purity"),
      col("mc_purity_of_mean", "Monte Carlo P(rho_bar)"),
      col("mc_purity_of_mean_se", "standard error of mc_purity_of_mean (grouped jackknife)"),
      col("mc_difference", "Monte Carlo <P> - P(rho_bar)"),
      col("mc_difference_se", "standard error of mc_difference (grouped jackknife)"),
      col("lr_avg_purity", "linear-response <P>, averaged over the sampled realizations"),
      col("lr_avg_purity_se", "standard error of lr_avg_purity over realizations"),
      col("lr_purity_of_avg", "linear-response P(rho_bar), averaged over the sampled realizations"),
      col("lr_purity_of_avg_se", "standard error of lr_purity_of_avg over realizations"),
      col("lr_difference", "linear-response <P> - P(rho_bar) from the difference formula"),
      col("lr_difference_se", "standard error of lr_difference over realizations"),
      col("lr_difference_identity", "max relative gap between lr_difference and lr_avg_purity - lr_purity_of_avg"),
      col("lr_half_step_change", "largest relative change of any linear-response scalar under step halving"),
      col("master_purity", "purity of the golden-rule master-equation solution"),
      col("beta_hat", "(4 lambda_max(rho_bar) - 1) / 3; two-qubit Bell runs only"),
      col("beta_master", "exp(-2 tau_H lambda^2 t); two-qubit Bell runs only"),
  };

  const Grouping groups = make_groups(cfg.realizations, cfg.bootstrap_groups);
  if (groups.degraded) {
    warn_once(res, "realizations < 2 * bootstrap_groups: standard errors use fewer groups and are inflated");
  }
  for (Index n : cfg.env_dims) {
    const EnsembleConfig ec = ensemble_config(cfg, n, cfg.delta);
    const std::vector<StateEnsemble> ens = generate_ensembles(ec, cfg.times);
    const std::size_t r = cfg.realizations;
    std::vector<LrProblem> probs;
    if (with_lr) probs = lr_problems(ec, workers);
    const double tau_h = heisenberg_time(make_realization(ec, 0).spec.env_spectrum);
    const Index dim = ec.initial_state.dim();
    const MasterParams mp = master_params(cfg.topology, cfg.m, tau_h, cfg.lambda);

    for (std::size_t k = 0; k < cfg.times.size(); ++k) {
      std::vector<MemberValues> v;
      v.reserve(r);
      for (const auto& m : ens[k].members) v.push_back({&m, 0.0, 0.0, purity(m)});
      const Estimate mean_p = jackknife(v, groups, dim, [](const Accum& a) { return a.p / a.n; });
      const Estimate p_of_mean = jackknife(v, groups, dim, [](const Accum& a) { return purity(a.mean_state()); });
      const Estimate diff = jackknife(v, groups, dim, [](const Accum& a) { return a.p / a.n - purity(a.mean_state()); });

      Estimate la{kNaN, kNaN}, lp{kNaN, kNaN}, ld{kNaN, kNaN};
      double identity = kNaN, half = kNaN;
      if (with_lr) {
        std::vector<LinearResponseReport> reps(r);
        parallel_for(r, workers, [&](std::size_t i) {
          reps[i] = lr_report(probs[i], ec.initial_state, cfg.times[k] * probs[i].tau_h);
        });
        std::vector<double> a(r), p(r), d(r);
        identity = 0.0;
        half = 0.0;
        for (std::size_t i = 0; i < r; ++i) {
          a[i] = reps[i].avg_purity;
          p[i] = reps[i].purity_of_avg;
          d[i] = reps[i].difference;
          const double sub = a[i] - p[i];
          if (sub != 0.0) identity = std::max(identity, std::abs(d[i] - sub) / std::abs(sub));
          half = std::max(half, reps[i].half_step_change);
        }
        la = mean_se(a);
        lp = mean_se(p);
        ld = mean_se(d);
      }
      const double t = cfg.times[k] * tau_h;
      const DensityMatrix me = cfg.topology == Topology::Plain ? solve_plain(ec.initial_state, mp, t)
                                                               : solve_spectator(ec.initial_state, mp, t);
      const double bh = two_qubit_bell ? beta_hat(ensemble_mean(ens[k])) : kNaN;
      const double bm = two_qubit_bell ? werner_beta(mp, t) : kNaN;
      pts.rows.push_back({static_cast<std::int64_t>(n), cfg.times[k], static_cast<std::int64_t>(r), mean_p.value,
                          mean_p.se, p_of_mean.value, p_of_mean.se, diff.value, diff.se, la.value, la.se, lp.value,
                          lp.se, ld.value, ld.se, identity, half, purity(me), bh, bm});
    }
  }
  res.tables = {std::move(pts)};
  return res;
}

StudyResult run_ensemble_dump(const ExperimentConfig& cfg) {
  StudyResult res = start("ensemble", cfg);
  const Index dim = initial_density(cfg).dim();
  const bool two_qubit = dim == 4;
  Table t;
  t.name = "members";
  t.columns = {
      col("env_dim", "environment dimension N"),
      col("time", "time in units of tau_H"),
      col("realization", "realization index; also the random stream of every re-sampled component"),
      col("tau_h", "Heisenberg time of this realization"),
      col("purity", "tr rho^2"),
      col("entropy", "von Neumann entropy, natural log"),
      col("concurrence", "Wootters concurrence; NaN unless the central system is two qubits"),
  };
  for (Index i = 0; i < dim; ++i) {
    for (Index j = 0; j < dim; ++j) {
      const std::string ij = std::to_string(i) + "_" + std::to_string(j);
      t.columns.push_back({"re_" + ij, "real part of rho(" + ij + ")"});
      t.columns.push_back({"im_" + ij, "imaginary part of rho(" + ij + ")"});
    }
  }
  for (Index n : cfg.env_dims) {
    const EnsembleConfig ec = ensemble_config(cfg, n, cfg.delta);
    const std::vector<StateEnsemble> ens = generate_ensembles(ec, cfg.times);
    std::vector<double> th(cfg.realizations);
    for (std::size_t i = 0; i < cfg.realizations; ++i) th[i] = heisenberg_time(make_realization(ec, i).spec.env_spectrum);
    for (std::size_t k = 0; k < cfg.times.size(); ++k) {
      for (std::size_t i = 0; i < ens[k].members.size(); ++i) {
        const DensityMatrix& m = ens[k].members[i];
        std::vector<Cell> row{static_cast<std::int64_t>(n), cfg.times[k], static_cast<std::int64_t>(i), th[i],
                              purity(m), von_neumann_entropy(m), two_qubit ? concurrence(m) : kNaN};
        for (Index a = 0; a < dim; ++a) {
          for (Index b = 0; b < dim; ++b) {
            row.emplace_back(m(a, b).real());
            row.emplace_back(m(a, b).imag());
          }
        }
        t.rows.push_back(std::move(row));
      }
    }
  }
  res.tables = {std::move(t)};
  return res;
}

}  // namespace rmtd
