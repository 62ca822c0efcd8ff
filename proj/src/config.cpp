#include "rmtd/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "rmtd/format.hpp"
#include "rmtd/hash.hpp"

namespace rmtd {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(trim(item));
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

class Field {
 public:
  Field(std::string key, std::string value, int line) : key_(std::move(key)), value_(std::move(value)), line_(line) {}

  [[noreturn]] void fail(const std::string& why) const {
    throw ConfigError("line " + std::to_string(line_) + ": " + key_ + ": " + why + " (got '" + value_ + "')");
  }

  double real() const { return real_of(value_); }

  std::uint64_t u64() const {
    std::uint64_t v = 0;
    if (!parse_u64(value_, v)) fail("expected a non-negative integer");
    return v;
  }

  Index index() const {
    const std::uint64_t v = u64();
    if (v > static_cast<std::uint64_t>(kMaxDimension) * kMaxDimension) fail("value too large");
    return static_cast<Index>(v);
  }

  bool boolean() const {
    if (value_ == "true") return true;
    if (value_ == "false") return false;
    fail("expected true or false");
  }

  std::vector<double> reals() const {
    std::vector<double> out;
    for (const auto& s : split(value_, ',')) out.push_back(real_of(s));
    return out;
  }

  template <class T>
  std::vector<T> counts() const {
    std::vector<T> out;
    for (const auto& s : split(value_, ',')) {
      std::uint64_t v = 0;
      if (!parse_u64(s, v)) fail("expected a list of non-negative integers");
      out.push_back(static_cast<T>(v));
    }
    return out;
  }

  template <class E>
  E choice(std::initializer_list<std::pair<const char*, E>> options) const {
    for (const auto& [name, value] : options) {
      if (value_ == name) return value;
    }
    std::string names;
    for (const auto& o : options) names += (names.empty() ? "" : "|") + std::string(o.first);
    fail("expected one of " + names);
  }

  const std::string& text() const { return value_; }

 private:
  double real_of(const std::string& s) const {
    double v = 0.0;
    if (!parse_double(s, v) || !std::isfinite(v)) fail("expected a finite number");
    return v;
  }

  std::string key_;
  std::string value_;
  int line_;
};

InitialStateSpec parse_initial(const Field& f) {
  const std::string& v = f.text();
  InitialStateSpec out;
  if (v == "bell") return out;
  if (v.rfind("basis ", 0) == 0) {
    std::uint64_t k = 0;
    if (!parse_u64(trim(v.substr(6)), k)) f.fail("expected 'basis <index>'");
    out.kind = InitialKind::Basis;
    out.basis = static_cast<Index>(k);
    return out;
  }
  if (v.rfind("amplitudes ", 0) == 0) {
    out.kind = InitialKind::Amplitudes;
    const auto items = split(v.substr(11), ',');
    out.amplitudes.resize(static_cast<Index>(items.size()));
    for (std::size_t i = 0; i < items.size(); ++i) {
      std::istringstream in(items[i]);
      std::string re, im, extra;
      double a = 0.0, b = 0.0;
      if (!(in >> re >> im) || (in >> extra) || !parse_double(re, a) || !parse_double(im, b) || !std::isfinite(a) ||
          !std::isfinite(b)) {
        f.fail("expected 'amplitudes <re> <im>, <re> <im>, ...'");
      }
      out.amplitudes(static_cast<Index>(i)) = Complex(a, b);
    }
    return out;
  }
  f.fail("expected bell, 'basis <k>' or 'amplitudes <re> <im>, ...'");
}

template <class T, class F>
std::string join(const std::vector<T>& v, F&& f) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + f(v[i]);
  return s;
}

std::string initial_text(const InitialStateSpec& s) {
  switch (s.kind) {
    case InitialKind::Bell:
      return "bell";
    case InitialKind::Basis:
      return "basis " + std::to_string(s.basis);
    case InitialKind::Amplitudes: {
      std::string out = "amplitudes ";
      for (Index i = 0; i < s.amplitudes.size(); ++i) {
        out += (i ? ", " : "") + format_double(s.amplitudes(i).real()) + ' ' + format_double(s.amplitudes(i).imag());
      }
      return out;
    }
  }
  return {};
}

std::string serialize(const ExperimentConfig& c, bool with_local) {
  auto num = [](auto x) { return std::to_string(x); };
  auto dbl = [](double x) { return format_double(x); };
  auto yes = [](bool b) { return std::string(b ? "true" : "false"); };
  std::string s;
  auto line = [&](const char* key, const std::string& v) { s += std::string(key) + " = " + v + '\n'; };
  line("topology", to_string(c.topology));
  line("m", num(c.m));
  line("m2", num(c.m2));
  line("env_dims", join(c.env_dims, num));
  line("lambda", dbl(c.lambda));
  line("env_spectrum", to_string(c.env_spectrum));
  line("coupling", to_string(c.coupling));
  line("delta", dbl(c.delta));
  line("spectator_delta", dbl(c.spectator_delta));
  line("deltas", join(c.deltas, dbl));
  line("initial_state", initial_text(c.initial_state));
  line("env_state", to_string(c.env_state));
  line("times", join(c.times, dbl));
  line("realizations", num(c.realizations));
  line("partition_sizes", join(c.partition_sizes, num));
  line("bootstrap_groups", num(c.bootstrap_groups));
  line("resample_coupling", yes(c.resample_coupling));
  line("resample_spectrum", yes(c.resample_spectrum));
  line("resample_env_state", yes(c.resample_env_state));
  line("seed", num(c.seed));
  if (with_local) {
    line("output_dir", c.output_dir);
    line("workers", num(c.workers));
  }
  return s;
}

}  // namespace

bool InitialStateSpec::operator==(const InitialStateSpec& o) const {
  if (kind != o.kind) return false;
  if (kind == InitialKind::Basis) return basis == o.basis;
  if (kind == InitialKind::Amplitudes) return amplitudes.size() == o.amplitudes.size() && amplitudes == o.amplitudes;
  return true;
}

bool ExperimentConfig::operator==(const ExperimentConfig& o) const { return serialize(*this, true) == serialize(o, true); }

const char* to_string(Topology t) { return t == Topology::Plain ? "plain" : "spectator"; }

const char* to_string(SpectrumKind k) {
  switch (k) {
    case SpectrumKind::Poisson: return "poisson";
    case SpectrumKind::GOE: return "goe";
    case SpectrumKind::GUE: return "gue";
    case SpectrumKind::Explicit: return "explicit";
  }
  return "?";
}

const char* to_string(CouplingEnsemble c) { return c == CouplingEnsemble::GUE ? "gue" : "goe"; }

const char* to_string(EnvState e) { return e == EnvState::Center ? "center" : "random_phase"; }

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig c;
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::string l = trim(raw);
    if (l.empty() || l.front() == '#') continue;
    const auto eq = l.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key = trim(l.substr(0, eq));
    const Field f(key, trim(l.substr(eq + 1)), lineno);
    if (key.rfind("manifest.", 0) == 0) continue;
    if (!seen.insert(key).second) f.fail("duplicate key");

    if (key == "topology") c.topology = f.choice<Topology>({{"plain", Topology::Plain}, {"spectator", Topology::Spectator}});
    else if (key == "m") c.m = f.index();
    else if (key == "m2") c.m2 = f.index();
    else if (key == "env_dims") c.env_dims = f.counts<Index>();
    else if (key == "lambda") c.lambda = f.real();
    else if (key == "env_spectrum")
      c.env_spectrum = f.choice<SpectrumKind>(
          {{"gue", SpectrumKind::GUE}, {"goe", SpectrumKind::GOE}, {"poisson", SpectrumKind::Poisson}});
    else if (key == "coupling")
      c.coupling = f.choice<CouplingEnsemble>({{"gue", CouplingEnsemble::GUE}, {"goe", CouplingEnsemble::GOE}});
    else if (key == "delta") c.delta = f.real();
    else if (key == "spectator_delta") c.spectator_delta = f.real();
    else if (key == "deltas") c.deltas = f.reals();
    else if (key == "initial_state") c.initial_state = parse_initial(f);
    else if (key == "env_state")
      c.env_state = f.choice<EnvState>({{"center", EnvState::Center}, {"random_phase", EnvState::RandomPhase}});
    else if (key == "times") c.times = f.reals();
    else if (key == "realizations") c.realizations = f.u64();
    else if (key == "partition_sizes") c.partition_sizes = f.counts<std::size_t>();
    else if (key == "bootstrap_groups") c.bootstrap_groups = f.u64();
    else if (key == "resample_coupling") c.resample_coupling = f.boolean();
    else if (key == "resample_spectrum") c.resample_spectrum = f.boolean();
    else if (key == "resample_env_state") c.resample_env_state = f.boolean();
    else if (key == "seed") c.seed = f.u64();
    else if (key == "output_dir") c.output_dir = f.text();
    else if (key == "workers") c.workers = f.u64();
    else f.fail("unknown key");
  }
  validate_config(c);
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_config(buf.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

std::string serialize_config(const ExperimentConfig& cfg) { return serialize(cfg, true); }

std::uint64_t experiment_hash(const ExperimentConfig& cfg) { return fnv1a64(serialize(cfg, false)); }

void validate_config(const ExperimentConfig& c) {
  auto bad = [](const std::string& why) { throw ConfigError(why); };
  if (c.m < 1) bad("m must be at least 1");
  if (c.m2 < 1) bad("m2 must be at least 1");
  if (c.env_dims.empty()) bad("env_dims must not be empty");
  const Index central = c.m * (c.topology == Topology::Spectator ? c.m2 : 1);
  for (Index n : c.env_dims) {
    if (n < 2) bad("env_dims entries must be at least 2");
    if (c.m * n > kMaxDimension) bad("env_dims: coupled dimension m*N exceeds " + std::to_string(kMaxDimension));
  }
  if (!(c.lambda >= 0.0)) bad("lambda must be >= 0");
  if (!(c.delta >= 0.0) || !(c.spectator_delta >= 0.0)) bad("delta and spectator_delta must be >= 0");
  for (double d : c.deltas) {
    if (!(d >= 0.0)) bad("deltas entries must be >= 0");
  }
  if (c.times.empty()) bad("times must not be empty");
  for (double t : c.times) {
    if (!(t >= 0.0)) bad("times entries must be >= 0");
  }
  if (c.realizations < 1) bad("realizations must be at least 1");
  for (std::size_t p : c.partition_sizes) {
    if (p < 1) bad("partition_sizes entries must be at least 1");
  }
  if (c.bootstrap_groups < 2) bad("bootstrap_groups must be at least 2");
  switch (c.initial_state.kind) {
    case InitialKind::Bell:
      if (central != 4) bad("initial_state bell needs a four-dimensional central system");
      break;
    case InitialKind::Basis:
      if (c.initial_state.basis >= central) bad("initial_state basis index out of range");
      break;
    case InitialKind::Amplitudes:
      if (c.initial_state.amplitudes.size() != central) bad("initial_state amplitudes: expected one per central level");
      if (c.initial_state.amplitudes.norm() == 0.0) bad("initial_state amplitudes are all zero");
      break;
  }
}

RealVector split_levels(Index n, double delta) {
  RealVector out(n);
  for (Index k = 0; k < n; ++k) out(k) = delta * (static_cast<double>(k) - 0.5 * static_cast<double>(n - 1));
  return out;
}

DensityMatrix initial_density(const ExperimentConfig& cfg) {
  const Index central = cfg.m * (cfg.topology == Topology::Spectator ? cfg.m2 : 1);
  switch (cfg.initial_state.kind) {
    case InitialKind::Bell:
      if (central != 4) throw ConfigError("initial_state bell needs a four-dimensional central system");
      return DensityMatrix::from_pure(PureState::bell());
    case InitialKind::Basis:
      return DensityMatrix::from_pure(PureState::basis(central, cfg.initial_state.basis));
    case InitialKind::Amplitudes:
      if (cfg.initial_state.amplitudes.size() != central) throw ConfigError("initial_state amplitudes: wrong count");
      return DensityMatrix::from_pure(PureState::normalized(cfg.initial_state.amplitudes));
  }
  throw ConfigError("initial_state: unknown kind");
}

EnsembleConfig ensemble_config(const ExperimentConfig& cfg, Index env_dim, double delta) {
  EnsembleConfig e;
  e.topology = cfg.topology;
  if (cfg.topology == Topology::Plain) {
    e.central_terms = {split_levels(cfg.m, delta)};
  } else {
    e.central_terms = {split_levels(cfg.m, delta), split_levels(cfg.m2, cfg.spectator_delta)};
  }
  e.env_dim = env_dim;
  e.env_kind = cfg.env_spectrum;
  e.coupling = cfg.coupling;
  e.lambda = cfg.lambda;
  e.initial_state = initial_density(cfg);
  e.env_state = cfg.env_state;
  e.realizations = cfg.realizations;
  e.resample_coupling = cfg.resample_coupling;
  e.resample_spectrum = cfg.resample_spectrum;
  e.resample_env_state = cfg.resample_env_state;
  e.root_seed = cfg.seed;
  e.workers = cfg.workers;
  return e;
}

}  // namespace rmtd
