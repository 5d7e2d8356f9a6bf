#include "mmsim/cli/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "mmsim/errors.hpp"

namespace mmsim::cli {

namespace {

using K = ValueKind;

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

bool parse_double(const std::string& text, double& out) {
  if (text.empty()) return false;
  std::size_t used = 0;
  try {
    out = std::stod(text, &used);
  } catch (const std::exception&) {
    return false;
  }
  return used == text.size() && std::isfinite(out);
}

bool parse_long(const std::string& text, long& out) {
  if (text.empty()) return false;
  std::size_t used = 0;
  try {
    out = std::stol(text, &used);
  } catch (const std::exception&) {
    return false;
  }
  return used == text.size();
}

bool parse_bool(const std::string& text, bool& out) {
  if (text == "true" || text == "1" || text == "yes" || text == "on") {
    out = true;
    return true;
  }
  if (text == "false" || text == "0" || text == "no" || text == "off") {
    out = false;
    return true;
  }
  return false;
}

const KeySpec* find_spec(const std::string& key) {
  for (const KeySpec& s : config_schema()) {
    if (s.key == key) return &s;
  }
  return nullptr;
}

void check_value(const KeySpec& spec, const std::string& value) {
  bool ok = true;
  switch (spec.kind) {
    case K::kReal: {
      double d;
      ok = parse_double(value, d);
      break;
    }
    case K::kInteger: {
      long l;
      ok = parse_long(value, l);
      break;
    }
    case K::kBool: {
      bool b;
      ok = parse_bool(value, b);
      break;
    }
    case K::kText:
      ok = spec.choices.empty() ||
           std::find(spec.choices.begin(), spec.choices.end(), value) != spec.choices.end();
      break;
    case K::kRealList:
      try {
        ok = !parse_real_list(value).empty();
      } catch (const ConfigError&) {
        ok = false;
      }
      break;
  }
  if (!ok) {
    static const char* names[] = {"a real number", "an integer", "a boolean", "one of the allowed values",
                                  "a list of reals"};
    std::string msg = "key '" + spec.key + "': value '" + value + "' is not " +
                      names[static_cast<int>(spec.kind)];
    if (!spec.choices.empty()) {
      msg += " (";
      for (std::size_t i = 0; i < spec.choices.size(); ++i) msg += (i ? ", " : "") + spec.choices[i];
      msg += ")";
    }
    throw ConfigError(msg);
  }
}

template <class Fn>
auto as_config_error(const char* section, Fn fn) {
  try {
    return fn();
  } catch (const ValidationError& e) {
    throw ConfigError(std::string("section '") + section + "': " + e.what());
  }
}

}  // namespace

const std::vector<KeySpec>& config_schema() {
  static const std::vector<KeySpec> schema = {
      {"experiment.heralding_efficiency", K::kReal, "0.19", "probability the heralded photon reaches the displacement", {}},
      {"experiment.heralding_efficiency_sd", K::kReal, "0.02", "", {}},
      {"experiment.first_bs_transmittance", K::kReal, "0.995", "transmittance of the displacement beam splitter", {}},
      {"experiment.first_bs_transmittance_sd", K::kReal, "0", "", {}},
      {"experiment.memory_efficiency", K::kReal, "0.046", "storage and retrieval efficiency", {}},
      {"experiment.memory_efficiency_sd", K::kReal, "0.002", "", {}},
      {"experiment.back_displacement_visibility", K::kReal, "0.9985", "interference visibility of the two displacements", {}},
      {"experiment.back_displacement_visibility_sd", K::kReal, "0.0002", "", {}},
      {"experiment.micro_visibility", K::kReal, "0.94", "Werner visibility without displacement", {}},
      {"experiment.micro_visibility_sd", K::kReal, "0", "", {}},
      {"experiment.absorption", K::kReal, "0.55", "memory absorption probability", {}},
      {"experiment.absorption_sd", K::kReal, "0", "", {}},
      {"experiment.overlap_ratio", K::kReal, "0.87", "mode-overlap ratio already applied to |alpha|^2", {}},
      {"experiment.overlap_ratio_sd", K::kReal, "0", "", {}},
      {"experiment.mu_per_alpha_sq", K::kReal, "1", "back-displacement photon number per unit |alpha|^2", {}},
      {"experiment.mu_per_alpha_sq_sd", K::kReal, "0", "", {}},
      {"experiment.depolarized_residual", K::kBool, "true", "residual light fully depolarized", {}},
      {"curves.alpha_sq", K::kRealList, "0:1:100", "|alpha|^2 grid", {}},
      {"curves.band_samples", K::kInteger, "400", "parameter draws per grid point for the bands", {}},
      {"size.excitations", K::kReal, "47", "mean excitations inside the memory", {}},
      {"size.small_alpha_sq", K::kReal, "2", "|alpha|^2 of the small-displacement guessing check", {}},
      {"size.target", K::kReal, "0.6666666666666666", "guessing probability defining sigma_max", {}},
      {"size.sigma", K::kRealList, "0:0.5:40", "coarse-graining grid (photons)", {}},
      {"size.targets", K::kRealList, "0.52, 0.55, 0.6, 0.65, 0.7, 0.75, 0.8, 0.85", "targets for size against P_g", {}},
      {"hom.csp_mean", K::kReal, "0.012", "mean photon number of the coherent pulse", {}},
      {"hom.pair_probability", K::kReal, "0.005", "pair probability per window", {}},
      {"hom.heralding_efficiency", K::kReal, "0.19", "", {}},
      {"hom.idler_efficiency", K::kReal, "0.19", "heralding detection efficiency", {}},
      {"hom.overlap", K::kReal, "1", "mode-overlap fraction", {}},
      {"hom.detector_efficiency", K::kReal, "1", "", {}},
      {"hom.dark_count", K::kReal, "0", "", {}},
      {"hom.mu", K::kRealList, "0.001, 0.002, 0.003, 0.005, 0.0075, 0.01, 0.012, 0.015, 0.02, 0.03, 0.04, 0.06, 0.08, 0.1", "coherent-pulse photon numbers", {}},
      {"hom.measured_visibility", K::kReal, "0.74", "measured dip visibility", {}},
      {"hom.csp_fwhm_ns", K::kReal, "2.0", "coherent pulse intensity FWHM", {}},
      {"hom.coherence_time_ns", K::kReal, "1.9", "heralded photon coherence time", {}},
      {"hom.window_ns", K::kReal, "3", "coincidence window", {}},
      {"hom.windows_ns", K::kRealList, "0.5:0.5:10", "window grid", {}},
      {"detailed.squeezing", K::kReal, "0.07", "squeezing parameter g", {}},
      {"detailed.asymmetry", K::kReal, "0.95", "thermal-parameter ratio R", {}},
      {"detailed.detector_efficiency", K::kReal, "0.6", "", {}},
      {"detailed.dark_count", K::kReal, "1e-5", "", {}},
      {"detailed.t1", K::kReal, "0.995", "", {}},
      {"detailed.t2", K::kReal, "0.995", "", {}},
      {"detailed.coupling", K::kReal, "0.023", "", {}},
      {"detailed.displacement_sq", K::kReal, "0.6118", "gamma^2", {}},
      {"detailed.phase_sd", K::kReal, "0.05477225575051661", "relative phase noise (rad)", {}},
      {"detailed.g_exponent", K::kText, "zeta_bar", "exponent damping the double no-click term", {"zeta", "zeta_bar"}},
      {"detailed.angles", K::kText, "chain", "angle roles in f and zeta-bar", {"printed", "chain"}},
      {"detailed.phase_average", K::kText, "gauss_hermite", "", {"closed_form", "gauss_hermite"}},
      {"detailed.quadrature_nodes", K::kInteger, "48", "", {}},
      {"detailed.oracle_samples", K::kInteger, "100000", "Monte-Carlo samples per grid point", {}},
      {"detailed.angles_deg", K::kRealList, "0, 22.5, 45, 67.5", "theta and theta' grid", {}},
      {"detailed.displacement_sq_grid", K::kRealList, "0:0.25:5", "gamma^2 grid for S", {}},
      {"memory.absorption", K::kReal, "0.55", "", {}},
      {"memory.efficiency", K::kReal, "0.046", "", {}},
      {"memory.storage_time_ns", K::kReal, "50", "", {}},
      {"memory.phase", K::kReal, "3.141592653589793", "programmed phase on the delayed pulse", {}},
      {"tomo.state", K::kText, "werner", "", {"werner", "predicted"}},
      {"tomo.visibility", K::kReal, "0.94", "Werner visibility for tomo.state = werner", {}},
      {"tomo.alpha_sq", K::kReal, "86", "|alpha|^2 for tomo.state = predicted", {}},
      {"tomo.shots", K::kInteger, "1000000", "shots per setting pair", {}},
  };
  return schema;
}

std::vector<double> parse_real_list(std::string_view text) {
  const std::string s = trim(text);
  std::vector<double> out;
  if (s.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, ':')) parts.push_back(trim(part));
    double start, step, stop;
    if (parts.size() != 3 || !parse_double(parts[0], start) || !parse_double(parts[1], step) ||
        !parse_double(parts[2], stop) || !(step > 0.0) || stop < start) {
      throw ConfigError("range '" + s + "' must be start:step:stop with step > 0");
    }
    const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9));
    if (count > 1000000) throw ConfigError("range '" + s + "' has too many points");
    for (long i = 0; i <= count; ++i) out.push_back(start + static_cast<double>(i) * step);
    return out;
  }
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ',')) {
    double v;
    if (!parse_double(trim(part), v)) throw ConfigError("list item '" + trim(part) + "' is not a number");
    out.push_back(v);
  }
  return out;
}

RunConfig RunConfig::defaults() {
  RunConfig c;
  for (const KeySpec& s : config_schema()) c.values_[s.key] = s.default_value;
  return c;
}

RunConfig RunConfig::parse(std::string_view text, std::string_view source) {
  RunConfig c = defaults();
  std::stringstream ss{std::string(text)};
  std::string line;
  int number = 0;
  std::map<std::string, int> seen;
  while (std::getline(ss, line)) {
    ++number;
    const auto hash = line.find('#');
    const std::string body = trim(hash == std::string::npos ? line : line.substr(0, hash));
    if (body.empty()) continue;
    const std::string where = std::string(source) + ":" + std::to_string(number) + ": ";
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw ConfigError(where + "expected 'section.key = value'");
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    if (!find_spec(key)) throw ConfigError(where + "unknown key '" + key + "'");
    if (seen.count(key)) {
      throw ConfigError(where + "key '" + key + "' already set on line " + std::to_string(seen[key]));
    }
    seen[key] = number;
    try {
      c.set(key, value);
    } catch (const ConfigError& e) {
      throw ConfigError(where + e.what());
    }
  }
  return c;
}

RunConfig RunConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str(), path.string());
}

void RunConfig::set(const std::string& key, const std::string& value) {
  const KeySpec* spec = find_spec(key);
  if (!spec) throw ConfigError("unknown key '" + key + "'");
  check_value(*spec, value);
  values_[key] = value;
}

const std::string& RunConfig::raw(const std::string& key, ValueKind kind) const {
  const KeySpec* spec = find_spec(key);
  if (!spec || spec->kind != kind) throw std::logic_error("no schema key '" + key + "' of that kind");
  return values_.at(key);
}

double RunConfig::real(const std::string& key) const {
  double v = 0.0;
  parse_double(raw(key, K::kReal), v);
  return v;
}

long RunConfig::integer(const std::string& key) const {
  long v = 0;
  parse_long(raw(key, K::kInteger), v);
  return v;
}

bool RunConfig::flag(const std::string& key) const {
  bool v = false;
  parse_bool(raw(key, K::kBool), v);
  return v;
}

const std::string& RunConfig::text(const std::string& key) const { return raw(key, K::kText); }

std::vector<double> RunConfig::reals(const std::string& key) const {
  return parse_real_list(raw(key, K::kRealList));
}

std::string RunConfig::canonical() const {
  std::string out;
  for (const KeySpec& s : config_schema()) out += s.key + " = " + values_.at(s.key) + "\n";
  return out;
}

std::string RunConfig::hash() const {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : canonical()) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

ExperimentParams RunConfig::experiment() const {
  return as_config_error("experiment", [&] {
    ExperimentParams p;
    auto m = [&](const std::string& name) {
      return Measured{real("experiment." + name), real("experiment." + name + "_sd")};
    };
    p.heralding_efficiency = m("heralding_efficiency");
    p.first_bs_transmittance = m("first_bs_transmittance");
    p.memory_efficiency = m("memory_efficiency");
    p.back_displacement_visibility = m("back_displacement_visibility");
    p.micro_visibility = m("micro_visibility");
    p.absorption = m("absorption");
    p.overlap_ratio = m("overlap_ratio");
    p.mu_per_alpha_sq = m("mu_per_alpha_sq");
    p.depolarized_residual = flag("experiment.depolarized_residual");
    p.validate();
    return p;
  });
}

DetailedParams RunConfig::detailed() const {
  return as_config_error("detailed", [&] {
    DetailedParams p;
    p.squeezing = real("detailed.squeezing");
    p.asymmetry = real("detailed.asymmetry");
    p.detector_efficiency = real("detailed.detector_efficiency");
    p.dark_count = real("detailed.dark_count");
    p.t1 = real("detailed.t1");
    p.t2 = real("detailed.t2");
    p.coupling = real("detailed.coupling");
    p.displacement_sq = real("detailed.displacement_sq");
    p.phase_sd = real("detailed.phase_sd");
    p.validate();
    return p;
  });
}

ModelReading RunConfig::reading() const {
  ModelReading r;
  r.g_exponent = text("detailed.g_exponent") == "zeta" ? DampingExponent::kZeta : DampingExponent::kZetaBar;
  r.angles = text("detailed.angles") == "printed" ? AngleConvention::kAsPrinted
                                                  : AngleConvention::kTransmissionChain;
  r.phase = text("detailed.phase_average") == "closed_form" ? PhaseAverage::kClosedForm
                                                            : PhaseAverage::kGaussHermite;
  r.quadrature_nodes = static_cast<int>(integer("detailed.quadrature_nodes"));
  if (r.quadrature_nodes < 1 || r.quadrature_nodes > 400) {
    throw ConfigError("key 'detailed.quadrature_nodes' must lie in [1, 400]");
  }
  return r;
}

HomParams RunConfig::hom() const {
  return as_config_error("hom", [&] {
    HomParams p;
    p.csp_mean = real("hom.csp_mean");
    p.pair_probability = real("hom.pair_probability");
    p.heralding_efficiency = real("hom.heralding_efficiency");
    p.idler_efficiency = real("hom.idler_efficiency");
    p.overlap = real("hom.overlap");
    p.detector = ClickDetector(real("hom.detector_efficiency"), real("hom.dark_count"));
    p.validate();
    return p;
  });
}

TemporalProfiles RunConfig::profiles() const {
  return as_config_error("hom", [&] {
    TemporalProfiles p;
    p.csp_fwhm = real("hom.csp_fwhm_ns");
    p.coherence_time = real("hom.coherence_time_ns");
    p.window = real("hom.window_ns");
    p.validate();
    return p;
  });
}

MemoryParams RunConfig::memory() const {
  return as_config_error("memory", [&] {
    MemoryParams p;
    p.absorption = real("memory.absorption");
    p.efficiency = real("memory.efficiency");
    p.storage_time_ns = real("memory.storage_time_ns");
    p.phase = real("memory.phase");
    p.validate();
    return p;
  });
}

}  // namespace mmsim::cli
