#include "cslattice/cli/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>

namespace cslattice::cli {

std::string_view to_string(ModelKind kind) noexcept {
  switch (kind) {
    case ModelKind::kGdst: return "gdst";
    case ModelKind::kMdnls: return "mdnls";
    case ModelKind::kXxz: return "xxz";
  }
  return "?";
}

std::string_view to_string(InitialKind kind) noexcept {
  switch (kind) {
    case InitialKind::kSingleSite: return "single-site";
    case InitialKind::kAmplitudes: return "amplitudes";
    case InitialKind::kRandom: return "random";
  }
  return "?";
}

std::vector<Ordering> parse_ordering_selection(std::string_view text) {
  if (text == "both") return {Ordering::kNormal, Ordering::kSymmetric};
  return {parse_ordering(text)};
}

std::size_t RunConfig::sites() const noexcept {
  switch (model) {
    case ModelKind::kGdst: return gdst.sites();
    case ModelKind::kMdnls: return static_cast<std::size_t>(mdnls.f);
    case ModelKind::kXxz: return static_cast<std::size_t>(xxz.f);
  }
  return 0;
}

namespace {

const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> keys{
      {"model",
       {"kind", "f", "ordering", "omega0", "gamma", "m", "lambda", "coupling", "v", "x", "g",
        "include_linear_term", "onsite_energy", "equation"}},
      {"initial", {"kind", "site", "n_total", "re", "im", "seed", "z_max"}},
      {"integrator", {"horizon", "dt", "rel_tol", "abs_tol", "max_step"}},
      {"observables",
       {"qfunc_times", "qfunc_sites", "qfunc_half_width", "qfunc_step", "poisson_times",
        "poisson_n_max", "imbalance", "fermion"}},
      {"sweep",
       {"n_values", "site", "gamma_lo", "gamma_hi", "rel_tol", "abs_tol", "max_expansions",
        "horizon", "sample_spacing"}},
      {"exact", {"n_max", "tail_bound"}},
      {"output", {"dir"}},
  };
  return keys;
}

// Drops '#' comments that are outside double quotes.
std::string strip_comments(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool quoted = false;
  bool comment = false;
  for (const char c : text) {
    if (c == '\n') {
      quoted = false;
      comment = false;
      out.push_back(c);
      continue;
    }
    if (comment) continue;
    if (c == '"') quoted = !quoted;
    if (c == '#' && !quoted) {
      comment = true;
      continue;
    }
    out.push_back(c);
  }
  return out;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::string unquote(const std::string& s) {
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') return s.substr(1, s.size() - 2);
  return s;
}

// Flat view of the document, keyed "section.key".
class Document {
 public:
  explicit Document(std::string_view text) {
    namespace pt = boost::property_tree;
    pt::ptree tree;
    std::istringstream stream(strip_comments(text));
    try {
      pt::ini_parser::read_ini(stream, tree);
    } catch (const pt::ini_parser_error& e) {
      throw ConfigError(std::string("malformed config: ") + e.message() + " (line " +
                        std::to_string(e.line()) + ")");
    }
    std::vector<std::string> unknown;
    for (const auto& [section, body] : tree) {
      const auto known = known_keys().find(section);
      if (body.empty()) {
        // A key outside any section, or an empty section header.
        if (!body.data().empty() || known == known_keys().end()) unknown.push_back(section);
        continue;
      }
      for (const auto& [key, value] : body) {
        const std::string full = section + "." + key;
        if (known == known_keys().end() || !known->second.count(key)) {
          unknown.push_back(full);
          continue;
        }
        values_[full] = trim(value.data());
      }
    }
    if (!unknown.empty()) {
      std::string msg = "unknown config keys:";
      for (const auto& k : unknown) msg += " " + k;
      throw ConfigError(msg);
    }
  }

  bool has(const std::string& key) const { return values_.count(key) != 0; }

  std::string string(const std::string& key, const std::string& fallback) const {
    const auto it = values_.find(key);
    return it == values_.end() ? fallback : unquote(it->second);
  }

  double number(const std::string& key, double fallback) const {
    const auto it = values_.find(key);
    return it == values_.end() ? fallback : parse_number(key, it->second);
  }

  std::optional<double> optional_number(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    return parse_number(key, it->second);
  }

  long long integer(const std::string& key, long long fallback) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    const double v = parse_number(key, it->second);
    if (v != std::floor(v) || std::abs(v) > 9e15) {
      throw InvalidParameter(key + " must be an integer, got " + it->second);
    }
    return static_cast<long long>(v);
  }

  bool boolean(const std::string& key, bool fallback) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    const std::string v = unquote(it->second);
    if (v == "true") return true;
    if (v == "false") return false;
    throw InvalidParameter(key + " must be true or false, got " + it->second);
  }

  std::vector<double> list(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return {};
    const std::string& raw = it->second;
    if (raw.size() < 2 || raw.front() != '[' || raw.back() != ']') {
      return {parse_number(key, raw)};
    }
    std::vector<double> out;
    const std::string body = raw.substr(1, raw.size() - 2);
    if (trim(body).empty()) return out;
    std::size_t start = 0;
    while (true) {
      const auto comma = body.find(',', start);
      out.push_back(parse_number(key, trim(body.substr(start, comma - start))));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    return out;
  }

 private:
  static double parse_number(const std::string& key, const std::string& raw) {
    const std::string text = unquote(raw);
    if (text == "inf" || text == "+inf") return std::numeric_limits<double>::infinity();
    double v = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    if (!text.empty() && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last || text.empty()) {
      throw InvalidParameter(key + " is not a number: '" + raw + "'");
    }
    return v;
  }

  std::map<std::string, std::string> values_;
};

void require(bool ok, const std::string& message) {
  if (!ok) throw InvalidParameter(message);
}

std::string show(double v) {
  std::ostringstream s;
  s.precision(17);
  s << v;
  return s.str();
}

Site parse_site(const Document& doc, const std::string& key, std::size_t f, int fallback) {
  const long long n = doc.integer(key, fallback);
  if (n < 1 || static_cast<std::size_t>(n) > f) {
    throw IndexError(key + " = " + std::to_string(n) + " is outside 1.." + std::to_string(f));
  }
  return Site(static_cast<int>(n));
}

std::vector<double> sorted_times(const Document& doc, const std::string& key) {
  auto times = doc.list(key);
  for (const double t : times) require(std::isfinite(t) && t >= 0.0, key + " entries must be finite and >= 0");
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  return times;
}

void parse_model(const Document& doc, RunConfig& cfg) {
  const std::string kind = doc.string("model.kind", "gdst");
  if (kind == "gdst") {
    cfg.model = ModelKind::kGdst;
  } else if (kind == "mdnls") {
    cfg.model = ModelKind::kMdnls;
  } else if (kind == "xxz") {
    cfg.model = ModelKind::kXxz;
  } else {
    throw InvalidParameter("model.kind must be gdst, mdnls or xxz, got '" + kind + "'");
  }

  const long long f = doc.integer("model.f", cfg.model == ModelKind::kGdst ? 2 : 3);
  require(f >= 1 && f <= 100000, "model.f must be in 1..100000, got " + std::to_string(f));
  cfg.orderings = parse_ordering_selection(doc.string("model.ordering", "no"));

  switch (cfg.model) {
    case ModelKind::kGdst: {
      const long long m = doc.integer("model.m", 2);
      require(m >= 2 && m <= 64, "model.m must be in 2..64, got " + std::to_string(m));
      cfg.gdst.m = static_cast<int>(m);
      cfg.gdst.omega0 = doc.number("model.omega0", 0.0);
      cfg.gdst.gamma = doc.number("model.gamma", 0.0);
      require(std::isfinite(cfg.gdst.omega0), "model.omega0 must be finite");
      require(std::isfinite(cfg.gdst.gamma), "model.gamma must be finite");
      cfg.lambda = doc.number("model.lambda", 1.0);
      require(std::isfinite(cfg.lambda), "model.lambda must be finite");
      const auto entries = doc.list("model.coupling");
      const auto fs = static_cast<std::size_t>(f);
      if (!entries.empty()) {
        require(!doc.has("model.lambda"), "model.lambda and model.coupling are mutually exclusive");
        require(entries.size() == fs * fs, "model.coupling needs f*f = " + std::to_string(fs * fs) +
                                               " entries, got " + std::to_string(entries.size()));
        try {
          cfg.gdst.coupling = CouplingMatrix(fs, entries);
        } catch (const InvalidParameter& e) {
          throw InvalidParameter(std::string("model.coupling: ") + e.what());
        }
        cfg.explicit_coupling = true;
        cfg.lambda = cfg.gdst.coupling.max_abs();
      } else {
        cfg.gdst.coupling = nearest_neighbor_ring(static_cast<int>(f), cfg.lambda);
      }
      cfg.gdst.ordering = cfg.orderings.front();
      break;
    }
    case ModelKind::kMdnls:
      require(f >= 3, "model.f must be >= 3 for mdnls, got " + std::to_string(f));
      cfg.mdnls.f = static_cast<int>(f);
      cfg.mdnls.v = doc.number("model.v", 1.0);
      cfg.mdnls.x = doc.number("model.x", 0.0);
      require(std::isfinite(cfg.mdnls.v) && std::isfinite(cfg.mdnls.x), "model.v and model.x must be finite");
      cfg.mdnls.ordering = cfg.orderings.front();
      break;
    case ModelKind::kXxz:
      require(f >= 3, "model.f must be >= 3 for xxz, got " + std::to_string(f));
      cfg.xxz.f = static_cast<int>(f);
      cfg.xxz.v = doc.number("model.v", 1.0);
      cfg.xxz.g = doc.number("model.g", 1.0);
      cfg.xxz.include_linear_term = doc.boolean("model.include_linear_term", false);
      cfg.xxz.onsite_energy = doc.number("model.onsite_energy", 0.0);
      try {
        cfg.xxz.equation = parse_xxz_equation(doc.string("model.equation", "symbol-flow"));
      } catch (const InvalidParameter& e) {
        throw InvalidParameter(std::string("model.equation: ") + e.what());
      }
      cfg.xxz.validate();
      // Ordering does not apply to the spin chain.
      cfg.orderings = {Ordering::kNormal};
      break;
  }

  const char* other_keys[] = {"omega0", "gamma", "m", "lambda", "coupling", "v", "x", "g",
                              "include_linear_term", "onsite_energy", "equation"};
  for (const std::string k : other_keys) {
    const bool allowed = (cfg.model == ModelKind::kGdst &&
                          (k == "omega0" || k == "gamma" || k == "m" || k == "lambda" || k == "coupling")) ||
                         (cfg.model == ModelKind::kMdnls && (k == "v" || k == "x")) ||
                         (cfg.model == ModelKind::kXxz &&
                          (k == "v" || k == "g" || k == "include_linear_term" ||
                           k == "onsite_energy" || k == "equation"));
    if (!allowed && doc.has("model." + k)) {
      throw ConfigError("model." + k + " does not apply to model " + std::string(to_string(cfg.model)));
    }
  }
}

void parse_initial(const Document& doc, RunConfig& cfg) {
  const std::size_t f = cfg.sites();
  auto& init = cfg.initial;
  const bool has_amplitudes = doc.has("initial.re") || doc.has("initial.im");
  const bool has_site = doc.has("initial.site");
  std::string kind = doc.string("initial.kind", "");
  if (kind.empty()) kind = has_amplitudes ? "amplitudes" : "single-site";

  if (kind == "single-site") {
    init.kind = InitialKind::kSingleSite;
    if (cfg.model == ModelKind::kXxz) {
      throw ConfigError("initial.kind = single-site is not defined for xxz; use amplitudes or random");
    }
  } else if (kind == "amplitudes") {
    init.kind = InitialKind::kAmplitudes;
  } else if (kind == "random") {
    init.kind = InitialKind::kRandom;
  } else {
    throw InvalidParameter("initial.kind must be single-site, amplitudes or random, got '" + kind + "'");
  }

  if (init.kind != InitialKind::kAmplitudes && has_amplitudes) {
    throw ConfigError("initial: re/im given together with kind = " + kind +
                      "; specify exactly one initial condition");
  }
  if (init.kind != InitialKind::kSingleSite && has_site) {
    throw ConfigError("initial.site only applies to kind = single-site");
  }
  const bool amplitudes = init.kind == InitialKind::kAmplitudes;
  if (amplitudes && doc.has("initial.n_total")) {
    throw ConfigError("initial.n_total is implied by explicit amplitudes");
  }
  if (init.kind != InitialKind::kRandom && (doc.has("initial.seed") || doc.has("initial.z_max"))) {
    throw ConfigError("initial.seed and initial.z_max only apply to kind = random");
  }

  init.n_total = doc.number("initial.n_total", 1.0);
  require(std::isfinite(init.n_total) && init.n_total >= 0.0, "initial.n_total must be finite and >= 0");
  switch (init.kind) {
    case InitialKind::kSingleSite:
      init.site = parse_site(doc, "initial.site", f, 1);
      break;
    case InitialKind::kAmplitudes: {
      const auto re = doc.list("initial.re");
      auto im = doc.list("initial.im");
      if (im.empty()) im.assign(re.size(), 0.0);
      if (re.size() != f || im.size() != f) {
        throw InvalidParameter("initial.re and initial.im need " + std::to_string(f) + " entries");
      }
      init.amplitudes.clear();
      for (std::size_t j = 0; j < f; ++j) init.amplitudes.emplace_back(re[j], im[j]);
      break;
    }
    case InitialKind::kRandom: {
      const long long seed = doc.integer("initial.seed", 1);
      require(seed >= 0, "initial.seed must be >= 0");
      init.seed = static_cast<std::uint64_t>(seed);
      init.z_max = doc.number("initial.z_max", 2.0);
      require(init.z_max > 0.0 && std::isfinite(init.z_max), "initial.z_max must be positive");
      break;
    }
  }
}

void parse_integrator(const Document& doc, RunConfig& cfg) {
  auto& in = cfg.integrator;
  in.horizon = doc.number("integrator.horizon", in.horizon);
  in.dt = doc.number("integrator.dt", in.dt);
  in.rel_tol = doc.number("integrator.rel_tol", in.rel_tol);
  in.abs_tol = doc.number("integrator.abs_tol", in.abs_tol);
  in.max_step = doc.number("integrator.max_step", in.max_step);
  require(std::isfinite(in.horizon) && in.horizon >= 0.0, "integrator.horizon must be finite and >= 0, got " + show(in.horizon));
  require(std::isfinite(in.dt) && in.dt > 0.0, "integrator.dt must be positive, got " + show(in.dt));
  require(in.rel_tol > 0.0 && in.abs_tol > 0.0, "integrator.rel_tol and integrator.abs_tol must be positive");
  require(in.max_step >= 0.0, "integrator.max_step must be >= 0");
}

void parse_observables(const Document& doc, RunConfig& cfg) {
  auto& ob = cfg.observables;
  const std::size_t f = cfg.sites();
  ob.qfunc_times = sorted_times(doc, "observables.qfunc_times");
  ob.poisson_times = sorted_times(doc, "observables.poisson_times");
  for (const double t : ob.qfunc_times) {
    require(t <= cfg.integrator.horizon, "observables.qfunc_times entry " + show(t) + " is past the horizon");
  }
  for (const double t : ob.poisson_times) {
    require(t <= cfg.integrator.horizon, "observables.poisson_times entry " + show(t) + " is past the horizon");
  }
  for (const double s : doc.list("observables.qfunc_sites")) {
    if (s != std::floor(s) || s < 1 || s > static_cast<double>(f)) {
      throw IndexError("observables.qfunc_sites entry " + show(s) + " is outside 1.." + std::to_string(f));
    }
    ob.qfunc_sites.emplace_back(static_cast<int>(s));
  }
  ob.qfunc_half_width = doc.number("observables.qfunc_half_width", 0.0);
  ob.qfunc_step = doc.number("observables.qfunc_step", 0.05);
  require(ob.qfunc_half_width >= 0.0 && std::isfinite(ob.qfunc_half_width), "observables.qfunc_half_width must be >= 0");
  require(ob.qfunc_step > 0.0 && std::isfinite(ob.qfunc_step), "observables.qfunc_step must be positive");
  const long long n_max = doc.integer("observables.poisson_n_max", 40);
  require(n_max >= 0 && n_max <= 1000000, "observables.poisson_n_max must be in 0..1000000");
  ob.poisson_n_max = static_cast<int>(n_max);
  ob.imbalance = doc.boolean("observables.imbalance", false);
  ob.fermion = doc.boolean("observables.fermion", false);

  const bool boson = cfg.model != ModelKind::kXxz;
  if (!boson && (!ob.qfunc_times.empty() || !ob.poisson_times.empty())) {
    throw ConfigError("Q-function and Poisson tables need a boson model");
  }
  if (ob.imbalance && !(cfg.model == ModelKind::kGdst && f == 2)) {
    throw ConfigError("observables.imbalance needs a gdst dimer (f = 2)");
  }
  if (ob.fermion && cfg.model != ModelKind::kXxz) {
    throw ConfigError("observables.fermion needs model.kind = xxz");
  }
}

void parse_sweep(const Document& doc, RunConfig& cfg) {
  auto& sw = cfg.sweep;
  sw.n_values = doc.list("sweep.n_values");
  for (const double n : sw.n_values) require(std::isfinite(n) && n > 0.0, "sweep.n_values entries must be positive");
  sw.site = parse_site(doc, "sweep.site", cfg.sites(), 1);
  sw.gamma_lo = doc.number("sweep.gamma_lo", sw.gamma_lo);
  sw.gamma_hi = doc.number("sweep.gamma_hi", sw.gamma_hi);
  sw.rel_tol = doc.number("sweep.rel_tol", sw.rel_tol);
  sw.abs_tol = doc.number("sweep.abs_tol", sw.abs_tol);
  const long long expansions = doc.integer("sweep.max_expansions", sw.max_expansions);
  require(expansions >= 0 && expansions <= 1000, "sweep.max_expansions must be in 0..1000");
  sw.max_expansions = static_cast<int>(expansions);
  sw.horizon = doc.optional_number("sweep.horizon");
  sw.sample_spacing = doc.optional_number("sweep.sample_spacing");
  require(sw.gamma_lo >= 0.0 && sw.gamma_hi > sw.gamma_lo, "sweep needs 0 <= gamma_lo < gamma_hi");
  require(sw.rel_tol > 0.0 || sw.abs_tol > 0.0, "sweep needs a positive rel_tol or abs_tol");
  if (sw.horizon) require(*sw.horizon > 0.0 && std::isfinite(*sw.horizon), "sweep.horizon must be positive");
  if (sw.sample_spacing) require(*sw.sample_spacing > 0.0, "sweep.sample_spacing must be positive");
}

void parse_exact(const Document& doc, RunConfig& cfg) {
  const long long n_max = doc.integer("exact.n_max", 0);
  require(n_max >= 0 && n_max <= 10000, "exact.n_max must be in 0..10000");
  cfg.exact.n_max = static_cast<int>(n_max);
  cfg.exact.tail_bound = doc.number("exact.tail_bound", cfg.exact.tail_bound);
  require(cfg.exact.tail_bound > 0.0 && cfg.exact.tail_bound < 1.0, "exact.tail_bound must be in (0, 1)");
}

nlohmann::json complex_list(const std::vector<Complex>& values) {
  auto out = nlohmann::json::array();
  for (const auto& v : values) out.push_back({v.real(), v.imag()});
  return out;
}

}  // namespace

nlohmann::json RunConfig::echo() const {
  using nlohmann::json;
  json orderings_json = json::array();
  for (const auto o : orderings) orderings_json.push_back(std::string(to_string(o)));

  json model_json{{"kind", std::string(to_string(model))}, {"f", sites()}, {"ordering", orderings_json}};
  switch (model) {
    case ModelKind::kGdst: {
      model_json["omega0"] = gdst.omega0;
      model_json["gamma"] = gdst.gamma;
      model_json["m"] = gdst.m;
      model_json["lambda"] = lambda;
      json coupling = json::array();
      for (std::size_t j = 0; j < gdst.sites(); ++j) {
        for (std::size_t k = 0; k < gdst.sites(); ++k) coupling.push_back(gdst.coupling(j, k));
      }
      model_json["coupling"] = coupling;
      model_json["coupling_source"] = explicit_coupling ? "explicit" : "nearest-neighbor ring";
      break;
    }
    case ModelKind::kMdnls:
      model_json["v"] = mdnls.v;
      model_json["x"] = mdnls.x;
      break;
    case ModelKind::kXxz:
      model_json["v"] = xxz.v;
      model_json["g"] = xxz.g;
      model_json["include_linear_term"] = xxz.include_linear_term;
      model_json["onsite_energy"] = xxz.onsite_energy;
      model_json["equation"] = std::string(to_string(xxz.equation));
      break;
  }

  json initial_json{{"kind", std::string(to_string(initial.kind))}};
  switch (initial.kind) {
    case InitialKind::kSingleSite:
      initial_json["site"] = initial.site.number();
      initial_json["n_total"] = initial.n_total;
      break;
    case InitialKind::kAmplitudes:
      initial_json["amplitudes"] = complex_list(initial.amplitudes);
      break;
    case InitialKind::kRandom:
      initial_json["seed"] = initial.seed;
      if (model == ModelKind::kXxz) {
        initial_json["z_max"] = initial.z_max;
      } else {
        initial_json["n_total"] = initial.n_total;
      }
      break;
  }

  json qsites = json::array();
  for (const auto s : observables.qfunc_sites) qsites.push_back(s.number());
  auto optional = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };

  return json{
      {"model", model_json},
      {"initial", initial_json},
      {"integrator",
       {{"horizon", integrator.horizon},
        {"dt", integrator.dt},
        {"rel_tol", integrator.rel_tol},
        {"abs_tol", integrator.abs_tol},
        {"max_step", integrator.max_step}}},
      {"observables",
       {{"qfunc_times", observables.qfunc_times},
        {"qfunc_sites", qsites},
        {"qfunc_half_width", observables.qfunc_half_width},
        {"qfunc_step", observables.qfunc_step},
        {"poisson_times", observables.poisson_times},
        {"poisson_n_max", observables.poisson_n_max},
        {"imbalance", observables.imbalance},
        {"fermion", observables.fermion}}},
      {"sweep",
       {{"n_values", sweep.n_values},
        {"site", sweep.site.number()},
        {"gamma_lo", sweep.gamma_lo},
        {"gamma_hi", sweep.gamma_hi},
        {"rel_tol", sweep.rel_tol},
        {"abs_tol", sweep.abs_tol},
        {"max_expansions", sweep.max_expansions},
        {"horizon", optional(sweep.horizon)},
        {"sample_spacing", optional(sweep.sample_spacing)}}},
      {"exact", {{"n_max", exact.n_max}, {"tail_bound", exact.tail_bound}}},
      {"output", {{"dir", out_dir}}},
  };
}

RunConfig parse_config(std::string_view text) {
  const Document doc(text);
  RunConfig cfg;
  parse_model(doc, cfg);
  parse_integrator(doc, cfg);
  parse_initial(doc, cfg);
  parse_observables(doc, cfg);
  parse_sweep(doc, cfg);
  parse_exact(doc, cfg);
  cfg.out_dir = doc.string("output.dir", cfg.out_dir);
  require(!cfg.out_dir.empty(), "output.dir must not be empty");
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

}  // namespace cslattice::cli
