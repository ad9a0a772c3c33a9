#include "cslattice/cli/experiments.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <future>
#include <limits>
#include <numbers>
#include <random>

#include "cslattice/cli/output.hpp"
#include "cslattice/exact.hpp"
#include "cslattice/geometry.hpp"
#include "cslattice/observables.hpp"

namespace cslattice::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

double drift(double value, double reference) {
  const double d = std::abs(value - reference);
  return reference == 0.0 ? d : d / std::abs(reference);
}

std::string run_label(const RunConfig& config, Ordering ordering) {
  return config.model == ModelKind::kXxz ? "xxz" : std::string(to_string(ordering));
}

std::optional<std::size_t> sample_index(const std::vector<double>& times, double t) {
  const auto it = std::lower_bound(times.begin(), times.end(), t);
  if (it == times.end() || *it != t) return std::nullopt;
  return static_cast<std::size_t>(it - times.begin());
}

// Everything one run writes, relative to the output root.
struct RunRecord {
  json summary;
  std::vector<EmittedFile> files;
  bool ok = true;
};

template <class State>
void write_trajectory(const Trajectory<State>& traj, bool spin, const fs::path& dir, const std::string& prefix,
                      bool partial, RunRecord& record) {
  const std::size_t f = traj.states.empty() ? 0 : traj.states.front().size();
  const std::string charge = spin ? "total_sz" : "norm";
  std::vector<std::string> columns{"t"};
  for (std::size_t j = 1; j <= f; ++j) {
    if (spin) {
      columns.insert(columns.end(), {fmt::format("re_z_{}", j), fmt::format("im_z_{}", j), fmt::format("sz_{}", j)});
    } else {
      columns.insert(columns.end(), {fmt::format("re_beta_{}", j), fmt::format("im_beta_{}", j), fmt::format("abs2_{}", j)});
    }
  }
  columns.insert(columns.end(), {charge, "energy", charge + "_drift", "energy_drift"});
  CsvTable table(columns);
  for (std::size_t i = 0; i < traj.size(); ++i) {
    std::vector<std::string> row{format_number(traj.times[i])};
    for (std::size_t j = 0; j < f; ++j) {
      const Complex v = traj.states[i][j];
      row.push_back(format_number(v.real()));
      row.push_back(format_number(v.imag()));
      row.push_back(format_number(spin ? sz_symbol(v) : std::norm(v)));
    }
    const Audit& a = traj.audits[i];
    const Audit& a0 = traj.audits.front();
    row.push_back(format_number(a.charge));
    row.push_back(format_number(a.energy));
    row.push_back(format_number(drift(a.charge, a0.charge)));
    row.push_back(format_number(drift(a.energy, a0.energy)));
    table.add_row(row);
  }
  table.write(dir / "trajectory.csv");
  record.files.push_back({prefix + "/trajectory.csv", partial});
}

void write_qfunc(const BosonTrajectory& traj, const RunConfig& config, const std::vector<double>& times,
                 const fs::path& dir, const std::string& prefix, RunRecord& record) {
  const auto& ob = config.observables;
  std::vector<Site> sites = ob.qfunc_sites;
  if (sites.empty()) {
    for (std::size_t j = 1; j <= config.sites(); ++j) sites.emplace_back(static_cast<int>(j));
  }
  json written = json::array();
  for (const double t : times) {
    const auto idx = sample_index(traj.times, t);
    if (!idx) continue;
    for (const Site site : sites) {
      const Complex beta = traj.states[*idx].at(site);
      const double half = ob.qfunc_half_width > 0.0 ? ob.qfunc_half_width : std::max(6.0, std::abs(beta) + 6.0);
      const auto gx = Grid1d::centered(beta.real(), half, ob.qfunc_step);
      const auto gy = Grid1d::centered(beta.imag(), half, ob.qfunc_step);
      const QFunctionField field = q_function(beta, gx, gy);

      CsvTable table({"x", "y", "q"});
      table.add_comment(fmt::format("t={} site={} beta_re={} beta_im={}", format_number(t), site.number(),
                                    format_number(beta.real()), format_number(beta.imag())));
      table.add_comment(fmt::format("grid_x origin={} step={} first={} count={}", format_number(gx.origin),
                                    format_number(gx.step), gx.first, gx.count));
      table.add_comment(fmt::format("grid_y origin={} step={} first={} count={}", format_number(gy.origin),
                                    format_number(gy.step), gy.first, gy.count));
      for (std::size_t iy = 0; iy < gy.count; ++iy) {
        const std::string y = format_number(gy.at(iy));
        for (std::size_t ix = 0; ix < gx.count; ++ix) {
          table.add_row({format_number(gx.at(ix)), y, format_number(field.at(ix, iy))});
        }
      }
      const std::string name = fmt::format("qfunc_t{}_site{}.csv", format_label(t), site.number());
      table.write(dir / name);
      record.files.push_back({prefix + "/" + name, false});
      written.push_back(name);
    }
  }
  record.summary["qfunc_files"] = written;
}

void write_poisson(const BosonTrajectory& traj, const RunConfig& config, const std::vector<double>& times,
                   const fs::path& dir, const std::string& prefix, RunRecord& record) {
  json written = json::array();
  for (const double t : times) {
    const auto idx = sample_index(traj.times, t);
    if (!idx) continue;
    CsvTable table({"site", "n", "probability", "tail_mass", "mean_occupation"});
    table.add_comment(fmt::format("t={} n_max={}", format_number(t), config.observables.poisson_n_max));
    const auto& state = traj.states[*idx];
    for (std::size_t j = 0; j < state.size(); ++j) {
      const PoissonDist dist = poisson_distribution(state[j], config.observables.poisson_n_max);
      const std::string tail = format_number(dist.tail_mass);
      const std::string mean = format_number(std::norm(state[j]));
      for (std::size_t n = 0; n < dist.probs.size(); ++n) {
        table.add_row({std::to_string(j + 1), std::to_string(n), format_number(dist.probs[n]), tail, mean});
      }
    }
    const std::string name = fmt::format("poisson_t{}.csv", format_label(t));
    table.write(dir / name);
    record.files.push_back({prefix + "/" + name, false});
    written.push_back(name);
  }
  record.summary["poisson_files"] = written;
}

void write_imbalance(const BosonTrajectory& traj, const fs::path& dir, const std::string& prefix, bool partial,
                     RunRecord& record) {
  CsvTable table({"t", "imbalance"});
  for (std::size_t i = 0; i < traj.size(); ++i) {
    table.add_row({format_number(traj.times[i]), format_number(population_imbalance(traj.states[i]))});
  }
  table.write(dir / "imbalance.csv");
  record.files.push_back({prefix + "/imbalance.csv", partial});
}

void write_fermion(const SpinTrajectory& traj, const fs::path& dir, const std::string& prefix, bool partial,
                   RunRecord& record) {
  const std::size_t f = traj.states.empty() ? 0 : traj.states.front().size();
  std::vector<std::string> columns{"t"};
  for (std::size_t j = 1; j <= f; ++j) {
    columns.insert(columns.end(), {fmt::format("n_{}", j), fmt::format("re_adag_{}", j), fmt::format("im_adag_{}", j)});
  }
  CsvTable table(columns);
  for (std::size_t i = 0; i < traj.size(); ++i) {
    std::vector<std::string> row{format_number(traj.times[i])};
    for (std::size_t j = 1; j <= f; ++j) {
      const Site site(static_cast<int>(j));
      const Complex a = fermion_amplitude(traj.states[i], site);
      row.push_back(format_number(fermion_number(traj.states[i], site)));
      row.push_back(format_number(a.real()));
      row.push_back(format_number(a.imag()));
    }
    table.add_row(row);
  }
  table.write(dir / "fermion.csv");
  record.files.push_back({prefix + "/fermion.csv", partial});
}

template <class State>
void summarize(const Trajectory<State>& traj, RunRecord& record) {
  record.summary["samples"] = traj.size();
  record.summary["reached_time"] = traj.times.empty() ? json(nullptr) : json(traj.times.back());
  record.summary["max_charge_drift"] = traj.size() ? traj.max_charge_drift() : 0.0;
  record.summary["max_energy_drift"] = traj.size() ? traj.max_energy_drift() : 0.0;
}

template <class Params, class State>
Trajectory<State> integrate_recording(const Params& params, const State& state0, const IntegratorConfig& sampling,
                                      RunRecord& record) {
  Trajectory<State> traj;
  try {
    integrate_into(make_rhs(params), make_audit(params), state0, sampling, traj);
  } catch (const IntegrationFailure& e) {
    record.ok = false;
    record.summary["status"] = "integration-failure";
    record.summary["failure"] = {{"message", e.what()}, {"reached_time", e.reached_time()}};
  }
  return traj;
}

RunRecord run_single(const RunConfig& config, Ordering ordering, Products products, const fs::path& root) {
  RunRecord record;
  const std::string label = run_label(config, ordering);
  const fs::path dir = root / label;
  ensure_directory(dir);
  record.summary = {{"label", label}, {"status", "ok"}};
  if (config.model != ModelKind::kXxz) record.summary["ordering"] = std::string(to_string(ordering));

  const auto& ob = config.observables;
  const bool all = products == Products::kAll;
  std::vector<double> qtimes;
  std::vector<double> ptimes;
  if (all || products == Products::kQFunction) {
    qtimes = ob.qfunc_times;
    if (qtimes.empty() && products == Products::kQFunction) qtimes = {config.integrator.horizon};
  }
  if (all || products == Products::kPoisson) {
    ptimes = ob.poisson_times;
    if (ptimes.empty() && products == Products::kPoisson) ptimes = {config.integrator.horizon};
  }
  std::vector<double> extra = qtimes;
  extra.insert(extra.end(), ptimes.begin(), ptimes.end());
  const IntegratorConfig sampling = sampling_for(config, extra);

  if (config.model == ModelKind::kXxz) {
    const SpinTrajectory traj = integrate_recording(config.xxz, initial_spin_state(config), sampling, record);
    summarize(traj, record);
    write_trajectory(traj, true, dir, label, !record.ok, record);
    if (all && ob.fermion) write_fermion(traj, dir, label, !record.ok, record);
    return record;
  }

  BosonTrajectory traj;
  const BosonLatticeState state0 = initial_boson_state(config);
  if (config.model == ModelKind::kGdst) {
    GdstParams params = config.gdst;
    params.ordering = ordering;
    traj = integrate_recording(params, state0, sampling, record);
  } else {
    MdnlsParams params = config.mdnls;
    params.ordering = ordering;
    traj = integrate_recording(params, state0, sampling, record);
  }
  summarize(traj, record);
  write_trajectory(traj, false, dir, label, !record.ok, record);
  if (!qtimes.empty()) write_qfunc(traj, config, qtimes, dir, label, record);
  if (!ptimes.empty()) write_poisson(traj, config, ptimes, dir, label, record);
  if (all && ob.imbalance) write_imbalance(traj, dir, label, !record.ok, record);
  return record;
}

CommandResult finish(const fs::path& root, std::string command, json config_echo,
                     std::chrono::system_clock::time_point started, std::vector<RunRecord>& records) {
  ManifestInput input;
  input.command = std::move(command);
  input.config = std::move(config_echo);
  input.started = started;
  bool ok = true;
  for (auto& r : records) {
    ok = ok && r.ok;
    input.runs.push_back(r.summary);
    input.files.insert(input.files.end(), r.files.begin(), r.files.end());
  }
  input.status = ok ? "ok" : "failed";
  input.finished = std::chrono::system_clock::now();
  CommandResult result;
  result.manifest = write_manifest(root, input);
  result.exit_code = ok ? kExitOk : kExitNumerical;
  return result;
}

void require_gdst(const RunConfig& config, const char* command) {
  if (config.model != ModelKind::kGdst) {
    throw ConfigError(std::string(command) + " needs model.kind = gdst");
  }
}

}  // namespace

IntegratorConfig sampling_for(const RunConfig& config, const std::vector<double>& extra_times) {
  IntegratorConfig cfg = IntegratorConfig::uniform(config.integrator.horizon, config.integrator.dt);
  cfg.rel_tol = config.integrator.rel_tol;
  cfg.abs_tol = config.integrator.abs_tol;
  cfg.max_step = config.integrator.max_step > 0.0 ? config.integrator.max_step
                                                  : std::numeric_limits<double>::infinity();
  auto& times = cfg.sample_times;
  for (const double t : extra_times) {
    const auto it = std::lower_bound(times.begin(), times.end(), t);
    const double tol = 1e-9 * std::max(1.0, std::abs(t));
    if (it != times.end() && std::abs(*it - t) <= tol) {
      *it = t;
    } else if (it != times.begin() && std::abs(*std::prev(it) - t) <= tol) {
      *std::prev(it) = t;
    } else {
      times.insert(it, t);
    }
  }
  cfg.validate();
  return cfg;
}

BosonLatticeState initial_boson_state(const RunConfig& config) {
  const auto& init = config.initial;
  const auto f = config.sites();
  switch (init.kind) {
    case InitialKind::kSingleSite:
      return single_site_excitation(static_cast<int>(f), init.site, init.n_total);
    case InitialKind::kAmplitudes:
      return BosonLatticeState(init.amplitudes);
    case InitialKind::kRandom: {
      std::mt19937_64 rng(init.seed);
      std::normal_distribution<double> normal(0.0, 1.0);
      std::vector<Complex> values(f);
      double norm = 0.0;
      for (auto& v : values) {
        const double re = normal(rng);
        const double im = normal(rng);
        v = {re, im};
        norm += std::norm(v);
      }
      const double scale = std::sqrt(init.n_total / norm);
      for (auto& v : values) v *= scale;
      return BosonLatticeState(std::move(values));
    }
  }
  throw ConfigError("unsupported initial condition");
}

SpinLatticeState initial_spin_state(const RunConfig& config) {
  const auto& init = config.initial;
  switch (init.kind) {
    case InitialKind::kAmplitudes:
      return SpinLatticeState(init.amplitudes);
    case InitialKind::kRandom: {
      std::mt19937_64 rng(init.seed);
      std::uniform_real_distribution<double> unit(0.0, 1.0);
      std::vector<Complex> values(config.sites());
      for (auto& v : values) {
        const double r = init.z_max * std::sqrt(unit(rng));
        const double theta = 2.0 * std::numbers::pi * unit(rng);
        v = std::polar(r, theta);
      }
      return SpinLatticeState(std::move(values));
    }
    case InitialKind::kSingleSite:
      break;
  }
  throw ConfigError("spin chains need explicit or random initial coordinates");
}

CommandResult run(const RunConfig& config, Products products, const std::string& command) {
  const auto started = std::chrono::system_clock::now();
  const fs::path root(config.out_dir);
  ensure_directory(root);

  std::vector<std::future<RunRecord>> jobs;
  for (const Ordering o : config.orderings) {
    jobs.push_back(std::async(std::launch::async, [&config, o, products, &root] {
      return run_single(config, o, products, root);
    }));
  }
  std::vector<RunRecord> records;
  for (auto& job : jobs) records.push_back(job.get());
  return finish(root, command, config.echo(), started, records);
}

CommandResult sweep_gamma(const RunConfig& config) {
  require_gdst(config, "sweep-gamma");
  if (config.sites() != 2) throw ConfigError("sweep-gamma needs a dimer (model.f = 2)");
  const auto started = std::chrono::system_clock::now();
  const fs::path root(config.out_dir);
  ensure_directory(root);

  struct Row {
    double n_total;
    Ordering ordering;
    std::optional<GammaSearchResult> result;
    std::string status = "ok";
  };
  std::vector<Row> rows;
  for (const double n : config.sweep.n_values) {
    for (const Ordering o : config.orderings) rows.push_back({n, o, std::nullopt});
  }

  GammaSearchOptions options;
  options.excited = config.sweep.site;
  options.horizon = config.sweep.horizon;
  options.sample_spacing = config.sweep.sample_spacing;
  options.gamma_lo = config.sweep.gamma_lo;
  options.gamma_hi = config.sweep.gamma_hi;
  options.max_expansions = config.sweep.max_expansions;
  options.rel_tol = config.sweep.rel_tol;
  options.abs_tol = config.sweep.abs_tol;
  options.integrator_rel_tol = config.integrator.rel_tol;
  options.integrator_abs_tol = config.integrator.abs_tol;

  std::vector<std::future<void>> jobs;
  for (auto& row : rows) {
    jobs.push_back(std::async(std::launch::async, [&row, &config, &options] {
      GdstParams params = config.gdst;
      params.ordering = row.ordering;
      try {
        row.result = gamma_cr_numeric(params, row.n_total, options);
      } catch (const NumericalError& e) {
        row.status = std::string("failed: ") + e.what();
      }
    }));
  }
  for (auto& job : jobs) job.get();

  CsvTable table({"n_total", "ordering", "gamma_cr_numeric", "gamma_cr_analytic", "rel_deviation", "bracket_lo",
                  "bracket_hi", "evaluations", "status"});
  std::vector<RunRecord> records(1);
  json summary = json::array();
  for (const auto& row : rows) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    double analytic = nan;
    try {
      analytic = gamma_cr_analytic(row.n_total, row.ordering, config.gdst.m, config.lambda);
    } catch (const InvalidParameter&) {
    }
    const double numeric = row.result ? row.result->gamma_cr : nan;
    const double deviation = std::abs(numeric - analytic) / analytic;
    std::string status = row.status;
    std::replace(status.begin(), status.end(), ',', ';');
    table.add_row({format_number(row.n_total), std::string(to_string(row.ordering)), format_number(numeric),
                   format_number(analytic), format_number(deviation),
                   format_number(row.result ? row.result->lo : nan), format_number(row.result ? row.result->hi : nan),
                   std::to_string(row.result ? row.result->predicate_evaluations : 0), status});
    if (!row.result) records[0].ok = false;
    summary.push_back({{"n_total", row.n_total}, {"ordering", std::string(to_string(row.ordering))},
                       {"status", row.status}});
  }
  table.write(root / "sweep_gamma.csv");
  records[0].summary = {{"label", "sweep"}, {"rows", summary}};
  records[0].files.push_back({"sweep_gamma.csv", false});
  return finish(root, "sweep-gamma", config.echo(), started, records);
}

CommandResult exact_compare(const RunConfig& config) {
  require_gdst(config, "exact-compare");
  const auto started = std::chrono::system_clock::now();
  const fs::path root(config.out_dir);
  ensure_directory(root);

  const BosonLatticeState beta0 = initial_boson_state(config);
  const int n_max = config.exact.n_max > 0 ? config.exact.n_max : cutoff_for_tail(beta0, config.exact.tail_bound);
  const FockBasisPtr basis = enumerate_basis(config.sites(), n_max);
  const CoherentPreparation prep = coherent_product_state(beta0, basis, config.exact.tail_bound);
  const IntegratorConfig sampling = sampling_for(config, {});

  auto compare = [&](Ordering ordering) {
    RunRecord record;
    const std::string label(to_string(ordering));
    ensure_directory(root / label);
    record.summary = {{"label", label}, {"ordering", label}, {"status", "ok"}, {"n_max", n_max},
                      {"basis_dimension", basis->dimension()}, {"tail_mass", prep.tail_mass}};
    GdstParams params = config.gdst;
    params.ordering = ordering;
    const BosonTrajectory traj = integrate_recording(params, beta0, sampling, record);
    const SpectralPropagator propagator(build_gdst_hamiltonian(params, basis));

    const std::size_t f = config.sites();
    std::vector<std::string> columns{"t", "corr_index"};
    for (std::size_t j = 1; j <= f; ++j) columns.push_back(fmt::format("n_exact_{}", j));
    for (std::size_t j = 1; j <= f; ++j) columns.push_back(fmt::format("n_quasi_{}", j));
    columns.insert(columns.end(), {"tail_mass", "norm_defect"});
    CsvTable table(columns);
    double max_corr = 0.0;
    double max_defect = 0.0;
    for (std::size_t i = 0; i < traj.size(); ++i) {
      const QuantumState psi = propagator.evolve(prep.state, traj.times[i]);
      const double corr = correlation_index(psi, traj.states[i]);
      max_corr = std::max(max_corr, corr);
      max_defect = std::max(max_defect, psi.norm_defect);
      std::vector<std::string> row{format_number(traj.times[i]), format_number(corr)};
      for (std::size_t j = 1; j <= f; ++j) row.push_back(format_number(mode_occupation(psi, Site(static_cast<int>(j)))));
      for (std::size_t j = 0; j < f; ++j) row.push_back(format_number(std::norm(traj.states[i][j])));
      row.push_back(format_number(prep.tail_mass));
      row.push_back(format_number(psi.norm_defect));
      table.add_row(row);
    }
    table.write(root / label / "exact_compare.csv");
    record.files.push_back({label + "/exact_compare.csv", !record.ok});
    summarize(traj, record);
    record.summary["max_corr_index"] = max_corr;
    record.summary["max_norm_defect"] = max_defect;
    return record;
  };

  std::vector<std::future<RunRecord>> jobs;
  for (const Ordering o : config.orderings) jobs.push_back(std::async(std::launch::async, compare, o));
  std::vector<RunRecord> records;
  for (auto& job : jobs) records.push_back(job.get());
  return finish(root, "exact-compare", config.echo(), started, records);
}

namespace {

struct GeometryRow {
  std::string check;
  double measured;
  double threshold;
  double expected;
  std::string pass;
};

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double std_of(const std::vector<double>& v) {
  const double m = mean_of(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size()));
}

std::string verdict(bool ok) { return ok ? "pass" : "fail"; }

}  // namespace

CommandResult geometry_report(const fs::path& out_dir, std::uint64_t seed) {
  const auto started = std::chrono::system_clock::now();
  ensure_directory(out_dir);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto disk_point = [&](double radius) {
    return std::polar(radius * std::sqrt(unit(rng)), 2.0 * std::numbers::pi * unit(rng));
  };

  constexpr int kPoints = 100;
  constexpr int kTriples = 1000;
  constexpr double kRadius = 3.0;
  constexpr double kStep = 1e-4;

  const Spin half(1);
  const Spin one(2);
  const auto wh = NormalizationFunction::weyl_heisenberg();
  const auto su2_half = NormalizationFunction::su2(half);
  const auto su2_one = NormalizationFunction::su2(one);

  std::vector<GeometryRow> rows;

  std::vector<double> r_wh, r_half, r_one;
  for (int i = 0; i < kPoints; ++i) {
    const Complex z = disk_point(kRadius);
    r_wh.push_back(std::abs(curvature(wh, z)));
    r_half.push_back(curvature(su2_half, z));
    r_one.push_back(curvature(su2_one, z));
  }
  const double max_wh = *std::max_element(r_wh.begin(), r_wh.end());
  rows.push_back({"wh_curvature_max_abs", max_wh, 1e-8, 0.0, verdict(max_wh <= 1e-8)});
  for (const auto& [name, values, j] :
       {std::tuple{"su2_j0.5", &r_half, 0.5}, std::tuple{"su2_j1", &r_one, 1.0}}) {
    const double mean = mean_of(*values);
    const double spread = std_of(*values);
    rows.push_back({fmt::format("{}_curvature_mean", name), mean, 1e-5, 1.0 / j,
                    verdict(std::abs(mean - 1.0 / j) <= 1e-5)});
    rows.push_back({fmt::format("{}_curvature_std", name), spread, 1e-5, 0.0, verdict(spread <= 1e-5)});
  }
  // Curvature in the unit-sphere normalisation is 1 for every j; reported only.
  rows.push_back({"su2_j0.5_curvature_unit_sphere_convention", mean_of(r_half) * 0.5, std::nan(""), 1.0, "info"});

  auto distance_check = [&](const std::string& name, const NormalizationFunction& n, auto overlap) {
    double worst = 0.0;
    for (int i = 0; i < kPoints; ++i) {
      const Complex z = disk_point(kRadius);
      const Complex dz = std::polar(kStep, 2.0 * std::numbers::pi * unit(rng));
      const double d2 = std::pow(ray_distance(std::abs(overlap(z + dz, z))), 2);
      const double predicted = metric(n, z) * std::norm(dz);
      worst = std::max(worst, std::abs(d2 - predicted) / predicted);
    }
    rows.push_back({name + "_distance_vs_metric_rel_err", worst, 1e-3, 0.0, verdict(worst < 1e-3)});
  };
  distance_check("wh", wh, [](Complex a, Complex b) { return boson_overlap(a, b); });
  distance_check("su2_j0.5", su2_half, [&](Complex a, Complex b) { return su2_overlap(a, b, half); });

  auto fd_check = [&](const std::string& name, const NormalizationFunction& n) {
    double worst = 0.0;
    for (int i = 0; i < kPoints; ++i) {
      const Complex z = disk_point(kRadius);
      const double closed = metric(n, z);
      const double fd = metric(n, z, Differentiation::kFiniteDifference);
      worst = std::max(worst, std::abs(fd - closed) / closed);
    }
    rows.push_back({name + "_metric_fd_vs_closed_rel_err", worst, 1e-6, 0.0, verdict(worst < 1e-6)});
  };
  fd_check("wh", wh);
  fd_check("su2_j0.5", su2_half);

  auto triangle_check = [&](const std::string& name, auto overlap) {
    int violations = 0;
    for (int i = 0; i < kTriples; ++i) {
      const Complex a = disk_point(kRadius);
      const Complex b = disk_point(kRadius);
      const Complex c = disk_point(kRadius);
      const double ab = ray_distance(std::abs(overlap(a, b)));
      const double bc = ray_distance(std::abs(overlap(b, c)));
      const double ac = ray_distance(std::abs(overlap(a, c)));
      if (ac > ab + bc + 1e-12) ++violations;
    }
    rows.push_back({name + "_triangle_violations", static_cast<double>(violations), 0.0, 0.0,
                    verdict(violations == 0)});
  };
  triangle_check("wh", [](Complex a, Complex b) { return boson_overlap(a, b); });
  triangle_check("su2_j0.5", [&](Complex a, Complex b) { return su2_overlap(a, b, half); });

  CsvTable table({"check", "measured", "threshold", "expected", "pass"});
  bool ok = true;
  for (const auto& row : rows) {
    table.add_row({row.check, format_number(row.measured), format_number(row.threshold),
                   format_number(row.expected), row.pass});
    ok = ok && row.pass != "fail";
  }
  table.write(out_dir / "geometry.csv");

  std::vector<RunRecord> records(1);
  records[0].ok = ok;
  records[0].summary = {{"label", "geometry"}, {"status", ok ? "ok" : "failed"}, {"checks", rows.size()}};
  records[0].files.push_back({"geometry.csv", false});
  return finish(out_dir, "geometry", json{{"seed", seed}, {"points", kPoints}, {"triples", kTriples},
                                          {"radius", kRadius}, {"step", kStep}},
                started, records);
}

}  // namespace cslattice::cli
