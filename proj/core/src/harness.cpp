#include "chlab/harness.hpp"

#include <boost/math/distributions/students_t.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "chlab/errors.hpp"
#include "chlab/numerics.hpp"
#include "json.hpp"

namespace chlab {

using nlohmann::json;

namespace {

json profile_to_json(const ProfileSpec& s) {
  json j;
  switch (s.kind) {
    case ProfileSpec::Kind::Sech2:
      j = {{"family", "sech2"}, {"A", s.A}, {"w", s.w}, {"x0", s.x0}};
      break;
    case ProfileSpec::Kind::Soliton:
      j = {{"family", "soliton"}, {"poles", s.spectrum.poles}, {"c", s.spectrum.constants},
           {"t0", s.t0}};
      break;
    case ProfileSpec::Kind::Samples:
      j = {{"u0", s.u0}};
      break;
  }
  j["L"] = s.L;
  j["n"] = s.n;
  return j;
}

}  // namespace

ExperimentConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::Io, std::string("malformed config: ") + e.what());
  }
  ExperimentConfig c;
  try {
    if (j.contains("profile")) c.profile = parse_profile_json(j["profile"].dump());
    if (j.contains("scatter")) {
      const auto& s = j["scatter"];
      c.scatter.K_max = s.value("K_max", c.scatter.K_max);
      c.scatter.nk = s.value("nk", c.scatter.nk);
    }
    if (j.contains("pde")) {
      const auto& p = j["pde"];
      c.pde_grid.x_min = p.value("x_min", c.pde_grid.x_min);
      c.pde_grid.x_max = p.value("x_max", c.pde_grid.x_max);
      c.pde_grid.modes = p.value("modes", c.pde_grid.modes);
      c.pde.dt = p.value("dt", c.pde.dt);
    }
    c.rays = j.value("rays", c.rays);
    c.ladder = j.value("ladder", c.ladder);
    c.window = j.value("window", c.window);
    c.delta = j.value("delta", c.delta);
    c.drop_first = j.value("drop_first", c.drop_first);
    c.convention.delta_power = j.value("delta_power", c.convention.delta_power);
    c.convention.blaschke_power = j.value("blaschke_power", c.convention.blaschke_power);
    c.threads = j.value("threads", c.threads);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Io, std::string("config field has the wrong type: ") + e.what());
  }
  c.scatter.threads = c.threads;

  json canon = {{"profile", profile_to_json(c.profile)},
                {"scatter", {{"K_max", c.scatter.K_max}, {"nk", c.scatter.nk}}},
                {"pde",
                 {{"x_min", c.pde_grid.x_min},
                  {"x_max", c.pde_grid.x_max},
                  {"modes", c.pde_grid.modes},
                  {"dt", c.pde.dt}}},
                {"rays", c.rays},
                {"ladder", c.ladder},
                {"window", c.window},
                {"delta", c.delta},
                {"drop_first", c.drop_first},
                {"delta_power", c.convention.delta_power},
                {"blaschke_power", c.convention.blaschke_power}};
  c.canonical = canon.dump();
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  return parse_config(read_text(path));
}

void validate(const ExperimentConfig& config) {
  for (double xi : config.rays) {
    for (double b : {-0.25, 0.0, 2.0}) {
      if (std::abs(xi - b) < 1e-3) {
        std::ostringstream msg;
        msg << "ray xi = " << xi << " is within 1e-3 of the boundary " << b;
        throw Error(ErrorCode::BoundaryRay, msg.str());
      }
    }
  }
  for (std::size_t i = 1; i < config.ladder.size(); ++i) {
    if (!(config.ladder[i] > config.ladder[i - 1])) {
      throw Error(ErrorCode::InvalidArgument, "time ladder must be strictly increasing");
    }
  }
}

std::string config_hash(const ExperimentConfig& config) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : config.canonical) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

ForwardResult run_forward(const ProfileSpec& spec, const ReflectionOptions& options) {
  ForwardResult fr;
  fr.profile = make_profile(spec);
  fr.total_shift = conserved_shift(fr.profile);
  const JostSolver solver(fr.profile);
  fr.data = reflection(solver, options);
  fr.data.poles = find_eigenvalues(solver);
  fr.norming = norming_constants(solver, fr.data.poles);
  for (const auto& n : fr.norming) fr.data.norming.push_back(n.c);
  return fr;
}

std::vector<FieldState> run_pde(const ExperimentConfig& config, const std::vector<double>& times) {
  const auto u0 = sample_profile(config.profile, config.pde_grid.nodes(), config.threads);
  return evolve(config.pde_grid, u0, times, config.pde);
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n < 3 || y.size() != n) throw Error(ErrorCode::InvalidArgument, "fit needs >= 3 points");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  LineFit f;
  f.points = n;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ssr = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = y[i] - (f.intercept + f.slope * x[i]);
    ssr += e * e;
  }
  const double dof = static_cast<double>(n - 2);
  f.residual = std::sqrt(ssr / static_cast<double>(n));
  const double se = std::sqrt(ssr / dof / sxx);
  const boost::math::students_t dist(dof);
  const double q = boost::math::quantile(boost::math::complement(dist, 0.025));
  f.slope_lo = f.slope - q * se;
  f.slope_hi = f.slope + q * se;
  return f;
}

std::vector<DecayReport> run_ray_benchmark(const ExperimentConfig& config,
                                           const ScatteringData& data,
                                           const std::vector<FieldState>& trajectory) {
  validate(config);
  const std::size_t used = config.ladder.size() - (config.drop_first ? 1 : 0);
  if (used < 5) throw Error(ErrorCode::InvalidArgument, "decay fit needs >= 5 ladder points");

  std::vector<const FieldState*> snaps;
  for (double t : config.ladder) {
    const auto it = std::find_if(trajectory.begin(), trajectory.end(),
                                 [t](const FieldState& s) { return std::abs(s.t - t) < 1e-9; });
    if (it == trajectory.end()) {
      std::ostringstream msg;
      msg << "no PDE snapshot at t = " << t;
      throw Error(ErrorCode::MissingData, msg.str());
    }
    snaps.push_back(&*it);
  }

  DiscreteSpectrum spectrum{data.poles, data.norming};
  spectrum.normalize();
  const CauchyDensity density = reflection_density(data);
  const std::string hash = config_hash(config);

  std::vector<DecayReport> reports(config.rays.size());
  std::vector<Approximant> approx;
  for (double xi : config.rays) {
    approx.push_back(asymptotic_approximant(spectrum, xi, &density, data.a_half_i, config.delta,
                                            config.convention));
  }
  const std::size_t nt = config.ladder.size();
  for (std::size_t r = 0; r < config.rays.size(); ++r) reports[r].rows.resize(nt);

  parallel_for(config.rays.size() * nt, config.threads, [&](std::size_t task) {
    const std::size_t r = task / nt;
    const std::size_t i = task % nt;
    const double xi = config.rays[r];
    const FieldState& s = *snaps[i];
    const auto& model = approx[r].model;
    const double t = s.t;
    const double center = reconstruct(model, xi * t, t).x;
    const auto x = s.grid.nodes();
    const double h = s.grid.h();
    double sup = 0.0, l2 = 0.0;
    std::size_t count = 0;
    std::size_t nearest = 0;
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (std::abs(x[j] - center) < std::abs(x[nearest] - center)) nearest = j;
      if (std::abs(x[j] - center) > config.window) continue;
      const double e = s.u[j] - u_at_x(model, x[j], t);
      sup = std::max(sup, std::abs(e));
      l2 += e * e * h;
      ++count;
    }
    if (count == 0) {
      const double e = s.u[nearest] - u_at_x(model, x[nearest], t);
      sup = std::abs(e);
      l2 = e * e * h;
    }
    reports[r].rows[i] = {t, center, sup, std::sqrt(l2)};
  });

  for (std::size_t r = 0; r < config.rays.size(); ++r) {
    auto& rep = reports[r];
    rep.xi = config.rays[r];
    rep.region = approx[r].geometry.region;
    rep.rho0 = approx[r].geometry.partition.rho0;
    rep.lambda_count = approx[r].geometry.partition.lambda_set.size();
    if (rep.rho0) rep.claimed_rate = -2.0 * *rep.rho0;
    rep.config_hash = hash;
    std::vector<double> lt, tt, le;
    for (std::size_t i = config.drop_first ? 1 : 0; i < nt; ++i) {
      const double err = std::max(rep.rows[i].error_sup, 1e-300);
      tt.push_back(rep.rows[i].t);
      lt.push_back(std::log(rep.rows[i].t));
      le.push_back(std::log(err));
    }
    rep.power_fit = fit_line(lt, le);
    rep.exponential_fit = fit_line(tt, le);
  }
  return reports;
}

std::vector<DecayReport> run_ray_benchmark(const ExperimentConfig& config) {
  validate(config);
  const auto fr = run_forward(config.profile, config.scatter);
  const auto traj = run_pde(config, config.ladder);
  return run_ray_benchmark(config, fr.data, traj);
}

RoundtripReport run_roundtrip(const DiscreteSpectrum& truth, double L, std::size_t n,
                              int threads) {
  RoundtripReport rep;
  rep.truth = truth;
  rep.truth.normalize();
  ProfileSpec spec;
  spec.kind = ProfileSpec::Kind::Soliton;
  spec.spectrum = rep.truth;
  spec.L = L;
  spec.n = n;
  const auto grid = SpatialGrid::make_uniform(L, n);
  const auto profile = build_profile(sample_profile(spec, grid.nodes, threads), grid);
  const JostSolver solver(profile);
  rep.found_poles = find_eigenvalues(solver);
  for (const auto& nr : norming_constants(solver, rep.found_poles)) {
    rep.found_constants.push_back(nr.c);
  }
  rep.count_match = rep.found_poles.size() == rep.truth.poles.size();
  rep.ordered = std::is_sorted(rep.found_poles.begin(), rep.found_poles.end());
  if (rep.count_match) {
    for (std::size_t i = 0; i < rep.found_poles.size(); ++i) {
      rep.kappa_error.push_back(std::abs(rep.found_poles[i] - rep.truth.poles[i]));
      rep.c_rel_error.push_back(std::abs(rep.found_constants[i] - rep.truth.constants[i]) /
                                std::abs(rep.truth.constants[i]));
    }
  }
  return rep;
}

std::vector<AtlasRow> region_atlas(double xi_min, double xi_max, std::size_t n,
                                   const std::vector<double>& poles, double delta) {
  if (n < 2 || !(xi_max > xi_min)) {
    throw Error(ErrorCode::InvalidArgument, "atlas needs xi_max > xi_min and n >= 2");
  }
  std::vector<AtlasRow> rows;
  for (std::size_t i = 0; i < n; ++i) {
    AtlasRow row;
    row.xi = xi_min + (xi_max - xi_min) * static_cast<double>(i) / static_cast<double>(n - 1);
    row.region = classify_region(row.xi);
    row.points = stationary_points(row.xi);
    const auto part = pole_partition(poles, row.xi, delta);
    row.n_plus = part.delta_plus.size();
    row.n_minus = part.delta_minus.size();
    row.n_lambda = part.lambda_set.size();
    row.rho0 = part.rho0;
    rows.push_back(std::move(row));
  }
  return rows;
}

void emit_region_atlas(const std::vector<AtlasRow>& rows, const std::filesystem::path& path) {
  CsvWriter csv(path, {"xi", "region", "n_points", "k1", "k2", "k3", "k4", "n_plus", "n_minus",
                       "n_lambda", "rho0"});
  for (const auto& r : rows) {
    std::vector<std::string> cells{CsvWriter::format(r.xi), std::string(to_string(r.region)),
                                   std::to_string(r.points.size())};
    for (std::size_t i = 0; i < 4; ++i) {
      cells.push_back(i < r.points.size() ? CsvWriter::format(r.points[i]) : "nan");
    }
    cells.push_back(std::to_string(r.n_plus));
    cells.push_back(std::to_string(r.n_minus));
    cells.push_back(std::to_string(r.n_lambda));
    cells.push_back(r.rho0 ? CsvWriter::format(*r.rho0) : "nan");
    csv.row_text(cells);
  }
}

void write_decay_reports(const std::vector<DecayReport>& reports,
                         const std::filesystem::path& dir) {
  CsvWriter table(dir / "decay.csv", {"xi", "t", "center_x", "error_sup", "error_l2"});
  CsvWriter fits(dir / "fits.csv",
                 {"xi", "kind", "slope", "slope_lo", "slope_hi", "intercept", "residual",
                  "points", "claimed"});
  json meta;
  meta["version"] = kVersion;
  meta["rays"] = json::array();
  for (const auto& rep : reports) {
    for (const auto& row : rep.rows) {
      table.row({rep.xi, row.t, row.center_x, row.error_sup, row.error_l2});
    }
    auto fit_row = [&](const char* kind, const LineFit& f, double claimed) {
      fits.row_text({CsvWriter::format(rep.xi), kind, CsvWriter::format(f.slope),
                     CsvWriter::format(f.slope_lo), CsvWriter::format(f.slope_hi),
                     CsvWriter::format(f.intercept), CsvWriter::format(f.residual),
                     std::to_string(f.points), CsvWriter::format(claimed)});
    };
    fit_row("power", rep.power_fit, rep.claimed_power);
    fit_row("exponential", rep.exponential_fit, rep.claimed_rate.value_or(std::nan("")));
    meta["config_hash"] = rep.config_hash;
    meta["rays"].push_back({{"xi", rep.xi},
                            {"region", std::string(to_string(rep.region))},
                            {"lambda_count", rep.lambda_count},
                            {"rho0", rep.rho0 ? json(*rep.rho0) : json(nullptr)}});
  }
  write_text(dir / "report.json", meta.dump(1));
}

}  // namespace chlab
