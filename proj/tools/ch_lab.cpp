// Command line front end for the Camassa-Holm scattering lab.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "chlab/errors.hpp"
#include "chlab/harness.hpp"
#include "chlab/numerics.hpp"

namespace fs = std::filesystem;
using namespace chlab;

namespace {

constexpr int kExitInvariant = 2;
constexpr int kExitIo = 3;

struct Globals {
  std::string config;
  std::string out;
  int threads = 1;
};

std::optional<ExperimentConfig> maybe_config(const Globals& g) {
  if (g.config.empty()) return std::nullopt;
  auto c = load_config(g.config);
  return c;
}

fs::path out_or(const Globals& g, const char* fallback) {
  return g.out.empty() ? fs::path(fallback) : fs::path(g.out);
}

ProfileSpec resolve_profile(const Globals& g, const std::string& profile_path) {
  if (!profile_path.empty()) return load_profile(profile_path);
  if (auto c = maybe_config(g)) return c->profile;
  throw Error(ErrorCode::MissingData, "give --profile or a --config with a profile section");
}

int cmd_scatter(const Globals& g, const std::string& profile_path, double kmax, std::size_t nk) {
  const auto spec = resolve_profile(g, profile_path);
  ReflectionOptions opt;
  opt.K_max = kmax;
  opt.nk = nk;
  opt.threads = g.threads;
  const auto fr = run_forward(spec, opt);
  const fs::path out = out_or(g, "scatter.json");
  save_scattering(fr.data, out);
  fs::path csv_path = out;
  csv_path.replace_extension(".csv");
  CsvWriter csv(csv_path, {"k", "r_re", "r_im", "a_re", "a_im", "b_re", "b_im"});
  for (std::size_t j = 0; j < fr.data.k.size(); ++j) {
    csv.row({fr.data.k[j], fr.data.r[j].real(), fr.data.r[j].imag(), fr.data.a[j].real(),
             fr.data.a[j].imag(), fr.data.b[j].real(), fr.data.b[j].imag()});
  }
  fs::path poles_path = out;
  poles_path.replace_extension(".poles.csv");
  CsvWriter pcsv(poles_path, {"kappa", "c", "b", "a_prime", "residual"});
  for (std::size_t i = 0; i < fr.data.poles.size(); ++i) {
    const auto& n = fr.norming[i];
    pcsv.row({fr.data.poles[i], n.c, n.b, n.a_prime, n.residual});
  }
  std::printf("poles: %zu, a(i/2) = %.12g, exp(-shift/2) = %.12g\n", fr.data.poles.size(),
              fr.data.a_half_i, std::exp(-0.5 * fr.total_shift));
  return 0;
}

int cmd_soliton(const Globals& g, const std::string& data_path, double t,
                std::optional<double> xi, std::optional<double> ymin, std::optional<double> ymax,
                std::size_t n, double delta) {
  if (data_path.empty()) throw Error(ErrorCode::MissingData, "--data is required");
  const auto data = load_scattering(data_path);
  DiscreteSpectrum spectrum{data.poles, data.norming};
  spectrum.normalize();
  ModelData model;
  double center = 0.0;
  if (xi) {
    const auto density = reflection_density(data);
    model = asymptotic_approximant(spectrum, *xi, &density, data.a_half_i, delta).model;
    center = *xi * t;
  } else {
    model = reflectionless_model(spectrum);
    model.log_shift = -2.0 * std::log(data.a_half_i);
  }
  const double y0 = ymin.value_or(center - 40.0);
  const double y1 = ymax.value_or(center + 40.0);
  const auto sol = sample_solution(model, t, y0, y1, n, g.threads);
  CsvWriter csv(out_or(g, "solution.csv"), {"y", "x", "u"});
  for (std::size_t i = 0; i < sol.y.size(); ++i) csv.row({sol.y[i], sol.x[i], sol.u[i]});
  return 0;
}

int cmd_evolve(const Globals& g, const std::string& profile_path, double T, double snap,
               std::optional<std::size_t> modes, std::optional<double> dt) {
  ExperimentConfig cfg;
  if (auto c = maybe_config(g)) cfg = *c;
  if (!profile_path.empty()) cfg.profile = load_profile(profile_path);
  else if (g.config.empty()) {
    throw Error(ErrorCode::MissingData, "give --profile or a --config with a profile section");
  }
  if (modes) cfg.pde_grid.modes = *modes;
  if (dt) cfg.pde.dt = *dt;
  cfg.threads = g.threads;
  if (!(snap > 0.0) || !(T >= 0.0)) throw Error(ErrorCode::InvalidArgument, "need T >= 0, snap > 0");
  std::vector<double> times;
  for (std::size_t i = 0;; ++i) {
    const double t = static_cast<double>(i) * snap;
    if (t > T + 1e-9) break;
    times.push_back(std::min(t, T));
  }
  if (times.back() < T - 1e-9) times.push_back(T);
  const fs::path dir = out_or(g, "run");
  fs::create_directories(dir);
  CsvWriter ledger_csv(dir / "ledger.csv", {"t", "q1", "q2", "q3"});
  const auto u0 = sample_profile(cfg.profile, cfg.pde_grid.nodes(), cfg.threads);
  const auto x = cfg.pde_grid.nodes();
  evolve(cfg.pde_grid, u0, times, cfg.pde, [&](const FieldState& s) {
    char name[64];
    std::snprintf(name, sizeof name, "snap_t%09.3f.csv", s.t);
    CsvWriter csv(dir / name, {"x", "u"});
    for (std::size_t j = 0; j < x.size(); ++j) csv.row({x[j], s.u[j]});
    ledger_csv.row({s.t, s.ledger.q1, s.ledger.q2, s.ledger.q3});
  });
  return 0;
}

int cmd_compare(const Globals& g, const std::string& solution, const std::string& snapshot,
                std::optional<double> xmin, std::optional<double> xmax) {
  if (solution.empty() || snapshot.empty()) {
    throw Error(ErrorCode::MissingData, "--solution and --snapshot are required");
  }
  const auto sol = read_csv(solution);
  const auto snap = read_csv(snapshot);
  const auto sx = sol.column("x");
  const auto su = sol.column("u");
  const auto px = snap.column("x");
  const auto pu = snap.column("u");
  if (sx.size() < 4) throw Error(ErrorCode::MissingData, "solution needs >= 4 rows");
  const MonotoneCurve curve(sx, su);
  const double lo = std::max(sx.front(), xmin.value_or(-INFINITY));
  const double hi = std::min(sx.back(), xmax.value_or(INFINITY));
  double sup = 0.0, l2 = 0.0;
  std::size_t count = 0;
  const double h = px.size() > 1 ? px[1] - px[0] : 0.0;
  for (std::size_t j = 0; j < px.size(); ++j) {
    if (px[j] < lo || px[j] > hi) continue;
    const double e = pu[j] - curve(px[j]);
    sup = std::max(sup, std::abs(e));
    l2 += e * e * h;
    ++count;
  }
  if (count == 0) throw Error(ErrorCode::MissingData, "solution and snapshot do not overlap");
  CsvWriter csv(out_or(g, "compare.csv"), {"x_lo", "x_hi", "points", "sup", "l2"});
  csv.row({lo, hi, static_cast<double>(count), sup, std::sqrt(l2)});
  std::printf("sup = %.6e, l2 = %.6e over %zu points\n", sup, std::sqrt(l2), count);
  return 0;
}

int cmd_regions(const Globals& g, double ximin, double ximax, std::size_t n,
                const std::string& data_path, double delta) {
  std::vector<double> poles;
  if (!data_path.empty()) poles = load_scattering(data_path).poles;
  emit_region_atlas(region_atlas(ximin, ximax, n, poles, delta), out_or(g, "regions.csv"));
  return 0;
}

int cmd_tracecheck(const Globals& g, const std::string& profile_path, double kmax,
                   std::size_t nk, double klo, double khi, double tol) {
  const auto spec = resolve_profile(g, profile_path);
  ReflectionOptions opt;
  opt.K_max = kmax;
  opt.nk = nk;
  opt.threads = g.threads;
  const auto fr = run_forward(spec, opt);
  const auto rep = trace_formula_check(fr.data, fr.total_shift, klo, khi);
  CsvWriter csv(out_or(g, "tracecheck.csv"), {"k", "rel_residual"});
  for (std::size_t i = 0; i < rep.k.size(); ++i) csv.row({rep.k[i], rep.rel_residual[i]});
  std::printf("max relative residual %.3e, a(i/2) residual %.3e, zero order at k=0: %d\n",
              rep.max_rel_residual, rep.half_i_residual, rep.singular_order);
  if (rep.max_rel_residual > tol || rep.half_i_residual > 1e-4) {
    std::fprintf(stderr, "trace formula residual above tolerance\n");
    return kExitInvariant;
  }
  return 0;
}

int cmd_bench(const Globals& g) {
  if (g.config.empty()) throw Error(ErrorCode::MissingData, "bench needs --config");
  auto cfg = load_config(g.config);
  cfg.threads = g.threads;
  cfg.scatter.threads = g.threads;
  const auto reports = run_ray_benchmark(cfg);
  const fs::path dir = out_or(g, "bench");
  write_decay_reports(reports, dir);
  for (const auto& r : reports) {
    std::printf("xi = %-8g %-14s exp slope %.4f (claimed %s) power slope %.4f\n", r.xi,
                std::string(to_string(r.region)).c_str(), r.exponential_fit.slope,
                r.claimed_rate ? CsvWriter::format(*r.claimed_rate).c_str() : "n/a",
                r.power_fit.slope);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Camassa-Holm inverse scattering lab"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--config", g.config, "experiment config JSON");
  app.add_option("--out", g.out, "output file or directory");
  app.add_option("--threads", g.threads, "worker threads")->check(CLI::PositiveNumber);

  std::string profile, data, solution, snapshot;
  double kmax = 8.0, t = 0.0, T = 40.0, snap = 5.0, ximin = -2.0, ximax = 4.0, delta = 0.05;
  double klo = 0.1, khi = 6.0, tol = 1e-3;
  std::size_t nk = 1024, n_samples = 2001, n_regions = 600;
  std::optional<double> xi, ymin, ymax, xmin, xmax, dt;
  std::optional<std::size_t> modes;

  auto* scatter = app.add_subcommand("scatter", "forward scattering of a profile");
  scatter->add_option("--profile", profile, "profile JSON or text file");
  scatter->add_option("--kmax", kmax, "half-width of the k-grid");
  scatter->add_option("--nk", nk, "number of k samples (even)");

  auto* soliton = app.add_subcommand("soliton", "parametric RH reconstruction");
  soliton->add_option("--data", data, "scattering data JSON");
  soliton->add_option("--t", t, "time");
  soliton->add_option("--xi", xi, "ray for the long-time approximant");
  soliton->add_option("--ymin", ymin, "left end of the y-window");
  soliton->add_option("--ymax", ymax, "right end of the y-window");
  soliton->add_option("--n", n_samples, "samples in the y-window");
  soliton->add_option("--delta", delta, "pole splitting threshold");

  auto* evolve_cmd = app.add_subcommand("evolve", "direct pseudo-spectral evolution");
  evolve_cmd->add_option("--profile", profile, "profile JSON or text file");
  evolve_cmd->add_option("--T", T, "final time");
  evolve_cmd->add_option("--snap", snap, "snapshot interval");
  evolve_cmd->add_option("--modes", modes, "Fourier modes");
  evolve_cmd->add_option("--dt", dt, "time step");

  auto* compare = app.add_subcommand("compare", "solution CSV against a PDE snapshot");
  compare->add_option("--solution", solution, "CSV with columns x, u")->required();
  compare->add_option("--snapshot", snapshot, "CSV with columns x, u")->required();
  compare->add_option("--xmin", xmin, "restrict the comparison window");
  compare->add_option("--xmax", xmax, "restrict the comparison window");

  auto* regions = app.add_subcommand("regions", "region atlas over a range of rays");
  regions->add_option("--ximin", ximin);
  regions->add_option("--ximax", ximax);
  regions->add_option("--n", n_regions);
  regions->add_option("--data", data, "scattering data JSON for the pole partition");
  regions->add_option("--delta", delta, "pole splitting threshold");

  auto* trace = app.add_subcommand("tracecheck", "trace formula residuals");
  trace->add_option("--profile", profile, "profile JSON or text file");
  trace->add_option("--kmax", kmax);
  trace->add_option("--nk", nk);
  trace->add_option("--klo", klo, "smallest |k| compared");
  trace->add_option("--khi", khi, "largest |k| compared");
  trace->add_option("--tol", tol, "tolerance on the relative residual");

  auto* bench = app.add_subcommand("bench", "ray decay benchmark from --config");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*scatter) return cmd_scatter(g, profile, kmax, nk);
    if (*soliton) return cmd_soliton(g, data, t, xi, ymin, ymax, n_samples, delta);
    if (*evolve_cmd) return cmd_evolve(g, profile, T, snap, modes, dt);
    if (*compare) return cmd_compare(g, solution, snapshot, xmin, xmax);
    if (*regions) return cmd_regions(g, ximin, ximax, n_regions, data, delta);
    if (*trace) return cmd_tracecheck(g, profile, kmax, nk, klo, khi, tol);
    if (*bench) return cmd_bench(g);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.is_invariant_violation() ? kExitInvariant : kExitIo;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  }
  return 1;
}
