#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "chlab/io.hpp"
#include "chlab/pde.hpp"
#include "chlab/phase.hpp"
#include "chlab/scattering.hpp"
#include "chlab/soliton.hpp"

namespace chlab {

inline constexpr const char* kVersion = "0.1.0";

/// Everything an experiment needs; parsed from the --config JSON file.
struct ExperimentConfig {
  ProfileSpec profile;
  ReflectionOptions scatter;
  PeriodicGrid pde_grid;
  PdeOptions pde;
  std::vector<double> rays;
  std::vector<double> ladder{10, 14, 20, 28, 40, 57, 80};
  double window = 40.0;  ///< half-width of the error window around the ray
  double delta = 0.05;
  bool drop_first = false;
  ModifiedConvention convention;
  int threads = 1;
  std::string canonical;  ///< normalized JSON text the hash is taken over
};

ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Throws BoundaryRay for rays within 1e-3 of -1/4, 0 or 2 and
/// InvalidArgument for a ladder that is not strictly increasing.
void validate(const ExperimentConfig& config);

/// FNV-1a 64 of the canonical config text, as 16 hex digits.
std::string config_hash(const ExperimentConfig& config);

struct ForwardResult {
  PotentialProfile profile;
  ScatteringData data;
  std::vector<NormingResult> norming;
  double total_shift = 0.0;
};

/// Profile -> reflection coefficient, eigenvalues and norming constants.
ForwardResult run_forward(const ProfileSpec& spec, const ReflectionOptions& options);

/// Samples the profile on the PDE grid and evolves it through the given times.
std::vector<FieldState> run_pde(const ExperimentConfig& config, const std::vector<double>& times);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_lo = 0.0;  ///< 95% band
  double slope_hi = 0.0;
  double residual = 0.0;  ///< RMS residual of the fit
  std::size_t points = 0;
};

/// Least squares y = intercept + slope x with a Student-t 95% band.
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

struct DecayRow {
  double t = 0.0;
  double center_x = 0.0;
  double error_sup = 0.0;
  double error_l2 = 0.0;
};

struct DecayReport {
  double xi = 0.0;
  Region region = Region::TwoPoints;
  std::vector<DecayRow> rows;
  LineFit power_fit;        ///< ln err against ln t
  LineFit exponential_fit;  ///< ln err against t
  std::optional<double> rho0;
  std::optional<double> claimed_rate;  ///< -2 rho0 for the soliton-free error
  double claimed_power = -0.5;         ///< bound implied by t^(-1 + 2 rho), rho < 1/4
  std::size_t lambda_count = 0;
  std::string config_hash;
};

/// Compares the PDE trajectory with the long-time approximant on each ray
/// inside a window that moves with the ray. Snapshots must include every
/// ladder time. Throws MissingData or BoundaryRay.
std::vector<DecayReport> run_ray_benchmark(const ExperimentConfig& config,
                                           const ScatteringData& data,
                                           const std::vector<FieldState>& trajectory);

/// Full pipeline: forward scattering, PDE evolution, comparison.
std::vector<DecayReport> run_ray_benchmark(const ExperimentConfig& config);

struct RoundtripReport {
  DiscreteSpectrum truth;
  std::vector<double> found_poles;
  std::vector<double> found_constants;
  std::vector<double> kappa_error;   ///< absolute
  std::vector<double> c_rel_error;
  bool count_match = false;
  bool ordered = false;
};

/// Builds u(x, 0) from reflectionless data and recovers the data with the
/// forward solver on [-L, L) with n nodes.
RoundtripReport run_roundtrip(const DiscreteSpectrum& truth, double L = 60.0,
                              std::size_t n = 2048, int threads = 1);

struct AtlasRow {
  double xi = 0.0;
  Region region = Region::TwoPoints;
  std::vector<double> points;
  std::size_t n_plus = 0;
  std::size_t n_minus = 0;
  std::size_t n_lambda = 0;
  std::optional<double> rho0;
};

std::vector<AtlasRow> region_atlas(double xi_min, double xi_max, std::size_t n,
                                   const std::vector<double>& poles, double delta = 0.05);
void emit_region_atlas(const std::vector<AtlasRow>& rows, const std::filesystem::path& path);

void write_decay_reports(const std::vector<DecayReport>& reports,
                         const std::filesystem::path& dir);

}  // namespace chlab
