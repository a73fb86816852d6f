#pragma once

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "chlab/scattering.hpp"
#include "chlab/soliton.hpp"

namespace chlab {

/// Where initial data comes from: explicit samples on [-L, L), the sech^2
/// family, or a reflectionless multi-soliton evaluated at time t0.
struct ProfileSpec {
  enum class Kind { Samples, Sech2, Soliton };
  Kind kind = Kind::Sech2;
  double L = 60.0;
  std::size_t n = 2048;
  std::vector<double> u0;
  double A = 0.1;
  double w = 4.0;
  double x0 = 0.0;
  DiscreteSpectrum spectrum;
  double t0 = 0.0;
};

/// Accepts {"L", "n", "u0"}, {"family": "sech2", "A", "w"[, "x0"]} or
/// {"family": "soliton", "poles", "c"[, "t0"]}. Optional "L" and "n" set the
/// scattering grid of the analytic families.
ProfileSpec parse_profile_json(const std::string& text);
/// JSON, or plain text: "L n" followed by n samples.
ProfileSpec load_profile(const std::filesystem::path& path);

/// Evaluates the profile at arbitrary points; zero outside [-L, L) for samples.
std::vector<double> sample_profile(const ProfileSpec& spec, const std::vector<double>& x,
                                   int threads = 1);

/// The scattering grid of the spec and the profile sampled on it.
PotentialProfile make_profile(const ProfileSpec& spec, const ProfileOptions& options = {});

std::string scattering_to_json(const ScatteringData& data);
ScatteringData scattering_from_json(const std::string& text);
void save_scattering(const ScatteringData& data, const std::filesystem::path& path);
ScatteringData load_scattering(const std::filesystem::path& path);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

/// CSV output with a header row. Numbers are written with round-trip
/// precision so reruns are byte-identical.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);
  void row(const std::vector<double>& values);
  void row_text(const std::vector<std::string>& cells);
  static std::string format(double v);

 private:
  std::ofstream out_;
  std::filesystem::path path_;
  std::size_t columns_;
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
  std::vector<double> column(const std::string& name) const;
};

CsvTable read_csv(const std::filesystem::path& path);

}  // namespace chlab
