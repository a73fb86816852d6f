#include "chlab/io.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "chlab/errors.hpp"
#include "chlab/numerics.hpp"
#include "chlab/spectral.hpp"
#include "json.hpp"

namespace chlab {

using nlohmann::json;

namespace {

template <typename T>
T require(const json& j, const char* key) {
  if (!j.contains(key)) {
    throw Error(ErrorCode::MissingData, std::string("missing field \"") + key + "\"");
  }
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Io, std::string("field \"") + key + "\": " + e.what());
  }
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::Io, std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

ProfileSpec parse_profile_json(const std::string& text) {
  const json j = parse_json(text);
  ProfileSpec s;
  if (j.contains("family")) {
    const auto family = require<std::string>(j, "family");
    if (family == "sech2") {
      s.kind = ProfileSpec::Kind::Sech2;
      s.A = require<double>(j, "A");
      s.w = require<double>(j, "w");
      s.x0 = j.value("x0", 0.0);
    } else if (family == "soliton") {
      s.kind = ProfileSpec::Kind::Soliton;
      s.spectrum.poles = require<std::vector<double>>(j, "poles");
      s.spectrum.constants = require<std::vector<double>>(j, "c");
      s.spectrum.normalize();
      s.t0 = j.value("t0", 0.0);
    } else {
      throw Error(ErrorCode::InvalidArgument, "unknown profile family \"" + family + "\"");
    }
    s.L = j.value("L", s.L);
    s.n = j.value("n", s.n);
  } else {
    s.kind = ProfileSpec::Kind::Samples;
    s.L = require<double>(j, "L");
    s.n = require<std::size_t>(j, "n");
    s.u0 = require<std::vector<double>>(j, "u0");
    if (s.u0.size() != s.n) throw Error(ErrorCode::InvalidArgument, "u0 length differs from n");
  }
  return s;
}

ProfileSpec load_profile(const std::filesystem::path& path) {
  const std::string text = read_text(path);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return parse_profile_json(text);
  std::istringstream in(text);
  ProfileSpec s;
  s.kind = ProfileSpec::Kind::Samples;
  if (!(in >> s.L >> s.n)) throw Error(ErrorCode::Io, "plain-text profile must start with L n");
  s.u0.resize(s.n);
  for (auto& v : s.u0) {
    if (!(in >> v)) throw Error(ErrorCode::Io, "plain-text profile has fewer than n samples");
  }
  return s;
}

std::vector<double> sample_profile(const ProfileSpec& spec, const std::vector<double>& x,
                                   int threads) {
  std::vector<double> u(x.size(), 0.0);
  switch (spec.kind) {
    case ProfileSpec::Kind::Sech2:
      for (std::size_t i = 0; i < x.size(); ++i) {
        const double c = std::cosh((x[i] - spec.x0) / spec.w);
        u[i] = spec.A / (c * c);
      }
      break;
    case ProfileSpec::Kind::Soliton: {
      const auto model = reflectionless_model(spec.spectrum);
      parallel_for(x.size(), threads, [&](std::size_t i) {
        const double v = u_at_x(model, x[i], spec.t0);
        // Below this the value is pure rounding noise of the root solve.
        u[i] = std::abs(v) < 1e-300 ? 0.0 : v;
      });
      break;
    }
    case ProfileSpec::Kind::Samples: {
      std::vector<double> inside;
      std::vector<std::size_t> idx;
      for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] >= -spec.L && x[i] < spec.L) {
          inside.push_back(x[i]);
          idx.push_back(i);
        }
      }
      const auto vals = trig_interpolate(spec.u0, -spec.L, 2.0 * spec.L, inside);
      for (std::size_t i = 0; i < idx.size(); ++i) u[idx[i]] = vals[i];
      break;
    }
  }
  return u;
}

PotentialProfile make_profile(const ProfileSpec& spec, const ProfileOptions& options) {
  const auto grid = SpatialGrid::make_uniform(spec.L, spec.n);
  if (spec.kind == ProfileSpec::Kind::Samples) return build_profile(spec.u0, grid, options);
  return build_profile(sample_profile(spec, grid.nodes), grid, options);
}

std::string scattering_to_json(const ScatteringData& d) {
  json j;
  j["K_max"] = d.K_max;
  j["k"] = d.k;
  std::vector<double> re(d.r.size()), im(d.r.size());
  for (std::size_t i = 0; i < d.r.size(); ++i) {
    re[i] = d.r[i].real();
    im[i] = d.r[i].imag();
  }
  j["r_re"] = re;
  j["r_im"] = im;
  j["poles"] = d.poles;
  j["c"] = d.norming;
  j["a_half_i"] = d.a_half_i;
  return j.dump(1);
}

ScatteringData scattering_from_json(const std::string& text) {
  const json j = parse_json(text);
  ScatteringData d;
  d.K_max = require<double>(j, "K_max");
  d.k = require<std::vector<double>>(j, "k");
  const auto re = require<std::vector<double>>(j, "r_re");
  const auto im = require<std::vector<double>>(j, "r_im");
  if (re.size() != d.k.size() || im.size() != d.k.size()) {
    throw Error(ErrorCode::InvalidArgument, "r_re/r_im lengths differ from k");
  }
  d.r.resize(d.k.size());
  for (std::size_t i = 0; i < d.k.size(); ++i) d.r[i] = {re[i], im[i]};
  d.poles = require<std::vector<double>>(j, "poles");
  d.norming = require<std::vector<double>>(j, "c");
  if (d.poles.size() != d.norming.size()) {
    throw Error(ErrorCode::InvalidArgument, "poles and c differ in length");
  }
  d.a_half_i = require<double>(j, "a_half_i");
  return d;
}

void save_scattering(const ScatteringData& data, const std::filesystem::path& path) {
  write_text(path, scattering_to_json(data));
}

ScatteringData load_scattering(const std::filesystem::path& path) {
  return scattering_from_json(read_text(path));
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorCode::Io, "write failed for " + path.string());
}

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header)
    : path_(path), columns_(header.size()) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  out_.open(path, std::ios::binary);
  if (!out_) throw Error(ErrorCode::Io, "cannot write " + path.string());
  row_text(header);
}

std::string CsvWriter::format(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void CsvWriter::row(const std::vector<double>& values) {
  std::vector<std::string> cells;
  cells.reserve(values.size());
  for (double v : values) cells.push_back(format(v));
  row_text(cells);
}

void CsvWriter::row_text(const std::vector<std::string>& cells) {
  if (cells.size() != columns_) {
    throw Error(ErrorCode::InvalidArgument, "CSV row width differs from the header");
  }
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out_ << ',';
    out_ << cells[i];
  }
  out_ << '\n';
  if (!out_) throw Error(ErrorCode::Io, "write failed for " + path_.string());
}

std::vector<double> CsvTable::column(const std::string& name) const {
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (header[c] == name) {
      std::vector<double> out;
      out.reserve(rows.size());
      for (const auto& r : rows) out.push_back(r.at(c));
      return out;
    }
  }
  throw Error(ErrorCode::MissingData, "CSV has no column \"" + name + "\"");
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::istringstream in(read_text(path));
  CsvTable t;
  std::string line;
  auto split = [](const std::string& s) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(s);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    return cells;
  };
  if (!std::getline(in, line)) throw Error(ErrorCode::Io, "empty CSV " + path.string());
  t.header = split(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> r;
    for (const auto& c : split(line)) {
      double v = 0.0;
      const auto res = std::from_chars(c.data(), c.data() + c.size(), v);
      if (res.ec != std::errc()) throw Error(ErrorCode::Io, "non-numeric CSV cell \"" + c + "\"");
      r.push_back(v);
    }
    if (r.size() != t.header.size()) throw Error(ErrorCode::Io, "ragged CSV " + path.string());
    t.rows.push_back(std::move(r));
  }
  return t;
}

}  // namespace chlab
