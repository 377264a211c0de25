#include "pslset/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "pslset/errors.hpp"

namespace pslset::io {

using nlohmann::json;

namespace {

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

std::size_t positive_int(const json& obj, const char* key) {
  if (!obj.contains(key) || !obj[key].is_number_integer() || obj[key].get<long long>() < 1)
    throw ParseError(std::string("field '") + key + "' must be a positive integer");
  return obj[key].get<std::size_t>();
}

}  // namespace

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

SequenceSet parse_sequence_json(const std::string& text) {
  const json doc = parse_json(text);
  if (!doc.is_object()) throw ParseError("sequence file must be a JSON object");
  const std::size_t L = positive_int(doc, "L");
  const std::size_t M = positive_int(doc, "M");
  if (M < 2) throw ParseError("sequence length M must be >= 2");
  if (!doc.contains("phases") || !doc["phases"].is_array() || doc["phases"].size() != L)
    throw ParseError("'phases' must be an array of L rows");

  std::vector<double> phases;
  phases.reserve(L * M);
  for (const auto& row : doc["phases"]) {
    if (!row.is_array() || row.size() != M) throw ParseError("every phase row must have M entries");
    for (const auto& v : row) {
      if (!v.is_number()) throw ParseError("phases must be numbers");
      phases.push_back(v.get<double>());
    }
  }
  try {
    return SequenceSet(L, M, std::move(phases));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

std::string sequence_json(const SequenceSet& set) {
  json rows = json::array();
  for (std::size_t i = 0; i < set.num_sequences(); ++i) {
    json row = json::array();
    for (std::size_t m = 0; m < set.length(); ++m) row.push_back(set.phase(i, m));
    rows.push_back(std::move(row));
  }
  json doc = {{"L", set.num_sequences()}, {"M", set.length()}, {"phases", std::move(rows)}};
  return doc.dump() + "\n";
}

SequenceSet read_sequence_file(const std::filesystem::path& path) {
  return parse_sequence_json(slurp(path));
}

void write_sequence_file(const std::filesystem::path& path, const SequenceSet& set) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << sequence_json(set);
}

void write_correlation_csv(std::ostream& os, const CorrelationTable& table) {
  os << "pair_i,pair_j,lag,abs_value\n";
  const long max_lag = static_cast<long>(table.length()) - 1;
  for (std::size_t i = 0; i < table.num_sequences(); ++i)
    for (std::size_t j = 0; j < table.num_sequences(); ++j)
      for (long k = -max_lag; k <= max_lag; ++k)
        os << i + 1 << ',' << j + 1 << ',' << k << ',' << fmt_double(std::abs(table.at(i, j, k))) << '\n';
}

void write_trace_csv(std::ostream& os, const SolverTrace& trace) {
  os << "iter,psl,isl,inner_iters,seconds\n";
  for (const auto& r : trace.records)
    os << r.iter << ',' << fmt_double(r.psl) << ',' << fmt_double(r.isl) << ',' << r.inner_iters << ','
       << fmt_double(r.seconds) << '\n';
}

void write_surrogate_csv(std::ostream& os, const SurrogateSystem& sys) {
  os << "constraint,i,j,k,abs_r,lambda_bound,p\n";
  for (std::size_t n = 0; n < sys.num_constraints(); ++n) {
    const auto& c = sys.constraints[n];
    os << n << ',' << c.i + 1 << ',' << c.j + 1 << ',' << c.k << ',' << fmt_double(sys.corr_abs[n]) << ','
       << fmt_double(sys.lambda_bound[n]) << ',' << fmt_double(sys.p(static_cast<Eigen::Index>(n))) << '\n';
  }
}

void write_abs_image_csv(std::ostream& os, const Eigen::MatrixXcd& values) {
  for (Eigen::Index r = 0; r < values.rows(); ++r) {
    for (Eigen::Index c = 0; c < values.cols(); ++c) {
      if (c) os << ',';
      os << fmt_double(std::abs(values(r, c)));
    }
    os << '\n';
  }
}

radar::RadarScene parse_scene_json(const std::string& text, std::uint64_t seed) {
  const json doc = parse_json(text);
  if (!doc.is_object()) throw ParseError("scene file must be a JSON object");
  double sigma2 = 1e-3;
  if (doc.contains("sigma2")) {
    if (!doc["sigma2"].is_number() || doc["sigma2"].get<double>() < 0.0)
      throw ParseError("'sigma2' must be a non-negative number");
    sigma2 = doc["sigma2"].get<double>();
  }

  try {
    if (doc.contains("mask")) {
      if (!doc["mask"].is_array()) throw ParseError("'mask' must be an array of strings");
      std::vector<std::string> rows;
      for (const auto& row : doc["mask"]) {
        if (!row.is_string()) throw ParseError("'mask' must be an array of strings");
        rows.push_back(row.get<std::string>());
      }
      return radar::mask_scene(rows, seed, sigma2);
    }

    const std::size_t Q = positive_int(doc, "Q");
    const std::size_t P = positive_int(doc, "P");
    if (!doc.contains("theta_deg") || !doc["theta_deg"].is_array() || doc["theta_deg"].size() != P)
      throw ParseError("'theta_deg' must hold P angles");
    if (!doc.contains("beta") || !doc["beta"].is_array() || doc["beta"].size() != Q)
      throw ParseError("'beta' must hold Q rows");

    radar::RadarScene scene{Eigen::MatrixXcd(static_cast<Eigen::Index>(Q), static_cast<Eigen::Index>(P)), {}, sigma2};
    for (const auto& t : doc["theta_deg"]) {
      if (!t.is_number()) throw ParseError("angles must be numbers");
      scene.theta_deg.push_back(t.get<double>());
    }
    for (std::size_t r = 0; r < Q; ++r) {
      const auto& row = doc["beta"][r];
      if (!row.is_array() || row.size() != P) throw ParseError("every beta row must have P entries");
      for (std::size_t p = 0; p < P; ++p) {
        const auto& cell = row[p];
        if (!cell.is_array() || cell.size() != 2 || !cell[0].is_number() || !cell[1].is_number())
          throw ParseError("beta entries must be [re, im] pairs");
        scene.beta(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(p)) =
            cdouble(cell[0].get<double>(), cell[1].get<double>());
      }
    }
    scene.validate();
    return scene;
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

radar::RadarScene read_scene_file(const std::filesystem::path& path, std::uint64_t seed) {
  return parse_scene_json(slurp(path), seed);
}

}  // namespace pslset::io
