//------------------------------------------------------------------------------
//
//   Copyright 2026 The myfdiv Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------
#include "myfdiv/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace myfdiv {

namespace {

MatrixXd read_matrix(const Json& j, const char* key)
{
  if (!j.is_array() || j.empty()) throw InputError(std::string("measure file: '") + key + "' must be a nonempty array");
  const std::size_t rows = j.size();
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  if (cols == 0) throw InputError(std::string("measure file: '") + key + "' rows must be nonempty arrays");
  MatrixXd m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) {
      throw InputError(std::string("measure file: '") + key + "' rows must have equal length");
    }
    for (std::size_t c = 0; c < cols; ++c) {
      if (!j[r][c].is_number()) throw InputError(std::string("measure file: '") + key + "' entries must be numbers");
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = j[r][c].get<double>();
    }
  }
  return m;
}

bool present(const Json& j, const char* key)
{
  return j.contains(key) && !j[key].is_null();
}

}  // namespace

MeasureFile parse_measure_json(const std::string& text)
{
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("measure file: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw InputError("measure file: top level must be an object");
  const bool has_points = present(j, "points");
  const bool has_dist = present(j, "dist");
  if (has_points == has_dist) throw InputError("measure file: exactly one of 'points' and 'dist' must be given");
  if (!present(j, "weights") || !j["weights"].is_array()) throw InputError("measure file: 'weights' array missing");

  const Json& w = j["weights"];
  VectorXd weights(static_cast<Eigen::Index>(w.size()));
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!w[i].is_number()) throw InputError("measure file: weights must be numbers");
    weights[static_cast<Eigen::Index>(i)] = w[i].get<double>();
  }

  FiniteMetricSpace space = has_points ? FiniteMetricSpace::from_points(read_matrix(j["points"], "points"))
                                       : FiniteMetricSpace(read_matrix(j["dist"], "dist"));
  if (space.size() != weights.size()) throw InputError("measure file: weights do not match the number of points");
  return {std::move(space), DiscreteMeasure::probability(std::move(weights))};
}

MeasureFile read_measure_file(const std::string& path)
{
  std::ifstream in(path);
  if (!in) throw InputError("cannot open measure file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_measure_json(buf.str());
}

std::string measure_to_json(const FiniteMetricSpace& space, const DiscreteMeasure& measure, bool as_points)
{
  Json j = Json::object();
  const auto matrix = [](const MatrixXd& m) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      Json row = Json::array();
      for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
      rows.push_back(std::move(row));
    }
    return rows;
  };
  if (as_points && space.points()) {
    j["points"] = matrix(*space.points());
    j["dist"] = nullptr;
  } else {
    j["points"] = nullptr;
    j["dist"] = matrix(space.dist());
  }
  j["weights"] = json_vector(measure.weights());
  return j.dump(2) + "\n";
}

VectorXd parse_vector(const std::string& text)
{
  std::string s = text;
  for (char& c : s) {
    if (c == ',' || c == '[' || c == ']' || c == ';') c = ' ';
  }
  std::istringstream in(s);
  std::vector<double> values;
  std::string tok;
  while (in >> tok) {
    try {
      std::size_t used = 0;
      const double v = std::stod(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      values.push_back(v);
    } catch (const std::exception&) {
      throw InputError("cannot parse '" + tok + "' as a real number");
    }
  }
  if (values.empty()) throw InputError("empty vector '" + text + "'");
  return Eigen::Map<const VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
}

Json json_number(double x)
{
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

Json json_vector(const VectorXd& v)
{
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(json_number(v[i]));
  return a;
}

Json to_json(const GaussianReport& report)
{
  Json j = Json::object();
  j["estimate"] = json_number(report.estimate);
  j["exact"] = json_number(report.exact);
  j["aligned_sup_error"] = json_number(report.aligned_sup_error);
  j["iterations"] = report.iterations;
  j["converged"] = report.converged;
  j["x"] = json_vector(report.grid);
  j["f_learned"] = json_vector(report.f_learned);
  j["f_closed"] = json_vector(report.f_closed);
  Json hd = Json::array();
  for (char c : report.high_density) hd.push_back(c != 0);
  j["high_density"] = std::move(hd);
  return j;
}

std::string format_real(double x)
{
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string to_csv(const GaussianReport& report)
{
  std::string out = "x,f_learned,f_closed,high_density\n";
  for (Eigen::Index i = 0; i < report.grid.size(); ++i) {
    out += format_real(report.grid[i]) + ',' + format_real(report.f_learned[i]) + ',' +
           format_real(report.f_closed[i]) + ',' + (report.high_density[static_cast<std::size_t>(i)] ? "1" : "0") +
           '\n';
  }
  return out;
}

namespace {

std::string csv_cell(const Json& v)
{
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) return format_real(v.get<double>());
  if (v.is_array()) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s += ';';
      s += csv_cell(v[i]);
    }
    return s;
  }
  return v.dump();
}

void flatten(const Json& obj, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out)
{
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
    if (it->is_object()) {
      flatten(*it, key, out);
    } else {
      out.emplace_back(key, csv_cell(*it));
    }
  }
}

}  // namespace

std::string flat_csv(const Json& object)
{
  std::vector<std::pair<std::string, std::string>> cells;
  flatten(object, "", cells);
  std::string head, row;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) {
      head += ',';
      row += ',';
    }
    head += cells[i].first;
    row += cells[i].second;
  }
  return head + '\n' + row + '\n';
}

void write_output(const std::string& path, const std::string& content)
{
  if (path.empty() || path == "-") {
    std::cout << content;
    std::cout.flush();
    return;
  }
  std::ofstream out(path);
  if (!out) throw InputError("cannot write to '" + path + "'");
  out << content;
}

}  // namespace myfdiv
