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
#pragma once

// Measure files and report serialization.
//
// A measure file is a JSON object
//
//   {"points": [[x, ...], ...] | null, "dist": [[...], ...] | null, "weights": [...]}
//
// with exactly one of "points" (Euclidean coordinates) and "dist" (an
// explicit distance matrix).

#include "myfdiv/estimator.hpp"
#include "myfdiv/measures.hpp"

#include <json.hpp>

#include <string>

namespace myfdiv {

using Json = nlohmann::ordered_json;

struct MeasureFile
{
  FiniteMetricSpace space;
  DiscreteMeasure measure;
};

MeasureFile parse_measure_json(const std::string& text);
MeasureFile read_measure_file(const std::string& path);
std::string measure_to_json(const FiniteMetricSpace& space, const DiscreteMeasure& measure, bool as_points = true);

/// Comma- or whitespace-separated reals, with "inf" and "-inf" accepted.
VectorXd parse_vector(const std::string& text);

/// Finite values as numbers; +-inf and nan as the strings "inf", "-inf", "nan".
Json json_number(double x);
Json json_vector(const VectorXd& v);

Json to_json(const GaussianReport& report);
/// Columns x, f_learned, f_closed, high_density.
std::string to_csv(const GaussianReport& report);

/// Header row of keys and one row of values; arrays are joined with ';' and nested objects flattened as a.b.
std::string flat_csv(const Json& object);

/// "%.17g", with inf / -inf / nan spelled out.
std::string format_real(double x);

/// Writes to `path`, or to stdout when path is empty or "-".
void write_output(const std::string& path, const std::string& content);

}  // namespace myfdiv
