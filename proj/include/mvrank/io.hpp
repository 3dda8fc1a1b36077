#pragma once

#include <string>
#include <vector>

#include "mvrank/dataset.hpp"
#include "mvrank/step_curve.hpp"

namespace mvrank {

// Shortest-round-trip decimal formatting so re-parsing yields the same
// double and repeated runs are byte-identical.
std::string format_double(double v);

// Data CSV: header "x1,...,xd", one row per point. Parse errors carry the
// 1-based line number.
Dataset parse_data_csv(const std::string& text);
std::string write_data_csv(const Dataset& data);

// Curve CSV as written by StepCurve::to_csv.
StepCurve parse_curve_csv(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

} // namespace mvrank
