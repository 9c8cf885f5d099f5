#pragma once

#include "rsplit/engine.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>

namespace rsplit {

inline constexpr int kPrintDigits = 12;

/// "[v0, v1, ...]" with 12 significant digits.
std::string format_vector(const Vector& v);
std::string format_number(double v);

/// Header `n,fp_residual,shadow_residual`, one row per record; the n = 0
/// shadow residual is written as `inf`.
void write_trace_csv(std::ostream& os, const IterationTrace& trace);

/// One JSON object per record with keys n, x, p, fp_residual,
/// shadow_residual (null where infinite).
void write_trace_jsonl(std::ostream& os, const IterationTrace& trace);

/// {"solution", "governing", "iterations", "converged", "rate_estimate"}.
nlohmann::json to_json(const SolveResult& result);

nlohmann::json vector_to_json(const Vector& v);
/// Throws DimensionError if `j` is not an array of finite numbers.
Vector vector_from_json(const nlohmann::json& j, const std::string& field);
Matrix matrix_from_json(const nlohmann::json& j, const std::string& field);
nlohmann::json matrix_to_json(const Matrix& m);

} // namespace rsplit
