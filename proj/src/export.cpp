#include "rsplit/export.hpp"

#include "rsplit/errors.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

namespace rsplit {

std::string format_number(double v)
{
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    if (std::isnan(v)) {
        return "nan";
    }
    std::ostringstream s;
    s.precision(kPrintDigits);
    s << v;
    return s.str();
}

std::string format_vector(const Vector& v)
{
    std::string out = "[";
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (i > 0) {
            out += ", ";
        }
        out += format_number(v[i]);
    }
    return out + "]";
}

void write_trace_csv(std::ostream& os, const IterationTrace& trace)
{
    os << "n,fp_residual,shadow_residual\n";
    for (const auto& rec : trace.records) {
        os << rec.n << ',' << format_number(rec.fp_residual) << ','
           << format_number(rec.shadow_residual) << '\n';
    }
}

namespace {

nlohmann::json finite_or_null(double v)
{
    if (std::isfinite(v)) {
        return v;
    }
    return nullptr;
}

} // namespace

void write_trace_jsonl(std::ostream& os, const IterationTrace& trace)
{
    for (const auto& rec : trace.records) {
        nlohmann::json line = {
            {"n", rec.n},
            {"x", vector_to_json(rec.x)},
            {"p", vector_to_json(rec.p)},
            {"fp_residual", finite_or_null(rec.fp_residual)},
            {"shadow_residual", finite_or_null(rec.shadow_residual)},
        };
        os << line.dump() << '\n';
    }
}

nlohmann::json vector_to_json(const Vector& v)
{
    auto arr = nlohmann::json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        arr.push_back(v[i]);
    }
    return arr;
}

nlohmann::json matrix_to_json(const Matrix& m)
{
    auto rows = nlohmann::json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        rows.push_back(vector_to_json(m.row(i).transpose()));
    }
    return rows;
}

Vector vector_from_json(const nlohmann::json& j, const std::string& field)
{
    if (!j.is_array()) {
        throw DimensionError(field + ": expected an array of numbers");
    }
    Vector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number()) {
            throw DimensionError(field + "/" + std::to_string(i) + ": expected a number");
        }
        v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
    }
    if (!v.allFinite()) {
        throw DomainError(field + ": non-finite entry");
    }
    return v;
}

Matrix matrix_from_json(const nlohmann::json& j, const std::string& field)
{
    if (!j.is_array() || j.empty()) {
        throw DimensionError(field + ": expected a nonempty array of rows");
    }
    const auto rows = static_cast<Eigen::Index>(j.size());
    Eigen::Index cols = -1;
    Matrix m;
    for (Eigen::Index i = 0; i < rows; ++i) {
        const std::string row_field = field + "/" + std::to_string(i);
        const Vector row = vector_from_json(j[static_cast<std::size_t>(i)], row_field);
        if (cols < 0) {
            cols = row.size();
            m.resize(rows, cols);
        } else if (row.size() != cols) {
            throw DimensionError(row_field + ": row has " + std::to_string(row.size())
                                 + " entries, expected " + std::to_string(cols));
        }
        m.row(i) = row.transpose();
    }
    return m;
}

nlohmann::json to_json(const SolveResult& result)
{
    return {
        {"solution", vector_to_json(result.solution)},
        {"governing", vector_to_json(result.governing)},
        {"iterations", result.iterations},
        {"converged", result.converged},
        {"rate_estimate", result.rate_estimate ? nlohmann::json(*result.rate_estimate) : nullptr},
    };
}

} // namespace rsplit
