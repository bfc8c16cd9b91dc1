#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "ncvar/model.hpp"

namespace ncvar
{

using Json = nlohmann::json;

/// Malformed input; the message names the offending field.
class ParseError : public Error
{
public:
    using Error::Error;
};

struct ProblemOptions
{
    double tol_pure = 1e-9;
    double tol_cnc = 1e-9;
    int k_max = 100000;
    double r = 1.0;
};

struct Problem
{
    int n = 1;
    int d = 0;
    int m = 1;
    PolyIdealSpec ideal;
    std::vector<Matrix> T;
    ProblemOptions options;

    RowContraction tuple() const { return RowContraction(T); }
};

Json complex_to_json(Complex z);
Complex complex_from_json(const Json& j, const std::string& field);

/// Row-major list of rows, each a list of [re, im].
Json matrix_to_json(const Matrix& a);
Matrix matrix_from_json(const Json& j, const std::string& field);

Json poly_to_json(const NCPoly& p);
NCPoly poly_from_json(const Json& j, const std::string& field);

Json ideal_to_json(const PolyIdealSpec& spec);
PolyIdealSpec ideal_from_json(const Json& j, int n, const std::string& field);

Json problem_to_json(const Problem& p);
Problem problem_from_json(const Json& j);

/// Reads and parses a file; syntax errors become ParseError.
Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

Problem load_problem(const std::string& path);
/// A bare matrix or an object with key "U".
Matrix load_unitary(const std::string& path);

Json charfn_to_json(const CharFn& theta);
Json model_to_json(const ModelData& model);

} // namespace ncvar
