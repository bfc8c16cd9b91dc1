#include "ncvar/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace ncvar
{

namespace
{

const Json& require(const Json& obj, const char* key, const std::string& field)
{
    if(!obj.is_object()) throw ParseError(field + ": expected an object");
    auto it = obj.find(key);
    if(it == obj.end()) throw ParseError(field.empty() ? std::string("missing field '") + key + "'" : field + "." + key + ": missing field");
    return *it;
}

std::string child(const std::string& field, const std::string& key)
{
    return field.empty() ? key : field + "." + key;
}

std::string item(const std::string& field, std::size_t k)
{
    return field + "[" + std::to_string(k) + "]";
}

int int_from_json(const Json& j, const std::string& field)
{
    if(!j.is_number_integer()) throw ParseError(field + ": expected an integer");
    return j.get<int>();
}

double number_from_json(const Json& j, const std::string& field)
{
    if(!j.is_number()) throw ParseError(field + ": expected a number");
    return j.get<double>();
}

} // namespace

Json complex_to_json(Complex z)
{
    return Json::array({z.real(), z.imag()});
}

Complex complex_from_json(const Json& j, const std::string& field)
{
    if(j.is_number()) return {j.get<double>(), 0.0};
    if(!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ParseError(field + ": expected [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

Json matrix_to_json(const Matrix& a)
{
    Json rows = Json::array();
    for(Eigen::Index r = 0; r < a.rows(); ++r)
    {
        Json row = Json::array();
        for(Eigen::Index c = 0; c < a.cols(); ++c) row.push_back(complex_to_json(a(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const Json& j, const std::string& field)
{
    if(!j.is_array()) throw ParseError(field + ": expected a list of rows");
    const auto rows = static_cast<Eigen::Index>(j.size());
    Eigen::Index cols = -1;
    Matrix out;
    for(Eigen::Index r = 0; r < rows; ++r)
    {
        const Json& row = j[static_cast<std::size_t>(r)];
        const std::string rf = item(field, static_cast<std::size_t>(r));
        if(!row.is_array()) throw ParseError(rf + ": expected a row of [re, im] entries");
        if(cols < 0)
        {
            cols = static_cast<Eigen::Index>(row.size());
            out.resize(rows, cols);
        }
        else if(static_cast<Eigen::Index>(row.size()) != cols)
            throw ParseError(rf + ": row has " + std::to_string(row.size()) + " entries, expected " + std::to_string(cols));
        for(Eigen::Index c = 0; c < cols; ++c)
            out(r, c) = complex_from_json(row[static_cast<std::size_t>(c)], item(rf, static_cast<std::size_t>(c)));
    }
    if(rows == 0) return Matrix(0, 0);
    return out;
}

Json poly_to_json(const NCPoly& p)
{
    Json terms = Json::array();
    for(const auto& [w, c] : p.terms()) terms.push_back({{"word", w.to_string()}, {"coef", complex_to_json(c)}});
    return {{"terms", terms}};
}

NCPoly poly_from_json(const Json& j, const std::string& field)
{
    const Json& terms = require(j, "terms", field);
    const std::string tf = child(field, "terms");
    if(!terms.is_array()) throw ParseError(tf + ": expected a list");
    std::vector<std::pair<Word, Complex>> out;
    for(std::size_t k = 0; k < terms.size(); ++k)
    {
        const std::string f = item(tf, k);
        const Json& w = require(terms[k], "word", f);
        if(!w.is_string()) throw ParseError(child(f, "word") + ": expected a string");
        Word word;
        try
        {
            word = Word::parse(w.get<std::string>());
        }
        catch(const Error& e)
        {
            throw ParseError(child(f, "word") + ": " + e.what());
        }
        out.emplace_back(word, complex_from_json(require(terms[k], "coef", f), child(f, "coef")));
    }
    return NCPoly(out);
}

Json ideal_to_json(const PolyIdealSpec& spec)
{
    Json j = {{"kind", to_string(spec.kind)}};
    if(spec.kind == IdealKind::q_commuting)
    {
        Json q = Json::array();
        for(const auto& p : spec.q) q.push_back({{"i", p.i}, {"j", p.j}, {"value", complex_to_json(p.value)}});
        j["q"] = q;
    }
    if(spec.kind == IdealKind::custom)
    {
        Json gens = Json::array();
        for(const auto& p : spec.custom) gens.push_back(poly_to_json(p));
        j["generators"] = gens;
    }
    return j;
}

PolyIdealSpec ideal_from_json(const Json& j, int n, const std::string& field)
{
    const Json& kind = require(j, "kind", field);
    if(!kind.is_string()) throw ParseError(child(field, "kind") + ": expected a string");
    PolyIdealSpec spec;
    spec.n = n;
    try
    {
        spec.kind = ideal_kind_from_string(kind.get<std::string>());
    }
    catch(const Error& e)
    {
        throw ParseError(child(field, "kind") + ": " + e.what());
    }
    if(spec.kind == IdealKind::q_commuting)
    {
        const Json& q = require(j, "q", field);
        const std::string qf = child(field, "q");
        if(!q.is_array()) throw ParseError(qf + ": expected a list");
        std::set<std::pair<int, int>> seen;
        for(std::size_t k = 0; k < q.size(); ++k)
        {
            const std::string f = item(qf, k);
            QParameter p{int_from_json(require(q[k], "i", f), child(f, "i")), int_from_json(require(q[k], "j", f), child(f, "j")),
                         complex_from_json(require(q[k], "value", f), child(f, "value"))};
            if(p.i < 1 || p.j > n || p.i >= p.j) throw ParseError(f + ": need 1 <= i < j <= n");
            if(!seen.insert({p.i, p.j}).second) throw ParseError(f + ": duplicate pair");
            spec.q.push_back(p);
        }
    }
    if(spec.kind == IdealKind::custom)
    {
        const Json& gens = require(j, "generators", field);
        const std::string gf = child(field, "generators");
        if(!gens.is_array()) throw ParseError(gf + ": expected a list");
        for(std::size_t k = 0; k < gens.size(); ++k)
        {
            NCPoly p = poly_from_json(gens[k], item(gf, k));
            if(p.max_letter() > n) throw ParseError(item(gf, k) + ": uses a letter beyond n");
            spec.custom.push_back(std::move(p));
        }
    }
    return spec;
}

Json problem_to_json(const Problem& p)
{
    Json t = Json::array();
    for(const auto& ti : p.T) t.push_back(matrix_to_json(ti));
    return {{"n", p.n},
            {"d", p.d},
            {"m", p.m},
            {"ideal", ideal_to_json(p.ideal)},
            {"T", t},
            {"options",
             {{"tol_pure", p.options.tol_pure}, {"tol_cnc", p.options.tol_cnc}, {"k_max", p.options.k_max}, {"r", p.options.r}}}};
}

Problem problem_from_json(const Json& j)
{
    if(!j.is_object()) throw ParseError("problem: expected an object");
    Problem p;
    p.n = int_from_json(require(j, "n", ""), "n");
    p.d = int_from_json(require(j, "d", ""), "d");
    p.m = int_from_json(require(j, "m", ""), "m");
    if(p.n < 1) throw ParseError("n: must be >= 1");
    if(p.d < 0) throw ParseError("d: must be >= 0");
    if(p.m < 1) throw ParseError("m: must be >= 1");
    p.ideal = j.contains("ideal") ? ideal_from_json(j["ideal"], p.n, "ideal") : PolyIdealSpec::zero(p.n);

    const Json& t = require(j, "T", "");
    if(!t.is_array()) throw ParseError("T: expected a list of matrices");
    if(static_cast<int>(t.size()) != p.n) throw ParseError("T: has " + std::to_string(t.size()) + " matrices, expected n = " + std::to_string(p.n));
    for(std::size_t k = 0; k < t.size(); ++k)
    {
        const std::string f = item("T", k);
        Matrix a = matrix_from_json(t[k], f);
        if(a.rows() != p.m || a.cols() != p.m)
            throw ParseError(f + ": is " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + ", expected " +
                             std::to_string(p.m) + "x" + std::to_string(p.m));
        p.T.push_back(std::move(a));
    }

    if(j.contains("options"))
    {
        const Json& o = j["options"];
        if(!o.is_object()) throw ParseError("options: expected an object");
        if(o.contains("tol_pure")) p.options.tol_pure = number_from_json(o["tol_pure"], "options.tol_pure");
        if(o.contains("tol_cnc")) p.options.tol_cnc = number_from_json(o["tol_cnc"], "options.tol_cnc");
        if(o.contains("k_max")) p.options.k_max = int_from_json(o["k_max"], "options.k_max");
        if(o.contains("r")) p.options.r = number_from_json(o["r"], "options.r");
        if(!(p.options.tol_pure > 0.0)) throw ParseError("options.tol_pure: must be positive");
        if(!(p.options.tol_cnc > 0.0)) throw ParseError("options.tol_cnc: must be positive");
        if(p.options.k_max < 1) throw ParseError("options.k_max: must be >= 1");
        if(!(p.options.r > 0.0 && p.options.r <= 1.0)) throw ParseError("options.r: must lie in (0, 1]");
    }
    return p;
}

Json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if(!in) throw ParseError("cannot open '" + path + "'");
    try
    {
        return Json::parse(in);
    }
    catch(const Json::parse_error& e)
    {
        throw ParseError(path + ": " + e.what());
    }
}

void write_json_file(const std::string& path, const Json& j)
{
    std::ofstream out(path);
    if(!out) throw Error("cannot write '" + path + "'");
    out << j.dump(2) << '\n';
}

Problem load_problem(const std::string& path)
{
    return problem_from_json(read_json_file(path));
}

Matrix load_unitary(const std::string& path)
{
    const Json j = read_json_file(path);
    if(j.is_object()) return matrix_from_json(require(j, "U", ""), "U");
    return matrix_from_json(j, "U");
}

Json charfn_to_json(const CharFn& theta)
{
    Json fourier = Json::object();
    for(const auto& [w, block] : theta.fourier) fourier[w.to_string()] = matrix_to_json(block);
    return {{"matrix", matrix_to_json(theta.matrix)},
            {"fourier", fourier},
            {"fourier_available", theta.fourier_available},
            {"constrained", theta.constrained},
            {"provenance", theta.provenance},
            {"outer_dim", theta.outer_dim},
            {"d_T", theta.d_T()},
            {"d_Tstar", theta.d_Tstar()},
            {"D_T_basis", matrix_to_json(theta.defect.D_T_basis)},
            {"D_Tstar_basis", matrix_to_json(theta.defect.D_Tstar_basis)}};
}

Json model_to_json(const ModelData& model)
{
    Json tt = Json::array();
    for(const auto& a : model.Tt) tt.push_back(matrix_to_json(a));
    Json j = {{"K_space_dim", model.K_space_dim},
              {"dim_H", model.dim()},
              {"H_basis", matrix_to_json(model.H_basis)},
              {"Tt", tt},
              {"Gamma", matrix_to_json(model.Gamma)},
              {"pure_branch", model.pure_branch}};
    if(model.pure_branch)
    {
        Json tp = Json::array();
        for(const auto& a : model.Tt_pure) tp.push_back(matrix_to_json(a));
        j["Tt_pure"] = tp;
        j["H_pure"] = matrix_to_json(model.H_pure);
    }
    return j;
}

} // namespace ncvar
