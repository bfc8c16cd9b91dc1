#include <iostream>

#include <CLI11.hpp>

#include "ncvar/commands.hpp"

int main(int argc, char** argv)
{
    CLI::App app{"Constrained characteristic functions and models of row contractions"};
    app.require_subcommand(1);

    std::string problem_path;
    std::string problem_b_path;
    std::string unitary_path;
    std::string out_path;
    std::optional<int> degree;
    std::optional<double> tol;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--problem", problem_path, "Problem file (JSON)")->required();
        sub->add_option("--out", out_path, "Report file (JSON)")->required();
        sub->add_option("--degree", degree, "Override the truncation degree d");
        sub->add_option("--tol", tol, "Override tol_pure and tol_cnc");
    };
    CLI::App* analyze = app.add_subcommand("analyze", "Validate, classify and build N_J");
    CLI::App* charfn = app.add_subcommand("charfn", "Characteristic function, kernel and factorization checks");
    CLI::App* model = app.add_subcommand("model", "Model space, model operators and Gamma");
    CLI::App* equiv = app.add_subcommand("equiv", "Coincidence and unitary equivalence of two problems");
    for(CLI::App* sub : {analyze, charfn, model, equiv}) add_common(sub);
    equiv->add_option("--problem-b", problem_b_path, "Second problem file")->required();
    equiv->add_option("--unitary", unitary_path, "Unitary U with T' = U T U^* (JSON)");

    try
    {
        app.parse(argc, argv);
    }
    catch(const CLI::ParseError& e)
    {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try
    {
        const ncvar::CommandOverrides ov{degree, tol};
        const ncvar::Problem problem = ncvar::load_problem(problem_path);
        ncvar::Json report;
        if(*analyze)
            report = ncvar::cmd_analyze(problem, ov);
        else if(*charfn)
            report = ncvar::cmd_charfn(problem, ov);
        else if(*model)
            report = ncvar::cmd_model(problem, ov);
        else
        {
            const ncvar::Problem problem_b = ncvar::load_problem(problem_b_path);
            std::optional<ncvar::Matrix> u;
            if(!unitary_path.empty()) u = ncvar::load_unitary(unitary_path);
            report = ncvar::cmd_equiv(problem, problem_b, u, ov);
        }
        ncvar::write_json_file(out_path, report);
        const bool ok = report["all_pass"].get<bool>();
        std::cout << report["command"].get<std::string>() << ": " << (ok ? "all checks pass" : "some checks fail") << '\n';
        for(const auto& e : report["errors"]) std::cerr << "error: " << e.get<std::string>() << '\n';
        return ok ? 0 : 1;
    }
    catch(const ncvar::ParseError& e)
    {
        std::cerr << "parse error: " << e.what() << '\n';
        return 2;
    }
    catch(const ncvar::Error& e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
