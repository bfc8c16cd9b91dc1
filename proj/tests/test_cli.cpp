#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "ncvar/commands.hpp"

namespace
{

const std::string kCli = NCVAR_CLI_PATH;
const std::string kProblems = NCVAR_PROBLEMS_DIR;

std::filesystem::path scratch()
{
    const auto dir = std::filesystem::temp_directory_path() / "ncvar_cli_test";
    std::filesystem::create_directories(dir);
    return dir;
}

int run(const std::string& args)
{
    const std::string cmd = kCli + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string problem(const std::string& name)
{
    return kProblems + "/" + name + ".json";
}

ncvar::Json read(const std::filesystem::path& p)
{
    return ncvar::read_json_file(p.string());
}

} // namespace

TEST_CASE("exit code 0 when every identity passes")
{
    const auto out = scratch() / "analyze.json";
    CHECK(run("analyze --problem " + problem("scalar_pair_commutative") + " --out " + out.string()) == 0);
    const ncvar::Json r = read(out);
    CHECK(r["dims"]["dim_N"] == 28);
    CHECK(run("model --problem " + problem("scalar_pair_commutative") + " --out " + (scratch() / "m.json").string()) == 0);
    CHECK(run("charfn --problem " + problem("mobius_scalar") + " --out " + (scratch() / "c.json").string()) == 0);
    CHECK(run("equiv --problem " + problem("commuting_pair") + " --problem-b " + problem("commuting_pair_conjugated") +
              " --unitary " + problem("conjugating_unitary") + " --out " + (scratch() / "e.json").string()) == 0);
}

TEST_CASE("exit code 1 when a check fails")
{
    CHECK(run("equiv --problem " + problem("commuting_pair") + " --problem-b " + problem("commuting_pair_rescaled") +
              " --out " + (scratch() / "neg.json").string()) == 1);
    const auto out = scratch() / "unit.json";
    CHECK(run("model --problem " + problem("unit_scalar") + " --out " + out.string()) == 1);
    CHECK_FALSE(read(out)["errors"].empty());
}

TEST_CASE("exit code 2 for parse and usage errors")
{
    const auto out = (scratch() / "bad.json").string();
    CHECK(run("analyze --problem " + problem("malformed_matrix_row") + " --out " + out) == 2);
    CHECK(run("analyze --problem " + problem("missing") + " --out " + out) == 2);
    CHECK(run("analyze --out " + out) == 2);
    CHECK(run("frobnicate --problem " + problem("unit_scalar") + " --out " + out) == 2);
    CHECK(run("analyze --problem " + problem("unit_scalar") + " --out " + out + " --degree abc") == 2);

    const std::string cmd = kCli + " analyze --problem " + problem("malformed_matrix_row") + " --out " + out + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string text;
    char buf[256];
    while(fgets(buf, sizeof buf, pipe)) text += buf;
    pclose(pipe);
    CHECK(text.find("T[1][1][1]") != std::string::npos);
}

TEST_CASE("identical inputs give identical reports apart from timings")
{
    const auto a = scratch() / "det_a.json", b = scratch() / "det_b.json";
    const std::string args = "model --problem " + problem("q_commuting_pair") + " --out ";
    REQUIRE(run(args + a.string()) == 0);
    REQUIRE(run(args + b.string()) == 0);
    CHECK(ncvar::strip_timings(read(a)).dump() == ncvar::strip_timings(read(b)).dump());
}

TEST_CASE("degree and tolerance overrides")
{
    const auto out = scratch() / "override.json";
    REQUIRE(run("analyze --problem " + problem("scalar_pair_commutative") + " --out " + out.string() + " --degree 3 --tol 1e-6") == 0);
    const ncvar::Json r = read(out);
    CHECK(r["dims"]["d"] == 3);
    CHECK(r["dims"]["dim_N"] == 10);
}
