#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"

namespace {

const std::string cli = CLI_PATH;
const std::string data = DATA_DIR;

int run(const std::string& args) {
    std::string cmd = cli + " " + args + " > cli_stdout.txt 2> cli_stderr.txt";
    return std::system(cmd.c_str());
}

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::vector<std::string> lines_of(const std::string& path) {
    std::ifstream f(path);
    std::vector<std::string> out;
    std::string line;
    while (std::getline(f, line)) out.push_back(line);
    return out;
}

}  // namespace

TEST_CASE("select-ext finds the all-ones column and writes CSV plus echo") {
    REQUIRE(run("select-ext --field 4 --k 1 --eps-grid 0.2:0.8:0.3 --out se.csv") == 0);
    auto rows = lines_of("se.csv");
    REQUIRE(rows.size() == 4);
    CHECK(rows[0] == "field_p,k,columns,dmin,eps,expected_eligible");
    CHECK(rows[1].find("\"1,2,4,8,15\",5,") != std::string::npos);
    std::string echo = slurp("se.csv.echo");
    CHECK(echo.find("version") != std::string::npos);
    CHECK(echo.find("command select-ext") != std::string::npos);
    CHECK(echo.find("seed") != std::string::npos);
}

TEST_CASE("build-code writes a loadable code file, deterministic per seed") {
    REQUIRE(run("build-code --dd " + data + "/reg_2_4.poly --n 60 --field 4 --seed 4 "
                "--out code_a.txt") == 0);
    REQUIRE(run("build-code --dd " + data + "/reg_2_4.poly --n 60 --field 4 --seed 4 "
                "--out code_b.txt") == 0);
    CHECK(slurp("code_a.txt") == slurp("code_b.txt"));
    auto rows = lines_of("code_a.txt");
    REQUIRE_FALSE(rows.empty());
    CHECK(rows[0].find("60") != std::string::npos);
}

TEST_CASE("ber-sweep produces a schema-stable CSV") {
    REQUIRE(run("ber-sweep --code code_a.txt --field 4 --eps-grid 0:0.4:0.2 --trials 40 "
                "--seed 2 --out ber.csv") == 0);
    auto rows = lines_of("ber.csv");
    REQUIRE(rows.size() == 4);
    CHECK(rows[0] == "eps,ber,std_err,trials");
    // eps = 0 row decodes perfectly
    CHECK(rows[1].substr(0, 4) == "0,0,");
    // identical invocation reproduces the file bit-for-bit
    REQUIRE(run("ber-sweep --code code_a.txt --field 4 --eps-grid 0:0.4:0.2 --trials 40 "
                "--seed 2 --out ber2.csv") == 0);
    CHECK(slurp("ber.csv") == slurp("ber2.csv"));
}

TEST_CASE("threshold subcommand emits rate, threshold, and gap") {
    REQUIRE(run("threshold --dd " + data + "/reg_2_4.poly --field 4 --pop 1000 --seed 3 "
                "--out th.csv --trace th_trace.csv") == 0);
    auto rows = lines_of("th.csv");
    REQUIRE(rows.size() == 2);
    CHECK(rows[0] == "rate,threshold,delta,selection,population,bisection_tol,seed");
    double rate, th;
    char c;
    std::istringstream is(rows[1]);
    is >> rate >> c >> th;
    CHECK(rate == doctest::Approx(0.5));
    CHECK(th > 0.35);
    CHECK(th < 0.6);
    auto trace = lines_of("th_trace.csv");
    CHECK(trace.size() >= 5);
    CHECK(trace[0].find("eps") != std::string::npos);
}

TEST_CASE("emit-plot-data splits series and writes a manifest") {
    {
        std::ofstream f("results.csv");
        f << "eps,ber,config\n";
        f << "0.1,0.5,a\n0.2,0.6,a\n0.1,0.4,b\n";
    }
    REQUIRE(run("emit-plot-data --in results.csv --x eps --y ber --series config "
                "--out-dir . --prefix curve") == 0);
    auto a = lines_of("curve_a.dat");
    REQUIRE(a.size() == 3);
    CHECK(a[1] == "0.1 0.5");
    CHECK(a[2] == "0.2 0.6");
    auto manifest = lines_of("curve_manifest.txt");
    REQUIRE(manifest.size() == 2);
    CHECK(manifest[0].find("series=a") != std::string::npos);
    CHECK(manifest[0].find("config=") != std::string::npos);

    // empty result set is an error, not an empty file
    {
        std::ofstream f("empty.csv");
        f << "eps,ber\n";
    }
    CHECK(run("emit-plot-data --in empty.csv --x eps --y ber --out-dir . --prefix none") != 0);
    CHECK(run("emit-plot-data --in results.csv --x bogus --y ber --out-dir .") != 0);
}

TEST_CASE("bad invocations fail with nonzero status") {
    CHECK(run("threshold --dd /nonexistent.poly --out x.csv") != 0);
    CHECK(run("ber-sweep --code code_a.txt --eps-grid 0.5:0.1:0.1 --out x.csv") != 0);
    CHECK(run("definitely-not-a-subcommand") != 0);
}
