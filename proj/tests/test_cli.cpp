// End-to-end checks of the command-line tool: spawns the real binary (path
// injected as WALKZETA_BIN), captures stdout, and inspects exit codes, CSV
// schemas, JSON structure, error rows, and byte-level determinism.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "walkzeta/graph_spectra.hpp"

namespace {

struct RunResult {
    int exit_code;
    std::string output;
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(WALKZETA_BIN) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string output;
    char buf[4096];
    std::size_t got = 0;
    while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) output.append(buf, got);
    const int status = pclose(pipe);
    const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return {code, output};
}

std::vector<std::string> split_lines(const std::string& s) {
    std::vector<std::string> lines;
    std::istringstream in(s);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

// plain comma split; only used on rows without quoted fields
std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    fields.push_back(cur);
    return fields;
}

double num(const std::string& field) { return std::stod(field); }

}  // namespace

TEST_CASE("spectrum --torus lists row-major eigenvalues") {
    const RunResult r = run_cli("spectrum --torus 1,4");
    CHECK(r.exit_code == 0);
    const auto lines = split_lines(r.output);
    REQUIRE(lines.size() == 5);
    CHECK(lines[0] == "index,value_re,value_im");
    const double expected[] = {1.0, 0.0, -1.0, 0.0};
    for (int i = 0; i < 4; ++i) {
        const auto f = split_fields(lines[1 + i]);
        REQUIRE(f.size() == 3);
        CHECK(num(f[0]) == i);
        CHECK(num(f[1]) == doctest::Approx(expected[i]).epsilon(1e-15));
        CHECK(num(f[2]) == 0.0);
    }
}

TEST_CASE("spectrum --matrix diagonalizes a CSV transition matrix") {
    const std::string path = "/tmp/walkzeta_cli_m5.csv";
    {
        std::ofstream out(path);
        REQUIRE(out.good());
        walkzeta::save_transition_csv(
            walkzeta::build_torus_transition(walkzeta::TorusSpec(1, 5)), out);
    }
    const RunResult r = run_cli("spectrum --matrix " + path);
    CHECK(r.exit_code == 0);
    const auto lines = split_lines(r.output);
    REQUIRE(lines.size() == 6);
    const double c1 = std::cos(2.0 * std::numbers::pi / 5.0);
    const double c2 = std::cos(4.0 * std::numbers::pi / 5.0);
    const double expected[] = {1.0, c1, c1, c2, c2};  // Jacobi output is sorted descending
    for (int i = 0; i < 5; ++i) {
        const auto f = split_fields(lines[1 + i]);
        CHECK(num(f[1]) == doctest::Approx(expected[i]).epsilon(1e-10));
    }
}

TEST_CASE("zeta anchors: u = 0 gives 1, t = 0 gives 1 - u") {
    const RunResult r0 = run_cli("zeta --torus 1,8 --u 0");
    CHECK(r0.exit_code == 0);
    auto lines = split_lines(r0.output);
    REQUIRE(lines.size() == 2);
    CHECK(lines[0] ==
          "xi,t,u_re,u_im,log_zeta_inverse_re,log_zeta_inverse_im,zeta_inverse_re,"
          "zeta_inverse_im,method,residual,error");
    auto f = split_fields(lines[1]);
    REQUIRE(f.size() == 11);
    CHECK(num(f[4]) == 0.0);  // log zeta^-1
    CHECK(num(f[5]) == 0.0);
    CHECK(num(f[6]) == 1.0);  // zeta^-1
    CHECK(num(f[7]) == 0.0);
    CHECK(f[8] == "grid");
    CHECK(num(f[9]) < 1e-12);  // determinant cross-check residual
    CHECK(f[10].empty());

    const RunResult rt = run_cli("zeta --torus 2,3 --t 0 --u 0.5");
    CHECK(rt.exit_code == 0);
    lines = split_lines(rt.output);
    REQUIRE(lines.size() == 2);
    f = split_fields(lines[1]);
    CHECK(num(f[6]) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(num(f[7]) == 0.0);
}

TEST_CASE("zeta cross-check residual stays small on the 8-cycle") {
    const RunResult r = run_cli("zeta --torus 1,8 --xi 0 --t 1 --u 0.3");
    CHECK(r.exit_code == 0);
    const auto lines = split_lines(r.output);
    REQUIRE(lines.size() == 2);
    const auto f = split_fields(lines[1]);
    CHECK(num(f[9]) <= 1e-9);
}

TEST_CASE("zeta reports radius violations per row and keeps sweeping") {
    const RunResult r = run_cli("zeta --torus 1,4 --u \"0.5;2,0\"");
    CHECK(r.exit_code == 1);
    const auto lines = split_lines(r.output);
    REQUIRE(lines.size() == 3);
    // first row clean, second row an error row mentioning the disk
    CHECK(lines[1].find("convergence disk") == std::string::npos);
    CHECK(num(split_fields(lines[1])[6]) > 0.0);
    CHECK(lines[2].find("convergence disk") != std::string::npos);
}

TEST_CASE("coeff emits finite, limit, and Bessel columns that agree") {
    const RunResult r = run_cli("coeff --torus 1,256 --xi 0 --t 1 --r 1");
    CHECK(r.exit_code == 0);
    const auto lines = split_lines(r.output);
    REQUIRE(lines.size() == 2);
    CHECK(lines[0] ==
          "xi,t,r,finite_re,finite_im,limit_re,limit_im,limit_delta,bessel_re,bessel_im,error");
    const auto f = split_fields(lines[1]);
    REQUIRE(f.size() == 11);
    const double finite = num(f[3]);
    const double limit = num(f[5]);
    const double bessel = num(f[8]);
    // e^{-1} I_0(1)
    CHECK(finite == doctest::Approx(0.4657596075936404365).epsilon(1e-10));
    CHECK(std::abs(finite - limit) < 1e-10);
    CHECK(std::abs(finite - bessel) < 1e-10);
    CHECK(std::abs(limit - bessel) < 1e-10);
    CHECK(num(f[7]) < 1e-10);  // two-grid delta
}

TEST_CASE("coeff output is byte-identical across runs") {
    const std::string args = "coeff --torus 2,8 --xi quantum --t 0.5,2 --r 1,2,3";
    const RunResult a = run_cli(args);
    const RunResult b = run_cli(args);
    CHECK(a.exit_code == 0);
    CHECK(b.exit_code == 0);
    CHECK(a.output == b.output);
    CHECK(!a.output.empty());

    const RunResult ja = run_cli(args + " --format json");
    const RunResult jb = run_cli(args + " --format json");
    CHECK(ja.exit_code == 0);
    CHECK(ja.output == jb.output);
}

TEST_CASE("walk ctrw at t = 0 collapses to a single unit row") {
    const RunResult r = run_cli("walk ctrw --t 0");
    CHECK(r.exit_code == 0);
    const auto lines = split_lines(r.output);
    REQUIRE(lines.size() == 2);
    CHECK(lines[0] == "x,probability");
    const auto f = split_fields(lines[1]);
    CHECK(num(f[0]) == 0.0);
    CHECK(num(f[1]) == 1.0);
}

TEST_CASE("walk ctqw probabilities sum to one") {
    const RunResult r = run_cli("walk ctqw --t 2");
    CHECK(r.exit_code == 0);
    const auto lines = split_lines(r.output);
    REQUIRE(lines.size() > 3);
    double total = 0.0;
    for (std::size_t i = 1; i < lines.size(); ++i) total += num(split_fields(lines[i])[1]);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("walk kernel rows carry value and squared modulus") {
    const RunResult r = run_cli("walk kernel --t 1 --xi quantum");
    CHECK(r.exit_code == 0);
    const auto lines = split_lines(r.output);
    CHECK(lines[0] == "x,value_re,value_im,abs2");
    bool found_origin = false;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto f = split_fields(lines[i]);
        if (num(f[0]) == 0.0) {
            found_origin = true;
            // |J_0(1)|^2
            CHECK(num(f[3]) == doctest::Approx(0.5855274995136640244).epsilon(1e-12));
        }
    }
    CHECK(found_origin);
}

TEST_CASE("verify quick passes on a healthy build") {
    const RunResult r = run_cli("verify quick");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("all checks passed") != std::string::npos);
    CHECK(r.output.find("FAIL") == std::string::npos);
}

TEST_CASE("JSON output carries the schema version and complex pairs") {
    const RunResult r = run_cli("zeta --torus 1,4 --u 0,0.25 --format json");
    CHECK(r.exit_code == 0);
    const nlohmann::json doc = nlohmann::json::parse(r.output);
    CHECK(doc.at("schema_version") == "1");
    CHECK(doc.at("command") == "zeta");
    const auto& rows = doc.at("rows");
    REQUIRE(rows.size() == 1);
    const auto& u = rows[0].at("u");
    REQUIRE(u.is_array());
    REQUIRE(u.size() == 2);
    CHECK(u[0].get<double>() == 0.0);
    CHECK(u[1].get<double>() == 0.25);
    CHECK(rows[0].at("zeta_inverse").is_array());
    CHECK(rows[0].at("error").get<std::string>().empty());
}

TEST_CASE("usage mistakes exit with code 2") {
    CHECK(run_cli("spectrum --torus 1,4 --bogus").exit_code == 2);
    CHECK(run_cli("zeta --u 0.5").exit_code == 2);                          // no source
    CHECK(run_cli("zeta --torus 1,4 --model dtm --xi 0 --u 0").exit_code == 2);
    CHECK(run_cli("walk ctrw --t 1 --xi quantum").exit_code == 2);
    CHECK(run_cli("coeff --torus 1,x --r 1").exit_code == 2);
}

TEST_CASE("xi accepts the classical and quantum tokens") {
    const RunResult r = run_cli("coeff --torus 1,8 --xi classical,quantum --t 1 --r 2");
    CHECK(r.exit_code == 0);
    const auto lines = split_lines(r.output);
    REQUIRE(lines.size() == 3);
    CHECK(num(split_fields(lines[1])[0]) == 0.0);
    CHECK(num(split_fields(lines[2])[0]) ==
          doctest::Approx(std::numbers::pi / 2).epsilon(1e-16));
}

TEST_CASE("dtm zeta rows drop the evolution parameters") {
    const RunResult r = run_cli("zeta --torus 1,4 --model dtm --u 0,0.5");
    CHECK(r.exit_code == 0);
    const auto lines = split_lines(r.output);
    REQUIRE(lines.size() == 2);
    CHECK(lines[0] ==
          "u_re,u_im,log_zeta_inverse_re,log_zeta_inverse_im,zeta_inverse_re,zeta_inverse_im,"
          "method,residual,error");
    const auto f = split_fields(lines[1]);
    // spectrum {1, 0, 0, -1}: zeta^-1 = (1 + |u|^2)^{1/4} for u = i/2
    CHECK(num(f[4]) == doctest::Approx(std::pow(1.25, 0.25)).epsilon(1e-13));
    CHECK(num(f[5]) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(num(f[7]) < 1e-12);
}

TEST_CASE("dtm coeff reports finite average and lattice limit") {
    const RunResult r = run_cli("coeff --torus 1,128 --model dtm --r 2,3");
    CHECK(r.exit_code == 0);
    const auto lines = split_lines(r.output);
    REQUIRE(lines.size() == 3);
    CHECK(lines[0] == "r,finite,limit,limit_delta,error");
    const auto even = split_fields(lines[1]);
    CHECK(num(even[1]) == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(num(even[2]) == 0.5);
    CHECK(num(even[3]) == 0.0);
    const auto odd = split_fields(lines[2]);
    CHECK(std::abs(num(odd[1])) < 1e-15);
    CHECK(num(odd[2]) == 0.0);
}

TEST_CASE("--out writes the table to a file") {
    const std::string path = "/tmp/walkzeta_cli_out.csv";
    std::remove(path.c_str());
    const RunResult r = run_cli("spectrum --torus 1,4 --out " + path);
    CHECK(r.exit_code == 0);
    CHECK(r.output.empty());
    std::ifstream in(path);
    REQUIRE(in.good());
    std::string header;
    std::getline(in, header);
    CHECK(header == "index,value_re,value_im");
}
