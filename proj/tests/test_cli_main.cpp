// CLI-level tests: run the installed binary through a shell, inspect files
// and exit codes.  The binary path is injected by the build.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

const std::string kCli = MORANSWEEP_CLI_PATH;

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run(const std::string& args) {
    const fs::path out_path = fs::temp_directory_path() / "moransweep_cli_out.txt";
    const std::string command = kCli + " " + args + " > " + out_path.string() + " 2>&1";
    const int status = std::system(command.c_str());
    RunResult result;
    result.exit_code = WEXITSTATUS(status);
    std::ifstream in(out_path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    result.output = buffer.str();
    return result;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

fs::path temp_file(const std::string& name) {
    return fs::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("help and version exit cleanly") {
    CHECK(run("--help").exit_code == 0);
    CHECK(run("--version").output.find("0.1.0") != std::string::npos);
}

TEST_CASE("usage errors exit with code 2") {
    CHECK(run("simulate").exit_code == 2);            // missing --n
    CHECK(run("frobnicate --n 3").exit_code == 2);    // unknown subcommand
    CHECK(run("recur --n 3 --mode exotic").exit_code == 2);
}

TEST_CASE("simulate writes deterministic csv") {
    const fs::path a = temp_file("sim_a.csv");
    const fs::path b = temp_file("sim_b.csv");
    const std::string args = "simulate --n 2,5,3 --reps 2000 --seed 7 --estimator weights";
    REQUIRE(run(args + " --out " + a.string()).exit_code == 0);
    REQUIRE(run(args + " --out " + b.string()).exit_code == 0);
    const std::string content = slurp(a);
    CHECK(content == slurp(b));  // byte-identical rerun
    CHECK(content.rfind("# moransweep", 0) == 0);
    CHECK(content.find("seed=7") != std::string::npos);
    // Rows come out in ascending N regardless of the flag order.
    const auto pos2 = content.find("\n2,");
    const auto pos3 = content.find("\n3,");
    const auto pos5 = content.find("\n5,");
    REQUIRE(pos2 != std::string::npos);
    REQUIRE(pos3 != std::string::npos);
    REQUIRE(pos5 != std::string::npos);
    CHECK(pos2 < pos3);
    CHECK(pos3 < pos5);
    fs::remove(a);
    fs::remove(b);
}

TEST_CASE("recur rational emits exact fractions over the full k range") {
    const fs::path out = temp_file("recur.csv");
    REQUIRE(run("recur --n 3 --mode rational --out " + out.string()).exit_code == 0);
    const std::string content = slurp(out);
    CHECK(content.find("121/49") != std::string::npos);  // u_3
    CHECK(content.find("12/7") != std::string::npos);    // u_2
    CHECK(content.find("\n3,1,") != std::string::npos);  // k runs 1..N
    CHECK(content.find("\n3,2,") != std::string::npos);
    CHECK(content.find("\n3,3,") != std::string::npos);
    fs::remove(out);
}

TEST_CASE("recur float and rational decimals agree") {
    const fs::path f = temp_file("recur_f.csv");
    const fs::path r = temp_file("recur_r.csv");
    REQUIRE(run("recur --n 2 --mode float --out " + f.string()).exit_code == 0);
    REQUIRE(run("recur --n 2 --mode rational --out " + r.string()).exit_code == 0);
    // Final row: u_2 = 1.8 in both.
    CHECK(slurp(f).find("2,2,1.8,") != std::string::npos);
    CHECK(slurp(r).find("2,2,1.8,") != std::string::npos);
    fs::remove(f);
    fs::remove(r);
}

TEST_CASE("rational resource limits exit with code 3") {
    CHECK(run("recur --n 60 --mode rational --rational-bit-budget 64").exit_code == 3);
    CHECK(run("recur --n 3000 --mode rational").exit_code == 3);  // default max N 2000
}

TEST_CASE("dry run plans work and writes nothing") {
    const fs::path out = temp_file("dry.csv");
    fs::remove(out);
    const RunResult result =
        run("compare --n 5,10 --reps 100 --dry-run --out " + out.string());
    CHECK(result.exit_code == 0);
    CHECK(result.output.find("plan:") != std::string::npos);
    CHECK_FALSE(fs::exists(out));
}

TEST_CASE("compare gates pass on a healthy run") {
    const RunResult result = run("compare --n 2,3 --reps 5000 --seed 11");
    CHECK(result.exit_code == 0);
    CHECK(result.output.find("exact_u") != std::string::npos);
}

TEST_CASE("compare recurrence-only mode needs no replications") {
    const RunResult result = run("compare --n 100,1000 --reps 0");
    CHECK(result.exit_code == 0);
    CHECK(result.output.find("ratio") != std::string::npos);
    CHECK(result.output.find("weights_mean") == std::string::npos);
}

TEST_CASE("validate --only matrices passes and prints one line per check") {
    const RunResult result = run("validate --only matrices");
    CHECK(result.exit_code == 0);
    CHECK(result.output.find("PASS matrices/product-vs-display") != std::string::npos);
    CHECK(result.output.find("PASS matrices/display-arbitration") != std::string::npos);
}

TEST_CASE("asym reports convergence columns") {
    const RunResult result = run("asym --n 100,1000 --format json");
    CHECK(result.exit_code == 0);
    CHECK(result.output.find("\"ratio\"") != std::string::npos);
    CHECK(result.output.find("\"smallest_c\"") != std::string::npos);
}
