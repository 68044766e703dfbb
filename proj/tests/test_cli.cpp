#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>
#include <sys/wait.h>
#include <unistd.h>

#include "lncat/cat.hpp"

namespace fs = std::filesystem;
using namespace lncat;

namespace {

struct CliResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

fs::path scratch_dir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() /
                     ("lncat_cli_test_" + std::to_string(static_cast<long>(::getpid())));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << content;
}

CliResult run_cli(const std::string& args) {
    const char* bin = std::getenv("LNCAT_BIN");
    REQUIRE_MESSAGE(bin != nullptr, "LNCAT_BIN must point at the CLI binary");
    static int counter = 0;
    const fs::path out = scratch_dir() / ("stdout_" + std::to_string(counter));
    const fs::path err = scratch_dir() / ("stderr_" + std::to_string(counter));
    ++counter;
    const std::string cmd =
        std::string(bin) + " " + args + " > " + out.string() + " 2> " + err.string();
    const int status = std::system(cmd.c_str());
    CliResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    result.out = slurp(out);
    result.err = slurp(err);
    return result;
}

fs::path identical_groups_csv() {
    const fs::path path = scratch_dir() / "identical.csv";
    write_file(path,
               "group,value\n"
               "a,1.0\na,2.0\na,3.0\na,4.0\na,5.0\n"
               "b,1.0\nb,2.0\nb,3.0\nb,4.0\nb,5.0\n");
    return path;
}

}  // namespace

TEST_CASE("test command: identical groups give p-value 1") {
    const CliResult r = run_cli("test --input " + identical_groups_csv().string() +
                                " --method cat --replicates 200 --seed 7");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"p_value\":1") != std::string::npos);
    CHECK(r.out.find("\"statistic\":0") != std::string::npos);
    CHECK(r.out.find("\"reject\":false") != std::string::npos);
}

TEST_CASE("test command: negative value fails with the line number") {
    const fs::path path = scratch_dir() / "negative.csv";
    write_file(path,
               "group,value\n"
               "a,1.0\na,2.0\n"
               "b,-3\nb,4.0\n");
    const CliResult r = run_cli("test --input " + path.string() + " --method cat --seed 1");
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("line 4") != std::string::npos);
}

TEST_CASE("test command: same seed twice is byte-identical") {
    const std::string args = "test --input " + identical_groups_csv().string() +
                             " --method cat --replicates 300 --seed 99";
    const CliResult a = run_cli(args);
    const CliResult b = run_cli(args);
    CHECK(a.exit_code == 0);
    CHECK(b.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK_FALSE(a.out.empty());
}

TEST_CASE("test command: JSON round-trips the statistic and p-value exactly") {
    const fs::path csv = scratch_dir() / "roundtrip.csv";
    write_file(csv,
               "group,value\n"
               "a,0.8\na,2.1\na,3.9\na,1.4\na,2.7\n"
               "b,4.0\nb,6.5\nb,3.2\nb,8.8\nb,5.1\n");
    const fs::path out = scratch_dir() / "roundtrip.json";
    const CliResult r = run_cli("test --input " + csv.string() +
                                " --method cat --replicates 400 --seed 11 --output " +
                                out.string());
    REQUIRE(r.exit_code == 0);
    const nlohmann::json doc = nlohmann::json::parse(slurp(out));

    // Recompute in-process with the same inputs; doubles must match exactly.
    const std::vector<GroupSample> samples{
        make_group_sample(std::vector<double>{0.8, 2.1, 3.9, 1.4, 2.7}),
        make_group_sample(std::vector<double>{4.0, 6.5, 3.2, 8.8, 5.1})};
    const TestResult expect = run_cat(samples, 400, 11, 0.05);
    CHECK(doc["statistic"].get<double>() == expect.statistic);
    CHECK(doc["p_value"].get<double>() == expect.p_value);
    CHECK(doc["critical_value"].get<double>() == *expect.critical_value);
    CHECK(doc["seed"].get<std::uint64_t>() == 11);
    CHECK(doc["groups"].size() == 2);
}

TEST_CASE("test command: lrt works and text format prints a decision") {
    const CliResult r = run_cli("test --input " + identical_groups_csv().string() +
                                " --method lrt --format text");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("method: lrt") != std::string::npos);
    CHECK(r.out.find("fail to reject") != std::string::npos);
}

TEST_CASE("test command: constant group is an input error") {
    const fs::path path = scratch_dir() / "constant.csv";
    write_file(path,
               "group,value\n"
               "a,2.0\na,2.0\n"
               "b,1.0\nb,4.0\n");
    const CliResult r = run_cli("test --input " + path.string() + " --method lrt");
    CHECK(r.exit_code == 2);
}

TEST_CASE("simulate command: smoke scenario writes a CSV study row") {
    const fs::path scenario = scratch_dir() / "tiny.json";
    write_file(scenario, R"({
      "id": "tiny-null",
      "k": 2,
      "ns": [10, 10],
      "mus": [0.75, 0.5],
      "sigma2s": [0.5, 1.0],
      "alpha": 0.05,
      "reps": 100,
      "m": 100,
      "seed": 5,
      "methods": ["cat", "lrt"]
    })");
    const fs::path out = scratch_dir() / "tiny.csv";
    const CliResult r =
        run_cli("simulate --input " + scenario.string() + " --output " + out.string());
    CHECK(r.exit_code == 0);
    const std::string csv = slurp(out);
    CHECK(csv.find("scenario_id,method,") != std::string::npos);
    CHECK(csv.find("tiny-null,cat,2,10;10,") != std::string::npos);
    CHECK(csv.find("tiny-null,lrt,") != std::string::npos);
    CHECK(csv.find(",true,") != std::string::npos);  // is_null
    CHECK(r.out.find("rejection_rate") != std::string::npos);
}

TEST_CASE("simulate command: k=1 scenario is rejected") {
    const fs::path scenario = scratch_dir() / "k1.json";
    write_file(scenario,
               R"({"id":"k1","k":1,"ns":[10],"mus":[0.0],"sigma2s":[1.0],"seed":1})");
    const CliResult r = run_cli("simulate --input " + scenario.string());
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("k >= 2") != std::string::npos);
}

TEST_CASE("simulate command: missing output directory fails before running") {
    const fs::path scenario = scratch_dir() / "ok.json";
    write_file(scenario,
               R"({"id":"ok","k":2,"ns":[10,10],"mus":[0.0,0.0],"sigma2s":[1.0,1.0],)"
               R"("reps":100,"m":100,"seed":2,"methods":["lrt"]})");
    const fs::path missing = scratch_dir() / "no_such_dir" / "out.csv";
    const CliResult r = run_cli("simulate --input " + scenario.string() + " --output " +
                                missing.string());
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("no_such_dir") != std::string::npos);
    CHECK_FALSE(fs::exists(missing));
}

TEST_CASE("no partial output file is left on failure") {
    const fs::path scenario = scratch_dir() / "bad.json";
    write_file(scenario, R"({"id":"bad","k":1,"ns":[10]})");
    const fs::path out = scratch_dir() / "never_written.csv";
    const CliResult r =
        run_cli("simulate --input " + scenario.string() + " --output " + out.string());
    CHECK(r.exit_code == 2);
    CHECK_FALSE(fs::exists(out));
}

TEST_CASE("bad flags and missing files map to exit 2") {
    CHECK(run_cli("test --no-such-flag").exit_code == 2);
    CHECK(run_cli("test --input /does/not/exist.csv").exit_code == 2);
    CHECK(run_cli("frobnicate").exit_code == 2);
}

TEST_CASE("non-finite CSV values are rejected with the line number") {
    const fs::path path = scratch_dir() / "inf.csv";
    write_file(path,
               "group,value\n"
               "a,1.0\na,inf\n"
               "b,2.0\nb,4.0\n");
    const CliResult r = run_cli("test --input " + path.string() + " --method lrt");
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("line 3") != std::string::npos);
}

TEST_CASE("thread count does not change the bytes") {
    const std::string base = "test --input " + identical_groups_csv().string() +
                             " --method cat --replicates 400 --seed 5 --threads ";
    const CliResult t1 = run_cli(base + "1");
    const CliResult t4 = run_cli(base + "4");
    CHECK(t1.exit_code == 0);
    CHECK(t4.exit_code == 0);
    CHECK(t1.out == t4.out);
}

TEST_CASE("simulate --seed overrides the scenario seed") {
    const fs::path scenario = scratch_dir() / "seeded.json";
    write_file(scenario,
               R"({"id":"seeded","k":2,"ns":[8,8],"mus":[0.5,0.5],"sigma2s":[1.0,1.0],)"
               R"("reps":100,"m":100,"seed":7,"methods":["cat"]})");
    const CliResult with_file_seed =
        run_cli("simulate --input " + scenario.string() + " --format json");
    const CliResult with_override =
        run_cli("simulate --input " + scenario.string() + " --format json --seed 8");
    REQUIRE(with_file_seed.exit_code == 0);
    REQUIRE(with_override.exit_code == 0);
    CHECK(with_file_seed.out.find("\"seed\":7") != std::string::npos);
    CHECK(with_override.out.find("\"seed\":8") != std::string::npos);
    CHECK(with_file_seed.out != with_override.out);
}
