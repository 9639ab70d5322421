#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int code = -1;
    std::string output;  // stdout and stderr combined
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int line_count(const std::string& text) {
    int n = 0;
    for (char c : text)
        if (c == '\n') ++n;
    return n;
}

RunResult run_cli(const std::string& args, const fs::path& scratch) {
    fs::path log = scratch / "run.log";
    std::string cmd = std::string("\"") + CLI_BIN_PATH + "\" " + args + " > " +
                      log.string() + " 2>&1";
    int status = std::system(cmd.c_str());
    RunResult r;
#ifdef _WIN32
    r.code = status;
#else
    r.code = (status >= 0 && (status & 0x7f) == 0) ? ((status >> 8) & 0xff)
                                                   : -1;
#endif
    r.output = slurp(log);
    return r;
}

fs::path fresh_scratch(const std::string& tag) {
    fs::path dir = fs::current_path() / ("cli_scratch_" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("help exits cleanly") {
    auto scratch = fresh_scratch("help");
    auto r = run_cli("--help", scratch);
    CHECK(r.code == 0);
    CHECK(r.output.find("coexistence") != std::string::npos);
}

TEST_CASE("unknown flags are usage errors") {
    auto scratch = fresh_scratch("badflag");
    CHECK(run_cli("coexistence --no-such-flag 1", scratch).code == 2);
    CHECK(run_cli("", scratch).code == 2);  // a subcommand is required
}

TEST_CASE("coexistence writes a table and a reproducible manifest") {
    auto scratch = fresh_scratch("coex");
    fs::path out = scratch / "run";
    std::string args = "coexistence --tmin 0.85 --tmax 0.95 --steps 5 --out " +
                       out.string();
    auto r = run_cli(args, scratch);
    REQUIRE(r.code == 0);

    std::string csv = slurp(out / "coexistence.csv");
    CHECK(line_count(csv) == 6);  // header plus five rows
    CHECK(csv.rfind("T,p,v1,v2\n", 0) == 0);
    CHECK(csv.back() == '\n');
    CHECK(csv.find("\r") == std::string::npos);

    std::string manifest = slurp(out / "manifest.json");
    CHECK(manifest.find("porous-dynamics/1") != std::string::npos);

    // Byte-identical rerun.
    auto r2 = run_cli(args, scratch);
    REQUIRE(r2.code == 0);
    CHECK(slurp(out / "coexistence.csv") == csv);
    CHECK(slurp(out / "manifest.json") == manifest);
}

TEST_CASE("coexistence rejects supercritical temperatures") {
    auto scratch = fresh_scratch("coexbad");
    fs::path out = scratch / "run";
    auto r = run_cli("coexistence --tmin 0.85 --tmax 1.2 --out " +
                         out.string(),
                     scratch);
    CHECK(r.code == 2);
    CHECK(r.output.find("usage error") != std::string::npos);
}

TEST_CASE("second-order profiles cover the requested times") {
    auto scratch = fresh_scratch("so");
    fs::path out = scratch / "run";
    auto r = run_cli(
        "second-order --branch blowup --alpha 1 --C1 1 --C2 1 "
        "--times 0.5,0.85 --xmin -0.5 --xmax 1 --nx 21 --out " +
            out.string(),
        scratch);
    REQUIRE(r.code == 0);
    std::string p0 = slurp(out / "profile_000.csv");
    CHECK(line_count(p0) == 22);
    CHECK(p0.rfind("x,rho\n", 0) == 0);
    CHECK(fs::exists(out / "profile_001.csv"));
    CHECK(fs::exists(out / "manifest.json"));
}

TEST_CASE("second-order past the blow-up time is a numerical failure") {
    auto scratch = fresh_scratch("sobad");
    fs::path out = scratch / "run";
    auto r = run_cli(
        "second-order --branch blowup --alpha 1 --C2 1 --times 1.5 --out " +
            out.string(),
        scratch);
    CHECK(r.code == 3);
    CHECK(r.output.find("numerical failure") != std::string::npos);
}

TEST_CASE("attractor masks have one row per grid node") {
    auto scratch = fresh_scratch("attr");
    fs::path out = scratch / "run";
    auto r = run_cli(
        "attractor --y2 1 --y0min 0.2 --y0max 3 --ny0 8 "
        "--y1min -2 --y1max 2 --ny1 7 --out " +
            out.string(),
        scratch);
    REQUIRE(r.code == 0);
    std::string mask = slurp(out / "mask_000.csv");
    CHECK(line_count(mask) == 8 * 7 + 1);
    CHECK(mask.rfind("y0,y1,in_domain\n", 0) == 0);
}

TEST_CASE("phase map emits the full grid with a header") {
    auto scratch = fresh_scratch("pm");
    fs::path out = scratch / "run";
    auto r = run_cli(
        "phase-map --process isentropic --sigma0 2.8 --rho-lo 0.3 "
        "--rho-hi 1.5 --tmin 0 --tmax 0.2 --nt 2 --xmin -1 --xmax 1 "
        "--nx 11 --out " +
            out.string(),
        scratch);
    REQUIRE(r.code == 0);
    std::string csv = slurp(out / "phase_map.csv");
    CHECK(line_count(csv) == 2 * 11 + 1);
    CHECK(csv.rfind("t,x,rho,p,T,phase,valid\n", 0) == 0);
}

TEST_CASE("verify reports the linear travelling wave as exact") {
    auto scratch = fresh_scratch("verify");
    fs::path out = scratch / "run";
    auto r = run_cli(
        "verify --suite pde --field trwave --alpha 1 --cells 64 --out " +
            out.string(),
        scratch);
    REQUIRE(r.code == 0);
    CHECK(r.output.find("exact to round-off") != std::string::npos);
    std::string json_text = slurp(out / "verify.json");
    CHECK(json_text.find("\"exact_to_roundoff\": true") != std::string::npos);
}

TEST_CASE("verify bracket suite passes end to end") {
    auto scratch = fresh_scratch("verifybr");
    auto r = run_cli("verify --suite brackets", scratch);
    REQUIRE(r.code == 0);
    CHECK(r.output.find("\"pass\": true") != std::string::npos);
}
