#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

namespace fs = std::filesystem;

namespace {

struct CliResult {
    int code = -1;
    std::string output;  // stdout + stderr
};

// Scratch directory shared by one test case; removed on destruction.
struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("hypflow_cli_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() { std::error_code ec; fs::remove_all(path, ec); }
    static int& counter() {
        static int c = 0;
        return c;
    }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

CliResult run_cli(const TempDir& dir, const std::string& args) {
    const std::string capture = dir.file("cli_output.txt");
    const std::string cmd = "cd '" + dir.path.string() + "' && '" + HYPFLOW_CLI_PATH + "' " + args +
                            " > '" + capture + "' 2>&1";
    const int raw = std::system(cmd.c_str());
    CliResult r;
    r.code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    std::ifstream in(capture, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    r.output = ss.str();
    return r;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("run produces the documented artifact set and exit code") {
    TempDir dir;
    write_file(dir.file("run.cfg"),
               "alpha=-1\nmode=area\nn=64\ninit=circle r=1\nt_end=0.05\nemit_svg=true\n");
    auto r = run_cli(dir, "run --config run.cfg --out results");
    CHECK(r.code == 0);
    CHECK(r.output.find("reason=ReachedTEnd") != std::string::npos);
    CHECK(fs::exists(dir.path / "results" / "series.csv"));
    CHECK(fs::exists(dir.path / "results" / "summary.json"));
    CHECK(fs::exists(dir.path / "results" / "effective_config.cfg"));
    CHECK(fs::exists(dir.path / "results" / "curve_000000.csv"));
    CHECK(fs::exists(dir.path / "results" / "curve_000000.json"));
    CHECK(fs::exists(dir.path / "results" / "curve_000000.svg"));
    // A circle stays put: the summary marks t_end reached with exit 0.
    CHECK(slurp(dir.file("results/summary.json")).find("\"reason\": \"ReachedTEnd\"") != std::string::npos);
}

TEST_CASE("run accepts overrides and rejects bad input with exit 1") {
    TempDir dir;
    write_file(dir.file("run.cfg"), "alpha=-1\nmode=area\nn=64\ninit=circle r=1\nt_end=0.05\n");
    auto ok = run_cli(dir, "run --config run.cfg --override t_end=0.01 --out o1");
    CHECK(ok.code == 0);

    auto bad_override = run_cli(dir, "run --config run.cfg --override bogus=1 --out o2");
    CHECK(bad_override.code == 1);
    CHECK(bad_override.output.find("unknown key") != std::string::npos);

    auto missing = run_cli(dir, "run --config nope.cfg --out o3");
    CHECK(missing.code == 1);

    write_file(dir.file("bad.cfg"), "alpha=0.5\n");
    auto bad_cfg = run_cli(dir, "run --config bad.cfg --out o4");
    CHECK(bad_cfg.code == 1);
    CHECK(bad_cfg.output.find("alpha must be negative") != std::string::npos);

    auto no_args = run_cli(dir, "run");
    CHECK(no_args.code == 1);

    auto bad_sub = run_cli(dir, "frobnicate");
    CHECK(bad_sub.code == 1);
}

TEST_CASE("failure outcomes surface as distinct exit codes") {
    TempDir dir;
    write_file(dir.file("base.cfg"), "alpha=-1\nmode=area\nn=64\ninit=paper-example\nt_end=0.5\n");
    // The canonical curve starts with kappa_max about 1.086 and kappa_min about 0.589.
    auto blowup = run_cli(dir, "run --config base.cfg --override blowup_kappa=1.05 --out b");
    CHECK(blowup.code == 2);
    CHECK(blowup.output.find("reason=CurvatureBlowUp") != std::string::npos);

    auto convex = run_cli(dir, "run --config base.cfg --override convexity_floor=0.7 --out c");
    CHECK(convex.code == 3);
    CHECK(convex.output.find("reason=ConvexityLost") != std::string::npos);

    auto underflow = run_cli(dir, "run --config base.cfg --override cfl_safety=1e-16 --out u");
    CHECK(underflow.code == 4);
    CHECK(underflow.output.find("reason=StepUnderflow") != std::string::npos);
}

TEST_CASE("verify subcommand passes on a healthy build") {
    TempDir dir;
    auto r = run_cli(dir, "verify");
    CHECK(r.code == 0);
    CHECK(r.output.find("PASS") != std::string::npos);
    CHECK(r.output.find("FAIL") == std::string::npos);
    CHECK(r.output.find("all checks passed") != std::string::npos);
}

TEST_CASE("resume continues a run and refuses to change its identity") {
    TempDir dir;
    write_file(dir.file("run.cfg"),
               "alpha=-1\nmode=area\nn=64\ninit=paper-example\nt_end=0.02\nsnapshot_interval=0.01\n");
    auto first = run_cli(dir, "run --config run.cfg --out stage1");
    REQUIRE(first.code == 0);

    // The final snapshot csv is the one named by the largest step count.
    std::string last;
    for (const auto& e : fs::directory_iterator(dir.path / "stage1")) {
        const auto name = e.path().filename().string();
        if (name.rfind("curve_", 0) == 0 && name.ends_with(".csv"))
            if (name > last) last = name;
    }
    REQUIRE_FALSE(last.empty());

    auto resumed = run_cli(dir, "resume --snapshot stage1/" + last +
                                    " --override t_end=0.04 --out stage2");
    CHECK(resumed.code == 0);
    CHECK(resumed.output.find("reason=ReachedTEnd") != std::string::npos);
    CHECK(fs::exists(dir.path / "stage2" / "series.csv"));

    auto flipped = run_cli(dir, "resume --snapshot stage1/" + last +
                                    " --override mode=length --out stage3");
    CHECK(flipped.code == 1);
    CHECK(flipped.output.find("'mode' is fixed by the snapshot") != std::string::npos);

    auto regrid = run_cli(dir, "resume --snapshot stage1/" + last + " --override n=128 --out s4");
    CHECK(regrid.code == 1);
    CHECK(regrid.output.find("'n' is fixed by the snapshot") != std::string::npos);
}

TEST_CASE("repeated runs and renders are byte-identical") {
    TempDir dir;
    write_file(dir.file("run.cfg"),
               "alpha=-1\nmode=area\nn=64\ninit=paper-example\nt_end=0.02\nemit_svg=true\n");
    auto a = run_cli(dir, "run --config run.cfg --out da");
    auto b = run_cli(dir, "run --config run.cfg --out db");
    REQUIRE(a.code == 0);
    REQUIRE(b.code == 0);
    CHECK(slurp(dir.file("da/series.csv")) == slurp(dir.file("db/series.csv")));
    CHECK(slurp(dir.file("da/summary.json")) == slurp(dir.file("db/summary.json")));
    CHECK(slurp(dir.file("da/curve_000000.svg")) == slurp(dir.file("db/curve_000000.svg")));

    auto r1 = run_cli(dir, "render --config run.cfg --out shape1.svg");
    auto r2 = run_cli(dir, "render --config run.cfg --out shape2.svg");
    CHECK(r1.code == 0);
    CHECK(r2.code == 0);
    CHECK(slurp(dir.file("shape1.svg")) == slurp(dir.file("shape2.svg")));
    CHECK(slurp(dir.file("shape1.svg")).find("<svg") != std::string::npos);
}
