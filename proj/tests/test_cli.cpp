#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

namespace {

namespace fs = std::filesystem;

const std::string kCli = HYPERBALL_CLI_PATH;

fs::path work_dir() {
    const fs::path dir = fs::temp_directory_path() / "hyperball_cli_tests";
    fs::create_directories(dir);
    return dir;
}

int run_cli(const std::string& args, const fs::path& out, const fs::path& err) {
    const std::string cmd =
        "'" + kCli + "' " + args + " >'" + out.string() + "' 2>'" + err.string() + "'";
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    return WIFEXITED(status) ? WEXITSTATUS(status) : -2;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void spit(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    out << text;
}

std::size_t count_lines(const std::string& s) {
    std::size_t n = 0;
    for (char c : s)
        if (c == '\n') ++n;
    return n;
}

}  // namespace

TEST_CASE("iterate: constant map writes a 3-row trace and exits 0") {
    const fs::path dir = work_dir();
    const fs::path cfg = dir / "const.json";
    const fs::path csv = dir / "const.csv";
    spit(cfg, R"({
        "dimension": 2,
        "map": {"type": "constant", "c": [[0.25, 0.0], [0.0, -0.1]]},
        "z0": [[[0.5, 0.0], [0.0, 0.0]]],
        "n_max": 50,
        "seed": 1
    })");
    const int code = run_cli("iterate --config '" + cfg.string() + "' --out '" + csv.string() + "'",
                             dir / "out.txt", dir / "err.txt");
    CHECK(code == 0);
    const std::string body = slurp(csv);
    CHECK(count_lines(body) == 4);  // header + z0, c, c
    CHECK(slurp(dir / "out.txt").find("interior_converged") != std::string::npos);
}

TEST_CASE("iterate: parabolic telescoping visible in the trace") {
    const fs::path dir = work_dir();
    const fs::path cfg = dir / "para.json";
    const fs::path csv = dir / "para.csv";
    spit(cfg, R"({
        "dimension": 1,
        "map": {"type": "siegel_affine", "B": 1.0, "a": 1.0, "tau": [[1.0, 0.0]]},
        "tau": [[1.0, 0.0]],
        "z0": [[[0.0, 0.0]]],
        "n_max": 100,
        "seed": 7
    })");
    const int code = run_cli("iterate --config '" + cfg.string() + "' --out '" + csv.string() + "'",
                             dir / "out.txt", dir / "err.txt");
    CHECK(code == 0);
    const std::string body = slurp(csv);
    CHECK(count_lines(body) == 102);  // header + 101 rows
    // final row: d = 1/101
    CHECK(body.find("0.0099009900990099") != std::string::npos);
}

TEST_CASE("malformed config exits 1 and names the problem") {
    const fs::path dir = work_dir();
    const fs::path cfg = dir / "broken.json";
    spit(cfg, "{\"dimension\": 1,");
    const int code = run_cli("iterate --config '" + cfg.string() + "'", dir / "out.txt",
                             dir / "err.txt");
    CHECK(code == 1);
    CHECK(slurp(dir / "err.txt").find("malformed JSON") != std::string::npos);

    spit(cfg, R"({"dimension": 1, "map": {"type": "identity"}})");
    const int code2 = run_cli("iterate --config '" + cfg.string() + "'", dir / "out.txt",
                              dir / "err.txt");
    CHECK(code2 == 1);
    CHECK(slurp(dir / "err.txt").find("seed") != std::string::npos);
}

TEST_CASE("numeric edge exits 2") {
    // both the parameter and the start sit at the representable edge of the
    // ball; the image collapses onto the boundary and the evaluator rejects it
    const fs::path dir = work_dir();
    const fs::path cfg = dir / "edge.json";
    spit(cfg, R"({
        "dimension": 1,
        "map": {"type": "mobius_auto", "a": [[0.999999999998, 0.0]]},
        "z0": [[[0.999999999998, 0.0]]],
        "n_max": 5,
        "seed": 1
    })");
    const int code = run_cli("iterate --config '" + cfg.string() + "'", dir / "out.txt",
                             dir / "err.txt");
    CHECK(code == 2);
    CHECK(slurp(dir / "err.txt").find("numeric error") != std::string::npos);
}

TEST_CASE("classify: contraction reports an interior outcome") {
    const fs::path dir = work_dir();
    const fs::path cfg = dir / "classify.json";
    spit(cfg, R"({
        "dimension": 2,
        "map": {"type": "linear_contraction",
                "matrix": [[0.5, 0.0], [0.0, 0.0], [0.0, 0.0], [0.5, 0.0]]},
        "n_max": 2000,
        "seed": 3
    })");
    const int code = run_cli("classify --config '" + cfg.string() + "'", dir / "out.txt",
                             dir / "err.txt");
    CHECK(code == 0);
    const std::string out = slurp(dir / "out.txt");
    CHECK(out.find("\"outcome\":\"interior\"") != std::string::npos);
    CHECK(out.find("\"spectral_radius\":0.5") != std::string::npos);
}

TEST_CASE("classify: half-space family reports the sink") {
    const fs::path dir = work_dir();
    const fs::path cfg = dir / "sink.json";
    spit(cfg, R"({
        "dimension": 1,
        "map": {"type": "siegel_affine", "B": 2.0, "a": 1.0, "tau": [[1.0, 0.0]]},
        "seed": 3
    })");
    const int code = run_cli("classify --config '" + cfg.string() + "'", dir / "out.txt",
                             dir / "err.txt");
    CHECK(code == 0);
    const std::string out = slurp(dir / "out.txt");
    CHECK(out.find("\"outcome\":\"sink\"") != std::string::npos);
    CHECK(out.find("\"beta\":0.5") != std::string::npos);
}

TEST_CASE("classify: rotation is reported as undetermined") {
    const fs::path dir = work_dir();
    const fs::path cfg = dir / "rotation.json";
    spit(cfg, R"({
        "dimension": 1,
        "map": {"type": "unitary", "matrix": [[0.54030230586813977, 0.84147098480789650]]},
        "n_max": 500,
        "seed": 9
    })");
    const int code = run_cli("classify --config '" + cfg.string() + "'", dir / "out.txt",
                             dir / "err.txt");
    CHECK(code == 0);
    CHECK(slurp(dir / "out.txt").find("\"outcome\":\"undetermined\"") != std::string::npos);
}

TEST_CASE("iterate: identical config gives byte-identical output") {
    const fs::path dir = work_dir();
    const fs::path cfg = dir / "det.json";
    spit(cfg, R"({
        "dimension": 2,
        "map": {"type": "siegel_affine", "B": 2.0, "a": 0.5, "tau": [[0.6, 0.0], [0.0, 0.8]]},
        "z0": [[[0.1, 0.2], [-0.3, 0.0]]],
        "n_max": 200,
        "seed": 21
    })");
    const fs::path csv1 = dir / "det1.csv";
    const fs::path csv2 = dir / "det2.csv";
    CHECK(run_cli("iterate --config '" + cfg.string() + "' --out '" + csv1.string() + "'",
                  dir / "out.txt", dir / "err.txt") == 0);
    CHECK(run_cli("iterate --config '" + cfg.string() + "' --out '" + csv2.string() + "'",
                  dir / "out.txt", dir / "err.txt") == 0);
    const std::string b1 = slurp(csv1);
    CHECK(!b1.empty());
    CHECK(b1 == slurp(csv2));
}

TEST_CASE("rates: needs a certified map") {
    const fs::path dir = work_dir();
    const fs::path cfg = dir / "uncertified.json";
    spit(cfg, R"({
        "dimension": 1,
        "map": {"type": "identity", "dim": 1},
        "seed": 5
    })");
    const int code = run_cli("rates --config '" + cfg.string() + "'", dir / "out.txt",
                             dir / "err.txt");
    CHECK(code == 1);
    CHECK(slurp(dir / "err.txt").find("certificate") != std::string::npos);
}

TEST_CASE("rates: parabolic family is tight and exits 0") {
    const fs::path dir = work_dir();
    const fs::path cfg = dir / "rates.json";
    const fs::path csv = dir / "rates.csv";
    spit(cfg, R"({
        "dimension": 1,
        "map": {"type": "siegel_affine", "B": 1.0, "a": 1.0, "tau": [[1.0, 0.0]]},
        "z0": [[[0.0, 0.0]]],
        "n_max": 50,
        "seed": 5
    })");
    const int code = run_cli("rates --config '" + cfg.string() + "' --out '" + csv.string() + "'",
                             dir / "out.txt", dir / "err.txt");
    CHECK(code == 0);
    const std::string body = slurp(csv);
    CHECK(body.rfind("n,d_to_tau,alpha_bound,ratio\n", 0) == 0);
    CHECK(body.find("\n0,1,1,1\n") != std::string::npos);
    CHECK(slurp(dir / "out.txt").find("violations=0") != std::string::npos);
}

TEST_CASE("verify: unknown suite exits 1, tiny suite exits 0") {
    const fs::path dir = work_dir();
    const int bad = run_cli("verify --suite bogus --seed 1 --dims 1", dir / "out.txt",
                            dir / "err.txt");
    CHECK(bad == 1);
    CHECK(slurp(dir / "err.txt").find("unknown suite") != std::string::npos);

    const int good = run_cli("verify --suite geometry --seed 1 --dims 1,2", dir / "out.txt",
                             dir / "err.txt");
    CHECK(good == 0);
    const std::string out = slurp(dir / "out.txt");
    CHECK(out.find("[PASS] geometry/sigma_range") != std::string::npos);
    CHECK(out.find("checks passed") != std::string::npos);
}
