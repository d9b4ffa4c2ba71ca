// Drives the command-line binary end to end: every subcommand, the exit-code
// contract (0 success, 1 usage/IO, 2 verification failure), and the
// file-format round trips. The binary path comes in via SWT_CLI_PATH; result
// files are inspected through the public C API.
#include <doctest.h>
#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "swt.h"

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int code = -1;
    std::string out;
};

fs::path scratch(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / "swt-cli-tests" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Runs one CLI invocation through the shell, capturing stdout+stderr.
RunResult run(const std::string& args, const fs::path& dir) {
    fs::path log = dir / "run.log";
    std::string cmd = std::string(SWT_CLI_PATH) + " " + args + " > '" + log.string() + "' 2>&1";
    int status = std::system(cmd.c_str());
    RunResult r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(log);
    return r;
}

// Reads an f64 tensor written by the CLI back through the library.
std::vector<double> read_f64(const fs::path& path) {
    swt_tensor* t = nullptr;
    REQUIRE(swt_tensor_read(path.string().c_str(), &t) == SWT_OK);
    REQUIRE(std::string(swt_tensor_dtype(t)) == "f64");
    std::vector<double> data(swt_tensor_data(t), swt_tensor_data(t) + swt_tensor_count(t));
    swt_tensor_free(t);
    return data;
}

}  // namespace

TEST_CASE("usage, help, and version") {
    fs::path dir = scratch("usage");
    CHECK(run("--version", dir).code == 0);
    CHECK(run("--help", dir).code == 0);
    CHECK(run("", dir).code == 1);                   // a subcommand is required
    CHECK(run("no-such-command", dir).code == 1);
    CHECK(run("design-verify --builtin icosahedron", dir).code == 1);  // --t missing
}

TEST_CASE("design-verify subcommand") {
    fs::path dir = scratch("design-verify");

    auto pass = run("design-verify --builtin icosahedron --t 4", dir);
    CHECK(pass.code == 0);
    CHECK(pass.out.find("PASS") != std::string::npos);
    CHECK(pass.out.find("degree  4") != std::string::npos);

    auto fail = run("design-verify --builtin icosahedron --t 6", dir);
    CHECK(fail.code == 2);
    CHECK(fail.out.find("FAIL") != std::string::npos);
    CHECK(fail.out.find("degree  6") != std::string::npos);

    CHECK(run("design-verify --file /no/such/file --d 3 --t 2", dir).code == 1);
    CHECK(run("design-verify --t 3", dir).code == 1);

    // a design file goes through the same report path
    swt_design* de = nullptr;
    REQUIRE(swt_design_builtin("equiangular(12)", &de) == SWT_OK);
    fs::path file = dir / "eq12.txt";
    REQUIRE(swt_design_save(de, file.string().c_str()) == SWT_OK);
    swt_design_free(de);
    auto file_pass = run("design-verify --file '" + file.string() + "' --d 2 --t 11", dir);
    CHECK(file_pass.code == 0);
    CHECK(file_pass.out.find("12 points on S^1") != std::string::npos);
    CHECK(run("design-verify --file '" + file.string() + "' --d 2 --t 12", dir).code == 2);
}

TEST_CASE("kernel subcommand") {
    fs::path dir = scratch("kernel");
    fs::path csv = dir / "k.csv";

    // the equal-weight kernel pins dim/n at theta = 0
    auto flat = run("kernel --d 3 --lmax 10 --nmax 216 --window flat --out '" + csv.string() + "'",
                    dir);
    CHECK(flat.code == 0);
    std::string text = slurp(csv);
    CHECK(text.rfind("theta,lambda\n0,0.56018518518518523\n", 0) == 0);
    CHECK(text.find("\r") == std::string::npos);

    CHECK(run("kernel --window cubic --points 101 --out '" + csv.string() + "'", dir).code == 0);
    {
        std::ifstream in(csv);
        std::string line;
        int rows = 0;
        while (std::getline(in, line)) ++rows;
        CHECK(rows == 102);  // header + points
    }

    // lmax 0 gives a constant column
    CHECK(run("kernel --lmax 0 --nmax 216 --points 11 --out '" + csv.string() + "'", dir).code == 0);
    {
        std::ifstream in(csv);
        std::string line;
        std::getline(in, line);
        std::string first;
        while (std::getline(in, line)) {
            std::string value = line.substr(line.find(',') + 1);
            if (first.empty()) first = value;
            CHECK(value == first);
        }
    }

    CHECK(run("kernel --window optimal --out '" + csv.string() + "'", dir).code == 0);
    CHECK(run("kernel --window optimal --weight gauss --out '" + csv.string() + "'", dir).code == 1);
    CHECK(run("kernel --window triangle --out '" + csv.string() + "'", dir).code == 1);
}

TEST_CASE("decompose, reconstruct, and the energy contract") {
    fs::path dir = scratch("pipeline");
    fs::path input = dir / "f.swt";
    fs::path rec = dir / "rec.swt";
    fs::path pyr = dir / "pyr";

    REQUIRE(run("make-tensor --shape 64x64 --seed 7 --out '" + input.string() + "'", dir).code == 0);
    auto dec = run("decompose --input '" + input.string() +
                       "' --scales 3 --bank zonal --design 'equiangular(12)' --lmax 3 "
                       "--window cubic --out '" + pyr.string() + "'",
                   dir);
    REQUIRE(dec.code == 0);
    CHECK(dec.out.find("equiangular(12)") != std::string::npos);

    // manifest energy equals input energy within 1e-9 relative
    auto f = read_f64(input);
    double in_energy = 0.0;
    for (double v : f) in_energy += v * v;
    swt_pyramid* loaded = nullptr;
    REQUIRE(swt_pyramid_load(pyr.string().c_str(), &loaded, nullptr) == SWT_OK);
    CHECK(swt_pyramid_energy(loaded) == doctest::Approx(in_energy).epsilon(1e-9));
    swt_pyramid_free(loaded);

    REQUIRE(run("reconstruct --pyramid '" + pyr.string() + "' --out '" + rec.string() + "'", dir)
                .code == 0);
    auto r = read_f64(rec);
    REQUIRE(r.size() == f.size());
    double diff = 0.0;
    for (size_t i = 0; i < f.size(); ++i) diff += (r[i] - f[i]) * (r[i] - f[i]);
    CHECK(std::sqrt(diff / in_energy) < 1e-9);

    // reconstructing again produces identical bytes
    fs::path rec2 = dir / "rec2.swt";
    REQUIRE(run("reconstruct --pyramid '" + pyr.string() + "' --out '" + rec2.string() + "'", dir)
                .code == 0);
    CHECK(slurp(rec) == slurp(rec2));

    // constant input: every band channel vanishes
    fs::path cinput = dir / "const.swt";
    fs::path cpyr = dir / "cpyr";
    REQUIRE(run("make-tensor --shape 32x32 --constant --value 2.5 --out '" + cinput.string() + "'",
                dir)
                .code == 0);
    REQUIRE(run("decompose --input '" + cinput.string() +
                    "' --scales 2 --bank zonal --design 'equiangular(12)' --lmax 3 --out '" +
                    cpyr.string() + "'",
                dir)
                .code == 0);
    swt_pyramid* cp = nullptr;
    REQUIRE(swt_pyramid_load(cpyr.string().c_str(), &cp, nullptr) == SWT_OK);
    std::vector<double> buf(2 * 32 * 32);
    double band_max = 0.0;
    for (int j = 0; j < swt_pyramid_scales(cp); ++j)
        for (int n = 0; n < swt_pyramid_channels(cp); ++n) {
            REQUIRE(swt_pyramid_band(cp, j, n, buf.data(), (int64_t)buf.size()) == SWT_OK);
            for (double v : buf) band_max = std::max(band_max, std::fabs(v));
        }
    CHECK(band_max < 1e-12);
    swt_pyramid_free(cp);

    // shape too small for the scale count: usage-class failure
    fs::path tiny = dir / "tiny.swt";
    REQUIRE(run("make-tensor --shape 8x8 --seed 1 --out '" + tiny.string() + "'", dir).code == 0);
    CHECK(run("decompose --input '" + tiny.string() +
                  "' --scales 3 --bank zonal --design 'equiangular(12)' --lmax 3 --out '" +
                  (dir / "nope").string() + "'",
              dir)
              .code == 1);

    // harmonic banks reject --design
    CHECK(run("decompose --input '" + input.string() +
                  "' --scales 2 --bank harmonic --design 'equiangular(12)' --lmax 2 --out '" +
                  (dir / "nope2").string() + "'",
              dir)
              .code == 1);
}

TEST_CASE("steer subcommand") {
    fs::path dir = scratch("steer");
    fs::path input = dir / "f.swt";
    REQUIRE(run("make-tensor --shape 32x32 --seed 11 --out '" + input.string() + "'", dir).code ==
            0);

    // flat zonal bank: one design step is a pure channel shift
    fs::path pyr = dir / "pyr";
    fs::path steered = dir / "steered";
    REQUIRE(run("decompose --input '" + input.string() +
                    "' --scales 1 --bank zonal --design 'equiangular(12)' --lmax 5 "
                    "--window flat --out '" + pyr.string() + "'",
                dir)
                .code == 0);
    REQUIRE(run("steer --pyramid '" + pyr.string() +
                    "' --rotation 'angle=0.52359877559829882' --mode zonal --out '" +
                    steered.string() + "'",
                dir)
                .code == 0);
    swt_pyramid *p0 = nullptr, *p1 = nullptr;
    REQUIRE(swt_pyramid_load(pyr.string().c_str(), &p0, nullptr) == SWT_OK);
    REQUIRE(swt_pyramid_load(steered.string().c_str(), &p1, nullptr) == SWT_OK);
    std::vector<double> a(2 * 32 * 32), b(a.size());
    for (int n = 0; n < 12; ++n) {
        REQUIRE(swt_pyramid_band(p1, 0, n, a.data(), (int64_t)a.size()) == SWT_OK);
        REQUIRE(swt_pyramid_band(p0, 0, (n + 1) % 12, b.data(), (int64_t)b.size()) == SWT_OK);
        double worst = 0.0;
        for (size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::fabs(a[i] - b[i]));
        CHECK(worst < 1e-9);
    }
    swt_pyramid_free(p0);
    swt_pyramid_free(p1);

    // shaped zonal windows cannot use single-kernel steering
    fs::path cpyr = dir / "cubic-pyr";
    REQUIRE(run("decompose --input '" + input.string() +
                    "' --scales 1 --bank zonal --design 'equiangular(12)' --lmax 5 "
                    "--window cubic --out '" + cpyr.string() + "'",
                dir)
                .code == 0);
    CHECK(run("steer --pyramid '" + cpyr.string() + "' --rotation 'angle=0.3' --mode zonal --out '" +
                  (dir / "nope").string() + "'",
              dir)
              .code == 1);
    CHECK(run("steer --pyramid '" + cpyr.string() +
                  "' --rotation 'angle=0.3' --mode harmonic --out '" + (dir / "nope2").string() +
                  "'",
              dir)
              .code == 1);

    // harmonic mode: identity rotation reproduces every coefficient
    fs::path hpyr = dir / "hpyr";
    fs::path hsteer = dir / "hsteer";
    REQUIRE(run("decompose --input '" + input.string() +
                    "' --scales 1 --bank harmonic --lmax 2 --window cubic --out '" +
                    hpyr.string() + "'",
                dir)
                .code == 0);
    REQUIRE(run("steer --pyramid '" + hpyr.string() + "' --rotation 'angle=0' --mode harmonic "
                    "--out '" + hsteer.string() + "'",
                dir)
                .code == 0);
    swt_pyramid *h0 = nullptr, *h1 = nullptr;
    REQUIRE(swt_pyramid_load(hpyr.string().c_str(), &h0, nullptr) == SWT_OK);
    REQUIRE(swt_pyramid_load(hsteer.string().c_str(), &h1, nullptr) == SWT_OK);
    REQUIRE(swt_pyramid_channels(h0) == 5);
    for (int n = 0; n < 5; ++n) {
        REQUIRE(swt_pyramid_band(h0, 0, n, a.data(), (int64_t)a.size()) == SWT_OK);
        REQUIRE(swt_pyramid_band(h1, 0, n, b.data(), (int64_t)b.size()) == SWT_OK);
        double worst = 0.0;
        for (size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::fabs(a[i] - b[i]));
        CHECK(worst < 1e-12);
    }
    swt_pyramid_free(h0);
    swt_pyramid_free(h1);

    // malformed rotations are usage errors
    CHECK(run("steer --pyramid '" + pyr.string() + "' --rotation 'angle=abc' --mode zonal --out '" +
                  (dir / "nope3").string() + "'",
              dir)
              .code == 1);
    CHECK(run("steer --pyramid '" + pyr.string() + "' --rotation '1,0,0,-1' --mode zonal --out '" +
                  (dir / "nope4").string() + "'",
              dir)
              .code == 1);
}

TEST_CASE("decomposition output is independent of the worker count") {
    fs::path dir = scratch("threads");
    fs::path input = dir / "f.swt";
    REQUIRE(run("make-tensor --shape 32x32 --seed 3 --out '" + input.string() + "'", dir).code == 0);
    std::string base = "decompose --input '" + input.string() +
                       "' --scales 2 --bank zonal --design 'equiangular(12)' --lmax 3 --out '";
    std::string cmd1 = "SWT_THREADS=1 " + std::string(SWT_CLI_PATH) + " " + base +
                       (dir / "pt1").string() + "' > /dev/null 2>&1";
    std::string cmd5 = "SWT_THREADS=5 " + std::string(SWT_CLI_PATH) + " " + base +
                       (dir / "pt5").string() + "' > /dev/null 2>&1";
    REQUIRE(WEXITSTATUS(std::system(cmd1.c_str())) == 0);
    REQUIRE(WEXITSTATUS(std::system(cmd5.c_str())) == 0);
    for (const auto& entry : fs::directory_iterator(dir / "pt1")) {
        fs::path other = dir / "pt5" / entry.path().filename();
        REQUIRE(fs::exists(other));
        CHECK(slurp(entry.path()) == slurp(other));
    }
}

TEST_CASE("selftest subcommand") {
    fs::path dir = scratch("selftest");
    auto r = run("selftest", dir);
    CHECK(r.code == 0);
    int passes = 0;
    size_t pos = 0;
    while ((pos = r.out.find("PASS", pos)) != std::string::npos) {
        ++passes;
        pos += 4;
    }
    CHECK(passes == 10);
    CHECK(r.out.find("FAIL") == std::string::npos);
    CHECK(r.out.find("0 criteria failed") != std::string::npos);
}
