#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>

#include <doctest.h>

#include "angular.hpp"
#include "common.hpp"
#include "designs.hpp"
#include "frame.hpp"
#include "io.hpp"

namespace an = swt::angular;
namespace ds = swt::designs;
namespace fr = swt::frame;
namespace io = swt::io;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    fs::path p = fs::temp_directory_path() / "swt-io-tests" / name;
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(bool(in));
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

void spit(const fs::path& p, const std::string& bytes) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    out.write(bytes.data(), bytes.size());
}

}  // namespace

TEST_CASE("tensor files round-trip bit-exactly") {
    auto dir = scratch("tensor");
    std::mt19937_64 rng(1);
    std::normal_distribution<double> g(0.0, 1.0);

    std::vector<double> data(3 * 4 * 5);
    for (auto& v : data) v = g(rng);
    auto p1 = (dir / "a.swt").string();
    io::write_tensor(p1, {3, 4, 5}, data.data());
    auto t = io::read_tensor(p1);
    CHECK(t.dtype == "f64");
    CHECK(t.shape == std::vector<int>{3, 4, 5});
    CHECK(std::memcmp(t.f64.data(), data.data(), data.size() * 8) == 0);

    // write -> read -> write yields identical bytes
    auto p2 = (dir / "b.swt").string();
    io::write_tensor(p2, t.shape, t.f64.data());
    CHECK(slurp(p1) == slurp(p2));

    std::vector<std::complex<double>> cdata(6);
    for (auto& z : cdata) z = {g(rng), g(rng)};
    auto p3 = (dir / "c.swt").string();
    io::write_tensor(p3, {2, 3}, cdata.data());
    auto tc = io::read_tensor(p3);
    CHECK(tc.dtype == "c128");
    CHECK(std::memcmp(tc.c128.data(), cdata.data(), cdata.size() * 16) == 0);
}

TEST_CASE("tensor header bytes are pinned") {
    auto dir = scratch("header");
    double v[4] = {0.0, 1.0, 2.0, 3.0};
    auto p = (dir / "t.swt").string();
    io::write_tensor(p, {2, 2}, v);
    auto bytes = slurp(p);
    const std::string header = "{\"magic\":\"SWT1\",\"dtype\":\"f64\",\"shape\":[2,2]}\n";
    CHECK(bytes.substr(0, header.size()) == header);
    CHECK(bytes.size() == header.size() + 32);
}

TEST_CASE("tensor reader rejects malformed files") {
    auto dir = scratch("bad");
    CHECK_THROWS_AS(io::read_tensor((dir / "absent.swt").string()), swt::Error);

    auto path = (dir / "t.swt").string();
    double v[2] = {1.0, 2.0};
    io::write_tensor(path, {2}, v);
    auto good = slurp(path);

    spit(dir / "magic.swt", "{\"magic\":\"NOPE\",\"dtype\":\"f64\",\"shape\":[2]}\n" +
                                good.substr(good.find('\n') + 1));
    CHECK_THROWS_AS(io::read_tensor((dir / "magic.swt").string()), swt::Error);

    spit(dir / "dtype.swt", "{\"magic\":\"SWT1\",\"dtype\":\"f32\",\"shape\":[2]}\n" +
                                good.substr(good.find('\n') + 1));
    CHECK_THROWS_AS(io::read_tensor((dir / "dtype.swt").string()), swt::Error);

    spit(dir / "short.swt", good.substr(0, good.size() - 1));
    CHECK_THROWS_AS(io::read_tensor((dir / "short.swt").string()), swt::Error);

    spit(dir / "long.swt", good + "x");
    CHECK_THROWS_AS(io::read_tensor((dir / "long.swt").string()), swt::Error);

    spit(dir / "zero.swt", "{\"magic\":\"SWT1\",\"dtype\":\"f64\",\"shape\":[0]}\n");
    CHECK_THROWS_AS(io::read_tensor((dir / "zero.swt").string()), swt::Error);

    spit(dir / "mangle.swt", "{\"magic\":\"SWT1\",\"dtype\":\n");
    CHECK_THROWS_AS(io::read_tensor((dir / "mangle.swt").string()), swt::Error);

    for (const char* name : {"magic.swt", "dtype.swt", "short.swt", "long.swt", "zero.swt"}) {
        try {
            io::read_tensor((dir / name).string());
        } catch (const swt::Error& e) {
            CHECK(e.status() == swt::Status::io);
        }
    }
}

TEST_CASE("double formatting is exact and locale-proof") {
    CHECK(io::format_double(0.5) == "0.5");
    CHECK(io::format_double(-2.0) == "-2");
    CHECK(io::format_double(1.0 / 3.0) == "0.33333333333333331");
    CHECK(io::format_double(3.141592653589793) == "3.1415926535897931");
    // every double survives the text round trip
    std::mt19937_64 rng(5);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        double v = g(rng) * std::pow(10.0, int(rng() % 41) - 20);
        CHECK(std::stod(io::format_double(v)) == v);
    }
}

TEST_CASE("csv output is byte-stable") {
    auto dir = scratch("csv");
    auto p = (dir / "k.csv").string();
    io::write_csv(p, {"theta", "lambda"}, {{0.0, 1.0}, {0.5, 0.25}, {1.0, -0.125}});
    CHECK(slurp(p) == "theta,lambda\n0,1\n0.5,0.25\n1,-0.125\n");
}

TEST_CASE("pyramid containers round-trip") {
    auto dir = scratch("pyr");
    auto bank = an::zonal_bank(ds::builtin_design("equiangular(12)"),
                               an::window_coeffs("cubic", 3, 2));
    auto frame = fr::build_frame({32, 32}, 2, fr::make_radial("meyer-smooth"), bank);
    std::mt19937_64 rng(9);
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<double> sig(1024);
    for (auto& v : sig) v = g(rng);
    auto p = fr::analyze(sig, frame);

    auto d1 = (dir / "p1").string();
    io::save_pyramid(d1, p, frame);
    io::PyramidMeta meta;
    auto q = io::load_pyramid(d1, meta);

    CHECK(meta.bank_kind == "zonal");
    CHECK(meta.window == "cubic");
    CHECK(meta.radial == "meyer-smooth");
    CHECK(meta.n_max == 12);
    CHECK(meta.design.source == "equiangular(12)");
    CHECK(q.signature == p.signature);
    for (size_t t = 0; t < p.coeff.size(); ++t)
        CHECK(std::memcmp(q.coeff[t].data(), p.coeff[t].data(), 1024 * 16) == 0);
    CHECK(std::memcmp(q.low.data(), p.low.data(), 1024 * 16) == 0);

    // save the loaded copy: every file byte-identical
    auto rebuilt = io::frame_from_meta(meta);
    auto d2 = (dir / "p2").string();
    io::save_pyramid(d2, q, rebuilt);
    for (const auto& entry : fs::directory_iterator(d1)) {
        auto name = entry.path().filename();
        CHECK(slurp(entry.path()) == slurp(fs::path(d2) / name));
    }

    // and the rebuilt frame reconstructs the signal
    auto rec = fr::synthesize(q, rebuilt);
    double num = 0.0, den = 0.0;
    for (int i = 0; i < 1024; ++i) {
        num += (rec[i] - sig[i]) * (rec[i] - sig[i]);
        den += sig[i] * sig[i];
    }
    CHECK(std::sqrt(num / den) < 1e-9);
}

TEST_CASE("harmonic pyramid containers skip the design file") {
    auto dir = scratch("pyrh");
    auto bank = an::harmonic_bank(3, an::window_coeffs("bspline1", 2, 3));
    auto frame = fr::build_frame({8, 8, 8}, 0, fr::make_radial("simoncelli-logcos"), bank);
    std::vector<double> sig(512, 1.0);
    auto p = fr::analyze(sig, frame);
    auto d1 = (dir / "p").string();
    io::save_pyramid(d1, p, frame);
    CHECK(!fs::exists(fs::path(d1) / "design.txt"));

    io::PyramidMeta meta;
    auto q = io::load_pyramid(d1, meta);
    CHECK(meta.bank_kind == "harmonic");
    CHECK(meta.J == 0);
    CHECK(q.coeff.empty());
    auto rebuilt = io::frame_from_meta(meta);
    CHECK(rebuilt.signature() == meta.signature);
}

TEST_CASE("tampered containers are refused") {
    auto dir = scratch("tamper");
    auto bank = an::zonal_bank(ds::builtin_design("equiangular(8)"),
                               an::window_coeffs("flat", 3, 2));
    auto frame = fr::build_frame({16, 16}, 1, fr::make_radial("meyer-smooth"), bank);
    std::vector<double> sig(256);
    std::mt19937_64 rng(13);
    std::normal_distribution<double> g(0.0, 1.0);
    for (auto& v : sig) v = g(rng);
    auto p = fr::analyze(sig, frame);

    io::PyramidMeta meta;

    SUBCASE("scaled coefficients break the stored energy") {
        auto d = (dir / "energy").string();
        io::save_pyramid(d, p, frame);
        auto t = io::read_tensor((fs::path(d) / "band_j0_c3.swt").string());
        for (auto& z : t.c128) z *= 1.001;
        io::write_tensor((fs::path(d) / "band_j0_c3.swt").string(), t.shape, t.c128.data());
        CHECK_THROWS_AS(io::load_pyramid(d, meta), swt::Error);
        try {
            io::load_pyramid(d, meta);
        } catch (const swt::Error& e) {
            CHECK(e.status() == swt::Status::verify);
        }
    }

    SUBCASE("edited design points break the checksum") {
        auto d = (dir / "design").string();
        io::save_pyramid(d, p, frame);
        auto bytes = slurp(fs::path(d) / "design.txt");
        bytes[bytes.find('.') + 1] ^= 1;  // flip one digit
        spit(fs::path(d) / "design.txt", bytes);
        try {
            io::load_pyramid(d, meta);
            FAIL("checksum mismatch not detected");
        } catch (const swt::Error& e) {
            CHECK(e.status() == swt::Status::verify);
            CHECK(std::string(e.what()).find("checksum") != std::string::npos);
        }
    }

    SUBCASE("missing and surplus channel files are counted") {
        auto d = (dir / "count").string();
        io::save_pyramid(d, p, frame);
        fs::copy_file(fs::path(d) / "band_j0_c0.swt", fs::path(d) / "band_j0_c99.swt");
        CHECK_THROWS_AS(io::load_pyramid(d, meta), swt::Error);
        fs::remove(fs::path(d) / "band_j0_c99.swt");
        fs::remove(fs::path(d) / "band_j0_c1.swt");
        CHECK_THROWS_AS(io::load_pyramid(d, meta), swt::Error);
    }

    SUBCASE("manifest signature is tied to the frame") {
        auto d = (dir / "sig").string();
        io::save_pyramid(d, p, frame);
        auto manifest = slurp(fs::path(d) / "manifest.json");
        auto pos = manifest.find("meyer-smooth");
        manifest.replace(pos, 12, "meyer-smoot2");
        spit(fs::path(d) / "manifest.json", manifest);
        // radial name appears in manifest and signature; the first hit breaks the
        // signature match when rebuilding
        io::PyramidMeta m2;
        try {
            auto q = io::load_pyramid(d, m2);
            auto f2 = io::frame_from_meta(m2);
            FAIL("mismatch not detected");
        } catch (const swt::Error& e) {
            CHECK((e.status() == swt::Status::verify || e.status() == swt::Status::argument));
        }
    }
}

TEST_CASE("custom-weight pyramids carry their exact coefficients") {
    auto dir = scratch("opt");
    auto problem = an::assemble_gram(2, 3, [](double t) {
        double a = std::acos(std::min(1.0, std::max(-1.0, t)));
        return a * a + 1e-300;
    });
    auto coeffs = an::optimal_coeffs(problem, false);
    auto bank = an::harmonic_bank(2, coeffs);
    auto frame = fr::build_frame({16, 16}, 1, fr::make_radial("meyer-smooth"), bank);
    std::vector<double> sig(256, 0.0);
    sig[40] = 1.0;
    auto p = fr::analyze(sig, frame);
    auto d = (dir / "p").string();
    io::save_pyramid(d, p, frame);

    io::PyramidMeta meta;
    io::load_pyramid(d, meta);
    CHECK(meta.window == "optimal");
    REQUIRE(meta.coeffs.size() == 4);
    for (int l = 0; l <= 3; ++l) CHECK(meta.coeffs[l] == coeffs.c[l]);  // bit-exact
    auto rebuilt = io::frame_from_meta(meta);
    CHECK(rebuilt.signature() == frame.signature());
}
