#include "io.hpp"

#include <charconv>
#include <cstring>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "angular.hpp"
#include "common.hpp"

namespace fs = std::filesystem;

namespace swt::io {
namespace {

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        if (c == '"' || c == '\\')
            (out += '\\') += c;
        else if (static_cast<unsigned char>(c) < 0x20) {
            char buf[8];
            std::snprintf(buf, sizeof(buf), "\\u%04x", c);
            out += buf;
        } else
            out += c;
    }
    return out;
}

std::string shape_json(const std::vector<int>& shape) {
    std::string s = "[";
    for (size_t i = 0; i < shape.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(shape[i]);
    }
    return s + "]";
}

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string read_file_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(Status::io, "cannot open '" + path + "'");
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return bytes;
}

std::string checksum_hex(const std::string& bytes) {
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(bytes)));
    return buf;
}

std::int64_t checked_count(const std::vector<int>& shape, const std::string& path) {
    if (shape.empty() || shape.size() > 16)
        fail(Status::io, "tensor '" + path + "': shape rank out of range");
    std::int64_t n = 1;
    for (int s : shape) {
        if (s < 1) fail(Status::io, "tensor '" + path + "': nonpositive extent");
        n *= s;
        if (n > (std::int64_t(1) << 40)) fail(Status::io, "tensor '" + path + "': too large");
    }
    return n;
}

void write_tensor_raw(const std::string& path, const std::vector<int>& shape, const char* dtype,
                      const void* data, std::int64_t bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail(Status::io, "cannot create '" + path + "'");
    // assembled by hand so identical data yields identical bytes
    out << "{\"magic\":\"SWT1\",\"dtype\":\"" << dtype << "\",\"shape\":" << shape_json(shape)
        << "}\n";
    out.write(static_cast<const char*>(data), bytes);
    if (!out) fail(Status::io, "short write to '" + path + "'");
}

std::string band_name(int j, int n) {
    return "band_j" + std::to_string(j) + "_c" + std::to_string(n) + ".swt";
}

}  // namespace

std::int64_t Tensor::count() const {
    std::int64_t n = 1;
    for (int s : shape) n *= s;
    return n;
}

void write_tensor(const std::string& path, const std::vector<int>& shape, const double* data) {
    write_tensor_raw(path, shape, "f64", data, checked_count(shape, path) * 8);
}

void write_tensor(const std::string& path, const std::vector<int>& shape,
                  const std::complex<double>* data) {
    write_tensor_raw(path, shape, "c128", data, checked_count(shape, path) * 16);
}

Tensor read_tensor(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(Status::io, "cannot open '" + path + "'");
    std::string header;
    if (!std::getline(in, header) || header.size() > 65536)
        fail(Status::io, "tensor '" + path + "': missing header line");

    Tensor t;
    try {
        auto j = nlohmann::json::parse(header);
        if (j.at("magic").get<std::string>() != "SWT1")
            fail(Status::io, "tensor '" + path + "': bad magic");
        t.dtype = j.at("dtype").get<std::string>();
        t.shape = j.at("shape").get<std::vector<int>>();
    } catch (const Error&) {
        throw;
    } catch (const std::exception& e) {
        fail(Status::io, "tensor '" + path + "': malformed header (" + e.what() + ")");
    }
    if (t.dtype != "f64" && t.dtype != "c128")
        fail(Status::io, "tensor '" + path + "': unknown dtype '" + t.dtype + "'");

    const std::int64_t n = checked_count(t.shape, path);
    const std::int64_t item = (t.dtype == "f64") ? 8 : 16;
    const std::streampos payload_start = in.tellg();
    in.seekg(0, std::ios::end);
    const std::int64_t have = static_cast<std::int64_t>(in.tellg() - payload_start);
    if (have != n * item)
        fail(Status::io, "tensor '" + path + "': payload is " + std::to_string(have) +
                             " bytes, expected exactly " + std::to_string(n * item));
    in.seekg(payload_start);
    if (t.dtype == "f64") {
        t.f64.resize(n);
        in.read(reinterpret_cast<char*>(t.f64.data()), n * item);
    } else {
        t.c128.resize(n);
        in.read(reinterpret_cast<char*>(t.c128.data()), n * item);
    }
    if (!in) fail(Status::io, "tensor '" + path + "': short read");
    return t;
}

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

void write_csv(const std::string& path, const std::vector<std::string>& columns,
               const std::vector<std::vector<double>>& rows) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);  // binary keeps LF endings
    if (!out) fail(Status::io, "cannot create '" + path + "'");
    for (size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
    out << '\n';
    for (const auto& row : rows) {
        if (row.size() != columns.size()) fail(Status::internal, "write_csv: ragged row");
        for (size_t i = 0; i < row.size(); ++i)
            out << (i ? "," : "") << format_double(row[i]);
        out << '\n';
    }
    if (!out) fail(Status::io, "short write to '" + path + "'");
}

void save_pyramid(const std::string& dir, const frame::Pyramid& pyramid,
                  const frame::SteerableFrame& frame) {
    if (pyramid.signature != frame.signature())
        fail(Status::argument, "save_pyramid: pyramid does not belong to this frame");
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) fail(Status::io, "cannot create directory '" + dir + "': " + ec.message());

    const auto at = [&](const std::string& name) { return (fs::path(dir) / name).string(); };
    for (int j = 0; j < pyramid.J; ++j)
        for (int n = 0; n < pyramid.n_channels; ++n)
            write_tensor(at(band_name(j, n)), pyramid.shape,
                         pyramid.coeff[size_t(j) * pyramid.n_channels + n].data());
    write_tensor(at("lowpass.swt"), pyramid.shape, pyramid.low.data());

    const auto& bank = frame.bank;
    std::string bank_json = "{\"kind\":\"";
    bank_json += (bank.kind == angular::MultiplierBank::Kind::zonal) ? "zonal" : "harmonic";
    bank_json += "\",\"lmax\":" + std::to_string(bank.lmax) + ",\"window\":\"" +
                 json_escape(bank.coeffs.window) + "\",\"coeffs\":[";
    for (int l = 0; l <= bank.lmax; ++l)
        bank_json += (l ? "," : "") + format_double(bank.coeffs.c[l]);
    bank_json += "]";
    if (bank.kind == angular::MultiplierBank::Kind::zonal) {
        designs::save_design(bank.design, at("design.txt"));
        bank_json += ",\"design_file\":\"design.txt\",\"design_source\":\"" +
                     json_escape(bank.design.source) +
                     "\",\"design_strength\":" + std::to_string(bank.design.strength) +
                     ",\"design_checksum\":\"" + checksum_hex(read_file_bytes(at("design.txt"))) +
                     "\"";
    }
    bank_json += "}";

    std::ofstream out(at("manifest.json"), std::ios::binary | std::ios::trunc);
    if (!out) fail(Status::io, "cannot create manifest in '" + dir + "'");
    out << "{\"format\":\"swt-pyramid\",\"version\":1,\"shape\":" << shape_json(pyramid.shape)
        << ",\"J\":" << pyramid.J << ",\"d\":" << frame.d() << ",\"n_max\":" << pyramid.n_channels
        << ",\"bank\":" << bank_json << ",\"radial\":\"" << json_escape(frame.radial.name)
        << "\",\"energy\":" << format_double(pyramid.energy()) << ",\"signature\":\""
        << json_escape(pyramid.signature) << "\"}\n";
    if (!out) fail(Status::io, "short write to manifest in '" + dir + "'");
}

frame::Pyramid load_pyramid(const std::string& dir, PyramidMeta& meta) {
    const auto at = [&](const std::string& name) { return (fs::path(dir) / name).string(); };
    std::string design_file;
    std::string design_checksum;
    int design_strength = 0;
    std::string design_source;
    try {
        auto j = nlohmann::json::parse(read_file_bytes(at("manifest.json")));
        if (j.at("format").get<std::string>() != "swt-pyramid" || j.at("version").get<int>() != 1)
            fail(Status::io, "pyramid '" + dir + "': not a version-1 pyramid container");
        meta.shape = j.at("shape").get<std::vector<int>>();
        meta.J = j.at("J").get<int>();
        meta.d = j.at("d").get<int>();
        meta.n_max = j.at("n_max").get<int>();
        const auto& b = j.at("bank");
        meta.bank_kind = b.at("kind").get<std::string>();
        meta.lmax = b.at("lmax").get<int>();
        meta.window = b.at("window").get<std::string>();
        meta.coeffs = b.at("coeffs").get<std::vector<double>>();
        meta.radial = j.at("radial").get<std::string>();
        meta.energy = j.at("energy").get<double>();
        meta.signature = j.at("signature").get<std::string>();
        if (meta.bank_kind == "zonal") {
            design_file = b.at("design_file").get<std::string>();
            design_checksum = b.at("design_checksum").get<std::string>();
            design_strength = b.at("design_strength").get<int>();
            design_source = b.at("design_source").get<std::string>();
        } else if (meta.bank_kind != "harmonic") {
            fail(Status::io, "pyramid '" + dir + "': unknown bank kind '" + meta.bank_kind + "'");
        }
    } catch (const Error&) {
        throw;
    } catch (const std::exception& e) {
        fail(Status::io, "pyramid '" + dir + "': malformed manifest (" + e.what() + ")");
    }
    if (meta.J < 0 || meta.n_max < 1 || meta.d < 2)
        fail(Status::io, "pyramid '" + dir + "': manifest values out of range");

    if (meta.bank_kind == "zonal") {
        if (design_file.find('/') != std::string::npos || design_file.find("..") == 0)
            fail(Status::io, "pyramid '" + dir + "': design file must live in the container");
        const std::string got = checksum_hex(read_file_bytes(at(design_file)));
        if (got != design_checksum)
            fail(Status::verify, "pyramid '" + dir + "': design checksum mismatch (" + got +
                                     " vs manifest " + design_checksum + ")");
        meta.design = designs::load_design(at(design_file), meta.d, design_strength);
        meta.design.source = design_source;
    }

    // the channel files present must be exactly the manifest's J * n_max
    int band_files = 0;
    for (const auto& entry : fs::directory_iterator(dir)) {
        const std::string name = entry.path().filename().string();
        if (name.rfind("band_", 0) == 0 && name.size() > 4 &&
            name.substr(name.size() - 4) == ".swt")
            ++band_files;
    }
    if (band_files != meta.J * meta.n_max)
        fail(Status::io, "pyramid '" + dir + "': found " + std::to_string(band_files) +
                             " channel files, manifest expects " +
                             std::to_string(meta.J * meta.n_max));

    frame::Pyramid p;
    p.shape = meta.shape;
    p.J = meta.J;
    p.n_channels = meta.n_max;
    p.signature = meta.signature;
    p.coeff.resize(size_t(meta.J) * meta.n_max);
    for (int j = 0; j < meta.J; ++j)
        for (int n = 0; n < meta.n_max; ++n) {
            Tensor t = read_tensor(at(band_name(j, n)));
            if (t.dtype != "c128" || t.shape != meta.shape)
                fail(Status::io, "pyramid '" + dir + "': " + band_name(j, n) +
                                     " has wrong dtype or shape");
            p.coeff[size_t(j) * meta.n_max + n] = std::move(t.c128);
        }
    Tensor low = read_tensor(at("lowpass.swt"));
    if (low.dtype != "c128" || low.shape != meta.shape)
        fail(Status::io, "pyramid '" + dir + "': lowpass has wrong dtype or shape");
    p.low = std::move(low.c128);

    const double e = p.energy();
    if (std::fabs(e - meta.energy) > 1e-9 * std::max(std::fabs(meta.energy), 1e-30))
        fail(Status::verify, "pyramid '" + dir + "': stored energy " + format_double(meta.energy) +
                                 " does not match recomputed " + format_double(e));
    return p;
}

frame::SteerableFrame frame_from_meta(const PyramidMeta& meta) {
    angular::AngularCoeffs cf;
    cf.d = meta.d;
    cf.lmax = meta.lmax;
    cf.c = meta.coeffs;
    cf.window = meta.window;
    angular::MultiplierBank bank = (meta.bank_kind == "zonal")
                                       ? angular::zonal_bank(meta.design, cf)
                                       : angular::harmonic_bank(meta.d, cf);
    auto f = frame::build_frame(meta.shape, meta.J, frame::make_radial(meta.radial), bank);
    if (f.signature() != meta.signature)
        fail(Status::verify, "frame_from_meta: rebuilt frame signature '" + f.signature() +
                                 "' does not match stored '" + meta.signature + "'");
    return f;
}

}  // namespace swt::io
