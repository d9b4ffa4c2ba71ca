// C boundary: every entry point converts Error exceptions into status codes
// and parks the message in a thread-local buffer for swt_last_error().
#include "swt.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstring>
#include <string>
#include <vector>

#include "angular.hpp"
#include "common.hpp"
#include "designs.hpp"
#include "frame.hpp"
#include "io.hpp"
#include "selftest.hpp"
#include "steering.hpp"

using swt::Error;
using swt::Status;

struct swt_design {
    swt::designs::SphericalDesign de;
};
struct swt_bank {
    swt::angular::MultiplierBank bank;
};
struct swt_frame {
    swt::frame::SteerableFrame fr;
    std::string sig;  // cached so swt_frame_signature can hand out a stable pointer
};
struct swt_pyramid {
    swt::frame::Pyramid pyr;
};
struct swt_tensor {
    swt::io::Tensor t;
};

namespace {

thread_local std::string g_last_error;

swt_status to_status(Status s) {
    switch (s) {
        case Status::ok: return SWT_OK;
        case Status::argument: return SWT_ERR_ARGUMENT;
        case Status::unsupported: return SWT_ERR_UNSUPPORTED;
        case Status::io: return SWT_ERR_IO;
        case Status::verify: return SWT_ERR_VERIFY;
        case Status::numeric: return SWT_ERR_NUMERIC;
        case Status::internal: return SWT_ERR_INTERNAL;
    }
    return SWT_ERR_INTERNAL;
}

swt_status fail_c(swt_status s, const char* msg) {
    g_last_error = msg;
    return s;
}

template <class F>
swt_status guarded(F&& body) {
    try {
        return body();
    } catch (const Error& e) {
        g_last_error = e.what();
        return to_status(e.status());
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return SWT_ERR_INTERNAL;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return SWT_ERR_INTERNAL;
    }
}

// Window string -> normalized per-degree weights. Named shapes go through
// window_coeffs; "optimal" (optionally "optimal:<weight>") runs the Gram
// minimizer for the named weight function.
swt::angular::AngularCoeffs coeffs_for_window(const std::string& window, int lmax, int d) {
    std::string name = window, weight = "arccos2";
    auto colon = window.find(':');
    if (colon != std::string::npos) {
        name = window.substr(0, colon);
        weight = window.substr(colon + 1);
    }
    if (name != "optimal") {
        if (colon != std::string::npos)
            swt::fail(Status::argument, "window '" + window + "': only 'optimal' takes a weight");
        return swt::angular::window_coeffs(name, lmax, d);
    }
    if (weight != "arccos2")
        swt::fail(Status::argument, "unknown weight '" + weight + "' (supported: arccos2)");
    auto problem = swt::angular::assemble_gram(d, lmax, [](double t) {
        double a = std::acos(std::clamp(t, -1.0, 1.0));
        return a * a;
    });
    return swt::angular::optimal_coeffs(problem, false);
}

}  // namespace

extern "C" {

const char* swt_version(void) { return "0.1.0"; }

const char* swt_status_name(swt_status status) {
    switch (status) {
        case SWT_OK: return "ok";
        case SWT_ERR_ARGUMENT: return "argument";
        case SWT_ERR_UNSUPPORTED: return "unsupported";
        case SWT_ERR_IO: return "io";
        case SWT_ERR_VERIFY: return "verify";
        case SWT_ERR_NUMERIC: return "numeric";
        case SWT_ERR_INTERNAL: return "internal";
    }
    return "unknown";
}

const char* swt_last_error(void) { return g_last_error.c_str(); }

/* ---- designs ----------------------------------------------------------- */

swt_status swt_design_builtin(const char* name, swt_design** out) {
    if (!name || !out) return fail_c(SWT_ERR_ARGUMENT, "swt_design_builtin: null argument");
    return guarded([&] {
        *out = new swt_design{swt::designs::builtin_design(name)};
        return SWT_OK;
    });
}

swt_status swt_design_load(const char* path, int d, int strength, swt_design** out) {
    if (!path || !out) return fail_c(SWT_ERR_ARGUMENT, "swt_design_load: null argument");
    return guarded([&] {
        *out = new swt_design{swt::designs::load_design(path, d, strength)};
        return SWT_OK;
    });
}

swt_status swt_design_save(const swt_design* design, const char* path) {
    if (!design || !path) return fail_c(SWT_ERR_ARGUMENT, "swt_design_save: null argument");
    return guarded([&] {
        swt::designs::save_design(design->de, path);
        return SWT_OK;
    });
}

int swt_design_dim(const swt_design* design) { return design ? design->de.d : 0; }
int swt_design_strength(const swt_design* design) { return design ? design->de.strength : 0; }
int swt_design_size(const swt_design* design) { return design ? design->de.n() : 0; }

swt_status swt_design_points(const swt_design* design, double* out, int64_t capacity) {
    if (!design || !out) return fail_c(SWT_ERR_ARGUMENT, "swt_design_points: null argument");
    const auto& pts = design->de.points;
    if (capacity < static_cast<int64_t>(pts.size()))
        return fail_c(SWT_ERR_ARGUMENT, "swt_design_points: capacity too small");
    std::memcpy(out, pts.data(), pts.size() * sizeof(double));
    return SWT_OK;
}

swt_status swt_design_verify(const swt_design* design, int t, double* residuals, double* worst,
                             int* pass) {
    if (!design) return fail_c(SWT_ERR_ARGUMENT, "swt_design_verify: null design");
    return guarded([&] {
        auto rep = swt::designs::verify_design(design->de, t);
        if (residuals)
            for (size_t i = 0; i < rep.residual.size(); ++i) residuals[i] = rep.residual[i];
        if (worst) *worst = rep.worst;
        if (pass) *pass = rep.pass ? 1 : 0;
        return SWT_OK;
    });
}

void swt_design_free(swt_design* design) { delete design; }

/* ---- banks ------------------------------------------------------------- */

swt_status swt_window_coeffs(const char* window, int lmax, int d, double* out) {
    if (!window || !out) return fail_c(SWT_ERR_ARGUMENT, "swt_window_coeffs: null argument");
    return guarded([&] {
        auto c = swt::angular::window_coeffs(window, lmax, d);
        std::memcpy(out, c.c.data(), c.c.size() * sizeof(double));
        return SWT_OK;
    });
}

swt_status swt_optimal_window(int d, int lmax, const char* weight, int maximize, double* out) {
    if (!weight || !out) return fail_c(SWT_ERR_ARGUMENT, "swt_optimal_window: null argument");
    return guarded([&] {
        auto c = coeffs_for_window(std::string("optimal:") + weight, lmax, d);
        if (maximize) {
            auto problem = swt::angular::assemble_gram(d, lmax, [](double t) {
                double a = std::acos(std::clamp(t, -1.0, 1.0));
                return a * a;
            });
            c = swt::angular::optimal_coeffs(problem, true);
        }
        std::memcpy(out, c.c.data(), c.c.size() * sizeof(double));
        return SWT_OK;
    });
}

swt_status swt_bank_zonal(const swt_design* design, int lmax, const char* window, swt_bank** out) {
    if (!design || !window || !out)
        return fail_c(SWT_ERR_ARGUMENT, "swt_bank_zonal: null argument");
    return guarded([&] {
        auto coeffs = coeffs_for_window(window, lmax, design->de.d);
        *out = new swt_bank{swt::angular::zonal_bank(design->de, coeffs)};
        return SWT_OK;
    });
}

swt_status swt_bank_zonal_custom(const swt_design* design, int lmax, const double* weights,
                                 swt_bank** out) {
    if (!design || !weights || !out)
        return fail_c(SWT_ERR_ARGUMENT, "swt_bank_zonal_custom: null argument");
    if (lmax < 0) return fail_c(SWT_ERR_ARGUMENT, "swt_bank_zonal_custom: lmax must be >= 0");
    return guarded([&] {
        std::vector<double> w(weights, weights + lmax + 1);
        *out = new swt_bank{
            swt::angular::zonal_bank(design->de, swt::angular::coeffs_from(design->de.d, w))};
        return SWT_OK;
    });
}

swt_status swt_bank_harmonic(int d, int lmax, const char* window, swt_bank** out) {
    if (!window || !out) return fail_c(SWT_ERR_ARGUMENT, "swt_bank_harmonic: null argument");
    return guarded([&] {
        auto coeffs = coeffs_for_window(window, lmax, d);
        *out = new swt_bank{swt::angular::harmonic_bank(d, coeffs)};
        return SWT_OK;
    });
}

swt_status swt_bank_harmonic_custom(int d, int lmax, const double* weights, swt_bank** out) {
    if (!weights || !out) return fail_c(SWT_ERR_ARGUMENT, "swt_bank_harmonic_custom: null argument");
    if (lmax < 0) return fail_c(SWT_ERR_ARGUMENT, "swt_bank_harmonic_custom: lmax must be >= 0");
    return guarded([&] {
        std::vector<double> w(weights, weights + lmax + 1);
        *out = new swt_bank{swt::angular::harmonic_bank(d, swt::angular::coeffs_from(d, w))};
        return SWT_OK;
    });
}

int swt_bank_channels(const swt_bank* bank) { return bank ? bank->bank.n_channels() : 0; }
int swt_bank_dim(const swt_bank* bank) { return bank ? bank->bank.d : 0; }
int swt_bank_lmax(const swt_bank* bank) { return bank ? bank->bank.lmax : 0; }

swt_status swt_bank_weights(const swt_bank* bank, double* out) {
    if (!bank || !out) return fail_c(SWT_ERR_ARGUMENT, "swt_bank_weights: null argument");
    std::memcpy(out, bank->bank.coeffs.c.data(), bank->bank.coeffs.c.size() * sizeof(double));
    return SWT_OK;
}

swt_status swt_bank_eval(const swt_bank* bank, const double* w, double* out) {
    if (!bank || !w || !out) return fail_c(SWT_ERR_ARGUMENT, "swt_bank_eval: null argument");
    return guarded([&] {
        auto values = bank->bank.eval(w);
        std::memcpy(out, values.data(), values.size() * sizeof(double));
        return SWT_OK;
    });
}

swt_status swt_bank_partition_residual(const swt_bank* bank, int samples, double* worst) {
    if (!bank || !worst)
        return fail_c(SWT_ERR_ARGUMENT, "swt_bank_partition_residual: null argument");
    return guarded([&] {
        *worst = swt::angular::verify_partition(bank->bank, samples);
        return SWT_OK;
    });
}

void swt_bank_free(swt_bank* bank) { delete bank; }

swt_status swt_kernel_profile(int d, int lmax, int nmax, const double* weights,
                              const double* theta, int64_t count, double* out) {
    if (!weights || !theta || !out)
        return fail_c(SWT_ERR_ARGUMENT, "swt_kernel_profile: null argument");
    if (lmax < 0 || count < 0) return fail_c(SWT_ERR_ARGUMENT, "swt_kernel_profile: bad sizes");
    return guarded([&] {
        std::vector<double> w(weights, weights + lmax + 1);
        std::vector<double> grid(theta, theta + count);
        auto pairs =
            swt::angular::kernel_profile(swt::angular::coeffs_from(d, w), nmax, grid);
        for (int64_t i = 0; i < count; ++i) out[i] = pairs[static_cast<size_t>(i)].second;
        return SWT_OK;
    });
}

swt_status swt_steering_kernel_profile(int d, int lmax, int nmax, const double* theta,
                                       int64_t count, double* out) {
    if (!theta || !out) return fail_c(SWT_ERR_ARGUMENT, "swt_steering_kernel_profile: null argument");
    if (count < 0) return fail_c(SWT_ERR_ARGUMENT, "swt_steering_kernel_profile: bad count");
    return guarded([&] {
        for (int64_t i = 0; i < count; ++i)
            out[i] = swt::angular::steering_kernel(d, lmax, nmax, std::cos(theta[i]));
        return SWT_OK;
    });
}

/* ---- frames and pyramids ------------------------------------------------ */

swt_status swt_frame_build(const int* shape, int d, int scales, const char* radial,
                           const swt_bank* bank, swt_frame** out) {
    if (!shape || !radial || !bank || !out)
        return fail_c(SWT_ERR_ARGUMENT, "swt_frame_build: null argument");
    if (d < 1) return fail_c(SWT_ERR_ARGUMENT, "swt_frame_build: d must be >= 1");
    return guarded([&] {
        std::vector<int> sh(shape, shape + d);
        auto fr = swt::frame::build_frame(sh, scales, swt::frame::make_radial(radial), bank->bank);
        auto* handle = new swt_frame{std::move(fr), ""};
        handle->sig = handle->fr.signature();
        *out = handle;
        return SWT_OK;
    });
}

int swt_frame_dim(const swt_frame* frame) { return frame ? frame->fr.d() : 0; }
int swt_frame_scales(const swt_frame* frame) { return frame ? frame->fr.J : 0; }
int swt_frame_channels(const swt_frame* frame) { return frame ? frame->fr.n_channels() : 0; }
int64_t swt_frame_value_count(const swt_frame* frame) { return frame ? frame->fr.size() : 0; }
const char* swt_frame_signature(const swt_frame* frame) { return frame ? frame->sig.c_str() : ""; }
void swt_frame_free(swt_frame* frame) { delete frame; }

swt_status swt_analyze(const swt_frame* frame, const double* signal, int64_t count,
                       swt_pyramid** out) {
    if (!frame || !signal || !out) return fail_c(SWT_ERR_ARGUMENT, "swt_analyze: null argument");
    if (count != frame->fr.size())
        return fail_c(SWT_ERR_ARGUMENT, "swt_analyze: signal length does not match the grid");
    return guarded([&] {
        std::vector<double> f(signal, signal + count);
        *out = new swt_pyramid{swt::frame::analyze(f, frame->fr)};
        return SWT_OK;
    });
}

swt_status swt_synthesize(const swt_pyramid* pyramid, const swt_frame* frame, double* out,
                          int64_t capacity) {
    if (!pyramid || !frame || !out)
        return fail_c(SWT_ERR_ARGUMENT, "swt_synthesize: null argument");
    if (capacity < frame->fr.size())
        return fail_c(SWT_ERR_ARGUMENT, "swt_synthesize: capacity too small");
    return guarded([&] {
        auto rec = swt::frame::synthesize(pyramid->pyr, frame->fr);
        std::memcpy(out, rec.data(), rec.size() * sizeof(double));
        return SWT_OK;
    });
}

int swt_pyramid_dim(const swt_pyramid* pyramid) {
    return pyramid ? static_cast<int>(pyramid->pyr.shape.size()) : 0;
}

swt_status swt_pyramid_shape(const swt_pyramid* pyramid, int* out) {
    if (!pyramid || !out) return fail_c(SWT_ERR_ARGUMENT, "swt_pyramid_shape: null argument");
    for (size_t i = 0; i < pyramid->pyr.shape.size(); ++i) out[i] = pyramid->pyr.shape[i];
    return SWT_OK;
}

int swt_pyramid_scales(const swt_pyramid* pyramid) { return pyramid ? pyramid->pyr.J : 0; }
int swt_pyramid_channels(const swt_pyramid* pyramid) {
    return pyramid ? pyramid->pyr.n_channels : 0;
}
double swt_pyramid_energy(const swt_pyramid* pyramid) {
    return pyramid ? pyramid->pyr.energy() : 0.0;
}
const char* swt_pyramid_signature(const swt_pyramid* pyramid) {
    return pyramid ? pyramid->pyr.signature.c_str() : "";
}

swt_status swt_pyramid_band(const swt_pyramid* pyramid, int scale, int channel, double* out,
                            int64_t capacity) {
    if (!pyramid || !out) return fail_c(SWT_ERR_ARGUMENT, "swt_pyramid_band: null argument");
    const auto& p = pyramid->pyr;
    if (scale < 0 || scale >= p.J || channel < 0 || channel >= p.n_channels)
        return fail_c(SWT_ERR_ARGUMENT, "swt_pyramid_band: scale or channel out of range");
    const auto& arr = p.coeff[static_cast<size_t>(scale) * p.n_channels + channel];
    if (capacity < static_cast<int64_t>(2 * arr.size()))
        return fail_c(SWT_ERR_ARGUMENT, "swt_pyramid_band: capacity too small");
    std::memcpy(out, arr.data(), arr.size() * sizeof(std::complex<double>));
    return SWT_OK;
}

swt_status swt_pyramid_lowpass(const swt_pyramid* pyramid, double* out, int64_t capacity) {
    if (!pyramid || !out) return fail_c(SWT_ERR_ARGUMENT, "swt_pyramid_lowpass: null argument");
    const auto& arr = pyramid->pyr.low;
    if (capacity < static_cast<int64_t>(2 * arr.size()))
        return fail_c(SWT_ERR_ARGUMENT, "swt_pyramid_lowpass: capacity too small");
    std::memcpy(out, arr.data(), arr.size() * sizeof(std::complex<double>));
    return SWT_OK;
}

void swt_pyramid_free(swt_pyramid* pyramid) { delete pyramid; }

swt_status swt_pyramid_save(const swt_pyramid* pyramid, const swt_frame* frame, const char* dir) {
    if (!pyramid || !frame || !dir)
        return fail_c(SWT_ERR_ARGUMENT, "swt_pyramid_save: null argument");
    return guarded([&] {
        swt::io::save_pyramid(dir, pyramid->pyr, frame->fr);
        return SWT_OK;
    });
}

swt_status swt_pyramid_load(const char* dir, swt_pyramid** out, swt_frame** frame_out) {
    if (!dir || !out) return fail_c(SWT_ERR_ARGUMENT, "swt_pyramid_load: null argument");
    return guarded([&] {
        swt::io::PyramidMeta meta;
        auto pyr = swt::io::load_pyramid(dir, meta);
        swt_frame* fr_handle = nullptr;
        if (frame_out) {
            auto fr = swt::io::frame_from_meta(meta);
            fr_handle = new swt_frame{std::move(fr), ""};
            fr_handle->sig = fr_handle->fr.signature();
        }
        *out = new swt_pyramid{std::move(pyr)};
        if (frame_out) *frame_out = fr_handle;
        return SWT_OK;
    });
}

/* ---- steering ----------------------------------------------------------- */

swt_status swt_steer(const swt_pyramid* pyramid, const swt_frame* frame, const char* rotation,
                     const char* mode, swt_pyramid** out) {
    if (!pyramid || !frame || !rotation || !mode || !out)
        return fail_c(SWT_ERR_ARGUMENT, "swt_steer: null argument");
    return guarded([&] {
        auto R = swt::steering::parse_rotation(frame->fr.d(), rotation);
        swt::steering::SteeringMatrix S;
        std::string m(mode);
        if (m == "zonal")
            S = swt::steering::steering_matrix_zonal(frame->fr.bank, R);
        else if (m == "harmonic")
            S = swt::steering::steering_matrix_harmonic(frame->fr.bank, R);
        else
            swt::fail(Status::argument, "swt_steer: mode must be 'zonal' or 'harmonic'");
        *out = new swt_pyramid{swt::steering::steer_pyramid(pyramid->pyr, S)};
        return SWT_OK;
    });
}

/* ---- tensor files ------------------------------------------------------- */

swt_status swt_tensor_read(const char* path, swt_tensor** out) {
    if (!path || !out) return fail_c(SWT_ERR_ARGUMENT, "swt_tensor_read: null argument");
    return guarded([&] {
        *out = new swt_tensor{swt::io::read_tensor(path)};
        return SWT_OK;
    });
}

swt_status swt_tensor_write(const char* path, const char* dtype, const int* shape, int d,
                            const double* data) {
    if (!path || !dtype || !shape || !data)
        return fail_c(SWT_ERR_ARGUMENT, "swt_tensor_write: null argument");
    if (d < 1) return fail_c(SWT_ERR_ARGUMENT, "swt_tensor_write: rank must be >= 1");
    return guarded([&] {
        std::vector<int> sh(shape, shape + d);
        std::string dt(dtype);
        if (dt == "f64")
            swt::io::write_tensor(path, sh, data);
        else if (dt == "c128")
            swt::io::write_tensor(path, sh, reinterpret_cast<const std::complex<double>*>(data));
        else
            swt::fail(Status::argument, "swt_tensor_write: dtype must be 'f64' or 'c128'");
        return SWT_OK;
    });
}

int swt_tensor_dim(const swt_tensor* tensor) {
    return tensor ? static_cast<int>(tensor->t.shape.size()) : 0;
}

swt_status swt_tensor_shape(const swt_tensor* tensor, int* out) {
    if (!tensor || !out) return fail_c(SWT_ERR_ARGUMENT, "swt_tensor_shape: null argument");
    for (size_t i = 0; i < tensor->t.shape.size(); ++i) out[i] = tensor->t.shape[i];
    return SWT_OK;
}

const char* swt_tensor_dtype(const swt_tensor* tensor) {
    return tensor ? tensor->t.dtype.c_str() : "";
}

int64_t swt_tensor_count(const swt_tensor* tensor) { return tensor ? tensor->t.count() : 0; }

const double* swt_tensor_data(const swt_tensor* tensor) {
    if (!tensor) return nullptr;
    if (tensor->t.dtype == "f64") return tensor->t.f64.data();
    return reinterpret_cast<const double*>(tensor->t.c128.data());
}

void swt_tensor_free(swt_tensor* tensor) { delete tensor; }

swt_status swt_write_csv(const char* path, const char* header, const double* values, int64_t rows,
                         int cols) {
    if (!path || !header || !values) return fail_c(SWT_ERR_ARGUMENT, "swt_write_csv: null argument");
    if (rows < 0 || cols < 1) return fail_c(SWT_ERR_ARGUMENT, "swt_write_csv: bad table size");
    return guarded([&] {
        std::vector<std::string> columns;
        std::string h(header);
        size_t start = 0;
        while (true) {
            size_t comma = h.find(',', start);
            columns.push_back(h.substr(start, comma - start));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (static_cast<int>(columns.size()) != cols)
            swt::fail(Status::argument, "swt_write_csv: header column count does not match cols");
        std::vector<std::vector<double>> table(static_cast<size_t>(rows));
        for (int64_t r = 0; r < rows; ++r)
            table[static_cast<size_t>(r)].assign(values + r * cols, values + (r + 1) * cols);
        swt::io::write_csv(path, columns, table);
        return SWT_OK;
    });
}

/* ---- self-verification --------------------------------------------------- */

swt_status swt_selftest(swt_selftest_cb cb, void* user, int* failures) {
    return guarded([&] {
        int failed = 0;
        swt::selftest::run_all([&](const swt::selftest::Criterion& c) {
            if (!c.pass) ++failed;
            if (cb)
                cb(user, c.index, c.name.c_str(), c.measured, c.tolerance, c.pass ? 1 : 0,
                   c.seconds, c.note.c_str());
        });
        if (failures) *failures = failed;
        return SWT_OK;
    });
}

}  // extern "C"
