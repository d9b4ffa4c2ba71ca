#include "dft.hpp"

#include <fftw3.h>

#include <cstdint>
#include <map>
#include <mutex>

#include "common.hpp"

namespace swt::dft {
namespace {

// FFTW's planner is the only non-reentrant part of the library; guard it and
// cache one in-place plan per (shape, direction).  FFTW_UNALIGNED lets the
// cached plan run on any caller buffer via the new-array interface.
std::mutex planner_mutex;
std::map<std::pair<std::vector<int>, int>, fftw_plan> plan_cache;

std::int64_t total_size(const std::vector<int>& shape) {
    std::int64_t n = 1;
    for (int s : shape) {
        if (s < 1) fail(Status::argument, "dft: grid sides must be positive");
        n *= s;
    }
    return n;
}

fftw_plan plan_for(const std::vector<int>& shape, int sign) {
    std::lock_guard<std::mutex> lock(planner_mutex);
    auto key = std::make_pair(shape, sign);
    auto it = plan_cache.find(key);
    if (it != plan_cache.end()) return it->second;
    std::vector<std::complex<double>> scratch(total_size(shape));
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    fftw_plan p = fftw_plan_dft(static_cast<int>(shape.size()), shape.data(), buf, buf, sign,
                                FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!p) fail(Status::internal, "dft: fftw_plan_dft returned null");
    plan_cache.emplace(std::move(key), p);
    return p;
}

}  // namespace

void forward(const std::vector<int>& shape, std::complex<double>* data) {
    auto* buf = reinterpret_cast<fftw_complex*>(data);
    fftw_execute_dft(plan_for(shape, FFTW_FORWARD), buf, buf);
}

void inverse(const std::vector<int>& shape, std::complex<double>* data) {
    auto* buf = reinterpret_cast<fftw_complex*>(data);
    fftw_execute_dft(plan_for(shape, FFTW_BACKWARD), buf, buf);
    const double scale = 1.0 / static_cast<double>(total_size(shape));
    const std::int64_t n = total_size(shape);
    for (std::int64_t i = 0; i < n; ++i) data[i] *= scale;
}

}  // namespace swt::dft
