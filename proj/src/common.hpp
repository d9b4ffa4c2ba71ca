#pragma once
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace swt {

// Failure categories; the C API and the CLI map these onto status/exit codes.
enum class Status {
    ok = 0,
    argument,     // bad parameter, domain violation, shape mismatch
    unsupported,  // valid request outside the implemented surface (e.g. explicit basis for d>3)
    io,           // file missing, parse failure, malformed container
    verify,       // a mathematical verification failed (design strength, partition, manifest energy)
    numeric,      // iteration cap or tolerance not reached (quadrature, eigensolver)
    internal,     // invariant broken inside the library
};

class Error : public std::runtime_error {
public:
    Error(Status s, const std::string& msg) : std::runtime_error(msg), status_(s) {}
    Status status() const { return status_; }

private:
    Status status_;
};

[[noreturn]] inline void fail(Status s, const std::string& msg) { throw Error(s, msg); }

// Worker count for data-parallel loops, from SWT_THREADS. "0" (or an unset or
// unparsable variable) means auto: one worker per hardware thread. Capped at
// 64; negative values fall back to 1.
inline int thread_count() {
    const char* env = std::getenv("SWT_THREADS");
    int n = env ? std::atoi(env) : 0;
    if (env && n < 0) return 1;
    if (!env || n == 0) {
        unsigned hw = std::thread::hardware_concurrency();
        n = hw == 0 ? 1 : static_cast<int>(hw);
    }
    return n > 64 ? 64 : n;
}

// Runs fn(0..count-1), striding the indices over thread_count() workers.  The
// first exception thrown by any worker is rethrown after all of them join.
inline void run_parallel(int count, const std::function<void(int)>& fn) {
    int workers = std::min(thread_count(), count);
    if (workers <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::mutex mu;
    std::exception_ptr first;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            for (int i = w; i < count; i += workers) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(mu);
                    if (!first) first = std::current_exception();
                }
            }
        });
    for (auto& t : pool) t.join();
    if (first) std::rethrow_exception(first);
}

}  // namespace swt
