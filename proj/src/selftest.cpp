#include "selftest.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>

#include "angular.hpp"
#include "common.hpp"
#include "designs.hpp"
#include "frame.hpp"
#include "numerics.hpp"
#include "sphmath.hpp"
#include "steering.hpp"

namespace swt::selftest {
namespace {

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

void randn(std::mt19937_64& rng, std::vector<double>& out) {
    std::normal_distribution<double> g(0.0, 1.0);
    for (auto& v : out) v = g(rng);
}

std::vector<double> rand_direction(std::mt19937_64& rng, int d) {
    std::vector<double> v(d);
    double n2 = 0.0;
    do {
        randn(rng, v);
        n2 = 0.0;
        for (double x : v) n2 += x * x;
    } while (n2 < 1e-12);
    double inv = 1.0 / std::sqrt(n2);
    for (auto& x : v) x *= inv;
    return v;
}

steering::Rotation rand_rotation(std::mt19937_64& rng, int d) {
    std::uniform_real_distribution<double> ang(0.0, 2.0 * M_PI);
    if (d == 2) return steering::rotation_from_angle(ang(rng));
    auto axis = rand_direction(rng, 3);
    return steering::rotation_from_axis_angle(axis.data(), ang(rng));
}

double elapsed_since(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Independent dense eigensolver used only to cross-check optimal_coeffs:
// cyclic Jacobi sweeps until the off-diagonal mass vanishes. Deliberately a
// different algorithm from the Householder/QL path inside num::sym_eig.
void jacobi_eig_local(const num::Mat& A, std::vector<double>& eval, num::Mat& V) {
    const int n = A.rows;
    num::Mat B = A;
    V = num::Mat::identity(n);
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += B(p, q) * B(p, q);
        if (off < 1e-28) break;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                if (std::fabs(B(p, q)) < 1e-300) continue;
                double theta = (B(q, q) - B(p, p)) / (2.0 * B(p, q));
                double t = (theta >= 0.0 ? 1.0 : -1.0) /
                           (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                double cs = 1.0 / std::sqrt(t * t + 1.0), sn = t * cs;
                for (int k = 0; k < n; ++k) {
                    double bpk = B(p, k), bqk = B(q, k);
                    B(p, k) = cs * bpk - sn * bqk;
                    B(q, k) = sn * bpk + cs * bqk;
                }
                for (int k = 0; k < n; ++k) {
                    double bkp = B(k, p), bkq = B(k, q);
                    B(k, p) = cs * bkp - sn * bkq;
                    B(k, q) = sn * bkp + cs * bkq;
                }
                for (int k = 0; k < n; ++k) {
                    double vkp = V(k, p), vkq = V(k, q);
                    V(k, p) = cs * vkp - sn * vkq;
                    V(k, q) = sn * vkp + cs * vkq;
                }
            }
    }
    eval.assign(n, 0.0);
    for (int i = 0; i < n; ++i) eval[i] = B(i, i);
}

// ---------------------------------------------------------------------------
// 1. Admissibility: the squared channel moduli sum to 1 everywhere on the
//    sphere, for harmonic banks (d = 2, 3; lmax <= 6) and for zonal banks on
//    exactly-sufficient designs. 1e4 samples per configuration, < 5 s total.
Criterion check_partition() {
    Criterion c{1, "partition-of-unity", 0.0, 1e-10, false, 0.0, ""};
    auto t0 = std::chrono::steady_clock::now();
    const int samples = 10000;
    int configs = 0;
    for (int d = 2; d <= 3; ++d)
        for (int lmax = 0; lmax <= 6; ++lmax) {
            auto bank = angular::harmonic_bank(d, angular::window_coeffs("cubic", lmax, d));
            c.measured = std::max(c.measured, angular::verify_partition(bank, samples));
            ++configs;
        }
    for (int lmax = 0; lmax <= 6; ++lmax) {
        auto de = designs::builtin_design("equiangular(" + std::to_string(2 * lmax + 1) + ")");
        auto bank = angular::zonal_bank(de, angular::window_coeffs("cubic", lmax, 2));
        c.measured = std::max(c.measured, angular::verify_partition(bank, samples));
        ++configs;
    }
    {
        auto bank = angular::zonal_bank(designs::builtin_design("icosahedron"),
                                        angular::window_coeffs("cubic", 2, 3));
        c.measured = std::max(c.measured, angular::verify_partition(bank, samples));
        ++configs;
    }
    double sec = elapsed_since(t0);
    c.note = std::to_string(configs) + " bank configs x " + std::to_string(samples) +
             " samples in " + num(sec) + " s (budget 5 s)";
    c.pass = c.measured < c.tolerance && sec < 5.0;
    return c;
}

// Shared by criteria 2 and 3: the two pinned frame configurations.
frame::SteerableFrame reference_frame(int which) {
    if (which == 0) {
        auto bank = angular::zonal_bank(designs::builtin_design("equiangular(12)"),
                                        angular::window_coeffs("cubic", 3, 2));
        return frame::build_frame({64, 64}, 4, frame::make_radial("simoncelli-logcos"), bank);
    }
    auto bank = angular::zonal_bank(designs::builtin_design("icosahedron"),
                                    angular::window_coeffs("cubic", 2, 3));
    return frame::build_frame({32, 32, 32}, 2, frame::make_radial("meyer-smooth"), bank);
}

// ---------------------------------------------------------------------------
// 2. Tightness: coefficient energy equals signal energy for 50 random signals
//    per configuration (64^2 at J=4, 32^3 at J=2), relative error < 1e-9,
//    < 60 s total.
Criterion check_parseval() {
    Criterion c{2, "parseval-tightness", 0.0, 1e-9, false, 0.0, ""};
    auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(7002);
    for (int which = 0; which < 2; ++which) {
        auto fr = reference_frame(which);
        std::vector<double> f(static_cast<size_t>(fr.size()));
        for (int s = 0; s < 50; ++s) {
            randn(rng, f);
            double n2 = 0.0;
            for (double x : f) n2 += x * x;
            auto pyr = frame::analyze(f, fr);
            c.measured = std::max(c.measured, std::fabs(pyr.energy() - n2) / n2);
        }
    }
    double sec = elapsed_since(t0);
    c.note = "50 signals each at 64^2 (J=4) and 32^3 (J=2) in " + num(sec) + " s (budget 60 s)";
    c.pass = c.measured < c.tolerance && sec < 60.0;
    return c;
}

// ---------------------------------------------------------------------------
// 3. Reproduction: analyze-then-synthesize returns the signal, same
//    configurations and signal count, relative L2 error < 1e-9.
Criterion check_reconstruction() {
    Criterion c{3, "perfect-reconstruction", 0.0, 1e-9, false, 0.0, ""};
    std::mt19937_64 rng(7003);
    for (int which = 0; which < 2; ++which) {
        auto fr = reference_frame(which);
        std::vector<double> f(static_cast<size_t>(fr.size()));
        for (int s = 0; s < 50; ++s) {
            randn(rng, f);
            auto rec = frame::synthesize(frame::analyze(f, fr), fr);
            double diff = 0.0, n2 = 0.0;
            for (size_t i = 0; i < f.size(); ++i) {
                diff += (rec[i] - f[i]) * (rec[i] - f[i]);
                n2 += f[i] * f[i];
            }
            c.measured = std::max(c.measured, std::sqrt(diff / n2));
        }
    }
    c.note = "50 signals each at 64^2 (J=4) and 32^3 (J=2)";
    c.pass = c.measured < c.tolerance;
    return c;
}

// ---------------------------------------------------------------------------
// 4. Quadrature-strength verification: the icosahedron is a 4-design to
//    1e-12 but decisively fails at degree 6; every equiangular(n) up to
//    n = 25 passes its claimed strength n-1.
Criterion check_design_verification() {
    Criterion c{4, "design-verification", 0.0, 1e-12, false, 0.0, ""};
    auto icosa = designs::builtin_design("icosahedron");
    auto rep4 = designs::verify_design(icosa, 4);
    auto rep6 = designs::verify_design(icosa, 6);
    double deg6 = rep6.residual.at(5);
    bool equi_ok = true;
    double equi_worst = 0.0;
    for (int n = 1; n <= 25; ++n) {
        auto rep = designs::verify_design(
            designs::builtin_design("equiangular(" + std::to_string(n) + ")"), n - 1);
        equi_ok = equi_ok && rep.pass;
        equi_worst = std::max(equi_worst, rep.worst);
    }
    c.measured = rep4.worst;
    c.pass = rep4.pass && rep4.worst < c.tolerance && !rep6.pass && deg6 > 1e-2 && equi_ok;
    c.note = "icosahedron degree-6 residual " + num(deg6) +
             " > 0.01; equiangular n<=25 worst " + num(equi_worst);
    return c;
}

// ---------------------------------------------------------------------------
// 5. Characteristic-matrix isometry: U^T U = I to 1e-10 for
//    (equiangular(8), lmax=3) and (icosahedron, lmax=2).
Criterion check_characteristic_isometry() {
    Criterion c{5, "characteristic-isometry", 0.0, 1e-10, false, 0.0, ""};
    bool guaranteed = true;
    auto probe = [&](const std::string& name, int lmax) {
        auto cm = designs::characteristic_matrix(designs::builtin_design(name), lmax);
        guaranteed = guaranteed && cm.isometry_guaranteed;
        auto gram = num::mat_mul(num::mat_transpose(cm.U), cm.U);
        c.measured = std::max(c.measured, num::mat_max_diff(gram, num::Mat::identity(gram.rows)));
    };
    probe("equiangular(8)", 3);
    probe("icosahedron", 2);
    c.pass = guaranteed && c.measured < c.tolerance;
    c.note = "equiangular(8) lmax=3 and icosahedron lmax=2";
    return c;
}

// ---------------------------------------------------------------------------
// 6. Steering exactness, three facets: the zonal steering matrix maps channel
//    functions onto those of the rotated design pointwise (1e-9); every
//    harmonic block is orthogonal (1e-10, l <= 5, d = 2 and 3); a one-step
//    rotation of the equiangular bank is a pure channel shift (1e-9).
Criterion check_steering() {
    Criterion c{6, "steering-exactness", 0.0, 1e-9, false, 0.0, ""};
    std::mt19937_64 rng(7006);

    double zonal_worst = 0.0;
    struct Cfg {
        std::string design;
        int d, lmax;
    };
    for (const Cfg& cfg : {Cfg{"icosahedron", 3, 2}, Cfg{"equiangular(12)", 2, 5}}) {
        auto de = designs::builtin_design(cfg.design);
        auto coeffs = angular::window_coeffs("flat", cfg.lmax, cfg.d);
        auto bank = angular::zonal_bank(de, coeffs);
        for (int r = 0; r < 10; ++r) {
            auto R = rand_rotation(rng, cfg.d);
            auto S = steering::steering_matrix_zonal(bank, R);
            auto rotated = angular::zonal_bank(steering::rotate_design(de, R), coeffs);
            for (int s = 0; s < 10; ++s) {  // 10 rotations x 10 directions = 100 probes
                auto w = rand_direction(rng, cfg.d);
                auto m0 = bank.eval(w.data());
                auto m1 = rotated.eval(w.data());
                for (int n1 = 0; n1 < de.n(); ++n1) {
                    double acc = 0.0;
                    for (int n2 = 0; n2 < de.n(); ++n2) acc += S.entries(n1, n2) * m0[n2];
                    zonal_worst = std::max(zonal_worst, std::fabs(acc - m1[n1]));
                }
            }
        }
    }

    double block_worst = 0.0;
    for (int d = 2; d <= 3; ++d)
        for (int l = 0; l <= 5; ++l)
            for (int r = 0; r < 5; ++r) {
                auto V = steering::steering_block(d, l, rand_rotation(rng, d),
                                                  designs::strong_quadrature(d, 2 * l));
                auto gram = num::mat_mul(V, num::mat_transpose(V));
                block_worst =
                    std::max(block_worst, num::mat_max_diff(gram, num::Mat::identity(gram.rows)));
            }

    // one design step on equiangular(12): channel n picks up channel n+1
    double shift_worst = 0.0;
    {
        auto de = designs::builtin_design("equiangular(12)");
        auto bank = angular::zonal_bank(de, angular::window_coeffs("flat", 5, 2));
        auto S = steering::steering_matrix_zonal(bank, steering::rotation_from_angle(M_PI / 6.0));
        for (int s = 0; s < 100; ++s) {
            auto w = rand_direction(rng, 2);
            auto m = bank.eval(w.data());
            for (int n1 = 0; n1 < 12; ++n1) {
                double acc = 0.0;
                for (int n2 = 0; n2 < 12; ++n2) acc += S.entries(n1, n2) * m[n2];
                shift_worst = std::max(shift_worst, std::fabs(acc - m[(n1 + 1) % 12]));
            }
        }
    }

    c.measured = zonal_worst;
    c.pass = zonal_worst < 1e-9 && block_worst < 1e-10 && shift_worst < 1e-9;
    c.note = "block orthogonality " + num(block_worst) + " (tol 1e-10); one-step shift " +
             num(shift_worst) + " (tol 1e-9)";
    return c;
}

// ---------------------------------------------------------------------------
// 7. Kernel profiles at the showcase parameters (d=3, lmax=10, 216 channels):
//    the equal-weight kernel peaks at theta=0 with value 121/216, the windowed
//    kernels peak at theta=0, and the cubic window keeps every side lobe below
//    a quarter of the main lobe.
Criterion check_kernel_profiles() {
    Criterion c{7, "kernel-profiles", 0.0, 1e-12, false, 0.0, ""};
    const int d = 3, lmax = 10, n_max = 216;
    std::vector<double> grid(2001);
    for (size_t i = 0; i < grid.size(); ++i) grid[i] = M_PI * static_cast<double>(i) / 2000.0;

    std::vector<double> flat(grid.size());
    for (size_t i = 0; i < grid.size(); ++i)
        flat[i] = angular::steering_kernel(d, lmax, n_max, std::cos(grid[i]));
    c.measured = std::fabs(flat[0] - 121.0 / 216.0);

    bool peaks_ok = true;
    double side_ratio = 0.0;
    for (const char* window : {"flat-kernel", "cubic", "bspline1", "bspline3"}) {
        std::vector<double> prof;
        if (std::string(window) == "flat-kernel") {
            prof = flat;
        } else {
            auto pairs = angular::kernel_profile(angular::window_coeffs(window, lmax, d), n_max, grid);
            prof.resize(pairs.size());
            for (size_t i = 0; i < pairs.size(); ++i) prof[i] = pairs[i].second;
        }
        size_t argmax = 0;
        for (size_t i = 0; i < prof.size(); ++i)
            if (prof[i] > prof[argmax]) argmax = i;
        peaks_ok = peaks_ok && argmax == 0;
        if (std::string(window) == "cubic") {
            // walk down the main lobe, then take the largest magnitude beyond it
            size_t first_min = 1;
            while (first_min + 1 < prof.size() &&
                   std::fabs(prof[first_min + 1]) < std::fabs(prof[first_min]))
                ++first_min;
            double side = 0.0;
            for (size_t i = first_min; i < prof.size(); ++i)
                side = std::max(side, std::fabs(prof[i]));
            side_ratio = side / prof[0];
        }
    }

    c.pass = c.measured < c.tolerance && peaks_ok && side_ratio < 0.25;
    c.note = "cubic side-lobe / main-lobe = " + num(side_ratio) + " (< 0.25); all peaks at theta=0";
    return c;
}

// ---------------------------------------------------------------------------
// 8. Window optimizer: the Gram assembly reproduces the identity for W == 1
//    (1e-11); the arccos^2 minimizer agrees with an independent Jacobi
//    eigensolver to 1e-8 and beats 100 random unit vectors on energy.
Criterion check_optimizer() {
    Criterion c{8, "window-optimizer", 0.0, 1e-8, false, 0.0, ""};

    double ident_worst = 0.0;
    for (int d = 2; d <= 3; ++d) {
        auto prob = angular::assemble_gram(d, 6, [](double) { return 1.0; });
        ident_worst =
            std::max(ident_worst, num::mat_max_diff(prob.gram, num::Mat::identity(prob.gram.rows)));
    }

    auto prob = angular::assemble_gram(3, 10, [](double t) {
        double a = std::acos(std::clamp(t, -1.0, 1.0));
        return a * a;
    });
    auto opt = angular::optimal_coeffs(prob, false);

    std::vector<double> ev;
    num::Mat V;
    jacobi_eig_local(prob.gram, ev, V);
    int arg = 0;
    for (int i = 1; i < static_cast<int>(ev.size()); ++i)
        if (ev[i] < ev[arg]) arg = i;
    std::vector<double> oracle(prob.gram.rows);
    for (int i = 0; i < prob.gram.rows; ++i) oracle[i] = V(i, arg);
    for (int i = 0; i < prob.gram.rows; ++i)
        if (std::fabs(oracle[i]) > 1e-12) {
            if (oracle[i] < 0.0)
                for (auto& x : oracle) x = -x;
            break;
        }
    double diff2 = 0.0;
    for (int i = 0; i < prob.gram.rows; ++i)
        diff2 += (oracle[i] - opt.c[i]) * (oracle[i] - opt.c[i]);
    c.measured = std::sqrt(diff2);

    auto energy = [&](const std::vector<double>& v) {
        double e = 0.0;
        for (int i = 0; i < prob.gram.rows; ++i)
            for (int j = 0; j < prob.gram.cols; ++j) e += v[i] * prob.gram(i, j) * v[j];
        return e;
    };
    double e_opt = energy(opt.c);
    std::mt19937_64 rng(7008);
    bool beats = true;
    for (int s = 0; s < 100; ++s)
        beats = beats && e_opt <= energy(rand_direction(rng, prob.gram.rows)) + 1e-12;

    c.pass = ident_worst < 1e-11 && c.measured < c.tolerance && beats;
    c.note = "W==1 Gram identity " + num(ident_worst) + " (tol 1e-11); minimizer energy " +
             num(e_opt) + " <= 100 random";
    return c;
}

// ---------------------------------------------------------------------------
// 9. Radial profiles: the dyadic dilates of both band shapes tile (0, 1/2]
//    to 1e-12, and both vanish identically above 1/2.
Criterion check_radial() {
    Criterion c{9, "radial-telescoping", 0.0, 1e-12, false, 0.0, ""};
    bool support_ok = true;
    for (const char* kind : {"simoncelli-logcos", "meyer-smooth"}) {
        auto h = frame::make_radial(kind);
        auto tile = [&](double w) {
            double s = 0.0;
            for (int j = -3; j <= 80; ++j) {
                double v = h(std::ldexp(w, j));
                s += v * v;
            }
            return std::fabs(s - 1.0);
        };
        // log-spaced sweep down to 1e-6 plus a dense linear pass over one octave
        for (int i = 0; i <= 4000; ++i)
            c.measured = std::max(
                c.measured, tile(0.5 * std::pow(10.0, -6.0 * (1.0 - i / 4000.0))));
        for (int i = 1; i <= 4000; ++i)
            c.measured = std::max(c.measured, tile(0.25 + 0.25 * i / 4000.0));
        for (double w : {0.5 + 1e-12, 0.5001, 0.6, 0.75, 1.0, 2.0, 10.0})
            support_ok = support_ok && h(w) == 0.0;
    }
    c.pass = c.measured < c.tolerance && support_ok;
    c.note = std::string("support check h(w)=0 for w > 1/2: ") + (support_ok ? "exact" : "violated");
    return c;
}

// ---------------------------------------------------------------------------
// 10. Spatial cross-check: the Bessel-quadrature radial profile of the d=2
//     isotropic finest band matches a 1024^2 frequency-grid Fourier sum to
//     1e-3 relative at r = 0.5, 1, 2.
Criterion check_spatial_profile() {
    Criterion c{10, "spatial-profile", 0.0, 1e-3, false, 0.0, ""};
    const int N = 1024;
    std::string detail;
    for (const char* kind : {"meyer-smooth", "simoncelli-logcos"}) {
        auto h = frame::make_radial(kind);
        // row sums of the sampled band depend only on the first axis, so the
        // Fourier sum reduces to a single cosine sweep per radius
        std::vector<double> rowsum(N, 0.0);
        for (int i = 0; i < N; ++i) {
            double u = frame::axis_freq(i, N);
            for (int j = 0; j < N; ++j) {
                double v = frame::axis_freq(j, N);
                rowsum[i] += h(std::sqrt(u * u + v * v));
            }
        }
        for (double r : {0.5, 1.0, 2.0}) {
            double oracle = 0.0;
            for (int i = 0; i < N; ++i)
                oracle += rowsum[i] * std::cos(2.0 * M_PI * frame::axis_freq(i, N) * r);
            oracle /= static_cast<double>(N) * N;
            double bessel = sphmath::radial_profile_spatial(
                [&](double s) { return h(s); }, 2, 0, r);
            c.measured = std::max(c.measured, std::fabs(bessel - oracle) / std::fabs(oracle));
        }
    }
    c.pass = c.measured < c.tolerance;
    c.note = "both radial kinds, r in {0.5, 1, 2}";
    return c;
}

}  // namespace

std::vector<Criterion> run_all(const Progress& progress) {
    using Runner = Criterion (*)();
    const Runner runners[] = {check_partition,       check_parseval,
                              check_reconstruction,  check_design_verification,
                              check_characteristic_isometry, check_steering,
                              check_kernel_profiles, check_optimizer,
                              check_radial,          check_spatial_profile};
    std::vector<Criterion> out;
    for (Runner run : runners) {
        auto t0 = std::chrono::steady_clock::now();
        Criterion c;
        try {
            c = run();
        } catch (const Error& e) {
            c.index = static_cast<int>(out.size()) + 1;
            c.name = "criterion-" + std::to_string(c.index);
            c.measured = std::nan("");
            c.pass = false;
            c.note = std::string("error: ") + e.what();
        }
        c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        out.push_back(c);
        if (progress) progress(out.back());
    }
    return out;
}

}  // namespace swt::selftest
