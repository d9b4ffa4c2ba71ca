#include "angular.hpp"

#include <cmath>
#include <random>

#include "common.hpp"
#include "sphmath.hpp"

namespace swt::angular {

namespace {

// centered cubic B-spline on [-2,2]
double bspline3(double x) {
    double ax = std::fabs(x);
    if (ax >= 2.0) return 0.0;
    if (ax >= 1.0) {
        double u = 2.0 - ax;
        return u * u * u / 6.0;
    }
    return 2.0 / 3.0 - ax * ax + ax * ax * ax / 2.0;
}

double window_shape(const std::string& kind, double w) {
    if (kind == "cubic") return (1.0 - w) * (1.0 - w) * (1.0 + 2.0 * w);
    if (kind == "bspline1") return 1.0 - w;
    if (kind == "bspline3") return bspline3(2.0 * w) / bspline3(0.0);
    if (kind == "flat") return 1.0;
    fail(Status::argument, "unknown window kind '" + kind + "'");
}

AngularCoeffs normalized(int d, int lmax, std::vector<double> w, std::string tag) {
    double n2 = 0.0;
    for (double v : w) n2 += v * v;
    if (n2 <= 0.0) fail(Status::argument, "angular coefficients are identically zero");
    double inv = 1.0 / std::sqrt(n2);
    for (double& v : w) v *= inv;
    AngularCoeffs c;
    c.d = d;
    c.lmax = lmax;
    c.c = std::move(w);
    c.window = std::move(tag);
    return c;
}

void check_unit(const AngularCoeffs& c) {
    double n2 = 0.0;
    for (double v : c.c) n2 += v * v;
    if (std::fabs(std::sqrt(n2) - 1.0) > 1e-12)
        fail(Status::argument, "angular coefficient vector is not unit-norm");
    if (static_cast<int>(c.c.size()) != c.lmax + 1)
        fail(Status::argument, "angular coefficient vector length does not match lmax");
}

}  // namespace

AngularCoeffs window_coeffs(const std::string& kind, int lmax, int d) {
    if (lmax < 0) fail(Status::argument, "window_coeffs: lmax must be >= 0");
    if (d < 2) fail(Status::argument, "window_coeffs: d must be >= 2");
    std::vector<double> w(lmax + 1);
    for (int l = 0; l <= lmax; ++l) w[l] = window_shape(kind, static_cast<double>(l) / (lmax + 1));
    return normalized(d, lmax, std::move(w), kind);
}

AngularCoeffs coeffs_from(int d, const std::vector<double>& w) {
    if (w.empty()) fail(Status::argument, "coeffs_from: empty weight vector");
    return normalized(d, static_cast<int>(w.size()) - 1, w, "custom");
}

EnergyProblem assemble_gram(int d, int lmax, const std::function<double(double)>& W) {
    if (d < 2) fail(Status::argument, "assemble_gram: d must be >= 2");
    if (lmax < 0) fail(Status::argument, "assemble_gram: lmax must be >= 0");
    const int m = lmax + 1;
    const double K = std::tgamma(0.5 * d) / (std::sqrt(M_PI) * std::tgamma(0.5 * (d - 1)));
    std::vector<double> scale(m);
    for (int l = 0; l <= lmax; ++l) scale[l] = std::sqrt(double(sphmath::dim_harmonics(d, l)));

    auto assemble = [&](int nodes) {
        std::vector<double> x, wq;
        num::gauss_legendre(nodes, x, wq);
        num::Mat A(m, m);
        for (int q = 0; q < nodes; ++q) {
            double theta = 0.5 * M_PI * (x[q] + 1.0);  // map [-1,1] -> [0,pi]
            double weight = 0.5 * M_PI * wq[q];
            double t = std::cos(theta);
            double Wt = W(t);
            if (Wt <= 0.0)
                fail(Status::argument, "assemble_gram: weight W is nonpositive at t=" +
                                           std::to_string(t));
            double common = K * Wt * std::pow(std::sin(theta), d - 2) * weight;
            auto P = sphmath::legendre_upto(d, lmax, t);
            for (int i = 0; i < m; ++i)
                for (int j = i; j < m; ++j) {
                    double v = common * scale[i] * P[i] * scale[j] * P[j];
                    A(i, j) += v;
                }
        }
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < i; ++j) A(i, j) = A(j, i);
        return A;
    };

    num::Mat A = assemble(512);
    for (int nodes = 1024;; nodes *= 2) {
        num::Mat B = assemble(nodes);
        double diff = num::mat_max_diff(A, B);
        A = std::move(B);
        if (diff <= 1e-11) break;
        if (nodes >= 8192)
            fail(Status::numeric, "assemble_gram: quadrature did not settle to 1e-11");
    }
    EnergyProblem p;
    p.d = d;
    p.lmax = lmax;
    p.gram = std::move(A);
    return p;
}

AngularCoeffs optimal_coeffs(const EnergyProblem& problem, bool maximize) {
    std::vector<double> ev;
    num::Mat V;
    num::sym_eig(problem.gram, ev, V);
    const int n = problem.gram.rows;
    const int col = maximize ? n - 1 : 0;
    // A repeated extreme eigenvalue leaves the minimizer arbitrary inside its
    // eigenspace, so pick the unique unit vector in that eigenspace closest to
    // e0 (project e0 onto the tied columns).  Nondegenerate spectra reduce to
    // the plain eigenvector; the W==1 problem deterministically yields e0.
    const double tie_tol = 1e-9 * (std::fabs(ev[0]) + std::fabs(ev[n - 1]) + 1e-300);
    std::vector<double> c(n, 0.0);
    double norm2 = 0.0;
    for (int j = 0; j < n; ++j) {
        if (std::fabs(ev[j] - ev[col]) > tie_tol) continue;
        for (int i = 0; i < n; ++i) c[i] += V(0, j) * V(i, j);
    }
    for (double v : c) norm2 += v * v;
    if (norm2 > 1e-12) {
        for (double& v : c) v /= std::sqrt(norm2);
    } else {
        // e0 is (numerically) orthogonal to the eigenspace; fall back to the
        // column with the largest first coordinate among the tied ones.
        int best = col;
        for (int j = 0; j < n; ++j)
            if (std::fabs(ev[j] - ev[col]) <= tie_tol &&
                std::fabs(V(0, j)) > std::fabs(V(0, best)))
                best = j;
        for (int i = 0; i < n; ++i) c[i] = V(i, best);
    }
    for (int i = 0; i < n; ++i) {
        if (std::fabs(c[i]) > 1e-12) {
            if (c[i] < 0.0)
                for (double& v : c) v = -v;
            break;
        }
    }
    return normalized(problem.d, problem.lmax, std::move(c), "optimal");
}

MultiplierBank harmonic_bank(int d, const AngularCoeffs& coeffs) {
    if (d != 2 && d != 3)
        fail(Status::unsupported, "harmonic_bank: explicit bases exist for d in {2,3} only");
    check_unit(coeffs);
    MultiplierBank b;
    b.kind = MultiplierBank::Kind::harmonic;
    b.d = d;
    b.lmax = coeffs.lmax;
    b.coeffs = coeffs;
    for (int l = 0; l <= coeffs.lmax; ++l) {
        if (coeffs.c[l] == 0.0) continue;  // zero-weight degrees carry no channel
        int nl = static_cast<int>(sphmath::dim_harmonics(d, l));
        for (int k = 0; k < nl; ++k) b.channels.emplace_back(l, k);
    }
    b.channel_scale.assign(b.channels.size(), 1.0);
    return b;
}

MultiplierBank zonal_bank(const designs::SphericalDesign& design, const AngularCoeffs& coeffs) {
    check_unit(coeffs);
    if (design.d < 2) fail(Status::argument, "zonal_bank: design has no dimension");
    if (design.strength < 2 * coeffs.lmax)
        fail(Status::verify, "zonal_bank: design strength " + std::to_string(design.strength) +
                                 " is below the required 2*lmax = " +
                                 std::to_string(2 * coeffs.lmax));
    MultiplierBank b;
    b.kind = MultiplierBank::Kind::zonal;
    b.d = design.d;
    b.lmax = coeffs.lmax;
    b.coeffs = coeffs;
    b.design = design;
    b.channel_scale.assign(static_cast<size_t>(design.n()), 1.0);
    return b;
}

std::vector<double> MultiplierBank::eval(const double* w) const {
    double n2 = 0.0;
    for (int i = 0; i < d; ++i) n2 += w[i] * w[i];
    if (n2 <= 0.0) fail(Status::argument, "multiplier evaluation at the zero vector");
    double inv = 1.0 / std::sqrt(n2);
    std::vector<double> dir(d);
    for (int i = 0; i < d; ++i) dir[i] = w[i] * inv;

    std::vector<double> out(static_cast<size_t>(n_channels()));
    const double sigma = sphmath::sphere_area(d);
    if (kind == Kind::harmonic) {
        auto y = sphmath::sph_basis_upto(d, lmax, dir.data());
        std::vector<size_t> offset(lmax + 1);
        size_t acc = 0;
        for (int l = 0; l <= lmax; ++l) {
            offset[l] = acc;
            acc += static_cast<size_t>(sphmath::dim_harmonics(d, l));
        }
        for (size_t ch = 0; ch < channels.size(); ++ch) {
            auto [l, k] = channels[ch];
            double scale = coeffs.c[l] * std::sqrt(sigma / sphmath::dim_harmonics(d, l));
            out[ch] = channel_scale[ch] * scale * y[offset[l] + k];
        }
    } else {
        const int n = design.n();
        std::vector<double> degree_scale(lmax + 1);
        for (int l = 0; l <= lmax; ++l)
            degree_scale[l] = coeffs.c[l] * std::sqrt(double(sphmath::dim_harmonics(d, l)) / n);
        for (int ch = 0; ch < n; ++ch) {
            double dot = 0.0;
            for (int i = 0; i < d; ++i) dot += design.point(ch)[i] * dir[i];
            auto P = sphmath::legendre_upto(d, lmax, dot);
            double v = 0.0;
            for (int l = 0; l <= lmax; ++l) v += degree_scale[l] * P[l];
            out[ch] = channel_scale[ch] * v;
        }
    }
    return out;
}

double MultiplierBank::eval_channel(int ch, const double* w) const {
    if (ch < 0 || ch >= n_channels()) fail(Status::argument, "eval_channel: channel out of range");
    return eval(w)[ch];
}

void MultiplierBank::scale_channel(int ch, double factor) {
    if (ch < 0 || ch >= n_channels()) fail(Status::argument, "scale_channel: channel out of range");
    channel_scale[ch] *= factor;
}

double verify_partition(const MultiplierBank& bank, int samples) {
    if (samples < 1) fail(Status::argument, "verify_partition: samples must be >= 1");
    double worst = 0.0;
    auto probe = [&](const double* w) {
        auto m = bank.eval(w);
        double s = 0.0;
        for (double v : m) s += v * v;
        worst = std::max(worst, std::fabs(s - 1.0));
    };
    if (bank.d == 2) {
        for (int i = 0; i < samples; ++i) {
            double th = 2.0 * M_PI * i / samples + 0.1;  // offset avoids only-lattice angles
            double w[2] = {std::cos(th), std::sin(th)};
            probe(w);
        }
    } else if (bank.d == 3) {
        const double golden = M_PI * (3.0 - std::sqrt(5.0));
        for (int i = 0; i < samples; ++i) {
            double z = 1.0 - (2.0 * i + 1.0) / samples;
            double r = std::sqrt(std::max(0.0, 1.0 - z * z));
            double w[3] = {r * std::cos(golden * i), r * std::sin(golden * i), z};
            probe(w);
        }
    } else {
        std::mt19937_64 rng(12345);
        std::normal_distribution<double> g(0.0, 1.0);
        std::vector<double> w(bank.d);
        for (int i = 0; i < samples; ++i) {
            double n2 = 0.0;
            for (auto& v : w) {
                v = g(rng);
                n2 += v * v;
            }
            if (n2 < 1e-12) {
                --i;
                continue;
            }
            probe(w.data());
        }
    }
    return worst;
}

std::vector<std::pair<double, double>> kernel_profile(const AngularCoeffs& coeffs, int n_max,
                                                      const std::vector<double>& theta_grid) {
    check_unit(coeffs);
    if (n_max < 1) fail(Status::argument, "kernel_profile: n_max must be >= 1");
    std::vector<std::pair<double, double>> out;
    out.reserve(theta_grid.size());
    std::vector<double> degree_scale(coeffs.lmax + 1);
    for (int l = 0; l <= coeffs.lmax; ++l)
        degree_scale[l] =
            coeffs.c[l] * std::sqrt(double(sphmath::dim_harmonics(coeffs.d, l)) / n_max);
    for (double th : theta_grid) {
        auto P = sphmath::legendre_upto(coeffs.d, coeffs.lmax, std::cos(th));
        double v = 0.0;
        for (int l = 0; l <= coeffs.lmax; ++l) v += degree_scale[l] * P[l];
        out.emplace_back(th, v);
    }
    return out;
}

double steering_kernel(int d, int lmax, int n_max, double x) {
    if (n_max < 1) fail(Status::argument, "steering_kernel: n_max must be >= 1");
    auto P = sphmath::legendre_upto(d, lmax, x);
    double v = 0.0;
    for (int l = 0; l <= lmax; ++l) v += double(sphmath::dim_harmonics(d, l)) / n_max * P[l];
    return v;
}

}  // namespace swt::angular
