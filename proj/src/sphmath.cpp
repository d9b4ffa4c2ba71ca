#include "sphmath.hpp"

#include <cmath>

#include "common.hpp"
#include "numerics.hpp"

namespace swt::sphmath {

namespace {

// Exact C(n,k) in integer arithmetic; the running product is divisible by i at
// every step, so no rounding occurs.
long long binomial(long long n, long long k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    long long r = 1;
    for (long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace

long long dim_harmonics(int d, int l) {
    if (d < 2) fail(Status::argument, "dim_harmonics: d must be >= 2");
    if (l < 0) fail(Status::argument, "dim_harmonics: degree must be >= 0");
    long long second = (l >= 2) ? binomial(d + l - 3, l - 2) : 0;
    return binomial(d + l - 1, l) - second;
}

long long dim_harmonics_upto(int d, int lmax) {
    if (d < 2) fail(Status::argument, "dim_harmonics_upto: d must be >= 2");
    if (lmax < 0) fail(Status::argument, "dim_harmonics_upto: lmax must be >= 0");
    return dim_harmonics(d + 1, lmax);
}

double sphere_area(int d) {
    if (d < 2) fail(Status::argument, "sphere_area: d must be >= 2");
    return 2.0 * std::pow(M_PI, d / 2.0) / std::tgamma(d / 2.0);
}

namespace {

double clamp_arg(double x, const char* who) {
    if (std::fabs(x) > 1.0 + 1e-12) fail(Status::argument, std::string(who) + ": |x| > 1");
    return std::fmin(1.0, std::fmax(-1.0, x));
}

}  // namespace

double legendre(int d, int l, double x) {
    if (d < 2) fail(Status::argument, "legendre: d must be >= 2");
    if (l < 0) fail(Status::argument, "legendre: degree must be >= 0");
    x = clamp_arg(x, "legendre");
    double pm2 = 1.0;  // P_0
    if (l == 0) return pm2;
    double pm1 = x;  // P_1 for every d
    for (int k = 2; k <= l; ++k) {
        double p = ((2 * k + d - 4) * x * pm1 - (k - 1) * pm2) / (k + d - 3);
        pm2 = pm1;
        pm1 = p;
    }
    return pm1;
}

std::vector<double> legendre_upto(int d, int lmax, double x) {
    if (d < 2) fail(Status::argument, "legendre_upto: d must be >= 2");
    if (lmax < 0) fail(Status::argument, "legendre_upto: lmax must be >= 0");
    x = clamp_arg(x, "legendre_upto");
    std::vector<double> p(lmax + 1);
    p[0] = 1.0;
    if (lmax >= 1) p[1] = x;
    for (int k = 2; k <= lmax; ++k)
        p[k] = ((2 * k + d - 4) * x * p[k - 1] - (k - 1) * p[k - 2]) / (k + d - 3);
    return p;
}

namespace {

// Fully normalized associated-Legendre values Ybar_{l,m}(theta) for one l, m = 0..l,
// with int |Ybar_{l,0}(theta)|^2 dsigma = 1 and the real basis obtained by
// multiplying m>0 entries by sqrt(2) cos(m phi) / sqrt(2) sin(m phi).
// Stable sectoral + vertical recurrences; no Condon-Shortley phase.
void normalized_assoc_legendre(int lmax, double ct, double st, std::vector<std::vector<double>>& P) {
    P.assign(lmax + 1, {});
    for (int l = 0; l <= lmax; ++l) P[l].assign(l + 1, 0.0);
    P[0][0] = std::sqrt(1.0 / (4.0 * M_PI));
    for (int m = 1; m <= lmax; ++m)
        P[m][m] = P[m - 1][m - 1] * st * std::sqrt((2.0 * m + 1.0) / (2.0 * m));
    for (int m = 0; m < lmax; ++m) {
        double pmm = P[m][m];
        double p_prev = 0.0, p_cur = pmm;
        for (int l = m + 1; l <= lmax; ++l) {
            double ll = l, mm = m;
            double a = std::sqrt((4.0 * ll * ll - 1.0) / (ll * ll - mm * mm));
            // b vanishes at l-1 == m, which drops the (empty) two-back term on the first step
            double b = std::sqrt(((ll - 1) * (ll - 1) - mm * mm) / (4.0 * (ll - 1) * (ll - 1) - 1.0));
            double p_next = a * (ct * p_cur - b * p_prev);
            P[l][m] = p_next;
            p_prev = p_cur;
            p_cur = p_next;
        }
    }
}

}  // namespace

std::vector<double> sph_basis_eval(int d, int l, const double* point) {
    if (d != 2 && d != 3)
        fail(Status::unsupported, "sph_basis_eval: explicit bases are provided for d in {2,3} only");
    if (l < 0) fail(Status::argument, "sph_basis_eval: degree must be >= 0");
    double norm2 = 0.0;
    for (int i = 0; i < d; ++i) norm2 += point[i] * point[i];
    double norm = std::sqrt(norm2);
    if (std::fabs(norm - 1.0) > 1e-12)
        fail(Status::argument, "sph_basis_eval: point is not on the unit sphere");

    if (d == 2) {
        double theta = std::atan2(point[1] / norm, point[0] / norm);
        if (l == 0) return {1.0 / std::sqrt(2.0 * M_PI)};
        return {std::cos(l * theta) / std::sqrt(M_PI), std::sin(l * theta) / std::sqrt(M_PI)};
    }

    // d == 3
    double x = point[0] / norm, y = point[1] / norm, z = point[2] / norm;
    double st = std::hypot(x, y);
    double phi = (st > 0.0) ? std::atan2(y, x) : 0.0;
    std::vector<std::vector<double>> P;
    normalized_assoc_legendre(l, z, st, P);
    std::vector<double> out(static_cast<size_t>(dim_harmonics(3, l)));
    out[0] = P[l][0];
    const double s2 = std::sqrt(2.0);
    for (int m = 1; m <= l; ++m) {
        out[2 * m - 1] = s2 * P[l][m] * std::cos(m * phi);
        out[2 * m] = s2 * P[l][m] * std::sin(m * phi);
    }
    return out;
}

std::vector<double> sph_basis_upto(int d, int lmax, const double* point) {
    std::vector<double> all;
    all.reserve(static_cast<size_t>(dim_harmonics_upto(d, lmax)));
    for (int l = 0; l <= lmax; ++l) {
        auto v = sph_basis_eval(d, l, point);
        all.insert(all.end(), v.begin(), v.end());
    }
    return all;
}

double radial_profile_spatial(const std::function<double(double)>& h, int d, int l, double r) {
    if (d < 2) fail(Status::argument, "radial_profile_spatial: d must be >= 2");
    if (l < 0) fail(Status::argument, "radial_profile_spatial: degree must be >= 0");
    if (!(r > 0.0)) fail(Status::argument, "radial_profile_spatial: r must be > 0");
    const double nu = 0.5 * (d + 2 * l - 2);
    auto integrand = [&](double s) {
        double hv = h(s);
        if (hv == 0.0) return 0.0;
        return hv * std::cyl_bessel_j(nu, 2.0 * M_PI * r * s) * std::pow(s, 0.5 * d);
    };
    // Seed panels at the dyadic band edges where the provided windows have kinks.
    double v = num::integrate_adaptive(integrand, {0.0, 0.125, 0.25, 0.375, 0.5}, 1e-8);
    return 2.0 * M_PI * std::pow(r, -nu) * v;
}

}  // namespace swt::sphmath
