#include "steering.hpp"

#include <cmath>
#include <cstdio>

#include "common.hpp"
#include "sphmath.hpp"

namespace swt::steering {
namespace {

void validate(const Rotation& r) {
    const num::Mat gram = num::mat_mul(num::mat_transpose(r.matrix), r.matrix);
    const double ortho = num::mat_max_diff(gram, num::Mat::identity(r.d));
    if (!(ortho < 1e-12)) {
        char buf[96];
        std::snprintf(buf, sizeof(buf), "rotation: matrix not orthogonal, |R^T R - I| = %.3g",
                      ortho);
        fail(Status::argument, buf);
    }
    const double det = num::mat_det(r.matrix);
    if (!(std::fabs(det - 1.0) < 1e-12)) {
        char buf[96];
        std::snprintf(buf, sizeof(buf), "rotation: determinant %.15g is not +1 (improper rotation)",
                      det);
        fail(Status::argument, buf);
    }
}

std::vector<double> parse_numbers(const std::string& text) {
    std::vector<double> out;
    size_t pos = 0;
    while (pos < text.size()) {
        while (pos < text.size() && (text[pos] == ',' || text[pos] == ';' || text[pos] == ' '))
            ++pos;
        if (pos == text.size()) break;
        size_t used = 0;
        try {
            out.push_back(std::stod(text.substr(pos), &used));
        } catch (const std::exception&) {
            fail(Status::argument, "rotation: cannot parse number at '" + text.substr(pos) + "'");
        }
        pos += used;
    }
    return out;
}

}  // namespace

void Rotation::apply(const double* v, double* out) const {
    for (int i = 0; i < d; ++i) {
        double s = 0.0;
        for (int j = 0; j < d; ++j) s += matrix(i, j) * v[j];
        out[i] = s;
    }
}

Rotation rotation_from_angle(double angle) {
    Rotation r;
    r.d = 2;
    r.matrix = num::Mat(2, 2);
    const double c = std::cos(angle), s = std::sin(angle);
    r.matrix(0, 0) = c;
    r.matrix(0, 1) = -s;
    r.matrix(1, 0) = s;
    r.matrix(1, 1) = c;
    validate(r);
    return r;
}

Rotation rotation_from_axis_angle(const double axis[3], double angle) {
    const double n = std::sqrt(axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]);
    if (!(n > 0.0)) fail(Status::argument, "rotation: axis must be a nonzero vector");
    const double k[3] = {axis[0] / n, axis[1] / n, axis[2] / n};
    const double c = std::cos(angle), s = std::sin(angle);
    Rotation r;
    r.d = 3;
    r.matrix = num::Mat(3, 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r.matrix(i, j) = c * (i == j) + (1.0 - c) * k[i] * k[j];
    r.matrix(0, 1) -= s * k[2];
    r.matrix(0, 2) += s * k[1];
    r.matrix(1, 0) += s * k[2];
    r.matrix(1, 2) -= s * k[0];
    r.matrix(2, 0) -= s * k[1];
    r.matrix(2, 1) += s * k[0];
    validate(r);
    return r;
}

Rotation rotation_from_matrix(const num::Mat& m) {
    if (m.rows != m.cols || m.rows < 2)
        fail(Status::argument, "rotation: matrix must be square, d >= 2");
    Rotation r;
    r.d = m.rows;
    r.matrix = m;
    validate(r);
    return r;
}

Rotation parse_rotation(int d, const std::string& text) {
    if (text.rfind("angle=", 0) == 0) {
        if (d != 2) fail(Status::argument, "rotation: bare angle= form is for d=2 only");
        return rotation_from_angle(parse_numbers(text.substr(6)).at(0));
    }
    if (text.rfind("axis=", 0) == 0) {
        if (d != 3) fail(Status::argument, "rotation: axis-angle form is for d=3 only");
        const size_t semi = text.find(';');
        if (semi == std::string::npos || text.rfind("angle=", semi + 1) != semi + 1)
            fail(Status::argument, "rotation: expected axis=x,y,z;angle=<radians>");
        auto ax = parse_numbers(text.substr(5, semi - 5));
        if (ax.size() != 3) fail(Status::argument, "rotation: axis needs three components");
        double axis[3] = {ax[0], ax[1], ax[2]};
        return rotation_from_axis_angle(axis, parse_numbers(text.substr(semi + 7)).at(0));
    }
    auto vals = parse_numbers(text);
    if (static_cast<int>(vals.size()) != d * d)
        fail(Status::argument, "rotation: expected " + std::to_string(d * d) +
                                   " matrix entries, got " + std::to_string(vals.size()));
    num::Mat m(d, d);
    m.a = vals;
    return rotation_from_matrix(m);
}

designs::SphericalDesign rotate_design(const designs::SphericalDesign& de, const Rotation& R) {
    if (R.d != de.d) fail(Status::argument, "rotate_design: dimension mismatch");
    designs::SphericalDesign out = de;
    out.source = de.source + "@rotated";
    for (int i = 0; i < de.n(); ++i) R.apply(de.point(i), &out.points[size_t(i) * de.d]);
    return out;
}

SteeringMatrix steering_matrix_zonal(const angular::MultiplierBank& bank, const Rotation& R) {
    if (bank.kind != angular::MultiplierBank::Kind::zonal)
        fail(Status::argument, "steering_matrix_zonal: bank is not zonal");
    if (R.d != bank.d) fail(Status::argument, "steering_matrix_zonal: rotation dimension mismatch");
    for (double c : bank.coeffs.c)
        if (std::fabs(c - bank.coeffs.c[0]) > 1e-12)
            fail(Status::unsupported,
                 "steering_matrix_zonal: single-kernel steering requires flat per-degree weights; "
                 "use harmonic steering for shaped windows");
    if (bank.design.strength < 2 * bank.lmax)
        fail(Status::verify, "steering_matrix_zonal: design strength below 2*lmax");

    const int n = bank.design.n();
    SteeringMatrix S;
    S.kind = SteeringMatrix::Kind::zonal;
    S.d = bank.d;
    S.lmax = bank.lmax;
    S.rotation = R;
    S.entries = num::Mat(n, n);
    std::vector<double> rw(bank.d);
    for (int n1 = 0; n1 < n; ++n1) {
        R.apply(bank.design.point(n1), rw.data());
        for (int n2 = 0; n2 < n; ++n2) {
            double x = 0.0;
            const double* w2 = bank.design.point(n2);
            for (int k = 0; k < bank.d; ++k) x += rw[k] * w2[k];
            S.entries(n1, n2) = angular::steering_kernel(bank.d, bank.lmax, n, x);
        }
    }
    return S;
}

num::Mat steering_block(int d, int l, const Rotation& R, const designs::SphericalDesign& quad) {
    if (d != 2 && d != 3)
        fail(Status::unsupported, "steering_block: explicit bases exist for d in {2,3} only");
    if (l < 0) fail(Status::argument, "steering_block: negative degree");
    if (R.d != d || quad.d != d) fail(Status::argument, "steering_block: dimension mismatch");
    if (quad.strength < 2 * l)
        fail(Status::verify, "steering_block: quadrature strength " +
                                 std::to_string(quad.strength) + " below the required 2*l = " +
                                 std::to_string(2 * l));

    const int nl = static_cast<int>(sphmath::dim_harmonics(d, l));
    const int q = quad.n();
    const double scale = sphmath::sphere_area(d) / q;
    num::Mat V(nl, nl);
    std::vector<double> rw(d);
    for (int i = 0; i < q; ++i) {
        R.apply(quad.point(i), rw.data());
        auto y0 = sphmath::sph_basis_eval(d, l, quad.point(i));
        auto y1 = sphmath::sph_basis_eval(d, l, rw.data());
        for (int k = 0; k < nl; ++k)
            for (int k2 = 0; k2 < nl; ++k2) V(k, k2) += scale * y1[k] * y0[k2];
    }
    return V;
}

SteeringMatrix steering_matrix_harmonic(const angular::MultiplierBank& bank, const Rotation& R) {
    if (bank.kind != angular::MultiplierBank::Kind::harmonic)
        fail(Status::argument, "steering_matrix_harmonic: bank is not harmonic");
    if (R.d != bank.d)
        fail(Status::argument, "steering_matrix_harmonic: rotation dimension mismatch");

    const int nc = bank.n_channels();
    SteeringMatrix S;
    S.kind = SteeringMatrix::Kind::harmonic_block;
    S.d = bank.d;
    S.lmax = bank.lmax;
    S.rotation = R;
    S.entries = num::Mat(nc, nc);
    int offset = 0;
    while (offset < nc) {
        const int l = bank.channels[offset].first;
        const int nl = static_cast<int>(sphmath::dim_harmonics(bank.d, l));
        const auto quad = designs::strong_quadrature(bank.d, 2 * l);
        const num::Mat V = steering_block(bank.d, l, R, quad);
        for (int k = 0; k < nl; ++k)
            for (int k2 = 0; k2 < nl; ++k2) S.entries(offset + k, offset + k2) = V(k, k2);
        offset += nl;
    }
    return S;
}

frame::Pyramid steer_pyramid(const frame::Pyramid& pyramid, const SteeringMatrix& S) {
    const int nc = pyramid.n_channels;
    if (S.entries.rows != nc)
        fail(Status::argument, "steer_pyramid: steering matrix is " +
                                   std::to_string(S.entries.rows) + "x" +
                                   std::to_string(S.entries.cols) + " but the pyramid has " +
                                   std::to_string(nc) + " channels");

    frame::Pyramid out;
    out.shape = pyramid.shape;
    out.J = pyramid.J;
    out.n_channels = nc;
    out.signature = pyramid.signature;
    out.low = pyramid.low;
    out.coeff.resize(pyramid.coeff.size());
    run_parallel(static_cast<int>(pyramid.coeff.size()), [&](int t) {
        const int j = t / nc, n1 = t % nc;
        const size_t total = pyramid.coeff[t].size();
        std::vector<std::complex<double>> acc(total, 0.0);
        for (int n2 = 0; n2 < nc; ++n2) {
            const double s = S.entries(n1, n2);
            if (s == 0.0) continue;
            const auto& src = pyramid.coeff[size_t(j) * nc + n2];
            for (size_t i = 0; i < total; ++i) acc[i] += s * src[i];
        }
        out.coeff[t] = std::move(acc);
    });
    return out;
}

}  // namespace swt::steering
