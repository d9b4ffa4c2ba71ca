#include "designs.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>

#include "common.hpp"
#include "sphmath.hpp"

namespace swt::designs {

namespace {

SphericalDesign make_design(int d, int strength, std::vector<double> pts, std::string source) {
    SphericalDesign de;
    de.d = d;
    de.strength = strength;
    de.points = std::move(pts);
    de.source = std::move(source);
    return de;
}

SphericalDesign equiangular(int n) {
    if (n < 1) fail(Status::argument, "equiangular design needs n >= 1");
    std::vector<double> pts(2 * static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) {
        double th = 2.0 * M_PI * k / n;
        pts[2 * k] = std::cos(th);
        pts[2 * k + 1] = std::sin(th);
    }
    return make_design(2, n - 1, std::move(pts), "equiangular(" + std::to_string(n) + ")");
}

SphericalDesign icosahedron() {
    const double phi = 0.5 * (1.0 + std::sqrt(5.0));
    const double s = 1.0 / std::sqrt(1.0 + phi * phi);
    std::vector<double> pts;
    auto push = [&](double x, double y, double z) {
        pts.push_back(x);
        pts.push_back(y);
        pts.push_back(z);
    };
    // cyclic permutations of (0, +-1, +-phi), normalized
    for (double b : {1.0, -1.0})
        for (double c : {phi, -phi}) {
            double v[3] = {0.0, b * s, c * s};
            push(v[0], v[1], v[2]);
            push(v[2], v[0], v[1]);
            push(v[1], v[2], v[0]);
        }
    return make_design(3, 4, std::move(pts), "icosahedron");
}

SphericalDesign dodecahedron() {
    const double phi = 0.5 * (1.0 + std::sqrt(5.0));
    const double r3 = std::sqrt(3.0);
    std::vector<double> pts;
    auto push = [&](double x, double y, double z) {
        pts.push_back(x / r3);
        pts.push_back(y / r3);
        pts.push_back(z / r3);
    };
    for (double sx : {1.0, -1.0})
        for (double sy : {1.0, -1.0})
            for (double sz : {1.0, -1.0}) push(sx, sy, sz);
    // cyclic permutations of (0, +-1/phi, +-phi)
    for (double b : {1.0, -1.0})
        for (double c : {1.0, -1.0}) {
            double v[3] = {0.0, b / phi, c * phi};
            push(v[0], v[1], v[2]);
            push(v[2], v[0], v[1]);
            push(v[1], v[2], v[0]);
        }
    return make_design(3, 4, std::move(pts), "dodecahedron");
}

SphericalDesign octahedron() {
    std::vector<double> pts;
    for (int axis = 0; axis < 3; ++axis)
        for (double s : {1.0, -1.0}) {
            double v[3] = {0.0, 0.0, 0.0};
            v[axis] = s;
            pts.insert(pts.end(), v, v + 3);
        }
    return make_design(3, 3, std::move(pts), "octahedron");
}

SphericalDesign cube() {
    const double r3 = std::sqrt(3.0);
    std::vector<double> pts;
    for (double sx : {1.0, -1.0})
        for (double sy : {1.0, -1.0})
            for (double sz : {1.0, -1.0}) {
                pts.push_back(sx / r3);
                pts.push_back(sy / r3);
                pts.push_back(sz / r3);
            }
    return make_design(3, 3, std::move(pts), "cube");
}

// 96-point antipodal 12-design on S^2, produced offline by minimizing the
// equal-weight quadrature residuals to machine zero (worst residual 1.8e-15
// over degrees 1..13 at these rounded coordinates). Verified at first use.
SphericalDesign design96() {
    static const double raw[96][3] = {
#include "design96.inc"
    };
    std::vector<double> pts;
    pts.reserve(96 * 3);
    for (auto& row : raw) pts.insert(pts.end(), row, row + 3);
    return make_design(3, 12, std::move(pts), "design96");
}

}  // namespace

SphericalDesign builtin_design(const std::string& name) {
    if (name == "icosahedron") return icosahedron();
    if (name == "dodecahedron") return dodecahedron();
    if (name == "octahedron") return octahedron();
    if (name == "cube") return cube();
    int n = 0;
    if (std::sscanf(name.c_str(), "equiangular(%d)", &n) == 1) return equiangular(n);
    fail(Status::argument, "unknown builtin design '" + name + "'");
}

namespace {

double gram_residual(const SphericalDesign& de, int l) {
    const int n = de.n();
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        acc += 1.0;  // diagonal, P_l(1) = 1
        for (int j = i + 1; j < n; ++j) {
            double dot = 0.0;
            for (int k = 0; k < de.d; ++k) dot += de.point(i)[k] * de.point(j)[k];
            acc += 2.0 * sphmath::legendre(de.d, l, dot);
        }
    }
    return sphmath::dim_harmonics(de.d, l) * std::fabs(acc) / (static_cast<double>(n) * n);
}

double basis_residual(const SphericalDesign& de, int l) {
    const int n = de.n();
    std::vector<double> sums(static_cast<size_t>(sphmath::dim_harmonics(de.d, l)), 0.0);
    for (int i = 0; i < n; ++i) {
        auto y = sphmath::sph_basis_eval(de.d, l, de.point(i));
        for (size_t k = 0; k < y.size(); ++k) sums[k] += y[k];
    }
    double worst = 0.0;
    for (double s : sums) worst = std::max(worst, std::fabs(s));
    return worst * sphmath::sphere_area(de.d) / n;
}

}  // namespace

VerifyReport verify_design(const SphericalDesign& design, int t) {
    if (design.n() == 0) fail(Status::argument, "verify_design: empty design");
    if (t < 0) fail(Status::argument, "verify_design: t must be >= 0");
    VerifyReport rep;
    rep.residual.resize(t);
    for (int l = 1; l <= t; ++l) {
        double r = gram_residual(design, l);
        if (design.d <= 3) r = std::max(r, basis_residual(design, l));
        rep.residual[l - 1] = r;
        if (r > rep.worst) {
            rep.worst = r;
            rep.worst_degree = l;
        }
    }
    rep.pass = rep.worst < rep.tol;
    return rep;
}

SphericalDesign load_design(const std::string& path, int d, int claimed_t) {
    if (d < 2) fail(Status::argument, "load_design: d must be >= 2");
    std::ifstream in(path);
    if (!in) fail(Status::io, "load_design: cannot open '" + path + "'");
    std::vector<double> vals;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        double v;
        while (ls >> v) vals.push_back(v);
        if (!ls.eof()) fail(Status::io, "load_design: non-numeric token in '" + path + "'");
    }
    if (vals.empty()) fail(Status::io, "load_design: no data in '" + path + "'");
    if (vals.size() % d != 0)
        fail(Status::io, "load_design: " + std::to_string(vals.size()) +
                             " values are not divisible by d=" + std::to_string(d));
    const int n = static_cast<int>(vals.size()) / d;
    for (int i = 0; i < n; ++i) {
        double n2 = 0.0;
        for (int k = 0; k < d; ++k) n2 += vals[i * d + k] * vals[i * d + k];
        double norm = std::sqrt(n2);
        if (std::fabs(norm - 1.0) > 1e-6)
            fail(Status::verify, "load_design: point " + std::to_string(i) +
                                     " has norm " + std::to_string(norm) + " (corrupt file?)");
        // only renormalize genuinely off-sphere points: dividing by 1 +- 1ulp
        // would perturb stored bits and break the exact save/load round trip
        if (std::fabs(norm - 1.0) > 1e-12)
            for (int k = 0; k < d; ++k) vals[i * d + k] /= norm;
    }
    SphericalDesign de = make_design(d, claimed_t, std::move(vals), path);
    VerifyReport rep = verify_design(de, claimed_t);
    if (!rep.pass) {
        // report the lowest failing degree, which is the informative one
        int first = 0;
        for (int l = 1; l <= claimed_t; ++l)
            if (rep.residual[l - 1] >= rep.tol) {
                first = l;
                break;
            }
        std::ostringstream msg;
        msg << "load_design: claimed strength " << claimed_t << " fails at degree " << first
            << " with residual " << rep.residual[first - 1];
        fail(Status::verify, msg.str());
    }
    return de;
}

void save_design(const SphericalDesign& design, const std::string& path) {
    std::ofstream out(path, std::ios::binary);  // binary: keep LF endings everywhere
    if (!out) fail(Status::io, "save_design: cannot write '" + path + "'");
    char buf[64];
    for (int i = 0; i < design.n(); ++i) {
        for (int k = 0; k < design.d; ++k) {
            std::snprintf(buf, sizeof buf, "%.17g", design.point(i)[k]);
            out << (k ? " " : "") << buf;
        }
        out << '\n';
    }
    if (!out) fail(Status::io, "save_design: write failed for '" + path + "'");
}

CharacteristicMatrix characteristic_matrix(const SphericalDesign& design, int lmax) {
    if (lmax < 0) fail(Status::argument, "characteristic_matrix: lmax must be >= 0");
    const int n = design.n();
    const int cols = static_cast<int>(sphmath::dim_harmonics_upto(design.d, lmax));
    CharacteristicMatrix cm;
    cm.lmax = lmax;
    cm.isometry_guaranteed = design.strength >= 2 * lmax;
    cm.U = num::Mat(n, cols);
    const double scale = std::sqrt(sphmath::sphere_area(design.d) / n);
    for (int i = 0; i < n; ++i) {
        auto y = sphmath::sph_basis_upto(design.d, lmax, design.point(i));
        for (int m = 0; m < cols; ++m) cm.U(i, m) = scale * y[m];
    }
    return cm;
}

const SphericalDesign& strong_quadrature(int d, int min_strength) {
    if (min_strength < 0) fail(Status::argument, "strong_quadrature: strength must be >= 0");
    static std::mutex mu;
    static std::map<std::pair<int, int>, SphericalDesign> cache;
    static bool design96_checked = false;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(d, min_strength);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    SphericalDesign de;
    if (d == 2) {
        de = equiangular(std::max(1, min_strength + 1));
    } else if (d == 3 && min_strength <= 4) {
        de = icosahedron();
    } else if (d == 3 && min_strength <= 12) {
        de = design96();
        if (!design96_checked) {
            VerifyReport rep = verify_design(de, 12);
            if (!rep.pass)
                fail(Status::internal, "embedded 96-point design failed its strength-12 check");
            design96_checked = true;
        }
    } else {
        fail(Status::unsupported, "strong_quadrature: no rule for d=" + std::to_string(d) +
                                      " at strength " + std::to_string(min_strength));
    }
    return cache.emplace(key, std::move(de)).first->second;
}

}  // namespace swt::designs
