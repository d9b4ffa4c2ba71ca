#pragma once
#include <string>
#include <vector>

#include "numerics.hpp"

namespace swt::designs {

// Equal-weight quadrature point set on S^{d-1} with a claimed design strength t:
// the point average integrates every spherical harmonic of degree <= t exactly.
struct SphericalDesign {
    int d = 0;
    int strength = 0;
    std::vector<double> points;  // n x d, row-major
    std::string source;

    int n() const { return d == 0 ? 0 : static_cast<int>(points.size()) / d; }
    const double* point(int i) const { return points.data() + static_cast<size_t>(i) * d; }
};

// Per-degree quadrature residuals for degrees 1..t (index l-1).
struct VerifyReport {
    std::vector<double> residual;
    int worst_degree = 0;
    double worst = 0.0;
    double tol = 1e-10;
    bool pass = false;
};

// U with [U]_{n,m} = sqrt(sigma/n_max) Y_m(omega_n), columns over degrees 0..lmax.
// isometry_guaranteed records whether the design strength covers 2*lmax; when it
// does not, the matrix is still returned (U^T U != I in general).
struct CharacteristicMatrix {
    num::Mat U;
    int lmax = 0;
    bool isometry_guaranteed = false;
};

// Named built-in designs: "equiangular(n)" (d=2, strength n-1), "icosahedron" (12
// points, strength 4), "dodecahedron" (20, strength 4), "octahedron" (6, strength 3),
// "cube" (8, strength 3). Unknown names raise Status::argument.
SphericalDesign builtin_design(const std::string& name);

// Plain-text design file: either n lines of d floats or one stream of n*d floats;
// '#' comment lines ignored. Points must be unit to 1e-6 (renormalized, or rejected
// beyond that); claimed_t is verified before the design is returned.
SphericalDesign load_design(const std::string& path, int d, int claimed_t);

// n lines of d floats, 17 significant digits.
void save_design(const SphericalDesign& design, const std::string& path);

// Residuals of the equal-weight quadrature identity for degrees 1..t. For d in
// {2,3}: the harder of the explicit-basis residual max_k |(sigma/n) sum_n Y_{l,k}|
// and the zonal Gram residual (N(d,l)/n^2) |sum_{n,n'} P_l(omega_n . omega_n')|;
// for d >= 4 the Gram residual alone (no explicit basis needed).
VerifyReport verify_design(const SphericalDesign& design, int t);

CharacteristicMatrix characteristic_matrix(const SphericalDesign& design, int lmax);

// A design of strength >= min_strength for quadrature-backed internals (harmonic
// steering blocks, orthonormality checks): d=2 equiangular(min_strength+1); d=3 a
// built-in for small strengths, otherwise an embedded 96-point 12-design that is
// runtime-verified once. Strengths beyond 12 in d=3 raise Status::unsupported.
const SphericalDesign& strong_quadrature(int d, int min_strength);

}  // namespace swt::designs
