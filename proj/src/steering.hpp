#pragma once
#include <string>

#include "angular.hpp"
#include "designs.hpp"
#include "frame.hpp"
#include "numerics.hpp"

namespace swt::steering {

// Proper rotation of R^d: orthogonal matrix with determinant +1, checked to
// 1e-12 on construction.
struct Rotation {
    int d = 0;
    num::Mat matrix;

    // R * v for a d-vector
    void apply(const double* v, double* out) const;
};

Rotation rotation_from_angle(double angle);                              // d = 2
Rotation rotation_from_axis_angle(const double axis[3], double angle);   // d = 3, Rodrigues
Rotation rotation_from_matrix(const num::Mat& m);                        // any d, validated

// CLI-facing formats: "angle=<radians>" (d=2), "axis=x,y,z;angle=<radians>"
// (d=3), or d*d comma-separated row-major matrix entries.
Rotation parse_rotation(int d, const std::string& text);

// Design rotated point-by-point; a rotation preserves quadrature strength.
designs::SphericalDesign rotate_design(const designs::SphericalDesign& de, const Rotation& R);

// Channel-mixing matrix for rotating coefficients in place of signals.
//   zonal:          [S]_{n1,n2} = Lambda_lmax(R omega_n1 . omega_n2),
//                   Lambda_lmax(x) = sum_l (N(d,l)/n_max) P_l(d;x)
//   harmonic-block: block-diagonal with one orthogonal V_l per bank degree
struct SteeringMatrix {
    enum class Kind { zonal, harmonic_block };
    Kind kind = Kind::zonal;
    int d = 0;
    int lmax = 0;
    Rotation rotation;
    num::Mat entries;  // n_channels x n_channels
};

// Requires the bank's flat per-degree weights (the equal-weight construction is
// the one whose steering matrix is a single zonal kernel) and its verified
// 2*lmax design.  S maps the channel functions of the bank onto those of the
// bank built on the rotated design: sum_n2 S_{n1,n2} m_{n2}(w) = m'_{n1}(w).
SteeringMatrix steering_matrix_zonal(const angular::MultiplierBank& bank, const Rotation& R);

// One degree-l block, by quadrature over a design of strength >= 2l:
//   [V_l]_{k,k'} = (sigma/Q) sum_q Y_{l,k}(R omega_q) Y_{l,k'}(omega_q),
// so that sum_k' [V_l]_{k,k'} Y_{l,k'}(w) = Y_{l,k}(R w).
num::Mat steering_block(int d, int l, const Rotation& R, const designs::SphericalDesign& quad);

// Blocks for every degree the bank carries, assembled in channel order; the
// quadrature is picked automatically (minimal equiangular grid for d=2, the
// strongest built-in designs for d=3, degrees up to 6).
SteeringMatrix steering_matrix_harmonic(const angular::MultiplierBank& bank, const Rotation& R);

// Left-multiplies the per-scale channel vector at every grid position by S;
// the lowpass array is untouched.  Harmonic blocks preserve channel energy;
// the zonal S is a projection composed with an isometry, so energy can only
// decrease.
frame::Pyramid steer_pyramid(const frame::Pyramid& pyramid, const SteeringMatrix& S);

}  // namespace swt::steering
