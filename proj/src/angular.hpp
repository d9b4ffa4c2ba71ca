#pragma once
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "designs.hpp"
#include "numerics.hpp"

namespace swt::angular {

// Unit vector of per-degree weights c_0..c_lmax.
struct AngularCoeffs {
    int d = 0;
    int lmax = 0;
    std::vector<double> c;
    std::string window;  // "cubic" | "bspline1" | "bspline3" | "flat" | "optimal" | "custom"
};

// Admissible multiplier collection {m_n}: evaluation normalizes its argument, so
// homogeneity of degree 0 holds structurally; sum_n |m_n|^2 = 1 on the sphere.
struct MultiplierBank {
    enum class Kind { harmonic, zonal };

    Kind kind = Kind::harmonic;
    int d = 0;
    int lmax = 0;
    AngularCoeffs coeffs;
    designs::SphericalDesign design;            // zonal only
    std::vector<std::pair<int, int>> channels;  // harmonic only: (l,k) per channel
    std::vector<double> channel_scale;          // 1.0 unless deliberately corrupted (tests)

    int n_channels() const {
        return kind == Kind::harmonic ? static_cast<int>(channels.size()) : design.n();
    }
    // all channel values at direction w (any nonzero vector; normalized internally)
    std::vector<double> eval(const double* w) const;
    double eval_channel(int ch, const double* w) const;
    // multiply one channel by a factor, breaking admissibility on purpose
    void scale_channel(int ch, double factor);
};

// The localization energy E(P_c; W) = c^T A c in the orthonormal per-degree basis.
struct EnergyProblem {
    int d = 0;
    int lmax = 0;
    num::Mat gram;
};

// Raw weights w_l = a_hat(l/(lmax+1)) for the named window shape, normalized to a
// unit vector. cubic: (1-w)^2(1+2w); bspline1: 1-w; bspline3: b3(2w)/b3(0) with b3
// the centered cubic B-spline; flat: 1.
AngularCoeffs window_coeffs(const std::string& kind, int lmax, int d);

// Normalize an arbitrary weight vector into AngularCoeffs (window tag "custom").
AngularCoeffs coeffs_from(int d, const std::vector<double>& w);

// A_{ll'} = K_d Int_0^pi Pt_l(cos t) Pt_l'(cos t) W(cos t) sin^{d-2} t dt with
// K_d = Gamma(d/2)/(sqrt(pi) Gamma((d-1)/2)) and Pt_l = sqrt(N(d,l)) P_l(d;.),
// which makes W==1 give the identity. Gauss-Legendre at 512 nodes, doubled until
// entries settle to 1e-11 (the theta substitution absorbs the d=2 endpoint
// singularity of (1-t^2)^{-1/2}).
EnergyProblem assemble_gram(int d, int lmax, const std::function<double(double)>& W);

// Unit eigenvector for the smallest (maximize=false) or largest eigenvalue of the
// Gram matrix; sign fixed so the first entry of magnitude > 1e-12 is positive.
AngularCoeffs optimal_coeffs(const EnergyProblem& problem, bool maximize);

// Channels c_l sqrt(sigma/N(d,l)) Y_{l,k}; degrees with c_l = 0 are omitted.
MultiplierBank harmonic_bank(int d, const AngularCoeffs& coeffs);

// Channels m_n(w) = sum_l c_l sqrt(N(d,l)/n_max) P_l(d; omega_n . w); requires a
// design of verified strength >= 2*lmax.
MultiplierBank zonal_bank(const designs::SphericalDesign& design, const AngularCoeffs& coeffs);

// max over quasi-uniform sphere samples of |sum_n |m_n|^2 - 1|. Equiangular grid
// for d=2, Fibonacci lattice for d=3, seeded Gaussian directions for d>=4.
double verify_partition(const MultiplierBank& bank, int samples);

// Unit-coefficient zonal kernel Lambda_c(cos theta) = sum_l c_l sqrt(N(d,l)/n_max) P_l.
std::vector<std::pair<double, double>> kernel_profile(const AngularCoeffs& coeffs, int n_max,
                                                      const std::vector<double>& theta_grid);

// Equal-degree-weight steering kernel Lambda_lmax(x) = sum_l (N(d,l)/n_max) P_l(d;x)
// (the un-normalized kernel of the zonal steering matrix; at x=1 it equals
// N(d+1,lmax)/n_max).
double steering_kernel(int d, int lmax, int n_max, double x);

}  // namespace swt::angular
