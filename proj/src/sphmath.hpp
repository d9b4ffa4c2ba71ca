#pragma once
#include <functional>
#include <vector>

namespace swt::sphmath {

// Dimension N(d,l) of the space of spherical harmonics of degree l on S^{d-1}:
// C(d+l-1, l) - C(d+l-3, l-2), the second term read as 0 for l < 2.
long long dim_harmonics(int d, int l);

// Dimension of the space of harmonics of degree <= lmax; equals N(d+1, lmax).
long long dim_harmonics_upto(int d, int lmax);

// Surface area of S^{d-1}: 2 pi^{d/2} / Gamma(d/2).
double sphere_area(int d);

// Generalized Legendre polynomial P_l(d;x), normalized so P_l(d;1) = 1.
// Three-term recurrence; |x| may overshoot [-1,1] by 1e-12 (clamped).
double legendre(int d, int l, double x);

// All of P_0(d;x) .. P_lmax(d;x) in one recurrence pass.
std::vector<double> legendre_upto(int d, int lmax, double x);

// Real orthonormal spherical-harmonic basis values at a unit vector, d in {2,3}.
// d=2: {1/sqrt(2pi)} for l=0, {cos(l theta)/sqrt(pi), sin(l theta)/sqrt(pi)} for l>=1.
// d=3: fully normalized real harmonics, per degree ordered [m=0, cos(1), sin(1), ..., cos(l), sin(l)].
// The point is renormalized internally; |point| must be within 1e-12 of 1.
std::vector<double> sph_basis_eval(int d, int l, const double* point);

// Concatenation of sph_basis_eval for l = 0..lmax (length N(d+1,lmax)).
std::vector<double> sph_basis_upto(int d, int lmax, const double* point);

// Spatial radial profile of the wavelet with Fourier data h(|w|) Y(w/|w|), Y of degree l:
//   F(r) = 2 pi r^{-(d+2l-2)/2} Int_0^{1/2} h(s) J_{(d+2l-2)/2}(2 pi r s) s^{d/2} ds,
// the i^l phase factored out (the returned profile is real; parity l mod 4 is the caller's
// bookkeeping). Adaptive quadrature to 1e-8 relative tolerance over the support of h;
// throws Status::numeric if the tolerance is not reached.
double radial_profile_spatial(const std::function<double(double)>& h, int d, int l, double r);

}  // namespace swt::sphmath
