#pragma once
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "angular.hpp"

namespace swt::frame {

// Radial band profile h supported in (1/8, 1/2] whose dyadic dilates tile the
// positive axis: sum_j |h(2^j w)|^2 = 1 for every w in (0, 1/2].  Both kinds
// share the band edges and differ in the transition ramp: "simoncelli-logcos"
// uses the logarithmic cosine ramp (continuous only), "meyer-smooth" the C^3
// polynomial step nu(t) = t^4(35 - 84t + 70t^2 - 20t^3).
struct RadialProfile {
    enum class Kind { simoncelli_logcos, meyer_smooth };
    Kind kind = Kind::simoncelli_logcos;
    std::string name;
    double operator()(double w) const;
};

RadialProfile make_radial(const std::string& kind);

// Centered DFT frequency of index i on an n-point axis, in cycles per sample;
// values lie in [-1/2, 1/2).
double axis_freq(int i, int n);

// A multiscale steerable frame on a fixed periodic grid: J radial bands
// h(2^j|w|), one angular multiplier set shared by every band, and the lowpass
// completion |a_J|^2 = 1 - sum_j |h_j|^2.  All windows are sampled once on the
// centered DFT grid and stored flattened in the row-major signal layout.
// Immutable after build_frame.
struct SteerableFrame {
    std::vector<int> shape;
    int J = 0;
    RadialProfile radial;
    angular::MultiplierBank bank;
    std::vector<std::vector<double>> band;  // J arrays, j = 0 finest
    std::vector<double> lowpass;
    std::vector<std::vector<double>> chan;  // sampled multiplier per channel; 0 at DC

    int d() const { return static_cast<int>(shape.size()); }
    int n_channels() const { return static_cast<int>(chan.size()); }
    std::int64_t size() const;
    // Identifying string (bank kind, dimensions, design, windows, grid); a
    // pyramid carries a copy so synthesize can reject mismatched inputs.
    std::string signature() const;
};

// Samples all windows and verifies the discrete partition
//   sum_j |h_j|^2 (sum_n |m_n|^2) + |a_J|^2 = 1   at every bin (1e-12).
// Every grid side must be >= 2^J * 4 so the coarsest band is resolvable.
SteerableFrame build_frame(const std::vector<int>& shape, int J, const RadialProfile& radial,
                           const angular::MultiplierBank& bank);

// Largest deviation of the discrete partition from 1 over all bins.
double partition_residual(const SteerableFrame& frame);

// Full-resolution transform coefficients: one complex array per (scale,
// channel) plus the lowpass array, scale-major.  For a tight frame the total
// energy equals ||f||^2.
struct Pyramid {
    std::vector<int> shape;
    int J = 0;
    int n_channels = 0;
    std::string signature;
    std::vector<std::vector<std::complex<double>>> coeff;  // coeff[j*n_channels + n]
    std::vector<std::complex<double>> low;

    double energy() const;
};

// Forward transform: each coefficient array is the inverse DFT of
// conj(m_n) * h_j * fhat; the lowpass is the inverse DFT of a_J * fhat.
Pyramid analyze(const std::vector<double>& signal, const SteerableFrame& frame);

// Adjoint reconstruction: inverse DFT of sum_{j,n} m_n h_j chat_{j,n} + a_J chat_low.
// Exact inverse of analyze up to DFT rounding.
std::vector<double> synthesize(const Pyramid& pyramid, const SteerableFrame& frame);

// One discrete moment sum_x x^alpha psi(x) of a finest-scale channel filter,
// reported as |moment| / (||x^alpha|| ||psi||) so values are comparable across
// orders.  An entry is flagged unreliable when x^alpha spans more than the
// 52-bit double mantissa across the grid, making a tiny true moment
// numerically unobservable.
struct MomentEntry {
    std::vector<int> alpha;
    int order = 0;
    int channel = 0;
    double value = 0.0;
    bool reliable = true;
};

struct MomentReport {
    int max_order = 0;
    double worst = 0.0;         // largest reliable band-channel entry
    double lowpass_mean = 0.0;  // normalized order-0 moment of the lowpass filter
    std::vector<MomentEntry> entries;
};

MomentReport moments_smoke_check(const SteerableFrame& frame, int max_order);

}  // namespace swt::frame
