#include "frame.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "common.hpp"
#include "dft.hpp"

namespace swt::frame {
namespace {

constexpr double kHalfPi = 1.5707963267948966;

// C^3 monotone step: nu(0)=0, nu(1)=1, nu(t)+nu(1-t)=1, three vanishing
// derivatives at both ends.
double nu(double t) { return t * t * t * t * (35.0 + t * (-84.0 + t * (70.0 - 20.0 * t))); }

std::string bank_descriptor(const angular::MultiplierBank& bank) {
    char buf[160];
    if (bank.kind == angular::MultiplierBank::Kind::zonal)
        std::snprintf(buf, sizeof(buf), "zonal,d=%d,lmax=%d,window=%s,design=%s[%d]", bank.d,
                      bank.lmax, bank.coeffs.window.c_str(), bank.design.source.c_str(),
                      bank.design.n());
    else
        std::snprintf(buf, sizeof(buf), "harmonic,d=%d,lmax=%d,window=%s", bank.d, bank.lmax,
                      bank.coeffs.window.c_str());
    return buf;
}

}  // namespace

double RadialProfile::operator()(double w) const {
    if (w <= 0.125 || w > 0.5) return 0.0;
    if (kind == Kind::simoncelli_logcos) {
        if (w <= 0.25) return std::sin(kHalfPi * std::log2(8.0 * w));
        return std::cos(kHalfPi * std::log2(4.0 * w));
    }
    if (w <= 0.25) return std::sin(kHalfPi * nu(8.0 * w - 1.0));
    return std::cos(kHalfPi * nu(4.0 * w - 1.0));
}

RadialProfile make_radial(const std::string& kind) {
    RadialProfile r;
    r.name = kind;
    if (kind == "simoncelli-logcos")
        r.kind = RadialProfile::Kind::simoncelli_logcos;
    else if (kind == "meyer-smooth")
        r.kind = RadialProfile::Kind::meyer_smooth;
    else
        fail(Status::argument,
             "make_radial: unknown kind '" + kind + "' (simoncelli-logcos, meyer-smooth)");
    return r;
}

double axis_freq(int i, int n) {
    return (i < (n + 1) / 2) ? double(i) / n : double(i - n) / n;
}

std::int64_t SteerableFrame::size() const {
    std::int64_t n = 1;
    for (int s : shape) n *= s;
    return n;
}

std::string SteerableFrame::signature() const {
    std::string s = "swt-frame|" + bank_descriptor(bank) + "|radial=" + radial.name +
                    "|J=" + std::to_string(J) + "|shape=";
    for (size_t k = 0; k < shape.size(); ++k) {
        if (k) s += 'x';
        s += std::to_string(shape[k]);
    }
    return s;
}

SteerableFrame build_frame(const std::vector<int>& shape, int J, const RadialProfile& radial,
                           const angular::MultiplierBank& bank) {
    const int d = static_cast<int>(shape.size());
    if (d < 1) fail(Status::argument, "build_frame: empty shape");
    if (d != bank.d)
        fail(Status::argument, "build_frame: bank dimension " + std::to_string(bank.d) +
                                   " does not match grid dimension " + std::to_string(d));
    if (J < 0) fail(Status::argument, "build_frame: negative scale count");
    const int min_side = (1 << J) * 4;
    for (int s : shape)
        if (s < min_side)
            fail(Status::argument, "build_frame: side " + std::to_string(s) + " too small for J=" +
                                       std::to_string(J) + " scales (need >= " +
                                       std::to_string(min_side) + ")");

    SteerableFrame f;
    f.shape = shape;
    f.J = J;
    f.radial = radial;
    f.bank = bank;
    const std::int64_t total = f.size();
    const int nc = static_cast<int>(bank.n_channels());
    f.band.assign(J, std::vector<double>(total));
    f.lowpass.assign(total, 0.0);
    f.chan.assign(nc, std::vector<double>(total, 0.0));

    std::vector<double> w(d);
    for (std::int64_t idx = 0; idx < total; ++idx) {
        std::int64_t rem = idx;
        double r2 = 0.0;
        for (int k = d - 1; k >= 0; --k) {
            int c = static_cast<int>(rem % shape[k]);
            rem /= shape[k];
            w[k] = axis_freq(c, shape[k]);
            r2 += w[k] * w[k];
        }
        const double r = std::sqrt(r2);
        double band_sum = 0.0;
        for (int j = 0; j < J; ++j) {
            double h = radial(std::ldexp(r, j));  // h(2^j r)
            f.band[j][idx] = h;
            band_sum += h * h;
        }
        // lowpass completion keeps the radial partition exact; at DC (and in
        // the grid corners beyond band 0's support) it carries full weight
        f.lowpass[idx] = std::sqrt(std::max(0.0, 1.0 - band_sum));
        if (r > 0.0) {
            auto m = bank.eval(w.data());
            for (int n = 0; n < nc; ++n) f.chan[n][idx] = m[n];
        }
        // multipliers stay 0 at the DC bin, where direction is undefined
    }

    double res = partition_residual(f);
    if (!(res < 1e-12))
        fail(Status::internal,
             "build_frame: partition-violation, residual " + std::to_string(res));
    return f;
}

double partition_residual(const SteerableFrame& frame) {
    const std::int64_t total = frame.size();
    const int nc = frame.n_channels();
    double worst = 0.0;
    for (std::int64_t idx = 0; idx < total; ++idx) {
        double msum = 0.0;
        for (int n = 0; n < nc; ++n) msum += frame.chan[n][idx] * frame.chan[n][idx];
        double acc = frame.lowpass[idx] * frame.lowpass[idx];
        for (int j = 0; j < frame.J; ++j) acc += frame.band[j][idx] * frame.band[j][idx] * msum;
        worst = std::max(worst, std::fabs(acc - 1.0));
    }
    return worst;
}

double Pyramid::energy() const {
    double e = 0.0;
    for (const auto& arr : coeff)
        for (const auto& z : arr) e += std::norm(z);
    for (const auto& z : low) e += std::norm(z);
    return e;
}

Pyramid analyze(const std::vector<double>& signal, const SteerableFrame& frame) {
    const std::int64_t total = frame.size();
    if (static_cast<std::int64_t>(signal.size()) != total)
        fail(Status::argument, "analyze: signal length does not match frame grid");
    for (double v : signal)
        if (!std::isfinite(v)) fail(Status::argument, "analyze: non-finite sample in signal");

    std::vector<std::complex<double>> fhat(signal.begin(), signal.end());
    dft::forward(frame.shape, fhat.data());

    const int nc = frame.n_channels();
    const int narr = frame.J * nc;
    Pyramid p;
    p.shape = frame.shape;
    p.J = frame.J;
    p.n_channels = nc;
    p.signature = frame.signature();
    p.coeff.resize(narr);

    // the multipliers are real-valued, so conj(m_n) h_j fhat = m_n h_j fhat
    run_parallel(narr + 1, [&](int t) {
        std::vector<std::complex<double>> arr(fhat);
        if (t == narr) {
            for (std::int64_t i = 0; i < total; ++i) arr[i] *= frame.lowpass[i];
            dft::inverse(frame.shape, arr.data());
            p.low = std::move(arr);
        } else {
            const auto& m = frame.chan[t % nc];
            const auto& h = frame.band[t / nc];
            for (std::int64_t i = 0; i < total; ++i) arr[i] *= m[i] * h[i];
            dft::inverse(frame.shape, arr.data());
            p.coeff[t] = std::move(arr);
        }
    });
    return p;
}

std::vector<double> synthesize(const Pyramid& pyramid, const SteerableFrame& frame) {
    if (pyramid.signature != frame.signature())
        fail(Status::argument, "synthesize: pyramid manifest does not match frame (" +
                                   pyramid.signature + " vs " + frame.signature() + ")");
    const std::int64_t total = frame.size();
    const int nc = frame.n_channels();
    const int narr = frame.J * nc;
    if (pyramid.n_channels != nc || pyramid.J != frame.J ||
        static_cast<int>(pyramid.coeff.size()) != narr ||
        static_cast<std::int64_t>(pyramid.low.size()) != total)
        fail(Status::argument, "synthesize: pyramid arrays do not match frame layout");
    for (const auto& arr : pyramid.coeff)
        if (static_cast<std::int64_t>(arr.size()) != total)
            fail(Status::argument, "synthesize: coefficient array has wrong length");

    // transform every array in parallel, then accumulate serially in a fixed
    // order so the result does not depend on the worker count
    std::vector<std::vector<std::complex<double>>> hat(narr + 1);
    run_parallel(narr + 1, [&](int t) {
        hat[t] = (t == narr) ? pyramid.low : pyramid.coeff[t];
        dft::forward(frame.shape, hat[t].data());
    });

    std::vector<std::complex<double>> acc(total, 0.0);
    for (int t = 0; t < narr; ++t) {
        const auto& m = frame.chan[t % nc];
        const auto& h = frame.band[t / nc];
        for (std::int64_t i = 0; i < total; ++i) acc[i] += m[i] * h[i] * hat[t][i];
    }
    for (std::int64_t i = 0; i < total; ++i) acc[i] += frame.lowpass[i] * hat[narr][i];

    dft::inverse(frame.shape, acc.data());
    std::vector<double> out(total);
    for (std::int64_t i = 0; i < total; ++i) out[i] = acc[i].real();
    return out;
}

namespace {

void enumerate_alphas(int d, int max_order, std::vector<int>& cur, int pos, int used,
                      std::vector<std::vector<int>>& out) {
    if (pos == d) {
        out.push_back(cur);
        return;
    }
    for (int a = 0; a + used <= max_order; ++a) {
        cur[pos] = a;
        enumerate_alphas(d, max_order, cur, pos + 1, used + a, out);
    }
    cur[pos] = 0;
}

}  // namespace

MomentReport moments_smoke_check(const SteerableFrame& frame, int max_order) {
    if (frame.J < 1)
        fail(Status::argument, "moments_smoke_check: frame has no band scales (J=0)");
    if (max_order < 0) fail(Status::argument, "moments_smoke_check: negative order");
    const int d = frame.d();
    const std::int64_t total = frame.size();
    const int nc = frame.n_channels();

    // finest-scale filters in the spatial domain
    std::vector<std::vector<std::complex<double>>> psi(nc);
    run_parallel(nc, [&](int n) {
        std::vector<std::complex<double>> g(total);
        for (std::int64_t i = 0; i < total; ++i) g[i] = frame.chan[n][i] * frame.band[0][i];
        dft::inverse(frame.shape, g.data());
        psi[n] = std::move(g);
    });
    std::vector<std::complex<double>> psi_low(frame.lowpass.begin(), frame.lowpass.end());
    dft::inverse(frame.shape, psi_low.data());

    // centered integer coordinates per axis, matching the wrap-around layout
    // of the filters (peak at index 0)
    std::vector<std::vector<double>> coord(d);
    int max_half = 1;
    for (int k = 0; k < d; ++k) {
        coord[k].resize(frame.shape[k]);
        for (int i = 0; i < frame.shape[k]; ++i)
            coord[k][i] = (i < (frame.shape[k] + 1) / 2) ? i : i - frame.shape[k];
        max_half = std::max(max_half, frame.shape[k] / 2);
    }

    std::vector<std::vector<int>> alphas;
    std::vector<int> cur(d, 0);
    enumerate_alphas(d, max_order, cur, 0, 0, alphas);

    auto filter_norm = [&](const std::vector<std::complex<double>>& f) {
        double s = 0.0;
        for (const auto& z : f) s += std::norm(z);
        return std::sqrt(s);
    };
    std::vector<double> psi_norm(nc);
    for (int n = 0; n < nc; ++n) psi_norm[n] = filter_norm(psi[n]);

    MomentReport rep;
    rep.max_order = max_order;
    for (const auto& alpha : alphas) {
        int order = 0;
        for (int a : alpha) order += a;
        // ||x^alpha||^2 factors across axes
        double wnorm2 = 1.0;
        std::vector<std::vector<double>> powv(d);
        for (int k = 0; k < d; ++k) {
            powv[k].resize(frame.shape[k]);
            double s = 0.0;
            for (int i = 0; i < frame.shape[k]; ++i) {
                powv[k][i] = std::pow(coord[k][i], alpha[k]);
                s += powv[k][i] * powv[k][i];
            }
            wnorm2 *= s;
        }
        const double wnorm = std::sqrt(wnorm2);
        // x^alpha exceeding the double mantissa across the grid drowns a
        // genuinely vanishing moment in rounding noise
        const bool reliable =
            order == 0 || order * std::log2(double(std::max(2, max_half))) <= 52.0;

        for (int n = 0; n < nc; ++n) {
            std::complex<double> acc = 0.0;
            for (std::int64_t idx = 0; idx < total; ++idx) {
                std::int64_t rem = idx;
                double wgt = 1.0;
                for (int k = d - 1; k >= 0; --k) {
                    wgt *= powv[k][rem % frame.shape[k]];
                    rem /= frame.shape[k];
                }
                acc += wgt * psi[n][idx];
            }
            MomentEntry e;
            e.alpha = alpha;
            e.order = order;
            e.channel = n;
            e.value = std::abs(acc) / (wnorm * psi_norm[n]);
            e.reliable = reliable;
            if (reliable) rep.worst = std::max(rep.worst, e.value);
            rep.entries.push_back(std::move(e));
        }
    }

    std::complex<double> low_sum = 0.0;
    for (const auto& z : psi_low) low_sum += z;
    rep.lowpass_mean = std::abs(low_sum) / (std::sqrt(double(total)) * filter_norm(psi_low));
    return rep;
}

}  // namespace swt::frame
