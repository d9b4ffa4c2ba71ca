// Independent reference implementations used only as test oracles. These are
// deliberately written from the defining formulas, not by calling the library.
#pragma once
#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "numerics.hpp"

namespace oracle {

// Explicit factorial/Gamma sum for the generalized Legendre polynomial:
// P_l(d;x) = l! Gamma((d-1)/2) sum_j (-1/4)^j (1-x^2)^j x^{l-2j} / (j! (l-2j)! Gamma(j+(d-1)/2))
inline double legendre_explicit_sum(int d, int l, double x) {
    double acc = 0.0;
    for (int j = 0; 2 * j <= l; ++j) {
        double term = std::pow(-0.25, j) * std::pow(1.0 - x * x, j) * std::pow(x, l - 2 * j) /
                      (std::tgamma(j + 1.0) * std::tgamma(l - 2 * j + 1.0) *
                       std::tgamma(j + 0.5 * (d - 1)));
        acc += term;
    }
    return std::tgamma(l + 1.0) * std::tgamma(0.5 * (d - 1)) * acc;
}

// Cyclic Jacobi eigensolver for small symmetric matrices; eigenvalues ascending,
// eigenvectors as columns. Independent of the library's Householder+QL path.
inline void jacobi_eig(const swt::num::Mat& A_in, std::vector<double>& eval, swt::num::Mat& V) {
    const int n = A_in.rows;
    swt::num::Mat A = A_in;
    V = swt::num::Mat::identity(n);
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += A(p, q) * A(p, q);
        if (off < 1e-30) break;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                if (std::fabs(A(p, q)) < 1e-300) continue;
                double theta = (A(q, q) - A(p, p)) / (2.0 * A(p, q));
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
                for (int k = 0; k < n; ++k) {
                    double akp = A(k, p), akq = A(k, q);
                    A(k, p) = c * akp - s * akq;
                    A(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    double apk = A(p, k), aqk = A(q, k);
                    A(p, k) = c * apk - s * aqk;
                    A(q, k) = s * apk + c * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    double vkp = V(k, p), vkq = V(k, q);
                    V(k, p) = c * vkp - s * vkq;
                    V(k, q) = s * vkp + c * vkq;
                }
            }
    }
    eval.resize(n);
    for (int i = 0; i < n; ++i) eval[i] = A(i, i);
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int i, int j) { return eval[i] < eval[j]; });
    std::vector<double> ev(n);
    swt::num::Mat W(n, n);
    for (int j = 0; j < n; ++j) {
        ev[j] = eval[order[j]];
        for (int i = 0; i < n; ++i) W(i, j) = V(i, order[j]);
    }
    eval = ev;
    V = W;
}

// Dyadic log-cosine band window written directly from its closed form (the
// library has its own copy inside the radial-profile machinery).
inline double h_logcos(double w) {
    if (w <= 0.125 || w > 0.5) return 0.0;
    return std::cos(0.5 * M_PI * std::log2(4.0 * w));
}

}  // namespace oracle
