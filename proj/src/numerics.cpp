#include "numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "common.hpp"

namespace swt::num {

Mat mat_mul(const Mat& A, const Mat& B) {
    if (A.cols != B.rows) fail(Status::internal, "mat_mul: inner dimensions differ");
    Mat C(A.rows, B.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int k = 0; k < A.cols; ++k) {
            double aik = A(i, k);
            if (aik == 0.0) continue;
            for (int j = 0; j < B.cols; ++j) C(i, j) += aik * B(k, j);
        }
    return C;
}

Mat mat_transpose(const Mat& A) {
    Mat T(A.cols, A.rows);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) T(j, i) = A(i, j);
    return T;
}

double mat_max_diff(const Mat& A, const Mat& B) {
    if (A.rows != B.rows || A.cols != B.cols) fail(Status::internal, "mat_max_diff: shape mismatch");
    double worst = 0.0;
    for (size_t i = 0; i < A.a.size(); ++i) worst = std::max(worst, std::fabs(A.a[i] - B.a[i]));
    return worst;
}

double mat_det(const Mat& A) {
    if (A.rows != A.cols) fail(Status::argument, "mat_det: matrix not square");
    Mat M = A;
    const int n = M.rows;
    double det = 1.0;
    for (int k = 0; k < n; ++k) {
        int piv = k;
        for (int i = k + 1; i < n; ++i)
            if (std::fabs(M(i, k)) > std::fabs(M(piv, k))) piv = i;
        if (M(piv, k) == 0.0) return 0.0;
        if (piv != k) {
            for (int j = 0; j < n; ++j) std::swap(M(piv, j), M(k, j));
            det = -det;
        }
        det *= M(k, k);
        for (int i = k + 1; i < n; ++i) {
            double f = M(i, k) / M(k, k);
            for (int j = k; j < n; ++j) M(i, j) -= f * M(k, j);
        }
    }
    return det;
}

namespace {

// Householder reduction of symmetric A (stored in V) to tridiagonal form; V
// accumulates the orthogonal transform, d/e receive the diagonal/subdiagonal.
void tridiagonalize(Mat& V, std::vector<double>& d, std::vector<double>& e) {
    const int n = V.rows;
    d.assign(n, 0.0);
    e.assign(n, 0.0);
    for (int i = n - 1; i > 0; --i) {
        int l = i - 1;
        double h = 0.0, scale = 0.0;
        if (l > 0) {
            for (int k = 0; k <= l; ++k) scale += std::fabs(V(i, k));
            if (scale == 0.0) {
                e[i] = V(i, l);
            } else {
                for (int k = 0; k <= l; ++k) {
                    V(i, k) /= scale;
                    h += V(i, k) * V(i, k);
                }
                double f = V(i, l);
                double g = (f >= 0.0) ? -std::sqrt(h) : std::sqrt(h);
                e[i] = scale * g;
                h -= f * g;
                V(i, l) = f - g;
                f = 0.0;
                for (int j = 0; j <= l; ++j) {
                    V(j, i) = V(i, j) / h;
                    g = 0.0;
                    for (int k = 0; k <= j; ++k) g += V(j, k) * V(i, k);
                    for (int k = j + 1; k <= l; ++k) g += V(k, j) * V(i, k);
                    e[j] = g / h;
                    f += e[j] * V(i, j);
                }
                double hh = f / (h + h);
                for (int j = 0; j <= l; ++j) {
                    f = V(i, j);
                    e[j] = g = e[j] - hh * f;
                    for (int k = 0; k <= j; ++k) V(j, k) -= f * e[k] + g * V(i, k);
                }
            }
        } else {
            e[i] = V(i, l);
        }
        d[i] = h;
    }
    d[0] = 0.0;
    e[0] = 0.0;
    for (int i = 0; i < n; ++i) {
        int l = i - 1;
        if (d[i] != 0.0) {
            for (int j = 0; j <= l; ++j) {
                double g = 0.0;
                for (int k = 0; k <= l; ++k) g += V(i, k) * V(k, j);
                for (int k = 0; k <= l; ++k) V(k, j) -= g * V(k, i);
            }
        }
        d[i] = V(i, i);
        V(i, i) = 1.0;
        for (int j = 0; j <= l; ++j) V(j, i) = V(i, j) = 0.0;
    }
}

double hypot2(double a, double b) { return std::hypot(a, b); }

// Implicit-shift QL on the tridiagonal (d, e); V accumulates eigenvectors.
void ql_implicit(std::vector<double>& d, std::vector<double>& e, Mat& V) {
    const int n = static_cast<int>(d.size());
    for (int i = 1; i < n; ++i) e[i - 1] = e[i];
    e[n - 1] = 0.0;
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
                if (std::fabs(e[m]) <= 1e-300 + 2.3e-16 * dd) break;
            }
            if (m != l) {
                if (++iter == 50) fail(Status::numeric, "sym_eig: QL iteration cap exceeded");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = hypot2(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + (g >= 0.0 ? std::fabs(r) : -std::fabs(r)));
                double s = 1.0, c = 1.0, p = 0.0;
                int i;
                for (i = m - 1; i >= l; --i) {
                    double f = s * e[i];
                    double b = c * e[i];
                    r = hypot2(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        // deflation: split off a converged eigenvalue mid-sweep
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    for (int k = 0; k < n; ++k) {
                        f = V(k, i + 1);
                        V(k, i + 1) = s * V(k, i) + c * f;
                        V(k, i) = c * V(k, i) - s * f;
                    }
                }
                if (r == 0.0 && i >= l) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
}

}  // namespace

void sym_eig(const Mat& A, std::vector<double>& eval, Mat& V) {
    if (A.rows != A.cols) fail(Status::internal, "sym_eig: matrix not square");
    const int n = A.rows;
    V = A;
    std::vector<double> e;
    tridiagonalize(V, eval, e);
    ql_implicit(eval, e, V);
    // sort ascending, permuting columns along
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int i, int j) { return eval[i] < eval[j]; });
    std::vector<double> ev(n);
    Mat W(n, n);
    for (int j = 0; j < n; ++j) {
        ev[j] = eval[order[j]];
        for (int i = 0; i < n; ++i) W(i, j) = V(i, order[j]);
    }
    eval = ev;
    V = W;
}

void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
    if (n < 1) fail(Status::internal, "gauss_legendre: n < 1");
    x.assign(n, 0.0);
    w.assign(n, 0.0);
    const int mid = (n + 1) / 2;
    for (int i = 0; i < mid; ++i) {
        // Chebyshev-like initial guess for the i-th root of P_n
        double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (z * p0 - p1) / (z * z - 1.0);
            double z1 = z;
            z = z1 - p0 / pp;
            if (std::fabs(z - z1) < 1e-15) break;
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
    }
    return;
}

double gl_integrate(const std::function<double(double)>& f, double a, double b, int n) {
    std::vector<double> x, w;
    gauss_legendre(n, x, w);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += w[i] * f(mid + half * x[i]);
    return s * half;
}

namespace {

struct Panel {
    double a, b;
    double val;   // 31-node estimate
    double aval;  // 31-node estimate of |f|
    double err;   // |I31 - I15|
};

Panel make_panel(const std::function<double(double)>& f, double a, double b,
                 const std::vector<double>& x15, const std::vector<double>& w15,
                 const std::vector<double>& x31, const std::vector<double>& w31) {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double i15 = 0.0;
    for (size_t i = 0; i < x15.size(); ++i) i15 += w15[i] * f(mid + half * x15[i]);
    double i31 = 0.0, a31 = 0.0;
    for (size_t i = 0; i < x31.size(); ++i) {
        double v = f(mid + half * x31[i]);
        i31 += w31[i] * v;
        a31 += w31[i] * std::fabs(v);
    }
    return Panel{a, b, i31 * half, a31 * half, std::fabs(i31 - i15) * half};
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f,
                          const std::vector<double>& breakpoints, double rel_tol,
                          double floor_scale) {
    if (breakpoints.size() < 2) fail(Status::internal, "integrate_adaptive: need an interval");
    static thread_local std::vector<double> x15, w15, x31, w31;
    if (x15.empty()) {
        gauss_legendre(15, x15, w15);
        gauss_legendre(31, x31, w31);
    }
    std::vector<Panel> panels;
    for (size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        if (breakpoints[i + 1] <= breakpoints[i]) continue;
        panels.push_back(make_panel(f, breakpoints[i], breakpoints[i + 1], x15, w15, x31, w31));
    }
    if (panels.empty()) return 0.0;
    const int max_splits = 4000;
    for (int splits = 0;; ++splits) {
        double total = 0.0, abs_total = 0.0, err = 0.0;
        size_t worst = 0;
        for (size_t i = 0; i < panels.size(); ++i) {
            total += panels[i].val;
            abs_total += panels[i].aval;
            err += panels[i].err;
            if (panels[i].err > panels[worst].err) worst = i;
        }
        double target = rel_tol * std::max(std::fabs(total), floor_scale * abs_total);
        if (abs_total == 0.0 || err <= target) return total;
        if (splits >= max_splits)
            fail(Status::numeric, "integrate_adaptive: tolerance not reached within split budget");
        Panel p = panels[worst];
        double mid = 0.5 * (p.a + p.b);
        if (mid <= p.a || mid >= p.b)
            fail(Status::numeric, "integrate_adaptive: panel width underflow before convergence");
        panels[worst] = make_panel(f, p.a, mid, x15, w15, x31, w31);
        panels.push_back(make_panel(f, mid, p.b, x15, w15, x31, w31));
    }
}

}  // namespace swt::num
