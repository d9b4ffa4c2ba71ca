#pragma once
#include <cstddef>
#include <functional>
#include <vector>

namespace swt::num {

// Small dense real matrix, row-major. Sized for lmax-by-lmax Gram/steering blocks,
// not for signal data.
struct Mat {
    int rows = 0, cols = 0;
    std::vector<double> a;

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0.0) {}
    double& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    double operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }
};

Mat mat_mul(const Mat& A, const Mat& B);
Mat mat_transpose(const Mat& A);
// max_ij |A_ij - B_ij|
double mat_max_diff(const Mat& A, const Mat& B);
// Determinant by partial-pivot elimination (square matrices only).
double mat_det(const Mat& A);

// Symmetric eigendecomposition: eigenvalues ascending, eigenvectors as columns of V.
// Householder tridiagonalization followed by implicit-shift QL; throws Status::numeric
// if a diagonal fails to converge within the iteration cap.
void sym_eig(const Mat& A, std::vector<double>& eval, Mat& V);

// Gauss-Legendre nodes and weights on [-1,1] (Newton iteration on P_n roots).
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w);

// Fixed n-node Gauss-Legendre integral of f over [a,b].
double gl_integrate(const std::function<double(double)>& f, double a, double b, int n);

// Globally adaptive quadrature over the union of [breakpoints_i, breakpoints_{i+1}]:
// per-panel 15/31-node Gauss-Legendre error estimates, always splitting the worst
// panel, until  sum(err) <= rel_tol * max(|I|, floor_scale * Int|f|).
// The floor keeps the stopping rule meaningful at zero crossings of the integral;
// with floor_scale = 1e-6 the result is still rel_tol-relative wherever the integral
// is not vanishingly small compared to its total variation. Throws Status::numeric
// when the split budget is exhausted.
double integrate_adaptive(const std::function<double(double)>& f,
                          const std::vector<double>& breakpoints, double rel_tol,
                          double floor_scale = 1e-6);

}  // namespace swt::num
