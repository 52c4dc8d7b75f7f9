#include "whopf/linalg.hpp"

#include <algorithm>
#include <cmath>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

namespace whopf {

namespace {

struct ThinSvd {
    RVec s;
    Mat u, v;  // m x k and n x k with k = min(m, n)
};

// LAPACK divide and conquer, with the QR-iteration driver as fallback
ThinSvd thin_svd(const Mat& m)
{
    const lapack_int rows = static_cast<lapack_int>(m.rows());
    const lapack_int cols = static_cast<lapack_int>(m.cols());
    const lapack_int k = std::min(rows, cols);
    ThinSvd r;
    r.s.resize(k);
    r.u.resize(rows, k);
    Mat vt(k, cols);
    Mat a = m;
    lapack_int info = LAPACKE_zgesdd(LAPACK_COL_MAJOR, 'S', rows, cols, a.data(), rows, r.s.data(), r.u.data(),
                                     rows, vt.data(), k);
    if (info != 0 || r.s.hasNaN()) {
        a = m;
        RVec superb(std::max<lapack_int>(k, 1));
        info = LAPACKE_zgesvd(LAPACK_COL_MAJOR, 'S', 'S', rows, cols, a.data(), rows, r.s.data(), r.u.data(), rows,
                              vt.data(), k, superb.data());
        if (info != 0)
            throw std::runtime_error("singular value decomposition failed to converge");
    }
    r.v = vt.adjoint();
    return r;
}

}  // namespace

Mat nullspace(const Mat& m, double tol)
{
    const Eigen::Index n = m.cols();
    if (n == 0)
        return Mat(0, 0);
    if (m.rows() == 0)
        return Mat::Identity(n, n);
    Mat a = m;
    if (a.rows() < n) {
        a.conservativeResize(n, n);
        a.bottomRows(n - m.rows()).setZero();
    }
    ThinSvd svd = thin_svd(a);
    const RVec& s = svd.s;
    double cut = tol * std::max(1.0, s.size() ? s(0) : 0.0);
    Eigen::Index rank = 0;
    while (rank < s.size() && s(rank) > cut)
        ++rank;
    return svd.v.rightCols(n - rank);
}

Mat range_basis(const Mat& m, double tol)
{
    if (m.cols() == 0 || m.rows() == 0)
        return Mat(m.rows(), 0);
    ThinSvd svd = thin_svd(m);
    const RVec& s = svd.s;
    double cut = tol * std::max(1.0, s(0));
    Eigen::Index rank = 0;
    while (rank < s.size() && s(rank) > cut)
        ++rank;
    return svd.u.leftCols(rank);
}

KernelBuilder::KernelBuilder(int n) : k_(Mat::Identity(n, n)) {}

void KernelBuilder::add(const Mat& rows, double tol)
{
    if (k_.cols() == 0)
        return;
    if (rows.cols() != k_.rows())
        throw shape_error("kernel constraint has wrong width");
    Mat r = rows * k_;
    if (r.norm() == 0.0)
        return;
    Mat n = nullspace(r, tol);
    k_ = k_ * n;
}

Mat kron(const Mat& a, const Mat& b)
{
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Mat random_complex(int rows, int cols, Rng& rng)
{
    std::normal_distribution<double> g(0.0, 1.0);
    Mat m(rows, cols);
    for (int j = 0; j < cols; ++j)
        for (int i = 0; i < rows; ++i) {
            double re = g(rng);
            double im = g(rng);
            m(i, j) = cplx(re, im);
        }
    return m;
}

double max_abs(const Mat& m)
{
    return m.size() ? m.cwiseAbs().maxCoeff() : 0.0;
}

double max_abs(const Vec& v)
{
    return v.size() ? v.cwiseAbs().maxCoeff() : 0.0;
}

Mat lstsq(const Mat& a, const Mat& b)
{
    Eigen::CompleteOrthogonalDecomposition<Mat> cod(a);
    return cod.solve(b);
}

double min_singular_value(const Mat& m)
{
    if (m.size() == 0)
        return 0.0;
    return thin_svd(m).s.minCoeff();
}

double condition_number(const Mat& m)
{
    if (m.size() == 0)
        return 1.0;
    const RVec s = thin_svd(m).s;
    double lo = s.minCoeff();
    return lo > 0 ? s.maxCoeff() / lo : INFINITY;
}

Perron perron_frobenius(const RMat& m, double tol, int max_iter)
{
    const Eigen::Index n = m.rows();
    Perron out;
    if (n == 0)
        return out;
    // the shift makes irreducible nonnegative matrices primitive
    RMat s = m + RMat::Identity(n, n);
    RVec v = RVec::Constant(n, 1.0 / std::sqrt(double(n)));
    bool converged = false;
    for (int it = 0; it < max_iter; ++it) {
        RVec w = s * v;
        double nw = w.norm();
        if (nw == 0.0)
            break;
        w /= nw;
        if ((w - v).cwiseAbs().maxCoeff() < tol) {
            v = w;
            converged = true;
            break;
        }
        v = w;
    }
    if (!converged) {
        Eigen::EigenSolver<RMat> es(m);
        Eigen::Index best = 0;
        for (Eigen::Index i = 1; i < n; ++i)
            if (es.eigenvalues()(i).real() > es.eigenvalues()(best).real())
                best = i;
        v = es.eigenvectors().col(best).real();
        if (v.sum() < 0)
            v = -v;
        v /= v.norm();
    }
    out.vector = v;
    out.value = v.dot(m * v) / v.dot(v);
    return out;
}

Mat polar_unitary(const Mat& m)
{
    if (m.rows() != m.cols())
        throw shape_error("polar part needs a square matrix");
    ThinSvd svd = thin_svd(m);
    return svd.u * svd.v.adjoint();
}

}  // namespace whopf
