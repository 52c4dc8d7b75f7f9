#pragma once

#include <Eigen/Dense>

#include <complex>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace whopf {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;
using Rng = std::mt19937_64;

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// shapes or owners do not line up
struct shape_error : error {
    using error::error;
};

// input does not describe the structure it claims to
struct invalid_structure : error {
    using error::error;
};

// orthonormal columns spanning ker(m); singular values below tol*max(1, |m|) count as zero
Mat nullspace(const Mat& m, double tol = 1e-9);

// orthonormal columns spanning the column space of m
Mat range_basis(const Mat& m, double tol = 1e-9);

// Intersects kernels one constraint block at a time, so the stacked system is never formed.
class KernelBuilder {
public:
    explicit KernelBuilder(int n);
    void add(const Mat& rows, double tol = 1e-9);
    const Mat& basis() const { return k_; }
    int dim() const { return static_cast<int>(k_.cols()); }

private:
    Mat k_;
};

Mat kron(const Mat& a, const Mat& b);
Mat random_complex(int rows, int cols, Rng& rng);
double max_abs(const Mat& m);
double max_abs(const Vec& v);

// least-squares solution of a x = b, complete orthogonal decomposition
Mat lstsq(const Mat& a, const Mat& b);

double min_singular_value(const Mat& m);
double condition_number(const Mat& m);

// spectral radius and positive eigenvector of a nonnegative real matrix
struct Perron {
    double value = 0.0;
    RVec vector;
};
Perron perron_frobenius(const RMat& m, double tol = 1e-12, int max_iter = 100000);

// unitary factor of the polar decomposition
Mat polar_unitary(const Mat& m);

}  // namespace whopf
