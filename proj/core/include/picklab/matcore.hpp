#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "picklab/error.hpp"

namespace picklab {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RealVec = Eigen::VectorXd;

struct PsdVerdict {
    bool is_psd = false;
    double min_eigenvalue = 0.0;
    double tolerance_used = 0.0;
};

// Either a fixed tolerance or "auto" (dim * eps * spectral norm).
struct Tolerance {
    bool automatic = true;
    double value = 0.0;

    static Tolerance auto_scaled() { return {}; }
    static Tolerance fixed(double v) { return {false, v}; }
};

// Vec-size limit for the dense Kronecker solvers; larger problems go through Schur forms.
inline constexpr std::size_t kKroneckerCap = 64;

Mat hermitize(const Mat& m);
bool is_hermitian_exact(const Mat& m);

RealVec hermitian_eigenvalues(const Mat& h);
double min_eigenvalue(const Mat& h);
double auto_tolerance(const Mat& h);
PsdVerdict is_psd(const Mat& h, Tolerance tol = {});

// Projection onto the PSD cone in Frobenius norm (negative eigenvalues clipped).
Mat psd_part(const Mat& h);

double operator_norm(const Mat& m);
double trace_norm(const Mat& m);
double spectral_radius(const Mat& m);

Mat kron(const Mat& a, const Mat& b);
Vec vec(const Mat& m);
Mat unvec(const Vec& v, Eigen::Index rows, Eigen::Index cols);

// Row norm of a 1 x d block row [Z_1 ... Z_d]: sqrt(|| sum Z_k Z_k^* ||).
double row_norm(const std::vector<Mat>& blocks);

enum class SteinMethod { kronecker, schur, doubling };

struct SteinSolution {
    Mat p;
    SteinMethod method = SteinMethod::kronecker;
    double tail_bound = 0.0;  // operator-norm bound on the truncation error
};

// P - A P B^* = Q.
SteinSolution solve_stein_ex(const Mat& a, const Mat& q, const Mat& b);
Mat solve_stein(const Mat& a, const Mat& q, const Mat& b);

// P Z^* + Z P = Q.
Mat solve_lyapunov_rhp(const Mat& z, const Mat& q);

}  // namespace picklab

namespace picklab {

// Default cap on enumerated words/paths and on matrix products per dataset.
inline constexpr std::size_t kDefaultWorkBudget = 10'000'000;

}  // namespace picklab
