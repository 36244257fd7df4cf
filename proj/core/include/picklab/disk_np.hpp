#pragma once

#include <vector>

#include "picklab/report.hpp"

namespace picklab {

enum class DiskVariant { fov, lt, rt, ltoa, rtoa, frd, ltrd, rtrd };

const char* variant_name(DiskVariant v);

// Data for one disk problem. Scalar-point variants use `lambda`; the others use
// `points` (T_i, A_i or Z_i). `a`/`b` hold the direction data in the order of
// the problem statement: (W), (X, Y), (U, V).
struct DiskDataset {
    DiskVariant variant = DiskVariant::fov;
    std::vector<cplx> lambda;
    std::vector<Mat> points;
    std::vector<Mat> a, b;
    int kappa = 0;  // RD variants: number of basis vectors used (finite section)
};

// [(I - W_i W_j^*) / (1 - lambda_i conj lambda_j)]
FeasibilityReport pick_fov(const std::vector<cplx>& lambda, const std::vector<Mat>& w, Tolerance tol = {});
// [(X_i X_j^* - Y_i Y_j^*) / (1 - lambda_i conj lambda_j)]
FeasibilityReport pick_lt(const std::vector<cplx>& lambda, const std::vector<Mat>& x, const std::vector<Mat>& y,
                          Tolerance tol = {});
// [(U_i^* U_j - V_i^* V_j) / (1 - conj lambda_i lambda_j)]
FeasibilityReport pick_rt(const std::vector<cplx>& lambda, const std::vector<Mat>& u, const std::vector<Mat>& v,
                          Tolerance tol = {});
// blocks sum_n T_i^n (X_i X_j^* - Y_i Y_j^*) T_j^{*n}
FeasibilityReport pick_ltoa(const std::vector<Mat>& t, const std::vector<Mat>& x, const std::vector<Mat>& y,
                            Tolerance tol = {});
// blocks sum_n A_i^{*n} (U_i^* U_j - V_i^* V_j) A_j^n
FeasibilityReport pick_rtoa(const std::vector<Mat>& a, const std::vector<Mat>& u, const std::vector<Mat>& v,
                            Tolerance tol = {});

// FRD/RTRD become LTOA data indexed by (i, i'); LTRD becomes RTOA data.
DiskDataset expand_rd_to_ltoa(const DiskDataset& rd);

FeasibilityReport pick_frd(const std::vector<Mat>& z, const std::vector<Mat>& w, int kappa, Tolerance tol = {});
FeasibilityReport pick_ltrd(const std::vector<Mat>& z, const std::vector<Mat>& x, const std::vector<Mat>& y, int kappa,
                            Tolerance tol = {});
FeasibilityReport pick_rtrd(const std::vector<Mat>& z, const std::vector<Mat>& u, const std::vector<Mat>& v, int kappa,
                            Tolerance tol = {});

// Nevanlinna class on the right half-plane: block (i', j') solves
// P Z^* + Z P = e_i' e_j'^* W^* + W e_i' e_j'^*.
FeasibilityReport nevanlinna_rd_check(const Mat& z, const Mat& w, int kappa, Tolerance tol = {});

FeasibilityReport check_disk(const DiskDataset& d, Tolerance tol = {});

}  // namespace picklab
