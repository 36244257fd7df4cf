#pragma once

#include <vector>

#include "picklab/report.hpp"
#include "picklab/words.hpp"

namespace picklab {

struct BallOptions {
    SeriesOptions series;
    // Sum over n in Z_+^d without multinomial weights, as printed in the
    // commutative operator-argument statement. Off by default.
    bool literal_unweighted = false;
    double commute_tol = 1e-12;
};

// Points of the commutative ball are d-vectors with sum |lambda_k|^2 < 1.
using BallPoint = std::vector<cplx>;

cplx ball_inner(const BallPoint& a, const BallPoint& b);  // sum a_k conj b_k

// [(I - W_i W_j^*) / (1 - <lambda_i, lambda_j>)]
FeasibilityReport pick_da_fov(const std::vector<BallPoint>& lambda, const std::vector<Mat>& w, Tolerance tol = {});
FeasibilityReport pick_da_lt(const std::vector<BallPoint>& lambda, const std::vector<Mat>& x, const std::vector<Mat>& y,
                             Tolerance tol = {});

// blocks sum over words of (Z^(i))^g (X_i X_j^* - Y_i Y_j^*) (Z^(j))^{g*}
FeasibilityReport pick_nc_ltoa(const std::vector<OperatorTuple>& z, const std::vector<Mat>& x,
                               const std::vector<Mat>& y, const SeriesOptions& opt = {}, Tolerance tol = {});

// Commuting tuples: the free word sum (default) or the literal unweighted
// multi-index sum computed by nested Stein solves.
FeasibilityReport pick_da_ltoa(const std::vector<OperatorTuple>& z, const std::vector<Mat>& x,
                               const std::vector<Mat>& y, const BallOptions& opt = {}, Tolerance tol = {});

// sum_{|n| <= max_degree} (|n|! / n!) Z_i^n M Z_j^{*n} for commuting tuples.
Mat da_multinomial_sum(const OperatorTuple& zi, const OperatorTuple& zj, const Mat& m, int max_degree);

// blocks sum_g (Z^(i))^g (e_i' e_j'^* - W_i e_i' e_j'^* W_j^*) (Z^(j))^{g*}
FeasibilityReport pick_nc_frd(const std::vector<OperatorTuple>& z, const std::vector<Mat>& w, int kappa,
                              const SeriesOptions& opt = {}, Tolerance tol = {});
// blocks sum_g (Z^(i))^{g*} (e_i' e_j'^* - W_i^* e_i' e_j'^* W_j) (Z^(j))^g
FeasibilityReport pick_nc_frd_star(const std::vector<OperatorTuple>& z, const std::vector<Mat>& w, int kappa,
                                   const SeriesOptions& opt = {}, Tolerance tol = {});

}  // namespace picklab
