#pragma once

#include <optional>
#include <vector>

#include "picklab/quiver.hpp"
#include "picklab/report.hpp"

namespace picklab {

// Tensor-calculus data. Z^(i) are tensor points graded by zdims; X_i maps
// Q = (+)_v Y_v (x) Z_v and Y_i maps R = (+)_v U_v (x) Z_v into a common C.
// Inside each vertex summand the Y_v (resp. U_v) index is the outer one.
struct QlttData {
    Quiver g;
    GradedSpace zdims, ydims, udims;
    std::vector<QuiverPoint> z;
    std::vector<Mat> x, y;
};

struct QlttReport {
    std::vector<FeasibilityReport> per_vertex;  // empty report for vertices with dims 0
    std::vector<bool> vertex_present;
    bool feasible = false;
    double tail_bound = 0.0;
    int levels = 0;
};

struct QlttPlan {
    int levels = 0;
    double tail_per_unit = 0.0;  // tail for a unit input B with max_u ||B_uu|| = 1, before the X/Y norms
    double rho = 0.0;
};

void validate_qltt(const QlttData& d);
QlttPlan plan_qltt(const QlttData& d, std::size_t recursions, const SeriesOptions& opt);

// X_i K(Z^(i), Z^(j))[B] X_j^* - Y_i K(...)[B] Y_j^* with the quiver Szego kernel
// K(Z, Z')[B] = sum_g i(I (x) Z^g B_{s s} Z'^{g*}) i^*, truncated after `levels`.
Mat qltt_kernel(const QlttData& d, std::size_t i, std::size_t j, const Mat& b, int levels);

QlttReport pick_qltt(const QlttData& d, const SeriesOptions& opt = {}, Tolerance tol = {});

// Riesz-Dunford data: X_i, Y_i map Z into C; kappa <= dim C basis vectors.
struct QltrdData {
    Quiver g;
    GradedSpace zdims;
    std::vector<QuiverPoint> z;
    std::vector<Mat> x, y;
    int kappa = 0;
};

FeasibilityReport pick_qltrd(const QltrdData& d, const SeriesOptions& opt = {}, Tolerance tol = {});

// Operator-argument data: T^(i) live on the transposed quiver over xdims;
// X^(i): Y -> X and Y^(i): U -> X are block diagonal over Q0.
struct QltoaData {
    Quiver g;
    GradedSpace xdims, ydims, udims;
    std::vector<QuiverPoint> t;
    std::vector<Mat> x, y;
};

FeasibilityReport pick_qltoa(const QltoaData& d, const SeriesOptions& opt = {}, Tolerance tol = {});

// Permutation p with (P M P^T)(k, l) = M(p[k], p[l]) grouping an N-fold block
// matrix over a graded space by vertex: vertex-major, then node, then local index.
std::vector<Eigen::Index> vertex_grouping(std::size_t n, const GradedSpace& dims);
Mat permute_symmetric(const Mat& m, const std::vector<Eigen::Index>& p);

struct ConstMultResult {
    FeasibilityReport xy;  // [X_i e_i' e_j'^* X_j^* - Y_i e_i' e_j'^* Y_j^*]
    Mat rank_one_form;     // col(X e_i') col(X e_i')^* - col(Y e_i') col(Y e_i')^*
    std::optional<cplx> delta;
};

ConstMultResult constant_multiplier_check(const std::vector<Mat>& x, const std::vector<Mat>& y, int kappa,
                                          Tolerance tol = {});

// Largest singular value of the truncation to blocks 0..L of
// [[M_V, 0], [M_W, M_B0]] on H^2_A (+) H^2_B.
double two_vertex_toeplitz_norm(const std::vector<Mat>& v, const std::vector<Mat>& w, const Mat& b0, int l);

}  // namespace picklab
