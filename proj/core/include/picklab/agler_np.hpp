#pragma once

#include <optional>
#include <vector>

#include "picklab/matcore.hpp"
#include "picklab/words.hpp"

namespace picklab {

enum class AglerVariant { scalar_points, nc_ltoa, nc_rd };

const char* agler_variant_name(AglerVariant v);

// scalar_points: lambda[i] in D^d with values f[i].
// nc_ltoa: tuples t[i] of strict contractions with X_i, Y_i.
// nc_rd: tuples z[i] with values W_i and the first kappa basis vectors.
struct AglerProblem {
    AglerVariant variant = AglerVariant::scalar_points;
    int d = 1;
    std::vector<std::vector<cplx>> lambda;
    std::vector<cplx> f;
    std::vector<OperatorTuple> t;
    std::vector<Mat> x, y;
    std::vector<OperatorTuple> z;
    std::vector<Mat> w;
    int kappa = 0;
};

// Every variant reduces to nodes carrying a d-tuple and the target blocks
// R(i, j); scalar points become 1 x 1 tuples and nc_rd nodes are pairs (i, i').
struct AglerSystem {
    int d = 1;
    std::vector<OperatorTuple> t;
    std::vector<Eigen::Index> block;   // per node
    std::vector<Eigen::Index> offset;  // per node
    Eigen::Index size = 0;
    Mat rhs;
};

AglerSystem build_system(const AglerProblem& p);

Mat constraint_rhs(const AglerProblem& p);
// sum_k (K_k(i,j) - T_k^(i) K_k(i,j) T_k^(j)*)
Mat apply_constraint(const std::vector<Mat>& k, const AglerSystem& s);
Mat apply_constraint(const std::vector<Mat>& k, const AglerProblem& p);

struct AglerCertificate {
    std::vector<Mat> kernels;
    double residual_norm = 0.0;
    int iterations = 0;
};

enum class AglerStatus { feasible_with_certificate, infeasible_evidence, unknown };

const char* agler_status_name(AglerStatus s);

struct AglerOptions {
    double tol = 1e-6;
    int max_iter = 10'000;
    bool dykstra = true;
    std::size_t budget = 20'000;  // d * size^2 complex unknowns
    int stall_window = 500;
    double stall_change = 0.01;
};

struct AglerReport {
    AglerStatus status = AglerStatus::unknown;
    std::optional<AglerCertificate> certificate;
    double gap_estimate = 0.0;
    double affine_residual = 0.0;  // least-squares residual of the constraint system itself
    int iterations = 0;
    std::vector<double> gap_history;  // distance between the two projected iterates
};

AglerReport solve_feasibility(const AglerProblem& p, const AglerOptions& opt = {});

struct CertificateCheck {
    double residual = 0.0;
    std::vector<double> min_eigenvalues;
};

CertificateCheck verify_certificate(const AglerProblem& p, const AglerCertificate& c);

}  // namespace picklab
