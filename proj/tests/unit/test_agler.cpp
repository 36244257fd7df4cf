#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "picklab/agler_np.hpp"
#include "picklab/disk_np.hpp"
#include "picklab/oracle.hpp"

using namespace picklab;
using oracle_ref::max_abs;

namespace {

AglerProblem scalar_problem(std::vector<std::vector<cplx>> lambda, std::vector<cplx> f)
{
    AglerProblem p;
    p.variant = AglerVariant::scalar_points;
    p.d = static_cast<int>(lambda.front().size());
    p.lambda = std::move(lambda);
    p.f = std::move(f);
    return p;
}

AglerProblem bidisk_feasible() { return scalar_problem({{0.0, 0.0}, {0.5, 0.0}}, {0.0, 0.5}); }
AglerProblem bidisk_forced() { return scalar_problem({{0.0, 0.0}, {0.0, 0.0}}, {0.0, 0.5}); }

}  // namespace

TEST_CASE("constraint_rhs")
{
    Rng rng(401);
    AglerProblem nc;
    nc.variant = AglerVariant::nc_ltoa;
    nc.d = 2;
    for (int i = 0; i < 2; ++i) {
        nc.t.push_back(random_tuple(rng, 2, 2, 0.5));
        nc.x.push_back(random_matrix(rng, 2, 3));
    }
    nc.y = nc.x;
    CHECK(max_abs(constraint_rhs(nc)) < 1e-15);

    CHECK(max_abs(constraint_rhs(scalar_problem({{0.1, 0.2}, {0.3, 0.4}, {0.5, 0.0}}, {0.0, 0.0, 0.0})) - Mat::Ones(3, 3)) == 0.0);

    Mat expect(2, 2);
    expect << 1, 1, 1, 0.75;
    CHECK(max_abs(constraint_rhs(bidisk_forced()) - expect) == 0.0);

    // rd blocks e_a e_b^* - W e_a e_b^* W^*
    AglerProblem rd;
    rd.variant = AglerVariant::nc_rd;
    rd.d = 2;
    rd.z = {random_tuple(rng, 2, 2, 0.5)};
    rd.w = {random_matrix(rng, 2, 2)};
    rd.kappa = 2;
    const Mat r = constraint_rhs(rd);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            Mat e = Mat::Zero(2, 2);
            e(a, b) = 1.0;
            CHECK(max_abs(r.block(2 * a, 2 * b, 2, 2) - (e - rd.w[0] * e * rd.w[0].adjoint())) < 1e-15);
        }
}

TEST_CASE("apply_constraint")
{
    Rng rng(403);
    const AglerProblem s = scalar_problem({{cplx(0.3, 0.1), 0.2}, {-0.4, cplx(0, 0.5)}}, {0.1, 0.2});
    CHECK(max_abs(apply_constraint({Mat::Zero(2, 2), Mat::Zero(2, 2)}, s)) == 0.0);

    const AglerProblem d1 = scalar_problem({{0.3}, {cplx(-0.2, 0.6)}}, {0.0, 0.0});
    const Mat k = hermitize(random_matrix(rng, 2, 2));
    const Mat a = apply_constraint({k}, d1);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            CHECK(std::abs(a(i, j) - (1.0 - d1.lambda[i][0] * std::conj(d1.lambda[j][0])) * k(i, j)) < 1e-15);

    AglerProblem nc;
    nc.variant = AglerVariant::nc_ltoa;
    nc.d = 2;
    for (int i = 0; i < 2; ++i) {
        nc.t.push_back(OperatorTuple{{Mat::Zero(2, 2), Mat::Zero(2, 2)}});
        nc.x.push_back(random_matrix(rng, 2, 2));
        nc.y.push_back(random_matrix(rng, 2, 2));
    }
    const Mat k1 = random_matrix(rng, 4, 4), k2 = random_matrix(rng, 4, 4);
    CHECK(max_abs(apply_constraint({k1, k2}, nc) - (k1 + k2)) < 1e-15);

    // linearity
    for (auto& t : nc.t) t = random_tuple(rng, 2, 2, 0.7);
    const Mat l1 = random_matrix(rng, 4, 4), l2 = random_matrix(rng, 4, 4);
    const cplx ca(0.7, -0.2), cb(-1.3, 0.4);
    const Mat lhs = apply_constraint({ca * k1 + cb * l1, ca * k2 + cb * l2}, nc);
    const Mat rhs = ca * apply_constraint({k1, k2}, nc) + cb * apply_constraint({l1, l2}, nc);
    CHECK(max_abs(lhs - rhs) < 1e-14);
}

TEST_CASE("d = 1 agrees with the disk criterion")
{
    Rng rng(409);
    int feasible = 0;
    for (int trial = 0; trial < 12; ++trial) {
        std::vector<std::vector<cplx>> lam;
        std::vector<cplx> lv, f;
        const SchurSample b = sample_blaschke(2, 1000 + static_cast<std::uint64_t>(trial));
        for (int i = 0; i < 3; ++i) {
            lv.push_back(random_in_disk(rng, 0.8));
            lam.push_back({lv.back()});
            // half the instances come from a Schur function
            f.push_back(trial % 2 ? eval_point(b, lv.back())(0, 0) * 0.9 : random_in_disk(rng, 1.0));
        }
        std::vector<Mat> w;
        for (auto v : f) w.push_back(Mat::Constant(1, 1, v));
        const FeasibilityReport disk = pick_fov(lv, w);
        const AglerReport r = solve_feasibility(scalar_problem(lam, f));
        const bool disk_ok = disk.verdict.min_eigenvalue >= -1e-6;
        CHECK(disk_ok == (r.status == AglerStatus::feasible_with_certificate));
        if (r.certificate) {
            ++feasible;
            // the affine set is a single point: the Pick matrix itself
            CHECK(max_abs(r.certificate->kernels[0] - disk.pick) < 1e-6);
        }
    }
    CHECK(feasible > 0);
}

TEST_CASE("bidisk fixtures")
{
    AglerOptions opt;
    const AglerReport ok = solve_feasibility(bidisk_feasible(), opt);
    REQUIRE(ok.status == AglerStatus::feasible_with_certificate);
    REQUIRE(ok.certificate.has_value());
    CHECK(ok.iterations <= 10000);
    CHECK(ok.certificate->residual_norm <= opt.tol);
    const CertificateCheck chk = verify_certificate(bidisk_feasible(), *ok.certificate);
    CHECK(chk.residual <= 2 * opt.tol);
    for (double m : chk.min_eigenvalues) CHECK(m >= -2 * opt.tol);
    // K_1 = all ones, K_2 = 0 is the decomposition
    CHECK(max_abs(ok.certificate->kernels[0] - Mat::Ones(2, 2)) < 1e-2);
    CHECK(max_abs(ok.certificate->kernels[1]) < 1e-2);

    const AglerReport bad = solve_feasibility(bidisk_forced(), opt);
    CHECK(bad.status == AglerStatus::infeasible_evidence);
    CHECK(bad.gap_estimate >= 1e-3);
    CHECK_FALSE(bad.certificate.has_value());
}

TEST_CASE("plain alternating projections never widen the gap")
{
    AglerOptions opt;
    opt.dykstra = false;
    const AglerReport r = solve_feasibility(bidisk_forced(), opt);
    REQUIRE(r.gap_history.size() > 10);
    for (std::size_t k = 1; k < r.gap_history.size(); ++k) CHECK(r.gap_history[k] <= r.gap_history[k - 1] * (1 + 1e-12) + 1e-15);
}

TEST_CASE("verify_certificate")
{
    const AglerProblem zero = scalar_problem({{0.0, 0.0}}, {1.0});
    AglerCertificate c0;
    c0.kernels = {Mat::Zero(1, 1), Mat::Zero(1, 1)};
    CHECK(verify_certificate(zero, c0).residual == 0.0);

    // exact certificate K_1 = ones, K_2 = 0 for f(l) = l_1
    const AglerProblem p = bidisk_feasible();
    AglerCertificate c;
    c.kernels = {Mat::Ones(2, 2), Mat::Zero(2, 2)};
    CHECK(verify_certificate(p, c).residual < 1e-15);
    const double eps = 1e-3;
    c.kernels[0] += eps * Mat::Identity(2, 2);
    // growth eps * (1 - l_i conj l_j) on the diagonal
    double g2 = 0.0;
    for (int i = 0; i < 2; ++i) g2 += std::norm(eps * (1.0 - std::norm(p.lambda[i][0])));
    CHECK(std::abs(verify_certificate(p, c).residual - std::sqrt(g2)) < 1e-15);
}

TEST_CASE("agler errors")
{
    AglerOptions tiny;
    tiny.budget = 4;
    CHECK_THROWS_AS(solve_feasibility(bidisk_feasible(), tiny), BudgetError);
    CHECK_THROWS_AS(solve_feasibility(scalar_problem({{1.0, 0.0}}, {0.0})), Error);

    // an affine system with no solution: T = 0 forces K(i,i) sums, inconsistent across a repeated node
    AglerProblem nc;
    nc.variant = AglerVariant::nc_ltoa;
    nc.d = 1;
    nc.t = {OperatorTuple{{Mat::Identity(1, 1) * 0.0}}};
    nc.x = {Mat::Identity(1, 1)};
    nc.y = {Mat::Identity(1, 1) * 2.0};
    const AglerReport r = solve_feasibility(nc);
    CHECK(r.status == AglerStatus::infeasible_evidence);
}
