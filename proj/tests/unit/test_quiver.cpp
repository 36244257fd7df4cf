#include <algorithm>
#include <cmath>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "picklab/ball_np.hpp"
#include "picklab/oracle.hpp"
#include "picklab/quiver_np.hpp"

using namespace picklab;
using oracle_ref::max_abs;

namespace {

Mat scalar(cplx v) { return Mat::Constant(1, 1, v); }

Mat unit(Eigen::Index n, Eigen::Index a, Eigen::Index b)
{
    Mat e = Mat::Zero(n, n);
    e(a, b) = 1.0;
    return e;
}

Mat block_diag(const Mat& a, const Mat& b)
{
    Mat m = Mat::Zero(a.rows() + b.rows(), a.cols() + b.cols());
    m.topLeftCorner(a.rows(), a.cols()) = a;
    m.bottomRightCorner(b.rows(), b.cols()) = b;
    return m;
}


}  // namespace

TEST_CASE("paths of the two-vertex quiver")
{
    const Quiver g = two_vertex_example();
    std::set<std::string> names;
    for (const auto& p : paths_up_to(g, 2)) names.insert(path_name(g, p));
    CHECK(names == std::set<std::string>{"a", "b", "alpha", "beta", "alpha.alpha", "beta.alpha"});
    CHECK(paths_up_to(g, 2).size() == 6);
    CHECK_THROWS_AS(make_path(g, {0, 1}), Error);  // alpha after beta does not compose
}

TEST_CASE("path counts follow adjacency powers")
{
    for (int d = 1; d <= 3; ++d) {
        const auto p = paths_up_to(single_vertex_loops(d), 4);
        std::vector<std::size_t> per(5, 0);
        for (const auto& x : p) ++per[x.length()];
        for (int n = 0; n <= 4; ++n) CHECK(per[static_cast<std::size_t>(n)] == static_cast<std::size_t>(std::pow(d, n)));
    }
    Rng rng(301);
    for (int trial = 0; trial < 5; ++trial) {
        Quiver g;
        g.vertices = {"0", "1", "2"};
        Eigen::MatrixXd adj = Eigen::MatrixXd::Zero(3, 3);
        std::uniform_int_distribution<int> pick(0, 2);
        for (int a = 0; a < 5; ++a) {
            const int s = pick(rng), r = pick(rng);
            g.arrows.push_back({"x" + std::to_string(a), s, r});
            adj(r, s) += 1.0;
        }
        const auto paths = paths_up_to(g, 5);
        std::vector<double> per(6, 0.0);
        for (const auto& x : paths) per[x.length()] += 1.0;
        Eigen::MatrixXd pw = Eigen::MatrixXd::Identity(3, 3);
        for (int n = 0; n <= 5; ++n) {
            CHECK(per[static_cast<std::size_t>(n)] == pw.sum());
            pw = adj * pw;
        }
    }
}

TEST_CASE("disk_membership and path_power")
{
    const Quiver g = two_vertex_example();
    const GradedSpace one{{1, 1}};
    QuiverPoint zero{PointKind::tensor, {Mat::Zero(1, 1), Mat::Zero(1, 1)}};
    const Membership m0 = disk_membership(g, one, zero);
    CHECK(m0.member);
    CHECK(m0.worst == 0.0);

    QuiverPoint p{PointKind::tensor, {scalar(0.6), scalar(0.6)}};
    const Membership m = disk_membership(g, one, p);
    CHECK(m.member);
    REQUIRE(m.row_norms.size() == 2);
    CHECK(std::abs(m.row_norms[0] - 0.6) < 1e-15);
    CHECK(std::abs(m.row_norms[1] - 0.6) < 1e-15);
    p.blocks[1] = scalar(1.0);
    CHECK_FALSE(disk_membership(g, one, p).member);

    Rng rng(303);
    const GradedSpace dims{{2, 3}};
    const QuiverPoint z = random_quiver_point(rng, g, dims, PointKind::tensor, 0.8);
    CHECK(max_abs(path_power(g, dims, z, vertex_path(1)) - Mat::Identity(3, 3)) == 0.0);
    CHECK(max_abs(path_power(g, dims, z, make_path(g, {1, 0})) - z.blocks[1] * z.blocks[0]) < 1e-15);

    const Quiver loops = single_vertex_loops(2);
    const OperatorTuple t = random_tuple(rng, 2, 3, 0.8);
    QuiverPoint lp{PointKind::tensor, t.z};
    const Path gamma = make_path(loops, {1, 0, 0});
    CHECK(max_abs(path_power(loops, GradedSpace{{3}}, lp, gamma) - word_power(t, Word{{1, 0, 0}})) < 1e-15);

    QuiverPoint bad{PointKind::tensor, {Mat::Zero(2, 2), Mat::Zero(2, 3)}};
    CHECK_THROWS_AS(disk_membership(g, dims, bad), Error);
}

TEST_CASE("pick_qltt on a single vertex matches the word-sum kernel")
{
    Rng rng(307);
    QlttData d;
    d.g = single_vertex_loops(2);
    d.zdims = GradedSpace{{2}};
    d.ydims = GradedSpace{{2}};
    d.udims = GradedSpace{{1}};
    std::vector<OperatorTuple> tuples;
    for (int i = 0; i < 2; ++i) {
        tuples.push_back(random_tuple(rng, 2, 2, 0.2));
        d.z.push_back(QuiverPoint{PointKind::tensor, tuples.back().z});
        d.x.push_back(random_matrix(rng, 3, 4));
        d.y.push_back(random_matrix(rng, 3, 2));
    }
    const QlttReport r = pick_qltt(d);
    REQUIRE(r.per_vertex.size() == 1);
    const Mat& p = r.per_vertex[0].pick;
    REQUIRE(r.levels <= 12);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) {
                    const Mat k = oracle_ref::word_sum(tuples[i], tuples[j], unit(2, a, b), r.levels);
                    const Mat e = d.x[i] * kron(Mat::Identity(2, 2), k) * d.x[j].adjoint() - d.y[i] * k * d.y[j].adjoint();
                    CHECK(max_abs(p.block((i * 2 + a) * 3, (j * 2 + b) * 3, 3, 3) - e) < 1e-12);
                }
}

TEST_CASE("pick_qltt with zero points uses length-0 paths only")
{
    Rng rng(309);
    QlttData d;
    d.g = two_vertex_example();
    d.zdims = GradedSpace{{2, 1}};
    d.ydims = d.udims = GradedSpace{{1, 2}};
    for (int i = 0; i < 2; ++i) {
        d.z.push_back(QuiverPoint{PointKind::tensor, {Mat::Zero(2, 2), Mat::Zero(1, 2)}});
        d.x.push_back(random_matrix(rng, 2, 4));
        d.y.push_back(d.x.back());
    }
    const QlttReport r = pick_qltt(d);
    CHECK(r.feasible);
    for (const auto& v : r.per_vertex) CHECK(max_abs(v.pick) < 1e-14);

    // unit at vertex b lands in the Y_b (x) Z_b columns only
    d.y[0] = random_matrix(rng, 2, 4);
    d.y[1] = random_matrix(rng, 2, 4);
    const QlttReport s = pick_qltt(d);
    const Mat& pb = s.per_vertex[1].pick;
    REQUIRE(pb.rows() == 2 * 1 * 2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            // Y_b (x) Z_b has columns 2, 3 (Z_b is one-dimensional)
            const Mat e = d.x[i].middleCols(2, 2) * d.x[j].middleCols(2, 2).adjoint() -
                          d.y[i].middleCols(2, 2) * d.y[j].middleCols(2, 2).adjoint();
            CHECK(max_abs(pb.block(2 * i, 2 * j, 2, 2) - e) < 1e-14);
        }
}

TEST_CASE("two-vertex QLTRD splits into the two displayed Pick matrices")
{
    Rng rng(311);
    const Quiver g = two_vertex_example();
    QltrdData d;
    d.g = g;
    d.zdims = GradedSpace{{2, 1}};
    d.kappa = 2;
    const int n = 2;
    for (int i = 0; i < n; ++i) {
        d.z.push_back(random_quiver_point(rng, g, d.zdims, PointKind::tensor, 0.7));
        d.x.push_back(random_matrix(rng, 2, 3));
        d.y.push_back(random_matrix(rng, 2, 3) * 0.5);
    }
    const FeasibilityReport r = pick_qltrd(d);
    const Mat q = permute_symmetric(r.pick, vertex_grouping(static_cast<std::size_t>(n * d.kappa), d.zdims));
    const Eigen::Index s1 = n * d.kappa * 2, s2 = n * d.kappa * 1;
    CHECK(max_abs(q.topRightCorner(s1, s2)) == 0.0);
    CHECK(max_abs(q.bottomLeftCorner(s2, s1)) == 0.0);

    Mat p1(s1, s1), p2(s2, s2);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int a = 0; a < d.kappa; ++a)
                for (int b = 0; b < d.kappa; ++b) {
                    const Mat e = unit(2, a, b);
                    const Mat za_i = d.z[i].blocks[0], za_j = d.z[j].blocks[0];
                    const Mat zb_i = d.z[i].blocks[1], zb_j = d.z[j].blocks[1];
                    const Mat xa_i = d.x[i].leftCols(2), xa_j = d.x[j].leftCols(2);
                    const Mat xb_i = d.x[i].rightCols(1), xb_j = d.x[j].rightCols(1);
                    const Mat ya_i = d.y[i].leftCols(2), ya_j = d.y[j].leftCols(2);
                    const Mat yb_i = d.y[i].rightCols(1), yb_j = d.y[j].rightCols(1);
                    const Mat inner = xa_i.adjoint() * e * xa_j + zb_i.adjoint() * xb_i.adjoint() * e * xb_j * zb_j -
                                      ya_i.adjoint() * e * ya_j - zb_i.adjoint() * yb_i.adjoint() * e * yb_j * zb_j;
                    // sum_n (Z_alpha^(i))^{n*} inner (Z_alpha^(j))^n
                    const Mat s = oracle_ref::stein_series(za_i.adjoint(), inner, za_j.adjoint(), 400);
                    p1.block((i * d.kappa + a) * 2, (j * d.kappa + b) * 2, 2, 2) = s;
                    p2.block(i * d.kappa + a, j * d.kappa + b, 1, 1) =
                        xb_i.adjoint() * e * xb_j - yb_i.adjoint() * e * yb_j;
                }
    CHECK(max_abs(q.topLeftCorner(s1, s1) - p1) <= 1e-12 + r.tail_bound);
    CHECK(max_abs(q.bottomRightCorner(s2, s2) - p2) < 1e-14);

    // N = 1, Z = 0, X = Y
    QltrdData z0 = d;
    z0.z = {QuiverPoint{PointKind::tensor, {Mat::Zero(2, 2), Mat::Zero(1, 2)}}};
    z0.x = {d.x[0]};
    z0.y = {d.x[0]};
    CHECK(max_abs(pick_qltrd(z0).pick) == 0.0);
}

TEST_CASE("two-vertex QLTOA permutes into the displayed block-diagonal pair")
{
    Rng rng(313);
    const Quiver g = two_vertex_example();
    QltoaData d;
    d.g = g;
    d.xdims = GradedSpace{{2, 2}};
    d.ydims = GradedSpace{{2, 1}};
    d.udims = GradedSpace{{1, 2}};
    const int n = 3;
    std::vector<Mat> xa, xb, ya, yb;
    for (int i = 0; i < n; ++i) {
        d.t.push_back(random_quiver_point(rng, g, d.xdims, PointKind::operator_argument, 0.8));
        xa.push_back(random_matrix(rng, 2, 2));
        xb.push_back(random_matrix(rng, 2, 1));
        ya.push_back(random_matrix(rng, 2, 1));
        yb.push_back(random_matrix(rng, 2, 2));
        d.x.push_back(block_diag(xa.back(), xb.back()));
        d.y.push_back(block_diag(ya.back(), yb.back()));
    }
    const FeasibilityReport r = pick_qltoa(d);
    const Mat q = permute_symmetric(r.pick, vertex_grouping(n, d.xdims));
    const Eigen::Index s = n * 2;
    // forced zeros are exact
    CHECK(max_abs(q.topRightCorner(s, s)) == 0.0);
    CHECK(max_abs(q.bottomLeftCorner(s, s)) == 0.0);

    Mat p1(s, s), p2(s, s);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const Mat ta_i = d.t[i].blocks[0], ta_j = d.t[j].blocks[0];
            const Mat tb_i = d.t[i].blocks[1], tb_j = d.t[j].blocks[1];
            const Mat inner = xa[i] * xa[j].adjoint() + tb_i * xb[i] * xb[j].adjoint() * tb_j.adjoint() -
                              ya[i] * ya[j].adjoint() - tb_i * yb[i] * yb[j].adjoint() * tb_j.adjoint();
            p1.block(2 * i, 2 * j, 2, 2) = oracle_ref::stein_series(ta_i, inner, ta_j, 400);
            p2.block(2 * i, 2 * j, 2, 2) = xb[i] * xb[j].adjoint() - yb[i] * yb[j].adjoint();
        }
    CHECK(max_abs(q.topLeftCorner(s, s) - p1) <= 1e-10);
    CHECK(max_abs(q.bottomRightCorner(s, s) - p2) < 1e-14);
    CHECK(r.tail_bound < 1e-10);

    // zero points: only the vertex constants remain
    QltoaData z = d;
    for (auto& t : z.t)
        for (auto& b : t.blocks) b.setZero();
    const FeasibilityReport zr = pick_qltoa(z);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const Mat e = block_diag(xa[i] * xa[j].adjoint() - ya[i] * ya[j].adjoint(),
                                     xb[i] * xb[j].adjoint() - yb[i] * yb[j].adjoint());
            CHECK(max_abs(zr.pick.block(4 * i, 4 * j, 4, 4) - e) < 1e-14);
        }

    QltoaData bad = d;
    bad.x[0](0, 2) = 1.0;
    CHECK_THROWS_AS(pick_qltoa(bad), Error);
}

TEST_CASE("single-vertex QLTOA equals the free-semigroup criterion")
{
    Rng rng(317);
    QltoaData d;
    d.g = single_vertex_loops(2);
    d.xdims = GradedSpace{{3}};
    d.ydims = GradedSpace{{2}};
    d.udims = GradedSpace{{1}};
    std::vector<OperatorTuple> z;
    for (int i = 0; i < 2; ++i) {
        z.push_back(random_tuple(rng, 2, 3, 0.7));
        d.t.push_back(QuiverPoint{PointKind::operator_argument, z.back().z});
        d.x.push_back(random_matrix(rng, 3, 2));
        d.y.push_back(random_matrix(rng, 3, 1));
    }
    const FeasibilityReport q = pick_qltoa(d);
    const FeasibilityReport b = pick_nc_ltoa(z, d.x, d.y);
    CHECK(max_abs(q.pick - b.pick) <= 1e-12 + q.tail_bound + b.tail_bound);
}

TEST_CASE("constant_multiplier_check")
{
    Rng rng(319);
    const std::vector<Mat> x{random_matrix(rng, 2, 3), random_matrix(rng, 2, 3)};
    const ConstMultResult same = constant_multiplier_check(x, x, 3);
    CHECK(same.xy.verdict.is_psd);
    REQUIRE(same.delta.has_value());
    CHECK(std::abs(*same.delta - 1.0) < 1e-12);

    Mat x1(1, 2), y1(1, 2);
    x1 << 1, 0;
    y1 << 0, 1;
    const ConstMultResult no = constant_multiplier_check({x1}, {y1}, 2);
    Mat expect(2, 2);
    expect << 1, 0, 0, -1;
    CHECK(max_abs(no.xy.pick - expect) == 0.0);
    CHECK_FALSE(no.xy.verdict.is_psd);
    CHECK_FALSE(no.delta.has_value());

    y1 << 0.5, 0;
    const ConstMultResult half = constant_multiplier_check({x1}, {y1}, 2);
    expect << 0.75, 0, 0, 0;
    CHECK(max_abs(half.xy.pick - expect) == 0.0);
    CHECK(half.xy.verdict.is_psd);
    REQUIRE(half.delta.has_value());
    CHECK(std::abs(*half.delta - 0.5) < 1e-15);

    // the rank-one form is a permutation of the block matrix
    const cplx dl(0.3, -0.6);
    const std::vector<Mat> y{dl * x[0], dl * x[1]};
    const ConstMultResult r = constant_multiplier_check(x, y, 3);
    REQUIRE(r.delta.has_value());
    CHECK(std::abs(*r.delta - dl) < 1e-12);
    auto ev = [](const Mat& m) {
        Eigen::SelfAdjointEigenSolver<Mat> es(hermitize(m));
        return Eigen::VectorXd(es.eigenvalues());
    };
    CHECK((ev(r.rank_one_form) - ev(r.xy.pick)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("two_vertex_toeplitz_norm")
{
    const Mat one = scalar(1.0), zero = scalar(0.0);
    for (int l = 0; l <= 5; ++l) CHECK(std::abs(two_vertex_toeplitz_norm({one}, {zero}, one, l) - 1.0) < 1e-12);
    const cplx c(0.3, 0.4);
    CHECK(std::abs(two_vertex_toeplitz_norm({zero}, {zero}, scalar(c), 4) - std::abs(c)) < 1e-12);
    for (int l = 1; l <= 6; ++l)
        CHECK(std::abs(two_vertex_toeplitz_norm({zero, one}, {zero}, zero, l) - 1.0) < 1e-12);

    Rng rng(331);
    std::vector<Mat> v{random_matrix(rng, 1, 1), random_matrix(rng, 1, 1)}, w{random_matrix(rng, 1, 1)};
    double prev = 0.0;
    for (int l = 0; l <= 8; ++l) {
        const double t = two_vertex_toeplitz_norm(v, w, scalar(0.2), l);
        CHECK(t >= prev - 1e-12);
        prev = t;
    }
}
