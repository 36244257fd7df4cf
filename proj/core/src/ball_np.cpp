#include "picklab/ball_np.hpp"

#include <cmath>
#include <map>
#include <sstream>

namespace picklab {

cplx ball_inner(const BallPoint& a, const BallPoint& b)
{
    if (a.size() != b.size()) throw Error(Errc::shape, "ball points have different lengths");
    cplx s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * std::conj(b[k]);
    return s;
}

namespace {

void check_ball_points(const std::vector<BallPoint>& lambda)
{
    if (lambda.empty()) throw Error(Errc::shape, "no interpolation nodes");
    const std::size_t d = lambda.front().size();
    if (d == 0) throw Error(Errc::shape, "ball points must have at least one coordinate");
    for (std::size_t i = 0; i < lambda.size(); ++i) {
        if (lambda[i].size() != d) throw Error(Errc::shape, "ball points must share one dimension");
        const double r2 = ball_inner(lambda[i], lambda[i]).real();
        if (!(r2 < 1.0)) {
            std::ostringstream os;
            os << "point " << i << " has squared norm " << r2 << " >= 1";
            throw Error(Errc::domain, os.str());
        }
    }
}

void check_tuples(const std::vector<OperatorTuple>& z, std::size_t nx, std::size_t ny)
{
    if (z.empty()) throw Error(Errc::shape, "no interpolation nodes");
    if (nx != z.size() || ny != z.size()) throw Error(Errc::shape, "data lists differ in length");
    const int d = z.front().d();
    for (std::size_t i = 0; i < z.size(); ++i) {
        z[i].validate();
        if (z[i].d() != d) throw Error(Errc::shape, "tuples must share one length d");
        const double r = z[i].row_norm();
        if (!(r < 1.0)) {
            std::ostringstream os;
            os << "tuple " << i << " has row norm " << r << " >= 1";
            throw Error(Errc::domain, os.str());
        }
    }
}

}  // namespace

FeasibilityReport pick_da_lt(const std::vector<BallPoint>& lambda, const std::vector<Mat>& x, const std::vector<Mat>& y,
                             Tolerance tol)
{
    check_ball_points(lambda);
    const std::size_t n = lambda.size();
    if (x.size() != n || y.size() != n) throw Error(Errc::shape, "pick_da_lt: data lists differ in length");
    const Eigen::Index c = x.front().rows();
    for (std::size_t i = 0; i < n; ++i) {
        if (x[i].rows() != c || y[i].rows() != c) throw Error(Errc::shape, "pick_da_lt: X_i and Y_i must share the row space");
        if (x[i].cols() != x.front().cols() || y[i].cols() != y.front().cols())
            throw Error(Errc::shape, "pick_da_lt: X_i (resp. Y_i) must share one shape");
    }
    Mat p(static_cast<Eigen::Index>(n) * c, static_cast<Eigen::Index>(n) * c);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            p.block(static_cast<Eigen::Index>(i) * c, static_cast<Eigen::Index>(j) * c, c, c) =
                (x[i] * x[j].adjoint() - y[i] * y[j].adjoint()) / (1.0 - ball_inner(lambda[i], lambda[j]));
    return make_report(std::move(p), PickMethod::closed_form, 0.0, tol, std::vector<Eigen::Index>(n, c));
}

FeasibilityReport pick_da_fov(const std::vector<BallPoint>& lambda, const std::vector<Mat>& w, Tolerance tol)
{
    if (w.empty()) throw Error(Errc::shape, "pick_da_fov: no values");
    const Eigen::Index p = w.front().rows(), q = w.front().cols();
    for (const auto& m : w)
        if (m.rows() != p || m.cols() != q) throw Error(Errc::shape, "pick_da_fov: values must share one shape");
    return pick_da_lt(lambda, std::vector<Mat>(w.size(), Mat::Identity(p, p)), w, tol);
}

FeasibilityReport pick_nc_ltoa(const std::vector<OperatorTuple>& z, const std::vector<Mat>& x,
                               const std::vector<Mat>& y, const SeriesOptions& opt, Tolerance tol)
{
    check_tuples(z, x.size(), y.size());
    const std::size_t n = z.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (x[i].rows() != z[i].dim() || y[i].rows() != z[i].dim())
            throw Error(Errc::shape, "pick_nc_ltoa: X_i and Y_i must map into the space of Z^(i)");
        if (x[i].cols() != x.front().cols() || y[i].cols() != y.front().cols())
            throw Error(Errc::shape, "pick_nc_ltoa: X_i (resp. Y_i) must share one column space");
    }
    std::vector<double> r(n);
    double rmax = 0.0;
    for (std::size_t i = 0; i < n; ++i) rmax = std::max(rmax, r[i] = z[i].row_norm());
    const int d = z.front().d();

    std::vector<std::vector<Mat>> m0(n, std::vector<Mat>(n));
    double cmax = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            m0[i][j] = x[i] * x[j].adjoint() - y[i] * y[j].adjoint();
            cmax = std::max(cmax, operator_norm(m0[i][j]));
        }
    const std::size_t blocks = n * (n + 1) / 2;
    const LevelPlan plan = plan_levels(rmax * rmax, cmax, opt, blocks * static_cast<std::size_t>(2 * d), "pick_nc_ltoa");

    std::vector<std::vector<Mat>> out(n, std::vector<Mat>(n));
    double tail2 = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            Mat level = m0[i][j];
            Mat acc = level;
            for (int l = 1; l <= plan.levels; ++l) {
                Mat next = Mat::Zero(level.rows(), level.cols());
                for (int k = 0; k < d; ++k)
                    next += z[i].z[static_cast<std::size_t>(k)] * level * z[j].z[static_cast<std::size_t>(k)].adjoint();
                level = std::move(next);
                acc += level;
            }
            const double rho = r[i] * r[j];
            const double t = rho == 0.0 ? 0.0 : std::pow(rho, plan.levels + 1) / (1.0 - rho) * operator_norm(m0[i][j]);
            tail2 += (i == j ? 1.0 : 2.0) * t * t;
            out[i][j] = std::move(acc);
            if (j != i) out[j][i] = out[i][j].adjoint();
        }
    std::vector<Eigen::Index> bs;
    for (const auto& t : z) bs.push_back(t.dim());
    return make_report(assemble_blocks(out), PickMethod::truncated_series, std::sqrt(tail2), tol, std::move(bs),
                       plan.levels);
}

FeasibilityReport pick_da_ltoa(const std::vector<OperatorTuple>& z, const std::vector<Mat>& x,
                               const std::vector<Mat>& y, const BallOptions& opt, Tolerance tol)
{
    check_tuples(z, x.size(), y.size());
    for (std::size_t i = 0; i < z.size(); ++i) {
        const double defect = z[i].commutator_defect();
        if (defect > opt.commute_tol) {
            std::ostringstream os;
            os << "pick_da_ltoa: tuple " << i << " does not commute (defect " << defect << ")";
            throw Error(Errc::domain, os.str());
        }
    }
    if (!opt.literal_unweighted) return pick_nc_ltoa(z, x, y, opt.series, tol);

    const std::size_t n = z.size();
    for (std::size_t i = 0; i < n; ++i)
        if (x[i].rows() != z[i].dim() || y[i].rows() != z[i].dim())
            throw Error(Errc::shape, "pick_da_ltoa: X_i and Y_i must map into the space of Z^(i)");
    std::vector<std::vector<Mat>> out(n, std::vector<Mat>(n));
    bool series = false;
    double tail2 = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            Mat m = x[i] * x[j].adjoint() - y[i] * y[j].adjoint();
            double t = 0.0;
            // innermost letter first: S_1(S_2(...S_d(M)))
            for (int k = z[i].d() - 1; k >= 0; --k) {
                SteinSolution s = solve_stein_ex(z[i].z[static_cast<std::size_t>(k)], m, z[j].z[static_cast<std::size_t>(k)]);
                if (s.method == SteinMethod::doubling) series = true;
                t += s.tail_bound;
                m = std::move(s.p);
            }
            tail2 += (i == j ? 1.0 : 2.0) * t * t;
            out[i][j] = std::move(m);
            if (j != i) out[j][i] = out[i][j].adjoint();
        }
    std::vector<Eigen::Index> bs;
    for (const auto& t : z) bs.push_back(t.dim());
    return make_report(assemble_blocks(out), series ? PickMethod::truncated_series : PickMethod::stein_solve,
                       std::sqrt(tail2), tol, std::move(bs));
}

Mat da_multinomial_sum(const OperatorTuple& zi, const OperatorTuple& zj, const Mat& m, int max_degree)
{
    zi.validate();
    zj.validate();
    if (zi.d() != zj.d()) throw Error(Errc::shape, "da_multinomial_sum: tuples differ in length");
    const int d = zi.d();
    // Level recursion over multi-indices: entries keyed by n, carrying
    // Z_i^n M Z_j^{*n}. The weight |n|!/n! is applied when summing.
    std::map<std::vector<int>, Mat> level;
    level.emplace(std::vector<int>(static_cast<std::size_t>(d), 0), m);
    Mat acc = m;
    for (int deg = 1; deg <= max_degree; ++deg) {
        std::map<std::vector<int>, Mat> next;
        for (const auto& [idx, val] : level)
            for (int k = 0; k < d; ++k) {
                std::vector<int> n2 = idx;
                ++n2[static_cast<std::size_t>(k)];
                if (next.count(n2)) continue;  // same product for any route through commuting letters
                next.emplace(n2, zi.z[static_cast<std::size_t>(k)] * val * zj.z[static_cast<std::size_t>(k)].adjoint());
            }
        for (const auto& [idx, val] : next) {
            double w = std::lgamma(deg + 1.0);
            for (int c : idx) w -= std::lgamma(c + 1.0);
            acc += std::exp(w) * val;
        }
        level = std::move(next);
    }
    return acc;
}

namespace {

void expand_frd(const std::vector<OperatorTuple>& z, const std::vector<Mat>& w, int kappa,
                std::vector<OperatorTuple>& ze, std::vector<Mat>& xe, std::vector<Mat>& ye)
{
    if (kappa <= 0) throw Error(Errc::argument, "kappa must be positive");
    if (w.size() != z.size()) throw Error(Errc::shape, "data lists differ in length");
    for (std::size_t i = 0; i < z.size(); ++i) {
        z[i].validate();
        const Eigen::Index m = z[i].dim();
        if (w[i].rows() != m || w[i].cols() != m) throw Error(Errc::shape, "W_i must act on the space of Z^(i)");
        if (kappa > m) throw Error(Errc::argument, "kappa exceeds the basis dimension");
        for (int c = 0; c < kappa; ++c) {
            ze.push_back(z[i]);
            xe.push_back(Mat::Identity(m, m).col(c));
            ye.push_back(w[i].col(c));
        }
    }
}

}  // namespace

FeasibilityReport pick_nc_frd(const std::vector<OperatorTuple>& z, const std::vector<Mat>& w, int kappa,
                              const SeriesOptions& opt, Tolerance tol)
{
    if (z.empty()) throw Error(Errc::shape, "pick_nc_frd: no interpolation nodes");
    std::vector<OperatorTuple> ze;
    std::vector<Mat> xe, ye;
    expand_frd(z, w, kappa, ze, xe, ye);
    return pick_nc_ltoa(ze, xe, ye, opt, tol);
}

FeasibilityReport pick_nc_frd_star(const std::vector<OperatorTuple>& z, const std::vector<Mat>& w, int kappa,
                                   const SeriesOptions& opt, Tolerance tol)
{
    // (Z^g)^* = (Z^*)^{g^T}, and the sum runs over all words, so this is the
    // transposed problem at the adjoint tuples.
    std::vector<OperatorTuple> za;
    std::vector<Mat> wa;
    for (const auto& t : z) za.push_back(t.adjoint());
    for (const auto& m : w) wa.push_back(m.adjoint());
    return pick_nc_frd(za, wa, kappa, opt, tol);
}

}  // namespace picklab
