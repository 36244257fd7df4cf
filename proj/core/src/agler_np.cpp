#include "picklab/agler_np.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace picklab {

const char* agler_variant_name(AglerVariant v)
{
    switch (v) {
    case AglerVariant::scalar_points: return "scalar_points";
    case AglerVariant::nc_ltoa: return "nc_ltoa";
    case AglerVariant::nc_rd: return "nc_rd";
    }
    return "unknown";
}

const char* agler_status_name(AglerStatus s)
{
    switch (s) {
    case AglerStatus::feasible_with_certificate: return "feasible_with_certificate";
    case AglerStatus::infeasible_evidence: return "infeasible_evidence";
    case AglerStatus::unknown: return "unknown";
    }
    return "unknown";
}

namespace {

void check_strict(const OperatorTuple& t, std::size_t i, int d, const char* what)
{
    t.validate();
    if (t.d() != d) throw Error(Errc::shape, std::string(what) + ": tuples must have d entries");
    for (int k = 0; k < d; ++k) {
        const double nk = operator_norm(t.z[static_cast<std::size_t>(k)]);
        if (!(nk < 1.0)) {
            std::ostringstream os;
            os << what << ": coordinate " << k << " of node " << i << " has norm " << nk << " >= 1";
            throw Error(Errc::domain, os.str());
        }
    }
}

void finish_offsets(AglerSystem& s)
{
    s.offset.assign(s.block.size(), 0);
    s.size = 0;
    for (std::size_t i = 0; i < s.block.size(); ++i) {
        s.offset[i] = s.size;
        s.size += s.block[i];
    }
}

Mat rhs_from(const AglerSystem& s, const std::vector<Mat>& x, const std::vector<Mat>& y)
{
    Mat r(s.size, s.size);
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j)
            r.block(s.offset[i], s.offset[j], s.block[i], s.block[j]) = x[i] * x[j].adjoint() - y[i] * y[j].adjoint();
    return r;
}

}  // namespace

AglerSystem build_system(const AglerProblem& p)
{
    AglerSystem s;
    s.d = p.d;
    if (p.d <= 0) throw Error(Errc::argument, "agler: d must be positive");
    switch (p.variant) {
    case AglerVariant::scalar_points: {
        if (p.lambda.empty()) throw Error(Errc::shape, "agler: no interpolation nodes");
        if (p.f.size() != p.lambda.size()) throw Error(Errc::shape, "agler: one value per point is required");
        for (std::size_t i = 0; i < p.lambda.size(); ++i) {
            if (static_cast<int>(p.lambda[i].size()) != p.d) throw Error(Errc::shape, "agler: points must have d coordinates");
            OperatorTuple t;
            for (cplx l : p.lambda[i]) {
                if (!(std::abs(l) < 1.0)) throw Error(Errc::domain, "agler: point coordinate outside the open disk");
                t.z.push_back(Mat::Constant(1, 1, l));
            }
            s.t.push_back(std::move(t));
            s.block.push_back(1);
        }
        finish_offsets(s);
        s.rhs.resize(s.size, s.size);
        for (std::size_t i = 0; i < p.f.size(); ++i)
            for (std::size_t j = 0; j < p.f.size(); ++j)
                s.rhs(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = 1.0 - p.f[i] * std::conj(p.f[j]);
        break;
    }
    case AglerVariant::nc_ltoa: {
        const std::size_t n = p.t.size();
        if (n == 0) throw Error(Errc::shape, "agler: no interpolation nodes");
        if (p.x.size() != n || p.y.size() != n) throw Error(Errc::shape, "agler: data lists differ in length");
        for (std::size_t i = 0; i < n; ++i) {
            check_strict(p.t[i], i, p.d, "agler");
            const Eigen::Index b = p.t[i].dim();
            if (p.x[i].rows() != b || p.y[i].rows() != b) throw Error(Errc::shape, "agler: X_i, Y_i must map into the space of T^(i)");
            if (p.x[i].cols() != p.x.front().cols() || p.y[i].cols() != p.y.front().cols())
                throw Error(Errc::shape, "agler: X_i (resp. Y_i) must share one input space");
            s.t.push_back(p.t[i]);
            s.block.push_back(b);
        }
        finish_offsets(s);
        s.rhs = rhs_from(s, p.x, p.y);
        break;
    }
    case AglerVariant::nc_rd: {
        const std::size_t n = p.z.size();
        if (n == 0) throw Error(Errc::shape, "agler: no interpolation nodes");
        if (p.w.size() != n) throw Error(Errc::shape, "agler: one value per tuple is required");
        if (p.kappa <= 0) throw Error(Errc::argument, "agler: kappa must be positive");
        std::vector<Mat> x, y;
        for (std::size_t i = 0; i < n; ++i) {
            check_strict(p.z[i], i, p.d, "agler");
            const Eigen::Index b = p.z[i].dim();
            if (p.w[i].rows() != b || p.w[i].cols() != b) throw Error(Errc::shape, "agler: W_i must act on the space of Z^(i)");
            if (p.kappa > b) throw Error(Errc::argument, "agler: kappa exceeds the basis dimension");
            for (int c = 0; c < p.kappa; ++c) {
                const Mat e = Mat::Identity(b, b).col(c);
                x.push_back(e);
                y.push_back(p.w[i] * e);
                s.t.push_back(p.z[i]);
                s.block.push_back(b);
            }
        }
        finish_offsets(s);
        s.rhs = rhs_from(s, x, y);
        break;
    }
    }
    return s;
}

Mat constraint_rhs(const AglerProblem& p)
{
    return build_system(p).rhs;
}

Mat apply_constraint(const std::vector<Mat>& k, const AglerSystem& s)
{
    if (static_cast<int>(k.size()) != s.d) throw Error(Errc::shape, "apply_constraint: one kernel per variable is required");
    for (const auto& m : k)
        if (m.rows() != s.size || m.cols() != s.size) throw Error(Errc::shape, "apply_constraint: kernel has the wrong size");
    Mat out = Mat::Zero(s.size, s.size);
    const std::size_t n = s.block.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (int v = 0; v < s.d; ++v) {
                const auto kb = k[static_cast<std::size_t>(v)].block(s.offset[i], s.offset[j], s.block[i], s.block[j]);
                const Mat& ti = s.t[i].z[static_cast<std::size_t>(v)];
                const Mat& tj = s.t[j].z[static_cast<std::size_t>(v)];
                out.block(s.offset[i], s.offset[j], s.block[i], s.block[j]) += kb - ti * kb * tj.adjoint();
            }
    return out;
}

Mat apply_constraint(const std::vector<Mat>& k, const AglerProblem& p)
{
    return apply_constraint(k, build_system(p));
}

namespace {

double frob_distance(const std::vector<Mat>& a, const std::vector<Mat>& b)
{
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += (a[k] - b[k]).squaredNorm();
    return std::sqrt(s);
}

// Projection onto {apply_constraint(K) = R, K Hermitian}. The constraint only
// couples the d blocks K_k(i, j) at one position, so each upper block is
// projected on its own with a pseudoinverse and mirrored.
class AffineProjector {
public:
    explicit AffineProjector(const AglerSystem& s) : s_(s)
    {
        const std::size_t n = s.block.size();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) {
                Piece pc;
                pc.i = i;
                pc.j = j;
                const Eigen::Index bi = s.block[i], bj = s.block[j], m = bi * bj;
                pc.l.resize(m, m * s.d);
                for (int v = 0; v < s.d; ++v)
                    pc.l.middleCols(m * v, m) = Mat::Identity(m, m) -
                        kron(s.t[j].z[static_cast<std::size_t>(v)].conjugate(), s.t[i].z[static_cast<std::size_t>(v)]);
                Eigen::CompleteOrthogonalDecomposition<Mat> cod(pc.l);
                pc.pinv = cod.pseudoInverse();
                pc.r = vec(s.rhs.block(s.offset[i], s.offset[j], bi, bj));
                lstsq2_ += (i == j ? 1.0 : 2.0) * (pc.l * (pc.pinv * pc.r) - pc.r).squaredNorm();
                pieces_.push_back(std::move(pc));
            }
    }

    double lstsq_residual() const { return std::sqrt(lstsq2_); }

    std::vector<Mat> project(const std::vector<Mat>& k) const
    {
        std::vector<Mat> out = k;
        for (const auto& pc : pieces_) {
            const Eigen::Index bi = s_.block[pc.i], bj = s_.block[pc.j], m = bi * bj;
            Vec v(m * s_.d);
            for (int q = 0; q < s_.d; ++q)
                v.segment(m * q, m) = vec(k[static_cast<std::size_t>(q)].block(s_.offset[pc.i], s_.offset[pc.j], bi, bj));
            v -= pc.pinv * (pc.l * v - pc.r);
            for (int q = 0; q < s_.d; ++q) {
                Mat blk = unvec(v.segment(m * q, m), bi, bj);
                Mat& o = out[static_cast<std::size_t>(q)];
                if (pc.i == pc.j) {
                    o.block(s_.offset[pc.i], s_.offset[pc.i], bi, bi) = hermitize(blk);
                } else {
                    o.block(s_.offset[pc.j], s_.offset[pc.i], bj, bi) = blk.adjoint();
                    o.block(s_.offset[pc.i], s_.offset[pc.j], bi, bj) = std::move(blk);
                }
            }
        }
        return out;
    }

private:
    struct Piece {
        std::size_t i = 0, j = 0;
        Mat l, pinv;
        Vec r;
    };
    const AglerSystem& s_;
    std::vector<Piece> pieces_;
    double lstsq2_ = 0.0;
};

struct ConeStep {
    std::vector<Mat> x;
    double min_eig = 0.0;  // of the input
};

ConeStep project_cone(const std::vector<Mat>& k)
{
    ConeStep st;
    st.min_eig = std::numeric_limits<double>::infinity();
    for (const auto& m : k) {
        Eigen::SelfAdjointEigenSolver<Mat> es(hermitize(m));
        const RealVec ev = es.eigenvalues();
        st.min_eig = std::min(st.min_eig, ev.size() ? ev.minCoeff() : 0.0);
        st.x.push_back(es.eigenvectors() * ev.cwiseMax(0.0).asDiagonal() * es.eigenvectors().adjoint());
    }
    return st;
}

double min_eig_all(const std::vector<Mat>& k)
{
    double m = std::numeric_limits<double>::infinity();
    for (const auto& x : k) m = std::min(m, x.size() ? min_eigenvalue(x) : 0.0);
    return m;
}

AglerCertificate make_certificate(std::vector<Mat> k, const AglerSystem& s, int it)
{
    AglerCertificate c;
    for (auto& m : k) m = hermitize(m);
    c.residual_norm = (apply_constraint(k, s) - s.rhs).norm();
    c.kernels = std::move(k);
    c.iterations = it;
    return c;
}

}  // namespace

AglerReport solve_feasibility(const AglerProblem& p, const AglerOptions& opt)
{
    const AglerSystem s = build_system(p);
    const double unknowns = static_cast<double>(s.d) * static_cast<double>(s.size) * static_cast<double>(s.size);
    if (unknowns > static_cast<double>(opt.budget)) {
        std::ostringstream os;
        os << "agler: " << unknowns << " unknowns exceed the dense budget " << opt.budget;
        throw BudgetError(os.str(), 0.0);
    }
    if (opt.tol <= 0.0) throw Error(Errc::argument, "agler: tolerance must be positive");
    if (opt.max_iter <= 0) throw Error(Errc::argument, "agler: max_iter must be positive");

    AglerReport rep;
    const AffineProjector aff(s);
    rep.affine_residual = aff.lstsq_residual();
    if (rep.affine_residual > opt.tol) {
        rep.status = AglerStatus::infeasible_evidence;
        rep.gap_estimate = rep.affine_residual;
        return rep;
    }

    const std::size_t d = static_cast<std::size_t>(s.d);
    std::vector<Mat> x(d, Mat::Zero(s.size, s.size)), pc = x, qc = x;
    for (int it = 1; it <= opt.max_iter; ++it) {
        std::vector<Mat> ain = x;
        if (opt.dykstra)
            for (std::size_t k = 0; k < d; ++k) ain[k] += pc[k];
        const std::vector<Mat> y = aff.project(ain);
        std::vector<Mat> cin = y;
        if (opt.dykstra)
            for (std::size_t k = 0; k < d; ++k) {
                pc[k] = ain[k] - y[k];
                cin[k] += qc[k];
            }
        ConeStep cs = project_cone(cin);
        if (opt.dykstra)
            for (std::size_t k = 0; k < d; ++k) qc[k] = cin[k] - cs.x[k];
        x = std::move(cs.x);

        const double gap = frob_distance(y, x);
        rep.gap_history.push_back(gap);
        rep.gap_estimate = gap;
        rep.iterations = it;

        const double y_min = opt.dykstra ? ((it % 10 == 0 || it == 1) ? min_eig_all(y) : -1.0) : cs.min_eig;
        if (y_min >= -opt.tol) {
            rep.status = AglerStatus::feasible_with_certificate;
            rep.certificate = make_certificate(y, s, it);
            return rep;
        }
        const double res = (apply_constraint(x, s) - s.rhs).norm();
        if (res <= opt.tol) {
            rep.status = AglerStatus::feasible_with_certificate;
            rep.certificate = make_certificate(x, s, it);
            return rep;
        }
        const std::size_t w = static_cast<std::size_t>(opt.stall_window);
        if (rep.gap_history.size() > w && gap > 10.0 * opt.tol) {
            const double old = rep.gap_history[rep.gap_history.size() - 1 - w];
            if (std::abs(old - gap) <= opt.stall_change * old) {
                rep.status = AglerStatus::infeasible_evidence;
                return rep;
            }
        }
    }
    rep.status = AglerStatus::unknown;
    return rep;
}

CertificateCheck verify_certificate(const AglerProblem& p, const AglerCertificate& c)
{
    const AglerSystem s = build_system(p);
    CertificateCheck r;
    r.residual = (apply_constraint(c.kernels, s) - s.rhs).norm();
    for (const auto& k : c.kernels) r.min_eigenvalues.push_back(k.size() ? min_eigenvalue(k) : 0.0);
    return r;
}

}  // namespace picklab
