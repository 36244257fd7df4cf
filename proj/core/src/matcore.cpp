#include "picklab/matcore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>

namespace picklab {

namespace {

void require_square(const Mat& m, const char* what)
{
    if (m.rows() != m.cols()) {
        std::ostringstream os;
        os << what << ": expected square matrix, got " << m.rows() << "x" << m.cols();
        throw Error(Errc::dimension, os.str());
    }
}

bool all_finite(const Mat& m)
{
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
    return true;
}

}  // namespace

Mat hermitize(const Mat& m)
{
    require_square(m, "hermitize");
    const Eigen::Index n = m.rows();
    Mat h(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        h(i, i) = cplx(m(i, i).real(), 0.0);
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const cplx v = 0.5 * (m(i, j) + std::conj(m(j, i)));
            h(i, j) = v;
            h(j, i) = std::conj(v);
        }
    }
    return h;
}

bool is_hermitian_exact(const Mat& m)
{
    if (m.rows() != m.cols()) return false;
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = i; j < m.cols(); ++j)
            if (m(i, j) != std::conj(m(j, i))) return false;
    return true;
}

RealVec hermitian_eigenvalues(const Mat& h)
{
    require_square(h, "hermitian_eigenvalues");
    if (h.rows() == 0) return RealVec();
    Eigen::SelfAdjointEigenSolver<Mat> es(h, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) {
        std::ostringstream os;
        os << "Hermitian eigensolver did not converge within "
           << Eigen::SelfAdjointEigenSolver<Mat>::m_maxIterations * h.rows()
           << " QL iterations (dim " << h.rows() << ")";
        throw Error(Errc::numeric, os.str());
    }
    return es.eigenvalues();
}

double min_eigenvalue(const Mat& h)
{
    RealVec ev = hermitian_eigenvalues(h);
    if (ev.size() == 0) throw Error(Errc::dimension, "min_eigenvalue: empty matrix");
    return ev.minCoeff();
}

double auto_tolerance(const Mat& h)
{
    if (h.rows() == 0) return 0.0;
    return static_cast<double>(h.rows()) * std::numeric_limits<double>::epsilon() * operator_norm(h);
}

PsdVerdict is_psd(const Mat& h, Tolerance tol)
{
    double t = tol.automatic ? auto_tolerance(h) : tol.value;
    if (!tol.automatic && !(tol.value >= 0.0)) throw Error(Errc::argument, "is_psd: negative tolerance");
    PsdVerdict v;
    v.min_eigenvalue = min_eigenvalue(h);
    v.tolerance_used = t;
    v.is_psd = v.min_eigenvalue >= -t;
    return v;
}

Mat psd_part(const Mat& h)
{
    require_square(h, "psd_part");
    if (h.rows() == 0) return h;
    Eigen::SelfAdjointEigenSolver<Mat> es(h);
    if (es.info() != Eigen::Success) throw Error(Errc::numeric, "psd_part: eigensolver failed");
    RealVec ev = es.eigenvalues().cwiseMax(0.0);
    const Mat& u = es.eigenvectors();
    Mat r = u * ev.cast<cplx>().asDiagonal() * u.adjoint();
    return hermitize(r);
}

double operator_norm(const Mat& m)
{
    if (m.size() == 0) return 0.0;
    if (std::min(m.rows(), m.cols()) > 16) {
        Eigen::BDCSVD<Mat> svd(m);
        return svd.singularValues()(0);
    }
    Eigen::JacobiSVD<Mat> svd(m);
    return svd.singularValues()(0);
}

double trace_norm(const Mat& m)
{
    if (m.size() == 0) return 0.0;
    Eigen::BDCSVD<Mat> svd(m);
    return svd.singularValues().sum();
}

double spectral_radius(const Mat& m)
{
    require_square(m, "spectral_radius");
    if (m.rows() == 0) return 0.0;
    Eigen::ComplexEigenSolver<Mat> es(m, false);
    if (es.info() != Eigen::Success) throw Error(Errc::numeric, "spectral_radius: eigensolver failed");
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

Mat kron(const Mat& a, const Mat& b)
{
    Mat r(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return r;
}

Vec vec(const Mat& m)
{
    return Eigen::Map<const Vec>(m.data(), m.size());
}

Mat unvec(const Vec& v, Eigen::Index rows, Eigen::Index cols)
{
    if (v.size() != rows * cols) throw Error(Errc::dimension, "unvec: size mismatch");
    return Eigen::Map<const Mat>(v.data(), rows, cols);
}

double row_norm(const std::vector<Mat>& blocks)
{
    if (blocks.empty()) return 0.0;
    Mat g = Mat::Zero(blocks.front().rows(), blocks.front().rows());
    for (const auto& z : blocks) {
        if (z.rows() != g.rows()) throw Error(Errc::dimension, "row_norm: row counts differ");
        g += z * z.adjoint();
    }
    return std::sqrt(std::max(0.0, hermitian_eigenvalues(hermitize(g)).maxCoeff()));
}

namespace {

Mat stein_kronecker(const Mat& a, const Mat& q, const Mat& b)
{
    const Eigen::Index m = a.rows(), n = b.rows();
    Mat k = Mat::Identity(m * n, m * n) - kron(b.conjugate(), a);
    Eigen::PartialPivLU<Mat> lu(k);
    Vec rhs = vec(q);
    Vec x = lu.solve(rhs);
    // two steps of iterative refinement keep the residual at roundoff level
    for (int it = 0; it < 2; ++it) {
        Vec r = rhs - k * x;
        if (r.norm() <= 1e-15 * rhs.norm()) break;
        x += lu.solve(r);
    }
    return unvec(x, m, n);
}

// Bartels-Stewart: with A = Ua Ta Ua^*, B = Ub Tb Ub^* the equation becomes
// X - Ta X Tb^* = C, solved column by column from the last.
class SteinSchur {
public:
    SteinSchur(const Mat& a, const Mat& b) : sa_(a), sb_(b) {}
    bool ok() const { return sa_.info() == Eigen::Success && sb_.info() == Eigen::Success; }
    double radius_a() const { return sa_.matrixT().diagonal().cwiseAbs().maxCoeff(); }
    double radius_b() const { return sb_.matrixT().diagonal().cwiseAbs().maxCoeff(); }

    Mat solve(const Mat& q) const
    {
        const Mat& ta = sa_.matrixT();
        const Mat& tb = sb_.matrixT();
        const Mat& ua = sa_.matrixU();
        const Mat& ub = sb_.matrixU();
        const Eigen::Index m = ta.rows(), n = tb.rows();
        const Mat c = ua.adjoint() * q * ub;
        Mat x = Mat::Zero(m, n);
        for (Eigen::Index j = n - 1; j >= 0; --j) {
            Vec acc = Vec::Zero(m);
            for (Eigen::Index k = j + 1; k < n; ++k) acc += std::conj(tb(j, k)) * x.col(k);
            Vec rhs = c.col(j) + ta * acc;
            // back substitution with I - beta Ta
            const cplx beta = std::conj(tb(j, j));
            for (Eigen::Index i = m - 1; i >= 0; --i) {
                cplx v = rhs(i);
                for (Eigen::Index k = i + 1; k < m; ++k) v += beta * ta(i, k) * x(k, j);
                x(i, j) = v / (1.0 - beta * ta(i, i));
            }
        }
        return ua * x * ub.adjoint();
    }

private:
    Eigen::ComplexSchur<Mat> sa_, sb_;
};

SteinSolution stein_doubling(const Mat& a, const Mat& q, const Mat& b)
{
    Mat ak = a, bk = b, p = q;
    for (int k = 0; k < 64; ++k) {
        const double c = operator_norm(ak) * operator_norm(bk);
        if (c < 1.0) {
            const double tail = c * operator_norm(p) / (1.0 - c);
            if (tail <= 1e-15 * std::max(operator_norm(p), std::numeric_limits<double>::min()) || c == 0.0)
                return {p, SteinMethod::doubling, tail};
        }
        p += ak * p * bk.adjoint();
        ak = ak * ak;
        bk = bk * bk;
    }
    const double c = operator_norm(ak) * operator_norm(bk);
    if (c < 1.0) return {p, SteinMethod::doubling, c * operator_norm(p) / (1.0 - c)};
    throw Error(Errc::numeric, "solve_stein: doubling iteration failed to contract");
}

}  // namespace

SteinSolution solve_stein_ex(const Mat& a, const Mat& q, const Mat& b)
{
    require_square(a, "solve_stein(A)");
    require_square(b, "solve_stein(B)");
    if (q.rows() != a.rows() || q.cols() != b.rows())
        throw Error(Errc::dimension, "solve_stein: Q must be rows(A) x rows(B)");
    if (!all_finite(a) || !all_finite(b) || !all_finite(q))
        throw Error(Errc::numeric, "solve_stein: non-finite input");

    const bool small = static_cast<std::size_t>(q.size()) <= kKroneckerCap;
    std::optional<SteinSchur> bs;
    double ra = 0.0, rb = 0.0;
    if (small || a.rows() == 0 || b.rows() == 0) {
        ra = spectral_radius(a);
        rb = spectral_radius(b);
    } else {
        // the Schur diagonals carry the spectra
        bs.emplace(a, b);
        if (!bs->ok()) throw Error(Errc::numeric, "solve_stein: Schur decomposition failed");
        ra = bs->radius_a();
        rb = bs->radius_b();
    }
    if (ra * rb >= 1.0) {
        std::ostringstream os;
        os << "solve_stein: spectral radius product " << ra * rb << " >= 1, series diverges";
        throw Error(Errc::divergence, os.str());
    }
    if (q.size() == 0) return {q, SteinMethod::kronecker, 0.0};

    if (small) {
        Mat p = stein_kronecker(a, q, b);
        if (!all_finite(p)) throw Error(Errc::numeric, "solve_stein: singular to working precision");
        return {p, SteinMethod::kronecker, 0.0};
    }
    Mat p = bs->solve(q);
    p += bs->solve(q - (p - a * p * b.adjoint()));
    // ||R||_2 <= ||R||_F and ||Q||_F <= sqrt(rank) ||Q||_2
    const double bound = 1e-13 * q.norm() / std::sqrt(static_cast<double>(std::min(q.rows(), q.cols())));
    if (all_finite(p) && (p - a * p * b.adjoint() - q).norm() <= bound) return {p, SteinMethod::schur, 0.0};
    // clustered spectra can spoil the triangular solves; the doubling series always converges
    return stein_doubling(a, q, b);
}

Mat solve_stein(const Mat& a, const Mat& q, const Mat& b)
{
    return solve_stein_ex(a, q, b).p;
}

namespace {

// Bartels-Stewart on the complex Schur form, for sizes past the Kronecker cap.
Mat lyapunov_schur(const Mat& z, const Mat& q)
{
    Eigen::ComplexSchur<Mat> cs(z);
    const Mat& t = cs.matrixT();
    const Mat& u = cs.matrixU();
    const Eigen::Index n = z.rows();
    Mat c = u.adjoint() * q * u;
    Mat s = t.adjoint();
    Mat x = Mat::Zero(n, n);
    for (Eigen::Index j = n - 1; j >= 0; --j) {
        Vec rhs = c.col(j);
        for (Eigen::Index k = j + 1; k < n; ++k) rhs -= s(k, j) * x.col(k);
        for (Eigen::Index i = n - 1; i >= 0; --i) {
            cplx v = rhs(i);
            for (Eigen::Index k = i + 1; k < n; ++k) v -= t(i, k) * x(k, j);
            x(i, j) = v / (t(i, i) + s(j, j));
        }
    }
    return u * x * u.adjoint();
}

}  // namespace

Mat solve_lyapunov_rhp(const Mat& z, const Mat& q)
{
    require_square(z, "solve_lyapunov_rhp(Z)");
    require_square(q, "solve_lyapunov_rhp(Q)");
    if (q.rows() != z.rows()) throw Error(Errc::dimension, "solve_lyapunov_rhp: Q must match Z");
    const Eigen::Index n = z.rows();
    if (n == 0) return q;

    Eigen::ComplexEigenSolver<Mat> es(z, false);
    if (es.info() != Eigen::Success) throw Error(Errc::numeric, "solve_lyapunov_rhp: eigensolver failed");
    const Vec ev = es.eigenvalues();
    const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            if (std::abs(ev(i) + std::conj(ev(j))) <= 1e-12 * scale) {
                std::ostringstream os;
                os << "solve_lyapunov_rhp: eigenvalues " << ev(i) << " and " << ev(j)
                   << " satisfy lambda + conj(mu) = 0";
                throw Error(Errc::regularity, os.str());
            }

    Mat p;
    if (static_cast<std::size_t>(n * n) <= kKroneckerCap) {
        const Mat id = Mat::Identity(n, n);
        Mat k = kron(id, z) + kron(z.conjugate(), id);
        Eigen::PartialPivLU<Mat> lu(k);
        Vec rhs = vec(q);
        Vec x = lu.solve(rhs);
        for (int it = 0; it < 2; ++it) {
            Vec r = rhs - k * x;
            if (r.norm() <= 1e-15 * rhs.norm()) break;
            x += lu.solve(r);
        }
        p = unvec(x, n, n);
    } else {
        p = lyapunov_schur(z, q);
    }
    if (!all_finite(p)) throw Error(Errc::numeric, "solve_lyapunov_rhp: singular to working precision");
    if (is_hermitian_exact(q)) p = hermitize(p);
    return p;
}

}  // namespace picklab
