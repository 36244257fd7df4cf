#include "picklab/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>

#include <Eigen/QR>

namespace picklab {

Mat random_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols)
{
    std::normal_distribution<double> n(0.0, std::sqrt(0.5));
    Mat m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
        for (Eigen::Index i = 0; i < rows; ++i) {
            const double re = n(rng);
            const double im = n(rng);
            m(i, j) = cplx(re, im);
        }
    return m;
}

cplx random_in_disk(Rng& rng, double radius)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double r = radius * std::sqrt(u(rng));
    const double th = 2.0 * std::numbers::pi * u(rng);
    return std::polar(r, th);
}

Mat random_unitary(Rng& rng, Eigen::Index n)
{
    Mat g = random_matrix(rng, n, n);
    Eigen::HouseholderQR<Mat> qr(g);
    Mat q = qr.householderQ();
    Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index k = 0; k < n; ++k) {
        const double a = std::abs(r(k, k));
        if (a > 0.0) q.col(k) *= r(k, k) / a;
    }
    return q;
}

Mat random_with_spectral_radius(Rng& rng, Eigen::Index n, double radius)
{
    Mat g = random_matrix(rng, n, n);
    const double rho = spectral_radius(g);
    return rho > 0.0 ? Mat(g * (radius / rho)) : g;
}

OperatorTuple random_tuple(Rng& rng, int d, Eigen::Index n, double row_norm_target)
{
    OperatorTuple t;
    for (int k = 0; k < d; ++k) t.z.push_back(random_matrix(rng, n, n));
    const double r = t.row_norm();
    if (r > 0.0)
        for (auto& m : t.z) m *= row_norm_target / r;
    return t;
}

OperatorTuple random_commuting_tuple(Rng& rng, int d, Eigen::Index n, double row_norm_target)
{
    Mat a = random_matrix(rng, n, n);
    a /= std::max(1.0, operator_norm(a));
    const Mat a2 = a * a;
    const Mat id = Mat::Identity(n, n);
    OperatorTuple t;
    for (int k = 0; k < d; ++k) {
        Mat c = random_matrix(rng, 3, 1);
        t.z.push_back(c(0) * id + c(1) * a + c(2) * a2);
    }
    const double r = t.row_norm();
    if (r > 0.0)
        for (auto& m : t.z) m *= row_norm_target / r;
    return t;
}

QuiverPoint random_quiver_point(Rng& rng, const Quiver& g, const GradedSpace& dims, PointKind kind,
                                double row_norm_target)
{
    QuiverPoint p;
    p.kind = kind;
    for (const auto& ar : g.arrows) {
        const int rows = kind == PointKind::tensor ? dims.dim(ar.rng) : dims.dim(ar.src);
        const int cols = kind == PointKind::tensor ? dims.dim(ar.src) : dims.dim(ar.rng);
        p.blocks.push_back(random_matrix(rng, rows, cols));
    }
    Membership m = disk_membership(g, dims, p);
    for (int a = 0; a < g.arrow_count(); ++a) {
        const Arrow& ar = g.arrows[static_cast<std::size_t>(a)];
        const int anchor = kind == PointKind::tensor ? ar.rng : ar.src;
        const double r = m.row_norms[static_cast<std::size_t>(anchor)];
        if (r > 0.0) p.blocks[static_cast<std::size_t>(a)] *= row_norm_target / r;
    }
    return p;
}

// ---------------------------------------------------------------------------
// Blaschke products

namespace {

std::vector<cplx> series_mul(const std::vector<cplx>& a, const std::vector<cplx>& b, int terms)
{
    std::vector<cplx> c(static_cast<std::size_t>(terms), 0.0);
    for (int i = 0; i < terms; ++i)
        for (int j = 0; i + j < terms; ++j) c[static_cast<std::size_t>(i + j)] += a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)];
    return c;
}

// Cauchy estimate on |lambda| = R, optimised over a grid of admissible radii.
double blaschke_tail(const std::vector<cplx>& zeros, int terms)
{
    if (zeros.empty()) return 0.0;
    double amax = 0.0;
    for (auto a : zeros) amax = std::max(amax, std::abs(a));
    if (amax == 0.0) return 0.0;  // pure power lambda^k, all coefficients kept for k < terms
    const double rmax = 1.0 / amax;
    double best = std::numeric_limits<double>::infinity();
    for (int k = 1; k < 200; ++k) {
        const double r = 1.0 + (rmax - 1.0) * k / 200.0;
        double m = 1.0;
        for (auto a : zeros) m *= (r + std::abs(a)) / (1.0 - std::abs(a) * r);
        best = std::min(best, m * std::pow(r, -terms) / (1.0 - 1.0 / r));
    }
    return best;
}

cplx blaschke_value(const SchurSample& s, cplx lambda)
{
    cplx v = s.unimodular;
    for (auto a : s.zeros) v *= (lambda - a) / (1.0 - std::conj(a) * lambda);
    return v;
}

Mat blaschke_matrix(const SchurSample& s, const Mat& t)
{
    const Eigen::Index n = t.rows();
    const Mat id = Mat::Identity(n, n);
    Mat v = s.unimodular * id;
    for (auto a : s.zeros) {
        Mat den = id - std::conj(a) * t;
        v = v * (t - a * id) * den.partialPivLu().inverse();
    }
    return v;
}

void require_spectral_radius_below_one(const Mat& t, const char* what)
{
    if (t.rows() != t.cols()) throw Error(Errc::dimension, std::string(what) + ": operator point must be square");
    const double r = spectral_radius(t);
    if (r >= 1.0) {
        std::ostringstream os;
        os << what << ": spectral radius " << r << " >= 1";
        throw Error(Errc::domain, os.str());
    }
}

}  // namespace

SchurSample blaschke_from(const std::vector<cplx>& zeros, cplx c)
{
    for (auto a : zeros)
        if (std::abs(a) >= 1.0) throw Error(Errc::domain, "blaschke_from: zero outside the open disk");
    if (std::abs(c) > 1.0 + 1e-15) throw Error(Errc::argument, "blaschke_from: |c| > 1");
    SchurSample s;
    s.kind = SampleKind::disk;
    s.blaschke = true;
    s.zeros = zeros;
    s.unimodular = c;
    std::vector<cplx> coef(kBlaschkeTerms, 0.0);
    coef[0] = c;
    for (auto a : zeros) {
        std::vector<cplx> f(kBlaschkeTerms, 0.0);
        f[0] = -a;
        cplx p = 1.0;  // conj(a)^(n-1)
        for (int n = 1; n < kBlaschkeTerms; ++n) {
            f[static_cast<std::size_t>(n)] = p * (1.0 - std::norm(a));
            p *= std::conj(a);
        }
        coef = series_mul(coef, f, kBlaschkeTerms);
    }
    for (auto v : coef) s.taylor.push_back(Mat::Constant(1, 1, v));
    s.toeplitz_norm = disk_toeplitz_norm(s.taylor, kDiskToeplitzBlocks);
    s.norm_upper_bound = std::abs(c);
    s.contractivity_margin = 1.0 - std::abs(c);
    s.coefficient_tail = blaschke_tail(zeros, kBlaschkeTerms);
    return s;
}

SchurSample sample_blaschke(int degree, std::uint64_t seed)
{
    if (degree < 0) throw Error(Errc::argument, "sample_blaschke: negative degree");
    Rng rng(seed);
    std::vector<cplx> zeros;
    for (int k = 0; k < degree; ++k) zeros.push_back(random_in_disk(rng, 0.9));
    std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
    return blaschke_from(zeros, std::polar(1.0, u(rng)));
}

// ---------------------------------------------------------------------------
// Toeplitz truncations

double disk_toeplitz_norm(const std::vector<Mat>& taylor, int blocks)
{
    if (taylor.empty()) return 0.0;
    const Eigen::Index p = taylor.front().rows(), q = taylor.front().cols();
    Mat t = Mat::Zero(blocks * p, blocks * q);
    for (int i = 0; i < blocks; ++i)
        for (int j = 0; j <= i; ++j) {
            const std::size_t n = static_cast<std::size_t>(i - j);
            if (n < taylor.size()) t.block(i * p, j * q, p, q) = taylor[n];
        }
    return operator_norm(t);
}

double ball_toeplitz_norm(int d, const std::vector<std::pair<Word, Mat>>& coeffs, int max_length)
{
    if (coeffs.empty()) return 0.0;
    const Eigen::Index p = coeffs.front().second.rows(), q = coeffs.front().second.cols();
    std::map<Word, const Mat*> lookup;
    for (const auto& [w, m] : coeffs) lookup[w] = &m;
    const auto words = words_up_to(d, max_length);
    const Eigen::Index n = static_cast<Eigen::Index>(words.size());
    Mat t = Mat::Zero(n * p, n * q);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) {
            auto quo = word_quotient(words[static_cast<std::size_t>(i)], words[static_cast<std::size_t>(j)]);
            if (!quo) continue;
            auto it = lookup.find(*quo);
            if (it != lookup.end()) t.block(i * p, j * q, p, q) = *it->second;
        }
    return operator_norm(t);
}

double quiver_toeplitz_norm(const Quiver& g, const GradedSpace& in_dims, const GradedSpace& out_dims,
                            const std::vector<std::pair<Path, Mat>>& coeffs, int max_length)
{
    const auto paths = paths_up_to(g, max_length);
    std::map<Path, const Mat*> lookup;
    for (const auto& [pa, m] : coeffs) lookup[pa] = &m;
    std::vector<Eigen::Index> roff, coff;
    Eigen::Index rtot = 0, ctot = 0;
    for (const auto& pa : paths) {
        roff.push_back(rtot);
        coff.push_back(ctot);
        rtot += out_dims.dim(pa.range);
        ctot += in_dims.dim(pa.range);
    }
    Mat t = Mat::Zero(rtot, ctot);
    for (std::size_t i = 0; i < paths.size(); ++i)
        for (std::size_t j = 0; j < paths.size(); ++j) {
            auto quo = path_quotient(g, paths[i], paths[j]);
            if (!quo) continue;
            auto it = lookup.find(*quo);
            if (it == lookup.end() || it->second->size() == 0) continue;
            t.block(roff[i], coff[j], it->second->rows(), it->second->cols()) = *it->second;
        }
    return operator_norm(t);
}

// ---------------------------------------------------------------------------
// Contractive polynomial samples

namespace {

constexpr int kCircleSamples = 2048;
constexpr double kToeplitzTarget = 0.95;
constexpr double kBoundCeiling = 0.999;
constexpr Eigen::Index kTruncationRows = 256;

// sup over the circle of ||S||, plus the Lipschitz slack between grid points
double disk_norm_upper_bound(const std::vector<Mat>& taylor)
{
    double lip = 0.0;
    for (std::size_t n = 1; n < taylor.size(); ++n) lip += static_cast<double>(n) * operator_norm(taylor[n]);
    double sup = 0.0;
    for (int k = 0; k < kCircleSamples; ++k) {
        const cplx z = std::polar(1.0, 2.0 * std::numbers::pi * k / kCircleSamples);
        Mat v = taylor.back();
        for (std::size_t n = taylor.size() - 1; n-- > 0;) v = (z * v + taylor[n]).eval();
        sup = std::max(sup, operator_norm(v));
    }
    return sup + lip * std::numbers::pi / kCircleSamples;
}

// The homogeneous part of degree n has norm max_v ||col_{|g|=n, s(g)=v} S_g||;
// the triangle inequality over degrees gives a certified bound.
template <class Key>
double graded_norm_upper_bound(const std::vector<std::pair<Key, Mat>>& coeffs,
                               const std::function<std::size_t(const Key&)>& length,
                               const std::function<int(const Key&)>& source)
{
    std::map<std::pair<std::size_t, int>, Mat> gram;
    for (const auto& [k, m] : coeffs) {
        if (m.size() == 0) continue;
        auto key = std::make_pair(length(k), source(k));
        Mat g = m.adjoint() * m;
        auto it = gram.find(key);
        if (it == gram.end())
            gram.emplace(key, g);
        else
            it->second += g;
    }
    std::map<std::size_t, double> level;
    for (const auto& [key, g] : gram) {
        const double nrm = std::sqrt(std::max(0.0, hermitian_eigenvalues(hermitize(g)).maxCoeff()));
        level[key.first] = std::max(level[key.first], nrm);
    }
    double u = 0.0;
    for (const auto& [n, v] : level) u += v;
    return u;
}

int truncation_length(std::size_t (*count)(const void*, int), const void* ctx, Eigen::Index block, int degree)
{
    int best = 1;
    for (int l = 1; l <= 8; ++l) {
        if (static_cast<Eigen::Index>(count(ctx, l)) * block > kTruncationRows) break;
        best = l;
    }
    return std::max(best, std::min(degree, 1));
}

double sample_bounds(SchurSample& s, double& upper)
{
    if (s.kind == SampleKind::disk) {
        upper = disk_norm_upper_bound(s.taylor);
        return disk_toeplitz_norm(s.taylor, kDiskToeplitzBlocks);
    }
    if (s.kind == SampleKind::ball) {
        upper = graded_norm_upper_bound<Word>(
            s.words, [](const Word& w) { return w.length(); }, [](const Word&) { return 0; });
        const int d = s.d;
        auto count = [](const void* c, int l) { return word_count(*static_cast<const int*>(c), l); };
        const int lt = truncation_length(count, &d, std::max(s.rows, s.cols), 8);
        return ball_toeplitz_norm(s.d, s.words, lt);
    }
    upper = graded_norm_upper_bound<Path>(
        s.paths, [](const Path& p) { return p.length(); }, [](const Path& p) { return p.source; });
    int maxdim = 1;
    for (int v : s.in_dims.dims) maxdim = std::max(maxdim, v);
    for (int v : s.out_dims.dims) maxdim = std::max(maxdim, v);
    auto count = [](const void* c, int l) { return paths_up_to(*static_cast<const Quiver*>(c), l).size(); };
    const int lt = truncation_length(count, &s.quiver, maxdim, 8);
    return quiver_toeplitz_norm(s.quiver, s.in_dims, s.out_dims, s.paths, lt);
}

void apply_scale(SchurSample& s, double c)
{
    for (auto& m : s.taylor) m *= c;
    for (auto& [w, m] : s.words) m *= c;
    for (auto& [p, m] : s.paths) m *= c;
}

}  // namespace

void scale_to_contractive(SchurSample& s)
{
    double upper = 0.0;
    const double t = sample_bounds(s, upper);
    double c = 1.0;
    if (t > 0.0) c = kToeplitzTarget / t;
    if (upper * c > kBoundCeiling) c = kBoundCeiling / upper;
    apply_scale(s, c);
    s.scale *= c;
    s.toeplitz_norm = t * c;
    s.norm_upper_bound = upper * c;
    s.contractivity_margin = 1.0 - s.norm_upper_bound;
}

SchurSample sample_contractive_poly(Eigen::Index p, Eigen::Index q, int degree, const PolyKind& kind,
                                    std::uint64_t seed)
{
    if (degree < 0) throw Error(Errc::argument, "sample_contractive_poly: negative degree");
    if (kind.kind != SampleKind::disk && degree > 8)
        throw Error(Errc::argument, "sample_contractive_poly: degree must be <= 8 for ball/quiver kinds");
    Rng rng(seed);
    SchurSample s;
    s.kind = kind.kind;
    s.rows = p;
    s.cols = q;
    const double decay = 0.6;
    if (kind.kind == SampleKind::disk) {
        if (p < 1 || q < 1) throw Error(Errc::shape, "sample_contractive_poly: empty coefficient shape");
        for (int n = 0; n <= degree; ++n) s.taylor.push_back(random_matrix(rng, p, q) * std::pow(decay, n));
    } else if (kind.kind == SampleKind::ball) {
        if (kind.d < 1) throw Error(Errc::argument, "sample_contractive_poly: d must be >= 1");
        s.d = kind.d;
        for (const auto& w : words_up_to(kind.d, degree))
            s.words.emplace_back(w, random_matrix(rng, p, q) * std::pow(decay, static_cast<double>(w.length())));
    } else {
        kind.quiver.validate();
        const auto nv = static_cast<std::size_t>(kind.quiver.vertex_count());
        if (kind.in_dims.dims.size() != nv || kind.out_dims.dims.size() != nv)
            throw Error(Errc::shape, "sample_contractive_poly: vertex dimensions do not match the quiver");
        for (int v : kind.in_dims.dims)
            if (v < 0) throw Error(Errc::shape, "sample_contractive_poly: negative vertex dimension");
        for (int v : kind.out_dims.dims)
            if (v < 0) throw Error(Errc::shape, "sample_contractive_poly: negative vertex dimension");
        s.quiver = kind.quiver;
        s.in_dims = kind.in_dims;
        s.out_dims = kind.out_dims;
        s.rows = kind.out_dims.total();
        s.cols = kind.in_dims.total();
        for (const auto& pa : paths_up_to(kind.quiver, degree))
            s.paths.emplace_back(pa, random_matrix(rng, kind.out_dims.dim(pa.range), kind.in_dims.dim(pa.source)) *
                                         std::pow(decay, static_cast<double>(pa.length())));
    }
    scale_to_contractive(s);
    return s;
}

// ---------------------------------------------------------------------------
// Evaluations

Mat eval_point(const SchurSample& s, cplx lambda)
{
    if (std::abs(lambda) >= 1.0) throw Error(Errc::domain, "eval_point: |lambda| >= 1");
    if (s.kind != SampleKind::disk) throw Error(Errc::argument, "eval_point: disk sample expected");
    if (s.blaschke) return Mat::Constant(1, 1, blaschke_value(s, lambda));
    Mat v = Mat::Zero(s.rows, s.cols);
    for (std::size_t n = s.taylor.size(); n-- > 0;) v = (lambda * v + s.taylor[n]).eval();
    return v;
}

Mat eval_ltoa(const SchurSample& s, const Mat& x, const Mat& t)
{
    if (s.kind != SampleKind::disk) throw Error(Errc::argument, "eval_ltoa: disk sample expected");
    require_spectral_radius_below_one(t, "eval_ltoa");
    if (x.rows() != t.rows() || x.cols() != s.rows) throw Error(Errc::shape, "eval_ltoa: X must be dim(T) x rows(S)");
    if (s.blaschke) return blaschke_matrix(s, t) * x;
    Mat acc = Mat::Zero(x.rows(), s.cols);
    Mat tn_x = x;  // T^n X
    for (std::size_t n = 0; n < s.taylor.size(); ++n) {
        acc += tn_x * s.taylor[n];
        tn_x = t * tn_x;
    }
    return acc;
}

Mat eval_rtoa(const SchurSample& s, const Mat& u, const Mat& a)
{
    if (s.kind != SampleKind::disk) throw Error(Errc::argument, "eval_rtoa: disk sample expected");
    require_spectral_radius_below_one(a, "eval_rtoa");
    if (u.cols() != a.rows() || u.rows() != s.cols) throw Error(Errc::shape, "eval_rtoa: U must be cols(S) x dim(A)");
    if (s.blaschke) return u * blaschke_matrix(s, a);
    Mat acc = Mat::Zero(s.rows, u.cols());
    Mat u_an = u;  // U A^n
    for (std::size_t n = 0; n < s.taylor.size(); ++n) {
        acc += s.taylor[n] * u_an;
        u_an = u_an * a;
    }
    return acc;
}

Mat eval_tensor(const SchurSample& s, const Mat& z)
{
    if (s.kind != SampleKind::disk) throw Error(Errc::argument, "eval_tensor: disk sample expected");
    require_spectral_radius_below_one(z, "eval_tensor");
    if (s.blaschke) return blaschke_matrix(s, z);
    Mat acc = Mat::Zero(s.rows * z.rows(), s.cols * z.cols());
    Mat zn = Mat::Identity(z.rows(), z.cols());
    for (std::size_t n = 0; n < s.taylor.size(); ++n) {
        acc += kron(s.taylor[n], zn);
        zn = zn * z;
    }
    return acc;
}

Mat eval_ball_ltoa(const SchurSample& s, const Mat& x, const OperatorTuple& z, bool transpose_words)
{
    if (s.kind != SampleKind::ball) throw Error(Errc::argument, "eval_ball_ltoa: ball sample expected");
    z.validate();
    if (z.d() != s.d) throw Error(Errc::shape, "eval_ball_ltoa: tuple length differs from d");
    const double r = z.row_norm();
    if (r >= 1.0) {
        std::ostringstream os;
        os << "eval_ball_ltoa: row norm " << r << " >= 1";
        throw Error(Errc::domain, os.str());
    }
    if (x.rows() != z.dim() || x.cols() != s.rows) throw Error(Errc::shape, "eval_ball_ltoa: X must be dim(Z) x rows(S)");
    Mat acc = Mat::Zero(x.rows(), s.cols);
    for (const auto& [w, m] : s.words) acc += word_power(z, w, transpose_words) * x * m;
    return acc;
}

SchurSample sharp(const SchurSample& s)
{
    if (s.kind != SampleKind::disk) throw Error(Errc::argument, "sharp: disk sample expected");
    SchurSample t = s;
    std::swap(t.rows, t.cols);
    for (auto& m : t.taylor) m = m.adjoint().eval();
    if (s.blaschke) {
        for (auto& a : t.zeros) a = std::conj(a);
        t.unimodular = std::conj(s.unimodular);
    }
    return t;
}

Mat eval_quiver_tensor(const SchurSample& s, const GradedSpace& zdims, const QuiverPoint& z)
{
    if (s.kind != SampleKind::quiver) throw Error(Errc::argument, "eval_quiver_tensor: quiver sample expected");
    if (z.kind != PointKind::tensor) throw Error(Errc::argument, "eval_quiver_tensor: tensor point expected");
    Membership mem = disk_membership(s.quiver, zdims, z);
    if (!mem.member) {
        std::ostringstream os;
        os << "eval_quiver_tensor: point outside the generalized disk (row norm " << mem.worst << ")";
        throw Error(Errc::domain, os.str());
    }
    const int nv = s.quiver.vertex_count();
    std::vector<Eigen::Index> qoff(static_cast<std::size_t>(nv) + 1, 0), roff(static_cast<std::size_t>(nv) + 1, 0);
    for (int v = 0; v < nv; ++v) {
        qoff[static_cast<std::size_t>(v) + 1] = qoff[static_cast<std::size_t>(v)] + s.out_dims.dim(v) * zdims.dim(v);
        roff[static_cast<std::size_t>(v) + 1] = roff[static_cast<std::size_t>(v)] + s.in_dims.dim(v) * zdims.dim(v);
    }
    Mat acc = Mat::Zero(qoff.back(), roff.back());
    for (const auto& [pa, m] : s.paths) {
        if (m.size() == 0) continue;
        Mat zg = path_power(s.quiver, zdims, z, pa);
        if (zg.size() == 0) continue;
        acc.block(qoff[static_cast<std::size_t>(pa.range)], roff[static_cast<std::size_t>(pa.source)], m.rows() * zg.rows(),
                  m.cols() * zg.cols()) += kron(m, zg);
    }
    return acc;
}

Mat eval_quiver_ltoa(const SchurSample& s, const GradedSpace& xdims, const Mat& x, const QuiverPoint& t)
{
    if (s.kind != SampleKind::quiver) throw Error(Errc::argument, "eval_quiver_ltoa: quiver sample expected");
    if (t.kind != PointKind::operator_argument) throw Error(Errc::argument, "eval_quiver_ltoa: operator-argument point expected");
    Membership mem = disk_membership(s.quiver, xdims, t);
    if (!mem.member) {
        std::ostringstream os;
        os << "eval_quiver_ltoa: point outside the transposed generalized disk (row norm " << mem.worst << ")";
        throw Error(Errc::domain, os.str());
    }
    if (x.rows() != xdims.total() || x.cols() != s.out_dims.total())
        throw Error(Errc::shape, "eval_quiver_ltoa: X must map Y into the X grading");
    Mat acc = Mat::Zero(xdims.total(), s.in_dims.total());
    for (const auto& [pa, m] : s.paths) {
        if (m.size() == 0) continue;
        const int r = pa.range, src = pa.source;
        Mat tg = path_power(s.quiver, xdims, t, pa);  // X_r -> X_s
        Mat xr = x.block(xdims.offset(r), s.out_dims.offset(r), xdims.dim(r), s.out_dims.dim(r));
        acc.block(xdims.offset(src), s.in_dims.offset(src), xdims.dim(src), s.in_dims.dim(src)) += tg * xr * m;
    }
    return acc;
}

}  // namespace picklab
