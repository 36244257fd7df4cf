#include "picklab/cp_toolkit.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "picklab/oracle.hpp"

namespace picklab {

namespace {

Mat unit(Eigen::Index n, Eigen::Index i, Eigen::Index j)
{
    Mat e = Mat::Zero(n, n);
    e(i, j) = 1.0;
    return e;
}

std::size_t uz(Eigen::Index i) { return static_cast<std::size_t>(i); }

}  // namespace

void LinearMapOnMatrices::validate() const
{
    if (n <= 0 || m <= 0) throw Error(Errc::map, "linear map needs positive dimensions");
    if (images.size() != uz(n * n)) throw Error(Errc::map, "linear map needs n^2 unit images");
    for (const auto& im : images)
        if (im.rows() != m || im.cols() != m) throw Error(Errc::map, "unit image has the wrong size");
}

Mat LinearMapOnMatrices::apply(const Mat& a) const
{
    if (a.rows() != n || a.cols() != n) throw Error(Errc::shape, "linear map applied to a matrix of the wrong size");
    Mat r = Mat::Zero(m, m);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            if (a(i, j) != 0.0) r += a(i, j) * images[uz(i * n + j)];
    return r;
}

LinearMapOnMatrices map_from_function(Eigen::Index n, Eigen::Index m, const std::function<Mat(const Mat&)>& f)
{
    LinearMapOnMatrices phi{n, m, {}};
    phi.images.reserve(uz(n * n));
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) phi.images.push_back(f(unit(n, i, j)));
    phi.validate();
    return phi;
}

LinearMapOnMatrices identity_map(Eigen::Index n)
{
    return map_from_function(n, n, [](const Mat& a) { return a; });
}

LinearMapOnMatrices transpose_map(Eigen::Index n)
{
    return map_from_function(n, n, [](const Mat& a) { return Mat(a.transpose()); });
}

LinearMapOnMatrices conjugation_map(const Mat& v)
{
    return map_from_function(v.cols(), v.rows(), [&](const Mat& a) { return Mat(v * a * v.adjoint()); });
}

Mat choi_matrix(const LinearMapOnMatrices& phi)
{
    phi.validate();
    const Eigen::Index n = phi.n, m = phi.m;
    double scale = 0.0;
    for (const auto& im : phi.images) scale = std::max(scale, im.cwiseAbs().maxCoeff());
    const double slack = 1e-12 * std::max(1.0, scale);
    Mat c(n * m, n * m);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) {
            const Mat& a = phi.images[uz(i * n + j)];
            const Mat& b = phi.images[uz(j * n + i)];
            if ((a - b.adjoint()).cwiseAbs().maxCoeff() > slack) {
                std::ostringstream os;
                os << "choi_matrix: phi(e_" << j << i << ") is not phi(e_" << i << j << ")^*, the map does not preserve adjoints";
                throw Error(Errc::map, os.str());
            }
            c.block(i * m, j * m, m, m) = a;
        }
    return hermitize(c);
}

Mat amplify(const LinearMapOnMatrices& phi, const Mat& blocks, int k)
{
    const Eigen::Index n = phi.n, m = phi.m;
    if (blocks.rows() != k * n || blocks.cols() != k * n) throw Error(Errc::shape, "amplify: input is not k x k blocks of size n");
    Mat r(k * m, k * m);
    for (int p = 0; p < k; ++p)
        for (int q = 0; q < k; ++q) r.block(p * m, q * m, m, m) = phi.apply(blocks.block(p * n, q * n, n, n));
    return r;
}

CpVerdict cp_check(const LinearMapOnMatrices& phi, Tolerance tol, std::uint64_t seed, int trials)
{
    const Mat c = choi_matrix(phi);
    const PsdVerdict pv = is_psd(c, tol);
    CpVerdict v;
    v.is_cp = pv.is_psd;
    v.choi_min_eig = pv.min_eigenvalue;
    v.tolerance_used = pv.tolerance_used;
    if (v.is_cp) return v;

    Rng rng(seed);
    const int kmax = static_cast<int>(std::min<Eigen::Index>(3, phi.n));
    for (int k = 1; k <= kmax && !v.witness; ++k)
        for (int t = 0; t < trials; ++t) {
            const Mat g = random_matrix(rng, k * phi.n, 1);
            const Mat in = g * g.adjoint();
            const double me = min_eigenvalue(hermitize(amplify(phi, in, k)));
            if (me < -pv.tolerance_used) {
                v.witness = CpWitness{k, in, me};
                break;
            }
        }
    if (!v.witness && phi.n <= 3) {
        // sum_ij e_ij (x) e_ij is PSD and its image is the Choi matrix itself
        const int k = static_cast<int>(phi.n);
        Mat in = Mat::Zero(k * phi.n, k * phi.n);
        for (Eigen::Index i = 0; i < phi.n; ++i)
            for (Eigen::Index j = 0; j < phi.n; ++j) in(i * phi.n + i, j * phi.n + j) = 1.0;
        v.witness = CpWitness{k, in, pv.min_eigenvalue};
    }
    return v;
}

LinearMapOnMatrices build_phi_disk(const std::vector<Mat>& z, const std::vector<Mat>& x, const std::vector<Mat>& y)
{
    const std::size_t n = z.size();
    if (n == 0 || x.size() != n || y.size() != n) throw Error(Errc::shape, "build_phi_disk: data lists are empty or differ in length");
    const Eigen::Index g = z.front().rows();
    const Eigen::Index c = x.front().rows();
    if (x.front().cols() % g != 0 || y.front().cols() % g != 0)
        throw Error(Errc::shape, "build_phi_disk: X_i, Y_i must act on V (x) G");
    const Eigen::Index vd = x.front().cols() / g, ud = y.front().cols() / g;
    for (std::size_t i = 0; i < n; ++i) {
        if (z[i].rows() != g || z[i].cols() != g) throw Error(Errc::shape, "build_phi_disk: Z_i must share one square size");
        if (x[i].rows() != c || y[i].rows() != c || x[i].cols() != vd * g || y[i].cols() != ud * g)
            throw Error(Errc::shape, "build_phi_disk: X_i and Y_i must share one shape");
        if (!(spectral_radius(z[i]) < 1.0)) throw Error(Errc::domain, "build_phi_disk: Z_i has spectral radius >= 1");
    }
    const Eigen::Index in = static_cast<Eigen::Index>(n) * g;
    LinearMapOnMatrices phi{in, static_cast<Eigen::Index>(n) * c, {}};
    phi.images.reserve(uz(in * in));
    for (std::size_t i = 0; i < n; ++i)
        for (Eigen::Index a = 0; a < g; ++a)
            for (std::size_t j = 0; j < n; ++j)
                for (Eigen::Index b = 0; b < g; ++b) {
                    const Mat s = solve_stein(z[i], unit(g, a, b), z[j]);
                    Mat out = Mat::Zero(phi.m, phi.m);
                    out.block(static_cast<Eigen::Index>(i) * c, static_cast<Eigen::Index>(j) * c, c, c) =
                        x[i] * kron(Mat::Identity(vd, vd), s) * x[j].adjoint() - y[i] * kron(Mat::Identity(ud, ud), s) * y[j].adjoint();
                    phi.images.push_back(std::move(out));
                }
    // images were generated row-major over (i, a) x (j, b), which is the unit order
    return phi;
}

LinearMapOnMatrices build_phi_star_disk(const std::vector<Mat>& z, const std::vector<Mat>& x,
                                        const std::vector<Mat>& y)
{
    const std::size_t n = z.size();
    if (n == 0 || x.size() != n || y.size() != n) throw Error(Errc::shape, "build_phi_star_disk: data lists are empty or differ in length");
    const Eigen::Index g = z.front().rows();
    const Eigen::Index c = x.front().rows();
    for (std::size_t i = 0; i < n; ++i) {
        if (z[i].rows() != g || z[i].cols() != g) throw Error(Errc::shape, "build_phi_star_disk: Z_i must share one square size");
        if (x[i].rows() != c || y[i].rows() != c || x[i].cols() != g || y[i].cols() != g)
            throw Error(Errc::shape, "build_phi_star_disk: X_i and Y_i must map G into C");
        if (!(spectral_radius(z[i]) < 1.0)) throw Error(Errc::domain, "build_phi_star_disk: Z_i has spectral radius >= 1");
    }
    const Eigen::Index in = static_cast<Eigen::Index>(n) * c;
    LinearMapOnMatrices phi{in, static_cast<Eigen::Index>(n) * g, {}};
    phi.images.reserve(uz(in * in));
    for (std::size_t i = 0; i < n; ++i)
        for (Eigen::Index a = 0; a < c; ++a)
            for (std::size_t j = 0; j < n; ++j)
                for (Eigen::Index b = 0; b < c; ++b) {
                    const Mat e = unit(c, a, b);
                    const Mat q = x[i].adjoint() * e * x[j] - y[i].adjoint() * e * y[j];
                    Mat out = Mat::Zero(phi.m, phi.m);
                    out.block(static_cast<Eigen::Index>(i) * g, static_cast<Eigen::Index>(j) * g, g, g) =
                        solve_stein(z[i].adjoint(), q, z[j].adjoint());
                    phi.images.push_back(std::move(out));
                }
    return phi;
}

std::vector<Eigen::Index> diagonal_choi_indices(std::size_t nodes, Eigen::Index in_block, Eigen::Index out_block)
{
    // Choi index ((i, a), (k, o)) = ((i * in_block + a) * nodes + k) * out_block + o; keep k == i
    std::vector<Eigen::Index> p;
    const Eigen::Index nn = static_cast<Eigen::Index>(nodes);
    for (Eigen::Index i = 0; i < nn; ++i)
        for (Eigen::Index a = 0; a < in_block; ++a)
            for (Eigen::Index o = 0; o < out_block; ++o) p.push_back(((i * in_block + a) * nn + i) * out_block + o);
    return p;
}

QuiverMaps build_phi_quiver(const QlttData& d, const SeriesOptions& opt)
{
    validate_qltt(d);
    const std::size_t n = d.z.size();
    const Eigen::Index c = d.x.front().rows();
    const Eigen::Index zt = d.zdims.total();
    std::size_t recursions = 0;
    for (int v : d.zdims.dims) recursions += n * n * static_cast<std::size_t>(v) * static_cast<std::size_t>(v);
    const QlttPlan plan = plan_qltt(d, recursions, opt);
    QuiverMaps out;
    out.levels = plan.levels;
    double nx = 0.0, ny = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        nx = std::max(nx, operator_norm(d.x[i]));
        ny = std::max(ny, operator_norm(d.y[i]));
    }
    out.tail_bound = plan.tail_per_unit * (nx * nx + ny * ny);
    for (int v = 0; v < d.g.vertex_count(); ++v) {
        const Eigen::Index kv = d.zdims.dim(v);
        if (kv == 0) {
            out.per_vertex.emplace_back();
            continue;
        }
        const Eigen::Index ov = d.zdims.offset(v);
        const Eigen::Index in = static_cast<Eigen::Index>(n) * kv;
        LinearMapOnMatrices phi{in, static_cast<Eigen::Index>(n) * c, {}};
        for (std::size_t i = 0; i < n; ++i)
            for (Eigen::Index a = 0; a < kv; ++a)
                for (std::size_t j = 0; j < n; ++j)
                    for (Eigen::Index b = 0; b < kv; ++b) {
                        Mat out_m = Mat::Zero(phi.m, phi.m);
                        out_m.block(static_cast<Eigen::Index>(i) * c, static_cast<Eigen::Index>(j) * c, c, c) =
                            qltt_kernel(d, i, j, unit(zt, ov + a, ov + b), plan.levels);
                        phi.images.push_back(std::move(out_m));
                    }
        out.per_vertex.push_back(std::move(phi));
    }
    return out;
}

LinearMapOnMatrices build_phi_bar_quiver(const QlttData& d, const SeriesOptions& opt)
{
    validate_qltt(d);
    const std::size_t n = d.z.size();
    const Eigen::Index c = d.x.front().rows();
    const Eigen::Index zt = d.zdims.total();
    std::size_t recursions = 0;
    for (int v : d.zdims.dims) recursions += n * n * static_cast<std::size_t>(v) * static_cast<std::size_t>(v);
    const QlttPlan plan = plan_qltt(d, recursions, opt);
    const Eigen::Index in = static_cast<Eigen::Index>(n) * zt;
    const LinearMapOnMatrices psi = conditional_expectation(d.zdims, n);
    LinearMapOnMatrices phi{in, static_cast<Eigen::Index>(n) * c, {}};
    phi.images.reserve(uz(in * in));
    for (Eigen::Index p = 0; p < in; ++p)
        for (Eigen::Index q = 0; q < in; ++q) {
            const Mat& e = psi.images[uz(p * in + q)];
            Mat out = Mat::Zero(phi.m, phi.m);
            if (e.cwiseAbs().maxCoeff() != 0.0) {
                const std::size_t i = uz(p / zt), j = uz(q / zt);
                out.block(static_cast<Eigen::Index>(i) * c, static_cast<Eigen::Index>(j) * c, c, c) =
                    qltt_kernel(d, i, j, unit(zt, p % zt, q % zt), plan.levels);
            }
            phi.images.push_back(std::move(out));
        }
    return phi;
}

LinearMapOnMatrices conditional_expectation(const GradedSpace& dims, std::size_t nodes)
{
    const Eigen::Index zt = dims.total();
    if (zt == 0 || nodes == 0) throw Error(Errc::shape, "conditional_expectation: empty space");
    std::vector<int> vertex_of(uz(zt));
    for (std::size_t v = 0; v < dims.dims.size(); ++v)
        for (int k = 0; k < dims.dims[v]; ++k) vertex_of[uz(dims.offset(static_cast<int>(v)) + k)] = static_cast<int>(v);
    const Eigen::Index n = static_cast<Eigen::Index>(nodes) * zt;
    return map_from_function(n, n, [&](const Mat& a) {
        Mat r = a;
        for (Eigen::Index p = 0; p < n; ++p)
            for (Eigen::Index q = 0; q < n; ++q)
                if (vertex_of[uz(p % zt)] != vertex_of[uz(q % zt)]) r(p, q) = 0.0;
        return r;
    });
}

std::vector<Eigen::Index> quiver_choi_permutation(std::size_t nodes, const GradedSpace& zdims, Eigen::Index c)
{
    const Eigen::Index nn = static_cast<Eigen::Index>(nodes);
    const Eigen::Index zt = zdims.total();
    std::vector<Eigen::Index> p;
    for (std::size_t v = 0; v < zdims.dims.size(); ++v)
        for (Eigen::Index i = 0; i < nn; ++i)
            for (Eigen::Index a = 0; a < zdims.dims[v]; ++a)
                for (Eigen::Index o = 0; o < c; ++o)
                    p.push_back(((i * zt + zdims.offset(static_cast<int>(v)) + a) * nn + i) * c + o);
    return p;
}

CpVerdict finite_section_kernel_check(const KernelFn& k, std::size_t nodes, Eigen::Index in_dim, Eigen::Index out_dim,
                                      int sections, Tolerance tol)
{
    if (sections <= 0) throw Error(Errc::argument, "finite_section_kernel_check: sections must be positive");
    if (nodes == 0) throw Error(Errc::shape, "finite_section_kernel_check: empty index set");
    const std::size_t len = nodes * static_cast<std::size_t>(sections);
    const Eigen::Index nl = static_cast<Eigen::Index>(len);
    LinearMapOnMatrices phi{nl * in_dim, nl * out_dim, {}};
    for (Eigen::Index p = 0; p < nl; ++p)
        for (Eigen::Index a = 0; a < in_dim; ++a)
            for (Eigen::Index q = 0; q < nl; ++q)
                for (Eigen::Index b = 0; b < in_dim; ++b) {
                    Mat out = Mat::Zero(phi.m, phi.m);
                    const Mat kb = k(uz(p) % nodes, uz(q) % nodes, unit(in_dim, a, b));
                    if (kb.rows() != out_dim || kb.cols() != out_dim)
                        throw Error(Errc::shape, "finite_section_kernel_check: kernel value has the wrong size");
                    out.block(p * out_dim, q * out_dim, out_dim, out_dim) = kb;
                    phi.images.push_back(std::move(out));
                }
    return cp_check(phi, tol);
}

}  // namespace picklab
