#include "picklab/quiver.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace picklab {

int Quiver::vertex_index(const std::string& name) const
{
    for (std::size_t k = 0; k < vertices.size(); ++k)
        if (vertices[k] == name) return static_cast<int>(k);
    throw Error(Errc::shape, "unknown vertex '" + name + "'");
}

int Quiver::arrow_index(const std::string& name) const
{
    for (std::size_t k = 0; k < arrows.size(); ++k)
        if (arrows[k].name == name) return static_cast<int>(k);
    throw Error(Errc::shape, "unknown arrow '" + name + "'");
}

Quiver Quiver::transposed() const
{
    Quiver t = *this;
    for (auto& a : t.arrows) std::swap(a.src, a.rng);
    return t;
}

void Quiver::validate() const
{
    if (vertices.empty()) throw Error(Errc::shape, "quiver has no vertices");
    for (const auto& a : arrows)
        if (a.src < 0 || a.src >= vertex_count() || a.rng < 0 || a.rng >= vertex_count())
            throw Error(Errc::shape, "arrow '" + a.name + "' has an endpoint outside Q0");
}

Quiver two_vertex_example()
{
    Quiver g;
    g.vertices = {"a", "b"};
    g.arrows = {{"alpha", 0, 0}, {"beta", 0, 1}};
    return g;
}

Quiver single_vertex_loops(int d)
{
    Quiver g;
    g.vertices = {"v"};
    for (int k = 0; k < d; ++k) g.arrows.push_back({"z" + std::to_string(k + 1), 0, 0});
    return g;
}

int GradedSpace::total() const
{
    return std::accumulate(dims.begin(), dims.end(), 0);
}

int GradedSpace::offset(int v) const
{
    return std::accumulate(dims.begin(), dims.begin() + v, 0);
}

Path vertex_path(int v)
{
    return Path{{}, v, v};
}

Path make_path(const Quiver& g, std::vector<int> arrows)
{
    if (arrows.empty()) throw Error(Errc::path, "make_path: use vertex_path for length-0 paths");
    for (int a : arrows)
        if (a < 0 || a >= g.arrow_count()) throw Error(Errc::path, "make_path: arrow index out of range");
    for (std::size_t k = 0; k + 1 < arrows.size(); ++k) {
        // arrows[k+1] is applied first, so its range must be the source of arrows[k]
        const Arrow& later = g.arrows[static_cast<std::size_t>(arrows[k])];
        const Arrow& earlier = g.arrows[static_cast<std::size_t>(arrows[k + 1])];
        if (earlier.rng != later.src)
            throw Error(Errc::path, "make_path: arrows '" + earlier.name + "' then '" + later.name +
                                        "' are not composable");
    }
    Path p;
    p.source = g.arrows[static_cast<std::size_t>(arrows.back())].src;
    p.range = g.arrows[static_cast<std::size_t>(arrows.front())].rng;
    p.arrows = std::move(arrows);
    return p;
}

std::string path_name(const Quiver& g, const Path& p)
{
    if (p.arrows.empty()) return g.vertices[static_cast<std::size_t>(p.source)];
    std::string s;
    for (std::size_t k = 0; k < p.arrows.size(); ++k) {
        if (k) s += '.';
        s += g.arrows[static_cast<std::size_t>(p.arrows[k])].name;
    }
    return s;
}

std::optional<Path> path_quotient(const Quiver& g, const Path& gamma, const Path& gp)
{
    if (gp.length() > gamma.length()) return std::nullopt;
    if (gp.length() == 0) {
        if (gp.source != gamma.source) return std::nullopt;
        return gamma;
    }
    const std::size_t off = gamma.length() - gp.length();
    if (!std::equal(gp.arrows.begin(), gp.arrows.end(), gamma.arrows.begin() + static_cast<long>(off)))
        return std::nullopt;
    if (off == 0) return vertex_path(gamma.range);
    return make_path(g, std::vector<int>(gamma.arrows.begin(), gamma.arrows.begin() + static_cast<long>(off)));
}

std::vector<Path> paths_up_to(const Quiver& g, int max_length, std::size_t budget)
{
    g.validate();
    if (max_length < 0) throw Error(Errc::argument, "paths_up_to: negative length");
    std::vector<Path> out;
    for (int v = 0; v < g.vertex_count(); ++v) out.push_back(vertex_path(v));
    std::size_t begin = 0;
    for (int n = 1; n <= max_length; ++n) {
        const std::size_t end = out.size();
        std::vector<Path> level;
        for (std::size_t k = begin; k < end; ++k)
            for (int a = 0; a < g.arrow_count(); ++a) {
                const Arrow& ar = g.arrows[static_cast<std::size_t>(a)];
                if (ar.src != out[k].range) continue;
                Path p;
                p.arrows.reserve(static_cast<std::size_t>(n));
                p.arrows.push_back(a);
                p.arrows.insert(p.arrows.end(), out[k].arrows.begin(), out[k].arrows.end());
                p.source = out[k].source;
                p.range = ar.rng;
                level.push_back(std::move(p));
                if (out.size() + level.size() > budget) {
                    std::ostringstream os;
                    os << "paths_up_to: more than " << budget << " paths up to length " << max_length;
                    throw BudgetError(os.str(), 0.0);
                }
            }
        if (level.empty()) break;
        std::sort(level.begin(), level.end(),
                  [](const Path& x, const Path& y) { return x.arrows < y.arrows; });
        out.insert(out.end(), level.begin(), level.end());
        begin = end;
    }
    return out;
}

void validate_point(const Quiver& g, const GradedSpace& dims, const QuiverPoint& p)
{
    if (static_cast<int>(dims.dims.size()) != g.vertex_count())
        throw Error(Errc::shape, "grading must list one dimension per vertex");
    if (static_cast<int>(p.blocks.size()) != g.arrow_count())
        throw Error(Errc::shape, "quiver point needs one block per arrow");
    for (int a = 0; a < g.arrow_count(); ++a) {
        const Arrow& ar = g.arrows[static_cast<std::size_t>(a)];
        const Mat& m = p.blocks[static_cast<std::size_t>(a)];
        const int rows = p.kind == PointKind::tensor ? dims.dim(ar.rng) : dims.dim(ar.src);
        const int cols = p.kind == PointKind::tensor ? dims.dim(ar.src) : dims.dim(ar.rng);
        if (m.rows() != rows || m.cols() != cols) {
            std::ostringstream os;
            os << "block for arrow '" << ar.name << "' is " << m.rows() << "x" << m.cols() << ", expected "
               << rows << "x" << cols;
            throw Error(Errc::shape, os.str());
        }
    }
}

Membership disk_membership(const Quiver& g, const GradedSpace& dims, const QuiverPoint& p)
{
    validate_point(g, dims, p);
    Membership m;
    m.row_norms.assign(static_cast<std::size_t>(g.vertex_count()), 0.0);
    for (int v = 0; v < g.vertex_count(); ++v) {
        std::vector<Mat> row;
        for (int a = 0; a < g.arrow_count(); ++a) {
            const Arrow& ar = g.arrows[static_cast<std::size_t>(a)];
            const int anchor = p.kind == PointKind::tensor ? ar.rng : ar.src;
            if (anchor == v && dims.dim(v) > 0) row.push_back(p.blocks[static_cast<std::size_t>(a)]);
        }
        m.row_norms[static_cast<std::size_t>(v)] = row.empty() ? 0.0 : row_norm(row);
    }
    m.worst = m.row_norms.empty() ? 0.0 : *std::max_element(m.row_norms.begin(), m.row_norms.end());
    m.member = m.worst < 1.0;
    return m;
}

Mat path_power(const Quiver& g, const GradedSpace& dims, const QuiverPoint& p, const Path& gamma)
{
    if (gamma.length() == 0) return Mat::Identity(dims.dim(gamma.source), dims.dim(gamma.source));
    // re-derive endpoints so that a hand-built path is checked for composability
    const Path checked = make_path(g, gamma.arrows);
    if (p.kind == PointKind::tensor) {
        Mat m = Mat::Identity(dims.dim(checked.source), dims.dim(checked.source));
        for (auto it = checked.arrows.rbegin(); it != checked.arrows.rend(); ++it)
            m = p.blocks[static_cast<std::size_t>(*it)] * m;
        return m;
    }
    Mat m = Mat::Identity(dims.dim(checked.range), dims.dim(checked.range));
    for (int a : checked.arrows) m = p.blocks[static_cast<std::size_t>(a)] * m;
    return m;
}

}  // namespace picklab
