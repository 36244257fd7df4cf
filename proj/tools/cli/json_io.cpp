#include "json_io.hpp"

#include <cmath>
#include <cstdio>

namespace picklab::cli {

namespace {

const json& member(const json& j, const char* key, const std::string& path)
{
    if (!j.is_object() || !j.contains(key)) throw DataError(path, std::string("missing member '") + key + "'");
    return j[key];
}

double number(const json& j, const std::string& path)
{
    if (!j.is_number()) throw DataError(path, "expected a number");
    const double d = j.get<double>();
    if (!std::isfinite(d)) throw DataError(path, "non-finite number");
    return d;
}

}  // namespace

cplx parse_complex(const json& j, const std::string& path)
{
    if (!j.is_array() || j.size() != 2) throw DataError(path, "complex numbers are [re, im] pairs");
    return {number(j[0], path + "/0"), number(j[1], path + "/1")};
}

Mat parse_matrix(const json& j, const std::string& path)
{
    if (!j.is_array()) throw DataError(path, "matrices are arrays of rows");
    const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
    if (rows == 0) return Mat(0, 0);
    if (!j[0].is_array()) throw DataError(path + "/0", "matrix rows must be arrays");
    const Eigen::Index cols = static_cast<Eigen::Index>(j[0].size());
    Mat m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const json& row = j[static_cast<std::size_t>(r)];
        const std::string rp = path + "/" + std::to_string(r);
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) throw DataError(rp, "ragged matrix row");
        for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = parse_complex(row[static_cast<std::size_t>(c)], rp + "/" + std::to_string(c));
    }
    return m;
}

std::vector<Mat> parse_matrices(const json& j, const std::string& path)
{
    if (!j.is_array()) throw DataError(path, "expected an array of matrices");
    std::vector<Mat> out;
    for (std::size_t k = 0; k < j.size(); ++k) out.push_back(parse_matrix(j[k], path + "/" + std::to_string(k)));
    return out;
}

std::vector<cplx> parse_complexes(const json& j, const std::string& path)
{
    if (!j.is_array()) throw DataError(path, "expected an array of complex numbers");
    std::vector<cplx> out;
    for (std::size_t k = 0; k < j.size(); ++k) out.push_back(parse_complex(j[k], path + "/" + std::to_string(k)));
    return out;
}

std::vector<std::vector<cplx>> parse_points(const json& j, const std::string& path)
{
    if (!j.is_array()) throw DataError(path, "expected an array of points");
    std::vector<std::vector<cplx>> out;
    for (std::size_t k = 0; k < j.size(); ++k) out.push_back(parse_complexes(j[k], path + "/" + std::to_string(k)));
    return out;
}

std::vector<OperatorTuple> parse_tuples(const json& j, const std::string& path)
{
    if (!j.is_array()) throw DataError(path, "expected an array of operator tuples");
    std::vector<OperatorTuple> out;
    for (std::size_t k = 0; k < j.size(); ++k) out.push_back(OperatorTuple{parse_matrices(j[k], path + "/" + std::to_string(k))});
    return out;
}

int parse_count(const json& j, const std::string& path)
{
    if (!j.is_number_integer() || j.get<long long>() < 0 || j.get<long long>() > 1'000'000)
        throw DataError(path, "expected a non-negative integer");
    return j.get<int>();
}

Quiver parse_quiver(const json& j, const std::string& path)
{
    Quiver g;
    const json& vs = member(j, "vertices", path);
    if (!vs.is_array() || vs.empty()) throw DataError(path + "/vertices", "a quiver needs at least one vertex");
    for (std::size_t k = 0; k < vs.size(); ++k) {
        if (!vs[k].is_string()) throw DataError(path + "/vertices/" + std::to_string(k), "vertex names are strings");
        const std::string name = vs[k].get<std::string>();
        for (const auto& v : g.vertices)
            if (v == name) throw DataError(path + "/vertices/" + std::to_string(k), "duplicate vertex '" + name + "'");
        g.vertices.push_back(name);
    }
    const json& as = member(j, "arrows", path);
    if (!as.is_array()) throw DataError(path + "/arrows", "arrows must be an array");
    for (std::size_t k = 0; k < as.size(); ++k) {
        const std::string ap = path + "/arrows/" + std::to_string(k);
        const json& a = as[k];
        Arrow ar;
        try {
            ar.name = member(a, "name", ap).get<std::string>();
            ar.src = g.vertex_index(member(a, "src", ap).get<std::string>());
            ar.rng = g.vertex_index(member(a, "rng", ap).get<std::string>());
        } catch (const Error& e) {
            throw DataError(ap, e.what());
        } catch (const json::exception& e) {
            throw DataError(ap, "arrow members must be strings");
        }
        for (const auto& b : g.arrows)
            if (b.name == ar.name) throw DataError(ap, "duplicate arrow '" + ar.name + "'");
        g.arrows.push_back(ar);
    }
    return g;
}

GradedSpace parse_dims(const json& j, const Quiver& g, const std::string& path)
{
    if (!j.is_object()) throw DataError(path, "dims map vertex names to dimensions");
    GradedSpace d;
    d.dims.assign(static_cast<std::size_t>(g.vertex_count()), 0);
    for (auto it = j.begin(); it != j.end(); ++it) {
        int v = 0;
        try {
            v = g.vertex_index(it.key());
        } catch (const Error& e) {
            throw DataError(path + "/" + it.key(), e.what());
        }
        d.dims[static_cast<std::size_t>(v)] = parse_count(it.value(), path + "/" + it.key());
    }
    return d;
}

QuiverPoint parse_quiver_point(const json& j, const Quiver& g, const GradedSpace& dims, PointKind kind,
                               const std::string& path)
{
    if (!j.is_object()) throw DataError(path, "quiver points map arrow names to matrices");
    for (auto it = j.begin(); it != j.end(); ++it) {
        try {
            g.arrow_index(it.key());
        } catch (const Error& e) {
            throw DataError(path + "/" + it.key(), e.what());
        }
    }
    QuiverPoint p;
    p.kind = kind;
    for (const auto& ar : g.arrows) {
        const int rows = kind == PointKind::tensor ? dims.dim(ar.rng) : dims.dim(ar.src);
        const int cols = kind == PointKind::tensor ? dims.dim(ar.src) : dims.dim(ar.rng);
        if (!j.contains(ar.name)) {
            p.blocks.push_back(Mat::Zero(rows, cols));
            continue;
        }
        Mat m = parse_matrix(j[ar.name], path + "/" + ar.name);
        if (m.size() == 0 && (rows == 0 || cols == 0)) m = Mat::Zero(rows, cols);
        if (m.rows() != rows || m.cols() != cols)
            throw DataError(path + "/" + ar.name, "block for arrow '" + ar.name + "' should be " + std::to_string(rows) +
                                                      "x" + std::to_string(cols));
        p.blocks.push_back(std::move(m));
    }
    return p;
}

std::vector<QuiverPoint> parse_quiver_points(const json& j, const Quiver& g, const GradedSpace& dims, PointKind kind,
                                             const std::string& path)
{
    if (!j.is_array()) throw DataError(path, "expected an array of quiver points");
    std::vector<QuiverPoint> out;
    for (std::size_t k = 0; k < j.size(); ++k) out.push_back(parse_quiver_point(j[k], g, dims, kind, path + "/" + std::to_string(k)));
    return out;
}

json to_json(cplx z)
{
    return json::array({z.real(), z.imag()});
}

json to_json(const Mat& m)
{
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

json to_json(const std::vector<Mat>& ms)
{
    json a = json::array();
    for (const auto& m : ms) a.push_back(to_json(m));
    return a;
}

json quiver_json(const Quiver& g)
{
    json arrows = json::array();
    for (const auto& a : g.arrows)
        arrows.push_back({{"name", a.name}, {"src", g.vertices[static_cast<std::size_t>(a.src)]},
                          {"rng", g.vertices[static_cast<std::size_t>(a.rng)]}});
    return {{"vertices", g.vertices}, {"arrows", arrows}};
}

json dims_json(const Quiver& g, const GradedSpace& d)
{
    json o = json::object();
    for (int v = 0; v < g.vertex_count(); ++v) o[g.vertices[static_cast<std::size_t>(v)]] = d.dim(v);
    return o;
}

json sample_json(const SchurSample& s)
{
    json j;
    j["schema_version"] = "1";
    switch (s.kind) {
    case SampleKind::disk: j["kind"] = s.blaschke ? "blaschke" : "disk"; break;
    case SampleKind::ball: j["kind"] = "ball"; break;
    case SampleKind::quiver: j["kind"] = "quiver"; break;
    }
    j["rows"] = s.rows;
    j["cols"] = s.cols;
    if (s.kind == SampleKind::disk) {
        j["taylor"] = to_json(s.taylor);
        if (s.blaschke) {
            json zs = json::array();
            for (cplx z : s.zeros) zs.push_back(to_json(z));
            j["zeros"] = zs;
            j["unimodular"] = to_json(s.unimodular);
        }
    } else if (s.kind == SampleKind::ball) {
        j["d"] = s.d;
        json ws = json::array();
        for (const auto& [w, m] : s.words) {
            json letters = json::array();
            for (int l : w.letters) letters.push_back(l + 1);
            ws.push_back({{"word", letters}, {"coefficient", to_json(m)}});
        }
        j["words"] = ws;
    } else {
        j["quiver"] = quiver_json(s.quiver);
        j["in_dims"] = dims_json(s.quiver, s.in_dims);
        j["out_dims"] = dims_json(s.quiver, s.out_dims);
        json ps = json::array();
        for (const auto& [p, m] : s.paths) {
            json names = json::array();
            for (int a : p.arrows) names.push_back(s.quiver.arrows[static_cast<std::size_t>(a)].name);
            ps.push_back({{"path", names},
                          {"source", s.quiver.vertices[static_cast<std::size_t>(p.source)]},
                          {"range", s.quiver.vertices[static_cast<std::size_t>(p.range)]},
                          {"coefficient", to_json(m)}});
        }
        j["paths"] = ps;
    }
    j["scale"] = s.scale;
    j["toeplitz_norm"] = s.toeplitz_norm;
    j["norm_upper_bound"] = s.norm_upper_bound;
    j["contractivity_margin"] = s.contractivity_margin;
    j["coefficient_tail"] = s.coefficient_tail;
    return j;
}

std::uint64_t fnv1a64(const std::string& bytes)
{
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string hash_hex(std::uint64_t h)
{
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace picklab::cli
