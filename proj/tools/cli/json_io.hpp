#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "picklab/oracle.hpp"
#include "picklab/quiver.hpp"
#include "picklab/words.hpp"

namespace picklab::cli {

using nlohmann::json;

// Malformed data at a JSON pointer inside the request.
class DataError : public std::runtime_error {
public:
    DataError(std::string path, const std::string& what) : std::runtime_error(what), path_(std::move(path)) {}
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

cplx parse_complex(const json& j, const std::string& path);
Mat parse_matrix(const json& j, const std::string& path);
std::vector<Mat> parse_matrices(const json& j, const std::string& path);
std::vector<cplx> parse_complexes(const json& j, const std::string& path);
std::vector<std::vector<cplx>> parse_points(const json& j, const std::string& path);
std::vector<OperatorTuple> parse_tuples(const json& j, const std::string& path);
int parse_count(const json& j, const std::string& path);

Quiver parse_quiver(const json& j, const std::string& path);
GradedSpace parse_dims(const json& j, const Quiver& g, const std::string& path);
// Missing arrows default to zero blocks of the right shape.
QuiverPoint parse_quiver_point(const json& j, const Quiver& g, const GradedSpace& dims, PointKind kind,
                               const std::string& path);
std::vector<QuiverPoint> parse_quiver_points(const json& j, const Quiver& g, const GradedSpace& dims, PointKind kind,
                                             const std::string& path);

json to_json(cplx z);
json to_json(const Mat& m);
json to_json(const std::vector<Mat>& ms);
json quiver_json(const Quiver& g);
json dims_json(const Quiver& g, const GradedSpace& d);
json sample_json(const SchurSample& s);

// 64-bit FNV-1a, printed as 16 hex digits.
std::uint64_t fnv1a64(const std::string& bytes);
std::string hash_hex(std::uint64_t h);

}  // namespace picklab::cli
