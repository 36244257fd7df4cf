#pragma once

#include <optional>
#include <string>
#include <vector>

#include "picklab/matcore.hpp"

namespace picklab {

struct Arrow {
    std::string name;
    int src = 0;
    int rng = 0;
};

struct Quiver {
    std::vector<std::string> vertices;
    std::vector<Arrow> arrows;

    int vertex_count() const { return static_cast<int>(vertices.size()); }
    int arrow_count() const { return static_cast<int>(arrows.size()); }
    int vertex_index(const std::string& name) const;
    int arrow_index(const std::string& name) const;
    Quiver transposed() const;
    void validate() const;
};

// Q0 = {a, b}, alpha: a -> a, beta: a -> b.
Quiver two_vertex_example();
// One vertex with d loops; its paths are the words of the free semigroup.
Quiver single_vertex_loops(int d);

struct GradedSpace {
    std::vector<int> dims;

    int total() const;
    int offset(int v) const;
    int dim(int v) const { return dims[static_cast<std::size_t>(v)]; }
};

// gamma = (alpha_n, ..., alpha_1) in written order; arrows.front() == alpha_n.
// Length-0 paths carry only their vertex (source == range).
struct Path {
    std::vector<int> arrows;
    int source = 0;
    int range = 0;

    std::size_t length() const { return arrows.size(); }
    auto operator<=>(const Path&) const = default;
};

Path vertex_path(int v);
Path make_path(const Quiver& g, std::vector<int> arrows);  // throws path error if not composable
std::string path_name(const Quiver& g, const Path& p);

// gamma * gamma'^{-1}: gamma'' with gamma = gamma'' * gamma', when defined.
std::optional<Path> path_quotient(const Quiver& g, const Path& gamma, const Path& gamma_prime);

std::vector<Path> paths_up_to(const Quiver& g, int max_length, std::size_t budget = kDefaultWorkBudget);

enum class PointKind { tensor, operator_argument };

// Tensor points: Z_alpha maps dims[s] -> dims[r]. Operator-argument points live
// on the transposed quiver: T_alpha maps dims[r] -> dims[s].
struct QuiverPoint {
    PointKind kind = PointKind::tensor;
    std::vector<Mat> blocks;  // indexed by arrow
};

void validate_point(const Quiver& g, const GradedSpace& dims, const QuiverPoint& p);

struct Membership {
    bool member = false;
    std::vector<double> row_norms;  // per vertex
    double worst = 0.0;
};

Membership disk_membership(const Quiver& g, const GradedSpace& dims, const QuiverPoint& p);

// Z^gamma = Z_{alpha_n} ... Z_{alpha_1} (tensor) or T^{gamma^T} = T_{alpha_1} ... T_{alpha_n}.
Mat path_power(const Quiver& g, const GradedSpace& dims, const QuiverPoint& p, const Path& gamma);

}  // namespace picklab
