#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "picklab/matcore.hpp"
#include "picklab/quiver_np.hpp"

namespace picklab {

// A linear map L(C^n) -> L(C^m) stored by its values on the matrix units:
// images[i * n + j] = phi(e_ij).
struct LinearMapOnMatrices {
    Eigen::Index n = 0, m = 0;
    std::vector<Mat> images;

    Mat apply(const Mat& a) const;
    void validate() const;
};

LinearMapOnMatrices map_from_function(Eigen::Index n, Eigen::Index m, const std::function<Mat(const Mat&)>& f);
LinearMapOnMatrices identity_map(Eigen::Index n);
LinearMapOnMatrices transpose_map(Eigen::Index n);
LinearMapOnMatrices conjugation_map(const Mat& v);  // A -> V A V^*

// [phi(e_ij)]; throws a map error if phi does not preserve adjoints.
Mat choi_matrix(const LinearMapOnMatrices& phi);

struct CpWitness {
    int k = 0;
    Mat input;            // PSD element of M_k(L(C^n))
    double output_min_eig = 0.0;
};

struct CpVerdict {
    bool is_cp = false;
    double choi_min_eig = 0.0;
    double tolerance_used = 0.0;
    std::optional<CpWitness> witness;
};

// Image of a k x k block matrix under id_k (x) phi.
Mat amplify(const LinearMapOnMatrices& phi, const Mat& blocks, int k);

CpVerdict cp_check(const LinearMapOnMatrices& phi, Tolerance tol = {}, std::uint64_t seed = 1, int trials = 100);

// [B_ij] -> [sum_n X_i (I_V (x) Z_i^n B_ij Z_j^{*n}) X_j^* - Y_i (...) Y_j^*]
// with Z_i acting on G, X_i: V (x) G -> C and Y_i: U (x) G -> C.
LinearMapOnMatrices build_phi_disk(const std::vector<Mat>& z, const std::vector<Mat>& x, const std::vector<Mat>& y);
// [C_ij] -> [sum_n Z_i^{*n} (X_i^* C_ij X_j - Y_i^* C_ij Y_j) Z_j^n] with X_i, Y_i: G -> C.
LinearMapOnMatrices build_phi_star_disk(const std::vector<Mat>& z, const std::vector<Mat>& x,
                                        const std::vector<Mat>& y);

// Rows/columns of the Choi matrix of a map on N x N block matrices whose
// (i, j) input block only feeds the (i, j) output block: the surviving index
// set, in the order (i, input index, output index).
std::vector<Eigen::Index> diagonal_choi_indices(std::size_t nodes, Eigen::Index in_block, Eigen::Index out_block);

// One map per vertex v with input L(Z_v)^{N x N}; Choi(phi_v) restricted by
// diagonal_choi_indices is the vertex-v quiver Pick matrix.
struct QuiverMaps {
    std::vector<LinearMapOnMatrices> per_vertex;  // empty map for vertices with dim 0
    int levels = 0;
    double tail_bound = 0.0;
};
QuiverMaps build_phi_quiver(const QlttData& d, const SeriesOptions& opt = {});

// The same maps extended to L(G^N), G = (+)_v Z_v, by composing with the
// blockwise conditional expectation onto the vertex-diagonal part.
LinearMapOnMatrices build_phi_bar_quiver(const QlttData& d, const SeriesOptions& opt = {});

// Blockwise compression of L(G^N) onto (+)_v L(Z_v) in every block.
LinearMapOnMatrices conditional_expectation(const GradedSpace& dims, std::size_t nodes);

// Index list p with Choi(phi_bar)(p, p) = (+)_v P^(v) and every other row zero.
std::vector<Eigen::Index> quiver_choi_permutation(std::size_t nodes, const GradedSpace& zdims, Eigen::Index c);

// Kernel on a finite index set: K(i, j)[B] with B in L(C^in_dim).
using KernelFn = std::function<Mat(std::size_t i, std::size_t j, const Mat& b)>;

// Choi test for the map [B_pq] -> [K(w_p, w_q)[B_pq]] over the index sequence
// w = (0..N-1) repeated `sections` times.
CpVerdict finite_section_kernel_check(const KernelFn& k, std::size_t nodes, Eigen::Index in_dim, Eigen::Index out_dim,
                                      int sections, Tolerance tol = {});

}  // namespace picklab
