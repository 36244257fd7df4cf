#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "picklab/matcore.hpp"
#include "picklab/quiver.hpp"
#include "picklab/words.hpp"

namespace picklab {

using Rng = std::mt19937_64;

// Gaussian test data. All draws go through these helpers so that a seed fixes
// every sample bit for bit.
Mat random_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols);
cplx random_in_disk(Rng& rng, double radius);
Mat random_unitary(Rng& rng, Eigen::Index n);
// Random square matrix rescaled to the given spectral radius.
Mat random_with_spectral_radius(Rng& rng, Eigen::Index n, double radius);
// Random d-tuple rescaled to the given row norm.
OperatorTuple random_tuple(Rng& rng, int d, Eigen::Index n, double row_norm_target);
// Commuting d-tuple built from polynomials in one random matrix.
OperatorTuple random_commuting_tuple(Rng& rng, int d, Eigen::Index n, double row_norm_target);
QuiverPoint random_quiver_point(Rng& rng, const Quiver& g, const GradedSpace& dims, PointKind kind,
                                double row_norm_target);

enum class SampleKind { disk, ball, quiver };

struct SchurSample {
    SampleKind kind = SampleKind::disk;
    Eigen::Index rows = 1;  // output dimension (disk, ball)
    Eigen::Index cols = 1;  // input dimension (disk, ball)

    std::vector<Mat> taylor;                   // disk: S_n
    int d = 1;                                 // ball
    std::vector<std::pair<Word, Mat>> words;   // ball: S_gamma
    Quiver quiver;                             // quiver
    GradedSpace in_dims, out_dims;             // quiver: S_gamma maps in[s] -> out[r]
    std::vector<std::pair<Path, Mat>> paths;   // quiver: S_gamma

    // Finite Blaschke products keep their zeros so evaluation can be exact.
    bool blaschke = false;
    std::vector<cplx> zeros;
    cplx unimodular{1.0, 0.0};

    double scale = 1.0;                 // factor applied to the raw random coefficients
    double toeplitz_norm = 0.0;         // truncated Toeplitz norm after scaling
    double norm_upper_bound = 1.0;      // certified bound on the multiplier norm
    double contractivity_margin = 0.0;  // 1 - norm_upper_bound
    double coefficient_tail = 0.0;      // bound on dropped Taylor coefficients (Blaschke)
};

inline constexpr int kBlaschkeTerms = 64;
inline constexpr int kDiskToeplitzBlocks = 64;

SchurSample blaschke_from(const std::vector<cplx>& zeros, cplx c);
SchurSample sample_blaschke(int degree, std::uint64_t seed);

struct PolyKind {
    SampleKind kind = SampleKind::disk;
    int d = 1;            // ball
    Quiver quiver;        // quiver
    GradedSpace in_dims;  // quiver
    GradedSpace out_dims; // quiver
};

// Rescale the coefficients so the truncated Toeplitz norm is at most 0.95 and
// the certified norm bound stays below 1.
void scale_to_contractive(SchurSample& s);

SchurSample sample_contractive_poly(Eigen::Index p, Eigen::Index q, int degree, const PolyKind& kind,
                                    std::uint64_t seed);

// Truncated Toeplitz norms. The disk version uses `blocks` block rows; the
// ball/quiver versions use every word/path up to `max_length`.
double disk_toeplitz_norm(const std::vector<Mat>& taylor, int blocks);
double ball_toeplitz_norm(int d, const std::vector<std::pair<Word, Mat>>& coeffs, int max_length);
double quiver_toeplitz_norm(const Quiver& g, const GradedSpace& in_dims, const GradedSpace& out_dims,
                            const std::vector<std::pair<Path, Mat>>& coeffs, int max_length);

// Evaluations.
Mat eval_point(const SchurSample& s, cplx lambda);
Mat eval_ltoa(const SchurSample& s, const Mat& x, const Mat& t);
Mat eval_rtoa(const SchurSample& s, const Mat& u, const Mat& a);
Mat eval_tensor(const SchurSample& s, const Mat& z);
Mat eval_ball_ltoa(const SchurSample& s, const Mat& x, const OperatorTuple& z, bool transpose_words);

// S^sharp(lambda) = S(conj lambda)^*: coefficients S_n^*.
SchurSample sharp(const SchurSample& s);

// Quiver evaluations. Tensor: sum_gamma i (S_gamma (x) Z^gamma) i^* mapping
// (+)_v U_v (x) Z_v into (+)_v Y_v (x) Z_v. Operator argument: X is block
// diagonal Y -> X and the result is block diagonal U -> X.
Mat eval_quiver_tensor(const SchurSample& s, const GradedSpace& zdims, const QuiverPoint& z);
Mat eval_quiver_ltoa(const SchurSample& s, const GradedSpace& xdims, const Mat& x, const QuiverPoint& t);

}  // namespace picklab
