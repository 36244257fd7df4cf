#pragma once

#include <optional>
#include <string>
#include <vector>

#include "picklab/matcore.hpp"

namespace picklab {

// A word i_N ... i_1 in the free semigroup on d letters. Letters are stored
// 0-based in written (left-to-right) order, so letters.front() == i_N.
struct Word {
    std::vector<int> letters;

    std::size_t length() const { return letters.size(); }
    Word transpose() const;
    auto operator<=>(const Word&) const = default;
};

std::string to_string(const Word& w);  // 1-based letters, "e" for the empty word

std::size_t word_count(int d, int max_length);
std::vector<Word> words_up_to(int d, int max_length, std::size_t budget = kDefaultWorkBudget);

// g * gp^{-1}: the prefix g'' with g = g'' gp, if gp is a suffix of g.
std::optional<Word> word_quotient(const Word& g, const Word& gp);

struct OperatorTuple {
    std::vector<Mat> z;

    int d() const { return static_cast<int>(z.size()); }
    Eigen::Index dim() const { return z.empty() ? 0 : z.front().rows(); }
    double row_norm() const { return picklab::row_norm(z); }
    double commutator_defect() const;
    OperatorTuple adjoint() const;
    void validate() const;
};

// Z^gamma = Z_{i_N} ... Z_{i_1}; with transpose, Z^{gamma^T} = Z_{i_1} ... Z_{i_N}.
Mat word_power(const OperatorTuple& z, const Word& w, bool transpose = false);

}  // namespace picklab
