#include "picklab/words.hpp"

#include <algorithm>
#include <sstream>

namespace picklab {

Word Word::transpose() const
{
    Word t{letters};
    std::reverse(t.letters.begin(), t.letters.end());
    return t;
}

std::string to_string(const Word& w)
{
    if (w.letters.empty()) return "e";
    std::ostringstream os;
    for (std::size_t k = 0; k < w.letters.size(); ++k) {
        if (k) os << '.';
        os << w.letters[k] + 1;
    }
    return os.str();
}

std::size_t word_count(int d, int max_length)
{
    std::size_t total = 0, level = 1;
    for (int n = 0; n <= max_length; ++n) {
        total += level;
        level *= static_cast<std::size_t>(d);
    }
    return total;
}

std::vector<Word> words_up_to(int d, int max_length, std::size_t budget)
{
    if (d < 1) throw Error(Errc::argument, "words_up_to: d must be >= 1");
    if (max_length < 0) throw Error(Errc::argument, "words_up_to: negative length");
    // count level by level so that huge d^L does not overflow silently
    std::size_t total = 0, level = 1;
    for (int n = 0; n <= max_length; ++n) {
        total += level;
        if (total > budget) {
            std::ostringstream os;
            os << "words_up_to: more than " << budget << " words for d=" << d << ", L=" << max_length;
            throw BudgetError(os.str(), 0.0);
        }
        level *= static_cast<std::size_t>(d);
    }

    std::vector<Word> out;
    out.reserve(total);
    out.push_back(Word{});
    std::size_t begin = 0;
    for (int n = 1; n <= max_length; ++n) {
        const std::size_t end = out.size();
        // the previous level is already sorted, so prefixing letters in order keeps lex order
        for (int a = 0; a < d; ++a)
            for (std::size_t k = begin; k < end; ++k) {
                Word w;
                w.letters.reserve(n);
                w.letters.push_back(a);
                w.letters.insert(w.letters.end(), out[k].letters.begin(), out[k].letters.end());
                out.push_back(std::move(w));
            }
        begin = end;
    }
    return out;
}

std::optional<Word> word_quotient(const Word& g, const Word& gp)
{
    if (gp.length() > g.length()) return std::nullopt;
    const std::size_t off = g.length() - gp.length();
    if (!std::equal(gp.letters.begin(), gp.letters.end(), g.letters.begin() + static_cast<long>(off)))
        return std::nullopt;
    return Word{std::vector<int>(g.letters.begin(), g.letters.begin() + static_cast<long>(off))};
}

double OperatorTuple::commutator_defect() const
{
    double worst = 0.0;
    for (std::size_t k = 0; k < z.size(); ++k)
        for (std::size_t l = k + 1; l < z.size(); ++l)
            worst = std::max(worst, (z[k] * z[l] - z[l] * z[k]).norm());
    return worst;
}

OperatorTuple OperatorTuple::adjoint() const
{
    OperatorTuple t;
    for (const auto& m : z) t.z.push_back(m.adjoint());
    return t;
}

void OperatorTuple::validate() const
{
    if (z.empty()) throw Error(Errc::shape, "operator tuple is empty");
    const Eigen::Index n = z.front().rows();
    for (const auto& m : z)
        if (m.rows() != n || m.cols() != n)
            throw Error(Errc::shape, "operator tuple entries must be square of common size");
}

Mat word_power(const OperatorTuple& z, const Word& w, bool transpose)
{
    const Eigen::Index n = z.dim();
    Mat p = Mat::Identity(n, n);
    for (std::size_t k = 0; k < w.letters.size(); ++k) {
        const int a = w.letters[k];
        if (a < 0 || a >= z.d()) throw Error(Errc::argument, "word_power: letter outside alphabet");
        // written order multiplies left to right; the transpose multiplies right to left
        if (transpose)
            p = z.z[static_cast<std::size_t>(a)] * p;
        else
            p = p * z.z[static_cast<std::size_t>(a)];
    }
    return p;
}

}  // namespace picklab
