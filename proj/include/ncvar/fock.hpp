#pragma once

#include <string>
#include <vector>

#include "ncvar/linalg.hpp"

namespace ncvar
{

/// Element of the unital free semigroup on n generators. Letters are 1-based;
/// the empty word is the identity g_0.
class Word
{
public:
    Word() = default;
    explicit Word(std::vector<int> letters) : letters_(std::move(letters)) {}

    /// Parses "121" (one digit per letter) or "1.10.2" (dot-separated). "" is g_0.
    static Word parse(const std::string& text);

    const std::vector<int>& letters() const { return letters_; }
    int length() const { return static_cast<int>(letters_.size()); }
    bool empty() const { return letters_.empty(); }
    int operator[](int k) const { return letters_[static_cast<std::size_t>(k)]; }

    Word concat(const Word& other) const;
    Word reversed() const;

    /// Digit string when every letter is < 10, dot-separated otherwise.
    std::string to_string() const;

    friend bool operator==(const Word&, const Word&) = default;
    friend auto operator<=>(const Word&, const Word&) = default;

private:
    std::vector<int> letters_;
};

/// Words of length <= d over n letters in graded-lexicographic order.
std::vector<Word> enumerate_words(int n, int d);

/// F^2(H_n) truncated at tensor degree d, with the graded-lex word basis.
class TruncatedFockSpace
{
public:
    TruncatedFockSpace(int n, int d);

    int n() const { return n_; }
    int d() const { return d_; }
    Eigen::Index dim() const { return static_cast<Eigen::Index>(words_.size()); }

    /// offset(k) = number of words of length < k.
    Eigen::Index offset(int k) const { return offsets_[static_cast<std::size_t>(k)]; }

    Eigen::Index index(const Word& w) const;
    const Word& word(Eigen::Index idx) const { return words_[static_cast<std::size_t>(idx)]; }
    const std::vector<Word>& words() const { return words_; }
    int degree(Eigen::Index idx) const { return degrees_[static_cast<std::size_t>(idx)]; }

    /// idx(g_i alpha) and idx(alpha g_i), or -1 past the truncation degree.
    Eigen::Index prepend(Eigen::Index idx, int letter) const;
    Eigen::Index append(Eigen::Index idx, int letter) const;
    /// idx of alpha with the first letter removed; -1 for the empty word.
    Eigen::Index tail(Eigen::Index idx) const { return tails_[static_cast<std::size_t>(idx)]; }

    /// Flat indices of basis vectors e_alpha (x) delta_j, |alpha| <= max_degree,
    /// for a coefficient space of dimension inner.
    std::vector<Eigen::Index> rows_up_to_degree(int max_degree, Eigen::Index inner) const;

    /// Projection onto degrees <= max_degree.
    Matrix degree_projector(int max_degree) const;

    Vector vacuum() const;
    Vector basis_vector(const Word& w) const;

private:
    int n_;
    int d_;
    std::vector<Word> words_;
    std::vector<int> degrees_;
    std::vector<Eigen::Index> offsets_;
    std::vector<Eigen::Index> tails_;
    std::vector<Eigen::Index> prepend_;
    std::vector<Eigen::Index> append_;
};

/// S_i: e_alpha -> e_{g_i alpha}, zero on the top degree.
OperatorMatrix left_creation(const TruncatedFockSpace& space, int i);

/// R_i: e_alpha -> e_{alpha g_i}, zero on the top degree.
OperatorMatrix right_creation(const TruncatedFockSpace& space, int i);

/// Permutation e_{i_1...i_k} -> e_{i_k...i_1}.
OperatorMatrix flip_unitary(const TruncatedFockSpace& space);

} // namespace ncvar
