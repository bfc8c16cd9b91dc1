#include "ncvar/fock.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace ncvar
{

Word Word::parse(const std::string& text)
{
    std::vector<int> letters;
    if(text.find('.') != std::string::npos)
    {
        std::stringstream ss(text);
        std::string item;
        while(std::getline(ss, item, '.'))
        {
            if(item.empty()) throw Error("Word::parse: empty letter in '" + text + "'");
            for(char c : item)
                if(!std::isdigit(static_cast<unsigned char>(c))) throw Error("Word::parse: bad letter in '" + text + "'");
            letters.push_back(std::stoi(item));
        }
    }
    else
    {
        for(char c : text)
        {
            if(c < '1' || c > '9') throw Error("Word::parse: bad letter in '" + text + "'");
            letters.push_back(c - '0');
        }
    }
    for(int l : letters)
        if(l < 1) throw Error("Word::parse: letters are 1-based");
    return Word(std::move(letters));
}

Word Word::concat(const Word& other) const
{
    std::vector<int> out = letters_;
    out.insert(out.end(), other.letters_.begin(), other.letters_.end());
    return Word(std::move(out));
}

Word Word::reversed() const
{
    return Word(std::vector<int>(letters_.rbegin(), letters_.rend()));
}

std::string Word::to_string() const
{
    bool small = std::all_of(letters_.begin(), letters_.end(), [](int l) { return l < 10; });
    std::string out;
    for(std::size_t k = 0; k < letters_.size(); ++k)
    {
        if(!small && k > 0) out += '.';
        out += std::to_string(letters_[k]);
    }
    return out;
}

std::vector<Word> enumerate_words(int n, int d)
{
    if(n < 1) throw Error("enumerate_words: n must be >= 1");
    if(d < 0) throw Error("enumerate_words: d must be >= 0");
    std::vector<Word> out{Word()};
    std::size_t level_begin = 0;
    for(int k = 1; k <= d; ++k)
    {
        std::size_t level_end = out.size();
        // Appending letters to the previous level in lex order keeps the level lex-sorted.
        for(std::size_t p = level_begin; p < level_end; ++p)
            for(int i = 1; i <= n; ++i)
            {
                std::vector<int> letters = out[p].letters();
                letters.push_back(i);
                out.emplace_back(std::move(letters));
            }
        level_begin = level_end;
    }
    return out;
}

TruncatedFockSpace::TruncatedFockSpace(int n, int d) : n_(n), d_(d), words_(enumerate_words(n, d))
{
    offsets_.assign(static_cast<std::size_t>(d) + 2, 0);
    Eigen::Index level = 1;
    for(int k = 0; k <= d; ++k)
    {
        offsets_[static_cast<std::size_t>(k) + 1] = offsets_[static_cast<std::size_t>(k)] + level;
        level *= n;
    }
    const auto count = words_.size();
    degrees_.resize(count);
    tails_.assign(count, -1);
    prepend_.assign(count * static_cast<std::size_t>(n), -1);
    append_.assign(count * static_cast<std::size_t>(n), -1);
    for(std::size_t idx = 0; idx < count; ++idx)
    {
        const Word& w = words_[idx];
        degrees_[idx] = w.length();
        if(!w.empty())
            tails_[idx] = index(Word(std::vector<int>(w.letters().begin() + 1, w.letters().end())));
        if(w.length() < d)
            for(int i = 1; i <= n; ++i)
            {
                std::vector<int> pre{i};
                pre.insert(pre.end(), w.letters().begin(), w.letters().end());
                std::vector<int> post = w.letters();
                post.push_back(i);
                prepend_[idx * static_cast<std::size_t>(n) + static_cast<std::size_t>(i - 1)] = index(Word(pre));
                append_[idx * static_cast<std::size_t>(n) + static_cast<std::size_t>(i - 1)] = index(Word(post));
            }
    }
}

Eigen::Index TruncatedFockSpace::index(const Word& w) const
{
    if(w.length() > d_) throw Error("TruncatedFockSpace::index: word longer than truncation degree");
    Eigen::Index value = 0;
    for(int l : w.letters())
    {
        if(l < 1 || l > n_) throw Error("TruncatedFockSpace::index: letter out of range");
        value = value * n_ + (l - 1);
    }
    return offsets_[static_cast<std::size_t>(w.length())] + value;
}

Eigen::Index TruncatedFockSpace::prepend(Eigen::Index idx, int letter) const
{
    return prepend_[static_cast<std::size_t>(idx) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(letter - 1)];
}

Eigen::Index TruncatedFockSpace::append(Eigen::Index idx, int letter) const
{
    return append_[static_cast<std::size_t>(idx) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(letter - 1)];
}

std::vector<Eigen::Index> TruncatedFockSpace::rows_up_to_degree(int max_degree, Eigen::Index inner) const
{
    std::vector<Eigen::Index> rows;
    for(Eigen::Index idx = 0; idx < dim(); ++idx)
        if(degree(idx) <= max_degree)
            for(Eigen::Index j = 0; j < inner; ++j) rows.push_back(idx * inner + j);
    return rows;
}

Matrix TruncatedFockSpace::degree_projector(int max_degree) const
{
    Matrix p = Matrix::Zero(dim(), dim());
    for(Eigen::Index idx = 0; idx < dim(); ++idx)
        if(degree(idx) <= max_degree) p(idx, idx) = 1.0;
    return p;
}

Vector TruncatedFockSpace::vacuum() const
{
    Vector v = Vector::Zero(dim());
    v(0) = 1.0;
    return v;
}

Vector TruncatedFockSpace::basis_vector(const Word& w) const
{
    Vector v = Vector::Zero(dim());
    v(index(w)) = 1.0;
    return v;
}

namespace
{
void check_letter(const TruncatedFockSpace& space, int i)
{
    if(i < 1 || i > space.n()) throw Error("creation operator index " + std::to_string(i) + " out of range");
}
} // namespace

OperatorMatrix left_creation(const TruncatedFockSpace& space, int i)
{
    check_letter(space, i);
    Matrix s = Matrix::Zero(space.dim(), space.dim());
    for(Eigen::Index idx = 0; idx < space.dim(); ++idx)
    {
        Eigen::Index to = space.prepend(idx, i);
        if(to >= 0) s(to, idx) = 1.0;
    }
    return s;
}

OperatorMatrix right_creation(const TruncatedFockSpace& space, int i)
{
    check_letter(space, i);
    Matrix r = Matrix::Zero(space.dim(), space.dim());
    for(Eigen::Index idx = 0; idx < space.dim(); ++idx)
    {
        Eigen::Index to = space.append(idx, i);
        if(to >= 0) r(to, idx) = 1.0;
    }
    return r;
}

OperatorMatrix flip_unitary(const TruncatedFockSpace& space)
{
    Matrix u = Matrix::Zero(space.dim(), space.dim());
    for(Eigen::Index idx = 0; idx < space.dim(); ++idx) u(space.index(space.word(idx).reversed()), idx) = 1.0;
    return u;
}

} // namespace ncvar
