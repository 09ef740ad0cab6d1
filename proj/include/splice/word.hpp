#pragma once

// Alphabets, linear words, and circular words.

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>

namespace splice {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using Word = std::string;

/// Length-then-lexicographic order. Letters compare as unsigned bytes,
/// which is the alphabet order (alphabets are stored sorted).
struct LengthLex {
    bool operator()(std::string_view u, std::string_view v) const noexcept {
        if (u.size() != v.size()) return u.size() < v.size();
        return u < v;
    }
};

using WordSet = std::set<Word, LengthLex>;

inline bool is_reserved_letter(char c) noexcept {
    switch (c) {
    case '#': case '$': case '-': case '_':
    case ' ': case '\t': case '\n': case '\r': case '\v': case '\f':
        return true;
    default:
        return false;
    }
}

/// Finite, nonempty set of single-character letters kept in sorted order.
class Alphabet {
public:
    Alphabet() = default;

    explicit Alphabet(std::string_view letters) : letters_(letters) {
        if (letters_.empty()) throw Error("alphabet must be nonempty");
        for (char c : letters_)
            if (is_reserved_letter(c))
                throw Error(std::string("reserved character '") + c + "' cannot be a letter");
        std::sort(letters_.begin(), letters_.end(),
                  [](char a, char b) { return static_cast<unsigned char>(a) < static_cast<unsigned char>(b); });
        if (std::adjacent_find(letters_.begin(), letters_.end()) != letters_.end())
            throw Error("duplicate letter in alphabet");
        for (std::size_t i = 0; i < letters_.size(); ++i)
            index_[static_cast<unsigned char>(letters_[i])] = static_cast<int>(i);
    }

    const std::string& letters() const noexcept { return letters_; }
    std::size_t size() const noexcept { return letters_.size(); }
    char operator[](std::size_t i) const noexcept { return letters_[i]; }
    auto begin() const noexcept { return letters_.begin(); }
    auto end() const noexcept { return letters_.end(); }

    bool contains(char c) const noexcept { return index_[static_cast<unsigned char>(c)] >= 0; }

    /// Position of `c` in the sorted letter list, or -1.
    int index(char c) const noexcept { return index_[static_cast<unsigned char>(c)]; }

    bool covers(std::string_view w) const noexcept {
        return std::all_of(w.begin(), w.end(), [this](char c) { return contains(c); });
    }

    void require(std::string_view w, std::string_view what = "word") const {
        for (char c : w)
            if (!contains(c))
                throw Error(std::string(what) + " '" + std::string(w) + "' uses letter '" + c +
                            "' outside the alphabet");
    }

    /// The union of two alphabets.
    friend Alphabet operator|(const Alphabet& a, const Alphabet& b) {
        std::string all = a.letters_;
        for (char c : b.letters_)
            if (!a.contains(c)) all.push_back(c);
        return Alphabet(all);
    }

    friend bool operator==(const Alphabet& a, const Alphabet& b) noexcept { return a.letters_ == b.letters_; }

private:
    std::string letters_;
    static std::array<int, 256> no_letters() noexcept {
        std::array<int, 256> a;
        a.fill(-1);
        return a;
    }

    std::array<int, 256> index_ = no_letters();
};

inline Word rotate(std::string_view w, std::size_t k) {
    if (w.empty()) return Word{};
    k %= w.size();
    Word out;
    out.reserve(w.size());
    out.append(w.substr(k));
    out.append(w.substr(0, k));
    return out;
}

/// All words yx with w = xy.
inline WordSet conjugates(std::string_view w) {
    WordSet out;
    if (w.empty()) {
        out.insert(Word{});
        return out;
    }
    for (std::size_t k = 0; k < w.size(); ++k) out.insert(rotate(w, k));
    return out;
}

/// Least rotation of a nonempty word.
inline Word least_rotation(std::string_view w) {
    Word best(w);
    for (std::size_t k = 1; k < w.size(); ++k) {
        Word r = rotate(w, k);
        if (r < best) best = std::move(r);
    }
    return best;
}

/// A conjugacy class of nonempty words, stored by its least rotation.
class CircularWord {
public:
    explicit CircularWord(std::string_view w) {
        if (w.empty()) throw Error("the empty circular word is not allowed");
        rep_ = least_rotation(w);
    }

    const Word& representative() const noexcept { return rep_; }
    std::size_t size() const noexcept { return rep_.size(); }

    /// Every linear word in the class.
    WordSet linearize() const { return conjugates(rep_); }

    friend bool operator==(const CircularWord&, const CircularWord&) = default;
    friend bool operator<(const CircularWord& a, const CircularWord& b) noexcept {
        return LengthLex{}(a.rep_, b.rep_);
    }

private:
    Word rep_;
};

inline CircularWord canonical_circular(std::string_view w) { return CircularWord(w); }

using CircularWordSet = std::set<CircularWord>;

inline WordSet linearize(const CircularWordSet& words) {
    WordSet out;
    for (const auto& c : words) out.merge(c.linearize());
    return out;
}

/// Words of a set whose length is at most `n`.
inline WordSet truncate(const WordSet& words, std::size_t n) {
    WordSet out;
    for (const auto& w : words) {
        if (w.size() > n) break;
        out.insert(w);
    }
    return out;
}

} // namespace splice
