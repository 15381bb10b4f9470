#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "repalg/linalg.hpp"
#include "repalg/rational.hpp"

namespace repalg {

enum class AlgebraKind { free_algebra, free_group, finite_group, structure_constants };

struct Generator {
    std::string name;
    int degree = 0;
};

// A multiplicative basis word. Encoding depends on the presentation kind:
//   free_algebra         letters are generator indices, concatenative
//   free_group           letters are +(i+1) for generator i and -(i+1) for
//                        its inverse; always reduced; empty = neutral
//   finite_group         exactly one letter, the group element index
//   structure_constants  exactly one letter, the basis index
struct Word {
    std::vector<int> letters;

    Word() = default;
    explicit Word(std::vector<int> ls) : letters(std::move(ls)) {}
    static Word single(int letter) { return Word({letter}); }

    bool empty() const { return letters.empty(); }
    int length() const { return static_cast<int>(letters.size()); }

    auto operator<=>(const Word&) const = default;
};

// A finitely supported Q-linear combination of words. Elements are only
// meaningful relative to a presentation; the presentation is passed to every
// operation rather than stored per element.
struct AlgebraElement {
    std::map<Word, Rational> terms;

    bool is_zero() const { return terms.empty(); }
    void add(const Word& w, const Rational& c);
    AlgebraElement& operator+=(const AlgebraElement& o);
    AlgebraElement operator+(const AlgebraElement& o) const;
    AlgebraElement operator-(const AlgebraElement& o) const;
    AlgebraElement scaled(const Rational& c) const;
    bool operator==(const AlgebraElement& o) const { return terms == o.terms; }

    static AlgebraElement of_word(const Word& w, Rational c = Rational(1));
};

class AlgebraPresentation {
public:
    static AlgebraPresentation make_free(std::vector<Generator> gens, bool unital);
    static AlgebraPresentation make_free_group(std::vector<std::string> names);
    // names[i] labels group element i; table[g][h] = index of gh. Associativity
    // and a two-sided neutral element are verified at load.
    static AlgebraPresentation make_finite_group(std::vector<std::string> names,
                                                 std::vector<std::vector<int>> table);
    // products[a][b] = expansion of e_a e_b in the basis. Associativity is
    // verified exhaustively over basis triples at load.
    static AlgebraPresentation make_structure_constants(
        std::vector<std::string> names,
        std::vector<std::vector<std::vector<std::pair<int, Rational>>>> products,
        std::optional<Vec> unit_coords);

    AlgebraKind kind() const { return kind_; }
    bool unital() const { return unital_; }
    const std::vector<Generator>& generators() const { return generators_; }
    int generator_index(const std::string& name) const;

    int word_degree(const Word& w) const;
    bool valid_word(const Word& w) const;
    Word neutral_word() const;  // 1_A as a word; throws for non-unital kinds
    bool is_neutral_word(const Word& w) const;

    // finite_group helpers
    int group_product(int g, int h) const { return table_[g][h]; }
    int group_inverse(int g) const;
    int group_neutral() const { return neutral_; }
    int group_order() const { return static_cast<int>(table_.size()); }

    // structure_constants helper
    const std::vector<std::pair<int, Rational>>& sc_product(int a, int b) const {
        return sc_[a][b];
    }

    AlgebraElement word_product(const Word& u, const Word& w) const;
    AlgebraElement multiply(const AlgebraElement& x, const AlgebraElement& y) const;

    // Parses words like "ab", "g*h", "g^-2", "1" against the generator names.
    Word parse_word(const std::string& text) const;
    std::string word_str(const Word& w) const;
    std::string element_str(const AlgebraElement& x) const;

    // All distinct basis words of length <= max_len (free kinds) or the whole
    // basis (finite kinds). Used by the degree-bounded span computations.
    std::vector<Word> enumerate_words(int max_len) const;

private:
    AlgebraKind kind_ = AlgebraKind::free_algebra;
    bool unital_ = false;
    std::vector<Generator> generators_;
    std::vector<std::vector<int>> table_;  // finite_group
    int neutral_ = -1;
    std::vector<std::vector<std::vector<std::pair<int, Rational>>>> sc_;
    std::optional<Vec> sc_unit_;

    Word reduce_group_word(std::vector<int> letters) const;
};

// Equality in the check algebra A/[A,A]: decides whether x - y lies in the
// span of the graded commutators uv - (-1)^{|u||v|} vu over basis words, with
// len(u) + len(v) bounded by degree_bound for the free kinds (the whole basis
// is used for finite kinds).
bool check_class_equal(const AlgebraPresentation& pres, const AlgebraElement& x,
                       const AlgebraElement& y, int degree_bound);

}  // namespace repalg
