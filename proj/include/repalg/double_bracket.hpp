#pragma once

#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "repalg/algebra.hpp"
#include "repalg/group_action_fwd.hpp"
#include "repalg/tensor.hpp"

namespace repalg {

using ATensor = Tensor<Word>;

struct Verdict {
    bool ok = true;
    std::string witness;  // set on failure

    static Verdict pass() { return {true, ""}; }
    static Verdict fail(std::string w) { return {false, std::move(w)}; }
};

// n-graded double bracket on A, stored as a table on generator pairs and
// extended on demand by the Leibniz rules and antisymmetry. Generators are
// letters for the free kinds and basis elements for the finite kinds.
class DoubleBracket {
public:
    // `table` keys are generator indices (free kinds: 0-based letter index).
    // Missing symmetric entries are synthesized via the antisymmetry flip;
    // conflicting double entries and grading violations are load errors.
    // When `default_zero` is false, pairs not covered by the table are
    // evaluation-time input errors naming the pair.
    static DoubleBracket make(const AlgebraPresentation& A, int n,
                              std::map<std::pair<int, int>, ATensor> table,
                              bool default_zero);

    const AlgebraPresentation& algebra() const { return *A_; }
    int n() const { return n_; }
    bool covers(int g, int h) const;
    const std::map<std::pair<int, int>, ATensor>& table() const { return table_; }

    // Bilinear extension of the table through the n-graded Leibniz rules.
    ATensor evaluate(const AlgebraElement& a, const AlgebraElement& b) const;
    ATensor evaluate_words(const Word& a, const Word& b) const;

    int word_degree(const Word& w) const { return A_->word_degree(w); }

private:
    const AlgebraPresentation* A_ = nullptr;
    int n_ = 0;
    bool default_zero_ = false;
    std::map<std::pair<int, int>, ATensor> table_;

    ATensor generator_pair(int g, int h) const;
    ATensor letter_pair(int left_letter, int right_letter) const;
    ATensor evaluate_letter_word(int letter, const Word& b) const;
};

// Module actions on A (x) A used by the Leibniz rules:
//   outer:  a (x (x) y) b = ax (x) yb
//   star:   a * (x (x) y) * b = (-1)^{|a||xb| + |b||y|} xb (x) ay
ATensor act_left(const AlgebraPresentation& A, const Word& a, const ATensor& t);
ATensor act_right(const AlgebraPresentation& A, const ATensor& t, const Word& b);
ATensor act_star_left(const AlgebraPresentation& A, const Word& a, const ATensor& t,
                      int n_unused = 0);
ATensor act_star_right(const AlgebraPresentation& A, const ATensor& t, const Word& b);

// Antisymmetry flip of a bracket value:
//   [b,a] = -(-1)^{|a|_n |b|_n + |x'||x''|} x'' (x) x'
ATensor flip_bracket_value(const AlgebraPresentation& A, int n, int deg_a, int deg_b,
                           const ATensor& value);

// Induced tribracket sum_{i=0..2} P_312^i (db (x) id)(id (x) db) P_312,n^{-i}.
ATensor tribracket(const DoubleBracket& db, const AlgebraElement& a,
                   const AlgebraElement& b, const AlgebraElement& c);
ATensor tribracket_words(const DoubleBracket& db, const Word& a, const Word& b,
                         const Word& c);

// Tribracket vanishing on generator triples, plus sampled word triples up to
// length 3 as a safety net (the generator criterion alone is not sufficient).
Verdict is_gerstenhaber(const DoubleBracket& db, std::mt19937_64& rng,
                        int word_samples = 64);

// Tribracket equals the eight-term quasi-Poisson right-hand side on all
// generator triples. Requires unital non-graded A and n = 0.
Verdict is_quasi_poisson(const DoubleBracket& db);

enum class MomentKind { additive, multiplicative };

// additive:        [xi, a] = a (x) 1 - 1 (x) a
// multiplicative:  [eta, a] = a (x) eta - eta (x) a + a eta (x) 1 - 1 (x) eta a
// checked for a ranging over the generators.
Verdict is_moment_map(const DoubleBracket& db, const AlgebraElement& xi,
                      MomentKind kind);

// [ga, gb] = (g (x) g)[a,b] for g in G0 and P_21 (g (x) g)[a,b] otherwise,
// checked over group elements x generator pairs.
Verdict is_equivariant_db(const DoubleBracket& db, const GroupAction& action);

// [a,b]' [a,b]'' in A; represents <check(a), check(b)> in the check algebra.
AlgebraElement check_bracket(const DoubleBracket& db, const AlgebraElement& a,
                             const AlgebraElement& b);

}  // namespace repalg
