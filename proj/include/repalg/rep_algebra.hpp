#pragma once

#include <map>
#include <string>
#include <vector>

#include "repalg/algebra.hpp"
#include "repalg/coalgebra.hpp"
#include "repalg/group_action.hpp"
#include "repalg/linalg.hpp"

namespace repalg {

enum class RepVariant { plain, unital, equivariant, equivariant_unital };

// A rep symbol (a-word, M-basis index); prints as word[label].
struct RepSymbol {
    Word word;
    int m = 0;

    auto operator<=>(const RepSymbol&) const = default;
};

// Sorted multiset of symbols; the empty monomial is the adjoined unit e and
// only occurs in unital variants.
using RepMonomial = std::vector<RepSymbol>;

struct RepElement {
    std::map<RepMonomial, Rational> terms;

    bool is_zero() const { return terms.empty(); }
    RepElement& operator+=(const RepElement& o);
    RepElement operator+(const RepElement& o) const;
    RepElement operator-(const RepElement& o) const;
    RepElement scaled(const Rational& c) const;
    bool operator==(const RepElement& o) const { return terms == o.terms; }

    static RepElement unit();  // e
    static RepElement zero() { return {}; }
};

class RepContext {
public:
    RepContext(const AlgebraPresentation& A, const Coalgebra& M, RepVariant variant,
               const GroupAction* action = nullptr, int degree_bound = 4);

    const AlgebraPresentation& algebra() const { return *A_; }
    const Coalgebra& coalgebra() const { return *M_; }
    RepVariant variant() const { return variant_; }
    bool unital() const {
        return variant_ == RepVariant::unital ||
               variant_ == RepVariant::equivariant_unital;
    }
    bool equivariant() const {
        return variant_ == RepVariant::equivariant ||
               variant_ == RepVariant::equivariant_unital;
    }
    const GroupAction* action() const { return action_; }
    int degree_bound() const { return degree_bound_; }

    int symbol_degree(const RepSymbol& s) const { return A_->word_degree(s.word); }
    int monomial_degree(const RepMonomial& m) const;

    // Normalizes coeff * (product of symbols): Koszul sort, odd squares to
    // zero, unital rewrites (1_A)_alpha -> eps(alpha) e, equivariant orbit
    // canonicalization.
    RepElement monomial(const std::vector<RepSymbol>& symbols, Rational coeff) const;
    RepElement multiply(const RepElement& x, const RepElement& y) const;

    RepElement realize(const AlgebraElement& a, const Vec& alpha) const;
    RepElement realize_word(const Word& w, int m) const;
    RepElement realize_word_elem(const Word& w, const Vec& alpha) const;

    // omega a_alpha = a_{omega(alpha)}; omega must be a coalgebra automorphism.
    RepElement act_automorphism(const Mat& omega, const RepElement& x) const;
    // Derivation with delta(a_alpha) = a_{delta(alpha)}; delta must pass
    // is_coderivation.
    RepElement act_coderivation(const Mat& delta, const RepElement& x) const;
    RepElement act_coderivation_unchecked(const Mat& delta, const RepElement& x) const;

    // tr_theta(a) = a_theta
    RepElement trace(const Vec& theta, const AlgebraElement& a) const;

    // Action of an enriched-group element on the whole element:
    // g(a_alpha) = (ga)_{g alpha}.
    RepElement act_group_element(int g, const RepElement& x) const;
    // Canonical representative modulo (ga)_{g alpha} = a_alpha.
    RepElement equivariant_project(const RepElement& x) const;

    bool equal_mod_relations(const RepElement& x, const RepElement& y) const;

    enum class InvarianceScope { all_inner, l_only };
    bool is_invariant(const RepElement& x, InvarianceScope scope) const;

    std::string str(const RepElement& x) const;
    std::string symbol_str(const RepSymbol& s) const;

private:
    const AlgebraPresentation* A_;
    const Coalgebra* M_;
    RepVariant variant_;
    const GroupAction* action_;
    int degree_bound_;

    RepElement normalize_monomial(RepMonomial m, Rational coeff) const;
    RepElement equivariant_project_term(const RepMonomial& m, const Rational& c) const;
    bool relation_span_contains(const RepElement& diff) const;
};

}  // namespace repalg
