#include "repalg/rep_algebra.hpp"

#include <algorithm>

#include "repalg/errors.hpp"

namespace repalg {

RepElement& RepElement::operator+=(const RepElement& o) {
    for (const auto& [m, c] : o.terms) {
        auto it = terms.find(m);
        if (it == terms.end()) {
            terms.emplace(m, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms.erase(it);
        }
    }
    return *this;
}

RepElement RepElement::operator+(const RepElement& o) const {
    RepElement r = *this;
    r += o;
    return r;
}

RepElement RepElement::operator-(const RepElement& o) const {
    RepElement r = *this;
    r += o.scaled(Rational(-1));
    return r;
}

RepElement RepElement::scaled(const Rational& c) const {
    RepElement r;
    if (c.is_zero()) return r;
    for (const auto& [m, v] : terms) r.terms.emplace(m, v * c);
    return r;
}

RepElement RepElement::unit() {
    RepElement r;
    r.terms.emplace(RepMonomial{}, Rational(1));
    return r;
}

RepContext::RepContext(const AlgebraPresentation& A, const Coalgebra& M,
                       RepVariant variant, const GroupAction* action, int degree_bound)
    : A_(&A), M_(&M), variant_(variant), action_(action), degree_bound_(degree_bound) {
    if (unital() && !A.unital())
        throw input_error("unital representation algebras need a unital algebra");
    if (unital() && !M.counit())
        throw input_error("unital representation algebras need a counital coalgebra");
    if (equivariant() && (!action_ || action_->A != &A || action_->M != &M))
        throw input_error("equivariant variants need a loaded group action");
}

int RepContext::monomial_degree(const RepMonomial& m) const {
    int d = 0;
    for (const auto& s : m) d += symbol_degree(s);
    return d;
}

RepElement RepContext::normalize_monomial(RepMonomial m, Rational coeff) const {
    if (coeff.is_zero()) return {};
    // Unital rewrite: (1_A)_alpha = eps(alpha) e.
    if (unital() && A_->kind() != AlgebraKind::structure_constants) {
        RepMonomial kept;
        for (auto& s : m) {
            if (A_->is_neutral_word(s.word)) {
                coeff *= (*M_->counit())[s.m];
                if (coeff.is_zero()) return {};
            } else {
                kept.push_back(std::move(s));
            }
        }
        m = std::move(kept);
    }
    // Koszul insertion sort; odd squares vanish over Q.
    long sign = 1;
    for (size_t i = 1; i < m.size(); ++i) {
        size_t j = i;
        while (j > 0 && m[j] < m[j - 1]) {
            const long d1 = symbol_degree(m[j]);
            const long d2 = symbol_degree(m[j - 1]);
            if ((d1 * d2) % 2 != 0) sign = -sign;
            std::swap(m[j], m[j - 1]);
            --j;
        }
    }
    for (size_t i = 0; i + 1 < m.size(); ++i)
        if (m[i] == m[i + 1] && symbol_degree(m[i]) % 2 != 0) return {};
    RepElement out;
    out.terms.emplace(std::move(m), sign < 0 ? -coeff : coeff);
    return out;
}

RepElement RepContext::monomial(const std::vector<RepSymbol>& symbols,
                                Rational coeff) const {
    // Equivariant projection is deliberately not applied here: brackets and
    // realizations are computed in A_M and pushed to the quotient explicitly.
    return normalize_monomial(symbols, std::move(coeff));
}

RepElement RepContext::multiply(const RepElement& x, const RepElement& y) const {
    RepElement out;
    for (const auto& [mx, cx] : x.terms)
        for (const auto& [my, cy] : y.terms) {
            RepMonomial m = mx;
            m.insert(m.end(), my.begin(), my.end());
            out += monomial(m, cx * cy);
        }
    return out;
}

RepElement RepContext::realize_word(const Word& w, int m) const {
    if (m < 0 || m >= M_->rank()) throw input_error("coalgebra index out of range");
    switch (A_->kind()) {
        case AlgebraKind::free_algebra: {
            const int k = w.length();
            if (k == 0) {
                if (!A_->unital())
                    throw input_error("1_A has no meaning in a non-unital algebra");
                if (!unital())
                    throw input_error(
                        "unit symbols need the unital variant of the representation "
                        "algebra");
                RepElement r;
                const Rational eps = (*M_->counit())[m];
                if (!eps.is_zero()) r.terms.emplace(RepMonomial{}, eps);
                return r;
            }
            if (k == 1) return monomial({RepSymbol{w, m}}, Rational(1));
            // (g_1...g_k)_alpha = sum (g_1)_{alpha^1} ... (g_k)_{alpha^k}
            const auto expansion = M_->comul_iter_basis(m, k);
            RepElement out;
            for (const auto& [key, c] : expansion.terms) {
                std::vector<RepSymbol> symbols;
                symbols.reserve(k);
                for (int i = 0; i < k; ++i)
                    symbols.push_back(RepSymbol{Word::single(w.letters[i]), key[i]});
                out += monomial(symbols, c);
            }
            return out;
        }
        case AlgebraKind::free_group:
        case AlgebraKind::finite_group:
        case AlgebraKind::structure_constants:
            // Group elements and basis elements stay single symbols.
            return monomial({RepSymbol{w, m}}, Rational(1));
    }
    throw input_error("unreachable");
}

RepElement RepContext::realize_word_elem(const Word& w, const Vec& alpha) const {
    if (static_cast<int>(alpha.size()) != M_->rank())
        throw input_error("coalgebra element size mismatch");
    RepElement out;
    for (int m = 0; m < M_->rank(); ++m) {
        if (alpha[m].is_zero()) continue;
        out += realize_word(w, m).scaled(alpha[m]);
    }
    return out;
}

RepElement RepContext::realize(const AlgebraElement& a, const Vec& alpha) const {
    RepElement out;
    for (const auto& [w, c] : a.terms) out += realize_word_elem(w, alpha).scaled(c);
    return out;
}

RepElement RepContext::act_automorphism(const Mat& omega, const RepElement& x) const {
    if (!is_coalgebra_automorphism(*M_, omega))
        throw input_error("action requires a coalgebra automorphism");
    RepElement out;
    for (const auto& [m, c] : x.terms) {
        RepElement acc;
        acc.terms.emplace(RepMonomial{}, c);
        for (const auto& s : m) {
            RepElement sym;
            for (int i = 0; i < M_->rank(); ++i) {
                if (omega[i][s.m].is_zero()) continue;
                sym += monomial({RepSymbol{s.word, i}}, omega[i][s.m]);
            }
            acc = multiply(acc, sym);
        }
        out += acc;
    }
    return out;
}

RepElement RepContext::act_coderivation(const Mat& delta, const RepElement& x) const {
    if (!is_coderivation(*M_, delta))
        throw input_error("action requires a coderivation");
    return act_coderivation_unchecked(delta, x);
}

RepElement RepContext::act_coderivation_unchecked(const Mat& delta,
                                                  const RepElement& x) const {
    RepElement out;
    for (const auto& [m, c] : x.terms) {
        for (size_t k = 0; k < m.size(); ++k) {
            // delta(s_k), other symbols unchanged; degree-zero derivations
            // need no Koszul reordering sign here.
            for (int i = 0; i < M_->rank(); ++i) {
                if (delta[i][m[k].m].is_zero()) continue;
                RepMonomial nm = m;
                nm[k].m = i;
                out += monomial(nm, c * delta[i][m[k].m]);
            }
        }
    }
    return out;
}

RepElement RepContext::trace(const Vec& theta, const AlgebraElement& a) const {
    return realize(a, theta);
}

RepElement RepContext::act_group_element(int g, const RepElement& x) const {
    if (!action_) throw input_error("no group action loaded");
    RepElement out;
    for (const auto& [m, c] : x.terms) {
        Rational coeff = c;
        RepMonomial nm;
        nm.reserve(m.size());
        for (const auto& s : m) {
            auto [wc, ww] = action_->apply_to_word(g, s.word);
            auto [mc, mm] = action_->basis_image(g, s.m);
            coeff *= wc * mc;
            nm.push_back(RepSymbol{ww, mm});
        }
        out += normalize_monomial(std::move(nm), coeff);
    }
    return out;
}

RepElement RepContext::equivariant_project_term(const RepMonomial& m,
                                                const Rational& c) const {
    // Orbit of the monomial under G; canonical representative is the minimal
    // image. A monomial returning to itself with opposite sign is zero.
    RepMonomial best = m;
    Rational best_coeff = c;
    for (int g = 1; g < action_->size(); ++g) {
        Rational coeff = c;
        RepMonomial nm;
        nm.reserve(m.size());
        for (const auto& s : m) {
            auto [wc, ww] = action_->apply_to_word(g, s.word);
            auto [mc, mm] = action_->basis_image(g, s.m);
            coeff *= wc * mc;
            nm.push_back(RepSymbol{ww, mm});
        }
        const RepElement norm = normalize_monomial(std::move(nm), coeff);
        if (norm.is_zero()) continue;  // odd square in the image
        const auto& [im, ic] = *norm.terms.begin();
        if (im == m && ic != c) return {};  // m = -m in the quotient
        if (im < best) {
            best = im;
            best_coeff = ic;
        }
    }
    RepElement out;
    out.terms.emplace(std::move(best), best_coeff);
    return out;
}

RepElement RepContext::equivariant_project(const RepElement& x) const {
    if (!equivariant()) throw input_error("context is not equivariant");
    RepElement out;
    for (const auto& [m, c] : x.terms) out += equivariant_project_term(m, c);
    return out;
}

namespace {

// Column interner for the relation-span linear algebra.
struct MonomialColumns {
    std::map<RepMonomial, int> index;

    int column(const RepMonomial& m) {
        auto it = index.find(m);
        if (it != index.end()) return it->second;
        const int idx = static_cast<int>(index.size());
        index.emplace(m, idx);
        return idx;
    }

    RowSpace::SparseRow row_of(const RepElement& e) {
        RowSpace::SparseRow row;
        for (const auto& [m, c] : e.terms) row[column(m)] = c;
        return row;
    }
};

}  // namespace

bool RepContext::relation_span_contains(const RepElement& diff) const {
    if (unital() && A_->kind() == AlgebraKind::structure_constants)
        throw input_error(
            "unital structure-constant representation algebras are not supported by "
            "equal_mod_relations");

    // Vocabulary of words for relation instances.
    int max_len = 2;
    for (const auto& [m, c] : diff.terms)
        for (const auto& s : m) max_len = std::max(max_len, s.word.length());
    const std::vector<Word> vocab = A_->enumerate_words(max_len);

    // Relation polynomials (uv)_alpha - u_{alpha^1} v_{alpha^2}; entries that
    // normalize to zero (unital rewrites) prune themselves.
    std::vector<RepElement> relations;
    for (const auto& u : vocab)
        for (const auto& v : vocab) {
            const auto prod = A_->word_product(u, v);
            bool in_vocab = true;
            for (const auto& [w, c] : prod.terms)
                if (w.length() > max_len) in_vocab = false;
            if (!in_vocab) continue;
            for (int m = 0; m < M_->rank(); ++m) {
                RepElement r;
                for (const auto& [w, c] : prod.terms)
                    r += realize_word(w, m).scaled(c);
                for (const auto& [key, c] : M_->comul(m).terms)
                    r = r - multiply(monomial({RepSymbol{u, key[0]}}, c),
                                     monomial({RepSymbol{v, key[1]}}, Rational(1)));
                if (equivariant()) r = equivariant_project(r);
                if (!r.is_zero()) relations.push_back(std::move(r));
            }
        }

    MonomialColumns cols;
    RowSpace span;
    const auto try_member = [&](const RepElement& d) {
        return span.contains(cols.row_of(d));
    };

    // Tier 0: the relations themselves.
    for (const auto& r : relations) span.insert(cols.row_of(r));
    if (try_member(diff)) return true;

    // Escalate: multiply relations by monomials of growing degree, staying
    // within the context degree bound.
    std::vector<RepSymbol> symbols;
    for (const auto& w : vocab) {
        if (unital() && A_->is_neutral_word(w)) continue;
        if (w.empty() && A_->kind() == AlgebraKind::free_algebra && !A_->unital())
            continue;
        for (int m = 0; m < M_->rank(); ++m) symbols.push_back(RepSymbol{w, m});
    }
    std::vector<RepMonomial> layer = {RepMonomial{}};
    const size_t row_cap = 200000;
    size_t rows = relations.size();
    for (int d = 1; d + 2 <= degree_bound_; ++d) {
        std::map<RepMonomial, bool> seen;
        std::vector<RepMonomial> next;
        for (const auto& base : layer)
            for (const auto& s : symbols) {
                RepMonomial ext = base;
                ext.push_back(s);
                const RepElement norm = normalize_monomial(std::move(ext), Rational(1));
                if (norm.is_zero()) continue;
                const auto& mon = norm.terms.begin()->first;
                if (seen.count(mon)) continue;
                seen.emplace(mon, true);
                next.push_back(mon);
            }
        for (const auto& mult : next) {
            RepElement factor;
            factor.terms.emplace(mult, Rational(1));
            for (const auto& r : relations) {
                if (++rows > row_cap)
                    throw input_error(
                        "relation span exceeds the tractable size at this degree "
                        "bound");
                RepElement prod = multiply(r, factor);
                if (equivariant()) prod = equivariant_project(prod);
                span.insert(cols.row_of(prod));
            }
        }
        if (try_member(diff)) return true;
        layer = std::move(next);
    }
    return try_member(diff);
}

bool RepContext::equal_mod_relations(const RepElement& x, const RepElement& y) const {
    RepElement diff = x - y;
    if (equivariant()) diff = equivariant_project(diff);
    if (diff.is_zero()) return true;
    for (const auto& [m, c] : diff.terms)
        if (static_cast<int>(m.size()) > degree_bound_)
            throw input_error("element degree exceeds the context degree bound");
    if (A_->kind() == AlgebraKind::free_algebra) return false;
    return relation_span_contains(diff);
}

bool RepContext::is_invariant(const RepElement& x, InvarianceScope scope) const {
    if (!M_->counit())
        throw input_error("invariance testing needs a counital coalgebra");
    std::vector<Vec> functionals;
    if (scope == InvarianceScope::all_inner) {
        for (int i = 0; i < M_->rank(); ++i) {
            Vec phi(M_->rank(), Rational(0));
            phi[i] = Rational(1);
            functionals.push_back(std::move(phi));
        }
    } else {
        if (!action_) throw input_error("L-invariance needs a group action");
        functionals = action_->l_basis();
    }
    for (const auto& phi : functionals) {
        const Mat d = inner_coderivation(*M_, DualAlgebraElement{phi});
        if (!equal_mod_relations(act_coderivation_unchecked(d, x), RepElement::zero()))
            return false;
    }
    return true;
}

std::string RepContext::symbol_str(const RepSymbol& s) const {
    return A_->word_str(s.word) + "[" + M_->label(s.m) + "]";
}

std::string RepContext::str(const RepElement& x) const {
    if (x.is_zero()) return "0";
    std::string out;
    for (const auto& [m, c] : x.terms) {
        if (!out.empty()) out += " + ";
        std::string mono;
        if (m.empty()) {
            mono = "e";
        } else {
            for (size_t i = 0; i < m.size(); ++i) {
                if (i) mono += "*";
                mono += symbol_str(m[i]);
            }
        }
        if (c.is_one())
            out += mono;
        else
            out += c.str() + "*" + mono;
    }
    return out;
}

}  // namespace repalg
