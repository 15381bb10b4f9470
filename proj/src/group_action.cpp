#include "repalg/group_action.hpp"

#include "repalg/coalgebra.hpp"
#include "repalg/errors.hpp"

namespace repalg {

GroupAction GroupAction::trivial(const AlgebraPresentation& A, const Coalgebra& M) {
    GroupAction act;
    act.A = &A;
    act.M = &M;
    GroupElementAction id;
    id.name = "1";
    id.in_g0 = true;
    id.coalgebra_map = mat_identity(M.rank());
    for (size_t i = 0; i < A.generators().size(); ++i) {
        Word w = (A.kind() == AlgebraKind::free_group)
                     ? Word::single(static_cast<int>(i) + 1)
                     : Word::single(static_cast<int>(i));
        id.gen_images.emplace_back(Rational(1), w);
    }
    act.elements.push_back(std::move(id));
    return act;
}

GroupAction GroupAction::order_two(const AlgebraPresentation& A, const Coalgebra& M,
                                   std::vector<std::pair<Rational, Word>> iota_gen_images,
                                   Mat iota_coalgebra) {
    GroupAction act = trivial(A, M);
    GroupElementAction iota;
    iota.name = "iota";
    iota.in_g0 = false;
    iota.coalgebra_map = std::move(iota_coalgebra);
    iota.gen_images = std::move(iota_gen_images);
    if (iota.gen_images.size() != A.generators().size())
        throw input_error("involution must give an image for every generator");
    for (auto& [c, w] : iota.gen_images)
        if (!A.valid_word(w)) throw input_error("involution image is not a valid word");
    if (!is_coalgebra_antiautomorphism(M, iota.coalgebra_map))
        throw input_error("involution is not a coalgebra antiautomorphism");
    if (M.counit()) {
        // The counit must be fixed: eps(iota alpha) = eps(alpha).
        const Vec eps = *M.counit();
        for (int j = 0; j < M.rank(); ++j) {
            Rational s(0);
            for (int i = 0; i < M.rank(); ++i) s += eps[i] * iota.coalgebra_map[i][j];
            if (s != eps[j]) throw input_error("involution does not fix the counit");
        }
    }
    act.elements.push_back(std::move(iota));

    // Involutivity on both sides.
    const Mat sq = mat_mul(act.elements[1].coalgebra_map, act.elements[1].coalgebra_map);
    if (!mat_equal(sq, mat_identity(M.rank())))
        throw input_error("coalgebra involution does not square to the identity");
    for (size_t i = 0; i < A.generators().size(); ++i) {
        Word gen = (A.kind() == AlgebraKind::free_group)
                       ? Word::single(static_cast<int>(i) + 1)
                       : Word::single(static_cast<int>(i));
        const auto once = act.apply_to_word(1, gen);
        const auto twice = act.apply_to_word(1, once.second);
        if (!(twice.second == gen) || once.first * twice.first != Rational(1))
            throw input_error("algebra involution does not square to the identity");
    }
    return act;
}

std::pair<Rational, Word> GroupAction::letter_image(int g, int letter) const {
    const auto& el = elements[g];
    switch (A->kind()) {
        case AlgebraKind::free_algebra:
        case AlgebraKind::finite_group:
        case AlgebraKind::structure_constants:
            return el.gen_images[letter];
        case AlgebraKind::free_group: {
            const int gi = std::abs(letter) - 1;
            auto [c, w] = el.gen_images[gi];
            if (letter > 0) return {c, w};
            // Inverse letter: invert the image (its coefficient must be a unit
            // carried by a group word).
            std::vector<int> inv;
            for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
                inv.push_back(-*it);
            if (c != Rational(1) && c != Rational(-1))
                throw input_error("group generator image must be +-(group word)");
            return {c, Word(std::move(inv))};
        }
    }
    throw input_error("unreachable");
}

std::pair<Rational, Word> GroupAction::apply_to_word(int g, const Word& w) const {
    const auto& el = elements[g];
    if (w.empty()) return {Rational(1), w};  // the action fixes 1_A
    Rational coeff(1);
    std::vector<Word> images;
    for (int letter : w.letters) {
        auto [c, lw] = letter_image(g, letter);
        coeff *= c;
        images.push_back(std::move(lw));
    }
    if (!el.in_g0) {
        // Koszul sign for reversing the factors.
        long exponent = 0;
        const auto letter_degree = [this](int letter) {
            if (A->kind() == AlgebraKind::free_algebra)
                return A->generators()[letter].degree;
            return 0;
        };
        for (size_t i = 0; i < w.letters.size(); ++i)
            for (size_t j = i + 1; j < w.letters.size(); ++j)
                exponent += static_cast<long>(letter_degree(w.letters[i])) *
                            letter_degree(w.letters[j]);
        if (exponent % 2 != 0) coeff = -coeff;
        std::reverse(images.begin(), images.end());
    }
    // Fold the images multiplicatively; for word-based kinds the result stays
    // a single word.
    AlgebraElement prod = AlgebraElement::of_word(images[0]);
    for (size_t i = 1; i < images.size(); ++i)
        prod = A->multiply(prod, AlgebraElement::of_word(images[i]));
    if (prod.terms.size() != 1)
        throw input_error("group action image of a word is not a single word");
    const auto& [word, c] = *prod.terms.begin();
    return {coeff * c, word};
}

AlgebraElement GroupAction::apply_to_element(int g, const AlgebraElement& x) const {
    AlgebraElement out;
    for (const auto& [w, c] : x.terms) {
        auto [ic, iw] = apply_to_word(g, w);
        out.add(iw, c * ic);
    }
    return out;
}

Tensor<Word> GroupAction::apply_to_word_tensor(int g, const Tensor<Word>& t) const {
    Tensor<Word> out(t.arity);
    for (const auto& [key, c] : t.terms) {
        Rational coeff = c;
        std::vector<Word> nk;
        nk.reserve(key.size());
        for (const auto& w : key) {
            auto [ic, iw] = apply_to_word(g, w);
            coeff *= ic;
            nk.push_back(std::move(iw));
        }
        out.add(nk, coeff);
    }
    return out;
}

Vec GroupAction::apply_to_coalgebra(int g, const Vec& alpha) const {
    return mat_apply(elements[g].coalgebra_map, alpha);
}

std::pair<Rational, int> GroupAction::basis_image(int g, int m) const {
    const auto& mat = elements[g].coalgebra_map;
    int hit = -1;
    for (int i = 0; i < static_cast<int>(mat.size()); ++i) {
        if (mat[i][m].is_zero()) continue;
        if (hit >= 0)
            throw input_error("coalgebra action is not a signed basis permutation");
        hit = i;
    }
    if (hit < 0) throw input_error("coalgebra action kills a basis element");
    return {mat[hit][m], hit};
}

Vec GroupAction::dual_right_action(int g, const Vec& phi) const {
    const auto& mat = elements[g].coalgebra_map;
    Vec out(phi.size(), Rational(0));
    for (size_t i = 0; i < phi.size(); ++i)
        for (size_t j = 0; j < phi.size(); ++j)
            out[i] += mat[j][i] * phi[j];
    return out;
}

Vec GroupAction::averaging_ell(const Vec& phi) const {
    Vec out(phi.size(), Rational(0));
    for (int g = 0; g < size(); ++g) {
        const Vec term = dual_right_action(g, phi);
        for (size_t i = 0; i < out.size(); ++i)
            out[i] += elements[g].in_g0 ? term[i] : -term[i];
    }
    return out;
}

std::vector<Vec> GroupAction::l_basis() const {
    const int n = M->rank();
    // Stack (act_g^T -+ I) phi = 0 over all non-identity elements.
    Mat constraints;
    for (int g = 1; g < size(); ++g) {
        const auto& mat = elements[g].coalgebra_map;
        for (int i = 0; i < n; ++i) {
            Vec row(n, Rational(0));
            for (int j = 0; j < n; ++j) row[j] = mat[j][i];
            row[i] -= elements[g].in_g0 ? Rational(1) : Rational(-1);
            constraints.push_back(std::move(row));
        }
    }
    if (constraints.empty()) {
        std::vector<Vec> basis;
        for (int i = 0; i < n; ++i) {
            Vec e(n, Rational(0));
            e[i] = Rational(1);
            basis.push_back(std::move(e));
        }
        return basis;
    }
    return kernel_basis(constraints, n);
}

}  // namespace repalg
