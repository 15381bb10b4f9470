#pragma once

#include <string>
#include <vector>

#include "repalg/algebra.hpp"
#include "repalg/coalgebra.hpp"
#include "repalg/linalg.hpp"
#include "repalg/tensor.hpp"

namespace repalg {

// One element of a finite enriched group acting on A and M. Elements of G0
// act by (co)algebra automorphisms, the others by antiautomorphisms. The
// algebra action is stored through signed single-word images of the
// generators so that the induced action on representation symbols stays
// monomial (required by the canonical equivariant projection).
struct GroupElementAction {
    std::string name;
    bool in_g0 = true;
    Mat coalgebra_map;
    std::vector<std::pair<Rational, Word>> gen_images;
};

struct GroupAction {
    const AlgebraPresentation* A = nullptr;
    const Coalgebra* M = nullptr;
    std::vector<GroupElementAction> elements;  // elements[0] is the identity

    static GroupAction trivial(const AlgebraPresentation& A, const Coalgebra& M);
    // G = Z/2 = {1, iota} with G0 = {1}; iota acts by an algebra
    // antiautomorphism (given through generator images) and a coalgebra
    // antiautomorphism. Validated at load.
    static GroupAction order_two(const AlgebraPresentation& A, const Coalgebra& M,
                                 std::vector<std::pair<Rational, Word>> iota_gen_images,
                                 Mat iota_coalgebra);

    int size() const { return static_cast<int>(elements.size()); }

    // Image of a single letter of a word under element g.
    std::pair<Rational, Word> letter_image(int g, int letter) const;
    // g(w); for antiautomorphism elements the letter images are multiplied in
    // reverse order with the Koszul sign (-1)^{sum_{i<j} |w_i||w_j|}.
    std::pair<Rational, Word> apply_to_word(int g, const Word& w) const;
    AlgebraElement apply_to_element(int g, const AlgebraElement& x) const;
    // (g (x) ... (x) g) on a tensor over words, with no extra permutation.
    Tensor<Word> apply_to_word_tensor(int g, const Tensor<Word>& t) const;
    Vec apply_to_coalgebra(int g, const Vec& alpha) const;
    // Requires the coalgebra map of g to be a signed permutation of the basis.
    std::pair<Rational, int> basis_image(int g, int m) const;

    // (phi g)(alpha) = phi(g alpha)
    Vec dual_right_action(int g, const Vec& phi) const;
    // ell(phi) = sum_{g in G0} phi g - sum_{g not in G0} phi g
    Vec averaging_ell(const Vec& phi) const;
    // Spanning set of L = {phi : phi g = phi for g in G0, = -phi otherwise}.
    std::vector<Vec> l_basis() const;
};

}  // namespace repalg
