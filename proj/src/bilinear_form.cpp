#include "repalg/bilinear_form.hpp"

#include "repalg/errors.hpp"
#include "repalg/group_action.hpp"

namespace repalg {

namespace {

void require_form(const BilinearForm& v) {
    const int n = v.M->rank();
    if (static_cast<int>(v.matrix.size()) != n)
        throw input_error("form matrix size does not match coalgebra rank");
    for (const auto& row : v.matrix)
        if (static_cast<int>(row.size()) != n)
            throw input_error("form matrix is not square");
}

}  // namespace

Mat vhat(const BilinearForm& v) {
    require_form(v);
    const int n = v.M->rank();
    Mat out(n * n, Vec(n * n, Rational(0)));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            const int col = a * n + b;
            const auto triple = v.M->comul_iter_basis(b, 3);
            for (const auto& [key, c] : triple.terms) {
                const Rational coeff = v.matrix[a][key[1]] * c;
                if (coeff.is_zero()) continue;
                out[key[0] * n + key[2]][col] += coeff;
            }
        }
    return out;
}

Mat flip_matrix(int rank) {
    Mat p(rank * rank, Vec(rank * rank, Rational(0)));
    for (int i = 0; i < rank; ++i)
        for (int j = 0; j < rank; ++j) p[j * rank + i][i * rank + j] = Rational(1);
    return p;
}

bool is_cyclic(const BilinearForm& v) {
    const Mat h = vhat(v);
    const Mat p = flip_matrix(v.M->rank());
    return mat_equal(mat_mul(h, p), mat_mul(p, h));
}

CyclicStructure ad_v(const BilinearForm& v) {
    require_form(v);
    return CyclicStructure{v.M, v.matrix, is_cyclic(v)};
}

BilinearForm form_of(const CyclicStructure& c) { return BilinearForm{c.M, c.map}; }

bool is_cyclic_structure(const CyclicStructure& c) {
    return is_cyclic(BilinearForm{c.M, c.map});
}

GroupCharacterForm group_character_form(const AlgebraPresentation& group,
                                        const Vec& F, const Coalgebra& group_dual) {
    if (group.kind() != AlgebraKind::finite_group)
        throw input_error("character forms need a finite group");
    const int n = group.group_order();
    if (static_cast<int>(F.size()) != n)
        throw input_error("character must be defined on all of G");
    if (group_dual.rank() != n)
        throw input_error("coalgebra is not the dual of this group");
    Mat m(n, Vec(n, Rational(0)));
    Mat structure(n, Vec(n, Rational(0)));
    for (int g = 0; g < n; ++g)
        for (int h = 0; h < n; ++h) {
            m[g][h] = F[group.group_product(g, h)];
            structure[g][h] = F[group.group_product(g, h)];
        }
    return GroupCharacterForm{BilinearForm{&group_dual, std::move(m)},
                              std::move(structure)};
}

namespace {

// Dual coalgebra of a finite-dimensional algebra presented by basis products.
Coalgebra dual_coalgebra_of(const AlgebraPresentation& alg) {
    const int n = static_cast<int>(alg.generators().size());
    std::vector<Tensor<int>> comul(n, Tensor<int>(2));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            const auto prod = alg.word_product(Word::single(a), Word::single(b));
            for (const auto& [w, c] : prod.terms) comul[w.letters[0]].add({a, b}, c);
        }
    std::optional<Vec> counit;
    if (alg.kind() == AlgebraKind::finite_group) {
        Vec eps(n, Rational(0));
        eps[alg.group_neutral()] = Rational(1);
        counit = std::move(eps);
    } else if (alg.kind() == AlgebraKind::structure_constants) {
        // eps(alpha) = alpha(1_A). Recover 1_A by solving u e_b = e_b and
        // e_b u = e_b for all b; no solution means the dual has no counit.
        Mat sys;  // rows indexed by (side, b, c): sum_a u_a m^c = delta_{bc}
        Vec rhs;
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                Vec left(n, Rational(0)), right(n, Rational(0));
                for (int a = 0; a < n; ++a) {
                    for (const auto& [idx, coeff] : alg.sc_product(a, b))
                        if (idx == c) left[a] += coeff;
                    for (const auto& [idx, coeff] : alg.sc_product(b, a))
                        if (idx == c) right[a] += coeff;
                }
                sys.push_back(std::move(left));
                rhs.push_back(Rational(b == c ? 1 : 0));
                sys.push_back(std::move(right));
                rhs.push_back(Rational(b == c ? 1 : 0));
            }
        if (auto u = solve_linear(sys, rhs)) counit = std::move(*u);
    }
    std::vector<std::string> labels;
    for (const auto& g : alg.generators()) labels.push_back(g.name + "*");
    return Coalgebra::from_constants(n, std::move(comul), std::move(counit),
                                     std::move(labels));
}

Mat gram_of(const AlgebraPresentation& alg, const std::optional<Vec>& theta,
            const std::optional<Mat>& explicit_gram) {
    const int n = static_cast<int>(alg.generators().size());
    if (explicit_gram) {
        if (static_cast<int>(explicit_gram->size()) != n)
            throw input_error("Gram matrix size does not match basis");
        return *explicit_gram;
    }
    if (!theta) throw input_error("Frobenius construction needs theta or a Gram matrix");
    if (static_cast<int>(theta->size()) != n)
        throw input_error("theta must be defined on the whole basis");
    Mat gram(n, Vec(n, Rational(0)));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            const auto prod = alg.word_product(Word::single(a), Word::single(b));
            for (const auto& [w, c] : prod.terms) gram[a][b] += (*theta)[w.letters[0]] * c;
        }
    return gram;
}

FrobeniusData frobenius_of(const AlgebraPresentation& alg, Mat gram) {
    const int n = static_cast<int>(alg.generators().size());
    // Symmetry.
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (gram[a][b] != gram[b][a])
                throw domain_error("pairing is not symmetric at (" +
                                   alg.generators()[a].name + "," +
                                   alg.generators()[b].name + ")");
    // Invariance (ab, c) = (a, bc) over basis triples.
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                Rational lhs(0), rhs(0);
                for (const auto& [w, k] :
                     alg.word_product(Word::single(a), Word::single(b)).terms)
                    lhs += k * gram[w.letters[0]][c];
                for (const auto& [w, k] :
                     alg.word_product(Word::single(b), Word::single(c)).terms)
                    rhs += k * gram[a][w.letters[0]];
                if (lhs != rhs)
                    throw domain_error("pairing is not invariant at (" +
                                       alg.generators()[a].name + "," +
                                       alg.generators()[b].name + "," +
                                       alg.generators()[c].name + ")");
            }
    const auto gram_inv = mat_inverse(gram);
    if (!gram_inv) {
        std::string witness = "kernel vector:";
        if (const auto k = kernel_vector(gram))
            for (const auto& x : *k) witness += " " + x.str();
        throw domain_error("pairing is degenerate; " + witness);
    }
    FrobeniusData data;
    data.M = dual_coalgebra_of(alg);
    data.gram = std::move(gram);
    // bar(e_alpha*) solves alpha(a) = (a, bar(alpha)): column alpha of G^{-1}.
    data.bar = *gram_inv;
    // v(alpha (x) beta) = beta(bar(alpha)) = (G^{-1})_{beta row? }: v = G^{-1}
    // (symmetric since G is).
    data.v_matrix = *gram_inv;
    return data;
}

}  // namespace

FrobeniusData frobenius_form(const AlgebraPresentation& basis_algebra,
                             const std::optional<Vec>& theta,
                             const std::optional<Mat>& explicit_gram) {
    if (basis_algebra.kind() == AlgebraKind::free_algebra ||
        basis_algebra.kind() == AlgebraKind::free_group)
        throw input_error("Frobenius construction needs a finite basis algebra");
    return frobenius_of(basis_algebra, gram_of(basis_algebra, theta, explicit_gram));
}

FrobeniusData frobenius_matrix_form(const AlgebraPresentation& inner_algebra,
                                    const std::optional<Vec>& inner_theta,
                                    const std::optional<Mat>& inner_gram, int N) {
    if (N < 1) throw input_error("matrix Frobenius form needs N >= 1");
    const int r = static_cast<int>(inner_algebra.generators().size());
    // Validate the inner data first so failures carry inner witnesses.
    const FrobeniusData inner = frobenius_form(inner_algebra, inner_theta, inner_gram);

    // Basis (p,q,a) of Mat_N(inner) at flat index (p*N+q)*r + a.
    const int n = N * N * r;
    std::vector<std::string> names;
    std::vector<std::vector<std::vector<std::pair<int, Rational>>>> products(
        n, std::vector<std::vector<std::pair<int, Rational>>>(n));
    const auto flat = [N, r](int p, int q, int a) { return (p * N + q) * r + a; };
    for (int p = 0; p < N; ++p)
        for (int q = 0; q < N; ++q)
            for (int a = 0; a < r; ++a)
                names.push_back("E" + std::to_string(p + 1) + std::to_string(q + 1) +
                                "_" + inner_algebra.generators()[a].name);
    for (int p = 0; p < N; ++p)
        for (int q = 0; q < N; ++q)
            for (int a = 0; a < r; ++a)
                for (int s = 0; s < N; ++s)
                    for (int t = 0; t < N; ++t)
                        for (int b = 0; b < r; ++b) {
                            if (q != s) continue;
                            auto& cell = products[flat(p, q, a)][flat(s, t, b)];
                            for (const auto& [w, c] :
                                 inner_algebra
                                     .word_product(Word::single(a), Word::single(b))
                                     .terms)
                                cell.emplace_back(flat(p, t, w.letters[0]), c);
                        }
    const auto big = AlgebraPresentation::make_structure_constants(
        std::move(names), std::move(products), std::nullopt);

    Mat gram(n, Vec(n, Rational(0)));
    for (int p = 0; p < N; ++p)
        for (int q = 0; q < N; ++q)
            for (int a = 0; a < r; ++a)
                for (int s = 0; s < N; ++s)
                    for (int t = 0; t < N; ++t)
                        for (int b = 0; b < r; ++b)
                            if (q == s && p == t)
                                gram[flat(p, q, a)][flat(s, t, b)] = inner.gram[a][b];
    return frobenius_of(big, std::move(gram));
}

std::optional<Vec> adjoint_element(const BilinearForm& v) {
    require_form(v);
    if (!v.M->counit()) throw input_error("adjoint elements need a counital coalgebra");
    // v(theta (x) e_j) = eps(e_j): theta^T V = eps^T, i.e. V^T theta = eps.
    return solve_linear(mat_transpose(v.matrix), *v.M->counit());
}

bool is_symmetric_element(const Coalgebra& M, const Vec& theta) {
    if (static_cast<int>(theta.size()) != M.rank())
        throw input_error("element size does not match rank");
    Tensor<int> t(2);
    for (int k = 0; k < M.rank(); ++k) {
        if (theta[k].is_zero()) continue;
        t += M.comul(k).scaled(theta[k]);
    }
    return plain_permute({1, 0}, t) == t;
}

BilinearForm form_pullback(const BilinearForm& v, const Mat& omega) {
    require_form(v);
    if (!is_coalgebra_automorphism(*v.M, omega))
        throw input_error("pullback needs a coalgebra automorphism");
    return BilinearForm{v.M, mat_mul(mat_transpose(omega), mat_mul(v.matrix, omega))};
}

bool is_equivariant_form(const BilinearForm& v, const GroupAction& action) {
    require_form(v);
    for (int g = 0; g < action.size(); ++g) {
        const Mat& w = action.elements[g].coalgebra_map;
        const Mat pulled = mat_mul(mat_transpose(w), mat_mul(v.matrix, w));
        if (!mat_equal(pulled, v.matrix)) return false;
    }
    return true;
}

namespace {

// Kronecker helpers on flat tensor-cube indices.
Mat tensor_with_identity_left(const Mat& m, int rank) {
    // id (x) m on M (x) (M (x) M): here m acts on the last two factors.
    const int n = rank;
    const int nn = n * n;
    Mat out(n * nn, Vec(n * nn, Rational(0)));
    for (int i = 0; i < n; ++i)
        for (int c = 0; c < nn; ++c)
            for (int r = 0; r < nn; ++r)
                if (!m[r][c].is_zero()) out[i * nn + r][i * nn + c] = m[r][c];
    return out;
}

Mat tensor_with_identity_right(const Mat& m, int rank) {
    // m (x) id: m acts on the first two factors of M^(x)3.
    const int n = rank;
    const int nn = n * n;
    Mat out(n * nn, Vec(n * nn, Rational(0)));
    for (int c = 0; c < nn; ++c)
        for (int r = 0; r < nn; ++r) {
            if (m[r][c].is_zero()) continue;
            for (int k = 0; k < n; ++k) out[r * n + k][c * n + k] = m[r][c];
        }
    return out;
}

Mat cube_permutation(const Perm& p, int rank) {
    const int n = rank;
    Mat out(n * n * n, Vec(n * n * n, Rational(0)));
    std::vector<int> idx(3), nidx(3);
    for (idx[0] = 0; idx[0] < n; ++idx[0])
        for (idx[1] = 0; idx[1] < n; ++idx[1])
            for (idx[2] = 0; idx[2] < n; ++idx[2]) {
                for (int j = 0; j < 3; ++j) nidx[j] = idx[p[j]];
                out[(nidx[0] * n + nidx[1]) * n + nidx[2]]
                   [(idx[0] * n + idx[1]) * n + idx[2]] = Rational(1);
            }
    return out;
}

// mu as a matrix M -> M (x) M.
Mat comul_matrix(const Coalgebra& M) {
    const int n = M.rank();
    Mat out(n * n, Vec(n, Rational(0)));
    for (int k = 0; k < n; ++k)
        for (const auto& [key, c] : M.comul(k).terms)
            out[key[0] * n + key[1]][k] += c;
    return out;
}

Mat id_tensor_mu(const Coalgebra& M) {
    // id (x) mu : M (x) M -> M^(x)3
    const int n = M.rank();
    const Mat mu = comul_matrix(M);
    Mat out(n * n * n, Vec(n * n, Rational(0)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int rc = 0; rc < n * n; ++rc)
                if (!mu[rc][j].is_zero()) out[i * n * n + rc][i * n + j] = mu[rc][j];
    return out;
}

Mat mu_tensor_id(const Coalgebra& M) {
    const int n = M.rank();
    const Mat mu = comul_matrix(M);
    Mat out(n * n * n, Vec(n * n, Rational(0)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int rc = 0; rc < n * n; ++rc)
                if (!mu[rc][i].is_zero()) out[rc * n + j][i * n + j] = mu[rc][i];
    return out;
}

}  // namespace

bool holds_ci23(const BilinearForm& v) {
    const int n = v.M->rank();
    const Mat h = vhat(v);
    const Mat lhs = mat_mul(tensor_with_identity_right(h, n), id_tensor_mu(*v.M));
    const Mat rhs = mat_mul(id_tensor_mu(*v.M), h);
    return mat_equal(lhs, rhs);
}

bool holds_ci24(const BilinearForm& v) {
    const int n = v.M->rank();
    const Mat h = vhat(v);
    // (id (x) vhat)(p21 (x) id)(id (x) mu) = (mu (x) id) vhat
    const Mat p21_id = cube_permutation({1, 0, 2}, n);
    const Mat lhs = mat_mul(tensor_with_identity_left(h, n),
                            mat_mul(p21_id, id_tensor_mu(*v.M)));
    const Mat rhs = mat_mul(mu_tensor_id(*v.M), h);
    return mat_equal(lhs, rhs);
}

bool holds_f11(const BilinearForm& v) {
    const int n = v.M->rank();
    const Mat X = tensor_with_identity_right(vhat(v), n);
    const Mat Y = tensor_with_identity_left(vhat(v), n);
    const Mat p312 = cube_permutation({2, 0, 1}, n);
    return mat_equal(mat_mul(p312, mat_mul(X, Y)), mat_mul(mat_mul(X, Y), p312));
}

bool holds_f14(const BilinearForm& v) {
    const int n = v.M->rank();
    const Mat X = tensor_with_identity_right(vhat(v), n);
    const Mat Y = tensor_with_identity_left(vhat(v), n);
    const Mat p132 = cube_permutation({0, 2, 1}, n);
    return mat_equal(mat_mul(Y, mat_mul(p132, X)), mat_mul(X, mat_mul(p132, Y)));
}

}  // namespace repalg
