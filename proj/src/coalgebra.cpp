#include "repalg/coalgebra.hpp"

#include "repalg/errors.hpp"

namespace repalg {

namespace {

std::string triple_str(const Coalgebra& M, int a, int b, int c) {
    return "(" + M.label(a) + "," + M.label(b) + "," + M.label(c) + ")";
}

}  // namespace

Coalgebra Coalgebra::from_constants(int rank, std::vector<Tensor<int>> comul,
                                    std::optional<Vec> counit,
                                    std::vector<std::string> labels) {
    if (rank < 1) throw input_error("coalgebra rank must be positive");
    if (static_cast<int>(comul.size()) != rank)
        throw input_error("comultiplication table size does not match rank");
    Coalgebra M;
    M.rank_ = rank;
    M.comul_ = std::move(comul);
    for (const auto& t : M.comul_) {
        if (t.arity != 2) throw input_error("comultiplication entries must have arity 2");
        for (const auto& [key, c] : t.terms)
            for (int idx : key)
                if (idx < 0 || idx >= rank)
                    throw input_error("comultiplication index out of range");
    }
    if (labels.empty())
        for (int i = 0; i < rank; ++i) labels.push_back("e" + std::to_string(i));
    if (static_cast<int>(labels.size()) != rank)
        throw input_error("label count does not match rank");
    M.labels_ = std::move(labels);

    // Coassociativity: (mu (x) id) mu = (id (x) mu) mu on every basis element.
    for (int k = 0; k < rank; ++k) {
        const auto left = M.comul_iter_basis(k, 3, 0);
        const auto right = M.comul_iter_basis(k, 3, 1);
        if (!(left == right)) {
            std::string witness;
            const auto diff = left - right;
            if (!diff.terms.empty()) {
                const auto& key = diff.terms.begin()->first;
                witness = triple_str(M, key[0], key[1], key[2]);
            }
            throw input_error("comultiplication is not coassociative at basis '" +
                              M.labels_[k] + "', differing component " + witness);
        }
    }
    if (counit) {
        if (static_cast<int>(counit->size()) != rank)
            throw input_error("counit size does not match rank");
        for (int k = 0; k < rank; ++k) {
            Vec left(rank, Rational(0)), right(rank, Rational(0));
            for (const auto& [key, c] : M.comul_[k].terms) {
                left[key[1]] += (*counit)[key[0]] * c;
                right[key[0]] += (*counit)[key[1]] * c;
            }
            for (int i = 0; i < rank; ++i) {
                const Rational expect(i == k ? 1 : 0);
                if (left[i] != expect || right[i] != expect)
                    throw input_error("counit axiom fails at basis '" + M.labels_[k] +
                                      "'");
            }
        }
        M.counit_ = std::move(counit);
    }
    return M;
}

int Coalgebra::label_index(const std::string& name) const {
    for (int i = 0; i < rank_; ++i)
        if (labels_[i] == name) return i;
    throw input_error("unknown coalgebra basis label '" + name + "'");
}

Tensor<int> Coalgebra::comul_iter_basis(int k, int m, int insert_pos) const {
    if (m < 2) throw input_error("iterated comultiplication needs m >= 2");
    if (k < 0 || k >= rank_) throw input_error("basis index out of range");
    Tensor<int> cur = comul_[k];
    for (int arity = 3; arity <= m; ++arity) {
        const int pos = insert_pos < 0 ? 0 : std::min(insert_pos, arity - 2);
        Tensor<int> next(arity);
        std::vector<int> key(arity);
        for (const auto& [old_key, c] : cur.terms) {
            const int split = old_key[pos];
            for (const auto& [pair_key, d] : comul_[split].terms) {
                int w = 0;
                for (int j = 0; j < pos; ++j) key[w++] = old_key[j];
                key[w++] = pair_key[0];
                key[w++] = pair_key[1];
                for (int j = pos + 1; j < arity - 1; ++j) key[w++] = old_key[j];
                next.add(key, c * d);
            }
        }
        cur = std::move(next);
    }
    return cur;
}

Tensor<int> Coalgebra::comul_iter(const Vec& alpha, int m, int insert_pos) const {
    if (static_cast<int>(alpha.size()) != rank_)
        throw input_error("coalgebra element size mismatch");
    Tensor<int> out(m);
    for (int k = 0; k < rank_; ++k) {
        if (alpha[k].is_zero()) continue;
        out += comul_iter_basis(k, m, insert_pos).scaled(alpha[k]);
    }
    return out;
}

Rational Coalgebra::counit_of(const Vec& alpha) const {
    if (!counit_) throw input_error("coalgebra has no counit");
    Rational r(0);
    for (int i = 0; i < rank_; ++i) r += (*counit_)[i] * alpha[i];
    return r;
}

Coalgebra build_matrix_dual(int N) {
    if (N < 1) throw input_error("matrix dual needs N >= 1");
    const int rank = N * N;
    const auto flat = [N](int i, int j) { return i * N + j; };
    std::vector<Tensor<int>> comul;
    std::vector<std::string> labels;
    Vec counit(rank, Rational(0));
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            Tensor<int> t(2);
            for (int r = 0; r < N; ++r) t.add({flat(i, r), flat(r, j)}, Rational(1));
            comul.push_back(std::move(t));
            labels.push_back("t" + std::to_string(i + 1) + std::to_string(j + 1));
            if (i == j) counit[flat(i, j)] = Rational(1);
        }
    return Coalgebra::from_constants(rank, std::move(comul), counit, std::move(labels));
}

Coalgebra build_group_dual(const AlgebraPresentation& group) {
    if (group.kind() != AlgebraKind::finite_group)
        throw input_error("group dual requires a finite group presentation");
    const int n = group.group_order();
    std::vector<Tensor<int>> comul(n, Tensor<int>(2));
    std::vector<std::string> labels;
    Vec counit(n, Rational(0));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            comul[group.group_product(x, y)].add({x, y}, Rational(1));
    for (int g = 0; g < n; ++g) labels.push_back("d_" + group.generators()[g].name);
    counit[group.group_neutral()] = Rational(1);
    return Coalgebra::from_constants(n, std::move(comul), counit, std::move(labels));
}

Coalgebra build_trunc_poly_dual(int n) {
    if (n < 0) throw input_error("truncated polynomial dual needs n >= 0");
    const int rank = n + 1;
    std::vector<Tensor<int>> comul;
    std::vector<std::string> labels;
    Vec counit(rank, Rational(0));
    counit[0] = Rational(1);
    for (int i = 0; i <= n; ++i) {
        Tensor<int> t(2);
        for (int k = 0; k <= i; ++k) t.add({k, i - k}, Rational(1));
        comul.push_back(std::move(t));
        labels.push_back("u" + std::to_string(i));
    }
    return Coalgebra::from_constants(rank, std::move(comul), counit, std::move(labels));
}

DualAlgebraElement dual_multiply(const Coalgebra& M, const DualAlgebraElement& a,
                                 const DualAlgebraElement& b) {
    if (static_cast<int>(a.coeffs.size()) != M.rank() ||
        static_cast<int>(b.coeffs.size()) != M.rank())
        throw input_error("dual element rank mismatch");
    Vec out(M.rank(), Rational(0));
    for (int k = 0; k < M.rank(); ++k)
        for (const auto& [key, c] : M.comul(k).terms)
            out[k] += c * a.coeffs[key[0]] * b.coeffs[key[1]];
    return {out};
}

std::optional<DualAlgebraElement> dual_inverse(const Coalgebra& M,
                                               const DualAlgebraElement& u) {
    if (!M.counit()) throw input_error("dual inverse requires a counital coalgebra");
    const int n = M.rank();
    // Left multiplication by u as a matrix: (u * x)_k = sum c_k^{ij} u_i x_j.
    Mat left(n, Vec(n, Rational(0))), right(n, Vec(n, Rational(0)));
    for (int k = 0; k < n; ++k)
        for (const auto& [key, c] : M.comul(k).terms) {
            left[k][key[1]] += c * u.coeffs[key[0]];
            right[k][key[0]] += c * u.coeffs[key[1]];
        }
    const Vec eps = *M.counit();
    const auto x = solve_linear(left, eps);
    if (!x) return std::nullopt;
    const auto y = solve_linear(right, eps);
    if (!y || !(*x == *y)) return std::nullopt;
    return DualAlgebraElement{*x};
}

Mat inner_coderivation(const Coalgebra& M, const DualAlgebraElement& phi) {
    const int n = M.rank();
    if (static_cast<int>(phi.coeffs.size()) != n)
        throw input_error("functional rank mismatch");
    Mat d(n, Vec(n, Rational(0)));
    for (int k = 0; k < n; ++k)
        for (const auto& [key, c] : M.comul(k).terms) {
            d[key[0]][k] += c * phi.coeffs[key[1]];
            d[key[1]][k] -= c * phi.coeffs[key[0]];
        }
    return d;
}

bool is_coderivation(const Coalgebra& M, const Mat& d) {
    const int n = M.rank();
    if (static_cast<int>(d.size()) != n)
        throw input_error("endomorphism rank mismatch");
    // Compare mu d and (d (x) id + id (x) d) mu columnwise on the basis.
    for (int k = 0; k < n; ++k) {
        Tensor<int> lhs(2);
        for (int j = 0; j < n; ++j) {
            if (d[j][k].is_zero()) continue;
            lhs += M.comul(j).scaled(d[j][k]);
        }
        Tensor<int> rhs(2);
        for (const auto& [key, c] : M.comul(k).terms)
            for (int i = 0; i < n; ++i) {
                if (!d[i][key[0]].is_zero()) rhs.add({i, key[1]}, c * d[i][key[0]]);
                if (!d[i][key[1]].is_zero()) rhs.add({key[0], i}, c * d[i][key[1]]);
            }
        if (!(lhs == rhs)) return false;
    }
    return true;
}

namespace {

bool automorphism_like(const Coalgebra& M, const Mat& w, bool anti) {
    const int n = M.rank();
    if (static_cast<int>(w.size()) != n)
        throw input_error("endomorphism rank mismatch");
    if (!mat_inverse(w)) throw input_error("automorphism candidate is not invertible");
    for (int k = 0; k < n; ++k) {
        // (w (x) w) mu(e_k)
        Tensor<int> lhs(2);
        for (const auto& [key, c] : M.comul(k).terms)
            for (int i = 0; i < n; ++i) {
                if (w[i][key[0]].is_zero()) continue;
                for (int j = 0; j < n; ++j) {
                    if (w[j][key[1]].is_zero()) continue;
                    lhs.add({i, j}, c * w[i][key[0]] * w[j][key[1]]);
                }
            }
        // mu(w e_k), flipped for the antiautomorphism law.
        Tensor<int> rhs(2);
        for (int j = 0; j < n; ++j) {
            if (w[j][k].is_zero()) continue;
            rhs += M.comul(j).scaled(w[j][k]);
        }
        if (anti) rhs = plain_permute({1, 0}, rhs);
        if (!(lhs == rhs)) return false;
    }
    return true;
}

}  // namespace

bool is_coalgebra_automorphism(const Coalgebra& M, const Mat& w) {
    return automorphism_like(M, w, false);
}

bool is_coalgebra_antiautomorphism(const Coalgebra& M, const Mat& w) {
    return automorphism_like(M, w, true);
}

Mat inner_automorphism(const Coalgebra& M, const DualAlgebraElement& u) {
    if (!M.counit())
        throw input_error("inner automorphisms require a counital coalgebra");
    const auto uinv = dual_inverse(M, u);
    if (!uinv) throw domain_error("element is not invertible in M*");
    const int n = M.rank();
    Mat out(n, Vec(n, Rational(0)));
    for (int k = 0; k < n; ++k) {
        const auto triple = M.comul_iter_basis(k, 3);
        for (const auto& [key, c] : triple.terms)
            out[key[1]][k] += c * uinv->coeffs[key[0]] * u.coeffs[key[2]];
    }
    return out;
}

}  // namespace repalg
