#pragma once

#include <optional>
#include <string>
#include <vector>

#include "repalg/algebra.hpp"
#include "repalg/linalg.hpp"
#include "repalg/tensor.hpp"

namespace repalg {

// Finite-rank coalgebra with explicit structure constants. Coassociativity
// and the counit axiom are verified eagerly at construction; every downstream
// formula silently depends on them.
class Coalgebra {
public:
    static Coalgebra from_constants(int rank, std::vector<Tensor<int>> comul,
                                    std::optional<Vec> counit,
                                    std::vector<std::string> labels);

    int rank() const { return rank_; }
    const Tensor<int>& comul(int k) const { return comul_[k]; }
    const std::optional<Vec>& counit() const { return counit_; }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(int k) const { return labels_[k]; }
    int label_index(const std::string& name) const;

    // mu^m on a basis element, inserting mu at factor `insert_pos` of the
    // (m-1)-fold coproduct at each step; any position gives the same tensor
    // by coassociativity. insert_pos = -1 means position 0.
    Tensor<int> comul_iter_basis(int k, int m, int insert_pos = -1) const;
    Tensor<int> comul_iter(const Vec& alpha, int m, int insert_pos = -1) const;

    Rational counit_of(const Vec& alpha) const;

private:
    int rank_ = 0;
    std::vector<Tensor<int>> comul_;
    std::optional<Vec> counit_;
    std::vector<std::string> labels_;
};

// (Mat_N K)^* with basis t_{ij} in row-major order; mu(t_ij) = sum_r t_ir (x) t_rj.
Coalgebra build_matrix_dual(int N);
// (K[G])^* for the given finite group; mu(d_g) = sum_{xy=g} d_x (x) d_y.
Coalgebra build_group_dual(const AlgebraPresentation& group);
// (K[x]/x^{n+1})^* with basis u_0..u_n; mu(u_i) = sum_{k<=i} u_k (x) u_{i-k}.
Coalgebra build_trunc_poly_dual(int n);

// Functional on M, i.e. an element of the dual algebra M*.
struct DualAlgebraElement {
    Vec coeffs;
};

// (ab)(alpha) = a(alpha^1) b(alpha^2)
DualAlgebraElement dual_multiply(const Coalgebra& M, const DualAlgebraElement& a,
                                 const DualAlgebraElement& b);

// Two-sided inverse of u in M*, found by solving u*x = eps and x*u = eps;
// nullopt when u is not invertible. Requires counital M.
std::optional<DualAlgebraElement> dual_inverse(const Coalgebra& M,
                                               const DualAlgebraElement& u);

// delta_phi(alpha) = phi(alpha^2) alpha^1 - phi(alpha^1) alpha^2, as a matrix.
Mat inner_coderivation(const Coalgebra& M, const DualAlgebraElement& phi);

// mu d = (d (x) id + id (x) d) mu
bool is_coderivation(const Coalgebra& M, const Mat& d);
// invertible and mu w = (w (x) w) mu
bool is_coalgebra_automorphism(const Coalgebra& M, const Mat& w);
// invertible and (w (x) w) mu = p21 mu w
bool is_coalgebra_antiautomorphism(const Coalgebra& M, const Mat& w);

// ^u alpha = u^{-1}(alpha^1) alpha^2 u(alpha^3); throws domain_error when u
// is not invertible and input_error when M is not counital.
Mat inner_automorphism(const Coalgebra& M, const DualAlgebraElement& u);

}  // namespace repalg
