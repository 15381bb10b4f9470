#pragma once

#include <optional>
#include <string>
#include <vector>

#include "repalg/coalgebra.hpp"
#include "repalg/group_action_fwd.hpp"
#include "repalg/linalg.hpp"

namespace repalg {

// Bilinear form v on M: matrix[i][j] = v(e_i (x) e_j).
struct BilinearForm {
    const Coalgebra* M = nullptr;
    Mat matrix;

    Rational operator()(int i, int j) const { return matrix[i][j]; }
};

// Cyclic structure M -> M*, alpha -> bar(alpha); map[i][j] = bar(e_i)(e_j).
// `cyclic_ok` records whether the source form passed is_cyclic; ad_v on a
// non-cyclic form returns the structure flagged rather than erroring so the
// CLI can report which axiom failed.
struct CyclicStructure {
    const Coalgebra* M = nullptr;
    Mat map;
    bool cyclic_ok = true;
};

// vhat(alpha (x) beta) = v(alpha (x) beta^2) beta^1 (x) beta^3, as a
// rank^2 x rank^2 matrix over the basis e_i (x) e_j at flat index i*rank+j.
Mat vhat(const BilinearForm& v);

// Flat flip matrix p21 on M (x) M.
Mat flip_matrix(int rank);

// v is cyclic iff vhat and p21 commute.
bool is_cyclic(const BilinearForm& v);

CyclicStructure ad_v(const BilinearForm& v);
BilinearForm form_of(const CyclicStructure& c);
// Checks bar(alpha)(beta^2) beta^1 (x) beta^3 = bar(beta)(alpha^2) alpha^3 (x) alpha^1
// on all basis pairs.
bool is_cyclic_structure(const CyclicStructure& c);

// v(d_g (x) d_h) = F(gh) on the group dual; cyclic iff F is
// conjugation-invariant. Also returns the structure d_g -> sum_z F(gz) z as
// rows of K[G] coordinates.
struct GroupCharacterForm {
    BilinearForm form;
    Mat structure;  // structure[g][z] = F(g z)
};
GroupCharacterForm group_character_form(const AlgebraPresentation& group,
                                        const Vec& F, const Coalgebra& group_dual);

// Frobenius data on the dual coalgebra of a finite-basis algebra: the
// coalgebra M = A*, the cyclic form v, and the bar map A* -> A
// (bar[a][alpha]: column alpha holds the coordinates of bar(e_alpha*)).
struct FrobeniusData {
    Coalgebra M;
    Mat gram;  // (e_a, e_b)
    Mat bar;
    Mat v_matrix;

    BilinearForm form() const { return {&M, v_matrix}; }
};

// Builds the dual coalgebra of `basis_algebra` (finite_group or
// structure_constants kind) and the cyclic form of the pairing
// (a,b) = theta(ab), or of an explicitly given Gram matrix. The pairing must
// be symmetric, invariant and non-degenerate; violations raise domain_error
// with a witness.
FrobeniusData frobenius_form(const AlgebraPresentation& basis_algebra,
                             const std::optional<Vec>& theta,
                             const std::optional<Mat>& explicit_gram);

// Frobenius pairing (a,b) = sum_{ij} (a_ij, b_ji) on Mat_N(inner). Basis of
// Mat_N(A) is (p,q,a) at flat index (p*N+q)*inner_rank + a.
FrobeniusData frobenius_matrix_form(const AlgebraPresentation& inner_algebra,
                                    const std::optional<Vec>& inner_theta,
                                    const std::optional<Mat>& inner_gram, int N);

// theta with v(theta (x) -) = counit; nullopt when the system is inconsistent.
std::optional<Vec> adjoint_element(const BilinearForm& v);

// p21 mu(theta) = mu(theta)
bool is_symmetric_element(const Coalgebra& M, const Vec& theta);

// v^omega = v(omega (x) omega); omega must pass is_coalgebra_automorphism.
BilinearForm form_pullback(const BilinearForm& v, const Mat& omega);

bool is_equivariant_form(const BilinearForm& v, const GroupAction& action);

// Structural identities of vhat used by the induced-bracket engine, exposed
// for the verification suites. X = vhat (x) id, Y = id (x) vhat on M^{(x)3}.
bool holds_ci23(const BilinearForm& v);  // (vhat (x) id)(id (x) mu) = (id (x) mu) vhat
bool holds_ci24(const BilinearForm& v);  // (id (x) vhat)(p21 (x) id)(id (x) mu) = (mu (x) id) vhat
bool holds_f11(const BilinearForm& v);   // p312 X Y = X Y p312
bool holds_f14(const BilinearForm& v);   // Y p132 X = X p132 Y

}  // namespace repalg
