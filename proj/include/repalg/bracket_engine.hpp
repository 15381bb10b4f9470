#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "repalg/bilinear_form.hpp"
#include "repalg/double_bracket.hpp"
#include "repalg/rep_algebra.hpp"

namespace repalg {

// Data of the induced bracket <,>_v on A_M: a rep context, a double bracket
// on its algebra and a cyclic bilinear form on its coalgebra.
class BracketSetup {
public:
    // require_cyclic = false admits a non-cyclic form for negative-control
    // runs; every theorem check is then expected to produce witnesses.
    BracketSetup(const RepContext& ctx, const DoubleBracket& db, BilinearForm v,
                 bool require_cyclic = true);

    const RepContext& ctx() const { return *ctx_; }
    const DoubleBracket& db() const { return *db_; }
    const BilinearForm& form() const { return v_; }
    int n() const { return db_->n(); }

    // <a_alpha, b_beta>_v = v(alpha (x) beta^2) [a,b]'_{beta^1} [a,b]''_{beta^3},
    // extended to polynomials as an n-graded biderivation annihilating e.
    RepElement bracket(const RepElement& x, const RepElement& y) const;

    // Jacobi form {x,y,z} = (-1)^{|x|_n |z|_n} <x,<y,z>> + cyclic.
    RepElement jacobi(const RepElement& x, const RepElement& y,
                      const RepElement& z) const;

    // Closed-form Jacobi value on generators: Q - R assembled from the two
    // tribrackets and the vhat-composition subscript tensors.
    RepElement jacobi_oracle_qr(const Word& a, const Word& b, const Word& c,
                                int alpha, int beta, int gamma) const;

    // sum_g q(<(ga)_{g alpha}, y>). Computed on representatives; use
    // equivariant_representative_check for the well-definedness probe.
    RepElement equivariant_bracket(const RepElement& x, const RepElement& y) const;
    RepElement equivariant_jacobi(const RepElement& x, const RepElement& y,
                                  const RepElement& z) const;

private:
    const RepContext* ctx_;
    const DoubleBracket* db_;
    BilinearForm v_;

    RepElement bracket_symbols(const RepSymbol& s, const RepSymbol& t) const;
    RepElement bracket_monomials(const RepMonomial& x, const RepMonomial& y) const;
};

// <omega x, omega y>_v = omega <x,y>_{v^omega} over generator pairs.
Verdict verify_aut_invariance(const BracketSetup& setup, const Mat& omega);

// delta_phi <x,y> = <delta_phi x, y> + <x, delta_phi y> over generator pairs.
Verdict verify_coderivation_invariance(const BracketSetup& setup, const Vec& phi);

// <a_theta, b_theta> = ([a,b]'[a,b]'')_theta over generator pairs; theta must
// be adjoint to v and satisfy vhat(theta (x) theta) = mu(theta).
Verdict verify_trace_compat(const BracketSetup& setup, const Vec& theta);

// <xi_alpha, x>+ = k delta_{bar alpha}(x) for every basis alpha, given
// [xi, a] = k(a (x) 1 - 1 (x) a) on generators.
Verdict moment_bracket_identity(const BracketSetup& setup, const AlgebraElement& xi,
                                const Rational& k, const RepElement& x);

// {x,y,z} = 0 for invariant x under a quasi-Poisson double bracket, with the
// delta-expansion cross-check when z is a single generator symbol.
Verdict quasi_jacobi_on_invariants(const BracketSetup& setup, const RepElement& x,
                                   const RepElement& y, const RepElement& z);

// Both summation sides of the equivariant bracket and agreement across orbit
// representatives, over generator pairs.
Verdict equivariant_representative_check(const BracketSetup& setup);

// A moment set entry: the element, its scalar, and the substitution that
// presents B = A / (ideal generated by the set).
struct MomentSpecEntry {
    AlgebraElement xi;
    Rational k;
    // Substitution image of every A-generator in B (same presentation shape).
    std::vector<AlgebraElement> generator_images;
};

struct ReductionData {
    const RepContext* quotient_ctx = nullptr;  // B's rep context
    std::vector<MomentSpecEntry> moments;
};

// Hamiltonian reduction: the mod-Ker p moment condition on generators,
// (momoweak) on samples, and closure of <E cap J, E> in E cap J.
Verdict hamiltonian_reduction_check(const BracketSetup& setup, const ReductionData& red,
                                    const std::vector<RepElement>& e_samples,
                                    const std::vector<RepElement>& ej_samples);

// Identity (elll): sum_g q+ delta_phi((gb)_{g beta}) = q+ delta_{ell(phi)}(b_beta)
// for all basis phi, generators b, basis beta.
Verdict equivariant_ell_identity(const BracketSetup& setup);

// Equivariant (momo): <q+(xi_alpha), x>^{G+} = k q+ delta_{ell(bar alpha)}(x).
Verdict equivariant_reduction_check(const BracketSetup& setup, const AlgebraElement& xi,
                                    const Rational& k,
                                    const std::vector<RepElement>& samples);

// Equivariant quasi-Poisson: the equivariant Jacobi form vanishes on
// L-invariant x against generator pairs.
Verdict equivariant_quasi_check(const BracketSetup& setup, const RepElement& x,
                                const RepElement& y, const RepElement& z);

}  // namespace repalg
