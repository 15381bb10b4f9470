#include "repalg/bracket_engine.hpp"

#include <map>

#include "repalg/errors.hpp"

namespace repalg {

namespace {

std::map<int, RepElement> split_by_degree(const RepContext& ctx, const RepElement& x) {
    std::map<int, RepElement> parts;
    for (const auto& [m, c] : x.terms) {
        RepElement piece;
        piece.terms.emplace(m, c);
        parts[ctx.monomial_degree(m)] += piece;
    }
    return parts;
}

bool odd(long e) { return e % 2 != 0; }

}  // namespace

BracketSetup::BracketSetup(const RepContext& ctx, const DoubleBracket& db,
                           BilinearForm v, bool require_cyclic)
    : ctx_(&ctx), db_(&db), v_(std::move(v)) {
    if (&db.algebra() != &ctx.algebra())
        throw input_error("double bracket and context use different algebras");
    if (v_.M != &ctx.coalgebra())
        throw input_error("form and context use different coalgebras");
    if (require_cyclic && !is_cyclic(v_))
        throw input_error("the bilinear form is not cyclic");
}

RepElement BracketSetup::bracket_symbols(const RepSymbol& s, const RepSymbol& t) const {
    const ATensor legs = db_->evaluate_words(s.word, t.word);
    if (legs.is_zero()) return {};
    const auto triple = ctx_->coalgebra().comul_iter_basis(t.m, 3);
    RepElement out;
    for (const auto& [key, cmu] : triple.terms) {
        const Rational weight = v_.matrix[s.m][key[1]] * cmu;
        if (weight.is_zero()) continue;
        for (const auto& [pair, cleg] : legs.terms) {
            const RepElement left = ctx_->realize_word(pair[0], key[0]);
            const RepElement right = ctx_->realize_word(pair[1], key[2]);
            out += ctx_->multiply(left, right).scaled(weight * cleg);
        }
    }
    return out;
}

RepElement BracketSetup::bracket_monomials(const RepMonomial& x,
                                           const RepMonomial& y) const {
    if (x.empty() || y.empty()) return {};  // e is annihilated
    if (x.size() == 1) {
        if (y.size() == 1) return bracket_symbols(x[0], y[0]);
        // <s, t rest> = <s,t> rest + (-1)^{|s|_n |t|} t <s, rest>
        const RepSymbol& t = y[0];
        RepMonomial rest(y.begin() + 1, y.end());
        const RepElement rest_elem = ctx_->monomial(rest, Rational(1));
        const RepElement t_elem = ctx_->monomial({t}, Rational(1));
        RepElement out =
            ctx_->multiply(bracket_monomials(x, {t}), rest_elem);
        RepElement second =
            ctx_->multiply(t_elem, bracket_monomials(x, rest));
        const long sign = (static_cast<long>(ctx_->symbol_degree(x[0])) + n()) *
                          ctx_->symbol_degree(t);
        out += odd(sign) ? second.scaled(Rational(-1)) : second;
        return out;
    }
    // <s xrest, y> = s <xrest, y> + (-1)^{|xrest| |y|_n} <s, y> xrest
    const RepSymbol& s = x[0];
    RepMonomial xrest(x.begin() + 1, x.end());
    const RepElement s_elem = ctx_->monomial({s}, Rational(1));
    const RepElement xrest_elem = ctx_->monomial(xrest, Rational(1));
    RepElement out = ctx_->multiply(s_elem, bracket_monomials(xrest, y));
    RepElement second = ctx_->multiply(bracket_monomials({s}, y), xrest_elem);
    const long sign = static_cast<long>(ctx_->monomial_degree(xrest)) *
                      (static_cast<long>(ctx_->monomial_degree(y)) + n());
    out += odd(sign) ? second.scaled(Rational(-1)) : second;
    return out;
}

RepElement BracketSetup::bracket(const RepElement& x, const RepElement& y) const {
    RepElement out;
    for (const auto& [mx, cx] : x.terms)
        for (const auto& [my, cy] : y.terms)
            out += bracket_monomials(mx, my).scaled(cx * cy);
    return out;
}

RepElement BracketSetup::jacobi(const RepElement& x, const RepElement& y,
                                const RepElement& z) const {
    RepElement out;
    const auto xs = split_by_degree(*ctx_, x);
    const auto ys = split_by_degree(*ctx_, y);
    const auto zs = split_by_degree(*ctx_, z);
    for (const auto& [dx, xc] : xs)
        for (const auto& [dy, yc] : ys)
            for (const auto& [dz, zc] : zs) {
                const long xn = dx + n(), yn = dy + n(), zn = dz + n();
                RepElement t1 = bracket(xc, bracket(yc, zc));
                if (odd(xn * zn)) t1 = t1.scaled(Rational(-1));
                RepElement t2 = bracket(yc, bracket(zc, xc));
                if (odd(yn * xn)) t2 = t2.scaled(Rational(-1));
                RepElement t3 = bracket(zc, bracket(xc, yc));
                if (odd(zn * yn)) t3 = t3.scaled(Rational(-1));
                out += t1;
                out += t2;
                out += t3;
            }
    return out;
}

namespace {

// (id (x) vhat) on a basis triple tensor.
Tensor<int> id_vhat_apply(const BilinearForm& v, const Tensor<int>& t) {
    const Coalgebra& M = *v.M;
    Tensor<int> out(3);
    for (const auto& [key, c] : t.terms) {
        const auto triple = M.comul_iter_basis(key[2], 3);
        for (const auto& [tk, cmu] : triple.terms) {
            const Rational w = v.matrix[key[1]][tk[1]] * cmu * c;
            if (!w.is_zero()) out.add({key[0], tk[0], tk[2]}, w);
        }
    }
    return out;
}

Tensor<int> vhat_id_apply(const BilinearForm& v, const Tensor<int>& t) {
    const Coalgebra& M = *v.M;
    Tensor<int> out(3);
    for (const auto& [key, c] : t.terms) {
        const auto triple = M.comul_iter_basis(key[1], 3);
        for (const auto& [tk, cmu] : triple.terms) {
            const Rational w = v.matrix[key[0]][tk[1]] * cmu * c;
            if (!w.is_zero()) out.add({tk[0], tk[2], key[2]}, w);
        }
    }
    return out;
}

}  // namespace

RepElement BracketSetup::jacobi_oracle_qr(const Word& a, const Word& b, const Word& c,
                                          int alpha, int beta, int gamma) const {
    const AlgebraPresentation& A = ctx_->algebra();
    const long da = A.word_degree(a), db_deg = A.word_degree(b), dc = A.word_degree(c);
    const long nn = n();

    Tensor<int> base(3);
    base.add({alpha, beta, gamma}, Rational(1));
    // alpha_{(beta_gamma)} (x) (beta_gamma)^alpha (x) gamma^beta
    const Tensor<int> sub_q = vhat_id_apply(v_, id_vhat_apply(v_, base));
    // alpha_{(gamma^beta)} (x) (gamma^beta)^alpha (x) beta_gamma
    const Tensor<int> sub_r =
        vhat_id_apply(v_, plain_permute({0, 2, 1}, id_vhat_apply(v_, base)));

    const ATensor tri_q = tribracket_words(*db_, a, b, c);
    const ATensor tri_r = tribracket_words(*db_, a, c, b);

    const auto assemble = [this](const ATensor& tri, const Tensor<int>& sub) {
        RepElement out;
        for (const auto& [tk, ct] : tri.terms)
            for (const auto& [sk, cs] : sub.terms) {
                RepElement prod = ctx_->realize_word(tk[0], sk[0]);
                prod = ctx_->multiply(prod, ctx_->realize_word(tk[1], sk[1]));
                prod = ctx_->multiply(prod, ctx_->realize_word(tk[2], sk[2]));
                out += prod.scaled(ct * cs);
            }
        return out;
    };

    RepElement q = assemble(tri_q, sub_q);
    if (odd((da + nn) * (dc + nn))) q = q.scaled(Rational(-1));
    RepElement r = assemble(tri_r, sub_r);
    if (odd((da + db_deg) * (dc + nn))) r = r.scaled(Rational(-1));
    return q - r;
}

RepElement BracketSetup::equivariant_bracket(const RepElement& x,
                                             const RepElement& y) const {
    const GroupAction* action = ctx_->action();
    if (!ctx_->equivariant() || !action)
        throw input_error("equivariant bracket needs an equivariant context");
    RepElement out;
    for (int g = 0; g < action->size(); ++g)
        out += ctx_->equivariant_project(bracket(ctx_->act_group_element(g, x), y));
    return out;
}

RepElement BracketSetup::equivariant_jacobi(const RepElement& x, const RepElement& y,
                                            const RepElement& z) const {
    RepElement out;
    const auto xs = split_by_degree(*ctx_, x);
    const auto ys = split_by_degree(*ctx_, y);
    const auto zs = split_by_degree(*ctx_, z);
    for (const auto& [dx, xc] : xs)
        for (const auto& [dy, yc] : ys)
            for (const auto& [dz, zc] : zs) {
                const long xn = dx + n(), yn = dy + n(), zn = dz + n();
                RepElement t1 = equivariant_bracket(xc, equivariant_bracket(yc, zc));
                if (odd(xn * zn)) t1 = t1.scaled(Rational(-1));
                RepElement t2 = equivariant_bracket(yc, equivariant_bracket(zc, xc));
                if (odd(yn * xn)) t2 = t2.scaled(Rational(-1));
                RepElement t3 = equivariant_bracket(zc, equivariant_bracket(xc, yc));
                if (odd(zn * yn)) t3 = t3.scaled(Rational(-1));
                out += t1;
                out += t2;
                out += t3;
            }
    return ctx_->equivariant_project(out);
}

namespace {

std::vector<Word> generator_words(const AlgebraPresentation& A) {
    std::vector<Word> gens;
    switch (A.kind()) {
        case AlgebraKind::free_algebra:
            for (size_t i = 0; i < A.generators().size(); ++i)
                gens.push_back(Word::single(static_cast<int>(i)));
            break;
        case AlgebraKind::free_group:
            for (size_t i = 0; i < A.generators().size(); ++i) {
                gens.push_back(Word::single(static_cast<int>(i) + 1));
                gens.push_back(Word::single(-(static_cast<int>(i) + 1)));
            }
            break;
        case AlgebraKind::finite_group:
        case AlgebraKind::structure_constants:
            for (size_t i = 0; i < A.generators().size(); ++i)
                gens.push_back(Word::single(static_cast<int>(i)));
            break;
    }
    return gens;
}

std::string pair_witness(const RepContext& ctx, const RepSymbol& s, const RepSymbol& t) {
    return "(" + ctx.symbol_str(s) + "," + ctx.symbol_str(t) + ")";
}

}  // namespace

Verdict verify_aut_invariance(const BracketSetup& setup, const Mat& omega) {
    const RepContext& ctx = setup.ctx();
    if (!is_coalgebra_automorphism(ctx.coalgebra(), omega))
        throw input_error("not a coalgebra automorphism");
    const BilinearForm pulled = form_pullback(setup.form(), omega);
    const BracketSetup pulled_setup(ctx, setup.db(), pulled);
    for (const auto& aw : generator_words(ctx.algebra()))
        for (const auto& bw : generator_words(ctx.algebra()))
            for (int i = 0; i < ctx.coalgebra().rank(); ++i)
                for (int j = 0; j < ctx.coalgebra().rank(); ++j) {
                    const RepSymbol s{aw, i}, t{bw, j};
                    const RepElement xs = ctx.monomial({s}, Rational(1));
                    const RepElement yt = ctx.monomial({t}, Rational(1));
                    const RepElement lhs = setup.bracket(ctx.act_automorphism(omega, xs),
                                                         ctx.act_automorphism(omega, yt));
                    const RepElement rhs =
                        ctx.act_automorphism(omega, pulled_setup.bracket(xs, yt));
                    if (!ctx.equal_mod_relations(lhs, rhs))
                        return Verdict::fail("automorphism invariance fails at " +
                                             pair_witness(ctx, s, t));
                }
    return Verdict::pass();
}

Verdict verify_coderivation_invariance(const BracketSetup& setup, const Vec& phi) {
    const RepContext& ctx = setup.ctx();
    if (!ctx.coalgebra().counit())
        throw input_error("coderivation invariance needs a counital coalgebra");
    const Mat d = inner_coderivation(ctx.coalgebra(), DualAlgebraElement{phi});
    for (const auto& aw : generator_words(ctx.algebra()))
        for (const auto& bw : generator_words(ctx.algebra()))
            for (int i = 0; i < ctx.coalgebra().rank(); ++i)
                for (int j = 0; j < ctx.coalgebra().rank(); ++j) {
                    const RepSymbol s{aw, i}, t{bw, j};
                    const RepElement xs = ctx.monomial({s}, Rational(1));
                    const RepElement yt = ctx.monomial({t}, Rational(1));
                    const RepElement lhs =
                        ctx.act_coderivation_unchecked(d, setup.bracket(xs, yt));
                    RepElement rhs =
                        setup.bracket(ctx.act_coderivation_unchecked(d, xs), yt);
                    rhs += setup.bracket(xs, ctx.act_coderivation_unchecked(d, yt));
                    if (!ctx.equal_mod_relations(lhs, rhs))
                        return Verdict::fail("coderivation invariance fails at " +
                                             pair_witness(ctx, s, t));
                }
    return Verdict::pass();
}

Verdict verify_trace_compat(const BracketSetup& setup, const Vec& theta) {
    const RepContext& ctx = setup.ctx();
    const Coalgebra& M = ctx.coalgebra();
    // theta adjoint to v: alpha -> v(theta (x) alpha) is the counit.
    if (!M.counit()) throw input_error("trace compatibility needs a counital coalgebra");
    for (int j = 0; j < M.rank(); ++j) {
        Rational s(0);
        for (int i = 0; i < M.rank(); ++i) s += theta[i] * setup.form().matrix[i][j];
        if (s != (*M.counit())[j])
            throw input_error("theta is not adjoint to the form");
    }
    // vhat(theta (x) theta) = mu(theta)
    {
        Tensor<int> lhs(2), mu_theta(2);
        for (int b = 0; b < M.rank(); ++b) {
            if (theta[b].is_zero()) continue;
            mu_theta += M.comul(b).scaled(theta[b]);
            const auto triple = M.comul_iter_basis(b, 3);
            for (const auto& [key, cmu] : triple.terms)
                for (int a = 0; a < M.rank(); ++a) {
                    const Rational w =
                        theta[a] * theta[b] * setup.form().matrix[a][key[1]] * cmu;
                    if (!w.is_zero()) lhs.add({key[0], key[2]}, w);
                }
        }
        if (!(lhs == mu_theta))
            throw input_error("vhat(theta (x) theta) differs from mu(theta)");
    }
    for (const auto& aw : generator_words(ctx.algebra()))
        for (const auto& bw : generator_words(ctx.algebra())) {
            const auto a = AlgebraElement::of_word(aw);
            const auto b = AlgebraElement::of_word(bw);
            const RepElement lhs = setup.bracket(ctx.trace(theta, a), ctx.trace(theta, b));
            const RepElement rhs = ctx.trace(theta, check_bracket(setup.db(), a, b));
            if (!ctx.equal_mod_relations(lhs, rhs))
                return Verdict::fail("trace compatibility fails at (" +
                                     ctx.algebra().word_str(aw) + "," +
                                     ctx.algebra().word_str(bw) + ")");
        }
    return Verdict::pass();
}

Verdict moment_bracket_identity(const BracketSetup& setup, const AlgebraElement& xi,
                                const Rational& k, const RepElement& x) {
    const RepContext& ctx = setup.ctx();
    const AlgebraPresentation& A = ctx.algebra();
    if (!ctx.unital()) throw input_error("the moment identity lives in A_M^+");
    // Precondition: [xi, a] = k (a (x) 1 - 1 (x) a) on generators.
    for (const auto& gw : generator_words(A)) {
        ATensor expected(2);
        expected.add({gw, A.neutral_word()}, k);
        expected.add({A.neutral_word(), gw}, -k);
        if (!(setup.db().evaluate(xi, AlgebraElement::of_word(gw)) == expected))
            throw input_error("moment precondition fails at generator " +
                              A.word_str(gw));
    }
    const Coalgebra& M = ctx.coalgebra();
    for (int alpha = 0; alpha < M.rank(); ++alpha) {
        Vec e(M.rank(), Rational(0));
        e[alpha] = Rational(1);
        const RepElement xi_alpha = ctx.realize(xi, e);
        const RepElement lhs = setup.bracket(xi_alpha, x);
        // bar(alpha) = v(e_alpha (x) -) is row alpha of the form matrix.
        const Mat d = inner_coderivation(M, DualAlgebraElement{setup.form().matrix[alpha]});
        const RepElement rhs = ctx.act_coderivation_unchecked(d, x).scaled(k);
        if (!ctx.equal_mod_relations(lhs, rhs))
            return Verdict::fail("moment identity fails at basis " + M.label(alpha));
    }
    return Verdict::pass();
}

Verdict quasi_jacobi_on_invariants(const BracketSetup& setup, const RepElement& x,
                                   const RepElement& y, const RepElement& z) {
    const RepContext& ctx = setup.ctx();
    if (setup.n() != 0) throw input_error("quasi-Poisson checks need n = 0");
    if (ctx.algebra().kind() == AlgebraKind::free_algebra)
        for (const auto& g : ctx.algebra().generators())
            if (g.degree != 0) throw input_error("quasi-Poisson checks need degree 0");
    if (!ctx.is_invariant(x, RepContext::InvarianceScope::all_inner))
        throw input_error("first argument is not invariant");
    const RepElement jac = setup.jacobi(x, y, z);
    if (!ctx.equal_mod_relations(jac, RepElement::zero()))
        return Verdict::fail("Jacobi form does not vanish on the invariant triple");

    // Cross-check the delta expansion of {x, y, c_gamma} for single-symbol z.
    if (z.terms.size() == 1 && z.terms.begin()->first.size() == 1 &&
        z.terms.begin()->second.is_one()) {
        const RepSymbol zc = z.terms.begin()->first[0];
        const Coalgebra& M = ctx.coalgebra();
        const auto delta_of = [&](int idx) {
            return inner_coderivation(M, DualAlgebraElement{setup.form().matrix[idx]});
        };
        RepElement rhs;
        const auto triple = M.comul_iter_basis(zc.m, 3);
        for (const auto& [key, cmu] : triple.terms) {
            const Mat dq = delta_of(key[1]);
            const Mat dr = delta_of(key[2]);
            const Mat dp = delta_of(key[0]);
            const RepElement dq_x = ctx.act_coderivation_unchecked(dq, x);
            const RepElement dr_x = ctx.act_coderivation_unchecked(dr, x);
            const RepElement dp_x = ctx.act_coderivation_unchecked(dp, x);
            const RepElement dq_y = ctx.act_coderivation_unchecked(dq, y);
            const RepElement dr_y = ctx.act_coderivation_unchecked(dr, y);
            const RepElement dp_y = ctx.act_coderivation_unchecked(dp, y);
            RepElement term1 = ctx.multiply(dq_x, dr_y) - ctx.multiply(dr_x, dq_y);
            term1 = ctx.multiply(term1, ctx.realize_word(zc.word, key[0]));
            RepElement term2 = ctx.multiply(dq_x, dp_y) - ctx.multiply(dp_x, dq_y);
            term2 = ctx.multiply(term2, ctx.realize_word(zc.word, key[2]));
            rhs += (term1 + term2).scaled(cmu);
        }
        const RepElement jac_xyz = setup.jacobi(x, y, z);
        if (!ctx.equal_mod_relations(jac_xyz, rhs))
            return Verdict::fail("delta expansion cross-check fails");
    }
    return Verdict::pass();
}

Verdict equivariant_representative_check(const BracketSetup& setup) {
    const RepContext& ctx = setup.ctx();
    const GroupAction* action = ctx.action();
    if (!ctx.equivariant() || !action)
        throw input_error("equivariant checks need an equivariant context");
    if (const auto v = is_equivariant_db(setup.db(), *action); !v.ok)
        throw input_error("the double bracket is not equivariant: " + v.witness);
    if (!is_equivariant_form(setup.form(), *action))
        throw input_error("the bilinear form is not equivariant");
    for (const auto& aw : generator_words(ctx.algebra()))
        for (const auto& bw : generator_words(ctx.algebra()))
            for (int i = 0; i < ctx.coalgebra().rank(); ++i)
                for (int j = 0; j < ctx.coalgebra().rank(); ++j) {
                    const RepElement xs = ctx.monomial({RepSymbol{aw, i}}, Rational(1));
                    const RepElement yt = ctx.monomial({RepSymbol{bw, j}}, Rational(1));
                    const RepElement left = setup.equivariant_bracket(xs, yt);
                    // Sum over the second slot instead.
                    RepElement right;
                    for (int g = 0; g < action->size(); ++g)
                        right += ctx.equivariant_project(
                            setup.bracket(xs, ctx.act_group_element(g, yt)));
                    if (!ctx.equal_mod_relations(left, right))
                        return Verdict::fail("summation sides differ at " +
                                             pair_witness(ctx, {aw, i}, {bw, j}));
                    // Representative independence in the first slot.
                    for (int g = 1; g < action->size(); ++g) {
                        const RepElement alt = setup.equivariant_bracket(
                            ctx.act_group_element(g, xs), yt);
                        if (!ctx.equal_mod_relations(left, alt))
                            return Verdict::fail(
                                "representative dependence at " +
                                pair_witness(ctx, {aw, i}, {bw, j}));
                    }
                }
    return Verdict::pass();
}

namespace {

// Substitution p: A -> B on words through generator images, extended to
// elements, tensors and rep elements (p+_M).
struct Substitution {
    const AlgebraPresentation* A;
    const RepContext* quotient_ctx;
    const std::vector<AlgebraElement>* images;

    AlgebraElement word_image(const Word& w) const {
        const AlgebraPresentation& B = quotient_ctx->algebra();
        AlgebraElement acc = AlgebraElement::of_word(B.neutral_word());
        for (int letter : w.letters) {
            int gi = letter;
            bool inverse = false;
            if (A->kind() == AlgebraKind::free_group) {
                gi = std::abs(letter) - 1;
                inverse = letter < 0;
            }
            AlgebraElement img = (*images)[gi];
            if (inverse) {
                // Only single +-word images can be inverted.
                if (img.terms.size() != 1)
                    throw input_error("cannot invert a combination image");
                const auto& [iw, ic] = *img.terms.begin();
                std::vector<int> inv;
                for (auto it = iw.letters.rbegin(); it != iw.letters.rend(); ++it)
                    inv.push_back(-*it);
                if (ic != Rational(1) && ic != Rational(-1))
                    throw input_error("cannot invert a non-unit image");
                img = AlgebraElement::of_word(Word(std::move(inv)), ic);
            }
            acc = B.multiply(acc, img);
        }
        return acc;
    }

    AlgebraElement element_image(const AlgebraElement& x) const {
        AlgebraElement out;
        for (const auto& [w, c] : x.terms) out += word_image(w).scaled(c);
        return out;
    }

    ATensor tensor_image(const ATensor& t) const {
        ATensor out(t.arity);
        for (const auto& [key, c] : t.terms) {
            std::vector<AlgebraElement> legs;
            for (const auto& w : key) legs.push_back(word_image(w));
            // Expand the product of leg supports.
            std::vector<std::pair<std::vector<Word>, Rational>> acc = {{{}, c}};
            for (const auto& leg : legs) {
                std::vector<std::pair<std::vector<Word>, Rational>> next;
                for (const auto& [prefix, pc] : acc)
                    for (const auto& [w, wc] : leg.terms) {
                        auto key2 = prefix;
                        key2.push_back(w);
                        next.emplace_back(std::move(key2), pc * wc);
                    }
                acc = std::move(next);
            }
            for (auto& [k2, c2] : acc) out.add(k2, c2);
        }
        return out;
    }

    RepElement rep_image(const RepElement& x) const {
        RepElement out;
        for (const auto& [m, c] : x.terms) {
            RepElement acc;
            acc.terms.emplace(RepMonomial{}, c);
            for (const auto& s : m) {
                const AlgebraElement img = word_image(s.word);
                Vec e(quotient_ctx->coalgebra().rank(), Rational(0));
                e[s.m] = Rational(1);
                acc = quotient_ctx->multiply(acc, quotient_ctx->realize(img, e));
            }
            out += acc;
        }
        return out;
    }
};

}  // namespace

Verdict hamiltonian_reduction_check(const BracketSetup& setup, const ReductionData& red,
                                    const std::vector<RepElement>& e_samples,
                                    const std::vector<RepElement>& ej_samples) {
    const RepContext& ctx = setup.ctx();
    const AlgebraPresentation& A = ctx.algebra();
    if (!ctx.unital()) throw input_error("Hamiltonian reduction lives in A_M^+");
    if (!red.quotient_ctx) throw input_error("reduction needs the quotient context");

    for (const auto& entry : red.moments) {
        Substitution p{&A, red.quotient_ctx, &entry.generator_images};
        const AlgebraPresentation& B = red.quotient_ctx->algebra();
        // Moment condition mod Ker p: (p (x) p)[xi, a] = k (p(a) (x) 1 - 1 (x) p(a)).
        for (const auto& gw : generator_words(A)) {
            const ATensor mapped =
                p.tensor_image(setup.db().evaluate(entry.xi, AlgebraElement::of_word(gw)));
            const AlgebraElement pa = p.word_image(gw);
            ATensor expected(2);
            for (const auto& [w, c] : pa.terms) {
                expected.add({w, B.neutral_word()}, c * entry.k);
                expected.add({B.neutral_word(), w}, -(c * entry.k));
            }
            if (!(mapped == expected))
                throw input_error("mod-J moment condition fails at generator " +
                                  A.word_str(gw));
        }
        // (momoweak): p+(<xi_alpha, x> - k delta_{bar alpha}(x)) = 0.
        const Coalgebra& M = ctx.coalgebra();
        for (int alpha = 0; alpha < M.rank(); ++alpha) {
            Vec e(M.rank(), Rational(0));
            e[alpha] = Rational(1);
            const RepElement xi_alpha = ctx.realize(entry.xi, e);
            const Mat d =
                inner_coderivation(M, DualAlgebraElement{setup.form().matrix[alpha]});
            for (const auto& x : e_samples) {
                const RepElement lhs = setup.bracket(xi_alpha, x);
                const RepElement rhs = ctx.act_coderivation_unchecked(d, x).scaled(entry.k);
                if (!red.quotient_ctx->equal_mod_relations(p.rep_image(lhs - rhs),
                                                           RepElement::zero()))
                    return Verdict::fail("(momoweak) fails at basis " + M.label(alpha));
            }
        }
        // <E cap J, E> stays in E cap J: image under p+ vanishes and the
        // bracket stays invariant.
        for (const auto& xj : ej_samples) {
            if (!red.quotient_ctx->equal_mod_relations(p.rep_image(xj),
                                                       RepElement::zero()))
                return Verdict::fail("an E-cap-J sample does not map into J");
            if (!ctx.is_invariant(xj, RepContext::InvarianceScope::all_inner))
                return Verdict::fail("an E-cap-J sample is not invariant");
            for (const auto& x : e_samples) {
                const RepElement br = setup.bracket(xj, x);
                if (!red.quotient_ctx->equal_mod_relations(p.rep_image(br),
                                                           RepElement::zero()))
                    return Verdict::fail("<E cap J, E> leaves J");
                if (!ctx.is_invariant(br, RepContext::InvarianceScope::all_inner))
                    return Verdict::fail("<E cap J, E> leaves E");
            }
        }
    }
    return Verdict::pass();
}

Verdict equivariant_ell_identity(const BracketSetup& setup) {
    const RepContext& ctx = setup.ctx();
    const GroupAction* action = ctx.action();
    if (!ctx.equivariant() || !action)
        throw input_error("the ell identity needs an equivariant context");
    const Coalgebra& M = ctx.coalgebra();
    for (int pi = 0; pi < M.rank(); ++pi) {
        Vec phi(M.rank(), Rational(0));
        phi[pi] = Rational(1);
        const Mat d_phi = inner_coderivation(M, DualAlgebraElement{phi});
        const Mat d_ell = inner_coderivation(M, DualAlgebraElement{action->averaging_ell(phi)});
        for (const auto& bw : generator_words(ctx.algebra()))
            for (int beta = 0; beta < M.rank(); ++beta) {
                const RepElement b_beta = ctx.monomial({RepSymbol{bw, beta}}, Rational(1));
                RepElement lhs;
                for (int g = 0; g < action->size(); ++g)
                    lhs += ctx.equivariant_project(ctx.act_coderivation_unchecked(
                        d_phi, ctx.act_group_element(g, b_beta)));
                const RepElement rhs = ctx.equivariant_project(
                    ctx.act_coderivation_unchecked(d_ell, b_beta));
                if (!ctx.equal_mod_relations(lhs, rhs))
                    return Verdict::fail("(elll) fails at phi=" + M.label(pi) + ", b=" +
                                         ctx.algebra().word_str(bw) +
                                         ", beta=" + M.label(beta));
            }
    }
    return Verdict::pass();
}

Verdict equivariant_reduction_check(const BracketSetup& setup, const AlgebraElement& xi,
                                    const Rational& k,
                                    const std::vector<RepElement>& samples) {
    const RepContext& ctx = setup.ctx();
    const GroupAction* action = ctx.action();
    if (!ctx.equivariant() || !action)
        throw input_error("equivariant reduction needs an equivariant context");
    if (const auto v = is_equivariant_db(setup.db(), *action); !v.ok)
        throw input_error("the double bracket is not equivariant: " + v.witness);
    if (!is_equivariant_form(setup.form(), *action))
        throw input_error("the bilinear form is not equivariant");
    const Coalgebra& M = ctx.coalgebra();
    for (int alpha = 0; alpha < M.rank(); ++alpha) {
        Vec e(M.rank(), Rational(0));
        e[alpha] = Rational(1);
        const RepElement xi_alpha = ctx.realize(xi, e);
        const Vec ell_bar = action->averaging_ell(setup.form().matrix[alpha]);
        const Mat d = inner_coderivation(M, DualAlgebraElement{ell_bar});
        for (const auto& x : samples) {
            const RepElement lhs = setup.equivariant_bracket(xi_alpha, x);
            const RepElement rhs = ctx.equivariant_project(
                ctx.act_coderivation_unchecked(d, x).scaled(k));
            if (!ctx.equal_mod_relations(lhs, rhs))
                return Verdict::fail("equivariant (momo) fails at basis " +
                                     M.label(alpha));
        }
    }
    return Verdict::pass();
}

Verdict equivariant_quasi_check(const BracketSetup& setup, const RepElement& x,
                                const RepElement& y, const RepElement& z) {
    const RepContext& ctx = setup.ctx();
    if (!ctx.equivariant()) throw input_error("needs an equivariant context");
    if (!ctx.is_invariant(x, RepContext::InvarianceScope::l_only))
        throw input_error("first argument is not L-invariant");
    const RepElement jac = setup.equivariant_jacobi(x, y, z);
    if (!ctx.equal_mod_relations(jac, RepElement::zero()))
        return Verdict::fail("equivariant Jacobi form does not vanish");
    return Verdict::pass();
}

}  // namespace repalg
