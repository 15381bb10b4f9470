#include "repalg/double_bracket.hpp"

#include "repalg/errors.hpp"
#include "repalg/group_action.hpp"

namespace repalg {

namespace {

long degree_of_tensor_leg(const AlgebraPresentation& A, const Word& w) {
    return A.word_degree(w);
}

ATensor zero2() { return ATensor(2); }

}  // namespace

ATensor act_left(const AlgebraPresentation& A, const Word& a, const ATensor& t) {
    ATensor out(2);
    for (const auto& [key, c] : t.terms) {
        const auto prod = A.word_product(a, key[0]);
        for (const auto& [w, d] : prod.terms) out.add({w, key[1]}, c * d);
    }
    return out;
}

ATensor act_right(const AlgebraPresentation& A, const ATensor& t, const Word& b) {
    ATensor out(2);
    for (const auto& [key, c] : t.terms) {
        const auto prod = A.word_product(key[1], b);
        for (const auto& [w, d] : prod.terms) out.add({key[0], w}, c * d);
    }
    return out;
}

ATensor act_star_left(const AlgebraPresentation& A, const Word& a, const ATensor& t,
                      int) {
    // a * (x (x) y) = (-1)^{|a||x|} x (x) ay
    ATensor out(2);
    const long da = A.word_degree(a);
    for (const auto& [key, c] : t.terms) {
        const long s = da * degree_of_tensor_leg(A, key[0]);
        const auto prod = A.word_product(a, key[1]);
        for (const auto& [w, d] : prod.terms)
            out.add({key[0], w}, (s % 2 != 0) ? -(c * d) : c * d);
    }
    return out;
}

ATensor act_star_right(const AlgebraPresentation& A, const ATensor& t, const Word& b) {
    // (x (x) y) * b = (-1)^{|b||y|} xb (x) y
    ATensor out(2);
    const long db = A.word_degree(b);
    for (const auto& [key, c] : t.terms) {
        const long s = db * degree_of_tensor_leg(A, key[1]);
        const auto prod = A.word_product(key[0], b);
        for (const auto& [w, d] : prod.terms)
            out.add({w, key[1]}, (s % 2 != 0) ? -(c * d) : c * d);
    }
    return out;
}

ATensor flip_bracket_value(const AlgebraPresentation& A, int n, int deg_a, int deg_b,
                           const ATensor& value) {
    ATensor out(2);
    const long base = (static_cast<long>(deg_a) + n) * (static_cast<long>(deg_b) + n);
    for (const auto& [key, c] : value.terms) {
        const long s = base + degree_of_tensor_leg(A, key[0]) *
                                  degree_of_tensor_leg(A, key[1]);
        out.add({key[1], key[0]}, (s % 2 != 0) ? c : -c);
    }
    return out;
}

DoubleBracket DoubleBracket::make(const AlgebraPresentation& A, int n,
                                  std::map<std::pair<int, int>, ATensor> table,
                                  bool default_zero) {
    DoubleBracket db;
    db.A_ = &A;
    db.n_ = n;
    db.default_zero_ = default_zero;

    const auto gen_degree = [&A](int g) {
        if (A.kind() == AlgebraKind::free_algebra) return A.generators()[g].degree;
        return 0;
    };
    const auto gen_name = [&A](int g) { return A.generators()[g].name; };

    for (const auto& [pair, value] : table) {
        const auto [g, h] = pair;
        const int ng = static_cast<int>(A.generators().size());
        if (g < 0 || g >= ng || h < 0 || h >= ng)
            throw input_error("double bracket table generator index out of range");
        if (value.arity != 2)
            throw input_error("double bracket values must live in A (x) A");
        const int target = gen_degree(g) + gen_degree(h) + n;
        for (const auto& [key, c] : value.terms)
            if (A.word_degree(key[0]) + A.word_degree(key[1]) != target)
                throw input_error("grading violation in table entry (" + gen_name(g) +
                                  "," + gen_name(h) + ")");
    }
    // Flip closure: synthesize missing mirror entries, reject conflicts.
    for (const auto& [pair, value] : table) {
        const auto [g, h] = pair;
        const ATensor flipped =
            flip_bracket_value(A, n, gen_degree(g), gen_degree(h), value);
        const auto mirror = std::make_pair(h, g);
        const auto it = table.find(mirror);
        if (it == table.end()) {
            db.table_[mirror] = flipped;
        } else if (!(it->second == flipped)) {
            throw input_error("table entries (" + gen_name(g) + "," + gen_name(h) +
                              ") and (" + gen_name(h) + "," + gen_name(g) +
                              ") violate the antisymmetry flip");
        }
    }
    for (auto& [pair, value] : table) db.table_[pair] = std::move(value);
    return db;
}

bool DoubleBracket::covers(int g, int h) const {
    return default_zero_ || table_.count({g, h}) > 0 || table_.count({h, g}) > 0;
}

ATensor DoubleBracket::generator_pair(int g, int h) const {
    const auto it = table_.find({g, h});
    if (it != table_.end()) return it->second;
    if (default_zero_) return zero2();
    throw input_error("double bracket has no entry for generator pair (" +
                      A_->generators()[g].name + "," + A_->generators()[h].name + ")");
}

ATensor DoubleBracket::letter_pair(int l1, int l2) const {
    if (A_->kind() != AlgebraKind::free_group) return generator_pair(l1, l2);
    if (l1 < 0) {
        // [g^{-1}, x] = -g^{-1} * [g, x] * g^{-1}
        const Word inv = Word::single(l1);
        const ATensor t = letter_pair(-l1, l2);
        return act_star_left(*A_, inv, act_star_right(*A_, t, inv)).scaled(Rational(-1));
    }
    if (l2 < 0) {
        // [x, g^{-1}] = -g^{-1} ([x, g] g^{-1})
        const Word inv = Word::single(l2);
        const ATensor t = letter_pair(l1, -l2);
        return act_left(*A_, inv, act_right(*A_, t, inv)).scaled(Rational(-1));
    }
    return generator_pair(l1 - 1, l2 - 1);
}

ATensor DoubleBracket::evaluate_letter_word(int letter, const Word& b) const {
    if (b.empty()) return zero2();
    if (b.length() == 1) return letter_pair(letter, b.letters[0]);
    // (bibi) with b = first letter, c = rest:
    // [a, bc] = [a,b]c + (-1)^{|a|_n |b|} b [a,c]
    const Word first = Word::single(b.letters[0]);
    Word rest;
    rest.letters.assign(b.letters.begin() + 1, b.letters.end());
    const long deg_a_n =
        (A_->kind() == AlgebraKind::free_algebra && letter >= 0
             ? A_->generators()[letter].degree
             : 0) +
        n_;
    const long s = deg_a_n * A_->word_degree(first);
    ATensor out = act_right(*A_, letter_pair(letter, first.letters[0]), rest);
    ATensor second = act_left(*A_, first, evaluate_letter_word(letter, rest));
    out += (s % 2 != 0) ? second.scaled(Rational(-1)) : second;
    return out;
}

ATensor DoubleBracket::evaluate_words(const Word& a, const Word& b) const {
    if (a.empty() || b.empty()) return zero2();  // [1,-] = [-,1] = 0
    if (a.length() == 1) return evaluate_letter_word(a.letters[0], b);
    // (bibi+) with a = first letter, b = rest:
    // [ab, c] = a * [b,c] + (-1)^{|b||c|_n} [a,c] * b
    const Word first = Word::single(a.letters[0]);
    Word rest;
    rest.letters.assign(a.letters.begin() + 1, a.letters.end());
    const long s = static_cast<long>(A_->word_degree(rest)) *
                   (static_cast<long>(A_->word_degree(b)) + n_);
    ATensor out = act_star_left(*A_, first, evaluate_words(rest, b));
    ATensor second = act_star_right(*A_, evaluate_words(first, b), rest);
    out += (s % 2 != 0) ? second.scaled(Rational(-1)) : second;
    return out;
}

ATensor DoubleBracket::evaluate(const AlgebraElement& a, const AlgebraElement& b) const {
    ATensor out(2);
    for (const auto& [u, cu] : a.terms)
        for (const auto& [w, cw] : b.terms)
            out += evaluate_words(u, w).scaled(cu * cw);
    return out;
}

namespace {

// (db (x) id)(id (x) db) on an arity-3 tensor over words.
ATensor tribracket_step(const DoubleBracket& db, const ATensor& t) {
    ATensor out(3);
    for (const auto& [key, c] : t.terms) {
        const ATensor inner = db.evaluate_words(key[1], key[2]);
        for (const auto& [ik, d] : inner.terms) {
            const ATensor outer = db.evaluate_words(key[0], ik[0]);
            for (const auto& [ok, e] : outer.terms)
                out.add({ok[0], ok[1], ik[1]}, c * d * e);
        }
    }
    return out;
}

}  // namespace

ATensor tribracket_words(const DoubleBracket& db, const Word& a, const Word& b,
                         const Word& c) {
    const AlgebraPresentation& A = db.algebra();
    const auto deg = [&A](const Word& w) { return A.word_degree(w); };
    const Perm p312 = {2, 0, 1};
    const Perm p231 = {1, 2, 0};

    ATensor base(3);
    base.add({a, b, c}, Rational(1));

    ATensor total(3);
    ATensor shifted = base;
    for (int i = 0; i <= 2; ++i) {
        ATensor term = tribracket_step(db, shifted);
        for (int j = 0; j < i; ++j) term = graded_permute(p312, 0, term, deg);
        total += term;
        if (i < 2) shifted = graded_permute(p231, db.n(), shifted, deg);
    }
    return total;
}

ATensor tribracket(const DoubleBracket& db, const AlgebraElement& a,
                   const AlgebraElement& b, const AlgebraElement& c) {
    ATensor out(3);
    for (const auto& [u, cu] : a.terms)
        for (const auto& [v, cv] : b.terms)
            for (const auto& [w, cw] : c.terms)
                out += tribracket_words(db, u, v, w).scaled(cu * cv * cw);
    return out;
}

namespace {

std::vector<Word> algebra_generator_words(const AlgebraPresentation& A) {
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

AlgebraElement unit_element(const AlgebraPresentation& A) {
    if (!A.unital()) throw input_error("algebra has no unit");
    if (A.kind() == AlgebraKind::structure_constants)
        throw input_error("structure-constant units are handled by the caller");
    return AlgebraElement::of_word(A.neutral_word());
}

ATensor tensor3_of(const AlgebraPresentation& A, const AlgebraElement& x,
                   const AlgebraElement& y, const AlgebraElement& z) {
    ATensor out(3);
    for (const auto& [u, cu] : x.terms)
        for (const auto& [v, cv] : y.terms)
            for (const auto& [w, cw] : z.terms) out.add({u, v, w}, cu * cv * cw);
    return out;
}

std::string triple_witness(const AlgebraPresentation& A, const Word& a, const Word& b,
                           const Word& c) {
    return "(" + A.word_str(a) + "," + A.word_str(b) + "," + A.word_str(c) + ")";
}

}  // namespace

Verdict is_gerstenhaber(const DoubleBracket& db, std::mt19937_64& rng,
                        int word_samples) {
    const AlgebraPresentation& A = db.algebra();
    const auto gens = algebra_generator_words(A);
    for (const auto& a : gens)
        for (const auto& b : gens)
            for (const auto& c : gens)
                if (!tribracket_words(db, a, b, c).is_zero())
                    return Verdict::fail("tribracket nonzero at generator triple " +
                                         triple_witness(A, a, b, c));
    // Safety net: random word triples up to length 3. Vanishing on generators
    // is a criterion, not a proof.
    if (A.kind() == AlgebraKind::free_algebra || A.kind() == AlgebraKind::free_group) {
        std::uniform_int_distribution<size_t> pick(0, gens.size() - 1);
        std::uniform_int_distribution<int> len(1, 3);
        const auto random_word = [&]() {
            AlgebraElement acc = AlgebraElement::of_word(gens[pick(rng)]);
            const int l = len(rng);
            for (int i = 1; i < l; ++i)
                acc = A.multiply(acc, AlgebraElement::of_word(gens[pick(rng)]));
            return acc.terms.begin()->first;
        };
        for (int s = 0; s < word_samples; ++s) {
            const Word a = random_word(), b = random_word(), c = random_word();
            if (!tribracket_words(db, a, b, c).is_zero())
                return Verdict::fail("tribracket nonzero at sampled word triple " +
                                     triple_witness(A, a, b, c));
        }
    }
    return Verdict::pass();
}

Verdict is_quasi_poisson(const DoubleBracket& db) {
    const AlgebraPresentation& A = db.algebra();
    if (!A.unital()) throw input_error("quasi-Poisson requires a unital algebra");
    if (db.n() != 0) throw input_error("quasi-Poisson requires n = 0");
    if (A.kind() == AlgebraKind::free_algebra)
        for (const auto& g : A.generators())
            if (g.degree != 0)
                throw input_error("quasi-Poisson requires a non-graded algebra");
    const AlgebraElement one = unit_element(A);
    const auto gens = algebra_generator_words(A);
    for (const auto& aw : gens)
        for (const auto& bw : gens)
            for (const auto& cw : gens) {
                const auto a = AlgebraElement::of_word(aw);
                const auto b = AlgebraElement::of_word(bw);
                const auto c = AlgebraElement::of_word(cw);
                const auto ab = A.multiply(a, b);
                const auto bc = A.multiply(b, c);
                const auto ca = A.multiply(c, a);
                ATensor rhs = tensor3_of(A, c, a, b);
                rhs += tensor3_of(A, one, ab, c);
                rhs += tensor3_of(A, a, one, bc);
                rhs += tensor3_of(A, ca, b, one);
                rhs += tensor3_of(A, a, b, c).scaled(Rational(-1));
                rhs += tensor3_of(A, one, a, bc).scaled(Rational(-1));
                rhs += tensor3_of(A, ca, one, b).scaled(Rational(-1));
                rhs += tensor3_of(A, c, ab, one).scaled(Rational(-1));
                if (!(tribracket_words(db, aw, bw, cw) == rhs))
                    return Verdict::fail("tribracket differs from the quasi-Poisson "
                                         "form at " +
                                         triple_witness(A, aw, bw, cw));
            }
    return Verdict::pass();
}

Verdict is_moment_map(const DoubleBracket& db, const AlgebraElement& xi,
                      MomentKind kind) {
    const AlgebraPresentation& A = db.algebra();
    if (!A.unital()) throw input_error("moment maps require a unital algebra");
    for (const auto& [w, c] : xi.terms)
        if (A.word_degree(w) != -db.n())
            throw input_error("moment map candidate is not concentrated in degree -n");
    for (const auto& gw : algebra_generator_words(A)) {
        const auto a = AlgebraElement::of_word(gw);
        ATensor expected(2);
        if (kind == MomentKind::additive) {
            for (const auto& [w, c] : a.terms) expected.add({w, A.neutral_word()}, c);
            for (const auto& [w, c] : a.terms) expected.add({A.neutral_word(), w}, -c);
        } else {
            expected = ATensor(2);
            const auto a_eta = A.multiply(a, xi);
            const auto eta_a = A.multiply(xi, a);
            for (const auto& [u, cu] : a.terms)
                for (const auto& [v, cv] : xi.terms) expected.add({u, v}, cu * cv);
            for (const auto& [u, cu] : xi.terms)
                for (const auto& [v, cv] : a.terms) expected.add({u, v}, -(cu * cv));
            for (const auto& [u, cu] : a_eta.terms)
                expected.add({u, A.neutral_word()}, cu);
            for (const auto& [u, cu] : eta_a.terms)
                expected.add({A.neutral_word(), u}, -cu);
        }
        if (!(db.evaluate(xi, AlgebraElement::of_word(gw)) == expected))
            return Verdict::fail("moment identity fails at generator " + A.word_str(gw));
    }
    return Verdict::pass();
}

Verdict is_equivariant_db(const DoubleBracket& db, const GroupAction& action) {
    const AlgebraPresentation& A = db.algebra();
    const auto gens = algebra_generator_words(A);
    const auto deg = [&A](const Word& w) { return A.word_degree(w); };
    for (int g = 1; g < action.size(); ++g) {
        for (const auto& aw : gens)
            for (const auto& bw : gens) {
                const auto lhs =
                    db.evaluate(action.apply_to_element(g, AlgebraElement::of_word(aw)),
                                action.apply_to_element(g, AlgebraElement::of_word(bw)));
                ATensor rhs =
                    action.apply_to_word_tensor(g, db.evaluate_words(aw, bw));
                if (!action.elements[g].in_g0)
                    rhs = graded_permute(Perm{1, 0}, 0, rhs, deg);
                if (!(lhs == rhs))
                    return Verdict::fail("equivariance fails for " +
                                         action.elements[g].name + " at (" +
                                         A.word_str(aw) + "," + A.word_str(bw) + ")");
            }
    }
    return Verdict::pass();
}

AlgebraElement check_bracket(const DoubleBracket& db, const AlgebraElement& a,
                             const AlgebraElement& b) {
    AlgebraElement out;
    for (const auto& [key, c] : db.evaluate(a, b).terms)
        out += db.algebra().word_product(key[0], key[1]).scaled(c);
    return out;
}

}  // namespace repalg
