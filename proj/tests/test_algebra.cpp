#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "repalg/algebra.hpp"
#include "repalg/double_bracket.hpp"
#include "repalg/linalg.hpp"

using namespace repalg;

namespace {

// S3 as permutations of {0,1,2}: elements listed as one-line images.
AlgebraPresentation make_s3() {
    const std::vector<std::array<int, 3>> perms = {
        {0, 1, 2}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}, {1, 2, 0}, {2, 0, 1}};
    const std::vector<std::string> names = {"1", "s12", "s23", "s13", "c123", "c132"};
    std::vector<std::vector<int>> table(6, std::vector<int>(6));
    const auto compose = [&perms](int a, int b) {
        std::array<int, 3> r;
        for (int i = 0; i < 3; ++i) r[i] = perms[a][perms[b][i]];
        for (size_t k = 0; k < perms.size(); ++k)
            if (perms[k] == r) return static_cast<int>(k);
        return -1;
    };
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b) table[a][b] = compose(a, b);
    return AlgebraPresentation::make_finite_group(names, table);
}

// Quaternion-like algebra from the defining relations i^2=j^2=k^2=ijk=-1.
AlgebraPresentation make_quaternion() {
    using Cell = std::vector<std::pair<int, Rational>>;
    const Rational one(1), neg(-1);
    // Basis order 1, i, j, k.
    std::vector<std::vector<Cell>> products(4, std::vector<Cell>(4));
    const auto set = [&products](int a, int b, int c, Rational v) {
        products[a][b] = Cell{{c, v}};
    };
    set(0, 0, 0, one);
    for (int x = 1; x < 4; ++x) {
        set(0, x, x, one);
        set(x, 0, x, one);
        set(x, x, 0, neg);
    }
    set(1, 2, 3, one);   // ij = k
    set(2, 1, 3, neg);   // ji = -k
    set(2, 3, 1, one);   // jk = i
    set(3, 2, 1, neg);   // kj = -i
    set(3, 1, 2, one);   // ki = j
    set(1, 3, 2, neg);   // ik = -j
    Vec unit = {Rational(1), Rational(0), Rational(0), Rational(0)};
    return AlgebraPresentation::make_structure_constants({"1", "i", "j", "k"},
                                                         products, unit);
}

}  // namespace

TEST_CASE("free algebra multiplication is word concatenation") {
    auto A = AlgebraPresentation::make_free({{"a", 0}, {"b", 0}, {"c", 0}}, false);
    const auto ab = A.parse_word("ab");
    const auto c = A.parse_word("c");
    const auto prod = A.multiply(AlgebraElement::of_word(ab), AlgebraElement::of_word(c));
    CHECK(prod == AlgebraElement::of_word(A.parse_word("abc")));
    CHECK(A.word_str(A.parse_word("abc")) == "a*b*c");
}

TEST_CASE("free group words reduce") {
    auto A = AlgebraPresentation::make_free_group({"g", "h"});
    const auto g = A.parse_word("g");
    const auto ginv = A.parse_word("g^-1");
    const auto prod = A.multiply(AlgebraElement::of_word(g), AlgebraElement::of_word(ginv));
    CHECK(prod == AlgebraElement::of_word(A.neutral_word()));
    CHECK(A.parse_word("g^2").length() == 2);
    CHECK(A.word_str(A.parse_word("g^-2")) == "g^-2");
    CHECK(A.parse_word("gh").length() == 2);
}

TEST_CASE("quaternion-like table satisfies the defining relations") {
    auto A = make_quaternion();
    const auto w = [&A](const char* n) {
        return AlgebraElement::of_word(Word::single(A.generator_index(n)));
    };
    const auto minus_one = w("1").scaled(Rational(-1));
    CHECK(A.multiply(w("i"), w("i")) == minus_one);
    CHECK(A.multiply(w("j"), w("j")) == minus_one);
    CHECK(A.multiply(w("k"), w("k")) == minus_one);
    CHECK(A.multiply(A.multiply(w("i"), w("j")), w("k")) == minus_one);
    CHECK(A.multiply(w("i"), w("j")) == w("k"));
    CHECK(A.multiply(w("j"), w("i")) == w("k").scaled(Rational(-1)));
}

TEST_CASE("associativity is rejected when broken") {
    using Cell = std::vector<std::pair<int, Rational>>;
    std::vector<std::vector<Cell>> products(2, std::vector<Cell>(2));
    products[0][0] = Cell{{0, Rational(1)}};
    products[0][1] = Cell{{1, Rational(1)}};
    products[1][0] = Cell{{1, Rational(1)}};
    products[1][1] = Cell{{0, Rational(1)}, {1, Rational(1)}};
    // Perturb to break associativity.
    products[1][1] = Cell{{0, Rational(1)}};
    products[0][1] = Cell{{1, Rational(2)}};
    CHECK_THROWS_AS(AlgebraPresentation::make_structure_constants(
                        {"e", "x"}, products, std::nullopt),
                    input_error);
}

TEST_CASE("group table validation") {
    // A monoid that is not a group: the second element has no inverse.
    CHECK_THROWS_AS(
        AlgebraPresentation::make_finite_group({"a", "b"}, {{0, 1}, {1, 1}}),
        input_error);
    // No neutral at all.
    CHECK_THROWS_AS(
        AlgebraPresentation::make_finite_group({"a", "b"}, {{1, 1}, {1, 1}}),
        input_error);
    // Z/2.
    auto z2 = AlgebraPresentation::make_finite_group({"1", "s"}, {{0, 1}, {1, 0}});
    CHECK(z2.group_neutral() == 0);
    CHECK(z2.group_product(1, 1) == 0);
    CHECK(z2.group_inverse(1) == 1);
}

TEST_CASE("multiply is associative on random triples for every kind") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long> coeff(-4, 4);

    const auto random_elem = [&](const AlgebraPresentation& A, int words, int len) {
        AlgebraElement e;
        const auto pool = A.enumerate_words(len);
        std::uniform_int_distribution<size_t> pick(0, pool.size() - 1);
        for (int i = 0; i < words; ++i)
            e.add(pool[pick(rng)], Rational(coeff(rng)));
        return e;
    };

    std::vector<AlgebraPresentation> presentations;
    presentations.push_back(
        AlgebraPresentation::make_free({{"a", 0}, {"b", 1}, {"c", 2}}, false));
    presentations.push_back(AlgebraPresentation::make_free_group({"g", "h"}));
    presentations.push_back(make_s3());
    presentations.push_back(make_quaternion());
    for (const auto& A : presentations) {
        for (int t = 0; t < 25; ++t) {
            const auto x = random_elem(A, 3, 2);
            const auto y = random_elem(A, 3, 2);
            const auto z = random_elem(A, 3, 2);
            CHECK(A.multiply(A.multiply(x, y), z) == A.multiply(x, A.multiply(y, z)));
        }
    }
}

TEST_CASE("finite group multiply agrees with the table on all basis pairs") {
    auto s3 = make_s3();
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b) {
            const auto prod = s3.multiply(AlgebraElement::of_word(Word::single(a)),
                                          AlgebraElement::of_word(Word::single(b)));
            CHECK(prod ==
                  AlgebraElement::of_word(Word::single(s3.group_product(a, b))));
        }
}

TEST_CASE("check class equality: commutators vanish in the check algebra") {
    auto A = AlgebraPresentation::make_free({{"a", 0}, {"b", 0}}, false);
    const auto ab = AlgebraElement::of_word(A.parse_word("ab"));
    const auto ba = AlgebraElement::of_word(A.parse_word("ba"));
    CHECK(check_class_equal(A, ab, ba, 4));
    // Distinct free generators stay distinct.
    const auto a = AlgebraElement::of_word(A.parse_word("a"));
    const auto b = AlgebraElement::of_word(A.parse_word("b"));
    CHECK(!check_class_equal(A, a, b, 4));
}

TEST_CASE("check class equality in K[S3]: products commute as classes") {
    auto s3 = make_s3();
    const int g = 1, h = 4;  // a transposition and a 3-cycle
    CHECK(s3.group_product(g, h) != s3.group_product(h, g));
    const auto gh = AlgebraElement::of_word(Word::single(s3.group_product(g, h)));
    const auto hg = AlgebraElement::of_word(Word::single(s3.group_product(h, g)));
    CHECK(check_class_equal(s3, gh, hg, 4));

    // Oracle: direct span of all uv - vu over the 36 word pairs.
    RowSpace span;
    for (int u = 0; u < 6; ++u)
        for (int v = 0; v < 6; ++v) {
            RowSpace::SparseRow row;
            const int uv = s3.group_product(u, v), vu = s3.group_product(v, u);
            if (uv == vu) continue;
            row[uv] += Rational(1);
            row[vu] += Rational(-1);
            span.insert(row);
        }
    RowSpace::SparseRow diff;
    diff[s3.group_product(g, h)] += Rational(1);
    diff[s3.group_product(h, g)] += Rational(-1);
    CHECK(span.contains(diff));

    // Non-conjugate elements are distinct in the check algebra: a transposition
    // vs the neutral element.
    CHECK(!check_class_equal(s3, AlgebraElement::of_word(Word::single(1)),
                             AlgebraElement::of_word(Word::single(0)), 4));
}

TEST_CASE("graded commutator sign: odd-odd pairs anticommute") {
    auto A = AlgebraPresentation::make_free({{"x", 1}, {"y", 1}}, false);
    const auto xy = AlgebraElement::of_word(A.parse_word("xy"));
    const auto yx = AlgebraElement::of_word(A.parse_word("yx"));
    // [A,A] is spanned by xy + yx for odd degrees, so xy == -yx in the class.
    CHECK(check_class_equal(A, xy, yx.scaled(Rational(-1)), 4));
    CHECK(!check_class_equal(A, xy, yx, 4));
}

TEST_CASE("check_bracket contracts the two legs") {
    auto A = AlgebraPresentation::make_free({{"a", 0}, {"b", 0}, {"c", 0}, {"d", 0}},
                                            false);
    ATensor cd(2);
    cd.add({A.parse_word("c"), A.parse_word("d")}, Rational(1));
    std::map<std::pair<int, int>, ATensor> table;
    table[{0, 1}] = cd;
    const auto db = DoubleBracket::make(A, 0, table, true);
    const auto a = AlgebraElement::of_word(A.parse_word("a"));
    const auto b = AlgebraElement::of_word(A.parse_word("b"));
    CHECK(check_bracket(db, a, b) == AlgebraElement::of_word(A.parse_word("cd")));
    // Zero bracket gives zero.
    CHECK(check_bracket(db, b, b).is_zero());
    // Antisymmetry of <,> on the check algebra: <a,b> + <b,a> lies in [A,A].
    const auto fwd = check_bracket(db, a, b);
    const auto bwd = check_bracket(db, b, a);
    CHECK(check_class_equal(A, fwd + bwd, AlgebraElement{}, 4));
}

TEST_CASE("moment pair contracts to zero in unital free algebra") {
    auto A = AlgebraPresentation::make_free({{"xi", 0}, {"a", 0}}, true);
    ATensor val(2);
    val.add({A.parse_word("a"), Word()}, Rational(1));
    val.add({Word(), A.parse_word("a")}, Rational(-1));
    std::map<std::pair<int, int>, ATensor> table;
    table[{0, 1}] = val;
    ATensor self(2);
    self.add({A.parse_word("xi"), Word()}, Rational(1));
    self.add({Word(), A.parse_word("xi")}, Rational(-1));
    table[{0, 0}] = self;
    const auto db = DoubleBracket::make(A, 0, table, true);
    const auto xi = AlgebraElement::of_word(A.parse_word("xi"));
    const auto a = AlgebraElement::of_word(A.parse_word("a"));
    // a*1 - 1*a = 0.
    CHECK(check_bracket(db, xi, a).is_zero());
}

TEST_CASE("mixed-kind multiplication precondition is the caller's job") {
    // parse_word rejects unknown names, which is how mixed presentations fail.
    auto A = AlgebraPresentation::make_free({{"a", 0}}, false);
    CHECK_THROWS_AS(A.parse_word("z"), input_error);
}
