#include "repalg/scenario.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "repalg/errors.hpp"

namespace repalg {

using nlohmann::json;

namespace {

Rational rat(const json& j, const std::string& where) {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (j.is_string()) return Rational::parse(j.get<std::string>());
    throw input_error(where + ": expected an integer or a \"p/q\" string");
}

Vec rat_vec(const json& j, const std::string& where) {
    if (!j.is_array()) throw input_error(where + ": expected an array");
    Vec out;
    for (const auto& x : j) out.push_back(rat(x, where));
    return out;
}

Mat rat_mat(const json& j, const std::string& where) {
    if (!j.is_array()) throw input_error(where + ": expected a matrix");
    Mat out;
    for (const auto& row : j) out.push_back(rat_vec(row, where));
    return out;
}

std::unique_ptr<AlgebraPresentation> parse_algebra(const json& j,
                                                   const std::string& where) {
    if (!j.is_object() || !j.contains("kind"))
        throw input_error(where + ": algebra section needs a kind");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "free") {
        std::vector<Generator> gens;
        for (const auto& g : j.at("generators")) {
            if (g.is_string())
                gens.push_back({g.get<std::string>(), 0});
            else
                gens.push_back({g.at("name").get<std::string>(), g.value("degree", 0)});
        }
        return std::make_unique<AlgebraPresentation>(
            AlgebraPresentation::make_free(std::move(gens), j.value("unital", false)));
    }
    if (kind == "free_group") {
        std::vector<std::string> names;
        for (const auto& g : j.at("generators")) names.push_back(g.get<std::string>());
        return std::make_unique<AlgebraPresentation>(
            AlgebraPresentation::make_free_group(std::move(names)));
    }
    if (kind == "finite_group") {
        std::vector<std::string> names;
        for (const auto& g : j.at("elements")) names.push_back(g.get<std::string>());
        std::vector<std::vector<int>> table;
        for (const auto& row : j.at("table"))
            table.push_back(row.get<std::vector<int>>());
        return std::make_unique<AlgebraPresentation>(
            AlgebraPresentation::make_finite_group(std::move(names), std::move(table)));
    }
    if (kind == "structure_constants") {
        std::vector<std::string> names;
        for (const auto& g : j.at("basis")) names.push_back(g.get<std::string>());
        const int n = static_cast<int>(names.size());
        std::vector<std::vector<std::vector<std::pair<int, Rational>>>> products(
            n, std::vector<std::vector<std::pair<int, Rational>>>(n));
        const auto index_of = [&names, &where](const std::string& nm) {
            for (int i = 0; i < static_cast<int>(names.size()); ++i)
                if (names[i] == nm) return i;
            throw input_error(where + ": unknown basis name '" + nm + "'");
        };
        for (const auto& [key, cell] : j.at("products").items()) {
            const auto star = key.find('*');
            if (star == std::string::npos)
                throw input_error(where + ": product keys look like \"a*b\"");
            const int a = index_of(key.substr(0, star));
            const int b = index_of(key.substr(star + 1));
            for (const auto& term : cell)
                products[a][b].emplace_back(index_of(term.at(0).get<std::string>()),
                                            rat(term.at(1), where));
        }
        std::optional<Vec> unit;
        if (j.contains("unit")) unit = rat_vec(j.at("unit"), where + ".unit");
        return std::make_unique<AlgebraPresentation>(
            AlgebraPresentation::make_structure_constants(
                std::move(names), std::move(products), std::move(unit)));
    }
    throw input_error(where + ": unknown algebra kind '" + kind + "'");
}

AlgebraElement parse_element(const AlgebraPresentation& A, const std::string& expr) {
    // term [+- term ...] with term = [coeff*]word; "1" is the unit, "0" zero.
    AlgebraElement out;
    std::string s = expr;
    s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
    size_t pos = 0;
    Rational sign(1);
    while (pos < s.size()) {
        if (s[pos] == '+') {
            sign = Rational(1);
            ++pos;
            continue;
        }
        if (s[pos] == '-') {
            sign = Rational(-1);
            ++pos;
            continue;
        }
        size_t end = pos;
        while (end < s.size() && s[end] != '+' && s[end] != '-') ++end;
        // Keep exponent signs like g^-2 inside the term.
        while (end < s.size() && s[end - 1] == '^') {
            ++end;
            while (end < s.size() && s[end] != '+' && s[end] != '-') ++end;
        }
        std::string term = s.substr(pos, end - pos);
        pos = end;
        Rational coeff = sign;
        sign = Rational(1);
        if (!term.empty() && (isdigit(static_cast<unsigned char>(term[0])))) {
            const auto star = term.find('*');
            if (star != std::string::npos) {
                coeff *= Rational::parse(term.substr(0, star));
                term = term.substr(star + 1);
            } else if (term == "0") {
                continue;
            } else if (term == "1") {
                out.add(A.neutral_word(), coeff);
                continue;
            } else {
                throw input_error("cannot parse element term '" + term + "'");
            }
        }
        out.add(A.parse_word(term), coeff);
    }
    return out;
}

struct CoalgebraParse {
    std::unique_ptr<Coalgebra> M;
    std::unique_ptr<AlgebraPresentation> group;      // for group duals
    std::unique_ptr<AlgebraPresentation> basis_alg;  // for frobenius duals
    std::optional<Mat> frobenius_v;
    std::string kind;
};

CoalgebraParse parse_coalgebra(const json& j) {
    const std::string where = "coalgebra";
    if (!j.is_object() || !j.contains("kind"))
        throw input_error(where + ": needs a kind");
    CoalgebraParse out;
    out.kind = j.at("kind").get<std::string>();
    if (out.kind == "matrix_dual") {
        out.M = std::make_unique<Coalgebra>(build_matrix_dual(j.at("size").get<int>()));
        return out;
    }
    if (out.kind == "group_dual") {
        json galg = j;
        galg["kind"] = "finite_group";
        out.group = parse_algebra(galg, where);
        out.M = std::make_unique<Coalgebra>(build_group_dual(*out.group));
        return out;
    }
    if (out.kind == "trunc_poly_dual") {
        out.M = std::make_unique<Coalgebra>(build_trunc_poly_dual(j.at("n").get<int>()));
        return out;
    }
    if (out.kind == "constants") {
        const int rank = j.at("rank").get<int>();
        std::vector<Tensor<int>> comul;
        for (const auto& row : j.at("comul")) {
            Tensor<int> t(2);
            for (const auto& term : row)
                t.add({term.at(0).get<int>(), term.at(1).get<int>()},
                      rat(term.at(2), where));
            comul.push_back(std::move(t));
        }
        std::optional<Vec> counit;
        if (j.contains("counit")) counit = rat_vec(j.at("counit"), where);
        std::vector<std::string> labels;
        if (j.contains("labels"))
            for (const auto& l : j.at("labels")) labels.push_back(l.get<std::string>());
        out.M = std::make_unique<Coalgebra>(Coalgebra::from_constants(
            rank, std::move(comul), std::move(counit), std::move(labels)));
        return out;
    }
    if (out.kind == "frobenius_dual") {
        out.basis_alg = parse_algebra(j.at("basis_algebra"), where + ".basis_algebra");
        std::optional<Vec> theta;
        if (j.contains("theta")) theta = rat_vec(j.at("theta"), where + ".theta");
        std::optional<Mat> gram;
        if (j.contains("gram")) gram = rat_mat(j.at("gram"), where + ".gram");
        FrobeniusData data =
            j.contains("N")
                ? frobenius_matrix_form(*out.basis_alg, theta, gram, j.at("N").get<int>())
                : frobenius_form(*out.basis_alg, theta, gram);
        out.M = std::make_unique<Coalgebra>(std::move(data.M));
        out.frobenius_v = std::move(data.v_matrix);
        return out;
    }
    throw input_error(where + ": unknown kind '" + out.kind + "'");
}

Mat parse_form(const json& j, const Scenario& sc, const CoalgebraParse& cp) {
    const std::string where = "form";
    if (!j.is_object() || !j.contains("kind"))
        throw input_error(where + ": needs a kind");
    const std::string kind = j.at("kind").get<std::string>();
    const int rank = sc.coalgebra->rank();
    if (kind == "trace") {
        if (cp.kind != "matrix_dual")
            throw input_error(where + ": the trace form needs a matrix dual");
        int N = 1;
        while (N * N < rank) ++N;
        Mat v(rank, Vec(rank, Rational(0)));
        for (int i = 0; i < N; ++i)
            for (int jj = 0; jj < N; ++jj) v[i * N + jj][jj * N + i] = Rational(1);
        return v;
    }
    if (kind == "character") {
        if (!sc.coalgebra_group)
            throw input_error(where + ": character forms need a group dual");
        const Vec F = rat_vec(j.at("values"), where + ".values");
        return group_character_form(*sc.coalgebra_group, F, *sc.coalgebra).form.matrix;
    }
    if (kind == "antidiagonal") {
        if (cp.kind != "trunc_poly_dual")
            throw input_error(
                where + ": the antidiagonal form needs a truncated polynomial dual");
        Mat v(rank, Vec(rank, Rational(0)));
        for (int i = 0; i < rank; ++i) v[i][rank - 1 - i] = Rational(1);
        return v;
    }
    if (kind == "frobenius") {
        if (!cp.frobenius_v)
            throw input_error(where +
                              ": frobenius forms need a frobenius_dual coalgebra");
        return *cp.frobenius_v;
    }
    if (kind == "explicit") return rat_mat(j.at("matrix"), where + ".matrix");
    throw input_error(where + ": unknown kind '" + kind + "'");
}

std::unique_ptr<DoubleBracket> parse_double_bracket(const json& j, Scenario& sc) {
    const std::string where = "double_bracket";
    if (!j.is_object()) throw input_error(where + ": expected an object");
    const int n = j.value("n", 0);
    const bool default_zero = j.value("default_zero", false);
    std::map<std::pair<int, int>, ATensor> table;
    const AlgebraPresentation& A = *sc.algebra;
    if (j.contains("entries"))
        for (const auto& e : j.at("entries")) {
            const int left = A.generator_index(e.at("left").get<std::string>());
            const int right = A.generator_index(e.at("right").get<std::string>());
            ATensor value(2);
            for (const auto& term : e.at("value"))
                value.add({A.parse_word(term.at(0).get<std::string>()),
                           A.parse_word(term.at(1).get<std::string>())},
                          rat(term.at(2), where));
            if (!table.emplace(std::make_pair(left, right), std::move(value)).second)
                throw input_error(where + ": duplicate entry for (" +
                                  e.at("left").get<std::string>() + "," +
                                  e.at("right").get<std::string>() + ")");
        }
    return std::make_unique<DoubleBracket>(
        DoubleBracket::make(A, n, std::move(table), default_zero));
}

std::unique_ptr<GroupAction> parse_group_action(const json& j, Scenario& sc) {
    const std::string where = "group_action";
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "trivial")
        return std::make_unique<GroupAction>(
            GroupAction::trivial(*sc.algebra, *sc.coalgebra));
    if (kind != "involution")
        throw input_error(where + ": unknown kind '" + kind + "'");

    std::vector<std::pair<Rational, Word>> images;
    const auto& jimages = j.at("algebra_images");
    for (const auto& g : sc.algebra->generators()) {
        if (!jimages.contains(g.name))
            throw input_error(where + ": missing image for generator '" + g.name + "'");
        std::string expr = jimages.at(g.name).get<std::string>();
        Rational c(1);
        if (!expr.empty() && expr[0] == '-') {
            c = Rational(-1);
            expr = expr.substr(1);
        }
        images.emplace_back(c, sc.algebra->parse_word(expr));
    }
    Mat iota;
    if (j.contains("coalgebra_matrix")) {
        iota = rat_mat(j.at("coalgebra_matrix"), where);
    } else if (j.contains("transpose_J")) {
        // t_ij -> (d_i/d_j) t_ji on a matrix dual, induced by X -> J X^t J^{-1}
        // with J = diag(d).
        const Vec d = rat_vec(j.at("transpose_J"), where + ".transpose_J");
        const int N = static_cast<int>(d.size());
        if (N * N != sc.coalgebra->rank())
            throw input_error(where +
                              ": transpose_J needs the matrix dual of matching size");
        iota.assign(N * N, Vec(N * N, Rational(0)));
        for (int i = 0; i < N; ++i)
            for (int jj = 0; jj < N; ++jj)
                iota[jj * N + i][i * N + jj] = d[i] / d[jj];
    } else {
        throw input_error(where + ": needs coalgebra_matrix or transpose_J");
    }
    return std::make_unique<GroupAction>(
        GroupAction::order_two(*sc.algebra, *sc.coalgebra, std::move(images), iota));
}

RepVariant parse_variant(const std::string& v) {
    if (v == "plain") return RepVariant::plain;
    if (v == "unital") return RepVariant::unital;
    if (v == "equivariant") return RepVariant::equivariant;
    if (v == "equivariant_unital") return RepVariant::equivariant_unital;
    throw input_error("unknown variant '" + v + "'");
}

std::vector<Word> generator_words_of(const AlgebraPresentation& A) {
    std::vector<Word> gens;
    if (A.kind() == AlgebraKind::free_group) {
        for (size_t i = 0; i < A.generators().size(); ++i) {
            gens.push_back(Word::single(static_cast<int>(i) + 1));
            gens.push_back(Word::single(-(static_cast<int>(i) + 1)));
        }
    } else {
        for (size_t i = 0; i < A.generators().size(); ++i)
            gens.push_back(Word::single(static_cast<int>(i)));
    }
    return gens;
}

}  // namespace

bool Report::all_ok() const {
    for (const auto& t : tasks)
        if (!t.ok) return false;
    return true;
}

bool Report::any_input_error() const {
    for (const auto& t : tasks)
        if (t.status == "error" && t.expected != "error") return true;
    return false;
}

std::string Report::text() const {
    std::string out;
    int ok_count = 0;
    for (const auto& t : tasks) {
        std::string line = t.ok ? "PASS " : "FAIL ";
        line += t.name;
        if (t.status != t.expected)
            line += " [got " + t.status + ", expected " + t.expected + "]";
        else if (t.expected != "pass")
            line += " [" + t.status + " as designed]";
        if (!t.detail.empty()) line += " -- " + t.detail;
        out += line + "\n";
        if (t.ok) ++ok_count;
    }
    out += "scenario " + scenario + ": " + std::to_string(ok_count) + "/" +
           std::to_string(tasks.size()) + " ok\n";
    return out;
}

std::string Report::json() const {
    nlohmann::json j;
    j["scenario"] = scenario;
    j["tasks"] = nlohmann::json::array();
    for (const auto& t : tasks) {
        nlohmann::json jt;
        jt["name"] = t.name;
        jt["status"] = t.status;
        jt["expected"] = t.expected;
        jt["ok"] = t.ok;
        jt["detail"] = t.detail;
        j["tasks"].push_back(std::move(jt));
    }
    return j.dump(2) + "\n";
}

std::string resolve_scenario_path(const std::string& path) {
    namespace fs = std::filesystem;
    if (fs::exists(path)) return path;
    if (const char* corpus = std::getenv("REPALG_CORPUS")) {
        const fs::path candidate = fs::path(corpus) / path;
        if (fs::exists(candidate)) return candidate.string();
        const fs::path with_ext = fs::path(corpus) / (path + ".json");
        if (fs::exists(with_ext)) return with_ext.string();
    }
    return path;
}

std::unique_ptr<Scenario> load_scenario_text(const std::string& text,
                                             const std::string& origin) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw input_error(origin + ": JSON parse error: " + std::string(e.what()));
    }
    try {
        auto sc = std::make_unique<Scenario>();
        sc->name = j.value("name", origin);
        sc->degree_bound = j.value("degree_bound", 4);
        sc->algebra = parse_algebra(j.at("algebra"), "algebra");
        auto cp = parse_coalgebra(j.at("coalgebra"));
        sc->coalgebra = std::move(cp.M);
        sc->coalgebra_group = std::move(cp.group);
        sc->frobenius_algebra = std::move(cp.basis_alg);
        sc->form_matrix = parse_form(j.at("form"), *sc, cp);
        sc->db = parse_double_bracket(j.at("double_bracket"), *sc);
        if (j.contains("group_action"))
            sc->action = parse_group_action(j.at("group_action"), *sc);
        const std::string variant = j.value("variant", "plain");
        sc->ctx = std::make_unique<RepContext>(*sc->algebra, *sc->coalgebra,
                                               parse_variant(variant), sc->action.get(),
                                               sc->degree_bound);
        if (j.contains("tasks"))
            for (const auto& tj : j.at("tasks")) {
                Scenario::Task t;
                if (tj.contains("check")) {
                    t.kind = "check";
                    t.name = tj.at("check").get<std::string>();
                } else if (tj.contains("suite")) {
                    t.kind = "suite";
                    t.name = tj.at("suite").get<std::string>();
                } else if (tj.contains("op")) {
                    t.kind = tj.at("op").get<std::string>();
                } else {
                    throw input_error("tasks: each task needs check, suite or op");
                }
                t.expect = tj.value("expect", "pass");
                for (const auto& [key, val] : tj.items()) {
                    if (key == "check" || key == "suite" || key == "op" ||
                        key == "expect")
                        continue;
                    if (val.is_string())
                        t.params[key] = val.get<std::string>();
                    else
                        t.params[key] = val.dump();
                }
                sc->tasks.push_back(std::move(t));
            }
        return sc;
    } catch (const json::exception& e) {
        throw input_error(origin + ": malformed scenario: " + std::string(e.what()));
    }
}

std::unique_ptr<Scenario> load_scenario(const std::string& path) {
    const std::string resolved = resolve_scenario_path(path);
    std::ifstream in(resolved);
    if (!in) throw input_error("cannot open scenario file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return load_scenario_text(ss.str(), resolved);
}

namespace {

std::string task_display_name(const Scenario::Task& t) {
    if (t.kind == "check") return "check:" + t.name;
    if (t.kind == "suite") return "suite:" + t.name;
    std::string out = t.kind + "(";
    bool first = true;
    for (const auto& [k, v] : t.params) {
        if (!first) out += ",";
        out += k + "=" + v;
        first = false;
    }
    return out + ")";
}

const std::string& param(const Scenario::Task& t, const std::string& key) {
    const auto it = t.params.find(key);
    if (it == t.params.end())
        throw input_error("task " + task_display_name(t) + " needs parameter '" + key +
                          "'");
    return it->second;
}

Verdict run_check(const Scenario& sc, const Scenario::Task& task,
                  unsigned long long seed) {
    const std::string& name = task.name;
    if (name == "coassoc") return Verdict::pass();  // verified at load
    if (name == "cyclic")
        return is_cyclic(sc.form()) ? Verdict::pass()
                                    : Verdict::fail("vhat does not commute with p21");
    if (name == "ci23")
        return holds_ci23(sc.form()) ? Verdict::pass() : Verdict::fail("(ci23) fails");
    if (name == "ci24")
        return holds_ci24(sc.form()) ? Verdict::pass() : Verdict::fail("(ci24) fails");
    if (name == "f11")
        return holds_f11(sc.form()) ? Verdict::pass() : Verdict::fail("(F11) fails");
    if (name == "f14")
        return holds_f14(sc.form()) ? Verdict::pass() : Verdict::fail("(F14) fails");
    if (name == "symmetric-form")
        return mat_equal(sc.form_matrix, mat_transpose(sc.form_matrix))
                   ? Verdict::pass()
                   : Verdict::fail("form matrix is not symmetric");
    if (name == "cyclic-structure")
        return is_cyclic_structure(ad_v(sc.form()))
                   ? Verdict::pass()
                   : Verdict::fail("(cycl1) fails on a basis pair");
    if (name == "adjoint") {
        const auto theta = adjoint_element(sc.form());
        if (!theta) return Verdict::fail("no adjoint element exists");
        if (!is_symmetric_element(*sc.coalgebra, *theta))
            return Verdict::fail("adjoint element is not symmetric");
        return Verdict::pass();
    }
    if (name == "gerstenhaber") {
        std::mt19937_64 rng(seed);
        return is_gerstenhaber(*sc.db, rng);
    }
    if (name == "quasi-poisson") return is_quasi_poisson(*sc.db);
    if (name == "moment") {
        const auto xi = parse_element(*sc.algebra, param(task, "xi"));
        const auto kind = param(task, "kind") == "multiplicative"
                              ? MomentKind::multiplicative
                              : MomentKind::additive;
        return is_moment_map(*sc.db, xi, kind);
    }
    if (name == "equivariant-db") {
        if (!sc.action) throw input_error("no group action loaded");
        return is_equivariant_db(*sc.db, *sc.action);
    }
    if (name == "equivariant-form") {
        if (!sc.action) throw input_error("no group action loaded");
        return is_equivariant_form(sc.form(), *sc.action)
                   ? Verdict::pass()
                   : Verdict::fail("v(g a (x) g b) != v(a (x) b) for some g");
    }
    throw input_error("unknown check '" + name + "'");
}

Verdict suite_jacobi_oracle(const Scenario& sc, int* count) {
    const auto setup = sc.setup();
    const RepContext& ctx = *sc.ctx;
    const auto gens = generator_words_of(*sc.algebra);
    const int rank = sc.coalgebra->rank();
    const int basis_cap = rank <= 4 ? rank : 3;
    for (const auto& a : gens)
        for (const auto& b : gens)
            for (const auto& c : gens)
                for (int alpha = 0; alpha < basis_cap; ++alpha)
                    for (int beta = 0; beta < basis_cap; ++beta)
                        for (int gamma = 0; gamma < basis_cap; ++gamma) {
                            const auto direct = setup.jacobi(
                                ctx.monomial({RepSymbol{a, alpha}}, Rational(1)),
                                ctx.monomial({RepSymbol{b, beta}}, Rational(1)),
                                ctx.monomial({RepSymbol{c, gamma}}, Rational(1)));
                            const auto oracle =
                                setup.jacobi_oracle_qr(a, b, c, alpha, beta, gamma);
                            ++*count;
                            if (!(direct == oracle))
                                return Verdict::fail(
                                    "jacobi_form differs from the Q-R oracle at (" +
                                    sc.algebra->word_str(a) + "[" +
                                    sc.coalgebra->label(alpha) + "]," +
                                    sc.algebra->word_str(b) + "[" +
                                    sc.coalgebra->label(beta) + "]," +
                                    sc.algebra->word_str(c) + "[" +
                                    sc.coalgebra->label(gamma) + "])");
                        }
    return Verdict::pass();
}

Verdict suite_jacobi_zero(const Scenario& sc) {
    const auto setup = sc.setup();
    const RepContext& ctx = *sc.ctx;
    const auto gens = generator_words_of(*sc.algebra);
    const int rank = sc.coalgebra->rank();
    const int basis_cap = rank <= 4 ? rank : 3;
    for (const auto& a : gens)
        for (const auto& b : gens)
            for (const auto& c : gens)
                for (int alpha = 0; alpha < basis_cap; ++alpha)
                    for (int beta = 0; beta < basis_cap; ++beta)
                        for (int gamma = 0; gamma < basis_cap; ++gamma) {
                            const auto direct = setup.jacobi(
                                ctx.monomial({RepSymbol{a, alpha}}, Rational(1)),
                                ctx.monomial({RepSymbol{b, beta}}, Rational(1)),
                                ctx.monomial({RepSymbol{c, gamma}}, Rational(1)));
                            if (!ctx.equal_mod_relations(direct, RepElement::zero()))
                                return Verdict::fail(
                                    "Jacobi form nonzero at a generator triple");
                        }
    return Verdict::pass();
}

Verdict suite_bracket_laws(const Scenario& sc, unsigned long long seed) {
    const auto setup = sc.setup();
    const RepContext& ctx = *sc.ctx;
    const int n = setup.n();
    std::mt19937_64 rng(seed);
    const auto gens = generator_words_of(*sc.algebra);
    std::uniform_int_distribution<size_t> pick(0, gens.size() - 1);
    std::uniform_int_distribution<int> mi(0, sc.coalgebra->rank() - 1);
    std::uniform_int_distribution<int> len(1, 2);
    const auto random_monomial = [&]() {
        std::vector<RepSymbol> syms;
        const int l = len(rng);
        for (int i = 0; i < l; ++i) syms.push_back(RepSymbol{gens[pick(rng)], mi(rng)});
        return ctx.monomial(syms, Rational(1));
    };
    for (int t = 0; t < 24; ++t) {
        const auto x = random_monomial();
        const auto y = random_monomial();
        const auto z = random_monomial();
        if (x.is_zero() || y.is_zero() || z.is_zero()) continue;
        const int dx = ctx.monomial_degree(x.terms.begin()->first);
        const int dy = ctx.monomial_degree(y.terms.begin()->first);
        RepElement anti = setup.bracket(x, y);
        RepElement yx = setup.bracket(y, x);
        const long s = (static_cast<long>(dx) + n) * (dy + n);
        anti += (s % 2 != 0) ? yx.scaled(Rational(-1)) : yx;
        if (!ctx.equal_mod_relations(anti, RepElement::zero()))
            return Verdict::fail("antisymmetry fails on a sampled pair");
        RepElement lhs = setup.bracket(x, ctx.multiply(y, z));
        RepElement rhs = ctx.multiply(setup.bracket(x, y), z);
        RepElement second = ctx.multiply(y, setup.bracket(x, z));
        const long s2 = (static_cast<long>(dx) + n) * dy;
        rhs += (s2 % 2 != 0) ? second.scaled(Rational(-1)) : second;
        if (!ctx.equal_mod_relations(lhs, rhs))
            return Verdict::fail("the Leibniz rule fails on a sampled triple");
    }
    return Verdict::pass();
}

Verdict suite_invariance(const Scenario& sc, unsigned long long seed, int* u_count) {
    const auto setup = sc.setup();
    const Coalgebra& M = *sc.coalgebra;
    if (!M.counit()) throw input_error("invariance suite needs a counital coalgebra");
    for (int p = 0; p < M.rank(); ++p) {
        Vec phi(M.rank(), Rational(0));
        phi[p] = Rational(1);
        const auto v = verify_coderivation_invariance(setup, phi);
        if (!v.ok) return v;
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> c(-2, 2);
    int found = 0;
    for (int attempt = 0; attempt < 500 && found < 5; ++attempt) {
        Vec u(M.rank());
        for (auto& x : u) x = Rational(c(rng));
        if (!dual_inverse(M, DualAlgebraElement{u})) continue;
        ++found;
        const Mat act = inner_automorphism(M, DualAlgebraElement{u});
        if (!mat_equal(form_pullback(sc.form(), act).matrix, sc.form_matrix))
            return Verdict::fail("v^u != v for an invertible u");
        const auto v = verify_aut_invariance(setup, act);
        if (!v.ok) return v;
    }
    *u_count = found;
    if (found < 5)
        return Verdict::fail("could not sample 5 invertible elements of M*");
    return Verdict::pass();
}

Verdict suite_trace_compat(const Scenario& sc, const Scenario::Task& task) {
    const auto setup = sc.setup();
    Vec theta;
    const auto it = task.params.find("theta");
    if (it != task.params.end()) {
        std::stringstream ss(it->second);
        std::string tok;
        while (std::getline(ss, tok, ',')) theta.push_back(Rational::parse(tok));
    } else {
        const auto adj = adjoint_element(sc.form());
        if (!adj) throw input_error("the form has no adjoint element");
        theta = *adj;
    }
    return verify_trace_compat(setup, theta);
}

Verdict suite_moment(const Scenario& sc, const Scenario::Task& task) {
    const auto setup = sc.setup();
    const RepContext& ctx = *sc.ctx;
    const auto xi = parse_element(*sc.algebra, param(task, "xi"));
    const Rational k = Rational::parse(param(task, "k"));
    std::vector<RepElement> xs = {RepElement::unit()};
    const auto gens = generator_words_of(*sc.algebra);
    for (const auto& g : gens)
        for (int m = 0; m < sc.coalgebra->rank(); ++m) {
            xs.push_back(ctx.monomial({RepSymbol{g, m}}, Rational(1)));
            for (const auto& g2 : gens)
                for (int m2 = 0; m2 < sc.coalgebra->rank(); ++m2) {
                    const auto mono =
                        ctx.monomial({RepSymbol{g, m}, RepSymbol{g2, m2}}, Rational(1));
                    if (!mono.is_zero()) xs.push_back(mono);
                }
        }
    for (const auto& x : xs) {
        const auto v = moment_bracket_identity(setup, xi, k, x);
        if (!v.ok) return v;
    }
    return Verdict::pass();
}

ReductionData build_reduction(const Scenario& sc, const Scenario::Task& task,
                              std::unique_ptr<RepContext>& bctx_holder) {
    const AlgebraPresentation& A = *sc.algebra;
    bctx_holder = std::make_unique<RepContext>(A, *sc.coalgebra, sc.ctx->variant(),
                                               sc.action.get(), sc.degree_bound);
    ReductionData red;
    red.quotient_ctx = bctx_holder.get();
    MomentSpecEntry entry;
    entry.xi = parse_element(A, param(task, "xi"));
    entry.k = Rational::parse(param(task, "k"));
    for (const auto& g : A.generators()) {
        const auto it = task.params.find("subst_" + g.name);
        if (it == task.params.end())
            entry.generator_images.push_back(
                AlgebraElement::of_word(A.parse_word(g.name)));
        else
            entry.generator_images.push_back(parse_element(A, it->second));
    }
    red.moments.push_back(std::move(entry));
    return red;
}

Verdict suite_hamiltonian_reduction(const Scenario& sc, const Scenario::Task& task) {
    const auto setup = sc.setup();
    const RepContext& ctx = *sc.ctx;
    const auto adj = adjoint_element(sc.form());
    if (!adj) throw input_error("the form has no adjoint element");
    std::unique_ptr<RepContext> bctx;
    const ReductionData red = build_reduction(sc, task, bctx);
    std::vector<RepElement> e_samples = {RepElement::unit()};
    for (const auto& g : generator_words_of(*sc.algebra))
        e_samples.push_back(ctx.trace(*adj, AlgebraElement::of_word(g)));
    std::vector<RepElement> ej_samples = {ctx.trace(*adj, red.moments[0].xi)};
    ej_samples.push_back(ctx.multiply(ej_samples[0], e_samples[1]));
    return hamiltonian_reduction_check(setup, red, e_samples, ej_samples);
}

Verdict suite_quasi_jacobi(const Scenario& sc, int* count) {
    const auto setup = sc.setup();
    const RepContext& ctx = *sc.ctx;
    const auto adj = adjoint_element(sc.form());
    if (!adj) throw input_error("the form has no adjoint element");
    const auto q = is_quasi_poisson(*sc.db);
    if (!q.ok)
        return Verdict::fail("the double bracket is not quasi-Poisson: " + q.witness);
    std::vector<RepElement> invariants = {RepElement::unit()};
    std::vector<AlgebraElement> words;
    const auto gens = generator_words_of(*sc.algebra);
    for (const auto& g : gens) words.push_back(AlgebraElement::of_word(g));
    words.push_back(sc.algebra->multiply(words[0], words[0]));
    for (const auto& w : words) invariants.push_back(ctx.trace(*adj, w));
    invariants.push_back(
        ctx.multiply(ctx.trace(*adj, words[0]), ctx.trace(*adj, words[0])));
    for (const auto& x : invariants) {
        int m1 = 0;
        for (const auto& g : gens)
            for (const auto& h : gens) {
                const auto y =
                    ctx.monomial({RepSymbol{g, m1 % sc.coalgebra->rank()}}, Rational(1));
                const auto z = ctx.monomial(
                    {RepSymbol{h, (m1 + 1) % sc.coalgebra->rank()}}, Rational(1));
                ++m1;
                const auto v = quasi_jacobi_on_invariants(setup, x, y, z);
                ++*count;
                if (!v.ok) return v;
            }
    }
    return Verdict::pass();
}

Verdict suite_equivariant(const Scenario& sc) {
    const auto setup = sc.setup();
    const auto rep = equivariant_representative_check(setup);
    if (!rep.ok) return rep;
    return equivariant_ell_identity(setup);
}

Verdict suite_equivariant_reduction(const Scenario& sc, const Scenario::Task& task) {
    const auto setup = sc.setup();
    const RepContext& ctx = *sc.ctx;
    const auto xi = parse_element(*sc.algebra, param(task, "xi"));
    const Rational k = Rational::parse(param(task, "k"));
    std::vector<RepElement> samples;
    for (const auto& g : generator_words_of(*sc.algebra))
        for (int m = 0; m < sc.coalgebra->rank(); ++m)
            samples.push_back(ctx.monomial({RepSymbol{g, m}}, Rational(1)));
    return equivariant_reduction_check(setup, xi, k, samples);
}

Verdict suite_equivariant_quasi(const Scenario& sc) {
    const auto setup = sc.setup();
    const RepContext& ctx = *sc.ctx;
    const auto adj = adjoint_element(sc.form());
    if (!adj) throw input_error("the form has no adjoint element");
    const auto gens = generator_words_of(*sc.algebra);
    int done = 0;
    for (const auto& g : gens) {
        const auto x =
            ctx.equivariant_project(ctx.trace(*adj, AlgebraElement::of_word(g)));
        for (const auto& h : gens) {
            const auto y = ctx.monomial({RepSymbol{h, 0}}, Rational(1));
            const auto z =
                ctx.monomial({RepSymbol{h, sc.coalgebra->rank() - 1}}, Rational(1));
            const auto v = equivariant_quasi_check(setup, x, y, z);
            if (!v.ok) return v;
            if (++done >= 6) return Verdict::pass();
        }
    }
    return Verdict::pass();
}

Verdict run_suite(const Scenario& sc, const Scenario::Task& task,
                  unsigned long long seed, std::string* detail) {
    const std::string& name = task.name;
    if (name == "jacobi-oracle") {
        int count = 0;
        const auto v = suite_jacobi_oracle(sc, &count);
        *detail = std::to_string(count) + " triples checked";
        return v;
    }
    if (name == "jacobi-zero") return suite_jacobi_zero(sc);
    if (name == "bracket-laws") return suite_bracket_laws(sc, seed);
    if (name == "invariance") {
        int u_count = 0;
        const auto v = suite_invariance(sc, seed, &u_count);
        if (v.ok) *detail = std::to_string(u_count) + " invertible elements sampled";
        return v;
    }
    if (name == "trace-compat") return suite_trace_compat(sc, task);
    if (name == "moment") return suite_moment(sc, task);
    if (name == "hamiltonian-reduction") return suite_hamiltonian_reduction(sc, task);
    if (name == "quasi-jacobi") {
        int count = 0;
        const auto v = suite_quasi_jacobi(sc, &count);
        if (v.ok) *detail = std::to_string(count) + " triples checked";
        return v;
    }
    if (name == "equivariant") return suite_equivariant(sc);
    if (name == "equivariant-reduction") return suite_equivariant_reduction(sc, task);
    if (name == "equivariant-quasi") return suite_equivariant_quasi(sc);
    throw input_error("unknown suite '" + name + "'");
}

}  // namespace

TaskResult run_task(const Scenario& sc, const Scenario::Task& task,
                    unsigned long long seed) {
    TaskResult r;
    r.name = task_display_name(task);
    r.expected = task.expect;
    try {
        if (task.kind == "check") {
            const auto v = run_check(sc, task, seed);
            r.status = v.ok ? "pass" : "fail";
            r.detail = v.witness;
        } else if (task.kind == "suite") {
            std::string detail;
            const auto v = run_suite(sc, task, seed, &detail);
            r.status = v.ok ? "pass" : "fail";
            r.detail = v.ok ? detail : v.witness;
        } else if (task.kind == "bracket") {
            const auto setup = sc.setup();
            const RepContext& ctx = *sc.ctx;
            const auto a = parse_element(*sc.algebra, param(task, "a"));
            const auto b = parse_element(*sc.algebra, param(task, "b"));
            const int alpha = sc.coalgebra->label_index(param(task, "alpha"));
            const int beta = sc.coalgebra->label_index(param(task, "beta"));
            Vec ea(sc.coalgebra->rank(), Rational(0));
            Vec eb(sc.coalgebra->rank(), Rational(0));
            ea[alpha] = Rational(1);
            eb[beta] = Rational(1);
            const auto out = setup.bracket(ctx.realize(a, ea), ctx.realize(b, eb));
            r.status = "pass";
            r.detail = ctx.str(out);
        } else if (task.kind == "jacobi") {
            const auto setup = sc.setup();
            const RepContext& ctx = *sc.ctx;
            const auto a = sc.algebra->parse_word(param(task, "a"));
            const auto b = sc.algebra->parse_word(param(task, "b"));
            const auto c = sc.algebra->parse_word(param(task, "c"));
            const int alpha = sc.coalgebra->label_index(param(task, "alpha"));
            const int beta = sc.coalgebra->label_index(param(task, "beta"));
            const int gamma = sc.coalgebra->label_index(param(task, "gamma"));
            const auto direct =
                setup.jacobi(ctx.monomial({RepSymbol{a, alpha}}, Rational(1)),
                             ctx.monomial({RepSymbol{b, beta}}, Rational(1)),
                             ctx.monomial({RepSymbol{c, gamma}}, Rational(1)));
            const auto oracle = setup.jacobi_oracle_qr(a, b, c, alpha, beta, gamma);
            if (direct == oracle) {
                r.status = "pass";
                r.detail = ctx.str(direct);
            } else {
                r.status = "fail";
                r.detail = "jacobi_form and the Q-R oracle disagree";
            }
        } else {
            throw input_error("unknown task kind '" + task.kind + "'");
        }
    } catch (const input_error& e) {
        r.status = "error";
        r.detail = e.what();
    } catch (const domain_error& e) {
        r.status = "error";
        r.detail = e.what();
    }
    r.ok = r.status == r.expected;
    return r;
}

Report run_scenario(const Scenario& sc, const std::string& filter,
                    unsigned long long seed) {
    Report report;
    report.scenario = sc.name;
    for (const auto& task : sc.tasks) {
        const std::string display = task_display_name(task);
        if (!filter.empty() && display.find(filter) == std::string::npos) continue;
        report.tasks.push_back(run_task(sc, task, seed));
    }
    return report;
}

}  // namespace repalg
