#include "repalg/algebra.hpp"

#include <algorithm>
#include <sstream>

#include "repalg/errors.hpp"

namespace repalg {

void AlgebraElement::add(const Word& w, const Rational& c) {
    if (c.is_zero()) return;
    auto it = terms.find(w);
    if (it == terms.end()) {
        terms.emplace(w, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms.erase(it);
    }
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& o) {
    for (const auto& [w, c] : o.terms) add(w, c);
    return *this;
}

AlgebraElement AlgebraElement::operator+(const AlgebraElement& o) const {
    AlgebraElement r = *this;
    r += o;
    return r;
}

AlgebraElement AlgebraElement::operator-(const AlgebraElement& o) const {
    AlgebraElement r = *this;
    for (const auto& [w, c] : o.terms) r.add(w, -c);
    return r;
}

AlgebraElement AlgebraElement::scaled(const Rational& c) const {
    AlgebraElement r;
    if (c.is_zero()) return r;
    for (const auto& [w, v] : terms) r.terms.emplace(w, v * c);
    return r;
}

AlgebraElement AlgebraElement::of_word(const Word& w, Rational c) {
    AlgebraElement r;
    r.add(w, c);
    return r;
}

AlgebraPresentation AlgebraPresentation::make_free(std::vector<Generator> gens,
                                                   bool unital) {
    AlgebraPresentation p;
    p.kind_ = AlgebraKind::free_algebra;
    p.unital_ = unital;
    p.generators_ = std::move(gens);
    return p;
}

AlgebraPresentation AlgebraPresentation::make_free_group(
    std::vector<std::string> names) {
    AlgebraPresentation p;
    p.kind_ = AlgebraKind::free_group;
    p.unital_ = true;
    for (auto& n : names) p.generators_.push_back({std::move(n), 0});
    return p;
}

AlgebraPresentation AlgebraPresentation::make_finite_group(
    std::vector<std::string> names, std::vector<std::vector<int>> table) {
    const int n = static_cast<int>(names.size());
    if (static_cast<int>(table.size()) != n)
        throw input_error("group table size does not match element count");
    for (const auto& row : table) {
        if (static_cast<int>(row.size()) != n)
            throw input_error("group table is not square");
        for (int v : row)
            if (v < 0 || v >= n) throw input_error("group table entry out of range");
    }
    int neutral = -1;
    for (int e = 0; e < n; ++e) {
        bool ok = true;
        for (int g = 0; g < n; ++g)
            if (table[e][g] != g || table[g][e] != g) { ok = false; break; }
        if (ok) { neutral = e; break; }
    }
    if (neutral < 0) throw input_error("group table has no two-sided neutral element");
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (table[table[a][b]][c] != table[a][table[b][c]])
                    throw input_error("group table is not associative at (" +
                                      names[a] + "," + names[b] + "," + names[c] + ")");
    for (int g = 0; g < n; ++g) {
        bool has_inverse = false;
        for (int h = 0; h < n; ++h)
            if (table[g][h] == neutral && table[h][g] == neutral) has_inverse = true;
        if (!has_inverse)
            throw input_error("group element " + names[g] + " has no inverse");
    }
    AlgebraPresentation p;
    p.kind_ = AlgebraKind::finite_group;
    p.unital_ = true;
    for (auto& nm : names) p.generators_.push_back({std::move(nm), 0});
    p.table_ = std::move(table);
    p.neutral_ = neutral;
    return p;
}

AlgebraPresentation AlgebraPresentation::make_structure_constants(
    std::vector<std::string> names,
    std::vector<std::vector<std::vector<std::pair<int, Rational>>>> products,
    std::optional<Vec> unit_coords) {
    const int n = static_cast<int>(names.size());
    if (static_cast<int>(products.size()) != n)
        throw input_error("structure constants size does not match basis");
    AlgebraPresentation p;
    p.kind_ = AlgebraKind::structure_constants;
    p.unital_ = unit_coords.has_value();
    for (auto& nm : names) p.generators_.push_back({std::move(nm), 0});
    p.sc_ = std::move(products);
    p.sc_unit_ = std::move(unit_coords);
    for (auto& row : p.sc_) {
        if (static_cast<int>(row.size()) != n)
            throw input_error("structure constants table is not square");
        for (auto& cell : row)
            for (auto& [idx, c] : cell)
                if (idx < 0 || idx >= n)
                    throw input_error("structure constant index out of range");
    }
    // Associativity over all basis triples.
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                const auto lhs = p.multiply(
                    p.word_product(Word::single(a), Word::single(b)),
                    AlgebraElement::of_word(Word::single(c)));
                const auto rhs = p.multiply(
                    AlgebraElement::of_word(Word::single(a)),
                    p.word_product(Word::single(b), Word::single(c)));
                if (!(lhs == rhs))
                    throw input_error("structure constants not associative at (" +
                                      p.generators_[a].name + "," + p.generators_[b].name +
                                      "," + p.generators_[c].name + ")");
            }
    if (p.sc_unit_) {
        if (static_cast<int>(p.sc_unit_->size()) != n)
            throw input_error("unit coordinates size mismatch");
        AlgebraElement unit;
        for (int i = 0; i < n; ++i) unit.add(Word::single(i), (*p.sc_unit_)[i]);
        for (int a = 0; a < n; ++a) {
            const auto ea = AlgebraElement::of_word(Word::single(a));
            if (!(p.multiply(unit, ea) == ea) || !(p.multiply(ea, unit) == ea))
                throw input_error("declared unit is not a two-sided unit");
        }
    }
    return p;
}

int AlgebraPresentation::generator_index(const std::string& name) const {
    for (size_t i = 0; i < generators_.size(); ++i)
        if (generators_[i].name == name) return static_cast<int>(i);
    throw input_error("unknown generator '" + name + "'");
}

int AlgebraPresentation::word_degree(const Word& w) const {
    if (kind_ == AlgebraKind::free_algebra) {
        int d = 0;
        for (int l : w.letters) d += generators_[l].degree;
        return d;
    }
    return 0;  // group-likes and structure-constant bases are degree 0
}

bool AlgebraPresentation::valid_word(const Word& w) const {
    const int n = static_cast<int>(generators_.size());
    switch (kind_) {
        case AlgebraKind::free_algebra:
            if (w.empty() && !unital_) return false;
            for (int l : w.letters)
                if (l < 0 || l >= n) return false;
            return true;
        case AlgebraKind::free_group:
            for (size_t i = 0; i < w.letters.size(); ++i) {
                const int l = w.letters[i];
                if (l == 0 || l > n || l < -n) return false;
                if (i + 1 < w.letters.size() && w.letters[i + 1] == -l) return false;
            }
            return true;
        case AlgebraKind::finite_group:
        case AlgebraKind::structure_constants:
            return w.length() == 1 && w.letters[0] >= 0 && w.letters[0] < n;
    }
    return false;
}

Word AlgebraPresentation::neutral_word() const {
    switch (kind_) {
        case AlgebraKind::free_algebra:
            if (!unital_) throw input_error("non-unital free algebra has no unit word");
            return Word();
        case AlgebraKind::free_group:
            return Word();
        case AlgebraKind::finite_group:
            return Word::single(neutral_);
        case AlgebraKind::structure_constants:
            throw input_error("structure-constant unit is a combination, not a word");
    }
    throw input_error("unreachable");
}

bool AlgebraPresentation::is_neutral_word(const Word& w) const {
    switch (kind_) {
        case AlgebraKind::free_algebra:
        case AlgebraKind::free_group:
            return w.empty();
        case AlgebraKind::finite_group:
            return w.length() == 1 && w.letters[0] == neutral_;
        case AlgebraKind::structure_constants:
            return false;
    }
    return false;
}

int AlgebraPresentation::group_inverse(int g) const {
    const int n = group_order();
    for (int h = 0; h < n; ++h)
        if (table_[g][h] == neutral_) return h;
    throw input_error("group element has no inverse");
}

Word AlgebraPresentation::reduce_group_word(std::vector<int> letters) const {
    std::vector<int> out;
    for (int l : letters) {
        if (!out.empty() && out.back() == -l)
            out.pop_back();
        else
            out.push_back(l);
    }
    return Word(std::move(out));
}

AlgebraElement AlgebraPresentation::word_product(const Word& u, const Word& w) const {
    switch (kind_) {
        case AlgebraKind::free_algebra: {
            std::vector<int> ls = u.letters;
            ls.insert(ls.end(), w.letters.begin(), w.letters.end());
            return AlgebraElement::of_word(Word(std::move(ls)));
        }
        case AlgebraKind::free_group: {
            std::vector<int> ls = u.letters;
            ls.insert(ls.end(), w.letters.begin(), w.letters.end());
            return AlgebraElement::of_word(reduce_group_word(std::move(ls)));
        }
        case AlgebraKind::finite_group:
            return AlgebraElement::of_word(
                Word::single(table_[u.letters[0]][w.letters[0]]));
        case AlgebraKind::structure_constants: {
            AlgebraElement r;
            for (const auto& [idx, c] : sc_[u.letters[0]][w.letters[0]])
                r.add(Word::single(idx), c);
            return r;
        }
    }
    throw input_error("unreachable");
}

AlgebraElement AlgebraPresentation::multiply(const AlgebraElement& x,
                                             const AlgebraElement& y) const {
    AlgebraElement r;
    for (const auto& [u, cu] : x.terms)
        for (const auto& [w, cw] : y.terms)
            r += word_product(u, w).scaled(cu * cw);
    return r;
}

Word AlgebraPresentation::parse_word(const std::string& text) const {
    if (text == "1") {
        if (kind_ == AlgebraKind::structure_constants) {
            // Accept "1" only when it literally names a basis element.
            for (size_t i = 0; i < generators_.size(); ++i)
                if (generators_[i].name == "1") return Word::single(static_cast<int>(i));
            throw input_error("'1' does not name a basis element");
        }
        return neutral_word();
    }
    // Split on '*' when present; otherwise greedy longest-name match.
    std::vector<std::string> parts;
    if (text.find('*') != std::string::npos) {
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, '*'))
            if (!item.empty()) parts.push_back(item);
    } else {
        size_t pos = 0;
        while (pos < text.size()) {
            size_t best = 0;
            for (const auto& g : generators_)
                if (text.compare(pos, g.name.size(), g.name) == 0)
                    best = std::max(best, g.name.size());
            if (best == 0)
                throw input_error("cannot parse word '" + text + "' at offset " +
                                  std::to_string(pos));
            size_t take = best;
            // Attach an exponent suffix like ^-2 or ^3 to this letter.
            if (pos + take < text.size() && text[pos + take] == '^') {
                size_t end = pos + take + 1;
                if (end < text.size() && (text[end] == '-' || text[end] == '+')) ++end;
                while (end < text.size() && isdigit(static_cast<unsigned char>(text[end])))
                    ++end;
                take = end - pos;
            }
            parts.push_back(text.substr(pos, take));
            pos += take;
        }
    }
    std::vector<int> letters;
    for (const auto& part : parts) {
        std::string base = part;
        long exp = 1;
        const auto caret = part.find('^');
        if (caret != std::string::npos) {
            base = part.substr(0, caret);
            exp = std::stol(part.substr(caret + 1));
        }
        const int gi = generator_index(base);
        switch (kind_) {
            case AlgebraKind::free_algebra:
                if (exp < 0) throw input_error("negative exponent in free algebra word");
                for (long k = 0; k < exp; ++k) letters.push_back(gi);
                break;
            case AlgebraKind::free_group:
                for (long k = 0; k < std::abs(exp); ++k)
                    letters.push_back(exp >= 0 ? gi + 1 : -(gi + 1));
                break;
            case AlgebraKind::finite_group:
            case AlgebraKind::structure_constants:
                if (exp != 1)
                    throw input_error("exponents are not supported for basis words");
                letters.push_back(gi);
                break;
        }
    }
    Word w = kind_ == AlgebraKind::free_group ? reduce_group_word(std::move(letters))
                                              : Word(std::move(letters));
    if (kind_ == AlgebraKind::finite_group && w.length() > 1) {
        int acc = w.letters[0];
        for (size_t i = 1; i < w.letters.size(); ++i) acc = table_[acc][w.letters[i]];
        w = Word::single(acc);
    }
    if (!valid_word(w)) throw input_error("invalid word '" + text + "'");
    return w;
}

std::string AlgebraPresentation::word_str(const Word& w) const {
    if (w.empty()) return "1";
    std::string out;
    if (kind_ == AlgebraKind::free_group) {
        for (size_t i = 0; i < w.letters.size();) {
            const int l = w.letters[i];
            size_t j = i;
            while (j < w.letters.size() && w.letters[j] == l) ++j;
            const long run = static_cast<long>(j - i);
            const int gi = std::abs(l) - 1;
            if (!out.empty()) out += "*";
            out += generators_[gi].name;
            const long exp = l > 0 ? run : -run;
            if (exp != 1) out += "^" + std::to_string(exp);
            i = j;
        }
        return out;
    }
    for (size_t i = 0; i < w.letters.size(); ++i) {
        if (i) out += "*";
        out += generators_[w.letters[i]].name;
    }
    return out;
}

std::string AlgebraPresentation::element_str(const AlgebraElement& x) const {
    if (x.is_zero()) return "0";
    std::string out;
    for (const auto& [w, c] : x.terms) {
        if (!out.empty()) out += " + ";
        if (c.is_one())
            out += word_str(w);
        else
            out += c.str() + "*" + word_str(w);
    }
    return out;
}

std::vector<Word> AlgebraPresentation::enumerate_words(int max_len) const {
    std::vector<Word> out;
    switch (kind_) {
        case AlgebraKind::finite_group:
        case AlgebraKind::structure_constants:
            for (size_t i = 0; i < generators_.size(); ++i)
                out.push_back(Word::single(static_cast<int>(i)));
            return out;
        case AlgebraKind::free_algebra: {
            std::vector<Word> layer = {Word()};
            if (unital_) out.push_back(Word());
            for (int len = 1; len <= max_len; ++len) {
                std::vector<Word> next;
                for (const auto& w : layer)
                    for (size_t g = 0; g < generators_.size(); ++g) {
                        Word nw = w;
                        nw.letters.push_back(static_cast<int>(g));
                        next.push_back(nw);
                    }
                for (const auto& w : next) out.push_back(w);
                layer = std::move(next);
            }
            return out;
        }
        case AlgebraKind::free_group: {
            std::vector<Word> layer = {Word()};
            out.push_back(Word());
            for (int len = 1; len <= max_len; ++len) {
                std::vector<Word> next;
                for (const auto& w : layer)
                    for (size_t g = 0; g < generators_.size(); ++g)
                        for (int s : {1, -1}) {
                            const int letter = s * (static_cast<int>(g) + 1);
                            if (!w.letters.empty() && w.letters.back() == -letter)
                                continue;
                            Word nw = w;
                            nw.letters.push_back(letter);
                            next.push_back(nw);
                        }
                for (const auto& w : next) out.push_back(w);
                layer = std::move(next);
            }
            return out;
        }
    }
    return out;
}

bool check_class_equal(const AlgebraPresentation& pres, const AlgebraElement& x,
                       const AlgebraElement& y, int degree_bound) {
    const AlgebraElement diff = x - y;
    if (diff.is_zero()) return true;
    if (degree_bound < 0) throw input_error("negative degree bound");
    for (const auto& [w, c] : diff.terms)
        if (w.length() > degree_bound &&
            (pres.kind() == AlgebraKind::free_algebra ||
             pres.kind() == AlgebraKind::free_group))
            throw input_error("support exceeds the degree bound");

    // Column index per word, assigned on first sight.
    std::map<Word, int> columns;
    const auto column = [&columns](const Word& w) {
        auto it = columns.find(w);
        if (it != columns.end()) return it->second;
        const int idx = static_cast<int>(columns.size());
        columns.emplace(w, idx);
        return idx;
    };
    const auto to_row = [&column](const AlgebraElement& e) {
        RowSpace::SparseRow row;
        for (const auto& [w, c] : e.terms) row[column(w)] = c;
        return row;
    };

    RowSpace span;
    const auto words = pres.enumerate_words(degree_bound);
    for (const auto& u : words)
        for (const auto& v : words) {
            if (u.length() + v.length() > degree_bound &&
                (pres.kind() == AlgebraKind::free_algebra ||
                 pres.kind() == AlgebraKind::free_group))
                continue;
            const long sign = static_cast<long>(pres.word_degree(u)) *
                              static_cast<long>(pres.word_degree(v));
            AlgebraElement comm = pres.word_product(u, v);
            const auto vu = pres.word_product(v, u);
            comm += vu.scaled(sign % 2 != 0 ? Rational(1) : Rational(-1));
            if (!comm.is_zero()) span.insert(to_row(comm));
        }
    return span.contains(to_row(diff));
}

}  // namespace repalg
