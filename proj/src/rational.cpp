#include "repalg/rational.hpp"

#include <ostream>

namespace repalg {

Rational Rational::parse(const std::string& text) {
    if (text.empty()) throw input_error("empty rational literal");
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            mpq_class q(mpz_class(text), 1);
            return Rational(std::move(q));
        }
        const std::string num = text.substr(0, slash);
        const std::string den = text.substr(slash + 1);
        if (num.empty() || den.empty())
            throw input_error("malformed rational literal '" + text + "'");
        mpz_class d(den);
        if (d == 0) throw input_error("zero denominator in '" + text + "'");
        mpq_class q(mpz_class(num), d);
        q.canonicalize();
        return Rational(std::move(q));
    } catch (const std::invalid_argument&) {
        throw input_error("malformed rational literal '" + text + "'");
    }
}

std::string Rational::str() const {
    if (is_integer()) return numerator_string();
    return numerator_string() + "/" + denominator_string();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.str();
}

}  // namespace repalg
