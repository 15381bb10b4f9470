#pragma once

#include <map>
#include <string>
#include <vector>

#include "repalg/errors.hpp"
#include "repalg/rational.hpp"

namespace repalg {

// Permutation in one-line image form, 0-based: applying p to a pure tensor
// puts the input factor p[j] into output slot j. With this convention
// p_{21} = {1,0} is the flip and p_{312} = {2,0,1} sends a⊗b⊗c to c⊗a⊗b.
using Perm = std::vector<int>;

inline Perm perm_inverse(const Perm& p) {
    Perm inv(p.size());
    for (int j = 0; j < static_cast<int>(p.size()); ++j) inv[p[j]] = j;
    return inv;
}

// apply(compose(p,q), t) == apply(p, apply(q, t))
inline Perm perm_compose(const Perm& p, const Perm& q) {
    Perm r(p.size());
    for (int j = 0; j < static_cast<int>(p.size()); ++j) r[j] = q[p[j]];
    return r;
}

// Finitely supported element of an m-fold tensor power. Keys are per-factor
// basis labels; no zero coefficient is ever stored.
template <typename Key>
struct Tensor {
    int arity = 0;
    std::map<std::vector<Key>, Rational> terms;

    Tensor() = default;
    explicit Tensor(int m) : arity(m) {
        if (m < 1) throw input_error("tensor arity must be positive");
    }

    bool is_zero() const { return terms.empty(); }

    void add(const std::vector<Key>& key, const Rational& c) {
        if (static_cast<int>(key.size()) != arity)
            throw input_error("tensor key arity mismatch");
        if (c.is_zero()) return;
        auto it = terms.find(key);
        if (it == terms.end()) {
            terms.emplace(key, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms.erase(it);
        }
    }

    Tensor& operator+=(const Tensor& o) {
        if (o.arity != arity) throw input_error("tensor arity mismatch in sum");
        for (const auto& [k, c] : o.terms) add(k, c);
        return *this;
    }

    Tensor operator+(const Tensor& o) const {
        Tensor r = *this;
        r += o;
        return r;
    }

    Tensor operator-(const Tensor& o) const {
        Tensor r = *this;
        for (const auto& [k, c] : o.terms) r.add(k, -c);
        return r;
    }

    Tensor scaled(const Rational& c) const {
        Tensor r(arity);
        if (c.is_zero()) return r;
        for (const auto& [k, v] : terms) r.terms.emplace(k, v * c);
        return r;
    }

    bool operator==(const Tensor& o) const {
        return arity == o.arity && terms == o.terms;
    }
};

// Coordinate shuffle with no signs.
template <typename Key>
Tensor<Key> plain_permute(const Perm& perm, const Tensor<Key>& t) {
    if (static_cast<int>(perm.size()) != t.arity)
        throw input_error("permutation length does not match tensor arity");
    Tensor<Key> r(t.arity);
    std::vector<Key> nk(t.arity);
    for (const auto& [k, c] : t.terms) {
        for (int j = 0; j < t.arity; ++j) nk[j] = k[perm[j]];
        r.add(nk, c);
    }
    return r;
}

// n-graded permutation: each pure term picks up (-1)^t with
// t = sum of |a_{i_k}|_n * |a_{i_l}|_n over output pairs k < l with i_k > i_l,
// where |a|_n = |a| + n. DegreeFn maps a factor key to its degree.
template <typename Key, typename DegreeFn>
Tensor<Key> graded_permute(const Perm& perm, int n, const Tensor<Key>& t,
                           DegreeFn&& degree_of) {
    if (static_cast<int>(perm.size()) != t.arity)
        throw input_error("permutation length does not match tensor arity");
    Tensor<Key> r(t.arity);
    std::vector<Key> nk(t.arity);
    std::vector<long> dn(t.arity);
    for (const auto& [k, c] : t.terms) {
        for (int j = 0; j < t.arity; ++j) {
            nk[j] = k[perm[j]];
            dn[j] = static_cast<long>(degree_of(k[j])) + n;
        }
        long exponent = 0;
        for (int a = 0; a < t.arity; ++a)
            for (int b = a + 1; b < t.arity; ++b)
                if (perm[a] > perm[b]) exponent += dn[perm[a]] * dn[perm[b]];
        r.add(nk, (exponent % 2 != 0) ? -c : c);
    }
    return r;
}

}  // namespace repalg
