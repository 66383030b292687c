#pragma once

#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "qpg/errors.hpp"
#include "qpg/partitions.hpp"

namespace qpg {

/// Formal Z-linear combination of words over Z_s, the underlying module of
/// the free fusion ring R_s. Keys are letter sequences; all words in one
/// element share the modulus.
struct FusionElement {
    int modulus = 1;
    std::map<std::vector<int>, long long> terms;

    void add(const std::vector<int>& w, long long c) {
        if (c == 0) return;
        auto [it, fresh] = terms.emplace(w, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) terms.erase(it);
        }
    }

    friend bool operator==(const FusionElement& a, const FusionElement& b) {
        return a.modulus == b.modulus && a.terms == b.terms;
    }
};

/// Involution: reverse the word and negate each letter mod s.
inline ColoredWord involute(const ColoredWord& w) {
    std::vector<int> l(w.letters.rbegin(), w.letters.rend());
    for (int& x : l) x = (w.modulus - x) % w.modulus;
    return ColoredWord(w.modulus, std::move(l));
}

/// Fusion of two non-empty words: concatenate, merging the boundary letters
/// by addition mod s. (a_1..a_k) * (b_1..b_l) = (a_1.., a_k + b_1, ..b_l).
inline ColoredWord fuse(const ColoredWord& v, const ColoredWord& w) {
    if (v.modulus != w.modulus) throw domain_error("fuse: modulus mismatch");
    if (v.size() == 0 || w.size() == 0) throw domain_error("fuse: both words must be non-empty");
    std::vector<int> l(v.letters.begin(), v.letters.end() - 1);
    l.push_back((v.letters.back() + w.letters.front()) % v.modulus);
    l.insert(l.end(), w.letters.begin() + 1, w.letters.end());
    return ColoredWord(v.modulus, std::move(l));
}

/**
 * Product of basis elements in the free fusion ring:
 *
 *   x_f x_g = sum over f = v z, g = zbar w of (x_{v w} + x_{v . w}),
 *
 * where z runs over suffixes of f whose involution is a prefix of g, v w is
 * concatenation and v . w is fusion; the fusion term is dropped when v or w
 * is empty.
 */
inline FusionElement multiply(const ColoredWord& f, const ColoredWord& g) {
    if (f.modulus != g.modulus) throw domain_error("multiply: modulus mismatch");
    FusionElement out;
    out.modulus = f.modulus;
    int maxt = std::min(f.size(), g.size());
    for (int t = 0; t <= maxt; ++t) {
        ColoredWord z(f.modulus,
                      std::vector<int>(f.letters.end() - t, f.letters.end()));
        ColoredWord zbar = involute(z);
        if (!std::equal(zbar.letters.begin(), zbar.letters.end(), g.letters.begin())) continue;
        ColoredWord v(f.modulus, std::vector<int>(f.letters.begin(), f.letters.end() - t));
        ColoredWord w(g.modulus, std::vector<int>(g.letters.begin() + t, g.letters.end()));
        std::vector<int> concat = v.letters;
        concat.insert(concat.end(), w.letters.begin(), w.letters.end());
        out.add(concat, 1);
        if (v.size() > 0 && w.size() > 0) out.add(fuse(v, w).letters, 1);
    }
    return out;
}

/// Bilinear extension to arbitrary ring elements.
inline FusionElement multiply(const FusionElement& a, const FusionElement& b) {
    if (a.modulus != b.modulus) throw domain_error("multiply: modulus mismatch");
    FusionElement out;
    out.modulus = a.modulus;
    for (const auto& [wa, ca] : a.terms)
        for (const auto& [wb, cb] : b.terms) {
            FusionElement prod = multiply(ColoredWord(a.modulus, wa), ColoredWord(b.modulus, wb));
            for (const auto& [w, c] : prod.terms) out.add(w, c * ca * cb);
        }
    return out;
}

inline FusionElement basis_element(const ColoredWord& w) {
    FusionElement e;
    e.modulus = w.modulus;
    e.add(w.letters, 1);
    return e;
}

/// The product of the single-letter elements of w, i.e. the class of the
/// tensor-power monomial whose factors carry w's colors. Expands as x_w plus
/// strictly shorter basis words.
inline FusionElement monomial_element(const ColoredWord& w) {
    FusionElement m = basis_element(ColoredWord(w.modulus, {}));
    for (int a : w.letters) m = multiply(m, basis_element(ColoredWord(w.modulus, {a})));
    return m;
}

/// Letterwise reduction mod s. This is how restriction relabels monomials;
/// it is not how it acts on the basis elements x_f (see restrict_mod below).
inline ColoredWord restrict_mod(const ColoredWord& w, int s) {
    if (s < 1 || w.modulus % s != 0) throw domain_error("restrict_mod: target modulus must divide source");
    return ColoredWord(s, w.letters);
}

namespace detail {

/**
 * Image of the basis element x_w under the restriction morphism, by
 * transport through monomials: the product of w's single-letter elements
 * maps to the product of their single-letter images, and x_w is that
 * product minus its strictly shorter expansion terms. A single letter a
 * maps to x_(a mod s), except that a nonzero letter reducing to zero picks
 * up a trivial summand (the full monomial stays N-dimensional while x_(0)
 * has dimension N - 1).
 */
inline FusionElement restrict_basis(const std::vector<int>& letters, int src, int s) {
    if (letters.empty()) return basis_element(ColoredWord(s, {}));
    if (letters.size() == 1) {
        FusionElement out = basis_element(ColoredWord(s, letters));
        if (letters[0] != 0 && letters[0] % s == 0) out.add({}, 1);
        return out;
    }
    static std::mutex mu;
    static std::map<std::tuple<int, int, std::vector<int>>, FusionElement> cache;
    auto key = std::make_tuple(src, s, letters);
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    FusionElement out = basis_element(ColoredWord(s, {}));
    for (int a : letters) out = multiply(out, restrict_basis({a}, src, s));
    FusionElement m = monomial_element(ColoredWord(src, letters));
    for (const auto& [g, c] : m.terms) {
        if (g == letters) continue;
        FusionElement img = restrict_basis(g, src, s);
        for (const auto& [gw, gc] : img.terms) out.add(gw, -c * gc);
    }
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(key, out);
    return out;
}

} // namespace detail

/**
 * Ring morphism R_{st} -> R_s induced by restricting representations along
 * the inclusion of the mod-s object in the mod-st one. Monomials map by
 * letterwise reduction; a basis element x_f maps to the reduced monomial
 * minus the transported expansion terms, so its image can have several
 * summands. Multiplicative by construction and dimension-preserving.
 */
inline FusionElement restrict_mod(const FusionElement& e, int s) {
    if (s < 1 || e.modulus % s != 0) throw domain_error("restrict_mod: target modulus must divide source");
    FusionElement out;
    out.modulus = s;
    for (const auto& [w, c] : e.terms) {
        FusionElement img = detail::restrict_basis(w, e.modulus, s);
        for (const auto& [gw, gc] : img.terms) out.add(gw, c * gc);
    }
    return out;
}

/**
 * Dimension morphism d: R_s -> Z determined by d(x_empty) = 1 and
 * d(x_(a)) = N - 1 for a = 0, N otherwise. Longer words are peeled from the
 * left using x_(a1) x_(a2..ak) = x_(a1 a2..ak) + x_((a1+a2) a3..ak)
 * [+ x_(a3..ak) when a2 = -a1], whose right side shortens. Memoized.
 */
inline long long dimension(const ColoredWord& w, int N) {
    if (N < 1) throw domain_error("dimension: need N >= 1");
    static std::mutex mu;
    static std::map<std::tuple<int, int, std::vector<int>>, long long> cache;
    auto rec = [N](auto&& self, int s, const std::vector<int>& l) -> long long {
        if (l.empty()) return 1;
        if (l.size() == 1) return (l[0] == 0) ? N - 1 : N;
        auto key = std::make_tuple(s, N, l);
        {
            std::lock_guard<std::mutex> lock(mu);
            auto it = cache.find(key);
            if (it != cache.end()) return it->second;
        }
        std::vector<int> head{l[0]};
        std::vector<int> tail(l.begin() + 1, l.end());
        std::vector<int> fused(l.begin() + 1, l.end());
        fused[0] = (l[0] + l[1]) % s;
        std::vector<int> peeled(l.begin() + 2, l.end());
        long long val = self(self, s, head) * self(self, s, tail) - self(self, s, fused);
        if ((l[0] + l[1]) % s == 0) val -= self(self, s, peeled);
        std::lock_guard<std::mutex> lock(mu);
        cache[key] = val;
        return val;
    };
    return rec(rec, w.modulus, w.letters);
}

inline long long dimension(const FusionElement& e, int N) {
    long long sum = 0;
    for (const auto& [w, c] : e.terms) sum += c * dimension(ColoredWord(e.modulus, w), N);
    return sum;
}

inline std::string word_str(const std::vector<int>& letters) {
    std::string s;
    for (size_t i = 0; i < letters.size(); ++i) s += (i ? "," : "") + std::to_string(letters[i]);
    return s;
}

inline std::string fusion_str(const FusionElement& e) {
    if (e.terms.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [w, c] : e.terms) {
        if (!first) s += " + ";
        first = false;
        if (c != 1) s += std::to_string(c) + "*";
        s += "x(" + word_str(w) + ")";
    }
    return s;
}

} // namespace qpg
