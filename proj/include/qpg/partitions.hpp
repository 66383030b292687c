#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "qpg/errors.hpp"

namespace qpg {

/**
 * A set partition of {0, ..., k-1} in canonical form: every block is sorted
 * ascending and blocks are ordered by their least element. The canonical
 * serialization is the restricted-growth string (RGS), e.g. "0011" for
 * {{0,1},{2,3}}. k = 0 is allowed and denotes the unique empty partition.
 */
class Partition {
public:
    Partition() = default;

    Partition(int k, std::vector<std::vector<int>> blocks) : k_(k), blocks_(std::move(blocks)) {
        if (k < 0) throw domain_error("Partition: negative ground set size");
        canonicalize();
        std::vector<char> seen(static_cast<size_t>(k_), 0);
        for (const auto& b : blocks_) {
            if (b.empty()) throw domain_error("Partition: empty block");
            for (int x : b) {
                if (x < 0 || x >= k_) throw domain_error("Partition: element out of range");
                if (seen[static_cast<size_t>(x)]) throw domain_error("Partition: repeated element");
                seen[static_cast<size_t>(x)] = 1;
            }
        }
        for (char c : seen)
            if (!c) throw domain_error("Partition: blocks do not cover the ground set");
    }

    static Partition from_rgs(const std::vector<int>& rgs) {
        int k = static_cast<int>(rgs.size());
        int nb = 0;
        std::vector<std::vector<int>> blocks;
        for (int i = 0; i < k; ++i) {
            int v = rgs[static_cast<size_t>(i)];
            if (v < 0 || v > nb) throw domain_error("Partition: not a restricted-growth string");
            if (v == nb) {
                blocks.emplace_back();
                ++nb;
            }
            blocks[static_cast<size_t>(v)].push_back(i);
        }
        return Partition(k, std::move(blocks));
    }

    static Partition from_rgs_string(const std::string& s) {
        std::vector<int> rgs;
        rgs.reserve(s.size());
        for (char c : s) {
            if (c >= '0' && c <= '9') rgs.push_back(c - '0');
            else if (c >= 'a' && c <= 'z') rgs.push_back(c - 'a' + 10);
            else throw domain_error("Partition: bad RGS character");
        }
        return from_rgs(rgs);
    }

    int size() const { return k_; }
    int num_blocks() const { return static_cast<int>(blocks_.size()); }
    const std::vector<std::vector<int>>& blocks() const { return blocks_; }

    /// Index of the block containing element x, numbered by first appearance.
    int block_of(int x) const {
        for (int b = 0; b < num_blocks(); ++b)
            for (int e : blocks_[static_cast<size_t>(b)])
                if (e == x) return b;
        throw domain_error("Partition: element out of range");
    }

    std::vector<int> rgs() const {
        std::vector<int> out(static_cast<size_t>(k_), 0);
        for (int b = 0; b < num_blocks(); ++b)
            for (int e : blocks_[static_cast<size_t>(b)])
                out[static_cast<size_t>(e)] = b;
        return out;
    }

    std::string rgs_string() const {
        std::string out;
        for (int v : rgs()) out += (v < 10) ? static_cast<char>('0' + v) : static_cast<char>('a' + v - 10);
        return out;
    }

    friend bool operator==(const Partition& a, const Partition& b) { return a.blocks_ == b.blocks_; }
    friend bool operator!=(const Partition& a, const Partition& b) { return !(a == b); }
    friend bool operator<(const Partition& a, const Partition& b) {
        if (a.k_ != b.k_) return a.k_ < b.k_;
        return a.rgs() < b.rgs();
    }

private:
    void canonicalize() {
        for (auto& b : blocks_) std::sort(b.begin(), b.end());
        std::sort(blocks_.begin(), blocks_.end(),
                  [](const auto& x, const auto& y) { return x.front() < y.front(); });
    }

    int k_ = 0;
    std::vector<std::vector<int>> blocks_;
};

/// True when every block of `fine` is contained in a single block of `coarse`,
/// i.e. `fine` <= `coarse` in the refinement order.
inline bool refines(const Partition& fine, const Partition& coarse) {
    if (fine.size() != coarse.size()) throw domain_error("refines: size mismatch");
    std::vector<int> label = coarse.rgs();
    for (const auto& b : fine.blocks()) {
        int l = label[static_cast<size_t>(b.front())];
        for (int e : b)
            if (label[static_cast<size_t>(e)] != l) return false;
    }
    return true;
}

/// Two-block interleaving test: p is non-crossing iff no pair of blocks
/// alternates A B A B along the ground set.
inline bool is_noncrossing(const Partition& p) {
    const auto& bl = p.blocks();
    int nb = p.num_blocks();
    for (int i = 0; i < nb; ++i) {
        for (int j = i + 1; j < nb; ++j) {
            const auto& A = bl[static_cast<size_t>(i)];
            const auto& B = bl[static_cast<size_t>(j)];
            size_t ai = 0, bi = 0;
            int alternations = 0;
            int last = -1; // 0 = A, 1 = B
            while (ai < A.size() || bi < B.size()) {
                int tag;
                if (bi == B.size() || (ai < A.size() && A[ai] < B[bi])) {
                    tag = 0;
                    ++ai;
                } else {
                    tag = 1;
                    ++bi;
                }
                if (tag != last) {
                    if (last != -1) ++alternations;
                    last = tag;
                }
            }
            if (alternations >= 3) return false;
        }
    }
    return true;
}

/// All partitions of {0,...,k-1}, in lexicographic RGS order; optionally only
/// the non-crossing ones (Catalan many instead of Bell many).
inline std::vector<Partition> enumerate_partitions(int k, bool noncrossing_only = false) {
    if (k < 0) throw domain_error("enumerate_partitions: negative k");
    std::vector<Partition> out;
    std::vector<int> a(static_cast<size_t>(k), 0);
    auto rec = [&](auto&& self, int pos, int used) -> void {
        if (pos == k) {
            Partition p = Partition::from_rgs(a);
            if (!noncrossing_only || is_noncrossing(p)) out.push_back(std::move(p));
            return;
        }
        for (int v = 0; v <= used; ++v) {
            a[static_cast<size_t>(pos)] = v;
            self(self, pos + 1, std::max(used, v + 1));
        }
    };
    if (k == 0) {
        out.emplace_back();
        return out;
    }
    rec(rec, 0, 0);
    return out;
}

/// Least common coarsening of p and q (union-find over the ground set).
inline Partition join(const Partition& p, const Partition& q) {
    if (p.size() != q.size()) throw domain_error("join: size mismatch");
    int k = p.size();
    std::vector<int> parent(static_cast<size_t>(k));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[static_cast<size_t>(x)] != x) {
            parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
            x = parent[static_cast<size_t>(x)];
        }
        return x;
    };
    auto unite = [&](int x, int y) { parent[static_cast<size_t>(find(x))] = find(y); };
    for (const Partition* part : {&p, &q})
        for (const auto& b : part->blocks())
            for (size_t t = 1; t < b.size(); ++t) unite(b[0], b[t]);
    std::vector<std::vector<int>> groups(static_cast<size_t>(k));
    for (int x = 0; x < k; ++x) groups[static_cast<size_t>(find(x))].push_back(x);
    std::vector<std::vector<int>> blocks;
    for (auto& g : groups)
        if (!g.empty()) blocks.push_back(std::move(g));
    return Partition(k, std::move(blocks));
}

/// ker(i): positions grouped by equal values.
inline Partition kernel_of_index(const std::vector<int>& idx) {
    int k = static_cast<int>(idx.size());
    std::vector<std::vector<int>> blocks;
    std::vector<int> values;
    for (int t = 0; t < k; ++t) {
        int v = idx[static_cast<size_t>(t)];
        size_t b = 0;
        for (; b < values.size(); ++b)
            if (values[b] == v) break;
        if (b == values.size()) {
            values.push_back(v);
            blocks.emplace_back();
        }
        blocks[b].push_back(t);
    }
    return Partition(k, std::move(blocks));
}

/// delta_p(i) = 1 iff ker(i) >= p, i.e. i is constant on every block of p.
inline int delta(const Partition& p, const std::vector<int>& idx) {
    if (static_cast<int>(idx.size()) != p.size()) throw domain_error("delta: index length mismatch");
    for (const auto& b : p.blocks()) {
        int v = idx[static_cast<size_t>(b.front())];
        for (int e : b)
            if (idx[static_cast<size_t>(e)] != v) return 0;
    }
    return 1;
}

inline long long catalan(int k) {
    if (k < 0 || k > 30) throw domain_error("catalan: k out of range");
    static const auto table = [] {
        std::vector<long long> c(31, 0);
        c[0] = 1;
        for (int n = 1; n <= 30; ++n)
            for (int i = 0; i < n; ++i) c[n] += c[i] * c[n - 1 - i];
        return c;
    }();
    return table[static_cast<size_t>(k)];
}

inline long long bell(int k) {
    if (k < 0 || k > 20) throw domain_error("bell: k out of range");
    static const auto table = [] {
        // Bell triangle
        std::vector<long long> b(21, 0);
        std::vector<long long> row{1};
        b[0] = 1;
        for (int n = 1; n <= 20; ++n) {
            std::vector<long long> next(row.size() + 1);
            next[0] = row.back();
            for (size_t i = 0; i < row.size(); ++i) next[i + 1] = next[i] + row[i];
            row = std::move(next);
            b[n] = row[0];
        }
        return b;
    }();
    return table[static_cast<size_t>(k)];
}

/**
 * A word of colors over Z_s. Letters are stored reduced to {0, ..., s-1}.
 * Used both for coloring tensor factors and as the free monoid underlying
 * the fusion ring.
 */
struct ColoredWord {
    int modulus = 1;
    std::vector<int> letters;

    ColoredWord() = default;
    ColoredWord(int s, std::vector<int> l) : modulus(s), letters(std::move(l)) {
        if (s < 1) throw domain_error("ColoredWord: modulus must be >= 1");
        for (int& x : letters) x = ((x % s) + s) % s;
    }

    int size() const { return static_cast<int>(letters.size()); }
    friend bool operator==(const ColoredWord& a, const ColoredWord& b) {
        return a.modulus == b.modulus && a.letters == b.letters;
    }
    friend bool operator<(const ColoredWord& a, const ColoredWord& b) {
        if (a.modulus != b.modulus) return a.modulus < b.modulus;
        return a.letters < b.letters;
    }
};

/// True when every block of p has letter sum == 0 mod s.
inline bool colored_admissible(const Partition& p, const ColoredWord& w) {
    if (p.size() != w.size()) throw domain_error("colored_admissible: size mismatch");
    for (const auto& b : p.blocks()) {
        int sum = 0;
        for (int e : b) sum += w.letters[static_cast<size_t>(e)];
        if (sum % w.modulus != 0) return false;
    }
    return true;
}

/// Non-crossing partitions of the positions of w whose blocks all have letter
/// sum divisible by the modulus. For s = 1 this is all of NC(|w|).
inline std::vector<Partition> enumerate_colored_nc(const ColoredWord& w) {
    std::vector<Partition> out;
    for (const auto& p : enumerate_partitions(w.size(), true))
        if (colored_admissible(p, w)) out.push_back(p);
    return out;
}

} // namespace qpg
