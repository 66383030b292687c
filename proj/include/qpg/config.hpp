#pragma once

#include <cstdlib>

namespace qpg {

/// Global resource caps. `tensor_entry_cap` bounds the number of scalar
/// entries a dense tensor operator may hold; `transfer_dim_cap` bounds the
/// side length N^r of a transfer matrix. The environment variable QPERM_CAP,
/// when set to a positive integer, overrides the tensor entry cap at startup.
struct Limits {
    long long tensor_entry_cap = 100'000'000;
    long long transfer_dim_cap = 20'000;
};

inline Limits& limits() {
    static Limits l = [] {
        Limits x;
        if (const char* s = std::getenv("QPERM_CAP")) {
            long long v = std::atoll(s);
            if (v > 0) x.tensor_entry_cap = v;
        }
        return x;
    }();
    return l;
}

} // namespace qpg
