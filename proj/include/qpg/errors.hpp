#pragma once

#include <stdexcept>
#include <string>

namespace qpg {

/// Bad arguments: mismatched sizes, out-of-range parameters, violated preconditions.
struct domain_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A computation was refused because it would exceed a configured cap.
struct resource_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Structured input (Latin rectangle, model file) failed validation.
struct validation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The non-crossing Gram matrix is singular at these parameters.
struct singular_gram_error : std::runtime_error {
    int N;
    int k;
    singular_gram_error(int N_, int k_)
        : std::runtime_error("Gram matrix of NC(" + std::to_string(k_) +
                             ") is singular at N=" + std::to_string(N_)),
          N(N_), k(k_) {}
};

} // namespace qpg
