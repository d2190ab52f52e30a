#pragma once

#include <stdexcept>

namespace cyl {

/// Which operator families an algebra carries, and its dimension.
struct Signature {
    int n = 1;                  // dimension
    bool diagonals = true;      // d_ij
    bool transpositions = false; // s_[i,j]
    bool interior = false;      // I_i
    bool tense = false;         // G, H (F, P derived)
    bool temporal = false;      // S, U (implies tense evaluability)

    void validate() const {
        if (n < 1) throw std::invalid_argument("signature: dimension must be >= 1");
        if (temporal && !tense) throw std::invalid_argument("signature: temporal requires tense operators");
    }
};

inline Signature ca_signature(int n) { return Signature{n, true, false, false, false, false}; }
inline Signature pea_signature(int n) { return Signature{n, true, true, false, false, false}; }
inline Signature tca_signature(int n) { return Signature{n, true, true, true, false, false}; }

} // namespace cyl
