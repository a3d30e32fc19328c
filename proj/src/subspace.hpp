#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "bitmatrix.hpp"
#include "gf.hpp"

namespace nbldpc {

// Affine subspace of GF(2)^p (p <= 8), or the empty set. Stored as a
// membership bitmask over the 2^p field elements, which makes equality and
// canonical form trivial: two equal sets have identical bits. Intersection
// is a bitwise AND; this is the decoder's hot path.
class AffineSubspace {
public:
    AffineSubspace() : p_(0) { w_.fill(0); }

    static AffineSubspace empty(int p);
    static AffineSubspace full(int p);
    static AffineSubspace singleton(int p, int e);
    static AffineSubspace from_elements(int p, const std::vector<int>& elems);
    static AffineSubspace from_offset_basis(int p, int offset, const std::vector<int>& basis);

    // Solutions of x * A = y over GF(2), where A's columns are given as bit
    // patterns (column j = colk[j], bit i = row i) and y[j] in {0,1}.
    static AffineSubspace solve(int p, const std::vector<int>& colk, const std::vector<int>& y);

    int ambient_dim() const { return p_; }
    bool is_empty() const;
    bool is_singleton() const { return cardinality() == 1; }
    int cardinality() const;
    int dimension() const;  // -1 for empty
    bool contains(int e) const { return w_[e >> 6] >> (e & 63) & 1; }

    std::vector<int> elements() const;

    // Canonical representation: offset reduced against the RREF basis.
    int offset() const;
    std::vector<int> basis() const;          // linearly independent, RREF rows
    BitMatrix basis_matrix() const;

    // True when the element set is closed under affine combinations.
    bool is_affine() const;

    AffineSubspace intersect(const AffineSubspace& other) const;
    AffineSubspace translate(int s) const;             // { e ^ s }
    AffineSubspace scale(const Field& f, int h) const; // { h * e }, h != 0
    AffineSubspace sum(const AffineSubspace& other) const;  // { a ^ b }

    // For each source bit i: whether x_i is constant over the set (and its
    // value). Returns a pair of masks (constant_bits, values).
    void bit_resolution(int& constant_mask, int& value_mask) const;

    bool operator==(const AffineSubspace& o) const { return p_ == o.p_ && w_ == o.w_; }
    bool operator!=(const AffineSubspace& o) const { return !(*this == o); }

private:
    int words() const { return p_ >= 7 ? (1 << p_) / 64 : 1; }

    int p_;
    std::array<uint64_t, 4> w_;
};

// Minkowski sum { a ^ b : a in A, b in B }.
AffineSubspace subspace_sum(const AffineSubspace& a, const AffineSubspace& b);

// { sum_j h_j * s_j : s_j in S_j }, field multiplication applied per term.
AffineSubspace subspace_map_sum(const Field& f,
                                const std::vector<std::pair<int, AffineSubspace>>& terms);

}  // namespace nbldpc
