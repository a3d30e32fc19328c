#pragma once

#include <cstdint>
#include <vector>

namespace nbldpc {

// GF(2^p) with a fixed irreducible polynomial. Elements are integers in
// [0, q-1]; the integer's bits are the binary image (x_0, ..., x_{p-1}),
// bit i being the coefficient of 2^i.
class Field {
public:
    // poly == 0 selects the default polynomial for p.
    explicit Field(int p, unsigned poly = 0);

    int p() const { return p_; }
    int q() const { return q_; }
    unsigned poly() const { return poly_; }

    int add(int a, int b) const {
        check_elem(a);
        check_elem(b);
        return a ^ b;
    }

    int mul(int a, int b) const {
        check_elem(a);
        check_elem(b);
        if (a == 0 || b == 0) return 0;
        return exp_[(log_[a] + log_[b]) % (q_ - 1)];
    }

    int inv(int a) const;

    bool same(const Field& other) const { return p_ == other.p_ && poly_ == other.poly_; }

    static unsigned default_poly(int p);
    static bool is_irreducible(unsigned poly, int p);

private:
    void check_elem(int a) const;

    int p_;
    int q_;
    unsigned poly_;
    std::vector<int> log_;   // log_[a] for a != 0
    std::vector<int> exp_;   // exp_[i] = alpha^i, i in [0, q-2]
};

// Binary decomposition of k in [1, q-1]: column vector (k_0, ..., k_{p-1}).
std::vector<int> bit_decomp(int k, int p);

// Parity of the bitwise AND, i.e. the inner product of binary images.
inline int bit_parity(unsigned v) {
#if defined(__GNUC__)
    return __builtin_parity(v);
#else
    v ^= v >> 16; v ^= v >> 8; v ^= v >> 4; v ^= v >> 2; v ^= v >> 1;
    return v & 1;
#endif
}

}  // namespace nbldpc
