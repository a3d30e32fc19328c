#include "gf.hpp"

#include <stdexcept>
#include <string>

namespace nbldpc {

namespace {

// Carry-less multiply of two polynomials over GF(2).
unsigned clmul(unsigned a, unsigned b) {
    unsigned r = 0;
    while (b) {
        if (b & 1) r ^= a;
        a <<= 1;
        b >>= 1;
    }
    return r;
}

unsigned poly_mod(unsigned a, unsigned m, int deg_m) {
    int deg_a = 31;
    while (deg_a >= 0 && !(a >> deg_a & 1)) --deg_a;
    while (deg_a >= deg_m) {
        a ^= m << (deg_a - deg_m);
        while (deg_a >= 0 && !(a >> deg_a & 1)) --deg_a;
    }
    return a;
}

}  // namespace

unsigned Field::default_poly(int p) {
    // Standard primitive polynomials, one per degree.
    static const unsigned tab[9] = {
        0,
        0x3,    // x + 1
        0x7,    // x^2 + x + 1
        0xB,    // x^3 + x + 1
        0x13,   // x^4 + x + 1
        0x25,   // x^5 + x^2 + 1
        0x43,   // x^6 + x + 1
        0x89,   // x^7 + x^3 + 1
        0x11D,  // x^8 + x^4 + x^3 + x^2 + 1
    };
    if (p < 1 || p > 8) throw std::invalid_argument("field bit-width p must be in [1, 8]");
    return tab[p];
}

bool Field::is_irreducible(unsigned poly, int p) {
    if (poly >> p != 1u) return false;  // must be monic of degree p
    if (p == 1) return true;
    // Exhaustive factor check: no divisor of degree 1..p/2.
    for (unsigned d = 2; d < (2u << (p / 2)); ++d) {
        int deg_d = 31;
        while (!(d >> deg_d & 1)) --deg_d;
        if (deg_d < 1) continue;
        // trial division: check whether d divides poly
        unsigned rem = poly;
        int deg_r = p;
        while (deg_r >= deg_d) {
            rem ^= d << (deg_r - deg_d);
            while (deg_r >= 0 && !(rem >> deg_r & 1)) --deg_r;
        }
        if (rem == 0) return false;
    }
    return true;
}

Field::Field(int p, unsigned poly) : p_(p), q_(1 << p) {
    if (p < 1 || p > 8) throw std::invalid_argument("field bit-width p must be in [1, 8]");
    poly_ = poly ? poly : default_poly(p);
    if (!is_irreducible(poly_, p))
        throw std::invalid_argument("polynomial 0x" + std::to_string(poly_) +
                                    " is not irreducible of degree " + std::to_string(p));
    // Build log/antilog tables from the powers of a generator. The default
    // polynomials are primitive so x generates the multiplicative group; for
    // a user-supplied (irreducible, possibly non-primitive) polynomial we
    // search for a generator.
    log_.assign(q_, -1);
    exp_.assign(q_ - 1, 0);
    if (p == 1) {  // GF(2): trivial multiplicative group
        exp_[0] = 1;
        log_[1] = 0;
        return;
    }
    for (unsigned g = 2; g < static_cast<unsigned>(q_); ++g) {
        bool ok = true;
        unsigned cur = 1;
        for (int i = 0; i < q_ - 1; ++i) {
            if (i > 0 && cur == 1) { ok = false; break; }
            exp_[i] = static_cast<int>(cur);
            cur = poly_mod(clmul(cur, g), poly_, p);
        }
        if (ok && cur == 1) {
            for (int i = 0; i < q_ - 1; ++i) log_[exp_[i]] = i;
            return;
        }
    }
    throw std::logic_error("no generator found (non-irreducible polynomial?)");
}

int Field::inv(int a) const {
    check_elem(a);
    if (a == 0) throw std::domain_error("inversion of zero");
    if (a == 1) return 1;
    return exp_[(q_ - 1) - log_[a]];
}

void Field::check_elem(int a) const {
    if (a < 0 || a >= q_) throw std::out_of_range("element out of field range");
}

std::vector<int> bit_decomp(int k, int p) {
    if (k < 1 || k >= (1 << p)) throw std::out_of_range("bit_decomp: k out of [1, q-1]");
    std::vector<int> col(p);
    for (int i = 0; i < p; ++i) col[i] = (k >> i) & 1;
    return col;
}

}  // namespace nbldpc
