#include "subspace.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace nbldpc {

namespace {

void check_p(int p) {
    if (p < 1 || p > 8) throw std::invalid_argument("ambient dimension must be in [1, 8]");
}

// Permute bit positions by e -> e ^ s (butterfly stages within a word, word
// swaps for bits 6 and 7 of s).
void xor_shift_words(std::array<uint64_t, 4>& w, int nw, int s) {
    static constexpr uint64_t M[6] = {
        0x5555555555555555ULL, 0x3333333333333333ULL, 0x0F0F0F0F0F0F0F0FULL,
        0x00FF00FF00FF00FFULL, 0x0000FFFF0000FFFFULL, 0x00000000FFFFFFFFULL,
    };
    for (int k = 0; k < 6; ++k) {
        if (!(s >> k & 1)) continue;
        int sh = 1 << k;
        for (int i = 0; i < nw; ++i) w[i] = ((w[i] & M[k]) << sh) | ((w[i] >> sh) & M[k]);
    }
    if (s >> 6 & 1 && nw > 1) {
        std::swap(w[0], w[1]);
        if (nw > 2) std::swap(w[2], w[3]);
    }
    if (s >> 7 & 1 && nw > 2) {
        std::swap(w[0], w[2]);
        std::swap(w[1], w[3]);
    }
}

}  // namespace

AffineSubspace AffineSubspace::empty(int p) {
    check_p(p);
    AffineSubspace s;
    s.p_ = p;
    return s;
}

AffineSubspace AffineSubspace::full(int p) {
    check_p(p);
    AffineSubspace s;
    s.p_ = p;
    int q = 1 << p;
    if (q >= 64) {
        for (int i = 0; i < q / 64; ++i) s.w_[i] = ~0ULL;
    } else {
        s.w_[0] = (1ULL << q) - 1;
    }
    return s;
}

AffineSubspace AffineSubspace::singleton(int p, int e) {
    check_p(p);
    AffineSubspace s;
    s.p_ = p;
    s.w_[e >> 6] = 1ULL << (e & 63);
    return s;
}

AffineSubspace AffineSubspace::from_elements(int p, const std::vector<int>& elems) {
    check_p(p);
    AffineSubspace s;
    s.p_ = p;
    for (int e : elems) {
        if (e < 0 || e >= (1 << p)) throw std::out_of_range("element out of ambient space");
        s.w_[e >> 6] |= 1ULL << (e & 63);
    }
    return s;
}

AffineSubspace AffineSubspace::from_offset_basis(int p, int offset, const std::vector<int>& basis) {
    AffineSubspace s = singleton(p, offset);
    for (int b : basis) {
        AffineSubspace shifted = s.translate(b);
        for (int i = 0; i < s.words(); ++i) s.w_[i] |= shifted.w_[i];
    }
    return s;
}

AffineSubspace AffineSubspace::solve(int p, const std::vector<int>& colk,
                                     const std::vector<int>& y) {
    check_p(p);
    if (colk.size() != y.size()) throw std::invalid_argument("solve: size mismatch");
    AffineSubspace out = empty(p);
    int q = 1 << p;
    for (int e = 0; e < q; ++e) {
        bool ok = true;
        for (size_t j = 0; j < colk.size(); ++j) {
            if (bit_parity(static_cast<unsigned>(e & colk[j])) != (y[j] & 1)) { ok = false; break; }
        }
        if (ok) out.w_[e >> 6] |= 1ULL << (e & 63);
    }
    return out;
}

bool AffineSubspace::is_empty() const {
    for (int i = 0; i < words(); ++i)
        if (w_[i]) return false;
    return true;
}

int AffineSubspace::cardinality() const {
    int c = 0;
    for (int i = 0; i < words(); ++i) c += std::popcount(w_[i]);
    return c;
}

int AffineSubspace::dimension() const {
    int c = cardinality();
    if (c == 0) return -1;
    return std::countr_zero(static_cast<unsigned>(c));
}

std::vector<int> AffineSubspace::elements() const {
    std::vector<int> out;
    out.reserve(cardinality());
    for (int i = 0; i < words(); ++i) {
        uint64_t w = w_[i];
        while (w) {
            int b = std::countr_zero(w);
            out.push_back(i * 64 + b);
            w &= w - 1;
        }
    }
    return out;
}

int AffineSubspace::offset() const {
    if (is_empty()) throw std::logic_error("offset of empty set");
    // Unique coset representative: reduce the minimum element against the
    // RREF basis (a no-op, since the minimum element already has zeros at
    // all pivot-free positions reachable by the basis).
    std::vector<int> el = elements();
    int e0 = el[0];
    for (int b : basis()) {
        int lead = 31 - std::countl_zero(static_cast<unsigned>(b));
        if (e0 >> lead & 1) e0 ^= b;
    }
    return e0;
}

std::vector<int> AffineSubspace::basis() const {
    if (is_empty()) return {};
    std::vector<int> el = elements();
    int e0 = el[0];
    // Incremental RREF over the difference vectors, pivots at the highest bit.
    std::vector<int> rows;
    for (int e : el) {
        int v = e ^ e0;
        for (int r : rows) {
            int lead = 31 - std::countl_zero(static_cast<unsigned>(r));
            if (v >> lead & 1) v ^= r;
        }
        if (v == 0) continue;
        int lead = 31 - std::countl_zero(static_cast<unsigned>(v));
        for (int& r : rows)
            if (r >> lead & 1) r ^= v;
        rows.push_back(v);
    }
    std::sort(rows.begin(), rows.end());
    return rows;
}

BitMatrix AffineSubspace::basis_matrix() const {
    std::vector<int> b = basis();
    BitMatrix m(static_cast<int>(b.size()), p_);
    for (int r = 0; r < static_cast<int>(b.size()); ++r)
        for (int i = 0; i < p_; ++i)
            if (b[r] >> i & 1) m.set(r, i, 1);
    return m;
}

bool AffineSubspace::is_affine() const {
    if (is_empty()) return true;
    int c = cardinality();
    if (c & (c - 1)) return false;
    std::vector<int> el = elements();
    int e0 = el[0];
    for (int a : el)
        for (int b : el)
            if (!contains(a ^ b ^ e0)) return false;
    return true;
}

AffineSubspace AffineSubspace::intersect(const AffineSubspace& other) const {
    if (p_ != other.p_) throw std::invalid_argument("intersect: ambient dimension mismatch");
    AffineSubspace r = *this;
    for (int i = 0; i < words(); ++i) r.w_[i] &= other.w_[i];
    return r;
}

AffineSubspace AffineSubspace::translate(int s) const {
    AffineSubspace r = *this;
    xor_shift_words(r.w_, words(), s);
    return r;
}

AffineSubspace AffineSubspace::scale(const Field& f, int h) const {
    if (f.p() != p_) throw std::invalid_argument("scale: field mismatch");
    if (h == 0) throw std::invalid_argument("scale: zero multiplier");
    if (h == 1) return *this;
    AffineSubspace r = empty(p_);
    for (int i = 0; i < words(); ++i) {
        uint64_t w = w_[i];
        while (w) {
            int e = i * 64 + std::countr_zero(w);
            int m = f.mul(h, e);
            r.w_[m >> 6] |= 1ULL << (m & 63);
            w &= w - 1;
        }
    }
    return r;
}

void AffineSubspace::bit_resolution(int& constant_mask, int& value_mask) const {
    if (is_empty()) throw std::logic_error("bit_resolution of empty set");
    int and_bits = (1 << p_) - 1, or_bits = 0;
    for (int i = 0; i < words(); ++i) {
        uint64_t w = w_[i];
        while (w) {
            int e = i * 64 + std::countr_zero(w);
            and_bits &= e;
            or_bits |= e;
            w &= w - 1;
        }
    }
    constant_mask = ((1 << p_) - 1) & ~(or_bits ^ and_bits);
    value_mask = and_bits;
}

AffineSubspace AffineSubspace::sum(const AffineSubspace& b) const {
    if (p_ != b.p_) throw std::invalid_argument("sum: ambient dimension mismatch");
    if (is_empty() || b.is_empty()) return empty(p_);
    AffineSubspace r = empty(p_);
    int nw = words();
    int b0 = -1;
    for (int i = 0; i < nw && b0 < 0; ++i)
        if (b.w_[i]) b0 = i * 64 + std::countr_zero(b.w_[i]);
    for (int i = 0; i < nw; ++i) {
        uint64_t w = w_[i];
        while (w) {
            int s = i * 64 + std::countr_zero(w);
            w &= w - 1;
            // Each shifted copy is a coset of b's direction space; if its
            // representative is already present the whole coset is.
            if (r.contains(s ^ b0)) continue;
            std::array<uint64_t, 4> sh = b.w_;
            xor_shift_words(sh, nw, s);
            for (int j = 0; j < nw; ++j) r.w_[j] |= sh[j];
        }
    }
    return r;
}

AffineSubspace subspace_sum(const AffineSubspace& a, const AffineSubspace& b) {
    return a.sum(b);
}

AffineSubspace subspace_map_sum(const Field& f,
                                const std::vector<std::pair<int, AffineSubspace>>& terms) {
    if (terms.empty()) throw std::invalid_argument("map_sum: no terms");
    AffineSubspace acc = terms[0].second.scale(f, terms[0].first);
    for (size_t j = 1; j < terms.size(); ++j)
        acc = subspace_sum(acc, terms[j].second.scale(f, terms[j].first));
    return acc;
}

}  // namespace nbldpc
