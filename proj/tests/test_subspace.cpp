#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <set>
#include <vector>

#include "bitmatrix.hpp"
#include "doctest.h"
#include "gf.hpp"
#include "rng.hpp"
#include "subspace.hpp"

using namespace nbldpc;

namespace {

// reference implementation on plain element sets
std::set<int> elems(const AffineSubspace& s) {
    auto v = s.elements();
    return {v.begin(), v.end()};
}

AffineSubspace random_affine(int p, Rng& rng) {
    if (rng.below(8) == 0) return AffineSubspace::empty(p);
    int offset = rng.below(1 << p);
    std::vector<int> basis;
    int dim = rng.below(p + 1);
    for (int i = 0; i < dim; ++i) basis.push_back(1 + rng.below((1 << p) - 1));
    return AffineSubspace::from_offset_basis(p, offset, basis);
}

}  // namespace

TEST_CASE("bit matrix rank and rref") {
    BitMatrix m = BitMatrix::from_columns({1, 2, 4, 8, 15}, 4);
    CHECK(m.rank() == 4);
    CHECK(BitMatrix::from_columns({3, 5, 6}, 3).rank() == 2);  // 3^5 = 6
    CHECK(BitMatrix::identity(6).rank() == 6);
    CHECK(BitMatrix(3, 4).rank() == 0);
    BitMatrix r = BitMatrix::from_columns({3, 5, 6}, 3).rref();
    CHECK(r.rank() == 2);
    // rref of a full-rank square matrix is the identity
    CHECK(BitMatrix::from_columns({3, 5, 7}, 3).rref() == BitMatrix::identity(3));
}

TEST_CASE("constructors and cardinality") {
    CHECK(AffineSubspace::empty(4).is_empty());
    CHECK(AffineSubspace::full(4).cardinality() == 16);
    CHECK(AffineSubspace::full(8).cardinality() == 256);
    CHECK(AffineSubspace::singleton(4, 9).elements() == std::vector<int>{9});
    auto s = AffineSubspace::from_offset_basis(3, 1, {2, 4, 6});  // 6 = 2^4, redundant
    CHECK(s.cardinality() == 4);
    CHECK(s.dimension() == 2);
    CHECK(AffineSubspace::empty(5).dimension() == -1);
}

TEST_CASE("canonical form: same set built two ways compares equal") {
    auto a = AffineSubspace::from_offset_basis(4, 5, {3, 12});
    auto b = AffineSubspace::from_offset_basis(4, 5 ^ 3 ^ 12, {15, 3});  // same coset
    CHECK(a == b);
    CHECK(elems(a) == elems(b));
    // offset() is reduced against the basis: rebuilding from the canonical
    // parts reproduces the set
    auto c = AffineSubspace::from_offset_basis(4, a.offset(), a.basis());
    CHECK(c == a);
}

TEST_CASE("solve: eligible set of a partially received extension image") {
    // p = 3, received alpha_7 = 0 and alpha_1 = 1: x0 = 1, x0^x1^x2 = 0
    auto s = AffineSubspace::solve(3, {7, 1}, {0, 1});
    std::set<int> expect;
    for (int x = 0; x < 8; ++x)
        if (bit_parity(x & 7) == 0 && bit_parity(x & 1) == 1) expect.insert(x);
    CHECK(elems(s) == expect);
    // no constraints -> full space; contradictory constraints -> empty
    CHECK(AffineSubspace::solve(3, {}, {}) == AffineSubspace::full(3));
    CHECK(AffineSubspace::solve(3, {5, 5}, {0, 1}).is_empty());
}

TEST_CASE("solve equals brute-force enumeration on random systems") {
    Rng rng(7);
    for (int trial = 0; trial < 400; ++trial) {
        int p = 1 + rng.below(8);
        int m = rng.below(2 * p + 1);
        std::vector<int> cols(m), y(m);
        for (int j = 0; j < m; ++j) {
            cols[j] = 1 + rng.below((1 << p) - 1);
            y[j] = rng.below(2);
        }
        auto s = AffineSubspace::solve(p, cols, y);
        std::set<int> expect;
        for (int x = 0; x < (1 << p); ++x) {
            bool ok = true;
            for (int j = 0; j < m; ++j)
                if (bit_parity(static_cast<unsigned>(x & cols[j])) != y[j]) ok = false;
            if (ok) expect.insert(x);
        }
        CHECK(elems(s) == expect);
        CHECK((s.is_empty() || s.is_affine()));
    }
}

TEST_CASE("intersection, translate, scale, sum match element-wise reference") {
    Rng rng(99);
    for (int trial = 0; trial < 300; ++trial) {
        int p = 1 + rng.below(4);
        Field f(p);
        auto a = random_affine(p, rng);
        auto b = random_affine(p, rng);

        std::set<int> ea = elems(a), eb = elems(b);

        std::set<int> want_int;
        std::set_intersection(ea.begin(), ea.end(), eb.begin(), eb.end(),
                              std::inserter(want_int, want_int.begin()));
        CHECK(elems(a.intersect(b)) == want_int);

        int t = rng.below(1 << p);
        std::set<int> want_tr;
        for (int e : ea) want_tr.insert(e ^ t);
        CHECK(elems(a.translate(t)) == want_tr);

        int h = 1 + rng.below((1 << p) - 1);
        std::set<int> want_sc;
        for (int e : ea) want_sc.insert(f.mul(h, e));
        CHECK(elems(a.scale(f, h)) == want_sc);

        std::set<int> want_sum;
        for (int x : ea)
            for (int y : eb) want_sum.insert(x ^ y);
        CHECK(elems(a.sum(b)) == want_sum);
        CHECK(elems(subspace_sum(a, b)) == want_sum);
    }
}

TEST_CASE("translate on p = 8 uses all four words correctly") {
    Rng rng(5);
    Field f(8);
    for (int trial = 0; trial < 60; ++trial) {
        auto a = random_affine(8, rng);
        int t = rng.below(256);
        std::set<int> want;
        for (int e : elems(a)) want.insert(e ^ t);
        CHECK(elems(a.translate(t)) == want);
        int h = 1 + rng.below(255);
        std::set<int> want_sc;
        for (int e : elems(a)) want_sc.insert(f.mul(h, e));
        CHECK(elems(a.scale(f, h)) == want_sc);
    }
}

TEST_CASE("closure properties: affine sets stay affine under the ops") {
    Rng rng(123);
    Field f(4);
    for (int trial = 0; trial < 200; ++trial) {
        auto a = random_affine(4, rng);
        auto b = random_affine(4, rng);
        auto i = a.intersect(b);
        CHECK((i.is_empty() || i.is_affine()));
        if (!a.is_empty()) {
            CHECK(a.translate(rng.below(16)).is_affine());
            CHECK(a.scale(f, 1 + rng.below(15)).is_affine());
            if (!b.is_empty()) CHECK(a.sum(b).is_affine());
        }
    }
}

TEST_CASE("empty set propagates through every operation") {
    Field f(4);
    auto e = AffineSubspace::empty(4);
    auto s = AffineSubspace::from_offset_basis(4, 3, {5});
    CHECK(e.intersect(s).is_empty());
    CHECK(s.intersect(e).is_empty());
    CHECK(e.translate(7).is_empty());
    CHECK(e.scale(f, 3).is_empty());
    CHECK(e.sum(s).is_empty());
    CHECK(s.sum(e).is_empty());
}

TEST_CASE("subspace_map_sum is the scaled Minkowski sum of all terms") {
    Field f(4);
    Rng rng(321);
    for (int trial = 0; trial < 100; ++trial) {
        int n = 1 + rng.below(3);
        std::vector<std::pair<int, AffineSubspace>> terms;
        std::vector<std::set<int>> sets;
        for (int i = 0; i < n; ++i) {
            auto s = random_affine(4, rng);
            if (s.is_empty()) s = AffineSubspace::singleton(4, rng.below(16));
            terms.push_back({1 + rng.below(15), s});
            sets.push_back(elems(s));
        }
        std::set<int> want = {0};
        for (int i = 0; i < n; ++i) {
            std::set<int> next;
            for (int acc : want)
                for (int e : sets[i]) next.insert(acc ^ f.mul(terms[i].first, e));
            want = next;
        }
        CHECK(elems(subspace_map_sum(f, terms)) == want);
    }
}

TEST_CASE("bit_resolution reports constant source bits and their values") {
    // {2, 3}: bit 1 constant 1, bit 0 varies, bits 2/3 constant 0
    auto s = AffineSubspace::from_elements(4, {2, 3});
    int cm, vm;
    s.bit_resolution(cm, vm);
    CHECK(cm == 0b1110);
    CHECK((vm & cm) == 0b0010);
    auto single = AffineSubspace::singleton(4, 11);
    single.bit_resolution(cm, vm);
    CHECK(cm == 0b1111);
    CHECK(vm == 11);
    AffineSubspace::full(4).bit_resolution(cm, vm);
    CHECK(cm == 0);
}
