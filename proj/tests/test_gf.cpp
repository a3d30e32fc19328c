#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <set>

#include "doctest.h"
#include "gf.hpp"
#include "rng.hpp"

using namespace nbldpc;

TEST_CASE("GF(16) default polynomial x^4+x+1 worked products") {
    Field f(4);
    CHECK(f.q() == 16);
    CHECK(f.poly() == 0x13u);
    // alpha = 2: alpha^4 = alpha + 1 = 3
    CHECK(f.mul(2, 8) == 3);
    CHECK(f.mul(3, 3) == 5);  // (x+1)^2 = x^2+1
    CHECK(f.mul(7, 7) == 6);  // (x^2+x+1)^2 = x^4+x^2+1 = x^2+x
}

TEST_CASE("GF(8) full multiplication against schoolbook polynomial product") {
    Field f(3);
    CHECK(f.poly() == 0xBu);
    auto poly_mul = [&](int a, int b) {
        // carry-less multiply then reduce mod x^3+x+1
        int acc = 0;
        for (int i = 0; i < 3; ++i)
            if (b >> i & 1) acc ^= a << i;
        for (int d = 4; d >= 3; --d)
            if (acc >> d & 1) acc ^= 0xB << (d - 3);
        return acc;
    };
    for (int a = 0; a < 8; ++a)
        for (int b = 0; b < 8; ++b) CHECK(f.mul(a, b) == poly_mul(a, b));
}

TEST_CASE("field axioms hold exhaustively for p <= 4") {
    for (int p = 1; p <= 4; ++p) {
        Field f(p);
        int q = f.q();
        for (int a = 0; a < q; ++a) {
            CHECK(f.add(a, 0) == a);
            CHECK(f.add(a, a) == 0);
            CHECK(f.mul(a, 1) == a);
            CHECK(f.mul(a, 0) == 0);
            if (a != 0) CHECK(f.mul(a, f.inv(a)) == 1);
            for (int b = 0; b < q; ++b) {
                CHECK(f.add(a, b) == f.add(b, a));
                CHECK(f.mul(a, b) == f.mul(b, a));
                for (int c = 0; c < q; ++c) {
                    CHECK(f.mul(a, f.mul(b, c)) == f.mul(f.mul(a, b), c));
                    CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }
}

TEST_CASE("GF(256) axioms on random triples, inverses exhaustively") {
    Field f(8);
    CHECK(f.poly() == 0x11Du);
    for (int a = 1; a < 256; ++a) CHECK(f.mul(a, f.inv(a)) == 1);
    Rng rng(42);
    for (int i = 0; i < 20000; ++i) {
        int a = rng.below(256), b = rng.below(256), c = rng.below(256);
        CHECK(f.mul(a, f.mul(b, c)) == f.mul(f.mul(a, b), c));
        CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
    }
}

TEST_CASE("multiplicative group is cyclic of order q-1") {
    for (int p : {2, 3, 4, 8}) {
        Field f(p);
        // powers of some generator cover all nonzero elements
        bool found = false;
        for (int g = 2; g < f.q() && !found; ++g) {
            std::set<int> seen;
            int x = 1;
            for (int i = 0; i < f.q() - 1; ++i) {
                seen.insert(x);
                x = f.mul(x, g);
            }
            found = static_cast<int>(seen.size()) == f.q() - 1;
        }
        CHECK(found);
    }
}

TEST_CASE("reducible polynomials are rejected") {
    CHECK(Field::is_irreducible(0x13, 4));
    CHECK(Field::is_irreducible(0x19, 4));  // x^4+x^3+1
    CHECK_FALSE(Field::is_irreducible(0x11, 4));  // x^4+1 = (x+1)^4
    CHECK_FALSE(Field::is_irreducible(0x15, 4));  // x^4+x^2+1 = (x^2+x+1)^2
    CHECK_THROWS(Field(4, 0x11));
    CHECK_THROWS(Field(0));
    CHECK_THROWS(Field(9));
}

TEST_CASE("non-primitive irreducible polynomial still yields a field") {
    // x^4+x^3+x^2+x+1 is irreducible but not primitive (order of x is 5)
    REQUIRE(Field::is_irreducible(0x1F, 4));
    Field f(4, 0x1F);
    for (int a = 1; a < 16; ++a) CHECK(f.mul(a, f.inv(a)) == 1);
    int count = 0;
    for (int a = 0; a < 16; ++a)
        for (int b = 0; b < 16; ++b)
            if (f.mul(a, b) == 1) ++count;
    CHECK(count == 15);
}

TEST_CASE("element range is checked") {
    Field f(3);
    CHECK_THROWS(f.mul(8, 1));
    CHECK_THROWS(f.add(-1, 0));
    CHECK_THROWS(f.inv(0));
}

TEST_CASE("bit_decomp and bit_parity") {
    CHECK(bit_decomp(13, 4) == std::vector<int>{1, 0, 1, 1});
    CHECK(bit_decomp(1, 3) == std::vector<int>{1, 0, 0});
    CHECK_THROWS(bit_decomp(8, 3));
    CHECK_THROWS(bit_decomp(0, 3));
    CHECK(bit_parity(0) == 0);
    CHECK(bit_parity(0b1011) == 1);
    CHECK(bit_parity(0b1111) == 0);
}
