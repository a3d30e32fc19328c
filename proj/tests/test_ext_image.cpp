#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <vector>

#include "bitmatrix.hpp"
#include "doctest.h"
#include "ext_image.hpp"
#include "gf.hpp"
#include "rng.hpp"

using namespace nbldpc;

namespace {

// independent dmin oracle: scan subset sizes with rank checks
int oracle_dmin(const std::vector<int>& cols, int p) {
    int t = static_cast<int>(cols.size());
    for (int size = 1; size <= t; ++size) {
        std::vector<int> idx(size);
        for (int i = 0; i < size; ++i) idx[i] = i;
        while (true) {
            std::vector<int> sub;
            for (int i : idx) sub.push_back(cols[i]);
            if (BitMatrix::from_columns(sub, p).rank() < size) return size;
            int i = size - 1;
            while (i >= 0 && idx[i] == t - size + i) --i;
            if (i < 0) break;
            ++idx[i];
            for (int j = i + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
    return t + 1;
}

}  // namespace

TEST_CASE("extended bit is the inner product with the bit decomposition") {
    for (int p : {3, 4}) {
        for (int x = 0; x < (1 << p); ++x) {
            for (int i = 0; i < p; ++i) CHECK(extended_bit(x, 1 << i, p) == (x >> i & 1));
            CHECK(extended_bit(0, 1 + (x % ((1 << p) - 1)), p) == 0);
        }
    }
    for (int x = 0; x < 8; ++x) CHECK(extended_bit(x, 5, 3) == ((x & 1) ^ (x >> 2 & 1)));
    CHECK_THROWS(extended_bit(0, 0, 3));
    CHECK_THROWS(extended_bit(0, 8, 3));
}

TEST_CASE("extend concatenates binary image and extended bits in column order") {
    Field f3(3);
    auto a = ExtensionMatrix::make(f3, {5, 6});
    CHECK(a.columns() == std::vector<int>{1, 2, 4, 5, 6});
    for (int x = 0; x < 8; ++x) {
        int x0 = x & 1, x1 = x >> 1 & 1, x2 = x >> 2 & 1;
        CHECK(a.extend(x) == std::vector<int>{x0, x1, x2, x0 ^ x2, x1 ^ x2});
    }
    auto id = ExtensionMatrix::make(f3, {});
    CHECK(id.extend(6) == std::vector<int>{0, 1, 1});

    Field f4(4);
    auto full = ExtensionMatrix::make(f4, {3, 5, 6, 7, 9, 10, 11, 12, 13, 14, 15});
    auto bits = full.extend(1);
    REQUIRE(bits.size() == 15);
    // x = 1: alpha_k = k_0, the low bit of the column index
    const auto& cols = full.columns();
    for (size_t j = 0; j < bits.size(); ++j) CHECK(bits[j] == (cols[j] & 1));
}

TEST_CASE("matrix construction validates columns") {
    Field f(4);
    CHECK_THROWS(ExtensionMatrix::make(f, {1}));       // trivial column
    CHECK_THROWS(ExtensionMatrix::make(f, {3, 3}));    // repeat
    CHECK_THROWS(ExtensionMatrix::make(f, {16}));      // out of range
    auto rep = ExtensionMatrix::make_with_columns(f, {1, 1, 1});  // repetition baseline
    CHECK(rep.t() == 7);
    CHECK(rep.k_ext() == 3);
}

TEST_CASE("dmin worked examples") {
    Field f4(4), f3(3);
    CHECK(dmin(ExtensionMatrix::make(f4, {})) == 5);   // identity: t+1
    CHECK(dmin(ExtensionMatrix::make(f3, {})) == 4);
    CHECK(dmin(ExtensionMatrix::make(f4, {3})) == 3);  // [3] = e0 + e1
    CHECK(dmin(ExtensionMatrix::make(f4, {15})) == 5);
    CHECK(dmin(ExtensionMatrix::make_with_columns(f4, {1})) == 2);  // repeated bit
}

TEST_CASE("dmin equals the brute-force oracle on random matrices") {
    Field f(4);
    Rng rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
        int k = rng.below(12);
        auto a = random_extension(f, k, rng.next());
        CHECK(dmin(a) == oracle_dmin(a.columns(), 4));
    }
    Field f8(8);
    for (int trial = 0; trial < 20; ++trial) {
        auto a = random_extension(f8, rng.below(10), rng.next());
        CHECK(dmin(a) == oracle_dmin(a.columns(), 8));
    }
}

TEST_CASE("expected eligible symbols: endpoints and p=1 closed form") {
    Field f4(4), f1(1);
    auto a = ExtensionMatrix::make(f4, {15});
    CHECK(expected_eligible(a, 0.0) == doctest::Approx(1.0));
    CHECK(expected_eligible(a, 1.0) == doctest::Approx(16.0));
    auto i1 = ExtensionMatrix::make(f1, {});
    for (double eps : {0.0, 0.25, 0.5, 0.9})
        CHECK(expected_eligible(i1, eps) == doctest::Approx(1 + eps));
    CHECK_THROWS(expected_eligible(a, -0.1));
    CHECK_THROWS(expected_eligible(a, 1.1));
}

TEST_CASE("expected eligible matches direct erasure-pattern enumeration") {
    Field f(3);
    Rng rng(77);
    for (int trial = 0; trial < 30; ++trial) {
        auto a = random_extension(f, rng.below(5), rng.next());
        int t = a.t();
        for (double eps : {0.2, 0.5, 0.8}) {
            double want = 0.0;
            for (int mask = 0; mask < (1 << t); ++mask) {
                std::vector<int> rec;
                for (int j = 0; j < t; ++j)
                    if (mask >> j & 1) rec.push_back(a.columns()[j]);
                int r = BitMatrix::from_columns(rec, 3).rank();
                int nrec = static_cast<int>(rec.size());
                want += std::pow(1 - eps, nrec) * std::pow(eps, t - nrec) * (1 << (3 - r));
            }
            CHECK(expected_eligible(a, eps) == doctest::Approx(want).epsilon(1e-9));
        }
    }
}

TEST_CASE("appending a column never increases expected eligible symbols") {
    for (int p : {3, 4}) {
        Field f(p);
        Rng rng(31 + p);
        for (int trial = 0; trial < 40; ++trial) {
            int k = rng.below(1 << p) % ((1 << p) - p - 1);
            auto a = random_extension(f, k, rng.next());
            // pick a column not yet present
            int extra = 0;
            do {
                extra = 1 + rng.below((1 << p) - 1);
            } while (std::count(a.columns().begin(), a.columns().end(), extra));
            auto cols = a.extra_columns();
            cols.push_back(extra);
            auto b = ExtensionMatrix::make_with_columns(f, cols);
            for (double eps : {0.1, 0.3, 0.5, 0.7, 0.9})
                CHECK(expected_eligible(b, eps) <= expected_eligible(a, eps) + 1e-12);
        }
    }
}

TEST_CASE("selection: best single extended bit over GF(16) is the all-ones column") {
    Field f(4);
    auto rep = select_extension(f, 1);
    CHECK(rep.matrix.columns() == std::vector<int>{1, 2, 4, 8, 15});
    CHECK(rep.dmin == 5);

    auto rep0 = select_extension(f, 0);
    CHECK(rep0.matrix.columns() == std::vector<int>{1, 2, 4, 8});

    auto rep11 = select_extension(f, 11);
    CHECK(rep11.matrix.t() == 15);
    CHECK(rep11.dmin == 3);

    CHECK_THROWS(select_extension(f, 12));
    CHECK_THROWS(select_extension(f, -1));
}

TEST_CASE("selection achieves the maximal dmin found by brute force") {
    Field f(3);
    for (int k = 0; k <= 4; ++k) {
        auto rep = select_extension(f, k);
        // brute force over all subsets of the 4 nontrivial columns {3,5,6,7}
        std::vector<int> nontrivial = {3, 5, 6, 7};
        int best = 0;
        for (int mask = 0; mask < 16; ++mask) {
            if (__builtin_popcount(mask) != k) continue;
            std::vector<int> cols = {1, 2, 4};
            for (int j = 0; j < 4; ++j)
                if (mask >> j & 1) cols.push_back(nontrivial[j]);
            best = std::max(best, oracle_dmin(cols, 3));
        }
        CHECK(rep.dmin == best);
    }
}

TEST_CASE("random extension is deterministic and uniform-ish") {
    Field f(4);
    auto a = random_extension(f, 3, 9001);
    auto b = random_extension(f, 3, 9001);
    CHECK(a == b);
    CHECK(random_extension(f, 0, 1).columns() == std::vector<int>{1, 2, 4, 8});
    CHECK(random_extension(f, 11, 5).t() == 15);
    // different seeds eventually differ
    bool differs = false;
    for (uint64_t s = 0; s < 16 && !differs; ++s)
        differs = !(random_extension(f, 3, s) == a);
    CHECK(differs);
}
