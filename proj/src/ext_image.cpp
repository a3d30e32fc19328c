#include "ext_image.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "rng.hpp"

namespace nbldpc {

namespace {

bool is_power_of_two(int k) { return k > 0 && (k & (k - 1)) == 0; }

std::vector<int> identity_columns(int p) {
    std::vector<int> cols(p);
    for (int i = 0; i < p; ++i) cols[i] = 1 << i;
    return cols;
}

std::vector<int> nontrivial_columns(const Field& f) {
    std::vector<int> out;
    for (int k = 3; k < f.q(); ++k)
        if (!is_power_of_two(k)) out.push_back(k);
    return out;
}

int rank_of_columns(const int* cols, int n) {
    int basis[8] = {0};
    int rk = 0;
    for (int j = 0; j < n; ++j) {
        int v = cols[j];
        while (v) {
            int lead = 31 - std::countl_zero(static_cast<unsigned>(v));
            if (basis[lead]) {
                v ^= basis[lead];
            } else {
                basis[lead] = v;
                ++rk;
                break;
            }
        }
    }
    return rk;
}

}  // namespace

ExtensionMatrix ExtensionMatrix::make(const Field& f, std::vector<int> extra_cols) {
    std::sort(extra_cols.begin(), extra_cols.end());
    std::vector<int> seen;
    for (int k : extra_cols) {
        if (k < 1 || k >= f.q()) throw std::out_of_range("extension column out of [1, q-1]");
        if (is_power_of_two(k))
            throw std::invalid_argument("extension column duplicates a binary-image bit");
    }
    if (std::adjacent_find(extra_cols.begin(), extra_cols.end()) != extra_cols.end())
        throw std::invalid_argument("extension columns must be pairwise distinct");
    std::vector<int> cols = identity_columns(f.p());
    cols.insert(cols.end(), extra_cols.begin(), extra_cols.end());
    return ExtensionMatrix(f.p(), std::move(cols));
}

ExtensionMatrix ExtensionMatrix::make_with_columns(const Field& f, std::vector<int> extra_cols) {
    for (int k : extra_cols)
        if (k < 1 || k >= f.q()) throw std::out_of_range("extension column out of [1, q-1]");
    std::vector<int> cols = identity_columns(f.p());
    cols.insert(cols.end(), extra_cols.begin(), extra_cols.end());
    return ExtensionMatrix(f.p(), std::move(cols));
}

std::vector<int> ExtensionMatrix::extend(int x) const {
    std::vector<int> bits(cols_.size());
    for (size_t j = 0; j < cols_.size(); ++j) bits[j] = extended_bit(x, cols_[j], p_);
    return bits;
}

int extended_bit(int x, int k, int p) {
    if (k < 1 || k >= (1 << p)) throw std::out_of_range("extended_bit: k out of [1, q-1]");
    if (x < 0 || x >= (1 << p)) throw std::out_of_range("extended_bit: x out of field");
    return bit_parity(static_cast<unsigned>(x & k));
}

int dmin(const ExtensionMatrix& a) {
    const std::vector<int>& cols = a.columns();
    int t = a.t();
    if (t <= 20) {
        std::vector<uint16_t> x(1u << t);
        int best = t + 1;
        for (uint32_t m = 1; m < (1u << t); ++m) {
            int low = std::countr_zero(m);
            x[m] = x[m & (m - 1)] ^ static_cast<uint16_t>(cols[low]);
            if (x[m] == 0) best = std::min(best, std::popcount(m));
        }
        return best;
    }
    // t > 20: exact up to subset size 4, capped at 5.
    std::unordered_set<int> col_set(cols.begin(), cols.end());
    for (int i = 0; i < t; ++i)
        for (int j = i + 1; j < t; ++j)
            if (cols[i] == cols[j]) return 2;
    for (int i = 0; i < t; ++i)
        for (int j = i + 1; j < t; ++j)
            if (col_set.count(cols[i] ^ cols[j])) return 3;
    for (int i = 0; i < t; ++i)
        for (int j = i + 1; j < t; ++j)
            for (int k = j + 1; k < t; ++k)
                if (col_set.count(cols[i] ^ cols[j] ^ cols[k])) return 4;
    return 5;
}

std::vector<double> eligible_subset_sums(const ExtensionMatrix& a) {
    const std::vector<int>& cols = a.columns();
    int t = a.t(), p = a.p();
    if (t > 20) throw std::invalid_argument("subset enumeration limited to t <= 20 columns");
    std::vector<double> sums(t + 1, 0.0);
    std::vector<int> sub;
    sub.reserve(t);
    for (uint32_t m = 0; m < (1u << t); ++m) {
        sub.clear();
        uint32_t mm = m;
        while (mm) {
            sub.push_back(cols[std::countr_zero(mm)]);
            mm &= mm - 1;
        }
        int rk = rank_of_columns(sub.data(), static_cast<int>(sub.size()));
        sums[sub.size()] += static_cast<double>(1 << (p - rk));
    }
    return sums;
}

double expected_eligible(const ExtensionMatrix& a, double eps, double* std_err) {
    if (eps < 0.0 || eps > 1.0) throw std::out_of_range("erasure probability out of [0, 1]");
    int t = a.t(), p = a.p();
    if (t <= 20) {
        std::vector<double> sums = eligible_subset_sums(a);
        double e = 0.0;
        for (int i = 0; i <= t; ++i)
            e += std::pow(1.0 - eps, i) * std::pow(eps, t - i) * sums[i];
        if (std_err) *std_err = 0.0;
        return e;
    }
    // Monte-Carlo estimate for wide matrices.
    const int trials = 100000;
    Rng rng(0xE11Au, static_cast<uint64_t>(t));
    const std::vector<int>& cols = a.columns();
    std::vector<int> rec;
    double sum = 0.0, sumsq = 0.0;
    for (int i = 0; i < trials; ++i) {
        rec.clear();
        for (int c : cols)
            if (!rng.bernoulli(eps)) rec.push_back(c);
        double v = static_cast<double>(1 << (p - rank_of_columns(rec.data(), static_cast<int>(rec.size()))));
        sum += v;
        sumsq += v * v;
    }
    double mean = sum / trials;
    if (std_err) *std_err = std::sqrt(std::max(0.0, sumsq / trials - mean * mean) / trials);
    return mean;
}

SelectionReport select_extension(const Field& f, int k_ext) {
    std::vector<int> pool = nontrivial_columns(f);
    if (k_ext < 0 || k_ext > static_cast<int>(pool.size()))
        throw std::out_of_range("k_ext out of [0, q-p-1]");

    std::vector<int> best_cols;
    int best_dmin = -1;
    double best_e = 0.0;

    auto consider = [&](const std::vector<int>& extra) {
        ExtensionMatrix cand = ExtensionMatrix::make(f, extra);
        int d = dmin(cand);
        if (d < best_dmin) return;
        if (d > best_dmin) {
            best_dmin = d;
            best_e = expected_eligible(cand, 0.5);
            best_cols = extra;
            return;
        }
        double ce = expected_eligible(cand, 0.5);
        // ties: smaller E(A) at 0.5, then lexicographically smaller columns
        if (ce < best_e - 1e-12 ||
            (std::abs(ce - best_e) <= 1e-12 && extra < best_cols)) {
            best_e = ce;
            best_cols = extra;
        }
    };

    if (f.q() <= 16) {
        // exhaustive: all k_ext-subsets of the nontrivial pool, lex order
        std::vector<int> idx(k_ext);
        for (int i = 0; i < k_ext; ++i) idx[i] = i;
        std::vector<int> extra(k_ext);
        while (true) {
            for (int i = 0; i < k_ext; ++i) extra[i] = pool[idx[i]];
            consider(extra);
            int i = k_ext - 1;
            while (i >= 0 && idx[i] == static_cast<int>(pool.size()) - k_ext + i) --i;
            if (i < 0) break;
            ++idx[i];
            for (int j = i + 1; j < k_ext; ++j) idx[j] = idx[j - 1] + 1;
        }
    } else {
        // randomized search with dmin filtering (outside the exact regime)
        for (int s = 0; s < 2000; ++s)
            consider(random_extension(f, k_ext, static_cast<uint64_t>(s)).extra_columns());
    }

    ExtensionMatrix best = ExtensionMatrix::make(f, best_cols);
    SelectionReport rep{best, best_dmin, {}};
    for (double eps : {0.2, 0.5, 0.8})
        rep.expected_eligible_at.emplace_back(eps, expected_eligible(best, eps));
    return rep;
}

ExtensionMatrix random_extension(const Field& f, int k_ext, uint64_t seed) {
    std::vector<int> pool = nontrivial_columns(f);
    if (k_ext < 0 || k_ext > static_cast<int>(pool.size()))
        throw std::out_of_range("k_ext out of [0, q-p-1]");
    Rng rng(seed);
    for (int i = 0; i < k_ext; ++i) {
        int j = i + static_cast<int>(rng.below(pool.size() - i));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(k_ext);
    return ExtensionMatrix::make(f, pool);
}

}  // namespace nbldpc
