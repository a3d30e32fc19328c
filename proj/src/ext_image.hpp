#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "bitmatrix.hpp"
#include "gf.hpp"
#include "subspace.hpp"

namespace nbldpc {

// Extension matrix A = [I_p | B]. Columns are stored as the integers k whose
// binary decomposition forms the column, so the j-th transmitted bit is the
// extended bit alpha_{columns[j]}. The first p columns are always the powers
// of two (the binary image itself). Construction helpers produce pairwise
// distinct columns; make_with_columns also accepts repeated columns, used to
// model plain bit repetition as a baseline.
class ExtensionMatrix {
public:
    // [I_p] followed by the given nontrivial columns.
    static ExtensionMatrix make(const Field& f, std::vector<int> extra_cols);
    // Arbitrary trailing columns (repetitions allowed).
    static ExtensionMatrix make_with_columns(const Field& f, std::vector<int> extra_cols);

    int p() const { return p_; }
    int t() const { return static_cast<int>(cols_.size()); }
    int k_ext() const { return t() - p_; }
    const std::vector<int>& columns() const { return cols_; }
    std::vector<int> extra_columns() const { return {cols_.begin() + p_, cols_.end()}; }

    BitMatrix as_bitmatrix() const { return BitMatrix::from_columns(cols_, p_); }

    // alpha_k for each column, in column order.
    std::vector<int> extend(int x) const;

    bool operator==(const ExtensionMatrix& o) const { return p_ == o.p_ && cols_ == o.cols_; }

private:
    ExtensionMatrix(int p, std::vector<int> cols) : p_(p), cols_(std::move(cols)) {}

    int p_;
    std::vector<int> cols_;
};

struct SelectionReport {
    ExtensionMatrix matrix;
    int dmin;
    std::vector<std::pair<double, double>> expected_eligible_at;  // (eps, E(A))
};

// alpha_k = <binary image of x, binary decomposition of k>.
int extended_bit(int x, int k, int p);

// Smallest cardinality of a linearly dependent column subset; t+1 when every
// subset is independent. Exact for t <= 20; larger matrices are scanned up
// to subsets of size 4 and capped at 5 (outside the exact-search regime).
int dmin(const ExtensionMatrix& a);

// Expected number of eligible symbols after BEC transmission at erasure
// probability eps. Exact subset enumeration for t <= 20, Monte-Carlo beyond
// (std_err, when non-null, receives the standard error; 0 for exact).
double expected_eligible(const ExtensionMatrix& a, double eps, double* std_err = nullptr);

// Per-subset-size sums S_i = sum over i-column subsets of 2^{p-rank}; the
// polynomial coefficients of E(A). Exact, t <= 20.
std::vector<double> eligible_subset_sums(const ExtensionMatrix& a);

// Exhaustive search over nontrivial-column subsets: maximal dmin, ties
// broken by minimal E(A) at eps = 0.5, then lexicographically smallest
// column list. For q > 16 a seeded randomized search is used instead.
SelectionReport select_extension(const Field& f, int k_ext);

// Uniformly random k_ext-subset of nontrivial columns, sorted.
ExtensionMatrix random_extension(const Field& f, int k_ext, uint64_t seed);

}  // namespace nbldpc
