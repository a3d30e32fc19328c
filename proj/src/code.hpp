#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "degree_dist.hpp"
#include "gf.hpp"

namespace nbldpc {

struct Edge {
    int sym;
    int chk;
    int label;  // nonzero field element
};

// Labeled bipartite graph: N symbol nodes, M constraint nodes.
struct TannerGraph {
    int n_sym = 0;
    int n_chk = 0;
    std::vector<Edge> edges;  // sorted by (sym, chk)

    std::vector<std::vector<int>> sym_adj() const;  // edge indices per symbol
    std::vector<std::vector<int>> chk_adj() const;  // edge indices per check
};

// A concrete NB-LDPC code: graph, field, and (lazily) the systematic form
// of its parity-check matrix used for encoding.
class NBCode {
public:
    NBCode(TannerGraph graph, Field field);

    const TannerGraph& graph() const { return graph_; }
    const Field& field() const { return field_; }

    int n() const { return graph_.n_sym; }
    int m() const { return graph_.n_chk; }
    int k() const { prepare(); return k_; }
    double rate() const { return static_cast<double>(k()) / n(); }

    // Information symbol positions (non-pivot columns of the RREF of H).
    const std::vector<int>& systematic_positions() const { prepare(); return free_cols_; }

    std::vector<int> encode(const std::vector<int>& message) const;
    bool check_codeword(const std::vector<int>& word) const;

    void save(const std::string& path) const;
    static NBCode load(const std::string& path);
    std::string to_text() const;
    static NBCode parse(const std::string& text);

private:
    void prepare() const;

    TannerGraph graph_;
    Field field_;

    mutable bool prepared_ = false;
    mutable int k_ = 0;
    mutable std::vector<int> pivot_cols_, free_cols_;
    mutable std::vector<std::vector<uint8_t>> rref_rows_;  // rank rows, N entries each
};

// Progressive edge growth construction: symbol/check degree sequences from
// the node-perspective rounding of (lambda, rho), greedy girth-maximizing
// placement, uniform random nonzero labels. Deterministic given seed.
NBCode peg_construct(const DegreeDistribution& dd, int n, const Field& field, uint64_t seed);

}  // namespace nbldpc
