#include "code.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "rng.hpp"

namespace nbldpc {

namespace {

// Largest-remainder rounding of fractions * total to non-negative integers
// summing to total. Ties resolved by smaller key.
std::vector<int> largest_remainder(const std::vector<double>& fractions, int total) {
    int n = static_cast<int>(fractions.size());
    std::vector<int> counts(n);
    std::vector<std::pair<double, int>> rem(n);
    int assigned = 0;
    for (int i = 0; i < n; ++i) {
        double x = fractions[i] * total;
        counts[i] = static_cast<int>(x);
        assigned += counts[i];
        rem[i] = {x - counts[i], i};
    }
    std::sort(rem.begin(), rem.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    });
    for (int i = 0; i < total - assigned; ++i) ++counts[rem[i % n].second];
    return counts;
}

}  // namespace

std::vector<std::vector<int>> TannerGraph::sym_adj() const {
    std::vector<std::vector<int>> adj(n_sym);
    for (int e = 0; e < static_cast<int>(edges.size()); ++e) adj[edges[e].sym].push_back(e);
    return adj;
}

std::vector<std::vector<int>> TannerGraph::chk_adj() const {
    std::vector<std::vector<int>> adj(n_chk);
    for (int e = 0; e < static_cast<int>(edges.size()); ++e) adj[edges[e].chk].push_back(e);
    return adj;
}

NBCode::NBCode(TannerGraph graph, Field field) : graph_(std::move(graph)), field_(field) {
    for (const Edge& e : graph_.edges) {
        if (e.label < 1 || e.label >= field_.q())
            throw std::invalid_argument("edge label must be a nonzero field element");
        if (e.sym < 0 || e.sym >= graph_.n_sym || e.chk < 0 || e.chk >= graph_.n_chk)
            throw std::out_of_range("edge endpoint out of range");
    }
}

void NBCode::prepare() const {
    if (prepared_) return;
    int n = graph_.n_sym, m = graph_.n_chk, q = field_.q();
    // flat multiplication table for fast row operations
    std::vector<uint8_t> mul(static_cast<size_t>(q) * q);
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b) mul[static_cast<size_t>(a) * q + b] = static_cast<uint8_t>(field_.mul(a, b));

    std::vector<std::vector<uint8_t>> rows(m, std::vector<uint8_t>(n, 0));
    for (const Edge& e : graph_.edges) rows[e.chk][e.sym] = static_cast<uint8_t>(e.label);

    pivot_cols_.clear();
    int pr = 0;
    for (int c = 0; c < n && pr < m; ++c) {
        int sel = -1;
        for (int r = pr; r < m; ++r)
            if (rows[r][c]) { sel = r; break; }
        if (sel < 0) continue;
        std::swap(rows[pr], rows[sel]);
        int inv = field_.inv(rows[pr][c]);
        if (inv != 1) {
            const uint8_t* scale = &mul[static_cast<size_t>(inv) * q];
            for (int j = c; j < n; ++j) rows[pr][j] = scale[rows[pr][j]];
        }
        for (int r = 0; r < m; ++r) {
            if (r == pr || !rows[r][c]) continue;
            const uint8_t* scale = &mul[static_cast<size_t>(rows[r][c]) * q];
            uint8_t* dst = rows[r].data();
            const uint8_t* src = rows[pr].data();
            for (int j = c; j < n; ++j) dst[j] ^= scale[src[j]];
        }
        pivot_cols_.push_back(c);
        ++pr;
    }
    int rank = pr;
    k_ = n - rank;
    free_cols_.clear();
    size_t pi = 0;
    for (int c = 0; c < n; ++c) {
        if (pi < pivot_cols_.size() && pivot_cols_[pi] == c) {
            ++pi;
        } else {
            free_cols_.push_back(c);
        }
    }
    rows.resize(rank);
    rref_rows_ = std::move(rows);
    prepared_ = true;
}

std::vector<int> NBCode::encode(const std::vector<int>& message) const {
    prepare();
    if (static_cast<int>(message.size()) != k_)
        throw std::invalid_argument("message length must equal K = N - rank(H)");
    std::vector<int> word(n(), 0);
    for (size_t i = 0; i < free_cols_.size(); ++i) word[free_cols_[i]] = message[i];
    // each RREF row: X_pivot = sum of label * X_j over the non-pivot entries
    for (size_t r = 0; r < rref_rows_.size(); ++r) {
        int acc = 0;
        for (int f : free_cols_) {
            int h = rref_rows_[r][f];
            if (h) acc ^= field_.mul(h, word[f]);
        }
        word[pivot_cols_[r]] = acc;
    }
    return word;
}

bool NBCode::check_codeword(const std::vector<int>& word) const {
    if (static_cast<int>(word.size()) != n()) return false;
    std::vector<int> syndrome(m(), 0);
    for (const Edge& e : graph_.edges) syndrome[e.chk] ^= field_.mul(e.label, word[e.sym]);
    return std::all_of(syndrome.begin(), syndrome.end(), [](int s) { return s == 0; });
}

std::string NBCode::to_text() const {
    std::ostringstream out;
    out << graph_.n_sym << " " << graph_.n_chk << " " << field_.q() << "\n";
    auto adj = graph_.sym_adj();
    for (int s = 0; s < graph_.n_sym; ++s) {
        out << adj[s].size() << ":";
        for (int e : adj[s]) out << " " << graph_.edges[e].chk << "," << graph_.edges[e].label;
        out << "\n";
    }
    return out.str();
}

void NBCode::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << to_text();
}

NBCode NBCode::parse(const std::string& text) {
    std::istringstream in(text);
    int n, m, q;
    if (!(in >> n >> m >> q)) throw std::invalid_argument("bad code file header");
    int p = 0;
    while ((1 << p) < q) ++p;
    if ((1 << p) != q) throw std::invalid_argument("q must be a power of 2");
    Field field(p);
    TannerGraph g;
    g.n_sym = n;
    g.n_chk = m;
    std::string tok;
    for (int s = 0; s < n; ++s) {
        int d;
        char colon;
        if (!(in >> d >> colon) || colon != ':')
            throw std::invalid_argument("bad code file node line");
        for (int i = 0; i < d; ++i) {
            int c, l;
            char comma;
            if (!(in >> c >> comma >> l) || comma != ',')
                throw std::invalid_argument("bad (check,label) pair");
            g.edges.push_back({s, c, l});
        }
    }
    return NBCode(std::move(g), field);
}

NBCode NBCode::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

NBCode peg_construct(const DegreeDistribution& dd, int n, const Field& field, uint64_t seed) {
    // symbol-node degree counts (largest remainder on node fractions)
    std::vector<int> sym_degs = dd.symbol_degrees();
    std::vector<double> sym_frac;
    for (int d : sym_degs) sym_frac.push_back(dd.node_fraction(d));
    std::vector<int> sym_counts = largest_remainder(sym_frac, n);

    std::vector<int> node_degree;
    node_degree.reserve(n);
    for (size_t i = 0; i < sym_degs.size(); ++i)
        node_degree.insert(node_degree.end(), sym_counts[i], sym_degs[i]);
    int n_edges = std::accumulate(node_degree.begin(), node_degree.end(), 0);

    // check-node capacities from rho
    int m = static_cast<int>(std::lround(n_edges * dd.int_rho()));
    if (m < 1) throw std::invalid_argument("infeasible degree sequence: no check nodes");
    std::vector<int> chk_degs = dd.check_degrees();
    std::vector<double> chk_frac;
    for (int d : chk_degs) chk_frac.push_back(dd.check_node_fraction(d));
    std::vector<int> chk_counts = largest_remainder(chk_frac, m);
    std::vector<int> capacity;
    capacity.reserve(m);
    for (size_t i = 0; i < chk_degs.size(); ++i)
        capacity.insert(capacity.end(), chk_counts[i], chk_degs[i]);
    // reconcile the capacity sum with the exact edge count
    int slots = std::accumulate(capacity.begin(), capacity.end(), 0);
    for (int i = 0; slots < n_edges; i = (i + 1) % m, ++slots) ++capacity[i];
    for (int i = 0; slots > n_edges; i = (i + 1) % m) {
        if (capacity[i] > 1) { --capacity[i]; --slots; }
    }

    // PEG: process symbol nodes in increasing degree order
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return node_degree[a] < node_degree[b]; });

    std::vector<std::vector<int>> sym_nbrs(n), chk_nbrs(m);
    std::vector<int> chk_deg_now(m, 0);

    std::vector<int> depth(m);
    std::vector<int> sym_seen(n);
    int stamp = 0;
    std::vector<int> frontier_sym, next_sym;

    auto bfs_depths = [&](int root) {
        // depth[c] = distance (in check levels) from root symbol; -1 unreached
        ++stamp;
        std::fill(depth.begin(), depth.end(), -1);
        frontier_sym.clear();
        frontier_sym.push_back(root);
        sym_seen[root] = stamp;
        int level = 0;
        while (!frontier_sym.empty()) {
            next_sym.clear();
            for (int s : frontier_sym) {
                for (int c : sym_nbrs[s]) {
                    if (depth[c] >= 0) continue;
                    depth[c] = level;
                    for (int s2 : chk_nbrs[c]) {
                        if (sym_seen[s2] != stamp) {
                            sym_seen[s2] = stamp;
                            next_sym.push_back(s2);
                        }
                    }
                }
            }
            frontier_sym.swap(next_sym);
            ++level;
        }
    };

    // Pick uniformly among the maximum-distance checks with free capacity.
    // A minimum-degree preference here would equalize every check's mix of
    // neighbor degrees, which departs from the ensemble the density-evolution
    // analysis models and measurably flattens the waterfall; capacity limits
    // alone already pin the exact check-degree profile.
    Rng tie_rng(seed, 0x7e9ULL);
    std::vector<int> ties;
    for (int s : order) {
        for (int e = 0; e < node_degree[s]; ++e) {
            ties.clear();
            if (e == 0) {
                for (int c = 0; c < m; ++c)
                    if (chk_deg_now[c] < capacity[c]) ties.push_back(c);
            } else {
                bfs_depths(s);
                int best_rank = -1;  // unreached checks rank above any finite depth
                for (int c = 0; c < m; ++c) {
                    if (chk_deg_now[c] >= capacity[c]) continue;
                    bool dup = false;
                    for (int c2 : sym_nbrs[s])
                        if (c2 == c) { dup = true; break; }
                    if (dup) continue;  // no parallel edges
                    int rank = depth[c] < 0 ? 1 << 30 : depth[c];
                    if (rank > best_rank) {
                        best_rank = rank;
                        ties.clear();
                    }
                    if (rank == best_rank) ties.push_back(c);
                }
            }
            if (ties.empty()) {
                // Every check with free capacity is already a neighbor of s.
                // Repair by rewiring: move an edge (s2, c2) with c2 not adjacent
                // to s onto a free slot c', then give s the freed slot at c2.
                std::vector<int> free_chk;
                for (int c = 0; c < m; ++c)
                    if (chk_deg_now[c] < capacity[c]) free_chk.push_back(c);
                if (free_chk.empty())
                    throw std::invalid_argument("infeasible degree sequence: checks exhausted");
                bool fixed = false;
                for (int attempt = 0; attempt < 100000 && !fixed; ++attempt) {
                    int cp = free_chk[tie_rng.below(free_chk.size())];
                    int s2 = static_cast<int>(tie_rng.below(static_cast<uint64_t>(n)));
                    if (s2 == s || sym_nbrs[s2].empty()) continue;
                    int slot = static_cast<int>(tie_rng.below(sym_nbrs[s2].size()));
                    int c2 = sym_nbrs[s2][slot];
                    bool bad = false;
                    for (int c : sym_nbrs[s])
                        if (c == c2) { bad = true; break; }
                    for (int c : sym_nbrs[s2])
                        if (c == cp) { bad = true; break; }
                    if (bad) continue;
                    sym_nbrs[s2][slot] = cp;
                    chk_nbrs[c2].erase(std::find(chk_nbrs[c2].begin(), chk_nbrs[c2].end(), s2));
                    chk_nbrs[cp].push_back(s2);
                    ++chk_deg_now[cp];
                    sym_nbrs[s].push_back(c2);
                    chk_nbrs[c2].push_back(s);
                    fixed = true;
                }
                if (!fixed)
                    throw std::invalid_argument("infeasible degree sequence: checks exhausted");
                continue;
            }
            int best = ties[tie_rng.below(ties.size())];
            sym_nbrs[s].push_back(best);
            chk_nbrs[best].push_back(s);
            ++chk_deg_now[best];
        }
    }

    TannerGraph g;
    g.n_sym = n;
    g.n_chk = m;
    Rng label_rng(seed, 0x1abe15ULL);
    for (int s = 0; s < n; ++s) {
        std::vector<int> cs = sym_nbrs[s];
        std::sort(cs.begin(), cs.end());
        for (int c : cs)
            g.edges.push_back({s, c, 1 + static_cast<int>(label_rng.below(field.q() - 1))});
    }
    return NBCode(std::move(g), field);
}

}  // namespace nbldpc
