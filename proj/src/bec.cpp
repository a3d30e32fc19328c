#include "bec.hpp"

#include <algorithm>
#include <stdexcept>

#include "rng.hpp"

namespace nbldpc {

ErasurePattern::ErasurePattern(const std::vector<int>& lengths) : lengths_(lengths) {
    for (int t : lengths_)
        if (t < 0 || t > 255) throw std::invalid_argument("node image length out of range");
    words_.assign(lengths_.size() * 4, 0);
}

ErasurePattern transmit(const std::vector<ExtensionMatrix>& assignment, double eps,
                        uint64_t seed) {
    if (eps < 0.0 || eps > 1.0) throw std::out_of_range("erasure probability out of [0, 1]");
    std::vector<int> lengths(assignment.size());
    for (size_t n = 0; n < assignment.size(); ++n) lengths[n] = assignment[n].t();
    ErasurePattern pat(lengths);
    for (size_t n = 0; n < assignment.size(); ++n) {
        Rng rng(seed, n);
        for (int j = 0; j < lengths[n]; ++j)
            if (!rng.bernoulli(eps)) pat.set_received(static_cast<int>(n), j);
    }
    return pat;
}

AffineSubspace channel_set(const ExtensionMatrix& a, const std::vector<int>& received_pos,
                           const std::vector<int>& received_val) {
    if (received_pos.size() != received_val.size())
        throw std::invalid_argument("channel_set: positions/values size mismatch");
    std::vector<int> cols(received_pos.size());
    for (size_t j = 0; j < received_pos.size(); ++j) cols[j] = a.columns().at(received_pos[j]);
    AffineSubspace s = AffineSubspace::solve(a.p(), cols, received_val);
    if (s.is_empty())
        throw std::runtime_error("inconsistent received bits (input is not a BEC output)");
    return s;
}

namespace {

struct Wiring {
    std::vector<std::vector<int>> sym_edges, chk_edges;
    std::vector<int> labels, inv_labels, edge_sym, edge_chk;
};

Wiring wire(const NBCode& code) {
    Wiring w;
    w.sym_edges = code.graph().sym_adj();
    w.chk_edges = code.graph().chk_adj();
    const auto& edges = code.graph().edges;
    w.labels.resize(edges.size());
    w.inv_labels.resize(edges.size());
    w.edge_sym.resize(edges.size());
    w.edge_chk.resize(edges.size());
    for (size_t e = 0; e < edges.size(); ++e) {
        w.labels[e] = edges[e].label;
        w.inv_labels[e] = code.field().inv(edges[e].label);
        w.edge_sym[e] = edges[e].sym;
        w.edge_chk[e] = edges[e].chk;
    }
    return w;
}

std::vector<AffineSubspace> channel_sets(const NBCode& code,
                                         const std::vector<ExtensionMatrix>& assignment,
                                         const ErasurePattern& pattern,
                                         const std::vector<int>* codeword) {
    int n = code.n(), p = code.field().p();
    if (static_cast<int>(assignment.size()) != n)
        throw std::invalid_argument("assignment size must equal N");
    std::vector<AffineSubspace> ch(n, AffineSubspace::full(p));
    std::vector<int> pos, val;
    for (int s = 0; s < n; ++s) {
        pos.clear();
        val.clear();
        std::vector<int> bits;
        if (codeword) bits = assignment[s].extend((*codeword)[s]);
        for (int j = 0; j < assignment[s].t(); ++j) {
            if (!pattern.received(s, j)) continue;
            pos.push_back(j);
            val.push_back(codeword ? bits[j] : 0);
        }
        ch[s] = channel_set(assignment[s], pos, val);
    }
    return ch;
}

DecodeOutcome make_outcome(const std::vector<AffineSubspace>& posterior, int iterations) {
    DecodeOutcome out;
    out.iterations = iterations;
    out.resolved.resize(posterior.size());
    out.bit_constant_mask.resize(posterior.size());
    out.bit_value_mask.resize(posterior.size());
    for (size_t s = 0; s < posterior.size(); ++s) {
        if (posterior[s].is_empty())
            throw std::logic_error("empty posterior: decoder invariant violated");
        out.resolved[s] = posterior[s].is_singleton();
        posterior[s].bit_resolution(out.bit_constant_mask[s], out.bit_value_mask[s]);
    }
    return out;
}

}  // namespace

DecodeOutcome decode(const NBCode& code, const std::vector<ExtensionMatrix>& assignment,
                     const ErasurePattern& pattern, int max_iters,
                     const std::vector<int>* codeword,
                     std::vector<std::vector<int>>* posterior_cards) {
    const Field& f = code.field();
    int p = f.p();
    Wiring w = wire(code);
    std::vector<AffineSubspace> ch = channel_sets(code, assignment, pattern, codeword);

    size_t n_edges = code.graph().edges.size();
    std::vector<AffineSubspace> c2v(n_edges, AffineSubspace::full(p));
    std::vector<AffineSubspace> v2c(n_edges, AffineSubspace::full(p));

    auto posterior_of = [&](int s) {
        AffineSubspace post = ch[s];
        for (int e : w.sym_edges[s]) post = post.intersect(c2v[e]);
        return post;
    };

    // all received / trivially resolved without any message passing
    {
        bool all = true;
        std::vector<AffineSubspace> post(code.n(), AffineSubspace::empty(p));
        for (int s = 0; s < code.n(); ++s) {
            post[s] = ch[s];
            all = all && post[s].is_singleton();
        }
        if (all) return make_outcome(post, 0);
    }

    std::vector<AffineSubspace> prefix, suffix;
    int iter = 0;
    for (iter = 1; iter <= max_iters; ++iter) {
        // variable to check: channel cap all other incoming messages
        for (int s = 0; s < code.n(); ++s) {
            const auto& es = w.sym_edges[s];
            int d = static_cast<int>(es.size());
            prefix.assign(d + 1, ch[s]);
            for (int i = 0; i < d; ++i) prefix[i + 1] = prefix[i].intersect(c2v[es[i]]);
            AffineSubspace suf = AffineSubspace::full(p);
            for (int i = d - 1; i >= 0; --i) {
                v2c[es[i]] = prefix[i].intersect(suf);
                suf = suf.intersect(c2v[es[i]]);
            }
        }
        // check to variable: scaled Minkowski sums of the other edges
        bool changed = false;
        for (int c = 0; c < code.m(); ++c) {
            const auto& es = w.chk_edges[c];
            int d = static_cast<int>(es.size());
            prefix.assign(d + 1, AffineSubspace::singleton(p, 0));
            for (int i = 0; i < d; ++i)
                prefix[i + 1] = prefix[i].sum(v2c[es[i]].scale(f, w.labels[es[i]]));
            AffineSubspace suf = AffineSubspace::singleton(p, 0);
            for (int i = d - 1; i >= 0; --i) {
                AffineSubspace msg =
                    prefix[i].sum(suf).scale(f, w.inv_labels[es[i]]);
                if (msg != c2v[es[i]]) changed = true;
                c2v[es[i]] = msg;
                suf = suf.sum(v2c[es[i]].scale(f, w.labels[es[i]]));
            }
        }
        if (posterior_cards) {
            std::vector<int> cards(code.n());
            for (int s = 0; s < code.n(); ++s) cards[s] = posterior_of(s).cardinality();
            posterior_cards->push_back(std::move(cards));
        }
        if (!changed) break;
    }

    std::vector<AffineSubspace> post(code.n(), AffineSubspace::empty(p));
    for (int s = 0; s < code.n(); ++s) post[s] = posterior_of(s);
    return make_outcome(post, std::min(iter, max_iters));
}

namespace {

using ElemSet = std::vector<int>;  // sorted

ElemSet set_intersect(const ElemSet& a, const ElemSet& b) {
    ElemSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

}  // namespace

DecodeOutcome oracle_decode(const NBCode& code, const std::vector<ExtensionMatrix>& assignment,
                            const ErasurePattern& pattern, int max_iters,
                            const std::vector<int>* codeword) {
    const Field& f = code.field();
    int p = f.p(), q = f.q();
    Wiring w = wire(code);

    // channel sets by direct enumeration of all q candidates
    std::vector<ElemSet> ch(code.n());
    for (int s = 0; s < code.n(); ++s) {
        std::vector<int> bits;
        if (codeword) bits = assignment[s].extend((*codeword)[s]);
        for (int x = 0; x < q; ++x) {
            std::vector<int> img = assignment[s].extend(x);
            bool ok = true;
            for (int j = 0; j < assignment[s].t(); ++j)
                if (pattern.received(s, j) && img[j] != (codeword ? bits[j] : 0)) {
                    ok = false;
                    break;
                }
            if (ok) ch[s].push_back(x);
        }
        if (ch[s].empty()) throw std::runtime_error("inconsistent received bits");
    }

    // size guard: enumeration at each check is prod of the other sets
    for (int c = 0; c < code.m(); ++c) {
        double prod = 1.0;
        for (size_t i = 1; i < w.chk_edges[c].size(); ++i) prod *= q;
        if (prod > 1e7) throw std::invalid_argument("oracle_decode: instance too large");
    }

    size_t n_edges = code.graph().edges.size();
    ElemSet full(q);
    for (int x = 0; x < q; ++x) full[x] = x;
    std::vector<ElemSet> c2v(n_edges, full), v2c(n_edges, full);

    auto finish = [&](int iters) {
        std::vector<AffineSubspace> post(code.n(), AffineSubspace::empty(p));
        for (int s = 0; s < code.n(); ++s) {
            ElemSet ps = ch[s];
            for (int e : w.sym_edges[s]) ps = set_intersect(ps, c2v[e]);
            post[s] = AffineSubspace::from_elements(p, ps);
        }
        return make_outcome(post, iters);
    };

    bool trivially_done = true;
    for (int s = 0; s < code.n(); ++s)
        if (ch[s].size() != 1) { trivially_done = false; break; }
    if (trivially_done) return finish(0);

    int iter;
    for (iter = 1; iter <= max_iters; ++iter) {
        for (int s = 0; s < code.n(); ++s) {
            for (int e : w.sym_edges[s]) {
                ElemSet msg = ch[s];
                for (int e2 : w.sym_edges[s])
                    if (e2 != e) msg = set_intersect(msg, c2v[e2]);
                v2c[e] = msg;
            }
        }
        bool changed = false;
        for (int c = 0; c < code.m(); ++c) {
            const auto& es = w.chk_edges[c];
            for (size_t i = 0; i < es.size(); ++i) {
                std::vector<const ElemSet*> others;
                std::vector<int> hs;
                for (size_t j = 0; j < es.size(); ++j) {
                    if (j == i) continue;
                    others.push_back(&v2c[es[j]]);
                    hs.push_back(w.labels[es[j]]);
                }
                std::vector<uint8_t> reach(q, 0);
                bool any_empty = false;
                for (const ElemSet* o : others)
                    if (o->empty()) any_empty = true;
                // exhaustive product enumeration
                std::vector<size_t> idx(others.size(), 0);
                if (any_empty) {
                    // unreachable for codeword inputs; leaves the message empty
                } else if (others.empty()) {
                    reach[0] = 1;
                } else {
                    while (true) {
                        int acc = 0;
                        for (size_t j = 0; j < others.size(); ++j)
                            acc ^= f.mul(hs[j], (*others[j])[idx[j]]);
                        reach[acc] = 1;
                        size_t j = 0;
                        while (j < idx.size() && ++idx[j] == others[j]->size()) idx[j++] = 0;
                        if (j == idx.size()) break;
                    }
                }
                ElemSet msg;
                int inv = w.inv_labels[es[i]];
                for (int v = 0; v < q; ++v)
                    if (reach[v]) msg.push_back(f.mul(inv, v));
                std::sort(msg.begin(), msg.end());
                if (msg != c2v[es[i]]) changed = true;
                c2v[es[i]] = std::move(msg);
            }
        }
        if (!changed) break;
    }
    return finish(std::min(iter, max_iters));
}

double bit_erasure_rate(const std::vector<DecodeOutcome>& outcomes,
                        const std::vector<int>& systematic_positions, int p) {
    if (outcomes.empty()) throw std::invalid_argument("bit_erasure_rate: no trials");
    long long unresolved = 0, total = 0;
    for (const DecodeOutcome& o : outcomes) {
        for (int s : systematic_positions) {
            for (int b = 0; b < p; ++b) {
                ++total;
                if (!(o.bit_constant_mask[s] >> b & 1)) ++unresolved;
            }
        }
    }
    return static_cast<double>(unresolved) / static_cast<double>(total);
}

}  // namespace nbldpc
