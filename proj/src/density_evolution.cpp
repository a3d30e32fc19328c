#include "density_evolution.hpp"

#include <cmath>
#include <stdexcept>

#include "rng.hpp"
#include "subspace.hpp"

namespace nbldpc {

double EnsembleSpec::extended_rate() const {
    double f = average_extension(dist, dd);
    return nbldpc::extended_rate(dd.design_rate(), field.p(), f);
}

namespace {

struct Sampler {
    std::vector<int> values;
    std::vector<double> cumulative;

    int draw(double u) const {
        for (size_t i = 0; i + 1 < cumulative.size(); ++i)
            if (u < cumulative[i]) return values[i];
        return values.back();
    }
};

Sampler make_sampler(const std::vector<std::pair<int, double>>& weights) {
    Sampler s;
    double acc = 0.0;
    for (const auto& [v, w] : weights) {
        if (w <= 0.0) continue;
        acc += w;
        s.values.push_back(v);
        s.cumulative.push_back(acc);
    }
    if (s.values.empty()) throw std::invalid_argument("empty sampler");
    for (double& c : s.cumulative) c /= acc;
    return s;
}

// Immutable per-run context with all samplers and column tables.
struct DEContext {
    const Field& f;
    int p, q;
    Sampler lambda_edge, lambda_node, rho_edge;
    std::vector<Sampler> k_by_degree;  // aligned with degree_index
    std::vector<int> degree_index;     // degree -> index, -1 when absent
    std::vector<std::vector<int>> columns_by_k;  // selection-dependent column lists
    std::vector<int> nontrivial;                 // for kRandom
    DESelection selection;
    int repeat_bit;
    std::vector<AffineSubspace> zero_parity;  // per column k: {e : <e,k> = 0}

    explicit DEContext(const EnsembleSpec& spec)
        : f(spec.field), p(spec.field.p()), q(spec.field.q()), selection(spec.selection),
          repeat_bit(spec.repeat_bit) {
        std::vector<std::pair<int, double>> le, ln, re;
        for (const auto& [d, c] : spec.dd.lambda()) {
            le.push_back({d, c});
            ln.push_back({d, spec.dd.node_fraction(d)});
        }
        for (const auto& [d, c] : spec.dd.rho()) re.push_back({d, c});
        lambda_edge = make_sampler(le);
        lambda_node = make_sampler(ln);
        rho_edge = make_sampler(re);

        int max_d = spec.dd.symbol_degrees().back();
        degree_index.assign(max_d + 1, -1);
        int max_k = spec.dist.max_k();
        for (int d : spec.dd.symbol_degrees()) {
            std::vector<std::pair<int, double>> kw;
            for (int k = 0; k <= max_k; ++k) kw.push_back({k, spec.dist.fraction(d, k)});
            degree_index[d] = static_cast<int>(k_by_degree.size());
            k_by_degree.push_back(make_sampler(kw));
        }

        // which k values actually occur
        std::vector<bool> used(max_k + 1, false);
        for (const auto& s : k_by_degree)
            for (int k : s.values) used[k] = true;

        columns_by_k.resize(max_k + 1);
        for (int k = 0; k <= max_k; ++k) {
            if (!used[k]) continue;
            switch (selection) {
                case DESelection::kDminOptimal:
                    columns_by_k[k] = select_extension(f, k).matrix.columns();
                    break;
                case DESelection::kExplicit:
                    if (k >= static_cast<int>(spec.explicit_by_k.size()))
                        throw std::invalid_argument("explicit selection misses a matrix for k");
                    columns_by_k[k] = spec.explicit_by_k[k].columns();
                    break;
                case DESelection::kRepeatBit: {
                    std::vector<int> cols;
                    for (int i = 0; i < p; ++i) cols.push_back(1 << i);
                    for (int i = 0; i < k; ++i) cols.push_back(1 << repeat_bit);
                    columns_by_k[k] = std::move(cols);
                    break;
                }
                case DESelection::kRandom:
                    break;  // drawn per sample
            }
        }
        for (int k = 3; k < q; ++k)
            if (k & (k - 1)) nontrivial.push_back(k);

        zero_parity.resize(q);
        for (int k = 1; k < q; ++k) {
            std::vector<int> elems;
            for (int e = 0; e < q; ++e)
                if (bit_parity(static_cast<unsigned>(e & k)) == 0) elems.push_back(e);
            zero_parity[k] = AffineSubspace::from_elements(p, elems);
        }
    }

    // Channel set for a degree-d node realization (all-zero codeword).
    AffineSubspace sample_channel(Rng& rng, int d, double eps) const {
        int k = k_by_degree[degree_index[d]].draw(rng.uniform());
        AffineSubspace s = AffineSubspace::full(p);
        if (selection == DESelection::kRandom) {
            // k distinct nontrivial columns via partial Fisher-Yates
            thread_local std::vector<int> pool;
            pool = nontrivial;
            for (int i = 0; i < k; ++i) {
                int j = i + static_cast<int>(rng.below(pool.size() - i));
                std::swap(pool[i], pool[j]);
            }
            for (int i = 0; i < p; ++i)
                if (!rng.bernoulli(eps)) s = s.intersect(zero_parity[1 << i]);
            for (int i = 0; i < k; ++i)
                if (!rng.bernoulli(eps)) s = s.intersect(zero_parity[pool[i]]);
            return s;
        }
        for (int col : columns_by_k[k])
            if (!rng.bernoulli(eps)) s = s.intersect(zero_parity[col]);
        return s;
    }
};

}  // namespace

ConvergenceResult de_converges(const EnsembleSpec& spec, double eps, const DEConfig& cfg) {
    if (eps < 0.0 || eps > 1.0) throw std::out_of_range("erasure probability out of [0, 1]");
    if (cfg.population < 1000) throw std::invalid_argument("population_size must be >= 1000");
    DEContext ctx(spec);
    const int pop = cfg.population;
    const uint64_t pop_u = static_cast<uint64_t>(pop);

    std::vector<AffineSubspace> c2v(pop, AffineSubspace::full(ctx.p));
    std::vector<AffineSubspace> v2c(pop, AffineSubspace::full(ctx.p));

    // eps = 0: every channel set is a singleton, nothing to iterate
    if (eps == 0.0) return {true, 0.0, 0};

    double best_residual = 1.0;
    int since_best = 0;
    for (int iter = 1; iter <= cfg.max_iters; ++iter) {
        // variable-to-check update
        for (int s = 0; s < pop; ++s) {
            Rng rng(cfg.seed, static_cast<uint64_t>(iter) * 3, s);
            int d = ctx.lambda_edge.draw(rng.uniform());
            AffineSubspace msg = ctx.sample_channel(rng, d, eps);
            for (int i = 0; i < d - 1; ++i) msg = msg.intersect(c2v[rng.below(pop_u)]);
            v2c[s] = msg;
        }
        // check-to-variable update
        for (int s = 0; s < pop; ++s) {
            Rng rng(cfg.seed, static_cast<uint64_t>(iter) * 3 + 1, s);
            int dc = ctx.rho_edge.draw(rng.uniform());
            AffineSubspace acc = AffineSubspace::singleton(ctx.p, 0);
            for (int i = 0; i < dc - 1; ++i) {
                int h = 1 + static_cast<int>(rng.below(ctx.q - 1));
                acc = acc.sum(v2c[rng.below(pop_u)].scale(ctx.f, h));
            }
            int h_own = 1 + static_cast<int>(rng.below(ctx.q - 1));
            c2v[s] = acc.scale(ctx.f, ctx.f.inv(h_own));
        }
        // posterior probe (node-perspective degrees)
        int unresolved = 0;
        for (int s = 0; s < pop; ++s) {
            Rng rng(cfg.seed, static_cast<uint64_t>(iter) * 3 + 2, s);
            int d = ctx.lambda_node.draw(rng.uniform());
            AffineSubspace post = ctx.sample_channel(rng, d, eps);
            for (int i = 0; i < d && !post.is_singleton(); ++i)
                post = post.intersect(c2v[rng.below(pop_u)]);
            if (!post.is_singleton()) ++unresolved;
        }
        double residual = static_cast<double>(unresolved) / pop;
        if (residual < cfg.success_tol) return {true, residual, iter};
        if (residual < best_residual - 0.5 / pop) {
            best_residual = residual;
            since_best = 0;
        } else if (cfg.stall_window > 0 && ++since_best >= cfg.stall_window) {
            return {false, residual, iter};
        }
    }
    return {false, best_residual, cfg.max_iters};
}

ThresholdResult threshold(const EnsembleSpec& spec, const DEConfig& cfg) {
    if (cfg.bisection_tol < 1e-5) throw std::invalid_argument("bisection_tol must be >= 1e-5");
    ThresholdResult out;
    double lo = 0.0, hi = 1.0;
    int probe = 0;
    while (hi - lo > cfg.bisection_tol) {
        double mid = 0.5 * (lo + hi);
        DEConfig probe_cfg = cfg;
        probe_cfg.seed = hash_combine(cfg.seed, static_cast<uint64_t>(probe++));
        ConvergenceResult r = de_converges(spec, mid, probe_cfg);
        out.trace.push_back({mid, r.iterations, r.residual, r.converged});
        if (r.converged)
            lo = mid;
        else
            hi = mid;
    }
    out.threshold = 0.5 * (lo + hi);
    out.gap = normalized_gap(spec.extended_rate(), out.threshold);
    return out;
}

double normalized_gap(double r, double th) {
    if (r <= 0.0 || r >= 1.0) throw std::out_of_range("rate out of (0, 1)");
    return (1.0 - r - th) / (1.0 - r);
}

}  // namespace nbldpc
