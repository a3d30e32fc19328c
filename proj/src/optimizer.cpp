#include "optimizer.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "rng.hpp"

namespace nbldpc {

std::vector<double> project_to_budget(std::vector<double> v, const std::vector<double>& weights,
                                      double budget, double box_max) {
    if (v.size() != weights.size()) throw std::invalid_argument("projection: size mismatch");
    double w_sum = 0.0;
    for (double w : weights) w_sum += w;
    if (budget < -1e-12 || budget > box_max * w_sum + 1e-9)
        throw std::out_of_range("budget infeasible for box bounds");
    if (budget <= 0.0) return std::vector<double>(v.size(), 0.0);

    // Shift every coordinate by a common theta before clipping to the box;
    // the weighted sum is continuous and non-decreasing in theta, so a
    // bisection always lands on the budget (unlike clip-rescale, which can
    // strand coordinates at zero).
    auto shifted_sum = [&](double theta, std::vector<double>* out) {
        double s = 0.0;
        for (size_t i = 0; i < v.size(); ++i) {
            double x = std::min(std::max(v[i] + theta, 0.0), box_max);
            if (out) (*out)[i] = x;
            s += weights[i] * x;
        }
        return s;
    };
    if (std::abs(shifted_sum(0.0, nullptr) - budget) <= 1e-9) {
        for (double& x : v) x = std::min(std::max(x, 0.0), box_max);
        return v;
    }
    double lo = -box_max, hi = box_max;
    for (double x : v) {
        lo = std::min(lo, -x);
        hi = std::max(hi, box_max - x);
    }
    for (int round = 0; round < 200 && hi - lo > 1e-13; ++round) {
        double mid = 0.5 * (lo + hi);
        (shifted_sum(mid, nullptr) < budget ? lo : hi) = mid;
    }
    std::vector<double> out(v.size());
    double s = shifted_sum(0.5 * (lo + hi), &out);
    if (std::abs(s - budget) > 1e-6) throw std::runtime_error("budget projection did not converge");
    return out;
}

namespace {

std::string cache_key(const std::vector<double>& v) {
    std::ostringstream key;
    for (double x : v) key << static_cast<long long>(std::llround(x * 1000.0)) << ",";
    return key.str();
}

}  // namespace

OptimizeResult optimize(const DegreeDistribution& dd, const Field& field, double r_e,
                        const OptConfig& cfg) {
    if (cfg.np < 4) throw std::invalid_argument("DE population must be >= 4");
    if (cfg.f_weight <= 0.0 || cfg.f_weight > 2.0) throw std::invalid_argument("bad F weight");
    if (cfg.cr < 0.0 || cfg.cr > 1.0) throw std::invalid_argument("bad crossover rate");

    std::vector<int> degrees = dd.symbol_degrees();
    int dim = static_cast<int>(degrees.size());
    std::vector<double> weights(dim);
    for (int i = 0; i < dim; ++i) weights[i] = dd.node_fraction(degrees[i]);
    double box_max = field.q() - field.p() - 1;
    double budget = spec_for_target_rate(dd, r_e, field.p());

    DEConfig de_cfg = cfg.de;
    de_cfg.seed = hash_combine(cfg.seed, 0xF17EULL);  // common random numbers

    std::unordered_map<std::string, double> cache;
    auto fitness = [&](const std::vector<double>& v) {
        std::string key = cache_key(v);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
        SpreadingSpec spec;
        for (int i = 0; i < dim; ++i) spec[degrees[i]] = v[i];
        EnsembleSpec ens{dd, field, spreading_from(field, spec), DESelection::kDminOptimal, {}, 0};
        double th = threshold(ens, de_cfg).threshold;
        cache.emplace(std::move(key), th);
        return th;
    };

    OptimizeResult out;
    out.degrees = degrees;
    out.target_rate = r_e;

    if (budget <= 1e-12) {
        // r_e = r: the zero vector is the unique feasible candidate
        Candidate c{std::vector<double>(dim, 0.0), 0.0};
        c.fitness = fitness(c.f_d);
        out.best = c;
        out.delta = normalized_gap(r_e, c.fitness);
        out.best_by_generation.push_back(c.fitness);
        return out;
    }

    Rng rng(cfg.seed, 0xDEULL);
    std::vector<Candidate> popn(cfg.np);
    for (int i = 0; i < cfg.np; ++i) {
        std::vector<double> v(dim);
        for (double& x : v) x = rng.uniform() * box_max;
        popn[i].f_d = project_to_budget(std::move(v), weights, budget, box_max);
        popn[i].fitness = fitness(popn[i].f_d);
    }

    int best_i = 0;
    for (int i = 1; i < cfg.np; ++i)
        if (popn[i].fitness > popn[best_i].fitness) best_i = i;
    out.best_by_generation.push_back(popn[best_i].fitness);

    for (int gen = 0; gen < cfg.generations; ++gen) {
        for (int i = 0; i < cfg.np; ++i) {
            int a, b, c;
            do { a = static_cast<int>(rng.below(cfg.np)); } while (a == i);
            do { b = static_cast<int>(rng.below(cfg.np)); } while (b == i || b == a);
            do { c = static_cast<int>(rng.below(cfg.np)); } while (c == i || c == a || c == b);
            std::vector<double> trial = popn[i].f_d;
            int forced = static_cast<int>(rng.below(dim));
            for (int j = 0; j < dim; ++j) {
                if (j == forced || rng.uniform() < cfg.cr)
                    trial[j] = popn[a].f_d[j] + cfg.f_weight * (popn[b].f_d[j] - popn[c].f_d[j]);
            }
            trial = project_to_budget(std::move(trial), weights, budget, box_max);
            double fit = fitness(trial);
            if (fit > popn[i].fitness) {
                popn[i].f_d = std::move(trial);
                popn[i].fitness = fit;
                if (fit > popn[best_i].fitness) best_i = i;
            }
        }
        out.best_by_generation.push_back(popn[best_i].fitness);
    }

    out.best = popn[best_i];
    out.delta = normalized_gap(r_e, out.best.fitness);
    return out;
}

}  // namespace nbldpc
