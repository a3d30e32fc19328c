#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "degree_dist.hpp"
#include "density_evolution.hpp"
#include "extend_dist.hpp"
#include "gf.hpp"

namespace nbldpc {

struct OptConfig {
    int np = 40;             // population size (>= 4)
    double f_weight = 0.5;   // differential weight
    double cr = 0.9;         // crossover rate
    int generations = 30;
    DEConfig de;
    uint64_t seed = 0;
};

struct Candidate {
    std::vector<double> f_d;  // one entry per symbol degree with Lambda_d > 0
    double fitness = 0.0;     // threshold eps*
};

struct OptimizeResult {
    std::vector<int> degrees;
    Candidate best;
    double delta = 0.0;        // normalized gap at the target extended rate
    double target_rate = 0.0;
    std::vector<double> best_by_generation;
};

// Project onto the box [0, q-p-1]^n intersected with the budget plane
// sum_d Lambda_d v_d = F (common additive shift, then clip).
std::vector<double> project_to_budget(std::vector<double> v, const std::vector<double>& weights,
                                      double budget, double box_max);

// DE/rand/1/bin over spreading parameters {f_d}, fitness = MC-DE threshold
// with dmin-optimal selection. Deterministic given cfg.seed.
OptimizeResult optimize(const DegreeDistribution& dd, const Field& field, double r_e,
                        const OptConfig& cfg);

}  // namespace nbldpc
