#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "degree_dist.hpp"
#include "ext_image.hpp"
#include "extend_dist.hpp"
#include "gf.hpp"

namespace nbldpc {

struct DEConfig {
    int population = 10000;
    int max_iters = 200;
    double success_tol = 1e-3;
    double bisection_tol = 1e-3;
    uint64_t seed = 0;
    // Abort as non-converged when the residual has not improved for this
    // many iterations; 0 disables the shortcut.
    int stall_window = 40;
};

enum class DESelection {
    kDminOptimal,  // per k, the select_extension matrix
    kRandom,       // fresh uniform k-subset of nontrivial columns per sample
    kExplicit,     // caller-provided matrix per k
    kRepeatBit,    // baseline: k copies of one binary-image bit
};

struct EnsembleSpec {
    DegreeDistribution dd;
    Field field;
    ExtendingDistribution dist;
    DESelection selection = DESelection::kDminOptimal;
    std::vector<ExtensionMatrix> explicit_by_k;  // index k, used by kExplicit
    int repeat_bit = 0;                          // used by kRepeatBit

    double extended_rate() const;
};

struct ConvergenceResult {
    bool converged = false;
    double residual = 1.0;
    int iterations = 0;
};

struct TraceEntry {
    double eps;
    int iterations;
    double residual;
    bool converged;
};

struct ThresholdResult {
    double threshold = 0.0;
    double gap = 0.0;  // normalized gap at the ensemble's extended rate
    std::vector<TraceEntry> trace;
};

// Population-dynamics Monte-Carlo density evolution at erasure rate eps.
ConvergenceResult de_converges(const EnsembleSpec& spec, double eps, const DEConfig& cfg);

// Bisection of de_converges over [0, 1] to bisection_tol.
ThresholdResult threshold(const EnsembleSpec& spec, const DEConfig& cfg);

// delta = (1 - r - threshold) / (1 - r), r being the rate under test.
double normalized_gap(double r, double threshold);

}  // namespace nbldpc
