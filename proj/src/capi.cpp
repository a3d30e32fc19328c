#include "nbldpc.h"

#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <string>

#include "bec.hpp"
#include "code.hpp"
#include "degree_dist.hpp"
#include "density_evolution.hpp"
#include "ext_image.hpp"
#include "extend_dist.hpp"
#include "gf.hpp"
#include "optimizer.hpp"
#include "rng.hpp"

using namespace nbldpc;

struct nbldpc_field {
    Field field;
};
struct nbldpc_dd {
    DegreeDistribution dd;
};
struct nbldpc_code {
    NBCode code;
};
struct nbldpc_dist {
    ExtendingDistribution dist;
};

namespace {

thread_local std::string g_last_error;

template <typename Fn>
nbldpc_status guarded(Fn&& fn) {
    try {
        fn();
        return NBLDPC_OK;
    } catch (const std::out_of_range& e) {
        g_last_error = e.what();
        return NBLDPC_ERANGE;
    } catch (const std::domain_error& e) {
        g_last_error = e.what();
        return NBLDPC_ERANGE;
    } catch (const std::invalid_argument& e) {
        g_last_error = e.what();
        return NBLDPC_EINVAL;
    } catch (const std::runtime_error& e) {
        g_last_error = e.what();
        return NBLDPC_EIO;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return NBLDPC_EINTERNAL;
    }
}

nbldpc_status require(bool cond, const char* msg) {
    if (cond) return NBLDPC_OK;
    g_last_error = msg;
    return NBLDPC_EINVAL;
}

SelectionPolicy to_policy(int selection) {
    if (selection == NBLDPC_SELECT_RANDOM) return SelectionPolicy::kRandom;
    return SelectionPolicy::kDminOptimal;
}

DEConfig to_de_config(const nbldpc_de_config* cfg) {
    DEConfig out;
    if (cfg) {
        out.population = cfg->population;
        out.max_iters = cfg->max_iters;
        out.success_tol = cfg->success_tol;
        out.bisection_tol = cfg->bisection_tol;
        out.seed = cfg->seed;
    }
    return out;
}

ExtendingDistribution dist_from_spec(const Field& f, const int* degrees, const double* f_d,
                                     int n, bool clustering) {
    SpreadingSpec spec;
    for (int i = 0; i < n; ++i) spec[degrees[i]] = f_d[i];
    return clustering ? clustering_from(f, spec) : spreading_from(f, spec);
}

}  // namespace

extern "C" {

const char* nbldpc_last_error(void) { return g_last_error.c_str(); }

nbldpc_status nbldpc_field_create(int p, unsigned poly, nbldpc_field** out) {
    if (auto s = require(out != nullptr, "null output pointer")) return s;
    return guarded([&] { *out = new nbldpc_field{Field(p, poly)}; });
}

void nbldpc_field_destroy(nbldpc_field* f) { delete f; }

nbldpc_status nbldpc_gf_add(const nbldpc_field* f, int a, int b, int* out) {
    if (auto s = require(f && out, "null argument")) return s;
    return guarded([&] { *out = f->field.add(a, b); });
}

nbldpc_status nbldpc_gf_mul(const nbldpc_field* f, int a, int b, int* out) {
    if (auto s = require(f && out, "null argument")) return s;
    return guarded([&] { *out = f->field.mul(a, b); });
}

nbldpc_status nbldpc_gf_inv(const nbldpc_field* f, int a, int* out) {
    if (auto s = require(f && out, "null argument")) return s;
    return guarded([&] { *out = f->field.inv(a); });
}

nbldpc_status nbldpc_dd_load(const char* path, nbldpc_dd** out) {
    if (auto s = require(path && out, "null argument")) return s;
    return guarded([&] { *out = new nbldpc_dd{DegreeDistribution::load(path)}; });
}

nbldpc_status nbldpc_dd_parse(const char* text, nbldpc_dd** out) {
    if (auto s = require(text && out, "null argument")) return s;
    return guarded([&] { *out = new nbldpc_dd{DegreeDistribution::parse(text)}; });
}

void nbldpc_dd_destroy(nbldpc_dd* dd) { delete dd; }

nbldpc_status nbldpc_dd_design_rate(const nbldpc_dd* dd, double* out) {
    if (auto s = require(dd && out, "null argument")) return s;
    return guarded([&] { *out = dd->dd.design_rate(); });
}

nbldpc_status nbldpc_dd_node_fraction(const nbldpc_dd* dd, int degree, double* out) {
    if (auto s = require(dd && out, "null argument")) return s;
    return guarded([&] { *out = dd->dd.node_fraction(degree); });
}

nbldpc_status nbldpc_dd_symbol_degrees(const nbldpc_dd* dd, int* degrees, int* inout_n) {
    if (auto s = require(dd && degrees && inout_n, "null argument")) return s;
    return guarded([&] {
        std::vector<int> ds = dd->dd.symbol_degrees();
        if (static_cast<int>(ds.size()) > *inout_n)
            throw std::invalid_argument("degrees array too small");
        for (size_t i = 0; i < ds.size(); ++i) degrees[i] = ds[i];
        *inout_n = static_cast<int>(ds.size());
    });
}

nbldpc_status nbldpc_select_extension(const nbldpc_field* f, int k_ext, int* cols,
                                      int* dmin_out) {
    if (auto s = require(f && cols && dmin_out, "null argument")) return s;
    return guarded([&] {
        SelectionReport rep = select_extension(f->field, k_ext);
        for (int j = 0; j < rep.matrix.t(); ++j) cols[j] = rep.matrix.columns()[j];
        *dmin_out = rep.dmin;
    });
}

nbldpc_status nbldpc_expected_eligible(const nbldpc_field* f, const int* cols, int t,
                                       double eps, double* out) {
    if (auto s = require(f && cols && out && t >= f->field.p(), "bad matrix columns")) return s;
    return guarded([&] {
        std::vector<int> extra(cols + f->field.p(), cols + t);
        ExtensionMatrix a = ExtensionMatrix::make_with_columns(f->field, extra);
        *out = expected_eligible(a, eps);
    });
}

nbldpc_status nbldpc_extended_rate(double r, int p, double f, double* out) {
    if (auto s = require(out != nullptr, "null output pointer")) return s;
    return guarded([&] { *out = extended_rate(r, p, f); });
}

nbldpc_status nbldpc_budget_for_rate(const nbldpc_dd* dd, double r_e, int p, double* out) {
    if (auto s = require(dd && out, "null argument")) return s;
    return guarded([&] { *out = spec_for_target_rate(dd->dd, r_e, p); });
}

nbldpc_status nbldpc_normalized_gap(double rate, double th, double* out) {
    if (auto s = require(out != nullptr, "null output pointer")) return s;
    return guarded([&] { *out = normalized_gap(rate, th); });
}

nbldpc_status nbldpc_peg_build(const nbldpc_dd* dd, int n, const nbldpc_field* f,
                               uint64_t seed, nbldpc_code** out) {
    if (auto s = require(dd && f && out && n > 0, "bad arguments")) return s;
    return guarded([&] { *out = new nbldpc_code{peg_construct(dd->dd, n, f->field, seed)}; });
}

nbldpc_status nbldpc_code_load(const char* path, nbldpc_code** out) {
    if (auto s = require(path && out, "null argument")) return s;
    return guarded([&] { *out = new nbldpc_code{NBCode::load(path)}; });
}

nbldpc_status nbldpc_code_save(const nbldpc_code* code, const char* path) {
    if (auto s = require(code && path, "null argument")) return s;
    return guarded([&] { code->code.save(path); });
}

void nbldpc_code_destroy(nbldpc_code* code) { delete code; }

nbldpc_status nbldpc_code_dims(const nbldpc_code* code, int* n, int* m, int* k) {
    if (auto s = require(code != nullptr, "null code")) return s;
    return guarded([&] {
        if (n) *n = code->code.n();
        if (m) *m = code->code.m();
        if (k) *k = code->code.k();
    });
}

nbldpc_status nbldpc_dist_load(const nbldpc_field* f, const char* path, nbldpc_dist** out) {
    if (auto s = require(f && path && out, "null argument")) return s;
    return guarded([&] { *out = new nbldpc_dist{ExtendingDistribution::load(f->field, path)}; });
}

nbldpc_status nbldpc_dist_spreading(const nbldpc_field* f, const int* degrees,
                                    const double* f_d, int n, nbldpc_dist** out) {
    if (auto s = require(f && degrees && f_d && out && n > 0, "bad arguments")) return s;
    return guarded([&] {
        *out = new nbldpc_dist{dist_from_spec(f->field, degrees, f_d, n, false)};
    });
}

nbldpc_status nbldpc_dist_clustering(const nbldpc_field* f, const int* degrees,
                                     const double* f_d, int n, nbldpc_dist** out) {
    if (auto s = require(f && degrees && f_d && out && n > 0, "bad arguments")) return s;
    return guarded([&] {
        *out = new nbldpc_dist{dist_from_spec(f->field, degrees, f_d, n, true)};
    });
}

nbldpc_status nbldpc_dist_none(const nbldpc_field* f, nbldpc_dist** out) {
    if (auto s = require(f && out, "null argument")) return s;
    return guarded([&] { *out = new nbldpc_dist{ExtendingDistribution::none(f->field)}; });
}

void nbldpc_dist_destroy(nbldpc_dist* dist) { delete dist; }

nbldpc_status nbldpc_dist_save(const nbldpc_dist* dist, const char* path) {
    if (auto s = require(dist && path, "null argument")) return s;
    return guarded([&] {
        std::ofstream out(path);
        if (!out) throw std::runtime_error(std::string("cannot write ") + path);
        out << dist->dist.to_text();
    });
}

nbldpc_status nbldpc_dist_average_extension(const nbldpc_dist* dist, const nbldpc_dd* dd,
                                            double* out) {
    if (auto s = require(dist && dd && out, "null argument")) return s;
    return guarded([&] { *out = average_extension(dist->dist, dd->dd); });
}

void nbldpc_de_config_default(nbldpc_de_config* cfg) {
    if (!cfg) return;
    DEConfig d;
    cfg->population = d.population;
    cfg->max_iters = d.max_iters;
    cfg->success_tol = d.success_tol;
    cfg->bisection_tol = d.bisection_tol;
    cfg->seed = d.seed;
}

nbldpc_status nbldpc_threshold(const nbldpc_dd* dd, const nbldpc_field* f,
                               const nbldpc_dist* dist, int selection,
                               const nbldpc_de_config* cfg, double* threshold_out,
                               double* gap_out, const char* trace_csv_path) {
    if (auto s = require(dd && f && dist && threshold_out, "null argument")) return s;
    return guarded([&] {
        EnsembleSpec spec{dd->dd, f->field, dist->dist,
                          selection == NBLDPC_SELECT_RANDOM ? DESelection::kRandom
                                                            : DESelection::kDminOptimal,
                          {},
                          0};
        ThresholdResult r = threshold(spec, to_de_config(cfg));
        *threshold_out = r.threshold;
        if (gap_out) *gap_out = r.gap;
        if (trace_csv_path) {
            std::ofstream tr(trace_csv_path);
            if (!tr) throw std::runtime_error(std::string("cannot write ") + trace_csv_path);
            tr << "eps,iterations,residual,converged\n";
            for (const TraceEntry& e : r.trace)
                tr << e.eps << "," << e.iterations << "," << e.residual << ","
                   << (e.converged ? 1 : 0) << "\n";
        }
    });
}

void nbldpc_opt_config_default(nbldpc_opt_config* cfg) {
    if (!cfg) return;
    OptConfig d;
    cfg->np = d.np;
    cfg->f_weight = d.f_weight;
    cfg->cr = d.cr;
    cfg->generations = d.generations;
    nbldpc_de_config_default(&cfg->de);
    cfg->seed = d.seed;
}

nbldpc_status nbldpc_optimize(const nbldpc_dd* dd, const nbldpc_field* f, double r_e,
                              const nbldpc_opt_config* cfg, int* degrees, double* f_d,
                              int* inout_n, double* threshold_out, double* delta_out) {
    if (auto s = require(dd && f && degrees && f_d && inout_n, "null argument")) return s;
    return guarded([&] {
        OptConfig oc;
        if (cfg) {
            oc.np = cfg->np;
            oc.f_weight = cfg->f_weight;
            oc.cr = cfg->cr;
            oc.generations = cfg->generations;
            oc.de = to_de_config(&cfg->de);
            oc.seed = cfg->seed;
        }
        OptimizeResult r = optimize(dd->dd, f->field, r_e, oc);
        if (static_cast<int>(r.degrees.size()) > *inout_n)
            throw std::invalid_argument("degrees array too small");
        for (size_t i = 0; i < r.degrees.size(); ++i) {
            degrees[i] = r.degrees[i];
            f_d[i] = r.best.f_d[i];
        }
        *inout_n = static_cast<int>(r.degrees.size());
        if (threshold_out) *threshold_out = r.best.fitness;
        if (delta_out) *delta_out = r.delta;
    });
}

nbldpc_status nbldpc_ber_sweep(const nbldpc_code* code, const nbldpc_dist* dist,
                               int selection, const double* eps, int n_eps, int trials,
                               int max_iters, uint64_t seed, double* ber_out,
                               double* stderr_out) {
    if (auto s = require(code && dist && eps && ber_out && n_eps > 0 && trials >= 1,
                         "bad arguments"))
        return s;
    return guarded([&] {
        std::vector<ExtensionMatrix> assignment =
            assign_extensions(code->code, dist->dist, to_policy(selection), seed);
        const std::vector<int>& sys = code->code.systematic_positions();
        int p = code->code.field().p();
        for (int i = 0; i < n_eps; ++i) {
            double sum = 0.0, sumsq = 0.0;
            for (int t = 0; t < trials; ++t) {
                uint64_t trial_seed = hash_combine(seed, hash_combine(i, t));
                ErasurePattern pat = transmit(assignment, eps[i], trial_seed);
                DecodeOutcome o = decode(code->code, assignment, pat, max_iters);
                double x = bit_erasure_rate({o}, sys, p);
                sum += x;
                sumsq += x * x;
            }
            double mean = sum / trials;
            ber_out[i] = mean;
            if (stderr_out)
                stderr_out[i] =
                    std::sqrt(std::max(0.0, sumsq / trials - mean * mean) / trials);
        }
    });
}

}  // extern "C"
