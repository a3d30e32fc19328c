#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "code.hpp"
#include "degree_dist.hpp"
#include "ext_image.hpp"
#include "gf.hpp"

namespace nbldpc {

// Per-degree average extension counts {f_d}, each in [0, q-p-1].
using SpreadingSpec = std::map<int, double>;

// Extending distribution: for each symbol degree d, the fractions f_{d,k} of
// degree-d nodes carrying k nontrivial extended bits, k in [0, q-p-1].
class ExtendingDistribution {
public:
    ExtendingDistribution(const Field& f, std::map<int, std::vector<double>> table);

    int p() const { return p_; }
    int max_k() const { return max_k_; }  // q - p - 1
    const std::map<int, std::vector<double>>& table() const { return table_; }

    // f_{d,k}; degrees absent from the table carry no extension (k=0).
    double fraction(int d, int k) const;
    double mean_k(int d) const;

    static ExtendingDistribution none(const Field& f);

    // Parse lines "d: f_d" (spreading) or "d k f" triples; '#' comments.
    static ExtendingDistribution parse(const Field& f, const std::string& text);
    static ExtendingDistribution load(const Field& f, const std::string& path);
    std::string to_text() const;

private:
    int p_, max_k_;
    std::map<int, std::vector<double>> table_;
};

// Mean-preserving two-point distribution on {floor(f_d), ceil(f_d)}.
ExtendingDistribution spreading_from(const Field& f, const SpreadingSpec& spec);

// Mass concentrated on the maximal extension count K = q-p-1:
// f_{d,K} = f_d / K, f_{d,0} = 1 - f_d / K.
ExtendingDistribution clustering_from(const Field& f, const SpreadingSpec& spec);

// f = sum_d Lambda_d sum_k k f_{d,k}.
double average_extension(const ExtendingDistribution& dist, const DegreeDistribution& dd);

// r_e = r p / (p + f).
double extended_rate(double r, int p, double f);

// Budget F = sum_d Lambda_d f_d = p (r / r_e - 1) required to hit r_e.
double spec_for_target_rate(const DegreeDistribution& dd, double r_e, int p);

enum class SelectionPolicy { kDminOptimal, kRandom };

// Assign per-node extension matrices: within each degree class, node counts
// per k follow largest-remainder rounding of f_{d,k}; the node/k pairing is
// a seeded uniform shuffle.
std::vector<ExtensionMatrix> assign_extensions(const NBCode& code,
                                               const ExtendingDistribution& dist,
                                               SelectionPolicy selection, uint64_t seed);

}  // namespace nbldpc
