#include "extend_dist.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "rng.hpp"

namespace nbldpc {

ExtendingDistribution::ExtendingDistribution(const Field& f,
                                             std::map<int, std::vector<double>> table)
    : p_(f.p()), max_k_(f.q() - f.p() - 1), table_(std::move(table)) {
    for (auto& [d, row] : table_) {
        if (d < 1) throw std::invalid_argument("extending distribution: degree must be >= 1");
        if (static_cast<int>(row.size()) != max_k_ + 1)
            throw std::invalid_argument("extending distribution row must have q-p entries");
        double s = 0.0;
        for (double v : row) {
            if (v < -1e-12) throw std::invalid_argument("negative f_{d,k}");
            s += v;
        }
        if (std::abs(s - 1.0) > 1e-6)
            throw std::invalid_argument("f_{d,.} must sum to 1");
        for (double& v : row) v = std::max(0.0, v / s);
    }
}

double ExtendingDistribution::fraction(int d, int k) const {
    if (k < 0 || k > max_k_) return 0.0;
    auto it = table_.find(d);
    if (it == table_.end()) return k == 0 ? 1.0 : 0.0;
    return it->second[k];
}

double ExtendingDistribution::mean_k(int d) const {
    auto it = table_.find(d);
    if (it == table_.end()) return 0.0;
    double m = 0.0;
    for (int k = 0; k <= max_k_; ++k) m += k * it->second[k];
    return m;
}

ExtendingDistribution ExtendingDistribution::none(const Field& f) {
    return ExtendingDistribution(f, {});
}

ExtendingDistribution spreading_from(const Field& f, const SpreadingSpec& spec) {
    int max_k = f.q() - f.p() - 1;
    std::map<int, std::vector<double>> table;
    for (const auto& [d, fd] : spec) {
        if (fd < 0.0 || fd > max_k)
            throw std::out_of_range("f_d out of [0, q-p-1]");
        std::vector<double> row(max_k + 1, 0.0);
        int lo = static_cast<int>(std::floor(fd));
        int hi = static_cast<int>(std::ceil(fd));
        if (lo == hi) {
            row[lo] = 1.0;
        } else {
            row[lo] = hi - fd;
            row[hi] = fd - lo;
        }
        table[d] = std::move(row);
    }
    return ExtendingDistribution(f, std::move(table));
}

ExtendingDistribution clustering_from(const Field& f, const SpreadingSpec& spec) {
    int max_k = f.q() - f.p() - 1;
    std::map<int, std::vector<double>> table;
    for (const auto& [d, fd] : spec) {
        if (fd < 0.0 || fd > max_k)
            throw std::out_of_range("f_d out of [0, q-p-1]");
        std::vector<double> row(max_k + 1, 0.0);
        row[max_k] = fd / max_k;
        row[0] = 1.0 - fd / max_k;
        table[d] = std::move(row);
    }
    return ExtendingDistribution(f, std::move(table));
}

double average_extension(const ExtendingDistribution& dist, const DegreeDistribution& dd) {
    for (const auto& [d, row] : dist.table())
        if (dd.node_fraction(d) == 0.0 && dist.mean_k(d) > 0.0)
            throw std::invalid_argument("extending distribution names degree " +
                                        std::to_string(d) + " absent from lambda");
    double f = 0.0;
    for (int d : dd.symbol_degrees()) f += dd.node_fraction(d) * dist.mean_k(d);
    return f;
}

double extended_rate(double r, int p, double f) {
    if (r <= 0.0 || r >= 1.0) throw std::out_of_range("mother rate must be in (0, 1)");
    if (f < 0.0) throw std::out_of_range("mean extension count must be >= 0");
    return r * p / (p + f);
}

double spec_for_target_rate(const DegreeDistribution& dd, double r_e, int p) {
    double r = dd.design_rate();
    int q = 1 << p;
    double lo = r * p / (q - 1.0);
    if (r_e < lo - 1e-12 || r_e > r + 1e-12)
        throw std::out_of_range("target extended rate outside [r p/(q-1), r]");
    return p * (r / r_e - 1.0);
}

std::vector<ExtensionMatrix> assign_extensions(const NBCode& code,
                                               const ExtendingDistribution& dist,
                                               SelectionPolicy selection, uint64_t seed) {
    const Field& f = code.field();
    if (f.p() != dist.p()) throw std::invalid_argument("field mismatch");
    int max_k = dist.max_k();

    // degree of every symbol node
    std::vector<int> degree(code.n(), 0);
    for (const Edge& e : code.graph().edges) ++degree[e.sym];

    std::map<int, std::vector<int>> by_degree;
    for (int s = 0; s < code.n(); ++s) by_degree[degree[s]].push_back(s);

    // dmin-optimal matrices are shared per k
    std::vector<ExtensionMatrix> best_by_k;
    if (selection == SelectionPolicy::kDminOptimal)
        for (int k = 0; k <= max_k; ++k) best_by_k.push_back(select_extension(f, k).matrix);

    ExtensionMatrix ident = ExtensionMatrix::make(f, {});
    std::vector<ExtensionMatrix> out(code.n(), ident);
    Rng shuffle_rng(seed, 0xa551ULL);
    for (auto& [d, nodes] : by_degree) {
        // seeded pairing of nodes to extension counts
        for (size_t i = 0; i + 1 < nodes.size(); ++i) {
            size_t j = i + shuffle_rng.below(nodes.size() - i);
            std::swap(nodes[i], nodes[j]);
        }
        std::vector<double> fracs(max_k + 1);
        for (int k = 0; k <= max_k; ++k) fracs[k] = dist.fraction(d, k);
        std::vector<int> counts = [&] {
            std::vector<std::pair<double, int>> rem(max_k + 1);
            std::vector<int> c(max_k + 1);
            int total = static_cast<int>(nodes.size()), assigned = 0;
            for (int k = 0; k <= max_k; ++k) {
                double x = fracs[k] * total;
                c[k] = static_cast<int>(x);
                assigned += c[k];
                rem[k] = {x - c[k], k};
            }
            std::sort(rem.begin(), rem.end(), [](const auto& a, const auto& b) {
                if (a.first != b.first) return a.first > b.first;
                return a.second < b.second;
            });
            for (int i = 0; i < total - assigned; ++i) ++c[rem[i % (max_k + 1)].second];
            return c;
        }();
        size_t pos = 0;
        for (int k = 0; k <= max_k; ++k) {
            for (int i = 0; i < counts[k]; ++i, ++pos) {
                int node = nodes[pos];
                if (k == 0) continue;
                if (selection == SelectionPolicy::kDminOptimal) {
                    out[node] = best_by_k[k];
                } else {
                    out[node] = random_extension(f, k, hash_combine(seed, 0x7a2dULL + node));
                }
            }
        }
    }
    return out;
}

ExtendingDistribution ExtendingDistribution::parse(const Field& f, const std::string& text) {
    int max_k = f.q() - f.p() - 1;
    std::map<int, std::vector<double>> table;
    SpreadingSpec spec;
    bool has_triples = false, has_spec = false;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        // strip whitespace-only lines
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream ls(line);
        if (line.find(':') != std::string::npos) {
            int d;
            char colon;
            double fd;
            if (!(ls >> d >> colon >> fd) || colon != ':')
                throw std::invalid_argument("bad spreading-spec line: " + line);
            spec[d] = fd;
            has_spec = true;
        } else {
            int d, k;
            double v;
            if (!(ls >> d >> k >> v))
                throw std::invalid_argument("bad distribution triple: " + line);
            if (k < 0 || k > max_k) throw std::out_of_range("k out of [0, q-p-1]");
            auto& row = table.try_emplace(d, std::vector<double>(max_k + 1, 0.0)).first->second;
            row[k] = v;
            has_triples = true;
        }
    }
    if (has_spec && has_triples)
        throw std::invalid_argument("mixing 'd: f_d' and 'd k f' lines is not supported");
    if (has_spec) return spreading_from(f, spec);
    return ExtendingDistribution(f, std::move(table));
}

ExtendingDistribution ExtendingDistribution::load(const Field& f, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(f, ss.str());
}

std::string ExtendingDistribution::to_text() const {
    std::ostringstream out;
    out.precision(12);
    for (const auto& [d, row] : table_)
        for (int k = 0; k <= max_k_; ++k)
            if (row[k] > 0.0) out << d << " " << k << " " << row[k] << "\n";
    return out.str();
}

}  // namespace nbldpc
