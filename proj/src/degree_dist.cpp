#include "degree_dist.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace nbldpc {

namespace {

constexpr double kSumTol = 1e-9;

double checked_sum(const std::map<int, double>& coeffs, const char* name) {
    double s = 0.0;
    for (const auto& [d, c] : coeffs) {
        if (d < 1) throw std::invalid_argument(std::string(name) + ": degree must be >= 1");
        if (c < 0.0) throw std::invalid_argument(std::string(name) + ": negative coefficient");
        s += c;
    }
    return s;
}

}  // namespace

DegreeDistribution::DegreeDistribution(std::map<int, double> lambda, std::map<int, double> rho)
    : lambda_(std::move(lambda)), rho_(std::move(rho)) {
    if (std::abs(checked_sum(lambda_, "lambda") - 1.0) > 1e-6 ||
        std::abs(checked_sum(rho_, "rho") - 1.0) > 1e-6)
        throw std::invalid_argument("degree distribution coefficients must sum to 1");
    // normalize away the residual so rate algebra is exact to kSumTol
    double sl = checked_sum(lambda_, "lambda"), sr = checked_sum(rho_, "rho");
    for (auto& [d, c] : lambda_) c /= sl;
    for (auto& [d, c] : rho_) c /= sr;
    for (const auto& [d, c] : lambda_)
        if (d < 2) throw std::invalid_argument("symbol degrees must be >= 2");
    for (const auto& [d, c] : rho_)
        if (d < 2) throw std::invalid_argument("check degrees must be >= 2");
    int_lambda_ = int_rho_ = 0.0;
    for (const auto& [d, c] : lambda_) int_lambda_ += c / d;
    for (const auto& [d, c] : rho_) int_rho_ += c / d;
    design_rate();  // validates the rate is inside (0, 1)
    (void)kSumTol;
}

double DegreeDistribution::design_rate() const {
    double r = 1.0 - int_rho_ / int_lambda_;
    if (r <= 0.0 || r >= 1.0) throw std::domain_error("design rate outside (0, 1)");
    return r;
}

double DegreeDistribution::node_fraction(int d) const {
    auto it = lambda_.find(d);
    if (it == lambda_.end()) return 0.0;
    return it->second / (d * int_lambda_);
}

double DegreeDistribution::check_node_fraction(int d) const {
    auto it = rho_.find(d);
    if (it == rho_.end()) return 0.0;
    return it->second / (d * int_rho_);
}

std::vector<int> DegreeDistribution::symbol_degrees() const {
    std::vector<int> out;
    for (const auto& [d, c] : lambda_)
        if (c > 0.0) out.push_back(d);
    return out;
}

std::vector<int> DegreeDistribution::check_degrees() const {
    std::vector<int> out;
    for (const auto& [d, c] : rho_)
        if (c > 0.0) out.push_back(d);
    return out;
}

DegreeDistribution DegreeDistribution::parse(const std::string& text) {
    std::map<int, double> lambda, rho;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string kind;
        int d;
        double c;
        if (!(ls >> kind)) continue;
        if (!(ls >> d >> c)) throw std::invalid_argument("bad degree-polynomial line: " + line);
        if (kind == "lambda")
            lambda[d] += c;
        else if (kind == "rho")
            rho[d] += c;
        else
            throw std::invalid_argument("unknown polynomial kind: " + kind);
    }
    if (lambda.empty() || rho.empty())
        throw std::invalid_argument("degree-polynomial file needs lambda and rho lines");
    return DegreeDistribution(std::move(lambda), std::move(rho));
}

DegreeDistribution DegreeDistribution::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

std::string DegreeDistribution::to_text() const {
    std::ostringstream out;
    out.precision(12);
    for (const auto& [d, c] : lambda_) out << "lambda " << d << " " << c << "\n";
    for (const auto& [d, c] : rho_) out << "rho " << d << " " << c << "\n";
    return out.str();
}

}  // namespace nbldpc
