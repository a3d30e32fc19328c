#pragma once

#include <map>
#include <string>
#include <vector>

namespace nbldpc {

// Edge-perspective degree distribution pair (lambda, rho).
class DegreeDistribution {
public:
    DegreeDistribution(std::map<int, double> lambda, std::map<int, double> rho);

    const std::map<int, double>& lambda() const { return lambda_; }
    const std::map<int, double>& rho() const { return rho_; }

    double int_lambda() const { return int_lambda_; }  // sum lambda_d / d
    double int_rho() const { return int_rho_; }

    double design_rate() const;

    // Node-perspective fraction of degree-d symbol nodes.
    double node_fraction(int d) const;
    // Node-perspective fraction of degree-d check nodes.
    double check_node_fraction(int d) const;

    std::vector<int> symbol_degrees() const;
    std::vector<int> check_degrees() const;

    // Parse lines "lambda <d> <coeff>" / "rho <d> <coeff>" ('#' comments).
    static DegreeDistribution parse(const std::string& text);
    static DegreeDistribution load(const std::string& path);
    std::string to_text() const;

private:
    std::map<int, double> lambda_, rho_;
    double int_lambda_, int_rho_;
};

}  // namespace nbldpc
