#pragma once

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "fourtwo/errors.hpp"

namespace fourtwo {

// Risk-neutral parameter set of the 4/2 stochastic-volatility-plus-jumps
// model. Instantaneous volatility is a*sqrt(V) + b/sqrt(V) with V a CIR
// process; b = 0 recovers Heston, a = 0 the 3/2 model.
//
// Validation is an explicit call rather than a constructor failure so
// that an optimiser can walk through infeasible points under penalty.
struct ModelParams {
    double kappa = 1.0;   // mean-reversion speed of V, 1/years
    double theta = 0.04;  // long-run level of V
    double sigma = 0.3;   // vol-of-vol
    double a = 1.0;       // sqrt(V) volatility coefficient
    double b = 0.0;       // 1/sqrt(V) volatility coefficient
    double rho = 0.0;     // correlation between the price and variance drivers
    double lambda = 0.0;  // jump intensity, 1/years
    double mu = 0.0;      // mean of log jump size
    double eta = 0.0;     // std dev of log jump size
    double r = 0.0;       // risk-free rate, continuous compounding
    double v0 = 0.04;     // initial variance state

    bool is_valid() const {
        return kappa > 0.0 && theta > 0.0 && v0 > 0.0 && sigma != 0.0 &&
               std::abs(rho) <= 1.0 && eta >= 0.0 && lambda >= 0.0;
    }

    void validate() const {
        if (kappa <= 0.0) throw DomainError("ModelParams: kappa must be positive");
        if (theta <= 0.0) throw DomainError("ModelParams: theta must be positive");
        if (v0 <= 0.0) throw DomainError("ModelParams: v0 must be positive");
        if (sigma == 0.0) throw DomainError("ModelParams: sigma must be nonzero");
        if (std::abs(rho) > 1.0) throw DomainError("ModelParams: |rho| must be <= 1");
        if (eta < 0.0) throw DomainError("ModelParams: eta must be nonnegative");
        if (lambda < 0.0) throw DomainError("ModelParams: lambda must be nonnegative");
    }
};

// mu_tilde = exp(mu + eta^2/2) - 1, the drift compensator of the jump
// component. Always derived, never stored.
inline double jump_compensator(const ModelParams& p) {
    return std::expm1(p.mu + 0.5 * p.eta * p.eta);
}

// Feller test 2*kappa*theta >= sigma^2 (non-strict).
inline bool feller_check(const ModelParams& p) {
    return 2.0 * p.kappa * p.theta >= p.sigma * p.sigma;
}

struct MartingaleReport {
    bool is_martingale = false;
    std::string diagnostic;
};

// Evaluates the literal double inequality
//     2*kappa*theta + 2*rho*sigma*b < sigma^2 <= 2*kappa*theta
// for the discounted asset to be a true martingale. When rho*sigma*b >= 0
// the condition is unsatisfiable as written (in particular for b = 0); a
// diagnostic notes that, and no silent correction is applied.
inline MartingaleReport martingale_check(const ModelParams& p) {
    const double two_kt = 2.0 * p.kappa * p.theta;
    const double s2 = p.sigma * p.sigma;
    const double lhs = two_kt + 2.0 * p.rho * p.sigma * p.b;
    MartingaleReport rep;
    rep.is_martingale = (lhs < s2) && (s2 <= two_kt);
    if (p.rho * p.sigma * p.b >= 0.0) {
        rep.diagnostic =
            "condition is vacuous: rho*sigma*b >= 0 makes "
            "2*kappa*theta + 2*rho*sigma*b < sigma^2 <= 2*kappa*theta unsatisfiable";
    } else if (rep.is_martingale) {
        rep.diagnostic = "martingale condition satisfied";
    } else {
        rep.diagnostic = "martingale condition violated";
    }
    return rep;
}

// Heston special case: zero the 1/sqrt(V) coefficient.
inline ModelParams make_heston(ModelParams p) {
    p.b = 0.0;
    return p;
}

// 3/2 special case: zero the sqrt(V) coefficient.
inline ModelParams make_three_halves(ModelParams p) {
    p.a = 0.0;
    return p;
}

// Parameters of X = 1/V written as dX = kt*X*(tt - X)dt + st*X^{3/2} dW.
struct ThreeHalvesParams {
    double kappa_tilde;
    double theta_tilde;
    double sigma_tilde;
};

inline ThreeHalvesParams to_three_halves_form(const ModelParams& p) {
    const double kt = p.kappa * p.theta - p.sigma * p.sigma;
    if (kt == 0.0)
        throw DomainError("to_three_halves_form: degenerate, kappa*theta == sigma^2");
    return ThreeHalvesParams{kt, p.kappa / kt, -p.sigma};
}

// --- parameter file: flat "name = value" lines, unknown keys rejected ---

inline ModelParams load_params(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("load_params: cannot open " + path);
    ModelParams p;
    std::map<std::string, double*> fields{
        {"kappa", &p.kappa}, {"theta", &p.theta}, {"sigma", &p.sigma}, {"a", &p.a},
        {"b", &p.b},         {"rho", &p.rho},     {"lambda", &p.lambda}, {"mu", &p.mu},
        {"eta", &p.eta},     {"r", &p.r},         {"v0", &p.v0}};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto h = line.find('#');
        if (h != std::string::npos) line.erase(h);
        std::string key, eq;
        double value;
        std::istringstream ls(line);
        if (!(ls >> key)) continue;  // blank line
        if (!(ls >> eq >> value) || eq != "=")
            throw Error("load_params: " + path + ":" + std::to_string(lineno) +
                        ": expected 'name = value'");
        auto it = fields.find(key);
        if (it == fields.end())
            throw Error("load_params: " + path + ":" + std::to_string(lineno) +
                        ": unknown key '" + key + "'");
        *it->second = value;
    }
    return p;
}

inline void save_params(const ModelParams& p, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("save_params: cannot open " + path);
    out.precision(17);
    out << "kappa = " << p.kappa << "\ntheta = " << p.theta << "\nsigma = " << p.sigma
        << "\na = " << p.a << "\nb = " << p.b << "\nrho = " << p.rho
        << "\nlambda = " << p.lambda << "\nmu = " << p.mu << "\neta = " << p.eta
        << "\nr = " << p.r << "\nv0 = " << p.v0 << "\n";
}

}  // namespace fourtwo
