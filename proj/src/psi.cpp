#include "psicalc/psi.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace psicalc {

PsiSpec psi_log() {
    PsiSpec p;
    p.name = "log";
    p.eval = [](double x) { return std::log(x); };
    p.d1 = [](double x) { return 1.0 / x; };
    p.d2 = [](double x) { return -1.0 / (x * x); };
    p.claims_concave = true;
    return p;
}

PsiSpec psi_sqrt() {
    PsiSpec p;
    p.name = "sqrt";
    p.eval = [](double x) { return std::sqrt(x); };
    p.d1 = [](double x) { return 0.5 / std::sqrt(x); };
    p.d2 = [](double x) { return -0.25 / (x * std::sqrt(x)); };
    p.claims_concave = true;
    return p;
}

PsiSpec psi_power(double a) {
    if (!(a > 0.0 && a < 1.0))
        throw std::invalid_argument("psi_power: exponent must lie in (0, 1)");
    PsiSpec p;
    char buf[64];
    std::snprintf(buf, sizeof(buf), "power:%.12g", a);
    p.name = buf;
    p.eval = [a](double x) { return (std::pow(x, a) - 1.0) / a; };
    p.d1 = [a](double x) { return std::pow(x, a - 1.0); };
    p.d2 = [a](double x) { return (a - 1.0) * std::pow(x, a - 2.0); };
    p.claims_concave = true;
    return p;
}

PsiSpec psi_affine(double c, double b) {
    PsiSpec p;
    char buf[80];
    std::snprintf(buf, sizeof(buf), "affine:%.12g,%.12g", c, b);
    p.name = buf;
    p.eval = [c, b](double x) { return c * x + b; };
    p.d1 = [c](double) { return c; };
    p.d2 = [](double) { return 0.0; };
    p.claims_concave = true;  // affine functions are (weakly) concave
    return p;
}

PsiSpec affine_combination(double a, const PsiSpec& phi, double b, const PsiSpec& psi) {
    PsiSpec p;
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%.12g*%s+%.12g*%s", a, phi.name.c_str(), b, psi.name.c_str());
    p.name = buf;
    auto pe = phi.eval, qe = psi.eval;
    p.eval = [a, b, pe, qe](double x) { return a * pe(x) + b * qe(x); };
    auto p1 = phi.d1, q1 = psi.d1;
    p.d1 = [a, b, p1, q1](double x) { return a * p1(x) + b * q1(x); };
    if (phi.has_d2() && psi.has_d2()) {
        auto p2 = phi.d2, q2 = psi.d2;
        p.d2 = [a, b, p2, q2](double x) { return a * p2(x) + b * q2(x); };
    }
    p.claims_concave = phi.claims_concave && psi.claims_concave && a >= 0.0 && b >= 0.0;
    return p;
}

PsiSpec scaled(double a, const PsiSpec& psi) {
    PsiSpec zero = psi_affine(0.0, 0.0);
    return affine_combination(a, psi, 0.0, zero);
}

PsiSpec psi_bar(const PsiSpec& psi) {
    const double slope = psi.d1(1.0);
    const double at_one = psi.eval(1.0);
    PsiSpec p;
    p.name = "bar(" + psi.name + ")";
    auto pe = psi.eval;
    p.eval = [slope, at_one, pe](double x) { return slope * (x - 1.0) - (pe(x) - at_one); };
    auto p1 = psi.d1;
    p.d1 = [slope, p1](double x) { return slope - p1(x); };
    if (psi.has_d2()) {
        auto p2 = psi.d2;
        p.d2 = [p2](double x) { return -p2(x); };
    }
    p.claims_concave = false;  // convex for concave psi
    return p;
}

double psi_tilde(const PsiSpec& psi, double x, double y) {
    if (!(x > 0.0) || !(y > 0.0))
        throw std::invalid_argument("psi_tilde: arguments must be positive");
    return (psi.d1(x) + psi.d1(y)) * (1.0 - x * y) + x * (psi.eval(y) - psi.eval(1.0 / x)) +
           y * (psi.eval(x) - psi.eval(1.0 / y));
}

ConcavityReport check_concavity(const PsiSpec& psi, const std::vector<double>& grid) {
    ConcavityReport rep;
    const double tol = 1e-12;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        for (std::size_t j = i; j < grid.size(); ++j) {
            const double x = grid[i], y = grid[j];
            const double mid = psi.eval(0.5 * (x + y));
            const double chord = 0.5 * (psi.eval(x) + psi.eval(y));
            const double scale = std::max({1.0, std::fabs(mid), std::fabs(chord)});
            if (mid < chord - tol * scale) {
                rep.concave = false;
                rep.midpoint_violations.emplace_back(x, y);
            }
        }
        if (psi.has_d2() && psi.d2(grid[i]) > tol) {
            rep.concave = false;
            rep.d2_violations.push_back(grid[i]);
        }
    }
    return rep;
}

std::vector<double> default_concavity_grid() {
    std::vector<double> grid;
    const int count = 61;
    for (int i = 0; i < count; ++i) {
        const double t = -6.0 + 12.0 * i / (count - 1);  // log10 spacing over [1e-6, 1e6]
        grid.push_back(std::pow(10.0, t));
    }
    return grid;
}

PsiSpec parse_psi(const std::string& selector) {
    if (selector == "log") return psi_log();
    if (selector == "sqrt") return psi_sqrt();
    if (selector.rfind("power:", 0) == 0) {
        double a = 0.0;
        try {
            a = std::stod(selector.substr(6));
        } catch (const std::exception&) {
            throw std::invalid_argument("parse_psi: bad power exponent in '" + selector + "'");
        }
        return psi_power(a);
    }
    throw std::invalid_argument("parse_psi: unknown selector '" + selector +
                                "' (expected log | sqrt | power:a)");
}

}  // namespace psicalc
