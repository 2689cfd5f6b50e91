#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace psicalc {

// Ratio window every graph-side evaluation f(w)/f(v) must stay inside.
inline constexpr double kRatioMin = 1e-8;
inline constexpr double kRatioMax = 1e8;

// A parameter function on (0, inf) with analytic derivatives.
struct PsiSpec {
    std::string name;
    std::function<double(double)> eval;
    std::function<double(double)> d1;
    std::function<double(double)> d2;  // empty when unavailable
    bool claims_concave = false;

    bool has_d2() const { return static_cast<bool>(d2); }
};

PsiSpec psi_log();
PsiSpec psi_sqrt();
PsiSpec psi_power(double a);             // (x^a - 1)/a for 0 < a < 1
PsiSpec psi_affine(double c, double b);  // c*x + b (degenerate reference case)

// a*phi + b*psi; concavity claim kept only when it is guaranteed.
PsiSpec affine_combination(double a, const PsiSpec& phi, double b, const PsiSpec& psi);
PsiSpec scaled(double a, const PsiSpec& psi);

// psi_bar(x) = psi'(1)(x-1) - (psi(x) - psi(1)); vanishes to second order at 1,
// nonnegative for concave psi.
PsiSpec psi_bar(const PsiSpec& psi);

// [psi'(x)+psi'(y)](1-xy) + x[psi(y)-psi(1/x)] + y[psi(x)-psi(1/y)]
double psi_tilde(const PsiSpec& psi, double x, double y);

struct ConcavityReport {
    bool concave = true;
    std::vector<std::pair<double, double>> midpoint_violations;
    std::vector<double> d2_violations;
};
ConcavityReport check_concavity(const PsiSpec& psi, const std::vector<double>& grid);
std::vector<double> default_concavity_grid();

// CLI grammar: "log" | "sqrt" | "power:a" with a in (0,1).
PsiSpec parse_psi(const std::string& selector);

}  // namespace psicalc
