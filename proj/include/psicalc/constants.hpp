#pragma once

#include "psicalc/psi.hpp"

namespace psicalc {

// Below this, C_psi is reported as degenerate (zero for all practical purposes).
inline constexpr double kCPsiDegenerate = 1e-9;

struct HarnackConstantResult {
    bool infinite = false;
    double value = 0.0;
    double lo = 0.0, hi = 0.0;  // bracketing interval containing value
    double maximizer_x = 1.0;   // location of the supremum (1 means the x->1 limit)
};
// sup_{x>1} (log x)^2 / psi_bar(x); "infinite" when psi''(1) = 0 or psi_bar
// vanishes at a sampled point away from 1.
HarnackConstantResult harnack_constant(const PsiSpec& psi, double tol);

struct CPsiResult {
    double value = 0.0;
    double lo = 0.0, hi = 0.0;
    double min_x = 1.0, min_y = 1.0;
    bool degenerate = false;  // value <= kCPsiDegenerate
    // anti-diagonal witness (y = 1/x) showing a vanishing numerator with a
    // denominator bounded away from zero, when one exists
    bool anti_diagonal_witness = false;
    double anti_diagonal_x = 1.0;
    double anti_diagonal_numerator = 0.0;
    double anti_diagonal_denominator = 0.0;
    double diagonal_value = 0.0;  // infimum restricted to x = y
};
// inf_{x,y>0} psi_tilde(x,y) / (psi(x)+psi(y)-2 psi(1))^2, optimized in
// log-coordinates over [-30, 30]^2.
CPsiResult c_psi(const PsiSpec& psi, double tol);

// 2 sqrt(z) (1/z - 1 + log z) / (log z)^2, with the removable limit 1 at z = 1.
double c_log_diagonal(double z);
// Minimum of the diagonal function over a log grid on [1e-6, 1e6] plus golden
// refinement; an independent 1-D oracle for c_psi(log).
double c_log_diagonal_minimum();

}  // namespace psicalc
