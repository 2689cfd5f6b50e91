#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "psicalc/constants.hpp"

using namespace psicalc;
using doctest::Approx;

TEST_CASE("harnack constants for log and sqrt hit their closed forms") {
    HarnackConstantResult h_log = harnack_constant(psi_log(), 1e-9);
    CHECK(h_log.value == Approx(2.0).epsilon(1e-6));
    CHECK(h_log.lo <= h_log.value);
    CHECK(h_log.value <= h_log.hi);
    CHECK(h_log.maximizer_x == Approx(1.0));  // supremum is the x -> 1 limit

    HarnackConstantResult h_sqrt = harnack_constant(psi_sqrt(), 1e-9);
    CHECK(h_sqrt.value == Approx(8.0).epsilon(1e-6));
    CHECK(h_sqrt.maximizer_x == Approx(1.0));
}

TEST_CASE("harnack constant for the power family follows 2/(1-a)") {
    for (double a : {0.2, 0.5, 0.8}) {
        HarnackConstantResult h = harnack_constant(psi_power(a), 1e-9);
        CHECK(h.value == Approx(2.0 / (1.0 - a)).epsilon(1e-6));
    }
}

TEST_CASE("affine psi has an infinite harnack constant") {
    HarnackConstantResult h = harnack_constant(psi_affine(1.0, 0.0), 1e-9);
    CHECK(std::isinf(h.value));
}

TEST_CASE("c_psi for log: value, bracket, witness, diagonal agreement") {
    CPsiResult c = c_psi(psi_log(), 1e-9);
    CHECK_FALSE(c.degenerate);
    CHECK(c.value >= 0.5);
    CHECK(c.value <= 1.0);
    CHECK(std::fabs(c.value - 0.795) <= 5e-3);
    CHECK(c.value == Approx(0.7951229668476556).epsilon(1e-6));
    CHECK(c.lo <= c.value);
    CHECK(c.value <= c.hi);

    // the reported minimizer reproduces the reported value
    PsiSpec lg = psi_log();
    const double num = psi_tilde(lg, c.min_x, c.min_y);
    const double den = lg.eval(c.min_x) + lg.eval(c.min_y) - 2.0 * lg.eval(1.0);
    CHECK(num / (den * den) == Approx(c.value).epsilon(1e-9));

    CHECK(c.diagonal_value == Approx(c_log_diagonal_minimum()).epsilon(1e-9));
    CHECK(std::fabs(c.value - c.diagonal_value) <= 5e-3);
}

TEST_CASE("the diagonal profile for log has a removable limit at 1") {
    CHECK(c_log_diagonal(1.0) == Approx(1.0));
    CHECK(c_log_diagonal(1.0 + 1e-9) == Approx(1.0).epsilon(1e-6));
    CHECK(c_log_diagonal_minimum() == Approx(0.7951229668476556).epsilon(1e-9));
    // interior minimum, not a boundary artifact
    CHECK(c_log_diagonal(0.068) == Approx(c_log_diagonal_minimum()).epsilon(1e-4));
}

TEST_CASE("c_psi degenerates for sqrt with an anti-diagonal witness") {
    CPsiResult c = c_psi(psi_sqrt(), 1e-9);
    CHECK(c.degenerate);
    CHECK(c.value <= 1e-9);
    CHECK(c.value >= -1e-9);
    CHECK(std::fabs(c.anti_diagonal_numerator) <= 1e-12);
    CHECK(c.anti_diagonal_denominator > 1e-3);

    // the witness structure: psi_tilde vanishes on (x, 1/x) while the
    // denominator stays bounded away from zero
    PsiSpec sq = psi_sqrt();
    const double x = c.anti_diagonal_x;
    const double den = sq.eval(x) + sq.eval(1.0 / x) - 2.0 * sq.eval(1.0);
    CHECK(den * den == Approx(c.anti_diagonal_denominator).epsilon(1e-9));
}

TEST_CASE("c_psi stays nonnegative for concave psi") {
    for (double a : {0.3, 0.7}) {
        CPsiResult c = c_psi(psi_power(a), 1e-6);
        CHECK(c.value >= -1e-9);
    }
}

TEST_CASE("constants reject non-concave psi") {
    PsiSpec convex{"square", [](double x) { return x * x; }, [](double x) { return 2.0 * x; },
                   [](double) { return 2.0; }, false};
    CHECK_THROWS_AS(harnack_constant(convex, 1e-9), std::invalid_argument);
    // c_psi does not reject: a degenerate (zero or negative) infimum is a result.
    CPsiResult c = c_psi(convex, 1e-6);
    CHECK(c.value < 0.0);
    CHECK(c.degenerate);
}
