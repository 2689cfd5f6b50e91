#pragma once

#include <string>

#include "psicalc/graph.hpp"
#include "psicalc/heat.hpp"
#include "psicalc/psi.hpp"

namespace psicalc {

// Coefficients of the gradient estimate D1*Gamma^psi(u) - d/dt log u <= D2/t + D3
// together with the data of one vertex/time pair.
struct HarnackParams {
    double D1 = 1.0;
    double D2 = 1.0;
    double D3 = 0.0;
    double H_psi = 2.0;
    double dist = 0.0;  // graph distance d(x1, x2)
    double T1 = 0.0;
    double T2 = 0.0;
};

// log u(x1,T1) - log u(x2,T2) <= D2 log(T2/T1) + D3 (T2-T1) + H_psi d^2 / (D1 (T2-T1)).
// The distance enters squared; the bound is returned in log form.
double harnack_bound(const HarnackParams& p);

struct GradientEstimateReport {
    bool holds = false;
    double worst_margin = 0.0;  // max of D1*Gamma^psi(u) - Lu/u - D2/t - D3
    int worst_vertex = -1;
    double worst_time = 0.0;
};
// Checks the gradient estimate over every vertex and every positive grid time,
// with d/dt log u evaluated analytically as Lu/u.
GradientEstimateReport gradient_estimate_check(const PsiSpec& psi, const HeatSolution& u,
                                               double D1, double D2, double D3);

struct HarnackReport {
    bool holds = false;
    long long pairs_checked = 0;
    long long pairs_violated = 0;
    double tightest_slack = 0.0;  // min over pairs of bound - (log u(x1,T1) - log u(x2,T2))
    int tight_x1 = -1, tight_x2 = -1;
    double tight_T1 = 0.0, tight_T2 = 0.0;
    GradientEstimateReport hypothesis;
};
// For every vertex pair and every grid-time pair T1 < T2 (positive times only),
// asserts the two-point bound from harnack_bound with the supplied coefficients.
HarnackReport harnack_check(const PsiSpec& psi, const HeatSolution& u, double D1, double D2,
                            double D3, double H_psi, double tol = 1e-9);

// D/(2 C_psi) log(T2/T1) + H_psi d^2 / (T2-T1), the Ricci-flat specialization
// (coefficients D1 = 1, D2 = D/(2 C_psi), D3 = 0 wired in).
double ricci_flat_harnack_bound(int D, double c_psi_value, double h_psi_value, double dist,
                                double T1, double T2);
double ricci_flat_harnack_bound(int D, const PsiSpec& psi, double dist, double T1, double T2);

struct EdgeEstimateReport {
    bool holds = false;
    double worst_margin = 0.0;  // max over directed edges of log(f(w)/f(v)) - sqrt(H Gamma^psi f(v))
    int worst_v = -1, worst_w = -1;
};
// log(f(w)/f(v)) <= sqrt(H_psi * Gamma^psi(f)(v)) on every directed edge, f > 0.
EdgeEstimateReport gamma_psi_edge_estimate(const Graph& g, const PsiSpec& psi,
                                           const VertexFunction& f, double tol = 1e-9);

}  // namespace psicalc
