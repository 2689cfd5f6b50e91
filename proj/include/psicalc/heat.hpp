#pragma once

#include <Eigen/Dense>
#include <vector>

#include "psicalc/psi_ops.hpp"

namespace psicalc {

Eigen::MatrixXd laplacian_matrix(const Graph& g);

struct SpectralDecomposition {
    Eigen::VectorXd eigenvalues;  // ascending, all <= 0 up to roundoff
    Eigen::MatrixXd U;            // orthonormal eigenvector columns
};
SpectralDecomposition spectral_decomposition(const Graph& g);

// P_t f = U exp(Lambda t) U^T f
VertexFunction heat_semigroup(const SpectralDecomposition& s, const VertexFunction& f, double t);
VertexFunction heat_semigroup(const Graph& g, const VertexFunction& f, double t);

// Truncated power series sum_{k<=terms} t^k Delta^k f / k!, for cross-checks.
VertexFunction heat_semigroup_series(const Graph& g, const VertexFunction& f, double t, int terms);

struct HeatSolution {
    Graph graph;
    VertexFunction f0;
    std::vector<double> times;            // strictly increasing, starts at 0
    std::vector<VertexFunction> values;   // values[k] = u(., times[k])
    SpectralDecomposition spectral;
};
HeatSolution solve_heat(const Graph& g, const VertexFunction& f0, std::vector<double> times);

// Residual of L(-u Delta^psi u) = 2u Gamma2^psi(u) at one grid time, with the
// time derivative taken analytically (du/dt = Lu, d(Delta^psi u)/dt = Omega^psi u).
double key_identity_residual(const PsiSpec& psi, const HeatSolution& u, int t_index);
// Same check through the gradient form: L(u Gamma^psi u) = 2u Gamma2^psi(u).
double key_identity_residual_gradient_form(const PsiSpec& psi, const HeatSolution& u, int t_index);

struct LiYauReport {
    bool holds = false;
    double worst_margin = 0.0;  // max over (x,t) of -Delta^psi u - d/(2t)
    int worst_vertex = -1;
    double worst_time = 0.0;
};
// times must all be positive; the heat solution grid gets 0 prepended internally.
LiYauReport liyau_check(const Graph& g, const PsiSpec& psi, const VertexFunction& f0, double d,
                        const std::vector<double>& times);

struct SemigroupReport {
    bool holds = false;
    double worst_margin = 0.0;  // min over x of LHS - RHS
    int worst_vertex = -1;
};
// P_t f Delta^psi P_t f >= P_t(f Delta^psi f) (1 + (2t/n) Delta^psi P_t f)
SemigroupReport semigroup_inequality_check(const Graph& g, const PsiSpec& psi,
                                           const VertexFunction& f, double t, double n);

// (LHS - RHS)/(2t) of the semigroup inequality; converges to
// f (Gamma2^psi f - (1/n)(Delta^psi f)^2) as t -> 0.
VertexFunction semigroup_derivative_probe(const Graph& g, const PsiSpec& psi,
                                          const VertexFunction& f, double n, double t);

std::vector<double> log_spaced_times(double lo, double hi, int count);

}  // namespace psicalc
