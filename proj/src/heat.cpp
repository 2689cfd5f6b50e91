#include "psicalc/heat.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace psicalc {

Eigen::MatrixXd laplacian_matrix(const Graph& g) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(g.n, g.n);
    for (int v = 0; v < g.n; ++v) {
        for (int w : g.adj[v]) m(v, w) += 1.0;
        m(v, v) -= static_cast<double>(g.adj[v].size());
    }
    return m;
}

SpectralDecomposition spectral_decomposition(const Graph& g) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(laplacian_matrix(g));
    if (es.info() != Eigen::Success)
        throw std::runtime_error("spectral_decomposition: eigensolver failed");
    return SpectralDecomposition{es.eigenvalues(), es.eigenvectors()};
}

VertexFunction heat_semigroup(const SpectralDecomposition& s, const VertexFunction& f, double t) {
    if (t < 0.0) throw std::invalid_argument("heat_semigroup: t must be >= 0");
    if (f.size() != static_cast<std::size_t>(s.eigenvalues.size()))
        throw std::invalid_argument("heat_semigroup: function size mismatch");
    Eigen::VectorXd fv = Eigen::Map<const Eigen::VectorXd>(f.data(), f.size());
    Eigen::VectorXd coeffs = s.U.transpose() * fv;
    for (int i = 0; i < coeffs.size(); ++i) coeffs(i) *= std::exp(s.eigenvalues(i) * t);
    Eigen::VectorXd out = s.U * coeffs;
    return VertexFunction(out.data(), out.data() + out.size());
}

VertexFunction heat_semigroup(const Graph& g, const VertexFunction& f, double t) {
    return heat_semigroup(spectral_decomposition(g), f, t);
}

VertexFunction heat_semigroup_series(const Graph& g, const VertexFunction& f, double t, int terms) {
    if (t < 0.0) throw std::invalid_argument("heat_semigroup_series: t must be >= 0");
    VertexFunction acc = f, term = f;
    for (int k = 1; k <= terms; ++k) {
        term = laplacian(g, term);
        const double c = t / k;
        for (int v = 0; v < g.n; ++v) term[v] *= c;
        for (int v = 0; v < g.n; ++v) acc[v] += term[v];
    }
    return acc;
}

HeatSolution solve_heat(const Graph& g, const VertexFunction& f0, std::vector<double> times) {
    if (times.empty() || times.front() != 0.0)
        throw std::invalid_argument("solve_heat: time grid must start at 0");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1]))
            throw std::invalid_argument("solve_heat: time grid must be strictly increasing");
    for (std::size_t v = 0; v < f0.size(); ++v)
        if (!(f0[v] > 0.0))
            throw std::invalid_argument("solve_heat: initial data must be strictly positive");

    HeatSolution sol;
    sol.graph = g;
    sol.f0 = f0;
    sol.times = std::move(times);
    sol.spectral = spectral_decomposition(g);
    sol.values.reserve(sol.times.size());
    for (double t : sol.times) {
        VertexFunction u = heat_semigroup(sol.spectral, f0, t);
        for (int v = 0; v < g.n; ++v)
            if (!(u[v] > 0.0))
                throw std::runtime_error("solve_heat: positivity lost at t = " + std::to_string(t));
        sol.values.push_back(std::move(u));
    }
    return sol;
}

double key_identity_residual(const PsiSpec& psi, const HeatSolution& sol, int t_index) {
    if (t_index < 0 || t_index >= static_cast<int>(sol.times.size()))
        throw std::invalid_argument("key_identity_residual: time index out of range");
    const Graph& g = sol.graph;
    const VertexFunction& u = sol.values[t_index];
    VertexFunction dpsi = psi_laplacian(g, psi, u);
    VertexFunction lu = laplacian(g, u);
    VertexFunction om = omega_psi(g, psi, u);
    VertexFunction g2 = gamma2_psi(g, psi, u);
    VertexFunction a(g.n);
    for (int v = 0; v < g.n; ++v) a[v] = -u[v] * dpsi[v];
    VertexFunction la = laplacian(g, a);
    double worst = 0.0;
    for (int v = 0; v < g.n; ++v) {
        const double da_dt = -lu[v] * dpsi[v] - u[v] * om[v];
        worst = std::max(worst, std::fabs(la[v] - da_dt - 2.0 * u[v] * g2[v]));
    }
    return worst;
}

double key_identity_residual_gradient_form(const PsiSpec& psi, const HeatSolution& sol,
                                           int t_index) {
    if (t_index < 0 || t_index >= static_cast<int>(sol.times.size()))
        throw std::invalid_argument("key_identity_residual_gradient_form: time index out of range");
    const Graph& g = sol.graph;
    const VertexFunction& u = sol.values[t_index];
    PsiSpec bar = psi_bar(psi);
    VertexFunction gpsi = psi_laplacian(g, bar, u);  // Gamma^psi u
    VertexFunction lu = laplacian(g, u);
    VertexFunction om_bar = omega_psi(g, bar, u);    // d(Gamma^psi u)/dt along the flow
    VertexFunction g2 = gamma2_psi(g, psi, u);
    VertexFunction b(g.n);
    for (int v = 0; v < g.n; ++v) b[v] = u[v] * gpsi[v];
    VertexFunction lb = laplacian(g, b);
    double worst = 0.0;
    for (int v = 0; v < g.n; ++v) {
        const double db_dt = lu[v] * gpsi[v] + u[v] * om_bar[v];
        worst = std::max(worst, std::fabs(lb[v] - db_dt - 2.0 * u[v] * g2[v]));
    }
    return worst;
}

LiYauReport liyau_check(const Graph& g, const PsiSpec& psi, const VertexFunction& f0, double d,
                        const std::vector<double>& times) {
    if (!is_connected(g)) throw std::invalid_argument("liyau_check: graph must be connected");
    if (!(d > 0.0)) throw std::invalid_argument("liyau_check: d must be positive");
    for (double t : times)
        if (!(t > 0.0)) throw std::invalid_argument("liyau_check: times must be positive");
    SpectralDecomposition spec = spectral_decomposition(g);
    LiYauReport rep;
    rep.worst_margin = -std::numeric_limits<double>::infinity();
    for (double t : times) {
        VertexFunction u = heat_semigroup(spec, f0, t);
        VertexFunction dpsi = psi_laplacian(g, psi, u);
        for (int v = 0; v < g.n; ++v) {
            const double margin = -dpsi[v] - d / (2.0 * t);
            if (margin > rep.worst_margin) {
                rep.worst_margin = margin;
                rep.worst_vertex = v;
                rep.worst_time = t;
            }
        }
    }
    rep.holds = rep.worst_margin <= 1e-9;
    return rep;
}

SemigroupReport semigroup_inequality_check(const Graph& g, const PsiSpec& psi,
                                           const VertexFunction& f, double t, double n) {
    if (t < 0.0) throw std::invalid_argument("semigroup_inequality_check: t must be >= 0");
    SpectralDecomposition spec = spectral_decomposition(g);
    VertexFunction ptf = heat_semigroup(spec, f, t);
    VertexFunction dpsi_ptf = psi_laplacian(g, psi, ptf);
    VertexFunction fdf = psi_laplacian(g, psi, f);
    for (int v = 0; v < g.n; ++v) fdf[v] *= f[v];
    VertexFunction pt_fdf = heat_semigroup(spec, fdf, t);
    SemigroupReport rep;
    rep.worst_margin = std::numeric_limits<double>::infinity();
    for (int v = 0; v < g.n; ++v) {
        const double lhs = ptf[v] * dpsi_ptf[v];
        const double rhs = pt_fdf[v] * (1.0 + (2.0 * t / n) * dpsi_ptf[v]);
        const double margin = lhs - rhs;
        if (margin < rep.worst_margin) {
            rep.worst_margin = margin;
            rep.worst_vertex = v;
        }
    }
    rep.holds = rep.worst_margin >= -1e-9;
    return rep;
}

VertexFunction semigroup_derivative_probe(const Graph& g, const PsiSpec& psi,
                                          const VertexFunction& f, double n, double t) {
    if (!(t > 0.0)) throw std::invalid_argument("semigroup_derivative_probe: t must be positive");
    SpectralDecomposition spec = spectral_decomposition(g);
    VertexFunction ptf = heat_semigroup(spec, f, t);
    VertexFunction dpsi_ptf = psi_laplacian(g, psi, ptf);
    VertexFunction fdf = psi_laplacian(g, psi, f);
    for (int v = 0; v < g.n; ++v) fdf[v] *= f[v];
    VertexFunction pt_fdf = heat_semigroup(spec, fdf, t);
    VertexFunction out(g.n);
    for (int v = 0; v < g.n; ++v) {
        const double lhs = ptf[v] * dpsi_ptf[v];
        const double rhs = pt_fdf[v] * (1.0 + (2.0 * t / n) * dpsi_ptf[v]);
        out[v] = (lhs - rhs) / (2.0 * t);
    }
    return out;
}

std::vector<double> log_spaced_times(double lo, double hi, int count) {
    if (!(lo > 0.0) || !(hi > lo) || count < 2)
        throw std::invalid_argument("log_spaced_times: need 0 < lo < hi and count >= 2");
    std::vector<double> out(count);
    const double llo = std::log(lo), lhi = std::log(hi);
    for (int i = 0; i < count; ++i)
        out[i] = std::exp(llo + (lhi - llo) * i / (count - 1));
    return out;
}

}  // namespace psicalc
