#include "psicalc/gamma.hpp"

#include <algorithm>
#include <stdexcept>

namespace psicalc {

namespace {

void check_sized(const Graph& g, const VertexFunction& f, const char* who) {
    if (static_cast<int>(f.size()) != g.n)
        throw std::invalid_argument(std::string(who) + ": function has " + std::to_string(f.size()) +
                                    " values for a graph on " + std::to_string(g.n) + " vertices");
}

}  // namespace

VertexFunction laplacian(const Graph& g, const VertexFunction& f) {
    check_sized(g, f, "laplacian");
    VertexFunction out(g.n, 0.0);
    for (int v = 0; v < g.n; ++v) out[v] = laplacian_at(g, f, v);
    return out;
}

double laplacian_at(const Graph& g, const VertexFunction& f, int v) {
    double s = 0.0;
    for (int w : g.adj[v]) s += f[w] - f[v];
    return s;
}

VertexFunction gamma(const Graph& g, const VertexFunction& f, const VertexFunction& h) {
    check_sized(g, f, "gamma");
    check_sized(g, h, "gamma");
    VertexFunction fh(g.n);
    for (int v = 0; v < g.n; ++v) fh[v] = f[v] * h[v];
    VertexFunction lfh = laplacian(g, fh), lf = laplacian(g, f), lh = laplacian(g, h);
    VertexFunction out(g.n);
    for (int v = 0; v < g.n; ++v) out[v] = 0.5 * (lfh[v] - f[v] * lh[v] - h[v] * lf[v]);
    return out;
}

VertexFunction gamma(const Graph& g, const VertexFunction& f) { return gamma(g, f, f); }

VertexFunction gamma2(const Graph& g, const VertexFunction& f, const VertexFunction& h) {
    check_sized(g, f, "gamma2");
    check_sized(g, h, "gamma2");
    VertexFunction gfh = gamma(g, f, h);
    VertexFunction lf = laplacian(g, f), lh = laplacian(g, h);
    VertexFunction lgfh = laplacian(g, gfh);
    VertexFunction gflh = gamma(g, f, lh), ghlf = gamma(g, h, lf);
    VertexFunction out(g.n);
    for (int v = 0; v < g.n; ++v) out[v] = 0.5 * (lgfh[v] - gflh[v] - ghlf[v]);
    return out;
}

VertexFunction gamma2(const Graph& g, const VertexFunction& f) { return gamma2(g, f, f); }

double gamma2_at(const Graph& g, const VertexFunction& f, int x) {
    // local evaluation: Gamma(f) on ball(x,1), Delta f on ball(x,1)
    auto gamma_at = [&](int v) {
        double s = 0.0;
        for (int w : g.adj[v]) {
            const double d = f[w] - f[v];
            s += d * d;
        }
        return 0.5 * s;
    };
    const double gx = gamma_at(x);
    const double lfx = laplacian_at(g, f, x);
    double lap_gamma = 0.0;   // Delta Gamma(f) (x)
    double gamma_f_lf = 0.0;  // Gamma(f, Delta f)(x) = 1/2 sum (f(w)-f(x))(Lf(w)-Lf(x))
    for (int w : g.adj[x]) {
        lap_gamma += gamma_at(w) - gx;
        gamma_f_lf += 0.5 * (f[w] - f[x]) * (laplacian_at(g, f, w) - lfx);
    }
    return 0.5 * (lap_gamma - 2.0 * gamma_f_lf);
}

LocalQuadraticForm gamma2_form(const Graph& g, int x) {
    if (x < 0 || x >= g.n) throw std::invalid_argument("gamma2_form: vertex out of range");
    LocalQuadraticForm form;
    form.center = x;
    form.coords = ball(g, x, 2);
    const int m = static_cast<int>(form.coords.size());
    form.Q = Eigen::MatrixXd::Zero(m, m);
    form.lin = Eigen::VectorXd::Zero(m);

    VertexFunction f(g.n, 0.0);
    std::vector<double> diag(m);
    for (int i = 0; i < m; ++i) {
        f[form.coords[i]] = 1.0;
        diag[i] = gamma2_at(g, f, x);
        form.lin(i) = laplacian_at(g, f, x);
        f[form.coords[i]] = 0.0;
        form.Q(i, i) = diag[i];
    }
    // polarization from pair indicators
    for (int i = 0; i < m; ++i) {
        f[form.coords[i]] = 1.0;
        for (int j = i + 1; j < m; ++j) {
            f[form.coords[j]] = 1.0;
            const double pair_val = gamma2_at(g, f, x);
            const double off = 0.5 * (pair_val - diag[i] - diag[j]);
            form.Q(i, j) = off;
            form.Q(j, i) = off;
            f[form.coords[j]] = 0.0;
        }
        f[form.coords[i]] = 0.0;
    }
    return form;
}

CdDimension cd_dimension(const LocalQuadraticForm& form) {
    // single tolerance governing CD verdicts: pseudo-inverse cutoff relative to
    // the largest eigenvalue
    const double kCut = 1e-10;
    const double kNegative = -1e-10;
    const double kRange = 1e-8;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(form.Q);
    const Eigen::VectorXd& lam = es.eigenvalues();
    const Eigen::MatrixXd& U = es.eigenvectors();
    const int m = static_cast<int>(lam.size());
    const double lam_max = std::max(0.0, lam(m - 1));

    CdDimension out;
    if (lam(0) < kNegative) {
        out.fails = true;
        return out;
    }
    Eigen::VectorXd coeffs = U.transpose() * form.lin;
    double vnorm = form.lin.lpNorm<Eigen::Infinity>();
    double d = 0.0;
    Eigen::VectorXd residual = form.lin;
    for (int i = 0; i < m; ++i) {
        if (lam(i) > kCut * std::max(lam_max, 1e-300)) {
            d += coeffs(i) * coeffs(i) / lam(i);
            residual -= coeffs(i) * U.col(i);
        }
    }
    if (residual.lpNorm<Eigen::Infinity>() > kRange * std::max(1.0, vnorm)) {
        out.fails = true;  // Delta functional leaves range(Q): ratio unbounded
        return out;
    }
    out.d_min = d;
    return out;
}

CdDimension cd_dimension(const Graph& g, int x) { return cd_dimension(gamma2_form(g, x)); }

}  // namespace psicalc
