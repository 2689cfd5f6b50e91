#include "psicalc/psi_ops.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace psicalc {

namespace {

void check_positive(const VertexFunction& f, const char* who) {
    for (std::size_t v = 0; v < f.size(); ++v) {
        if (!(f[v] > 0.0) || !std::isfinite(f[v])) {
            char buf[160];
            std::snprintf(buf, sizeof(buf), "%s: f must be strictly positive, f(%zu) = %g", who, v,
                          f[v]);
            throw std::invalid_argument(buf);
        }
    }
}

double checked_ratio(const VertexFunction& f, int w, int v) {
    const double r = f[w] / f[v];
    if (r < kRatioMin || r > kRatioMax) {
        char buf[160];
        std::snprintf(buf, sizeof(buf),
                      "ratio f(%d)/f(%d) = %g outside [%g, %g] on edge (%d, %d)", w, v, r,
                      kRatioMin, kRatioMax, v, w);
        throw std::domain_error(buf);
    }
    return r;
}

}  // namespace

double psi_laplacian_at(const Graph& g, const PsiSpec& psi, const VertexFunction& f, int v) {
    const double at_one = psi.eval(1.0);
    double s = 0.0;
    for (int w : g.adj[v]) s += psi.eval(checked_ratio(f, w, v)) - at_one;
    return s;
}

VertexFunction psi_laplacian(const Graph& g, const PsiSpec& psi, const VertexFunction& f) {
    if (static_cast<int>(f.size()) != g.n)
        throw std::invalid_argument("psi_laplacian: function size mismatch");
    check_positive(f, "psi_laplacian");
    VertexFunction out(g.n);
    for (int v = 0; v < g.n; ++v) out[v] = psi_laplacian_at(g, psi, f, v);
    return out;
}

double omega_psi_at(const Graph& g, const PsiSpec& psi, const VertexFunction& f, int v) {
    const double lv = laplacian_at(g, f, v) / f[v];
    double s = 0.0;
    for (int w : g.adj[v]) {
        const double z = checked_ratio(f, w, v);
        s += psi.d1(z) * z * (laplacian_at(g, f, w) / f[w] - lv);
    }
    return s;
}

VertexFunction omega_psi(const Graph& g, const PsiSpec& psi, const VertexFunction& f) {
    if (static_cast<int>(f.size()) != g.n)
        throw std::invalid_argument("omega_psi: function size mismatch");
    check_positive(f, "omega_psi");
    VertexFunction out(g.n);
    for (int v = 0; v < g.n; ++v) out[v] = omega_psi_at(g, psi, f, v);
    return out;
}

double gamma2_psi_at(const Graph& g, const PsiSpec& psi, const VertexFunction& f, int x) {
    const double lx = laplacian_at(g, f, x);
    const double px = psi_laplacian_at(g, psi, f, x);
    double lap_fp = 0.0;  // Delta(f Delta^psi f)(x)
    for (int w : g.adj[x])
        lap_fp += f[w] * psi_laplacian_at(g, psi, f, w) - f[x] * px;
    return 0.5 * (omega_psi_at(g, psi, f, x) + lx * px / f[x] - lap_fp / f[x]);
}

VertexFunction gamma2_psi(const Graph& g, const PsiSpec& psi, const VertexFunction& f) {
    if (static_cast<int>(f.size()) != g.n)
        throw std::invalid_argument("gamma2_psi: function size mismatch");
    check_positive(f, "gamma2_psi");
    VertexFunction om = omega_psi(g, psi, f);
    VertexFunction lf = laplacian(g, f);
    VertexFunction pf = psi_laplacian(g, psi, f);
    VertexFunction fp(g.n);
    for (int v = 0; v < g.n; ++v) fp[v] = f[v] * pf[v];
    VertexFunction lfp = laplacian(g, fp);
    VertexFunction out(g.n);
    for (int v = 0; v < g.n; ++v)
        out[v] = 0.5 * (om[v] + lf[v] * pf[v] / f[v] - lfp[v] / f[v]);
    return out;
}

VertexFunction gamma_psi(const Graph& g, const PsiSpec& psi, const VertexFunction& f) {
    if (!psi.claims_concave)
        throw std::invalid_argument("gamma_psi: psi '" + psi.name +
                                    "' is not marked concave; nonnegativity would be unfounded");
    return psi_laplacian(g, psi_bar(psi), f);
}

double gamma_psi_at(const Graph& g, const PsiSpec& psi_bar_spec, const VertexFunction& f, int v) {
    return psi_laplacian_at(g, psi_bar_spec, f, v);
}

double gradient_representation_residual(const Graph& g, const PsiSpec& psi,
                                        const VertexFunction& f) {
    VertexFunction dpsi = psi_laplacian(g, psi, f);
    VertexFunction gpsi = gamma_psi(g, psi, f);
    VertexFunction lf = laplacian(g, f);
    const double slope = psi.d1(1.0);
    double worst = 0.0;
    for (int v = 0; v < g.n; ++v)
        worst = std::max(worst, std::fabs(-dpsi[v] - gpsi[v] + slope * lf[v] / f[v]));
    return worst;
}

LimitProbe limit_probe(const Graph& g, const PsiSpec& psi, const VertexFunction& f, double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("limit_probe: eps must be positive");
    if (!psi.has_d2()) throw std::invalid_argument("limit_probe: psi needs a second derivative");
    VertexFunction shifted(g.n);
    for (int v = 0; v < g.n; ++v) {
        shifted[v] = 1.0 + eps * f[v];
        if (!(shifted[v] > 0.0))
            throw std::invalid_argument("limit_probe: 1 + eps*f must be strictly positive");
    }
    LimitProbe probe;
    probe.psi_laplacian_scaled = psi_laplacian(g, psi, shifted);
    probe.gamma_psi_scaled = gamma_psi(g, psi, shifted);
    probe.gamma2_psi_scaled = gamma2_psi(g, psi, shifted);
    const double inv = 1.0 / eps, inv2 = 1.0 / (eps * eps);
    for (int v = 0; v < g.n; ++v) {
        probe.psi_laplacian_scaled[v] *= inv;
        probe.gamma_psi_scaled[v] *= inv2;
        probe.gamma2_psi_scaled[v] *= inv2;
    }
    return probe;
}

}  // namespace psicalc
