#pragma once

#include "psicalc/gamma.hpp"
#include "psicalc/psi.hpp"

namespace psicalc {

// (Delta^psi f)(v) = sum_{w ~ v} [psi(f(w)/f(v)) - psi(1)]; the subtraction
// keeps the representation valid when psi(1) != 0.
VertexFunction psi_laplacian(const Graph& g, const PsiSpec& psi, const VertexFunction& f);
double psi_laplacian_at(const Graph& g, const PsiSpec& psi, const VertexFunction& f, int v);

// (Omega^psi f)(v) = sum_{w ~ v} psi'(z_w) z_w [Lf(w)/f(w) - Lf(v)/f(v)],
// z_w = f(w)/f(v)
VertexFunction omega_psi(const Graph& g, const PsiSpec& psi, const VertexFunction& f);
double omega_psi_at(const Graph& g, const PsiSpec& psi, const VertexFunction& f, int v);

// 2 Gamma2^psi(f) = Omega^psi f + (Lf)(Delta^psi f)/f - Delta(f Delta^psi f)/f
VertexFunction gamma2_psi(const Graph& g, const PsiSpec& psi, const VertexFunction& f);
double gamma2_psi_at(const Graph& g, const PsiSpec& psi, const VertexFunction& f, int x);

// Gamma^psi = Delta^{psi_bar}; pointwise nonnegative for concave psi.
VertexFunction gamma_psi(const Graph& g, const PsiSpec& psi, const VertexFunction& f);
double gamma_psi_at(const Graph& g, const PsiSpec& psi_bar_spec, const VertexFunction& f, int v);

// max_v | -Delta^psi f - Gamma^psi(f) + psi'(1) Lf/f |
double gradient_representation_residual(const Graph& g, const PsiSpec& psi, const VertexFunction& f);

// ((1/eps) Delta^psi(1+eps f), (1/eps^2) Gamma^psi(1+eps f),
//  (1/eps^2) Gamma2^psi(1+eps f)) for convergence probing against
// (psi'(1) Lf, -psi''(1) Gamma(f), -psi''(1) Gamma2(f)).
struct LimitProbe {
    VertexFunction psi_laplacian_scaled;
    VertexFunction gamma_psi_scaled;
    VertexFunction gamma2_psi_scaled;
};
LimitProbe limit_probe(const Graph& g, const PsiSpec& psi, const VertexFunction& f, double eps);

}  // namespace psicalc
