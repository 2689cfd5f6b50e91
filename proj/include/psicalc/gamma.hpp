#pragma once

#include <Eigen/Dense>
#include <vector>

#include "psicalc/graph.hpp"

namespace psicalc {

using VertexFunction = std::vector<double>;

// Delta f(v) = sum_{w ~ v} (f(w) - f(v))
VertexFunction laplacian(const Graph& g, const VertexFunction& f);
double laplacian_at(const Graph& g, const VertexFunction& f, int v);

// 2 Gamma(f,h) = Delta(fh) - f Delta h - h Delta f
VertexFunction gamma(const Graph& g, const VertexFunction& f, const VertexFunction& h);
VertexFunction gamma(const Graph& g, const VertexFunction& f);

// 2 Gamma2(f,h) = Delta Gamma(f,h) - Gamma(f, Delta h) - Gamma(h, Delta f)
VertexFunction gamma2(const Graph& g, const VertexFunction& f, const VertexFunction& h);
VertexFunction gamma2(const Graph& g, const VertexFunction& f);
double gamma2_at(const Graph& g, const VertexFunction& f, int x);

// Exact quadratic representation of Gamma2(f)(center) on ball(g, center, 2),
// with the linear functional representing Delta f(center).
struct LocalQuadraticForm {
    int center = 0;
    std::vector<int> coords;
    Eigen::MatrixXd Q;
    Eigen::VectorXd lin;
};
LocalQuadraticForm gamma2_form(const Graph& g, int x);

// Optimal d in CD(d,0) at one vertex. d_min = 0 means the condition holds for
// every d > 0; fails = true means no d works.
struct CdDimension {
    bool fails = false;
    double d_min = 0.0;
};
CdDimension cd_dimension(const LocalQuadraticForm& form);
CdDimension cd_dimension(const Graph& g, int x);

}  // namespace psicalc
