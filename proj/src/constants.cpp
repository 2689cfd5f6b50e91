#include "psicalc/constants.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

namespace psicalc {

namespace {

// Direct evaluation of s^2 / psi_bar(e^s) is catastrophically cancellative for
// s below this guard; the boundary limit 2/psi_bar''(1) covers that region
// analytically whenever psi'' is available.
constexpr double kNearOneGuard = 1e-4;

constexpr double kExclusionRadius = 1e-9;  // |psi(x)+psi(y)-2psi(1)| below this is singular
constexpr double kProbeRadius = 1e-4;      // neighborhood probing distance in log coords

double golden_max(const std::function<double(double)>& f, double a, double b, double tol) {
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < 300 && (b - a) > tol * (std::fabs(a) + std::fabs(b) + 1e-12); ++it) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = f(x1);
        }
    }
    return std::max(f1, f2);
}

double golden_max_arg(const std::function<double(double)>& f, double a, double b, double tol,
                      double* arg) {
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < 300 && (b - a) > tol * (std::fabs(a) + std::fabs(b) + 1e-12); ++it) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = f(x1);
        }
    }
    if (arg) *arg = (f1 >= f2) ? x1 : x2;
    return std::max(f1, f2);
}

}  // namespace

HarnackConstantResult harnack_constant(const PsiSpec& psi, double tol) {
    if (!psi.claims_concave)
        throw std::invalid_argument("harnack_constant: psi '" + psi.name + "' is not marked concave");
    if (!(tol > 0.0)) throw std::invalid_argument("harnack_constant: tol must be positive");

    HarnackConstantResult res;
    if (psi.has_d2() && std::fabs(psi.d2(1.0)) < 1e-14) {
        res.infinite = true;  // degenerate: psi''(1) = 0
        res.value = res.lo = res.hi = std::numeric_limits<double>::infinity();
        return res;
    }
    PsiSpec bar = psi_bar(psi);
    auto r = [&bar](double s) {
        const double denom = bar.eval(std::exp(s));
        return s * s / denom;
    };

    const int kGrid = 600;
    const double s_lo = 1e-6, s_hi = 50.0;
    const double step = std::log(s_hi / s_lo) / (kGrid - 1);
    std::vector<double> svals(kGrid);
    int best = -1;
    for (int i = 0; i < kGrid; ++i) {
        const double s = s_lo * std::exp(step * i);
        svals[i] = s;
        const double denom = bar.eval(std::exp(s));
        if (denom <= 0.0) {
            res.infinite = true;  // psi_bar vanishes away from 1
            res.value = res.lo = res.hi = std::numeric_limits<double>::infinity();
            return res;
        }
        const bool eligible = !psi.has_d2() || s >= kNearOneGuard;
        if (eligible && (best < 0 || r(s) > r(svals[best]))) best = i;
    }

    double interior = -std::numeric_limits<double>::infinity();
    double interior_arg = svals[best];
    {
        double a = svals[std::max(0, best - 1)];
        const double b = svals[std::min(kGrid - 1, best + 1)];
        if (psi.has_d2()) a = std::max(a, kNearOneGuard);  // keep out of the cancellation zone
        interior = golden_max_arg(r, a, b, tol, &interior_arg);
    }
    double limit = -std::numeric_limits<double>::infinity();
    if (psi.has_d2()) limit = -2.0 / psi.d2(1.0);  // psi_bar''(1) = -psi''(1)

    if (limit >= interior) {
        res.value = limit;
        res.maximizer_x = 1.0;
        res.lo = res.hi = limit;
    } else {
        res.value = interior;
        res.maximizer_x = std::exp(interior_arg);
        res.lo = interior;
        res.hi = interior * (1.0 + tol);
    }
    return res;
}

namespace {

struct RatioPoint {
    double s, t, value;
};

// ratio in log coordinates; nullopt on the excluded set
std::optional<double> c_psi_ratio(const PsiSpec& psi, double psi1, double s, double t) {
    const double x = std::exp(s), y = std::exp(t);
    const double den_root = psi.eval(x) + psi.eval(y) - 2.0 * psi1;
    if (std::fabs(den_root) < kExclusionRadius) return std::nullopt;
    return psi_tilde(psi, x, y) / (den_root * den_root);
}

}  // namespace

CPsiResult c_psi(const PsiSpec& psi, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("c_psi: tol must be positive");
    const double psi1 = psi.eval(1.0);
    const double kBox = 30.0;

    auto ratio = [&](double s, double t) { return c_psi_ratio(psi, psi1, s, t); };

    // dense coarse grid
    const double coarse = 0.25;
    std::vector<RatioPoint> points;
    points.reserve(70000);
    for (double s = -kBox; s <= kBox + 1e-12; s += coarse) {
        for (double t = -kBox; t <= kBox + 1e-12; t += coarse) {
            auto v = ratio(s, t);
            if (v) {
                points.push_back({s, t, *v});
            } else {
                // probe around the excluded set
                const double ds[4] = {kProbeRadius, -kProbeRadius, 0.0, 0.0};
                const double dt[4] = {0.0, 0.0, kProbeRadius, -kProbeRadius};
                for (int k = 0; k < 4; ++k) {
                    auto pv = ratio(s + ds[k], t + dt[k]);
                    if (pv) points.push_back({s + ds[k], t + dt[k], *pv});
                }
            }
        }
    }
    if (points.empty()) throw std::runtime_error("c_psi: whole grid is singular");

    std::vector<std::size_t> order(points.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    const std::size_t keep = std::min<std::size_t>(20, order.size());
    std::partial_sort(order.begin(), order.begin() + keep, order.end(),
                      [&](std::size_t a, std::size_t b) { return points[a].value < points[b].value; });

    // pattern search (8 compass directions, halving step)
    auto refine = [&](RatioPoint p) {
        double h = coarse;
        const double h_min = std::max(tol, 1e-12);
        int guard = 0;
        while (h > h_min && guard < 20000) {
            bool moved = false;
            static const int dir[8][2] = {{1, 0},  {-1, 0}, {0, 1},  {0, -1},
                                          {1, 1},  {-1, -1}, {1, -1}, {-1, 1}};
            for (const auto& d : dir) {
                ++guard;
                const double ns = std::clamp(p.s + d[0] * h, -kBox, kBox);
                const double nt = std::clamp(p.t + d[1] * h, -kBox, kBox);
                auto v = ratio(ns, nt);
                if (v && *v < p.value) {
                    p = {ns, nt, *v};
                    moved = true;
                    break;
                }
            }
            if (!moved) h *= 0.5;
        }
        return p;
    };

    RatioPoint best = points[order[0]];
    for (std::size_t i = 0; i < keep; ++i) {
        RatioPoint cand = refine(points[order[i]]);
        if (cand.value < best.value) best = cand;
    }

    CPsiResult res;
    res.value = best.value;
    res.min_x = std::exp(best.s);
    res.min_y = std::exp(best.t);
    res.lo = best.value - tol * std::max(1.0, std::fabs(best.value));
    res.hi = best.value + tol * std::max(1.0, std::fabs(best.value));

    // explicit anti-diagonal sweep y = 1/x, where psi_tilde vanishes identically
    for (int i = 0; i <= 2000; ++i) {
        const double s = -kBox + 2.0 * kBox * i / 2000.0;
        const double x = std::exp(s);
        const double num = psi_tilde(psi, x, 1.0 / x);
        const double den_root = psi.eval(x) + psi.eval(1.0 / x) - 2.0 * psi1;
        const double den = den_root * den_root;
        if (std::fabs(num) <= 1e-12 && den > 1e-3) {
            if (!res.anti_diagonal_witness || den > res.anti_diagonal_denominator) {
                res.anti_diagonal_witness = true;
                res.anti_diagonal_x = x;
                res.anti_diagonal_numerator = std::fabs(num);
                res.anti_diagonal_denominator = den;
            }
            const double v = num / den;
            if (v < res.value) {
                res.value = v;
                res.min_x = x;
                res.min_y = 1.0 / x;
                res.lo = v - tol * std::max(1.0, std::fabs(v));
                res.hi = v + tol * std::max(1.0, std::fabs(v));
            }
        }
    }

    // diagonal restriction x = y as a reported cross-check
    {
        std::vector<double> diag_s;
        double diag_best = std::numeric_limits<double>::infinity();
        double diag_arg = 0.0;
        for (double s = -kBox; s <= kBox + 1e-12; s += 0.05) {
            auto v = ratio(s, s);
            if (v && *v < diag_best) {
                diag_best = *v;
                diag_arg = s;
            }
        }
        auto neg_diag = [&](double s) {
            auto v = ratio(s, s);
            return v ? -*v : -std::numeric_limits<double>::infinity();
        };
        const double refined = -golden_max(neg_diag, diag_arg - 0.05, diag_arg + 0.05, tol);
        res.diagonal_value = std::min(diag_best, refined);
    }

    res.degenerate = res.value <= kCPsiDegenerate;
    return res;
}

double c_log_diagonal(double z) {
    if (!(z > 0.0)) throw std::invalid_argument("c_log_diagonal: z must be positive");
    if (std::fabs(z - 1.0) < 1e-8) return 1.0;  // removable singularity
    const double lz = std::log(z);
    return 2.0 * std::sqrt(z) * (1.0 / z - 1.0 + lz) / (lz * lz);
}

double c_log_diagonal_minimum() {
    double best = std::numeric_limits<double>::infinity();
    double arg = 0.0;
    const int kGrid = 1200;
    for (int i = 0; i <= kGrid; ++i) {
        const double t = -6.0 + 12.0 * i / kGrid;  // log10 z
        const double z = std::pow(10.0, t);
        const double v = c_log_diagonal(z);
        if (v < best) {
            best = v;
            arg = t;
        }
    }
    auto neg = [](double t) { return -c_log_diagonal(std::pow(10.0, t)); };
    const double refined = -golden_max(neg, arg - 12.0 / kGrid, arg + 12.0 / kGrid, 1e-12);
    return std::min(best, refined);
}

}  // namespace psicalc
