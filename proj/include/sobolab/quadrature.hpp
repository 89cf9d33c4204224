#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sobolab/field.hpp"
#include "sobolab/vec.hpp"

namespace sobolab {

enum class Status { converged, divergent, inconclusive };

inline const char* to_string(Status s) {
    switch (s) {
        case Status::converged: return "converged";
        case Status::divergent: return "divergent";
        default: return "inconclusive";
    }
}

inline Status parse_status(const std::string& s) {
    if (s == "converged") return Status::converged;
    if (s == "divergent") return Status::divergent;
    if (s == "inconclusive") return Status::inconclusive;
    throw std::invalid_argument("unknown status: " + s);
}

/// Truncation/refinement plan for integrals over R^d.
struct QuadratureSpec {
    std::vector<double> radii;     // strictly increasing truncation radii
    int points_per_axis = 64;
    double rel_tol = 1e-8;
    double growth_threshold = 1.5;

    static QuadratureSpec defaults(int dim) {
        QuadratureSpec s;
        s.radii.reserve(21);
        for (int k = 0; k <= 20; ++k) s.radii.push_back(std::ldexp(1.0, k));
        s.points_per_axis = dim <= 1 ? 64 : (dim == 2 ? 48 : 24);
        return s;
    }

    void validate() const {
        if (radii.empty()) throw std::invalid_argument("QuadratureSpec: empty radii");
        for (size_t k = 1; k < radii.size(); ++k)
            if (!(radii[k] > radii[k - 1]))
                throw std::invalid_argument("QuadratureSpec: radii must be strictly increasing");
        if (!(rel_tol > 0 && rel_tol <= 1e-2))
            throw std::invalid_argument("QuadratureSpec: rel_tol must be in (0, 1e-2]");
        if (!(growth_threshold > 1)) throw std::invalid_argument("QuadratureSpec: growth_threshold must be > 1");
        if (points_per_axis < 2) throw std::invalid_argument("QuadratureSpec: points_per_axis too small");
    }
};

struct IntegralResult {
    double value = 0;
    double error_estimate = 0;
    Status status = Status::inconclusive;
    std::vector<std::pair<double, double>> trace;  // (R_k, partial value)
};

namespace detail {

// Gauss-Legendre nodes/weights on [-1,1] by Newton iteration on P_n.
inline void gauss_legendre_rule(int n, std::vector<double>& x, std::vector<double>& w) {
    x.assign(size_t(n), 0.0);
    w.assign(size_t(n), 0.0);
    int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (z * p0 - p1) / (z * z - 1.0);
            double dz = p0 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        x[size_t(i)] = -z;
        x[size_t(n - 1 - i)] = z;
        w[size_t(i)] = 2.0 / ((1.0 - z * z) * pp * pp);
        w[size_t(n - 1 - i)] = w[size_t(i)];
    }
}

inline const std::pair<std::vector<double>, std::vector<double>>& gl_cached(int n) {
    static std::map<int, std::pair<std::vector<double>, std::vector<double>>> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it == cache.end()) {
        std::pair<std::vector<double>, std::vector<double>> rule;
        gauss_legendre_rule(n, rule.first, rule.second);
        it = cache.emplace(n, std::move(rule)).first;
    }
    return it->second;
}

// Splits [a,b] at +-r for each kink radius r falling inside.
inline std::vector<double> split_axis(double a, double b, const std::vector<double>& kinks) {
    std::vector<double> cuts{a, b};
    for (double r : kinks) {
        for (double c : {r, -r})
            if (c > a && c < b) cuts.push_back(c);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    return cuts;
}

}  // namespace detail

struct QuadNode {
    Vec x;
    double w;
};

/// Tensor Gauss-Legendre nodes over a box, in a fixed deterministic order.
/// For d=1 the interval is split at the given kink radii. A finite
/// panel_width additionally subdivides every axis segment into equal panels
/// no wider than that, each carrying the full per-axis rule, so wide boxes
/// keep their resolution.
inline std::vector<QuadNode> box_nodes(const Box& box, int points_per_axis,
                                       const std::vector<double>& kinks_1d = {},
                                       double panel_width = 0.0) {
    const auto& rule = detail::gl_cached(points_per_axis);
    const auto& gx = rule.first;
    const auto& gw = rule.second;
    int d = box.dim();

    auto subdivide = [panel_width](std::vector<double> cuts) {
        if (!(panel_width > 0)) return cuts;
        std::vector<double> out;
        for (size_t s = 0; s + 1 < cuts.size(); ++s) {
            double a = cuts[s], b = cuts[s + 1];
            int parts = std::max(1, int(std::ceil((b - a) / panel_width)));
            for (int q = 0; q < parts; ++q) out.push_back(a + (b - a) * q / parts);
        }
        out.push_back(cuts.back());
        return out;
    };

    std::array<std::vector<double>, 3> axis_cuts;
    for (int i = 0; i < d; ++i) {
        std::vector<double> base{box.lo[i], box.hi[i]};
        if (d == 1) base = detail::split_axis(box.lo[i], box.hi[i], kinks_1d);
        axis_cuts[size_t(i)] = subdivide(std::move(base));
    }

    std::vector<QuadNode> nodes;
    std::array<size_t, 3> seg{0, 0, 0};
    std::array<size_t, 3> nseg{1, 1, 1};
    for (int i = 0; i < d; ++i) nseg[size_t(i)] = axis_cuts[size_t(i)].size() - 1;

    while (true) {
        std::array<double, 3> mid{}, half{};
        for (int i = 0; i < d; ++i) {
            double a = axis_cuts[size_t(i)][seg[size_t(i)]];
            double b = axis_cuts[size_t(i)][seg[size_t(i)] + 1];
            mid[size_t(i)] = 0.5 * (a + b);
            half[size_t(i)] = 0.5 * (b - a);
        }
        long total = 1;
        for (int i = 0; i < d; ++i) total *= points_per_axis;
        std::array<int, 3> idx{0, 0, 0};
        for (long k = 0; k < total; ++k) {
            Vec x(d);
            double w = 1;
            for (int i = 0; i < d; ++i) {
                x[i] = mid[size_t(i)] + half[size_t(i)] * gx[size_t(idx[size_t(i)])];
                w *= half[size_t(i)] * gw[size_t(idx[size_t(i)])];
            }
            nodes.push_back({x, w});
            for (int i = d - 1; i >= 0; --i) {
                if (++idx[size_t(i)] < points_per_axis) break;
                idx[size_t(i)] = 0;
            }
        }
        int i = d - 1;
        for (; i >= 0; --i) {
            if (++seg[size_t(i)] < nseg[size_t(i)]) break;
            seg[size_t(i)] = 0;
        }
        if (i < 0) break;
    }
    return nodes;
}

/// Panel width used for all compact-support quadratures; norms and the
/// boundary tables of the analytic family share this discretization.
inline constexpr double kSupportPanelWidth = 2.0;

namespace detail {

inline double integrate_box(const std::function<double(const Vec&)>& f, const Box& box,
                            int ppa, const std::vector<double>& kinks, double panel_width = 0.0) {
    double s = 0;
    for (const auto& node : box_nodes(box, ppa, kinks, panel_width)) {
        double v = f(node.x);
        if (!std::isfinite(v))
            throw std::runtime_error("integrate: non-finite integrand at " + to_string(node.x));
        s += node.w * v;
    }
    return s;
}

// Disjoint decomposition of [-R,R]^d minus [-r,r]^d into 2d boxes.
inline std::vector<Box> shell_boxes(int dim, double r, double R) {
    std::vector<Box> out;
    for (int axis = 0; axis < dim; ++axis) {
        for (int side = 0; side < 2; ++side) {
            Vec lo(dim), hi(dim);
            for (int i = 0; i < dim; ++i) {
                if (i < axis) {
                    lo[i] = -r;
                    hi[i] = r;
                } else if (i == axis) {
                    lo[i] = side ? r : -R;
                    hi[i] = side ? R : -r;
                } else {
                    lo[i] = -R;
                    hi[i] = R;
                }
            }
            out.emplace_back(lo, hi);
        }
    }
    return out;
}

// Divergence heuristic: the trace grew by >= growth_threshold across the
// last three radius steps AND the last two shell increments are both
// non-decaying. The decay guard separates genuinely slow convergence
// (geometrically shrinking increments, e.g. tail exponent -1.05) from
// log-like divergence (flat increments, tail exponent -1); two consecutive
// checks ride out the phase wobble of oscillatory integrands at small radii.
inline bool divergent_at(const std::vector<std::pair<double, double>>& trace, double growth) {
    size_t k = trace.size();
    if (k < 4) return false;
    double p3 = trace[k - 4].second;
    double pk = trace[k - 1].second;
    if (!(p3 > 0)) return false;
    if (!(pk >= growth * p3)) return false;
    double d0 = trace[k - 1].second - trace[k - 2].second;
    double d1 = trace[k - 2].second - trace[k - 3].second;
    double d2 = trace[k - 3].second - trace[k - 4].second;
    return d1 > 0 && d2 > 0 && d0 >= 0.98 * d1 && d1 >= 0.98 * d2;
}

}  // namespace detail

/// Integrate a nonnegative integrand over R^d on nested cubes [-R_k,R_k]^d.
/// Compactly supported integrands clip to the support box; the sweep then
/// stops as soon as the cube covers the support. The verdict for unbounded
/// integrands follows the trace: converged once successive partial values
/// agree to rel_tol, divergent per the trace-growth heuristic, otherwise
/// inconclusive. The trace is kept for auditing either verdict.
inline IntegralResult integrate(int dim, const std::function<double(const Vec&)>& f,
                                const QuadratureSpec& spec,
                                const std::optional<Box>& support = std::nullopt,
                                const std::vector<double>& kinks_1d = {}) {
    spec.validate();
    IntegralResult res;

    if (support) {
        // Compactly supported integrands clip to the support box and are
        // integrated in one pass, so every consumer of the same support sees
        // the same node set. The error estimate comes from a coarser pass.
        double value = detail::integrate_box(f, *support, spec.points_per_axis, kinks_1d,
                                             kSupportPanelWidth);
        int coarse = std::max(4, spec.points_per_axis - spec.points_per_axis / 4);
        double check = detail::integrate_box(f, *support, coarse, kinks_1d, kSupportPanelWidth);
        double r_cover = 0;
        for (int i = 0; i < dim; ++i)
            r_cover = std::max({r_cover, std::abs(support->lo[i]), std::abs(support->hi[i])});
        res.value = value;
        res.status = Status::converged;
        res.error_estimate = std::abs(value - check);
        res.trace.emplace_back(r_cover, value);
        return res;
    }

    double partial = 0;
    for (size_t k = 0; k < spec.radii.size(); ++k) {
        double R = spec.radii[k];
        std::vector<Box> pieces;
        if (k == 0) {
            pieces.push_back(centered_cube(dim, R));
        } else {
            pieces = detail::shell_boxes(dim, spec.radii[k - 1], R);
        }
        for (const auto& b : pieces)
            partial += detail::integrate_box(f, b, spec.points_per_axis, kinks_1d);
        res.trace.emplace_back(R, partial);

        if (k >= 1) {
            double prev = res.trace[k - 1].second;
            if (std::abs(partial - prev) <= spec.rel_tol * std::abs(partial)) {
                res.status = Status::converged;
                res.error_estimate = std::abs(partial - prev);
                break;
            }
        }
        if (detail::divergent_at(res.trace, spec.growth_threshold)) {
            res.status = Status::divergent;
            break;
        }
    }
    res.value = partial;
    return res;
}

/// Integrate over [1, R_k], with panels aligned to multiples of pi so that
/// |cos|-type oscillatory integrands stay smooth within each panel.
inline IntegralResult integrate_radial_1d(const std::function<double(double)>& g,
                                          const QuadratureSpec& spec) {
    spec.validate();
    const auto& rule = detail::gl_cached(16);
    IntegralResult res;
    double partial = 0;
    double done = 1.0;  // integrated so far over [1, done]

    auto add_range = [&](double a, double b) {
        double first_cut = std::ceil(a / M_PI) * M_PI;
        std::vector<double> cuts;
        cuts.push_back(a);
        for (double c = first_cut; c < b; c += M_PI)
            if (c > a) cuts.push_back(c);
        cuts.push_back(b);
        for (size_t s = 0; s + 1 < cuts.size(); ++s) {
            double mid = 0.5 * (cuts[s] + cuts[s + 1]);
            double half = 0.5 * (cuts[s + 1] - cuts[s]);
            double acc = 0;
            for (int i = 0; i < 16; ++i) {
                double y = mid + half * rule.first[size_t(i)];
                double v = g(y);
                if (!std::isfinite(v))
                    throw std::runtime_error("integrate_radial_1d: non-finite integrand at y=" +
                                             std::to_string(y));
                acc += half * rule.second[size_t(i)] * v;
            }
            partial += acc;
        }
    };

    for (size_t k = 0; k < spec.radii.size(); ++k) {
        double R = spec.radii[k];
        if (R > done) {
            add_range(done, R);
            done = R;
        }
        res.trace.emplace_back(R, partial);
        if (k >= 1) {
            double prev = res.trace[k - 1].second;
            if (std::abs(partial - prev) <= spec.rel_tol * std::abs(partial)) {
                res.status = Status::converged;
                res.error_estimate = std::abs(partial - prev);
                break;
            }
        }
        if (detail::divergent_at(res.trace, spec.growth_threshold)) {
            res.status = Status::divergent;
            break;
        }
    }
    res.value = partial;
    return res;
}

/// Convenience wrapper: integrate a ScalarField-derived integrand expression,
/// inheriting the field's support box and kink radii.
inline IntegralResult integrate_field_expr(const ScalarField& carrier,
                                           const std::function<double(const Vec&)>& integrand,
                                           const QuadratureSpec& spec,
                                           const std::vector<double>& extra_kinks = {}) {
    std::vector<double> kinks = carrier.radial_kinks;
    kinks.insert(kinks.end(), extra_kinks.begin(), extra_kinks.end());
    return integrate(carrier.dim, integrand, spec, carrier.support, kinks);
}

}  // namespace sobolab
