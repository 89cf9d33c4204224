#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "sobolab/field.hpp"
#include "sobolab/sampling.hpp"
#include "sobolab/vec.hpp"

namespace sobolab {

/// Strictly positive weight function. Positivity is checked on a probe grid
/// at construction; weights are immutable afterwards. Catalog weights carry
/// analytic log-value and log-gradient forms, which stay finite deep in the
/// tails where the value itself underflows.
struct Weight {
    ScalarField field;
    std::function<double(const Vec&)> log_value_fn;  // optional
    std::function<Vec(const Vec&)> log_grad_fn;      // optional

    double operator()(const Vec& x) const { return field.value(x); }
    int dim() const { return field.dim; }
    const std::string& label() const { return field.label; }

    double log_value(const Vec& x) const {
        if (log_value_fn) return log_value_fn(x);
        return std::log(field.value(x));
    }

    // d(log w)/dx, analytic when the catalog formula provides one.
    Vec log_gradient(const Vec& x) const {
        if (log_grad_fn) return log_grad_fn(x);
        Vec g = field.gradient(x);
        double v = field.value(x);
        for (int i = 0; i < field.dim; ++i) g[i] /= v;
        return g;
    }
};

inline Weight make_weight(ScalarField f, int probe_samples = 256) {
    Box probe = centered_cube(f.dim, 8.0);
    for (const auto& x : probe_points(probe, probe_samples, fnv1a64(f.label))) {
        double v = f.value(x);
        if (!(v > 0) || !std::isfinite(v))
            throw std::invalid_argument("weight '" + f.label + "' is not strictly positive at " +
                                        to_string(x));
    }
    return Weight{std::move(f), {}, {}};
}

inline Weight with_log_forms(Weight w, std::function<double(const Vec&)> logv,
                             std::function<Vec(const Vec&)> logg) {
    w.log_value_fn = std::move(logv);
    w.log_grad_fn = std::move(logg);
    return w;
}

namespace detail {

inline ScalarField radial_smooth(int dim, const std::string& label,
                                 std::function<double(double)> val_of_r2,
                                 std::function<double(double)> dval_dr2) {
    // Weight of the form F(|x|^2); gradient is 2 F'(|x|^2) x.
    ScalarField f;
    f.dim = dim;
    f.label = label;
    f.value = [val_of_r2](const Vec& x) { return val_of_r2(x.norm2()); };
    f.grad = [dval_dr2, dim](const Vec& x) {
        double s = 2.0 * dval_dr2(x.norm2());
        Vec g(dim);
        for (int i = 0; i < dim; ++i) g[i] = s * x[i];
        return g;
    };
    return f;
}

// log w = L(|x|^2) and grad log w = c(|x|^2) x.
inline Weight attach_radial_log(Weight w, std::function<double(double)> logv,
                                std::function<double(double)> coef) {
    int dim = w.dim();
    return with_log_forms(
        std::move(w), [logv](const Vec& x) { return logv(x.norm2()); },
        [coef, dim](const Vec& x) {
            double c = coef(x.norm2());
            Vec g(dim);
            for (int i = 0; i < dim; ++i) g[i] = c * x[i];
            return g;
        });
}

}  // namespace detail

/// Catalog of the weight functions used throughout: the constant weight,
/// Gaussians, exponentials of |x|, inverse polynomials, the oscillatory
/// counterexample family, the oscillatory appendix weight and the 1-D
/// staircase. Params are positional per name.
inline Weight make_catalog_weight(const std::string& name, const std::vector<double>& params,
                                  int dim) {
    if (dim < 1 || dim > 3) throw std::invalid_argument("catalog weight: dim must be 1..3");
    auto need = [&](size_t n) {
        if (params.size() != n)
            throw std::invalid_argument("catalog weight '" + name + "': expected " +
                                        std::to_string(n) + " parameter(s)");
    };

    if (name == "one") {
        need(0);
        return detail::attach_radial_log(make_weight(constant_field(dim, 1.0, "one")),
                                         [](double) { return 0.0; },
                                         [](double) { return 0.0; });
    }
    if (name == "gauss") {
        need(1);
        double a = params[0];
        if (!(a > 0)) throw std::invalid_argument("gauss: a must be positive");
        auto f = detail::radial_smooth(
            dim, "gauss(" + std::to_string(a) + ")",
            [a](double r2) { return std::exp(-a * r2); },
            [a](double r2) { return -a * std::exp(-a * r2); });
        return detail::attach_radial_log(make_weight(std::move(f)),
                                         [a](double r2) { return -a * r2; },
                                         [a](double) { return -2.0 * a; });
    }
    if (name == "exp_lin") {
        need(1);
        double a = params[0];
        if (!(a > 0)) throw std::invalid_argument("exp_lin: a must be positive");
        ScalarField f;
        f.dim = dim;
        f.label = "exp_lin(" + std::to_string(a) + ")";
        f.value = [a](const Vec& x) { return std::exp(-a * x.norm()); };
        // Kink at the origin; the a.e. gradient there is taken as 0.
        f.grad = [a, dim](const Vec& x) {
            double r = x.norm();
            Vec g(dim);
            if (r == 0) return g;
            double s = -a * std::exp(-a * r) / r;
            for (int i = 0; i < dim; ++i) g[i] = s * x[i];
            return g;
        };
        f.radial_kinks = {0.0};
        return detail::attach_radial_log(
            make_weight(std::move(f)), [a](double r2) { return -a * std::sqrt(r2); },
            [a](double r2) { return r2 > 0 ? -a / std::sqrt(r2) : 0.0; });
    }
    if (name == "exp_norm") {
        need(0);
        auto f = detail::radial_smooth(
            dim, "exp_norm",
            [](double r2) { return std::exp(-std::sqrt(1.0 + r2)); },
            [](double r2) {
                double s = std::sqrt(1.0 + r2);
                return -0.5 / s * std::exp(-s);
            });
        return detail::attach_radial_log(
            make_weight(std::move(f)), [](double r2) { return -std::sqrt(1.0 + r2); },
            [](double r2) { return -1.0 / std::sqrt(1.0 + r2); });
    }
    if (name == "poly") {
        need(1);
        double alpha = params[0];
        if (!(alpha > 0)) throw std::invalid_argument("poly: alpha must be positive");
        auto f = detail::radial_smooth(
            dim, "poly(" + std::to_string(alpha) + ")",
            [alpha](double r2) { return std::pow(1.0 + r2, -alpha); },
            [alpha](double r2) { return -alpha * std::pow(1.0 + r2, -alpha - 1.0); });
        return detail::attach_radial_log(
            make_weight(std::move(f)), [alpha](double r2) { return -alpha * std::log1p(r2); },
            [alpha](double r2) { return -2.0 * alpha / (1.0 + r2); });
    }
    if (name == "oscillatory") {
        need(2);
        double alpha = params[0], beta = params[1];
        if (!(alpha > 0) || !(beta > 0))
            throw std::invalid_argument("oscillatory: alpha and beta must be positive");
        ScalarField f;
        f.dim = dim;
        f.label = "oscillatory(" + std::to_string(alpha) + "," + std::to_string(beta) + ")";
        f.value = [alpha, beta](const Vec& x) {
            double q = 1.0 + x.norm2();
            double r = x.norm();
            return std::pow(q, -alpha) * (1.0 + std::sin(std::pow(r, beta)) + 1.0 / q);
        };
        f.grad = [alpha, beta, dim](const Vec& x) {
            double q = 1.0 + x.norm2();
            double r = x.norm();
            double qa = std::pow(q, -alpha);
            double s = std::pow(r, beta);
            // scalar multiplying x in the chain rule
            double coef = -2.0 * alpha * std::pow(q, -alpha - 1.0) * (1.0 + std::sin(s) + 1.0 / q) -
                          2.0 * qa / (q * q);
            if (r > 0) coef += qa * std::cos(s) * beta * std::pow(r, beta - 2.0);
            Vec g(dim);
            for (int i = 0; i < dim; ++i) g[i] = coef * x[i];
            return g;
        };
        return detail::attach_radial_log(
            make_weight(std::move(f)),
            [alpha, beta](double r2) {
                double q = 1.0 + r2;
                double s = std::pow(std::sqrt(r2), beta);
                return -alpha * std::log(q) + std::log(1.0 + std::sin(s) + 1.0 / q);
            },
            [alpha, beta](double r2) {
                double q = 1.0 + r2;
                double r = std::sqrt(r2);
                double s = std::pow(r, beta);
                double bracket = 1.0 + std::sin(s) + 1.0 / q;
                double osc = r > 0 ? beta * std::pow(r, beta - 2.0) * std::cos(s) : 0.0;
                return -2.0 * alpha / q + (osc - 2.0 / (q * q)) / bracket;
            });
    }
    if (name == "appendix_osc") {
        need(0);
        // The phase exp(|x|^2) overflows double near |x| = 26.6; extended
        // precision carries it to |x| ~ 106, beyond which the oscillation is
        // replaced by its mean. The weight stays within its e^{+-1} envelope
        // either way.
        auto phase = [](double r2, double& sin_e, long double& e) {
            e = expl(static_cast<long double>(r2));
            if (e > 1e4900L) {
                sin_e = 0.0;
                return false;
            }
            sin_e = static_cast<double>(sinl(e));
            return true;
        };
        ScalarField f;
        f.dim = dim;
        f.label = "appendix_osc";
        f.value = [phase](const Vec& x) {
            double r2 = x.norm2();
            double sin_e;
            long double e;
            phase(r2, sin_e, e);
            return std::exp(-std::sqrt(1.0 + r2) - sin_e);
        };
        f.grad = [phase, dim](const Vec& x) {
            double r2 = x.norm2();
            double sin_e;
            long double e;
            bool ok = phase(r2, sin_e, e);
            double s = std::sqrt(1.0 + r2);
            double v = std::exp(-s - sin_e);
            long double cos_e = ok ? cosl(e) : 0.0L;
            double coef = static_cast<double>(-(1.0L / s + 2.0L * e * cos_e) * v);
            Vec g(dim);
            for (int i = 0; i < dim; ++i) g[i] = coef * x[i];
            return g;
        };
        return detail::attach_radial_log(
            make_weight(std::move(f)),
            [phase](double r2) {
                double sin_e;
                long double e;
                phase(r2, sin_e, e);
                return -std::sqrt(1.0 + r2) - sin_e;
            },
            [phase](double r2) {
                double sin_e;
                long double e;
                bool ok = phase(r2, sin_e, e);
                long double cos_e = ok ? cosl(e) : 0.0L;
                return static_cast<double>(-(1.0L / std::sqrt(1.0 + r2) + 2.0L * e * cos_e));
            });
    }
    if (name == "staircase") {
        need(0);
        if (dim != 1) throw std::invalid_argument("staircase: only defined for d=1");
        // Piecewise constant: n+1 on (2n,2n+1], (n+1)^2 on (2n+1,2n+2],
        // extended evenly to the whole line and set to 1 at the origin.
        // The shift by one keeps the weight strictly positive.
        ScalarField f;
        f.dim = 1;
        f.label = "staircase";
        f.value = [](const Vec& x) {
            double t = std::abs(x[0]);
            if (t <= 0) return 1.0;
            double n = std::floor(t / 2.0);
            double frac = t - 2.0 * n;
            if (frac == 0) {
                // left tread boundary belongs to the previous step
                n -= 1;
                frac = 2.0;
            }
            return frac <= 1.0 ? (n + 1.0) : (n + 1.0) * (n + 1.0);
        };
        return make_weight(std::move(f));
    }
    throw std::invalid_argument("unknown catalog weight: " + name);
}

/// A pair (w0, w1) with derived ratio r = w0/w1, intermediate weight and
/// log-ratio gradient. Construction spot-checks the defining identities on
/// a probe grid.
struct WeightPair {
    Weight w0, w1;

    int dim() const { return w0.dim(); }

    double ratio(const Vec& x) const { return w0(x) / w1(x); }
    double log_ratio(const Vec& x) const { return w0.log_value(x) - w1.log_value(x); }

    Vec log_ratio_gradient(const Vec& x) const {
        Vec g0 = w0.log_gradient(x);
        Vec g1 = w1.log_gradient(x);
        return g0 - g1;
    }

    std::vector<double> kinks() const {
        std::vector<double> k = w0.field.radial_kinks;
        k.insert(k.end(), w1.field.radial_kinks.begin(), w1.field.radial_kinks.end());
        return k;
    }
};

inline double omega_theta_value(const WeightPair& pair, double theta, const Vec& x) {
    return std::exp((1.0 - theta) * pair.w0.log_value(x) + theta * pair.w1.log_value(x));
}

inline WeightPair make_weight_pair(Weight w0, Weight w1, int probe_samples = 128) {
    if (w0.dim() != w1.dim()) throw std::invalid_argument("weight pair: dim mismatch");
    WeightPair pair{std::move(w0), std::move(w1)};
    Box probe = centered_cube(pair.dim(), 4.0);
    auto pts = probe_points(probe, probe_samples,
                            fnv1a64(pair.w0.label() + "|" + pair.w1.label()));
    for (const auto& x : pts) {
        double r = pair.ratio(x);
        double lhs = r * pair.w1(x);
        double rhs = pair.w0(x);
        if (std::abs(lhs - rhs) > 1e-12 * std::abs(rhs))
            throw std::logic_error("weight pair: ratio identity failed at " + to_string(x));
        for (double theta : {0.25, 0.5, 0.75}) {
            double wt = omega_theta_value(pair, theta, x);
            for (int j = 0; j <= 1; ++j) {
                double lhs2 = std::pow(r, j - theta) * (j == 0 ? pair.w0(x) : pair.w1(x));
                if (std::abs(lhs2 - wt) > 1e-12 * std::abs(wt))
                    throw std::logic_error("weight pair: interpolation identity failed at " +
                                           to_string(x));
            }
        }
    }
    return pair;
}

/// Pointwise w0^(1-theta) w1^theta with the product/chain-rule gradient when
/// both parents carry one.
inline Weight omega_theta(const WeightPair& pair, double theta) {
    if (!(theta > 0 && theta < 1)) throw std::invalid_argument("omega_theta: theta must be in (0,1)");
    ScalarField f;
    f.dim = pair.dim();
    f.label = pair.w0.label() + "^" + std::to_string(1 - theta) + "*" + pair.w1.label() + "^" +
              std::to_string(theta);
    // captured by value: weights are immutable
    Weight a = pair.w0, b = pair.w1;
    f.value = [a, b, theta](const Vec& x) {
        return std::exp((1.0 - theta) * a.log_value(x) + theta * b.log_value(x));
    };
    if (a.field.has_gradient() && b.field.has_gradient()) {
        f.grad = [a, b, theta](const Vec& x) {
            double v = std::exp((1.0 - theta) * a.log_value(x) + theta * b.log_value(x));
            Vec g = (1.0 - theta) * a.log_gradient(x) + theta * b.log_gradient(x);
            return v * g;
        };
    }
    f.radial_kinks = WeightPair{a, b}.kinks();
    return Weight{std::move(f), {}, {}};
}

/// x -> grad(w0)/w0 - grad(w1)/w1, the gradient of log(w0/w1).
inline VectorField log_ratio_grad(const WeightPair& pair) {
    VectorField vf;
    vf.dim = pair.dim();
    vf.label = "grad_log_ratio(" + pair.w0.label() + "/" + pair.w1.label() + ")";
    WeightPair p = pair;
    vf.value = [p](const Vec& x) { return p.log_ratio_gradient(x); };
    return vf;
}

struct BoundsReport {
    double m = 0;          // sampled inf
    double M = 0;          // sampled sup
    bool satisfied = false;  // m > 0 and M finite
};

/// Sampled inf/sup of a weight over a box (deterministic probe grid).
inline BoundsReport check_compact_boundedness(const Weight& w, const Box& K, int n_samples) {
    if (K.dim() != w.dim()) throw std::invalid_argument("check_compact_boundedness: dim mismatch");
    BoundsReport rep;
    rep.m = std::numeric_limits<double>::infinity();
    rep.M = -std::numeric_limits<double>::infinity();
    for (const auto& x : probe_points(K, n_samples, fnv1a64(w.label()))) {
        double v = w(x);
        rep.m = std::min(rep.m, v);
        rep.M = std::max(rep.M, v);
    }
    rep.satisfied = rep.m > 0 && std::isfinite(rep.M);
    return rep;
}

/// Sampled Lipschitz quotient sup |f(x)-f(y)|/|x-y| over pairs in K. Pair
/// separations are drawn log-uniformly so that both coarse and fine scales
/// are probed; the result is a lower estimate of the true constant.
inline double estimate_lipschitz(const ScalarField& f, const Box& K, int n_pairs,
                                 std::uint64_t seed = 0) {
    double best = 0;
    double diam = 0;
    for (int i = 0; i < K.dim(); ++i) diam = std::max(diam, K.hi[i] - K.lo[i]);
    auto xs = halton_points(K, n_pairs, fnv1a64(f.label) ^ seed);
    for (int k = 0; k < n_pairs; ++k) {
        const Vec& x = xs[size_t(k)];
        double u = radical_inverse(std::uint64_t(k) + 1, 7);
        double v = radical_inverse(std::uint64_t(k) + 1, 11);
        double step = diam * std::pow(10.0, -9.0 * u);
        Vec y = x;
        int axis = int(v * K.dim()) % K.dim();
        y[axis] = std::min(K.hi[axis], std::max(K.lo[axis], x[axis] + (v < 0.5 ? -step : step)));
        double dist = std::abs(y[axis] - x[axis]);
        if (dist <= 0) continue;
        double q = std::abs(f.value(y) - f.value(x)) / dist;
        if (std::isfinite(q)) best = std::max(best, q);
    }
    return best;
}

struct EquivalenceReport {
    double c = 0;  // sampled min of w/rho
    double C = 0;  // sampled max of w/rho
};

inline EquivalenceReport check_equivalence(const Weight& w, const Weight& rho, const Box& K,
                                           int n_samples) {
    if (w.dim() != rho.dim()) throw std::invalid_argument("check_equivalence: dim mismatch");
    EquivalenceReport rep;
    rep.c = std::numeric_limits<double>::infinity();
    rep.C = -std::numeric_limits<double>::infinity();
    for (const auto& x : probe_points(K, n_samples, fnv1a64(w.label() + rho.label()))) {
        double r = w(x) / rho(x);
        rep.c = std::min(rep.c, r);
        rep.C = std::max(rep.C, r);
    }
    return rep;
}

}  // namespace sobolab
