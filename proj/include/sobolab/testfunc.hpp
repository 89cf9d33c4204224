#pragma once

#include <cmath>
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include "sobolab/field.hpp"
#include "sobolab/quadrature.hpp"
#include "sobolab/vec.hpp"

namespace sobolab {

/// Compactly supported Lipschitz test function. The support box is always
/// present; value and gradient vanish identically outside it.
struct TestFunction {
    ScalarField field;
    std::optional<double> lipschitz_bound;

    int dim() const { return field.dim; }
    const Box& support() const { return *field.support; }
    double operator()(const Vec& x) const { return field(x); }
    Vec gradient(const Vec& x) const { return field.gradient(x); }
};

/// C^1 bump: height * (1 - |x-c|^2/R^2)^2 inside the ball of radius R.
inline TestFunction make_bump(const Vec& center, double radius, double height) {
    if (!(radius > 0)) throw std::invalid_argument("make_bump: radius must be positive");
    int d = center.dim;
    Vec lo(d), hi(d);
    for (int i = 0; i < d; ++i) {
        lo[i] = center[i] - radius;
        hi[i] = center[i] + radius;
    }
    ScalarField f;
    f.dim = d;
    f.support = Box(lo, hi);
    f.label = "bump(r=" + std::to_string(radius) + ",h=" + std::to_string(height) + ")";
    f.value = [center, radius, height](const Vec& x) {
        double u = (x - center).norm2() / (radius * radius);
        if (u >= 1.0) return 0.0;
        double t = 1.0 - u;
        return height * t * t;
    };
    f.grad = [center, radius, height, d](const Vec& x) {
        double u = (x - center).norm2() / (radius * radius);
        Vec g(d);
        if (u >= 1.0) return g;
        double s = -4.0 * height * (1.0 - u) / (radius * radius);
        for (int i = 0; i < d; ++i) g[i] = s * (x[i] - center[i]);
        return g;
    };
    f.radial_kinks = {radius};  // only a curvature break, still useful to split at
    TestFunction tf{std::move(f), {}};
    // max of 4h r (1-r^2/R^2)/R^2 over [0,R], attained at r = R/sqrt(3)
    tf.lipschitz_bound = 8.0 * std::abs(height) / (3.0 * std::sqrt(3.0) * radius);
    return tf;
}

/// Radial plateau: height on |x| <= R, linear ramp to 0 across [R, R+w].
inline TestFunction make_hat(int dim, double radius, double ramp, double height = 1.0) {
    if (!(radius > 0) || !(ramp > 0)) throw std::invalid_argument("make_hat: radius, ramp > 0");
    ScalarField f;
    f.dim = dim;
    f.support = centered_cube(dim, radius + ramp);
    f.label = "hat(r=" + std::to_string(radius) + ",w=" + std::to_string(ramp) + ")";
    f.value = [radius, ramp, height](const Vec& x) {
        double r = x.norm();
        if (r <= radius) return height;
        if (r >= radius + ramp) return 0.0;
        return height * (1.0 - (r - radius) / ramp);
    };
    // a.e. gradient; 0 on the measure-zero kink spheres
    f.grad = [radius, ramp, height, dim](const Vec& x) {
        double r = x.norm();
        Vec g(dim);
        if (r <= radius || r >= radius + ramp) return g;
        double s = -height / (ramp * r);
        for (int i = 0; i < dim; ++i) g[i] = s * x[i];
        return g;
    };
    f.radial_kinks = {radius, radius + ramp};
    TestFunction tf{std::move(f), {}};
    tf.lipschitz_bound = std::abs(height) / ramp;
    return tf;
}

/// Cutoff family: 1 on |x| < n, 2 - |x|/n on the annulus, 0 beyond 2n.
inline TestFunction cutoff_xi(int n, int dim) {
    if (n < 1) throw std::invalid_argument("cutoff_xi: n >= 1 required");
    TestFunction tf = make_hat(dim, double(n), double(n), 1.0);
    tf.field.label = "xi_" + std::to_string(n);
    return tf;
}

/// Pointwise product with the weak-gradient product rule
/// grad(phi*xi) = xi grad(phi) + phi grad(xi). Support stays phi's.
inline TestFunction multiply(const TestFunction& phi, const ScalarField& xi) {
    if (phi.dim() != xi.dim) throw std::invalid_argument("multiply: dim mismatch");
    ScalarField pf = phi.field;
    ScalarField xf = xi;
    ScalarField f;
    f.dim = phi.dim();
    f.support = phi.field.support;
    f.label = pf.label + "*" + xf.label;
    f.value = [pf, xf](const Vec& x) { return pf(x) * xf(x); };
    f.grad = [pf, xf](const Vec& x) {
        return xf(x) * pf.gradient(x) + pf(x) * xf.gradient(x);
    };
    f.radial_kinks = pf.radial_kinks;
    f.radial_kinks.insert(f.radial_kinks.end(), xf.radial_kinks.begin(), xf.radial_kinks.end());
    return TestFunction{std::move(f), phi.lipschitz_bound};
}

namespace detail {

// Normalization of the standard kernel exp(-1/(1-|x|^2)) on B_1(0).
inline double mollifier_mass(int dim) {
    static double cached[3] = {0, 0, 0};
    if (cached[size_t(dim - 1)] > 0) return cached[size_t(dim - 1)];
    const auto& rule = gl_cached(200);
    double total = 0;
    for (int i = 0; i < 200; ++i) {
        double r = 0.5 + 0.5 * rule.first[size_t(i)];  // radius in (0,1)
        double w = 0.5 * rule.second[size_t(i)];
        double v = std::exp(-1.0 / (1.0 - r * r));
        if (dim == 1)
            total += 2.0 * w * v;  // both signs
        else if (dim == 2)
            total += 2.0 * M_PI * w * v * r;
        else
            total += 4.0 * M_PI * w * v * r * r;
    }
    cached[size_t(dim - 1)] = total;
    return total;
}

inline double eta_kernel(const Vec& x) {
    double r2 = x.norm2();
    if (r2 >= 1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - r2)) / mollifier_mass(x.dim);
}

inline Vec eta_kernel_grad(const Vec& x) {
    Vec g(x.dim);
    double r2 = x.norm2();
    if (r2 >= 1.0) return g;
    double t = 1.0 - r2;
    double v = std::exp(-1.0 / t) / mollifier_mass(x.dim);
    double s = -2.0 / (t * t) * v;
    for (int i = 0; i < x.dim; ++i) g[i] = s * x[i];
    return g;
}

struct MollifyTable {
    int dim;
    int n;
    double step;
    Vec origin;          // grid point (0,...)
    std::array<int, 3> count{1, 1, 1};
    std::vector<double> phi_vals;  // trapezoid-weighted samples of phi

    size_t index(const std::array<int, 3>& idx) const {
        size_t k = 0;
        for (int i = 0; i < dim; ++i) k = k * size_t(count[size_t(i)]) + size_t(idx[size_t(i)]);
        return k;
    }
};

}  // namespace detail

/// Discrete convolution with the rescaled kernel eta_n(x) = n^d eta(n x) on
/// a uniform grid with trapezoidal weights. Supports d <= 2; the support box
/// grows by 1/n.
inline TestFunction mollify(const TestFunction& phi, int n, double grid_step) {
    int d = phi.dim();
    if (d > 2) throw std::invalid_argument("mollify: d <= 2 only");
    if (n < 1) throw std::invalid_argument("mollify: n >= 1 required");
    if (!(grid_step > 0) || grid_step > 1.0 / (4.0 * n))
        throw std::invalid_argument("mollify: grid_step must be <= 1/(4n)");

    auto table = std::make_shared<detail::MollifyTable>();
    table->dim = d;
    table->n = n;
    table->step = grid_step;

    const Box& supp = phi.support();
    Vec origin(d);
    std::array<int, 3> count{1, 1, 1};
    for (int i = 0; i < d; ++i) {
        origin[i] = supp.lo[i] - grid_step;
        count[size_t(i)] = int(std::ceil((supp.hi[i] + grid_step - origin[i]) / grid_step)) + 1;
    }
    table->origin = origin;
    table->count = count;

    long total = 1;
    for (int i = 0; i < d; ++i) total *= count[size_t(i)];
    table->phi_vals.resize(size_t(total));
    std::array<int, 3> idx{0, 0, 0};
    for (long k = 0; k < total; ++k) {
        Vec y(d);
        double w = 1.0;
        for (int i = 0; i < d; ++i) {
            y[i] = origin[i] + idx[size_t(i)] * grid_step;
            bool edge = idx[size_t(i)] == 0 || idx[size_t(i)] == count[size_t(i)] - 1;
            w *= edge ? 0.5 : 1.0;
        }
        table->phi_vals[table->index(idx)] = w * phi(y);
        for (int i = d - 1; i >= 0; --i) {
            if (++idx[size_t(i)] < count[size_t(i)]) break;
            idx[size_t(i)] = 0;
        }
    }

    double cell = std::pow(grid_step, d);
    double nn = double(n);
    double scale = std::pow(nn, d) * cell;

    auto convolve = [table, nn, scale](const Vec& x, bool want_grad, double& val, Vec& grad) {
        int d_ = table->dim;
        val = 0;
        grad = zero_vec(d_);
        // only grid points within distance 1/n of x contribute
        std::array<int, 3> lo{0, 0, 0}, hi{0, 0, 0};
        for (int i = 0; i < d_; ++i) {
            lo[size_t(i)] = std::max(0, int(std::floor((x[i] - 1.0 / nn - table->origin[i]) / table->step)));
            hi[size_t(i)] = std::min(table->count[size_t(i)] - 1,
                                     int(std::ceil((x[i] + 1.0 / nn - table->origin[i]) / table->step)));
        }
        std::array<int, 3> idx2 = lo;
        while (true) {
            Vec y(d_);
            for (int i = 0; i < d_; ++i) y[i] = table->origin[i] + idx2[size_t(i)] * table->step;
            double pv = table->phi_vals[table->index(idx2)];
            if (pv != 0.0) {
                Vec z = nn * (x - y);
                val += detail::eta_kernel(z) * pv;
                if (want_grad) {
                    Vec kg = detail::eta_kernel_grad(z);
                    for (int i = 0; i < d_; ++i) grad[i] += nn * kg[i] * pv;
                }
            }
            int i = d_ - 1;
            for (; i >= 0; --i) {
                if (++idx2[size_t(i)] <= hi[size_t(i)]) break;
                idx2[size_t(i)] = lo[size_t(i)];
            }
            if (i < 0) break;
        }
        val *= scale;
        grad *= scale;
    };

    Vec lo2(d), hi2(d);
    for (int i = 0; i < d; ++i) {
        lo2[i] = supp.lo[i] - 1.0 / nn;
        hi2[i] = supp.hi[i] + 1.0 / nn;
    }

    ScalarField f;
    f.dim = d;
    f.support = Box(lo2, hi2);
    f.label = "mollify(" + phi.field.label + ",n=" + std::to_string(n) + ")";
    f.value = [convolve](const Vec& x) {
        double v;
        Vec g(x.dim);
        convolve(x, false, v, g);
        return v;
    };
    f.grad = [convolve](const Vec& x) {
        double v;
        Vec g(x.dim);
        convolve(x, true, v, g);
        return g;
    };
    return TestFunction{std::move(f), phi.lipschitz_bound};
}

}  // namespace sobolab
