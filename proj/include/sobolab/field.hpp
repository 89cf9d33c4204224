#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sobolab/vec.hpp"

namespace sobolab {

/// Evaluatable real-valued function on R^d with an optional analytic
/// gradient and an optional compact support box. Outside the support box
/// value and gradient are exactly zero. When no gradient is supplied, a
/// central finite difference with step fd_step*(1+|x|) per axis is used.
struct ScalarField {
    int dim = 1;
    std::function<double(const Vec&)> value;
    std::function<Vec(const Vec&)> grad;  // may be empty
    std::optional<Box> support;
    std::string label;
    double fd_step = 1e-5;  // overridable fallback step factor
    // Radii where the formula has a kink; 1-D quadrature splits panels there.
    std::vector<double> radial_kinks;

    bool has_gradient() const { return static_cast<bool>(grad); }

    double operator()(const Vec& x) const {
        if (support && !support->contains(x)) return 0.0;
        return value(x);
    }

    Vec gradient(const Vec& x) const {
        if (support && !support->contains(x)) return zero_vec(dim);
        if (grad) return grad(x);
        return fd_gradient(x);
    }

    Vec fd_gradient(const Vec& x) const {
        double h = fd_step * (1.0 + x.norm());
        Vec g(dim);
        for (int i = 0; i < dim; ++i) {
            Vec xp = x, xm = x;
            xp[i] += h;
            xm[i] -= h;
            g[i] = ((*this)(xp) - (*this)(xm)) / (2.0 * h);
        }
        return g;
    }
};

inline ScalarField constant_field(int dim, double v, std::string label = "const") {
    ScalarField f;
    f.dim = dim;
    f.value = [v](const Vec&) { return v; };
    f.grad = [dim](const Vec&) { return zero_vec(dim); };
    f.label = std::move(label);
    return f;
}

// d-component field, used for gradients of derived scalar quantities.
struct VectorField {
    int dim = 1;
    std::function<Vec(const Vec&)> value;
    std::string label;

    Vec operator()(const Vec& x) const { return value(x); }
};

}  // namespace sobolab
