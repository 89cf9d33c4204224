#pragma once

#include <cmath>
#include <map>
#include <string>

#include "sobolab/quadrature.hpp"
#include "sobolab/testfunc.hpp"
#include "sobolab/weights.hpp"

namespace sobolab {

enum class NormKind { Lp, W1p, Wcal, seminorm, Mtq };

inline const char* to_string(NormKind k) {
    switch (k) {
        case NormKind::Lp: return "Lp";
        case NormKind::W1p: return "W1p";
        case NormKind::Wcal: return "Wcal";
        case NormKind::seminorm: return "seminorm";
        default: return "Mtq";
    }
}

struct NormReport {
    NormKind kind = NormKind::Lp;
    double value = 0;
    std::map<std::string, double> components;
    Status status = Status::inconclusive;
    std::vector<std::pair<double, double>> trace;
};

namespace detail {

inline Status combine(Status a, Status b) {
    if (a == Status::divergent || b == Status::divergent) return Status::divergent;
    if (a == Status::inconclusive || b == Status::inconclusive) return Status::inconclusive;
    return Status::converged;
}

inline void require_p(double p) {
    if (!(p >= 1.0) || !std::isfinite(p))
        throw std::invalid_argument("exponent p must lie in [1, inf); p = infinity is rejected");
}

}  // namespace detail

/// ||phi||_{L^p(omega)} = (int |phi|^p omega dx)^{1/p}.
inline NormReport lp_norm(const ScalarField& phi, const Weight& omega, double p,
                          const QuadratureSpec& spec) {
    detail::require_p(p);
    auto integrand = [&phi, &omega, p](const Vec& x) {
        double v = phi(x);
        return std::pow(std::abs(v), p) * omega(x);
    };
    std::vector<double> kinks = phi.radial_kinks;
    kinks.insert(kinks.end(), omega.field.radial_kinks.begin(), omega.field.radial_kinks.end());
    IntegralResult ir = integrate(phi.dim, integrand, spec, phi.support, kinks);
    NormReport rep;
    rep.kind = NormKind::Lp;
    rep.status = ir.status;
    rep.trace = ir.trace;
    rep.value = std::pow(ir.value, 1.0 / p);
    rep.components["integral"] = ir.value;
    return rep;
}

inline NormReport lp_norm(const TestFunction& phi, const Weight& omega, double p,
                          const QuadratureSpec& spec) {
    return lp_norm(phi.field, omega, p, spec);
}

/// L^p(omega, C^d) norm of the gradient of phi, componentwise:
/// (sum_i int |d_i phi|^p omega dx)^{1/p}.
inline NormReport lp_norm_gradient(const TestFunction& phi, const Weight& omega, double p,
                                   const QuadratureSpec& spec) {
    detail::require_p(p);
    auto integrand = [&phi, &omega, p](const Vec& x) {
        Vec g = phi.gradient(x);
        double s = 0;
        for (int i = 0; i < x.dim; ++i) s += std::pow(std::abs(g[i]), p);
        return s * omega(x);
    };
    std::vector<double> kinks = phi.field.radial_kinks;
    kinks.insert(kinks.end(), omega.field.radial_kinks.begin(), omega.field.radial_kinks.end());
    IntegralResult ir = integrate(phi.dim(), integrand, spec, phi.field.support, kinks);
    NormReport rep;
    rep.kind = NormKind::Lp;
    rep.status = ir.status;
    rep.value = std::pow(ir.value, 1.0 / p);
    rep.components["integral"] = ir.value;
    return rep;
}

/// ||phi||_{W^{1,p}(omega)} = (||phi||_p^p + ||grad phi||_p^p)^{1/p}.
inline NormReport w1p_norm(const TestFunction& phi, const Weight& omega, double p,
                           const QuadratureSpec& spec) {
    NormReport fn = lp_norm(phi, omega, p, spec);
    NormReport gr = lp_norm_gradient(phi, omega, p, spec);
    NormReport rep;
    rep.kind = NormKind::W1p;
    rep.status = detail::combine(fn.status, gr.status);
    rep.components["function"] = fn.value;
    rep.components["gradient"] = gr.value;
    rep.value = std::pow(std::pow(fn.value, p) + std::pow(gr.value, p), 1.0 / p);
    return rep;
}

/// (int |phi|^p |grad log r_w|^p omega_theta dx)^{1/p}, with the Euclidean
/// modulus of the log-ratio gradient. Kink sets of the catalog weights are
/// measure zero and are missed by the Gauss nodes.
inline NormReport grad_seminorm(const TestFunction& phi, const WeightPair& pair, double theta,
                                double p, const QuadratureSpec& spec) {
    detail::require_p(p);
    if (!(theta > 0 && theta < 1)) throw std::invalid_argument("grad_seminorm: theta in (0,1)");
    auto integrand = [&phi, &pair, theta, p](const Vec& x) {
        double v = phi(x);
        if (v == 0.0) return 0.0;
        double gl = pair.log_ratio_gradient(x).norm();
        return std::pow(std::abs(v) * gl, p) * omega_theta_value(pair, theta, x);
    };
    std::vector<double> kinks = phi.field.radial_kinks;
    auto pk = pair.kinks();
    kinks.insert(kinks.end(), pk.begin(), pk.end());
    IntegralResult ir = integrate(phi.dim(), integrand, spec, phi.field.support, kinks);
    NormReport rep;
    rep.kind = NormKind::seminorm;
    rep.status = ir.status;
    rep.value = std::pow(ir.value, 1.0 / p);
    rep.components["integral"] = ir.value;
    rep.trace = ir.trace;
    return rep;
}

/// Graph norm of the intersection space: W^{1,p}(omega_theta) plus the
/// log-ratio seminorm, combined in the p-th power.
inline NormReport wcal_norm(const TestFunction& phi, const WeightPair& pair, double theta,
                            double p, const QuadratureSpec& spec) {
    Weight wt = omega_theta(pair, theta);
    NormReport base = w1p_norm(phi, wt, p, spec);
    NormReport semi = grad_seminorm(phi, pair, theta, p, spec);
    NormReport rep;
    rep.kind = NormKind::Wcal;
    rep.status = detail::combine(base.status, semi.status);
    rep.components["function"] = base.components["function"];
    rep.components["gradient"] = base.components["gradient"];
    rep.components["seminorm"] = semi.value;
    rep.value = std::pow(std::pow(base.value, p) + std::pow(semi.value, p), 1.0 / p);
    return rep;
}

/// M(theta,q) = (int |grad log r_w|^q omega_theta dx)^{1/q}. Unlike the
/// other interpolation quantities, theta = 0 and theta = 1 are allowed.
inline NormReport m_theta_q(const WeightPair& pair, double theta, double q,
                            const QuadratureSpec& spec) {
    detail::require_p(q);
    if (!(theta >= 0 && theta <= 1)) throw std::invalid_argument("m_theta_q: theta in [0,1]");
    auto integrand = [&pair, theta, q](const Vec& x) {
        double gl = pair.log_ratio_gradient(x).norm();
        double wt = theta == 0.0 ? pair.w0(x)
                  : theta == 1.0 ? pair.w1(x)
                                 : omega_theta_value(pair, theta, x);
        return std::pow(gl, q) * wt;
    };
    IntegralResult ir = integrate(pair.dim(), integrand, spec, std::nullopt, pair.kinks());
    NormReport rep;
    rep.kind = NormKind::Mtq;
    rep.status = ir.status;
    rep.value = std::pow(ir.value, 1.0 / q);
    rep.components["integral"] = ir.value;
    rep.trace = ir.trace;
    return rep;
}

enum class Verdict { holds, fails, inconclusive };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::holds: return "holds";
        case Verdict::fails: return "fails";
        default: return "inconclusive";
    }
}

struct HolderCheck {
    Verdict verdict = Verdict::inconclusive;
    double lhs = 0;  // seminorm
    double rhs = 0;  // M(theta,q) * ||phi||_{L^{qp/(q-p)}(omega_theta)}
};

/// Embedding check: seminorm(phi) <= M(theta,q) ||phi||_{L^{qp/(q-p)}(w_t)},
/// the Hoelder route into the simpler subspace.
inline HolderCheck holder_embedding_check(const TestFunction& phi, const WeightPair& pair,
                                          double theta, double p, double q,
                                          const QuadratureSpec& spec) {
    if (!(q > p)) throw std::invalid_argument("holder_embedding_check: q > p required");
    HolderCheck out;
    NormReport m = m_theta_q(pair, theta, q, spec);
    if (m.status != Status::converged) return out;
    NormReport lhs = grad_seminorm(phi, pair, theta, p, spec);
    NormReport rhs = lp_norm(phi, omega_theta(pair, theta), q * p / (q - p), spec);
    if (lhs.status != Status::converged || rhs.status != Status::converged) return out;
    out.lhs = lhs.value;
    out.rhs = m.value * rhs.value;
    out.verdict = out.lhs <= out.rhs * (1.0 + 1e-8) ? Verdict::holds : Verdict::fails;
    return out;
}

}  // namespace sobolab
