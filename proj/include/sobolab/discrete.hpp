#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "sobolab/norms.hpp"

namespace sobolab {

/// Dense real n x n matrix, row-major. Sized for desk-scale studies.
struct Matrix {
    int n = 0;
    std::vector<double> a;

    Matrix() = default;
    explicit Matrix(int n_) : n(n_), a(size_t(n_) * size_t(n_), 0.0) {}

    double& at(int i, int j) { return a[size_t(i) * size_t(n) + size_t(j)]; }
    double at(int i, int j) const { return a[size_t(i) * size_t(n) + size_t(j)]; }

    static Matrix identity(int n) {
        Matrix m(n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
        return m;
    }

    Matrix operator*(const Matrix& o) const {
        Matrix r(n);
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) {
                double v = at(i, k);
                if (v == 0.0) continue;
                for (int j = 0; j < n; ++j) r.at(i, j) += v * o.at(k, j);
            }
        return r;
    }

    std::vector<double> apply(const std::vector<double>& x) const {
        std::vector<double> y(size_t(n), 0.0);
        for (int i = 0; i < n; ++i) {
            double s = 0;
            for (int j = 0; j < n; ++j) s += at(i, j) * x[size_t(j)];
            y[size_t(i)] = s;
        }
        return y;
    }

    double max_abs_col_sum() const {  // induced unweighted l1 norm
        double best = 0;
        for (int j = 0; j < n; ++j) {
            double s = 0;
            for (int i = 0; i < n; ++i) s += std::abs(at(i, j));
            best = std::max(best, s);
        }
        return best;
    }
};

/// Finite measure space with two weight vectors and boundary exponents.
struct DiscreteCouple {
    int n;
    std::vector<double> w0, w1;
    double p0, p1;

    DiscreteCouple(std::vector<double> w0_, std::vector<double> w1_, double p0_, double p1_)
        : n(int(w0_.size())), w0(std::move(w0_)), w1(std::move(w1_)), p0(p0_), p1(p1_) {
        if (w0.size() != w1.size() || w0.empty())
            throw std::invalid_argument("DiscreteCouple: weight vectors must match and be nonempty");
        for (double v : w0)
            if (!(v > 0)) throw std::invalid_argument("DiscreteCouple: w0 must be positive");
        for (double v : w1)
            if (!(v > 0)) throw std::invalid_argument("DiscreteCouple: w1 must be positive");
        detail::require_p(p0);
        detail::require_p(p1);
    }
};

struct SwWeight {
    double p_theta;
    std::vector<double> w_theta;
};

/// 1/p_theta = (1-theta)/p0 + theta/p1 and
/// w_theta^{1/p_theta} = w0^{(1-theta)/p0} w1^{theta/p1} componentwise.
inline SwWeight sw_weight(const DiscreteCouple& c, double theta) {
    if (!(theta > 0 && theta < 1)) throw std::invalid_argument("sw_weight: theta in (0,1)");
    SwWeight out;
    out.p_theta = 1.0 / ((1.0 - theta) / c.p0 + theta / c.p1);
    out.w_theta.resize(size_t(c.n));
    for (int i = 0; i < c.n; ++i) {
        double root = (1.0 - theta) / c.p0 * std::log(c.w0[size_t(i)]) +
                      theta / c.p1 * std::log(c.w1[size_t(i)]);
        out.w_theta[size_t(i)] = std::exp(out.p_theta * root);
    }
    return out;
}

template <typename T>
double lp_weighted(const std::vector<T>& phi, const std::vector<double>& w, double p) {
    double s = 0;
    for (size_t i = 0; i < phi.size(); ++i) s += w[i] * std::pow(std::abs(phi[i]), p);
    return std::pow(s, 1.0 / p);
}

struct SwEquality {
    double target;    // l^p(w_theta) norm of phi
    double achieved;  // F-norm of the explicit family
};

/// Equal-exponent case: the family f(z) = phi * (w0/w1)^{(z-theta)/p} has
/// t-independent boundary norms, both equal to the target. Computed exactly
/// (no quadrature), this is the isometric claim at desk scale.
inline SwEquality sw_equality_check(const DiscreteCouple& c, double theta,
                                    const std::vector<std::complex<double>>& phi) {
    if (c.p0 != c.p1) throw std::invalid_argument("sw_equality_check: requires p0 == p1");
    if (int(phi.size()) != c.n) throw std::invalid_argument("sw_equality_check: phi size mismatch");
    if (!(theta > 0 && theta < 1)) throw std::invalid_argument("sw_equality_check: theta in (0,1)");
    double p = c.p0;
    SwWeight sw = sw_weight(c, theta);
    SwEquality out;
    out.target = lp_weighted(phi, sw.w_theta, p);
    out.achieved = 0;
    for (int j = 0; j <= 1; ++j) {
        const std::vector<double>& wj = j == 0 ? c.w0 : c.w1;
        double s = 0;
        for (int i = 0; i < c.n; ++i) {
            double r = c.w0[size_t(i)] / c.w1[size_t(i)];
            double mag = std::abs(phi[size_t(i)]) * std::pow(r, (double(j) - theta) / p);
            s += wj[size_t(i)] * std::pow(mag, p);
        }
        out.achieved = std::max(out.achieved, std::pow(s, 1.0 / p));
    }
    return out;
}

struct SwMixedAdmissibility {
    double target;
    double boundary0;     // sup_t ||f(it)||, t-independent by construction
    double boundary1;
    double recon_error;   // max_i |f(theta)_i - phi_i|
};

/// Mixed-exponent case: the explicit family is checked for admissibility
/// (it passes through phi and its boundary norms equal the target) without
/// claiming the infimum.
inline SwMixedAdmissibility sw_mixed_admissibility_check(const DiscreteCouple& c, double theta,
                                                         const std::vector<double>& phi) {
    if (int(phi.size()) != c.n) throw std::invalid_argument("sw_mixed: phi size mismatch");
    if (!(theta > 0 && theta < 1)) throw std::invalid_argument("sw_mixed: theta in (0,1)");
    SwWeight sw = sw_weight(c, theta);
    double pt = sw.p_theta;
    SwMixedAdmissibility out;
    out.target = lp_weighted(phi, sw.w_theta, pt);
    double M = out.target;
    if (M == 0) {
        out.boundary0 = out.boundary1 = out.recon_error = 0;
        return out;
    }
    // f(z)_i = sgn(phi_i) M v_i^{q(z)} w0_i^{-(1-z)/p0} w1_i^{-z/p1},
    // v_i = |phi_i|^{pt} wt_i / M^{pt}; Re q(j+it) = 1/p_j makes the
    // boundary norms t-independent.
    auto eval = [&](std::complex<double> z, int i) {
        double v = std::pow(std::abs(phi[size_t(i)]), pt) * sw.w_theta[size_t(i)] /
                   std::pow(M, pt);
        if (v == 0) return std::complex<double>(0, 0);
        std::complex<double> q = (1.0 - z) / c.p0 + z / c.p1;
        std::complex<double> lnf = q * std::log(v) -
                                   (1.0 - z) / c.p0 * std::log(c.w0[size_t(i)]) -
                                   z / c.p1 * std::log(c.w1[size_t(i)]);
        double sgn = phi[size_t(i)] < 0 ? -1.0 : 1.0;
        return sgn * M * std::exp(lnf);
    };
    out.recon_error = 0;
    for (int i = 0; i < c.n; ++i)
        out.recon_error =
            std::max(out.recon_error, std::abs(eval({theta, 0.0}, i) - phi[size_t(i)]));
    for (int j = 0; j <= 1; ++j) {
        const std::vector<double>& wj = j == 0 ? c.w0 : c.w1;
        double pj = j == 0 ? c.p0 : c.p1;
        double worst = 0;
        for (double t : {0.0, 0.7, -1.3}) {
            std::vector<std::complex<double>> bv(size_t(c.n));
            for (int i = 0; i < c.n; ++i) bv[size_t(i)] = eval({double(j), t}, i);
            worst = std::max(worst, lp_weighted(bv, wj, pj));
        }
        (j == 0 ? out.boundary0 : out.boundary1) = worst;
    }
    return out;
}

/// Exact induced operator norm on l^1(w): max_j (1/w_j) sum_i |T_ij| w_i.
inline double weighted_l1_opnorm(const Matrix& T, const std::vector<double>& w) {
    if (int(w.size()) != T.n) throw std::invalid_argument("weighted_l1_opnorm: size mismatch");
    double best = 0;
    for (int j = 0; j < T.n; ++j) {
        double s = 0;
        for (int i = 0; i < T.n; ++i) s += std::abs(T.at(i, j)) * w[size_t(i)];
        best = std::max(best, s / w[size_t(j)]);
    }
    return best;
}

struct OpnormInterpolationCheck {
    bool holds = false;
    double lhs = 0;  // ||T|| on l^1(w_theta)
    double rhs = 0;  // ||T||_0^{1-theta} ||T||_1^theta
};

/// Interpolation inequality for induced weighted-l1 norms, checked exactly.
inline OpnormInterpolationCheck opnorm_interpolation_check(const Matrix& T,
                                                           const DiscreteCouple& c, double theta) {
    if (c.p0 != 1.0 || c.p1 != 1.0)
        throw std::invalid_argument("opnorm_interpolation_check: fixed at p0 = p1 = 1");
    OpnormInterpolationCheck out;
    SwWeight sw = sw_weight(c, theta);
    out.lhs = weighted_l1_opnorm(T, sw.w_theta);
    out.rhs = std::pow(weighted_l1_opnorm(T, c.w0), 1.0 - theta) *
              std::pow(weighted_l1_opnorm(T, c.w1), theta);
    out.holds = out.lhs <= out.rhs + 1e-12;
    return out;
}

/// e^{A} by scaling-and-squaring with a plain Taylor series at tolerance
/// 1e-13. Deterministic; throws on overflow.
inline Matrix matrix_exponential(const Matrix& A) {
    double norm = A.max_abs_col_sum();
    int s = 0;
    while (std::ldexp(0.5, s) < norm && s < 60) ++s;  // scale until ||A/2^s|| <= 0.5
    Matrix B = A;
    double scale = std::ldexp(1.0, -s);
    for (double& v : B.a) v *= scale;

    Matrix sum = Matrix::identity(A.n);
    Matrix term = Matrix::identity(A.n);
    for (int k = 1; k <= 60; ++k) {
        term = term * B;
        for (double& v : term.a) v /= double(k);
        for (size_t i = 0; i < sum.a.size(); ++i) sum.a[i] += term.a[i];
        if (term.max_abs_col_sum() <= 1e-13 * sum.max_abs_col_sum()) break;
    }
    for (int k = 0; k < s; ++k) sum = sum * sum;
    for (double v : sum.a)
        if (!std::isfinite(v)) throw std::overflow_error("matrix_exponential: overflow");
    return sum;
}

struct SemigroupRow {
    double t;
    double measured;  // ||T(t) g||_{l1(w_theta)}
    double bound;     // interpolated decay bound
    bool pass;
};

struct SemigroupReport {
    std::vector<SemigroupRow> rows;
    bool all_pass = true;
};

/// Discrete matrix-semigroup decay study at p = 1: for T(t) = e^{tL} and
/// each t > t0, the l1(w_theta) norm of T(t) g is checked against
/// ||T(t-t0)||_{l1(w0)}^{1-theta} ||T(t-t0)||_{l1(w1)}^theta ||T(t0) g||_{l1(w_theta)}.
/// The constant collapses to 1 because the discrete Stein-Weiss identity is
/// isometric here.
inline SemigroupReport semigroup_decay_study(const Matrix& L, const std::vector<double>& w0,
                                             const std::vector<double>& w1, double theta,
                                             double t0, const std::vector<double>& times,
                                             const std::vector<double>& g) {
    if (!(t0 > 0)) throw std::invalid_argument("semigroup_decay_study: t0 > 0");
    DiscreteCouple couple(w0, w1, 1.0, 1.0);
    SwWeight sw = sw_weight(couple, theta);
    SemigroupReport rep;
    std::vector<double> g0 = matrix_exponential([&] {
                                 Matrix M = L;
                                 for (double& v : M.a) v *= t0;
                                 return M;
                             }()).apply(g);
    double base = lp_weighted(g0, sw.w_theta, 1.0);
    for (double t : times) {
        if (!(t > t0)) throw std::invalid_argument("semigroup_decay_study: times must exceed t0");
        Matrix Mt = L, Md = L;
        for (double& v : Mt.a) v *= t;
        for (double& v : Md.a) v *= (t - t0);
        Matrix Tt = matrix_exponential(Mt);
        Matrix Td = matrix_exponential(Md);
        SemigroupRow row;
        row.t = t;
        row.measured = lp_weighted(Tt.apply(g), sw.w_theta, 1.0);
        row.bound = std::pow(weighted_l1_opnorm(Td, w0), 1.0 - theta) *
                    std::pow(weighted_l1_opnorm(Td, w1), theta) * base;
        row.pass = row.measured <= row.bound * (1.0 + 1e-10);
        rep.all_pass = rep.all_pass && row.pass;
        rep.rows.push_back(row);
    }
    return rep;
}

/// 1-D discrete Laplacian with Dirichlet ends, the stock generator for the
/// decay study.
inline Matrix laplacian_1d(int n) {
    Matrix L(n);
    for (int i = 0; i < n; ++i) {
        L.at(i, i) = -2.0;
        if (i > 0) L.at(i, i - 1) = 1.0;
        if (i + 1 < n) L.at(i, i + 1) = 1.0;
    }
    return L;
}

}  // namespace sobolab
