#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace sobolab {

// Point in R^d, d <= 3. Fixed storage keeps quadrature loops allocation-free.
struct Vec {
    std::array<double, 3> c{0.0, 0.0, 0.0};
    int dim = 1;

    Vec() = default;
    explicit Vec(int d) : dim(d) {
        if (d < 1 || d > 3) throw std::invalid_argument("Vec: dim must be 1..3");
    }
    Vec(double x) : c{x, 0, 0}, dim(1) {}
    Vec(double x, double y) : c{x, y, 0}, dim(2) {}
    Vec(double x, double y, double z) : c{x, y, z}, dim(3) {}

    double& operator[](int i) { return c[static_cast<size_t>(i)]; }
    double operator[](int i) const { return c[static_cast<size_t>(i)]; }

    double norm2() const {
        double s = 0;
        for (int i = 0; i < dim; ++i) s += c[size_t(i)] * c[size_t(i)];
        return s;
    }
    double norm() const { return std::sqrt(norm2()); }

    Vec& operator+=(const Vec& o) {
        for (int i = 0; i < dim; ++i) c[size_t(i)] += o[i];
        return *this;
    }
    Vec& operator-=(const Vec& o) {
        for (int i = 0; i < dim; ++i) c[size_t(i)] -= o[i];
        return *this;
    }
    Vec& operator*=(double s) {
        for (int i = 0; i < dim; ++i) c[size_t(i)] *= s;
        return *this;
    }
};

inline Vec operator+(Vec a, const Vec& b) { return a += b; }
inline Vec operator-(Vec a, const Vec& b) { return a -= b; }
inline Vec operator*(double s, Vec a) { return a *= s; }

inline double dot(const Vec& a, const Vec& b) {
    double s = 0;
    for (int i = 0; i < a.dim; ++i) s += a[i] * b[i];
    return s;
}

inline Vec zero_vec(int d) { return Vec(d); }

inline std::string to_string(const Vec& x) {
    std::string s = "(";
    for (int i = 0; i < x.dim; ++i) s += (i ? "," : "") + std::to_string(x[i]);
    return s + ")";
}

// Axis-aligned box, lo[i] < hi[i].
struct Box {
    Vec lo, hi;

    Box() = default;
    Box(Vec l, Vec h) : lo(l), hi(h) {
        if (l.dim != h.dim) throw std::invalid_argument("Box: dim mismatch");
        for (int i = 0; i < l.dim; ++i)
            if (!(l[i] < h[i])) throw std::invalid_argument("Box: lo[i] < hi[i] required");
    }

    int dim() const { return lo.dim; }

    bool contains(const Vec& x) const {
        for (int i = 0; i < dim(); ++i)
            if (x[i] < lo[i] || x[i] > hi[i]) return false;
        return true;
    }

    bool contains(const Box& b) const {
        for (int i = 0; i < dim(); ++i)
            if (b.lo[i] < lo[i] || b.hi[i] > hi[i]) return false;
        return true;
    }

    Vec center() const {
        Vec m(dim());
        for (int i = 0; i < dim(); ++i) m[i] = 0.5 * (lo[i] + hi[i]);
        return m;
    }

    double max_halfwidth() const {
        double w = 0;
        for (int i = 0; i < dim(); ++i) w = std::max(w, 0.5 * (hi[i] - lo[i]));
        return w;
    }
};

// Intersection, empty -> false.
inline bool intersect(const Box& a, const Box& b, Box& out) {
    Vec lo(a.dim()), hi(a.dim());
    for (int i = 0; i < a.dim(); ++i) {
        lo[i] = std::max(a.lo[i], b.lo[i]);
        hi[i] = std::min(a.hi[i], b.hi[i]);
        if (!(lo[i] < hi[i])) return false;
    }
    out = Box(lo, hi);
    return true;
}

// Cube [-R,R]^d.
inline Box centered_cube(int dim, double r) {
    Vec lo(dim), hi(dim);
    for (int i = 0; i < dim; ++i) {
        lo[i] = -r;
        hi[i] = r;
    }
    return Box(lo, hi);
}

}  // namespace sobolab
