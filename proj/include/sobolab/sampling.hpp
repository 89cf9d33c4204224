#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sobolab/vec.hpp"

namespace sobolab {

inline std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

// Van der Corput radical inverse.
inline double radical_inverse(std::uint64_t i, std::uint64_t base) {
    double inv = 1.0 / double(base);
    double f = inv;
    double r = 0.0;
    while (i > 0) {
        r += f * double(i % base);
        i /= base;
        f *= inv;
    }
    return r;
}

// Deterministic low-discrepancy points in a box. The seed only shifts the
// start index, so reports are reproducible for a fixed (seed, n).
inline std::vector<Vec> halton_points(const Box& box, int n, std::uint64_t seed) {
    static const std::uint64_t bases[3] = {2, 3, 5};
    std::uint64_t offset = (seed % 65536) + 1;
    std::vector<Vec> pts;
    pts.reserve(size_t(n));
    for (int k = 0; k < n; ++k) {
        Vec x(box.dim());
        for (int i = 0; i < box.dim(); ++i) {
            double u = radical_inverse(offset + std::uint64_t(k), bases[i]);
            x[i] = box.lo[i] + u * (box.hi[i] - box.lo[i]);
        }
        pts.push_back(x);
    }
    return pts;
}

// Probe set for min/max estimates: corners and center first, then a
// low-discrepancy fill. Including corners pins extrema of monotone fields.
inline std::vector<Vec> probe_points(const Box& box, int n, std::uint64_t seed) {
    std::vector<Vec> pts;
    int d = box.dim();
    int corners = 1 << d;
    for (int m = 0; m < corners; ++m) {
        Vec x(d);
        for (int i = 0; i < d; ++i) x[i] = (m >> i) & 1 ? box.hi[i] : box.lo[i];
        pts.push_back(x);
    }
    pts.push_back(box.center());
    int rest = n - int(pts.size());
    if (rest > 0) {
        auto fill = halton_points(box, rest, seed);
        pts.insert(pts.end(), fill.begin(), fill.end());
    }
    return pts;
}

}  // namespace sobolab
