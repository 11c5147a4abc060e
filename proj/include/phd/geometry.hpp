#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "phd/errors.hpp"
#include "phd/special_functions.hpp"

namespace phd {

/// Point of the closed upper half-plane.
struct HalfPlanePoint {
    double re = 0.0;
    double im = 1.0;

    HalfPlanePoint() = default;
    HalfPlanePoint(double re_, double im_) : re(re_), im(im_) {
        if (!std::isfinite(re) || !std::isfinite(im)) throw DomainError("half-plane point must be finite");
        if (im < 0.0) throw DomainError("half-plane point must satisfy Im >= 0");
    }
    explicit HalfPlanePoint(cplx z) : HalfPlanePoint(z.real(), z.imag()) {}

    cplx z() const { return {re, im}; }
    operator cplx() const { return z(); }
    bool interior() const { return im > 0.0; }
};

inline void require_interior(cplx z, const char* who) {
    if (!(z.imag() > 0.0) || !std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw DomainError(std::string(who) + ": point must lie in the open upper half-plane");
}

inline void require_closed(cplx z, const char* who) {
    if (!(z.imag() >= 0.0) || !std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw DomainError(std::string(who) + ": point must lie in the closed upper half-plane");
}

/// Nontangential approach region {z : |Re z - vertex| < aperture * Im z}.
struct ConeSpec {
    double vertex = 0.0;
    double aperture = 1.0;

    ConeSpec() = default;
    ConeSpec(double vertex_, double aperture_) : vertex(vertex_), aperture(aperture_) {
        if (!(aperture > 0.0) || !std::isfinite(aperture)) throw DomainError("cone aperture must be positive");
    }

    bool contains(cplx z) const { return z.imag() > 0.0 && std::abs(z.real() - vertex) < aperture * z.imag(); }

    /// Point at height y on the ray making fraction `offset` in (-1, 1) of the aperture.
    cplx ray_point(double y, double offset = 0.0) const { return {vertex + offset * aperture * y, y}; }
};

/// Geometric heights y_max, y_max q, y_max q^2, ... (count values).
inline std::vector<double> geometric_depths(double y_max, double ratio, int count) {
    if (!(y_max > 0.0) || !(ratio > 0.0 && ratio < 1.0) || count < 1) throw DomainError("invalid depth sampling");
    std::vector<double> ys(static_cast<std::size_t>(count));
    double y = y_max;
    for (auto& v : ys) {
        v = y;
        y *= ratio;
    }
    return ys;
}

}  // namespace phd
