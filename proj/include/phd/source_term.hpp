#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <utility>

#include "phd/errors.hpp"
#include "phd/special_functions.hpp"

namespace phd {

/// Claimed membership of a source in a weighted L^p space.
struct WeightTag {
    double p = 2.0;
    double k = 1.0;
    double alpha = 1.5;
};

struct Disc {
    cplx center;
    double radius = 0.0;
};

/// Interior right-hand side g on the upper half-plane. Either compactly
/// supported in a disc, or decaying like (1 + |zeta - c|)^(-d); the latter
/// must carry a weight tag before it can be integrated.
class SourceTerm {
public:
    using Evaluator = std::function<cplx(cplx)>;

    SourceTerm() : SourceTerm(zero()) {}

    SourceTerm(std::string name, Evaluator g, std::optional<Disc> support, double decay, cplx center,
               std::optional<WeightTag> tag = std::nullopt)
        : name_(std::move(name)), g_(std::move(g)), support_(support), decay_(decay), center_(center), tag_(tag) {
        if (support_ && !(support_->radius >= 0.0)) throw ValidationError("source support radius must be nonnegative");
        if (!(decay_ > 0.0)) throw ValidationError("source decay exponent must be positive");
    }

    static SourceTerm zero() { return SourceTerm("zero", nullptr, Disc{{0.0, 1.0}, 0.0}, inf(), {0.0, 1.0}); }

    /// exp(1 - 1/(1 - |zeta - c|^2 / r^2)) inside the disc, 0 outside.
    static SourceTerm bump(double cx, double cy, double r) {
        if (!(r > 0.0)) throw ValidationError("bump: radius must be positive");
        const cplx c(cx, cy);
        return SourceTerm(
            "bump " + num(cx) + " " + num(cy) + " " + num(r),
            [c, r](cplx zeta) -> cplx {
                const double u = std::norm(zeta - c) / (r * r);
                return u < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - u)) : 0.0;
            },
            Disc{c, r}, inf(), c);
    }

    /// exp(-|zeta - c|^2 / s^2), cut where it drops below 1e-18.
    static SourceTerm gaussian(double cx, double cy, double s) {
        if (!(s > 0.0)) throw ValidationError("gaussian: width must be positive");
        const cplx c(cx, cy);
        const double cut = s * std::sqrt(18.0 * std::log(10.0));
        return SourceTerm(
            "gaussian " + num(cx) + " " + num(cy) + " " + num(s),
            [c, s, cut](cplx zeta) -> cplx {
                const double d2 = std::norm(zeta - c);
                return d2 < cut * cut ? std::exp(-d2 / (s * s)) : 0.0;
            },
            Disc{c, cut}, inf(), c);
    }

    /// (1 + |zeta - c|^2)^(-d/2)
    static SourceTerm polynomial_decay(double cx, double cy, double d, std::optional<WeightTag> tag = std::nullopt) {
        if (!(d > 0.0)) throw ValidationError("polynomial-decay: exponent must be positive");
        const cplx c(cx, cy);
        return SourceTerm(
            "polynomial-decay " + num(cx) + " " + num(cy) + " " + num(d),
            [c, d](cplx zeta) -> cplx { return std::pow(1.0 + std::norm(zeta - c), -0.5 * d); }, std::nullopt, d, c, tag);
    }

    cplx operator()(cplx zeta) const {
        if (!g_ || scale_ == 0.0) return 0.0;
        if (support_ && std::norm(zeta - support_->center) >= support_->radius * support_->radius) return 0.0;
        return scale_ * g_(zeta);
    }

    bool is_zero() const { return !g_ || scale_ == 0.0 || (support_ && support_->radius == 0.0); }
    const std::string& name() const { return name_; }
    const std::optional<Disc>& support() const { return support_; }
    double decay_exponent() const { return decay_; }
    cplx center() const { return center_; }
    const std::optional<WeightTag>& weight_tag() const { return tag_; }
    double scale() const { return scale_; }

    SourceTerm with_weight_tag(WeightTag tag) const {
        SourceTerm out = *this;
        out.tag_ = tag;
        return out;
    }

    SourceTerm scaled(double c) const {
        SourceTerm out = *this;
        out.scale_ *= c;
        if (c != 1.0) out.name_ = num(c) + "*(" + name_ + ")";
        return out;
    }

    /// Disc the area quadrature covers. Unbounded sources are cut at
    /// `truncation_radius` about -i, or where an r^(-1-d) tail falls below `tol`.
    Disc integration_disc(double truncation_radius, double tol) const {
        if (support_) return *support_;
        if (!tag_) throw ValidationError("source '" + name_ + "' has unbounded support and no weight tag");
        double r = truncation_radius;
        if (!(r > 0.0)) r = std::min(std::pow(tol, -1.0 / (1.0 + decay_)), 1e4);
        return Disc{{0.0, -1.0}, r};
    }

private:
    static double inf() { return std::numeric_limits<double>::infinity(); }
    static std::string num(double v) {
        std::ostringstream os;
        os.precision(17);
        os << v;
        return os.str();
    }

    std::string name_;
    Evaluator g_;
    std::optional<Disc> support_;
    double decay_;
    cplx center_;
    std::optional<WeightTag> tag_;
    double scale_ = 1.0;
};

}  // namespace phd
