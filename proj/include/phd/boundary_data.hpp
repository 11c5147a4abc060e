#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "phd/errors.hpp"

namespace phd {

/// Boundary function on the real axis with the metadata quadrature needs:
/// either compact support or an algebraic decay exponent d with
/// |f(t)| <= C (1 + |t|)^(-d), an integrability exponent p, and the points
/// where f is not smooth.
class BoundaryDatum {
public:
    using Evaluator = std::function<double(double)>;

    BoundaryDatum() : BoundaryDatum(zero()) {}

    BoundaryDatum(std::string name, Evaluator f, std::optional<std::pair<double, double>> support, double decay,
                  std::vector<double> breakpoints, double center, double width, double p = 2.0)
        : name_(std::move(name)),
          f_(std::move(f)),
          support_(support),
          decay_(decay),
          breaks_(std::move(breakpoints)),
          center_(center),
          width_(width),
          p_(p) {
        validate();
    }

    static BoundaryDatum zero() {
        return BoundaryDatum("zero", nullptr, std::pair{0.0, 0.0}, inf(), {}, 0.0, 1.0);
    }

    static BoundaryDatum indicator(double a, double b) {
        if (!(b > a)) throw ValidationError("indicator: need a < b");
        return BoundaryDatum(
            "indicator " + num(a) + " " + num(b), [a, b](double t) { return (t >= a && t <= b) ? 1.0 : 0.0; },
            std::pair{a, b}, inf(), {a, b}, 0.5 * (a + b), 0.5 * (b - a));
    }

    /// exp(-((t - c)/s)^2)
    static BoundaryDatum gaussian_bump(double c, double s) {
        if (!(s > 0.0)) throw ValidationError("gaussian-bump: width must be positive");
        return BoundaryDatum(
            "gaussian-bump " + num(c) + " " + num(s),
            [c, s](double t) {
                const double u = (t - c) / s;
                return std::exp(-u * u);
            },
            std::nullopt, inf(), {}, c, s);
    }

    /// (1 + (t - c)^2)^(-d/2)
    static BoundaryDatum polynomial_decay(double c, double d, double p = 2.0) {
        if (!(d > 0.0)) throw ValidationError("polynomial-decay: exponent must be positive");
        return BoundaryDatum(
            "polynomial-decay " + num(c) + " " + num(d),
            [c, d](double t) { return std::pow(1.0 + (t - c) * (t - c), -0.5 * d); }, std::nullopt, d, {}, c, 1.0, p);
    }

    /// Smooth compactly supported bump exp(1 - 1/(1 - ((t - c)/r)^2)), equal to 1 at c.
    static BoundaryDatum bump(double c, double r) {
        if (!(r > 0.0)) throw ValidationError("bump: radius must be positive");
        return BoundaryDatum(
            "bump " + num(c) + " " + num(r),
            [c, r](double t) {
                const double u = (t - c) / r;
                const double s = 1.0 - u * u;
                return s > 0.0 ? std::exp(1.0 - 1.0 / s) : 0.0;
            },
            std::pair{c - r, c + r}, inf(), {c - r, c + r}, c, r);
    }

    /// Piecewise-linear interpolant of (xs, ys), zero outside [xs.front(), xs.back()].
    static BoundaryDatum table(std::vector<double> xs, std::vector<double> ys) {
        if (xs.size() != ys.size() || xs.size() < 2) throw ValidationError("table: need at least two (x, y) samples of equal count");
        for (std::size_t i = 0; i + 1 < xs.size(); ++i)
            if (!(xs[i + 1] > xs[i])) throw ValidationError("table: abscissae must be strictly increasing");
        auto data = std::make_shared<std::pair<std::vector<double>, std::vector<double>>>(xs, ys);
        const double a = xs.front(), b = xs.back();
        return BoundaryDatum(
            "table(" + std::to_string(xs.size()) + " samples)",
            [data](double t) {
                const auto& [x, y] = *data;
                if (t < x.front() || t > x.back()) return 0.0;
                auto it = std::upper_bound(x.begin(), x.end(), t);
                if (it == x.end()) return y.back();
                const std::size_t k = static_cast<std::size_t>(it - x.begin());
                const double s = (t - x[k - 1]) / (x[k] - x[k - 1]);
                return y[k - 1] + s * (y[k] - y[k - 1]);
            },
            std::pair{a, b}, inf(), xs, 0.5 * (a + b), 0.5 * (b - a));
    }

    double operator()(double t) const { return f_ ? scale_ * f_(t) : 0.0; }

    bool is_zero() const { return !f_ || scale_ == 0.0; }
    const std::string& name() const { return name_; }
    const std::optional<std::pair<double, double>>& support() const { return support_; }
    /// Algebraic decay exponent; +inf for compact support or faster-than-algebraic decay.
    double decay_exponent() const { return decay_; }
    double p_exponent() const { return p_; }
    const std::vector<double>& breakpoints() const { return breaks_; }
    double center() const { return center_; }
    double width() const { return width_; }

    BoundaryDatum with_p(double p) const {
        BoundaryDatum out = *this;
        out.p_ = p;
        out.validate();
        return out;
    }

    BoundaryDatum scaled(double c) const {
        BoundaryDatum out = *this;
        out.scale_ *= c;
        if (c != 1.0) out.name_ = num(c) + "*(" + name_ + ")";
        return out;
    }

private:
    static double inf() { return std::numeric_limits<double>::infinity(); }
    static std::string num(double v) {
        std::ostringstream os;
        os.precision(17);
        os << v;
        return os.str();
    }

    void validate() const {
        if (!(p_ > 1.0)) throw ValidationError("boundary datum: integrability exponent p must exceed 1");
        if (!(decay_ > 0.0)) throw ValidationError("boundary datum: decay exponent must be positive");
        if (!(decay_ * p_ > 1.0)) throw ValidationError("boundary datum '" + name_ + "': decay exponent d must satisfy d*p > 1");
        if (!(width_ > 0.0)) throw ValidationError("boundary datum: width must be positive");
    }

    std::string name_;
    Evaluator f_;
    std::optional<std::pair<double, double>> support_;
    double decay_;
    std::vector<double> breaks_;
    double center_;
    double width_;
    double p_;
    double scale_ = 1.0;
};

}  // namespace phd
