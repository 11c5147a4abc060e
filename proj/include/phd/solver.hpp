#pragma once

// Solution of Delta^n u = g in H with Delta^j u = f_j on the real axis.

#include <cmath>
#include <cstring>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "phd/boundary_data.hpp"
#include "phd/errors.hpp"
#include "phd/geometry.hpp"
#include "phd/poisson_kernels.hpp"
#include "phd/pompeiu.hpp"
#include "phd/quadrature.hpp"
#include "phd/source_term.hpp"
#include "phd/weights.hpp"

namespace phd {

struct ProblemSpec {
    int order = 1;
    std::vector<BoundaryDatum> boundary;  ///< f_0 .. f_{n-1}
    SourceTerm source = SourceTerm::zero();
    WeightSpec weight = WeightSpec::standard(2.0, 1.0, 1.5);
    QuadratureSpec quad;

    void validate() const {
        if (order < 1 || order > detail::max_kernel_order) throw ValidationError("order must lie in [1, " + std::to_string(detail::max_kernel_order) + "]");
        if (static_cast<int>(boundary.size()) != order)
            throw ValidationError("order " + std::to_string(order) + " needs " + std::to_string(order) +
                                  " boundary functions, got " + std::to_string(boundary.size()));
        quad.validate();
        if (!source.is_zero()) {
            WeightSpec w = weight;
            w.k = order;
            w.alpha = 1.5;
            const auto r = weight_check(w, quad);
            if (!r.pass) throw ValidationError("weight is not a (p, n, 3/2)-weight: " + r.diagnostic);
        }
    }
};

struct FieldSample {
    HalfPlanePoint point;
    double value = 0.0;
    double error_estimate = 0.0;
};

/// Boundary values of T~_mm g, memoized by (m, t). Safe for concurrent use.
class TraceCache {
public:
    TraceCache(SourceTerm g, QuadratureSpec q) : g_(std::move(g)), q_(q) {}

    double operator()(int m, double t) {
        const Key key{m, bits(t)};
        {
            std::shared_lock lock(mutex_);
            auto it = map_.find(key);
            if (it != map_.end()) return it->second.value;
        }
        const auto r = pompeiu_apply(m, g_, {t, 0.0}, q_);
        std::unique_lock lock(mutex_);
        map_.emplace(key, Entry{r.value.real(), r.error});
        return r.value.real();
    }

    std::size_t size() const {
        std::shared_lock lock(mutex_);
        return map_.size();
    }

    /// Largest quadrature error among the cached traces.
    double max_error() const {
        std::shared_lock lock(mutex_);
        double e = 0.0;
        for (const auto& kv : map_) e = std::max(e, kv.second.error);
        return e;
    }

private:
    struct Key {
        int m;
        std::uint64_t t;
        bool operator==(const Key& o) const { return m == o.m && t == o.t; }
    };
    struct Hash {
        std::size_t operator()(const Key& k) const { return std::hash<std::uint64_t>()(k.t * 31 + static_cast<std::uint64_t>(k.m)); }
    };
    struct Entry {
        double value, error;
    };
    static std::uint64_t bits(double t) {
        std::uint64_t b;
        std::memcpy(&b, &t, sizeof b);
        return b;
    }

    SourceTerm g_;
    QuadratureSpec q_;
    mutable std::shared_mutex mutex_;
    std::unordered_map<Key, Entry, Hash> map_;
};

/// Evaluates the solution of a fixed problem at many points, sharing the
/// boundary-trace cache between them.
class Solver {
public:
    explicit Solver(ProblemSpec spec) : spec_(std::move(spec)) {
        spec_.validate();
        // traces are integrated once more along the line, so they get a tighter budget
        QuadratureSpec tq = spec_.quad;
        tq.tolerance *= 1e-2;
        traces_ = std::make_shared<TraceCache>(spec_.source, tq);
    }

    const ProblemSpec& spec() const { return spec_; }
    const TraceCache& traces() const { return *traces_; }

    FieldSample operator()(cplx z) const {
        require_interior(z, "solve");
        const int n = spec_.order;
        const bool has_source = !spec_.source.is_zero();
        FieldSample out{HalfPlanePoint(z), 0.0, 0.0};
        if (has_source) {
            const auto t = pompeiu_apply(n, spec_.source, z, spec_.quad);
            out.value += std::pow(4.0, -n) * t.value.real();
            out.error_estimate += std::pow(4.0, -n) * t.error;
        }
        for (int j = 1; j <= n; ++j) {
            const auto r = boundary_term(j, z);
            out.value += r.value;
            out.error_estimate += r.error;
        }
        return out;
    }

    /// M_j(f_{j-1} - 4^(-(n+1-j)) T~_{n+1-j} g)(z), with the trace error folded into the estimate.
    QuadResult<double> boundary_term(int j, cplx z) const {
        const int n = spec_.order;
        if (j < 1 || j > n) throw DomainError("boundary term index out of range");
        const BoundaryDatum& f = spec_.boundary[static_cast<std::size_t>(j - 1)];
        try {
            if (spec_.source.is_zero()) return poisson_integral_mj(j, f, z, spec_.quad);
            const int m = n + 1 - j;
            const double c = std::pow(4.0, -m);
            auto integrand = [&](double t) { return f(t) - c * (*traces_)(m, t); };
            auto r = poisson_line_integral(j, z, integrand, layout(f), spec_.quad);
            r.error += std::pow(4.0, 1 - j) * c * traces_->max_error();
            return r;
        } catch (const ToleranceNotMet& e) {
            throw ToleranceNotMet("boundary term " + std::to_string(j) + ": " + e.what(), e.achieved(), e.requested());
        }
    }

private:
    LineLayout layout(const BoundaryDatum& f) const {
        const auto& g = spec_.source;
        const double reach = g.support() ? g.support()->radius : 1.0;
        if (f.is_zero()) return LineLayout{g.center().real(), std::max({1.0, reach, g.center().imag()}), {}};
        LineLayout l = LineLayout::for_datum(f);
        l.scale = std::max({l.scale, reach, g.center().imag()});
        return l;
    }

    ProblemSpec spec_;
    std::shared_ptr<TraceCache> traces_;
};

/// u(z) = sum_j M_j f_{j-1}(z) for a problem without source.
inline FieldSample solve_homogeneous(const ProblemSpec& spec, cplx z) {
    if (!spec.source.is_zero()) throw ValidationError("solve_homogeneous: source must vanish");
    return Solver(spec)(z);
}

/// u(z) = 4^(-n) T~_nn g(z) + sum_j M_j(f_{j-1} - 4^(-(n+1-j)) T~_{n+1-j} g)(z).
inline FieldSample solve_inhomogeneous(const ProblemSpec& spec, cplx z) { return Solver(spec)(z); }

namespace detail {

inline LineLayout green_layout(cplx zeta) {
    const double s = std::abs(zeta + cplx(0.0, 1.0));
    std::vector<double> breaks{zeta.real()};
    if (s > 1.0) {
        const double x = std::sqrt(s * s - 1.0);
        breaks.push_back(-x);
        breaks.push_back(x);
    }
    return LineLayout{zeta.real(), std::max(1.0, zeta.imag()), breaks};
}

}  // namespace detail

/// G_n(z, zeta) = 4^(-n) [K~_nn(z, zeta) - sum_j 4^(j-1) M_j[K~_{n+1-j}(., zeta)](z)],
/// the kernel of the source-to-solution map with zero boundary data.
inline QuadResult<double> green_function(int n, cplx z, cplx zeta, const QuadratureSpec& q) {
    detail::check_order(n, "green_function");
    require_interior(z, "green_function");
    require_interior(zeta, "green_function");
    if (z == zeta) throw SingularityError("green_function: z equals zeta");
    q.validate();
    const double scale = std::pow(4.0, -n);
    QuadResult<double> out;
    out.value = modified_kernel(n, z, zeta).real();
    const LineLayout layout = detail::green_layout(zeta);
    for (int j = 1; j <= n; ++j) {
        const int m = n + 1 - j;
        const double w = std::pow(4.0, j - 1);
        auto k = [&](double t) { return modified_kernel(m, {t, 0.0}, zeta).real(); };
        QuadratureSpec qj = q;
        qj.tolerance = q.tolerance / w;
        const auto r = poisson_line_integral(j, z, k, layout, qj);
        out.value -= w * r.value;
        out.error += w * r.error;
        out.intervals += r.intervals;
    }
    out.value *= scale;
    out.error *= scale;
    return out;
}

}  // namespace phd
