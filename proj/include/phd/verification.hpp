#pragma once

// Empirical probe of the a priori estimate for the inhomogeneous problem.

#include <cmath>
#include <limits>

#include "phd/maximal.hpp"
#include "phd/solver.hpp"
#include "phd/weights.hpp"

namespace phd {

struct EstimateReport {
    MaximalProbe probe;          ///< maximal function of u minus its source and higher boundary parts
    double data_norm = 0.0;      ///< ||f_0||_p + ||g||_{L^p_w}
    double ratio = 0.0;          ///< probe.maximal_norm / data_norm, 0 for zero data
    bool trivially_satisfied = false;
};

/// The part of u left after removing 4^(-n) T~_nn g and the terms j >= 2,
/// which is M_1(f_0 - 4^(-n) T~_nn g), probed by its nontangential maximal
/// function against ||f_0||_p + ||g||_{L^p_w}.
inline EstimateReport solution_estimate_probe(const Solver& solver, double aperture, const ProbeGrid& grid) {
    const ProblemSpec& spec = solver.spec();
    const BoundaryDatum& f0 = spec.boundary.front();
    EstimateReport out;
    if (f0.is_zero() && spec.source.is_zero()) {
        out.trivially_satisfied = true;
        out.probe.points.resize(grid.x0.size());
        for (std::size_t i = 0; i < grid.x0.size(); ++i) out.probe.points[i].x0 = grid.x0[i];
        return out;
    }
    auto field = [&](cplx z) { return solver.boundary_term(1, z).value; };
    out.probe = maximal_probe(field, f0, aperture, grid);
    out.data_norm = detail::line_lp_norm(f0, grid.quad) + weighted_norm(spec.source, spec.weight, grid.quad);
    out.ratio = out.probe.maximal_norm / out.data_norm;
    return out;
}

inline EstimateReport solution_estimate_probe(const ProblemSpec& spec, double aperture, const ProbeGrid& grid) {
    return solution_estimate_probe(Solver(spec), aperture, grid);
}

}  // namespace phd
