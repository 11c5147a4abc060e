#pragma once

// Problem files (YAML), evaluation grids, and CSV output.
//
// Problem file schema:
//
//   order: 2
//   f0: indicator -1 1            # or `boundary: [ ... ]` with `order` entries
//   f1: zero
//   g: bump 0 1 0.5               # or `source:`; omitted means zero
//   weight: { p: 2, power: 5.5 }  # power defaults to n + 3/2 + 2(p-1) + 1
//   quadrature: { tolerance: 1e-10, relative_tolerance: 1e-10,
//                 max_intervals: 20000, base_panels: 16, truncation_radius: 0 }
//
// Boundary functions: zero | indicator a b | gaussian-bump c s |
// polynomial-decay c d [p] | bump c r | {table: {x: [...], y: [...]}}.
// Sources: zero | bump cx cy r | gaussian cx cy s | polynomial-decay cx cy d.

#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <yaml-cpp/yaml.h>

#include "phd/boundary_data.hpp"
#include "phd/errors.hpp"
#include "phd/parallel.hpp"
#include "phd/quadrature.hpp"
#include "phd/solver.hpp"
#include "phd/source_term.hpp"
#include "phd/weights.hpp"

namespace phd {

namespace detail {

inline int line_of(const YAML::Node& n) { return n.Mark().is_null() ? 0 : n.Mark().line + 1; }

inline std::vector<std::string> words(const std::string& s) {
    std::istringstream is(s);
    std::vector<std::string> out;
    for (std::string w; is >> w;) out.push_back(w);
    return out;
}

inline double number(const std::string& w, const YAML::Node& at, const std::string& field) {
    try {
        std::size_t used = 0;
        const double v = std::stod(w, &used);
        if (used != w.size()) throw std::invalid_argument(w);
        return v;
    } catch (const std::exception&) {
        throw ParseError("expected a number, got '" + w + "'", line_of(at), field);
    }
}

inline double scalar(const YAML::Node& n, const std::string& field) {
    if (!n.IsScalar()) throw ParseError("expected a number", line_of(n), field);
    return number(n.Scalar(), n, field);
}

inline std::vector<double> numbers(const YAML::Node& n, const std::string& field) {
    if (!n.IsSequence()) throw ParseError("expected a list of numbers", line_of(n), field);
    std::vector<double> out;
    for (const auto& v : n) out.push_back(scalar(v, field));
    return out;
}

inline void reject_unknown(const YAML::Node& map, const std::set<std::string>& allowed, const std::string& where) {
    for (const auto& kv : map) {
        const std::string key = kv.first.as<std::string>();
        if (!allowed.count(key))
            throw ParseError("unknown key", line_of(kv.first), where.empty() ? key : where + "." + key);
    }
}

template <class Build>
auto with_field(const YAML::Node& n, const std::string& field, Build&& build) -> decltype(build()) {
    try {
        return build();
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        throw ParseError(e.what(), line_of(n), field);
    }
}

inline BoundaryDatum parse_datum(const YAML::Node& n, const std::string& field) {
    if (n.IsMap()) {
        reject_unknown(n, {"table"}, field);
        const YAML::Node t = n["table"];
        if (!t || !t.IsMap()) throw ParseError("expected {table: {x: [...], y: [...]}}", line_of(n), field);
        reject_unknown(t, {"x", "y"}, field + ".table");
        if (!t["x"] || !t["y"]) throw ParseError("table needs x and y lists", line_of(t), field + ".table");
        return with_field(n, field, [&] { return BoundaryDatum::table(numbers(t["x"], field + ".table.x"), numbers(t["y"], field + ".table.y")); });
    }
    if (!n.IsScalar()) throw ParseError("expected a boundary function", line_of(n), field);
    const auto w = words(n.Scalar());
    if (w.empty()) throw ParseError("empty boundary function", line_of(n), field);
    auto arg = [&](std::size_t i) { return number(w[i], n, field); };
    auto arity = [&](std::size_t lo, std::size_t hi) {
        if (w.size() - 1 < lo || w.size() - 1 > hi)
            throw ParseError("'" + w[0] + "' takes " + std::to_string(lo) + (lo == hi ? "" : "-" + std::to_string(hi)) + " arguments",
                             line_of(n), field);
    };
    return with_field(n, field, [&]() -> BoundaryDatum {
        if (w[0] == "zero") return arity(0, 0), BoundaryDatum::zero();
        if (w[0] == "indicator") return arity(2, 2), BoundaryDatum::indicator(arg(1), arg(2));
        if (w[0] == "gaussian-bump") return arity(2, 2), BoundaryDatum::gaussian_bump(arg(1), arg(2));
        if (w[0] == "bump") return arity(2, 2), BoundaryDatum::bump(arg(1), arg(2));
        if (w[0] == "polynomial-decay") {
            arity(2, 3);
            return BoundaryDatum::polynomial_decay(arg(1), arg(2), w.size() > 3 ? arg(3) : 2.0);
        }
        throw ParseError("unknown boundary function '" + w[0] + "'", line_of(n), field);
    });
}

inline SourceTerm parse_source(const YAML::Node& n, const std::string& field) {
    if (!n.IsScalar()) throw ParseError("expected a source term", line_of(n), field);
    const auto w = words(n.Scalar());
    if (w.empty()) throw ParseError("empty source term", line_of(n), field);
    auto arg = [&](std::size_t i) { return number(w[i], n, field); };
    auto arity = [&](std::size_t k) {
        if (w.size() - 1 != k) throw ParseError("'" + w[0] + "' takes " + std::to_string(k) + " arguments", line_of(n), field);
    };
    return with_field(n, field, [&]() -> SourceTerm {
        if (w[0] == "zero") return arity(0), SourceTerm::zero();
        if (w[0] == "bump") return arity(3), SourceTerm::bump(arg(1), arg(2), arg(3));
        if (w[0] == "gaussian") return arity(3), SourceTerm::gaussian(arg(1), arg(2), arg(3));
        if (w[0] == "polynomial-decay") return arity(3), SourceTerm::polynomial_decay(arg(1), arg(2), arg(3));
        throw ParseError("unknown source term '" + w[0] + "'", line_of(n), field);
    });
}

inline QuadratureSpec parse_quadrature(const YAML::Node& n, QuadratureSpec q) {
    if (!n.IsMap()) throw ParseError("expected a mapping", line_of(n), "quadrature");
    reject_unknown(n, {"tolerance", "relative_tolerance", "max_intervals", "base_panels", "truncation_radius"}, "quadrature");
    if (n["tolerance"]) q.tolerance = scalar(n["tolerance"], "quadrature.tolerance");
    if (n["relative_tolerance"]) q.relative_tolerance = scalar(n["relative_tolerance"], "quadrature.relative_tolerance");
    if (n["max_intervals"]) q.max_intervals = static_cast<int>(scalar(n["max_intervals"], "quadrature.max_intervals"));
    if (n["base_panels"]) q.base_panels = static_cast<int>(scalar(n["base_panels"], "quadrature.base_panels"));
    if (n["truncation_radius"]) q.truncation_radius = scalar(n["truncation_radius"], "quadrature.truncation_radius");
    with_field(n, "quadrature", [&] { return q.validate(), 0; });
    return q;
}

}  // namespace detail

/// Parses problem text. Syntax and schema errors raise ParseError with the
/// line and field; a boundary list not matching the order raises ValidationError.
inline ProblemSpec parse_problem_text(const std::string& text) {
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::ParserException& e) {
        throw ParseError(e.msg, e.mark.line + 1, "");
    }
    if (!root.IsMap()) throw ParseError("problem file must be a mapping", detail::line_of(root), "");

    std::set<std::string> allowed{"order", "boundary", "g", "source", "weight", "quadrature"};
    for (const auto& kv : root) {
        const std::string key = kv.first.as<std::string>();
        if (key.size() > 1 && key[0] == 'f' && key.find_first_not_of("0123456789", 1) == std::string::npos) allowed.insert(key);
    }
    detail::reject_unknown(root, allowed, "");

    ProblemSpec spec;
    if (!root["order"]) throw ParseError("missing key", 0, "order");
    const double order = detail::scalar(root["order"], "order");
    if (order != std::floor(order) || order < 1) throw ParseError("order must be a positive integer", detail::line_of(root["order"]), "order");
    spec.order = static_cast<int>(order);

    const bool has_list = static_cast<bool>(root["boundary"]);
    std::map<int, YAML::Node> indexed;
    for (const auto& kv : root) {
        const std::string key = kv.first.as<std::string>();
        if (key.size() > 1 && key[0] == 'f' && key != "f") indexed[std::stoi(key.substr(1))] = kv.second;
    }
    if (has_list && !indexed.empty()) throw ParseError("give either `boundary` or f0..f{n-1}, not both", detail::line_of(root["boundary"]), "boundary");
    if (has_list) {
        const YAML::Node list = root["boundary"];
        if (!list.IsSequence()) throw ParseError("expected a list", detail::line_of(list), "boundary");
        for (std::size_t i = 0; i < list.size(); ++i)
            spec.boundary.push_back(detail::parse_datum(list[i], "boundary[" + std::to_string(i) + "]"));
    } else {
        int expect = 0;
        for (const auto& [k, node] : indexed) {
            if (k != expect) throw ValidationError("boundary functions must be f0..f" + std::to_string(spec.order - 1) + " without gaps; f" + std::to_string(expect) + " is missing");
            spec.boundary.push_back(detail::parse_datum(node, "f" + std::to_string(k)));
            ++expect;
        }
    }

    if (root["g"] && root["source"]) throw ParseError("give either `g` or `source`, not both", detail::line_of(root["source"]), "source");
    if (const YAML::Node g = root["g"] ? root["g"] : root["source"]) spec.source = detail::parse_source(g, root["g"] ? "g" : "source");

    if (root["quadrature"]) spec.quad = detail::parse_quadrature(root["quadrature"], spec.quad);

    double p = 2.0;
    std::optional<double> power;
    if (const YAML::Node w = root["weight"]) {
        if (!w.IsMap()) throw ParseError("expected a mapping", detail::line_of(w), "weight");
        detail::reject_unknown(w, {"p", "power"}, "weight");
        if (w["p"]) p = detail::scalar(w["p"], "weight.p");
        if (w["power"]) power = detail::scalar(w["power"], "weight.power");
    }
    const double n = spec.order;
    spec.weight = detail::with_field(root, "weight", [&] {
        return power ? WeightSpec::power(p, n, 1.5, *power) : WeightSpec::standard(p, n, 1.5);
    });
    if (!spec.source.support() && !spec.source.weight_tag()) spec.source = spec.source.with_weight_tag({p, n, 1.5});

    spec.validate();
    return spec;
}

inline ProblemSpec parse_problem(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot read problem file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_problem_text(ss.str());
}

/// Rectangle [x0, x1] x [y0, y1] sampled at nx x ny points.
struct GridSpec {
    double x0 = 0.0, x1 = 0.0, y0 = 1.0, y1 = 1.0;
    int nx = 1, ny = 1;

    /// "x0,x1,y0,y1,nx,ny"
    static GridSpec parse(const std::string& s) {
        std::vector<std::string> parts;
        std::stringstream ss(s);
        for (std::string item; std::getline(ss, item, ',');) parts.push_back(item);
        if (parts.size() != 6) throw ValidationError("grid must be x0,x1,y0,y1,nx,ny");
        GridSpec g;
        try {
            g.x0 = std::stod(parts[0]);
            g.x1 = std::stod(parts[1]);
            g.y0 = std::stod(parts[2]);
            g.y1 = std::stod(parts[3]);
            g.nx = std::stoi(parts[4]);
            g.ny = std::stoi(parts[5]);
        } catch (const std::exception&) {
            throw ValidationError("grid must be x0,x1,y0,y1,nx,ny");
        }
        g.validate();
        return g;
    }

    void validate() const {
        if (nx < 1 || ny < 1) throw ValidationError("grid needs nx, ny >= 1");
        if (!(y0 > 0.0) || !(y1 > 0.0)) throw ValidationError("grid must lie in the open upper half-plane (y0, y1 > 0)");
        if (!std::isfinite(x0) || !std::isfinite(x1) || !std::isfinite(y0) || !std::isfinite(y1)) throw ValidationError("grid bounds must be finite");
    }

    /// Row-major points, x fastest.
    std::vector<cplx> points() const {
        validate();
        std::vector<cplx> out;
        out.reserve(static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny));
        for (int j = 0; j < ny; ++j) {
            const double y = ny == 1 ? y0 : y0 + (y1 - y0) * j / (ny - 1);
            for (int i = 0; i < nx; ++i) out.emplace_back(nx == 1 ? x0 : x0 + (x1 - x0) * i / (nx - 1), y);
        }
        return out;
    }
};

/// One evaluated grid point; `error` holds a diagnostic when evaluation failed.
struct GridRow {
    cplx z;
    double a = 0.0, b = 0.0;
    std::string error;
};

/// Evaluates `eval(z) -> pair(a, b)` at every grid point in parallel.
/// Failures are recorded per row rather than thrown.
template <class Eval>
std::vector<GridRow> evaluate_points(const GridSpec& grid, Eval&& eval) {
    const auto pts = grid.points();
    std::vector<GridRow> rows(pts.size());
    parallel_for(pts.size(), [&](std::size_t i) {
        rows[i].z = pts[i];
        try {
            const auto [a, b] = eval(pts[i]);
            rows[i].a = a;
            rows[i].b = b;
        } catch (const std::exception& e) {
            rows[i].error = e.what();
        }
    });
    return rows;
}

inline std::string format17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// Writes successful rows under `header`; returns the number of failed rows.
inline std::size_t write_csv(const std::string& path, const std::string& header, const std::vector<GridRow>& rows) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write '" + path + "'");
    out << header << '\n';
    std::size_t failed = 0;
    for (const auto& r : rows) {
        if (!r.error.empty()) {
            ++failed;
            continue;
        }
        out << format17(r.z.real()) << ',' << format17(r.z.imag()) << ',' << format17(r.a) << ',' << format17(r.b) << '\n';
    }
    out.flush();
    if (!out) throw Error("write to '" + path + "' failed");
    return failed;
}

}  // namespace phd
