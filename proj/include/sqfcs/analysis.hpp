// analysis.hpp — parameter sweeps, uncertainty-product evaluation, flux
// zero finding and figure-data emission (CSV only, no rendering).

#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "sqfcs/cgf.hpp"
#include "sqfcs/config.hpp"
#include "sqfcs/csv.hpp"
#include "sqfcs/cumulants.hpp"
#include "sqfcs/model.hpp"
#include "sqfcs/parallel.hpp"

namespace sqfcs {

/// Flag slack for the per-row TUR marker.
inline constexpr double kTurFlagSlack = 1e-12;
/// Verification threshold used by grid-level TUR checks; wider than the
/// flag slack because double-precision cancellation near equilibrium can
/// pull an analytically positive F*A - 2 a few 1e-10 below zero.
inline constexpr double kTurVerifySlack = 1e-9;

/// Fano factor, affinity and their product. zero_flux marks the equilibrium
/// case where the product is undefined (TUR trivially saturated).
struct TurProduct {
    double fano = std::numeric_limits<double>::quiet_NaN();
    double affinity_value = 0.0;
    double product = std::numeric_limits<double>::quiet_NaN();
    bool zero_flux = false;
};

inline TurProduct tur_product(const ModelParams& p) {
    const Jet s = cgf_jet(make_rates(p), 2);
    const double j1 = s.derivative(1);
    const double j2 = s.derivative(2);
    TurProduct out;
    out.affinity_value = affinity(p).value;
    if (j1 == 0.0) {
        out.zero_flux = true;
        return out;
    }
    out.fano = j2 / j1;
    out.product = out.fano * out.affinity_value;
    return out;
}

/// One evaluated grid point of a sweep. Cumulant columns are in the
/// closed-form (paper) convention; scaled ratios are NaN where the
/// unsqueezed reference vanishes. tur_ok is trivially true at zero flux.
struct SweepRow {
    double x_l = 0.0, x_r = 0.0;
    double n_l = 0.0, n_r = 0.0;
    double gamma_l = 0.0, gamma_r = 0.0;
    double affinity_value = 0.0;
    std::array<double, 4> j_paper{};
    std::array<double, 4> c_scaled{};
    double fano = std::numeric_limits<double>::quiet_NaN();
    double fa = std::numeric_limits<double>::quiet_NaN();
    bool tur_ok = true;
};

inline SweepRow evaluate_row(const ModelParams& p) {
    const CumulantReport rep = cumulants(p, 4);
    const auto [n_l, n_r] = occupations(p);
    SweepRow row;
    row.x_l = p.left.squeeze;
    row.x_r = p.right.squeeze;
    row.n_l = n_l;
    row.n_r = n_r;
    row.gamma_l = p.left.gamma;
    row.gamma_r = p.right.gamma;
    row.affinity_value = rep.affinity;
    for (int n = 1; n <= 4; ++n) {
        row.j_paper[n - 1] = rep.paper(n);
        row.c_scaled[n - 1] = rep.C(n);
    }
    if (rep.j(1) != 0.0) {
        row.fano = rep.fano;
        row.fa = row.fano * row.affinity_value;
        row.tur_ok = row.fa >= 2.0 - kTurFlagSlack;
    }
    return row;
}

/// A named sweep axis; names are the config keys. Sweeping temp_l/temp_r
/// clears the corresponding occupation so the temperature takes effect.
struct SweepAxis {
    std::string name;
    std::vector<double> values;
};

inline SweepAxis uniform_axis(std::string name, double lo, double hi,
                              std::size_t count) {
    if (count < 1) throw std::invalid_argument("axis: empty grid");
    SweepAxis ax{std::move(name), {}};
    ax.values.resize(count);
    for (std::size_t i = 0; i < count; ++i)
        ax.values[i] =
            count == 1 ? lo
                       : lo + (hi - lo) * static_cast<double>(i) /
                                 static_cast<double>(count - 1);
    return ax;
}

inline void apply_axis_value(ModelParams& p, const std::string& name,
                             double v) {
    if (name == "omega0") {
        p.omega0 = v;
    } else if (name == "gamma_l") {
        p.left.gamma = v;
    } else if (name == "gamma_r") {
        p.right.gamma = v;
    } else if (name == "temp_l") {
        p.left.temperature = v;
        p.left.occupation.reset();
    } else if (name == "temp_r") {
        p.right.temperature = v;
        p.right.occupation.reset();
    } else if (name == "occ_l") {
        p.left.occupation = v;
    } else if (name == "occ_r") {
        p.right.occupation = v;
    } else if (name == "x_l") {
        p.left.squeeze = v;
    } else if (name == "x_r") {
        p.right.squeeze = v;
    } else {
        throw std::invalid_argument("sweep: unknown axis '" + name + "'");
    }
}

/// Row-major sweep: axis1 is the outer loop.
inline std::vector<SweepRow> sweep(const ModelParams& params_template,
                                   const SweepAxis& axis1,
                                   const std::optional<SweepAxis>& axis2 = {}) {
    if (axis1.values.empty() || (axis2 && axis2->values.empty()))
        throw std::invalid_argument("sweep: empty axis grid");
    const std::size_t n1 = axis1.values.size();
    const std::size_t n2 = axis2 ? axis2->values.size() : 1;
    std::vector<SweepRow> rows(n1 * n2);
    parallel_for_index(rows.size(), [&](std::size_t idx) {
        ModelParams p = params_template;
        apply_axis_value(p, axis1.name, axis1.values[idx / n2]);
        if (axis2) apply_axis_value(p, axis2->name, axis2->values[idx % n2]);
        rows[idx] = evaluate_row(p);
    });
    return rows;
}

inline void write_sweep_header(CsvWriter& w) {
    for (const char* name :
         {"x_l", "x_r", "n_l", "n_r", "gamma_l", "gamma_r", "affinity",
          "j1_paper", "j2_paper", "j3_paper", "j4_paper", "C1", "C2", "C3",
          "C4", "fano", "fa", "tur_ok"})
        w.field(std::string_view(name));
    w.end_row();
}

inline void write_sweep_row(CsvWriter& w, const SweepRow& r) {
    w.field(r.x_l).field(r.x_r).field(r.n_l).field(r.n_r);
    w.field(r.gamma_l).field(r.gamma_r).field(r.affinity_value);
    for (double v : r.j_paper) w.field(v);
    for (double v : r.c_scaled) w.field(v);
    w.field(r.fano).field(r.fa).field(r.tur_ok);
    w.end_row();
}

inline void write_sweep_csv(const std::vector<SweepRow>& rows,
                            std::ostream& os) {
    CsvWriter w(os);
    write_sweep_header(w);
    for (const auto& r : rows) write_sweep_row(w, r);
}

/// Bisection root of the closed-form flux along one squeezing axis.
/// Confirms the closed-form switching point numerically.
inline double find_flux_zero(const ModelParams& p, Side varying_side,
                             double lo, double hi) {
    if (!(lo < hi)) throw std::invalid_argument("find_flux_zero: bad bracket");
    const auto flux_at = [&](double x) {
        ModelParams q = p;
        (varying_side == Side::left ? q.left : q.right).squeeze = x;
        return closed_flux(q, FluxVariant::general);
    };
    double flo = flux_at(lo);
    double fhi = flux_at(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0))
        throw std::domain_error("find_flux_zero: no sign change in bracket");
    while (hi - lo > 1e-10) {
        const double mid = 0.5 * (lo + hi);
        const double fm = flux_at(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// ---------------------------------------------------------------------------
// Figure data
// ---------------------------------------------------------------------------

enum class FigureId { fig1b, fig1cd, fig2, fig3, fig4, fig5 };

inline std::optional<FigureId> parse_figure_id(std::string_view s) {
    if (s == "1b") return FigureId::fig1b;
    if (s == "1cd") return FigureId::fig1cd;
    if (s == "2") return FigureId::fig2;
    if (s == "3") return FigureId::fig3;
    if (s == "4") return FigureId::fig4;
    if (s == "5") return FigureId::fig5;
    return std::nullopt;
}

/// Caption defaults per figure; user overrides are merged on top.
inline ParamConfig figure_default_config(FigureId id) {
    ParamConfig c;
    c.omega0 = 0.5;
    c.gamma_l = 1.0;
    c.gamma_r = 1.0;
    switch (id) {
        case FigureId::fig1b:
            c.temp_l = 0.7;
            c.temp_r = 0.7;
            break;
        case FigureId::fig1cd:
            c.temp_l = 0.7;
            c.temp_r = 0.4;
            break;
        case FigureId::fig2:
        case FigureId::fig3:
        case FigureId::fig4:
            c.occ_l = 1.0;
            c.occ_r = 0.1;
            break;
        case FigureId::fig5:
            c.occ_l = 0.4;
            c.occ_r = 0.3;
            break;
    }
    return c;
}

namespace detail {

inline void figure_density_affinity(const ModelParams& base,
                                    std::ostream& os) {
    CsvWriter w(os);
    w.field(std::string_view("x_l"))
        .field(std::string_view("x_r"))
        .field(std::string_view("affinity"));
    w.end_row();
    const SweepAxis ax = uniform_axis("x", 0.0, 2.0, 101);
    for (double xl : ax.values)
        for (double xr : ax.values) {
            ModelParams p = base;
            p.left.squeeze = xl;
            p.right.squeeze = xr;
            w.field(xl).field(xr).field(affinity(p).value);
            w.end_row();
        }
}

inline void figure_gc_curves(const ModelParams& base, std::ostream& os) {
    CsvWriter w(os);
    for (const char* name :
         {"x_l", "x_r", "lambda", "cgf", "cgf_mirror", "residual"})
        w.field(std::string_view(name));
    w.end_row();
    const std::array<std::pair<double, double>, 2> cases{
        {{0.0, 0.0}, {1.0, 0.5}}};
    for (const auto& [xl, xr] : cases) {
        ModelParams p = base;
        p.left.squeeze = xl;
        p.right.squeeze = xr;
        const RateSet r = make_rates(p);
        const double a = affinity(p).value;
        for (double lam : gc_lambda_grid(a)) {
            const double s = cgf(r, lam);
            const double m = cgf(r, -lam - a);
            w.field(xl).field(xr).field(lam).field(s).field(m).field(
                std::abs(s - m));
            w.end_row();
        }
    }
}

inline void figure_ratio_curves(const ModelParams& base, int low_order,
                                std::ostream& os) {
    CsvWriter w(os);
    const std::string c_lo = "C" + std::to_string(low_order);
    const std::string c_hi = "C" + std::to_string(low_order + 1);
    const std::string j_lo = "j" + std::to_string(low_order) + "_paper";
    const std::string j_hi = "j" + std::to_string(low_order + 1) + "_paper";
    w.field(std::string_view("curve"))
        .field(std::string_view("x_l"))
        .field(std::string_view("x_r"))
        .field(std::string_view("affinity"))
        .field(std::string_view(j_lo))
        .field(std::string_view(j_hi))
        .field(std::string_view(c_lo))
        .field(std::string_view(c_hi));
    w.end_row();
    const SweepAxis ax = uniform_axis("x_l", 0.0, 3.0, 201);
    const auto emit = [&](const std::string& curve, double xl, double xr) {
        ModelParams p = base;
        p.left.squeeze = xl;
        p.right.squeeze = xr;
        const CumulantReport rep = cumulants(p, low_order + 1);
        w.field(std::string_view(curve)).field(xl).field(xr);
        w.field(rep.affinity);
        w.field(rep.paper(low_order)).field(rep.paper(low_order + 1));
        w.field(rep.C(low_order)).field(rep.C(low_order + 1));
        w.end_row();
    };
    for (double xr : {0.0, 0.5, 1.0}) {
        const std::string curve = "x_r=" + format_double(xr);
        for (double xl : ax.values) emit(curve, xl, xr);
    }
    for (double xl : ax.values) emit("symmetric", xl, xl);
}

inline void figure_tur_grid(const ModelParams& base,
                            const std::vector<double>& occ_l_values,
                            bool emit_occupations, std::ostream& os) {
    CsvWriter w(os);
    if (emit_occupations)
        w.field(std::string_view("n_l")).field(std::string_view("n_r"));
    for (const char* name : {"x_l", "x_r", "fano", "affinity", "fa", "tur_ok"})
        w.field(std::string_view(name));
    w.end_row();
    const SweepAxis ax = uniform_axis("x", 0.0, 2.0, 101);
    for (double nl : occ_l_values) {
        ModelParams q = base;
        if (emit_occupations) q.left.occupation = nl;
        const auto [n_l, n_r] = occupations(q);
        for (double xl : ax.values)
            for (double xr : ax.values) {
                ModelParams p = q;
                p.left.squeeze = xl;
                p.right.squeeze = xr;
                const TurProduct t = tur_product(p);
                const bool ok =
                    t.zero_flux || t.product >= 2.0 - kTurFlagSlack;
                if (emit_occupations) w.field(n_l).field(n_r);
                w.field(xl).field(xr).field(t.fano).field(t.affinity_value);
                w.field(t.product).field(ok);
                w.end_row();
            }
    }
}

}  // namespace detail

/// Emits the data behind one figure as CSV. Overrides merge on top of the
/// caption defaults; the grid axes (squeezing values, lambda) are generated
/// and ignore x_l/x_r overrides.
inline void figure_data(FigureId id, const ParamConfig& overrides,
                        std::ostream& os) {
    const ModelParams base =
        resolve(merge(figure_default_config(id), overrides));
    switch (id) {
        case FigureId::fig1b:
            detail::figure_density_affinity(base, os);
            return;
        case FigureId::fig1cd:
            detail::figure_gc_curves(base, os);
            return;
        case FigureId::fig2:
            detail::figure_ratio_curves(base, 1, os);
            return;
        case FigureId::fig3:
            detail::figure_ratio_curves(base, 3, os);
            return;
        case FigureId::fig4:
            detail::figure_tur_grid(base, {0.0}, false, os);
            return;
        case FigureId::fig5:
            detail::figure_tur_grid(base, {0.4, 0.6, 0.8, 1.0}, true, os);
            return;
    }
    throw std::invalid_argument("figure_data: unknown figure id");
}

}  // namespace sqfcs
