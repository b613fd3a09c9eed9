// sqfcs — counting statistics of boson exchange between a two-level system
// and two squeezed harmonic reservoirs.
//
// Exit codes: 0 success, 1 verification failure or I/O error, 2 usage or
// configuration error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sqfcs/sqfcs.hpp"

namespace {

struct CommonOpts {
    std::string config_path;
    std::string out_path;

    double omega0 = 0.0, gamma_l = 0.0, gamma_r = 0.0;
    double temp_l = 0.0, temp_r = 0.0, occ_l = 0.0, occ_r = 0.0;
    double x_l = 0.0, x_r = 0.0;

    CLI::App* sub = nullptr;

    sqfcs::ParamConfig cli_config() const {
        sqfcs::ParamConfig c;
        const auto take = [&](const char* flag, std::optional<double>& slot,
                              double value) {
            if (sub->count(flag) > 0) slot = value;
        };
        take("--omega0", c.omega0, omega0);
        take("--gamma-l", c.gamma_l, gamma_l);
        take("--gamma-r", c.gamma_r, gamma_r);
        take("--temp-l", c.temp_l, temp_l);
        take("--temp-r", c.temp_r, temp_r);
        take("--occ-l", c.occ_l, occ_l);
        take("--occ-r", c.occ_r, occ_r);
        take("--x-l", c.x_l, x_l);
        take("--x-r", c.x_r, x_r);
        return c;
    }

    /// File config (if any) with CLI flags merged on top.
    sqfcs::ParamConfig merged() const {
        sqfcs::ParamConfig base;
        if (!config_path.empty())
            base = sqfcs::parse_config_file(config_path);
        return sqfcs::merge(base, cli_config());
    }

    sqfcs::ModelParams params() const { return sqfcs::resolve(merged()); }
};

void add_param_flags(CLI::App* sub, CommonOpts& o) {
    o.sub = sub;
    sub->add_option("--config", o.config_path,
                    "parameter file with key = value lines");
    sub->add_option("--omega0", o.omega0, "site frequency (default 0.5)");
    sub->add_option("--gamma-l", o.gamma_l, "left coupling (default 1)");
    sub->add_option("--gamma-r", o.gamma_r, "right coupling (default 1)");
    sub->add_option("--temp-l", o.temp_l, "left temperature");
    sub->add_option("--temp-r", o.temp_r, "right temperature");
    sub->add_option("--occ-l", o.occ_l,
                    "left occupation n_L (overrides --temp-l)");
    sub->add_option("--occ-r", o.occ_r,
                    "right occupation n_R (overrides --temp-r)");
    sub->add_option("--x-l", o.x_l, "left squeezing (default 0)");
    sub->add_option("--x-r", o.x_r, "right squeezing (default 0)");
    sub->add_option("--out", o.out_path, "output file (default stdout)");
}

/// "key=lo:hi:count" -> axis.
sqfcs::SweepAxis parse_axis_spec(const std::string& spec) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos)
        throw sqfcs::ConfigError("axis spec '" + spec +
                                 "': expected key=lo:hi:count");
    const std::string name = spec.substr(0, eq);
    bool known = false;
    for (auto k : sqfcs::kConfigKeys) known = known || k == name;
    if (!known)
        throw sqfcs::ConfigError("axis spec '" + spec + "': unknown key '" +
                                 name + "'");
    const std::string rest = spec.substr(eq + 1);
    const auto c1 = rest.find(':');
    const auto c2 = rest.find(':', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
        throw sqfcs::ConfigError("axis spec '" + spec +
                                 "': expected key=lo:hi:count");
    try {
        const double lo = std::stod(rest.substr(0, c1));
        const double hi = std::stod(rest.substr(c1 + 1, c2 - c1 - 1));
        const long count = std::stol(rest.substr(c2 + 1));
        if (count < 1) throw std::invalid_argument("count");
        return sqfcs::uniform_axis(name, lo, hi,
                                   static_cast<std::size_t>(count));
    } catch (const sqfcs::ConfigError&) {
        throw;
    } catch (const std::exception&) {
        throw sqfcs::ConfigError("axis spec '" + spec + "': bad numbers");
    }
}

class OutputStream {
  public:
    explicit OutputStream(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_)
                throw std::runtime_error("cannot open output file '" + path +
                                         "'");
        }
    }
    std::ostream& get() { return file_.is_open() ? file_ : std::cout; }

  private:
    std::ofstream file_;
};

int run_cumulants(const CommonOpts& o, int order, bool paper_only) {
    const sqfcs::CumulantReport rep = sqfcs::cumulants(o.params(), order);
    OutputStream out(o.out_path);
    sqfcs::CsvWriter w(out.get());

    w.field(std::string_view("order"));
    if (!paper_only)
        for (int n = 1; n <= order; ++n)
            w.field(std::string_view("j" + std::to_string(n)));
    for (int n = 1; n <= order; ++n)
        w.field(std::string_view("j" + std::to_string(n) + "_paper"));
    for (int n = 1; n <= order; ++n)
        w.field(std::string_view("C" + std::to_string(n)));
    w.field(std::string_view("fano")).field(std::string_view("affinity"));
    w.end_row();

    w.field(order);
    if (!paper_only)
        for (int n = 1; n <= order; ++n) w.field(rep.j(n));
    for (int n = 1; n <= order; ++n) w.field(rep.paper(n));
    for (int n = 1; n <= order; ++n) w.field(rep.C(n));
    w.field(rep.fano).field(rep.affinity);
    w.end_row();
    return 0;
}

int run_sweep(const CommonOpts& o, const std::string& axis1_spec,
              const std::string& axis2_spec) {
    const sqfcs::SweepAxis ax1 = parse_axis_spec(axis1_spec);
    std::optional<sqfcs::SweepAxis> ax2;
    if (!axis2_spec.empty()) ax2 = parse_axis_spec(axis2_spec);
    const auto rows = sqfcs::sweep(o.params(), ax1, ax2);
    OutputStream out(o.out_path);
    sqfcs::write_sweep_csv(rows, out.get());
    return 0;
}

int run_figures(const CommonOpts& o, const std::string& id_str) {
    const auto id = sqfcs::parse_figure_id(id_str);
    if (!id)
        throw sqfcs::ConfigError("unknown figure id '" + id_str +
                                 "' (expected 1b, 1cd, 2, 3, 4 or 5)");
    OutputStream out(o.out_path);
    sqfcs::figure_data(*id, o.merged(), out.get());
    return 0;
}

int run_verify_gc(const CommonOpts& o, double tol) {
    const sqfcs::ModelParams p = o.params();
    const double a = sqfcs::affinity(p).value;
    const auto grid = sqfcs::gc_lambda_grid(a);
    const double residual = sqfcs::gc_residual(p, grid);
    const bool pass = residual <= tol;
    OutputStream out(o.out_path);
    out.get() << "residual=" << sqfcs::format_double(residual) << '\n'
              << "affinity=" << sqfcs::format_double(a) << '\n'
              << "tolerance=" << sqfcs::format_double(tol) << '\n'
              << "points=" << grid.size() << '\n'
              << "status=" << (pass ? "PASS" : "FAIL") << '\n';
    return pass ? 0 : 1;
}

int run_verify_ft(const CommonOpts& o, double window, long long n_windows,
                  std::uint64_t seed, double tol) {
    const sqfcs::ModelParams p = o.params();
    const sqfcs::FtHistogram h =
        sqfcs::ft_histogram(p, window, n_windows, seed);

    OutputStream out(o.out_path);
    sqfcs::CsvWriter w(out.get());
    for (const char* name : {"q", "count", "ln_ratio", "model_qA"})
        w.field(std::string_view(name));
    w.end_row();
    for (const auto& row : h.rows) {
        w.field(row.q).field(row.count).field(row.ln_ratio).field(row.model);
        w.end_row();
    }

    if (!h.sufficient) {
        std::cerr << "insufficient data: " << h.bins_with_min_count
                  << " bins with >= " << h.min_count << " samples ("
                  << h.usable_pairs << " usable +-q pairs) from "
                  << h.total_windows << " windows; need 5 bins and 2 pairs\n";
        return 1;
    }
    const double a = h.model_affinity;
    const bool pass = a != 0.0
                          ? std::abs(h.slope - a) <= tol * std::abs(a)
                          : std::abs(h.slope) <= 2.0 * h.slope_std_error;
    std::cerr << "slope=" << sqfcs::format_double(h.slope)
              << " stderr=" << sqfcs::format_double(h.slope_std_error)
              << " affinity=" << sqfcs::format_double(a)
              << " pairs=" << h.usable_pairs
              << " status=" << (pass ? "PASS" : "FAIL") << '\n';
    return pass ? 0 : 1;
}

int run_simulate(const CommonOpts& o, double t_max, int n_traj,
                 std::uint64_t seed) {
    const sqfcs::ModelParams p = o.params();
    OutputStream out(o.out_path);
    sqfcs::CsvWriter w(out.get());
    if (n_traj <= 1) {
        const auto s = sqfcs::simulate(p, t_max, seed);
        for (const char* name : {"total_time", "q", "absorb_l", "emit_l",
                                 "absorb_r", "emit_r", "time_occupied"})
            w.field(std::string_view(name));
        w.end_row();
        w.field(s.total_time).field(s.net_count);
        w.field(s.absorb_left).field(s.emit_left);
        w.field(s.absorb_right).field(s.emit_right);
        w.field(s.time_occupied);
        w.end_row();
        return 0;
    }
    const auto e = sqfcs::ensemble_cumulants(p, n_traj, t_max, seed);
    for (const char* name : {"n_traj", "horizon", "k1", "k2", "k3", "k4",
                             "se1", "se2", "se3", "se4"})
        w.field(std::string_view(name));
    w.end_row();
    w.field(e.n_traj).field(e.horizon);
    for (double v : e.rate) w.field(v);
    for (double v : e.std_error) w.field(v);
    w.end_row();
    return 0;
}

int run_tur(const CommonOpts& o, const std::string& axis1_spec,
            const std::string& axis2_spec) {
    OutputStream out(o.out_path);
    if (axis1_spec.empty()) {
        const sqfcs::TurProduct t = sqfcs::tur_product(o.params());
        sqfcs::CsvWriter w(out.get());
        for (const char* name : {"fano", "affinity", "fa", "tur_ok"})
            w.field(std::string_view(name));
        w.end_row();
        const bool ok =
            t.zero_flux || t.product >= 2.0 - sqfcs::kTurFlagSlack;
        w.field(t.fano).field(t.affinity_value).field(t.product).field(ok);
        w.end_row();
        if (t.zero_flux) return 0;
        return t.product >= 2.0 - sqfcs::kTurVerifySlack ? 0 : 1;
    }
    const sqfcs::SweepAxis ax1 = parse_axis_spec(axis1_spec);
    std::optional<sqfcs::SweepAxis> ax2;
    if (!axis2_spec.empty()) ax2 = parse_axis_spec(axis2_spec);
    const auto rows = sqfcs::sweep(o.params(), ax1, ax2);
    sqfcs::write_sweep_csv(rows, out.get());
    for (const auto& r : rows)
        if (!std::isnan(r.fa) && r.fa < 2.0 - sqfcs::kTurVerifySlack)
            return 1;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "sqfcs — full counting statistics of boson transport through "
        "squeezed reservoirs"};
    app.require_subcommand(1);

    CommonOpts oc, osw, ofg, ogc, oft, osim, otur;

    auto* c_cum = app.add_subcommand(
        "cumulants", "cumulants, scaled ratios, Fano factor and affinity");
    add_param_flags(c_cum, oc);
    int order = 4;
    bool paper_only = false;
    c_cum->add_option("--order", order, "highest cumulant order (1..12)");
    c_cum->add_flag("--paper-convention", paper_only,
                    "emit only closed-form-convention cumulant columns");

    auto* c_sweep =
        app.add_subcommand("sweep", "evaluate cumulant rows over a grid");
    add_param_flags(c_sweep, osw);
    std::string sw_axis1, sw_axis2;
    c_sweep->add_option("--axis1", sw_axis1, "axis spec key=lo:hi:count")
        ->required();
    c_sweep->add_option("--axis2", sw_axis2, "optional second axis");

    auto* c_fig = app.add_subcommand("figures", "emit figure data as CSV");
    add_param_flags(c_fig, ofg);
    std::string fig_id;
    c_fig->add_option("--id", fig_id, "figure id: 1b, 1cd, 2, 3, 4, 5")
        ->required();

    auto* c_gc = app.add_subcommand(
        "verify-gc", "check the fluctuation symmetry S(l) = S(-l-A)");
    add_param_flags(c_gc, ogc);
    double gc_tol = 1e-10;
    c_gc->add_option("--gc-tol", gc_tol, "residual tolerance (default 1e-10)");

    auto* c_ft = app.add_subcommand(
        "verify-ft", "empirical check of P(q)/P(-q) = exp(qA)");
    add_param_flags(c_ft, oft);
    double ft_window = 5.0, ft_tol = 0.05;
    long long ft_windows = 1000000;
    std::uint64_t ft_seed = 1;
    c_ft->add_option("--window", ft_window, "window length (default 5)");
    c_ft->add_option("--n-windows", ft_windows,
                     "number of windows (default 1e6)");
    c_ft->add_option("--seed", ft_seed, "master seed (default 1)");
    c_ft->add_option("--ft-tol", ft_tol,
                     "relative slope tolerance (default 0.05)");

    auto* c_sim = app.add_subcommand(
        "simulate", "stochastic trajectories of the jump process");
    add_param_flags(c_sim, osim);
    double sim_tmax = 1e4;
    int sim_ntraj = 1;
    std::uint64_t sim_seed = 1;
    c_sim->add_option("--t-max", sim_tmax, "horizon (default 1e4)");
    c_sim->add_option("--n-traj", sim_ntraj,
                      "trajectories; >1 emits ensemble cumulant rates");
    c_sim->add_option("--seed", sim_seed, "master seed (default 1)");

    auto* c_tur = app.add_subcommand(
        "tur", "Fano-affinity uncertainty product, single point or grid");
    add_param_flags(c_tur, otur);
    std::string tur_axis1, tur_axis2;
    c_tur->add_option("--axis1", tur_axis1, "axis spec key=lo:hi:count");
    c_tur->add_option("--axis2", tur_axis2, "optional second axis");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (c_cum->parsed()) return run_cumulants(oc, order, paper_only);
        if (c_sweep->parsed()) return run_sweep(osw, sw_axis1, sw_axis2);
        if (c_fig->parsed()) return run_figures(ofg, fig_id);
        if (c_gc->parsed()) return run_verify_gc(ogc, gc_tol);
        if (c_ft->parsed())
            return run_verify_ft(oft, ft_window, ft_windows, ft_seed, ft_tol);
        if (c_sim->parsed()) return run_simulate(osim, sim_tmax, sim_ntraj,
                                                 sim_seed);
        if (c_tur->parsed()) return run_tur(otur, tur_axis1, tur_axis2);
    } catch (const sqfcs::ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
