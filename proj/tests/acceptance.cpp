// Acceptance suite: one pass/fail line per criterion. Usage:
//
//   sqfcs_acceptance <criterion 1..10 | all> [path-to-cli]
//
// The CLI path is required by criterion 10 (byte-determinism of the
// command-line surface). Exit code is the number of failed criteria.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include "sqfcs/sqfcs.hpp"

using namespace sqfcs;

namespace {

int g_failures = 0;

void report(int n, const std::string& name, bool pass,
            const std::string& detail) {
    std::printf("[%s] criterion %d: %s — %s\n", pass ? "PASS" : "FAIL", n,
                name.c_str(), detail.c_str());
    if (!pass) ++g_failures;
}

ModelParams fig2_params(double x_l = 0.0, double x_r = 0.0) {
    return params_from_occupations(1.0, 0.1, 1.0, 1.0, x_l, x_r);
}

ModelParams random_params(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> ug(0.1, 5.0);
    std::uniform_real_distribution<double> un(0.05, 3.0);
    std::uniform_real_distribution<double> ux(0.0, 2.0);
    return params_from_occupations(un(rng), un(rng), ug(rng), ug(rng),
                                   ux(rng), ux(rng));
}

std::string fmt(double v) { return format_double(v); }

// --- criterion 1: fluctuation symmetry on the reference curves -------------

void criterion_1() {
    ModelParams p;
    p.omega0 = 0.5;
    p.left.temperature = 0.7;
    p.right.temperature = 0.4;
    double worst = 0.0;
    for (const auto& [xl, xr] :
         std::vector<std::pair<double, double>>{{0.0, 0.0}, {1.0, 0.5}}) {
        p.left.squeeze = xl;
        p.right.squeeze = xr;
        worst = std::max(
            worst, gc_residual(p, gc_lambda_grid(affinity(p).value, 101)));
    }
    report(1, "gc-symmetry", worst <= 1e-10,
           "max residual " + fmt(worst) + " over 101-point grids, tol 1e-10");
}

// --- criterion 2: equal-temperature affinity map ---------------------------

void criterion_2() {
    ModelParams p;
    p.omega0 = 0.5;
    p.left.temperature = 0.7;
    p.right.temperature = 0.7;
    const int n = 101;
    std::vector<std::vector<double>> a(n, std::vector<double>(n));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            p.left.squeeze = 2.0 * i / (n - 1);
            p.right.squeeze = 2.0 * k / (n - 1);
            a[i][k] = affinity(p).value;
        }
    double diag = 0.0, asym = 0.0, min_off = 1e300;
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            if (i == k)
                diag = std::max(diag, std::abs(a[i][k]));
            else
                min_off = std::min(min_off, std::abs(a[i][k]));
            asym = std::max(asym, std::abs(a[i][k] + a[k][i]));
        }
    const bool pass = diag <= 1e-14 && min_off > 0.0 && asym <= 1e-14;
    report(2, "equal-temperature-affinity", pass,
           "diag max " + fmt(diag) + ", min off-diagonal " + fmt(min_off) +
               ", antisymmetry defect " + fmt(asym));
}

// --- criterion 3: closed forms vs jet engine --------------------------------

void criterion_3() {
    std::mt19937_64 rng(12345);
    double w1 = 0.0, w2 = 0.0, w3 = 0.0;
    for (int i = 0; i < 200; ++i) {
        const ModelParams p = random_params(rng);
        const CumulantReport rep = cumulants(p, 2);
        const double flux = closed_flux(p);
        const double noise = closed_noise(p);
        w1 = std::max(w1, std::abs(rep.paper(1) - flux) /
                              std::max(1.0, std::abs(flux)));
        w2 = std::max(w2, std::abs(rep.paper(2) - noise) /
                              std::max(1.0, std::abs(noise)));
        const AdjudicatedValue sk = closed_skewness(
            unsqueezed(p), SkewnessVariant::symmetric_squeeze);
        w3 = std::max(w3, std::abs(sk.value - sk.jet_reference) /
                              std::max(1.0, std::abs(sk.jet_reference)));
    }
    const bool pass = w1 <= 1e-9 && w2 <= 1e-9 && w3 <= 1e-9;
    report(3, "closed-form-agreement", pass,
           "200 random sets, worst rel: flux " + fmt(w1) + ", noise " +
               fmt(w2) + ", unsqueezed skewness " + fmt(w3) + ", tol 1e-9");
}

// --- criterion 4: odd-cumulant squeezing independence (adjudicated) ---------

void criterion_4() {
    const CumulantReport base = cumulants(fig2_params(), 11);
    bool pass = true;
    std::ostringstream detail;
    for (int n : {1, 3, 5, 7, 9, 11}) {
        double worst = 0.0;
        for (double x : {0.2, 0.5, 1.0}) {
            const CumulantReport rep = cumulants(fig2_params(x, x), 11);
            const double dev = std::abs(rep.j(n) - base.j(n)) /
                               std::max(1.0, std::abs(base.j(n)));
            worst = std::max(worst, dev);
        }
        if (worst > 1e-9) pass = false;
        detail << "n=" << n << ": " << fmt(worst) << "  ";
    }
    report(4, "odd-cumulant-independence", pass,
           "rel deviation of j(x,x) from j(0,0), tol 1e-9 — " + detail.str() +
               (pass ? ""
                     : "(holds only for n = 1; see errata entry "
                       "odd-independence)"));
}

// --- criterion 5: even-cumulant enhancement ---------------------------------

void criterion_5() {
    const CumulantReport base = cumulants(fig2_params(), 4);
    double min_c2 = 1e300, min_c4 = 1e300;
    for (int i = 1; i <= 51; ++i)
        for (int k = 1; k <= 51; ++k) {
            const double xl = 2.0 * i / 51.0;
            const double xr = 2.0 * k / 51.0;
            const CumulantReport rep = cumulants(fig2_params(xl, xr), 4);
            min_c2 = std::min(min_c2, rep.j(2) / base.j(2));
            min_c4 = std::min(min_c4, rep.j(4) / base.j(4));
        }
    const bool pass = min_c2 > 1.0 && min_c4 > 1.0;
    report(5, "even-cumulant-enhancement", pass,
           "51x51 grid on (0,2]^2: min C2 " + fmt(min_c2) + ", min C4 " +
               fmt(min_c4) + ", required > 1");
}

// --- criterion 6: flux switching point --------------------------------------

void criterion_6() {
    std::mt19937_64 rng(777);
    double worst = 0.0;
    int accepted = 0;
    while (accepted < 20) {
        ModelParams p = random_params(rng);
        const auto x_closed = switching_point(p, Side::left);
        if (!x_closed || *x_closed <= 1e-3) continue;
        ++accepted;
        const double x_num =
            find_flux_zero(p, Side::left, 0.0, *x_closed + 1.0);
        worst = std::max(worst, std::abs(x_num - *x_closed));
    }

    const ModelParams named = fig2_params(0.0, 1.0);
    const auto x_named = switching_point(named, Side::left);
    const double x_named_num = find_flux_zero(named, Side::left, 0.0, 3.0);
    const bool named_ok =
        x_named && std::abs(x_named_num - *x_named) <= 1e-8 &&
        std::abs(*x_named - 0.4833871013193724) <= 1e-8;

    const bool pass = worst <= 1e-8 && named_ok;
    report(6, "flux-switching", pass,
           "20 random switch cases, worst |root - closed| " + fmt(worst) +
               "; named case x* = " + fmt(x_named ? *x_named : -1.0) +
               " (0.5 acosh(1.2 cosh 2 / 3))");
}

// --- criterion 7: saturation values and parity ------------------------------

void criterion_7() {
    const ModelParams p = fig2_params();
    const SaturationLimits sat = saturation_limits(p, Side::left);

    double worst_rel = 0.0;
    {
        const auto at = [&](double x) {
            ModelParams q = p;
            q.left.squeeze = x;
            return cumulants(q, 4);
        };
        const CumulantReport r8 = at(8.0);
        const CumulantReport r10 = at(10.0);
        for (int n = 1; n <= 4; ++n)
            worst_rel = std::max(
                worst_rel, std::abs(r8.paper(n) - r10.paper(n)) /
                               std::abs(r10.paper(n)));
    }
    const bool values_ok = std::abs(sat.derived_odd - 1.0) <= 1e-6 &&
                           std::abs(sat.derived_even - 1.2) <= 1e-6;
    const bool parity_recorded = sat.odd_matches_paper_even &&
                                 sat.even_matches_paper_odd &&
                                 !sat.odd_matches_paper_odd;
    bool errata_ok = false;
    for (const auto& e : errata_report(p))
        if (e.id == "saturation-parity" && !e.agrees) errata_ok = true;

    const bool pass =
        worst_rel <= 1e-6 && values_ok && parity_recorded && errata_ok;
    report(7, "saturation", pass,
           "orders 1-4 at x=8 vs x=10 worst rel " + fmt(worst_rel) +
               "; derived odd " + fmt(sat.derived_odd) + " even " +
               fmt(sat.derived_even) +
               "; parity transposition recorded in errata: " +
               (errata_ok ? "yes" : "no"));
}

// --- criterion 8: uncertainty product ---------------------------------------

void criterion_8() {
    double min_fa = 1e300;
    const auto scan_grid = [&](double n_l, double n_r) {
        for (int i = 0; i <= 100; ++i)
            for (int k = 0; k <= 100; ++k) {
                const ModelParams p = params_from_occupations(
                    n_l, n_r, 1, 1, 2.0 * i / 100.0, 2.0 * k / 100.0);
                const TurProduct t = tur_product(p);
                if (!t.zero_flux) min_fa = std::min(min_fa, t.product);
            }
    };
    scan_grid(1.0, 0.1);
    for (double n_l : {0.4, 0.6, 0.8, 1.0}) scan_grid(n_l, 0.3);

    std::mt19937_64 rng(2468);
    for (int i = 0; i < 500; ++i) {
        const TurProduct t = tur_product(random_params(rng));
        if (!t.zero_flux) min_fa = std::min(min_fa, t.product);
    }

    const double spot = tur_product(fig2_params()).product;
    const bool spot_ok = std::abs(spot - 2.288460024047954) <= 1e-6;
    const bool pass = min_fa >= 2.0 - 1e-9 && spot_ok;
    report(8, "tur-robustness", pass,
           "min FA " + fmt(min_fa) + " over figure grids + 500 random draws "
           "(bound 2 - 1e-9); spot FA " +
               fmt(spot) + " vs 2.288460024047954");
}

// --- criterion 9: stochastic oracle -----------------------------------------

void criterion_9() {
    const ModelParams p = fig2_params();
    const CumulantReport rep = cumulants(p, 2);

    const EmpiricalCumulants e = ensemble_cumulants(p, 400, 1e4, 20240817);
    const bool k1_ok = std::abs(e.rate[0] - rep.j(1)) <= 3.0 * e.std_error[0];
    const bool k2_ok = std::abs(e.rate[1] - rep.j(2)) <= 3.0 * e.std_error[1];

    const FtHistogram h = ft_histogram(p, 5.0, 1000000, 424242);
    const double a = h.model_affinity;
    const bool ft_ok =
        h.sufficient && std::abs(h.slope - a) <= 0.05 * std::abs(a);

    const bool pass = k1_ok && k2_ok && ft_ok;
    report(9, "stochastic-oracle", pass,
           "k1 " + fmt(e.rate[0]) + "±" + fmt(e.std_error[0]) + " vs " +
               fmt(rep.j(1)) + "; k2 " + fmt(e.rate[1]) + "±" +
               fmt(e.std_error[1]) + " vs " + fmt(rep.j(2)) +
               " (canonical, not " + fmt(rep.paper(2)) + "); FT slope " +
               fmt(h.slope) + " vs A " + fmt(a) +
               (ft_ok ? ""
                      : " (exact window-5 slope is 1.4426: the 5-unit window "
                        "is not in the asymptotic regime, bias ~ 1/window)"));
}

// --- criterion 10: CLI byte determinism --------------------------------------

int run_cli(const std::string& cmd) {
    const int status = std::system(cmd.c_str());
    if (status == -1) return -1;
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void criterion_10(const std::string& cli) {
    if (cli.empty()) {
        report(10, "cli-determinism", false,
               "path to the sqfcs binary not provided");
        return;
    }
    namespace fs = std::filesystem;
    const fs::path dir =
        fs::temp_directory_path() /
        ("sqfcs_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(dir);

    const std::vector<std::pair<std::string, std::string>> commands = {
        {"cumulants",
         "cumulants --occ-l 1 --occ-r 0.1 --x-l 0.5 --x-r 0.2 --order 6"},
        {"sweep",
         "sweep --occ-l 1 --occ-r 0.1 --axis1 x_l=0:2:11 --axis2 x_r=0:2:7"},
        {"figures", "figures --id 1cd --temp-l 0.7 --temp-r 0.4"},
        {"verify-gc", "verify-gc --temp-l 0.7 --temp-r 0.4 --omega0 0.5"},
        {"verify-ft",
         "verify-ft --occ-l 1 --occ-r 0.1 --window 30 --n-windows 150000 "
         "--seed 7 --ft-tol 0.08"},
        {"simulate",
         "simulate --occ-l 1 --occ-r 0.1 --t-max 2000 --n-traj 8 --seed 5"},
        {"tur", "tur --occ-l 1 --occ-r 0.1 --axis1 x_l=0:2:5"},
    };

    bool pass = true;
    std::ostringstream detail;
    for (const auto& [name, args] : commands) {
        std::array<std::string, 2> captured;
        std::array<int, 2> codes{};
        for (int run = 0; run < 2; ++run) {
            const fs::path out =
                dir / (name + "_" + std::to_string(run) + ".out");
            const fs::path err =
                dir / (name + "_" + std::to_string(run) + ".err");
            codes[run] = run_cli("'" + cli + "' " + args + " > '" +
                                 out.string() + "' 2> '" + err.string() +
                                 "'");
            captured[run] = slurp(out) + "\x1e" + slurp(err);
        }
        if (codes[0] != 0 || codes[1] != 0 || captured[0] != captured[1]) {
            pass = false;
            detail << name << " (exit " << codes[0] << "/" << codes[1]
                   << (captured[0] != captured[1] ? ", bytes differ" : "")
                   << ")  ";
        }
    }
    fs::remove_all(dir);
    report(10, "cli-determinism", pass,
           pass ? "7 subcommands, two runs each, byte-identical output"
                : "mismatch: " + detail.str());
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr,
                     "usage: %s <criterion 1..10 | all> [path-to-cli]\n",
                     argv[0]);
        return 2;
    }
    const std::string which = argv[1];
    const std::string cli = argc > 2 ? argv[2] : "";
    const auto want = [&](int n) {
        return which == "all" || which == std::to_string(n);
    };

    if (want(1)) criterion_1();
    if (want(2)) criterion_2();
    if (want(3)) criterion_3();
    if (want(4)) criterion_4();
    if (want(5)) criterion_5();
    if (want(6)) criterion_6();
    if (want(7)) criterion_7();
    if (want(8)) criterion_8();
    if (want(9)) criterion_9();
    if (want(10)) criterion_10(cli);

    return g_failures;
}
