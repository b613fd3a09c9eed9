// model.hpp — Physical parameters of the two-level boson junction and the
// squeezed Markovian exchange rates derived from them.
//
// Units: hbar = k_B = 1 throughout. Energies and temperatures share a unit,
// rates are 1/time.

#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

namespace sqfcs {

enum class Side { left, right };

/// One harmonic reservoir: coupling strength, thermal state (given either as
/// a temperature or directly as a Bose-Einstein occupation) and squeezing
/// magnitude. When both temperature and occupation are supplied, the
/// occupation wins.
struct ReservoirSpec {
    double gamma = 1.0;                  // coupling strength [1/time], > 0
    std::optional<double> temperature;   // T > 0
    std::optional<double> occupation;    // n > 0, overrides temperature
    double squeeze = 0.0;                // x >= 0
};

/// Full model: site frequency plus the two reservoirs.
struct ModelParams {
    double omega0 = 0.5;  // site frequency [energy], > 0
    ReservoirSpec left;
    ReservoirSpec right;
};

/// Jump rates of the Pauli master equation. alpha is the downward (emission
/// into the reservoir) rate, beta the upward (absorption) rate:
///   alpha_v = Gamma_v (1 + N_v),  beta_v = Gamma_v N_v.
/// bose_* hold the bare Bose occupations n_v, occ_* the squeezed occupation
/// factors N_v = cosh(2x_v)(n_v + 1/2) - 1/2.
struct RateSet {
    double alpha_l, alpha_r;
    double beta_l, beta_r;
    double bose_l, bose_r;
    double occ_l, occ_r;

    double total() const { return alpha_l + alpha_r + beta_l + beta_r; }
};

/// Bose-Einstein occupation 1/(e^{omega0/T} - 1).
inline double bose_occupation(double omega0, double temperature) {
    if (!(omega0 > 0.0))
        throw std::domain_error("bose_occupation: omega0 must be > 0");
    if (!(temperature > 0.0))
        throw std::domain_error("bose_occupation: temperature must be > 0");
    return 1.0 / std::expm1(omega0 / temperature);
}

/// Squeezed occupation factor N = cosh(2x)(n + 1/2) - 1/2. Returns n exactly
/// when cosh(2x) == 1 so that the unsqueezed reduction is bitwise.
inline double squeezed_occupation(double n, double x) {
    if (!(n >= 0.0))
        throw std::domain_error("squeezed_occupation: occupation must be >= 0");
    if (!(x >= 0.0))
        throw std::domain_error("squeezed_occupation: squeeze must be >= 0");
    const double c = std::cosh(2.0 * x);
    if (c == 1.0) return n;
    return c * (n + 0.5) - 0.5;
}

namespace detail {

inline double resolve_occupation(const ReservoirSpec& r, double omega0,
                                 const char* side) {
    using namespace std::string_literals;
    if (r.occupation) {
        if (!(*r.occupation > 0.0))
            throw std::domain_error("reservoir "s + side +
                                    ": occupation must be > 0");
        return *r.occupation;
    }
    if (r.temperature) return bose_occupation(omega0, *r.temperature);
    throw std::invalid_argument("reservoir "s + side +
                                ": needs a temperature or an occupation");
}

inline void validate_reservoir(const ReservoirSpec& r, const char* side) {
    using namespace std::string_literals;
    if (!(r.gamma > 0.0))
        throw std::domain_error("reservoir "s + side + ": gamma must be > 0");
    if (!(r.squeeze >= 0.0))
        throw std::domain_error("reservoir "s + side +
                                ": squeeze must be >= 0");
    if (r.temperature && !(*r.temperature > 0.0))
        throw std::domain_error("reservoir "s + side +
                                ": temperature must be > 0");
}

}  // namespace detail

inline void validate(const ModelParams& p) {
    if (!(p.omega0 > 0.0))
        throw std::domain_error("omega0 must be > 0");
    detail::validate_reservoir(p.left, "L");
    detail::validate_reservoir(p.right, "R");
}

/// Resolved Bose occupations (n_L, n_R) of a parameter set.
inline std::pair<double, double> occupations(const ModelParams& p) {
    validate(p);
    return {detail::resolve_occupation(p.left, p.omega0, "L"),
            detail::resolve_occupation(p.right, p.omega0, "R")};
}

inline RateSet make_rates(const ModelParams& p) {
    const auto [n_l, n_r] = occupations(p);
    RateSet r{};
    r.bose_l = n_l;
    r.bose_r = n_r;
    r.occ_l = squeezed_occupation(n_l, p.left.squeeze);
    r.occ_r = squeezed_occupation(n_r, p.right.squeeze);
    r.alpha_l = p.left.gamma * (1.0 + r.occ_l);
    r.beta_l = p.left.gamma * r.occ_l;
    r.alpha_r = p.right.gamma * (1.0 + r.occ_r);
    r.beta_r = p.right.gamma * r.occ_r;
    return r;
}

/// Convenience builder for occupation-parameterized models.
inline ModelParams params_from_occupations(double n_l, double n_r,
                                           double gamma_l = 1.0,
                                           double gamma_r = 1.0,
                                           double x_l = 0.0, double x_r = 0.0,
                                           double omega0 = 0.5) {
    ModelParams p;
    p.omega0 = omega0;
    p.left = {gamma_l, std::nullopt, n_l, x_l};
    p.right = {gamma_r, std::nullopt, n_r, x_r};
    return p;
}

}  // namespace sqfcs
