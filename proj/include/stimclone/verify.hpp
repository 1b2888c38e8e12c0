#pragma once

// Named verification suites shared by the command-line front end and the
// test harness.  Each suite runs a documented set of invariant checks at
// fixed sizes and tolerances and reports one record per check:
//   { check, max_deviation, tolerance, pass }.
//
// Suite selectors: schwinger, lambda-osc, vpair, ladder, universality, bh,
// pdc-limit, and "all" for the concatenation.

#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "stimclone/analysis.hpp"
#include "stimclone/fock.hpp"
#include "stimclone/ladder.hpp"
#include "stimclone/lambda_system.hpp"
#include "stimclone/oscillator.hpp"
#include "stimclone/serialize.hpp"
#include "stimclone/tensor.hpp"
#include "stimclone/v_system.hpp"

namespace stimclone::verify {

using Complex = std::complex<double>;

struct CheckReport {
    std::string check;
    double max_deviation = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

inline bool all_pass(const std::vector<CheckReport>& reports) {
    for (const auto& r : reports)
        if (!r.pass) return false;
    return true;
}

inline ser::Json to_json(const CheckReport& report) {
    ser::Object fields;
    fields["check"] = report.check;
    fields["max_deviation"] = report.max_deviation;
    fields["tolerance"] = report.tolerance;
    fields["pass"] = report.pass;
    return fields;
}

inline ser::Json to_json(const std::vector<CheckReport>& reports) {
    ser::Array items;
    items.reserve(reports.size());
    for (const auto& r : reports) items.push_back(to_json(r));
    return items;
}

namespace detail {

inline CheckReport bounded(std::string name, double deviation, double tolerance) {
    CheckReport report;
    report.check = std::move(name);
    report.max_deviation = deviation;
    report.tolerance = tolerance;
    report.pass = deviation < tolerance;
    return report;
}

// Polynomial propagation keeps the grid fast; its per-step truncation budget
// sits far below every tolerance used here.
inline propagate::EvolveOptions series_only() {
    propagate::EvolveOptions options;
    options.dense_threshold = 0;
    return options;
}

// Haar-uniform polarization, reproducible from the caller's generator.
inline analysis::Polarization haar_polarization(std::mt19937& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Complex alpha(gauss(rng), gauss(rng));
    Complex beta(gauss(rng), gauss(rng));
    const double scale = std::sqrt(std::norm(alpha) + std::norm(beta));
    return {alpha / scale, beta / scale};
}

} // namespace detail

// ---------------------------------------------------------------------------
// schwinger: collective transfer operators act on shared-occupancy states
// with the closed-form square-root factors, for every level split at up to
// four emitters.
// ---------------------------------------------------------------------------
inline std::vector<CheckReport> schwinger_suite() {
    double worst = 0.0;
    for (int atoms = 1; atoms <= 4; ++atoms)
        for (int i = 0; i <= atoms; ++i)
            for (int j = 0; i + j <= atoms; ++j) {
                const auto report = lambda::verify_schwinger_action(atoms, i, j, atoms - i - j);
                worst = std::max(worst, report.max_deviation);
            }
    return {detail::bounded(
        "collective transfers act with closed-form factors on shared-occupancy states (up to 4 emitters)",
        worst, 1e-12)};
}

// ---------------------------------------------------------------------------
// lambda-osc: evolving the three-level emitters directly and mapping to the
// five-oscillator picture equals evolving the mapped state, for N <= 3,
// m <= 3, four times per case.
// ---------------------------------------------------------------------------
inline std::vector<CheckReport> lambda_oscillator_suite() {
    const double gamma = 1.0;
    const auto series = detail::series_only();
    double worst = 0.0;
    for (int atoms = 1; atoms <= 3; ++atoms) {
        for (int m = 0; m <= 3; ++m) {
            const int cap = m + atoms;
            const auto h_atomic = lambda::build_lambda_hamiltonian(atoms, gamma, cap);
            const auto psi0 = lambda::lambda_initial_state(atoms, m, cap);
            const auto target = osc::singlet_basis(atoms, m);
            const fock::Propagator osc_prop(osc::build_singlet_on(target, gamma));
            const auto mapped0 = lambda::map_to_oscillator(psi0, target);
            for (const double t : {0.1, 0.5, 1.0, 2.0}) {
                const auto mapped = lambda::map_to_oscillator(
                    tensor::evolve(h_atomic, psi0, t, series), target);
                const auto direct = osc_prop.apply(mapped0, t);
                worst = std::max(worst,
                                 (mapped.amplitudes - direct.amplitudes).cwiseAbs().maxCoeff());
            }
        }
    }
    return {detail::bounded(
        "emitter-level evolution mapped to the oscillator picture matches direct oscillator evolution (N<=3, m<=3)",
        worst, 1e-10)};
}

// ---------------------------------------------------------------------------
// vpair: the two-excited-level pair construction. Checks the substitution
// dictionary commutes with evolution (<=2 pairs, m<=2), the one-pair closed
// form, and the absence of leakage out of the antisymmetric pair sector.
// ---------------------------------------------------------------------------
inline std::vector<CheckReport> vpair_suite() {
    const double gamma = 1.0;
    const auto series = detail::series_only();
    std::vector<CheckReport> reports;

    double worst_map = 0.0;
    double worst_leak = 0.0;
    for (const int pairs : {1, 2}) {
        for (int m = 0; m <= 2; ++m) {
            const int cap = m + pairs;
            const auto h_v = vsys::build_v_hamiltonian(2 * pairs, gamma, cap);
            const auto h_lambda = lambda::build_lambda_hamiltonian(pairs, gamma, cap);
            const auto psi0 = vsys::singlet_initial_state(pairs, m, cap);
            const auto mapped0 = vsys::pair_substitution_map(psi0, pairs);
            for (const double t : {0.3, 0.8, 1.6}) {
                const auto evolved = tensor::evolve(h_v, psi0, t, series);
                const auto mapped_after = vsys::pair_substitution_map(evolved, pairs);
                const auto evolved_after = tensor::evolve(h_lambda, mapped0, t, series);
                worst_map = std::max(
                    worst_map,
                    (mapped_after.amplitudes - evolved_after.amplitudes).cwiseAbs().maxCoeff());
                worst_leak = std::max(worst_leak, vsys::pair_sector_deficit(evolved, pairs));
            }
        }
    }
    reports.push_back(detail::bounded(
        "pair-substitution dictionary commutes with evolution (<=2 pairs, m<=2)", worst_map,
        1e-10));
    reports.push_back(detail::bounded("no leakage out of the antisymmetric pair sector",
                                      worst_leak, 1e-12));

    // One pair, one seed photon: closed-form cosine/sine amplitudes.
    {
        const int cap = 2;
        const double t = 0.7;
        const auto evolved = tensor::evolve(vsys::build_v_hamiltonian(2, gamma, cap),
                                            vsys::singlet_initial_state(1, 1, cap), t, series);
        const auto mapped = vsys::pair_substitution_map(evolved, 1);
        const auto layout = lambda::lambda_layout(1, cap);
        const auto amp = [&](lambda::AtomLevel level, int n1, int n2) {
            tensor::TensorKet ket;
            ket.levels = {static_cast<int>(level)};
            ket.n1 = n1;
            ket.n2 = n2;
            return mapped.amplitudes[tensor::encode(layout, ket)];
        };
        const double phase = std::sqrt(3.0) * gamma * t;
        double worst = std::abs(amp(lambda::AtomLevel::e, 1, 0) - Complex(std::cos(phase), 0.0));
        worst = std::max(worst,
                         std::abs(amp(lambda::AtomLevel::g1, 2, 0) -
                                  Complex(0.0, -std::sqrt(2.0 / 3.0) * std::sin(phase))));
        worst = std::max(worst,
                         std::abs(amp(lambda::AtomLevel::g2, 1, 1) -
                                  Complex(0.0, -std::sqrt(1.0 / 3.0) * std::sin(phase))));
        reports.push_back(detail::bounded(
            "one pair with one seed photon follows the closed-form cosine/sine amplitudes",
            worst, 1e-12));
    }
    return reports;
}

// ---------------------------------------------------------------------------
// ladder: the emission-number states are orthonormal, the Hamiltonian is
// tridiagonal across them with the square-root coefficients, and no component
// escapes the adjacent rungs (N, m <= 5).  The rung builder is injectable so
// a deliberately corrupted construction is caught.
// ---------------------------------------------------------------------------
using RungBuilder = std::function<fock::StateVector(const fock::BasisPtr&, int)>;

inline std::vector<CheckReport> ladder_suite(const RungBuilder& builder = {}) {
    const RungBuilder build = builder ? builder : [](const fock::BasisPtr& basis, int l) {
        return ladder::construct_F_l(basis, l);
    };
    const double gamma = 1.0;
    double worst_ortho = 0.0;
    double worst_sandwich = 0.0;
    double worst_closure = 0.0;
    for (int N = 1; N <= 5; ++N) {
        for (int m = 1; m <= 5; ++m) {
            const auto basis = osc::singlet_basis(N, m);
            const auto h = osc::build_singlet_on(basis, gamma);
            std::vector<fock::StateVector> rungs;
            rungs.reserve(static_cast<std::size_t>(N) + 1);
            for (int l = 0; l <= N; ++l) rungs.push_back(build(basis, l));

            const Eigen::MatrixXd expected = ladder::effective_hamiltonian(N, m, gamma);
            for (int l = 0; l <= N; ++l) {
                for (int lp = 0; lp <= N; ++lp) {
                    const Complex inner =
                        rungs[static_cast<std::size_t>(lp)].amplitudes.dot(
                            rungs[static_cast<std::size_t>(l)].amplitudes);
                    worst_ortho = std::max(
                        worst_ortho, std::abs(inner - Complex(l == lp ? 1.0 : 0.0, 0.0)));
                }
                const Eigen::VectorXcd image =
                    h.dense() * rungs[static_cast<std::size_t>(l)].amplitudes;
                Eigen::VectorXcd residual = image;
                for (int lp = 0; lp <= N; ++lp) {
                    const Complex coeff =
                        rungs[static_cast<std::size_t>(lp)].amplitudes.dot(image);
                    worst_sandwich =
                        std::max(worst_sandwich, std::abs(coeff - Complex(expected(lp, l), 0.0)));
                    if (std::abs(lp - l) == 1)
                        residual -= coeff * rungs[static_cast<std::size_t>(lp)].amplitudes;
                }
                worst_closure = std::max(worst_closure, residual.norm());
            }
        }
    }
    return {
        detail::bounded("emission-number states are orthonormal (N, m <= 5)", worst_ortho, 1e-12),
        detail::bounded(
            "Hamiltonian sandwich across rungs matches the square-root recursion coefficients",
            worst_sandwich, 1e-12),
        detail::bounded("the Hamiltonian image of a rung stays within the adjacent rungs",
                        worst_closure, 1e-12),
    };
}

// ---------------------------------------------------------------------------
// universality: cloning statistics are independent of the input polarization
// (20 Haar-random samples across N <= 2, m = 1).
// ---------------------------------------------------------------------------
inline std::vector<CheckReport> universality_suite(unsigned seed = 2026u) {
    std::mt19937 rng(seed);
    const double gamma = 1.0, t = 0.7;
    double worst = 0.0;
    for (int s = 0; s < 10; ++s) {
        worst = std::max(worst,
                         analysis::universality_check(1, 1, gamma,
                                                      detail::haar_polarization(rng), t)
                             .max_deviation);
        worst = std::max(worst,
                         analysis::universality_check(2, 1, gamma,
                                                      detail::haar_polarization(rng), t)
                             .max_deviation);
    }
    return {detail::bounded(
        "cloning statistics match the reference polarization for 20 Haar-random inputs (N<=2, m=1)",
        worst, 1e-10)};
}

// ---------------------------------------------------------------------------
// bh: the one-copy cloner, rewritten as two clone qubits plus an ancilla, is
// the universal cloning machine output.
// ---------------------------------------------------------------------------
inline std::vector<CheckReport> machine_equivalence_suite() {
    const auto report = analysis::buzek_hillery_equivalence();
    std::vector<CheckReport> reports;
    reports.push_back(detail::bounded(
        "mapped one-copy output overlaps the universal cloning machine state at unit magnitude",
        std::abs(report.overlap - 1.0), 1e-12));
    reports.push_back(detail::bounded(
        "both clone qubits reach fidelity 5/6",
        std::max(std::abs(report.clone_fidelity_first - 5.0 / 6.0),
                 std::abs(report.clone_fidelity_second - 5.0 / 6.0)),
        1e-12));
    reports.push_back(detail::bounded(
        "the ancilla qubit carries the 2/3-1/3 mixture",
        std::max(std::abs(report.ancilla_down_weight - 2.0 / 3.0),
                 std::abs(report.ancilla_up_weight - 1.0 / 3.0)),
        1e-12));
    return reports;
}

// ---------------------------------------------------------------------------
// pdc-limit: at fixed effective coupling, the quantized-pump emitted-pair
// distribution approaches the classical-pump one as the pump grows through
// N in {4, 8, 16, 32}; the deviation must shrink strictly.
// ---------------------------------------------------------------------------
inline std::vector<CheckReport> pdc_limit_suite() {
    const auto report = osc::pdc_limit_convergence({4, 8, 16, 32}, 1, 1.0, 0.3, 2);
    double worst_step = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; k < report.deviations.size(); ++k)
        worst_step = std::max(worst_step, report.deviations[k] - report.deviations[k - 1]);
    std::vector<CheckReport> reports;
    CheckReport monotone;
    monotone.check =
        "quantized-pump deviation from the classical pump strictly decreases along N in {4,8,16,32}";
    monotone.max_deviation = worst_step;
    monotone.tolerance = 0.0;
    monotone.pass = report.strictly_decreasing;
    reports.push_back(monotone);
    reports.push_back(detail::bounded(
        "deviation at the largest pump sits below the deviation at the smallest",
        report.deviations.back(), report.deviations.front()));
    return reports;
}

// ---------------------------------------------------------------------------
// Dispatcher.
// ---------------------------------------------------------------------------
inline std::vector<CheckReport> run_suites(const std::string& selector, unsigned seed = 2026u) {
    if (selector == "schwinger") return schwinger_suite();
    if (selector == "lambda-osc") return lambda_oscillator_suite();
    if (selector == "vpair") return vpair_suite();
    if (selector == "ladder") return ladder_suite();
    if (selector == "universality") return universality_suite(seed);
    if (selector == "bh") return machine_equivalence_suite();
    if (selector == "pdc-limit") return pdc_limit_suite();
    if (selector == "all") {
        std::vector<CheckReport> reports;
        for (const char* name :
             {"schwinger", "lambda-osc", "vpair", "ladder", "universality", "bh", "pdc-limit"}) {
            auto part = run_suites(name, seed);
            reports.insert(reports.end(), part.begin(), part.end());
        }
        return reports;
    }
    throw std::invalid_argument("run_suites: unknown suite '" + selector + "'");
}

} // namespace stimclone::verify
