// ladder.hpp -- the collective emission ladder of the singlet-coupling model.
//
// Starting from m photons in a1 and a full pump, the dynamics stays inside an
// (N+1)-state ladder |F_0>, |F_1>, ..., |F_N>, where |F_l> collects the states
// with l emitted photon pairs:
//
//   |F_l> = C(m+l+1, l)^(-1/2) sum_{i=0}^{l} (-1)^i sqrt(C(m+l-i, m))
//             |a1 = m+l-i, a2 = i, b1 = i, b2 = l-i, c = N-l>.
//
// The ladder Hamiltonian is real symmetric tridiagonal with off-diagonal
// elements gamma sqrt((l+1)(N-l)(m+l+2)); its amplitudes f_l(t) carry the
// emitted-pair distribution p(l) = |f_l|^2.  The polarization match of the
// l extra photons is the closed-form fidelity
//
//   F(m, l) = (m(m+2) + l(m+1)) / ((m+l)(m+2)),
//
// and for m >> 1 the amplitudes approach the factorized form
// f_l = (-i)^l sqrt(C(N, l)) cos^(N-l)(theta) sin^l(theta), theta = gamma sqrt(m) t.

#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "stimclone/combinatorics.hpp"
#include "stimclone/oscillator.hpp"

namespace stimclone::ladder {

using fock::BasisPtr;
using fock::Complex;
using fock::Occupation;
using fock::StateVector;

// ---------------------------------------------------------------------------
// singlet_sector_params: recover (N, m) from a singlet-sector basis, checking
// that the basis really is one (the ladder formulas assume that frame).
// ---------------------------------------------------------------------------
struct SectorParams {
    int N = 0;
    int m = 0;
};

inline SectorParams singlet_sector_params(const fock::Basis& basis) {
    const auto& eqs = basis.equalities();
    const bool shape_ok = eqs.size() == 3 &&
                          eqs[0].coefficients == std::vector<int>{1, 0, 0, -1, 0} &&
                          eqs[1].coefficients == std::vector<int>{0, 1, -1, 0, 0} && eqs[1].value == 0 &&
                          eqs[2].coefficients == std::vector<int>{0, 0, 1, 1, 1};
    if (!shape_ok)
        throw std::invalid_argument("singlet_sector_params: basis is not a singlet-frame sector");
    return SectorParams{eqs[2].value, eqs[0].value};
}

// ---------------------------------------------------------------------------
// construct_F_l
// ---------------------------------------------------------------------------
inline StateVector construct_F_l(BasisPtr basis, int l) {
    const SectorParams params = singlet_sector_params(*basis);
    const int N = params.N, m = params.m;
    if (l < 0 || l > N)
        throw std::out_of_range("construct_F_l: l = " + std::to_string(l) +
                                " outside the ladder range 0.." + std::to_string(N));
    const double norm = std::sqrt(comb::binomial(m + l + 1, l));
    StateVector state = fock::zero_state(std::move(basis));
    for (int i = 0; i <= l; ++i) {
        const Occupation occ = {m + l - i, i, i, l - i, N - l};
        const auto idx = state.basis->find(occ);
        if (!idx)
            throw std::logic_error("construct_F_l: ladder ket " + fock::occupation_to_string(occ) +
                                   " missing from the sector basis");
        const double amp = ((i % 2 == 0) ? 1.0 : -1.0) * std::sqrt(comb::binomial(m + l - i, m)) / norm;
        state.amplitudes[static_cast<Eigen::Index>(*idx)] = Complex(amp, 0.0);
    }
    return state;
}

inline StateVector construct_F_l(int N, int m, int l) {
    return construct_F_l(osc::singlet_basis(N, m), l);
}

// ---------------------------------------------------------------------------
// effective_hamiltonian: the (N+1)x(N+1) tridiagonal matrix of the coupling
// in the |F_l> ladder.  Diagonal is zero; H(l, l+1) = gamma sqrt((l+1)(N-l)(m+l+2)).
// ---------------------------------------------------------------------------
inline Eigen::MatrixXd effective_hamiltonian(int N, int m, double gamma) {
    if (N < 0 || m < 0) throw std::invalid_argument("effective_hamiltonian: N and m must be non-negative");
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(N + 1, N + 1);
    for (int l = 0; l < N; ++l) {
        const double element =
            gamma * std::sqrt(static_cast<double>(l + 1) * static_cast<double>(N - l) *
                              static_cast<double>(m + l + 2));
        h(l, l + 1) = element;
        h(l + 1, l) = element;
    }
    return h;
}

// ---------------------------------------------------------------------------
// evolve_ladder: amplitudes f_l(t) of exp(-i H_eff t) applied to |F_0>.
// ---------------------------------------------------------------------------
struct LadderCoefficients {
    int N = 0;
    int m = 0;
    double t = 0.0;
    Eigen::VectorXcd f; // f[l], l = 0..N
};

inline LadderCoefficients evolve_ladder(int N, int m, double gamma, double t) {
    const Eigen::MatrixXd h = effective_hamiltonian(N, m, gamma);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("evolve_ladder: eigendecomposition failed");
    Eigen::VectorXcd modal = solver.eigenvectors().row(0).transpose().cast<Complex>();
    for (int k = 0; k <= N; ++k) modal[k] *= std::exp(Complex(0.0, -solver.eigenvalues()[k] * t));
    LadderCoefficients result;
    result.N = N;
    result.m = m;
    result.t = t;
    result.f = solver.eigenvectors().cast<Complex>() * modal;
    return result;
}

// ---------------------------------------------------------------------------
// fidelity_formula: polarization match of the m+l photons after l emissions.
// ---------------------------------------------------------------------------
inline double fidelity_formula(int m, int l) {
    if (m < 1) throw std::domain_error("fidelity_formula: m must be at least 1");
    if (l < 0) throw std::invalid_argument("fidelity_formula: l must be non-negative");
    const double num = static_cast<double>(m) * (m + 2) + static_cast<double>(l) * (m + 1);
    const double den = static_cast<double>(m + l) * (m + 2);
    return num / den;
}

// ---------------------------------------------------------------------------
// large_m_solution: factorized amplitudes valid in the many-input-photon
// regime; exact binomial statistics with mean N sin^2(gamma sqrt(m) t).
// ---------------------------------------------------------------------------
inline LadderCoefficients large_m_solution(int N, int m, double gamma, double t) {
    if (N < 0) throw std::invalid_argument("large_m_solution: N must be non-negative");
    if (m < 1) throw std::invalid_argument("large_m_solution: m must be at least 1");
    const double theta = gamma * std::sqrt(static_cast<double>(m)) * t;
    const double c = std::cos(theta), s = std::sin(theta);
    LadderCoefficients result;
    result.N = N;
    result.m = m;
    result.t = t;
    result.f = Eigen::VectorXcd::Zero(N + 1);
    Complex phase(1.0, 0.0); // (-i)^l
    for (int l = 0; l <= N; ++l) {
        result.f[l] = phase * std::sqrt(comb::binomial(N, l)) * std::pow(c, N - l) * std::pow(s, l);
        phase *= Complex(0.0, -1.0);
    }
    return result;
}

// ---------------------------------------------------------------------------
// clone_number_distribution: p(l) = |f_l|^2, the mean emitted-pair count, and
// (for m >= 1) the per-sector fidelities.
// ---------------------------------------------------------------------------
struct CloneStatistics {
    int N = 0;
    int m = 0;
    double t = 0.0;
    std::vector<double> p;        // p[l]
    std::vector<double> fidelity; // F(m, l); empty when m = 0
    double mean_clones = 0.0;
};

inline CloneStatistics clone_number_distribution(const LadderCoefficients& coefficients) {
    CloneStatistics stats;
    stats.N = coefficients.N;
    stats.m = coefficients.m;
    stats.t = coefficients.t;
    stats.p.resize(static_cast<std::size_t>(coefficients.N) + 1);
    for (int l = 0; l <= coefficients.N; ++l) {
        stats.p[static_cast<std::size_t>(l)] = std::norm(coefficients.f[l]);
        stats.mean_clones += l * stats.p[static_cast<std::size_t>(l)];
    }
    if (coefficients.m >= 1) {
        stats.fidelity.resize(stats.p.size());
        for (int l = 0; l <= coefficients.N; ++l)
            stats.fidelity[static_cast<std::size_t>(l)] = fidelity_formula(coefficients.m, l);
    }
    return stats;
}

// The p(l)-weighted fidelity, the single figure quoted when no emitted-pair
// post-selection is applied.
inline double weighted_average_fidelity(const CloneStatistics& stats) {
    if (stats.fidelity.empty())
        throw std::domain_error("weighted_average_fidelity: fidelities undefined for m = 0");
    double total = 0.0;
    for (std::size_t l = 0; l < stats.p.size(); ++l) total += stats.p[l] * stats.fidelity[l];
    return total;
}

} // namespace stimclone::ladder
