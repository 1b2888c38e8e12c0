#pragma once

// Cloning figures of merit for five-mode oscillator states: post-selection on
// the number of de-excited emitters, photon-sector density matrices, the
// relative-frequency and single-particle fidelities, polarization
// universality, and the correspondence of the one-copy cloner with the
// Buzek-Hillery universal cloning machine.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "stimclone/combinatorics.hpp"
#include "stimclone/fock.hpp"
#include "stimclone/ladder.hpp"
#include "stimclone/oscillator.hpp"

namespace stimclone::analysis {

using Complex = std::complex<double>;

// ---------------------------------------------------------------------------
// Polarization: a normalized superposition alpha * mode1 + beta * mode2.
// ---------------------------------------------------------------------------
struct Polarization {
    Complex alpha{1.0, 0.0};
    Complex beta{0.0, 0.0};

    void validate(double tolerance = 1e-12) const {
        const double power = std::norm(alpha) + std::norm(beta);
        if (std::abs(power - 1.0) > tolerance)
            throw std::invalid_argument("Polarization: |alpha|^2 + |beta|^2 = " +
                                        std::to_string(power) + ", expected 1");
    }

    static Polarization horizontal() { return {Complex(1.0, 0.0), Complex(0.0, 0.0)}; }

    // The orthogonal polarization (-conj(beta), conj(alpha)).
    Polarization orthogonal() const { return {-std::conj(beta), std::conj(alpha)}; }
};

// ---------------------------------------------------------------------------
// PhotonSectorDensity: a density matrix on the two-mode photon sector with
// fixed total photon number M. Index k means the ket |M - k photons in mode 1,
// k photons in mode 2>.
// ---------------------------------------------------------------------------
struct PhotonSectorDensity {
    int total_photons = 0;
    Eigen::MatrixXcd rho;

    void validate(double tolerance = 1e-12) const {
        const int dim = total_photons + 1;
        if (rho.rows() != dim || rho.cols() != dim)
            throw std::invalid_argument("PhotonSectorDensity: matrix must be " +
                                        std::to_string(dim) + "x" + std::to_string(dim));
        if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > tolerance)
            throw std::invalid_argument("PhotonSectorDensity: matrix is not Hermitian");
        if (std::abs(rho.trace().real() - 1.0) > tolerance ||
            std::abs(rho.trace().imag()) > tolerance)
            throw std::invalid_argument("PhotonSectorDensity: trace is not 1");
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho);
        if (solver.info() != Eigen::Success)
            throw std::runtime_error("PhotonSectorDensity: eigendecomposition failed");
        if (solver.eigenvalues().minCoeff() < -tolerance)
            throw std::invalid_argument("PhotonSectorDensity: negative eigenvalue " +
                                        std::to_string(solver.eigenvalues().minCoeff()));
    }
};

namespace detail {

// Emitter count N of a five-mode basis, read off the b1 + b2 + c equality.
inline int emitter_count(const fock::Basis& basis) {
    for (const auto& q : basis.equalities()) {
        if (q.coefficients == std::vector<int>{0, 0, 1, 1, 1})
            return static_cast<int>(q.value);
    }
    throw std::invalid_argument(
        "emitter_count: basis lacks the emitter-number conservation rule");
}

// Applies (alpha1 a1^dag + alpha2 a2^dag) to a two-mode sector vector indexed
// by the mode-2 occupation; input lives in the sector with `total` photons.
inline Eigen::VectorXcd apply_polarized_creation(const Eigen::VectorXcd& v, int total,
                                                 Complex alpha1, Complex alpha2) {
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(total + 2);
    for (int k = 0; k <= total + 1; ++k) {
        Complex value(0.0, 0.0);
        const int n1 = total + 1 - k;
        if (k <= total && n1 >= 1)
            value += alpha1 * std::sqrt(static_cast<double>(n1)) * v[k];
        if (k >= 1)
            value += alpha2 * std::sqrt(static_cast<double>(k)) * v[k - 1];
        out[k] = value;
    }
    return out;
}

// Unitary on the M-photon sector whose column j is the state with j photons
// in `pol` and M - j in the orthogonal polarization.
inline Eigen::MatrixXcd sector_rotation(int total_photons, const Polarization& pol) {
    const auto perp = pol.orthogonal();
    const int dim = total_photons + 1;
    Eigen::MatrixXcd w(dim, dim);
    for (int j = 0; j <= total_photons; ++j) {
        Eigen::VectorXcd column = Eigen::VectorXcd::Ones(1);
        int held = 0;
        for (int s = 0; s < j; ++s)
            column = apply_polarized_creation(column, held++, pol.alpha, pol.beta);
        for (int s = 0; s < total_photons - j; ++s)
            column = apply_polarized_creation(column, held++, perp.alpha, perp.beta);
        column /= column.norm();
        w.col(j) = column;
    }
    return w;
}

// Reduces a symmetric-qubit density (Dicke basis indexed by the number of
// qubits pointing up) to one qubit: returns the 2x2 matrix in the basis
// (|0>, |1>).
inline Eigen::Matrix2cd reduce_dicke_density(const Eigen::MatrixXcd& sigma, int qubits) {
    Eigen::Matrix2cd red = Eigen::Matrix2cd::Zero();
    const double M = static_cast<double>(qubits);
    for (int n = 0; n <= qubits; ++n) {
        red(1, 1) += (n / M) * sigma(n, n);
        red(0, 0) += ((qubits - n) / M) * sigma(n, n);
        if (n >= 1)
            red(1, 0) += std::sqrt(static_cast<double>(n) * (qubits - n + 1)) / M * sigma(n, n - 1);
        if (n + 1 <= qubits)
            red(0, 1) += std::sqrt(static_cast<double>(qubits - n) * (n + 1)) / M * sigma(n, n + 1);
    }
    return red;
}

} // namespace detail

using detail::emitter_count;

// ---------------------------------------------------------------------------
// post_select: project onto "N - l emitters still excited" and trace out the
// emitter-side modes, leaving the photon-sector density.
// ---------------------------------------------------------------------------
struct PostSelection {
    double probability = 0.0;
    bool empty = true;
    PhotonSectorDensity density;
};

inline PostSelection post_select(const fock::StateVector& state, int emitted) {
    const auto& basis = *state.basis;
    const auto& layout = basis.layout();
    if (layout.labels.size() != 5)
        throw std::invalid_argument("post_select: expected a five-mode basis");
    const int emitters = detail::emitter_count(basis);
    if (emitted < 0 || emitted > emitters)
        throw std::invalid_argument("post_select: emitted count " + std::to_string(emitted) +
                                    " outside [0, " + std::to_string(emitters) + "]");
    const int residual = emitters - emitted;

    // Bucket amplitudes by the traced-out modes (b1, b2); photon index is the
    // mode-2 occupation.
    int total_photons = -1;
    std::map<std::pair<int, int>, std::map<int, Complex>> buckets;
    double probability = 0.0;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const auto& occ = basis.state(i);
        if (occ[4] != residual) continue;
        const Complex amp = state.amplitudes[static_cast<Eigen::Index>(i)];
        probability += std::norm(amp);
        if (amp == Complex(0.0, 0.0)) continue;
        const int photons = occ[0] + occ[1];
        if (total_photons < 0) total_photons = photons;
        if (photons != total_photons)
            throw std::domain_error("post_select: sector mixes total photon numbers " +
                                    std::to_string(total_photons) + " and " +
                                    std::to_string(photons));
        buckets[{occ[2], occ[3]}][occ[1]] += amp;
    }

    PostSelection result;
    result.probability = probability;
    if (probability < 1e-14) return result; // empty sector flag stands

    if (total_photons < 0) total_photons = 0;
    result.empty = false;
    result.density.total_photons = total_photons;
    result.density.rho = Eigen::MatrixXcd::Zero(total_photons + 1, total_photons + 1);
    for (const auto& [modes, column] : buckets) {
        (void)modes;
        for (const auto& [k, amp] : column)
            for (const auto& [kp, ampp] : column)
                result.density.rho(k, kp) += amp * std::conj(ampp);
    }
    result.density.rho /= probability;
    return result;
}

// Convenience: sector probabilities p(l) for l = 0..N.
inline std::vector<double> sector_probabilities(const fock::StateVector& state) {
    const int emitters = detail::emitter_count(*state.basis);
    std::vector<double> p(static_cast<std::size_t>(emitters) + 1, 0.0);
    for (std::size_t i = 0; i < state.basis->size(); ++i) {
        const auto& occ = state.basis->state(i);
        const int emitted = emitters - occ[4];
        p[static_cast<std::size_t>(emitted)] +=
            std::norm(state.amplitudes[static_cast<Eigen::Index>(i)]);
    }
    return p;
}

// ---------------------------------------------------------------------------
// relative_frequency_fidelity: expected fraction of photons found in the
// target polarization.
// ---------------------------------------------------------------------------
inline double relative_frequency_fidelity(const PhotonSectorDensity& density,
                                          const Polarization& pol) {
    pol.validate();
    const int M = density.total_photons;
    if (M == 0) throw std::domain_error("relative_frequency_fidelity: no photons in the sector");
    const auto w = detail::sector_rotation(M, pol);
    double fidelity = 0.0;
    for (int j = 0; j <= M; ++j) {
        const double weight =
            (w.col(j).adjoint() * density.rho * w.col(j)).value().real();
        fidelity += (static_cast<double>(j) / M) * weight;
    }
    return fidelity;
}

// ---------------------------------------------------------------------------
// single_particle_fidelity: map the photon sector to the symmetric M-qubit
// space (photon in mode 1 <-> qubit up), reduce to one qubit, and take the
// overlap with the target polarization qubit.
// ---------------------------------------------------------------------------
inline Eigen::Matrix2cd reduced_qubit_density(const PhotonSectorDensity& density) {
    const int M = density.total_photons;
    if (M == 0) throw std::domain_error("reduced_qubit_density: no photons in the sector");
    // Flip from "index = photons in mode 2" to "index = qubits up".
    Eigen::MatrixXcd sigma(M + 1, M + 1);
    for (int n = 0; n <= M; ++n)
        for (int np = 0; np <= M; ++np) sigma(n, np) = density.rho(M - n, M - np);
    return detail::reduce_dicke_density(sigma, M);
}

inline double single_particle_fidelity(const PhotonSectorDensity& density,
                                       const Polarization& pol) {
    pol.validate();
    const auto red = reduced_qubit_density(density);
    Eigen::Vector2cd target;
    target << pol.beta, pol.alpha; // |0> carries mode 2, |1> carries mode 1
    return (target.adjoint() * red * target).value().real();
}

// ---------------------------------------------------------------------------
// universality: the cloner must treat every input polarization identically.
// ---------------------------------------------------------------------------

// Seed state with the given photons all in `pol` and every emitter excited,
// on a basis over the full polarization sector.
inline fock::StateVector rotated_seed(const fock::BasisPtr& basis, int m,
                                      const Polarization& pol) {
    pol.validate();
    const int emitters = detail::emitter_count(*basis);
    auto state = fock::zero_state(basis);
    for (int j = 0; j <= m; ++j) {
        const double magnitude = std::sqrt(comb::binomial(m, j));
        const Complex amplitude = magnitude * std::pow(pol.alpha, j) * std::pow(pol.beta, m - j);
        if (amplitude == Complex(0.0, 0.0)) continue;
        const fock::Occupation occ = {j, m - j, 0, 0, emitters};
        const auto index = basis->find(occ);
        if (!index)
            throw std::invalid_argument("rotated_seed: basis lacks the ket " +
                                        fock::occupation_to_string(occ));
        state.amplitudes[*index] = amplitude;
    }
    return state;
}

struct UniversalityReport {
    double max_deviation = 0.0;
    bool passed = false;
};

// Evolves the seed in polarization `pol` and in the reference polarization,
// then compares sector probabilities and fidelities (each measured relative
// to its own input polarization).
inline UniversalityReport universality_check(int emitters, int m, double gamma,
                                             const Polarization& pol, double t,
                                             double tolerance = 1e-10) {
    const auto basis = osc::polarization_complete_basis(emitters, m);
    const auto h = osc::build_singlet_on(basis, gamma);
    const fock::Propagator propagator(h);
    const auto reference_pol = Polarization::horizontal();

    const auto evolved_ref = propagator.apply(rotated_seed(basis, m, reference_pol), t);
    const auto evolved_pol = propagator.apply(rotated_seed(basis, m, pol), t);

    UniversalityReport report;
    for (int l = 0; l <= emitters; ++l) {
        const auto sector_ref = post_select(evolved_ref, l);
        const auto sector_pol = post_select(evolved_pol, l);
        report.max_deviation = std::max(
            report.max_deviation, std::abs(sector_ref.probability - sector_pol.probability));
        if (sector_ref.empty || sector_pol.empty) continue;
        if (sector_ref.density.total_photons == 0) continue;
        const double f_ref = relative_frequency_fidelity(sector_ref.density, reference_pol);
        const double f_pol = relative_frequency_fidelity(sector_pol.density, pol);
        report.max_deviation = std::max(report.max_deviation, std::abs(f_ref - f_pol));
    }
    report.passed = report.max_deviation < tolerance;
    return report;
}

// ---------------------------------------------------------------------------
// Correspondence with the Buzek-Hillery universal cloning machine: the one
// extra emitted photon, together with the emitter-side modes, is exactly the
// two-clones-plus-ancilla output for the seed polarization.
// ---------------------------------------------------------------------------
struct CloningMachineReport {
    bool passed = false;
    double overlap = 0.0;
    double clone_fidelity_first = 0.0;
    double clone_fidelity_second = 0.0;
    double ancilla_down_weight = 0.0;
    double ancilla_up_weight = 0.0;
    double max_deviation = 0.0;
};

namespace detail {

// Partial trace of a pure three-qubit state (index = q1*4 + q2*2 + q3) down
// to the single kept qubit.
inline Eigen::Matrix2cd reduce_three_qubit(const Eigen::VectorXcd& psi, int kept) {
    Eigen::Matrix2cd red = Eigen::Matrix2cd::Zero();
    for (int a = 0; a < 8; ++a) {
        for (int b = 0; b < 8; ++b) {
            const int bits_a[3] = {(a >> 2) & 1, (a >> 1) & 1, a & 1};
            const int bits_b[3] = {(b >> 2) & 1, (b >> 1) & 1, b & 1};
            bool same_elsewhere = true;
            for (int q = 0; q < 3; ++q)
                if (q != kept && bits_a[q] != bits_b[q]) same_elsewhere = false;
            if (!same_elsewhere) continue;
            red(bits_a[kept], bits_b[kept]) += psi[a] * std::conj(psi[b]);
        }
    }
    return red;
}

} // namespace detail

inline CloningMachineReport buzek_hillery_equivalence(double tolerance = 1e-12) {
    // One emitter, one seed photon: the first excited ladder rung.
    const auto f1 = ladder::construct_F_l(osc::singlet_basis(1, 1), 1);
    const auto& basis = *f1.basis;

    // Rewrite as three qubits (clone 1, clone 2, ancilla): photon sector
    // |2,0> -> |11>, |1,1> -> (|01>+|10>)/sqrt(2); a b2 excitation marks the
    // ancilla "down" state, a b1 excitation "up". The fixed convention phase
    // (-1)^(b1 occupation) accompanies the rewrite.
    Eigen::VectorXcd mapped = Eigen::VectorXcd::Zero(8);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const Complex amp = f1.amplitudes[static_cast<Eigen::Index>(i)];
        if (amp == Complex(0.0, 0.0)) continue;
        const auto& occ = basis.state(i);
        const double sign = (occ[2] % 2 == 0) ? 1.0 : -1.0;
        const int ancilla = occ[3] == 1 ? 0 : 1; // b2 -> down(0), b1 -> up(1)
        if (occ[0] == 2 && occ[1] == 0) {
            mapped[1 * 4 + 1 * 2 + ancilla] += sign * amp;
        } else if (occ[0] == 1 && occ[1] == 1) {
            mapped[0 * 4 + 1 * 2 + ancilla] += sign * amp * inv_sqrt2;
            mapped[1 * 4 + 0 * 2 + ancilla] += sign * amp * inv_sqrt2;
        } else {
            throw std::logic_error("buzek_hillery_equivalence: unexpected photon content in " +
                                   fock::occupation_to_string(occ));
        }
    }

    // The universal cloning machine output for a seed qubit |1>:
    // sqrt(2/3) |11>|down> + sqrt(1/3) (|01>+|10>)/sqrt(2) |up>.
    Eigen::VectorXcd machine = Eigen::VectorXcd::Zero(8);
    machine[6] = std::sqrt(2.0 / 3.0);
    machine[3] = std::sqrt(1.0 / 6.0);
    machine[5] = std::sqrt(1.0 / 6.0);

    CloningMachineReport report;
    report.overlap = std::abs(machine.dot(mapped));
    report.max_deviation = std::abs(report.overlap - 1.0);

    const auto clone1 = detail::reduce_three_qubit(mapped, 0);
    const auto clone2 = detail::reduce_three_qubit(mapped, 1);
    const auto ancilla = detail::reduce_three_qubit(mapped, 2);
    report.clone_fidelity_first = clone1(1, 1).real();
    report.clone_fidelity_second = clone2(1, 1).real();
    report.ancilla_down_weight = ancilla(0, 0).real();
    report.ancilla_up_weight = ancilla(1, 1).real();

    report.max_deviation =
        std::max({report.max_deviation, std::abs(report.clone_fidelity_first - 5.0 / 6.0),
                  std::abs(report.clone_fidelity_second - 5.0 / 6.0),
                  std::abs(report.ancilla_down_weight - 2.0 / 3.0),
                  std::abs(report.ancilla_up_weight - 1.0 / 3.0),
                  std::abs(ancilla(0, 1)), std::abs(ancilla(1, 0))});
    report.passed = report.max_deviation < tolerance;
    return report;
}

} // namespace stimclone::analysis
