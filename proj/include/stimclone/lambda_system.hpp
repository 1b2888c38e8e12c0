#pragma once

// Direct simulation of N three-level atoms in the Lambda configuration (two
// degenerate ground states g1, g2 below one excited state e) coupled to two
// photon modes: mode 1 drives e <-> g1, mode 2 drives e <-> g2.
//
// The permutation-symmetric atomic sector carries a collective-mode structure:
// counting atoms per level acts exactly like bosonic occupations, which the
// checks here verify operator-by-operator, and `map_to_oscillator` converts
// symmetric states into five-mode oscillator states (photon modes kept,
// ground-state counts becoming the two b-mode occupations, excited count the
// c-mode occupation). The map composes the level-count identification with
// the fixed b-mode relabeling (b1 -> b2, b2 -> -b1), so images land directly
// in the antisymmetric-coupling frame used by the oscillator model; that is
// where the alternating signs of the emission-ladder states originate.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "stimclone/combinatorics.hpp"
#include "stimclone/fock.hpp"
#include "stimclone/tensor.hpp"

namespace stimclone::lambda {

using Complex = std::complex<double>;

enum class AtomLevel : int { g1 = 0, g2 = 1, e = 2 };

inline tensor::TensorLayout lambda_layout(int atoms, int photon_cap) {
    if (photon_cap < 0)
        throw std::invalid_argument("lambda_layout: photon cap must be non-negative");
    tensor::TensorLayout layout{atoms, photon_cap, photon_cap};
    layout.validate();
    return layout;
}

// gamma * (a1 sum_k |e><g1|_k + a2 sum_k |e><g2|_k) + h.c.
inline tensor::SparseMatrix build_lambda_hamiltonian(
    int atoms, double gamma, int photon_cap,
    std::int64_t max_dimension = tensor::default_max_dimension) {
    const auto layout = lambda_layout(atoms, photon_cap);
    const std::vector<tensor::EmissionTerm> terms = {
        {0, static_cast<int>(AtomLevel::g1), static_cast<int>(AtomLevel::e)},
        {1, static_cast<int>(AtomLevel::g2), static_cast<int>(AtomLevel::e)},
    };
    return tensor::build_tensor_hamiltonian(layout, gamma, terms, max_dimension);
}

// |n1 = m, n2 = 0> photons with every atom excited.
inline tensor::TensorState lambda_initial_state(int atoms, int m, int photon_cap) {
    const auto layout = lambda_layout(atoms, photon_cap);
    if (m < 0 || m > photon_cap)
        throw std::invalid_argument("lambda_initial_state: seed photon number outside the cap");
    tensor::TensorKet ket;
    ket.levels.assign(static_cast<std::size_t>(atoms), static_cast<int>(AtomLevel::e));
    ket.n1 = m;
    ket.n2 = 0;
    return tensor::unit_state(layout, ket);
}

namespace detail {

inline std::int64_t atomic_dimension(int atoms) {
    std::int64_t d = 1;
    for (int k = 0; k < atoms; ++k) d *= 3;
    return d;
}

inline void decode_pattern(int atoms, std::int64_t index, std::vector<int>& levels) {
    levels.assign(static_cast<std::size_t>(atoms), 0);
    for (int k = atoms - 1; k >= 0; --k) {
        levels[static_cast<std::size_t>(k)] = static_cast<int>(index % 3);
        index /= 3;
    }
}

inline void count_levels(const std::vector<int>& levels, int& i, int& j, int& k) {
    i = j = k = 0;
    for (int level : levels) {
        if (level == static_cast<int>(AtomLevel::g1)) ++i;
        else if (level == static_cast<int>(AtomLevel::g2)) ++j;
        else ++k;
    }
}

} // namespace detail

// Equal-amplitude superposition of every arrangement with i atoms in g1,
// j in g2, and k excited; amplitude (N! / (i! j! k!))^{-1/2} each.
inline Eigen::VectorXcd symmetric_state(int atoms, int i, int j, int k) {
    if (i < 0 || j < 0 || k < 0)
        throw std::invalid_argument("symmetric_state: negative level count");
    if (i + j + k != atoms)
        throw std::invalid_argument("symmetric_state: counts must sum to the atom number");
    const std::int64_t dim = detail::atomic_dimension(atoms);
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(dim);
    const double amplitude =
        1.0 / std::sqrt(static_cast<double>(comb::multinomial_u64(
                  static_cast<unsigned>(i), static_cast<unsigned>(j), static_cast<unsigned>(k))));
    std::vector<int> levels;
    for (std::int64_t index = 0; index < dim; ++index) {
        detail::decode_pattern(atoms, index, levels);
        int pi = 0, pj = 0, pk = 0;
        detail::count_levels(levels, pi, pj, pk);
        if (pi == i && pj == j && pk == k) out[index] = Complex(amplitude, 0.0);
    }
    return out;
}

// sum_k |to><from|_k on the atomic register alone.
inline Eigen::VectorXcd apply_collective(int atoms, AtomLevel to, AtomLevel from,
                                         const Eigen::VectorXcd& v) {
    const std::int64_t dim = detail::atomic_dimension(atoms);
    if (v.size() != dim)
        throw std::invalid_argument("apply_collective: vector does not match the register size");
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(dim);
    std::vector<int> levels;
    for (std::int64_t index = 0; index < dim; ++index) {
        if (v[index] == Complex(0.0, 0.0)) continue;
        detail::decode_pattern(atoms, index, levels);
        for (int atom = 0; atom < atoms; ++atom) {
            if (levels[static_cast<std::size_t>(atom)] != static_cast<int>(from)) continue;
            levels[static_cast<std::size_t>(atom)] = static_cast<int>(to);
            std::int64_t target = 0;
            for (int a = 0; a < atoms; ++a) target = target * 3 + levels[static_cast<std::size_t>(a)];
            out[target] += v[index];
            levels[static_cast<std::size_t>(atom)] = static_cast<int>(from);
        }
    }
    return out;
}

struct SchwingerReport {
    bool passed = false;
    double max_deviation = 0.0;
};

// Confirms that the four collective level-transfer operators act on the
// symmetric states with exactly the matrix elements of boson ladder-operator
// pairs: lowering e while raising g_r carries sqrt((count_r + 1) * k), the
// reverse carries sqrt(count_r * (k + 1)).
inline SchwingerReport verify_schwinger_action(int atoms, int i, int j, int k,
                                               double tolerance = 1e-12) {
    if (i < 0 || j < 0 || k < 0 || i + j + k != atoms)
        throw std::invalid_argument("verify_schwinger_action: invalid sector counts");
    const auto source = symmetric_state(atoms, i, j, k);

    struct Case {
        AtomLevel to;
        AtomLevel from;
        double factor;
        int ti, tj, tk;
    };
    const std::vector<Case> cases = {
        {AtomLevel::g1, AtomLevel::e, std::sqrt(double(i + 1) * k), i + 1, j, k - 1},
        {AtomLevel::g2, AtomLevel::e, std::sqrt(double(j + 1) * k), i, j + 1, k - 1},
        {AtomLevel::e, AtomLevel::g1, std::sqrt(double(i) * (k + 1)), i - 1, j, k + 1},
        {AtomLevel::e, AtomLevel::g2, std::sqrt(double(j) * (k + 1)), i, j - 1, k + 1},
    };

    SchwingerReport report;
    for (const auto& c : cases) {
        const auto image = apply_collective(atoms, c.to, c.from, source);
        double deviation = 0.0;
        if (c.factor == 0.0) {
            deviation = image.norm();
        } else {
            const Eigen::VectorXcd expected =
                c.factor * symmetric_state(atoms, c.ti, c.tj, c.tk);
            deviation = (image - expected).cwiseAbs().maxCoeff();
        }
        report.max_deviation = std::max(report.max_deviation, deviation);
    }
    report.passed = report.max_deviation <= tolerance;
    return report;
}

// Squared norm of the component outside the permutation-symmetric sector.
inline double symmetric_projection_deficit(const tensor::TensorState& state) {
    const auto& layout = state.layout;
    const std::int64_t photon_block = layout.photon_dimension();
    double symmetric_power = 0.0;
    std::vector<int> levels;
    for (int i = 0; i <= layout.atoms; ++i) {
        for (int j = 0; i + j <= layout.atoms; ++j) {
            const int k = layout.atoms - i - j;
            const auto sym = symmetric_state(layout.atoms, i, j, k);
            for (std::int64_t p = 0; p < photon_block; ++p) {
                Complex c(0.0, 0.0);
                for (std::int64_t a = 0; a < sym.size(); ++a) {
                    if (sym[a] == Complex(0.0, 0.0)) continue;
                    c += std::conj(sym[a]) * state.amplitudes[a * photon_block + p];
                }
                symmetric_power += std::norm(c);
            }
        }
    }
    const double total = state.amplitudes.squaredNorm();
    return total - symmetric_power;
}

// Converts a symmetric-sector state into a five-mode oscillator state on the
// caller's basis. Component on symmetric(i, j, k) (x) |n1, n2> becomes
// amplitude (-1)^j on the ket (n1, n2, b1 = j, b2 = i, c = k).
inline fock::StateVector map_to_oscillator(const tensor::TensorState& state,
                                           const fock::BasisPtr& target,
                                           double deficit_tolerance = 1e-10) {
    const auto& layout = state.layout;
    const double deficit = symmetric_projection_deficit(state);
    if (deficit > deficit_tolerance)
        throw std::domain_error("map_to_oscillator: non-symmetric component with squared norm " +
                                std::to_string(deficit));

    auto out = fock::zero_state(target);
    std::vector<int> levels;
    const std::int64_t photon_block = layout.photon_dimension();
    for (int i = 0; i <= layout.atoms; ++i) {
        for (int j = 0; i + j <= layout.atoms; ++j) {
            const int k = layout.atoms - i - j;
            const auto sym = symmetric_state(layout.atoms, i, j, k);
            const double sign = (j % 2 == 0) ? 1.0 : -1.0;
            for (int n1 = 0; n1 <= layout.cap1; ++n1) {
                for (int n2 = 0; n2 <= layout.cap2; ++n2) {
                    const std::int64_t p =
                        static_cast<std::int64_t>(n1) * (layout.cap2 + 1) + n2;
                    Complex c(0.0, 0.0);
                    for (std::int64_t a = 0; a < sym.size(); ++a) {
                        if (sym[a] == Complex(0.0, 0.0)) continue;
                        c += std::conj(sym[a]) * state.amplitudes[a * photon_block + p];
                    }
                    if (std::abs(c) <= 1e-15) continue;
                    const fock::Occupation occ = {n1, n2, j, i, k};
                    const auto index = target->find(occ);
                    if (!index) {
                        if (std::abs(c) <= deficit_tolerance) continue; // numerical dust
                        throw std::domain_error("map_to_oscillator: target basis lacks the ket " +
                                                fock::occupation_to_string(occ));
                    }
                    out.amplitudes[*index] += sign * c;
                }
            }
        }
    }
    return out;
}

// Inverse of map_to_oscillator: five-mode amplitudes back to symmetric
// atomic-photonic amplitudes on the given register layout.
inline tensor::TensorState map_from_oscillator(const fock::StateVector& state,
                                               const tensor::TensorLayout& layout) {
    layout.validate();
    const auto& basis = *state.basis;
    if (basis.layout().labels.size() != 5)
        throw std::invalid_argument("map_from_oscillator: expected a five-mode basis");
    auto out = tensor::zero_state(layout);
    const std::int64_t photon_block = layout.photon_dimension();
    for (std::size_t idx = 0; idx < basis.size(); ++idx) {
        const Complex amp = state.amplitudes[static_cast<Eigen::Index>(idx)];
        if (amp == Complex(0.0, 0.0)) continue;
        const auto& occ = basis.state(idx);
        const int n1 = occ[0], n2 = occ[1], p = occ[2], q = occ[3], r = occ[4];
        if (p + q + r != layout.atoms)
            throw std::domain_error("map_from_oscillator: ket " + fock::occupation_to_string(occ) +
                                    " needs " + std::to_string(p + q + r) +
                                    " atoms, layout has " + std::to_string(layout.atoms));
        if (n1 > layout.cap1 || n2 > layout.cap2)
            throw std::domain_error("map_from_oscillator: photon occupation of ket " +
                                    fock::occupation_to_string(occ) + " exceeds the layout caps");
        const double sign = (p % 2 == 0) ? 1.0 : -1.0;
        const auto sym = symmetric_state(layout.atoms, q, p, r);
        const std::int64_t photon_index = static_cast<std::int64_t>(n1) * (layout.cap2 + 1) + n2;
        for (std::int64_t a = 0; a < sym.size(); ++a) {
            if (sym[a] == Complex(0.0, 0.0)) continue;
            out.amplitudes[a * photon_block + photon_index] += sign * amp * sym[a];
        }
    }
    return out;
}

} // namespace stimclone::lambda
