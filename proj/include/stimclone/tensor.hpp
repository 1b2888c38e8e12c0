#pragma once

// Tensor-product state space for a register of three-level atoms coupled to
// two capped photon modes, plus the generic emission-coupling Hamiltonian
// builder shared by the Lambda-configuration and V-configuration models.
//
// Index layout is lexicographic on (level_1, ..., level_atoms, n1, n2) with
// atom 1 most significant and levels ordered by their integer codes, so state
// indices are reproducible across runs and implementations.

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "stimclone/propagate.hpp"

namespace stimclone::tensor {

using Complex = std::complex<double>;
using SparseMatrix = Eigen::SparseMatrix<Complex>;

// Hard ceiling on the direct tensor simulation: four atoms with an 8x8 photon
// block. Larger registers are served by the collective-mode models, which the
// equivalence checks tie to this one.
inline constexpr int max_atoms = 4;
inline constexpr std::int64_t default_max_dimension = 81 * 64;

struct TensorLayout {
    int atoms = 1;
    int cap1 = 0; // highest occupation of photon mode 1
    int cap2 = 0; // highest occupation of photon mode 2

    void validate() const {
        if (atoms < 1)
            throw std::invalid_argument("TensorLayout: need at least one atom");
        if (atoms > max_atoms)
            throw resource_error("TensorLayout: direct simulation is capped at " +
                                 std::to_string(max_atoms) + " atoms (got " +
                                 std::to_string(atoms) + ")");
        if (cap1 < 0 || cap2 < 0)
            throw std::invalid_argument("TensorLayout: photon caps must be non-negative");
    }

    std::int64_t atomic_dimension() const {
        std::int64_t d = 1;
        for (int k = 0; k < atoms; ++k) d *= 3;
        return d;
    }

    std::int64_t photon_dimension() const {
        return static_cast<std::int64_t>(cap1 + 1) * (cap2 + 1);
    }

    std::int64_t dimension() const { return atomic_dimension() * photon_dimension(); }

    bool operator==(const TensorLayout&) const = default;
};

// A fully decoded basis ket: one level code per atom plus the two photon
// occupations.
struct TensorKet {
    std::vector<int> levels;
    int n1 = 0;
    int n2 = 0;
};

inline std::int64_t encode(const TensorLayout& layout, const TensorKet& ket) {
    if (static_cast<int>(ket.levels.size()) != layout.atoms)
        throw std::invalid_argument("encode: level count does not match the layout");
    std::int64_t levels_index = 0;
    for (int k = 0; k < layout.atoms; ++k) {
        const int level = ket.levels[static_cast<std::size_t>(k)];
        if (level < 0 || level > 2)
            throw std::invalid_argument("encode: level codes must be 0, 1, or 2");
        levels_index = levels_index * 3 + level;
    }
    if (ket.n1 < 0 || ket.n1 > layout.cap1 || ket.n2 < 0 || ket.n2 > layout.cap2)
        throw std::invalid_argument("encode: photon occupation outside the caps");
    return (levels_index * (layout.cap1 + 1) + ket.n1) * (layout.cap2 + 1) + ket.n2;
}

inline TensorKet decode(const TensorLayout& layout, std::int64_t index) {
    if (index < 0 || index >= layout.dimension())
        throw std::out_of_range("decode: index outside the tensor space");
    TensorKet ket;
    ket.n2 = static_cast<int>(index % (layout.cap2 + 1));
    index /= layout.cap2 + 1;
    ket.n1 = static_cast<int>(index % (layout.cap1 + 1));
    index /= layout.cap1 + 1;
    ket.levels.assign(static_cast<std::size_t>(layout.atoms), 0);
    for (int k = layout.atoms - 1; k >= 0; --k) {
        ket.levels[static_cast<std::size_t>(k)] = static_cast<int>(index % 3);
        index /= 3;
    }
    return ket;
}

struct TensorState {
    TensorLayout layout;
    Eigen::VectorXcd amplitudes;

    double norm() const { return amplitudes.norm(); }
};

inline TensorState zero_state(const TensorLayout& layout) {
    layout.validate();
    return {layout, Eigen::VectorXcd::Zero(layout.dimension())};
}

inline TensorState unit_state(const TensorLayout& layout, const TensorKet& ket) {
    auto state = zero_state(layout);
    state.amplitudes[encode(layout, ket)] = Complex(1.0, 0.0);
    return state;
}

inline Complex overlap(const TensorState& a, const TensorState& b) {
    if (!(a.layout == b.layout))
        throw std::invalid_argument("overlap: states live on different tensor layouts");
    return a.amplitudes.dot(b.amplitudes); // Eigen conjugates the left factor
}

// One collective coupling term: photon_mode gains one photon while any single
// atom drops from upper_level to lower_level (the Hermitian conjugate,
// absorption with the reverse transition, is always added).
struct EmissionTerm {
    int photon_mode = 0; // 0 -> mode 1, 1 -> mode 2
    int lower_level = 0;
    int upper_level = 2;
};

inline SparseMatrix build_tensor_hamiltonian(const TensorLayout& layout, double gamma,
                                             const std::vector<EmissionTerm>& terms,
                                             std::int64_t max_dimension = default_max_dimension) {
    layout.validate();
    const std::int64_t dim = layout.dimension();
    if (dim > max_dimension)
        throw resource_error("build_tensor_hamiltonian: dimension " + std::to_string(dim) +
                             " exceeds the ceiling " + std::to_string(max_dimension));
    for (const auto& term : terms) {
        if (term.photon_mode < 0 || term.photon_mode > 1)
            throw std::invalid_argument("build_tensor_hamiltonian: photon_mode must be 0 or 1");
        if (term.lower_level < 0 || term.lower_level > 2 || term.upper_level < 0 ||
            term.upper_level > 2 || term.lower_level == term.upper_level)
            throw std::invalid_argument("build_tensor_hamiltonian: invalid level pair");
    }

    std::vector<Eigen::Triplet<Complex>> triplets;
    for (std::int64_t source = 0; source < dim; ++source) {
        const TensorKet ket = decode(layout, source);
        for (const auto& term : terms) {
            const int cap = term.photon_mode == 0 ? layout.cap1 : layout.cap2;
            const int occ = term.photon_mode == 0 ? ket.n1 : ket.n2;
            if (occ + 1 > cap) continue; // truncated by the photon cap
            const double factor = gamma * std::sqrt(static_cast<double>(occ) + 1.0);
            for (int atom = 0; atom < layout.atoms; ++atom) {
                if (ket.levels[static_cast<std::size_t>(atom)] != term.upper_level) continue;
                TensorKet target = ket;
                target.levels[static_cast<std::size_t>(atom)] = term.lower_level;
                (term.photon_mode == 0 ? target.n1 : target.n2) = occ + 1;
                const std::int64_t row = encode(layout, target);
                const Complex value(factor, 0.0);
                // Emission entry and its mirror keep the matrix Hermitian by
                // construction.
                triplets.emplace_back(static_cast<int>(row), static_cast<int>(source), value);
                triplets.emplace_back(static_cast<int>(source), static_cast<int>(row),
                                      std::conj(value));
            }
        }
    }

    SparseMatrix h(static_cast<int>(dim), static_cast<int>(dim));
    h.setFromTriplets(triplets.begin(), triplets.end());
    return h;
}

// Conjugate an operator by the permutation that swaps two atom slots. Used to
// verify that collective couplings do not distinguish atoms.
inline SparseMatrix swap_atoms(const TensorLayout& layout, const SparseMatrix& h, int first,
                               int second) {
    layout.validate();
    if (first < 0 || first >= layout.atoms || second < 0 || second >= layout.atoms)
        throw std::out_of_range("swap_atoms: atom index outside the register");
    const std::int64_t dim = layout.dimension();
    std::vector<std::int64_t> perm(static_cast<std::size_t>(dim));
    for (std::int64_t i = 0; i < dim; ++i) {
        TensorKet ket = decode(layout, i);
        std::swap(ket.levels[static_cast<std::size_t>(first)],
                  ket.levels[static_cast<std::size_t>(second)]);
        perm[static_cast<std::size_t>(i)] = encode(layout, ket);
    }
    std::vector<Eigen::Triplet<Complex>> triplets;
    for (int outer = 0; outer < h.outerSize(); ++outer) {
        for (SparseMatrix::InnerIterator it(h, outer); it; ++it) {
            triplets.emplace_back(static_cast<int>(perm[static_cast<std::size_t>(it.row())]),
                                  static_cast<int>(perm[static_cast<std::size_t>(it.col())]),
                                  it.value());
        }
    }
    SparseMatrix out(static_cast<int>(dim), static_cast<int>(dim));
    out.setFromTriplets(triplets.begin(), triplets.end());
    return out;
}

// Applies a single-atom unitary (3x3 on the level space) to one atom slot.
inline TensorState apply_atom_unitary(const TensorState& state, int atom,
                                      const Eigen::Matrix3cd& u) {
    const auto& layout = state.layout;
    if (atom < 0 || atom >= layout.atoms)
        throw std::out_of_range("apply_atom_unitary: atom index outside the register");
    auto out = zero_state(layout);
    for (std::int64_t i = 0; i < layout.dimension(); ++i) {
        const Complex amp = state.amplitudes[i];
        if (amp == Complex(0.0, 0.0)) continue;
        TensorKet ket = decode(layout, i);
        const int from = ket.levels[static_cast<std::size_t>(atom)];
        for (int to = 0; to < 3; ++to) {
            if (u(to, from) == Complex(0.0, 0.0)) continue;
            ket.levels[static_cast<std::size_t>(atom)] = to;
            out.amplitudes[encode(layout, ket)] += u(to, from) * amp;
        }
        ket.levels[static_cast<std::size_t>(atom)] = from;
    }
    return out;
}

inline TensorState evolve(const SparseMatrix& h, const TensorState& state, double t,
                          const propagate::EvolveOptions& options = {}) {
    if (h.rows() != state.amplitudes.size())
        throw std::invalid_argument("evolve: operator and state dimensions differ");
    return {state.layout, propagate::evolve_vector(h, state.amplitudes, t, options)};
}

} // namespace stimclone::tensor
