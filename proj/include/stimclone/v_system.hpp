#pragma once

// V-configuration atoms (one ground state g below two degenerate excited
// states e1, e2; mode 1 drives e1 <-> g, mode 2 drives e2 <-> g), prepared in
// per-pair singlet states.
//
// Adjacent atoms (2k-1, 2k) form pair k. On the antisymmetric two-atom
// subspace the pair behaves exactly like ONE Lambda-configuration atom:
//   (|e1 e2> - |e2 e1>)/sqrt(2)  plays the excited state,
//   (|g  e2> - |e2  g>)/sqrt(2)  plays ground state 1,
//   (|e1  g> - |g  e1>)/sqrt(2)  plays ground state 2,
// and `pair_substitution_map` rewrites pair states in that dictionary. The
// coupling never connects the antisymmetric sector to states of other
// exchange symmetry, which `pair_sector_deficit` quantifies.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "stimclone/lambda_system.hpp"
#include "stimclone/tensor.hpp"

namespace stimclone::vsys {

using Complex = std::complex<double>;

enum class VLevel : int { g = 0, e1 = 1, e2 = 2 };

inline tensor::TensorLayout v_layout(int atoms, int photon_cap) {
    if (photon_cap < 0)
        throw std::invalid_argument("v_layout: photon cap must be non-negative");
    tensor::TensorLayout layout{atoms, photon_cap, photon_cap};
    layout.validate();
    return layout;
}

// gamma * (a1^dag sum_k |g><e1|_k + a2^dag sum_k |g><e2|_k) + h.c.
inline tensor::SparseMatrix build_v_hamiltonian(
    int atoms, double gamma, int photon_cap,
    std::int64_t max_dimension = tensor::default_max_dimension) {
    const auto layout = v_layout(atoms, photon_cap);
    const std::vector<tensor::EmissionTerm> terms = {
        {0, static_cast<int>(VLevel::g), static_cast<int>(VLevel::e1)},
        {1, static_cast<int>(VLevel::g), static_cast<int>(VLevel::e2)},
    };
    return tensor::build_tensor_hamiltonian(layout, gamma, terms, max_dimension);
}

namespace detail {

// The three effective Lambda levels of a pair, each a signed two-pattern
// superposition with amplitude +-1/sqrt(2). Table order matches the Lambda
// level codes (g1 = 0, g2 = 1, e = 2).
struct PairPatterns {
    int plus_first, plus_second;   // pattern with amplitude +1/sqrt(2)
    int minus_first, minus_second; // pattern with amplitude -1/sqrt(2)
};

inline const PairPatterns& pair_pattern(int lambda_level) {
    static const PairPatterns table[3] = {
        // effective g1: (|g e2> - |e2 g>)/sqrt(2)
        {static_cast<int>(VLevel::g), static_cast<int>(VLevel::e2),
         static_cast<int>(VLevel::e2), static_cast<int>(VLevel::g)},
        // effective g2: (|e1 g> - |g e1>)/sqrt(2)
        {static_cast<int>(VLevel::e1), static_cast<int>(VLevel::g),
         static_cast<int>(VLevel::g), static_cast<int>(VLevel::e1)},
        // effective e: (|e1 e2> - |e2 e1>)/sqrt(2)
        {static_cast<int>(VLevel::e1), static_cast<int>(VLevel::e2),
         static_cast<int>(VLevel::e2), static_cast<int>(VLevel::e1)},
    };
    if (lambda_level < 0 || lambda_level > 2)
        throw std::invalid_argument("pair_pattern: level code must be 0, 1, or 2");
    return table[lambda_level];
}

// V-register pattern for a tuple of effective Lambda levels under one +-
// choice per pair; returns the overall sign.
inline double fill_pair_levels(const std::vector<int>& lambda_levels, int mask,
                               std::vector<int>& v_levels) {
    const int pairs = static_cast<int>(lambda_levels.size());
    v_levels.assign(static_cast<std::size_t>(2 * pairs), 0);
    double sign = 1.0;
    for (int k = 0; k < pairs; ++k) {
        const auto& pat = pair_pattern(lambda_levels[static_cast<std::size_t>(k)]);
        const bool minus = (mask >> k) & 1;
        v_levels[static_cast<std::size_t>(2 * k)] = minus ? pat.minus_first : pat.plus_first;
        v_levels[static_cast<std::size_t>(2 * k + 1)] =
            minus ? pat.minus_second : pat.plus_second;
        if (minus) sign = -sign;
    }
    return sign;
}

// Overlaps of the state with every (effective-Lambda pattern (x) photon ket)
// product of per-pair antisymmetric states, laid out as the amplitudes of the
// corresponding effective Lambda register state.
inline tensor::TensorState antisymmetric_overlaps(const tensor::TensorState& state, int pairs) {
    const auto& layout = state.layout;
    if (pairs < 1)
        throw std::invalid_argument("antisymmetric_overlaps: need at least one pair");
    if (layout.atoms != 2 * pairs)
        throw std::invalid_argument("antisymmetric_overlaps: layout does not hold " +
                                    std::to_string(pairs) + " pairs");
    if (layout.cap1 != layout.cap2)
        throw std::invalid_argument("antisymmetric_overlaps: photon caps must match");
    auto out = tensor::zero_state(lambda::lambda_layout(pairs, layout.cap1));
    const double unit = 1.0 / std::pow(std::sqrt(2.0), pairs);
    std::vector<int> lambda_levels(static_cast<std::size_t>(pairs));
    std::vector<int> v_levels;
    for (std::int64_t pattern = 0; pattern < out.layout.atomic_dimension(); ++pattern) {
        std::int64_t rest = pattern;
        for (int k = pairs - 1; k >= 0; --k) {
            lambda_levels[static_cast<std::size_t>(k)] = static_cast<int>(rest % 3);
            rest /= 3;
        }
        for (int n1 = 0; n1 <= layout.cap1; ++n1) {
            for (int n2 = 0; n2 <= layout.cap2; ++n2) {
                Complex c(0.0, 0.0);
                for (int mask = 0; mask < (1 << pairs); ++mask) {
                    const double sign = fill_pair_levels(lambda_levels, mask, v_levels);
                    const std::int64_t index =
                        tensor::encode(layout, tensor::TensorKet{v_levels, n1, n2});
                    c += sign * unit * state.amplitudes[index];
                }
                if (c == Complex(0.0, 0.0)) continue;
                out.amplitudes[tensor::encode(out.layout,
                                              tensor::TensorKet{lambda_levels, n1, n2})] = c;
            }
        }
    }
    return out;
}

} // namespace detail

// Tensor product of per-pair singlets (|e1 e2> - |e2 e1>)/sqrt(2) with m
// photons in mode 1.
inline tensor::TensorState singlet_initial_state(int pairs, int m, int photon_cap) {
    if (pairs < 1) throw std::invalid_argument("singlet_initial_state: need at least one pair");
    const auto layout = v_layout(2 * pairs, photon_cap);
    if (m < 0 || m > photon_cap)
        throw std::invalid_argument("singlet_initial_state: seed photon number outside the cap");
    auto state = tensor::zero_state(layout);
    const double unit = 1.0 / std::pow(std::sqrt(2.0), pairs);
    const std::vector<int> all_excited(static_cast<std::size_t>(pairs),
                                       static_cast<int>(lambda::AtomLevel::e));
    std::vector<int> v_levels;
    for (int mask = 0; mask < (1 << pairs); ++mask) {
        const double sign = detail::fill_pair_levels(all_excited, mask, v_levels);
        state.amplitudes[tensor::encode(layout, tensor::TensorKet{v_levels, m, 0})] =
            Complex(sign * unit, 0.0);
    }
    return state;
}

// Squared norm of the component outside the per-pair antisymmetric sector.
inline double pair_sector_deficit(const tensor::TensorState& state, int pairs) {
    const auto overlaps = detail::antisymmetric_overlaps(state, pairs);
    return state.amplitudes.squaredNorm() - overlaps.amplitudes.squaredNorm();
}

// Rewrites a per-pair antisymmetric V-system state as a state of `pairs`
// effective Lambda atoms with the same photon content.
inline tensor::TensorState pair_substitution_map(const tensor::TensorState& state, int pairs,
                                                 double deficit_tolerance = 1e-10) {
    auto mapped = detail::antisymmetric_overlaps(state, pairs);
    const double deficit = state.amplitudes.squaredNorm() - mapped.amplitudes.squaredNorm();
    if (deficit > deficit_tolerance)
        throw std::domain_error(
            "pair_substitution_map: out-of-sector component with squared norm " +
            std::to_string(deficit));
    return mapped;
}

} // namespace stimclone::vsys
