// oscillator.hpp -- coupled-oscillator models of collective emission into two
// polarization modes.
//
// Modes: photon modes a1, a2; collective atomic oscillators b1, b2 (ground-
// state excitations) and c (shared excited-state reservoir).  Two equivalent
// mode-b conventions exist for the pair coupling:
//   * singlet coupling   gamma (a1 b2 - a2 b1) c^dag + h.c.   (the frame the
//     emission ladder below is written in),
//   * aligned coupling   gamma (a1 b1 + a2 b2) c^dag + h.c.
// They are related by the fixed passive relabeling b1 -> b2, b2 -> -b1, which
// on states reads |b1=p, b2=q> -> (-1)^q |b1=q, b2=p>.  That relabeling is the
// only one used anywhere in this library.
//
// Also here: the r-mode generalization  gamma sum_n c b_n^dag a_n^dag + h.c.,
// the classical-pump truncation (c replaced by a scalar), the rotation-closed
// basis that supports polarization-rotated inputs, and the quantized-versus-
// classical pump comparison.

#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "stimclone/fock.hpp"

namespace stimclone::osc {

using fock::Basis;
using fock::BasisPtr;
using fock::Complex;
using fock::ConservedQuantity;
using fock::LadderProduct;
using fock::ModeLayout;
using fock::OccupationBound;
using fock::Occupation;
using fock::SparseHermitian;
using fock::StateVector;

enum class Variant { singlet, aligned, generalized, classical_pump };

struct OscillatorModelSpec {
    int m = 1;            // photons injected into mode a1
    int N = 1;            // shared excited-state excitations (pump quanta)
    double gamma = 1.0;   // coupling strength
    Variant variant = Variant::singlet;
    int r = 2;            // mode count for Variant::generalized

    void validate() const {
        if (m < 0) throw std::invalid_argument("OscillatorModelSpec: m must be non-negative");
        if (N < 0) throw std::invalid_argument("OscillatorModelSpec: N must be non-negative");
        if (!std::isfinite(gamma)) throw std::invalid_argument("OscillatorModelSpec: gamma must be finite");
        if (variant == Variant::generalized && r < 1)
            throw std::invalid_argument("OscillatorModelSpec: r must be at least 1");
    }
};

// ---------------------------------------------------------------------------
// Layouts and constrained bases.
// ---------------------------------------------------------------------------
inline ModeLayout five_mode_layout() {
    return ModeLayout({"a1", "a2", "b1", "b2", "c"});
}

inline ModeLayout classical_pump_layout() {
    return ModeLayout({"a1", "a2", "b1", "b2"});
}

inline ModeLayout generalized_layout(int r) {
    if (r < 1) throw std::invalid_argument("generalized_layout: r must be at least 1");
    std::vector<std::string> labels;
    for (int n = 1; n <= r; ++n) labels.push_back("a" + std::to_string(n));
    for (int n = 1; n <= r; ++n) labels.push_back("b" + std::to_string(n));
    labels.push_back("c");
    return ModeLayout(labels);
}

// Singlet-frame sector: n_a1 - n_b2 = m, n_a2 - n_b1 = 0, n_c + n_b1 + n_b2 = N.
inline BasisPtr singlet_basis(int N, int m, std::size_t max_states = 20000) {
    return fock::enumerate_basis(five_mode_layout(),
                                 {ConservedQuantity{{1, 0, 0, -1, 0}, m},
                                  ConservedQuantity{{0, 1, -1, 0, 0}, 0},
                                  ConservedQuantity{{0, 0, 1, 1, 1}, N}},
                                 {}, max_states);
}

// Aligned-frame sector: n_a1 - n_b1 = m, n_a2 - n_b2 = 0, n_c + n_b1 + n_b2 = N.
inline BasisPtr aligned_basis(int N, int m, std::size_t max_states = 20000) {
    return fock::enumerate_basis(five_mode_layout(),
                                 {ConservedQuantity{{1, 0, -1, 0, 0}, m},
                                  ConservedQuantity{{0, 1, 0, -1, 0}, 0},
                                  ConservedQuantity{{0, 0, 1, 1, 1}, N}},
                                 {}, max_states);
}

// Closure of the singlet sector under simultaneous polarization rotations of
// (a1, a2) and (b1, b2): only the rotation-invariant combinations are pinned.
inline BasisPtr polarization_complete_basis(int N, int m, std::size_t max_states = 20000) {
    return fock::enumerate_basis(five_mode_layout(),
                                 {ConservedQuantity{{1, 1, -1, -1, 0}, m},
                                  ConservedQuantity{{0, 0, 1, 1, 1}, N}},
                                 {}, max_states);
}

// Generalized sector: n_an - n_bn = (m for n = 1, else 0), n_c + sum_n n_bn = N.
inline BasisPtr generalized_basis(int r, int N, int m, std::size_t max_states = 20000) {
    const ModeLayout layout = generalized_layout(r);
    std::vector<ConservedQuantity> equalities;
    for (int n = 0; n < r; ++n) {
        std::vector<int> coeff(layout.size(), 0);
        coeff[static_cast<std::size_t>(n)] = 1;
        coeff[static_cast<std::size_t>(r + n)] = -1;
        equalities.push_back({coeff, n == 0 ? m : 0});
    }
    std::vector<int> pump(layout.size(), 0);
    for (int n = 0; n < r; ++n) pump[static_cast<std::size_t>(r + n)] = 1;
    pump[layout.size() - 1] = 1;
    equalities.push_back({pump, N});
    return fock::enumerate_basis(layout, equalities, {}, max_states);
}

// Classical-pump sector: same photon/oscillator pairing, no pump mode, and a
// hard cap on the emitted-pair count n_b1 + n_b2 <= pair_cap.
inline BasisPtr classical_pump_basis(int m, int pair_cap, std::size_t max_states = 20000) {
    if (pair_cap < 0) throw std::invalid_argument("classical_pump_basis: pair_cap must be non-negative");
    return fock::enumerate_basis(classical_pump_layout(),
                                 {ConservedQuantity{{1, 0, 0, -1}, m},
                                  ConservedQuantity{{0, 1, -1, 0}, 0}},
                                 {OccupationBound{{0, 0, 1, 1}, pair_cap}}, max_states);
}

// ---------------------------------------------------------------------------
// Hamiltonian terms.  Ladder products are written in formula order; the
// adjoint half is added during assembly.
// ---------------------------------------------------------------------------
inline std::vector<LadderProduct> singlet_terms(const ModeLayout& layout, double gamma) {
    const auto a1 = layout.index_of("a1"), a2 = layout.index_of("a2");
    const auto b1 = layout.index_of("b1"), b2 = layout.index_of("b2");
    const auto c = layout.index_of("c");
    return {LadderProduct{Complex(gamma, 0.0), {fock::lowering(a1), fock::lowering(b2), fock::raising(c)}},
            LadderProduct{Complex(-gamma, 0.0), {fock::lowering(a2), fock::lowering(b1), fock::raising(c)}}};
}

inline std::vector<LadderProduct> aligned_terms(const ModeLayout& layout, double gamma) {
    const auto a1 = layout.index_of("a1"), a2 = layout.index_of("a2");
    const auto b1 = layout.index_of("b1"), b2 = layout.index_of("b2");
    const auto c = layout.index_of("c");
    return {LadderProduct{Complex(gamma, 0.0), {fock::lowering(a1), fock::lowering(b1), fock::raising(c)}},
            LadderProduct{Complex(gamma, 0.0), {fock::lowering(a2), fock::lowering(b2), fock::raising(c)}}};
}

inline SparseHermitian build_singlet_on(BasisPtr basis, double gamma) {
    const auto terms = singlet_terms(basis->layout(), gamma);
    return fock::build_operator(terms, std::move(basis), true);
}

inline SparseHermitian build_aligned_on(BasisPtr basis, double gamma) {
    const auto terms = aligned_terms(basis->layout(), gamma);
    return fock::build_operator(terms, std::move(basis), true);
}

inline SparseHermitian build_singlet(const OscillatorModelSpec& spec, std::size_t max_states = 20000) {
    spec.validate();
    return build_singlet_on(singlet_basis(spec.N, spec.m, max_states), spec.gamma);
}

inline SparseHermitian build_aligned(const OscillatorModelSpec& spec, std::size_t max_states = 20000) {
    spec.validate();
    return build_aligned_on(aligned_basis(spec.N, spec.m, max_states), spec.gamma);
}

inline SparseHermitian build_generalized(const OscillatorModelSpec& spec, std::size_t max_states = 20000) {
    spec.validate();
    BasisPtr basis = generalized_basis(spec.r, spec.N, spec.m, max_states);
    const ModeLayout& layout = basis->layout();
    const auto c = layout.index_of("c");
    std::vector<LadderProduct> terms;
    for (int n = 1; n <= spec.r; ++n) {
        const auto an = layout.index_of("a" + std::to_string(n));
        const auto bn = layout.index_of("b" + std::to_string(n));
        terms.push_back(LadderProduct{Complex(spec.gamma, 0.0),
                                      {fock::raising(an), fock::raising(bn), fock::lowering(c)}});
    }
    return fock::build_operator(terms, std::move(basis), true);
}

inline SparseHermitian build_classical_pump(int m, double gamma_eff, int pair_cap,
                                            std::size_t max_states = 20000) {
    BasisPtr basis = classical_pump_basis(m, pair_cap, max_states);
    const ModeLayout& layout = basis->layout();
    const auto a1 = layout.index_of("a1"), a2 = layout.index_of("a2");
    const auto b1 = layout.index_of("b1"), b2 = layout.index_of("b2");
    const std::vector<LadderProduct> terms = {
        LadderProduct{Complex(gamma_eff, 0.0), {fock::lowering(a1), fock::lowering(b2)}},
        LadderProduct{Complex(-gamma_eff, 0.0), {fock::lowering(a2), fock::lowering(b1)}}};
    return fock::build_operator(terms, std::move(basis), true);
}

// ---------------------------------------------------------------------------
// Initial states: m photons in a1, a full pump (c = N) where a pump exists.
// ---------------------------------------------------------------------------
inline StateVector pump_initial_state(BasisPtr basis, int m, int N) {
    const ModeLayout& layout = basis->layout();
    Occupation occ(layout.size(), 0);
    occ[layout.index_of("a1")] = m;
    if (layout.has_mode("c")) occ[layout.index_of("c")] = N;
    return fock::unit_state(std::move(basis), occ);
}

// ---------------------------------------------------------------------------
// Frame relabeling between the aligned and singlet conventions:
//   |n1, n2, b1=p, b2=q, c>  ->  (-1)^q |n1, n2, b1=q, b2=p, c>.
// Applied to states (to_singlet_frame / to_aligned_frame) and, by conjugation,
// to operators (relabel_aligned_operator).
// ---------------------------------------------------------------------------
namespace detail {
inline StateVector swap_b_modes_with_sign(const StateVector& state, BasisPtr target,
                                          bool sign_from_b2) {
    const ModeLayout& layout = state.basis->layout();
    const auto b1 = layout.index_of("b1"), b2 = layout.index_of("b2");
    StateVector result = fock::zero_state(std::move(target));
    for (std::size_t i = 0; i < state.basis->size(); ++i) {
        const Complex amp = state.amplitudes[static_cast<Eigen::Index>(i)];
        if (amp == Complex(0.0, 0.0)) continue;
        Occupation occ = state.basis->state(i);
        const int sign_count = sign_from_b2 ? occ[b2] : occ[b1];
        std::swap(occ[b1], occ[b2]);
        const auto idx = result.basis->find(occ);
        if (!idx)
            throw std::domain_error("frame relabeling: target " + fock::occupation_to_string(occ) +
                                    " is not in the destination basis");
        const double sign = (sign_count % 2 == 0) ? 1.0 : -1.0;
        result.amplitudes[static_cast<Eigen::Index>(*idx)] = sign * amp;
    }
    return result;
}
} // namespace detail

inline StateVector to_singlet_frame(const StateVector& aligned_state, BasisPtr singlet_target) {
    return detail::swap_b_modes_with_sign(aligned_state, std::move(singlet_target), true);
}

inline StateVector to_aligned_frame(const StateVector& singlet_state, BasisPtr aligned_target) {
    return detail::swap_b_modes_with_sign(singlet_state, std::move(aligned_target), false);
}

inline SparseHermitian relabel_aligned_operator(const SparseHermitian& aligned_op,
                                                BasisPtr singlet_target) {
    const Basis& src = *aligned_op.basis;
    const ModeLayout& layout = src.layout();
    const auto b1 = layout.index_of("b1"), b2 = layout.index_of("b2");
    std::vector<Eigen::Index> perm(src.size());
    std::vector<double> sign(src.size());
    for (std::size_t i = 0; i < src.size(); ++i) {
        Occupation occ = src.state(i);
        sign[i] = (occ[b2] % 2 == 0) ? 1.0 : -1.0;
        std::swap(occ[b1], occ[b2]);
        const auto idx = singlet_target->find(occ);
        if (!idx)
            throw std::domain_error("relabel_aligned_operator: target " +
                                    fock::occupation_to_string(occ) + " is not in the destination basis");
        perm[i] = static_cast<Eigen::Index>(*idx);
    }
    std::vector<Eigen::Triplet<Complex>> triplets;
    for (int col = 0; col < aligned_op.matrix.outerSize(); ++col)
        for (fock::SparseMatrix::InnerIterator it(aligned_op.matrix, col); it; ++it)
            triplets.emplace_back(perm[static_cast<std::size_t>(it.row())],
                                  perm[static_cast<std::size_t>(it.col())],
                                  sign[static_cast<std::size_t>(it.row())] *
                                      sign[static_cast<std::size_t>(it.col())] * it.value());
    fock::SparseMatrix matrix(static_cast<Eigen::Index>(singlet_target->size()),
                              static_cast<Eigen::Index>(singlet_target->size()));
    matrix.setFromTriplets(triplets.begin(), triplets.end());
    return SparseHermitian(std::move(singlet_target), std::move(matrix));
}

// ---------------------------------------------------------------------------
// Polarization-rotation structure on the five-mode models.
//
// transformed_singlet_terms substitutes  a_i -> sum_j U_ij a_j  and
// b_i -> sum_j U_ij b_j  into the singlet coupling; for det U = 1 the
// expansion collapses back to the original expression, which is the
// invariance the verification suite checks.  rotation_generators returns the
// three Hermitian bilinears generating the simultaneous rotation; the singlet
// coupling commutes with all of them.
// ---------------------------------------------------------------------------
inline SparseHermitian transformed_singlet_on(BasisPtr basis, double gamma,
                                              const Eigen::Matrix2cd& u) {
    const ModeLayout& layout = basis->layout();
    const std::array<std::size_t, 2> a = {layout.index_of("a1"), layout.index_of("a2")};
    const std::array<std::size_t, 2> b = {layout.index_of("b1"), layout.index_of("b2")};
    const auto c = layout.index_of("c");
    std::vector<LadderProduct> terms;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            const Complex coeff = gamma * (u(0, i) * u(1, j) - u(1, i) * u(0, j));
            terms.push_back(LadderProduct{coeff,
                                          {fock::lowering(a[static_cast<std::size_t>(i)]),
                                           fock::lowering(b[static_cast<std::size_t>(j)]),
                                           fock::raising(c)}});
        }
    }
    return fock::build_operator(terms, std::move(basis), true);
}

inline std::array<SparseHermitian, 3> rotation_generators(const BasisPtr& basis) {
    const ModeLayout& layout = basis->layout();
    const auto a1 = layout.index_of("a1"), a2 = layout.index_of("a2");
    const auto b1 = layout.index_of("b1"), b2 = layout.index_of("b2");
    const Complex half(0.5, 0.0);
    const Complex minus_half_i(0.0, -0.5);
    // T_x = (a1^dag a2 + b1^dag b2)/2 + h.c.
    SparseHermitian tx = fock::build_operator(
        {LadderProduct{half, {fock::raising(a1), fock::lowering(a2)}},
         LadderProduct{half, {fock::raising(b1), fock::lowering(b2)}}},
        basis, true);
    // T_y = -i (a1^dag a2 + b1^dag b2)/2 + h.c.
    SparseHermitian ty = fock::build_operator(
        {LadderProduct{minus_half_i, {fock::raising(a1), fock::lowering(a2)}},
         LadderProduct{minus_half_i, {fock::raising(b1), fock::lowering(b2)}}},
        basis, true);
    // T_z = (n_a1 - n_a2 + n_b1 - n_b2)/2, diagonal and already Hermitian.
    SparseHermitian tz = fock::build_operator(
        {LadderProduct{half, {fock::raising(a1), fock::lowering(a1)}},
         LadderProduct{-half, {fock::raising(a2), fock::lowering(a2)}},
         LadderProduct{half, {fock::raising(b1), fock::lowering(b1)}},
         LadderProduct{-half, {fock::raising(b2), fock::lowering(b2)}}},
        basis, false);
    return {std::move(tx), std::move(ty), std::move(tz)};
}

// ---------------------------------------------------------------------------
// emission_distribution: probability of finding l emitted photon pairs, read
// off as the total occupation of the b modes.  Works for every variant here,
// including the classical pump (no c mode) and the r-mode generalization.
// ---------------------------------------------------------------------------
inline std::vector<double> emission_distribution(const StateVector& state) {
    const Basis& basis = *state.basis;
    std::vector<std::size_t> b_modes;
    for (std::size_t i = 0; i < basis.layout().size(); ++i)
        if (basis.layout().labels[i].front() == 'b') b_modes.push_back(i);
    if (b_modes.empty())
        throw std::invalid_argument("emission_distribution: layout has no b modes");
    int l_max = 0;
    for (const auto& occ : basis.states()) {
        int l = 0;
        for (auto bm : b_modes) l += occ[bm];
        l_max = std::max(l_max, l);
    }
    std::vector<double> p(static_cast<std::size_t>(l_max) + 1, 0.0);
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const double weight = std::norm(state.amplitudes[static_cast<Eigen::Index>(i)]);
        if (weight == 0.0) continue;
        int l = 0;
        for (auto bm : b_modes) l += basis.state(i)[bm];
        p[static_cast<std::size_t>(l)] += weight;
    }
    return p;
}

// ---------------------------------------------------------------------------
// pdc_limit_convergence: emitted-pair distributions of the quantized-pump
// model at fixed gamma_eff = gamma sqrt(N) against the classical-pump model,
// for a list of increasing pump sizes N.  Reports the max deviation over
// l <= compare_cap for each N; the deviations are expected to shrink as the
// pump grows.  The classical cap is validated by requiring the population at
// the cap to stay below 1e-8.
// ---------------------------------------------------------------------------
struct PdcConvergenceReport {
    std::vector<int> pump_sizes;
    std::vector<double> deviations;   // one per pump size
    bool strictly_decreasing = false;
    double classical_cap_population = 0.0;
};

inline PdcConvergenceReport pdc_limit_convergence(const std::vector<int>& pump_sizes, int m,
                                                  double gamma_eff, double t, int compare_cap,
                                                  int classical_cap = 12,
                                                  const fock::EvolveOptions& options = {}) {
    if (pump_sizes.empty()) throw std::invalid_argument("pdc_limit_convergence: empty pump list");
    for (std::size_t k = 1; k < pump_sizes.size(); ++k)
        if (pump_sizes[k] <= pump_sizes[k - 1])
            throw std::invalid_argument("pdc_limit_convergence: pump sizes must increase");
    if (compare_cap >= pump_sizes.front())
        throw std::invalid_argument("pdc_limit_convergence: compare_cap must stay below the smallest pump");
    if (classical_cap <= compare_cap)
        throw std::invalid_argument("pdc_limit_convergence: classical_cap must exceed compare_cap");

    const SparseHermitian h_cl = build_classical_pump(m, gamma_eff, classical_cap);
    const StateVector cl0 = pump_initial_state(h_cl.basis, m, 0);
    const StateVector cl_t = fock::evolve(h_cl, cl0, t, options);
    std::vector<double> p_cl = emission_distribution(cl_t);
    p_cl.resize(static_cast<std::size_t>(classical_cap) + 1, 0.0);

    PdcConvergenceReport report;
    report.classical_cap_population = p_cl[static_cast<std::size_t>(classical_cap)];
    if (report.classical_cap_population > 1e-8)
        throw std::invalid_argument("pdc_limit_convergence: classical-pump cap " +
                                    std::to_string(classical_cap) + " is too small (population " +
                                    std::to_string(report.classical_cap_population) + " at the cap)");

    report.pump_sizes = pump_sizes;
    for (int N : pump_sizes) {
        OscillatorModelSpec spec;
        spec.m = m;
        spec.N = N;
        spec.gamma = gamma_eff / std::sqrt(static_cast<double>(N));
        const SparseHermitian h = build_singlet(spec);
        const StateVector psi0 = pump_initial_state(h.basis, m, N);
        const StateVector psi_t = fock::evolve(h, psi0, t, options);
        std::vector<double> p = emission_distribution(psi_t);
        p.resize(std::max(p.size(), p_cl.size()), 0.0);
        double deviation = 0.0;
        for (int l = 0; l <= compare_cap; ++l)
            deviation = std::max(deviation,
                                 std::abs(p[static_cast<std::size_t>(l)] - p_cl[static_cast<std::size_t>(l)]));
        report.deviations.push_back(deviation);
    }
    report.strictly_decreasing = true;
    for (std::size_t k = 1; k < report.deviations.size(); ++k)
        if (!(report.deviations[k] < report.deviations[k - 1])) report.strictly_decreasing = false;
    return report;
}

} // namespace stimclone::osc
