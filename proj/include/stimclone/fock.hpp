// fock.hpp -- bosonic Fock-space foundation: named mode layouts, enumeration of
// occupation bases restricted by integer conservation laws, ladder-operator
// products, sparse Hermitian operator assembly, and exact unitary evolution.

#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <algorithm>
#include <complex>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "stimclone/propagate.hpp"

namespace stimclone::fock {

using Complex = std::complex<double>;
using Occupation = std::vector<int>;
using SparseMatrix = Eigen::SparseMatrix<Complex>;
using propagate::EvolveOptions;

inline std::string occupation_to_string(const Occupation& occ) {
    std::ostringstream out;
    out << "(";
    for (std::size_t i = 0; i < occ.size(); ++i) out << (i ? "," : "") << occ[i];
    out << ")";
    return out.str();
}

// ---------------------------------------------------------------------------
// ModeLayout: ordered list of bosonic modes with optional per-mode caps.
// A cap of -1 means "no explicit cap"; such a mode must be bounded through
// the conservation laws before a basis can be enumerated.
// ---------------------------------------------------------------------------
struct ModeLayout {
    std::vector<std::string> labels;
    std::vector<int> caps; // -1 = no explicit cap

    ModeLayout() = default;
    explicit ModeLayout(std::vector<std::string> mode_labels, std::vector<int> mode_caps = {})
        : labels(std::move(mode_labels)), caps(std::move(mode_caps)) {
        if (labels.empty()) throw std::invalid_argument("ModeLayout: no modes");
        if (caps.empty()) caps.assign(labels.size(), -1);
        if (caps.size() != labels.size())
            throw std::invalid_argument("ModeLayout: caps/labels length mismatch");
        for (std::size_t i = 0; i < labels.size(); ++i)
            for (std::size_t j = i + 1; j < labels.size(); ++j)
                if (labels[i] == labels[j])
                    throw std::invalid_argument("ModeLayout: duplicate mode label '" + labels[i] + "'");
    }

    std::size_t size() const { return labels.size(); }

    std::size_t index_of(const std::string& label) const {
        for (std::size_t i = 0; i < labels.size(); ++i)
            if (labels[i] == label) return i;
        throw std::invalid_argument("ModeLayout: unknown mode label '" + label + "'");
    }

    bool has_mode(const std::string& label) const {
        return std::find(labels.begin(), labels.end(), label) != labels.end();
    }
};

// ---------------------------------------------------------------------------
// ConservedQuantity: integer linear form  sum_i coefficients[i] * n_i  pinned
// to an exact value.  OccupationBound is the inequality analogue (<= limit),
// used for caps on sums such as a total emitted-pair ceiling.
// ---------------------------------------------------------------------------
struct ConservedQuantity {
    std::vector<int> coefficients;
    int value = 0;
};

struct OccupationBound {
    std::vector<int> coefficients;
    int limit = 0;
};

// ---------------------------------------------------------------------------
// Basis: enumerated occupation tuples in lexicographic order (layout order),
// with an index map and the defining caps/constraints retained so operator
// application can distinguish cap truncation from constraint violations.
// ---------------------------------------------------------------------------
namespace detail {
struct OccupationHash {
    std::size_t operator()(const Occupation& occ) const {
        std::uint64_t h = 1469598103934665603ull; // FNV-1a
        for (int v : occ) {
            h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(v));
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }
};
} // namespace detail

enum class Membership { present, cap_excluded, constraint_excluded };

class Basis {
  public:
    Basis(ModeLayout layout, std::vector<Occupation> states,
          std::vector<ConservedQuantity> equalities, std::vector<OccupationBound> bounds)
        : layout_(std::move(layout)), states_(std::move(states)),
          equalities_(std::move(equalities)), bounds_(std::move(bounds)) {
        index_.reserve(states_.size());
        for (std::size_t i = 0; i < states_.size(); ++i) {
            if (!index_.emplace(states_[i], i).second)
                throw std::invalid_argument("Basis: duplicate state " + occupation_to_string(states_[i]));
        }
    }

    const ModeLayout& layout() const { return layout_; }
    std::size_t size() const { return states_.size(); }
    const Occupation& state(std::size_t i) const { return states_.at(i); }
    const std::vector<Occupation>& states() const { return states_; }
    const std::vector<ConservedQuantity>& equalities() const { return equalities_; }
    const std::vector<OccupationBound>& bounds() const { return bounds_; }

    std::optional<std::size_t> find(const Occupation& occ) const {
        auto it = index_.find(occ);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    // Classify a (non-negative) occupation tuple relative to this basis.
    Membership classify(const Occupation& occ) const {
        for (std::size_t i = 0; i < layout_.size(); ++i)
            if (layout_.caps[i] >= 0 && occ[i] > layout_.caps[i]) return Membership::cap_excluded;
        for (const auto& bound : bounds_) {
            long sum = 0;
            for (std::size_t i = 0; i < occ.size(); ++i) sum += static_cast<long>(bound.coefficients[i]) * occ[i];
            if (sum > bound.limit) return Membership::cap_excluded;
        }
        for (const auto& eq : equalities_) {
            long sum = 0;
            for (std::size_t i = 0; i < occ.size(); ++i) sum += static_cast<long>(eq.coefficients[i]) * occ[i];
            if (sum != eq.value) return Membership::constraint_excluded;
        }
        if (!find(occ))
            throw std::logic_error("Basis: tuple " + occupation_to_string(occ) +
                                   " satisfies every constraint yet is missing from the enumeration");
        return Membership::present;
    }

  private:
    ModeLayout layout_;
    std::vector<Occupation> states_;
    std::vector<ConservedQuantity> equalities_;
    std::vector<OccupationBound> bounds_;
    std::unordered_map<Occupation, std::size_t, detail::OccupationHash> index_;
};

using BasisPtr = std::shared_ptr<const Basis>;

// ---------------------------------------------------------------------------
// enumerate_basis: all occupation tuples satisfying the caps, the equality
// constraints, and the inequality bounds, in lexicographic order.
//
// Per-mode search ranges are derived by propagating the constraints against
// the explicit caps; if some mode remains unbounded the request is rejected
// (otherwise enumeration could not terminate).  The search prunes on interval
// arithmetic, so pinned modes cost nothing.
// ---------------------------------------------------------------------------
inline BasisPtr enumerate_basis(const ModeLayout& layout,
                                const std::vector<ConservedQuantity>& equalities,
                                const std::vector<OccupationBound>& bounds = {},
                                std::size_t max_states = 20000) {
    const std::size_t n = layout.size();
    for (const auto& eq : equalities)
        if (eq.coefficients.size() != n)
            throw std::invalid_argument("enumerate_basis: constraint arity mismatch");
    for (const auto& bound : bounds)
        if (bound.coefficients.size() != n)
            throw std::invalid_argument("enumerate_basis: bound arity mismatch");

    constexpr long unbounded = std::numeric_limits<long>::max();
    std::vector<long> cap(n);
    for (std::size_t i = 0; i < n; ++i) cap[i] = layout.caps[i] >= 0 ? layout.caps[i] : unbounded;

    // Derive missing caps:  c_i n_i = value - sum_{j != i} c_j n_j, maximized by
    // putting every negative-coefficient mode at its cap and the rest at zero.
    auto propagate_once = [&](const std::vector<int>& coeff, long limit) {
        bool changed = false;
        for (std::size_t i = 0; i < n; ++i) {
            if (coeff[i] <= 0) continue;
            long numerator = limit;
            bool usable = true;
            for (std::size_t j = 0; j < n && usable; ++j) {
                if (j == i || coeff[j] >= 0) continue;
                if (cap[j] == unbounded) usable = false;
                else numerator += static_cast<long>(-coeff[j]) * cap[j];
            }
            if (!usable) continue;
            const long candidate = numerator < 0 ? -1 : numerator / coeff[i];
            if (candidate < cap[i]) { cap[i] = candidate; changed = true; }
        }
        return changed;
    };
    for (std::size_t round = 0; round < 8 * n + 8; ++round) {
        bool changed = false;
        for (const auto& eq : equalities) changed |= propagate_once(eq.coefficients, eq.value);
        for (const auto& bound : bounds) changed |= propagate_once(bound.coefficients, bound.limit);
        if (!changed) break;
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (cap[i] == unbounded)
            throw std::invalid_argument("enumerate_basis: mode '" + layout.labels[i] +
                                        "' is unbounded; add a cap or a bounding constraint");
        if (cap[i] < 0) {
            // Constraints admit no occupation at all for this mode: empty basis.
            return std::make_shared<Basis>(layout, std::vector<Occupation>{}, equalities, bounds);
        }
    }

    std::vector<Occupation> states;
    Occupation occ(n, 0);

    // Interval pruning: partial sums plus the achievable range of the
    // remaining modes must still be able to reach the target.
    auto feasible = [&](std::size_t depth) {
        for (const auto& eq : equalities) {
            long partial = 0, lo = 0, hi = 0;
            for (std::size_t i = 0; i < depth; ++i) partial += static_cast<long>(eq.coefficients[i]) * occ[i];
            for (std::size_t i = depth; i < n; ++i) {
                const long reach = static_cast<long>(eq.coefficients[i]) * cap[i];
                if (reach > 0) hi += reach;
                else lo += reach;
            }
            if (partial + lo > eq.value || partial + hi < eq.value) return false;
        }
        for (const auto& bound : bounds) {
            long partial = 0, lo = 0;
            for (std::size_t i = 0; i < depth; ++i) partial += static_cast<long>(bound.coefficients[i]) * occ[i];
            for (std::size_t i = depth; i < n; ++i) {
                const long reach = static_cast<long>(bound.coefficients[i]) * cap[i];
                if (reach < 0) lo += reach;
            }
            if (partial + lo > bound.limit) return false;
        }
        return true;
    };

    auto recurse = [&](auto&& self, std::size_t depth) -> void {
        if (!feasible(depth)) return;
        if (depth == n) {
            if (states.size() >= max_states)
                throw resource_error("enumerate_basis: more than " + std::to_string(max_states) +
                                     " states; raise the ceiling if this size is intended");
            states.push_back(occ);
            return;
        }
        for (long v = 0; v <= cap[depth]; ++v) {
            occ[depth] = static_cast<int>(v);
            self(self, depth + 1);
        }
        occ[depth] = 0;
    };
    recurse(recurse, 0);

    return std::make_shared<Basis>(layout, std::move(states), equalities, bounds);
}

// ---------------------------------------------------------------------------
// StateVector: amplitudes over a shared basis.  Normalization is a property
// of particular states (initial states, evolution outputs), not an invariant
// of the type: ladder application legitimately produces unnormalized vectors.
// ---------------------------------------------------------------------------
struct StateVector {
    BasisPtr basis;
    Eigen::VectorXcd amplitudes;

    StateVector(BasisPtr state_basis, Eigen::VectorXcd amps)
        : basis(std::move(state_basis)), amplitudes(std::move(amps)) {
        if (!basis) throw std::invalid_argument("StateVector: null basis");
        if (static_cast<std::size_t>(amplitudes.size()) != basis->size())
            throw std::invalid_argument("StateVector: amplitude count does not match basis size");
    }

    double norm() const { return amplitudes.norm(); }
};

inline void require_same_basis(const BasisPtr& a, const BasisPtr& b, const char* who) {
    if (a == b) return;
    if (a && b && a->states() == b->states() && a->layout().labels == b->layout().labels) return;
    throw std::invalid_argument(std::string(who) + ": operands live on different bases");
}

inline StateVector zero_state(BasisPtr basis) {
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis->size()));
    return StateVector(std::move(basis), std::move(amps));
}

inline StateVector unit_state(BasisPtr basis, const Occupation& occ) {
    const auto idx = basis->find(occ);
    if (!idx)
        throw std::invalid_argument("unit_state: " + occupation_to_string(occ) + " is not in the basis");
    StateVector state = zero_state(std::move(basis));
    state.amplitudes[static_cast<Eigen::Index>(*idx)] = Complex(1.0, 0.0);
    return state;
}

inline Complex overlap(const StateVector& a, const StateVector& b) {
    require_same_basis(a.basis, b.basis, "overlap");
    return a.amplitudes.dot(b.amplitudes); // Eigen conjugates the left operand
}

// ---------------------------------------------------------------------------
// Ladder products: an ordered product of raising/lowering operators with a
// complex coefficient.  Operators are written left to right as in formulas,
// i.e. {raise a1, raise b2, lower c} means  a1^dag b2^dag c  and the rightmost
// factor acts first.
// ---------------------------------------------------------------------------
struct LadderOp {
    std::size_t mode = 0;
    bool raising = false;
};

inline LadderOp raising(std::size_t mode) { return {mode, true}; }
inline LadderOp lowering(std::size_t mode) { return {mode, false}; }

struct LadderProduct {
    Complex coefficient{1.0, 0.0};
    std::vector<LadderOp> ops;
};

namespace detail {
// Walk a ladder product over one occupation tuple.  Returns the accumulated
// sqrt factor (0 when annihilating an empty mode); `occ` is updated in place.
inline double walk_product(const LadderProduct& product, Occupation& occ) {
    double factor = 1.0;
    for (auto it = product.ops.rbegin(); it != product.ops.rend(); ++it) {
        int& n = occ[it->mode];
        if (it->raising) {
            factor *= std::sqrt(static_cast<double>(n + 1));
            ++n;
        } else {
            if (n == 0) return 0.0;
            factor *= std::sqrt(static_cast<double>(n));
            --n;
        }
    }
    return factor;
}
} // namespace detail

// ---------------------------------------------------------------------------
// apply_ladder / apply_terms: apply ladder products to a state.  Amplitude
// annihilated below zero occupation vanishes; targets excluded by an explicit
// cap are truncated away (finite-mode semantics); targets that would violate
// an equality constraint indicate an operator/basis mismatch and throw.
// ---------------------------------------------------------------------------
inline StateVector apply_ladder(const LadderProduct& product, const StateVector& state) {
    const Basis& basis = *state.basis;
    for (const auto& op : product.ops)
        if (op.mode >= basis.layout().size())
            throw std::invalid_argument("apply_ladder: operator references a mode outside the layout");

    StateVector result = zero_state(state.basis);
    Occupation occ;
    for (std::size_t j = 0; j < basis.size(); ++j) {
        const Complex amp = state.amplitudes[static_cast<Eigen::Index>(j)];
        if (amp == Complex(0.0, 0.0)) continue;
        occ = basis.state(j);
        const double factor = detail::walk_product(product, occ);
        if (factor == 0.0) continue;
        switch (basis.classify(occ)) {
            case Membership::present:
                result.amplitudes[static_cast<Eigen::Index>(*basis.find(occ))] +=
                    product.coefficient * factor * amp;
                break;
            case Membership::cap_excluded:
                break; // truncated by an explicit cap
            case Membership::constraint_excluded:
                throw std::domain_error("apply_ladder: target " + occupation_to_string(occ) +
                                        " violates the basis constraints");
        }
    }
    return result;
}

inline StateVector apply_terms(const std::vector<LadderProduct>& terms, const StateVector& state) {
    StateVector result = zero_state(state.basis);
    for (const auto& term : terms) {
        const StateVector piece = apply_ladder(term, state);
        result.amplitudes += piece.amplitudes;
    }
    return result;
}

// ---------------------------------------------------------------------------
// SparseHermitian: sparse operator bound to its basis.  Construction always
// verifies Hermiticity exactly (the assembly below makes the mirrored entries
// bitwise conjugate, so the check costs one sparse subtraction).
// ---------------------------------------------------------------------------
struct SparseHermitian {
    BasisPtr basis;
    SparseMatrix matrix;

    SparseHermitian(BasisPtr op_basis, SparseMatrix op_matrix)
        : basis(std::move(op_basis)), matrix(std::move(op_matrix)) {
        if (!basis) throw std::invalid_argument("SparseHermitian: null basis");
        const auto dim = static_cast<Eigen::Index>(basis->size());
        if (matrix.rows() != dim || matrix.cols() != dim)
            throw std::invalid_argument("SparseHermitian: matrix does not match basis size");
        SparseMatrix adjoint = SparseMatrix(matrix.adjoint());
        SparseMatrix diff = matrix - adjoint;
        double max_abs = 0.0;
        for (int col = 0; col < diff.outerSize(); ++col)
            for (SparseMatrix::InnerIterator it(diff, col); it; ++it)
                max_abs = std::max(max_abs, std::abs(it.value()));
        if (max_abs != 0.0)
            throw std::invalid_argument("SparseHermitian: matrix is not exactly Hermitian (max |H - H^dag| = " +
                                        std::to_string(max_abs) + ")");
    }

    Eigen::MatrixXcd dense() const { return Eigen::MatrixXcd(matrix); }
};

// ---------------------------------------------------------------------------
// build_operator: assemble sum_k terms[k] over a basis.  With add_adjoint the
// result is T + T^dag, assembled so that the two mirror contributions of every
// matrix element are exact complex conjugates; without it the given terms must
// already form a Hermitian operator (verified, throws otherwise).
// ---------------------------------------------------------------------------
inline SparseHermitian build_operator(const std::vector<LadderProduct>& terms, BasisPtr basis,
                                      bool add_adjoint = true) {
    const auto dim = static_cast<Eigen::Index>(basis->size());
    std::vector<Eigen::Triplet<Complex>> triplets;
    Occupation occ;
    for (std::size_t j = 0; j < basis->size(); ++j) {
        for (const auto& term : terms) {
            occ = basis->state(j);
            const double factor = detail::walk_product(term, occ);
            if (factor == 0.0) continue;
            switch (basis->classify(occ)) {
                case Membership::present: {
                    const auto i = static_cast<Eigen::Index>(*basis->find(occ));
                    const Complex value = term.coefficient * factor;
                    triplets.emplace_back(i, static_cast<Eigen::Index>(j), value);
                    if (add_adjoint)
                        triplets.emplace_back(static_cast<Eigen::Index>(j), i, std::conj(value));
                    break;
                }
                case Membership::cap_excluded:
                    break;
                case Membership::constraint_excluded:
                    throw std::domain_error("build_operator: term maps " +
                                            occupation_to_string(basis->state(j)) + " to " +
                                            occupation_to_string(occ) +
                                            ", which violates the basis constraints");
            }
        }
    }
    SparseMatrix matrix(dim, dim);
    matrix.setFromTriplets(triplets.begin(), triplets.end());
    return SparseHermitian(std::move(basis), std::move(matrix));
}

// ---------------------------------------------------------------------------
// evolve: psi(t) = exp(-iHt) psi, exact to the engine tolerances.  Dimensions
// up to options.dense_threshold use the eigendecomposition path; larger ones
// use Taylor stepping; above options.max_dimension a resource_error is thrown.
// Norm preservation within 1e-12 is enforced by the engine.
// ---------------------------------------------------------------------------
inline StateVector evolve(const SparseHermitian& hamiltonian, const StateVector& state, double t,
                          const EvolveOptions& options = {}) {
    require_same_basis(hamiltonian.basis, state.basis, "evolve");
    Eigen::VectorXcd amps = propagate::evolve_vector(hamiltonian.matrix, state.amplitudes, t, options);
    return StateVector(state.basis, std::move(amps));
}

// Propagator: the dense eigendecomposition held once for repeated times.
class Propagator {
  public:
    explicit Propagator(const SparseHermitian& hamiltonian)
        : basis_(hamiltonian.basis), engine_(hamiltonian.dense()) {}

    StateVector apply(const StateVector& state, double t) const {
        require_same_basis(basis_, state.basis, "Propagator::apply");
        return StateVector(state.basis, engine_.apply(state.amplitudes, t));
    }

    const Eigen::VectorXd& eigenvalues() const { return engine_.eigenvalues(); }

  private:
    BasisPtr basis_;
    propagate::HermitianPropagator engine_;
};

// ---------------------------------------------------------------------------
// conserved_expectation: <psi| sum_i c_i n_i |psi> for a diagonal linear form.
// ---------------------------------------------------------------------------
inline double conserved_expectation(const ConservedQuantity& quantity, const StateVector& state) {
    const Basis& basis = *state.basis;
    if (quantity.coefficients.size() != basis.layout().size())
        throw std::invalid_argument("conserved_expectation: coefficient arity mismatch");
    double total = 0.0;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const double weight = std::norm(state.amplitudes[static_cast<Eigen::Index>(i)]);
        if (weight == 0.0) continue;
        double form = 0.0;
        const Occupation& occ = basis.state(i);
        for (std::size_t m = 0; m < occ.size(); ++m) form += quantity.coefficients[m] * occ[m];
        total += weight * form;
    }
    return total;
}

} // namespace stimclone::fock
