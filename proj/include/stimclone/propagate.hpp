// propagate.hpp -- exact unitary time-evolution engines shared by every model.
//
// Two paths, selected by dimension:
//   * dense Hermitian eigendecomposition  psi(t) = V exp(-i diag(w) t) V^dag psi
//     for dimensions up to EvolveOptions::dense_threshold,
//   * scaled Taylor stepping of exp(-iHt) on the sparse matrix, with the step
//     split chosen so each step converges to machine precision and the last
//     retained term bounds the local error.
// Anything above EvolveOptions::max_dimension is refused with resource_error.

#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace stimclone {

// Thrown when a requested computation exceeds a configured size ceiling.
struct resource_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace stimclone

namespace stimclone::propagate {

using Complex = std::complex<double>;
using SparseMatrix = Eigen::SparseMatrix<Complex>;

struct EvolveOptions {
    int dense_threshold = 2000;   // largest dimension evolved by eigendecomposition
    int max_dimension = 20000;    // absolute ceiling; beyond this -> resource_error
    double local_tolerance = 1e-12; // Taylor-path local error target per full evolve
};

// ---------------------------------------------------------------------------
// HermitianPropagator: eigendecomposition held once, applied at any time.
// ---------------------------------------------------------------------------
class HermitianPropagator {
  public:
    explicit HermitianPropagator(const Eigen::MatrixXcd& h) {
        if (h.rows() != h.cols())
            throw std::invalid_argument("HermitianPropagator: matrix must be square");
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
        if (solver.info() != Eigen::Success)
            throw std::runtime_error("HermitianPropagator: eigendecomposition failed");
        eigenvalues_ = solver.eigenvalues();
        eigenvectors_ = solver.eigenvectors();
    }

    Eigen::VectorXcd apply(const Eigen::VectorXcd& v, double t) const {
        if (v.size() != eigenvectors_.rows())
            throw std::invalid_argument("HermitianPropagator: vector dimension mismatch");
        Eigen::VectorXcd modal = eigenvectors_.adjoint() * v;
        for (Eigen::Index k = 0; k < modal.size(); ++k)
            modal[k] *= std::exp(Complex(0.0, -eigenvalues_[k] * t));
        return eigenvectors_ * modal;
    }

    const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }
    const Eigen::MatrixXcd& eigenvectors() const { return eigenvectors_; }

  private:
    Eigen::VectorXd eigenvalues_;
    Eigen::MatrixXcd eigenvectors_;
};

// ---------------------------------------------------------------------------
// one_norm: max column absolute sum of a sparse matrix (cheap norm bound used
// to pick the Taylor step count).
// ---------------------------------------------------------------------------
inline double one_norm(const SparseMatrix& h) {
    double best = 0.0;
    for (int col = 0; col < h.outerSize(); ++col) {
        double sum = 0.0;
        for (SparseMatrix::InnerIterator it(h, col); it; ++it) sum += std::abs(it.value());
        best = std::max(best, sum);
    }
    return best;
}

// ---------------------------------------------------------------------------
// taylor_evolve: exp(-iHt) v by stepping.  |t| is split so that
// one_norm(H) * dt <= 1 per step; each step sums the Taylor series until the
// running term is below the per-step error budget (and then a little further,
// to machine precision, since terms decay factorially at this scaling).
// ---------------------------------------------------------------------------
inline Eigen::VectorXcd taylor_evolve(const SparseMatrix& h, const Eigen::VectorXcd& v,
                                      double t, double local_tolerance) {
    if (h.rows() != h.cols() || h.rows() != v.size())
        throw std::invalid_argument("taylor_evolve: dimension mismatch");
    if (t == 0.0) return v;

    const double scale = one_norm(h) * std::abs(t);
    const int steps = std::max(1, static_cast<int>(std::ceil(scale)));
    const double dt = t / static_cast<double>(steps);
    const double step_budget = local_tolerance / static_cast<double>(steps);
    constexpr int max_order = 200;

    Eigen::VectorXcd state = v;
    for (int step = 0; step < steps; ++step) {
        Eigen::VectorXcd sum = state;
        Eigen::VectorXcd term = state;
        double term_norm = term.norm();
        int order = 0;
        while (term_norm > 1e-4 * step_budget) {
            if (++order > max_order)
                throw std::runtime_error("taylor_evolve: series failed to converge within " +
                                         std::to_string(max_order) + " terms");
            term = (Complex(0.0, -dt) / static_cast<double>(order)) * (h * term).eval();
            sum += term;
            term_norm = term.norm();
        }
        state = sum;
    }
    return state;
}

// ---------------------------------------------------------------------------
// evolve_vector: dispatch between the dense and Taylor paths, then confirm
// unitarity (norm preserved to 1e-12 relative to the input norm).
// ---------------------------------------------------------------------------
inline Eigen::VectorXcd evolve_vector(const SparseMatrix& h, const Eigen::VectorXcd& v,
                                      double t, const EvolveOptions& options = {}) {
    const Eigen::Index dim = h.rows();
    if (dim != h.cols() || dim != v.size())
        throw std::invalid_argument("evolve_vector: dimension mismatch");
    if (dim > options.max_dimension)
        throw resource_error("evolve_vector: dimension " + std::to_string(dim) +
                             " exceeds the ceiling " + std::to_string(options.max_dimension));

    Eigen::VectorXcd result;
    if (dim <= options.dense_threshold) {
        result = HermitianPropagator(Eigen::MatrixXcd(h)).apply(v, t);
    } else {
        result = taylor_evolve(h, v, t, options.local_tolerance);
    }

    const double before = v.norm();
    const double after = result.norm();
    if (std::abs(after - before) > 1e-12 * std::max(1.0, before))
        throw std::runtime_error("evolve_vector: norm drifted from " + std::to_string(before) +
                                 " to " + std::to_string(after));
    return result;
}

} // namespace stimclone::propagate
