// Tests for the direct three-level-atom simulation: tensor-space plumbing,
// the collective level-transfer algebra on symmetric states, and the exact
// correspondence with the five-mode oscillator model.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "stimclone/lambda_system.hpp"
#include "stimclone/oscillator.hpp"
#include "stimclone/propagate.hpp"
#include "stimclone/tensor.hpp"

using namespace stimclone;
using tensor::Complex;
using Catch::Approx;

namespace {
Eigen::MatrixXcd dense(const tensor::SparseMatrix& h) { return Eigen::MatrixXcd(h); }
} // namespace

TEST_CASE("tensor layout indexing is lexicographic and reversible", "[lambda]") {
    const tensor::TensorLayout layout{2, 2, 1};

    SECTION("encode and decode round-trip every index") {
        for (std::int64_t i = 0; i < layout.dimension(); ++i) {
            const auto ket = tensor::decode(layout, i);
            REQUIRE(tensor::encode(layout, ket) == i);
        }
    }

    SECTION("index order equals lexicographic order on (levels, photons)") {
        for (std::int64_t i = 0; i + 1 < layout.dimension(); ++i) {
            const auto a = tensor::decode(layout, i);
            const auto b = tensor::decode(layout, i + 1);
            const auto key = [](const tensor::TensorKet& k) {
                auto v = k.levels;
                v.push_back(k.n1);
                v.push_back(k.n2);
                return v;
            };
            REQUIRE(key(a) < key(b));
        }
    }

    SECTION("register size is capped") {
        tensor::TensorLayout big{5, 1, 1};
        REQUIRE_THROWS_AS(big.validate(), resource_error);
    }

    SECTION("malformed kets are rejected") {
        REQUIRE_THROWS_AS(tensor::encode(layout, {{0, 3}, 0, 0}), std::invalid_argument);
        REQUIRE_THROWS_AS(tensor::encode(layout, {{0, 0}, 3, 0}), std::invalid_argument);
        REQUIRE_THROWS_AS(tensor::decode(layout, layout.dimension()), std::out_of_range);
    }
}

TEST_CASE("the atomic coupling matrix is Hermitian and atom-blind", "[lambda]") {
    const double gamma = 0.8;

    SECTION("Hermitian exactly by construction") {
        const auto h = lambda::build_lambda_hamiltonian(2, gamma, 3);
        REQUIRE((dense(h) - dense(h).adjoint()).cwiseAbs().maxCoeff() == 0.0);
    }

    SECTION("zero coupling gives the zero matrix") {
        const auto h = lambda::build_lambda_hamiltonian(2, 0.0, 2);
        REQUIRE(dense(h).cwiseAbs().maxCoeff() == 0.0);
    }

    SECTION("swapping any two atom slots leaves the matrix unchanged exactly") {
        const tensor::TensorLayout layout{3, 2, 2};
        const auto h = lambda::build_lambda_hamiltonian(3, gamma, 2);
        for (int first = 0; first < 3; ++first) {
            for (int second = first + 1; second < 3; ++second) {
                const auto swapped = tensor::swap_atoms(layout, h, first, second);
                REQUIRE((dense(swapped) - dense(h)).cwiseAbs().maxCoeff() == 0.0);
            }
        }
    }

    SECTION("oversized tensor spaces are refused") {
        REQUIRE_THROWS_AS(lambda::build_lambda_hamiltonian(4, gamma, 8), resource_error);
    }
}

TEST_CASE("single-atom evolution reproduces the closed-form amplitudes", "[lambda]") {
    const double gamma = 1.0;
    const auto h = lambda::build_lambda_hamiltonian(1, gamma, 2);
    const auto psi0 = lambda::lambda_initial_state(1, 1, 2);

    SECTION("cos / sin amplitude triple at several times") {
        using L = lambda::AtomLevel;
        for (double t : {0.3, 0.9, 2.1}) {
            const auto out = tensor::evolve(h, psi0, t);
            const double theta = std::sqrt(3.0) * gamma * t;
            const auto at = [&](L level, int n1, int n2) {
                return out.amplitudes[tensor::encode(out.layout,
                                                     {{static_cast<int>(level)}, n1, n2})];
            };
            REQUIRE(std::abs(at(L::e, 1, 0) - Complex(std::cos(theta), 0.0)) < 1e-12);
            REQUIRE(std::abs(at(L::g1, 2, 0) -
                             Complex(0.0, -std::sqrt(2.0 / 3.0) * std::sin(theta))) < 1e-12);
            REQUIRE(std::abs(at(L::g2, 1, 1) -
                             Complex(0.0, -std::sqrt(1.0 / 3.0) * std::sin(theta))) < 1e-12);
        }
    }

    SECTION("the squared coupling acts on the seed as the scalar 3 gamma^2") {
        const Eigen::VectorXcd h2psi = h * (h * psi0.amplitudes);
        REQUIRE((h2psi - 3.0 * gamma * gamma * psi0.amplitudes).cwiseAbs().maxCoeff() < 3e-14);
    }
}

TEST_CASE("symmetric states carry inverse-multinomial amplitudes", "[lambda]") {
    SECTION("all atoms in one level is a single product ket") {
        const auto v = lambda::symmetric_state(3, 3, 0, 0);
        REQUIRE(std::abs(v[0] - Complex(1.0, 0.0)) == 0.0);
        REQUIRE(v.norm() == Approx(1.0));
    }

    SECTION("two atoms split between g1 and e") {
        const auto v = lambda::symmetric_state(2, 1, 0, 1);
        // patterns (g1,e) and (e,g1) at base-3 indices 2 and 6
        REQUIRE(std::abs(v[2] - Complex(1.0 / std::sqrt(2.0), 0.0)) < 1e-15);
        REQUIRE(std::abs(v[6] - Complex(1.0 / std::sqrt(2.0), 0.0)) < 1e-15);
        REQUIRE(v.cwiseAbs().sum() == Approx(std::sqrt(2.0)).epsilon(1e-14));
    }

    SECTION("normalized for every sector up to five atoms") {
        for (int atoms = 1; atoms <= 5; ++atoms) {
            for (int i = 0; i <= atoms; ++i) {
                for (int j = 0; i + j <= atoms; ++j) {
                    const auto v = lambda::symmetric_state(atoms, i, j, atoms - i - j);
                    REQUIRE(v.norm() == Approx(1.0).epsilon(1e-13));
                }
            }
        }
    }

    SECTION("invalid sector counts are rejected") {
        REQUIRE_THROWS_AS(lambda::symmetric_state(2, 1, 1, 1), std::invalid_argument);
        REQUIRE_THROWS_AS(lambda::symmetric_state(2, -1, 2, 1), std::invalid_argument);
    }
}

TEST_CASE("collective transfers act as ladder-operator pairs on symmetric states",
          "[lambda]") {
    SECTION("two excited atoms lower into g1 with factor sqrt(2)") {
        const auto image = lambda::apply_collective(2, lambda::AtomLevel::g1,
                                                    lambda::AtomLevel::e,
                                                    lambda::symmetric_state(2, 0, 0, 2));
        const Eigen::VectorXcd expected = std::sqrt(2.0) * lambda::symmetric_state(2, 1, 0, 1);
        REQUIRE((image - expected).cwiseAbs().maxCoeff() < 1e-14);
    }

    SECTION("no excited atoms means lowering annihilates") {
        const auto report = lambda::verify_schwinger_action(3, 2, 1, 0);
        REQUIRE(report.passed);
    }

    SECTION("exhaustively over every sector up to four atoms") {
        for (int atoms = 1; atoms <= 4; ++atoms) {
            for (int i = 0; i <= atoms; ++i) {
                for (int j = 0; i + j <= atoms; ++j) {
                    const auto report =
                        lambda::verify_schwinger_action(atoms, i, j, atoms - i - j);
                    CAPTURE(atoms, i, j);
                    REQUIRE(report.passed);
                    REQUIRE(report.max_deviation <= 1e-12);
                }
            }
        }
    }
}

TEST_CASE("evolution never leaves the symmetric sector", "[lambda]") {
    const auto h = lambda::build_lambda_hamiltonian(2, 1.0, 3);
    const auto psi0 = lambda::lambda_initial_state(2, 1, 3);
    for (double t : {0.4, 1.1, 2.3}) {
        const auto out = tensor::evolve(h, psi0, t);
        REQUIRE(lambda::symmetric_projection_deficit(out) < 1e-10);
    }
}

TEST_CASE("the oscillator map preserves structure and inverts cleanly", "[lambda]") {
    SECTION("the seed state maps to the five-mode seed ket") {
        const auto psi0 = lambda::lambda_initial_state(2, 1, 3);
        const auto target = osc::singlet_basis(2, 1);
        const auto mapped = lambda::map_to_oscillator(psi0, target);
        REQUIRE(std::abs(mapped.amplitudes[*target->find({1, 0, 0, 0, 2})] -
                         Complex(1.0, 0.0)) == 0.0);
        REQUIRE(mapped.norm() == Approx(1.0));
    }

    SECTION("a state with an antisymmetric component is rejected") {
        const tensor::TensorLayout layout{2, 1, 1};
        auto bad = tensor::zero_state(layout);
        const Complex a(1.0 / std::sqrt(2.0), 0.0);
        bad.amplitudes[tensor::encode(layout, {{0, 2}, 0, 0})] = a;
        bad.amplitudes[tensor::encode(layout, {{2, 0}, 0, 0})] = -a;
        REQUIRE_THROWS_AS(lambda::map_to_oscillator(bad, osc::singlet_basis(2, 0)),
                          std::domain_error);
    }

    SECTION("an atom-count mismatch in the inverse map is rejected") {
        const auto target = osc::singlet_basis(2, 1);
        const auto state = fock::unit_state(target, {1, 0, 0, 0, 2});
        REQUIRE_THROWS_AS(lambda::map_from_oscillator(state, {3, 3, 3}),
                          std::domain_error);
    }

    SECTION("inverse then forward is the identity on evolved states") {
        const auto h = lambda::build_lambda_hamiltonian(2, 1.0, 3);
        const auto psi = tensor::evolve(h, lambda::lambda_initial_state(2, 1, 3), 0.9);
        const auto target = osc::singlet_basis(2, 1);
        const auto mapped = lambda::map_to_oscillator(psi, target);
        const auto back = lambda::map_from_oscillator(mapped, psi.layout);
        REQUIRE((back.amplitudes - psi.amplitudes).norm() < 1e-12);
        const auto forward_again = lambda::map_to_oscillator(back, target);
        REQUIRE((forward_again.amplitudes - mapped.amplitudes).norm() < 1e-13);
    }
}

TEST_CASE("atomic and oscillator dynamics are equivalent through the map", "[lambda]") {
    const double gamma = 1.0;
    propagate::EvolveOptions series_only;
    series_only.dense_threshold = 0; // polynomial stepping keeps the grid fast
    for (int atoms = 1; atoms <= 3; ++atoms) {
        for (int m = 0; m <= 3; ++m) {
            const int cap = m + atoms;
            const auto h_atomic = lambda::build_lambda_hamiltonian(atoms, gamma, cap);
            const auto psi0 = lambda::lambda_initial_state(atoms, m, cap);
            const auto target = osc::singlet_basis(atoms, m);
            const fock::Propagator osc_prop(osc::build_singlet_on(target, gamma));
            const auto mapped0 = lambda::map_to_oscillator(psi0, target);
            for (double t : {0.1, 0.5, 1.0, 2.0}) {
                const auto evolved = tensor::evolve(h_atomic, psi0, t, series_only);
                const auto mapped = lambda::map_to_oscillator(evolved, target);
                const auto direct = osc_prop.apply(mapped0, t);
                CAPTURE(atoms, m, t);
                REQUIRE((mapped.amplitudes - direct.amplitudes).cwiseAbs().maxCoeff() < 1e-10);
            }
        }
    }
}
