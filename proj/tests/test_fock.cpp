// Tests for the Fock-space foundation: constrained basis enumeration, ladder
// products, operator assembly, and exact evolution.

#include <catch2/catch_amalgamated.hpp>

#include <complex>
#include <random>

#include "stimclone/fock.hpp"
#include "support/oracles.hpp"

using namespace stimclone;
using fock::Complex;
using fock::ConservedQuantity;
using fock::LadderProduct;
using fock::ModeLayout;
using fock::Occupation;
using Catch::Approx;

namespace {

ModeLayout five_modes() { return ModeLayout({"a1", "a2", "b1", "b2", "c"}); }

// The emission sector used throughout: n_a1 - n_b2 = m, n_a2 - n_b1 = 0,
// n_c + n_b1 + n_b2 = N.
std::vector<ConservedQuantity> sector_constraints(int N, int m) {
    return {ConservedQuantity{{1, 0, 0, -1, 0}, m},
            ConservedQuantity{{0, 1, -1, 0, 0}, 0},
            ConservedQuantity{{0, 0, 1, 1, 1}, N}};
}

std::vector<LadderProduct> emission_terms(const ModeLayout& layout, double gamma) {
    const auto a1 = layout.index_of("a1"), a2 = layout.index_of("a2");
    const auto b1 = layout.index_of("b1"), b2 = layout.index_of("b2");
    const auto c = layout.index_of("c");
    return {LadderProduct{Complex(gamma, 0.0), {fock::lowering(a1), fock::lowering(b2), fock::raising(c)}},
            LadderProduct{Complex(-gamma, 0.0), {fock::lowering(a2), fock::lowering(b1), fock::raising(c)}}};
}

double cdist(Complex a, Complex b) { return std::abs(a - b); }

} // namespace

TEST_CASE("constrained enumeration matches the exhaustive scan", "[fock]") {
    SECTION("single-excitation sector has exactly three states, lexicographically ordered") {
        const auto basis = fock::enumerate_basis(five_modes(), sector_constraints(1, 1));
        REQUIRE(basis->size() == 3);
        REQUIRE(basis->state(0) == Occupation{1, 0, 0, 0, 1});
        REQUIRE(basis->state(1) == Occupation{1, 1, 1, 0, 0});
        REQUIRE(basis->state(2) == Occupation{2, 0, 0, 1, 0});
    }

    SECTION("sector dimension is (N+1)(N+2)/2 and the state sets match the oracle") {
        for (int N = 0; N <= 6; ++N) {
            for (int m : {0, 1, 2}) {
                const auto basis = fock::enumerate_basis(five_modes(), sector_constraints(N, m));
                REQUIRE(basis->size() == static_cast<std::size_t>((N + 1) * (N + 2) / 2));
                const auto expected =
                    oracle::brute_enumerate({m + N, N, N, N, N}, sector_constraints(N, m));
                REQUIRE(basis->states() == expected);
            }
        }
    }

    SECTION("empty pump leaves the single photon-only state") {
        const auto basis = fock::enumerate_basis(five_modes(), sector_constraints(0, 3));
        REQUIRE(basis->size() == 1);
        REQUIRE(basis->state(0) == Occupation{3, 0, 0, 0, 0});
    }

    SECTION("a mode left unbounded by caps and constraints is rejected") {
        REQUIRE_THROWS_AS(
            fock::enumerate_basis(five_modes(), {ConservedQuantity{{1, 0, 0, -1, 0}, 1}}),
            std::invalid_argument);
    }

    SECTION("enumeration is deterministic") {
        const auto first = fock::enumerate_basis(five_modes(), sector_constraints(4, 2));
        const auto second = fock::enumerate_basis(five_modes(), sector_constraints(4, 2));
        REQUIRE(first->states() == second->states());
    }

    SECTION("state ceiling raises a resource error") {
        REQUIRE_THROWS_AS(fock::enumerate_basis(five_modes(), sector_constraints(6, 1), {}, 10),
                          resource_error);
    }

    SECTION("inequality bounds restrict the enumeration") {
        const ModeLayout pair_modes({"a1", "a2", "b1", "b2"});
        const std::vector<ConservedQuantity> eqs = {ConservedQuantity{{1, 0, 0, -1}, 1},
                                                    ConservedQuantity{{0, 1, -1, 0}, 0}};
        const std::vector<fock::OccupationBound> bounds = {fock::OccupationBound{{0, 0, 1, 1}, 2}};
        const auto basis = fock::enumerate_basis(pair_modes, eqs, bounds);
        const auto expected = oracle::brute_enumerate({3, 2, 2, 2}, eqs, bounds);
        REQUIRE(basis->states() == expected);
        for (const auto& occ : basis->states()) REQUIRE(occ[2] + occ[3] <= 2);
    }
}

TEST_CASE("ladder products act with the square-root factors", "[fock]") {
    const auto sector = fock::enumerate_basis(five_modes(), sector_constraints(1, 1));
    const auto a1 = sector->layout().index_of("a1");
    const auto b2 = sector->layout().index_of("b2");
    const auto c = sector->layout().index_of("c");

    SECTION("composite raising matches the product of factors") {
        // a1^dag b2^dag c on |1,0,0,0,1>  ->  sqrt(2) * 1 * 1 |2,0,0,1,0>
        const auto psi = fock::unit_state(sector, {1, 0, 0, 0, 1});
        const LadderProduct product{Complex(1.0, 0.0),
                                    {fock::raising(a1), fock::raising(b2), fock::lowering(c)}};
        const auto out = fock::apply_ladder(product, psi);
        REQUIRE(cdist(out.amplitudes[*sector->find({2, 0, 0, 1, 0})], Complex(std::sqrt(2.0), 0.0)) <
                1e-15);
        REQUIRE(out.norm() == Approx(std::sqrt(2.0)).epsilon(1e-14));
    }

    SECTION("annihilating an empty mode gives the zero vector") {
        const auto psi = fock::unit_state(sector, {1, 0, 0, 0, 1});
        const auto out = fock::apply_ladder({Complex(1.0, 0.0), {fock::lowering(b2)}}, psi);
        REQUIRE(out.norm() == 0.0);
    }

    SECTION("a target violating the sector constraints is an error naming the tuple") {
        const auto psi = fock::unit_state(sector, {1, 0, 0, 0, 1});
        try {
            fock::apply_ladder({Complex(1.0, 0.0), {fock::raising(a1)}}, psi);
            FAIL("expected a constraint violation");
        } catch (const std::domain_error& error) {
            REQUIRE(std::string(error.what()).find("(2,0,0,0,1)") != std::string::npos);
        }
    }

    SECTION("plain raising on a capped layout carries sqrt(n+1)") {
        const ModeLayout capped({"a1", "a2", "b1", "b2", "c"}, {3, 1, 1, 1, 1});
        const auto basis = fock::enumerate_basis(capped, {});
        const auto psi = fock::unit_state(basis, {1, 0, 0, 0, 1});
        const auto out = fock::apply_ladder({Complex(1.0, 0.0), {fock::raising(0)}}, psi);
        REQUIRE(cdist(out.amplitudes[*basis->find({2, 0, 0, 0, 1})], Complex(std::sqrt(2.0), 0.0)) <
                1e-15);
    }

    SECTION("raising past an explicit cap truncates instead of erroring") {
        const ModeLayout capped({"a"}, {2});
        const auto basis = fock::enumerate_basis(capped, {});
        const auto top = fock::unit_state(basis, {2});
        const auto out = fock::apply_ladder({Complex(1.0, 0.0), {fock::raising(0)}}, top);
        REQUIRE(out.norm() == 0.0);
    }
}

TEST_CASE("operator assembly is exactly Hermitian and matches hand couplings", "[fock]") {
    const double gamma = 0.7;
    const auto sector = fock::enumerate_basis(five_modes(), sector_constraints(1, 1));
    const auto h = fock::build_operator(emission_terms(sector->layout(), gamma), sector, true);

    SECTION("single-excitation couplings carry gamma sqrt(2) and -gamma") {
        const auto dense = h.dense();
        const auto i0 = *sector->find({1, 0, 0, 0, 1});
        const auto i_pair = *sector->find({2, 0, 0, 1, 0});
        const auto i_cross = *sector->find({1, 1, 1, 0, 0});
        REQUIRE(cdist(dense(i_pair, i0), Complex(gamma * std::sqrt(2.0), 0.0)) < 1e-15);
        REQUIRE(cdist(dense(i_cross, i0), Complex(-gamma, 0.0)) < 1e-15);
        REQUIRE(cdist(dense(i_pair, i_cross), Complex(0.0, 0.0)) == 0.0);
        REQUIRE(cdist(dense(i0, i0), Complex(0.0, 0.0)) == 0.0);
    }

    SECTION("the assembled matrix equals its adjoint exactly") {
        const Eigen::MatrixXcd dense = h.dense();
        REQUIRE((dense - dense.adjoint()).cwiseAbs().maxCoeff() == 0.0);
    }

    SECTION("an empty term list assembles the zero operator") {
        const auto zero = fock::build_operator({}, sector, true);
        REQUIRE(zero.dense().cwiseAbs().maxCoeff() == 0.0);
    }

    SECTION("non-Hermitian term lists are rejected when no adjoint is added") {
        const ModeLayout capped({"a"}, {3});
        const auto basis = fock::enumerate_basis(capped, {});
        REQUIRE_THROWS_AS(
            fock::build_operator({LadderProduct{Complex(1.0, 0.0), {fock::lowering(0)}}}, basis, false),
            std::invalid_argument);
    }

    SECTION("assembly is deterministic") {
        const auto again = fock::build_operator(emission_terms(sector->layout(), gamma), sector, true);
        REQUIRE((h.dense() - again.dense()).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("exact evolution reproduces the single-excitation closed form", "[fock]") {
    const double gamma = 1.3;
    const auto sector = fock::enumerate_basis(five_modes(), sector_constraints(1, 1));
    const auto h = fock::build_operator(emission_terms(sector->layout(), gamma), sector, true);
    const auto psi0 = fock::unit_state(sector, {1, 0, 0, 0, 1});
    const auto i0 = static_cast<Eigen::Index>(*sector->find({1, 0, 0, 0, 1}));
    const auto i_pair = static_cast<Eigen::Index>(*sector->find({2, 0, 0, 1, 0}));
    const auto i_cross = static_cast<Eigen::Index>(*sector->find({1, 1, 1, 0, 0}));

    SECTION("t = 0 is the identity") {
        const auto out = fock::evolve(h, psi0, 0.0);
        REQUIRE((out.amplitudes - psi0.amplitudes).norm() < 1e-13);
    }

    SECTION("amplitudes follow cos / sin of the collective frequency") {
        for (double t : {0.17, 0.6, 1.9}) {
            const auto out = fock::evolve(h, psi0, t);
            const double theta = std::sqrt(3.0) * gamma * t;
            REQUIRE(cdist(out.amplitudes[i0], Complex(std::cos(theta), 0.0)) < 1e-12);
            REQUIRE(cdist(out.amplitudes[i_pair],
                          Complex(0.0, -std::sin(theta) * std::sqrt(2.0 / 3.0))) < 1e-12);
            REQUIRE(cdist(out.amplitudes[i_cross],
                          Complex(0.0, std::sin(theta) * std::sqrt(1.0 / 3.0))) < 1e-12);
        }
    }

    SECTION("composition over time segments matches a single evolution") {
        const auto step = fock::evolve(h, fock::evolve(h, psi0, 0.3), 0.9);
        const auto direct = fock::evolve(h, psi0, 1.2);
        REQUIRE((step.amplitudes - direct.amplitudes).norm() < 1e-10);
    }

    SECTION("norm is preserved") {
        const auto out = fock::evolve(h, psi0, 2.71);
        REQUIRE(std::abs(out.norm() - 1.0) < 1e-12);
    }

    SECTION("a dimension above the ceiling raises a resource error") {
        fock::EvolveOptions options;
        options.max_dimension = 2;
        REQUIRE_THROWS_AS(fock::evolve(h, psi0, 1.0, options), resource_error);
    }
}

TEST_CASE("evolution engines agree with the series oracle", "[fock]") {
    std::mt19937_64 rng(20240817);
    for (int trial = 0; trial < 4; ++trial) {
        const int dim = 8 + 10 * trial;
        const Eigen::MatrixXcd h = oracle::random_hermitian(dim, rng);
        const Eigen::VectorXcd v = oracle::random_state(dim, rng);
        const double t = 0.2 + 0.45 * trial;
        const Eigen::VectorXcd expected = oracle::taylor_expm_apply(h, v, t);
        const propagate::SparseMatrix sparse = h.sparseView();

        propagate::EvolveOptions dense_options; // dim below the dense threshold
        const Eigen::VectorXcd dense_path = propagate::evolve_vector(sparse, v, t, dense_options);
        REQUIRE((dense_path - expected).norm() < 1e-9);

        propagate::EvolveOptions stepping_options;
        stepping_options.dense_threshold = 0; // force the Taylor path
        const Eigen::VectorXcd stepping_path = propagate::evolve_vector(sparse, v, t, stepping_options);
        REQUIRE((stepping_path - expected).norm() < 1e-9);
        REQUIRE((stepping_path - dense_path).norm() < 1e-10);
    }
}

TEST_CASE("conserved quantities stay constant under evolution", "[fock]") {
    const auto sector = fock::enumerate_basis(five_modes(), sector_constraints(2, 1));
    const auto h = fock::build_operator(emission_terms(sector->layout(), 1.0), sector, true);
    auto psi = fock::unit_state(sector, {1, 0, 0, 0, 2});
    const auto constraints = sector_constraints(2, 1);
    for (double t : {0.4, 1.3, 2.9}) {
        const auto out = fock::evolve(h, psi, t);
        for (const auto& q : constraints) {
            REQUIRE(std::abs(fock::conserved_expectation(q, out) - q.value) < 1e-10);
        }
    }
}

TEST_CASE("state helpers validate their inputs", "[fock]") {
    const auto sector = fock::enumerate_basis(five_modes(), sector_constraints(1, 1));
    REQUIRE_THROWS_AS(fock::unit_state(sector, {9, 9, 9, 9, 9}), std::invalid_argument);

    const auto other = fock::enumerate_basis(five_modes(), sector_constraints(2, 1));
    const auto a = fock::unit_state(sector, {1, 0, 0, 0, 1});
    const auto b = fock::unit_state(other, {1, 0, 0, 0, 2});
    REQUIRE_THROWS_AS(fock::overlap(a, b), std::invalid_argument);
}
