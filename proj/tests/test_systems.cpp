#include "doctest.h"

#include <cstdint>

#include "prelie/systems.hpp"

using namespace prelie;

namespace {

const std::vector<Rat> kAlphaSamples = {Rat(-1), Rat(0), Rat(1, 2), Rat(1), Rat(2)};

std::vector<AlgebraSpec> all_specialized() {
    std::vector<AlgebraSpec> out;
    for (const auto& name : catalog_names()) {
        if (catalog_is_parametric(name)) {
            for (const auto& a : kAlphaSamples) out.push_back(catalog(name, a));
        } else {
            out.push_back(catalog(name));
        }
    }
    return out;
}

std::vector<OperatorKind> all_kinds() {
    return {OperatorKind::rota_baxter(Rat(0)), OperatorKind::rota_baxter(Rat(1)),
            OperatorKind::reynolds(), OperatorKind::nijenhuis(), OperatorKind::averaging()};
}

RatMatrix mat(const Rat& a, const Rat& b, const Rat& c, const Rat& d) {
    return {{a, b}, {c, d}};
}

} // namespace

TEST_CASE("A1 weight-0 equation at (1,1,1)") {
    EquationSystem sys = build_system(catalog("A1"), OperatorKind::rota_baxter(Rat(0)));
    REQUIRE(sys.equations.size() == 8);
    Polynomial expected =
        Polynomial::parse("-1*R11^2 + -2*R11*R21 + -1*R12*R21", sys.vars);
    bool found = false;
    for (std::size_t t = 0; t < sys.equations.size(); ++t)
        if (sys.origins[t].i == 1 && sys.origins[t].j == 1 && sys.origins[t].k == 1) {
            CHECK(sys.equations[t] == expected);
            found = true;
        }
    CHECK(found);
}

TEST_CASE("equation counts and degree bounds") {
    for (const auto& A : all_specialized()) {
        for (const auto& kind : all_kinds()) {
            EquationSystem sys = build_system(A, kind);
            std::size_t expected = kind.tag == OperatorKind::Tag::Averaging ? 16 : 8;
            CHECK(sys.equations.size() == expected);
            unsigned bound = kind.tag == OperatorKind::Tag::Reynolds ? 3 : 2;
            for (const auto& eq : sys.equations) CHECK(eq.total_degree() <= bound);
        }
    }
}

TEST_CASE("zero matrix satisfies every system") {
    for (const auto& A : all_specialized())
        for (const auto& kind : all_kinds())
            CHECK(all_zero(residual_at(build_system(A, kind), zero_matrix(2))));
}

TEST_CASE("identity operator satisfies Reynolds, Nijenhuis and Averaging") {
    for (const auto& A : all_specialized()) {
        CHECK(satisfies(build_system(A, OperatorKind::reynolds()), identity_matrix(2)));
        CHECK(satisfies(build_system(A, OperatorKind::nijenhuis()), identity_matrix(2)));
        for (const Rat& c : {Rat(1), Rat(-3), Rat(2, 5)})
            CHECK(satisfies(build_system(A, OperatorKind::averaging()),
                            scale_matrix(identity_matrix(2), c)));
    }
}

TEST_CASE("A1 weight-0 residual fixtures") {
    EquationSystem sys = build_system(catalog("A1"), OperatorKind::rota_baxter(Rat(0)));
    // Row convention P(e_i) = sum_j R[i][j] e_j. The solution family has R12
    // free: P(e1) = t e2 annihilates everything downstream. The transposed
    // matrix is not a solution; equation (1,2,1) is -R21^2.
    for (const Rat& t : {Rat(0), Rat(1), Rat(-7), Rat(3, 2)})
        CHECK(satisfies(sys, mat(Rat(0), t, Rat(0), Rat(0))));
    for (const Rat& t : {Rat(1), Rat(-7), Rat(3, 2)})
        CHECK_FALSE(satisfies(sys, mat(Rat(0), Rat(0), t, Rat(0))));
    auto res = residual_at(sys, identity_matrix(2));
    bool found = false;
    for (std::size_t t = 0; t < res.size(); ++t)
        if (sys.origins[t].i == 1 && sys.origins[t].j == 1 && sys.origins[t].k == 1) {
            CHECK(res[t] == -1);
            found = true;
        }
    CHECK(found);
    CHECK_FALSE(satisfies(sys, identity_matrix(2)));
}

TEST_CASE("parametric residual over a family parameter") {
    // [[0,t],[0,0]] is a weight-0 Rota-Baxter family on A1, identically in t.
    EquationSystem sys = build_system(catalog("A1"), OperatorKind::rota_baxter(Rat(0)));
    auto pt = VarTable::make({"t"});
    RationalFunction zero{Polynomial::zero(pt)};
    RationalFunction t{Polynomial::variable(pt, "t")};
    ParamMatrix M = {{zero, t}, {zero, zero}};
    for (const auto& r : residual(sys, M, pt)) CHECK(r.is_zero());
    // The transpose is not: some residual is a nonzero polynomial in t.
    ParamMatrix Mt = {{zero, zero}, {t, zero}};
    bool any_nonzero = false;
    for (const auto& r : residual(sys, Mt, pt)) any_nonzero |= !r.is_zero();
    CHECK(any_nonzero);
}

TEST_CASE("symbolic-alpha system keeps alpha as a ring variable") {
    EquationSystem sys = build_system(catalog("A5"), OperatorKind::rota_baxter(Rat(0)));
    CHECK(sys.symbolic_alpha);
    CHECK(sys.vars->index_of("alpha").has_value());
    // P(e1) = t e2, P(e2) = 0 is weight-0 Rota-Baxter on A5 identically in alpha.
    auto pt = VarTable::make({"t", "alpha"});
    RationalFunction zero{Polynomial::zero(pt)};
    RationalFunction t{Polynomial::variable(pt, "t")};
    ParamMatrix M = {{zero, t}, {zero, zero}};
    for (const auto& r : residual(sys, M, pt)) CHECK(r.is_zero());
}

TEST_CASE("induced product examples") {
    AlgebraSpec a1 = catalog("A1");
    auto kind = OperatorKind::rota_baxter(Rat(0));
    auto d = induced_product(a1, kind, mat(Rat(0), Rat(1), Rat(0), Rat(0)));
    CHECK(d[0][0] == Vec{Rat(0), Rat(1)}); // e1*e1 = e2
    auto z = induced_product(a1, kind, zero_matrix(2));
    for (const auto& row : z)
        for (const auto& v : row) CHECK(all_zero(v));
    auto nij = induced_product(a1, OperatorKind::nijenhuis(), identity_matrix(2));
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            Vec prod = multiply({Rat(i == 0), Rat(i == 1)}, {Rat(j == 0), Rat(j == 1)}, a1);
            CHECK(nij[i][j] == prod);
        }
    CHECK_THROWS(induced_product(a1, OperatorKind::reynolds(), zero_matrix(2)));
}

TEST_CASE("morphism defect mirrors residual") {
    AlgebraSpec a1 = catalog("A1");
    auto kind = OperatorKind::rota_baxter(Rat(0));
    CHECK(defect_all_zero(morphism_defect(a1, kind, mat(Rat(0), Rat(1), Rat(0), Rat(0)))));
    CHECK_FALSE(defect_all_zero(morphism_defect(a1, kind, identity_matrix(2))));
    CHECK(defect_all_zero(morphism_defect(a1, kind, zero_matrix(2))));
}

TEST_CASE("residual and morphism defect agree on random matrices") {
    std::uint64_t state = 99;
    auto rnd = [&]() {
        state = state * 6364136223846793005ull + 1442695040888963407ull;
        return Rat(static_cast<std::int64_t>((state >> 33) % 7) - 3,
                   static_cast<std::int64_t>((state >> 11) % 2) + 1);
    };
    std::vector<OperatorKind> kinds = {OperatorKind::rota_baxter(Rat(0)),
                                       OperatorKind::rota_baxter(Rat(1)),
                                       OperatorKind::nijenhuis()};
    for (const auto& A : all_specialized())
        for (const auto& kind : kinds) {
            EquationSystem sys = build_system(A, kind);
            for (int trial = 0; trial < 100; ++trial) {
                RatMatrix M = mat(rnd(), rnd(), rnd(), rnd());
                CHECK(satisfies(sys, M) == defect_all_zero(morphism_defect(A, kind, M)));
            }
        }
}

TEST_CASE("Rota-Baxter scaling law on sampled matrices") {
    // M in RB(lambda) implies c.M in RB(c.lambda).
    for (const auto& A : all_specialized()) {
        EquationSystem rb1 = build_system(A, OperatorKind::rota_baxter(Rat(1)));
        RatMatrix M = mat(Rat(0), Rat(0), Rat(4), Rat(0));
        if (satisfies(rb1, M)) {
            for (const Rat& c : {Rat(2), Rat(-1), Rat(1, 3)})
                CHECK(satisfies(build_system(A, OperatorKind::rota_baxter(c)),
                                scale_matrix(M, c)));
        }
    }
}

TEST_CASE("system JSON round trip") {
    EquationSystem sys = build_system(catalog("A6", Rat(1, 2)), OperatorKind::averaging());
    EquationSystem back = EquationSystem::from_json(sys.to_json());
    CHECK(back.algebra == sys.algebra);
    CHECK(back.alpha == sys.alpha);
    CHECK(back.kind == sys.kind);
    REQUIRE(back.equations.size() == sys.equations.size());
    for (std::size_t t = 0; t < sys.equations.size(); ++t) {
        CHECK(back.equations[t] == sys.equations[t]);
        CHECK(back.origins[t].i == sys.origins[t].i);
        CHECK(back.origins[t].branch == sys.origins[t].branch);
    }
}
