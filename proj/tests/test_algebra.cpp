#include "doctest.h"

#include <cstdint>

#include "prelie/algebra.hpp"

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

} // namespace

TEST_CASE("catalog structure constants") {
    AlgebraSpec a1 = catalog("A1");
    CHECK(a1.constant_value(0, 0, 0) == 1);
    CHECK(a1.constant_value(0, 0, 1) == 1);
    CHECK(a1.constant_value(1, 0, 1) == 1);
    CHECK(a1.constant_value(0, 1, 0) == 0);
    CHECK(a1.constant_value(0, 1, 1) == 0);
    CHECK(a1.constant_value(1, 1, 1) == 0);

    AlgebraSpec a5 = catalog("A5", Rat(0));
    CHECK(a5.constant_value(0, 0, 0) == 1);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t k = 0; k < 2; ++k)
                if (!(i == 0 && j == 0 && k == 0)) CHECK(a5.constant_value(i, j, k) == 0);

    AlgebraSpec a8 = catalog("A8");
    CHECK(a8.constant_value(0, 0, 0) == 1);
    CHECK(a8.constant_value(0, 1, 1) == 2);
    CHECK(a8.constant_value(1, 0, 0) == Rat(1, 2));
    CHECK(a8.constant_value(1, 0, 1) == 1);
    CHECK(a8.constant_value(1, 1, 1) == 1);
    CHECK(a8.constant_value(0, 1, 0) == 0);
}

TEST_CASE("catalog argument validation") {
    CHECK_THROWS(catalog("A9"));
    CHECK_THROWS(catalog("A1", Rat(1)));
    CHECK_THROWS(catalog("A5").constant_value(0, 1, 1)); // alpha unbound
}

TEST_CASE("multiply on A1") {
    AlgebraSpec a1 = catalog("A1");
    Vec e1{Rat(1), Rat(0)}, e2{Rat(0), Rat(1)};
    CHECK(multiply(e2, e1, a1) == Vec{Rat(0), Rat(1)});
    CHECK(multiply(e1, e2, a1) == Vec{Rat(0), Rat(0)});
    Vec s{Rat(1), Rat(1)};
    CHECK(multiply(s, e1, a1) == Vec{Rat(1), Rat(2)});
    CHECK_THROWS(multiply(Vec{Rat(1)}, e1, a1));
}

TEST_CASE("multiply is bilinear") {
    std::uint64_t state = 12345;
    auto rnd = [&]() {
        state = state * 6364136223846793005ull + 1442695040888963407ull;
        return Rat(static_cast<std::int64_t>((state >> 33) % 11) - 5,
                   static_cast<std::int64_t>((state >> 13) % 3) + 1);
    };
    for (const auto& A : all_specialized()) {
        for (int trial = 0; trial < 10; ++trial) {
            Rat a = rnd(), b = rnd();
            Vec u{rnd(), rnd()}, v{rnd(), rnd()}, w{rnd(), rnd()};
            Vec lhs = multiply({a * u[0] + b * v[0], a * u[1] + b * v[1]}, w, A);
            Vec mu = multiply(u, w, A), mv = multiply(v, w, A);
            CHECK(lhs == Vec{a * mu[0] + b * mv[0], a * mu[1] + b * mv[1]});
        }
    }
}

TEST_CASE("left pre-Lie defect examples") {
    AlgebraSpec a1 = catalog("A1");
    for (const auto& p : left_prelie_defect(a1, 0, 1, 0)) CHECK(p.is_zero());
    AlgebraSpec a8 = catalog("A8");
    for (const auto& p : left_prelie_defect(a8, 0, 1, 0)) CHECK(p.is_zero());
    // Antisymmetry in the first two arguments makes (i,i,k) trivially zero.
    for (const auto& A : all_specialized())
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t k = 0; k < 2; ++k)
                for (const auto& p : left_prelie_defect(A, i, i, k)) CHECK(p.is_zero());
}

TEST_CASE("every catalog algebra is left pre-Lie at all alpha samples") {
    for (const auto& A : all_specialized()) {
        CAPTURE(A.name());
        CHECK(is_left_prelie(A));
    }
    // Symbolic check, identically in alpha.
    CHECK(is_left_prelie(catalog("A5")));
    CHECK(is_left_prelie(catalog("A6")));
}

TEST_CASE("the catalog is not right pre-Lie across the board") {
    CHECK_FALSE(is_right_prelie(catalog("A8")));
}

TEST_CASE("commutator bracket") {
    AlgebraSpec a1 = catalog("A1");
    auto r1 = commutator_algebra(a1);
    // [e1,e2] = e1.e2 - e2.e1 = -e2
    CHECK(r1.bracket.constant_value(0, 1, 0) == 0);
    CHECK(r1.bracket.constant_value(0, 1, 1) == -1);
    CHECK(r1.jacobi_holds);

    AlgebraSpec a8 = catalog("A8");
    auto r8 = commutator_algebra(a8);
    // [e1,e2] = 2e2 - (1/2 e1 + e2) = -1/2 e1 + e2
    CHECK(r8.bracket.constant_value(0, 1, 0) == Rat(-1, 2));
    CHECK(r8.bracket.constant_value(0, 1, 1) == 1);
    CHECK(r8.jacobi_holds);

    // A3 is commutative: zero bracket.
    auto r3 = commutator_algebra(catalog("A3"));
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t k = 0; k < 2; ++k) CHECK(r3.bracket.constant_value(i, j, k) == 0);
}

TEST_CASE("commutator satisfies antisymmetry and Jacobi on the whole catalog") {
    for (const auto& A : all_specialized()) {
        auto r = commutator_algebra(A);
        CHECK(r.jacobi_holds);
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j)
                for (std::size_t k = 0; k < 2; ++k)
                    CHECK(r.bracket.constant_value(i, j, k) ==
                          -r.bracket.constant_value(j, i, k));
    }
}

TEST_CASE("algebra JSON round trip") {
    AlgebraSpec a8 = catalog("A8");
    AlgebraSpec back = algebra_from_json(algebra_to_json(a8));
    CHECK(back.name() == "A8");
    CHECK(back.dim() == 2);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t k = 0; k < 2; ++k)
                CHECK(back.constant_value(i, j, k) == a8.constant_value(i, j, k));

    // Parametric spec with alpha binding.
    std::string text = R"({"name":"custom","dim":2,
        "products":{"1,1":{"1":"1"},"1,2":{"2":"1+2*alpha"}},"alpha":"1/2"})";
    AlgebraSpec custom = algebra_from_json(text);
    CHECK(custom.constant_value(0, 1, 1) == 2);
    CHECK(is_left_prelie(custom));
}
