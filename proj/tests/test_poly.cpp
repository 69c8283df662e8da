#include "doctest.h"

#include <cstdint>

#include "prelie/poly.hpp"

using namespace prelie;

namespace {

// Deterministic small-rational generator for property checks.
struct Rng {
    std::uint64_t state = 0x9e3779b97f4a7c15ull;
    std::uint64_t next() {
        state = state * 6364136223846793005ull + 1442695040888963407ull;
        return state >> 33;
    }
    Rat rat() {
        std::int64_t num = static_cast<std::int64_t>(next() % 21) - 10;
        std::int64_t den = static_cast<std::int64_t>(next() % 4) + 1;
        return Rat(num, den);
    }
    Polynomial poly(const VarTablePtr& table) {
        Polynomial p = Polynomial::zero(table);
        std::size_t terms = next() % 5;
        for (std::size_t t = 0; t < terms; ++t) {
            Exponents e(table->size(), 0);
            for (auto& x : e) x = static_cast<unsigned>(next() % 3);
            p = p + Polynomial::term(table, rat(), e);
        }
        return p;
    }
};

} // namespace

TEST_CASE("rational parsing and formatting") {
    CHECK(parse_rational("3/4") == Rat(3, 4));
    CHECK(parse_rational("-6/8") == Rat(-3, 4));
    CHECK(parse_rational("7") == Rat(7));
    CHECK(format_rational(Rat(-3, 4)) == "-3/4");
    CHECK(format_rational(Rat(5)) == "5");
    CHECK_THROWS(parse_rational("1/0"));
    CHECK_THROWS(parse_rational("x"));
}

TEST_CASE("polynomial arithmetic basics") {
    auto t = VarTable::make({"x", "y"});
    Polynomial x = Polynomial::variable(t, "x");
    Polynomial y = Polynomial::variable(t, "y");

    CHECK((x * x + (-(x * x))).is_zero());
    CHECK((x + y) * (x - y) == x * x - y * y);
    CHECK((x + Polynomial::constant(t, Rat(1))).pow(2) ==
          x * x + x * Rat(2) + Polynomial::constant(t, Rat(1)));
}

TEST_CASE("variable-table mismatch is an error") {
    auto t1 = VarTable::make({"x"});
    auto t2 = VarTable::make({"y"});
    Polynomial a = Polynomial::variable(t1, "x");
    Polynomial b = Polynomial::variable(t2, "y");
    CHECK_THROWS(a + b);
}

TEST_CASE("ring axioms on random triples") {
    auto t = VarTable::make({"x", "y", "z"});
    Rng rng;
    for (int i = 0; i < 30; ++i) {
        Polynomial p = rng.poly(t), q = rng.poly(t), r = rng.poly(t);
        CHECK((p + q) + r == p + (q + r));
        CHECK((p * q) * r == p * (q * r));
        CHECK(p * (q + r) == p * q + p * r);
        CHECK(p * q == q * p);
    }
}

TEST_CASE("evaluation is a ring homomorphism") {
    auto t = VarTable::make({"x", "y"});
    Rng rng;
    for (int i = 0; i < 30; ++i) {
        Polynomial p = rng.poly(t), q = rng.poly(t);
        std::vector<Rat> point{rng.rat(), rng.rat()};
        CHECK((p + q).evaluate(point) == p.evaluate(point) + q.evaluate(point));
        CHECK((p * q).evaluate(point) == p.evaluate(point) * q.evaluate(point));
    }
}

TEST_CASE("canonical form is construction-order independent") {
    auto t = VarTable::make({"x", "y"});
    Polynomial x = Polynomial::variable(t, "x");
    Polynomial y = Polynomial::variable(t, "y");
    Polynomial a = (x + y) * (x + y);
    Polynomial b = x * x + y * x * Rat(2) + y * y;
    CHECK(a == b);
    CHECK(a.to_string() == b.to_string());
}

TEST_CASE("evaluate examples") {
    auto t = VarTable::make({"x"});
    Polynomial x = Polynomial::variable(t, "x");
    CHECK(Polynomial::zero(t).evaluate({{"x", Rat(17)}}) == 0);
    Polynomial p = (x - Polynomial::constant(t, Rat(1))) * (x - Polynomial::constant(t, Rat(2)));
    CHECK(p.evaluate({{"x", Rat(1)}}) == 0);
    CHECK_THROWS(x.evaluate(std::map<std::string, Rat>{}));
}

TEST_CASE("substitution examples") {
    auto rt = VarTable::make({"R11", "R12", "R21", "R22"});
    auto pt = VarTable::make({"t"});
    Polynomial p = Polynomial::variable(rt, "R11").pow(2) + Polynomial::variable(rt, "R12");
    std::map<std::string, RationalFunction> b;
    b.emplace("R11", RationalFunction(Polynomial::variable(pt, "t")));
    b.emplace("R12", RationalFunction(-Polynomial::variable(pt, "t").pow(2)));
    CHECK(substitute(p, b, pt).is_zero());

    // R21 bound to -R11^2/R12, other variables pass through.
    auto ft = VarTable::make({"R11", "R12"});
    Polynomial q = Polynomial::variable(rt, "R21");
    std::map<std::string, RationalFunction> b2;
    b2.emplace("R21", RationalFunction(-Polynomial::variable(ft, "R11").pow(2),
                                       Polynomial::variable(ft, "R12")));
    RationalFunction r = substitute(q, b2, ft);
    CHECK(r.equals(RationalFunction(-Polynomial::variable(ft, "R11").pow(2),
                                    Polynomial::variable(ft, "R12"))));

    auto at = VarTable::make({"alpha", "R22"});
    Polynomial s = Polynomial::variable(at, "alpha") * Polynomial::variable(at, "R22");
    auto et = VarTable::make(std::vector<std::string>{});
    std::map<std::string, RationalFunction> b3;
    b3.emplace("alpha", RationalFunction(Polynomial::constant(et, Rat(1, 2))));
    b3.emplace("R22", RationalFunction(Polynomial::constant(et, Rat(2))));
    RationalFunction v = substitute(s, b3, et);
    CHECK(v.num().constant_value() == 1);
}

TEST_CASE("rational function equality by cross-multiplication") {
    auto t = VarTable::make({"x", "y"});
    Polynomial x = Polynomial::variable(t, "x");
    Polynomial y = Polynomial::variable(t, "y");
    Polynomial one = Polynomial::constant(t, Rat(1));
    CHECK(RationalFunction(x, x).equals(RationalFunction(one)));
    CHECK(RationalFunction(x * x - one, x - one).equals(RationalFunction(x + one)));
    CHECK_FALSE(RationalFunction(x, y).equals(RationalFunction(y, x)));
    CHECK_THROWS(RationalFunction(x, Polynomial::zero(t)));
}

TEST_CASE("polynomial text round trip") {
    auto t = VarTable::make({"R11", "R12", "R21", "R22"});
    Polynomial p = Polynomial::parse("-1*R11^2 + -2*R11*R21 + -1*R12*R21", t);
    CHECK(Polynomial::parse(p.to_string(), t) == p);
    CHECK(p.evaluate({{"R11", Rat(1)}, {"R12", Rat(0)}, {"R21", Rat(0)}, {"R22", Rat(0)}}) == -1);
    CHECK(Polynomial::parse("0", t).is_zero());
    CHECK(Polynomial::parse("3/2*R11 - 3/2*R11", t).is_zero());
}

TEST_CASE("polynomial square root") {
    auto t = VarTable::make({"x", "y"});
    Polynomial x = Polynomial::variable(t, "x");
    Polynomial y = Polynomial::variable(t, "y");
    Polynomial s = x * Rat(2) + y * y * Rat(3);
    auto root = polynomial_sqrt(s * s);
    REQUIRE(root.has_value());
    CHECK((*root == s || *root == -s));
    CHECK_FALSE(polynomial_sqrt(x * y).has_value());
    CHECK_FALSE(polynomial_sqrt(x * x + y).has_value());
}
