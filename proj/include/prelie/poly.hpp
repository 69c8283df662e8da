#ifndef PRELIE_POLY_HPP
#define PRELIE_POLY_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "prelie/rational.hpp"

namespace prelie {

// Ordered list of variable names shared by all polynomials of one context.
class VarTable {
public:
    static std::shared_ptr<const VarTable> make(std::vector<std::string> names);

    std::size_t size() const { return names_.size(); }
    const std::string& name(std::size_t i) const { return names_[i]; }
    const std::vector<std::string>& names() const { return names_; }
    // Index of a name, or nullopt.
    std::optional<std::size_t> index_of(const std::string& name) const;

    bool operator==(const VarTable& other) const { return names_ == other.names_; }

private:
    explicit VarTable(std::vector<std::string> names);
    std::vector<std::string> names_;
};

using VarTablePtr = std::shared_ptr<const VarTable>;

using Exponents = std::vector<unsigned>;

enum class MonomialOrder { Grevlex, Lex };

// true iff a > b under the given order. Variable 0 is the largest.
bool monomial_greater(const Exponents& a, const Exponents& b, MonomialOrder order);

// Sparse multivariate polynomial over Q. Canonical: no zero coefficients
// stored, terms keyed by exponent vector.
class Polynomial {
public:
    Polynomial() = default;

    static Polynomial zero(VarTablePtr table);
    static Polynomial constant(VarTablePtr table, const Rat& c);
    static Polynomial variable(VarTablePtr table, const std::string& name);
    static Polynomial term(VarTablePtr table, const Rat& c, const Exponents& exps);

    const VarTablePtr& table() const { return table_; }
    const std::map<Exponents, Rat>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    // Requires is_constant(); zero polynomial yields 0.
    Rat constant_value() const;

    unsigned total_degree() const;
    unsigned degree_in(std::size_t var) const;
    // Coefficients of var^0..var^d as polynomials not involving var.
    std::vector<Polynomial> coefficients_in(std::size_t var) const;

    // Leading (exponents, coefficient) under the order. Requires nonzero.
    std::pair<Exponents, Rat> leading_term(MonomialOrder order) const;

    Polynomial operator-() const;
    Polynomial operator+(const Polynomial& other) const;
    Polynomial operator-(const Polynomial& other) const;
    Polynomial operator*(const Polynomial& other) const;
    Polynomial operator*(const Rat& scalar) const;
    Polynomial pow(unsigned exponent) const;
    bool operator==(const Polynomial& other) const;

    // Scaled so the grevlex-leading coefficient is 1 (zero stays zero).
    Polynomial monic() const;
    // Scaled by the positive rational making coefficients coprime integers,
    // with positive grevlex-leading coefficient. Sign-canonical form for text
    // output of constraints.
    Polynomial primitive() const;

    // Full-point evaluation; point indexed like the variable table.
    Rat evaluate(const std::vector<Rat>& point) const;
    // Named-point evaluation; throws if a used variable is unbound.
    Rat evaluate(const std::map<std::string, Rat>& point) const;

    std::string to_string() const;
    // Parses sum-of-terms text: terms joined by '+'/'-', factors by '*',
    // factors are "p/q" rationals or "name" or "name^k".
    static Polynomial parse(const std::string& text, VarTablePtr table);

private:
    void add_term(const Exponents& exps, const Rat& c);
    VarTablePtr table_;
    std::map<Exponents, Rat> terms_;
};

inline Polynomial operator*(const Rat& scalar, const Polynomial& p) { return p * scalar; }

// Quotient of polynomials. Normalized so a zero numerator forces denominator 1
// and the denominator is monic under grevlex. Equality is decided by
// cross-multiplication; no gcd cancellation is attempted.
class RationalFunction {
public:
    RationalFunction() = default;
    explicit RationalFunction(Polynomial num);
    RationalFunction(Polynomial num, Polynomial den);

    const Polynomial& num() const { return num_; }
    const Polynomial& den() const { return den_; }
    const VarTablePtr& table() const { return num_.table(); }

    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }

    RationalFunction operator-() const;
    RationalFunction operator+(const RationalFunction& other) const;
    RationalFunction operator-(const RationalFunction& other) const;
    RationalFunction operator*(const RationalFunction& other) const;
    RationalFunction operator/(const RationalFunction& other) const;

    // f == g by cross-multiplication.
    bool equals(const RationalFunction& other) const;

    // Exact value; throws if the denominator vanishes at the point.
    Rat evaluate(const std::map<std::string, Rat>& point) const;

    std::string to_string() const;

private:
    void normalize();
    Polynomial num_, den_;
};

// Substitutes bindings into p. Variables of p absent from the bindings map
// carry over by name into the target table (they must exist there). All
// bindings must live over the target table.
RationalFunction substitute(const Polynomial& p,
                            const std::map<std::string, RationalFunction>& bindings,
                            const VarTablePtr& target);

// Exact square root of a polynomial, if it is a perfect square over Q.
std::optional<Polynomial> polynomial_sqrt(const Polynomial& p);

} // namespace prelie

#endif
