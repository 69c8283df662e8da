#ifndef PRELIE_ALGEBRA_HPP
#define PRELIE_ALGEBRA_HPP

#include <optional>
#include <string>
#include <vector>

#include "prelie/poly.hpp"
#include "prelie/rational.hpp"

namespace prelie {

using Vec = std::vector<Rat>;

// Finite-dimensional algebra by structure constants e_i . e_j = sum_k c[i][j][k] e_k.
// Constants are degree-<=1 polynomials in the parameter alpha; non-parametric
// algebras use constant polynomials. Indices are 0-based internally.
class AlgebraSpec {
public:
    AlgebraSpec(std::string name, std::size_t dim, bool parametric);

    const std::string& name() const { return name_; }
    std::size_t dim() const { return dim_; }
    bool parametric() const { return parametric_; }
    const std::optional<Rat>& alpha() const { return alpha_; }

    // Structure constant as a polynomial over the one-variable {alpha} table.
    const Polynomial& constant_poly(std::size_t i, std::size_t j, std::size_t k) const;
    void set_constant(std::size_t i, std::size_t j, std::size_t k, const Rat& c0, const Rat& c_alpha = Rat(0));

    // Requires alpha set or the algebra non-parametric.
    bool specialized() const { return !parametric_ || alpha_.has_value(); }
    Rat constant_value(std::size_t i, std::size_t j, std::size_t k) const;

    // Returns a copy with alpha bound. Throws if non-parametric.
    AlgebraSpec specialize(const Rat& alpha) const;

    static VarTablePtr alpha_table();

private:
    std::string name_;
    std::size_t dim_;
    bool parametric_;
    std::optional<Rat> alpha_;
    std::vector<Polynomial> constants_; // dim^3, index (i*dim + j)*dim + k
};

// The Theorem 1.1 catalog: names A1..A8; alpha is required exactly for A5/A6
// (omit it there to obtain the symbolic parametric algebra).
AlgebraSpec catalog(const std::string& name, const std::optional<Rat>& alpha = std::nullopt);

const std::vector<std::string>& catalog_names();
bool catalog_is_parametric(const std::string& name);

// Bilinear product of coordinate vectors; requires a specialized algebra.
Vec multiply(const Vec& u, const Vec& v, const AlgebraSpec& A);

// (e_i(e_j e_k) - (e_i e_j)e_k) - (e_j(e_i e_k) - (e_j e_i)e_k), as
// polynomials in alpha per coordinate; zero iff the left pre-Lie identity
// holds on the triple (identically in alpha for parametric algebras).
std::vector<Polynomial> left_prelie_defect(const AlgebraSpec& A, std::size_t i, std::size_t j, std::size_t k);
// Right variant: associator symmetric in the last two arguments.
std::vector<Polynomial> right_prelie_defect(const AlgebraSpec& A, std::size_t i, std::size_t j, std::size_t k);

bool is_left_prelie(const AlgebraSpec& A);
bool is_right_prelie(const AlgebraSpec& A);

struct CommutatorResult {
    AlgebraSpec bracket;   // b[i][j][k] = c[i][j][k] - c[j][i][k]
    bool jacobi_holds;     // exact Jacobi defect zero on all basis triples
};

CommutatorResult commutator_algebra(const AlgebraSpec& A);

// JSON algebra-spec format:
// {"name": str, "dim": int, "products": {"i,j": {"k": "rational-or-alpha-linear"}},
//  "alpha": optional "p/q"}
AlgebraSpec algebra_from_json(const std::string& json_text);
std::string algebra_to_json(const AlgebraSpec& A);

} // namespace prelie

#endif
