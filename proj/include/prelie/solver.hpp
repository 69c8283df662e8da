#ifndef PRELIE_SOLVER_HPP
#define PRELIE_SOLVER_HPP

#include <map>
#include <string>
#include <vector>

#include "prelie/poly.hpp"
#include "prelie/systems.hpp"

namespace prelie {

struct GroebnerBasis {
    std::vector<Polynomial> polys;
    MonomialOrder order;
};

// Remainder of p on division by the basis under the order (full reduction).
Polynomial normal_form(Polynomial p, const std::vector<Polynomial>& basis, MonomialOrder order);

// Reduced Groebner basis of the generated ideal. Output is monic,
// inter-reduced and sorted by decreasing leading monomial.
GroebnerBasis buchberger(std::vector<Polynomial> generators, MonomialOrder order);

// One parametrized component of the solution set.
struct SolutionFamily {
    // Names of the free variables, in variable-table order.
    std::vector<std::string> free_params;
    // Every unknown -> rational function over the free-parameter table.
    std::map<std::string, RationalFunction> parametric;
    // Polynomials over the unknowns' table whose zeros (minus the
    // inequations' zeros) equal the family.
    std::vector<Polynomial> implicit_form;
    // Polynomials required nonzero.
    std::vector<Polynomial> inequations;

    std::string to_json_string() const;
};

struct SolveResult {
    std::vector<SolutionFamily> families;
    // Branches abandoned because a factor has no rational root (complex-only
    // solutions) or an irrational discriminant appeared. Empty for every
    // catalog system; reported, never silently ignored.
    std::vector<std::string> dropped_branches;
};

struct SolveOptions {
    int max_branches = 64;
};

// Complete solution set of polys = 0 in the given unknowns as a union of
// parametrized families, by lex Groebner basis plus recursive case splits on
// leading coefficients. Table variables outside `unknowns` must not occur.
// Every emitted family is verified against the input system; throws on a
// case-split explosion beyond options.max_branches.
SolveResult solve_polynomial_system(const std::vector<Polynomial>& polys,
                                    const VarTablePtr& table,
                                    const std::vector<std::string>& unknowns,
                                    const SolveOptions& options = {});

// Solution families of an operator equation system (alpha must be
// specialized).
SolveResult solve_families(const EquationSystem& system, const SolveOptions& options = {});

// Exactly the matrices with all entries in `grid` satisfying the system, in
// lexicographic entry order (row-major, grid sorted ascending).
std::vector<RatMatrix> grid_enumerate(const EquationSystem& system, const std::vector<Rat>& grid);

// true iff every implicit-form polynomial vanishes at the point and every
// inequation is nonzero there.
bool family_contains(const SolutionFamily& family, const RatMatrix& point,
                     const VarTablePtr& rvars);

bool family_contains_point(const SolutionFamily& family,
                           const std::map<std::string, Rat>& point);

} // namespace prelie

#endif
