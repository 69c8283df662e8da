#ifndef PRELIE_SYSTEMS_HPP
#define PRELIE_SYSTEMS_HPP

#include <optional>
#include <string>
#include <vector>

#include "prelie/algebra.hpp"
#include "prelie/poly.hpp"

namespace prelie {

struct OperatorKind {
    enum class Tag { RotaBaxter, Reynolds, Nijenhuis, Averaging };
    Tag tag = Tag::RotaBaxter;
    Rat weight; // meaningful only for RotaBaxter

    static OperatorKind rota_baxter(const Rat& weight) { return {Tag::RotaBaxter, weight}; }
    static OperatorKind reynolds() { return {Tag::Reynolds, Rat(0)}; }
    static OperatorKind nijenhuis() { return {Tag::Nijenhuis, Rat(0)}; }
    static OperatorKind averaging() { return {Tag::Averaging, Rat(0)}; }

    // "rota-baxter(0)", "reynolds", ...
    std::string name() const;
    // Parses "rota-baxter", "reynolds", "nijenhuis", "averaging"; weight
    // separate.
    static OperatorKind parse(const std::string& kind, const std::optional<Rat>& weight);

    bool operator==(const OperatorKind& o) const { return tag == o.tag && (tag != Tag::RotaBaxter || weight == o.weight); }
};

using RatMatrix = std::vector<std::vector<Rat>>;
// Parametric operator matrix: entries are rational functions over some
// family-parameter table. Row convention: P(e_i) = sum_j M[i][j] e_j.
using ParamMatrix = std::vector<std::vector<RationalFunction>>;

RatMatrix identity_matrix(std::size_t n);
RatMatrix zero_matrix(std::size_t n);
RatMatrix scale_matrix(const RatMatrix& m, const Rat& c);
RatMatrix transpose(const RatMatrix& m);
ParamMatrix transpose(const ParamMatrix& m);
std::string matrix_to_string(const RatMatrix& m);

// Variable name for the operator matrix entry, 1-based: "R11".
std::string rvar_name(std::size_t i, std::size_t j);
// R-variable table for an n-dimensional algebra; appends "alpha" when
// symbolic_alpha. Order: R11 > R12 > ... > Rnn > alpha.
VarTablePtr rvar_table(std::size_t n, bool symbolic_alpha);

struct EquationOrigin {
    std::size_t i, j, k; // 1-based basis pair and coordinate
    int branch;          // 0 for single-branch kinds; averaging uses 1 and 2
};

struct EquationSystem {
    std::string algebra;
    std::optional<Rat> alpha;
    bool symbolic_alpha = false;
    OperatorKind kind;
    VarTablePtr vars;
    std::vector<Polynomial> equations;
    std::vector<EquationOrigin> origins;

    std::string to_json() const;
    static EquationSystem from_json(const std::string& text);
};

// Coordinate expansion of the operator equation for each basis pair.
// RotaBaxter/Reynolds/Nijenhuis yield n^3 equations, Averaging 2n^3 (both
// equalities of the chain). Equations are LHS - RHS with
// LHS_k = sum_{a,b} R[i][a] R[j][b] c[a][b][k]. If the algebra is parametric
// and unspecialized, alpha enters as a ring variable.
EquationSystem build_system(const AlgebraSpec& A, const OperatorKind& kind);

// Exact residuals of a numeric candidate operator, in equation order.
std::vector<Rat> residual_at(const EquationSystem& system, const RatMatrix& M);
bool satisfies(const EquationSystem& system, const RatMatrix& M);

// Residuals of a parametric candidate: system variables bound to M's entries
// (rational functions over a parameter table that must contain "alpha" when
// the system is alpha-symbolic). The candidate satisfies the equation iff all
// residuals are identically zero.
std::vector<RationalFunction> residual(const EquationSystem& system, const ParamMatrix& M,
                                       const VarTablePtr& params);

// Induced product d[i][j][k]: e_i * e_j expanded per the kind's inner
// expression. RotaBaxter(lambda): P(x).y + x.P(y) + lambda x.y;
// Nijenhuis: P(x).y + x.P(y) - P(x.y). Other kinds are unsupported.
std::vector<std::vector<Vec>> induced_product(const AlgebraSpec& A, const OperatorKind& kind,
                                              const RatMatrix& M);

// P(e_i * e_j) - P(e_i).P(e_j) for all pairs, computed through multiply and
// induced_product; an independent code path from residual.
std::vector<std::vector<Vec>> morphism_defect(const AlgebraSpec& A, const OperatorKind& kind,
                                              const RatMatrix& M);

bool all_zero(const std::vector<Rat>& v);
bool defect_all_zero(const std::vector<std::vector<Vec>>& d);

} // namespace prelie

#endif
