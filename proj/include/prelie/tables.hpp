#ifndef PRELIE_TABLES_HPP
#define PRELIE_TABLES_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "prelie/solver.hpp"
#include "prelie/systems.hpp"

namespace prelie {

// How faithfully a published row could be transcribed.
enum class Fidelity { Verbatim, TypoInterpreted, Ambiguous };

// Which way a published matrix is read as an operator. Row means
// P(e_i) = sum_j M[i][j] e_j; Column is the transposed reading.
enum class Convention { Row, Column };

std::string fidelity_name(Fidelity f);
std::string convention_name(Convention c);
std::optional<Convention> parse_convention(const std::string& text);

// One clause "at least one of these parameters is nonzero". A row's
// restriction cell is a conjunction of clauses.
struct Restriction {
    std::vector<std::string> anyof;
    std::string to_string() const;
};

// A published operator family for one (algebra, kind) cell.
struct PaperEntry {
    std::string algebra;
    OperatorKind kind;
    std::string label; // e.g. "RB1/A5/P6"
    std::vector<std::string> params;
    VarTablePtr param_table; // params plus "alpha" for parametric algebras
    ParamMatrix matrix;
    std::vector<Restriction> restrictions;
    Fidelity fidelity = Fidelity::Verbatim;
    std::string note; // quotes the source text for non-verbatim rows
    // Alternative literal reading for defective rows, checked alongside the
    // interpreted one.
    std::optional<ParamMatrix> alt_matrix;

    bool parametric_algebra() const;
};

// Every published family for the cell, transcribed in source order.
std::vector<PaperEntry> paper_families(const std::string& algebra, const OperatorKind& kind);
// All cells, algebras A1..A8 by table order.
std::vector<PaperEntry> all_paper_entries();
const std::vector<OperatorKind>& audited_kinds();

enum class Verdict { Sound, Unsound, Ambiguous };
std::string verdict_name(Verdict v);

// Exact nonzero residual pinned to one equation and one sample point.
struct SoundnessWitness {
    EquationOrigin origin;
    std::string residual; // polynomial in the entry parameters (and alpha)
    std::map<std::string, Rat> sample;
    Rat residual_value;
};

struct SoundnessResult {
    Verdict verdict;
    std::optional<SoundnessWitness> witness; // present iff some reading is unsound
    // Sub-verdicts for rows with an alternative reading.
    std::optional<Verdict> primary_reading;
    std::optional<Verdict> alternative_reading;
};

// Residual check of the entry, identically in its parameters (and in alpha
// for parametric algebras). Restrictions only guard denominators.
SoundnessResult verify_soundness(const PaperEntry& entry, Convention convention);

// Completeness audit of one specialized cell against the solver.
struct CompletenessCell {
    std::string algebra;
    std::optional<Rat> alpha;
    OperatorKind kind;
    Convention convention;
    std::size_t grid_solutions = 0;
    std::size_t family_count = 0;
    // Grid solutions no sound paper entry specializes to.
    std::vector<RatMatrix> uncovered;
    // Sound-entry specializations the solver misses; expected empty.
    std::vector<std::string> missing_from_solver;
    std::vector<std::string> dropped_branches;

    bool has_findings() const { return !uncovered.empty() || !missing_from_solver.empty(); }
};

CompletenessCell compare(const AlgebraSpec& A, const OperatorKind& kind, Convention convention,
                         const std::vector<Rat>& grid);

struct EntryVerdicts {
    PaperEntry entry;
    SoundnessResult row;
    SoundnessResult column;
};

struct AuditReport {
    std::vector<Rat> grid;
    std::vector<Rat> alpha_samples;
    std::vector<EntryVerdicts> entries;
    std::vector<CompletenessCell> cells;

    bool has_discrepancies() const;
    std::string to_json() const;
    std::string to_markdown() const;
};

const std::vector<Rat>& default_grid();
const std::vector<Rat>& default_alpha_samples();

// Full audit. Soundness is judged symbolically once per entry; completeness
// runs per alpha sample and per convention. Cells may be fanned out to
// `workers` threads; the report is a deterministic ordered merge.
AuditReport audit_all(const std::vector<Rat>& grid, const std::vector<Rat>& alpha_samples,
                      int workers = 1,
                      const std::optional<std::string>& only_algebra = std::nullopt,
                      const std::optional<OperatorKind>& only_kind = std::nullopt,
                      const std::optional<Convention>& only_convention = std::nullopt);

} // namespace prelie

#endif
