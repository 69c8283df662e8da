#include "prelie/tables.hpp"

#include <atomic>
#include <nlohmann/json.hpp>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace prelie {

using ordered_json = nlohmann::ordered_json;

std::string fidelity_name(Fidelity f) {
    switch (f) {
    case Fidelity::Verbatim: return "verbatim";
    case Fidelity::TypoInterpreted: return "typo-interpreted";
    case Fidelity::Ambiguous: return "ambiguous";
    }
    return "?";
}

std::string convention_name(Convention c) { return c == Convention::Row ? "row" : "column"; }

std::optional<Convention> parse_convention(const std::string& text) {
    if (text == "row") return Convention::Row;
    if (text == "column") return Convention::Column;
    return std::nullopt;
}

std::string Restriction::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < anyof.size(); ++i) {
        if (i) out += " or ";
        out += anyof[i] + " != 0";
    }
    return out;
}

std::string verdict_name(Verdict v) {
    switch (v) {
    case Verdict::Sound: return "sound";
    case Verdict::Unsound: return "unsound";
    case Verdict::Ambiguous: return "ambiguous";
    }
    return "?";
}

bool PaperEntry::parametric_algebra() const { return catalog_is_parametric(algebra); }

namespace {

struct CellText {
    const char* num;
    const char* den = "1";
};

using MatrixText = std::array<std::array<CellText, 2>, 2>;

RationalFunction parse_cell(const CellText& c, const VarTablePtr& table) {
    Polynomial num = Polynomial::parse(c.num, table);
    Polynomial den = Polynomial::parse(c.den, table);
    return RationalFunction(std::move(num), std::move(den));
}

ParamMatrix parse_matrix(const MatrixText& m, const VarTablePtr& table) {
    ParamMatrix out(2, std::vector<RationalFunction>(2));
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) out[i][j] = parse_cell(m[i][j], table);
    return out;
}

PaperEntry make_entry(const std::string& algebra, const OperatorKind& kind,
                      const std::string& label, std::vector<std::string> params,
                      const MatrixText& matrix,
                      const std::vector<std::vector<std::string>>& clauses = {},
                      Fidelity fidelity = Fidelity::Verbatim, std::string note = "",
                      const std::optional<MatrixText>& alt = std::nullopt) {
    PaperEntry e;
    e.algebra = algebra;
    e.kind = kind;
    e.label = label;
    e.params = std::move(params);
    std::vector<std::string> names = e.params;
    if (catalog_is_parametric(algebra)) names.push_back("alpha");
    e.param_table = VarTable::make(names);
    e.matrix = parse_matrix(matrix, e.param_table);
    for (const auto& clause : clauses) e.restrictions.push_back(Restriction{clause});
    e.fidelity = fidelity;
    e.note = std::move(note);
    if (alt) e.alt_matrix = parse_matrix(*alt, e.param_table);
    return e;
}

const char* kind_code(const OperatorKind& kind) {
    switch (kind.tag) {
    case OperatorKind::Tag::RotaBaxter: return kind.weight == 0 ? "RB0" : "RB1";
    case OperatorKind::Tag::Reynolds: return "REY";
    case OperatorKind::Tag::Nijenhuis: return "NIJ";
    case OperatorKind::Tag::Averaging: return "AVG";
    }
    return "?";
}

std::vector<PaperEntry> build_all_entries() {
    const OperatorKind RB0 = OperatorKind::rota_baxter(Rat(0));
    const OperatorKind RB1 = OperatorKind::rota_baxter(Rat(1));
    const OperatorKind REY = OperatorKind::reynolds();
    const OperatorKind NIJ = OperatorKind::nijenhuis();
    const OperatorKind AVG = OperatorKind::averaging();
    const MatrixText Z = {{{{{"0"}, {"0"}}}, {{{"0"}, {"0"}}}}};

    std::vector<PaperEntry> v;

    // Rota-Baxter, weight 0.
    v.push_back(make_entry("A1", RB0, "RB0/A1/P1", {"r21"},
                           {{{{{"0"}, {"0"}}}, {{{"r21"}, {"0"}}}}}));
    v.push_back(make_entry("A2", RB0, "RB0/A2/P1", {"r21"},
                           {{{{{"0"}, {"0"}}}, {{{"r21"}, {"0"}}}}}));
    v.push_back(make_entry("A3", RB0, "RB0/A3/P1", {"r21", "r22"},
                           {{{{{"0"}, {"0"}}}, {{{"r21"}, {"r22"}}}}}));
    v.push_back(make_entry("A3", RB0, "RB0/A3/P2", {"r11", "r21"},
                           {{{{{"r11"}, {"0"}}}, {{{"r21"}, {"1/2*r11"}}}}}));
    v.push_back(make_entry("A4", RB0, "RB0/A4/P1", {"r12"},
                           {{{{{"0"}, {"r12"}}}, {{{"0"}, {"0"}}}}}));
    v.push_back(make_entry("A4", RB0, "RB0/A4/P2", {"r22"},
                           {{{{{"0"}, {"0"}}}, {{{"0"}, {"r22"}}}}}));
    v.push_back(make_entry("A5", RB0, "RB0/A5/P1", {"r21"},
                           {{{{{"0"}, {"0"}}}, {{{"r21"}, {"0"}}}}}));
    v.push_back(make_entry("A5", RB0, "RB0/A5/P2", {}, Z));
    v.push_back(make_entry("A6", RB0, "RB0/A6/P1", {"r21"},
                           {{{{{"0"}, {"0"}}}, {{{"r21"}, {"0"}}}}}));
    v.push_back(make_entry("A7", RB0, "RB0/A7/P1", {}, Z));
    v.push_back(make_entry("A8", RB0, "RB0/A8/P1", {}, Z));

    // Rota-Baxter, weight 1.
    v.push_back(make_entry("A1", RB1, "RB1/A1/P1", {"r12"},
                           {{{{{"0"}, {"r12"}}}, {{{"0"}, {"0"}}}}}));
    v.push_back(make_entry("A1", RB1, "RB1/A1/P2", {}, Z));
    v.push_back(make_entry("A2", RB1, "RB1/A2/P1", {"r12"},
                           {{{{{"0"}, {"r12"}}}, {{{"0"}, {"0"}}}}}));
    v.push_back(make_entry("A2", RB1, "RB1/A2/P2", {}, Z));
    v.push_back(make_entry("A3", RB1, "RB1/A3/P1", {"r11", "r12"},
                           {{{{{"r11"}, {"r12"}}}, {{{"0"}, {"1/2*r11"}}}}}));
    v.push_back(make_entry("A3", RB1, "RB1/A3/P2", {"r12", "r22"},
                           {{{{{"0"}, {"r12"}}}, {{{"0"}, {"r22"}}}}}));
    v.push_back(make_entry("A3", RB1, "RB1/A3/P3", {"r22"},
                           {{{{{"0"}, {"-r22"}}}, {{{"0"}, {"r22"}}}}}));
    v.push_back(make_entry("A4", RB1, "RB1/A4/P1", {"r22"},
                           {{{{{"0"}, {"0"}}}, {{{"0"}, {"r22"}}}}}));
    v.push_back(make_entry("A4", RB1, "RB1/A4/P2", {"r21"},
                           {{{{{"0"}, {"0"}}}, {{{"r21"}, {"0"}}}}}));
    v.push_back(make_entry("A4", RB1, "RB1/A4/P3", {}, Z));
    v.push_back(make_entry("A5", RB1, "RB1/A5/P1", {"r22"},
                           {{{{{"0"}, {"-r22"}}}, {{{"0"}, {"r22"}}}}}));
    v.push_back(make_entry("A5", RB1, "RB1/A5/P2", {"r21", "r22"},
                           {{{{{"0"}, {"r21"}}}, {{{"0"}, {"r22"}}}}}, {}, Fidelity::Verbatim,
                           "source places r_{21} in the (1,2) slot"));
    v.push_back(make_entry("A5", RB1, "RB1/A5/P3", {"r12"},
                           {{{{{"0"}, {"r12"}}}, {{{"0"}, {"0"}}}}}));
    v.push_back(make_entry("A5", RB1, "RB1/A5/P4", {}, Z));
    v.push_back(make_entry("A5", RB1, "RB1/A5/P5", {"r21"},
                           {{{{{"-r21"}, {"-r21"}}}, {{{"r21"}, {"r21"}}}}}));
    v.push_back(make_entry("A5", RB1, "RB1/A5/P6", {"r11", "r12"},
                           {{{{{"r11"}, {"r12"}}}, {{{"-r11^2", "r12"}, {"-r11"}}}}}));
    v.push_back(make_entry("A5", RB1, "RB1/A5/P7", {"r21"},
                           {{{{{"0"}, {"0"}}}, {{{"r21"}, {"0"}}}}}));
    v.push_back(make_entry("A6", RB1, "RB1/A6/P1", {"r12"},
                           {{{{{"0"}, {"r12"}}}, {{{"0"}, {"0"}}}}}));
    v.push_back(make_entry("A6", RB1, "RB1/A6/P2", {}, Z));
    v.push_back(make_entry("A6", RB1, "RB1/A6/P3", {"r12", "r22"},
                           {{{{{"-r22"}, {"r12"}}}, {{{"-r22^2", "r12"}, {"r22"}}}}}));
    v.push_back(make_entry("A6", RB1, "RB1/A6/P4", {"r22"},
                           {{{{{"-r22"}, {"-r22"}}}, {{{"r22"}, {"r22"}}}}}));
    v.push_back(make_entry("A6", RB1, "RB1/A6/P5", {"r21"},
                           {{{{{"r21"}, {"0"}}}, {{{"r21"}, {"0"}}}}}));
    v.push_back(make_entry("A7", RB1, "RB1/A7/P1", {}, Z));
    v.push_back(make_entry("A7", RB1, "RB1/A7/P2", {"r12"},
                           {{{{{"r12"}, {"r12"}}}, {{{"r12"}, {"r12"}}}}}));
    v.push_back(make_entry("A8", RB1, "RB1/A8/P1", {}, Z));

    // Reynolds.
    v.push_back(make_entry("A1", REY, "REY/A1/P1", {"R21"},
                           {{{{{"0"}, {"0"}}}, {{{"R21"}, {"0"}}}}}, {{"R21"}},
                           Fidelity::Verbatim,
                           "restriction R_{21} != 0 stated in the proof, not the theorem"));
    v.push_back(make_entry("A2", REY, "REY/A2/P1", {}, Z));
    v.push_back(make_entry("A3", REY, "REY/A3/P1", {"R21", "R22"},
                           {{{{{"0"}, {"0"}}}, {{{"R21"}, {"R22"}}}}}, {{"R21"}, {"R22"}}));
    v.push_back(make_entry("A4", REY, "REY/A4/P1", {"R22"},
                           {{{{{"0"}, {"0"}}}, {{{"0"}, {"R22"}}}}}, {{"R22"}}));
    v.push_back(make_entry("A4", REY, "REY/A4/P2", {"R22"},
                           {{{{{"0"}, {"-R22"}}}, {{{"0"}, {"R22"}}}}}, {{"R22"}}));
    v.push_back(make_entry("A5", REY, "REY/A5/P1", {"R21"},
                           {{{{{"0"}, {"0"}}}, {{{"R21"}, {"0"}}}}}, {{"R21"}}));
    v.push_back(make_entry("A6", REY, "REY/A6/P1", {}, Z));
    v.push_back(make_entry("A7", REY, "REY/A7/P1", {}, Z));
    v.push_back(make_entry("A8", REY, "REY/A8/P1", {}, Z));

    // Nijenhuis.
    v.push_back(make_entry("A1", NIJ, "NIJ/A1/P1", {"N11", "N21"},
                           {{{{{"0"}, {"0"}}}, {{{"N21"}, {"0"}}}}}, {{"N21", "N11"}},
                           Fidelity::Verbatim,
                           "proof requires N_{21} != 0 or N_{11} != 0; N_{11} does not occur in "
                           "the matrix"));
    v.push_back(make_entry("A2", NIJ, "NIJ/A2/P1", {"N21"},
                           {{{{{"0"}, {"0"}}}, {{{"N21"}, {"0"}}}}}, {{"N21"}}));
    v.push_back(make_entry("A3", NIJ, "NIJ/A3/P1", {"N21", "N22"},
                           {{{{{"1/2*N22"}, {"0"}}}, {{{"N21"}, {"N22"}}}}}, {{"N21", "N22"}}));
    v.push_back(make_entry("A4", NIJ, "NIJ/A4/P1", {"N11"},
                           {{{{{"N11"}, {"0"}}}, {{{"0"}, {"0"}}}}}, {{"N11"}}));
    v.push_back(make_entry("A4", NIJ, "NIJ/A4/P2", {"N11"},
                           {{{{{"N11"}, {"0"}}}, {{{"N11"}, {"0"}}}}}, {{"N11"}}));
    v.push_back(make_entry("A4", NIJ, "NIJ/A4/P3", {"N11", "N12"},
                           {{{{{"0"}, {"N12"}}}, {{{"N11"}, {"0"}}}}}, {{"N11", "N12"}},
                           Fidelity::Verbatim, "source places N_{11} in the (2,1) slot"));
    v.push_back(make_entry("A4", NIJ, "NIJ/A4/P4", {"N22"},
                           {{{{{"0"}, {"0"}}}, {{{"0"}, {"N22"}}}}}, {{"N22"}}));
    v.push_back(make_entry("A5", NIJ, "NIJ/A5/P1", {"N22"},
                           {{{{{"0"}, {"0"}}}, {{{"0"}, {"N22"}}}}}, {{"N22"}}));
    v.push_back(make_entry("A5", NIJ, "NIJ/A5/P2", {"N21"},
                           {{{{{"0"}, {"0"}}}, {{{"N21"}, {"0"}}}}}, {{"N21"}}));
    v.push_back(make_entry("A6", NIJ, "NIJ/A6/P1", {"N22"},
                           {{{{{"0"}, {"0"}}}, {{{"0"}, {"N22"}}}}}, {{"N22"}}));
    v.push_back(make_entry("A6", NIJ, "NIJ/A6/P2", {"N21"},
                           {{{{{"0"}, {"0"}}}, {{{"N21"}, {"0"}}}}}, {{"N21"}}));
    v.push_back(make_entry("A7", NIJ, "NIJ/A7/P1", {"N12"},
                           {{{{{"-N12"}, {"N12"}}}, {{{"-N12"}, {"N12"}}}}}, {{"N12"}}));
    v.push_back(make_entry("A8", NIJ, "NIJ/A8/P1", {"N11"},
                           {{{{{"N11"}, {"0"}}}, {{{"-2*N11"}, {"0"}}}}}, {{"N11"}}));

    // Averaging.
    v.push_back(make_entry("A1", AVG, "AVG/A1/P1", {"th22"},
                           {{{{{"th22"}, {"0"}}}, {{{"0"}, {"th22"}}}}}, {{"th22"}},
                           Fidelity::Verbatim,
                           "restriction stated in the proof, not the theorem"));
    v.push_back(make_entry("A1", AVG, "AVG/A1/P2", {"th21"},
                           {{{{{"0"}, {"0"}}}, {{{"th21"}, {"0"}}}}}, {{"th21"}},
                           Fidelity::Verbatim,
                           "restriction stated in the proof, not the theorem"));
    v.push_back(make_entry("A2", AVG, "AVG/A2/P1", {"th22"},
                           {{{{{"th22"}, {"0"}}}, {{{"0"}, {"th22"}}}}}, {{"th22"}}));
    v.push_back(make_entry("A2", AVG, "AVG/A2/P2", {"th21"},
                           {{{{{"0"}, {"0"}}}, {{{"th21"}, {"0"}}}}}, {{"th21"}}));
    v.push_back(make_entry("A3", AVG, "AVG/A3/P1", {"th11", "th21"},
                           {{{{{"th11"}, {"0"}}}, {{{"th21"}, {"th11"}}}}},
                           {{"th11"}, {"th21"}}, Fidelity::Ambiguous,
                           "source (1,1) entry reads 0\\vartheta_{11}; interpreted as "
                           "\\vartheta_{11}, alternative literal reading 0",
                           MatrixText{{{{{"0"}, {"0"}}}, {{{"th21"}, {"th11"}}}}}));
    v.push_back(make_entry("A3", AVG, "AVG/A3/P2", {"th21", "th22"},
                           {{{{{"0"}, {"0"}}}, {{{"th21"}, {"th22"}}}}}, {{"th21"}, {"th22"}}));
    v.push_back(make_entry("A4", AVG, "AVG/A4/P1", {"th11"},
                           {{{{{"th11"}, {"0"}}}, {{{"0"}, {"th11"}}}}}, {{"th11"}}));
    v.push_back(make_entry("A4", AVG, "AVG/A4/P2", {"th12", "th22"},
                           {{{{{"0"}, {"th12"}}}, {{{"0"}, {"th22"}}}}}, {{"th12"}, {"th22"}},
                           Fidelity::TypoInterpreted,
                           "source matrix is missing its first column; read as zero"));
    v.push_back(make_entry("A5", AVG, "AVG/A5/P1", {"th22"},
                           {{{{{"th22"}, {"0"}}}, {{{"0"}, {"th22"}}}}}, {{"th22"}}));
    v.push_back(make_entry("A5", AVG, "AVG/A5/P2", {"th21"},
                           {{{{{"0"}, {"0"}}}, {{{"th21"}, {"0"}}}}}, {{"th21"}}));
    v.push_back(make_entry("A5", AVG, "AVG/A5/P3", {"th11"},
                           {{{{{"th11"}, {"0"}}}, {{{"0"}, {"0"}}}}}, {{"th11"}}));
    v.push_back(make_entry("A6", AVG, "AVG/A6/P1", {"th22"},
                           {{{{{"th22"}, {"0"}}}, {{{"0"}, {"th22"}}}}}, {{"th22"}}));
    v.push_back(make_entry("A6", AVG, "AVG/A6/P2", {"th21"},
                           {{{{{"0"}, {"0"}}}, {{{"th21"}, {"0"}}}}}, {{"th21"}}));
    v.push_back(make_entry("A6", AVG, "AVG/A6/P3", {"th11"},
                           {{{{{"th11"}, {"0"}}}, {{{"0"}, {"0"}}}}}, {{"th11"}}));
    v.push_back(make_entry("A7", AVG, "AVG/A7/P1", {"th11", "th22"},
                           {{{{{"th11"}, {"0"}}}, {{{"0"}, {"th22"}}}}}, {{"th11"}, {"th22"}}));
    v.push_back(make_entry("A7", AVG, "AVG/A7/P2", {"th11", "th12", "th22"},
                           {{{{{"th11"}, {"th12"}}}, {{{"th11"}, {"th22"}}}}},
                           {{"th11"}, {"th12"}, {"th22"}}));
    v.push_back(make_entry("A8", AVG, "AVG/A8/P1", {"th22"},
                           {{{{{"th22"}, {"0"}}}, {{{"0"}, {"th22"}}}}}, {{"th22"}}));
    v.push_back(make_entry("A8", AVG, "AVG/A8/P2", {"th22"},
                           {{{{{"0"}, {"0"}}}, {{{"2*th22"}, {"th22"}}}}}, {{"th22"}}));

    return v;
}

ParamMatrix oriented(const ParamMatrix& m, Convention c) {
    return c == Convention::Row ? m : transpose(m);
}

// Nonzero-residual witness: first sample point (odometer order over a fixed
// value list) where every denominator is nonzero and the residual is not.
std::optional<SoundnessWitness> find_witness(const PaperEntry& entry, const ParamMatrix& M,
                                             const std::vector<RationalFunction>& residuals,
                                             const std::vector<EquationOrigin>& origins) {
    std::size_t bad = residuals.size();
    for (std::size_t t = 0; t < residuals.size(); ++t)
        if (!residuals[t].is_zero()) {
            bad = t;
            break;
        }
    if (bad == residuals.size()) return std::nullopt;

    static const std::vector<Rat> values = {Rat(1),  Rat(2),    Rat(-1), Rat(3),
                                            Rat(1, 2), Rat(-2), Rat(5),  Rat(7)};
    const auto& table = entry.param_table;
    std::vector<std::size_t> odo(table->size(), 0);
    if (table->size() == 0) {
        SoundnessWitness w;
        w.origin = origins[bad];
        w.residual = residuals[bad].num().to_string();
        w.residual_value = residuals[bad].num().constant_value();
        return w;
    }
    while (true) {
        std::map<std::string, Rat> point;
        for (std::size_t v = 0; v < table->size(); ++v) point[table->name(v)] = values[odo[v]];
        bool dens_ok = true;
        for (const auto& row : M)
            for (const auto& rf : row)
                if (rf.den().evaluate(point) == 0) dens_ok = false;
        if (dens_ok && residuals[bad].den().evaluate(point) != 0) {
            Rat value = residuals[bad].num().evaluate(point);
            if (value != 0) {
                SoundnessWitness w;
                w.origin = origins[bad];
                w.residual = residuals[bad].num().to_string();
                w.sample = point;
                w.residual_value = value;
                return w;
            }
        }
        std::size_t pos = table->size();
        while (pos > 0) {
            --pos;
            if (++odo[pos] < values.size()) break;
            odo[pos] = 0;
            if (pos == 0) throw std::logic_error("no witness point found for " + entry.label);
        }
    }
}

Verdict reading_verdict(const PaperEntry& entry, const ParamMatrix& M, Convention convention,
                        const EquationSystem& sys, std::optional<SoundnessWitness>& witness) {
    auto residuals = residual(sys, oriented(M, convention), entry.param_table);
    bool ok = true;
    for (const auto& r : residuals) ok &= r.is_zero();
    if (ok) return Verdict::Sound;
    if (!witness) witness = find_witness(entry, oriented(M, convention), residuals, sys.origins);
    return Verdict::Unsound;
}

// Entry matrix with alpha bound to a value, over the alpha-free parameter
// table.
ParamMatrix bind_alpha(const PaperEntry& entry, const ParamMatrix& M, const Rat& alpha,
                       const VarTablePtr& target) {
    std::map<std::string, RationalFunction> b;
    b.emplace("alpha",
              RationalFunction(Polynomial::constant(target, alpha)));
    ParamMatrix out(2, std::vector<RationalFunction>(2));
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            RationalFunction num = substitute(M[i][j].num(), b, target);
            RationalFunction den = substitute(M[i][j].den(), b, target);
            out[i][j] = num / den;
        }
    return out;
}

// All readings of an entry (primary first, then the alternative one if any)
// that are exactly sound for the given specialized algebra and convention.
std::vector<ParamMatrix> sound_readings(const PaperEntry& entry, const AlgebraSpec& A,
                                        Convention convention, const EquationSystem& sys,
                                        const VarTablePtr& pt) {
    std::vector<ParamMatrix> candidates = {entry.matrix};
    if (entry.alt_matrix) candidates.push_back(*entry.alt_matrix);
    std::vector<ParamMatrix> out;
    for (const auto& M : candidates) {
        ParamMatrix bound(2, std::vector<RationalFunction>(2));
        if (entry.parametric_algebra()) {
            bound = bind_alpha(entry, M, *A.alpha(), pt);
        } else {
            for (std::size_t i = 0; i < 2; ++i)
                for (std::size_t j = 0; j < 2; ++j) bound[i][j] = M[i][j];
        }
        auto residuals = residual(sys, oriented(bound, convention), pt);
        bool ok = true;
        for (const auto& r : residuals) ok &= r.is_zero();
        if (ok) out.push_back(oriented(bound, convention));
    }
    return out;
}

// Does some specialization of the reading hit the point? Solved exactly: the
// matching system in the entry parameters must have a family on which every
// denominator and some member of every restriction clause stays nonzero.
bool reading_covers(const ParamMatrix& reading, const PaperEntry& entry, const RatMatrix& point,
                    const VarTablePtr& pt) {
    std::vector<Polynomial> eqs;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            eqs.push_back(reading[i][j].num() - reading[i][j].den() * point[i][j]);
    SolveResult match = solve_polynomial_system(eqs, pt, entry.params);
    for (const auto& fam : match.families) {
        VarTablePtr free_table = VarTable::make(fam.free_params);
        bool ok = true;
        for (const auto& row : reading)
            for (const auto& rf : row)
                if (!rf.den().is_constant() &&
                    substitute(rf.den(), fam.parametric, free_table).is_zero())
                    ok = false;
        for (const auto& clause : entry.restrictions) {
            bool satisfiable = false;
            for (const auto& name : clause.anyof)
                if (!fam.parametric.at(name).is_zero()) satisfiable = true;
            ok &= satisfiable;
        }
        if (ok) return true;
    }
    return false;
}

// Sample specializations of a sound reading, respecting denominators and
// restrictions; each must land inside some solver family.
void check_specializations(const ParamMatrix& reading, const PaperEntry& entry,
                           const SolveResult& solved, const VarTablePtr& rvars,
                           const VarTablePtr& pt, std::vector<std::string>& missing) {
    static const std::vector<Rat> values = {Rat(-2), Rat(-1), Rat(1), Rat(2)};
    std::vector<std::size_t> odo(pt->size(), 0);
    while (true) {
        std::map<std::string, Rat> point;
        for (std::size_t v = 0; v < pt->size(); ++v) point[pt->name(v)] = values[odo[v]];
        bool admissible = true;
        for (const auto& row : reading)
            for (const auto& rf : row)
                if (rf.den().evaluate(point) == 0) admissible = false;
        for (const auto& clause : entry.restrictions) {
            bool nonzero = false;
            for (const auto& name : clause.anyof)
                if (point.count(name) && point.at(name) != 0) nonzero = true;
            admissible &= nonzero;
        }
        if (admissible) {
            RatMatrix M(2, std::vector<Rat>(2));
            for (std::size_t i = 0; i < 2; ++i)
                for (std::size_t j = 0; j < 2; ++j) M[i][j] = reading[i][j].evaluate(point);
            bool inside = false;
            for (const auto& fam : solved.families)
                if (family_contains(fam, M, rvars)) inside = true;
            if (!inside)
                missing.push_back(entry.label + " specialization " + matrix_to_string(M) +
                                  " not in any solver family");
        }
        if (pt->size() == 0) return;
        std::size_t pos = pt->size();
        while (true) {
            if (pos == 0) return;
            --pos;
            if (++odo[pos] < values.size()) break;
            odo[pos] = 0;
        }
    }
}

ordered_json rat_json(const Rat& r) { return format_rational(r); }

ordered_json witness_json(const SoundnessWitness& w) {
    ordered_json j;
    j["equation"] = {{"i", w.origin.i}, {"j", w.origin.j}, {"k", w.origin.k},
                     {"branch", w.origin.branch}};
    j["residual"] = w.residual;
    ordered_json sample = ordered_json::object();
    for (const auto& [name, val] : w.sample) sample[name] = rat_json(val);
    j["sample"] = sample;
    j["value"] = rat_json(w.residual_value);
    return j;
}

ordered_json soundness_json(const SoundnessResult& s) {
    ordered_json j;
    j["verdict"] = verdict_name(s.verdict);
    if (s.primary_reading) j["primary_reading"] = verdict_name(*s.primary_reading);
    if (s.alternative_reading) j["alternative_reading"] = verdict_name(*s.alternative_reading);
    if (s.witness) j["witness"] = witness_json(*s.witness);
    return j;
}

std::string param_matrix_to_string(const ParamMatrix& m) {
    std::string out = "[";
    for (std::size_t i = 0; i < m.size(); ++i) {
        out += i ? ",[" : "[";
        for (std::size_t j = 0; j < m[i].size(); ++j) {
            if (j) out += ",";
            out += m[i][j].to_string();
        }
        out += "]";
    }
    return out + "]";
}

} // namespace

const std::vector<OperatorKind>& audited_kinds() {
    static const std::vector<OperatorKind> kinds = {
        OperatorKind::rota_baxter(Rat(0)), OperatorKind::rota_baxter(Rat(1)),
        OperatorKind::reynolds(), OperatorKind::nijenhuis(), OperatorKind::averaging()};
    return kinds;
}

std::vector<PaperEntry> all_paper_entries() { return build_all_entries(); }

std::vector<PaperEntry> paper_families(const std::string& algebra, const OperatorKind& kind) {
    std::vector<PaperEntry> out;
    for (auto& e : build_all_entries())
        if (e.algebra == algebra && e.kind == kind) out.push_back(std::move(e));
    bool known = false;
    for (const auto& name : catalog_names()) known |= name == algebra;
    if (!known) throw std::invalid_argument("unknown algebra: " + algebra);
    return out;
}

SoundnessResult verify_soundness(const PaperEntry& entry, Convention convention) {
    EquationSystem sys = build_system(catalog(entry.algebra), entry.kind);
    SoundnessResult result;
    Verdict primary = reading_verdict(entry, entry.matrix, convention, sys, result.witness);
    if (!entry.alt_matrix) {
        result.verdict = primary;
        return result;
    }
    Verdict alternative =
        reading_verdict(entry, *entry.alt_matrix, convention, sys, result.witness);
    result.primary_reading = primary;
    result.alternative_reading = alternative;
    result.verdict = primary == alternative ? primary : Verdict::Ambiguous;
    return result;
}

CompletenessCell compare(const AlgebraSpec& A, const OperatorKind& kind, Convention convention,
                         const std::vector<Rat>& grid) {
    if (!A.specialized()) throw std::invalid_argument("compare needs a specialized algebra");
    CompletenessCell cell;
    cell.algebra = A.name();
    cell.alpha = A.alpha();
    cell.kind = kind;
    cell.convention = convention;

    EquationSystem sys = build_system(A, kind);
    SolveResult solved = solve_families(sys);
    cell.family_count = solved.families.size();
    cell.dropped_branches = solved.dropped_branches;

    std::vector<PaperEntry> entries = paper_families(A.name(), kind);
    std::vector<std::pair<const PaperEntry*, ParamMatrix>> readings;
    std::vector<VarTablePtr> tables;
    for (const auto& e : entries) {
        VarTablePtr pt = VarTable::make(e.params);
        for (auto& reading : sound_readings(e, A, convention, sys, pt)) {
            readings.emplace_back(&e, std::move(reading));
            tables.push_back(pt);
        }
    }

    auto pts = grid_enumerate(sys, grid);
    cell.grid_solutions = pts.size();
    for (const auto& M : pts) {
        bool covered = false;
        for (std::size_t r = 0; r < readings.size() && !covered; ++r)
            covered = reading_covers(readings[r].second, *readings[r].first, M, tables[r]);
        if (!covered) cell.uncovered.push_back(M);
    }

    for (std::size_t r = 0; r < readings.size(); ++r)
        check_specializations(readings[r].second, *readings[r].first, solved, sys.vars,
                              tables[r], cell.missing_from_solver);
    return cell;
}

const std::vector<Rat>& default_grid() {
    static const std::vector<Rat> grid = {Rat(-2), Rat(-1), Rat(-1, 2), Rat(0),
                                          Rat(1, 2), Rat(1), Rat(2)};
    return grid;
}

const std::vector<Rat>& default_alpha_samples() {
    static const std::vector<Rat> samples = {Rat(-1), Rat(0), Rat(1, 2), Rat(1), Rat(2)};
    return samples;
}

bool AuditReport::has_discrepancies() const {
    for (const auto& e : entries) {
        if (e.entry.fidelity != Fidelity::Verbatim) return true;
        if (e.row.verdict != Verdict::Sound || e.column.verdict != Verdict::Sound) return true;
    }
    for (const auto& c : cells)
        if (c.has_findings()) return true;
    return false;
}

AuditReport audit_all(const std::vector<Rat>& grid, const std::vector<Rat>& alpha_samples,
                      int workers, const std::optional<std::string>& only_algebra,
                      const std::optional<OperatorKind>& only_kind,
                      const std::optional<Convention>& only_convention) {
    AuditReport report;
    report.grid = grid;
    report.alpha_samples = alpha_samples;

    for (const auto& entry : all_paper_entries()) {
        if (only_algebra && entry.algebra != *only_algebra) continue;
        if (only_kind && !(entry.kind == *only_kind)) continue;
        EntryVerdicts v{entry, verify_soundness(entry, Convention::Row),
                        verify_soundness(entry, Convention::Column)};
        report.entries.push_back(std::move(v));
    }

    struct CellJob {
        AlgebraSpec algebra;
        OperatorKind kind;
        Convention convention;
    };
    std::vector<CellJob> jobs;
    for (const auto& name : catalog_names()) {
        if (only_algebra && name != *only_algebra) continue;
        std::vector<AlgebraSpec> instances;
        if (catalog_is_parametric(name)) {
            for (const auto& a : alpha_samples) instances.push_back(catalog(name, a));
        } else {
            instances.push_back(catalog(name));
        }
        for (const auto& A : instances)
            for (const auto& kind : audited_kinds()) {
                if (only_kind && !(kind == *only_kind)) continue;
                for (Convention conv : {Convention::Row, Convention::Column}) {
                    if (only_convention && conv != *only_convention) continue;
                    jobs.push_back({A, kind, conv});
                }
            }
    }

    std::vector<CompletenessCell> cells(jobs.size());
    if (workers <= 1) {
        for (std::size_t t = 0; t < jobs.size(); ++t)
            cells[t] = compare(jobs[t].algebra, jobs[t].kind, jobs[t].convention, grid);
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&]() {
            while (true) {
                std::size_t t = next.fetch_add(1);
                if (t >= jobs.size()) return;
                cells[t] = compare(jobs[t].algebra, jobs[t].kind, jobs[t].convention, grid);
            }
        };
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    report.cells = std::move(cells);
    return report;
}

std::string AuditReport::to_json() const {
    ordered_json j;
    ordered_json grid_j = ordered_json::array();
    for (const auto& g : grid) grid_j.push_back(rat_json(g));
    j["grid"] = grid_j;
    ordered_json alpha_j = ordered_json::array();
    for (const auto& a : alpha_samples) alpha_j.push_back(rat_json(a));
    j["alpha_samples"] = alpha_j;

    ordered_json entries_j = ordered_json::array();
    for (const auto& e : entries) {
        ordered_json ej;
        ej["label"] = e.entry.label;
        ej["algebra"] = e.entry.algebra;
        ej["operator"] = e.entry.kind.name();
        ej["matrix"] = param_matrix_to_string(e.entry.matrix);
        if (e.entry.alt_matrix)
            ej["alternative_matrix"] = param_matrix_to_string(*e.entry.alt_matrix);
        ordered_json restr = ordered_json::array();
        for (const auto& r : e.entry.restrictions) restr.push_back(r.to_string());
        ej["restrictions"] = restr;
        ej["fidelity"] = fidelity_name(e.entry.fidelity);
        if (!e.entry.note.empty()) ej["note"] = e.entry.note;
        ej["row"] = soundness_json(e.row);
        ej["column"] = soundness_json(e.column);
        entries_j.push_back(std::move(ej));
    }
    j["entries"] = entries_j;

    ordered_json cells_j = ordered_json::array();
    for (const auto& c : cells) {
        ordered_json cj;
        cj["algebra"] = c.algebra;
        cj["alpha"] = c.alpha ? ordered_json(rat_json(*c.alpha)) : ordered_json(nullptr);
        cj["operator"] = c.kind.name();
        cj["convention"] = convention_name(c.convention);
        cj["grid_solutions"] = c.grid_solutions;
        cj["solver_families"] = c.family_count;
        ordered_json unc = ordered_json::array();
        for (const auto& m : c.uncovered) unc.push_back(matrix_to_string(m));
        cj["uncovered"] = unc;
        cj["missing_from_solver"] = c.missing_from_solver;
        cj["dropped_branches"] = c.dropped_branches;
        cells_j.push_back(std::move(cj));
    }
    j["cells"] = cells_j;

    std::size_t unsound_row = 0, unsound_column = 0, flagged = 0, findings = 0;
    for (const auto& e : entries) {
        unsound_row += e.row.verdict != Verdict::Sound;
        unsound_column += e.column.verdict != Verdict::Sound;
        flagged += e.entry.fidelity != Fidelity::Verbatim;
    }
    for (const auto& c : cells) findings += c.has_findings();
    ordered_json summary;
    summary["entries"] = entries.size();
    summary["entries_not_sound_row"] = unsound_row;
    summary["entries_not_sound_column"] = unsound_column;
    summary["entries_flagged"] = flagged;
    summary["cells"] = cells.size();
    summary["cells_with_findings"] = findings;
    summary["discrepancies"] = has_discrepancies();
    j["summary"] = summary;
    return j.dump(2) + "\n";
}

std::string AuditReport::to_markdown() const {
    std::ostringstream out;
    out << "# Operator table audit\n\n";
    for (const auto& kind : audited_kinds()) {
        bool any = false;
        for (const auto& e : entries) any |= e.entry.kind == kind;
        if (!any) continue;
        out << "## " << kind.name() << "\n\n";
        out << "| Entry | Matrix | Restrictions | Fidelity | Row | Column |\n";
        out << "|---|---|---|---|---|---|\n";
        for (const auto& e : entries) {
            if (!(e.entry.kind == kind)) continue;
            out << "| " << e.entry.label << " | `" << param_matrix_to_string(e.entry.matrix)
                << "` | ";
            for (std::size_t r = 0; r < e.entry.restrictions.size(); ++r)
                out << (r ? "; " : "") << e.entry.restrictions[r].to_string();
            out << " | " << fidelity_name(e.entry.fidelity) << " | "
                << verdict_name(e.row.verdict) << " | " << verdict_name(e.column.verdict)
                << " |\n";
        }
        out << "\n";
    }
    out << "## Completeness findings\n\n";
    out << "| Algebra | alpha | Operator | Convention | Grid solutions | Families | Uncovered |\n";
    out << "|---|---|---|---|---|---|---|\n";
    for (const auto& c : cells) {
        out << "| " << c.algebra << " | " << (c.alpha ? format_rational(*c.alpha) : "-")
            << " | " << c.kind.name() << " | " << convention_name(c.convention) << " | "
            << c.grid_solutions << " | " << c.family_count << " | ";
        for (std::size_t u = 0; u < c.uncovered.size(); ++u)
            out << (u ? "; " : "") << "`" << matrix_to_string(c.uncovered[u]) << "`";
        if (c.uncovered.empty()) out << "none";
        out << " |\n";
    }
    out << "\n";
    return out.str();
}

} // namespace prelie
