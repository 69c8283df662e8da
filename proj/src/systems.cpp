#include "prelie/systems.hpp"

#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace prelie {

using nlohmann::ordered_json;

std::string OperatorKind::name() const {
    switch (tag) {
        case Tag::RotaBaxter: return "rota-baxter(" + format_rational(weight) + ")";
        case Tag::Reynolds: return "reynolds";
        case Tag::Nijenhuis: return "nijenhuis";
        case Tag::Averaging: return "averaging";
    }
    return "?";
}

OperatorKind OperatorKind::parse(const std::string& kind, const std::optional<Rat>& weight) {
    if (kind == "rota-baxter") {
        if (!weight) throw std::invalid_argument("rota-baxter requires a weight");
        return rota_baxter(*weight);
    }
    if (weight) throw std::invalid_argument("weight is only valid with rota-baxter");
    if (kind == "reynolds") return reynolds();
    if (kind == "nijenhuis") return nijenhuis();
    if (kind == "averaging") return averaging();
    throw std::invalid_argument("unknown operator kind: " + kind);
}

RatMatrix identity_matrix(std::size_t n) {
    RatMatrix m(n, std::vector<Rat>(n, Rat(0)));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

RatMatrix zero_matrix(std::size_t n) { return RatMatrix(n, std::vector<Rat>(n, Rat(0))); }

RatMatrix scale_matrix(const RatMatrix& m, const Rat& c) {
    RatMatrix out = m;
    for (auto& row : out)
        for (auto& x : row) x *= c;
    return out;
}

RatMatrix transpose(const RatMatrix& m) {
    std::size_t n = m.size();
    RatMatrix out(n, std::vector<Rat>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out[j][i] = m[i][j];
    return out;
}

ParamMatrix transpose(const ParamMatrix& m) {
    std::size_t n = m.size();
    ParamMatrix out(n, std::vector<RationalFunction>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out[j][i] = m[i][j];
    return out;
}

std::string matrix_to_string(const RatMatrix& m) {
    std::ostringstream out;
    out << "[";
    for (std::size_t i = 0; i < m.size(); ++i) {
        out << (i ? ",[" : "[");
        for (std::size_t j = 0; j < m[i].size(); ++j)
            out << (j ? "," : "") << format_rational(m[i][j]);
        out << "]";
    }
    out << "]";
    return out.str();
}

std::string rvar_name(std::size_t i, std::size_t j) {
    return "R" + std::to_string(i + 1) + std::to_string(j + 1);
}

VarTablePtr rvar_table(std::size_t n, bool symbolic_alpha) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) names.push_back(rvar_name(i, j));
    if (symbolic_alpha) names.push_back("alpha");
    return VarTable::make(std::move(names));
}

namespace {

struct Builder {
    const AlgebraSpec& A;
    VarTablePtr vars;
    bool symbolic_alpha;
    std::size_t n;

    Polynomial rvar(std::size_t i, std::size_t j) const {
        return Polynomial::variable(vars, rvar_name(i, j));
    }

    // Structure constant lifted into the system's variable table.
    Polynomial cpoly(std::size_t i, std::size_t j, std::size_t k) const {
        if (!symbolic_alpha)
            return Polynomial::constant(vars, A.constant_value(i, j, k));
        const Polynomial& p = A.constant_poly(i, j, k);
        auto coeffs = p.coefficients_in(0);
        Polynomial out = Polynomial::zero(vars);
        Polynomial alpha = Polynomial::variable(vars, "alpha");
        for (std::size_t d = 0; d < coeffs.size(); ++d)
            out = out + alpha.pow(static_cast<unsigned>(d)) * coeffs[d].constant_value();
        return out;
    }

    Polynomial lhs(std::size_t i, std::size_t j, std::size_t k) const {
        Polynomial out = Polynomial::zero(vars);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                Polynomial c = cpoly(a, b, k);
                if (!c.is_zero()) out = out + rvar(i, a) * rvar(j, b) * c;
            }
        return out;
    }

    // sum_a R[i][a] c[a][j][m]
    Polynomial left_image(std::size_t i, std::size_t j, std::size_t m) const {
        Polynomial out = Polynomial::zero(vars);
        for (std::size_t a = 0; a < n; ++a) {
            Polynomial c = cpoly(a, j, m);
            if (!c.is_zero()) out = out + rvar(i, a) * c;
        }
        return out;
    }

    // sum_b R[j][b] c[i][b][m]
    Polynomial right_image(std::size_t i, std::size_t j, std::size_t m) const {
        Polynomial out = Polynomial::zero(vars);
        for (std::size_t b = 0; b < n; ++b) {
            Polynomial c = cpoly(i, b, m);
            if (!c.is_zero()) out = out + rvar(j, b) * c;
        }
        return out;
    }
};

} // namespace

EquationSystem build_system(const AlgebraSpec& A, const OperatorKind& kind) {
    const std::size_t n = A.dim();
    bool symbolic = A.parametric() && !A.alpha();
    Builder B{A, rvar_table(n, symbolic), symbolic, n};

    EquationSystem sys;
    sys.algebra = A.name();
    sys.alpha = A.alpha();
    sys.symbolic_alpha = symbolic;
    sys.kind = kind;
    sys.vars = B.vars;

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            // Inner coordinates of the kind's argument to the outer P.
            std::vector<Polynomial> inner1, inner2;
            for (std::size_t m = 0; m < n; ++m) {
                switch (kind.tag) {
                    case OperatorKind::Tag::RotaBaxter:
                        inner1.push_back(B.left_image(i, j, m) + B.right_image(i, j, m) +
                                         B.cpoly(i, j, m) * kind.weight);
                        break;
                    case OperatorKind::Tag::Reynolds: {
                        Polynomial cross = Polynomial::zero(B.vars);
                        for (std::size_t a = 0; a < n; ++a)
                            for (std::size_t b = 0; b < n; ++b) {
                                Polynomial c = B.cpoly(a, b, m);
                                if (!c.is_zero()) cross = cross + B.rvar(i, a) * B.rvar(j, b) * c;
                            }
                        inner1.push_back(B.left_image(i, j, m) + B.right_image(i, j, m) - cross);
                        break;
                    }
                    case OperatorKind::Tag::Nijenhuis: {
                        Polynomial pim = Polynomial::zero(B.vars);
                        for (std::size_t p = 0; p < n; ++p) {
                            Polynomial c = B.cpoly(i, j, p);
                            if (!c.is_zero()) pim = pim + c * B.rvar(p, m);
                        }
                        inner1.push_back(B.left_image(i, j, m) + B.right_image(i, j, m) - pim);
                        break;
                    }
                    case OperatorKind::Tag::Averaging:
                        inner1.push_back(B.right_image(i, j, m)); // x . P(y)
                        inner2.push_back(B.left_image(i, j, m));  // P(x) . y
                        break;
                }
            }
            for (std::size_t k = 0; k < n; ++k) {
                Polynomial lhs = B.lhs(i, j, k);
                auto push = [&](const std::vector<Polynomial>& inner, int branch) {
                    Polynomial rhs = Polynomial::zero(B.vars);
                    for (std::size_t m = 0; m < n; ++m) rhs = rhs + inner[m] * B.rvar(m, k);
                    sys.equations.push_back(lhs - rhs);
                    sys.origins.push_back({i + 1, j + 1, k + 1, branch});
                };
                if (kind.tag == OperatorKind::Tag::Averaging) {
                    push(inner1, 1);
                    push(inner2, 2);
                } else {
                    push(inner1, 0);
                }
            }
        }
    return sys;
}

std::vector<Rat> residual_at(const EquationSystem& system, const RatMatrix& M) {
    if (system.symbolic_alpha)
        throw std::invalid_argument("numeric residual requires a specialized system");
    const std::size_t n = M.size();
    std::vector<Rat> point;
    point.reserve(system.vars->size());
    for (std::size_t i = 0; i < n; ++i) {
        if (M[i].size() != n) throw std::invalid_argument("operator matrix not square");
        for (std::size_t j = 0; j < n; ++j) point.push_back(M[i][j]);
    }
    if (point.size() != system.vars->size())
        throw std::invalid_argument("operator matrix dimension mismatch");
    std::vector<Rat> out;
    out.reserve(system.equations.size());
    for (const auto& eq : system.equations) out.push_back(eq.evaluate(point));
    return out;
}

bool satisfies(const EquationSystem& system, const RatMatrix& M) {
    if (system.symbolic_alpha)
        throw std::invalid_argument("numeric residual requires a specialized system");
    const std::size_t n = M.size();
    std::vector<Rat> point;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) point.push_back(M[i][j]);
    for (const auto& eq : system.equations)
        if (eq.evaluate(point) != 0) return false;
    return true;
}

std::vector<RationalFunction> residual(const EquationSystem& system, const ParamMatrix& M,
                                       const VarTablePtr& params) {
    const std::size_t n = M.size();
    if (system.symbolic_alpha && !params->index_of("alpha"))
        throw std::invalid_argument("parameter table must contain alpha for a symbolic system");
    std::map<std::string, RationalFunction> bindings;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) bindings.emplace(rvar_name(i, j), M[i][j]);
    std::vector<RationalFunction> out;
    out.reserve(system.equations.size());
    for (const auto& eq : system.equations) out.push_back(substitute(eq, bindings, params));
    return out;
}

namespace {

Vec apply_operator(const RatMatrix& M, const Vec& v) {
    const std::size_t n = M.size();
    Vec out(n, Rat(0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out[j] += v[i] * M[i][j];
    return out;
}

Vec basis_vec(std::size_t n, std::size_t i) {
    Vec v(n, Rat(0));
    v[i] = 1;
    return v;
}

} // namespace

std::vector<std::vector<Vec>> induced_product(const AlgebraSpec& A, const OperatorKind& kind,
                                              const RatMatrix& M) {
    if (kind.tag != OperatorKind::Tag::RotaBaxter && kind.tag != OperatorKind::Tag::Nijenhuis)
        throw std::invalid_argument("induced_product supports rota-baxter and nijenhuis only");
    const std::size_t n = A.dim();
    std::vector<std::vector<Vec>> d(n, std::vector<Vec>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Vec ei = basis_vec(n, i), ej = basis_vec(n, j);
            Vec pi = apply_operator(M, ei), pj = apply_operator(M, ej);
            Vec sum = multiply(pi, ej, A);
            Vec t = multiply(ei, pj, A);
            for (std::size_t k = 0; k < n; ++k) sum[k] += t[k];
            Vec prod = multiply(ei, ej, A);
            if (kind.tag == OperatorKind::Tag::RotaBaxter) {
                for (std::size_t k = 0; k < n; ++k) sum[k] += kind.weight * prod[k];
            } else {
                Vec pprod = apply_operator(M, prod);
                for (std::size_t k = 0; k < n; ++k) sum[k] -= pprod[k];
            }
            d[i][j] = std::move(sum);
        }
    return d;
}

std::vector<std::vector<Vec>> morphism_defect(const AlgebraSpec& A, const OperatorKind& kind,
                                              const RatMatrix& M) {
    const std::size_t n = A.dim();
    auto star = induced_product(A, kind, M);
    std::vector<std::vector<Vec>> out(n, std::vector<Vec>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Vec lhs = apply_operator(M, star[i][j]);
            Vec rhs = multiply(apply_operator(M, basis_vec(n, i)),
                               apply_operator(M, basis_vec(n, j)), A);
            Vec diff(n);
            for (std::size_t k = 0; k < n; ++k) diff[k] = lhs[k] - rhs[k];
            out[i][j] = std::move(diff);
        }
    return out;
}

bool all_zero(const std::vector<Rat>& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

bool defect_all_zero(const std::vector<std::vector<Vec>>& d) {
    for (const auto& row : d)
        for (const auto& v : row)
            if (!all_zero(v)) return false;
    return true;
}

std::string EquationSystem::to_json() const {
    ordered_json j;
    j["algebra"] = algebra;
    if (alpha) j["alpha"] = format_rational(*alpha);
    j["symbolic_alpha"] = symbolic_alpha;
    if (kind.tag == OperatorKind::Tag::RotaBaxter) {
        j["operator"] = "rota-baxter";
        j["weight"] = format_rational(kind.weight);
    } else if (kind.tag == OperatorKind::Tag::Reynolds) {
        j["operator"] = "reynolds";
    } else if (kind.tag == OperatorKind::Tag::Nijenhuis) {
        j["operator"] = "nijenhuis";
    } else {
        j["operator"] = "averaging";
    }
    j["variables"] = vars->names();
    ordered_json eqs = ordered_json::array();
    for (std::size_t t = 0; t < equations.size(); ++t) {
        ordered_json e;
        e["i"] = origins[t].i;
        e["j"] = origins[t].j;
        e["k"] = origins[t].k;
        if (origins[t].branch != 0) e["branch"] = origins[t].branch;
        e["poly"] = equations[t].to_string();
        eqs.push_back(e);
    }
    j["equations"] = eqs;
    return j.dump(2);
}

EquationSystem EquationSystem::from_json(const std::string& text) {
    ordered_json j = ordered_json::parse(text);
    EquationSystem sys;
    sys.algebra = j.at("algebra").get<std::string>();
    if (j.contains("alpha") && !j.at("alpha").is_null())
        sys.alpha = parse_rational(j.at("alpha").get<std::string>());
    sys.symbolic_alpha = j.value("symbolic_alpha", false);
    std::string op = j.at("operator").get<std::string>();
    std::optional<Rat> weight;
    if (j.contains("weight")) weight = parse_rational(j.at("weight").get<std::string>());
    sys.kind = OperatorKind::parse(op, weight);
    sys.vars = VarTable::make(j.at("variables").get<std::vector<std::string>>());
    for (const auto& e : j.at("equations")) {
        sys.equations.push_back(Polynomial::parse(e.at("poly").get<std::string>(), sys.vars));
        sys.origins.push_back({e.at("i").get<std::size_t>(), e.at("j").get<std::size_t>(),
                               e.at("k").get<std::size_t>(), e.value("branch", 0)});
    }
    return sys;
}

} // namespace prelie
