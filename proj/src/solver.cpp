#include "prelie/solver.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace prelie {

using nlohmann::ordered_json;

namespace {

Exponents exp_lcm(const Exponents& a, const Exponents& b) {
    Exponents out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = std::max(a[i], b[i]);
    return out;
}

bool exp_divides(const Exponents& a, const Exponents& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

Exponents exp_sub(const Exponents& a, const Exponents& b) {
    Exponents out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

} // namespace

Polynomial normal_form(Polynomial p, const std::vector<Polynomial>& basis, MonomialOrder order) {
    if (basis.empty()) return p;
    std::vector<std::pair<Exponents, Rat>> lts;
    lts.reserve(basis.size());
    for (const auto& g : basis) lts.push_back(g.leading_term(order));
    bool reduced = true;
    while (reduced && !p.is_zero()) {
        reduced = false;
        // Reduce the highest reducible term first.
        std::vector<const std::pair<const Exponents, Rat>*> terms;
        for (const auto& t : p.terms()) terms.push_back(&t);
        std::sort(terms.begin(), terms.end(), [&](auto* a, auto* b) {
            return monomial_greater(a->first, b->first, order);
        });
        for (auto* t : terms) {
            for (std::size_t g = 0; g < basis.size(); ++g) {
                if (!exp_divides(lts[g].first, t->first)) continue;
                Rat factor = t->second / lts[g].second;
                Polynomial mono = Polynomial::term(p.table(), factor, exp_sub(t->first, lts[g].first));
                p = p - mono * basis[g];
                reduced = true;
                break;
            }
            if (reduced) break;
        }
    }
    return p;
}

GroebnerBasis buchberger(std::vector<Polynomial> generators, MonomialOrder order) {
    std::vector<Polynomial> basis;
    for (auto& g : generators)
        if (!g.is_zero()) basis.push_back(g.primitive());

    struct Pair {
        std::size_t i, j;
        Exponents lcm;
        unsigned degree;
    };
    std::vector<Pair> pairs;
    std::vector<Exponents> lms;
    for (const auto& g : basis) lms.push_back(g.leading_term(order).first);

    auto lcm_degree = [](const Exponents& e) {
        unsigned d = 0;
        for (unsigned x : e) d += x;
        return d;
    };
    auto coprime = [](const Exponents& a, const Exponents& b) {
        for (std::size_t v = 0; v < a.size(); ++v)
            if (a[v] > 0 && b[v] > 0) return false;
        return true;
    };
    // Gebauer-Moller update: add pairs (k, t) for the new element t,
    // pruning by the coprimality and chain criteria.
    auto update = [&](std::size_t t) {
        std::vector<Pair> fresh;
        for (std::size_t k = 0; k < t; ++k) {
            Exponents l = exp_lcm(lms[k], lms[t]);
            fresh.push_back({k, t, l, lcm_degree(l)});
        }
        // Chain criterion among the fresh pairs: drop (k, t) if some other
        // fresh lcm strictly divides it, or equals it at a smaller index.
        std::vector<Pair> kept;
        for (std::size_t a = 0; a < fresh.size(); ++a) {
            bool drop = false;
            for (std::size_t b = 0; b < fresh.size() && !drop; ++b) {
                if (a == b) continue;
                if (exp_divides(fresh[b].lcm, fresh[a].lcm) &&
                    (fresh[b].lcm != fresh[a].lcm || b < a))
                    drop = true;
            }
            if (!drop) kept.push_back(fresh[a]);
        }
        // Coprime leading monomials reduce to zero.
        std::erase_if(kept, [&](const Pair& p) { return coprime(lms[p.i], lms[p.j]); });
        // Old pairs whose lcm is strictly divisible by the new leading
        // monomial are redundant.
        std::erase_if(pairs, [&](const Pair& p) {
            return exp_divides(lms[t], p.lcm) && p.lcm != exp_lcm(lms[p.i], lms[t]) &&
                   p.lcm != exp_lcm(lms[p.j], lms[t]);
        });
        pairs.insert(pairs.end(), kept.begin(), kept.end());
    };
    for (std::size_t t = 1; t < basis.size(); ++t) update(t);

    while (!pairs.empty()) {
        // Normal selection: smallest lcm first.
        std::size_t best = 0;
        for (std::size_t k = 1; k < pairs.size(); ++k) {
            if (pairs[k].degree < pairs[best].degree ||
                (pairs[k].degree == pairs[best].degree &&
                 monomial_greater(pairs[best].lcm, pairs[k].lcm, order)))
                best = k;
        }
        Pair p = pairs[best];
        pairs.erase(pairs.begin() + best);
        auto lti = basis[p.i].leading_term(order);
        auto ltj = basis[p.j].leading_term(order);
        Polynomial s =
            Polynomial::term(basis[p.i].table(), Rat(1) / lti.second, exp_sub(p.lcm, lti.first)) *
                basis[p.i] -
            Polynomial::term(basis[p.j].table(), Rat(1) / ltj.second, exp_sub(p.lcm, ltj.first)) *
                basis[p.j];
        Polynomial r = normal_form(std::move(s), basis, order);
        if (!r.is_zero()) {
            basis.push_back(r.primitive());
            lms.push_back(basis.back().leading_term(order).first);
            update(basis.size() - 1);
        }
    }
    // Minimalize: drop elements whose leading monomial is divisible by
    // another's.
    std::vector<Polynomial> minimal;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        auto lti = basis[i].leading_term(order);
        bool redundant = false;
        for (std::size_t j = 0; j < basis.size(); ++j) {
            if (i == j) continue;
            auto ltj = basis[j].leading_term(order);
            if (exp_divides(ltj.first, lti.first) && lti.first != ltj.first) { redundant = true; break; }
            if (lti.first == ltj.first && j < i) { redundant = true; break; }
        }
        if (!redundant) minimal.push_back(basis[i]);
    }
    // Inter-reduce tails.
    std::vector<Polynomial> reduced;
    for (std::size_t i = 0; i < minimal.size(); ++i) {
        std::vector<Polynomial> others;
        for (std::size_t j = 0; j < minimal.size(); ++j)
            if (j != i) others.push_back(minimal[j]);
        Polynomial r = normal_form(minimal[i], others, order);
        if (!r.is_zero()) reduced.push_back(r.monic());
    }
    std::sort(reduced.begin(), reduced.end(), [&](const Polynomial& a, const Polynomial& b) {
        return monomial_greater(a.leading_term(order).first, b.leading_term(order).first, order);
    });
    GroebnerBasis out;
    out.polys = std::move(reduced);
    out.order = order;
    return out;
}

namespace {

// p with var := num/den, cleared by den^deg_var(p). Valid on branches where
// den is nonzero.
Polynomial subst_clear(const Polynomial& p, std::size_t var, const Polynomial& num,
                       const Polynomial& den) {
    auto coeffs = p.coefficients_in(var);
    unsigned d = static_cast<unsigned>(coeffs.size()) - 1;
    Polynomial out = Polynomial::zero(p.table());
    for (unsigned k = 0; k <= d; ++k) {
        if (coeffs[k].is_zero()) continue;
        out = out + coeffs[k] * num.pow(k) * den.pow(d - k);
    }
    return out;
}

RationalFunction rf_subst(const RationalFunction& f, std::size_t var, const Polynomial& num,
                          const Polynomial& den) {
    unsigned dn = f.num().degree_in(var);
    unsigned dd = f.den().degree_in(var);
    Polynomial n = subst_clear(f.num(), var, num, den) * den.pow(dd);
    Polynomial d = subst_clear(f.den(), var, num, den) * den.pow(dn);
    return RationalFunction(std::move(n), std::move(d));
}

Polynomial project(const Polynomial& p, const VarTablePtr& target) {
    Polynomial out = Polynomial::zero(target);
    const VarTablePtr& src = p.table();
    std::vector<std::optional<std::size_t>> remap(src->size());
    for (std::size_t v = 0; v < src->size(); ++v) remap[v] = target->index_of(src->name(v));
    for (const auto& [e, c] : p.terms()) {
        Exponents t(target->size(), 0);
        for (std::size_t v = 0; v < e.size(); ++v) {
            if (e[v] == 0) continue;
            if (!remap[v])
                throw std::logic_error("variable escapes projection: " + src->name(v));
            t[*remap[v]] += e[v];
        }
        out = out + Polynomial::term(target, c, t);
    }
    return out;
}

// Rational roots of a univariate (in `var`) polynomial with constant
// coefficients, ascending; `fully_split` reports whether the polynomial
// factors completely over Q (up to the found roots' multiplicities).
std::vector<Rat> rational_roots(const Polynomial& p, std::size_t var, bool& fully_split) {
    auto coeffs = p.coefficients_in(var);
    std::vector<Rat> c;
    for (const auto& q : coeffs) c.push_back(q.constant_value());
    // Deflate repeatedly by synthetic division at each found root.
    std::vector<Rat> roots;
    auto degree = [&]() {
        int d = static_cast<int>(c.size()) - 1;
        while (d > 0 && c[d] == 0) --d;
        return d;
    };
    while (degree() > 0) {
        int d = degree();
        // Integer content-cleared coefficients for the candidate search.
        Int den_lcm = 1;
        for (int k = 0; k <= d; ++k) den_lcm = lcm(den_lcm, denominator(c[k]));
        std::vector<Int> ic(d + 1);
        for (int k = 0; k <= d; ++k) ic[k] = numerator(c[k]) * (den_lcm / denominator(c[k]));
        // Strip trailing zero constant terms: root 0.
        if (ic[0] == 0) {
            roots.push_back(Rat(0));
            c.erase(c.begin());
            continue;
        }
        auto divisors = [](Int n) {
            if (n < 0) n = -n;
            std::vector<Int> out;
            for (Int d1 = 1; d1 * d1 <= n; ++d1)
                if (n % d1 == 0) {
                    out.push_back(d1);
                    out.push_back(n / d1);
                }
            return out;
        };
        bool found = false;
        Rat root;
        for (const Int& pnum : divisors(ic[0])) {
            for (const Int& qden : divisors(ic[d])) {
                for (int sign : {1, -1}) {
                    Rat cand(sign * pnum, qden);
                    Rat val(0);
                    for (int k = d; k >= 0; --k) val = val * cand + c[k];
                    if (val == 0) {
                        root = cand;
                        found = true;
                        break;
                    }
                }
                if (found) break;
            }
            if (found) break;
        }
        if (!found) {
            fully_split = false;
            std::sort(roots.begin(), roots.end());
            roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
            return roots;
        }
        roots.push_back(root);
        // Synthetic division by (x - root).
        std::vector<Rat> q(d);
        Rat carry = c[d];
        for (int k = d - 1; k >= 0; --k) {
            q[k] = carry;
            carry = c[k] + carry * root;
        }
        c = std::move(q);
        if (c.empty()) break;
    }
    fully_split = true;
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

struct Branch {
    std::vector<Polynomial> eqs;
    std::vector<Polynomial> ineqs;
    std::map<std::size_t, RationalFunction> assign; // var index -> value
    int depth = 0;
};

class CaseSplitSolver {
public:
    CaseSplitSolver(const std::vector<Polynomial>& input, VarTablePtr table,
                    std::vector<std::string> unknowns, SolveOptions options)
        : input_(input), table_(std::move(table)), options_(options) {
        for (const auto& name : unknowns) {
            auto idx = table_->index_of(name);
            if (!idx) throw std::invalid_argument("unknown variable: " + name);
            unknown_idx_.push_back(*idx);
        }
        std::sort(unknown_idx_.begin(), unknown_idx_.end());
        for (const auto& p : input_)
            for (std::size_t v = 0; v < table_->size(); ++v)
                if (p.degree_in(v) > 0 &&
                    std::find(unknown_idx_.begin(), unknown_idx_.end(), v) == unknown_idx_.end())
                    throw std::invalid_argument("system involves non-unknown variable " +
                                                table_->name(v));
    }

    SolveResult run() {
        Branch root;
        root.eqs = input_;
        explore(root);
        finalize();
        SolveResult out;
        out.families = std::move(families_);
        out.dropped_branches = std::move(dropped_);
        return out;
    }

private:
    void note_branch() {
        if (++branches_ > options_.max_branches)
            throw std::runtime_error("case-split bound exceeded (" +
                                     std::to_string(options_.max_branches) + " branches)");
    }

    bool apply_assignment(Branch& b, std::size_t var, Polynomial num, Polynomial den) {
        std::vector<Polynomial> eqs;
        for (const auto& e : b.eqs) {
            Polynomial r = subst_clear(e, var, num, den);
            if (!r.is_zero()) eqs.push_back(r.primitive());
        }
        std::vector<Polynomial> ineqs;
        for (const auto& q : b.ineqs) {
            Polynomial r = subst_clear(q, var, num, den);
            if (r.is_zero()) return false; // required-nonzero polynomial forced to zero
            if (!r.is_constant()) ineqs.push_back(r.primitive());
        }
        for (auto& [w, f] : b.assign) f = rf_subst(f, var, num, den);
        b.eqs = std::move(eqs);
        b.ineqs = std::move(ineqs);
        b.assign.emplace(var, RationalFunction(std::move(num), std::move(den)));
        return true;
    }

    void explore(Branch b) {
        if (b.depth > 100) throw std::runtime_error("case-split recursion too deep");
        GroebnerBasis gb = buchberger(b.eqs, MonomialOrder::Lex);
        b.eqs = gb.polys;
        if (b.eqs.size() == 1 && b.eqs[0].is_constant()) return; // unit ideal
        if (b.eqs.empty()) {
            emit(b);
            return;
        }

        // Candidate search: linear with constant coefficient, then linear,
        // then univariate, then quadratic; equations in basis order,
        // variables in table order (R11 > R12 > ...).
        for (int priority = 1; priority <= 4; ++priority) {
            for (const auto& eq : b.eqs) {
                for (std::size_t v : unknown_idx_) {
                    unsigned d = eq.degree_in(v);
                    if (d == 0) continue;
                    auto coeffs = eq.coefficients_in(v);
                    bool univariate = true;
                    for (std::size_t w = 0; w < table_->size(); ++w)
                        if (w != v && eq.degree_in(w) > 0) univariate = false;
                    switch (priority) {
                        case 1:
                            if (d == 1 && coeffs[1].is_constant()) {
                                Branch next = b;
                                next.depth++;
                                if (apply_assignment(next, v, -coeffs[0], coeffs[1]))
                                    explore(std::move(next));
                                return;
                            }
                            break;
                        case 2:
                            if (d == 1) {
                                split_linear(b, v, coeffs[0], coeffs[1]);
                                return;
                            }
                            break;
                        case 3:
                            if (univariate && d >= 2) {
                                split_univariate(b, v, eq);
                                return;
                            }
                            break;
                        case 4:
                            if (d == 2) {
                                split_quadratic(b, v, coeffs);
                                return;
                            }
                            break;
                    }
                }
            }
        }
        std::ostringstream note;
        note << "unsupported branch (no linear/univariate/quadratic pivot):";
        for (const auto& e : b.eqs) note << " {" << e.to_string() << "}";
        dropped_.push_back(note.str());
    }

    // eq = a*v + b with non-constant a: vanishing case first.
    void split_linear(const Branch& b, std::size_t v, const Polynomial& b0, const Polynomial& a) {
        {
            note_branch();
            Branch zero = b;
            zero.depth++;
            zero.eqs.push_back(a);
            explore(std::move(zero));
        }
        {
            note_branch();
            Branch nz = b;
            nz.depth++;
            nz.ineqs.push_back(a.primitive());
            if (apply_assignment(nz, v, -b0, a)) explore(std::move(nz));
        }
    }

    void split_univariate(const Branch& b, std::size_t v, const Polynomial& eq) {
        bool fully_split = false;
        std::vector<Rat> roots = rational_roots(eq, v, fully_split);
        if (!fully_split)
            dropped_.push_back("factor of {" + eq.to_string() + "} in " + table_->name(v) +
                               " has no rational root; complex-only branch dropped");
        Polynomial one = Polynomial::constant(table_, Rat(1));
        for (const Rat& r : roots) {
            note_branch();
            Branch next = b;
            next.depth++;
            if (apply_assignment(next, v, Polynomial::constant(table_, r), one))
                explore(std::move(next));
        }
    }

    void split_quadratic(const Branch& b, std::size_t v, const std::vector<Polynomial>& coeffs) {
        const Polynomial& a = coeffs[2];
        const Polynomial& b1 = coeffs[1];
        const Polynomial& c = coeffs[0];
        if (!a.is_constant()) {
            note_branch();
            Branch zero = b;
            zero.depth++;
            zero.eqs.push_back(a);
            explore(std::move(zero));
        }
        Branch nz = b;
        nz.depth++;
        if (!a.is_constant()) nz.ineqs.push_back(a.primitive());
        Polynomial disc = b1 * b1 - a * c * Rat(4);
        if (disc.is_zero()) {
            note_branch();
            if (apply_assignment(nz, v, -b1, a * Rat(2))) explore(std::move(nz));
            return;
        }
        auto s = polynomial_sqrt(disc);
        if (!s) {
            dropped_.push_back("quadratic discriminant {" + disc.to_string() +
                               "} is not a polynomial square; branch dropped");
            return;
        }
        for (int sign : {-1, 1}) {
            note_branch();
            Branch next = nz;
            if (apply_assignment(next, v, -b1 + *s * Rat(sign), a * Rat(2)))
                explore(std::move(next));
        }
    }

    void emit(const Branch& b) {
        std::vector<std::string> free_names;
        for (std::size_t v : unknown_idx_)
            if (!b.assign.count(v)) free_names.push_back(table_->name(v));
        VarTablePtr ft = VarTable::make(free_names);

        SolutionFamily fam;
        fam.free_params = free_names;
        for (std::size_t v : unknown_idx_) {
            auto it = b.assign.find(v);
            if (it == b.assign.end()) {
                fam.parametric.emplace(table_->name(v),
                                       RationalFunction(Polynomial::variable(ft, table_->name(v))));
            } else {
                fam.parametric.emplace(table_->name(v),
                                       RationalFunction(project(it->second.num(), ft),
                                                        project(it->second.den(), ft)));
                Polynomial constraint = it->second.den() * Polynomial::variable(table_, table_->name(v)) -
                                        it->second.num();
                fam.implicit_form.push_back(constraint.primitive());
            }
        }
        std::set<std::string> seen;
        for (const auto& q : b.ineqs) {
            Polynomial n = q.primitive();
            if (seen.insert(n.to_string()).second) fam.inequations.push_back(n);
        }

        // Soundness of the emitted family: the parametric form must
        // annihilate both the implicit form and the input system.
        for (const auto& p : input_) {
            RationalFunction r = substitute(p, fam.parametric, ft);
            if (!r.is_zero())
                throw std::logic_error("family fails the source system on equation " +
                                       p.to_string());
        }
        for (const auto& p : fam.implicit_form) {
            RationalFunction r = substitute(p, fam.parametric, ft);
            if (!r.is_zero()) throw std::logic_error("family fails its implicit form");
        }
        families_.push_back(std::move(fam));
    }

    void finalize() {
        auto key = [](const SolutionFamily& f) {
            std::ostringstream out;
            std::vector<std::string> parts;
            for (const auto& p : f.implicit_form) parts.push_back(p.to_string());
            std::sort(parts.begin(), parts.end());
            for (const auto& s : parts) out << s << ";";
            out << "|";
            parts.clear();
            for (const auto& p : f.inequations) parts.push_back(p.to_string());
            std::sort(parts.begin(), parts.end());
            for (const auto& s : parts) out << s << "!;";
            return out.str();
        };
        std::set<std::string> seen;
        std::vector<SolutionFamily> unique;
        for (auto& f : families_)
            if (seen.insert(key(f)).second) unique.push_back(std::move(f));
        std::sort(unique.begin(), unique.end(), [&](const SolutionFamily& a, const SolutionFamily& b) {
            std::size_t ca = a.implicit_form.size() + a.inequations.size();
            std::size_t cb = b.implicit_form.size() + b.inequations.size();
            if (ca != cb) return ca < cb;
            return key(a) < key(b);
        });
        families_ = std::move(unique);
    }

    std::vector<Polynomial> input_;
    VarTablePtr table_;
    SolveOptions options_;
    std::vector<std::size_t> unknown_idx_;
    std::vector<SolutionFamily> families_;
    std::vector<std::string> dropped_;
    int branches_ = 0;
};

} // namespace

SolveResult solve_polynomial_system(const std::vector<Polynomial>& polys,
                                    const VarTablePtr& table,
                                    const std::vector<std::string>& unknowns,
                                    const SolveOptions& options) {
    CaseSplitSolver solver(polys, table, unknowns, options);
    return solver.run();
}

SolveResult solve_families(const EquationSystem& system, const SolveOptions& options) {
    if (system.symbolic_alpha)
        throw std::invalid_argument("solve_families requires a specialized system");
    std::vector<std::string> unknowns = system.vars->names();
    return solve_polynomial_system(system.equations, system.vars, unknowns, options);
}

std::vector<RatMatrix> grid_enumerate(const EquationSystem& system, const std::vector<Rat>& grid) {
    if (grid.empty()) throw std::invalid_argument("empty grid");
    if (system.symbolic_alpha)
        throw std::invalid_argument("grid_enumerate requires a specialized system");
    std::vector<Rat> values = grid;
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    const std::size_t nvars = system.vars->size();
    std::size_t n = 0;
    while (n * n < nvars) ++n;
    if (n * n != nvars) throw std::invalid_argument("variable table is not a square matrix");

    std::vector<RatMatrix> out;
    std::vector<std::size_t> odometer(nvars, 0);
    std::vector<Rat> point(nvars);
    for (std::size_t v = 0; v < nvars; ++v) point[v] = values[0];
    for (;;) {
        bool ok = true;
        for (const auto& eq : system.equations)
            if (eq.evaluate(point) != 0) { ok = false; break; }
        if (ok) {
            RatMatrix m(n, std::vector<Rat>(n));
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) m[i][j] = point[i * n + j];
            out.push_back(std::move(m));
        }
        std::size_t pos = nvars;
        while (pos > 0) {
            --pos;
            if (++odometer[pos] < values.size()) {
                point[pos] = values[odometer[pos]];
                break;
            }
            odometer[pos] = 0;
            point[pos] = values[0];
            if (pos == 0) return out;
        }
    }
}

bool family_contains_point(const SolutionFamily& family, const std::map<std::string, Rat>& point) {
    for (const auto& p : family.implicit_form)
        if (p.evaluate(point) != 0) return false;
    for (const auto& p : family.inequations)
        if (p.evaluate(point) == 0) return false;
    return true;
}

bool family_contains(const SolutionFamily& family, const RatMatrix& point, const VarTablePtr&) {
    std::map<std::string, Rat> named;
    for (std::size_t i = 0; i < point.size(); ++i)
        for (std::size_t j = 0; j < point[i].size(); ++j)
            named.emplace(rvar_name(i, j), point[i][j]);
    return family_contains_point(family, named);
}

std::string SolutionFamily::to_json_string() const {
    ordered_json j;
    j["free_params"] = free_params;
    ordered_json par = ordered_json::object();
    for (const auto& [name, rf] : parametric) par[name] = rf.to_string();
    j["parametric"] = par;
    ordered_json imp = ordered_json::array();
    for (const auto& p : implicit_form) imp.push_back(p.to_string());
    j["implicit"] = imp;
    ordered_json ineq = ordered_json::array();
    for (const auto& p : inequations) ineq.push_back(p.to_string());
    j["inequations"] = ineq;
    return j.dump(2);
}

} // namespace prelie
