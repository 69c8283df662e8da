#include "prelie/poly.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace prelie {

VarTable::VarTable(std::vector<std::string> names) : names_(std::move(names)) {
    for (std::size_t i = 0; i < names_.size(); ++i)
        for (std::size_t j = i + 1; j < names_.size(); ++j)
            if (names_[i] == names_[j])
                throw std::invalid_argument("duplicate variable name: " + names_[i]);
}

std::shared_ptr<const VarTable> VarTable::make(std::vector<std::string> names) {
    return std::shared_ptr<const VarTable>(new VarTable(std::move(names)));
}

std::optional<std::size_t> VarTable::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return i;
    return std::nullopt;
}

static unsigned exp_sum(const Exponents& e) {
    unsigned d = 0;
    for (unsigned x : e) d += x;
    return d;
}

bool monomial_greater(const Exponents& a, const Exponents& b, MonomialOrder order) {
    if (order == MonomialOrder::Lex) {
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i] != b[i]) return a[i] > b[i];
        return false;
    }
    unsigned da = exp_sum(a), db = exp_sum(b);
    if (da != db) return da > db;
    for (std::size_t i = a.size(); i-- > 0;)
        if (a[i] != b[i]) return a[i] < b[i];
    return false;
}

static void require_same_table(const VarTablePtr& a, const VarTablePtr& b) {
    if (a == b) return;
    if (a && b && *a == *b) return;
    throw std::invalid_argument("variable-table mismatch");
}

Polynomial Polynomial::zero(VarTablePtr table) {
    Polynomial p;
    p.table_ = std::move(table);
    return p;
}

Polynomial Polynomial::constant(VarTablePtr table, const Rat& c) {
    Polynomial p = zero(std::move(table));
    if (c != 0) p.terms_.emplace(Exponents(p.table_->size(), 0), c);
    return p;
}

Polynomial Polynomial::variable(VarTablePtr table, const std::string& name) {
    auto idx = table->index_of(name);
    if (!idx) throw std::invalid_argument("unknown variable: " + name);
    Polynomial p = zero(std::move(table));
    Exponents e(p.table_->size(), 0);
    e[*idx] = 1;
    p.terms_.emplace(std::move(e), Rat(1));
    return p;
}

Polynomial Polynomial::term(VarTablePtr table, const Rat& c, const Exponents& exps) {
    if (exps.size() != table->size())
        throw std::invalid_argument("exponent vector length mismatch");
    Polynomial p = zero(std::move(table));
    if (c != 0) p.terms_.emplace(exps, c);
    return p;
}

bool Polynomial::is_constant() const {
    if (terms_.empty()) return true;
    return terms_.size() == 1 && exp_sum(terms_.begin()->first) == 0;
}

Rat Polynomial::constant_value() const {
    if (terms_.empty()) return Rat(0);
    if (!is_constant()) throw std::logic_error("constant_value on non-constant polynomial");
    return terms_.begin()->second;
}

unsigned Polynomial::total_degree() const {
    unsigned d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, exp_sum(e));
    return d;
}

unsigned Polynomial::degree_in(std::size_t var) const {
    unsigned d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
    return d;
}

std::vector<Polynomial> Polynomial::coefficients_in(std::size_t var) const {
    unsigned d = degree_in(var);
    std::vector<Polynomial> out(d + 1, zero(table_));
    for (const auto& [e, c] : terms_) {
        Exponents r = e;
        unsigned k = r[var];
        r[var] = 0;
        out[k].add_term(r, c);
    }
    return out;
}

std::pair<Exponents, Rat> Polynomial::leading_term(MonomialOrder order) const {
    if (terms_.empty()) throw std::logic_error("leading_term of zero polynomial");
    auto best = terms_.begin();
    for (auto it = std::next(terms_.begin()); it != terms_.end(); ++it)
        if (monomial_greater(it->first, best->first, order)) best = it;
    return {best->first, best->second};
}

void Polynomial::add_term(const Exponents& exps, const Rat& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(exps, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Polynomial Polynomial::operator-() const {
    Polynomial p = zero(table_);
    for (const auto& [e, c] : terms_) p.terms_.emplace(e, -c);
    return p;
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
    require_same_table(table_, other.table_);
    Polynomial p = *this;
    for (const auto& [e, c] : other.terms_) p.add_term(e, c);
    return p;
}

Polynomial Polynomial::operator-(const Polynomial& other) const {
    require_same_table(table_, other.table_);
    Polynomial p = *this;
    for (const auto& [e, c] : other.terms_) p.add_term(e, -c);
    return p;
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
    require_same_table(table_, other.table_);
    Polynomial p = zero(table_);
    for (const auto& [ea, ca] : terms_)
        for (const auto& [eb, cb] : other.terms_) {
            Exponents e(ea.size());
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            p.add_term(e, ca * cb);
        }
    return p;
}

Polynomial Polynomial::operator*(const Rat& scalar) const {
    Polynomial p = zero(table_);
    if (scalar == 0) return p;
    for (const auto& [e, c] : terms_) p.terms_.emplace(e, c * scalar);
    return p;
}

Polynomial Polynomial::pow(unsigned exponent) const {
    Polynomial r = constant(table_, Rat(1));
    for (unsigned i = 0; i < exponent; ++i) r = r * *this;
    return r;
}

bool Polynomial::operator==(const Polynomial& other) const {
    require_same_table(table_, other.table_);
    return terms_ == other.terms_;
}

Polynomial Polynomial::monic() const {
    if (terms_.empty()) return *this;
    Rat lc = leading_term(MonomialOrder::Grevlex).second;
    return *this * (Rat(1) / lc);
}

Polynomial Polynomial::primitive() const {
    if (terms_.empty()) return *this;
    Int num_gcd = 0, den_lcm = 1;
    for (const auto& [e, c] : terms_) {
        num_gcd = gcd(num_gcd, numerator(c));
        den_lcm = lcm(den_lcm, denominator(c));
    }
    Rat scale(den_lcm, num_gcd);
    if (scale < 0) scale = -scale;
    Polynomial p = *this * scale;
    if (p.leading_term(MonomialOrder::Grevlex).second < 0) p = -p;
    return p;
}

Rat Polynomial::evaluate(const std::vector<Rat>& point) const {
    if (point.size() != table_->size())
        throw std::invalid_argument("evaluation point dimension mismatch");
    // Per-variable power cache; degrees here are tiny.
    std::vector<std::vector<Rat>> powers(point.size());
    for (std::size_t v = 0; v < point.size(); ++v) powers[v].push_back(Rat(1));
    Rat acc(0);
    for (const auto& [e, c] : terms_) {
        Rat t = c;
        for (std::size_t v = 0; v < e.size(); ++v) {
            if (e[v] == 0) continue;
            auto& pw = powers[v];
            while (pw.size() <= e[v]) pw.push_back(pw.back() * point[v]);
            t *= pw[e[v]];
        }
        acc += t;
    }
    return acc;
}

Rat Polynomial::evaluate(const std::map<std::string, Rat>& point) const {
    std::vector<Rat> full(table_->size(), Rat(0));
    std::vector<bool> bound(table_->size(), false);
    for (const auto& [name, value] : point) {
        auto idx = table_->index_of(name);
        if (idx) {
            full[*idx] = value;
            bound[*idx] = true;
        }
    }
    for (const auto& [e, c] : terms_)
        for (std::size_t v = 0; v < e.size(); ++v)
            if (e[v] > 0 && !bound[v])
                throw std::invalid_argument("unbound variable: " + table_->name(v));
    return evaluate(full);
}

std::string Polynomial::to_string() const {
    if (terms_.empty()) return "0";
    // Descending grevlex for stable readable output.
    std::vector<const std::pair<const Exponents, Rat>*> order;
    for (const auto& t : terms_) order.push_back(&t);
    std::sort(order.begin(), order.end(), [](auto* a, auto* b) {
        return monomial_greater(a->first, b->first, MonomialOrder::Grevlex);
    });
    std::ostringstream out;
    bool first = true;
    for (auto* t : order) {
        if (!first) out << " + ";
        first = false;
        out << format_rational(t->second);
        for (std::size_t v = 0; v < t->first.size(); ++v) {
            if (t->first[v] == 0) continue;
            out << "*" << table_->name(v);
            if (t->first[v] > 1) out << "^" << t->first[v];
        }
    }
    return out.str();
}

Polynomial Polynomial::parse(const std::string& text, VarTablePtr table) {
    Polynomial result = zero(table);
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw std::invalid_argument("empty polynomial text");
    std::size_t pos = 0;
    while (pos < s.size()) {
        Rat sign(1);
        while (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
            if (s[pos] == '-') sign = -sign;
            ++pos;
        }
        std::size_t end = pos;
        while (end < s.size() && s[end] != '+' && s[end] != '-') ++end;
        std::string term_text = s.substr(pos, end - pos);
        if (term_text.empty()) throw std::invalid_argument("malformed polynomial text: " + text);
        Rat coeff = sign;
        Exponents exps(table->size(), 0);
        std::size_t fpos = 0;
        while (fpos < term_text.size()) {
            std::size_t fend = term_text.find('*', fpos);
            if (fend == std::string::npos) fend = term_text.size();
            std::string factor = term_text.substr(fpos, fend - fpos);
            if (factor.empty()) throw std::invalid_argument("malformed term: " + term_text);
            if (std::isdigit(static_cast<unsigned char>(factor[0]))) {
                coeff *= parse_rational(factor);
            } else {
                std::string name = factor;
                unsigned exp = 1;
                auto caret = factor.find('^');
                if (caret != std::string::npos) {
                    name = factor.substr(0, caret);
                    exp = static_cast<unsigned>(std::stoul(factor.substr(caret + 1)));
                }
                auto idx = table->index_of(name);
                if (!idx) throw std::invalid_argument("unknown variable: " + name);
                exps[*idx] += exp;
            }
            fpos = fend + 1;
        }
        result.add_term(exps, coeff);
        pos = end;
    }
    return result;
}

RationalFunction::RationalFunction(Polynomial num)
    : num_(std::move(num)), den_(Polynomial::constant(num_.table(), Rat(1))) {}

RationalFunction::RationalFunction(Polynomial num, Polynomial den)
    : num_(std::move(num)), den_(std::move(den)) {
    require_same_table(num_.table(), den_.table());
    if (den_.is_zero()) throw std::invalid_argument("zero denominator");
    normalize();
}

void RationalFunction::normalize() {
    if (num_.is_zero()) {
        den_ = Polynomial::constant(num_.table(), Rat(1));
        return;
    }
    Rat lc = den_.leading_term(MonomialOrder::Grevlex).second;
    if (lc != 1) {
        Rat inv = Rat(1) / lc;
        num_ = num_ * inv;
        den_ = den_ * inv;
    }
}

RationalFunction RationalFunction::operator-() const {
    RationalFunction r = *this;
    r.num_ = -r.num_;
    return r;
}

RationalFunction RationalFunction::operator+(const RationalFunction& other) const {
    return RationalFunction(num_ * other.den_ + other.num_ * den_, den_ * other.den_);
}

RationalFunction RationalFunction::operator-(const RationalFunction& other) const {
    return RationalFunction(num_ * other.den_ - other.num_ * den_, den_ * other.den_);
}

RationalFunction RationalFunction::operator*(const RationalFunction& other) const {
    return RationalFunction(num_ * other.num_, den_ * other.den_);
}

RationalFunction RationalFunction::operator/(const RationalFunction& other) const {
    if (other.is_zero()) throw std::invalid_argument("division by zero rational function");
    return RationalFunction(num_ * other.den_, den_ * other.num_);
}

bool RationalFunction::equals(const RationalFunction& other) const {
    return (num_ * other.den_ - other.num_ * den_).is_zero();
}

Rat RationalFunction::evaluate(const std::map<std::string, Rat>& point) const {
    Rat d = den_.evaluate(point);
    if (d == 0) throw std::domain_error("denominator vanishes at evaluation point");
    return num_.evaluate(point) / d;
}

std::string RationalFunction::to_string() const {
    if (den_.is_constant() && den_.constant_value() == 1) return num_.to_string();
    return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

RationalFunction substitute(const Polynomial& p,
                            const std::map<std::string, RationalFunction>& bindings,
                            const VarTablePtr& target) {
    for (const auto& [name, rf] : bindings) {
        require_same_table(rf.table(), target);
        if (rf.den().is_zero()) throw std::invalid_argument("binding with zero denominator");
    }
    const VarTablePtr& src = p.table();
    // Per source variable: either a binding or a pass-through target variable.
    std::vector<const RationalFunction*> bound(src->size(), nullptr);
    std::vector<RationalFunction> passthrough(src->size());
    for (std::size_t v = 0; v < src->size(); ++v) {
        auto it = bindings.find(src->name(v));
        if (it != bindings.end()) {
            bound[v] = &it->second;
        } else if (p.degree_in(v) > 0) {
            passthrough[v] = RationalFunction(Polynomial::variable(target, src->name(v)));
            bound[v] = &passthrough[v];
        }
    }
    RationalFunction acc{Polynomial::zero(target)};
    for (const auto& [e, c] : p.terms()) {
        RationalFunction t{Polynomial::constant(target, c)};
        for (std::size_t v = 0; v < e.size(); ++v)
            for (unsigned k = 0; k < e[v]; ++k) t = t * *bound[v];
        acc = acc + t;
    }
    return acc;
}

std::optional<Polynomial> polynomial_sqrt(const Polynomial& p) {
    if (p.is_zero()) return p;
    auto [le, lc] = p.leading_term(MonomialOrder::Lex);
    Rat root_lc;
    if (!rational_sqrt(lc, root_lc)) return std::nullopt;
    Exponents half = le;
    for (auto& x : half) {
        if (x % 2 != 0) return std::nullopt;
        x /= 2;
    }
    Polynomial s = Polynomial::term(p.table(), root_lc, half);
    Rat two_lc = 2 * root_lc;
    for (int iter = 0; iter < 1000; ++iter) {
        Polynomial r = p - s * s;
        if (r.is_zero()) return s;
        auto [re, rc] = r.leading_term(MonomialOrder::Lex);
        Exponents ue = re;
        for (std::size_t i = 0; i < ue.size(); ++i) {
            if (ue[i] < half[i]) return std::nullopt;
            ue[i] -= half[i];
        }
        s = s + Polynomial::term(p.table(), rc / two_lc, ue);
    }
    return std::nullopt;
}

} // namespace prelie
