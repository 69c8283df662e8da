#include "prelie/algebra.hpp"

#include <stdexcept>

#include <nlohmann/json.hpp>

namespace prelie {

using nlohmann::ordered_json;

VarTablePtr AlgebraSpec::alpha_table() {
    static VarTablePtr table = VarTable::make({"alpha"});
    return table;
}

AlgebraSpec::AlgebraSpec(std::string name, std::size_t dim, bool parametric)
    : name_(std::move(name)), dim_(dim), parametric_(parametric) {
    if (dim_ == 0) throw std::invalid_argument("algebra dimension must be positive");
    constants_.assign(dim_ * dim_ * dim_, Polynomial::zero(alpha_table()));
}

const Polynomial& AlgebraSpec::constant_poly(std::size_t i, std::size_t j, std::size_t k) const {
    if (i >= dim_ || j >= dim_ || k >= dim_) throw std::out_of_range("structure constant index");
    return constants_[(i * dim_ + j) * dim_ + k];
}

void AlgebraSpec::set_constant(std::size_t i, std::size_t j, std::size_t k,
                               const Rat& c0, const Rat& c_alpha) {
    if (i >= dim_ || j >= dim_ || k >= dim_) throw std::out_of_range("structure constant index");
    Polynomial p = Polynomial::constant(alpha_table(), c0);
    if (c_alpha != 0) p = p + Polynomial::variable(alpha_table(), "alpha") * c_alpha;
    constants_[(i * dim_ + j) * dim_ + k] = std::move(p);
}

Rat AlgebraSpec::constant_value(std::size_t i, std::size_t j, std::size_t k) const {
    const Polynomial& p = constant_poly(i, j, k);
    if (!parametric_ || p.is_constant()) {
        if (!p.is_constant()) throw std::logic_error("non-constant structure constant");
        return p.constant_value();
    }
    if (!alpha_) throw std::logic_error("alpha not specialized for algebra " + name_);
    return p.evaluate({{"alpha", *alpha_}});
}

AlgebraSpec AlgebraSpec::specialize(const Rat& alpha) const {
    if (!parametric_)
        throw std::invalid_argument("alpha supplied for non-parametric algebra " + name_);
    AlgebraSpec out = *this;
    out.alpha_ = alpha;
    return out;
}

const std::vector<std::string>& catalog_names() {
    static const std::vector<std::string> names = {"A1", "A2", "A3", "A4",
                                                   "A5", "A6", "A7", "A8"};
    return names;
}

bool catalog_is_parametric(const std::string& name) { return name == "A5" || name == "A6"; }

AlgebraSpec catalog(const std::string& name, const std::optional<Rat>& alpha) {
    bool parametric = catalog_is_parametric(name);
    if (!parametric && alpha)
        throw std::invalid_argument("alpha supplied for non-parametric algebra " + name);
    AlgebraSpec A(name, 2, parametric);
    const Rat one(1);
    if (name == "A1") {
        A.set_constant(0, 0, 0, one);
        A.set_constant(0, 0, 1, one);
        A.set_constant(1, 0, 1, one);
    } else if (name == "A2") {
        A.set_constant(0, 0, 0, one);
        A.set_constant(0, 0, 1, one);
        A.set_constant(0, 1, 1, one);
    } else if (name == "A3") {
        A.set_constant(0, 0, 1, one);
    } else if (name == "A4") {
        A.set_constant(1, 0, 0, one);
    } else if (name == "A5") {
        A.set_constant(0, 0, 0, one);
        A.set_constant(0, 1, 1, Rat(0), one); // alpha * e2
    } else if (name == "A6") {
        A.set_constant(0, 0, 0, one);
        A.set_constant(0, 1, 1, Rat(0), one);
        A.set_constant(1, 0, 1, one);
    } else if (name == "A7") {
        A.set_constant(0, 0, 0, one);
        A.set_constant(1, 1, 1, one);
    } else if (name == "A8") {
        A.set_constant(0, 0, 0, one);
        A.set_constant(0, 1, 1, Rat(2));
        A.set_constant(1, 0, 0, Rat(1, 2));
        A.set_constant(1, 0, 1, one);
        A.set_constant(1, 1, 1, one);
    } else {
        throw std::invalid_argument("unknown catalog algebra: " + name);
    }
    if (parametric && alpha) return A.specialize(*alpha);
    return A;
}

Vec multiply(const Vec& u, const Vec& v, const AlgebraSpec& A) {
    const std::size_t n = A.dim();
    if (u.size() != n || v.size() != n)
        throw std::invalid_argument("vector dimension mismatch");
    Vec out(n, Rat(0));
    for (std::size_t i = 0; i < n; ++i) {
        if (u[i] == 0) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (v[j] == 0) continue;
            for (std::size_t k = 0; k < n; ++k)
                out[k] += u[i] * v[j] * A.constant_value(i, j, k);
        }
    }
    return out;
}

namespace {

using PolyVec = std::vector<Polynomial>;

// e_i . e_j with alpha-polynomial coordinates.
PolyVec basis_product(const AlgebraSpec& A, std::size_t i, std::size_t j) {
    PolyVec out;
    out.reserve(A.dim());
    for (std::size_t k = 0; k < A.dim(); ++k) out.push_back(A.constant_poly(i, j, k));
    return out;
}

// e_i . w for a symbolic vector w.
PolyVec left_mul_basis(const AlgebraSpec& A, std::size_t i, const PolyVec& w) {
    PolyVec out(A.dim(), Polynomial::zero(AlgebraSpec::alpha_table()));
    for (std::size_t m = 0; m < A.dim(); ++m)
        for (std::size_t k = 0; k < A.dim(); ++k)
            out[k] = out[k] + w[m] * A.constant_poly(i, m, k);
    return out;
}

// w . e_j for a symbolic vector w.
PolyVec right_mul_basis(const AlgebraSpec& A, const PolyVec& w, std::size_t j) {
    PolyVec out(A.dim(), Polynomial::zero(AlgebraSpec::alpha_table()));
    for (std::size_t m = 0; m < A.dim(); ++m)
        for (std::size_t k = 0; k < A.dim(); ++k)
            out[k] = out[k] + w[m] * A.constant_poly(m, j, k);
    return out;
}

PolyVec vec_sub(const PolyVec& a, const PolyVec& b) {
    PolyVec out;
    out.reserve(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) out.push_back(a[k] - b[k]);
    return out;
}

// e_i(e_j e_k) - (e_i e_j)e_k
PolyVec associator(const AlgebraSpec& A, std::size_t i, std::size_t j, std::size_t k) {
    PolyVec jk = basis_product(A, j, k);
    PolyVec ij = basis_product(A, i, j);
    return vec_sub(left_mul_basis(A, i, jk), right_mul_basis(A, ij, k));
}

bool all_zero(const PolyVec& v) {
    for (const auto& p : v)
        if (!p.is_zero()) return false;
    return true;
}

// Specialize alpha-polynomial defects when the algebra carries a bound alpha.
PolyVec maybe_specialize(const AlgebraSpec& A, PolyVec v) {
    if (!A.parametric() || !A.alpha()) return v;
    for (auto& p : v)
        p = Polynomial::constant(AlgebraSpec::alpha_table(), p.evaluate({{"alpha", *A.alpha()}}));
    return v;
}

} // namespace

std::vector<Polynomial> left_prelie_defect(const AlgebraSpec& A, std::size_t i, std::size_t j, std::size_t k) {
    return maybe_specialize(A, vec_sub(associator(A, i, j, k), associator(A, j, i, k)));
}

std::vector<Polynomial> right_prelie_defect(const AlgebraSpec& A, std::size_t i, std::size_t j, std::size_t k) {
    return maybe_specialize(A, vec_sub(associator(A, i, j, k), associator(A, i, k, j)));
}

bool is_left_prelie(const AlgebraSpec& A) {
    for (std::size_t i = 0; i < A.dim(); ++i)
        for (std::size_t j = 0; j < A.dim(); ++j)
            for (std::size_t k = 0; k < A.dim(); ++k)
                if (!all_zero(left_prelie_defect(A, i, j, k))) return false;
    return true;
}

bool is_right_prelie(const AlgebraSpec& A) {
    for (std::size_t i = 0; i < A.dim(); ++i)
        for (std::size_t j = 0; j < A.dim(); ++j)
            for (std::size_t k = 0; k < A.dim(); ++k)
                if (!all_zero(right_prelie_defect(A, i, j, k))) return false;
    return true;
}

CommutatorResult commutator_algebra(const AlgebraSpec& A) {
    AlgebraSpec L = A; // copy carries name, dim, alpha
    const std::size_t n = A.dim();
    // b[i][j][k] = c[i][j][k] - c[j][i][k], still affine in alpha.
    std::vector<Polynomial> b(n * n * n, Polynomial::zero(AlgebraSpec::alpha_table()));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                b[(i * n + j) * n + k] = A.constant_poly(i, j, k) - A.constant_poly(j, i, k);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                const Polynomial& p = b[(i * n + j) * n + k];
                auto coeffs = p.coefficients_in(0);
                Rat c0 = coeffs.empty() ? Rat(0) : coeffs[0].constant_value();
                Rat c1 = coeffs.size() > 1 ? coeffs[1].constant_value() : Rat(0);
                L.set_constant(i, j, k, c0, c1);
            }

    // Jacobi defect [[x,y],z] + [[y,z],x] + [[z,x],y] over all basis triples.
    bool jacobi = true;
    auto bracket_basis = [&](std::size_t i, std::size_t j) { return basis_product(L, i, j); };
    auto bracket_vec = [&](const PolyVec& u, std::size_t j) {
        // [u, e_j]
        PolyVec out(n, Polynomial::zero(AlgebraSpec::alpha_table()));
        for (std::size_t m = 0; m < n; ++m)
            for (std::size_t k = 0; k < n; ++k)
                out[k] = out[k] + u[m] * L.constant_poly(m, j, k);
        return out;
    };
    for (std::size_t i = 0; i < n && jacobi; ++i)
        for (std::size_t j = 0; j < n && jacobi; ++j)
            for (std::size_t k = 0; k < n && jacobi; ++k) {
                PolyVec d(n, Polynomial::zero(AlgebraSpec::alpha_table()));
                PolyVec t1 = bracket_vec(bracket_basis(i, j), k);
                PolyVec t2 = bracket_vec(bracket_basis(j, k), i);
                PolyVec t3 = bracket_vec(bracket_basis(k, i), j);
                for (std::size_t m = 0; m < n; ++m) d[m] = t1[m] + t2[m] + t3[m];
                if (!all_zero(maybe_specialize(A, d))) jacobi = false;
            }
    return {std::move(L), jacobi};
}

namespace {

std::pair<Rat, Rat> parse_alpha_linear(const std::string& text) {
    Polynomial p = Polynomial::parse(text, AlgebraSpec::alpha_table());
    if (p.degree_in(0) > 1)
        throw std::invalid_argument("structure constant not affine in alpha: " + text);
    auto coeffs = p.coefficients_in(0);
    Rat c0 = coeffs.empty() ? Rat(0) : coeffs[0].constant_value();
    Rat c1 = coeffs.size() > 1 ? coeffs[1].constant_value() : Rat(0);
    return {c0, c1};
}

std::string format_alpha_linear(const Polynomial& p) {
    return p.to_string();
}

} // namespace

AlgebraSpec algebra_from_json(const std::string& json_text) {
    ordered_json j = ordered_json::parse(json_text);
    std::string name = j.at("name").get<std::string>();
    std::size_t dim = j.at("dim").get<std::size_t>();
    bool parametric = false;
    std::vector<std::tuple<std::size_t, std::size_t, std::size_t, Rat, Rat>> entries;
    for (const auto& [key, coords] : j.at("products").items()) {
        auto comma = key.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("product key must be \"i,j\": " + key);
        std::size_t i = std::stoul(key.substr(0, comma));
        std::size_t jj = std::stoul(key.substr(comma + 1));
        for (const auto& [kkey, value] : coords.items()) {
            std::size_t k = std::stoul(kkey);
            if (i < 1 || jj < 1 || k < 1 || i > dim || jj > dim || k > dim)
                throw std::invalid_argument("product index out of range in " + key);
            auto [c0, c1] = parse_alpha_linear(value.get<std::string>());
            if (c1 != 0) parametric = true;
            entries.emplace_back(i - 1, jj - 1, k - 1, c0, c1);
        }
    }
    if (j.contains("alpha") && !j.at("alpha").is_null()) parametric = true;
    AlgebraSpec A(name, dim, parametric);
    for (const auto& [i, jj, k, c0, c1] : entries) A.set_constant(i, jj, k, c0, c1);
    if (j.contains("alpha") && !j.at("alpha").is_null())
        return A.specialize(parse_rational(j.at("alpha").get<std::string>()));
    return A;
}

std::string algebra_to_json(const AlgebraSpec& A) {
    ordered_json j;
    j["name"] = A.name();
    j["dim"] = A.dim();
    ordered_json products = ordered_json::object();
    for (std::size_t i = 0; i < A.dim(); ++i)
        for (std::size_t jj = 0; jj < A.dim(); ++jj) {
            ordered_json coords = ordered_json::object();
            for (std::size_t k = 0; k < A.dim(); ++k) {
                const Polynomial& p = A.constant_poly(i, jj, k);
                if (!p.is_zero()) coords[std::to_string(k + 1)] = format_alpha_linear(p);
            }
            if (!coords.empty())
                products[std::to_string(i + 1) + "," + std::to_string(jj + 1)] = coords;
        }
    j["products"] = products;
    if (A.alpha()) j["alpha"] = format_rational(*A.alpha());
    return j.dump(2);
}

} // namespace prelie
