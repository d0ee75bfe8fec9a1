#include "specnum/ring.hpp"

#include <sstream>

namespace specnum {

std::string ValidationReport::to_string() const {
    std::ostringstream os;
    for (const auto& v : violations)
        os << v << "\n";
    return os.str();
}

RingModel::RingModel(std::vector<RingBasisElement> basis, int truncation_degree)
    : basis_(std::move(basis)), truncation_degree_(truncation_degree), unit_index_(0) {
    bool unit_found = false;
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        if (!index_.emplace(basis_[i].name, i).second)
            throw std::invalid_argument("RingModel: duplicate basis name " + basis_[i].name);
        if (basis_[i].name == "1") {
            unit_index_ = i;
            unit_found = true;
        }
    }
    if (!unit_found)
        throw std::invalid_argument("RingModel: missing unit element \"1\"");
}

std::size_t RingModel::index_of(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end())
        throw std::invalid_argument("RingModel: unknown basis element " + name);
    return it->second;
}

bool RingModel::has_element(const std::string& name) const {
    return index_.count(name) > 0;
}

void RingModel::set_product(const std::string& left, const std::string& right,
                            const std::vector<std::string>& result) {
    Gf2Vector v(basis_.size());
    for (const auto& n : result)
        v.flip(index_of(n));
    mult_[{index_of(left), index_of(right)}] = std::move(v);
}

void RingModel::set_diff(const std::string& element, const std::vector<std::string>& result) {
    Gf2Vector v(basis_.size());
    for (const auto& n : result)
        v.flip(index_of(n));
    diff_[index_of(element)] = std::move(v);
}

RingElement RingModel::from_coeffs(Gf2Vector coeffs) const {
    int deg = -1;
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        if (coeffs.get(i)) {
            if (deg >= 0 && basis_[i].degree != deg)
                throw std::invalid_argument("RingModel: inhomogeneous element");
            deg = basis_[i].degree;
        }
    }
    return RingElement{deg, std::move(coeffs)};
}

RingElement RingModel::product_table(std::size_t i, std::size_t j) const {
    if (i == unit_index_)
        return from_coeffs(Gf2Vector::unit(basis_.size(), j));
    if (j == unit_index_)
        return from_coeffs(Gf2Vector::unit(basis_.size(), i));
    auto it = mult_.find({i, j});
    if (it == mult_.end())
        return zero();
    return from_coeffs(it->second);
}

RingElement RingModel::diff_table(std::size_t i) const {
    auto it = diff_.find(i);
    if (it == diff_.end())
        return zero();
    return from_coeffs(it->second);
}

RingElement RingModel::element(const std::vector<std::string>& names) const {
    Gf2Vector v(basis_.size());
    for (const auto& n : names)
        v.flip(index_of(n));
    return from_coeffs(std::move(v));
}

RingElement RingModel::unit() const {
    return from_coeffs(Gf2Vector::unit(basis_.size(), unit_index_));
}

RingElement RingModel::add(const RingElement& a, const RingElement& b) const {
    if (a.is_zero())
        return b;
    if (b.is_zero())
        return a;
    if (a.degree != b.degree)
        throw std::invalid_argument("RingModel: adding elements of different degrees");
    return from_coeffs(a.coeffs ^ b.coeffs);
}

RingElement RingModel::multiply(const RingElement& a, const RingElement& b) const {
    if (a.is_zero() || b.is_zero())
        return zero();
    if (a.degree + b.degree > truncation_degree_)
        return zero();
    Gf2Vector acc(basis_.size());
    for (std::size_t i : a.coeffs.support())
        for (std::size_t j : b.coeffs.support()) {
            RingElement t = product_table(i, j);
            if (!t.is_zero())
                acc ^= t.coeffs;
        }
    return from_coeffs(std::move(acc));
}

RingElement RingModel::diff(const RingElement& a) const {
    if (a.is_zero())
        return zero();
    Gf2Vector acc(basis_.size());
    for (std::size_t i : a.coeffs.support()) {
        RingElement t = diff_table(i);
        if (!t.is_zero())
            acc ^= t.coeffs;
    }
    return from_coeffs(std::move(acc));
}

ValidationReport RingModel::validate() const {
    ValidationReport rep;
    const std::size_t n = basis_.size();
    if (basis_[unit_index_].degree != 0)
        rep.add("unit: element \"1\" must have degree 0");
    for (std::size_t i = 0; i < n; ++i)
        if (i != unit_index_ && basis_[i].name == "1")
            rep.add("unit: duplicate element named \"1\"");

    auto name = [&](std::size_t i) { return basis_[i].name; };

    // degree additivity of the product table
    for (const auto& [key, coeffs] : mult_) {
        auto [i, j] = key;
        int expected = basis_[i].degree + basis_[j].degree;
        for (std::size_t k = 0; k < n; ++k) {
            if (!coeffs.get(k))
                continue;
            if (expected > truncation_degree_)
                rep.add("degree: product " + name(i) + "*" + name(j) +
                        " lies above the truncation degree but is nonzero");
            else if (basis_[k].degree != expected)
                rep.add("degree: product " + name(i) + "*" + name(j) + " contains " + name(k) +
                        " of degree " + std::to_string(basis_[k].degree) + ", expected " +
                        std::to_string(expected));
        }
    }

    // unit law on explicit table entries (implicit entries satisfy it by construction)
    for (const auto& [key, coeffs] : mult_) {
        auto [i, j] = key;
        if (i == unit_index_ && coeffs != Gf2Vector::unit(n, j))
            rep.add("unit: table overrides 1*" + name(j));
        if (j == unit_index_ && coeffs != Gf2Vector::unit(n, i))
            rep.add("unit: table overrides " + name(i) + "*1");
    }

    // associativity within the truncation window
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                int total = basis_[i].degree + basis_[j].degree + basis_[k].degree;
                if (total > truncation_degree_)
                    continue;
                RingElement ei{basis_[i].degree, Gf2Vector::unit(n, i)};
                RingElement ej{basis_[j].degree, Gf2Vector::unit(n, j)};
                RingElement ek{basis_[k].degree, Gf2Vector::unit(n, k)};
                RingElement lhs = multiply(multiply(ei, ej), ek);
                RingElement rhs = multiply(ei, multiply(ej, ek));
                if (!add(lhs, rhs).is_zero())
                    rep.add("associativity: (" + name(i) + "*" + name(j) + ")*" + name(k) +
                            " != " + name(i) + "*(" + name(j) + "*" + name(k) + ")");
            }

    // differential lowers degree by one and lands in the basis
    for (const auto& [i, coeffs] : diff_) {
        for (std::size_t k = 0; k < n; ++k)
            if (coeffs.get(k) && basis_[k].degree != basis_[i].degree - 1)
                rep.add("differential: d(" + name(i) + ") contains " + name(k) +
                        " which is not one degree lower");
    }

    // d^2 = 0
    for (std::size_t i = 0; i < n; ++i) {
        RingElement ei{basis_[i].degree, Gf2Vector::unit(n, i)};
        RingElement dd = diff(diff_table(i));
        if (!dd.is_zero())
            rep.add("d^2: d(d(" + name(i) + ")) = " + element_to_string(dd) + " != 0");
        (void)ei;
    }

    // Leibniz within truncation
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (basis_[i].degree + basis_[j].degree > truncation_degree_ + 1)
                continue;
            RingElement ei{basis_[i].degree, Gf2Vector::unit(n, i)};
            RingElement ej{basis_[j].degree, Gf2Vector::unit(n, j)};
            RingElement lhs = diff(multiply(ei, ej));
            RingElement rhs = add(multiply(diff_table(i), ej), multiply(ei, diff_table(j)));
            if (!add(lhs, rhs).is_zero())
                rep.add("Leibniz: d(" + name(i) + "*" + name(j) + ") != d(" + name(i) + ")*" +
                        name(j) + " + " + name(i) + "*d(" + name(j) + ")");
        }

    return rep;
}

std::string RingModel::element_to_string(const RingElement& e) const {
    if (e.is_zero())
        return "0";
    std::string s;
    for (std::size_t i : e.coeffs.support()) {
        if (!s.empty())
            s += " + ";
        s += basis_[i].name;
    }
    return s;
}

RingModel builtin_ring(const std::string& name) {
    if (name == "trivial") {
        return RingModel({{"1", 0}}, 0);
    }
    if (name == "s2xs4") {
        RingModel r({{"1", 0}, {"a", 1}, {"b", 3}, {"g", 4}}, 4);
        r.set_product("a", "b", {"g"});
        r.set_product("b", "a", {"g"});
        return r;
    }
    if (name == "s2xs4-sum") {
        RingModel r({{"1", 0}, {"a1", 1}, {"a2", 1}, {"b1", 3}, {"b2", 3}, {"g", 4}}, 4);
        r.set_product("a1", "b1", {"g"});
        r.set_product("b1", "a1", {"g"});
        r.set_product("a2", "b2", {"g"});
        r.set_product("b2", "a2", {"g"});
        return r;
    }
    throw std::invalid_argument("builtin_ring: unknown ring " + name);
}

}  // namespace specnum
