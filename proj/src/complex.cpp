#include "specnum/complex.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <sstream>

namespace specnum {

std::size_t FilteredComplex::generator_index(const std::string& name) const {
    for (std::size_t i = 0; i < generators.size(); ++i)
        if (generators[i].name == name)
            return i;
    throw std::invalid_argument("FilteredComplex: unknown generator " + name);
}

bool FilteredComplex::has_generator(const std::string& name) const {
    for (const auto& g : generators)
        if (g.name == name)
            return true;
    return false;
}

const Generator& FilteredComplex::generator(const std::string& name) const {
    return generators[generator_index(name)];
}

RingElement FilteredComplex::coefficient(const std::string& source,
                                         const std::string& target) const {
    RingElement acc = ring.zero();
    for (const auto& e : entries)
        if (e.source == source && e.target == target)
            acc = ring.add(acc, e.coefficient);
    return acc;
}

int FilteredComplex::min_degree() const {
    int d = 0;
    for (std::size_t i = 0; i < generators.size(); ++i)
        d = i == 0 ? generators[i].degree : std::min(d, generators[i].degree);
    return d;
}

int FilteredComplex::max_degree() const {
    int d = 0;
    for (std::size_t i = 0; i < generators.size(); ++i)
        d = i == 0 ? generators[i].degree : std::max(d, generators[i].degree);
    return d;
}

double FilteredComplex::max_value() const {
    double v = -std::numeric_limits<double>::infinity();
    for (const auto& g : generators)
        v = std::max(v, g.value);
    return v;
}

double FilteredComplex::min_value() const {
    double v = std::numeric_limits<double>::infinity();
    for (const auto& g : generators)
        v = std::min(v, g.value);
    return v;
}

std::vector<double> FilteredComplex::sorted_distinct_values() const {
    std::set<double> s;
    for (const auto& g : generators)
        s.insert(g.value);
    return {s.begin(), s.end()};
}

ValidationReport validate_complex(const FilteredComplex& c) {
    ValidationReport rep = c.ring.validate();
    for (auto& v : rep.violations)
        v = "ring: " + v;

    std::set<std::string> names;
    for (const auto& g : c.generators)
        if (!names.insert(g.name).second)
            rep.add("generators: duplicate name " + g.name);

    for (const auto& e : c.entries) {
        if (!c.has_generator(e.source) || !c.has_generator(e.target))
            throw std::invalid_argument("validate_complex: entry references unknown generator " +
                                        (c.has_generator(e.source) ? e.target : e.source));
        if (e.coefficient.is_zero()) {
            rep.add("entry " + e.source + " -> " + e.target + ": zero coefficient");
            continue;
        }
        const Generator& s = c.generator(e.source);
        const Generator& t = c.generator(e.target);
        if (s.degree <= t.degree)
            rep.add("degree: entry " + e.source + " -> " + e.target +
                    " does not lower generator degree");
        // Representing chains may be degenerate, so coefficients of lower degree
        // are allowed; larger degrees exceed the moduli dimension.
        else if (e.coefficient.degree > s.degree - t.degree - 1)
            rep.add("degree: entry " + e.source + " -> " + e.target + " has coefficient degree " +
                    std::to_string(e.coefficient.degree) + " > " +
                    std::to_string(s.degree - t.degree - 1));
        bool mono = c.strict_decrease ? s.value > t.value : s.value >= t.value;
        if (!mono)
            rep.add("value: entry " + e.source + " -> " + e.target +
                    " does not decrease the filtration value");
    }

    // Flatness (Maurer-Cartan): diff(a_pq) + sum_r a_pr * a_rq = 0 for all p, q.
    for (const auto& p : c.generators)
        for (const auto& q : c.generators) {
            RingElement residual = c.ring.diff(c.coefficient(p.name, q.name));
            for (const auto& r : c.generators)
                residual = c.ring.add(
                    residual,
                    c.ring.multiply(c.coefficient(p.name, r.name), c.coefficient(r.name, q.name)));
            if (!residual.is_zero())
                rep.add("flatness: residual at (" + p.name + ", " + q.name + ") is " +
                        c.ring.element_to_string(residual));
        }
    return rep;
}

FilteredComplex truncate_below(const FilteredComplex& c, TruncationLevel nu) {
    FilteredComplex out{c.ring, {}, {}, c.strict_decrease};
    for (const auto& g : c.generators)
        if (g.value <= nu.nu)
            out.generators.push_back(g);
    for (const auto& e : c.entries)
        if (out.has_generator(e.source) && out.has_generator(e.target))
            out.entries.push_back(e);
    return out;
}

FilteredComplex quotient_above(const FilteredComplex& c, TruncationLevel nu) {
    FilteredComplex out{c.ring, {}, {}, c.strict_decrease};
    for (const auto& g : c.generators)
        if (g.value > nu.nu)
            out.generators.push_back(g);
    for (const auto& e : c.entries)
        if (out.has_generator(e.source) && out.has_generator(e.target))
            out.entries.push_back(e);
    return out;
}

FilteredComplex perturb_values(const FilteredComplex& c, double epsilon, std::uint64_t seed) {
    if (epsilon < 0)
        throw std::invalid_argument("perturb_values: epsilon must be >= 0");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-epsilon, epsilon);
    std::vector<double> shifts(c.generators.size());
    for (auto& s : shifts)
        s = dist(rng);

    double scale = 1.0;
    for (int attempt = 0; attempt < 64; ++attempt) {
        FilteredComplex out = c;
        for (std::size_t i = 0; i < out.generators.size(); ++i)
            out.generators[i].value += scale * shifts[i];
        bool ok = true;
        for (const auto& e : out.entries) {
            double sv = out.generator(e.source).value;
            double tv = out.generator(e.target).value;
            if (out.strict_decrease ? !(sv > tv) : !(sv >= tv)) {
                ok = false;
                break;
            }
        }
        if (ok)
            return out;
        scale /= 2;
    }
    return c;  // shifts rescaled all the way to zero
}

FilteredComplex dualize(const FilteredComplex& c) {
    if (!c.is_plain())
        throw std::invalid_argument("dualize: only plain (trivial ring) complexes are supported");
    int n = c.max_degree();
    FilteredComplex out{c.ring, {}, {}, c.strict_decrease};
    for (const auto& g : c.generators)
        out.generators.push_back({g.name + "'", n - g.degree, -g.value});
    for (const auto& e : c.entries)
        out.entries.push_back({e.target + "'", e.source + "'", e.coefficient});
    return out;
}

int TotalComplex::gen_degree(std::size_t i) const {
    return source->generators[basis[i].gen_index].degree;
}
int TotalComplex::ring_degree(std::size_t i) const {
    return source->ring.basis()[basis[i].ring_index].degree;
}
int TotalComplex::total_degree(std::size_t i) const {
    return gen_degree(i) + ring_degree(i);
}
double TotalComplex::value(std::size_t i) const {
    return source->generators[basis[i].gen_index].value;
}
std::string TotalComplex::label(std::size_t i) const {
    const auto& e = source->ring.basis()[basis[i].ring_index];
    const auto& g = source->generators[basis[i].gen_index];
    return e.name == "1" ? g.name : e.name + "*" + g.name;
}

std::string TotalComplex::chain_to_string(const Gf2Vector& chain) const {
    if (chain.is_zero())
        return "0";
    std::string s;
    for (std::size_t i : chain.support()) {
        if (!s.empty())
            s += " + ";
        s += label(i);
    }
    return s;
}

Gf2Vector TotalComplex::degree_mask(int n) const {
    Gf2Vector m(size());
    for (std::size_t i = 0; i < size(); ++i)
        if (total_degree(i) == n)
            m.set(i, true);
    return m;
}

std::vector<std::size_t> TotalComplex::filtration_indices(int p, int n) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < size(); ++i)
        if (gen_degree(i) <= p && total_degree(i) == n)
            out.push_back(i);
    return out;
}

TotalComplex total_complex(const FilteredComplex& c) {
    TotalComplex tc;
    tc.source = &c;

    std::vector<std::size_t> gen_order(c.generators.size());
    for (std::size_t i = 0; i < gen_order.size(); ++i)
        gen_order[i] = i;
    std::sort(gen_order.begin(), gen_order.end(), [&](std::size_t a, std::size_t b) {
        if (c.generators[a].value != c.generators[b].value)
            return c.generators[a].value < c.generators[b].value;
        return c.generators[a].name < c.generators[b].name;
    });

    std::vector<std::size_t> ring_order(c.ring.size());
    for (std::size_t i = 0; i < ring_order.size(); ++i)
        ring_order[i] = i;
    std::sort(ring_order.begin(), ring_order.end(), [&](std::size_t a, std::size_t b) {
        if (c.ring.basis()[a].degree != c.ring.basis()[b].degree)
            return c.ring.basis()[a].degree < c.ring.basis()[b].degree;
        return c.ring.basis()[a].name < c.ring.basis()[b].name;
    });

    for (std::size_t g : gen_order)
        for (std::size_t e : ring_order) {
            tc.index[{e, g}] = tc.basis.size();
            tc.basis.push_back({e, g});
        }

    const std::size_t n = tc.basis.size();
    tc.d = Gf2Matrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        const auto [ei, gi] = tc.basis[j];
        const Generator& g = c.generators[gi];
        RingElement e{c.ring.basis()[ei].degree, Gf2Vector::unit(c.ring.size(), ei)};
        int deg = e.degree + g.degree;

        // (da) tensor p
        RingElement de = c.ring.diff(e);
        if (!de.is_zero())
            for (std::size_t k : de.coeffs.support())
                tc.d.cols[j].flip(tc.index.at({k, gi}));

        // a * (del p); only the components that lower the total degree by one
        // survive in the graded differential.
        for (const auto& entry : c.entries) {
            if (entry.source != g.name)
                continue;
            RingElement coeff = c.ring.multiply(e, entry.coefficient);
            if (coeff.is_zero())
                continue;
            const Generator& t = c.generator(entry.target);
            if (coeff.degree + t.degree != deg - 1)
                continue;
            std::size_t ti = c.generator_index(entry.target);
            for (std::size_t k : coeff.coeffs.support())
                tc.d.cols[j].flip(tc.index.at({k, ti}));
        }
    }

    // d'^2 = 0 on the assembled matrix
    for (std::size_t j = 0; j < n; ++j) {
        Gf2Vector dd = tc.d.apply(tc.d.cols[j]);
        if (!dd.is_zero())
            throw std::runtime_error(
                "total_complex: assembled differential does not square to zero at " +
                tc.label(j) + " (increase the ring truncation degree)");
    }
    return tc;
}

}  // namespace specnum
