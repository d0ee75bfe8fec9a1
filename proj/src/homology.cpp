#include "specnum/homology.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace specnum {

namespace {

// Subspace of vectors supported on the given indices.
Subspace coordinate_subspace(std::size_t ambient, const std::vector<std::size_t>& indices) {
    Subspace s(ambient);
    for (std::size_t i : indices)
        s.insert(Gf2Vector::unit(ambient, i));
    return s;
}

std::vector<std::size_t> degree_indices(const TotalComplex& tc, int degree) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < tc.size(); ++i)
        if (tc.total_degree(i) == degree)
            out.push_back(i);
    return out;
}

}  // namespace

std::vector<const HomologyClass*> HomologyBasis::in_degree(int degree) const {
    std::vector<const HomologyClass*> out;
    for (const auto& c : classes)
        if (c.degree == degree)
            out.push_back(&c);
    return out;
}

std::map<int, std::size_t> HomologyBasis::ranks() const {
    std::map<int, std::size_t> r;
    for (const auto& c : classes)
        r[c.degree]++;
    return r;
}

std::optional<Gf2Vector> HomologyBasis::class_coordinates(const Gf2Vector& cycle) const {
    if (!cycles.member(cycle))
        return std::nullopt;
    const std::size_t k = classes.size();
    Gf2Matrix m(cycle.size(), k + boundaries.dim());
    for (std::size_t j = 0; j < k; ++j)
        m.cols[j] = classes[j].representative;
    for (std::size_t j = 0; j < boundaries.dim(); ++j)
        m.cols[k + j] = boundaries.basis()[j];
    auto x = solve(m, cycle);
    if (!x)
        return std::nullopt;  // unreachable for a genuine cycle
    Gf2Vector coords(k);
    for (std::size_t j = 0; j < k; ++j)
        coords.set(j, x->get(j));
    return coords;
}

HomologyBasis homology(const TotalComplex& tc) {
    HomologyBasis hb;
    hb.cycles = Subspace::span(tc.size(), kernel(tc.d));
    hb.boundaries = Subspace::span(tc.size(), tc.d.cols);

    std::set<int> degrees;
    for (std::size_t i = 0; i < tc.size(); ++i)
        degrees.insert(tc.total_degree(i));
    for (int n : degrees) {
        Subspace cn = coordinate_subspace(tc.size(), degree_indices(tc, n));
        Subspace zn = intersect(hb.cycles, cn);
        Subspace bn = intersect(hb.boundaries, cn);
        for (const auto& rep : quotient_basis(zn, bn))
            hb.classes.push_back({n, rep});
    }
    return hb;
}

std::vector<HomologyClass> homology(const TotalComplex& tc, int degree) {
    std::vector<HomologyClass> out;
    for (const auto& c : homology(tc).classes)
        if (c.degree == degree)
            out.push_back(c);
    return out;
}

double spectral_number_relative(const TotalComplex& tc, const Gf2Vector& cycle) {
    if (cycle.size() != tc.size())
        throw std::invalid_argument("spectral_number: chain has wrong length");
    if (!tc.d.apply(cycle).is_zero())
        throw std::invalid_argument("spectral_number: chain is not a cycle");
    ReductionResult red = column_reduce(tc.d);
    std::map<std::size_t, std::size_t> owner;  // pivot row -> reduced column
    for (auto [col, row] : red.pivots)
        owner[row] = col;
    Gf2Vector z = cycle;
    while (!z.is_zero()) {
        auto it = owner.find(z.top());
        if (it == owner.end())
            return tc.value(z.top());
        z ^= red.reduced.cols[it->second];
    }
    throw std::invalid_argument("spectral_number: class is zero");
}

double sigma_of_unit(const TotalComplex& tc) {
    auto h0 = homology(tc, 0);
    if (h0.size() != 1)
        throw std::invalid_argument(
            "absolute invariants need dim H_0 = 1 (normalization by the generator of H_0)");
    return spectral_number_relative(tc, h0[0].representative);
}

InvariantValue spectral_number(const TotalComplex& tc, const Gf2Vector& cycle) {
    InvariantValue v;
    v.relative = spectral_number_relative(tc, cycle);
    auto h0 = homology(tc, 0);
    if (h0.size() == 1) {
        v.absolute = v.relative - spectral_number_relative(tc, h0[0].representative);
        v.absolute_valid = true;
    }
    return v;
}

double spectral_number_oracle(const TotalComplex& tc, const Gf2Vector& cycle) {
    if (!tc.d.apply(cycle).is_zero())
        throw std::invalid_argument("spectral_number_oracle: chain is not a cycle");
    Subspace boundaries = Subspace::span(tc.size(), tc.d.cols);
    if (boundaries.dim() > 20)
        throw std::invalid_argument("spectral_number_oracle: boundary space too large (> 2^20)");
    if (boundaries.member(cycle))
        throw std::invalid_argument("spectral_number_oracle: class is zero");
    double best = std::numeric_limits<double>::infinity();
    const std::size_t dim = boundaries.dim();
    Gf2Vector z = cycle;
    // Gray-code walk over the full coset.
    for (std::uint64_t code = 0;; ++code) {
        best = std::min(best, tc.value(z.top()));
        if (code + 1 >= (std::uint64_t(1) << dim))
            break;
        std::uint64_t diff = (code + 1) ^ ((code + 1) >> 1) ^ (code ^ (code >> 1));
        for (std::size_t b = 0; b < dim; ++b)
            if ((diff >> b) & 1)
                z ^= boundaries.basis()[b];
    }
    return best;
}

std::map<int, std::vector<double>> sigma_spectrum(const TotalComplex& tc) {
    ReductionResult red = column_reduce(tc.d);
    std::set<std::size_t> pivot_rows;
    for (auto [col, row] : red.pivots)
        pivot_rows.insert(row);
    std::map<int, std::vector<double>> spectrum;
    for (std::size_t j = 0; j < tc.size(); ++j) {
        if (!red.reduced.cols[j].is_zero())
            continue;  // paired: the class born here dies
        if (pivot_rows.count(j))
            continue;  // killed by a later column
        spectrum[tc.total_degree(j)].push_back(tc.value(j));
    }
    for (auto& [deg, values] : spectrum)
        std::sort(values.begin(), values.end());
    return spectrum;
}

std::string CheckReport::to_string() const {
    std::ostringstream os;
    for (const auto& f : failures)
        os << "FAIL: " << f << "\n";
    for (const auto& n : notes)
        os << "note: " << n << "\n";
    return os.str();
}

namespace {

// Parse a chain term list ("e*g" or "g") into a vector over the total basis.
Gf2Vector chain_from_terms(const TotalComplex& tc, const std::vector<std::string>& terms) {
    const FilteredComplex& c = *tc.source;
    Gf2Vector v(tc.size());
    for (const auto& t : terms) {
        auto star = t.find('*');
        std::string ring_name = star == std::string::npos ? "1" : t.substr(0, star);
        std::string gen_name = star == std::string::npos ? t : t.substr(star + 1);
        v.flip(tc.index.at({c.ring.index_of(ring_name), c.generator_index(gen_name)}));
    }
    return v;
}

}  // namespace

CheckReport check_filtered_map(const FilteredComplex& src, const FilteredComplex& dst,
                               const std::map<std::string, std::vector<std::string>>& chain_map,
                               double shift) {
    CheckReport rep;
    TotalComplex ts = total_complex(src);
    TotalComplex td = total_complex(dst);

    // Extend generator images ring-linearly, keeping the degree-0 graded part.
    Gf2Matrix f(td.size(), ts.size());
    for (std::size_t j = 0; j < ts.size(); ++j) {
        const auto [ei, gi] = ts.basis[j];
        const Generator& g = src.generators[gi];
        auto it = chain_map.find(g.name);
        if (it == chain_map.end())
            continue;
        RingElement e{src.ring.basis()[ei].degree, Gf2Vector::unit(src.ring.size(), ei)};
        for (const auto& t : it->second) {
            auto star = t.find('*');
            std::string ring_name = star == std::string::npos ? "1" : t.substr(0, star);
            std::string gen_name = star == std::string::npos ? t : t.substr(star + 1);
            RingElement et = dst.ring.element({ring_name});
            const Generator& gt = dst.generator(gen_name);
            RingElement coeff = dst.ring.multiply(e, et);
            if (coeff.is_zero())
                continue;
            if (coeff.degree + gt.degree != ts.total_degree(j))
                continue;
            std::size_t ti = dst.generator_index(gen_name);
            for (std::size_t k : coeff.coeffs.support())
                f.cols[j].flip(td.index.at({k, ti}));
        }
    }

    // chain map: f . d_src = d_dst . f
    for (std::size_t j = 0; j < ts.size(); ++j) {
        Gf2Vector lhs = f.apply(ts.d.cols[j]);
        Gf2Vector rhs = td.d.apply(f.cols[j]);
        if (lhs != rhs)
            rep.failures.push_back("not a chain map at " + ts.label(j) + ": f(d(x)) = " +
                                   td.chain_to_string(lhs) + ", d(f(x)) = " +
                                   td.chain_to_string(rhs));
    }

    // filtration shift at chain level
    for (std::size_t j = 0; j < ts.size(); ++j)
        for (std::size_t i : f.cols[j].support())
            if (td.value(i) > ts.value(j) + shift)
                rep.failures.push_back("value shift violated: " + ts.label(j) + " (value " +
                                       std::to_string(ts.value(j)) + ") maps onto " +
                                       td.label(i) + " (value " + std::to_string(td.value(i)) +
                                       ") beyond shift " + std::to_string(shift));

    if (!rep.ok())
        return rep;

    // sigma_dst(f(alpha)) <= sigma_src(alpha) + shift on homology
    HomologyBasis hs = homology(ts);
    HomologyBasis hd = homology(td);
    for (const auto& cls : hs.classes) {
        Gf2Vector img = f.apply(cls.representative);
        auto coords = hd.class_coordinates(img);
        if (!coords || coords->is_zero())
            continue;
        double s_src = spectral_number_relative(ts, cls.representative);
        double s_dst = spectral_number_relative(td, img);
        if (s_dst > s_src + shift)
            rep.failures.push_back("sigma estimate violated on class of degree " +
                                   std::to_string(cls.degree) + ": " + std::to_string(s_dst) +
                                   " > " + std::to_string(s_src) + " + " + std::to_string(shift));
    }
    return rep;
}

namespace {

struct PlainOps {
    const FilteredComplex* morse;
    const FilteredComplex* floer;
    TotalComplex tm, tf;
    int n;  // top Morse degree

    // bilinear extensions of the tables; zero when a pair is absent
    Gf2Vector product(const ActionTable& t, const Gf2Vector& p, const Gf2Vector& q) const {
        Gf2Vector out(tm.size());
        for (std::size_t i : p.support())
            for (std::size_t j : q.support()) {
                auto it = t.morse_product.find({morse->generators[tm.basis[i].gen_index].name,
                                                morse->generators[tm.basis[j].gen_index].name});
                if (it != t.morse_product.end())
                    out ^= chain_from_terms(tm, it->second);
            }
        return out;
    }
    Gf2Vector action(const ActionTable& t, const Gf2Vector& p, const Gf2Vector& x) const {
        Gf2Vector out(tf.size());
        for (std::size_t i : p.support())
            for (std::size_t j : x.support()) {
                auto it = t.module_action.find({morse->generators[tm.basis[i].gen_index].name,
                                                floer->generators[tf.basis[j].gen_index].name});
                if (it != t.module_action.end())
                    out ^= chain_from_terms(tf, it->second);
            }
        return out;
    }
    Gf2Vector morse_unit_chain(std::size_t gen_index) const {
        return Gf2Vector::unit(tm.size(), tm.index.at({morse->ring.unit_index(), gen_index}));
    }
    Gf2Vector floer_unit_chain(std::size_t gen_index) const {
        return Gf2Vector::unit(tf.size(), tf.index.at({floer->ring.unit_index(), gen_index}));
    }
};

std::optional<std::size_t> unique_top_generator(const FilteredComplex& c) {
    int n = c.max_degree();
    std::optional<std::size_t> top;
    for (std::size_t i = 0; i < c.generators.size(); ++i) {
        if (c.generators[i].degree == n) {
            if (top)
                return std::nullopt;
            top = i;
        }
    }
    return top;
}

}  // namespace

CheckReport validate_action(const FilteredComplex& c_morse, const FilteredComplex& c_floer,
                            const ActionTable& t) {
    CheckReport rep;
    if (!c_morse.is_plain() || !c_floer.is_plain()) {
        rep.failures.push_back("validate_action: both complexes must have the trivial ring");
        return rep;
    }
    PlainOps ops{&c_morse, &c_floer, total_complex(c_morse), total_complex(c_floer),
                 c_morse.max_degree()};

    // degree rules of the tables
    for (const auto& [key, combo] : t.morse_product) {
        int expected = c_morse.generator(key.first).degree + c_morse.generator(key.second).degree -
                       ops.n;
        for (const auto& r : combo)
            if (c_morse.generator(r).degree != expected)
                rep.failures.push_back("degree rule: " + key.first + "." + key.second +
                                       " contains " + r + " of degree " +
                                       std::to_string(c_morse.generator(r).degree) +
                                       ", expected " + std::to_string(expected));
    }
    for (const auto& [key, combo] : t.module_action) {
        int expected = c_morse.generator(key.first).degree + c_floer.generator(key.second).degree -
                       ops.n;
        for (const auto& r : combo)
            if (c_floer.generator(r).degree != expected)
                rep.failures.push_back("degree rule: " + key.first + "*" + key.second +
                                       " contains " + r + " of degree " +
                                       std::to_string(c_floer.generator(r).degree) +
                                       ", expected " + std::to_string(expected));
    }

    // (i) Leibniz for the module action
    for (std::size_t pi = 0; pi < c_morse.generators.size(); ++pi)
        for (std::size_t xi = 0; xi < c_floer.generators.size(); ++xi) {
            Gf2Vector p = ops.morse_unit_chain(pi);
            Gf2Vector x = ops.floer_unit_chain(xi);
            Gf2Vector lhs = ops.tf.d.apply(ops.action(t, p, x));
            Gf2Vector rhs = ops.action(t, ops.tm.d.apply(p), x);
            rhs ^= ops.action(t, p, ops.tf.d.apply(x));
            if (lhs != rhs)
                rep.failures.push_back("Leibniz (action) fails at (" +
                                       c_morse.generators[pi].name + ", " +
                                       c_floer.generators[xi].name + ")");
        }

    // (ii) Leibniz for the intersection product
    for (std::size_t pi = 0; pi < c_morse.generators.size(); ++pi)
        for (std::size_t qi = 0; qi < c_morse.generators.size(); ++qi) {
            Gf2Vector p = ops.morse_unit_chain(pi);
            Gf2Vector q = ops.morse_unit_chain(qi);
            Gf2Vector lhs = ops.tm.d.apply(ops.product(t, p, q));
            Gf2Vector rhs = ops.product(t, ops.tm.d.apply(p), q);
            rhs ^= ops.product(t, p, ops.tm.d.apply(q));
            if (lhs != rhs)
                rep.failures.push_back("Leibniz (product) fails at (" +
                                       c_morse.generators[pi].name + ", " +
                                       c_morse.generators[qi].name + ")");
        }

    // (iii) chain-level unit: the unique top-degree generator acts as identity
    auto top = unique_top_generator(c_morse);
    if (!top) {
        rep.notes.push_back("unit check skipped: top-degree generator is not unique");
    } else {
        Gf2Vector m = ops.morse_unit_chain(*top);
        for (std::size_t xi = 0; xi < c_floer.generators.size(); ++xi) {
            Gf2Vector x = ops.floer_unit_chain(xi);
            if (ops.action(t, m, x) != x)
                rep.failures.push_back("chain-level unit fails: m*" +
                                       c_floer.generators[xi].name + " != " +
                                       c_floer.generators[xi].name);
        }
        for (std::size_t pi = 0; pi < c_morse.generators.size(); ++pi) {
            Gf2Vector p = ops.morse_unit_chain(pi);
            if (ops.product(t, p, m) != p)
                rep.failures.push_back("chain-level unit fails: " +
                                       c_morse.generators[pi].name + ".m != " +
                                       c_morse.generators[pi].name);
        }
    }

    // (iv) associativity on homology: (alpha.beta)*a = alpha*(beta*a)
    if (rep.ok()) {
        HomologyBasis hm = homology(ops.tm);
        HomologyBasis hf = homology(ops.tf);
        for (const auto& alpha : hm.classes)
            for (const auto& beta : hm.classes)
                for (const auto& a : hf.classes) {
                    Gf2Vector lhs = ops.action(
                        t, ops.product(t, alpha.representative, beta.representative),
                        a.representative);
                    Gf2Vector rhs = ops.action(
                        t, alpha.representative,
                        ops.action(t, beta.representative, a.representative));
                    auto lc = hf.class_coordinates(lhs);
                    auto rc = hf.class_coordinates(rhs);
                    if (!lc || !rc)
                        rep.failures.push_back("associativity: product image is not a cycle");
                    else if (*lc != *rc)
                        rep.failures.push_back(
                            "associativity on homology fails at classes of degrees (" +
                            std::to_string(alpha.degree) + ", " + std::to_string(beta.degree) +
                            ", " + std::to_string(a.degree) + ")");
                }
    }
    return rep;
}

CheckReport product_inequality(const FilteredComplex& c_morse, const FilteredComplex& c_floer,
                               const ActionTable& t, double delta) {
    CheckReport rep = validate_action(c_morse, c_floer, t);
    if (!rep.ok())
        return rep;
    PlainOps ops{&c_morse, &c_floer, total_complex(c_morse), total_complex(c_floer),
                 c_morse.max_degree()};
    auto top = unique_top_generator(c_morse);

    // hypothesis: the action of every non-top generator drops values by delta
    for (std::size_t pi = 0; pi < c_morse.generators.size(); ++pi) {
        if (top && pi == *top)
            continue;
        for (std::size_t xi = 0; xi < c_floer.generators.size(); ++xi) {
            Gf2Vector out =
                ops.action(t, ops.morse_unit_chain(pi), ops.floer_unit_chain(xi));
            for (std::size_t yi : out.support())
                if (ops.tf.value(yi) > c_floer.generators[xi].value - delta)
                    rep.failures.push_back(
                        "delta-drop hypothesis fails: " + c_morse.generators[pi].name + "*" +
                        c_floer.generators[xi].name + " contains " + ops.tf.label(yi) +
                        " of value " + std::to_string(ops.tf.value(yi)) + " > " +
                        std::to_string(c_floer.generators[xi].value) + " - " +
                        std::to_string(delta));
        }
    }
    if (!rep.ok())
        return rep;

    HomologyBasis hm = homology(ops.tm);
    double sigma1 = sigma_of_unit(ops.tm);
    auto c_of = [&](const Gf2Vector& rep_chain) {
        return spectral_number_relative(ops.tm, rep_chain) - sigma1;
    };

    // identify the top class
    auto top_classes = hm.in_degree(ops.n);
    if (top_classes.size() != 1) {
        rep.notes.push_back("top homology class not unique; c([top]) checks skipped");
        return rep;
    }
    double c_top = c_of(top_classes[0]->representative);
    auto is_top_class = [&](const HomologyClass& cls) {
        return cls.degree == ops.n;
    };

    for (const auto& alpha : hm.classes) {
        double ca = c_of(alpha.representative);
        if (ca < 0 || ca > c_top)
            rep.failures.push_back("0 <= c(alpha) <= c([top]) fails in degree " +
                                   std::to_string(alpha.degree) + ": c = " + std::to_string(ca) +
                                   ", c([top]) = " + std::to_string(c_top));
        if (is_top_class(alpha))
            continue;
        for (const auto& beta : hm.classes) {
            Gf2Vector prod = ops.product(t, alpha.representative, beta.representative);
            auto coords = hm.class_coordinates(prod);
            if (!coords || coords->is_zero())
                continue;
            double cp = c_of(prod);
            double cb = c_of(beta.representative);
            if (cp > cb - delta)
                rep.failures.push_back(
                    "c(alpha.beta) <= c(beta) - delta fails at degrees (" +
                    std::to_string(alpha.degree) + ", " + std::to_string(beta.degree) +
                    "): " + std::to_string(cp) + " > " + std::to_string(cb) + " - " +
                    std::to_string(delta));
        }
    }
    return rep;
}

CheckReport check_duality(const FilteredComplex& c) {
    CheckReport rep;
    if (!c.is_plain()) {
        rep.failures.push_back("check_duality: plain complexes only");
        return rep;
    }
    TotalComplex tc = total_complex(c);
    HomologyBasis h = homology(tc);
    auto ranks = h.ranks();
    int n = c.max_degree();
    for (int k = c.min_degree(); k <= n; ++k) {
        std::size_t rk = ranks.count(k) ? ranks[k] : 0;
        std::size_t rnk = ranks.count(n - k) ? ranks[n - k] : 0;
        if (rk != rnk) {
            rep.notes.push_back("duality shape fails: dim H_" + std::to_string(k) + " = " +
                                std::to_string(rk) + " != dim H_" + std::to_string(n - k) +
                                " = " + std::to_string(rnk) + "; check skipped");
            return rep;
        }
    }

    FilteredComplex dual = dualize(c);
    TotalComplex td = total_complex(dual);
    auto spec_c = sigma_spectrum(tc);
    auto spec_d = sigma_spectrum(td);
    for (int k = c.min_degree(); k <= n; ++k) {
        std::vector<double> lhs = spec_c.count(k) ? spec_c[k] : std::vector<double>{};
        std::vector<double> rhs = spec_d.count(n - k) ? spec_d[n - k] : std::vector<double>{};
        for (auto& v : rhs)
            v = -v;
        std::sort(rhs.begin(), rhs.end());
        if (lhs != rhs) {
            std::ostringstream os;
            os << "sigma multiset mismatch in degree " << k << ": {";
            for (double v : lhs)
                os << " " << v;
            os << " } vs negated dual degree " << (n - k) << " {";
            for (double v : rhs)
                os << " " << v;
            os << " }";
            rep.failures.push_back(os.str());
        }
    }
    return rep;
}

}  // namespace specnum
