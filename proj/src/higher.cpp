#include "specnum/higher.hpp"

#include <algorithm>
#include <set>

namespace specnum {

namespace {

// Chains of a subcomplex/quotient total complex map to chains of the full one
// (and back) by matching (ring basis index, generator name) pairs; the ring is
// shared, so ring indices agree.
Gf2Vector transfer_chain(const TotalComplex& from, const FilteredComplex& to_c,
                         const TotalComplex& to, const Gf2Vector& chain, bool drop_missing) {
    Gf2Vector out(to.size());
    for (std::size_t i : chain.support()) {
        const auto& g = from.source->generators[from.basis[i].gen_index];
        if (!to_c.has_generator(g.name)) {
            if (drop_missing)
                continue;
            throw std::logic_error("transfer_chain: generator " + g.name + " missing in target");
        }
        out.flip(to.index.at({from.basis[i].ring_index, to_c.generator_index(g.name)}));
    }
    return out;
}

}  // namespace

double sigma_bar(const FilteredComplex& c, const SpectralPage& pg, const PageClass& alpha) {
    if (alpha.is_zero())
        throw std::invalid_argument("sigma_bar: zero class");
    const TotalComplex& tc = *pg.tc;
    for (double nu : c.sorted_distinct_values()) {
        FilteredComplex sub = truncate_below(c, {nu});
        if (sub.generators.empty())
            continue;
        TotalComplex tcs = total_complex(sub);
        SpectralPage pgs = page_unchecked(sub, tcs, pg.r);
        const PageCell* cell = pgs.cell(alpha.p, alpha.q);
        if (!cell || cell->dim() == 0)
            continue;
        Subspace image(pg.cell(alpha.p, alpha.q)->dim());
        for (const auto& rep : cell->reps) {
            Gf2Vector chain = transfer_chain(tcs, c, tc, rep, false);
            auto coords = pg.class_coordinates(alpha.p, alpha.q, chain);
            if (!coords)
                throw std::logic_error("sigma_bar: included class escapes the full-page cell");
            image.insert(*coords);
        }
        if (image.member(alpha.coefficients))
            return nu;
    }
    throw std::logic_error("sigma_bar: class not reached at the maximal value");
}

double sigma_tilde(const FilteredComplex& c, const SpectralPage& pg, const PageClass& alpha) {
    if (alpha.is_zero())
        throw std::invalid_argument("sigma_tilde: zero class");
    const TotalComplex& tc = *pg.tc;
    for (double nu : c.sorted_distinct_values()) {
        FilteredComplex quo = quotient_above(c, {nu});
        if (quo.generators.empty())
            return nu;
        TotalComplex tcq = total_complex(quo);
        Gf2Vector projected = transfer_chain(tc, quo, tcq, alpha.representative, true);
        SpectralPage pgq = page_unchecked(quo, tcq, pg.r);
        auto coords = pgq.class_coordinates(alpha.p, alpha.q, projected);
        if (!coords)
            throw std::logic_error("sigma_tilde: projected class escapes the quotient-page cell");
        if (coords->is_zero())
            return nu;
    }
    throw std::logic_error("sigma_tilde: class survives every quotient");
}

HigherInvariantValue higher(const FilteredComplex& c, const SpectralPage& pg,
                            const PageClass& alpha) {
    HigherInvariantValue out;
    out.r = pg.r;
    out.sigma_bar = sigma_bar(c, pg, alpha);
    out.sigma_tilde = sigma_tilde(c, pg, alpha);
    if (out.sigma_tilde > out.sigma_bar)
        throw std::logic_error("higher: sigma_tilde exceeds sigma_bar");
    try {
        double s1 = sigma_of_unit(*pg.tc);
        out.c_bar = out.sigma_bar - s1;
        out.c_tilde = out.sigma_tilde - s1;
        out.absolute_valid = true;
    } catch (const std::exception& e) {
        out.notes.push_back(std::string("normalization unavailable: ") + e.what());
    }
    return out;
}

FilteredComplex plain_shadow(const FilteredComplex& c) {
    FilteredComplex out{builtin_ring("trivial"), c.generators, {}, c.strict_decrease};
    for (const auto& e : c.entries)
        if (e.coefficient.degree == 0 && e.coefficient.coeffs.get(c.ring.unit_index()))
            out.entries.push_back({e.source, e.target, out.ring.unit()});
    return out;
}

double mixed_page_sigma(const FilteredComplex& c, const std::vector<MixedTerm>& terms) {
    if (terms.empty())
        throw std::invalid_argument("mixed_page_sigma: empty decomposition");
    std::set<std::string> tags;
    for (const auto& t : terms) {
        if (!c.ring.has_element(t.ring_tag))
            throw std::invalid_argument("mixed_page_sigma: unknown ring element " + t.ring_tag);
        if (!tags.insert(t.ring_tag).second)
            throw std::invalid_argument("mixed_page_sigma: duplicate ring tag " + t.ring_tag);
        if (t.generators.empty())
            throw std::invalid_argument("mixed_page_sigma: empty term for tag " + t.ring_tag);
    }
    FilteredComplex shadow = plain_shadow(c);
    TotalComplex tcs = total_complex(shadow);
    double best = 0;
    bool first = true;
    for (const auto& t : terms) {
        Gf2Vector cycle(tcs.size());
        for (const auto& name : t.generators)
            cycle.flip(tcs.index.at({shadow.ring.unit_index(), shadow.generator_index(name)}));
        double s = spectral_number_relative(tcs, cycle);
        best = first ? s : std::max(best, s);
        first = false;
    }
    return best;
}

GapReport gap_report(const FilteredComplex& c, int max_r) {
    GapReport out;
    TotalComplex tc = total_complex(c);

    // Hofer lower bound: c of the top class, when top homology and H_0 are
    // both one-dimensional.
    HomologyBasis h = homology(tc);
    auto ranks = h.ranks();
    if (!ranks.empty()) {
        int top = ranks.rbegin()->first;
        auto top_classes = h.in_degree(top);
        try {
            double s1 = sigma_of_unit(tc);
            if (top_classes.size() == 1) {
                out.hofer_lower_bound =
                    spectral_number_relative(tc, top_classes[0]->representative) - s1;
                out.hofer_valid = true;
            } else {
                out.notes.push_back("top homology is not one-dimensional; no Hofer bound");
            }
        } catch (const std::exception& e) {
            out.notes.push_back(std::string("no Hofer bound: ") + e.what());
        }
    } else {
        out.notes.push_back("homology vanishes; no Hofer bound");
    }

    for (int r = 1; r <= max_r; ++r) {
        SpectralPage pg;
        try {
            pg = page(c, tc, r);
        } catch (const TruncationError& e) {
            out.notes.push_back(std::string("pages beyond ") + std::to_string(r - 1) +
                                " not representable: " + e.what());
            break;
        }
        for (const auto& [pq, cell] : pg.cells) {
            if (cell.dim() == 0)
                continue;
            const Gf2Matrix& m = pg.differential.at(pq);
            for (std::size_t j = 0; j < cell.dim(); ++j) {
                if (m.cols[j].is_zero())
                    continue;
                PageClass alpha;
                alpha.p = pq.first;
                alpha.q = pq.second;
                alpha.coefficients = Gf2Vector::unit(cell.dim(), j);
                alpha.representative = cell.reps[j];
                PageClass beta = page_differential(pg, alpha);

                double sb_a = sigma_bar(c, pg, alpha);
                double st_a = sigma_tilde(c, pg, alpha);
                double st_b = sigma_tilde(c, pg, beta);

                GapEntry entry;
                entry.r = r;
                entry.p = alpha.p;
                entry.q = alpha.q;
                entry.source = tc.chain_to_string(alpha.representative);
                entry.target = tc.chain_to_string(beta.representative);
                entry.gap = sb_a - st_b;  // normalization cancels in the difference
                entry.c_bar_source = sb_a;
                entry.c_tilde_target = st_b;
                try {
                    double s1 = sigma_of_unit(tc);
                    entry.c_bar_source -= s1;
                    entry.c_tilde_target -= s1;
                } catch (const std::exception&) {
                    // relative values reported; the gap is unaffected
                }
                if (st_a < st_b)
                    out.violations.push_back(
                        "page " + std::to_string(r) + ": sigma_tilde(" + entry.source + ") = " +
                        std::to_string(st_a) + " < sigma_tilde(" + entry.target + ") = " +
                        std::to_string(st_b));
                if (!out.has_min_gap || entry.gap < out.min_gap) {
                    out.min_gap = entry.gap;
                    out.has_min_gap = true;
                }
                out.entries.push_back(std::move(entry));
            }
        }
    }
    return out;
}

}  // namespace specnum
