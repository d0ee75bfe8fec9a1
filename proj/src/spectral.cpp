#include "specnum/spectral.hpp"

#include <algorithm>

namespace specnum {

namespace {

Subspace filtration_space(const TotalComplex& tc, int p, int n) {
    Subspace s(tc.size());
    for (std::size_t i : tc.filtration_indices(p, n))
        s.insert(Gf2Vector::unit(tc.size(), i));
    return s;
}

// Z^r_p in total degree n: { x in F^p(n) : d'x in F^{p-r} }. For r < 0 this is
// F^p(n) itself.
Subspace cycle_space(const TotalComplex& tc, int r, int p, int n) {
    if (r < 0)
        return filtration_space(tc, p, n);
    auto indices = tc.filtration_indices(p, n);
    Gf2Matrix m(tc.size(), indices.size());
    for (std::size_t j = 0; j < indices.size(); ++j) {
        const Gf2Vector& col = tc.d.cols[indices[j]];
        for (std::size_t i : col.support())
            if (tc.gen_degree(i) > p - r)
                m.cols[j].set(i, true);
    }
    Subspace s(tc.size());
    for (const auto& k : kernel(m)) {
        Gf2Vector chain(tc.size());
        for (std::size_t j = 0; j < indices.size(); ++j)
            if (k.get(j))
                chain.flip(indices[j]);
        s.insert(chain);
    }
    return s;
}

int max_entry_gap(const TotalComplex& tc) {
    int g = 0;
    for (std::size_t j = 0; j < tc.size(); ++j)
        for (std::size_t i : tc.d.cols[j].support())
            g = std::max(g, tc.gen_degree(j) - tc.gen_degree(i));
    return g;
}

}  // namespace

const PageCell* SpectralPage::cell(int p, int q) const {
    auto it = cells.find({p, q});
    return it == cells.end() ? nullptr : &it->second;
}

std::map<std::pair<int, int>, std::size_t> SpectralPage::dims() const {
    std::map<std::pair<int, int>, std::size_t> out;
    for (const auto& [pq, cell] : cells)
        if (cell.dim() > 0)
            out[pq] = cell.dim();
    return out;
}

std::size_t SpectralPage::total_dim(int total_degree) const {
    std::size_t n = 0;
    for (const auto& [pq, cell] : cells)
        if (pq.first + pq.second == total_degree)
            n += cell.dim();
    return n;
}

bool SpectralPage::differential_is_zero() const {
    for (const auto& [pq, m] : differential)
        for (const auto& col : m.cols)
            if (!col.is_zero())
                return false;
    return true;
}

std::optional<Gf2Vector> SpectralPage::class_coordinates(int p, int q,
                                                         const Gf2Vector& chain) const {
    const PageCell* c = cell(p, q);
    if (!c) {
        if (chain.is_zero())
            return Gf2Vector(0);
        return std::nullopt;
    }
    if (!c->numerator.member(chain))
        return std::nullopt;
    Gf2Matrix m(chain.size(), c->reps.size() + c->denominator.dim());
    for (std::size_t j = 0; j < c->reps.size(); ++j)
        m.cols[j] = c->reps[j];
    for (std::size_t j = 0; j < c->denominator.dim(); ++j)
        m.cols[c->reps.size() + j] = c->denominator.basis()[j];
    auto x = solve(m, chain);
    if (!x)
        return std::nullopt;
    Gf2Vector coords(c->reps.size());
    for (std::size_t j = 0; j < c->reps.size(); ++j)
        coords.set(j, x->get(j));
    return coords;
}

int stabilization_page(const FilteredComplex& c) {
    TotalComplex tc = total_complex(c);
    return std::max(2, max_entry_gap(tc) + 1);
}

SpectralPage page_unchecked(const FilteredComplex& c, const TotalComplex& tc, int r) {
    if (r < 0)
        throw std::invalid_argument("page: r must be >= 0");
    SpectralPage pg;
    pg.r = r;
    pg.tc = &tc;

    const int pmin = c.min_degree();
    const int pmax = c.max_degree();
    // q runs past the ring truncation so every d_r target cell exists (the
    // extra cells are all zero-dimensional).
    const int qmax = c.ring.truncation_degree() + std::max(r, 1);

    for (int p = pmin; p <= pmax; ++p)
        for (int q = -1; q <= qmax; ++q) {
            const int n = p + q;
            PageCell cell;
            cell.numerator = cycle_space(tc, r, p, n);
            Subspace denom = cycle_space(tc, r - 1, p - 1, n);
            Subspace upper = cycle_space(tc, r - 1, p + r - 1, n + 1);
            for (const auto& y : upper.basis())
                denom.insert(tc.d.apply(y));
            cell.denominator = std::move(denom);
            cell.reps = quotient_basis(cell.numerator, cell.denominator);
            pg.cells[{p, q}] = std::move(cell);
        }

    for (auto& [pq, cell] : pg.cells) {
        if (cell.dim() == 0)
            continue;
        auto [p, q] = pq;
        const PageCell* target = pg.cell(p - r, q + r - 1);
        Gf2Matrix m(target ? target->dim() : 0, cell.dim());
        for (std::size_t j = 0; j < cell.dim(); ++j) {
            Gf2Vector dx = tc.d.apply(cell.reps[j]);
            auto coords = pg.class_coordinates(p - r, q + r - 1, dx);
            if (!coords)
                throw std::logic_error("page: differential image escapes its target cell");
            m.cols[j] = *coords;
        }
        pg.differential[pq] = std::move(m);
    }

    // d_r . d_r = 0
    for (const auto& [pq, m] : pg.differential) {
        auto [p, q] = pq;
        auto it = pg.differential.find({p - r, q + r - 1});
        if (it == pg.differential.end())
            continue;
        for (const auto& col : m.cols)
            if (!it->second.apply(col).is_zero())
                throw std::logic_error("page: d_r composed with d_r is nonzero");
    }
    return pg;
}

SpectralPage page(const FilteredComplex& c, const TotalComplex& tc, int r) {
    if (!c.ring.is_trivial() && r > c.ring.truncation_degree() + 2)
        throw TruncationError("page " + std::to_string(r) +
                              " needs ring degrees above the truncation degree " +
                              std::to_string(c.ring.truncation_degree()) +
                              "; increase the truncation");
    return page_unchecked(c, tc, r);
}

PageClass page_differential(const SpectralPage& pg, const PageClass& cls) {
    Gf2Vector dx = pg.tc->d.apply(cls.representative);
    PageClass out;
    out.p = cls.p - pg.r;
    out.q = cls.q + pg.r - 1;
    auto coords = pg.class_coordinates(out.p, out.q, dx);
    if (!coords)
        throw std::logic_error("page_differential: image escapes its target cell");
    out.coefficients = *coords;
    out.representative = dx;
    return out;
}

PageClass make_page_class(const SpectralPage& pg, const Gf2Vector& chain) {
    if (chain.is_zero())
        throw std::invalid_argument("make_page_class: zero chain");
    const TotalComplex& tc = *pg.tc;
    auto support = chain.support();
    int n = tc.total_degree(support.front());
    int p = tc.gen_degree(support.front());
    for (std::size_t i : support) {
        if (tc.total_degree(i) != n)
            throw std::invalid_argument("make_page_class: chain is not degree-homogeneous");
        p = std::max(p, tc.gen_degree(i));
    }
    PageClass out;
    out.p = p;
    out.q = n - p;
    out.representative = chain;
    auto coords = pg.class_coordinates(out.p, out.q, chain);
    if (!coords)
        throw std::invalid_argument("make_page_class: chain does not represent a class in cell (" +
                                    std::to_string(out.p) + ", " + std::to_string(out.q) + ")");
    out.coefficients = *coords;
    return out;
}

SpectralPage turn_page(const FilteredComplex& c, const TotalComplex& tc, const SpectralPage& pg) {
    const int r = pg.r;
    SpectralPage next = page_unchecked(c, tc, r + 1);

    for (const auto& [pq, cell] : pg.cells) {
        auto [p, q] = pq;
        // kernel of d_r out of (p, q)
        std::vector<Gf2Vector> ker_chains;
        if (cell.dim() > 0) {
            auto it = pg.differential.find(pq);
            for (const auto& k : kernel(it->second)) {
                Gf2Vector chain(tc.size());
                for (std::size_t j = 0; j < cell.dim(); ++j)
                    if (k.get(j))
                        chain ^= cell.reps[j];
                ker_chains.push_back(chain);
            }
        }
        // image of d_r into (p, q)
        std::vector<Gf2Vector> img_chains;
        if (const PageCell* src = pg.cell(p + r, q - r + 1)) {
            for (const auto& rep : src->reps)
                img_chains.push_back(tc.d.apply(rep));
        }

        const PageCell* ncell = next.cell(p, q);
        std::size_t next_dim = ncell ? ncell->dim() : 0;
        // dimension check via homology of (E^r, d_r) at this cell
        Subspace ker_span = sum(Subspace::span(tc.size(), ker_chains), cell.denominator);
        Subspace img_span = sum(Subspace::span(tc.size(), img_chains), cell.denominator);
        std::size_t hom_dim = ker_span.dim() - img_span.dim();
        if (hom_dim != next_dim)
            throw std::logic_error("turn_page: cell (" + std::to_string(p) + ", " +
                                   std::to_string(q) + ") has homology dimension " +
                                   std::to_string(hom_dim) + " but direct page " +
                                   std::to_string(r + 1) + " has dimension " +
                                   std::to_string(next_dim));

        // matched classes: kernel representatives, corrected to lie in
        // Z^{r+1}_p, must span the next page cell; image classes must vanish.
        Subspace mapped(next_dim);
        for (const auto& x : ker_chains) {
            Gf2Vector dx = tc.d.apply(x);
            Gf2Vector corrected = x;
            if (!dx.is_zero()) {
                // dx = z + d'y with z in Z^{r-1}_{p-r-1}, y in Z^{r-1}_{p-1}
                Subspace za = cycle_space(tc, r - 1, p - r - 1, p + q - 1);
                Subspace yb = cycle_space(tc, r - 1, p - 1, p + q);
                Gf2Matrix m(tc.size(), za.dim() + yb.dim());
                for (std::size_t j = 0; j < za.dim(); ++j)
                    m.cols[j] = za.basis()[j];
                for (std::size_t j = 0; j < yb.dim(); ++j)
                    m.cols[za.dim() + j] = tc.d.apply(yb.basis()[j]);
                auto sol = solve(m, dx);
                if (!sol)
                    throw std::logic_error("turn_page: kernel class cannot be corrected");
                for (std::size_t j = 0; j < yb.dim(); ++j)
                    if (sol->get(za.dim() + j))
                        corrected ^= yb.basis()[j];
            }
            auto coords = next.class_coordinates(p, q, corrected);
            if (!coords)
                throw std::logic_error("turn_page: corrected class escapes the next page cell");
            mapped.insert(*coords);
        }
        if (mapped.dim() != next_dim)
            throw std::logic_error("turn_page: kernel classes do not span the next page cell");
        for (const auto& b : img_chains) {
            auto coords = next.class_coordinates(p, q, b);
            if (!coords || !coords->is_zero())
                throw std::logic_error("turn_page: image class survives to the next page");
        }
    }
    return next;
}

SpectralPage limit_page(const FilteredComplex& c, const TotalComplex& tc) {
    return page_unchecked(c, tc, std::max(2, max_entry_gap(tc) + 1));
}

std::vector<std::pair<std::string, std::string>> nonzero_dr_witness(const FilteredComplex& c,
                                                                    const SpectralPage& pg) {
    std::vector<std::pair<std::string, std::string>> out;
    if (pg.differential_is_zero())
        return out;
    for (const auto& e : c.entries) {
        int gap = c.generator(e.source).degree - c.generator(e.target).degree;
        if (gap <= pg.r)
            out.push_back({e.source, e.target});
    }
    return out;
}

}  // namespace specnum
