#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "specnum/complex.hpp"

namespace specnum {

// Requested page exceeds what the ring truncation can represent.
struct TruncationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One cell E^r_{p,q}, held as chain-level data inside the total complex:
// numerator Z^r_p = { x in F^p : d'x in F^{p-r} } in total degree p+q,
// denominator Z^{r-1}_{p-1} + d'Z^{r-1}_{p+r-1}, and lifted representatives
// of the subquotient.
struct PageCell {
    Subspace numerator;
    Subspace denominator;
    std::vector<Gf2Vector> reps;

    PageCell() : numerator(0), denominator(0) {}
    std::size_t dim() const { return reps.size(); }
};

struct SpectralPage {
    int r = 0;
    const TotalComplex* tc = nullptr;
    std::map<std::pair<int, int>, PageCell> cells;          // (p, q) -> cell
    std::map<std::pair<int, int>, Gf2Matrix> differential;  // d_r out of (p, q)

    const PageCell* cell(int p, int q) const;
    std::map<std::pair<int, int>, std::size_t> dims() const;
    std::size_t total_dim(int total_degree) const;
    bool differential_is_zero() const;

    // Coordinates of a chain's class in cell (p, q); nullopt if the chain is
    // not in the numerator.
    std::optional<Gf2Vector> class_coordinates(int p, int q, const Gf2Vector& chain) const;
};

// A class on a page: cell plus coordinates plus a chain-level representative.
struct PageClass {
    int p = 0;
    int q = 0;
    Gf2Vector coefficients;  // over the cell basis
    Gf2Vector representative;

    bool is_zero() const { return coefficients.is_zero(); }
};

// Largest r with a representable nonzero d_r, plus one (pages beyond it equal
// the limit page). Always >= 2.
int stabilization_page(const FilteredComplex& c);

// Direct subquotient computation of page r. Nontrivial rings refuse r beyond
// truncation_degree + 2 (a larger r would need ring degrees above the
// truncation to be meaningful).
SpectralPage page(const FilteredComplex& c, const TotalComplex& tc, int r);
SpectralPage page_unchecked(const FilteredComplex& c, const TotalComplex& tc, int r);

// Class of d'(representative) in cell (p-r, q+r-1).
PageClass page_differential(const SpectralPage& pg, const PageClass& cls);

// Locates the chain's cell (p = top generator degree in the support, q = n - p)
// and computes its coordinates. Throws std::invalid_argument if the chain is
// zero, inhomogeneous, or not in the cell's numerator.
PageClass make_page_class(const SpectralPage& pg, const Gf2Vector& chain);

// Homology of (E^r, d_r), verified cellwise against page(c, r+1): equal
// dimensions and matched classes. Throws std::logic_error on mismatch.
SpectralPage turn_page(const FilteredComplex& c, const TotalComplex& tc, const SpectralPage& pg);

// The stabilized page; total dims per degree equal homology dims.
SpectralPage limit_page(const FilteredComplex& c, const TotalComplex& tc);

// Generator pairs (x, y) carrying a differential entry with index gap <= r;
// nonempty whenever d_r != 0 on the page.
std::vector<std::pair<std::string, std::string>> nonzero_dr_witness(const FilteredComplex& c,
                                                                    const SpectralPage& pg);

}  // namespace specnum
