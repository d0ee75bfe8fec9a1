#pragma once

#include <string>
#include <vector>

#include "specnum/homology.hpp"
#include "specnum/spectral.hpp"

namespace specnum {

// Page-r invariants of a class. The relative values sigma_bar/sigma_tilde are
// generator values; the absolute ones subtract sigma of the unit class and are
// only present when H_0 is one-dimensional.
struct HigherInvariantValue {
    int r = 0;
    double sigma_bar = 0;
    double sigma_tilde = 0;
    double c_bar = 0;
    double c_tilde = 0;
    bool absolute_valid = false;
    std::vector<std::string> notes;
};

// Least generator value nu such that alpha lies in the image of the page-r map
// induced by including the value-<=-nu subcomplex. alpha lives on pg (= page r
// of c); throws std::invalid_argument if alpha is zero.
double sigma_bar(const FilteredComplex& c, const SpectralPage& pg, const PageClass& alpha);

// Least generator value nu such that alpha dies on page r of the quotient by
// the value-<=-nu subcomplex.
double sigma_tilde(const FilteredComplex& c, const SpectralPage& pg, const PageClass& alpha);

// Bundles both, normalized by sigma of the unit class. Enforces
// sigma_tilde <= sigma_bar (throws std::logic_error on violation).
HigherInvariantValue higher(const FilteredComplex& c, const SpectralPage& pg,
                            const PageClass& alpha);

// The trivial-ring complex underlying c: same generators, differential kept
// where the coefficient has a unit component.
FilteredComplex plain_shadow(const FilteredComplex& c);

// One term x_j (x) alpha_j of a decomposable page-2 class: a ring basis
// element name and a cycle of the plain shadow given by generator names.
struct MixedTerm {
    std::string ring_tag;
    std::vector<std::string> generators;
};

// max_j sigma(alpha_j) over the plain shadow; equals sigma_bar and sigma_tilde
// of the assembled class at r = 2. Throws std::invalid_argument on duplicate
// tags, empty terms, or non-cycle/boundary components.
double mixed_page_sigma(const FilteredComplex& c, const std::vector<MixedTerm>& terms);

struct GapEntry {
    int r = 0;
    int p = 0;
    int q = 0;
    std::string source;       // printable chain representative of alpha
    std::string target;       // printable chain representative of d_r(alpha)
    double c_bar_source = 0;  // c_bar^r(alpha)
    double c_tilde_target = 0;
    double gap = 0;  // c_bar^r(alpha) - c_tilde^r(beta)
};

struct GapReport {
    std::vector<GapEntry> entries;
    bool has_min_gap = false;
    double min_gap = 0;  // certified upper bound on the squared-width term
    bool hofer_valid = false;
    double hofer_lower_bound = 0;  // c of the top class
    std::vector<std::string> notes;
    std::vector<std::string> violations;  // ordering failures c~ (alpha) < c~(beta)

    bool ok() const { return violations.empty(); }
};

// Scans pages 1..max_r; for every cell basis class with nonzero d_r, records
// the invariant gap and checks the ordering c~^r(alpha) >= c~^r(beta).
GapReport gap_report(const FilteredComplex& c, int max_r);

}  // namespace specnum
