#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "specnum/complex.hpp"

namespace specnum {

struct HomologyClass {
    int degree = 0;
    Gf2Vector representative;  // cycle over the total-complex basis
};

// Global cycle/boundary spaces of a total complex plus a homology basis per
// degree. Classes are deterministic given the value-sorted basis order.
struct HomologyBasis {
    Subspace cycles;
    Subspace boundaries;
    std::vector<HomologyClass> classes;

    HomologyBasis() : cycles(0), boundaries(0) {}

    std::vector<const HomologyClass*> in_degree(int degree) const;
    std::map<int, std::size_t> ranks() const;
    // Coordinates of a cycle over the class basis, nullopt if not a cycle.
    std::optional<Gf2Vector> class_coordinates(const Gf2Vector& cycle) const;
};

HomologyBasis homology(const TotalComplex& tc);
std::vector<HomologyClass> homology(const TotalComplex& tc, int degree);

struct InvariantValue {
    double relative = 0;  // sigma
    double absolute = 0;  // c = sigma(alpha) - sigma(1)
    bool absolute_valid = false;
};

// Minimal over representatives of the maximal generator value in the support;
// computed by persistence-style reduction over the value-sorted basis.
double spectral_number_relative(const TotalComplex& tc, const Gf2Vector& cycle);
InvariantValue spectral_number(const TotalComplex& tc, const Gf2Vector& cycle);

// sigma of the degree-0 class "1"; requires dim H_0 = 1.
double sigma_of_unit(const TotalComplex& tc);

// Exhaustive coset enumeration; requires dim(boundaries) <= 20.
double spectral_number_oracle(const TotalComplex& tc, const Gf2Vector& cycle);

// Multiset of sigma values over a filtration-adapted homology basis in each
// degree (essential birth values of the persistence reduction).
std::map<int, std::vector<double>> sigma_spectrum(const TotalComplex& tc);

struct CheckReport {
    std::vector<std::string> failures;
    std::vector<std::string> notes;
    bool ok() const { return failures.empty(); }
    std::string to_string() const;
};

// Verifies that chain_map (generator -> chain in dst, extended ring-linearly)
// commutes with the differentials, shifts values by at most `shift`, and that
// sigma_dst(f(alpha)) <= sigma_src(alpha) + shift on homology.
CheckReport check_filtered_map(const FilteredComplex& src, const FilteredComplex& dst,
                               const std::map<std::string, std::vector<std::string>>& chain_map,
                               double shift);

// Intersection-product and module-action count tables.
struct ActionTable {
    // (morse gen, morse gen) -> combination of morse gens
    std::map<std::pair<std::string, std::string>, std::vector<std::string>> morse_product;
    // (morse gen, floer gen) -> combination of floer gens
    std::map<std::pair<std::string, std::string>, std::vector<std::string>> module_action;
};

CheckReport validate_action(const FilteredComplex& c_morse, const FilteredComplex& c_floer,
                            const ActionTable& t);

CheckReport product_inequality(const FilteredComplex& c_morse, const FilteredComplex& c_floer,
                               const ActionTable& t, double delta);

CheckReport check_duality(const FilteredComplex& c);

}  // namespace specnum
