#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "specnum/ring.hpp"

namespace specnum {

struct Generator {
    std::string name;
    int degree = 0;    // Morse/Maslov index
    double value = 0;  // critical value / action
};

struct DifferentialEntry {
    std::string source;
    std::string target;
    RingElement coefficient;  // nonzero, degree <= deg(source) - deg(target) - 1
};

// Filtered differential module over a ring model. Two filtrations coexist:
// by generator degree (drives the spectral sequence) and by generator value
// (drives truncations and spectral numbers).
struct FilteredComplex {
    RingModel ring;
    std::vector<Generator> generators;
    std::vector<DifferentialEntry> entries;
    bool strict_decrease = true;

    std::size_t generator_index(const std::string& name) const;  // throws on unknown
    bool has_generator(const std::string& name) const;
    const Generator& generator(const std::string& name) const;

    // Coefficient of the entry source -> target, zero if absent.
    RingElement coefficient(const std::string& source, const std::string& target) const;

    int min_degree() const;
    int max_degree() const;
    double max_value() const;
    double min_value() const;
    std::vector<double> sorted_distinct_values() const;

    bool is_plain() const { return ring.is_trivial(); }
};

ValidationReport validate_complex(const FilteredComplex& c);

// +/- infinity sentinels are allowed.
struct TruncationLevel {
    double nu = std::numeric_limits<double>::infinity();
    static TruncationLevel infinity() { return {std::numeric_limits<double>::infinity()}; }
    static TruncationLevel minus_infinity() {
        return {-std::numeric_limits<double>::infinity()};
    }
};

// Subcomplex spanned by generators of value <= nu.
FilteredComplex truncate_below(const FilteredComplex& c, TruncationLevel nu);
// Quotient complex spanned by generators of value > nu.
FilteredComplex quotient_above(const FilteredComplex& c, TruncationLevel nu);

// Independent pseudo-random value shifts in [-epsilon, epsilon], rescaled
// toward zero until the result validates.
FilteredComplex perturb_values(const FilteredComplex& c, double epsilon, std::uint64_t seed);

// Plain complexes only: primed generators, degree n-k, value negated,
// differential transposed.
FilteredComplex dualize(const FilteredComplex& c);

// One basis element of the assembled total complex.
struct BasisPair {
    std::size_t ring_index;
    std::size_t gen_index;
};

// The assembled bigraded complex over GF(2). Basis pairs (ring element, generator)
// are sorted by generator value (ties by generator name, then ring degree/name),
// so row indices refine the value filtration. Only the degree-homogeneous part of
// the differential enters the matrix; degree-deficient coefficient components
// (degenerate representing chains) drop out of the graded differential, which
// squares to zero on its own.
//
// Holds a non-owning pointer to the complex it was built from; the complex
// must outlive the TotalComplex (do not pass a temporary to total_complex).
struct TotalComplex {
    const FilteredComplex* source = nullptr;
    std::vector<BasisPair> basis;
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> index;  // (ring, gen) -> basis pos
    Gf2Matrix d;  // full differential matrix, column j = d'(basis[j])

    std::size_t size() const { return basis.size(); }
    int gen_degree(std::size_t i) const;   // p
    int ring_degree(std::size_t i) const;  // q
    int total_degree(std::size_t i) const;
    double value(std::size_t i) const;
    std::string label(std::size_t i) const;

    std::string chain_to_string(const Gf2Vector& chain) const;
    // Indicator of the span of basis elements with total degree n.
    Gf2Vector degree_mask(int n) const;
    // Subspace F^p restricted to total degree n (gen degree <= p).
    std::vector<std::size_t> filtration_indices(int p, int n) const;
};

// Requires a validating complex; throws std::runtime_error if the assembled
// differential fails d'^2 = 0 (ring truncation artifact).
TotalComplex total_complex(const FilteredComplex& c);

}  // namespace specnum
