#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "specnum/higher.hpp"
#include "specnum/homology.hpp"

namespace specnum {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// On-disk representation: a complex plus optional intersection-product /
// module-action tables. When the ring is one of the built-ins, its name is
// kept so serialization round-trips compactly.
struct ComplexFile {
    FilteredComplex complex;
    std::optional<std::string> ring_name;
    std::optional<ActionTable> actions;
};

// JSON, format_version 1. Values are decimal strings parsed to binary64.
// Throws ParseError with a field-precise message on malformed input.
ComplexFile parse_complex_file(const std::string& text);
ComplexFile load_complex_file(const std::string& path);
std::string serialize_complex_file(const ComplexFile& f);

// Sums of "ringElem*genName" terms, "1*g" abbreviated to "g",
// e.g. "a1*p4_1 + a2*p4_2". Throws ParseError on malformed input.
Gf2Vector parse_class_expression(const TotalComplex& tc, const std::string& expr);

struct ExampleParams {
    double param = 1.0;       // circle-shift: the shift k
    int count = 8;            // random: generator count
    int spread = 3;           // random: maximal degree
    std::uint64_t seed = 1;   // random
};

// name in {"s2xs4", "s2xs4-sum", "circle-shift", "random"}; throws
// std::invalid_argument otherwise or on bad params.
ComplexFile builtin_example(const std::string& name, const ExampleParams& params);

// Seeded pseudo-random validating complexes for property tests.
FilteredComplex random_plain_complex(int n_gens, int max_degree, std::uint64_t seed);
// A built-in-ring block with jittered values, plus extra free/paired plain
// generators, mixed by filtration-respecting changes of basis.
FilteredComplex random_extended_complex(const std::string& ring_name, int n_extra,
                                        std::uint64_t seed);

// Renders the full invariant report (homology ranks, sigma/c per class, page
// dims, higher invariants per gap source, the gap report and derived bounds);
// structured = machine-readable JSON, otherwise text.
std::string invariant_report(const ComplexFile& f, int max_page, bool structured);

}  // namespace specnum
