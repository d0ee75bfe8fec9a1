#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "specnum/homology.hpp"
#include "specnum/io.hpp"

using namespace specnum;

namespace {

FilteredComplex fix_a() {
    FilteredComplex c{builtin_ring("trivial"), {}, {}, true};
    c.generators = {{"a", 1, 2.0}, {"b", 0, 1.0}, {"c", 0, 0.0}};
    c.entries = {{"a", "b", c.ring.unit()}, {"a", "c", c.ring.unit()}};
    return c;
}

FilteredComplex fix_b() { return builtin_example("s2xs4", {}).complex; }

}  // namespace

TEST_CASE("homology of the small collapse") {
    FilteredComplex c0 = fix_a();
    TotalComplex tc = total_complex(c0);
    HomologyBasis h = homology(tc);
    auto ranks = h.ranks();
    CHECK(ranks.size() == 1);
    CHECK(ranks.at(0) == 1);

    // sigma([b]) = 0: b ~ c via d(a), and c sits at value 0
    Gf2Vector b_cycle = Gf2Vector::unit(tc.size(), tc.index.at({0, 1}));
    CHECK(spectral_number_relative(tc, b_cycle) == 0.0);
    CHECK(spectral_number_oracle(tc, b_cycle) == 0.0);
    CHECK(sigma_of_unit(tc) == 0.0);
}

TEST_CASE("homology of the worked example") {
    FilteredComplex c0 = fix_b();
    TotalComplex tc = total_complex(c0);
    HomologyBasis h = homology(tc);
    auto ranks = h.ranks();
    // one class each in total degrees 0, 3, 7, 10
    REQUIRE(ranks.size() == 4);
    CHECK(ranks.at(0) == 1);
    CHECK(ranks.at(3) == 1);
    CHECK(ranks.at(7) == 1);
    CHECK(ranks.at(10) == 1);

    // class coordinates identify representatives mod boundaries
    for (const auto& cls : h.classes) {
        auto coords = h.class_coordinates(cls.representative);
        REQUIRE(coords.has_value());
        CHECK(coords->popcount() == 1);
    }
    Gf2Vector not_cycle(tc.size());
    const FilteredComplex& b = *tc.source;
    not_cycle.flip(tc.index.at({b.ring.index_of("1"), b.generator_index("p6")}));
    CHECK_FALSE(h.class_coordinates(not_cycle).has_value());
}

TEST_CASE("spectral numbers agree with the exhaustive oracle") {
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        FilteredComplex c = random_plain_complex(10, 3, seed);
        REQUIRE(validate_complex(c).ok());
        TotalComplex tc = total_complex(c);
        for (const auto& cls : homology(tc).classes) {
            INFO("seed ", seed, " degree ", cls.degree);
            CHECK(spectral_number_relative(tc, cls.representative) ==
                  spectral_number_oracle(tc, cls.representative));
        }
    }
}

TEST_CASE("spectral number rejects non-cycles and zero classes") {
    FilteredComplex c0 = fix_a();
    TotalComplex tc = total_complex(c0);
    Gf2Vector a_chain = Gf2Vector::unit(tc.size(), tc.index.at({0, 0}));
    CHECK_THROWS_AS(spectral_number_relative(tc, a_chain), std::invalid_argument);
    Gf2Vector boundary = tc.d.apply(a_chain);
    CHECK_THROWS_AS(spectral_number_relative(tc, boundary), std::invalid_argument);
}

TEST_CASE("sigma spectrum matches per-class sigma values") {
    for (std::uint64_t seed = 30; seed <= 40; ++seed) {
        FilteredComplex c = random_plain_complex(9, 3, seed);
        TotalComplex tc = total_complex(c);
        HomologyBasis h = homology(tc);
        auto spectrum = sigma_spectrum(tc);
        std::size_t total = 0;
        for (const auto& [deg, values] : spectrum)
            total += values.size();
        CHECK(total == h.classes.size());
        // the multiset in each degree dominates: min sigma equals min birth
        for (const auto& [deg, values] : spectrum) {
            double best = std::numeric_limits<double>::infinity();
            for (const auto* cls : h.in_degree(deg))
                best = std::min(best, spectral_number_relative(tc, cls->representative));
            REQUIRE_FALSE(values.empty());
            CHECK(values.front() == best);
        }
    }
}

TEST_CASE("filtered map checks: identity, inclusion, shifts") {
    FilteredComplex b = fix_b();
    std::map<std::string, std::vector<std::string>> identity;
    for (const auto& g : b.generators)
        identity[g.name] = {g.name};
    CHECK(check_filtered_map(b, b, identity, 0.0).ok());

    // inclusion of a value truncation
    FilteredComplex lo = truncate_below(b, {2.0});
    std::map<std::string, std::vector<std::string>> incl;
    for (const auto& g : lo.generators)
        incl[g.name] = {g.name};
    CHECK(check_filtered_map(lo, b, incl, 0.0).ok());

    // shifting targets upward needs a matching shift budget
    FilteredComplex shifted = b;
    for (auto& g : shifted.generators)
        g.value += 0.5;
    CHECK_FALSE(check_filtered_map(b, shifted, identity, 0.0).ok());
    CHECK(check_filtered_map(b, shifted, identity, 0.5).ok());

    // a non-chain-map is rejected
    std::map<std::string, std::vector<std::string>> broken = identity;
    broken["p6"] = {};
    CHECK_FALSE(check_filtered_map(b, b, broken, 0.0).ok());
}

namespace {

// c plus its dual: homology ranks become symmetric under k <-> n - k, so the
// duality check runs on the sigma multisets instead of skipping.
FilteredComplex symmetrize(const FilteredComplex& c) {
    FilteredComplex s = c;
    FilteredComplex d = dualize(c);
    s.generators.insert(s.generators.end(), d.generators.begin(), d.generators.end());
    s.entries.insert(s.entries.end(), d.entries.begin(), d.entries.end());
    return s;
}

}  // namespace

TEST_CASE("duality on random plain complexes") {
    for (std::uint64_t seed = 50; seed <= 70; ++seed) {
        FilteredComplex c = symmetrize(random_plain_complex(4, 3, seed));
        REQUIRE(validate_complex(c).ok());
        CheckReport rep = check_duality(c);
        INFO("seed ", seed, "\n", rep.to_string());
        CHECK(rep.ok());
        CHECK(rep.notes.empty());  // the shape gate must not skip these
    }
    CHECK_FALSE(check_duality(fix_b()).ok());  // extended complexes are refused
}
