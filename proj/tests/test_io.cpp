#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "specnum/homology.hpp"
#include "specnum/io.hpp"

using namespace specnum;

namespace {

bool same_complex(const FilteredComplex& a, const FilteredComplex& b) {
    if (a.strict_decrease != b.strict_decrease)
        return false;
    if (a.generators.size() != b.generators.size() || a.entries.size() != b.entries.size())
        return false;
    for (std::size_t i = 0; i < a.generators.size(); ++i) {
        if (a.generators[i].name != b.generators[i].name ||
            a.generators[i].degree != b.generators[i].degree ||
            a.generators[i].value != b.generators[i].value)
            return false;
    }
    if (a.ring.size() != b.ring.size() ||
        a.ring.truncation_degree() != b.ring.truncation_degree())
        return false;
    for (const auto& ea : a.entries) {
        RingElement ca = ea.coefficient;
        RingElement cb = b.coefficient(ea.source, ea.target);
        if (cb.is_zero() || ca.degree != cb.degree || !(ca.coeffs == cb.coeffs))
            return false;
    }
    return true;
}

}  // namespace

TEST_CASE("round-trip through the file format") {
    for (const char* name : {"s2xs4", "s2xs4-sum", "circle-shift"}) {
        ComplexFile f = builtin_example(name, {2.5, 8, 3, 1});
        ComplexFile back = parse_complex_file(serialize_complex_file(f));
        INFO(name);
        CHECK(same_complex(f.complex, back.complex));
        CHECK(back.ring_name == f.ring_name);
        CHECK(validate_complex(back.complex).ok());
    }
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        ComplexFile f{random_extended_complex("s2xs4", 4, seed), std::nullopt, std::nullopt};
        ComplexFile back = parse_complex_file(serialize_complex_file(f));
        INFO("seed ", seed);
        CHECK(same_complex(f.complex, back.complex));
    }
}

TEST_CASE("action tables survive the round trip") {
    ComplexFile f = builtin_example("s2xs4", {});
    ActionTable t;
    t.morse_product[{"m", "m"}] = {"m"};
    t.module_action[{"m", "p4"}] = {"p4"};
    f.actions = t;
    ComplexFile back = parse_complex_file(serialize_complex_file(f));
    REQUIRE(back.actions.has_value());
    CHECK(back.actions->morse_product == t.morse_product);
    CHECK(back.actions->module_action == t.module_action);
}

TEST_CASE("parse errors carry field-precise context") {
    auto expect_error = [](const std::string& text, const std::string& needle) {
        try {
            parse_complex_file(text);
            FAIL_CHECK("no error for ", text);
        } catch (const ParseError& e) {
            INFO(e.what());
            CHECK(std::string(e.what()).find(needle) != std::string::npos);
        }
    };
    expect_error("{", "json");
    expect_error("[]", "top level");
    expect_error("{\"format_version\": 2, \"generators\": []}", "format_version");
    expect_error("{\"format_version\": 1}", "generators");
    expect_error("{\"format_version\": 1, \"generators\": [{\"name\": \"x\"}]}",
                 "generators[0]");
    expect_error(
        "{\"format_version\": 1, \"generators\": "
        "[{\"name\": \"x\", \"degree\": 0, \"value\": \"oops\"}]}",
        "bad decimal value");
    expect_error(
        "{\"format_version\": 1, \"generators\": "
        "[{\"name\": \"x\", \"degree\": 1, \"value\": \"1\"}], "
        "\"differential\": [{\"source\": \"x\", \"target\": \"y\", \"coefficient\": [\"1\"]}]}",
        "unknown generator y");
    expect_error("{\"format_version\": 1, \"ring\": \"bogus\", \"generators\": []}", "bogus");
}

TEST_CASE("values parse as exact binary64 decimals") {
    ComplexFile f = parse_complex_file(
        "{\"format_version\": 1, \"generators\": "
        "[{\"name\": \"x\", \"degree\": 0, \"value\": \"2.1\"},"
        " {\"name\": \"y\", \"degree\": 0, \"value\": \"-0.25\"}]}");
    CHECK(f.complex.generator("x").value == 2.1);
    CHECK(f.complex.generator("y").value == -0.25);
}

TEST_CASE("class expressions") {
    FilteredComplex b = builtin_example("s2xs4", {}).complex;
    TotalComplex tc = total_complex(b);
    Gf2Vector v = parse_class_expression(tc, " a*p4 + b*p2 ");
    CHECK(v.popcount() == 2);
    CHECK(tc.chain_to_string(v) == "b*p2 + a*p4");
    CHECK(parse_class_expression(tc, "p6") ==
          Gf2Vector::unit(tc.size(), tc.index.at({0, b.generator_index("p6")})));
    CHECK(parse_class_expression(tc, "1*p6") == parse_class_expression(tc, "p6"));
    CHECK_THROWS_AS(parse_class_expression(tc, "a*p4 + a*p4"), ParseError);
    CHECK_THROWS_AS(parse_class_expression(tc, "zz*p4"), ParseError);
    CHECK_THROWS_AS(parse_class_expression(tc, "a*zz"), ParseError);
    CHECK_THROWS_AS(parse_class_expression(tc, ""), ParseError);
}

TEST_CASE("built-in examples validate and hit their fixtures") {
    ComplexFile b = builtin_example("s2xs4", {});
    CHECK(validate_complex(b.complex).ok());
    CHECK(b.complex.generator("p4").value == 2.1);
    CHECK(b.complex.generator("p6").degree == 6);

    ComplexFile c = builtin_example("s2xs4-sum", {});
    CHECK(validate_complex(c.complex).ok());
    CHECK(c.complex.generator("p4_2").value == 2.05);

    ComplexFile k = builtin_example("circle-shift", {5.0, 0, 0, 0});
    CHECK(validate_complex(k.complex).ok());
    CHECK(k.complex.generator("top").value == 5.0);
    CHECK(k.complex.generator("bottom").value == -5.0);
    CHECK_THROWS_AS(builtin_example("circle-shift", {0.0, 0, 0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(builtin_example("bogus", {}), std::invalid_argument);

    ComplexFile r = builtin_example("random", {0, 9, 3, 17});
    CHECK(validate_complex(r.complex).ok());
    CHECK(r.complex.generators.size() == 9);
}

TEST_CASE("random generators always produce valid complexes") {
    for (std::uint64_t seed = 100; seed < 140; ++seed) {
        FilteredComplex p = random_plain_complex(1 + seed % 10, seed % 4, seed);
        INFO("plain seed ", seed);
        CHECK(validate_complex(p).ok());
        CHECK_NOTHROW(total_complex(p));
    }
    for (std::uint64_t seed = 100; seed < 120; ++seed) {
        FilteredComplex e = random_extended_complex(seed % 2 ? "s2xs4" : "s2xs4-sum",
                                                    int(seed % 5), seed);
        INFO("extended seed ", seed);
        CHECK(validate_complex(e).ok());
        CHECK_NOTHROW(total_complex(e));
    }
    // determinism
    FilteredComplex a = random_plain_complex(8, 3, 5);
    FilteredComplex b = random_plain_complex(8, 3, 5);
    CHECK(same_complex(a, b));
}

TEST_CASE("report numbers reproduce library outputs") {
    ComplexFile f = builtin_example("s2xs4", {});
    std::string text = invariant_report(f, 0, false);
    CHECK(text.find("sigma") != std::string::npos);
    CHECK(text.find("p6") != std::string::npos);

    std::string structured = invariant_report(f, 0, true);
    // spot-check against direct computation
    TotalComplex tc = total_complex(f.complex);
    double s1 = sigma_of_unit(tc);
    CHECK(s1 == 0.0);
    CHECK(structured.find("\"hofer_distance_lower_bound\": 4.0") != std::string::npos);
    CHECK(structured.find("\"gap\": 1.9") != std::string::npos);
}
