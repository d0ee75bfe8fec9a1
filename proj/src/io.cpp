#include "specnum/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

#include "specnum/spectral.hpp"

namespace specnum {

namespace {

using nlohmann::json;

std::string format_value(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

double parse_value(const std::string& s, const std::string& context) {
    double v = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw ParseError(context + ": bad decimal value \"" + s + "\"");
    return v;
}

const json& require(const json& obj, const std::string& key, const std::string& context) {
    if (!obj.is_object() || !obj.contains(key))
        throw ParseError(context + ": missing field \"" + key + "\"");
    return obj.at(key);
}

std::string require_string(const json& obj, const std::string& key, const std::string& context) {
    const json& v = require(obj, key, context);
    if (!v.is_string())
        throw ParseError(context + ": field \"" + key + "\" must be a string");
    return v.get<std::string>();
}

int require_int(const json& obj, const std::string& key, const std::string& context) {
    const json& v = require(obj, key, context);
    if (!v.is_number_integer())
        throw ParseError(context + ": field \"" + key + "\" must be an integer");
    return v.get<int>();
}

std::vector<std::string> require_name_list(const json& obj, const std::string& key,
                                           const std::string& context) {
    const json& v = require(obj, key, context);
    if (!v.is_array())
        throw ParseError(context + ": field \"" + key + "\" must be an array of names");
    std::vector<std::string> out;
    for (const auto& e : v) {
        if (!e.is_string())
            throw ParseError(context + ": field \"" + key + "\" must contain only names");
        out.push_back(e.get<std::string>());
    }
    return out;
}

RingModel parse_ring(const json& j) {
    if (j.is_string()) {
        try {
            return builtin_ring(j.get<std::string>());
        } catch (const std::invalid_argument& e) {
            throw ParseError(std::string("ring: ") + e.what());
        }
    }
    if (!j.is_object())
        throw ParseError("ring: must be a builtin name or a table record");
    int trunc = require_int(j, "truncation_degree", "ring");
    const json& basis = require(j, "basis", "ring");
    if (!basis.is_array())
        throw ParseError("ring: field \"basis\" must be an array");
    std::vector<RingBasisElement> elems;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        std::string ctx = "ring.basis[" + std::to_string(i) + "]";
        elems.push_back({require_string(basis[i], "name", ctx), require_int(basis[i], "degree", ctx)});
    }
    RingModel r(std::move(elems), trunc);
    if (j.contains("products")) {
        const json& prods = j.at("products");
        if (!prods.is_array())
            throw ParseError("ring: field \"products\" must be an array");
        for (std::size_t i = 0; i < prods.size(); ++i) {
            std::string ctx = "ring.products[" + std::to_string(i) + "]";
            r.set_product(require_string(prods[i], "left", ctx),
                          require_string(prods[i], "right", ctx),
                          require_name_list(prods[i], "result", ctx));
        }
    }
    if (j.contains("differentials")) {
        const json& diffs = j.at("differentials");
        if (!diffs.is_array())
            throw ParseError("ring: field \"differentials\" must be an array");
        for (std::size_t i = 0; i < diffs.size(); ++i) {
            std::string ctx = "ring.differentials[" + std::to_string(i) + "]";
            r.set_diff(require_string(diffs[i], "element", ctx),
                       require_name_list(diffs[i], "result", ctx));
        }
    }
    return r;
}

json serialize_ring(const RingModel& r) {
    json j;
    j["truncation_degree"] = r.truncation_degree();
    j["basis"] = json::array();
    for (const auto& b : r.basis())
        j["basis"].push_back({{"name", b.name}, {"degree", b.degree}});
    j["products"] = json::array();
    for (const auto& [key, coeffs] : r.mult_entries()) {
        json names = json::array();
        for (std::size_t k : coeffs.support())
            names.push_back(r.basis()[k].name);
        j["products"].push_back({{"left", r.basis()[key.first].name},
                                 {"right", r.basis()[key.second].name},
                                 {"result", names}});
    }
    j["differentials"] = json::array();
    for (const auto& [i, coeffs] : r.diff_entries()) {
        json names = json::array();
        for (std::size_t k : coeffs.support())
            names.push_back(r.basis()[k].name);
        j["differentials"].push_back({{"element", r.basis()[i].name}, {"result", names}});
    }
    return j;
}

std::string trim(const std::string& s) {
    auto a = s.find_first_not_of(" \t");
    auto b = s.find_last_not_of(" \t");
    return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

}  // namespace

ComplexFile parse_complex_file(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("json: ") + e.what());
    }
    if (!j.is_object())
        throw ParseError("top level: must be an object");
    int version = require_int(j, "format_version", "top level");
    if (version != 1)
        throw ParseError("top level: unsupported format_version " + std::to_string(version));

    ComplexFile out{{builtin_ring("trivial"), {}, {}, true}, std::nullopt, std::nullopt};
    if (j.contains("ring")) {
        out.complex.ring = parse_ring(j.at("ring"));
        if (j.at("ring").is_string())
            out.ring_name = j.at("ring").get<std::string>();
    } else {
        out.ring_name = "trivial";
    }
    if (j.contains("strict_decrease")) {
        if (!j.at("strict_decrease").is_boolean())
            throw ParseError("strict_decrease: must be a boolean");
        out.complex.strict_decrease = j.at("strict_decrease").get<bool>();
    }

    const json& gens = require(j, "generators", "top level");
    if (!gens.is_array())
        throw ParseError("generators: must be an array");
    for (std::size_t i = 0; i < gens.size(); ++i) {
        std::string ctx = "generators[" + std::to_string(i) + "]";
        std::string name = require_string(gens[i], "name", ctx);
        int degree = require_int(gens[i], "degree", ctx);
        double value = parse_value(require_string(gens[i], "value", ctx), ctx);
        out.complex.generators.push_back({name, degree, value});
    }

    if (j.contains("differential")) {
        const json& diff = j.at("differential");
        if (!diff.is_array())
            throw ParseError("differential: must be an array");
        for (std::size_t i = 0; i < diff.size(); ++i) {
            std::string ctx = "differential[" + std::to_string(i) + "]";
            std::string src = require_string(diff[i], "source", ctx);
            std::string tgt = require_string(diff[i], "target", ctx);
            auto names = require_name_list(diff[i], "coefficient", ctx);
            RingElement coeff;
            try {
                coeff = out.complex.ring.element(names);
            } catch (const std::exception& e) {
                throw ParseError(ctx + ": " + e.what());
            }
            if (!out.complex.has_generator(src) || !out.complex.has_generator(tgt))
                throw ParseError(ctx + ": unknown generator " +
                                 (out.complex.has_generator(src) ? tgt : src));
            out.complex.entries.push_back({src, tgt, coeff});
        }
    }

    if (j.contains("morse_product") || j.contains("module_action")) {
        ActionTable t;
        if (j.contains("morse_product")) {
            const json& mp = j.at("morse_product");
            if (!mp.is_array())
                throw ParseError("morse_product: must be an array");
            for (std::size_t i = 0; i < mp.size(); ++i) {
                std::string ctx = "morse_product[" + std::to_string(i) + "]";
                t.morse_product[{require_string(mp[i], "left", ctx),
                                 require_string(mp[i], "right", ctx)}] =
                    require_name_list(mp[i], "result", ctx);
            }
        }
        if (j.contains("module_action")) {
            const json& ma = j.at("module_action");
            if (!ma.is_array())
                throw ParseError("module_action: must be an array");
            for (std::size_t i = 0; i < ma.size(); ++i) {
                std::string ctx = "module_action[" + std::to_string(i) + "]";
                t.module_action[{require_string(ma[i], "morse", ctx),
                                 require_string(ma[i], "floer", ctx)}] =
                    require_name_list(ma[i], "result", ctx);
            }
        }
        out.actions = std::move(t);
    }
    return out;
}

ComplexFile load_complex_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_complex_file(ss.str());
}

std::string serialize_complex_file(const ComplexFile& f) {
    json j;
    j["format_version"] = 1;
    if (f.ring_name)
        j["ring"] = *f.ring_name;
    else
        j["ring"] = serialize_ring(f.complex.ring);
    j["strict_decrease"] = f.complex.strict_decrease;
    j["generators"] = json::array();
    for (const auto& g : f.complex.generators)
        j["generators"].push_back(
            {{"name", g.name}, {"degree", g.degree}, {"value", format_value(g.value)}});
    j["differential"] = json::array();
    for (const auto& e : f.complex.entries) {
        json names = json::array();
        for (std::size_t k : e.coefficient.coeffs.support())
            names.push_back(f.complex.ring.basis()[k].name);
        j["differential"].push_back(
            {{"source", e.source}, {"target", e.target}, {"coefficient", names}});
    }
    if (f.actions) {
        j["morse_product"] = json::array();
        for (const auto& [key, result] : f.actions->morse_product)
            j["morse_product"].push_back(
                {{"left", key.first}, {"right", key.second}, {"result", result}});
        j["module_action"] = json::array();
        for (const auto& [key, result] : f.actions->module_action)
            j["module_action"].push_back(
                {{"morse", key.first}, {"floer", key.second}, {"result", result}});
    }
    return j.dump(2) + "\n";
}

Gf2Vector parse_class_expression(const TotalComplex& tc, const std::string& expr) {
    const FilteredComplex& c = *tc.source;
    Gf2Vector v(tc.size());
    std::size_t pos = 0;
    bool any = false;
    while (pos <= expr.size()) {
        auto plus = expr.find('+', pos);
        std::string term =
            trim(plus == std::string::npos ? expr.substr(pos) : expr.substr(pos, plus - pos));
        if (term.empty())
            throw ParseError("class expression: empty term in \"" + expr + "\"");
        auto star = term.find('*');
        std::string ring_name = star == std::string::npos ? "1" : trim(term.substr(0, star));
        std::string gen_name = star == std::string::npos ? term : trim(term.substr(star + 1));
        if (!c.ring.has_element(ring_name))
            throw ParseError("class expression: unknown ring element \"" + ring_name + "\"");
        if (!c.has_generator(gen_name))
            throw ParseError("class expression: unknown generator \"" + gen_name + "\"");
        v.flip(tc.index.at({c.ring.index_of(ring_name), c.generator_index(gen_name)}));
        any = true;
        if (plus == std::string::npos)
            break;
        pos = plus + 1;
    }
    if (!any || v.is_zero())
        throw ParseError("class expression: \"" + expr + "\" denotes the zero chain");
    return v;
}

namespace {

FilteredComplex fixture_s2xs4() {
    FilteredComplex c{builtin_ring("s2xs4"), {}, {}, true};
    c.generators = {{"p0", 0, 0.0}, {"p2", 2, 1.9}, {"p4", 4, 2.1}, {"p6", 6, 4.0}};
    c.entries = {{"p6", "p4", c.ring.element({"a"})},
                 {"p6", "p2", c.ring.element({"b"})},
                 {"p6", "p0", c.ring.element({"g"})},
                 {"p4", "p0", c.ring.element({"b"})},
                 {"p2", "p0", c.ring.element({"a"})}};
    return c;
}

FilteredComplex fixture_s2xs4_sum() {
    FilteredComplex c{builtin_ring("s2xs4-sum"), {}, {}, true};
    c.generators = {{"p0", 0, 0.0},    {"p2_2", 2, 1.8}, {"p2_1", 2, 1.9},
                    {"p4_2", 4, 2.05}, {"p4_1", 4, 2.1}, {"p6", 6, 4.0}};
    c.entries = {{"p6", "p4_1", c.ring.element({"a1"})}, {"p6", "p4_2", c.ring.element({"a2"})},
                 {"p6", "p2_1", c.ring.element({"b1"})}, {"p6", "p2_2", c.ring.element({"b2"})},
                 {"p6", "p0", c.ring.element({"g"})},    {"p4_1", "p0", c.ring.element({"b1"})},
                 {"p4_2", "p0", c.ring.element({"b2"})}, {"p2_1", "p0", c.ring.element({"a1"})},
                 {"p2_2", "p0", c.ring.element({"a2"})}};
    return c;
}

}  // namespace

FilteredComplex random_plain_complex(int n_gens, int max_degree, std::uint64_t seed) {
    if (n_gens < 1 || max_degree < 0)
        throw std::invalid_argument("random_plain_complex: need n_gens >= 1, max_degree >= 0");
    std::mt19937_64 rng(seed);
    FilteredComplex c{builtin_ring("trivial"), {}, {}, true};

    std::set<long> used;
    std::vector<int> degree(n_gens);
    std::vector<double> value(n_gens);
    for (int i = 0; i < n_gens; ++i) {
        degree[i] = int(rng() % (max_degree + 1));
        long v;
        do
            v = long(rng() % 4096) - 2048;
        while (!used.insert(v).second);
        value[i] = double(v) / 16.0;  // exactly representable
        c.generators.push_back({"g" + std::to_string(i), degree[i], value[i]});
    }

    // A partial matching d(source) = target between consecutive degrees...
    std::vector<std::vector<char>> d(n_gens, std::vector<char>(n_gens, 0));  // d[target][source]
    std::vector<char> paired(n_gens, 0);
    std::vector<int> order(n_gens);
    for (int i = 0; i < n_gens; ++i)
        order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    for (int s : order) {
        if (paired[s] || degree[s] < 1 || rng() % 10 >= 7)
            continue;
        std::vector<int> candidates;
        for (int t = 0; t < n_gens; ++t)
            if (!paired[t] && t != s && degree[t] == degree[s] - 1 && value[t] < value[s])
                candidates.push_back(t);
        if (candidates.empty())
            continue;
        int t = candidates[rng() % candidates.size()];
        d[t][s] = 1;
        paired[s] = paired[t] = 1;
    }

    // ...mixed by changes of basis x <- x + y within a degree, descending in
    // value so the filtration (and d^2 = 0) is preserved.
    for (int k = 0; k < 2 * n_gens; ++k) {
        int x = int(rng() % n_gens), y = int(rng() % n_gens);
        if (x == y || degree[x] != degree[y] || value[y] >= value[x])
            continue;
        for (int t = 0; t < n_gens; ++t)
            d[t][x] ^= d[t][y];
        for (int s = 0; s < n_gens; ++s)
            d[y][s] ^= d[x][s];
    }

    for (int s = 0; s < n_gens; ++s)
        for (int t = 0; t < n_gens; ++t)
            if (d[t][s])
                c.entries.push_back(
                    {c.generators[s].name, c.generators[t].name, c.ring.unit()});
    return c;
}

FilteredComplex random_extended_complex(const std::string& ring_name, int n_extra,
                                        std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    FilteredComplex c = ring_name == "s2xs4"       ? fixture_s2xs4()
                        : ring_name == "s2xs4-sum" ? fixture_s2xs4_sum()
                                                   : FilteredComplex{builtin_ring(ring_name),
                                                                     {},
                                                                     {},
                                                                     true};
    // jitter the block values (small enough to keep their relative order)
    for (auto& g : c.generators)
        g.value += double(long(rng() % 31) - 15) / 1024.0;

    int added = 0;
    while (added < n_extra) {
        if (n_extra - added >= 2 && rng() % 2) {
            int k = 1 + int(rng() % 6);
            double v = double(long(rng() % 256) - 128) / 16.0;
            std::string u = "x" + std::to_string(added), w = "x" + std::to_string(added + 1);
            c.generators.push_back({u, k, v});
            c.generators.push_back({w, k - 1, v - double(1 + rng() % 16) / 16.0});
            c.entries.push_back({u, w, c.ring.unit()});
            added += 2;
        } else {
            c.generators.push_back({"x" + std::to_string(added), int(rng() % 7),
                                    double(long(rng() % 256) - 128) / 16.0});
            added += 1;
        }
    }

    // changes of basis x <- x + y within a degree, descending in value; only
    // applied when no coefficient-degree mixing would result, so every
    // (source, target) pair keeps a homogeneous coefficient.
    const std::size_t n = c.generators.size();
    std::map<std::pair<std::string, std::string>, RingElement> m;
    for (const auto& e : c.entries) {
        auto key = std::make_pair(e.source, e.target);
        auto it = m.find(key);
        m[key] = it == m.end() ? e.coefficient : c.ring.add(it->second, e.coefficient);
    }
    for (std::size_t k = 0; k < 3 * n; ++k) {
        const Generator& x = c.generators[rng() % n];
        const Generator& y = c.generators[rng() % n];
        if (x.name == y.name || x.degree != y.degree || y.value >= x.value)
            continue;
        bool mixes = false;
        for (const auto& g : c.generators) {
            auto xa = m.find({x.name, g.name}), ya = m.find({y.name, g.name});
            if (xa != m.end() && ya != m.end() && !xa->second.is_zero() &&
                !ya->second.is_zero() && xa->second.degree != ya->second.degree)
                mixes = true;
            auto ax = m.find({g.name, x.name}), ay = m.find({g.name, y.name});
            if (ax != m.end() && ay != m.end() && !ax->second.is_zero() &&
                !ay->second.is_zero() && ax->second.degree != ay->second.degree)
                mixes = true;
        }
        if (mixes)
            continue;
        for (const auto& g : c.generators) {
            auto ya = m.find({y.name, g.name});
            if (ya != m.end() && !ya->second.is_zero()) {
                auto key = std::make_pair(x.name, g.name);
                auto xa = m.find(key);
                m[key] = xa == m.end() ? ya->second : c.ring.add(xa->second, ya->second);
            }
            auto ax = m.find({g.name, x.name});
            if (ax != m.end() && !ax->second.is_zero()) {
                auto key = std::make_pair(g.name, y.name);
                auto ay = m.find(key);
                m[key] = ay == m.end() ? ax->second : c.ring.add(ay->second, ax->second);
            }
        }
    }
    c.entries.clear();
    for (const auto& [key, coeff] : m)
        if (!coeff.is_zero())
            c.entries.push_back({key.first, key.second, coeff});
    return c;
}

ComplexFile builtin_example(const std::string& name, const ExampleParams& params) {
    if (name == "s2xs4")
        return {fixture_s2xs4(), "s2xs4", std::nullopt};
    if (name == "s2xs4-sum")
        return {fixture_s2xs4_sum(), "s2xs4-sum", std::nullopt};
    if (name == "circle-shift") {
        if (!(params.param > 0))
            throw std::invalid_argument("circle-shift: param k must be > 0");
        FilteredComplex c{builtin_ring("trivial"), {}, {}, true};
        c.generators = {{"top", 1, params.param}, {"bottom", 0, -params.param}};
        return {std::move(c), "trivial", std::nullopt};
    }
    if (name == "random")
        return {random_plain_complex(params.count, params.spread, params.seed), "trivial",
                std::nullopt};
    throw std::invalid_argument("builtin_example: unknown example " + name);
}

std::string invariant_report(const ComplexFile& f, int max_page, bool structured) {
    const FilteredComplex& c = f.complex;
    if (max_page <= 0)
        max_page = stabilization_page(c);
    TotalComplex tc = total_complex(c);
    HomologyBasis h = homology(tc);

    json j;
    j["generators"] = json::array();
    for (const auto& g : c.generators)
        j["generators"].push_back(
            {{"name", g.name}, {"degree", g.degree}, {"value", format_value(g.value)}});

    j["homology"] = json::array();
    for (const auto& [deg, rank] : h.ranks())
        j["homology"].push_back({{"degree", deg}, {"rank", rank}});

    j["classes"] = json::array();
    for (const auto& cls : h.classes) {
        InvariantValue v = spectral_number(tc, cls.representative);
        json e = {{"degree", cls.degree},
                  {"representative", tc.chain_to_string(cls.representative)},
                  {"sigma", v.relative}};
        if (v.absolute_valid)
            e["c"] = v.absolute;
        j["classes"].push_back(e);
    }

    j["pages"] = json::array();
    for (int r = 1; r <= max_page; ++r) {
        try {
            SpectralPage pg = page(c, tc, r);
            json cells = json::array();
            for (const auto& [pq, dim] : pg.dims())
                cells.push_back({{"p", pq.first}, {"q", pq.second}, {"dim", dim}});
            j["pages"].push_back(
                {{"r", r}, {"cells", cells}, {"d_zero", pg.differential_is_zero()}});
        } catch (const TruncationError& e) {
            j["pages_note"] = e.what();
            break;
        }
    }

    GapReport gr = gap_report(c, max_page);
    j["gaps"] = json::array();
    for (const auto& e : gr.entries)
        j["gaps"].push_back({{"r", e.r},
                             {"p", e.p},
                             {"q", e.q},
                             {"source", e.source},
                             {"target", e.target},
                             {"c_bar_source", e.c_bar_source},
                             {"c_tilde_target", e.c_tilde_target},
                             {"gap", e.gap}});
    for (const auto& n : gr.notes)
        j["notes"].push_back(n);
    for (const auto& v : gr.violations)
        j["violations"].push_back(v);
    if (gr.has_min_gap)
        j["bounds"]["squared_width_upper_bound"] = gr.min_gap;
    if (gr.hofer_valid)
        j["bounds"]["hofer_distance_lower_bound"] = gr.hofer_lower_bound;

    if (structured)
        return j.dump(2) + "\n";

    std::ostringstream os;
    os << "generators (name degree value):\n";
    for (const auto& g : j["generators"])
        os << "  " << g["name"].get<std::string>() << "  " << g["degree"].get<int>() << "  "
           << g["value"].get<std::string>() << "\n";
    os << "homology ranks:\n";
    for (const auto& e : j["homology"])
        os << "  H_" << e["degree"].get<int>() << " = " << e["rank"].get<std::size_t>() << "\n";
    os << "classes:\n";
    for (const auto& e : j["classes"]) {
        os << "  deg " << e["degree"].get<int>() << "  sigma = "
           << format_value(e["sigma"].get<double>());
        if (e.contains("c"))
            os << "  c = " << format_value(e["c"].get<double>());
        os << "  [" << e["representative"].get<std::string>() << "]\n";
    }
    os << "pages:\n";
    for (const auto& p : j["pages"]) {
        os << "  E^" << p["r"].get<int>() << ":";
        for (const auto& cell : p["cells"])
            os << "  (" << cell["p"].get<int>() << "," << cell["q"].get<int>() << ")=" << cell["dim"].get<std::size_t>();
        if (p["d_zero"].get<bool>())
            os << "  [d = 0]";
        os << "\n";
    }
    if (j.contains("pages_note"))
        os << "  note: " << j["pages_note"].get<std::string>() << "\n";
    os << "gap entries (r, source -> target, c_bar(source), c_tilde(target), gap):\n";
    for (const auto& e : j["gaps"])
        os << "  r=" << e["r"].get<int>() << "  " << e["source"].get<std::string>() << " -> "
           << e["target"].get<std::string>() << "  " << format_value(e["c_bar_source"].get<double>())
           << "  " << format_value(e["c_tilde_target"].get<double>()) << "  "
           << format_value(e["gap"].get<double>()) << "\n";
    if (j.contains("bounds")) {
        if (j["bounds"].contains("squared_width_upper_bound"))
            os << "certified upper bound on the squared-width term: "
               << format_value(j["bounds"]["squared_width_upper_bound"].get<double>()) << "\n";
        if (j["bounds"].contains("hofer_distance_lower_bound"))
            os << "Hofer distance lower bound c([top]): "
               << format_value(j["bounds"]["hofer_distance_lower_bound"].get<double>()) << "\n";
    }
    if (j.contains("notes"))
        for (const auto& n : j["notes"])
            os << "note: " << n.get<std::string>() << "\n";
    if (j.contains("violations"))
        for (const auto& v : j["violations"])
            os << "VIOLATION: " << v.get<std::string>() << "\n";
    return os.str();
}

}  // namespace specnum
