#include <charconv>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "specnum/higher.hpp"
#include "specnum/io.hpp"
#include "specnum/spectral.hpp"

using namespace specnum;

namespace {

constexpr int kOk = 0;
constexpr int kValidationFailure = 1;
constexpr int kUsageError = 2;
constexpr int kRefused = 3;

struct ValidationFailed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

ComplexFile load_checked(const std::string& path) {
    ComplexFile f = load_complex_file(path);
    ValidationReport rep = validate_complex(f.complex);
    if (!rep.ok())
        throw ValidationFailed(rep.to_string());
    return f;
}

void write_output(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out)
        throw std::runtime_error("cannot write " + out_path);
    out << text;
}

std::string format_num(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact spectral invariants of filtered differential modules over GF(2)"};
    app.require_subcommand(1);

    std::string file, out_path, class_expr, example_name, format = "text";
    int max_page = 0, page_r = 2;
    double param = 1.0, epsilon = 0.0;
    std::uint64_t seed = 1;
    int count = 8, spread = 3;

    auto* cmd_check = app.add_subcommand("check", "validate a complex file");
    cmd_check->add_option("file", file)->required();

    auto* cmd_homology = app.add_subcommand("homology", "homology ranks and classes");
    cmd_homology->add_option("file", file)->required();

    auto* cmd_pages = app.add_subcommand("pages", "spectral page dimensions");
    cmd_pages->add_option("file", file)->required();
    cmd_pages->add_option("--max-page", max_page)->required();

    auto* cmd_invariants = app.add_subcommand("invariants", "sigma and c per class");
    cmd_invariants->add_option("file", file)->required();
    cmd_invariants->add_option("--class", class_expr, "cycle expression, e.g. \"a*p4 + p2\"");

    auto* cmd_higher = app.add_subcommand("higher", "page-r invariants of a class");
    cmd_higher->add_option("file", file)->required();
    cmd_higher->add_option("--page", page_r)->required();
    cmd_higher->add_option("--class", class_expr)->required();

    auto* cmd_gaps = app.add_subcommand("gaps", "nonzero page differentials and invariant gaps");
    cmd_gaps->add_option("file", file)->required();
    cmd_gaps->add_option("--max-page", max_page)->required();

    auto* cmd_report = app.add_subcommand("report", "full invariant report");
    cmd_report->add_option("file", file)->required();
    cmd_report->add_option("--max-page", max_page);
    cmd_report->add_option("--format", format)->check(CLI::IsMember({"text", "structured"}));

    auto* cmd_example = app.add_subcommand("example", "emit a built-in example complex");
    cmd_example->add_option("name", example_name)->required();
    cmd_example->add_option("--param", param);
    cmd_example->add_option("--count", count);
    cmd_example->add_option("--spread", spread);
    cmd_example->add_option("--seed", seed);
    cmd_example->add_option("--out", out_path);

    auto* cmd_perturb = app.add_subcommand("perturb", "perturb generator values");
    cmd_perturb->add_option("file", file)->required();
    cmd_perturb->add_option("--epsilon", epsilon)->required();
    cmd_perturb->add_option("--seed", seed)->required();
    cmd_perturb->add_option("--out", out_path);

    auto* cmd_dual = app.add_subcommand("dual", "dualize a plain complex");
    cmd_dual->add_option("file", file)->required();
    cmd_dual->add_option("--out", out_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kUsageError;
    }

    try {
        if (cmd_check->parsed()) {
            load_checked(file);
            std::cout << "ok\n";
            return kOk;
        }
        if (cmd_homology->parsed() || cmd_invariants->parsed()) {
            ComplexFile f = load_checked(file);
            TotalComplex tc = total_complex(f.complex);
            if (cmd_invariants->parsed() && !class_expr.empty()) {
                Gf2Vector chain = parse_class_expression(tc, class_expr);
                InvariantValue v = spectral_number(tc, chain);
                std::cout << "sigma = " << format_num(v.relative);
                if (v.absolute_valid)
                    std::cout << "  c = " << format_num(v.absolute);
                std::cout << "\n";
                return kOk;
            }
            HomologyBasis h = homology(tc);
            for (const auto& [deg, rank] : h.ranks())
                std::cout << "H_" << deg << " = " << rank << "\n";
            for (const auto& cls : h.classes) {
                InvariantValue v = spectral_number(tc, cls.representative);
                std::cout << "deg " << cls.degree << "  sigma = " << format_num(v.relative);
                if (v.absolute_valid)
                    std::cout << "  c = " << format_num(v.absolute);
                std::cout << "  [" << tc.chain_to_string(cls.representative) << "]\n";
            }
            return kOk;
        }
        if (cmd_pages->parsed()) {
            ComplexFile f = load_checked(file);
            TotalComplex tc = total_complex(f.complex);
            for (int r = 1; r <= max_page; ++r) {
                SpectralPage pg = page(f.complex, tc, r);
                std::cout << "E^" << r << ":";
                for (const auto& [pq, dim] : pg.dims())
                    std::cout << "  (" << pq.first << "," << pq.second << ")=" << dim;
                if (pg.differential_is_zero())
                    std::cout << "  [d = 0]";
                std::cout << "\n";
            }
            return kOk;
        }
        if (cmd_higher->parsed()) {
            ComplexFile f = load_checked(file);
            TotalComplex tc = total_complex(f.complex);
            SpectralPage pg = page(f.complex, tc, page_r);
            PageClass alpha = make_page_class(pg, parse_class_expression(tc, class_expr));
            HigherInvariantValue v = higher(f.complex, pg, alpha);
            std::cout << "cell (" << alpha.p << "," << alpha.q << ")\n"
                      << "sigma_bar = " << format_num(v.sigma_bar)
                      << "  sigma_tilde = " << format_num(v.sigma_tilde) << "\n";
            if (v.absolute_valid)
                std::cout << "c_bar = " << format_num(v.c_bar)
                          << "  c_tilde = " << format_num(v.c_tilde) << "\n";
            for (const auto& n : v.notes)
                std::cerr << "note: " << n << "\n";
            return kOk;
        }
        if (cmd_gaps->parsed()) {
            ComplexFile f = load_checked(file);
            GapReport gr = gap_report(f.complex, max_page);
            for (const auto& e : gr.entries)
                std::cout << "r=" << e.r << "  " << e.source << " -> " << e.target
                          << "  c_bar = " << format_num(e.c_bar_source)
                          << "  c_tilde = " << format_num(e.c_tilde_target)
                          << "  gap = " << format_num(e.gap) << "\n";
            if (gr.has_min_gap)
                std::cout << "min_gap = " << format_num(gr.min_gap) << "\n";
            if (gr.hofer_valid)
                std::cout << "hofer_lower_bound = " << format_num(gr.hofer_lower_bound) << "\n";
            for (const auto& n : gr.notes)
                std::cerr << "note: " << n << "\n";
            for (const auto& v : gr.violations)
                std::cerr << "VIOLATION: " << v << "\n";
            return gr.ok() ? kOk : kValidationFailure;
        }
        if (cmd_report->parsed()) {
            ComplexFile f = load_checked(file);
            std::cout << invariant_report(f, max_page, format == "structured");
            return kOk;
        }
        if (cmd_example->parsed()) {
            ComplexFile f = builtin_example(example_name, {param, count, spread, seed});
            write_output(out_path, serialize_complex_file(f));
            return kOk;
        }
        if (cmd_perturb->parsed()) {
            ComplexFile f = load_checked(file);
            f.complex = perturb_values(f.complex, epsilon, seed);
            write_output(out_path, serialize_complex_file(f));
            return kOk;
        }
        if (cmd_dual->parsed()) {
            ComplexFile f = load_checked(file);
            f.complex = dualize(f.complex);
            f.actions.reset();
            write_output(out_path, serialize_complex_file(f));
            return kOk;
        }
    } catch (const TruncationError& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return kRefused;
    } catch (const ValidationFailed& e) {
        std::cerr << e.what();
        return kValidationFailure;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kUsageError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kValidationFailure;
    }
    return kUsageError;
}
