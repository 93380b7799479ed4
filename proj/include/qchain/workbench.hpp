#pragma once

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "qchain/catalogue.hpp"
#include "qchain/io.hpp"

namespace qchain {

// exit codes: 0 success, 2 input/validation failure, 3 internal invariant
// violation (a bug)
inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitInternal = 3;

namespace detail {

inline std::pair<int, int> parse_weight_range(const std::string& s) {
    auto dots = s.find("..");
    if (dots == std::string::npos) {
        int w = std::stoi(s);
        return {w, w};
    }
    return {std::stoi(s.substr(0, dots)), std::stoi(s.substr(dots + 2))};
}

inline void emit_table(ResultTable& table, const std::string& out_file, const std::string& format,
                       std::ostream& out) {
    table.sort();
    std::string payload = format == "csv" ? table.to_csv() : table.to_json();
    if (out_file.empty())
        out << payload;
    else
        write_file(out_file, payload);
}

inline int cmd_validate(const std::string& input, std::ostream& out, std::ostream& err) {
    std::string bytes = read_file(input);
    Json j = Json::parse(bytes);
    InputKind kind = detect_kind(j);
    ValidationReport rep;
    std::string what;
    switch (kind) {
        case InputKind::lie_algebra:
            rep = validate_jacobi(lie_from_json(j));
            what = "lie-algebra";
            break;
        case InputKind::groupoid:
            rep = validate_groupoid(groupoid_from_json(j));
            what = "groupoid";
            break;
        case InputKind::complex:
            rep = validate_complex(complex_from_json(j));
            what = "complex";
            break;
        case InputKind::chain_map:
            rep = validate_chain_map(
                chain_map_from_json(j, std::filesystem::path(input).parent_path().string()));
            what = "chain-map";
            break;
        case InputKind::double_complex:
            rep = validate_double(double_complex_from_json(j));
            what = "double-complex";
            break;
        case InputKind::multivector: {
            multivector_from_json(j);  // structural checks happen in the parser
            what = "multivector";
            break;
        }
    }
    if (!rep.ok()) {
        err << what << " validation failed:\n" << rep.summary();
        return kExitInput;
    }
    out << what << ": ok\n";
    return kExitOk;
}

inline int cmd_cohomology(const std::string& kind, const std::string& input, const std::string& rep_name,
                          int max_degree, const std::string& weights, const std::string& out_file,
                          const std::string& format, std::ostream& out, std::ostream& err) {
    std::string bytes = read_file(input);
    Json j = Json::parse(bytes);
    ResultTable table;
    table.stamp(bytes);
    if (kind == "ce" || kind == "defm") {
        LieAlgebra g = lie_from_json(j);
        ValidationReport jr = validate_jacobi(g);
        if (!jr.ok()) {
            err << jr.summary();
            return kExitInput;
        }
        int k_max = max_degree < 0 ? g.n : std::min(max_degree, g.n);
        Complex c;
        std::string object;
        if (kind == "ce") {
            Coefficients coeffs;
            if (rep_name == "trivial")
                coeffs = Coefficients::trivial;
            else if (rep_name == "adjoint")
                coeffs = Coefficients::adjoint;
            else if (rep_name == "coadjoint")
                coeffs = Coefficients::coadjoint;
            else {
                err << "unknown representation: " << rep_name << "\n";
                return kExitInput;
            }
            c = ce_complex(g, coeffs, k_max);
            object = g.name + ":ce-" + rep_name;
        } else {
            c = deformation_complex(g, k_max);
            object = g.name + ":defm";
        }
        CohomologyTable h = cohomology(c);
        for (int k = 0; k <= k_max; ++k)
            table.rows.push_back({object, k, std::nullopt, h[k].dim});
    } else if (kind == "poisson") {
        PolyMultivector pi;
        std::string object;
        if (detect_kind(j) == InputKind::lie_algebra) {
            LieAlgebra g = lie_from_json(j);
            pi = linear_poisson(g);
            object = g.name + ":poisson";
        } else {
            pi = multivector_from_json(j);
            object = "poisson";
        }
        PoissonCheck chk = is_poisson(pi);
        if (!chk.ok) {
            err << "bivector is not Poisson; [pi,pi] = " << chk.witness.str() << "\n";
            return kExitInput;
        }
        auto [lo, hi] = parse_weight_range(weights.empty() ? "0..2" : weights);
        int k_max = max_degree < 0 ? pi.space.dim() : std::min(max_degree, pi.space.dim());
        if (qchain::detail::homogeneous_degree(pi)) {
            PoissonCohomology pc = poisson_cohomology(pi, WeightSelector::window(lo, hi), k_max);
            for (const auto& [kw, dim] : pc.dims)
                table.rows.push_back({object, kw.first, kw.second, dim});
        } else {
            // no weight grading: report the window complex without a weight column
            Complex c = poisson_window_complex(pi, hi, k_max);
            CohomologyTable h = cohomology(c);
            for (int k = 0; k <= k_max; ++k)
                table.rows.push_back({object + ":window<=" + std::to_string(hi), k, std::nullopt,
                                      h[k].dim});
        }
    } else if (kind == "groupoid") {
        FiniteGroupoid g = groupoid_from_json(j);
        ValidationReport gr = validate_groupoid(g);
        if (!gr.ok()) {
            err << gr.summary();
            return kExitInput;
        }
        int k_max = max_degree < 0 ? 3 : max_degree;
        Complex c = differentiable_complex(g, k_max);
        CohomologyTable h = cohomology(c);
        for (int k = 0; k <= k_max; ++k)
            table.rows.push_back({g.name + ":diff", k, std::nullopt, h[k].dim});
    } else {
        err << "unknown cohomology kind: " << kind << "\n";
        return kExitInput;
    }
    emit_table(table, out_file, format, out);
    return kExitOk;
}

inline int cmd_cone(const std::string& map_file, bool symplectic, std::ostream& out, std::ostream& err) {
    std::string bytes = read_file(map_file);
    ChainMap f = chain_map_from_json(Json::parse(bytes),
                                     std::filesystem::path(map_file).parent_path().string());
    ValidationReport v = validate_chain_map(f);
    if (!v.ok()) {
        err << v.summary();
        return kExitInput;
    }
    ConeResult cr = symplectic ? symplectic_model(f) : cone(f);
    out << (symplectic ? "symplectic model (cone of the negated map)" : "mapping cone") << "\n";
    out << "layout: degree n = " << cr.layout.unshifted_tag << "-part (source^n) + "
        << cr.layout.shifted_tag << "-part (target^{n-1})\n";
    CohomologyTable h = cohomology(cr.complex);
    for (const auto& part : cr.layout.parts)
        out << "  degree " << part.degree << ": dim " << part.unshifted_dim + part.shifted_dim << " = "
            << part.unshifted_dim << " + " << part.shifted_dim << ", H^" << part.degree << " = "
            << h[part.degree].dim << "\n";
    return kExitOk;
}

inline int cmd_les(const std::string& map_file, std::ostream& out, std::ostream& err) {
    std::string bytes = read_file(map_file);
    ChainMap f = chain_map_from_json(Json::parse(bytes),
                                     std::filesystem::path(map_file).parent_path().string());
    ValidationReport v = validate_chain_map(f);
    if (!v.ok()) {
        err << v.summary();
        return kExitInput;
    }
    LongExactSequence les = cone_les(f);
    out << "cone long exact sequence (window " << les.k_min << ".." << les.k_max << ")\n";
    for (size_t i = 1; i + 1 < les.nodes.size(); ++i) {
        const LesNode& n = les.nodes[i];
        out << "  H^" << n.degree << "(" << n.complex_name << ") dim " << n.dim
            << (n.exact ? "  exact" : "  NOT EXACT") << "\n";
    }
    out << (les.all_exact ? "exact at every node\n" : "EXACTNESS FAILURE\n");
    return les.all_exact ? kExitOk : kExitInternal;
}

inline int cmd_spectral(const std::string& input, const std::string& direction, int pages,
                        std::ostream& out, std::ostream& err) {
    std::string bytes = read_file(input);
    DoubleComplex d = double_complex_from_json(Json::parse(bytes));
    ValidationReport v = validate_double(d);
    if (!v.ok()) {
        err << v.summary();
        return kExitInput;
    }
    SweepDirection dir;
    if (direction == "rows")
        dir = SweepDirection::rows_first;
    else if (direction == "cols")
        dir = SweepDirection::cols_first;
    else {
        err << "direction must be rows or cols\n";
        return kExitInput;
    }
    std::vector<SpectralPage> pgs = spectral_pages(d, dir, pages);
    for (const auto& page : pgs) {
        out << "E_" << page.r << (page_differentials_zero(page) ? " (d_r = 0)" : "") << "\n";
        for (int q = d.q_max; q >= d.q_min; --q) {
            out << "  q=" << q << ":";
            for (int p = d.p_min; p <= d.p_max; ++p) {
                auto it = page.dims.find({p, q});
                out << " " << (it == page.dims.end() ? 0 : it->second);
            }
            out << "\n";
        }
    }
    return kExitOk;
}

inline int cmd_seven_term(const std::string& map_file, int vanishing_from, std::ostream& out,
                          std::ostream& err) {
    std::string bytes = read_file(map_file);
    ChainMap f = chain_map_from_json(Json::parse(bytes),
                                     std::filesystem::path(map_file).parent_path().string());
    ValidationReport v = validate_chain_map(f);
    if (!v.ok()) {
        err << v.summary();
        return kExitInput;
    }
    SevenTermReport rep = seven_term_extract(cone_les(f), vanishing_from);
    if (!rep.hypothesis_ok) {
        err << rep.error << "\n";
        return kExitInput;
    }
    out << rep.term_count << "-term sequence (vanishing from degree " << rep.vanishing_from << ")\n";
    out << "  0";
    for (const auto& n : rep.sequence)
        out << " -> H^" << n.degree << "(" << n.name << ")[" << n.dim << "]";
    out << " -> 0\n";
    out << (rep.exact ? "  exact at every node\n" : "  EXACTNESS FAILURE\n");
    for (const auto& iso : rep.isos)
        out << "  H^" << iso.k << "(cone) = H^" << iso.k - 1 << "(target): " << iso.dim_cone << " = "
            << iso.dim_target << (iso.verified ? "  ok" : "  FAIL") << "\n";
    bool all = rep.exact;
    for (const auto& iso : rep.isos)
        all = all && iso.verified;
    return all ? kExitOk : kExitInternal;
}

inline int cmd_catalogue_list(std::ostream& out) {
    for (const auto& e : catalogue_entries())
        out << e.name << "  [" << e.kind << "]  " << e.description << "\n";
    return kExitOk;
}

inline int cmd_catalogue_run(const std::string& which, uint64_t seed, int jobs, std::ostream& out,
                             bool color) {
    std::vector<EntryResult> results = catalogue_run(which, seed, jobs);
    const char* green = color ? "\033[32m" : "";
    const char* red = color ? "\033[31m" : "";
    const char* reset = color ? "\033[0m" : "";
    int failed = 0;
    for (const auto& r : results) {
        out << (r.pass ? green : red) << (r.pass ? "PASS" : "FAIL") << reset << " " << r.name << "\n";
        for (const auto& line : r.lines)
            out << line << "\n";
        if (!r.pass)
            ++failed;
    }
    out << results.size() - failed << "/" << results.size() << " entries passed (seed " << seed << ")\n";
    return failed == 0 ? kExitOk : kExitInput;
}

}  // namespace detail

// The CLI entry point, callable in-process so tests can capture output.
inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err,
                   bool allow_color = false) {
    CLI::App app{"exact-arithmetic workbench for chain-complex cohomology"};
    app.require_subcommand(1);

    std::string input, map_file, out_file;
    std::string kind, rep = "trivial", weights, format = "json", direction;
    int max_degree = -1, pages = 2, vanishing_from = 2;
    bool symplectic = false;
    uint64_t seed = kDefaultSeed;
    int jobs = 1;
    std::string entry_name;

    CLI::App* validate = app.add_subcommand("validate", "validate an input document");
    validate->add_option("--input", input)->required();

    CLI::App* coh = app.add_subcommand("cohomology", "cohomology dimension tables");
    coh->add_option("--kind", kind)->required()->check(CLI::IsMember({"ce", "defm", "poisson", "groupoid"}));
    coh->add_option("--input", input)->required();
    coh->add_option("--rep", rep)->check(CLI::IsMember({"trivial", "adjoint", "coadjoint"}));
    coh->add_option("--max-degree", max_degree);
    coh->add_option("--weights", weights);
    coh->add_option("--out", out_file);
    coh->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));

    CLI::App* cone_cmd = app.add_subcommand("cone", "mapping cone of a chain map");
    cone_cmd->add_option("--map", map_file)->required();
    cone_cmd->add_flag("--symplectic-model", symplectic);

    CLI::App* les_cmd = app.add_subcommand("les", "cone long exact sequence");
    les_cmd->add_option("--map", map_file)->required();

    CLI::App* spec_cmd = app.add_subcommand("spectral", "spectral sequence pages");
    spec_cmd->add_option("--input", input)->required();
    spec_cmd->add_option("--direction", direction)->required()->check(CLI::IsMember({"rows", "cols"}));
    spec_cmd->add_option("--pages", pages)->required();

    CLI::App* seven_cmd = app.add_subcommand("seven-term", "truncated cone sequence under vanishing");
    seven_cmd->add_option("--map", map_file)->required();
    seven_cmd->add_option("--vanishing-from", vanishing_from)->required();

    CLI::App* cat = app.add_subcommand("catalogue", "built-in example catalogue");
    cat->require_subcommand(1);
    CLI::App* cat_list = cat->add_subcommand("list", "list entries");
    CLI::App* cat_run = cat->add_subcommand("run", "run entries and check expected values");
    cat_run->add_option("name", entry_name, "entry name or 'all'")->required();
    cat_run->add_option("--seed", seed);
    cat_run->add_option("--jobs", jobs);

    std::vector<const char*> argv;
    argv.push_back("qchain");
    for (const auto& a : args)
        argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return kExitInput;
    }

    bool color = allow_color && std::getenv("NO_COLOR") == nullptr;
    try {
        if (validate->parsed())
            return detail::cmd_validate(input, out, err);
        if (coh->parsed())
            return detail::cmd_cohomology(kind, input, rep, max_degree, weights, out_file, format, out, err);
        if (cone_cmd->parsed())
            return detail::cmd_cone(map_file, symplectic, out, err);
        if (les_cmd->parsed())
            return detail::cmd_les(map_file, out, err);
        if (spec_cmd->parsed())
            return detail::cmd_spectral(input, direction, pages, out, err);
        if (seven_cmd->parsed())
            return detail::cmd_seven_term(map_file, vanishing_from, out, err);
        if (cat_list->parsed())
            return detail::cmd_catalogue_list(out);
        if (cat_run->parsed())
            return detail::cmd_catalogue_run(entry_name, seed, jobs, out, color);
        err << "no subcommand\n";
        return kExitInput;
    } catch (const Json::parse_error& e) {
        err << "input parse error: " << e.what() << "\n";
        return kExitInput;
    } catch (const invalid_input& e) {
        err << e.what() << "\n";
        return kExitInput;
    } catch (const internal_error& e) {
        err << "internal invariant violation: " << e.what() << "\n";
        return kExitInternal;
    } catch (const std::invalid_argument& e) {
        err << "bad argument: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::out_of_range& e) {
        err << "bad argument: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitInternal;
    }
}

}  // namespace qchain
