#include "grasscoh/cli.hpp"

#include "grasscoh/char_classes.hpp"
#include "grasscoh/gysin.hpp"
#include "grasscoh/quotient_ring.hpp"
#include "grasscoh/render.hpp"
#include "grasscoh/spaces.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace grasscoh::cli {

namespace {

using nlohmann::json;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string format = "text";
    int max_degree = -1;
    bool check_duality = false;
    bool reduced = false;
    bool primary = false;

    OutputFormat output_format() const { return *parse_format(format); }
    std::optional<int> max() const { return max_degree >= 0 ? std::optional<int>(max_degree) : std::nullopt; }
};

int parse_positive(const std::string& word, const std::string& what) {
    int value = 0;
    const char* end = word.data() + word.size();
    auto [ptr, ec] = std::from_chars(word.data(), end, value);
    if (ec != std::errc() || ptr != end) {
        throw UsageError(what + " must be an integer, got '" + word + "'");
    }
    if (value < 1) {
        throw UsageError(what + " must be positive, got " + word);
    }
    return value;
}

struct Space {
    std::string label;
    PresentedGradedRing ring;
    std::map<std::string, std::string> aliases;
    int complex_dimension = 0;
};

Space select_space(const std::vector<std::string>& words, const Options& opt) {
    if (words.empty()) {
        throw UsageError("missing space: expected 'gr N M', 'flag A1 ... AK' or 'proj M'");
    }
    const std::string& kind = words[0];
    std::vector<int> nums;
    for (std::size_t i = 1; i < words.size(); ++i) {
        nums.push_back(parse_positive(words[i], kind + " parameter"));
    }
    const std::optional<int> trunc = opt.max();
    if (kind == "gr") {
        if (nums.size() != 2) {
            throw UsageError("usage: gr N M");
        }
        const int n = nums[0];
        const int m = nums[1];
        std::ostringstream label;
        label << "Gr(" << n << "," << m << ")";
        if (opt.reduced) {
            std::map<std::string, std::string> aliases;
            for (int i = 1; i <= n; ++i) {
                aliases[chern_generator_name(1, i)] = "c_" + std::to_string(i);
            }
            return Space{label.str() + " [reduced]", grassmannian_reduced_presentation(n, m, trunc), aliases, n * m};
        }
        FlagSpec spec{{n, m}};
        return Space{label.str(), grassmannian_ring(n, m, trunc), display_aliases(spec), n * m};
    }
    if (opt.reduced) {
        throw UsageError("--reduced applies only to 'gr N M'");
    }
    if (kind == "flag") {
        if (nums.empty()) {
            throw UsageError("usage: flag A1 ... AK");
        }
        FlagSpec spec{nums};
        std::ostringstream label;
        label << "Flag[";
        for (std::size_t i = 0; i < nums.size(); ++i) {
            label << (i ? "," : "") << nums[i];
        }
        label << "]";
        return Space{label.str(), partial_flag_ring(spec, trunc), display_aliases(spec), spec.complex_dimension()};
    }
    if (kind == "proj") {
        if (nums.size() != 1) {
            throw UsageError("usage: proj M");
        }
        FlagSpec spec{{1, nums[0]}};
        return Space{"P^" + std::to_string(nums[0]), projective_space_ring(nums[0], trunc), display_aliases(spec),
                     nums[0]};
    }
    throw UsageError("unknown space '" + kind + "': expected gr, flag or proj");
}

std::pair<int, int> parse_pair(const std::vector<std::string>& words, const std::string& command) {
    if (words.size() != 2) {
        throw UsageError("usage: " + command + " N M");
    }
    return {parse_positive(words[0], "N"), parse_positive(words[1], "M")};
}

std::string poly(const GradedPolynomial& p, const std::map<std::string, std::string>& aliases) {
    return to_string(p, aliases);
}

std::string element_text(const GradedPolynomial& p, const std::map<std::string, std::string>& aliases) {
    return p.terms().size() > 1 ? "(" + to_string(p, aliases) + ")" : to_string(p, aliases);
}

std::string basis_text(const DegreeBasis& b, const std::map<std::string, std::string>& aliases) {
    if (b.representatives.size() != b.free_rank) {
        return "rank " + std::to_string(b.free_rank);
    }
    std::string s = "Z{";
    for (std::size_t k = 0; k < b.representatives.size(); ++k) {
        s += (k ? ", " : "") + element_text(b.representatives[k], aliases);
    }
    return s + "}";
}

std::string latex_poincare(const std::vector<std::size_t>& coeffs) {
    std::string s = poincare_to_string(coeffs);
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '^') {
            std::size_t j = i + 1;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) {
                ++j;
            }
            out += "^{" + s.substr(i + 1, j - i - 1) + "}";
            i = j - 1;
        } else {
            out += s[i];
        }
    }
    return out;
}

int cmd_ring(const Space& space, const Options& opt, std::ostream& out) {
    const auto& ring = space.ring;
    const auto& gens = *ring.generators();
    const auto& al = space.aliases;
    const OutputFormat fmt = opt.output_format();

    std::vector<std::size_t> coeffs;
    std::string poincare_error;
    try {
        coeffs = poincare_polynomial(ring);
    } catch (const PresentationError& e) {
        poincare_error = e.what();
    }

    if (fmt == OutputFormat::json) {
        json doc;
        doc["space"] = space.label;
        doc["complex_dimension"] = space.complex_dimension;
        doc["truncation_degree"] = ring.truncation_degree();
        json g = json::array();
        for (const auto& s : gens) {
            auto it = al.find(s.name);
            g.push_back({{"name", s.name}, {"degree", s.degree}, {"alias", it == al.end() ? s.name : it->second}});
        }
        doc["generators"] = g;
        doc["relations"] = json::array();
        for (const auto& r : ring.relations()) {
            doc["relations"].push_back(poly(r, al));
        }
        doc["eliminated"] = json::object();
        for (std::size_t i = 0; i < gens.size(); ++i) {
            if (ring.elimination(i)) {
                doc["eliminated"][gens[i].name] = poly(*ring.elimination(i), al);
            }
        }
        doc["core_relations"] = json::array();
        for (const auto& r : ring.core_relations()) {
            doc["core_relations"].push_back(poly(r, al));
        }
        json bases = json::object();
        for (int d = 0; d <= ring.truncation_degree(); d += 2) {
            const DegreeBasis& b = degree_basis(ring, d);
            json entry = {{"rank", b.free_rank}, {"basis", json::array()}, {"torsion", json::array()}};
            for (const auto& r : b.representatives) {
                entry["basis"].push_back(to_string(r, al));
            }
            for (const auto& t : b.torsion_report) {
                entry["torsion"].push_back(t.fits_slong_p() ? json(t.get_si()) : json(t.get_str()));
            }
            bases[std::to_string(d)] = entry;
        }
        doc["bases"] = bases;
        if (poincare_error.empty()) {
            doc["poincare"] = coeffs;
            doc["poincare_text"] = poincare_to_string(coeffs);
        } else {
            doc["poincare"] = nullptr;
            doc["error"] = poincare_error;
        }
        out << doc.dump(2) << "\n";
        return poincare_error.empty() ? kExitOk : kExitFailure;
    }

    const bool md = fmt == OutputFormat::md;
    const bool tex = fmt == OutputFormat::latex;
    const std::string item = md ? "- " : (tex ? "% " : "  ");
    auto heading = [&](const std::string& h) { out << (md ? "\n**" + h + "**\n\n" : (tex ? "% " + h + "\n" : h + "\n")); };

    out << (md ? "### " : (tex ? "% " : "space: ")) << space.label << "\n";
    out << (tex ? "% " : "") << (md ? "\n" : "") << "complex dimension " << space.complex_dimension
        << ", truncation degree " << ring.truncation_degree() << "\n";
    heading("generators");
    for (const auto& s : gens) {
        auto it = al.find(s.name);
        out << item << (it == al.end() ? s.name : it->second + " (" + s.name + ")") << ", degree " << s.degree << "\n";
    }
    heading("relations");
    for (const auto& r : ring.relations()) {
        out << item << poly(r, al) << "\n";
    }
    bool any_eliminated = false;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        if (ring.elimination(i)) {
            if (!any_eliminated) {
                heading("eliminated generators");
                any_eliminated = true;
            }
            auto it = al.find(gens[i].name);
            out << item << (it == al.end() ? gens[i].name : it->second) << " = " << poly(*ring.elimination(i), al)
                << "\n";
        }
    }
    heading("core relations");
    for (const auto& r : ring.core_relations()) {
        out << item << poly(r, al) << "\n";
    }
    heading("graded pieces");
    for (int d = 0; d <= ring.truncation_degree(); d += 2) {
        const DegreeBasis& b = degree_basis(ring, d);
        out << item << "H^" << d << " = " << basis_text(b, al);
        for (const auto& t : b.torsion_report) {
            out << " + Z_" << t;
        }
        out << "\n";
    }
    if (!poincare_error.empty()) {
        out << (tex ? "% " : "") << "poincare: unavailable (" << poincare_error << ")\n";
        return kExitFailure;
    }
    if (tex) {
        out << "$P(t) = " << latex_poincare(coeffs) << "$\n";
    } else {
        out << (md ? "\n" : "") << "poincare: " << poincare_to_string(coeffs) << "\n";
    }
    return kExitOk;
}

int cmd_poincare(const Space& space, const Options& opt, std::ostream& out) {
    const auto coeffs = poincare_polynomial(space.ring);
    switch (opt.output_format()) {
        case OutputFormat::json: {
            json doc = {{"space", space.label}, {"poincare", coeffs}, {"text", poincare_to_string(coeffs)}};
            out << doc.dump(2) << "\n";
            break;
        }
        case OutputFormat::latex:
            out << "$" << latex_poincare(coeffs) << "$\n";
            break;
        default:
            out << poincare_to_string(coeffs) << "\n";
    }
    return kExitOk;
}

int cmd_euler(int n, int m, const Options& opt, std::ostream& out) {
    Hol1Base base = hol1_base(n, m);
    const auto al = display_aliases(base.spec);
    const GradedPolynomial e = euler_class_hol1(n, m);
    const GradedPolynomial nf = normal_form(base.ring, e);
    std::optional<GradedPolynomial> closed;
    bool agrees = false;
    if (n == 2) {
        closed = euler_closed_form_g2(m, base.ring.generators(), chern_generator_name(1, 1), chern_generator_name(2, 1));
        agrees = reduce(base.ring, *closed) == reduce(base.ring, e);
    }
    std::ostringstream label;
    label << "Hol1(Gr(" << n << "," << m << "))";
    const OutputFormat fmt = opt.output_format();
    if (fmt == OutputFormat::json) {
        json doc = {{"space", label.str()}, {"n", n}, {"m", m}, {"degree", 2 * m}, {"euler", poly(e, al)},
                    {"normal_form", poly(nf, al)}};
        json coords = json::array();
        for (const auto& c : reduce(base.ring, e)) {
            coords.push_back(c.get_str());
        }
        doc["coordinates"] = coords;
        if (closed) {
            doc["closed_form"] = poly(*closed, al);
            doc["closed_form_agrees"] = agrees;
        }
        out << doc.dump(2) << "\n";
        return kExitOk;
    }
    const std::string item = fmt == OutputFormat::md ? "- " : (fmt == OutputFormat::latex ? "% " : "");
    out << item << "Euler class of the " << label.str() << " sphere bundle, degree " << 2 * m << "\n";
    out << item << "e = " << poly(e, al) << "\n";
    out << item << "normal form: " << poly(nf, al) << "\n";
    if (closed) {
        out << item << "d/dx sum_{i+j=" << m + 1 << "} x^i y^j = " << poly(*closed, al) << "\n";
        out << item << "agrees in the ring: " << (agrees ? "yes" : "no") << "\n";
    }
    return kExitOk;
}

int cmd_table(const CohomologyTable& table, const Options& opt, std::ostream& out) {
    RenderOptions ro{opt.primary, opt.max()};
    const OutputFormat fmt = opt.output_format();
    std::optional<DualityReport> report;
    if (opt.check_duality) {
        report = verify_duality(table);
    }
    if (fmt == OutputFormat::json) {
        json doc = json::parse(emit_json(table, ro).body);
        if (report) {
            doc["duality"] = json::parse(render_duality(*report, fmt));
        }
        out << doc.dump(2) << "\n";
    } else {
        out << render_table(table, fmt, ro).body;
        if (report) {
            out << render_duality(*report, fmt);
        }
    }
    return report && !report->passed() ? kExitFailure : kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Integral cohomology of Grassmannians, flag manifolds and spaces of linear holomorphic maps",
                 "grasscoh"};
    app.require_subcommand(1);
    Options opt;
    std::vector<std::string> words;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--format", opt.format, "Output format")
            ->check(CLI::IsMember({"text", "md", "latex", "json"}));
        sub->add_option("--max-degree", opt.max_degree,
                        "Truncation degree for rings; highest degree shown for tables");
        sub->add_flag("--check-duality", opt.check_duality, "Append a Poincare duality report (hol1, rat1)");
        sub->add_flag("--reduced", opt.reduced, "Use the reduced presentation for gr N M");
        sub->add_flag("--primary", opt.primary, "Show torsion as prime-power summands");
    };

    CLI::App* ring = app.add_subcommand("ring", "Presentation, graded bases and Poincare polynomial of a space");
    CLI::App* poincare = app.add_subcommand("poincare", "Poincare polynomial of a space");
    CLI::App* euler = app.add_subcommand("euler", "Euler class of the Hol1(Gr(N,M)) sphere bundle");
    CLI::App* hol1 = app.add_subcommand("hol1", "Integral cohomology of Hol1(Gr(N,M))");
    CLI::App* rat1 = app.add_subcommand("rat1", "Integral cohomology of Rat1(Gr(N,M)), N <= M");
    ring->add_option("space", words, "gr N M | flag A1 ... AK | proj M")->required();
    poincare->add_option("space", words, "gr N M | flag A1 ... AK | proj M")->required();
    for (CLI::App* sub : {euler, hol1, rat1}) {
        sub->add_option("params", words, "N M")->required();
    }
    for (CLI::App* sub : {ring, poincare, euler, hol1, rat1}) {
        add_common(sub);
    }

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "grasscoh: " << e.what() << "\n" << "run 'grasscoh --help' for usage\n";
        return kExitUsage;
    }

    if (opt.check_duality && !hol1->parsed() && !rat1->parsed()) {
        err << "grasscoh: --check-duality applies only to hol1 and rat1\n";
        return kExitUsage;
    }

    try {
        if (ring->parsed()) {
            return cmd_ring(select_space(words, opt), opt, out);
        }
        if (poincare->parsed()) {
            return cmd_poincare(select_space(words, opt), opt, out);
        }
        if (opt.reduced) {
            throw UsageError("--reduced applies only to ring and poincare");
        }
        const auto [n, m] = parse_pair(words, euler->parsed() ? "euler" : (hol1->parsed() ? "hol1" : "rat1"));
        if (euler->parsed()) {
            return cmd_euler(n, m, opt, out);
        }
        if (hol1->parsed()) {
            return cmd_table(hol1_table(n, m), opt, out);
        }
        if (n > m) {
            throw UsageError("rat1 needs N <= M");
        }
        return cmd_table(rat1_table(n, m), opt, out);
    } catch (const UsageError& e) {
        err << "grasscoh: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "grasscoh: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "grasscoh: internal error: " << e.what() << "\n";
        return kExitFailure;
    }
}

}  // namespace grasscoh::cli
