#include "grasscoh/render.hpp"

#include <json.hpp>

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace grasscoh {

using nlohmann::json;

std::optional<OutputFormat> parse_format(const std::string& name) {
    if (name == "text") return OutputFormat::text;
    if (name == "md") return OutputFormat::md;
    if (name == "latex") return OutputFormat::latex;
    if (name == "json") return OutputFormat::json;
    return std::nullopt;
}

std::string format_name(OutputFormat format) {
    switch (format) {
        case OutputFormat::text: return "text";
        case OutputFormat::md: return "md";
        case OutputFormat::latex: return "latex";
        case OutputFormat::json: return "json";
    }
    return "text";
}

std::vector<Integer> primary_parts(const std::vector<Integer>& torsion) {
    std::vector<Integer> out;
    for (const auto& t : torsion) {
        Integer rest = t;
        for (Integer p = 2; p * p <= rest; ++p) {
            Integer pk = 1;
            while (rest % p == 0) {
                rest /= p;
                pk *= p;
            }
            if (pk > 1) {
                out.push_back(pk);
            }
        }
        if (rest > 1) {
            out.push_back(rest);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

std::vector<std::string> summands(const AbelianGroup& g, bool primary, const std::string& z, const std::string& sub_open,
                                  const std::string& sub_close) {
    std::vector<std::string> parts;
    for (const auto& t : primary ? primary_parts(g.torsion) : g.torsion) {
        parts.push_back(z + sub_open + t.get_str() + sub_close);
    }
    for (std::size_t i = 0; i < g.free_rank; ++i) {
        parts.push_back(z);
    }
    return parts;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string s;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        s += (i ? sep : "") + parts[i];
    }
    return s;
}

bool shown(int degree, const RenderOptions& options) { return !options.max_degree || degree <= *options.max_degree; }

json torsion_json(const Integer& t) {
    if (t.fits_slong_p()) {
        return json(t.get_si());
    }
    return json(t.get_str());
}

Integer torsion_from_json(const json& v) {
    if (v.is_number_integer()) {
        return Integer(v.get<long>());
    }
    if (v.is_string()) {
        return Integer(v.get<std::string>());
    }
    throw std::invalid_argument("torsion entries must be integers");
}

}  // namespace

std::string group_unicode(const AbelianGroup& g, bool primary) {
    if (g.is_trivial()) {
        return "0";
    }
    return join(summands(g, primary, "Z", "_", ""), " ⊕ ");
}

std::string group_latex(const AbelianGroup& g, bool primary) {
    if (g.is_trivial()) {
        return "0";
    }
    return join(summands(g, primary, "\\mathbb{Z}", "_{", "}"), "\\oplus ");
}

OutputDocument emit_json(const CohomologyTable& table, const RenderOptions& options) {
    json doc;
    doc["space"] = table.space_label;
    doc["n"] = table.n;
    doc["m"] = table.m;
    doc["dimension"] = table.manifold_dimension ? json(*table.manifold_dimension) : json(nullptr);
    json groups = json::object();
    for (const auto& [deg, g] : table.groups) {
        if (g.is_trivial() || !shown(deg, options)) {
            continue;
        }
        json tors = json::array();
        for (const auto& t : g.torsion) {
            tors.push_back(torsion_json(t));
        }
        groups[std::to_string(deg)] = {{"rank", g.free_rank}, {"torsion", tors}};
    }
    doc["groups"] = groups;
    return OutputDocument{OutputFormat::json, doc.dump(2) + "\n"};
}

CohomologyTable parse_table_json(const std::string& body) {
    json doc;
    try {
        doc = json::parse(body);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("groups") || !doc["groups"].is_object()) {
        throw std::invalid_argument("table document needs a \"groups\" object");
    }
    CohomologyTable t;
    t.space_label = doc.value("space", "");
    t.n = doc.value("n", 0);
    t.m = doc.value("m", 0);
    if (doc.contains("dimension") && !doc["dimension"].is_null()) {
        t.manifold_dimension = doc["dimension"].get<int>();
    }
    for (const auto& [key, entry] : doc["groups"].items()) {
        std::size_t used = 0;
        const int deg = std::stoi(key, &used);
        if (used != key.size()) {
            throw std::invalid_argument("group key is not a degree: " + key);
        }
        std::vector<Integer> orders;
        for (const auto& v : entry.at("torsion")) {
            orders.push_back(torsion_from_json(v));
        }
        AbelianGroup g{entry.at("rank").get<std::size_t>(), std::move(orders)};
        if (abelian_group_from_cyclic(g.free_rank, g.torsion) != g) {
            throw std::invalid_argument("torsion list for degree " + key + " is not in invariant-factor form");
        }
        t.set(deg, std::move(g));
    }
    return t;
}

OutputDocument render_table(const CohomologyTable& table, OutputFormat format, const RenderOptions& options) {
    if (format == OutputFormat::json) {
        return emit_json(table, options);
    }
    std::ostringstream os;
    const std::string dim = table.manifold_dimension ? std::to_string(*table.manifold_dimension) : "unknown";
    switch (format) {
        case OutputFormat::text:
            os << table.space_label << "  (dimension " << dim << ")\n";
            for (const auto& [deg, g] : table.groups) {
                if (shown(deg, options)) {
                    os << "H^" << deg << " = " << group_unicode(g, options.primary_decomposition) << "\n";
                }
            }
            os << "all other degrees: 0\n";
            break;
        case OutputFormat::md:
            os << "### " << table.space_label << " (dimension " << dim << ")\n\n";
            os << "| i | H^i |\n|---|---|\n";
            for (const auto& [deg, g] : table.groups) {
                if (shown(deg, options)) {
                    os << "| " << deg << " | " << group_unicode(g, options.primary_decomposition) << " |\n";
                }
            }
            os << "\nAll other degrees are 0.\n";
            break;
        case OutputFormat::latex: {
            std::vector<std::string> degs;
            std::vector<std::string> vals;
            for (const auto& [deg, g] : table.groups) {
                if (shown(deg, options)) {
                    degs.push_back(std::to_string(deg));
                    vals.push_back("$" + group_latex(g, options.primary_decomposition) + "$");
                }
            }
            os << "% " << table.space_label << ", dimension " << dim << "\n";
            os << "\\begin{tabular}{|c|";
            for (std::size_t i = 0; i < degs.size(); ++i) {
                os << "c|";
            }
            os << "}\n  \\hline\n  $i$ & " << join(degs, " & ") << " \\\\\n";
            os << "  $H^i$ & " << join(vals, " & ") << " \\\\ \\hline\n\\end{tabular}\n";
            break;
        }
        case OutputFormat::json:
            break;
    }
    return OutputDocument{format, os.str()};
}

std::string render_duality(const DualityReport& report, OutputFormat format) {
    auto verdict = [](bool ok) { return ok ? "pass" : "FAIL"; };
    if (format == OutputFormat::json) {
        json j = {{"betti_symmetric", report.betti_symmetric},
                  {"torsion_dual", report.torsion_dual},
                  {"euler_characteristic_zero", report.euler_characteristic_zero},
                  {"passed", report.passed()},
                  {"failures", report.failures}};
        return j.dump(2) + "\n";
    }
    const std::string prefix = format == OutputFormat::latex ? "% " : (format == OutputFormat::md ? "- " : "");
    std::ostringstream os;
    if (format == OutputFormat::md) {
        os << "\n";
    }
    os << prefix << "duality: betti symmetry " << verdict(report.betti_symmetric) << "\n";
    os << prefix << "duality: torsion H^i = H^(d-i+1) " << verdict(report.torsion_dual) << "\n";
    os << prefix << "duality: euler characteristic 0 " << verdict(report.euler_characteristic_zero) << "\n";
    for (const auto& f : report.failures) {
        os << prefix << "  " << f << "\n";
    }
    return os.str();
}

}  // namespace grasscoh
