#include "grasscoh/cli.hpp"
#include "grasscoh/gysin.hpp"
#include "grasscoh/render.hpp"

#include <doctest.h>
#include <json.hpp>

#include <regex>
#include <sstream>

using namespace grasscoh;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

// Parses "| i | group |" rows of a Markdown table.
std::map<int, AbelianGroup> groups_from_markdown(const std::string& body) {
    std::map<int, AbelianGroup> out;
    const std::regex row(R"(\| (\d+) \| ([^|]+) \|)");
    for (auto it = std::sregex_iterator(body.begin(), body.end(), row); it != std::sregex_iterator(); ++it) {
        const int deg = std::stoi((*it)[1]);
        std::string cell = (*it)[2];
        std::size_t free_rank = 0;
        std::vector<Integer> orders;
        const std::regex part(R"(Z(_(\d+))?)");
        for (auto p = std::sregex_iterator(cell.begin(), cell.end(), part); p != std::sregex_iterator(); ++p) {
            if ((*p)[2].matched) {
                orders.emplace_back((*p)[2].str());
            } else {
                ++free_rank;
            }
        }
        out[deg] = abelian_group_from_cyclic(free_rank, orders);
    }
    return out;
}

std::map<int, AbelianGroup> groups_from_latex(const std::string& body) {
    std::istringstream in(body);
    std::string line;
    std::vector<std::string> degs;
    std::vector<std::string> cells;
    auto split = [](const std::string& s) {
        std::vector<std::string> parts;
        std::size_t start = s.find('&') + 1;
        for (std::size_t amp; (amp = s.find('&', start)) != std::string::npos; start = amp + 1) {
            parts.push_back(s.substr(start, amp - start));
        }
        parts.push_back(s.substr(start, s.find("\\\\") - start));
        return parts;
    };
    while (std::getline(in, line)) {
        if (line.find("$i$") != std::string::npos) {
            degs = split(line);
        } else if (line.find("$H^i$") != std::string::npos) {
            cells = split(line);
        }
    }
    std::map<int, AbelianGroup> out;
    for (std::size_t k = 0; k < degs.size(); ++k) {
        std::size_t free_rank = 0;
        std::vector<Integer> orders;
        const std::regex part(R"(\\mathbb\{Z\}(_\{(\d+)\})?)");
        for (auto p = std::sregex_iterator(cells[k].begin(), cells[k].end(), part); p != std::sregex_iterator(); ++p) {
            if ((*p)[2].matched) {
                orders.emplace_back((*p)[2].str());
            } else {
                ++free_rank;
            }
        }
        out[std::stoi(degs[k])] = abelian_group_from_cyclic(free_rank, orders);
    }
    return out;
}

}  // namespace

TEST_CASE("hol1 markdown output") {
    const Result r = run({"hol1", "2", "2", "--format", "md"});
    CHECK(r.code == 0);
    CHECK(r.out.find("| 6 | Z_4 ⊕ Z |") != std::string::npos);
    CHECK(r.out.find("| 8 | Z_4 |") != std::string::npos);
    CHECK(r.out.find("| 13 | Z |") != std::string::npos);
    CHECK(groups_from_markdown(r.out) == hol1_table(2, 2).groups);
}

TEST_CASE("ring and poincare commands") {
    const Result ring = run({"ring", "flag", "1", "1", "2", "--format", "text"});
    CHECK(ring.code == 0);
    CHECK(ring.out.find("H^6 = Z{x^3, x^2y, xy^2}") != std::string::npos);
    CHECK(ring.out.find("poincare: 1+2t^2+3t^4+3t^6+2t^8+t^10") != std::string::npos);

    const Result p = run({"poincare", "flag", "1", "1", "2"});
    CHECK(p.code == 0);
    CHECK(p.out == "1+2t^2+3t^4+3t^6+2t^8+t^10\n");

    CHECK(run({"poincare", "gr", "2", "2"}).out == "1+t^2+2t^4+t^6+t^8\n");
    CHECK(run({"poincare", "gr", "2", "2", "--reduced"}).out == "1+t^2+2t^4+t^6+t^8\n");
    CHECK(run({"poincare", "proj", "3"}).out == "1+t^2+t^4+t^6\n");
    CHECK(run({"poincare", "gr", "2", "2", "--max-degree", "4"}).out == "1+t^2+2t^4\n");

    const Result json_ring = run({"ring", "gr", "2", "3", "--format", "json"});
    CHECK(json_ring.code == 0);
    const auto doc = nlohmann::json::parse(json_ring.out);
    CHECK(doc["poincare_text"] == "1+t^2+2t^4+2t^6+2t^8+t^10+t^12");
}

TEST_CASE("euler command") {
    const Result r = run({"euler", "2", "2"});
    CHECK(r.code == 0);
    CHECK(r.out.find("e = 3x^2 + 2xy + y^2") != std::string::npos);
    CHECK(r.out.find("agrees in the ring: yes") != std::string::npos);
    const auto doc = nlohmann::json::parse(run({"euler", "2", "3", "--format", "json"}).out);
    CHECK(doc["euler"] == "4x^3 + 3x^2y + 2xy^2 + y^3");
    CHECK(doc["closed_form_agrees"] == true);
}

TEST_CASE("usage errors exit with 2") {
    for (const std::vector<std::string>& args : std::vector<std::vector<std::string>>{
             {"hol1", "0", "2"},
             {"hol1", "2"},
             {"hol1", "two", "2"},
             {"rat1", "3", "2"},
             {"ring", "cube", "3"},
             {"ring", "gr", "2"},
             {"ring", "flag", "1", "1", "--reduced"},
             {"hol1", "2", "2", "--format", "pdf"},
             {"poincare", "gr", "2", "2", "--check-duality"},
             {"frobnicate"},
             {},
         }) {
        CAPTURE(args.size());
        const Result r = run(args);
        CHECK(r.code == cli::kExitUsage);
        CHECK(r.out.empty());
        CHECK_FALSE(r.err.empty());
    }
}

TEST_CASE("help exits with 0") {
    const Result r = run({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("hol1") != std::string::npos);
}

TEST_CASE("duality report") {
    const Result r = run({"hol1", "2", "3", "--check-duality"});
    CHECK(r.code == 0);
    CHECK(r.out.find("betti symmetry pass") != std::string::npos);
    CHECK(r.out.find("FAIL") == std::string::npos);

    const auto doc = nlohmann::json::parse(run({"rat1", "2", "3", "--check-duality", "--format", "json"}).out);
    CHECK(doc["duality"]["passed"] == true);
}

TEST_CASE("json output is canonical and round-trips") {
    const Result r = run({"hol1", "2", "2", "--format", "json"});
    REQUIRE(r.code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["groups"]["6"] == nlohmann::json({{"rank", 1}, {"torsion", {4}}}));
    CHECK(doc["groups"]["8"] == nlohmann::json({{"rank", 0}, {"torsion", {4}}}));
    CHECK_FALSE(doc["groups"].contains("1"));
    CHECK(doc["dimension"] == 13);

    const CohomologyTable t = hol1_table(2, 3);
    CHECK(parse_table_json(emit_json(t).body) == t);

    CohomologyTable empty;
    empty.space_label = "point";
    const auto e = nlohmann::json::parse(emit_json(empty).body);
    CHECK(e["groups"] == nlohmann::json::object());
    CHECK(e["dimension"].is_null());
    CHECK(parse_table_json(emit_json(empty).body) == empty);

    CHECK_THROWS_AS(parse_table_json("{\"groups\": {\"2\": {\"rank\": 0, \"torsion\": [4, 2]}}}"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_table_json("not json"), std::invalid_argument);
}

TEST_CASE("renderers carry the same groups") {
    for (const auto& [n, m] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {1, 3}, {3, 3}}) {
        const CohomologyTable t = hol1_table(n, m);
        CHECK(groups_from_markdown(render_table(t, OutputFormat::md).body) == t.groups);
        CHECK(groups_from_latex(render_table(t, OutputFormat::latex).body) == t.groups);
        CHECK(parse_table_json(render_table(t, OutputFormat::json).body).groups == t.groups);
    }
}

TEST_CASE("display options") {
    CohomologyTable t;
    t.manifold_dimension = 5;
    t.set(0, AbelianGroup::free(1));
    t.set(2, AbelianGroup{1, {12}});
    t.set(5, AbelianGroup::free(1));
    const std::string primary = render_table(t, OutputFormat::text, {true, std::nullopt}).body;
    CHECK(primary.find("H^2 = Z_3 ⊕ Z_4 ⊕ Z") != std::string::npos);
    const std::string cut = render_table(t, OutputFormat::text, {false, 2}).body;
    CHECK(cut.find("H^2 = Z_12 ⊕ Z") != std::string::npos);
    CHECK(cut.find("H^5") == std::string::npos);
    CHECK(primary_parts({12, 2}) == std::vector<Integer>{2, 3, 4});
    CHECK(group_latex(AbelianGroup{1, {4}}) == "\\mathbb{Z}_{4}\\oplus \\mathbb{Z}");
}

TEST_CASE("output is deterministic") {
    CHECK(run({"hol1", "2", "3", "--format", "latex"}).out == run({"hol1", "2", "3", "--format", "latex"}).out);
}
