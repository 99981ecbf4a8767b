#pragma once

#include "grasscoh/gysin.hpp"

#include <optional>
#include <string>

namespace grasscoh {

enum class OutputFormat { text, md, latex, json };

std::optional<OutputFormat> parse_format(const std::string& name);
std::string format_name(OutputFormat format);

struct OutputDocument {
    OutputFormat format = OutputFormat::text;
    std::string body;
};

struct RenderOptions {
    /// Display torsion as prime-power cyclic summands instead of invariant factors.
    bool primary_decomposition = false;
    /// Only degrees <= max_degree are shown.
    std::optional<int> max_degree;
};

/// Prime-power cyclic orders of a torsion list, e.g. [12] -> [3, 4].
std::vector<Integer> primary_parts(const std::vector<Integer>& torsion);

/// "Z_4 ⊕ Z", "Z ⊕ Z", "0"
std::string group_unicode(const AbelianGroup& g, bool primary = false);
std::string group_latex(const AbelianGroup& g, bool primary = false);

/// {"space":..., "n":..., "m":..., "dimension":..., "groups":{"<deg>":{"rank":r,"torsion":[...]}}}
/// Keys sorted, trivial groups omitted.
OutputDocument emit_json(const CohomologyTable& table, const RenderOptions& options = {});

/// Inverse of emit_json; throws std::invalid_argument on malformed documents.
CohomologyTable parse_table_json(const std::string& body);

OutputDocument render_table(const CohomologyTable& table, OutputFormat format, const RenderOptions& options = {});

std::string render_duality(const DualityReport& report, OutputFormat format);

}  // namespace grasscoh
