#ifndef CODEPLAN_SCENARIO_IO_HPP
#define CODEPLAN_SCENARIO_IO_HPP

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "codeplan/model.hpp"
#include "codeplan/oracle.hpp"
#include "codeplan/search.hpp"

namespace codeplan {

/// Oracle configuration as read from a scenario document; materialized
/// into an AccuracyOracle by make_oracle.
struct OracleSpec {
    enum class Type { none, table, synthetic, external };
    Type type = Type::none;

    // table
    TableOracle table;
    // synthetic
    SyntheticOracle::Config synthetic;
    // external
    std::vector<std::string> command;
    double timeout_seconds = ExternalOracle::kDefaultTimeoutSeconds;
};

struct LoadedScenario {
    Scenario scenario;
    SearchConfig search;
    OracleSpec oracle;
    std::string scenario_id;
};

/// Parses and schema-validates a scenario document. Unknown keys, type
/// mismatches, and out-of-range values raise SchemaError naming the
/// offending JSON path. base_dir resolves a table oracle's "file"
/// reference.
LoadedScenario parse_scenario(const nlohmann::json& doc, std::string scenario_id,
                              const std::filesystem::path& base_dir = {});

/// Loads a scenario from disk; the file stem becomes the scenario id.
LoadedScenario load_scenario_file(const std::filesystem::path& file);

/// Builds the configured oracle. seed_override replaces a synthetic
/// oracle's seed; the PLAN_ORACLE_TIMEOUT environment variable (seconds)
/// overrides an external oracle's timeout. Throws SchemaError when no
/// oracle is configured.
std::unique_ptr<AccuracyOracle> make_oracle(const LoadedScenario& loaded,
                                            std::optional<std::uint64_t> seed_override = {});

/// Table oracle fixture format: either a bare JSON array of
/// {"r_p":[...],"kind":"...","accuracy":x} or an object
/// {"entries":[...],"default":x}.
TableOracle parse_table_fixture(const nlohmann::json& doc, const std::string& where);
nlohmann::json table_fixture_json(const TableOracle& oracle);

} // namespace codeplan

#endif // CODEPLAN_SCENARIO_IO_HPP
