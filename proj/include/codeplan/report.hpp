#ifndef CODEPLAN_REPORT_HPP
#define CODEPLAN_REPORT_HPP

#include <filesystem>
#include <string>

#include <json.hpp>

#include "codeplan/dessim.hpp"
#include "codeplan/scenario_io.hpp"
#include "codeplan/search.hpp"

namespace codeplan {

/// Machine-readable reports. All numbers are serialized by the JSON
/// library's shortest round-trip formatting, so a written report parses
/// back to bit-identical doubles and two identical runs produce
/// byte-identical files.
namespace report {

nlohmann::json enumerate_report(const LoadedScenario& loaded, int jobs);
std::string paths_csv(const nlohmann::json& report);

nlohmann::json search_report(const LoadedScenario& loaded, const SearchResult& result,
                             const std::string& method);
std::string trace_csv(const nlohmann::json& report);

nlohmann::json simulate_report(const LoadedScenario& loaded, const SimConfig& cfg,
                               const SimReport& sim);
std::string sim_csv(const nlohmann::json& report);

/// Writes report.json plus the command's CSV rendering into out_dir
/// (created if missing). csv_name picks the CSV file name.
void write(const nlohmann::json& report, const std::string& csv,
           const std::string& csv_name, const std::filesystem::path& out_dir);

} // namespace report

} // namespace codeplan

#endif // CODEPLAN_REPORT_HPP
