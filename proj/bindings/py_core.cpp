// Python bindings for the path-planning core.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "codeplan/dessim.hpp"
#include "codeplan/errors.hpp"
#include "codeplan/predictor.hpp"
#include "codeplan/reward.hpp"
#include "codeplan/scenario_io.hpp"
#include "codeplan/search.hpp"

namespace py = pybind11;
using namespace codeplan;

namespace {

std::string path_repr(const PathSpec& p) {
    return "PathSpec(" + p.to_string() + ")";
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Coordinated DNN inference path planning: enumeration, throughput "
              "modeling, surrogate-guided search and discrete-event validation";

    py::register_exception<SchemaError>(m, "SchemaError");
    py::register_exception<ValidationError>(m, "ValidationError");
    py::register_exception<OracleError>(m, "OracleError");
    py::register_exception<NoAdmissiblePath>(m, "NoAdmissiblePathError");
    py::register_exception<EvaluationBudgetExceeded>(m, "EvaluationBudgetExceededError");
    py::register_exception<EmptyKnownSet>(m, "EmptyKnownSetError");

    py::enum_<ConnectionKind>(m, "ConnectionKind")
        .value("cross", ConnectionKind::cross)
        .value("skip", ConnectionKind::skip);

    py::enum_<Bottleneck>(m, "Bottleneck")
        .value("local", Bottleneck::local)
        .value("host", Bottleneck::host);

    py::enum_<BootstrapRule>(m, "BootstrapRule")
        .value("first_admissible", BootstrapRule::first_admissible)
        .value("cheapest_path", BootstrapRule::cheapest_path);

    py::enum_<Termination>(m, "Termination")
        .value("converged", Termination::converged)
        .value("exhausted", Termination::exhausted)
        .value("no_admissible_path", Termination::no_admissible_path);

    py::class_<BlockProfile>(m, "BlockProfile")
        .def(py::init<int, double, double>(), py::arg("index"), py::arg("fixed_cost_a"),
             py::arg("per_sample_cost_c"))
        .def_readwrite("index", &BlockProfile::index)
        .def_readwrite("fixed_cost_a", &BlockProfile::fixed_cost_a)
        .def_readwrite("per_sample_cost_c", &BlockProfile::per_sample_cost_c)
        .def("time_for", &BlockProfile::time_for, py::arg("samples"));

    py::class_<LinkProfile>(m, "LinkProfile")
        .def(py::init<>())
        .def_readwrite("fixed_cost_a", &LinkProfile::fixed_cost_a)
        .def_readwrite("per_sample_cost_c", &LinkProfile::per_sample_cost_c)
        .def("time_for", &LinkProfile::time_for, py::arg("samples"));

    py::class_<ServiceProfile>(m, "ServiceProfile")
        .def(py::init<>())
        .def_readwrite("service_id", &ServiceProfile::service_id)
        .def_readwrite("blocks", &ServiceProfile::blocks)
        .def_readwrite("batch_size", &ServiceProfile::batch_size)
        .def_readwrite("base_accuracy", &ServiceProfile::base_accuracy)
        .def_property_readonly("block_count", &ServiceProfile::block_count);

    py::class_<PathSpec>(m, "PathSpec")
        .def(py::init<>())
        .def(py::init<int, int, int, int, ConnectionKind>(), py::arg("lout"),
             py::arg("hin"), py::arg("hout"), py::arg("lin"), py::arg("kind"))
        .def_readwrite("lout", &PathSpec::lout)
        .def_readwrite("hin", &PathSpec::hin)
        .def_readwrite("hout", &PathSpec::hout)
        .def_readwrite("lin", &PathSpec::lin)
        .def_readwrite("kind", &PathSpec::kind)
        .def_property_readonly("r", &PathSpec::r)
        .def("__eq__", [](const PathSpec& a, const PathSpec& b) { return a == b; })
        .def("__repr__", &path_repr);

    py::class_<Scenario>(m, "Scenario")
        .def(py::init<>())
        .def_readwrite("local", &Scenario::local)
        .def_readwrite("host", &Scenario::host)
        .def_readwrite("entry_link", &Scenario::entry_link)
        .def_readwrite("exit_link", &Scenario::exit_link)
        .def_readwrite("skip_link", &Scenario::skip_link)
        .def_readwrite("offload_count", &Scenario::offload_count)
        .def_readwrite("n_f", &Scenario::n_f)
        .def("validate", &Scenario::validate);

    m.def("enumerate_paths", &enumerate_paths, py::arg("scenario"));
    m.def("path_count", &path_count, py::arg("local_blocks"), py::arg("host_blocks"));
    m.def("path_distance", &path_distance, py::arg("a"), py::arg("b"), py::arg("n_f"));
    m.def("validate_path", &validate_path, py::arg("scenario"), py::arg("path"));

    py::class_<BaselineMetrics>(m, "BaselineMetrics")
        .def_readonly("th_0", &BaselineMetrics::th_0)
        .def_readonly("t_0", &BaselineMetrics::t_0)
        .def_readonly("a_0", &BaselineMetrics::a_0);

    py::class_<PathThroughput>(m, "PathThroughput")
        .def_readonly("th_local", &PathThroughput::th_local)
        .def_readonly("th_host", &PathThroughput::th_host)
        .def_readonly("th_total", &PathThroughput::th_total)
        .def_readonly("t_local_cycle", &PathThroughput::t_local_cycle)
        .def_readonly("t_host_cycle", &PathThroughput::t_host_cycle)
        .def_readonly("bottleneck", &PathThroughput::bottleneck);

    m.def("baseline_throughput", &baseline_throughput, py::arg("scenario"));
    m.def("path_throughput", &path_throughput, py::arg("scenario"), py::arg("path"));
    m.def("admissible_paths", &admissible_paths, py::arg("scenario"));

    py::class_<AccuracyOracle>(m, "AccuracyOracle")
        .def("evaluate", &AccuracyOracle::evaluate, py::arg("path"), py::arg("scenario"));

    py::class_<TableOracle, AccuracyOracle>(m, "TableOracle")
        .def(py::init<>())
        .def("insert", &TableOracle::insert, py::arg("path"), py::arg("accuracy"))
        .def("set_default", &TableOracle::set_default, py::arg("accuracy"))
        .def_property_readonly("size", &TableOracle::size);

    py::class_<SyntheticOracle::Config>(m, "SyntheticConfig")
        .def(py::init<>())
        .def_readwrite("base", &SyntheticOracle::Config::base)
        .def_readwrite("skip_penalty_alpha", &SyntheticOracle::Config::skip_penalty_alpha)
        .def_readwrite("host_recovery_beta", &SyntheticOracle::Config::host_recovery_beta)
        .def_readwrite("noise_sigma", &SyntheticOracle::Config::noise_sigma)
        .def_readwrite("seed", &SyntheticOracle::Config::seed);

    py::class_<SyntheticOracle, AccuracyOracle>(m, "SyntheticOracle")
        .def(py::init<SyntheticOracle::Config>(), py::arg("config"));

    py::class_<ExternalOracle, AccuracyOracle>(m, "ExternalOracle")
        .def(py::init<std::vector<std::string>, double, std::string>(), py::arg("command"),
             py::arg("timeout_seconds") = ExternalOracle::kDefaultTimeoutSeconds,
             py::arg("scenario_label") = std::string())
        .def_property_readonly("timeout_seconds", &ExternalOracle::timeout_seconds);

    py::class_<EvaluatedPath>(m, "EvaluatedPath")
        .def(py::init<PathSpec, double>(), py::arg("path"), py::arg("accuracy"))
        .def_readwrite("path", &EvaluatedPath::path)
        .def_readwrite("accuracy", &EvaluatedPath::accuracy);

    m.def("predict_accuracy", &predict_accuracy, py::arg("candidate"), py::arg("known"),
          py::arg("n_f"));
    m.def("predict_average_accuracy", &predict_average_accuracy, py::arg("accuracy"),
          py::arg("throughput"), py::arg("baseline"));

    py::class_<RewardConfig>(m, "RewardConfig")
        .def(py::init<double, double>(), py::arg("k") = 100.0, py::arg("a_min") = 0.8)
        .def_readwrite("k", &RewardConfig::k)
        .def_readwrite("a_min", &RewardConfig::a_min);

    py::class_<PathMetrics>(m, "PathMetrics")
        .def_readonly("path", &PathMetrics::path)
        .def_readonly("throughput", &PathMetrics::throughput)
        .def_readonly("a_p", &PathMetrics::a_p)
        .def_readonly("a_av", &PathMetrics::a_av)
        .def_readonly("reward", &PathMetrics::reward);

    m.def("accuracy_reward", &accuracy_reward, py::arg("a_av"), py::arg("config"));
    m.def("throughput_reward", &throughput_reward, py::arg("th_p"), py::arg("th_0"));
    m.def("reward", &reward, py::arg("path"), py::arg("throughput"), py::arg("a_p"),
          py::arg("baseline"), py::arg("config"));

    py::class_<SearchConfig>(m, "SearchConfig")
        .def(py::init<>())
        .def_readwrite("reward", &SearchConfig::reward)
        .def_readwrite("epsilon", &SearchConfig::epsilon)
        .def_readwrite("c_stop", &SearchConfig::c_stop)
        .def_readwrite("bootstrap", &SearchConfig::bootstrap)
        .def_readwrite("max_stages", &SearchConfig::max_stages)
        .def_readwrite("rebuild_predictions", &SearchConfig::rebuild_predictions)
        .def_readwrite("max_evaluations", &SearchConfig::max_evaluations);

    py::class_<StageRecord>(m, "StageRecord")
        .def_readonly("stage", &StageRecord::stage)
        .def_readonly("predicted_best", &StageRecord::predicted_best)
        .def_readonly("predicted_reward", &StageRecord::predicted_reward)
        .def_readonly("true_accuracy", &StageRecord::true_accuracy)
        .def_readonly("true_reward", &StageRecord::true_reward)
        .def_readonly("c_after", &StageRecord::c_after);

    py::class_<SearchResult>(m, "SearchResult")
        .def_readonly("best_path", &SearchResult::best_path)
        .def_readonly("best_metrics", &SearchResult::best_metrics)
        .def_readonly("stages_run", &SearchResult::stages_run)
        .def_readonly("termination", &SearchResult::termination)
        .def_readonly("trace", &SearchResult::trace)
        .def_readonly("evaluated", &SearchResult::evaluated);

    m.def("code_search", &code_search, py::arg("scenario"), py::arg("oracle"),
          py::arg("config"), py::call_guard<py::gil_scoped_release>());
    m.def("brute_force", &brute_force, py::arg("scenario"), py::arg("oracle"),
          py::arg("config"), py::call_guard<py::gil_scoped_release>());

    py::class_<SimConfig>(m, "SimConfig")
        .def(py::init<>())
        .def_readwrite("scenario", &SimConfig::scenario)
        .def_readwrite("path", &SimConfig::path)
        .def_readwrite("n_batches", &SimConfig::n_batches)
        .def_readwrite("warmup_batches", &SimConfig::warmup_batches);

    py::class_<SimReport>(m, "SimReport")
        .def_readonly("measured_th_total", &SimReport::measured_th_total)
        .def_readonly("measured_th_local", &SimReport::measured_th_local)
        .def_readonly("measured_th_host", &SimReport::measured_th_host)
        .def_readonly("host_own_throughput", &SimReport::host_own_throughput)
        .def_readonly("local_busy_fraction", &SimReport::local_busy_fraction)
        .def_readonly("host_busy_fraction", &SimReport::host_busy_fraction)
        .def_readonly("entry_link_busy_fraction", &SimReport::entry_link_busy_fraction)
        .def_readonly("exit_link_busy_fraction", &SimReport::exit_link_busy_fraction)
        .def_readonly("skip_link_busy_fraction", &SimReport::skip_link_busy_fraction)
        .def_readonly("completed_batches", &SimReport::completed_batches)
        .def_readonly("samples_admitted", &SimReport::samples_admitted)
        .def_readonly("samples_completed", &SimReport::samples_completed)
        .def_readonly("riders_in_flight", &SimReport::riders_in_flight)
        .def_readonly("event_count", &SimReport::event_count)
        .def_readonly("duration", &SimReport::duration);

    m.def(
        "simulate", [](const SimConfig& cfg) { return simulate(cfg); }, py::arg("config"),
        py::call_guard<py::gil_scoped_release>());

    py::class_<LoadedScenario>(m, "LoadedScenario")
        .def_readonly("scenario", &LoadedScenario::scenario)
        .def_readonly("search", &LoadedScenario::search)
        .def_readonly("scenario_id", &LoadedScenario::scenario_id);

    m.def("load_scenario_file", &load_scenario_file, py::arg("file"),
          "Load and schema-validate a scenario JSON document");
    m.def(
        "make_oracle",
        [](const LoadedScenario& loaded, std::optional<std::uint64_t> seed) {
            return make_oracle(loaded, seed);
        },
        py::arg("loaded"), py::arg("seed") = std::nullopt,
        "Build the oracle configured in the scenario document");
}
