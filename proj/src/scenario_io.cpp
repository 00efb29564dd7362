#include "codeplan/scenario_io.hpp"

#include <cstdlib>
#include <fstream>
#include <initializer_list>

#include "codeplan/errors.hpp"

namespace codeplan {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw SchemaError("scenario schema: " + path + ": " + what);
}

const json& expect_object(const json& j, const std::string& path) {
    if (!j.is_object()) {
        fail(path, "expected an object");
    }
    return j;
}

void reject_unknown_keys(const json& j, const std::string& path,
                         std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : j.items()) {
        bool known = false;
        for (const char* a : allowed) {
            if (key == a) {
                known = true;
                break;
            }
        }
        if (!known) {
            fail(path + "/" + key, "unknown key");
        }
    }
}

double get_number(const json& j, const std::string& path) {
    if (!j.is_number()) {
        fail(path, "expected a number");
    }
    return j.get<double>();
}

int get_int(const json& j, const std::string& path) {
    if (!j.is_number_integer()) {
        fail(path, "expected an integer");
    }
    return j.get<int>();
}

bool get_bool(const json& j, const std::string& path) {
    if (!j.is_boolean()) {
        fail(path, "expected a boolean");
    }
    return j.get<bool>();
}

std::string get_string(const json& j, const std::string& path) {
    if (!j.is_string()) {
        fail(path, "expected a string");
    }
    return j.get<std::string>();
}

double get_fraction(const json& j, const std::string& path) {
    const double v = get_number(j, path);
    if (v < 0.0 || v > 1.0) {
        fail(path, "expected a fraction in [0,1]");
    }
    return v;
}

ServiceProfile parse_service(const json& j, const std::string& path, std::string id,
                             bool accuracy_required) {
    expect_object(j, path);
    reject_unknown_keys(j, path, {"blocks", "batch_size", "base_accuracy"});
    if (!j.contains("blocks")) {
        fail(path + "/blocks", "required");
    }
    if (!j["blocks"].is_array() || j["blocks"].empty()) {
        fail(path + "/blocks", "expected a non-empty array");
    }
    ServiceProfile svc;
    svc.service_id = std::move(id);
    int index = 0;
    for (const auto& bj : j["blocks"]) {
        const std::string bpath = path + "/blocks/" + std::to_string(index);
        expect_object(bj, bpath);
        reject_unknown_keys(bj, bpath, {"a", "c"});
        if (!bj.contains("a") || !bj.contains("c")) {
            fail(bpath, "block requires both \"a\" and \"c\"");
        }
        BlockProfile block;
        block.index = index;
        block.fixed_cost_a = get_number(bj["a"], bpath + "/a");
        block.per_sample_cost_c = get_number(bj["c"], bpath + "/c");
        if (block.fixed_cost_a < 0.0) {
            fail(bpath + "/a", "must be >= 0");
        }
        if (!(block.per_sample_cost_c > 0.0)) {
            fail(bpath + "/c", "must be > 0");
        }
        svc.blocks.push_back(block);
        index += 1;
    }
    if (!j.contains("batch_size")) {
        fail(path + "/batch_size", "required");
    }
    svc.batch_size = get_int(j["batch_size"], path + "/batch_size");
    if (svc.batch_size < 1) {
        fail(path + "/batch_size", "must be >= 1");
    }
    if (j.contains("base_accuracy")) {
        svc.base_accuracy = get_fraction(j["base_accuracy"], path + "/base_accuracy");
    } else if (accuracy_required) {
        fail(path + "/base_accuracy", "required");
    }
    return svc;
}

LinkProfile parse_link(const json& j, const std::string& path, LinkPlacement placement) {
    expect_object(j, path);
    reject_unknown_keys(j, path, {"a", "c"});
    LinkProfile link;
    link.placement = placement;
    if (j.contains("a")) {
        link.fixed_cost_a = get_number(j["a"], path + "/a");
        if (link.fixed_cost_a < 0.0) {
            fail(path + "/a", "must be >= 0");
        }
    }
    if (j.contains("c")) {
        link.per_sample_cost_c = get_number(j["c"], path + "/c");
        if (link.per_sample_cost_c < 0.0) {
            fail(path + "/c", "must be >= 0");
        }
    }
    return link;
}

SearchConfig parse_search(const json& j, const std::string& path) {
    SearchConfig cfg;
    if (j.is_null()) {
        return cfg;
    }
    expect_object(j, path);
    reject_unknown_keys(j, path,
                        {"k", "a_min", "epsilon", "c_stop", "bootstrap", "rebuild_q"});
    if (j.contains("k")) {
        cfg.reward.k = get_number(j["k"], path + "/k");
        if (!(cfg.reward.k > 0.0)) {
            fail(path + "/k", "must be > 0");
        }
    }
    if (j.contains("a_min")) {
        cfg.reward.a_min = get_number(j["a_min"], path + "/a_min");
        if (!(cfg.reward.a_min > 0.0 && cfg.reward.a_min < 1.0)) {
            fail(path + "/a_min", "must lie in (0,1)");
        }
    }
    if (j.contains("epsilon")) {
        cfg.epsilon = get_number(j["epsilon"], path + "/epsilon");
        if (cfg.epsilon < 0.0) {
            fail(path + "/epsilon", "must be >= 0");
        }
    }
    if (j.contains("c_stop")) {
        cfg.c_stop = get_int(j["c_stop"], path + "/c_stop");
        if (cfg.c_stop < 1) {
            fail(path + "/c_stop", "must be >= 1");
        }
    }
    if (j.contains("bootstrap")) {
        const std::string rule = get_string(j["bootstrap"], path + "/bootstrap");
        if (rule == "first_admissible") {
            cfg.bootstrap = BootstrapRule::first_admissible;
        } else if (rule == "cheapest_path") {
            cfg.bootstrap = BootstrapRule::cheapest_path;
        } else {
            fail(path + "/bootstrap", "expected \"first_admissible\" or \"cheapest_path\"");
        }
    }
    if (j.contains("rebuild_q")) {
        cfg.rebuild_predictions = get_bool(j["rebuild_q"], path + "/rebuild_q");
    }
    return cfg;
}

PathSpec parse_entry_path(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 4) {
        fail(path, "expected an array of 4 block indices");
    }
    PathSpec p;
    p.lout = get_int(j[0], path + "/0");
    p.hin = get_int(j[1], path + "/1");
    p.hout = get_int(j[2], path + "/2");
    p.lin = get_int(j[3], path + "/3");
    return p;
}

void parse_table_entry(TableOracle& table, const json& j, const std::string& path) {
    expect_object(j, path);
    reject_unknown_keys(j, path, {"r_p", "kind", "accuracy"});
    for (const char* key : {"r_p", "kind", "accuracy"}) {
        if (!j.contains(key)) {
            fail(path + "/" + key, "required");
        }
    }
    PathSpec p = parse_entry_path(j["r_p"], path + "/r_p");
    const std::string kind = get_string(j["kind"], path + "/kind");
    if (kind == "cross") {
        p.kind = ConnectionKind::cross;
    } else if (kind == "skip") {
        p.kind = ConnectionKind::skip;
        if (p.hin != p.hout) {
            fail(path + "/r_p", "skip entry must carry hin == hout == n_f");
        }
    } else {
        fail(path + "/kind", "expected \"cross\" or \"skip\"");
    }
    table.insert(p, get_fraction(j["accuracy"], path + "/accuracy"));
}

OracleSpec parse_oracle(const json& j, const std::string& path,
                        const std::filesystem::path& base_dir) {
    OracleSpec spec;
    expect_object(j, path);
    if (!j.contains("type")) {
        fail(path + "/type", "required");
    }
    const std::string type = get_string(j["type"], path + "/type");
    if (type == "table") {
        spec.type = OracleSpec::Type::table;
        reject_unknown_keys(j, path, {"type", "entries", "file", "default"});
        if (j.contains("entries") == j.contains("file")) {
            fail(path, "table oracle requires exactly one of \"entries\" or \"file\"");
        }
        if (j.contains("entries")) {
            if (!j["entries"].is_array()) {
                fail(path + "/entries", "expected an array");
            }
            int i = 0;
            for (const auto& ej : j["entries"]) {
                parse_table_entry(spec.table, ej, path + "/entries/" + std::to_string(i));
                i += 1;
            }
        } else {
            const std::filesystem::path file =
                base_dir / get_string(j["file"], path + "/file");
            std::ifstream in(file);
            if (!in) {
                fail(path + "/file", "cannot open " + file.string());
            }
            json doc;
            try {
                doc = json::parse(in);
            } catch (const json::parse_error& e) {
                fail(path + "/file", std::string("parse error: ") + e.what());
            }
            spec.table = parse_table_fixture(doc, path + "/file");
        }
        if (j.contains("default")) {
            spec.table.set_default(get_fraction(j["default"], path + "/default"));
        }
    } else if (type == "synthetic") {
        spec.type = OracleSpec::Type::synthetic;
        reject_unknown_keys(j, path, {"type", "base", "alpha", "beta", "sigma", "seed"});
        if (j.contains("base")) {
            spec.synthetic.base = get_fraction(j["base"], path + "/base");
        }
        if (j.contains("alpha")) {
            spec.synthetic.skip_penalty_alpha = get_number(j["alpha"], path + "/alpha");
        }
        if (j.contains("beta")) {
            spec.synthetic.host_recovery_beta = get_number(j["beta"], path + "/beta");
        }
        if (j.contains("sigma")) {
            spec.synthetic.noise_sigma = get_number(j["sigma"], path + "/sigma");
            if (spec.synthetic.noise_sigma < 0.0) {
                fail(path + "/sigma", "must be >= 0");
            }
        }
        if (j.contains("seed")) {
            if (!j["seed"].is_number_integer()) {
                fail(path + "/seed", "expected an integer");
            }
            spec.synthetic.seed = j["seed"].get<std::uint64_t>();
        }
    } else if (type == "external") {
        spec.type = OracleSpec::Type::external;
        reject_unknown_keys(j, path, {"type", "command", "timeout"});
        if (!j.contains("command") || !j["command"].is_array() || j["command"].empty()) {
            fail(path + "/command", "expected a non-empty array of strings");
        }
        int i = 0;
        for (const auto& arg : j["command"]) {
            spec.command.push_back(get_string(arg, path + "/command/" + std::to_string(i)));
            i += 1;
        }
        if (j.contains("timeout")) {
            spec.timeout_seconds = get_number(j["timeout"], path + "/timeout");
            if (!(spec.timeout_seconds > 0.0)) {
                fail(path + "/timeout", "must be > 0");
            }
        }
    } else {
        fail(path + "/type", "expected \"table\", \"synthetic\" or \"external\"");
    }
    return spec;
}

} // namespace

TableOracle parse_table_fixture(const json& doc, const std::string& where) {
    TableOracle table;
    const json* entries = nullptr;
    if (doc.is_array()) {
        entries = &doc;
    } else if (doc.is_object()) {
        reject_unknown_keys(doc, where, {"entries", "default"});
        if (!doc.contains("entries") || !doc["entries"].is_array()) {
            fail(where + "/entries", "expected an array");
        }
        entries = &doc["entries"];
        if (doc.contains("default")) {
            table.set_default(get_fraction(doc["default"], where + "/default"));
        }
    } else {
        fail(where, "expected a fixture array or object");
    }
    int i = 0;
    for (const auto& ej : *entries) {
        parse_table_entry(table, ej, where + "/entries/" + std::to_string(i));
        i += 1;
    }
    return table;
}

nlohmann::json table_fixture_json(const TableOracle& oracle) {
    json entries = json::array();
    for (const auto& [r, entry] : oracle.entries()) {
        json e;
        e["r_p"] = r;
        e["kind"] = to_string(entry.kind);
        e["accuracy"] = entry.accuracy;
        entries.push_back(e);
    }
    json doc;
    doc["entries"] = entries;
    if (oracle.default_accuracy()) {
        doc["default"] = *oracle.default_accuracy();
    }
    return doc;
}

LoadedScenario parse_scenario(const json& doc, std::string scenario_id,
                              const std::filesystem::path& base_dir) {
    expect_object(doc, "/");
    reject_unknown_keys(doc, "", {"local", "host", "links", "s", "n_f", "search", "oracle"});
    for (const char* key : {"local", "s"}) {
        if (!doc.contains(key)) {
            fail(std::string("/") + key, "required");
        }
    }

    LoadedScenario loaded;
    loaded.scenario_id = std::move(scenario_id);
    loaded.scenario.local = parse_service(doc["local"], "/local", "local", true);
    if (doc.contains("host")) {
        loaded.scenario.host = parse_service(doc["host"], "/host", "host", false);
    }
    if (doc.contains("links")) {
        const json& links = expect_object(doc["links"], "/links");
        reject_unknown_keys(links, "/links", {"entry", "exit", "skip"});
        if (links.contains("entry")) {
            loaded.scenario.entry_link =
                parse_link(links["entry"], "/links/entry", LinkPlacement::on_host);
        }
        if (links.contains("exit")) {
            loaded.scenario.exit_link =
                parse_link(links["exit"], "/links/exit", LinkPlacement::on_host);
        }
        if (links.contains("skip")) {
            loaded.scenario.skip_link =
                parse_link(links["skip"], "/links/skip", LinkPlacement::on_local);
        }
    }
    loaded.scenario.offload_count = get_int(doc["s"], "/s");
    if (doc.contains("n_f")) {
        loaded.scenario.n_f = get_int(doc["n_f"], "/n_f");
    }
    if (doc.contains("search")) {
        loaded.search = parse_search(doc["search"], "/search");
    }
    if (doc.contains("oracle")) {
        loaded.oracle = parse_oracle(doc["oracle"], "/oracle", base_dir);
    }

    try {
        loaded.scenario.validate();
    } catch (const ValidationError& e) {
        throw SchemaError(std::string("scenario schema: ") + e.what());
    }
    return loaded;
}

LoadedScenario load_scenario_file(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) {
        throw SchemaError("cannot open scenario file " + file.string());
    }
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw SchemaError("scenario " + file.string() + ": " + e.what());
    }
    return parse_scenario(doc, file.stem().string(), file.parent_path());
}

std::unique_ptr<AccuracyOracle> make_oracle(const LoadedScenario& loaded,
                                            std::optional<std::uint64_t> seed_override) {
    switch (loaded.oracle.type) {
    case OracleSpec::Type::table:
        return std::make_unique<TableOracle>(loaded.oracle.table);
    case OracleSpec::Type::synthetic: {
        SyntheticOracle::Config cfg = loaded.oracle.synthetic;
        if (seed_override) {
            cfg.seed = *seed_override;
        }
        return std::make_unique<SyntheticOracle>(cfg);
    }
    case OracleSpec::Type::external: {
        double timeout = loaded.oracle.timeout_seconds;
        if (const char* env = std::getenv("PLAN_ORACLE_TIMEOUT")) {
            char* end = nullptr;
            const double v = std::strtod(env, &end);
            if (end != env && v > 0.0) {
                timeout = v;
            }
        }
        return std::make_unique<ExternalOracle>(loaded.oracle.command, timeout,
                                                loaded.scenario_id);
    }
    default:
        throw SchemaError("scenario schema: /oracle: required for this command");
    }
}

} // namespace codeplan
