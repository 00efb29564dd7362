#include "codeplan/oracle.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <csignal>
#include <cstring>

#include <fcntl.h>
#include <poll.h>
#include <sys/wait.h>
#include <unistd.h>

#include <json.hpp>

#include "codeplan/errors.hpp"

namespace codeplan {

// ---------------------------------------------------------------------------
// TableOracle

void TableOracle::insert(const PathSpec& path, double accuracy) {
    if (accuracy < 0.0 || accuracy > 1.0) {
        throw ValidationError("table accuracy must lie in [0,1]");
    }
    entries_[path.r()] = Entry{accuracy, path.kind};
}

void TableOracle::set_default(double accuracy) {
    if (accuracy < 0.0 || accuracy > 1.0) {
        throw ValidationError("table default accuracy must lie in [0,1]");
    }
    default_ = accuracy;
}

double TableOracle::evaluate(const PathSpec& path, const Scenario&) {
    const auto it = entries_.find(path.r());
    if (it != entries_.end()) {
        return it->second.accuracy;
    }
    if (default_) {
        return *default_;
    }
    throw OracleMiss("no table entry and no default", path.to_string());
}

// ---------------------------------------------------------------------------
// SyntheticOracle

namespace {

// splitmix64; stable across platforms, unlike std::normal_distribution.
std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

double unit_uniform(std::uint64_t bits) {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// One standard normal draw, fully determined by (seed, r tuple).
double seeded_gaussian(std::uint64_t seed, const std::array<int, 4>& r) {
    std::uint64_t h = seed;
    for (int v : r) {
        h = mix64(h ^ static_cast<std::uint64_t>(static_cast<std::int64_t>(v)));
    }
    const double u1 = unit_uniform(mix64(h));
    const double u2 = unit_uniform(mix64(h + 1));
    const double r2 = std::sqrt(-2.0 * std::log(1.0 - u1));
    return r2 * std::cos(2.0 * M_PI * u2);
}

double per_sample_total(const ServiceProfile& svc) {
    double total = 0.0;
    for (const auto& b : svc.blocks) {
        total += b.per_sample_cost_c;
    }
    return total;
}

} // namespace

double SyntheticOracle::evaluate(const PathSpec& path, const Scenario& scenario) {
    validate_path(scenario, path);

    double skipped = 0.0;
    for (const auto& b : scenario.local.blocks) {
        if (b.index > path.lout && b.index < path.lin) {
            skipped += b.per_sample_cost_c;
        }
    }
    const double skip_fraction = skipped / per_sample_total(scenario.local);

    double host_fraction = 0.0;
    if (path.kind == ConnectionKind::cross) {
        double traversed = 0.0;
        for (const auto& b : scenario.host->blocks) {
            if (b.index >= path.hin && b.index <= path.hout) {
                traversed += b.per_sample_cost_c;
            }
        }
        host_fraction = traversed / per_sample_total(*scenario.host);
    }

    double acc = cfg_.base - cfg_.skip_penalty_alpha * skip_fraction +
                 cfg_.host_recovery_beta * host_fraction;
    if (cfg_.noise_sigma > 0.0) {
        acc += cfg_.noise_sigma * seeded_gaussian(cfg_.seed, path.r_materialized(scenario.n_f));
    }
    return std::clamp(acc, 0.0, 1.0);
}

// ---------------------------------------------------------------------------
// ExternalOracle

ExternalOracle::ExternalOracle(std::vector<std::string> command, double timeout_seconds,
                               std::string scenario_label)
    : command_(std::move(command)),
      timeout_seconds_(timeout_seconds),
      scenario_label_(std::move(scenario_label)) {
    if (command_.empty()) {
        throw ValidationError("external oracle command must be non-empty");
    }
    if (!(timeout_seconds_ > 0.0)) {
        throw ValidationError("external oracle timeout must be > 0");
    }
}

ExternalOracle::~ExternalOracle() {
    shutdown();
}

void ExternalOracle::ensure_started() {
    if (child_pid_ != -1) {
        return;
    }
    int to_child[2];
    int from_child[2];
    if (pipe(to_child) != 0 || pipe(from_child) != 0) {
        throw ProtocolError("failed to create pipes for external oracle");
    }
    const pid_t pid = fork();
    if (pid < 0) {
        throw ProtocolError("failed to fork external oracle process");
    }
    if (pid == 0) {
        dup2(to_child[0], STDIN_FILENO);
        dup2(from_child[1], STDOUT_FILENO);
        close(to_child[0]);
        close(to_child[1]);
        close(from_child[0]);
        close(from_child[1]);
        std::vector<char*> argv;
        argv.reserve(command_.size() + 1);
        for (auto& arg : command_) {
            argv.push_back(arg.data());
        }
        argv.push_back(nullptr);
        execvp(argv[0], argv.data());
        _exit(127);
    }
    close(to_child[0]);
    close(from_child[1]);
    child_pid_ = pid;
    to_child_ = to_child[1];
    from_child_ = from_child[0];
    read_buffer_.clear();
}

void ExternalOracle::shutdown() noexcept {
    if (to_child_ != -1) {
        close(to_child_);
        to_child_ = -1;
    }
    if (from_child_ != -1) {
        close(from_child_);
        from_child_ = -1;
    }
    if (child_pid_ != -1) {
        kill(static_cast<pid_t>(child_pid_), SIGKILL);
        int status = 0;
        waitpid(static_cast<pid_t>(child_pid_), &status, 0);
        child_pid_ = -1;
    }
    read_buffer_.clear();
}

std::string ExternalOracle::exchange_line(const std::string& request) {
    const char* data = request.data();
    std::size_t remaining = request.size();
    while (remaining > 0) {
        const ssize_t n = write(to_child_, data, remaining);
        if (n < 0) {
            if (errno == EINTR) {
                continue;
            }
            throw ProtocolError(std::string("write to external oracle failed: ") +
                                std::strerror(errno));
        }
        data += n;
        remaining -= static_cast<std::size_t>(n);
    }

    const auto deadline_ms = static_cast<long>(timeout_seconds_ * 1000.0);
    long waited_ms = 0;
    for (;;) {
        const auto newline = read_buffer_.find('\n');
        if (newline != std::string::npos) {
            std::string line = read_buffer_.substr(0, newline);
            read_buffer_.erase(0, newline + 1);
            return line;
        }
        if (waited_ms >= deadline_ms) {
            throw OracleTimeout("external oracle reply exceeded " +
                                std::to_string(timeout_seconds_) + " s");
        }
        pollfd pfd{from_child_, POLLIN, 0};
        const long slice = std::min<long>(deadline_ms - waited_ms, 50);
        const int rc = poll(&pfd, 1, static_cast<int>(slice));
        waited_ms += slice;
        if (rc < 0) {
            if (errno == EINTR) {
                continue;
            }
            throw ProtocolError(std::string("poll on external oracle failed: ") +
                                std::strerror(errno));
        }
        if (rc == 0) {
            continue;
        }
        char chunk[4096];
        const ssize_t n = read(from_child_, chunk, sizeof(chunk));
        if (n < 0) {
            if (errno == EINTR) {
                continue;
            }
            throw ProtocolError(std::string("read from external oracle failed: ") +
                                std::strerror(errno));
        }
        if (n == 0) {
            throw ProtocolError("external oracle closed its output stream");
        }
        read_buffer_.append(chunk, static_cast<std::size_t>(n));
    }
}

double ExternalOracle::evaluate(const PathSpec& path, const Scenario& scenario) {
    std::lock_guard<std::mutex> lock(mutex_);
    const std::string repr = path.to_string();
    try {
        ensure_started();
        nlohmann::json request;
        request["r_p"] = path.r();
        request["kind"] = to_string(path.kind);
        request["s"] = scenario.offload_count;
        request["scenario_id"] = scenario_label_;
        const std::string reply = exchange_line(request.dump() + "\n");

        nlohmann::json parsed;
        try {
            parsed = nlohmann::json::parse(reply);
        } catch (const nlohmann::json::parse_error& e) {
            throw ProtocolError(std::string("malformed oracle reply: ") + e.what());
        }
        if (!parsed.is_object() || !parsed.contains("accuracy") ||
            !parsed["accuracy"].is_number()) {
            throw ProtocolError("oracle reply must be an object with a numeric \"accuracy\"");
        }
        const double acc = parsed["accuracy"].get<double>();
        if (!(acc >= 0.0 && acc <= 1.0)) {
            throw RangeError("oracle accuracy " + std::to_string(acc) + " outside [0,1]");
        }
        return acc;
    } catch (OracleTimeout& e) {
        shutdown();
        throw OracleTimeout(e.what(), repr);
    } catch (ProtocolError& e) {
        shutdown();
        throw ProtocolError(e.what(), repr);
    } catch (RangeError& e) {
        throw RangeError(e.what(), repr);
    }
}

} // namespace codeplan
