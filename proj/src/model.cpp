#include "codeplan/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "codeplan/errors.hpp"

namespace codeplan {

const char* to_string(ConnectionKind kind) {
    return kind == ConnectionKind::cross ? "cross" : "skip";
}

std::array<int, 4> PathSpec::r_materialized(int n_f) const {
    if (kind == ConnectionKind::skip) {
        return {lout, n_f, n_f, lin};
    }
    return r();
}

std::string PathSpec::to_string() const {
    std::ostringstream os;
    os << "[" << lout << "," << hin << "," << hout << "," << lin << "]("
       << codeplan::to_string(kind) << ")";
    return os.str();
}

bool lex_less(const PathSpec& a, const PathSpec& b) {
    return a.r() < b.r();
}

namespace {

void validate_service(const ServiceProfile& svc, const std::string& name) {
    if (svc.blocks.empty()) {
        throw ValidationError(name + ": blocks must be non-empty");
    }
    for (std::size_t i = 0; i < svc.blocks.size(); ++i) {
        const auto& b = svc.blocks[i];
        if (b.index != static_cast<int>(i)) {
            throw ValidationError(name + ": block indices must be contiguous from 0");
        }
        if (b.fixed_cost_a < 0.0) {
            throw ValidationError(name + ": block fixed_cost_a must be >= 0");
        }
        if (!(b.per_sample_cost_c > 0.0)) {
            throw ValidationError(name + ": block per_sample_cost_c must be > 0");
        }
    }
    if (svc.batch_size < 1) {
        throw ValidationError(name + ": batch_size must be >= 1");
    }
    if (svc.base_accuracy < 0.0 || svc.base_accuracy > 1.0) {
        throw ValidationError(name + ": base_accuracy must lie in [0,1]");
    }
}

void validate_link(const LinkProfile& link, const std::string& name) {
    if (link.fixed_cost_a < 0.0 || link.per_sample_cost_c < 0.0) {
        throw ValidationError(name + ": link costs must be >= 0");
    }
}

} // namespace

void Scenario::validate() const {
    validate_service(local, "local");
    if (host) {
        validate_service(*host, "host");
    }
    validate_link(entry_link, "links.entry");
    validate_link(exit_link, "links.exit");
    validate_link(skip_link, "links.skip");
    if (offload_count < 0 || offload_count > local.batch_size) {
        throw ValidationError("s must satisfy 0 <= s <= local batch_size");
    }
    if (n_f <= local.block_count()) {
        throw ValidationError("n_f must exceed the local block count");
    }
    if (host && n_f <= host->block_count()) {
        throw ValidationError("n_f must exceed the host block count");
    }
}

void validate_path(const Scenario& scenario, const PathSpec& path) {
    const int n_l = scenario.local.block_count();
    if (!(0 <= path.lout && path.lout < path.lin && path.lin < n_l)) {
        throw ValidationError("path " + path.to_string() +
                              ": constraint violated: 0 <= lout < lin < N_l");
    }
    if (path.kind == ConnectionKind::cross) {
        if (!scenario.has_host()) {
            throw ValidationError("path " + path.to_string() +
                                  ": cross path requires a host service");
        }
        const int n_h = scenario.host->block_count();
        if (!(0 <= path.hin && path.hin <= path.hout && path.hout < n_h)) {
            throw ValidationError("path " + path.to_string() +
                                  ": constraint violated: 0 <= hin <= hout < N_h");
        }
    } else {
        if (path.hin != scenario.n_f || path.hout != scenario.n_f) {
            throw ValidationError("path " + path.to_string() +
                                  ": skip path must carry hin = hout = n_f");
        }
    }
}

std::vector<PathSpec> enumerate_paths(const Scenario& scenario) {
    scenario.validate();
    const int n_l = scenario.local.block_count();
    const int n_h = scenario.has_host() ? scenario.host->block_count() : 0;

    std::vector<PathSpec> out;
    out.reserve(static_cast<std::size_t>(std::max<long long>(0, path_count(n_l, n_h))));
    for (int lout = 0; lout < n_l; ++lout) {
        for (int lin = lout + 1; lin < n_l; ++lin) {
            for (int hin = 0; hin < n_h; ++hin) {
                for (int hout = hin; hout < n_h; ++hout) {
                    out.push_back({lout, hin, hout, lin, ConnectionKind::cross});
                }
            }
            out.push_back({lout, scenario.n_f, scenario.n_f, lin, ConnectionKind::skip});
        }
    }
    std::sort(out.begin(), out.end(), lex_less);
    return out;
}

long long path_count(int local_blocks, int host_blocks) {
    const long long local_pairs =
        static_cast<long long>(local_blocks) * (local_blocks - 1) / 2;
    const long long host_pairs =
        static_cast<long long>(host_blocks) * (host_blocks + 1) / 2;
    return local_pairs * host_pairs + local_pairs;
}

double path_distance(const PathSpec& a, const PathSpec& b, int n_f) {
    const auto ra = a.r_materialized(n_f);
    const auto rb = b.r_materialized(n_f);
    double sum = 0.0;
    for (int i = 0; i < 4; ++i) {
        const double d = static_cast<double>(ra[i]) - static_cast<double>(rb[i]);
        sum += d * d;
    }
    return std::sqrt(sum);
}

} // namespace codeplan
