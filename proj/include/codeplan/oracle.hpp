#ifndef CODEPLAN_ORACLE_HPP
#define CODEPLAN_ORACLE_HPP

#include <array>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "codeplan/model.hpp"

namespace codeplan {

enum class CostHint { cheap, expensive };

/// Anything that can report the true accuracy of a trained path.
/// Implementations must be deterministic for a fixed configuration and
/// seed and must return fractions in [0, 1].
class AccuracyOracle {
public:
    virtual ~AccuracyOracle() = default;
    virtual double evaluate(const PathSpec& path, const Scenario& scenario) = 0;
    virtual CostHint cost_hint() const = 0;
};

/// Fixed lookup table keyed by the r tuple, with an optional fallback.
/// The carrier for measured accuracy fixtures.
class TableOracle final : public AccuracyOracle {
public:
    struct Entry {
        double accuracy = 0.0;
        ConnectionKind kind = ConnectionKind::cross;
    };

    void insert(const PathSpec& path, double accuracy);
    void set_default(double accuracy);
    std::optional<double> default_accuracy() const { return default_; }
    const std::map<std::array<int, 4>, Entry>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }

    /// Exact stored value, else the default, else OracleMiss.
    double evaluate(const PathSpec& path, const Scenario& scenario) override;
    CostHint cost_hint() const override { return CostHint::cheap; }

private:
    std::map<std::array<int, 4>, Entry> entries_;
    std::optional<double> default_;
};

/// Closed-form stand-in for link training: base accuracy minus a penalty
/// proportional to the fraction of local per-sample compute the path
/// skips, plus a recovery proportional to the fraction of host
/// per-sample compute it traverses (cross only), plus seeded Gaussian
/// noise. Pure function of (config, path, scenario).
class SyntheticOracle final : public AccuracyOracle {
public:
    struct Config {
        double base = 0.8;
        double skip_penalty_alpha = 0.0;
        double host_recovery_beta = 0.0;
        double noise_sigma = 0.0;
        std::uint64_t seed = 0;
    };

    explicit SyntheticOracle(Config cfg) : cfg_(cfg) {}

    const Config& config() const { return cfg_; }
    double evaluate(const PathSpec& path, const Scenario& scenario) override;
    CostHint cost_hint() const override { return CostHint::cheap; }

private:
    Config cfg_;
};

/// Bridges to an out-of-process evaluator (e.g. a real link-training
/// harness) over a newline-delimited JSON pipe:
///
///   request:  {"kind":"cross","r_p":[0,1,4,5],"s":8,"scenario_id":"exp4"}
///   response: {"accuracy":0.827}
///
/// One subprocess per oracle instance; requests are serialized, at most
/// one exchange in flight. Non-conforming replies raise ProtocolError or
/// RangeError; a missed deadline raises OracleTimeout and kills the
/// child (a later call restarts it).
class ExternalOracle final : public AccuracyOracle {
public:
    static constexpr double kDefaultTimeoutSeconds = 600.0;

    ExternalOracle(std::vector<std::string> command, double timeout_seconds,
                   std::string scenario_label = {});
    ~ExternalOracle() override;

    ExternalOracle(const ExternalOracle&) = delete;
    ExternalOracle& operator=(const ExternalOracle&) = delete;

    double evaluate(const PathSpec& path, const Scenario& scenario) override;
    CostHint cost_hint() const override { return CostHint::expensive; }

    double timeout_seconds() const { return timeout_seconds_; }

private:
    void ensure_started();
    void shutdown() noexcept;
    std::string exchange_line(const std::string& request);

    std::vector<std::string> command_;
    double timeout_seconds_;
    std::string scenario_label_;
    std::mutex mutex_;
    long child_pid_ = -1;
    int to_child_ = -1;
    int from_child_ = -1;
    std::string read_buffer_;
};

} // namespace codeplan

#endif // CODEPLAN_ORACLE_HPP
